//! Spans of finite sets, the 2-cells between them, and a normal form that
//! makes equations between pasted 2-cells decidable.
//!
//! Every span carries a [`SpanShape`] recording how it was assembled from
//! atomic spans. Flattening reads a span as a string diagram: generator atoms
//! are nodes, boundary objects are lists of wires, and structural atoms
//! (identities and re-bracketings) are plain wiring. The apex element of a
//! flat span is `<src wires, node values, tgt wires>`, with nodes listed in a
//! canonical order that depends only on the diagram, not on how it was
//! bracketed or layered.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{fn_compose, fn_product, product, pullback, FinFn, FinSet};

/// How a boundary object is built from the wire sets by cartesian product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObjShape {
    /// The terminal set `{*}`; carries no wires.
    Unit,
    /// A single wire; its elements are taken whole.
    Wire,
    Prod(Arc<ObjShape>, Arc<ObjShape>),
}

impl ObjShape {
    pub fn prod(a: ObjShape, b: ObjShape) -> Self {
        ObjShape::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn wire_count(&self) -> usize {
        match self {
            ObjShape::Unit => 0,
            ObjShape::Wire => 1,
            ObjShape::Prod(a, b) => a.wire_count() + b.wire_count(),
        }
    }

    /// Appends the wire values of `e`.
    pub fn wires(&self, e: &Element, out: &mut Vec<Element>) -> Result<()> {
        match self {
            ObjShape::Unit => Ok(()),
            ObjShape::Wire => {
                out.push(e.clone());
                Ok(())
            }
            ObjShape::Prod(a, b) => {
                let (x, y) = e
                    .as_pair()
                    .ok_or_else(|| Error::Shape(format!("expected a pair, found {e}")))?;
                a.wires(x, out)?;
                b.wires(y, out)
            }
        }
    }

    /// Inverse of [`ObjShape::wires`].
    pub fn rebuild(&self, wires: &mut impl Iterator<Item = Element>) -> Option<Element> {
        match self {
            ObjShape::Unit => Some(Element::star()),
            ObjShape::Wire => wires.next(),
            ObjShape::Prod(a, b) => {
                let x = a.rebuild(wires)?;
                let y = b.rebuild(wires)?;
                Some(Element::pair(x, y))
            }
        }
    }
}

/// A boundary object: a finite set together with its product structure.
#[derive(Clone, Debug)]
pub struct Obj {
    pub set: FinSet,
    pub shape: ObjShape,
}

impl Obj {
    pub fn wire(set: FinSet) -> Self {
        Obj {
            set,
            shape: ObjShape::Wire,
        }
    }

    pub fn unit() -> Self {
        Obj {
            set: FinSet::terminal(),
            shape: ObjShape::Unit,
        }
    }

    pub fn prod(a: &Obj, b: &Obj) -> Self {
        Obj {
            set: product(&a.set, &b.set).apex,
            shape: ObjShape::prod(a.shape.clone(), b.shape.clone()),
        }
    }

    pub fn wires(&self, e: &Element) -> Result<Vec<Element>> {
        let mut out = Vec::with_capacity(self.shape.wire_count());
        self.shape.wires(e, &mut out)?;
        Ok(out)
    }
}

impl PartialEq for Obj {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.set == other.set
    }
}

impl Eq for Obj {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    /// Contributes a node to the flattened diagram.
    Generator,
    /// Identities and re-bracketings: the apex is the source and the outputs
    /// are the input wires, unchanged.
    Structural,
}

/// One end of a wire in a flat diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Source(usize),
    /// Output `j` of node `k`.
    Node(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatNode {
    pub name: Arc<str>,
    pub inputs: Vec<Port>,
    pub outputs: usize,
}

/// A string diagram with ordered source wires, nodes and target wires.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatGraph {
    pub sources: usize,
    pub nodes: Vec<FlatNode>,
    pub targets: Vec<Port>,
}

/// The construction tree of a span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanShape {
    Atomic {
        name: Arc<str>,
        kind: AtomKind,
        src: ObjShape,
        tgt: ObjShape,
    },
    /// `first` then `second`; apex elements are pairs `(first, second)`.
    Composite(Arc<SpanShape>, Arc<SpanShape>),
    /// Apex elements are pairs.
    Tensor(Arc<SpanShape>, Arc<SpanShape>),
    /// Apex elements are `<src wires, node values, tgt wires>`.
    Flat(Arc<FlatGraph>),
}

impl SpanShape {
    fn src_wires(&self) -> usize {
        match self {
            SpanShape::Atomic { src, .. } => src.wire_count(),
            SpanShape::Composite(a, _) => a.src_wires(),
            SpanShape::Tensor(a, b) => a.src_wires() + b.src_wires(),
            SpanShape::Flat(g) => g.sources,
        }
    }

    /// Adds this shape's nodes to `nodes`, wired to `inputs`; returns the output ports.
    fn wire_up(&self, inputs: &[Port], nodes: &mut Vec<FlatNode>) -> Result<Vec<Port>> {
        match self {
            SpanShape::Atomic {
                name,
                kind,
                src,
                tgt,
            } => {
                if inputs.len() != src.wire_count() {
                    return Err(Error::Shape(format!(
                        "atom {name} has the wrong number of inputs"
                    )));
                }
                match kind {
                    AtomKind::Structural => {
                        if src.wire_count() != tgt.wire_count() {
                            return Err(Error::Shape(format!(
                                "structural atom {name} does not preserve wires"
                            )));
                        }
                        Ok(inputs.to_vec())
                    }
                    AtomKind::Generator => {
                        let k = nodes.len();
                        nodes.push(FlatNode {
                            name: name.clone(),
                            inputs: inputs.to_vec(),
                            outputs: tgt.wire_count(),
                        });
                        Ok((0..tgt.wire_count()).map(|j| Port::Node(k, j)).collect())
                    }
                }
            }
            SpanShape::Composite(a, b) => {
                let mid = a.wire_up(inputs, nodes)?;
                b.wire_up(&mid, nodes)
            }
            SpanShape::Tensor(a, b) => {
                let n = a.src_wires();
                if n > inputs.len() {
                    return Err(Error::Shape("tensor has too few inputs".into()));
                }
                let mut out = a.wire_up(&inputs[..n], nodes)?;
                out.extend(b.wire_up(&inputs[n..], nodes)?);
                Ok(out)
            }
            SpanShape::Flat(g) => {
                if inputs.len() != g.sources {
                    return Err(Error::Shape(
                        "flat diagram has the wrong number of inputs".into(),
                    ));
                }
                let base = nodes.len();
                let relocate = |p: &Port| match *p {
                    Port::Source(i) => inputs[i],
                    Port::Node(k, j) => Port::Node(base + k, j),
                };
                for n in &g.nodes {
                    nodes.push(FlatNode {
                        name: n.name.clone(),
                        inputs: n.inputs.iter().map(relocate).collect(),
                        outputs: n.outputs,
                    });
                }
                Ok(g.targets.iter().map(relocate).collect())
            }
        }
    }

    /// Appends the node values of apex element `e`, in construction order.
    fn node_values(&self, e: &Element, out: &mut Vec<Element>) -> Result<()> {
        match self {
            SpanShape::Atomic { kind, .. } => {
                if *kind == AtomKind::Generator {
                    out.push(e.clone());
                }
                Ok(())
            }
            SpanShape::Composite(a, b) | SpanShape::Tensor(a, b) => {
                let (x, y) = e.as_pair().ok_or_else(|| {
                    Error::Shape(format!("expected a pair apex element, found {e}"))
                })?;
                a.node_values(x, out)?;
                b.node_values(y, out)
            }
            SpanShape::Flat(g) => {
                let nodes = e
                    .as_tuple()
                    .filter(|t| t.len() == 3)
                    .and_then(|t| t[1].as_tuple())
                    .filter(|n| n.len() == g.nodes.len())
                    .ok_or_else(|| Error::Shape(format!("malformed flat apex element {e}")))?;
                out.extend(nodes.iter().cloned());
                Ok(())
            }
        }
    }

    /// The diagram of this shape in canonical node order, and the
    /// permutation taking canonical positions to construction positions.
    pub fn flat_graph(&self, sources: usize) -> Result<(FlatGraph, Vec<usize>)> {
        let inputs: Vec<Port> = (0..sources).map(Port::Source).collect();
        let mut nodes = Vec::new();
        let targets = self.wire_up(&inputs, &mut nodes)?;
        Ok(canonicalize(sources, nodes, targets))
    }
}

/// Renumbers nodes by a left-to-right post-order walk from the targets, so
/// that diagrams differing only by bracketing or interchange coincide.
fn canonicalize(
    sources: usize,
    nodes: Vec<FlatNode>,
    targets: Vec<Port>,
) -> (FlatGraph, Vec<usize>) {
    fn visit(k: usize, nodes: &[FlatNode], seen: &mut [bool], order: &mut Vec<usize>) {
        if seen[k] {
            return;
        }
        seen[k] = true;
        for p in &nodes[k].inputs {
            if let Port::Node(i, _) = *p {
                visit(i, nodes, seen, order);
            }
        }
        order.push(k);
    }
    let mut seen = vec![false; nodes.len()];
    let mut order = Vec::with_capacity(nodes.len());
    for p in &targets {
        if let Port::Node(k, _) = *p {
            visit(k, &nodes, &mut seen, &mut order);
        }
    }
    for k in 0..nodes.len() {
        visit(k, &nodes, &mut seen, &mut order);
    }
    let mut position = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let renumber = |p: &Port| match *p {
        Port::Source(i) => Port::Source(i),
        Port::Node(k, j) => Port::Node(position[k], j),
    };
    let graph = FlatGraph {
        sources,
        nodes: order
            .iter()
            .map(|&old| FlatNode {
                name: nodes[old].name.clone(),
                inputs: nodes[old].inputs.iter().map(renumber).collect(),
                outputs: nodes[old].outputs,
            })
            .collect(),
        targets: targets.iter().map(renumber).collect(),
    };
    (graph, order)
}

/// A span `src ⇸ tgt`: `src <-left- apex -right-> tgt`.
#[derive(Clone)]
pub struct Span {
    pub src: Obj,
    pub tgt: Obj,
    pub apex: FinSet,
    pub left: FinFn,
    pub right: FinFn,
    pub shape: Arc<SpanShape>,
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Span")
            .field("apex", &self.apex)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl Span {
    fn assemble(
        src: Obj,
        tgt: Obj,
        apex: FinSet,
        left: FinFn,
        right: FinFn,
        shape: SpanShape,
    ) -> Result<Self> {
        if left.domain() != &apex || right.domain() != &apex {
            return Err(Error::BoundaryMismatch(
                "span legs must be defined on the apex".into(),
            ));
        }
        if left.codomain() != &src.set || right.codomain() != &tgt.set {
            return Err(Error::BoundaryMismatch(
                "span legs must land in the boundary sets".into(),
            ));
        }
        Ok(Span {
            src,
            tgt,
            apex,
            left,
            right,
            shape: Arc::new(shape),
        })
    }

    /// An atomic span that flattens to a single node called `name`.
    pub fn generator(
        name: &str,
        src: Obj,
        tgt: Obj,
        apex: FinSet,
        left: FinFn,
        right: FinFn,
    ) -> Result<Self> {
        let shape = SpanShape::Atomic {
            name: name.into(),
            kind: AtomKind::Generator,
            src: src.shape.clone(),
            tgt: tgt.shape.clone(),
        };
        Self::assemble(src, tgt, apex, left, right, shape)
    }

    /// Equality of boundaries, apex and legs (shapes are not compared).
    pub fn same_as(&self, other: &Span) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.apex == other.apex
            && self.left == other.left
            && self.right == other.right
    }

    /// Checks that the shape describes the nesting of every apex element.
    pub fn check_shape(&self) -> Result<()> {
        let (graph, _) = self.shape.flat_graph(self.src.shape.wire_count())?;
        if graph.targets.len() != self.tgt.shape.wire_count() {
            return Err(Error::Shape("target wire count does not match".into()));
        }
        let mut buf = Vec::new();
        for e in &self.apex {
            buf.clear();
            self.shape.node_values(e, &mut buf)?;
            if buf.len() != graph.nodes.len() {
                return Err(Error::Shape(format!("wrong number of node values in {e}")));
            }
        }
        Ok(())
    }
}

/// The identity span on `c`: apex `c`, both legs the identity.
pub fn span_identity(c: &Obj) -> Span {
    let shape = SpanShape::Atomic {
        name: "id".into(),
        kind: AtomKind::Structural,
        src: c.shape.clone(),
        tgt: c.shape.clone(),
    };
    let id = FinFn::identity(&c.set);
    Span::assemble(c.clone(), c.clone(), c.set.clone(), id.clone(), id, shape)
        .expect("identity legs")
}

/// The structural span re-bracketing `from` as `to` (same wires, in order).
pub fn reshape(from: &Obj, to: &Obj) -> Result<Span> {
    if from.shape.wire_count() != to.shape.wire_count() {
        return Err(Error::BoundaryMismatch(
            "re-bracketing must preserve the wires".into(),
        ));
    }
    let right = FinFn::try_from_fn(from.set.clone(), to.set.clone(), |e| {
        let wires = from.wires(e)?;
        to.shape
            .rebuild(&mut wires.into_iter())
            .ok_or_else(|| Error::Shape(format!("cannot rebuild {e}")))
    })
    .map_err(|e| {
        Error::BoundaryMismatch(format!("objects are not re-bracketings of each other: {e}"))
    })?;
    let shape = SpanShape::Atomic {
        name: "reshape".into(),
        kind: AtomKind::Structural,
        src: from.shape.clone(),
        tgt: to.shape.clone(),
    };
    Span::assemble(
        from.clone(),
        to.clone(),
        from.set.clone(),
        FinFn::identity(&from.set),
        right,
        shape,
    )
}

/// `g ∘ f`: first `f: A ⇸ B`, then `g: B ⇸ C`, by the canonical pullback.
pub fn span_compose(g: &Span, f: &Span) -> Result<Span> {
    if f.tgt != g.src {
        return Err(Error::BoundaryMismatch(
            "target of the first span is not the source of the second".into(),
        ));
    }
    let pb = pullback(&f.right, &g.left)?;
    let left = fn_compose(&f.left, &pb.proj1)?;
    let right = fn_compose(&g.right, &pb.proj2)?;
    Span::assemble(
        f.src.clone(),
        g.tgt.clone(),
        pb.apex,
        left,
        right,
        SpanShape::Composite(f.shape.clone(), g.shape.clone()),
    )
}

/// The cartesian tensor `a ⊗ b`.
pub fn span_tensor(a: &Span, b: &Span) -> Span {
    let apex = product(&a.apex, &b.apex).apex;
    Span::assemble(
        Obj::prod(&a.src, &b.src),
        Obj::prod(&a.tgt, &b.tgt),
        apex,
        fn_product(&a.left, &b.left),
        fn_product(&a.right, &b.right),
        SpanShape::Tensor(a.shape.clone(), b.shape.clone()),
    )
    .expect("products of legs land in products of boundaries")
}

/// A map of apexes commuting with both legs.
#[derive(Clone, Debug)]
pub struct SpanTwoCell {
    pub source: Span,
    pub target: Span,
    pub map: FinFn,
}

impl SpanTwoCell {
    pub fn new(source: Span, target: Span, map: FinFn) -> Result<Self> {
        if source.src != target.src || source.tgt != target.tgt {
            return Err(Error::BoundaryMismatch(
                "2-cell between spans with different boundaries".into(),
            ));
        }
        if map.domain() != &source.apex || map.codomain() != &target.apex {
            return Err(Error::BoundaryMismatch(
                "2-cell map has the wrong type".into(),
            ));
        }
        for (x, y) in map.iter() {
            if target.left.apply(y) != source.left.apply(x)
                || target.right.apply(y) != source.right.apply(x)
            {
                return Err(Error::BoundaryMismatch(format!(
                    "2-cell does not commute with the legs at {x}"
                )));
            }
        }
        Ok(SpanTwoCell {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: &Span) -> Self {
        SpanTwoCell {
            source: s.clone(),
            target: s.clone(),
            map: FinFn::identity(&s.apex),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.map.is_bijective()
    }
}

/// `β · α`: first `α`, then `β`.
pub fn twocell_vcompose(beta: &SpanTwoCell, alpha: &SpanTwoCell) -> Result<SpanTwoCell> {
    if !alpha.target.same_as(&beta.source) {
        return Err(Error::BoundaryMismatch(
            "target of the first 2-cell is not the source of the second".into(),
        ));
    }
    Ok(SpanTwoCell {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        map: fn_compose(&beta.map, &alpha.map)?,
    })
}

/// `τ` precomposed with the span `e`: `(x, r) ↦ (x, τ r)`.
pub fn whisker_left(e: &Span, tau: &SpanTwoCell) -> Result<SpanTwoCell> {
    let source = span_compose(&tau.source, e)?;
    let target = span_compose(&tau.target, e)?;
    let map = FinFn::try_from_fn(source.apex.clone(), target.apex.clone(), |p| {
        let (x, r) = p.as_pair().expect("pullback element");
        Ok(Element::pair(x.clone(), tau.map.at(r)?.clone()))
    })?;
    Ok(SpanTwoCell {
        source,
        target,
        map,
    })
}

/// `τ` postcomposed with the span `e`: `(r, x) ↦ (τ r, x)`.
pub fn whisker_right(tau: &SpanTwoCell, e: &Span) -> Result<SpanTwoCell> {
    let source = span_compose(e, &tau.source)?;
    let target = span_compose(e, &tau.target)?;
    let map = FinFn::try_from_fn(source.apex.clone(), target.apex.clone(), |p| {
        let (r, x) = p.as_pair().expect("pullback element");
        Ok(Element::pair(tau.map.at(r)?.clone(), x.clone()))
    })?;
    Ok(SpanTwoCell {
        source,
        target,
        map,
    })
}

/// `α ⊗ β`.
pub fn twocell_tensor(alpha: &SpanTwoCell, beta: &SpanTwoCell) -> SpanTwoCell {
    SpanTwoCell {
        source: span_tensor(&alpha.source, &beta.source),
        target: span_tensor(&alpha.target, &beta.target),
        map: fn_product(&alpha.map, &beta.map),
    }
}

/// The normal form of a span.
#[derive(Clone, Debug)]
pub struct FlatForm {
    pub graph: FlatGraph,
    /// Flat apex element for each apex element, in apex order.
    pub elements: Vec<Element>,
}

impl FlatForm {
    pub fn of(s: &Span) -> Result<Self> {
        let (graph, order) = s.shape.flat_graph(s.src.shape.wire_count())?;
        if graph.targets.len() != s.tgt.shape.wire_count() {
            return Err(Error::Shape(
                "target wire count does not match the shape".into(),
            ));
        }
        let mut elements = Vec::with_capacity(s.apex.len());
        let mut values = Vec::with_capacity(order.len());
        for (x, l) in s.left.iter() {
            values.clear();
            s.shape.node_values(x, &mut values)?;
            if values.len() != order.len() {
                return Err(Error::Shape(format!("wrong number of node values in {x}")));
            }
            let r = s.right.apply(x).expect("total leg");
            elements.push(Element::tuple([
                Element::tuple(s.src.wires(l)?),
                Element::tuple(order.iter().map(|&k| values[k].clone())),
                Element::tuple(s.tgt.wires(r)?),
            ]));
        }
        Ok(FlatForm { graph, elements })
    }

    fn lookup(&self) -> HashMap<&Element, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect()
    }
}

/// Result of [`flatten`]: the flat span and the invertible 2-cell into it.
#[derive(Clone, Debug)]
pub struct Flattened {
    pub span: Span,
    pub iso: SpanTwoCell,
}

/// Rewrites the apex of `s` into flat tuples.
pub fn flatten(s: &Span) -> Result<Flattened> {
    let form = FlatForm::of(s)?;
    let apex = FinSet::new(form.elements.iter().cloned())
        .map_err(|_| Error::Shape("apex elements are not determined by their flat form".into()))?;
    let to_flat = FinFn::from_indices(s.apex.clone(), apex.clone(), (0..apex.len()).collect());
    let inv = to_flat.inverse().expect("bijection by construction");
    let span = Span::assemble(
        s.src.clone(),
        s.tgt.clone(),
        apex,
        fn_compose(&s.left, &inv)?,
        fn_compose(&s.right, &inv)?,
        SpanShape::Flat(Arc::new(form.graph)),
    )?;
    let iso = SpanTwoCell {
        source: s.clone(),
        target: span.clone(),
        map: to_flat,
    };
    Ok(Flattened { span, iso })
}

/// The canonical invertible 2-cell `a ⇒ b` between spans with the same normal form.
pub fn structural_iso(a: &Span, b: &Span) -> Result<SpanTwoCell> {
    if a.src != b.src || a.tgt != b.tgt {
        return Err(Error::NotStructurallyIsomorphic("boundaries differ".into()));
    }
    let fa = FlatForm::of(a)?;
    let fb = FlatForm::of(b)?;
    if fa.graph != fb.graph {
        return Err(Error::NotStructurallyIsomorphic(format!(
            "diagrams differ: {:?} vs {:?}",
            fa.graph, fb.graph
        )));
    }
    if fa.elements.len() != fb.elements.len() {
        return Err(Error::NotStructurallyIsomorphic("apex sizes differ".into()));
    }
    let index = fb.lookup();
    let images =
        fa.elements
            .iter()
            .map(|e| {
                index.get(e).copied().ok_or_else(|| {
                    Error::NotStructurallyIsomorphic(format!("no counterpart for {e}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
    let map = FinFn::from_indices(a.apex.clone(), b.apex.clone(), images);
    SpanTwoCell::new(a.clone(), b.clone(), map)
}

/// Finds some invertible 2-cell `a ⇒ b`, if any.
pub fn span_iso_check(a: &Span, b: &Span) -> Result<Option<SpanTwoCell>> {
    if a.src != b.src || a.tgt != b.tgt {
        return Err(Error::BoundaryMismatch(
            "spans have different boundaries".into(),
        ));
    }
    if a.apex.len() != b.apex.len() {
        return Ok(None);
    }
    let mut fibers: HashMap<(&Element, &Element), Vec<usize>> = HashMap::new();
    for (i, x) in b.apex.iter().enumerate() {
        fibers
            .entry((b.left.apply(x).unwrap(), b.right.apply(x).unwrap()))
            .or_default()
            .push(i);
    }
    let mut images = Vec::with_capacity(a.apex.len());
    for x in &a.apex {
        let key = (a.left.apply(x).unwrap(), a.right.apply(x).unwrap());
        match fibers.get_mut(&key).and_then(|v| v.pop()) {
            Some(i) => images.push(i),
            None => return Ok(None),
        }
    }
    let map = FinFn::from_indices(a.apex.clone(), b.apex.clone(), images);
    Ok(Some(SpanTwoCell::new(a.clone(), b.clone(), map)?))
}

/// Vertically composes `cells`, inserting the structural isomorphism between
/// each target and the next source.
pub fn paste(cells: &[SpanTwoCell]) -> Result<SpanTwoCell> {
    let (first, rest) = cells
        .split_first()
        .ok_or_else(|| Error::BoundaryMismatch("nothing to paste".into()))?;
    let mut acc = first.clone();
    for next in rest {
        let bridge = structural_iso(&acc.target, &next.source)?;
        acc = twocell_vcompose(next, &twocell_vcompose(&bridge, &acc)?)?;
    }
    Ok(acc)
}

/// Compares two 2-cells whose sources and targets have the same normal forms.
/// Returns the first flat source element where they differ.
pub fn compare_modulo_structure(a: &SpanTwoCell, b: &SpanTwoCell) -> Result<Option<Element>> {
    let into_b = structural_iso(&a.source, &b.source)?;
    let back = structural_iso(&b.target, &a.target)?;
    let via_b = twocell_vcompose(&back, &twocell_vcompose(b, &into_b)?)?;
    let src_form = FlatForm::of(&a.source)?;
    for (i, x) in a.source.apex.iter().enumerate() {
        if a.map.apply(x) != via_b.map.apply(x) {
            return Ok(Some(src_form.elements[i].clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::atoms(labels.iter().copied()).unwrap()
    }

    fn gen(name: &str, src: &Obj, tgt: &Obj, entries: &[(&str, Element, Element)]) -> Span {
        let apex = set(&entries.iter().map(|e| e.0).collect::<Vec<_>>());
        let left = FinFn::new(
            apex.clone(),
            src.set.clone(),
            entries.iter().map(|e| (e.0.into(), e.1.clone())),
        )
        .unwrap();
        let right = FinFn::new(
            apex.clone(),
            tgt.set.clone(),
            entries.iter().map(|e| (e.0.into(), e.2.clone())),
        )
        .unwrap();
        Span::generator(name, src.clone(), tgt.clone(), apex, left, right).unwrap()
    }

    fn two() -> Obj {
        Obj::wire(set(&["0", "1"]))
    }

    fn f_span() -> Span {
        gen(
            "f",
            &two(),
            &two(),
            &[
                ("a", "0".into(), "1".into()),
                ("b", "1".into(), "1".into()),
                ("c", "1".into(), "0".into()),
            ],
        )
    }

    fn g_span() -> Span {
        gen(
            "g",
            &two(),
            &two(),
            &[("x", "1".into(), "0".into()), ("y", "1".into(), "1".into())],
        )
    }

    fn h_span() -> Span {
        gen(
            "h",
            &two(),
            &two(),
            &[
                ("p", "0".into(), "0".into()),
                ("q", "0".into(), "1".into()),
                ("r", "1".into(), "1".into()),
            ],
        )
    }

    #[test]
    fn identity_spans() {
        let one = Obj::wire(set(&["x"]));
        let id = span_identity(&one);
        assert_eq!(id.apex.len(), 1);
        let empty = span_identity(&Obj::wire(FinSet::empty()));
        assert!(empty.apex.is_empty());
        let f = f_span();
        let c = span_compose(&span_identity(&two()), &f).unwrap();
        assert!(span_iso_check(&c, &f).unwrap().is_some());
        assert!(structural_iso(&c, &f).unwrap().is_invertible());
    }

    #[test]
    fn composite_apex_is_pullback() {
        let (f, g) = (f_span(), g_span());
        let gf = span_compose(&g, &f).unwrap();
        // f lands in 1 at a and b; g starts at 1 for both x and y.
        assert_eq!(gf.apex.len(), 4);
        assert!(gf.apex.contains(&("a", "x").into()));
        assert!(matches!(
            span_compose(&f, &span_identity(&Obj::wire(set(&["z"])))),
            Err(Error::BoundaryMismatch(_))
        ));
    }

    #[test]
    fn bracketings_flatten_alike() {
        let (f, g, h) = (f_span(), g_span(), h_span());
        let l = span_compose(&h, &span_compose(&g, &f).unwrap()).unwrap();
        let r = span_compose(&span_compose(&h, &g).unwrap(), &f).unwrap();
        let fl = flatten(&l).unwrap();
        let fr = flatten(&r).unwrap();
        assert_eq!(fl.span.apex, fr.span.apex);
        assert!(fl.iso.is_invertible());
        let assoc = structural_iso(&l, &r).unwrap();
        assert!(assoc.is_invertible());
        let again = flatten(&fl.span).unwrap();
        assert_eq!(again.span.apex, fl.span.apex);
        assert!(again.iso.map.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn interchange() {
        let (f, g) = (f_span(), g_span());
        let id = span_identity(&two());
        let a = span_compose(&span_tensor(&f, &id), &span_tensor(&id, &g)).unwrap();
        let b = span_compose(&span_tensor(&id, &g), &span_tensor(&f, &id)).unwrap();
        let iso = structural_iso(&a, &b).unwrap();
        assert!(iso.is_invertible());
        assert_eq!(a.apex.len(), f.apex.len() * g.apex.len());
        let fg = span_tensor(&f, &g);
        assert!(structural_iso(&a, &fg).is_ok());
        assert!(matches!(
            structural_iso(&f, &g),
            Err(Error::NotStructurallyIsomorphic(_))
        ));
    }

    #[test]
    fn tensor_of_identities() {
        let a = Obj::wire(set(&["x", "y"]));
        let t = span_tensor(&span_identity(&a), &span_identity(&two()));
        let id = span_identity(&Obj::prod(&a, &two()));
        assert!(structural_iso(&t, &id).is_ok());
        assert_eq!(t.apex.len(), 4);
    }

    #[test]
    fn reshape_spans() {
        let c = two();
        let lhs = Obj::prod(&Obj::prod(&c, &c), &c);
        let rhs = Obj::prod(&c, &Obj::prod(&c, &c));
        let a = reshape(&lhs, &rhs).unwrap();
        assert!(a.right.is_bijective());
        let back = reshape(&rhs, &lhs).unwrap();
        let round = span_compose(&back, &a).unwrap();
        assert!(structural_iso(&round, &span_identity(&lhs)).is_ok());
        let unit_left = reshape(&Obj::prod(&Obj::unit(), &c), &c).unwrap();
        assert_eq!(
            unit_left.right.apply(&("*", "1").into()),
            Some(&Element::atom("1"))
        );
        assert!(reshape(&c, &lhs).is_err());
    }

    #[test]
    fn whiskering() {
        let f = f_span();
        let id_cell = SpanTwoCell::identity(&g_span());
        let w = whisker_left(&f, &id_cell).unwrap();
        assert!(w.map.iter().all(|(x, y)| x == y));
        let w = whisker_right(&id_cell, &f).unwrap();
        assert!(w.map.iter().all(|(x, y)| x == y));
        let tau = flatten(&g_span()).unwrap().iso;
        let w = whisker_left(&span_identity(&two()), &tau).unwrap();
        let back = compare_modulo_structure(&w, &tau).unwrap();
        assert_eq!(back, None);
    }

    #[test]
    fn two_cells_check_legs() {
        let g = g_span();
        let swap = FinFn::new(
            g.apex.clone(),
            g.apex.clone(),
            [("x".into(), "y".into()), ("y".into(), "x".into())],
        )
        .unwrap();
        assert!(SpanTwoCell::new(g.clone(), g.clone(), swap).is_err());
        let c = SpanTwoCell::identity(&g);
        let cc = twocell_vcompose(&c, &c).unwrap();
        assert_eq!(cc.map, c.map);
    }

    #[test]
    fn iso_check_rejects_different_sizes() {
        let g = g_span();
        let g2 = gen("g", &two(), &two(), &[("x", "1".into(), "0".into())]);
        assert!(span_iso_check(&g, &g2).unwrap().is_none());
        assert!(span_iso_check(&g, &g).unwrap().is_some());
    }
}

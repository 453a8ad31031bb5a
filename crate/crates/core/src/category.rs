//! Finite categories, functors between them, coslice categories and the
//! functors relating coslices.
//!
//! Composition is stored as an explicit table keyed by `(first, second)`:
//! the entry for `(f, g)` is the composite "`f` then `g`", written `g∘f`
//! elsewhere. Tables may be invalid; [`FinCat::validate`] diagnoses them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{fn_compose, FinFn, FinSet};

/// A law that failed, with the element (object, arrow, pair or triple) witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

impl Violation {
    pub fn new(law: impl Into<String>, witness: impl fmt::Display) -> Self {
        Violation {
            law: law.into(),
            witness: witness.to_string(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.law, self.witness)
    }
}

#[derive(Clone)]
struct CatInner {
    objects: FinSet,
    arrows: FinSet,
    dom: FinFn,
    cod: FinFn,
    id: FinFn,
    comp: HashMap<(usize, usize), usize>,
}

/// A finite category given by explicit tables.
#[derive(Clone)]
pub struct FinCat(Arc<CatInner>);

impl FinCat {
    /// Assembles a category from its tables. Only typing is checked here
    /// (every entry names existing objects and arrows); the category laws
    /// are checked by [`FinCat::validate`].
    pub fn new(
        objects: FinSet,
        arrows: FinSet,
        dom: FinFn,
        cod: FinFn,
        id: FinFn,
        comp: impl IntoIterator<Item = ((Element, Element), Element)>,
    ) -> Result<Self> {
        for (name, f, d, c) in [
            ("dom", &dom, &arrows, &objects),
            ("cod", &cod, &arrows, &objects),
            ("id", &id, &objects, &arrows),
        ] {
            if f.domain() != d || f.codomain() != c {
                return Err(Error::InvalidCategory(format!("{name} has the wrong type")));
            }
        }
        let mut table = HashMap::new();
        for ((f, g), h) in comp {
            let fi = arrows
                .index_of(&f)
                .ok_or_else(|| Error::UnknownArrow(f.to_string()))?;
            let gi = arrows
                .index_of(&g)
                .ok_or_else(|| Error::UnknownArrow(g.to_string()))?;
            let hi = arrows
                .index_of(&h)
                .ok_or_else(|| Error::UnknownArrow(h.to_string()))?;
            if let Some(prev) = table.insert((fi, gi), hi) {
                if prev != hi {
                    return Err(Error::InvalidCategory(format!(
                        "two composites given for ({f},{g})"
                    )));
                }
            }
        }
        Ok(FinCat(Arc::new(CatInner {
            objects,
            arrows,
            dom,
            cod,
            id,
            comp: table,
        })))
    }

    /// Like [`FinCat::new`], but also requires the category laws to hold.
    pub fn checked(
        objects: FinSet,
        arrows: FinSet,
        dom: FinFn,
        cod: FinFn,
        id: FinFn,
        comp: impl IntoIterator<Item = ((Element, Element), Element)>,
    ) -> Result<Self> {
        let c = Self::new(objects, arrows, dom, cod, id, comp)?;
        c.require_valid()?;
        Ok(c)
    }

    pub fn objects(&self) -> &FinSet {
        &self.0.objects
    }

    pub fn arrows(&self) -> &FinSet {
        &self.0.arrows
    }

    pub fn dom_fn(&self) -> &FinFn {
        &self.0.dom
    }

    pub fn cod_fn(&self) -> &FinFn {
        &self.0.cod
    }

    pub fn id_fn(&self) -> &FinFn {
        &self.0.id
    }

    pub fn dom(&self, f: &Element) -> Result<&Element> {
        self.0
            .dom
            .apply(f)
            .ok_or_else(|| Error::UnknownArrow(f.to_string()))
    }

    pub fn cod(&self, f: &Element) -> Result<&Element> {
        self.0
            .cod
            .apply(f)
            .ok_or_else(|| Error::UnknownArrow(f.to_string()))
    }

    pub fn id(&self, x: &Element) -> Result<&Element> {
        self.0
            .id
            .apply(x)
            .ok_or_else(|| Error::UnknownObject(x.to_string()))
    }

    /// The composite "`f` then `g`", if the table defines it.
    pub fn compose(&self, f: &Element, g: &Element) -> Option<&Element> {
        let fi = self.0.arrows.index_of(f)?;
        let gi = self.0.arrows.index_of(g)?;
        self.0.comp.get(&(fi, gi)).map(|&h| self.0.arrows.get(h))
    }

    pub fn is_composable(&self, f: &Element, g: &Element) -> bool {
        matches!((self.cod(f), self.dom(g)), (Ok(a), Ok(b)) if a == b)
    }

    /// All pairs `(f, g)` with `cod f = dom g`, ordered lexicographically.
    pub fn composable_pairs(&self) -> FinSet {
        let mut out = Vec::new();
        for f in self.arrows() {
            for g in self.arrows() {
                if self.is_composable(f, g) {
                    out.push(Element::pair(f.clone(), g.clone()));
                }
            }
        }
        FinSet::new(out).expect("distinct pairs")
    }

    /// The composition table as a function on composable pairs.
    pub fn comp_fn(&self) -> Result<FinFn> {
        FinFn::try_from_fn(self.composable_pairs(), self.arrows().clone(), |p| {
            let (f, g) = p.as_pair().expect("pair");
            self.compose(f, g)
                .cloned()
                .ok_or_else(|| Error::InvalidCategory(format!("no composite for {p}")))
        })
    }

    /// Raw composition entries, in arrow order.
    pub fn comp_entries(&self) -> Vec<((Element, Element), Element)> {
        let mut out = Vec::new();
        for f in self.arrows() {
            for g in self.arrows() {
                if let Some(h) = self.compose(f, g) {
                    out.push(((f.clone(), g.clone()), h.clone()));
                }
            }
        }
        out
    }

    pub fn hom(&self, x: &Element, y: &Element) -> Vec<Element> {
        self.arrows()
            .iter()
            .filter(|f| self.dom(f).ok() == Some(x) && self.cod(f).ok() == Some(y))
            .cloned()
            .collect()
    }

    /// Checks identities, typing of composites, unit laws and associativity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for x in self.objects() {
            let i = self.id(x).expect("id is total");
            if self.dom(i).ok() != Some(x) || self.cod(i).ok() != Some(x) {
                out.push(Violation::new("identity has wrong endpoints", x));
            }
        }
        for f in self.arrows() {
            for g in self.arrows() {
                let composable = self.is_composable(f, g);
                let pair = Element::pair(f.clone(), g.clone());
                match (composable, self.compose(f, g)) {
                    (true, None) => out.push(Violation::new("composite missing", &pair)),
                    (false, Some(_)) => out.push(Violation::new(
                        "composite defined for non-composable pair",
                        &pair,
                    )),
                    (true, Some(h)) => {
                        if self.dom(h).ok() != self.dom(f).ok()
                            || self.cod(h).ok() != self.cod(g).ok()
                        {
                            out.push(Violation::new("composite has wrong endpoints", &pair));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in self.arrows() {
            let x = self.dom(f).unwrap();
            let y = self.cod(f).unwrap();
            if self.compose(self.id(x).unwrap(), f) != Some(f) {
                out.push(Violation::new("left identity law", f));
            }
            if self.compose(f, self.id(y).unwrap()) != Some(f) {
                out.push(Violation::new("right identity law", f));
            }
        }
        for f in self.arrows() {
            for g in self.arrows() {
                let Some(gf) = self.compose(f, g) else {
                    continue;
                };
                for h in self.arrows() {
                    let Some(hg) = self.compose(g, h) else {
                        continue;
                    };
                    if self.compose(gf, h) != self.compose(f, hg) {
                        out.push(Violation::new(
                            "associativity",
                            Element::tuple([f.clone(), g.clone(), h.clone()]),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidCategory(v.to_string())),
        }
    }

    /// Equality of all tables (labels included).
    pub fn same_as(&self, other: &FinCat) -> bool {
        self.objects() == other.objects()
            && self.arrows() == other.arrows()
            && self.dom_fn() == other.dom_fn()
            && self.cod_fn() == other.cod_fn()
            && self.id_fn() == other.id_fn()
            && {
                let mine = self.comp_entries();
                mine.len() == other.comp_entries().len()
                    && mine
                        .iter()
                        .all(|((f, g), h)| other.compose(f, g) == Some(h))
            }
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", self.objects())
            .field("arrows", self.arrows())
            .finish()
    }
}

/// A functor, given by its object and arrow maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub source: FinCat,
    pub target: FinCat,
    pub on_objects: FinFn,
    pub on_arrows: FinFn,
}

impl Functor {
    /// Assembles a functor; the maps must be typed correctly, the functor laws
    /// are checked separately by [`Functor::validate`].
    pub fn new(
        source: FinCat,
        target: FinCat,
        on_objects: FinFn,
        on_arrows: FinFn,
    ) -> Result<Self> {
        if on_objects.domain() != source.objects() || on_objects.codomain() != target.objects() {
            return Err(Error::InvalidFunctor(
                "object map has the wrong type".into(),
            ));
        }
        if on_arrows.domain() != source.arrows() || on_arrows.codomain() != target.arrows() {
            return Err(Error::InvalidFunctor("arrow map has the wrong type".into()));
        }
        Ok(Functor {
            source,
            target,
            on_objects,
            on_arrows,
        })
    }

    pub fn identity(c: &FinCat) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            on_objects: FinFn::identity(c.objects()),
            on_arrows: FinFn::identity(c.arrows()),
        }
    }

    pub fn obj(&self, x: &Element) -> Result<&Element> {
        self.on_objects.at(x)
    }

    pub fn arr(&self, f: &Element) -> Result<&Element> {
        self.on_arrows.at(f)
    }

    /// Checks preservation of domains, codomains, identities and composites.
    pub fn validate(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for f in s.arrows() {
            let ff = self.arr(f).unwrap();
            if t.dom(ff).ok() != self.obj(s.dom(f).unwrap()).ok() {
                out.push(Violation::new("functor does not preserve domains", f));
            }
            if t.cod(ff).ok() != self.obj(s.cod(f).unwrap()).ok() {
                out.push(Violation::new("functor does not preserve codomains", f));
            }
        }
        for x in s.objects() {
            let fx = self.obj(x).unwrap();
            if self.arr(s.id(x).unwrap()).ok() != t.id(fx).ok() {
                out.push(Violation::new("functor does not preserve identities", x));
            }
        }
        for (pair, h) in s.comp_entries() {
            let (f, g) = pair;
            let lhs = self.arr(&h).unwrap();
            let rhs = t.compose(self.arr(&f).unwrap(), self.arr(&g).unwrap());
            if rhs != Some(lhs) {
                out.push(Violation::new(
                    "functor does not preserve composition",
                    Element::pair(f, g),
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFunctor(v.to_string())),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Result<Functor> {
        Functor::new(
            self.source.clone(),
            next.target.clone(),
            fn_compose(&next.on_objects, &self.on_objects)?,
            fn_compose(&next.on_arrows, &self.on_arrows)?,
        )
    }

    pub fn is_identity(&self) -> bool {
        self.on_objects.iter().all(|(x, y)| x == y) && self.on_arrows.iter().all(|(x, y)| x == y)
    }

    /// Pointwise equality of the object and arrow maps.
    pub fn agrees_with(&self, other: &Functor) -> bool {
        self.on_objects == other.on_objects && self.on_arrows == other.on_arrows
    }
}

/// The coslice `(x ↓ C)`.
///
/// Objects are the arrows `f` of the base with `dom f = x`; the arrow
/// `g: f -> gf` is the pair `(f, g)`.
#[derive(Clone, Debug)]
pub struct CosliceCat {
    pub base: FinCat,
    pub vertex: Element,
    pub cat: FinCat,
    /// Sends the triangle `(f, g)` to the base arrow `g`.
    pub witnesses: FinFn,
}

pub fn coslice(c: &FinCat, x: &Element) -> Result<CosliceCat> {
    if !c.objects().contains(x) {
        return Err(Error::UnknownObject(x.to_string()));
    }
    let objects = c.arrows().filter(|f| c.dom(f).ok() == Some(x));
    let mut arrows = Vec::new();
    for f in objects.iter() {
        for g in c.arrows() {
            if c.is_composable(f, g) {
                arrows.push(Element::pair(f.clone(), g.clone()));
            }
        }
    }
    let arrows = FinSet::new(arrows)?;
    let dom = FinFn::from_fn(arrows.clone(), objects.clone(), |a| {
        a.fst().unwrap().clone()
    })?;
    let cod = FinFn::try_from_fn(arrows.clone(), objects.clone(), |a| {
        let (f, g) = a.as_pair().unwrap();
        composite(c, f, g)
    })?;
    let id = FinFn::try_from_fn(objects.clone(), arrows.clone(), |f| {
        Ok(Element::pair(f.clone(), c.id(c.cod(f)?)?.clone()))
    })?;
    let mut comp = Vec::new();
    for a in arrows.iter() {
        let (f, g) = a.as_pair().unwrap();
        let gf = composite(c, f, g)?;
        for h in c.arrows() {
            if c.is_composable(g, h) {
                let b = Element::pair(gf.clone(), h.clone());
                let hg = composite(c, g, h)?;
                comp.push(((a.clone(), b), Element::pair(f.clone(), hg)));
            }
        }
    }
    let witnesses = FinFn::from_fn(arrows.clone(), c.arrows().clone(), |a| {
        a.snd().unwrap().clone()
    })?;
    let cat = FinCat::new(objects, arrows, dom, cod, id, comp)?;
    Ok(CosliceCat {
        base: c.clone(),
        vertex: x.clone(),
        cat,
        witnesses,
    })
}

fn composite(c: &FinCat, f: &Element, g: &Element) -> Result<Element> {
    c.compose(f, g)
        .cloned()
        .ok_or_else(|| Error::InvalidCategory(format!("no composite for ({f},{g})")))
}

/// `Cod_x: (x ↓ C) -> C`, sending `f` to `cod f` and `(f, g)` to `g`.
pub fn coslice_cod(c: &FinCat, x: &Element) -> Result<Functor> {
    let cs = coslice(c, x)?;
    let on_objects = FinFn::try_from_fn(cs.cat.objects().clone(), c.objects().clone(), |f| {
        c.cod(f).cloned()
    })?;
    Functor::new(cs.cat, c.clone(), on_objects, cs.witnesses)
}

/// The functor `(x ↓ T): (x ↓ A) -> (Tx ↓ B)` induced by `T: A -> B`.
pub fn induced_coslice_functor(t: &Functor, x: &Element) -> Result<Functor> {
    t.require_valid()?;
    let src = coslice(&t.source, x)?;
    let tgt = coslice(&t.target, t.obj(x)?)?;
    let on_objects =
        FinFn::try_from_fn(src.cat.objects().clone(), tgt.cat.objects().clone(), |f| {
            t.arr(f).cloned()
        })?;
    let on_arrows = FinFn::try_from_fn(src.cat.arrows().clone(), tgt.cat.arrows().clone(), |a| {
        let (f, g) = a.as_pair().unwrap();
        Ok(Element::pair(t.arr(f)?.clone(), t.arr(g)?.clone()))
    })?;
    Functor::new(src.cat, tgt.cat, on_objects, on_arrows)
}

/// The invertible functor `(f ↓ Cod_x): (f ↓ (x ↓ C)) -> (y ↓ C)` for
/// `f: x -> y`, together with its inverse.
pub fn coslice_of_coslice_iso(c: &FinCat, f: &Element) -> Result<(Functor, Functor)> {
    if !c.arrows().contains(f) {
        return Err(Error::UnknownArrow(f.to_string()));
    }
    let x = c.dom(f)?.clone();
    let y = c.cod(f)?.clone();
    let outer = coslice(c, &x)?;
    let nested = coslice(&outer.cat, f)?;
    let target = coslice(c, &y)?;
    // Objects of the nested coslice are (f, g); arrows are ((f, g), (gf, h)).
    let fwd_obj = FinFn::from_fn(
        nested.cat.objects().clone(),
        target.cat.objects().clone(),
        |o| o.snd().unwrap().clone(),
    )?;
    let fwd_arr = FinFn::from_fn(
        nested.cat.arrows().clone(),
        target.cat.arrows().clone(),
        |a| {
            let (fg, gfh) = a.as_pair().unwrap();
            Element::pair(fg.snd().unwrap().clone(), gfh.snd().unwrap().clone())
        },
    )?;
    let inv_obj = FinFn::from_fn(
        target.cat.objects().clone(),
        nested.cat.objects().clone(),
        |g| Element::pair(f.clone(), g.clone()),
    )?;
    let inv_arr = FinFn::try_from_fn(
        target.cat.arrows().clone(),
        nested.cat.arrows().clone(),
        |a| {
            let (g, h) = a.as_pair().unwrap();
            let gf = composite(c, f, g)?;
            Ok(Element::pair(
                Element::pair(f.clone(), g.clone()),
                Element::pair(gf, h.clone()),
            ))
        },
    )?;
    let fwd = Functor::new(nested.cat.clone(), target.cat.clone(), fwd_obj, fwd_arr)?;
    let inv = Functor::new(target.cat, nested.cat, inv_obj, inv_arr)?;
    if !fwd.then(&inv)?.is_identity() || !inv.then(&fwd)?.is_identity() {
        return Err(Error::InvalidCategory(format!(
            "(f ↓ Cod_x) is not invertible at {f}"
        )));
    }
    Ok((fwd, inv))
}

/// Tag used by [`cat_coproduct`] for the `i`-th summand.
pub fn summand_tag(i: usize) -> Element {
    Element::atom(format!("#{i}"))
}

/// Disjoint union of categories; objects and arrows are tagged `(#i, e)`.
pub fn cat_coproduct(cs: &[FinCat]) -> Result<(FinCat, Vec<Functor>)> {
    let tag = |i: usize, e: &Element| Element::pair(summand_tag(i), e.clone());
    let objects = FinSet::new(
        cs.iter()
            .enumerate()
            .flat_map(|(i, c)| c.objects().iter().map(move |x| tag(i, x))),
    )?;
    let arrows = FinSet::new(
        cs.iter()
            .enumerate()
            .flat_map(|(i, c)| c.arrows().iter().map(move |f| tag(i, f))),
    )?;
    let index_of = |e: &Element| -> usize {
        e.fst()
            .and_then(Element::as_atom)
            .and_then(|s| s.strip_prefix('#'))
            .and_then(|s| s.parse().ok())
            .expect("tagged element")
    };
    let dom = FinFn::try_from_fn(arrows.clone(), objects.clone(), |a| {
        let i = index_of(a);
        Ok(tag(i, cs[i].dom(a.snd().unwrap())?))
    })?;
    let cod = FinFn::try_from_fn(arrows.clone(), objects.clone(), |a| {
        let i = index_of(a);
        Ok(tag(i, cs[i].cod(a.snd().unwrap())?))
    })?;
    let id = FinFn::try_from_fn(objects.clone(), arrows.clone(), |x| {
        let i = index_of(x);
        Ok(tag(i, cs[i].id(x.snd().unwrap())?))
    })?;
    let comp = cs.iter().enumerate().flat_map(|(i, c)| {
        c.comp_entries()
            .into_iter()
            .map(move |((f, g), h)| ((tag(i, &f), tag(i, &g)), tag(i, &h)))
    });
    let sum = FinCat::new(objects.clone(), arrows.clone(), dom, cod, id, comp)?;
    let injections = cs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Functor::new(
                c.clone(),
                sum.clone(),
                FinFn::from_fn(c.objects().clone(), objects.clone(), |x| tag(i, x))?,
                FinFn::from_fn(c.arrows().clone(), arrows.clone(), |f| tag(i, f))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sum, injections))
}

/// An isomorphism of categories, as bijections on objects and arrows.
#[derive(Clone, Debug)]
pub struct CatIso {
    pub on_objects: FinFn,
    pub on_arrows: FinFn,
}

/// Searches for an isomorphism `a ≅ b` by backtracking over arrow
/// assignments. Intended for small categories.
pub fn find_isomorphism(a: &FinCat, b: &FinCat) -> Option<CatIso> {
    if a.objects().len() != b.objects().len() || a.arrows().len() != b.arrows().len() {
        return None;
    }
    let na = a.arrows().len();
    let a_dom: Vec<usize> = (0..na)
        .map(|i| {
            a.objects()
                .index_of(a.dom(a.arrows().get(i)).unwrap())
                .unwrap()
        })
        .collect();
    let a_cod: Vec<usize> = (0..na)
        .map(|i| {
            a.objects()
                .index_of(a.cod(a.arrows().get(i)).unwrap())
                .unwrap()
        })
        .collect();
    let b_dom: Vec<usize> = (0..na)
        .map(|i| {
            b.objects()
                .index_of(b.dom(b.arrows().get(i)).unwrap())
                .unwrap()
        })
        .collect();
    let b_cod: Vec<usize> = (0..na)
        .map(|i| {
            b.objects()
                .index_of(b.cod(b.arrows().get(i)).unwrap())
                .unwrap()
        })
        .collect();
    let a_is_id: Vec<bool> = (0..na)
        .map(|i| a.id(a.dom(a.arrows().get(i)).unwrap()).ok() == Some(a.arrows().get(i)))
        .collect();
    let b_is_id: Vec<bool> = (0..na)
        .map(|i| b.id(b.dom(b.arrows().get(i)).unwrap()).ok() == Some(b.arrows().get(i)))
        .collect();

    struct State {
        obj: Vec<Option<usize>>,
        obj_used: Vec<bool>,
        arr: Vec<Option<usize>>,
        arr_used: Vec<bool>,
    }

    fn bind(st: &mut State, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        match st.obj[x] {
            Some(z) => z == y,
            None if st.obj_used[y] => false,
            None => {
                st.obj[x] = Some(y);
                st.obj_used[y] = true;
                trail.push(x);
                true
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        st: &mut State,
        a: &FinCat,
        b: &FinCat,
        dims: (&[usize], &[usize], &[usize], &[usize]),
        ids: (&[bool], &[bool]),
    ) -> bool {
        let (a_dom, a_cod, b_dom, b_cod) = dims;
        let na = a_dom.len();
        if i == na {
            // Unused objects can only be objects without arrows, which cannot
            // happen since every object has an identity.
            return a.comp_entries().into_iter().all(|((f, g), h)| {
                let m = |e: &Element| {
                    b.arrows()
                        .get(st.arr[a.arrows().index_of(e).unwrap()].unwrap())
                };
                b.compose(m(&f), m(&g)) == Some(m(&h))
            });
        }
        for j in 0..na {
            if st.arr_used[j] || ids.0[i] != ids.1[j] {
                continue;
            }
            let mut trail = Vec::new();
            let ok = bind(st, a_dom[i], b_dom[j], &mut trail)
                && bind(st, a_cod[i], b_cod[j], &mut trail);
            if ok {
                st.arr[i] = Some(j);
                st.arr_used[j] = true;
                if go(i + 1, st, a, b, dims, ids) {
                    return true;
                }
                st.arr[i] = None;
                st.arr_used[j] = false;
            }
            for x in trail {
                let y = st.obj[x].take().unwrap();
                st.obj_used[y] = false;
            }
        }
        false
    }

    let no = a.objects().len();
    let mut st = State {
        obj: vec![None; no],
        obj_used: vec![false; no],
        arr: vec![None; na],
        arr_used: vec![false; na],
    };
    if !go(
        0,
        &mut st,
        a,
        b,
        (&a_dom, &a_cod, &b_dom, &b_cod),
        (&a_is_id, &b_is_id),
    ) {
        return None;
    }
    let on_objects = FinFn::from_indices(
        a.objects().clone(),
        b.objects().clone(),
        st.obj
            .iter()
            .map(|o| o.expect("every object has an identity"))
            .collect(),
    );
    let on_arrows = FinFn::from_indices(
        a.arrows().clone(),
        b.arrows().clone(),
        st.arr.iter().map(|o| o.unwrap()).collect(),
    );
    Some(CatIso {
        on_objects,
        on_arrows,
    })
}

pub fn is_isomorphic(a: &FinCat, b: &FinCat) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{
        interval_category, one_object_category, t_category, terminal_category, zmod,
    };

    fn e(s: &str) -> Element {
        Element::atom(s)
    }

    #[test]
    fn interval_is_valid_and_bad_table_is_not() {
        let two = interval_category();
        assert!(two.validate().is_empty());
        let mut comp = two.comp_entries();
        comp.push(((e("u"), e("u")), e("u")));
        let bad = FinCat::new(
            two.objects().clone(),
            two.arrows().clone(),
            two.dom_fn().clone(),
            two.cod_fn().clone(),
            two.id_fn().clone(),
            comp,
        )
        .unwrap();
        let v = bad.validate();
        assert!(v
            .iter()
            .any(|v| v.law == "composite defined for non-composable pair"));
    }

    #[test]
    fn coslices_of_interval() {
        let two = interval_category();
        let ca = coslice(&two, &e("a")).unwrap();
        assert_eq!(ca.cat.objects(), &FinSet::atoms(["1a", "u"]).unwrap());
        assert!(ca.cat.is_valid());
        let non_identity: Vec<_> = ca
            .cat
            .arrows()
            .iter()
            .filter(|f| ca.cat.id(ca.cat.dom(f).unwrap()).unwrap() != *f)
            .collect();
        assert_eq!(non_identity, vec![&Element::pair(e("1a"), e("u"))]);
        assert_eq!(ca.cat.dom(non_identity[0]).unwrap(), &e("1a"));
        assert_eq!(ca.cat.cod(non_identity[0]).unwrap(), &e("u"));
        let cb = coslice(&two, &e("b")).unwrap();
        assert_eq!(cb.cat.objects().len(), 1);
        assert_eq!(cb.cat.arrows().len(), 1);
        assert!(matches!(
            coslice(&two, &e("z")),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn coslice_in_t_zmod2() {
        let t = t_category(&zmod(2));
        let c0 = coslice(&t, &e("0")).unwrap();
        assert_eq!(
            c0.cat.objects(),
            &FinSet::new([("0", "0").into(), ("0", "1").into()]).unwrap()
        );
        assert!(c0.cat.is_valid());
    }

    #[test]
    fn cod_functor_on_interval() {
        let two = interval_category();
        let cod = coslice_cod(&two, &e("a")).unwrap();
        assert!(cod.is_valid());
        assert_eq!(cod.obj(&e("1a")).unwrap(), &e("a"));
        assert_eq!(cod.obj(&e("u")).unwrap(), &e("b"));
        let idu = cod.source.id(&e("u")).unwrap().clone();
        assert_eq!(cod.arr(&idu).unwrap(), &e("1b"));
    }

    #[test]
    fn induced_functor_of_identity_and_collapse() {
        let two = interval_category();
        let id = Functor::identity(&two);
        let ind = induced_coslice_functor(&id, &e("a")).unwrap();
        assert!(ind.is_identity() && ind.is_valid());

        let one = terminal_category();
        let collapse = Functor::new(
            two.clone(),
            one.clone(),
            FinFn::from_fn(two.objects().clone(), one.objects().clone(), |_| e("*")).unwrap(),
            FinFn::from_fn(two.arrows().clone(), one.arrows().clone(), |_| e("1")).unwrap(),
        )
        .unwrap();
        assert!(collapse.is_valid());
        let ind = induced_coslice_functor(&collapse, &e("a")).unwrap();
        assert!(ind.is_valid());
        assert_eq!(ind.target.objects().len(), 1);
        assert!(ind.on_objects.iter().all(|(_, y)| y == &e("1")));
    }

    #[test]
    fn nested_coslice_isos() {
        let two = interval_category();
        for f in two.arrows() {
            let (fwd, inv) = coslice_of_coslice_iso(&two, f).unwrap();
            assert!(fwd.is_valid() && inv.is_valid());
        }
        let (fwd, _) = coslice_of_coslice_iso(&two, &e("1a")).unwrap();
        assert_eq!(fwd.target.objects().len(), 2);
        let t = t_category(&zmod(2));
        let f01: Element = ("0", "1").into();
        let (fwd, _) = coslice_of_coslice_iso(&t, &f01).unwrap();
        let expected = t.arrows().filter(|g| t.dom(g).unwrap() == &e("1"));
        assert_eq!(fwd.target.objects(), &expected);
        assert!(fwd.on_objects.is_bijective());
        assert!(matches!(
            coslice_of_coslice_iso(&two, &e("nope")),
            Err(Error::UnknownArrow(_))
        ));
    }

    #[test]
    fn coproducts() {
        let two = interval_category();
        let one = terminal_category();
        let (single, inj) = cat_coproduct(std::slice::from_ref(&two)).unwrap();
        assert!(is_isomorphic(&single, &two));
        assert!(inj[0].is_valid());
        let (sum, inj) = cat_coproduct(&[two.clone(), one.clone()]).unwrap();
        assert_eq!(sum.objects().len(), 3);
        assert_eq!(sum.arrows().len(), 4);
        assert!(sum.is_valid());
        assert!(inj.iter().all(Functor::is_valid));
        let coslices: Vec<FinCat> = two
            .objects()
            .iter()
            .map(|x| coslice(&two, x).unwrap().cat)
            .collect();
        let (dec, _) = cat_coproduct(&coslices).unwrap();
        assert!(is_isomorphic(&dec, &sum));
    }

    #[test]
    fn isomorphism_search() {
        let two = interval_category();
        let one = terminal_category();
        assert!(!is_isomorphic(&two, &one));
        let b2 = one_object_category(&zmod(2));
        let b3 = one_object_category(&zmod(3));
        assert!(is_isomorphic(&b2, &b2));
        assert!(!is_isomorphic(&b2, &b3));
        let iso = find_isomorphism(&two, &two).unwrap();
        assert!(iso.on_arrows.is_bijective());
    }
}

//! Skew monoidales in `Span`, stored by their components, with two
//! independent axiom checkers: one evaluates equations between the
//! components directly, the other pastes the axiom diagrams out of spans and
//! 2-cells and compares the results.
//!
//! Notation in comments: for `(f, g)` with `t f = s g`, `gf = δ(f, g)` and
//! `g^f = τ(f, g)`; `1_x = φ(x)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::Violation;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{pullback, FinFn, FinSet};
use crate::span::{
    compare_modulo_structure, paste, reshape, span_compose, span_identity, span_tensor,
    twocell_tensor, whisker_left, whisker_right, Obj, Span, SpanTwoCell,
};

/// A skew monoidale on the carrier `c`:
/// tensor `c × c <-(s,r)- e -t-> c`, unit `1 <- u -j-> c`,
/// right unit components `phi: c -> e`, `psi: c -> u`, and associator
/// components `tau, delta: X -> e` on `X = {(f, g) | t f = s g}`.
/// The left unit is determined by the rest and is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMonoidaleData {
    pub c: FinSet,
    pub e: FinSet,
    pub s: FinFn,
    pub r: FinFn,
    pub t: FinFn,
    pub u: FinSet,
    pub j: FinFn,
    pub phi: FinFn,
    pub psi: FinFn,
    pub tau: FinFn,
    pub delta: FinFn,
}

/// The stored component functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    S,
    R,
    T,
    J,
    Phi,
    Psi,
    Tau,
    Delta,
}

impl Field {
    pub const ALL: [Field; 8] = [
        Field::S,
        Field::R,
        Field::T,
        Field::J,
        Field::Phi,
        Field::Psi,
        Field::Tau,
        Field::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::S => "s",
            Field::R => "r",
            Field::T => "t",
            Field::J => "j",
            Field::Phi => "phi",
            Field::Psi => "psi",
            Field::Tau => "tau",
            Field::Delta => "delta",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn typed(name: &str, f: &FinFn, dom: &FinSet, cod: &FinSet) -> Result<()> {
    if f.domain() != dom {
        return Err(Error::DomainMismatch(format!(
            "{name} has the wrong domain"
        )));
    }
    if f.codomain() != cod {
        return Err(Error::DomainMismatch(format!(
            "{name} has the wrong codomain"
        )));
    }
    Ok(())
}

impl SkewMonoidaleData {
    /// Checks that every component has the right domain and codomain.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: FinSet,
        e: FinSet,
        s: FinFn,
        r: FinFn,
        t: FinFn,
        u: FinSet,
        j: FinFn,
        phi: FinFn,
        psi: FinFn,
        tau: FinFn,
        delta: FinFn,
    ) -> Result<Self> {
        let m = SkewMonoidaleData {
            c,
            e,
            s,
            r,
            t,
            u,
            j,
            phi,
            psi,
            tau,
            delta,
        };
        m.check_types()?;
        Ok(m)
    }

    fn check_types(&self) -> Result<()> {
        typed("s", &self.s, &self.e, &self.c)?;
        typed("r", &self.r, &self.e, &self.c)?;
        typed("t", &self.t, &self.e, &self.c)?;
        typed("j", &self.j, &self.u, &self.c)?;
        typed("phi", &self.phi, &self.c, &self.e)?;
        typed("psi", &self.psi, &self.c, &self.u)?;
        let x = self.composable();
        typed("tau", &self.tau, &x, &self.e)?;
        typed("delta", &self.delta, &x, &self.e)?;
        Ok(())
    }

    /// `X = {(f, g) | t f = s g}`, the domain of `tau` and `delta`.
    pub fn composable(&self) -> FinSet {
        pullback(&self.t, &self.s)
            .expect("s and t share a codomain")
            .apex
    }

    /// `{(u, f) | j u = s f}`, the domain of the left unit.
    pub fn unit_pairs(&self) -> FinSet {
        pullback(&self.j, &self.s)
            .expect("j and s share a codomain")
            .apex
    }

    pub fn field(&self, f: Field) -> &FinFn {
        match f {
            Field::S => &self.s,
            Field::R => &self.r,
            Field::T => &self.t,
            Field::J => &self.j,
            Field::Phi => &self.phi,
            Field::Psi => &self.psi,
            Field::Tau => &self.tau,
            Field::Delta => &self.delta,
        }
    }

    /// Copy with one component replaced; the types are rechecked.
    pub fn with_field(&self, f: Field, value: FinFn) -> Result<Self> {
        let mut m = self.clone();
        *match f {
            Field::S => &mut m.s,
            Field::R => &mut m.r,
            Field::T => &mut m.t,
            Field::J => &mut m.j,
            Field::Phi => &mut m.phi,
            Field::Psi => &mut m.psi,
            Field::Tau => &mut m.tau,
            Field::Delta => &mut m.delta,
        } = value;
        m.check_types()?;
        Ok(m)
    }

    fn ap<'a>(f: &'a FinFn, x: &Element) -> &'a Element {
        f.apply(x).expect("total component")
    }

    pub fn comp(&self, f: &Element, g: &Element) -> &Element {
        Self::ap(&self.delta, &Element::pair(f.clone(), g.clone()))
    }

    pub fn act(&self, f: &Element, g: &Element) -> &Element {
        Self::ap(&self.tau, &Element::pair(f.clone(), g.clone()))
    }

    /// The left unit `(u, f) ↦ r f`, when `r f = t f` on every unit pair.
    pub fn lambda(&self) -> Option<FinFn> {
        let p = self.unit_pairs();
        FinFn::try_from_fn(p, self.c.clone(), |q| {
            let f = q.snd().unwrap();
            let (rf, tf) = (Self::ap(&self.r, f), Self::ap(&self.t, f));
            if rf == tf {
                Ok(rf.clone())
            } else {
                Err(Error::NotWellFormed(q.to_string()))
            }
        })
        .ok()
    }

    /// `r = t` pointwise.
    pub fn r_equals_t(&self) -> bool {
        self.r == self.t
    }

    pub fn is_wellformed(&self) -> bool {
        wellformed(self).is_empty()
    }
}

/// Pointwise check of the leg conditions on the stored 2-cells and of the
/// existence of the left unit.
pub fn wellformed(m: &SkewMonoidaleData) -> Vec<Violation> {
    let ap = SkewMonoidaleData::ap;
    let mut out = Vec::new();
    for x in &m.c {
        let p = ap(&m.phi, x);
        if ap(&m.t, p) != x {
            out.push(Violation::new("rho: t(phi x) = x", x));
        }
        if ap(&m.s, p) != x {
            out.push(Violation::new("rho: s(phi x) = x", x));
        }
        if ap(&m.r, p) != ap(&m.j, ap(&m.psi, x)) {
            out.push(Violation::new("rho: r(phi x) = j(psi x)", x));
        }
    }
    for fg in &m.composable() {
        let (f, g) = fg.as_pair().unwrap();
        let (d, a) = (ap(&m.delta, fg), ap(&m.tau, fg));
        if ap(&m.t, d) != ap(&m.t, g) {
            out.push(Violation::new("alpha: t(gf) = t g", fg));
        }
        if ap(&m.s, d) != ap(&m.s, f) {
            out.push(Violation::new("alpha: s(gf) = s f", fg));
        }
        if ap(&m.s, a) != ap(&m.r, f) {
            out.push(Violation::new("alpha: s(g^f) = r f", fg));
        }
        if ap(&m.r, a) != ap(&m.r, g) {
            out.push(Violation::new("alpha: r(g^f) = r g", fg));
        }
        if ap(&m.r, d) != ap(&m.t, a) {
            out.push(Violation::new("alpha: r(gf) = t(g^f)", fg));
        }
    }
    for q in &m.unit_pairs() {
        let f = q.snd().unwrap();
        if ap(&m.r, f) != ap(&m.t, f) {
            out.push(Violation::new("lambda exists: r f = t f when s f = j u", q));
        }
    }
    out
}

/// The five skew monoidale axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Pentagon,
    Left,
    Right,
    Middle,
    UnitUnit,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Pentagon,
        Axiom::Left,
        Axiom::Right,
        Axiom::Middle,
        Axiom::UnitUnit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Pentagon => "pentagon",
            Axiom::Left => "left",
            Axiom::Right => "right",
            Axiom::Middle => "middle",
            Axiom::UnitUnit => "unit-unit",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// The failing equation, for the pointwise checker.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomVerdict {
    fn pass(axiom: Axiom) -> Self {
        AxiomVerdict {
            axiom,
            holds: true,
            equation: None,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, equation: Option<&str>, witness: impl fmt::Display) -> Self {
        AxiomVerdict {
            axiom,
            holds: false,
            equation: equation.map(str::to_owned),
            witness: Some(witness.to_string()),
        }
    }
}

fn require_wellformed(m: &SkewMonoidaleData) -> Result<()> {
    match wellformed(m).first() {
        None => Ok(()),
        Some(v) => Err(Error::NotWellFormed(v.to_string())),
    }
}

/// Evaluates the axioms as equations between the components.
pub fn axioms_pointwise(m: &SkewMonoidaleData) -> Result<Vec<AxiomVerdict>> {
    require_wellformed(m)?;
    let ap = SkewMonoidaleData::ap;
    let x = m.composable();
    let mut out = Vec::with_capacity(5);

    // Pentagon: composable triples f, g, h.
    let mut pent = AxiomVerdict::pass(Axiom::Pentagon);
    'outer: for fg in &x {
        let (f, g) = fg.as_pair().unwrap();
        let gf = m.comp(f, g);
        let gf_ = m.act(f, g);
        for h in &m.e {
            if ap(&m.s, h) != ap(&m.t, g) {
                continue;
            }
            let hg = m.comp(g, h);
            let h_gf = m.act(gf, h);
            let checks = [
                (
                    "associativity: (hg)f = h(gf)",
                    m.comp(f, hg) == m.comp(gf, h),
                ),
                ("(hg)^f = h^(gf) g^f", m.act(f, hg) == m.comp(gf_, h_gf)),
                ("h^g = (h^(gf))^(g^f)", m.act(g, h) == m.act(gf_, h_gf)),
            ];
            if let Some((eq, _)) = checks.iter().find(|c| !c.1) {
                pent = AxiomVerdict::fail(
                    Axiom::Pentagon,
                    Some(eq),
                    Element::tuple([f.clone(), g.clone(), h.clone()]),
                );
                break 'outer;
            }
        }
    }
    out.push(pent);

    // Left: g^f = g whenever s f lies in the image of j.
    let units = m.j.image();
    let left = x
        .iter()
        .find(|fg| {
            let (f, g) = fg.as_pair().unwrap();
            units.contains(ap(&m.s, f)) && m.act(f, g) != g
        })
        .map(|fg| AxiomVerdict::fail(Axiom::Left, Some("g^f = g when s f = j u"), fg))
        .unwrap_or_else(|| AxiomVerdict::pass(Axiom::Left));
    out.push(left);

    // Right: for each f, with y = t f.
    let mut right = AxiomVerdict::pass(Axiom::Right);
    for f in &m.e {
        let (y, rf) = (ap(&m.t, f), ap(&m.r, f));
        let one_y = ap(&m.phi, y);
        let checks = [
            ("1_y^f = 1_(r f)", m.act(f, one_y) == ap(&m.phi, rf)),
            ("psi_y = psi_(r f)", ap(&m.psi, y) == ap(&m.psi, rf)),
            ("1_y f = f", m.comp(f, one_y) == f),
        ];
        if let Some((eq, _)) = checks.iter().find(|c| !c.1) {
            right = AxiomVerdict::fail(Axiom::Right, Some(eq), f);
            break;
        }
    }
    out.push(right);

    // Middle: f 1_x = f with x = s f.
    let middle =
        m.e.iter()
            .find(|f| m.comp(ap(&m.phi, ap(&m.s, f)), f) != *f)
            .map(|f| AxiomVerdict::fail(Axiom::Middle, Some("f 1_x = f"), f))
            .unwrap_or_else(|| AxiomVerdict::pass(Axiom::Middle));
    out.push(middle);

    // Unit-unit: psi(j u) = u.
    let uu =
        m.u.iter()
            .find(|u| ap(&m.psi, ap(&m.j, u)) != *u)
            .map(|u| AxiomVerdict::fail(Axiom::UnitUnit, Some("psi(j u) = u"), u))
            .unwrap_or_else(|| AxiomVerdict::pass(Axiom::UnitUnit));
    out.push(uu);

    Ok(out)
}

/// The tensor and unit as spans, and the structure 2-cells built from the
/// components.
pub struct StructureCells {
    pub carrier: Obj,
    pub tensor: Span,
    pub unit: Span,
    /// `p(p ⊗ 1) ⇒ p(1 ⊗ p) a`, with `a` the re-bracketing.
    pub alpha: SpanTwoCell,
    /// `p(j ⊗ 1) ⇒ l`, with `l: 1 × C ⇸ C` structural.
    pub lambda: SpanTwoCell,
    /// `1 ⇒ p(1 ⊗ j) r`, with `r: C ⇸ C × 1` structural.
    pub rho: SpanTwoCell,
}

impl StructureCells {
    pub fn new(m: &SkewMonoidaleData) -> Result<Self> {
        require_wellformed(m)?;
        let ap = SkewMonoidaleData::ap;
        let c = Obj::wire(m.c.clone());
        let one = Obj::unit();
        let cc = Obj::prod(&c, &c);
        let sr = FinFn::from_fn(m.e.clone(), cc.set.clone(), |f| {
            Element::pair(ap(&m.s, f).clone(), ap(&m.r, f).clone())
        })?;
        let p = Span::generator("p", cc.clone(), c.clone(), m.e.clone(), sr, m.t.clone())?;
        let j = Span::generator(
            "j",
            one.clone(),
            c.clone(),
            m.u.clone(),
            FinFn::to_terminal(&m.u),
            m.j.clone(),
        )?;
        let ic = span_identity(&c);

        let a_src = span_compose(&p, &span_tensor(&p, &ic))?;
        let reassoc = reshape(&Obj::prod(&cc, &c), &Obj::prod(&c, &cc))?;
        let a_tgt = span_compose(&span_compose(&p, &span_tensor(&ic, &p))?, &reassoc)?;
        let a_map = FinFn::try_from_fn(a_src.apex.clone(), a_tgt.apex.clone(), |e| {
            let (fc, g) = e.as_pair().unwrap();
            let f = fc.fst().unwrap();
            let (sf, rf, rg) = (ap(&m.s, f), ap(&m.r, f), ap(&m.r, g));
            Ok(Element::pair(
                Element::pair(Element::pair(sf.clone(), rf.clone()), rg.clone()),
                Element::pair(
                    Element::pair(sf.clone(), m.act(f, g).clone()),
                    m.comp(f, g).clone(),
                ),
            ))
        })?;
        let alpha = SpanTwoCell::new(a_src, a_tgt, a_map)?;

        let l_src = span_compose(&p, &span_tensor(&j, &ic))?;
        let l_tgt = reshape(&Obj::prod(&one, &c), &c)?;
        let l_map = FinFn::try_from_fn(l_src.apex.clone(), l_tgt.apex.clone(), |e| {
            Ok(Element::pair(
                Element::star(),
                ap(&m.r, e.snd().unwrap()).clone(),
            ))
        })?;
        let lambda = SpanTwoCell::new(l_src, l_tgt, l_map)?;

        let r_inv = reshape(&c, &Obj::prod(&c, &one))?;
        let r_tgt = span_compose(&span_compose(&p, &span_tensor(&ic, &j))?, &r_inv)?;
        let r_map = FinFn::try_from_fn(m.c.clone(), r_tgt.apex.clone(), |x| {
            Ok(Element::pair(
                x.clone(),
                Element::pair(
                    Element::pair(x.clone(), ap(&m.psi, x).clone()),
                    ap(&m.phi, x).clone(),
                ),
            ))
        })?;
        let rho = SpanTwoCell::new(ic, r_tgt, r_map)?;

        Ok(StructureCells {
            carrier: c,
            tensor: p,
            unit: j,
            alpha,
            lambda,
            rho,
        })
    }

    fn id(&self) -> Span {
        span_identity(&self.carrier)
    }

    fn id_cell(&self) -> SpanTwoCell {
        SpanTwoCell::identity(&self.id())
    }

    /// `cell` precomposed with `pre`, first re-bracketing `boundary` as the source of `pre`.
    fn framed(&self, boundary: &Obj, pre: &Span, cell: &SpanTwoCell) -> Result<SpanTwoCell> {
        let pre = if &pre.src == boundary {
            pre.clone()
        } else {
            span_compose(pre, &reshape(boundary, &pre.src)?)?
        };
        whisker_left(&pre, cell)
    }

    /// Both pasted sides of an axiom. The sides of the two unit axioms
    /// without a right-hand composite compare against an identity.
    pub fn sides(&self, axiom: Axiom) -> Result<(SpanTwoCell, SpanTwoCell)> {
        let (p, j, ic) = (&self.tensor, &self.unit, &self.id());
        let c = &self.carrier;
        let one = Obj::unit();
        let cc = Obj::prod(c, c);
        let i1 = span_identity(&one);
        let (alpha, lambda, rho) = (&self.alpha, &self.lambda, &self.rho);
        match axiom {
            Axiom::Pentagon => {
                let b = Obj::prod(&Obj::prod(&cc, c), c);
                let e1 = span_tensor(&span_tensor(p, ic), ic);
                let e2 = span_tensor(&span_tensor(ic, ic), p);
                let e3 = span_tensor(&span_tensor(ic, p), ic);
                let lhs = paste(&[self.framed(&b, &e1, alpha)?, self.framed(&b, &e2, alpha)?])?;
                let one_alpha = self.framed(
                    &b,
                    &reshape(&b, &Obj::prod(c, &Obj::prod(&cc, c)))?,
                    &twocell_tensor(&self.id_cell(), alpha),
                )?;
                let rhs = paste(&[
                    whisker_right(&twocell_tensor(alpha, &self.id_cell()), p)?,
                    self.framed(&b, &e3, alpha)?,
                    whisker_right(&one_alpha, p)?,
                ])?;
                Ok((lhs, rhs))
            }
            Axiom::Left => {
                let b = Obj::prod(&Obj::prod(&one, c), c);
                let e = span_tensor(&span_tensor(j, ic), ic);
                let lhs = paste(&[
                    self.framed(&b, &e, alpha)?,
                    self.framed(&b, &span_tensor(&i1, p), lambda)?,
                ])?;
                let rhs = whisker_right(&twocell_tensor(lambda, &self.id_cell()), p)?;
                Ok((lhs, rhs))
            }
            Axiom::Right => {
                let e = span_tensor(&span_tensor(ic, ic), j);
                let lhs = paste(&[whisker_left(p, rho)?, self.framed(&cc, &e, alpha)?])?;
                let rhs = whisker_right(&twocell_tensor(&self.id_cell(), rho), p)?;
                Ok((lhs, rhs))
            }
            Axiom::Middle => {
                let e = span_tensor(&span_tensor(ic, j), ic);
                let one_lambda = self.framed(
                    &cc,
                    &reshape(&cc, &Obj::prod(c, &Obj::prod(&one, c)))?,
                    &twocell_tensor(&self.id_cell(), lambda),
                )?;
                let lhs = paste(&[
                    whisker_right(&twocell_tensor(rho, &self.id_cell()), p)?,
                    self.framed(&cc, &e, alpha)?,
                    whisker_right(&one_lambda, p)?,
                ])?;
                Ok((lhs, SpanTwoCell::identity(p)))
            }
            Axiom::UnitUnit => {
                let lhs = paste(&[
                    whisker_left(j, rho)?,
                    self.framed(&one, &span_tensor(&i1, j), lambda)?,
                ])?;
                Ok((lhs, SpanTwoCell::identity(j)))
            }
        }
    }
}

/// Builds both sides of every axiom diagram from spans and 2-cells and
/// compares them after transport to normal form.
pub fn axioms_bicategorical(m: &SkewMonoidaleData) -> Result<Vec<AxiomVerdict>> {
    let cells = StructureCells::new(m)?;
    Axiom::ALL
        .iter()
        .map(|&axiom| {
            let (lhs, rhs) = cells.sides(axiom)?;
            Ok(match compare_modulo_structure(&lhs, &rhs)? {
                None => AxiomVerdict::pass(axiom),
                Some(w) => AxiomVerdict::fail(axiom, None, w),
            })
        })
        .collect()
}

/// Result of running both checkers.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub wellformed: Vec<Violation>,
    pub pointwise: Option<Vec<AxiomVerdict>>,
    pub bicategorical: Option<Vec<AxiomVerdict>>,
    /// Set when the diagrammatic checker could not be run on a well-formed instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// The two checkers give the same verdict on every axiom.
    pub agree: bool,
}

impl AxiomReport {
    pub fn is_wellformed(&self) -> bool {
        self.wellformed.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        let ok =
            |v: &Option<Vec<AxiomVerdict>>| v.as_ref().is_some_and(|v| v.iter().all(|a| a.holds));
        self.is_wellformed() && self.agree && ok(&self.pointwise) && ok(&self.bicategorical)
    }

    /// Failing axioms according to the pointwise checker.
    pub fn failing(&self) -> Vec<Axiom> {
        self.pointwise
            .iter()
            .flatten()
            .filter(|v| !v.holds)
            .map(|v| v.axiom)
            .collect()
    }

    pub fn verdicts(v: &Option<Vec<AxiomVerdict>>) -> Option<Vec<bool>> {
        v.as_ref().map(|v| v.iter().map(|a| a.holds).collect())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_wellformed() {
            writeln!(f, "well-formed: yes")?;
        } else {
            writeln!(f, "well-formed: NO")?;
            for v in &self.wellformed {
                writeln!(f, "  {v}")?;
            }
        }
        let bic = self.bicategorical.as_deref().unwrap_or(&[]);
        for (i, v) in self.pointwise.iter().flatten().enumerate() {
            write!(
                f,
                "{:<10} pointwise {}",
                v.axiom,
                if v.holds { "PASS" } else { "FAIL" }
            )?;
            if let Some(b) = bic.get(i) {
                write!(f, "  diagram {}", if b.holds { "PASS" } else { "FAIL" })?;
            }
            if let (Some(eq), Some(w)) = (&v.equation, &v.witness) {
                write!(f, "  [{eq} at {w}]")?;
            }
            writeln!(f)?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "diagram checker error: {e}")?;
        }
        write!(
            f,
            "cross-check: {}",
            if self.agree { "AGREE" } else { "DISAGREE" }
        )
    }
}

/// Runs both checkers and cross-validates them.
pub fn verify(m: &SkewMonoidaleData) -> AxiomReport {
    let wf = wellformed(m);
    if !wf.is_empty() {
        return AxiomReport {
            wellformed: wf,
            pointwise: None,
            bicategorical: None,
            error: None,
            agree: true,
        };
    }
    let pointwise = axioms_pointwise(m).ok();
    let (bicategorical, error) = match axioms_bicategorical(m) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let agree = AxiomReport::verdicts(&pointwise) == AxiomReport::verdicts(&bicategorical);
    AxiomReport {
        wellformed: wf,
        pointwise,
        bicategorical,
        error,
        agree,
    }
}

/// A copy of an instance with one function value changed.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub field: Field,
    pub at: Element,
    pub value: Element,
    pub instance: SkewMonoidaleData,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) := {}", self.field, self.at, self.value)
    }
}

/// Every single-value mutation of the stored components. Mutations of `s`
/// or `t` that would change the domain of `tau` and `delta` are skipped.
pub fn single_mutations(m: &SkewMonoidaleData) -> Vec<Mutation> {
    let mut out = Vec::new();
    for field in Field::ALL {
        let f = m.field(field);
        for (x, y) in f.iter() {
            for v in f.codomain() {
                if v == y {
                    continue;
                }
                let changed = f.with_value(x, v).expect("value from the codomain");
                if let Ok(instance) = m.with_field(field, changed) {
                    out.push(Mutation {
                        field,
                        at: x.clone(),
                        value: v.clone(),
                        instance,
                    });
                }
            }
        }
    }
    out
}

/// All single mutations in a seeded random order.
pub fn shuffled_mutations(m: &SkewMonoidaleData, seed: u64) -> Vec<Mutation> {
    let mut all = single_mutations(m);
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{interval_category, one_object_category};
    use crate::examples::{monoid_to_monoidale, restricted_unit_monoidale, trivial_monoid, zmod};
    use crate::finset::enumerate_functions;

    fn all_hold(v: &[AxiomVerdict]) -> bool {
        v.iter().all(|a| a.holds)
    }

    #[test]
    fn empty_instance_is_fine() {
        let e = FinSet::empty();
        let f = FinFn::identity(&e);
        let x = FinSet::empty();
        let m = SkewMonoidaleData::new(
            e.clone(),
            e.clone(),
            f.clone(),
            f.clone(),
            f.clone(),
            e.clone(),
            f.clone(),
            f.clone(),
            f.clone(),
            FinFn::identity(&x),
            FinFn::identity(&x),
        )
        .unwrap();
        assert!(wellformed(&m).is_empty());
        assert!(verify(&m).all_pass());
    }

    #[test]
    fn zmod2_passes_both_checkers() {
        let m = monoid_to_monoidale(&zmod(2));
        assert!(wellformed(&m).is_empty());
        assert!(all_hold(&axioms_pointwise(&m).unwrap()));
        assert!(all_hold(&axioms_bicategorical(&m).unwrap()));
    }

    #[test]
    fn terminal_instance() {
        let m = monoid_to_monoidale(&trivial_monoid());
        assert_eq!((m.c.len(), m.e.len(), m.u.len()), (1, 1, 1));
        let report = verify(&m);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn restricted_unit_instances_satisfy_left_axiom_strongly() {
        for c in [interval_category(), one_object_category(&zmod(2))] {
            let m = restricted_unit_monoidale(&c).unwrap();
            assert!(verify(&m).all_pass());
            for fg in &m.composable() {
                assert_eq!(
                    m.act(fg.fst().unwrap(), fg.snd().unwrap()),
                    fg.snd().unwrap()
                );
            }
        }
    }

    #[test]
    fn mutating_r_breaks_lambda() {
        let m = monoid_to_monoidale(&zmod(2));
        let f: Element = ("0", "1").into();
        let bad = m
            .with_field(Field::R, m.r.with_value(&f, &"0".into()).unwrap())
            .unwrap();
        let wf = wellformed(&bad);
        assert!(wf
            .iter()
            .any(|v| v.law.starts_with("lambda") && v.witness == "(*,(0,1))"));
        assert!(matches!(
            axioms_pointwise(&bad),
            Err(Error::NotWellFormed(_))
        ));
    }

    #[test]
    fn non_associative_delta_fails_pentagon() {
        let m = restricted_unit_monoidale(&one_object_category(&zmod(3))).unwrap();
        let at: Element = ("1", "1").into();
        let bad = m
            .with_field(Field::Delta, m.delta.with_value(&at, &"0".into()).unwrap())
            .unwrap();
        let report = verify(&bad);
        assert!(report.agree);
        let pw = report.pointwise.unwrap();
        assert!(!pw[0].holds);
        assert!(pw[0].witness.as_ref().unwrap().starts_with('<'));
        assert!(!report.bicategorical.unwrap()[0].holds);
    }

    #[test]
    fn pentagon_lhs_on_triples() {
        let m = restricted_unit_monoidale(&one_object_category(&zmod(3))).unwrap();
        let cells = StructureCells::new(&m).unwrap();
        let (lhs, _) = cells.sides(Axiom::Pentagon).unwrap();
        let src = crate::span::FlatForm::of(&lhs.source).unwrap();
        let tgt = crate::span::FlatForm::of(&lhs.target).unwrap();
        let tgt_of: std::collections::HashMap<_, _> =
            lhs.target.apex.iter().zip(tgt.elements.iter()).collect();
        for (x, flat) in lhs.source.apex.iter().zip(src.elements.iter()) {
            let nodes = flat.as_tuple().unwrap()[1].as_tuple().unwrap().to_vec();
            let (f, g, h) = (&nodes[0], &nodes[1], &nodes[2]);
            let gf = m.comp(f, g);
            let gf_ = m.act(f, g);
            let h_gf = m.act(gf, h);
            let out = tgt_of[lhs.map.apply(x).unwrap()].as_tuple().unwrap()[1]
                .as_tuple()
                .unwrap()
                .to_vec();
            let mut expected = vec![
                m.act(gf_, h_gf).clone(),
                m.comp(gf_, h_gf).clone(),
                m.comp(gf, h).clone(),
            ];
            let mut got = out.clone();
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn lambda_is_unique() {
        for m in [
            monoid_to_monoidale(&zmod(2)),
            restricted_unit_monoidale(&interval_category()).unwrap(),
        ] {
            let cells = StructureCells::new(&m).unwrap();
            let (src, tgt) = (&cells.lambda.source, &cells.lambda.target);
            let count = enumerate_functions(&src.apex, &tgt.apex, 1 << 20)
                .unwrap()
                .filter(|f| SpanTwoCell::new(src.clone(), tgt.clone(), f.clone()).is_ok())
                .count();
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn mutations_agree() {
        let m = restricted_unit_monoidale(&one_object_category(&zmod(2))).unwrap();
        let muts = shuffled_mutations(&m, 7);
        assert!(!muts.is_empty());
        for mu in muts {
            let r = verify(&mu.instance);
            assert!(r.agree, "{mu}: {r}");
            assert!(r.error.is_none(), "{mu}: {r}");
        }
    }
}

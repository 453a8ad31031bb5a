//! Skew monoidales in `Span` as categories `C` with a functor `R: Dec(C) -> C`.

use std::fmt;

use serde::Serialize;

use crate::category::{FinCat, Functor, Violation};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{enumerate_functions, function_count, pullback, FinFn, FinSet};
use crate::simplicial::dec_cat;
use crate::skew::{axioms_pointwise, verify, wellformed, SkewMonoidaleData};

/// A category together with `R: Dec(C) -> C`. The object part of `R` is a
/// function on arrows of `C`, the arrow part a function on composable pairs.
#[derive(Clone, Debug)]
pub struct RStructure {
    pub cat: FinCat,
    pub dec: FinCat,
    pub r: Functor,
}

impl RStructure {
    pub fn new(cat: FinCat, r_objects: FinFn, r_arrows: FinFn) -> Result<Self> {
        let (dec, _) = dec_cat(&cat)?;
        let r = Functor::new(dec.clone(), cat.clone(), r_objects, r_arrows)?;
        Ok(RStructure { cat, dec, r })
    }

    /// `R = Cod`.
    pub fn cod(cat: &FinCat) -> Result<Self> {
        let (dec, cod) = dec_cat(cat)?;
        Ok(RStructure {
            cat: cat.clone(),
            dec,
            r: cod,
        })
    }

    pub fn r_objects(&self) -> &FinFn {
        &self.r.on_objects
    }

    pub fn r_arrows(&self) -> &FinFn {
        &self.r.on_arrows
    }

    /// `R` on the object `f` of `Dec(C)`.
    pub fn r_obj(&self, f: &Element) -> Option<&Element> {
        self.r.on_objects.apply(f)
    }

    /// `R` on the arrow `g: f -> gf` of `Dec(C)`, written `g^f`.
    pub fn r_arr(&self, f: &Element, g: &Element) -> Option<&Element> {
        self.r.on_arrows.apply(&Element::pair(f.clone(), g.clone()))
    }

    /// `E(x) = R(1_x)`.
    pub fn e(&self, x: &Element) -> Option<&Element> {
        self.r_obj(self.cat.id(x).ok()?)
    }

    /// `E` as a function on objects.
    pub fn e_fn(&self) -> Result<FinFn> {
        let objects = self.cat.objects().clone();
        FinFn::try_from_fn(objects.clone(), objects, |x| {
            self.e(x)
                .cloned()
                .ok_or_else(|| Error::UnknownObject(x.to_string()))
        })
    }

    /// Fixed points of `E`, the canonical splitting set.
    pub fn u(&self) -> FinSet {
        self.cat.objects().filter(|x| self.e(x) == Some(x))
    }

    /// `E` corestricted to its fixed points. Fails unless `E` is idempotent.
    pub fn psi(&self) -> Result<FinFn> {
        let u = self.u();
        FinFn::try_from_fn(self.cat.objects().clone(), u.clone(), |x| {
            let y = self
                .e(x)
                .cloned()
                .ok_or_else(|| Error::UnknownObject(x.to_string()))?;
            if u.contains(&y) {
                Ok(y)
            } else {
                Err(Error::ConditionsFail(format!("E is not idempotent at {x}")))
            }
        })
    }

    /// Type invariants: `R` is a functor and `E` is idempotent.
    pub fn invariant_violations(&self) -> Vec<Violation> {
        let mut out = self.r.validate();
        out.extend(idempotence(self));
        out
    }

    pub fn same_as(&self, other: &RStructure) -> bool {
        self.cat.same_as(&other.cat)
            && self.r.on_objects == other.r.on_objects
            && self.r.on_arrows == other.r.on_arrows
    }
}

fn idempotence(rs: &RStructure) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in rs.cat.objects() {
        let ex = rs.e(x);
        if ex.and_then(|y| rs.e(y)) != ex {
            out.push(Violation::new("E(E x) = E x", x));
        }
    }
    out
}

/// Verdicts of the conditions on an [`RStructure`], with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// (a): `R` is a functor.
    pub functorial: Vec<Violation>,
    /// (b): `R ∘ Dec(Cod) = R ∘ Dec(R)` on `Dec(Dec(C))`.
    pub dec_square: Vec<Violation>,
    /// (c): `R_x = Cod_x` whenever `R(1_x) = x`.
    pub restricted_vertex: Vec<Violation>,
    pub idempotent: Vec<Violation>,
    /// The coslice square, per arrow `f` of `C`.
    pub factor: Vec<Violation>,
    /// `E ∘ R_x = E ∘ Cod_x` on objects, per coslice object.
    pub ee: Vec<Violation>,
    /// `psi(cod f) = psi(r f)`; skipped when `E` is not idempotent.
    pub psi_invariance: Vec<Violation>,
    /// `(factor)` everywhere implies `(ee)` everywhere, on this instance.
    pub factor_implies_ee: bool,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        [
            &self.functorial,
            &self.dec_square,
            &self.restricted_vertex,
            &self.idempotent,
            &self.factor,
            &self.ee,
            &self.psi_invariance,
        ]
        .iter()
        .all(|v| v.is_empty())
    }

    pub fn factor_holds(&self) -> bool {
        self.factor.is_empty()
    }

    pub fn ee_holds(&self) -> bool {
        self.ee.is_empty()
    }

    fn rows(&self) -> [(&'static str, &Vec<Violation>); 7] {
        [
            ("(a) functor", &self.functorial),
            ("(b) dec square", &self.dec_square),
            ("(c) vertex", &self.restricted_vertex),
            ("idempotent E", &self.idempotent),
            ("factor", &self.factor),
            ("ee", &self.ee),
            ("psi", &self.psi_invariance),
        ]
    }

    /// First failure, for error messages.
    pub fn first_failure(&self) -> Option<String> {
        self.rows()
            .iter()
            .find_map(|(name, v)| v.first().map(|x| format!("{name}: {x}")))
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.rows() {
            write!(
                f,
                "{:<15} {}",
                name,
                if v.is_empty() { "PASS" } else { "FAIL" }
            )?;
            if let Some(w) = v.first() {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "factor implies ee: {}",
            if self.factor_implies_ee {
                "holds"
            } else {
                "VIOLATED"
            }
        )
    }
}

fn show(e: Option<&Element>) -> String {
    e.map_or_else(|| "undefined".to_string(), Element::to_string)
}

fn check(
    out: &mut Vec<Violation>,
    law: &str,
    lhs: Option<&Element>,
    rhs: Option<&Element>,
    at: impl fmt::Display,
) {
    if lhs.is_none() || lhs != rhs {
        out.push(Violation::new(
            format!("{law}: {} vs {}", show(lhs), show(rhs)),
            at,
        ));
    }
}

/// Evaluates (a), (b), (c), the per-vertex squares and the implication from (factor) to (ee).
pub fn check_conditions(rs: &RStructure) -> ConditionReport {
    let c = &rs.cat;
    let functorial = rs.r.validate();
    let idempotent = idempotence(rs);
    let pairs = c.composable_pairs();
    let split = |p: &Element| -> (Element, Element) {
        let (f, g) = p.as_pair().expect("pair");
        (f.clone(), g.clone())
    };
    let comp = |f: &Element, g: &Element| c.compose(f, g).cloned();
    // Composite of g^f and h^{gf} in C, when they are composable.
    let tau_tau = |f: &Element, g: &Element, h: &Element| -> Option<Element> {
        let a = rs.r_arr(f, g)?;
        let b = rs.r_arr(&comp(f, g)?, h)?;
        c.is_composable(a, b).then(|| rs.r_arr(a, b).cloned())?
    };

    let mut dec_square = Vec::new();
    for p in &pairs {
        let (f, g) = split(p);
        let rhs = rs.r_arr(&f, &g).and_then(|a| rs.r_obj(a));
        check(&mut dec_square, "r(g^f) = r(g)", rs.r_obj(&g), rhs, p);
    }
    for p in &pairs {
        let (f, g) = split(p);
        let Some(gf) = comp(&f, &g) else { continue };
        for h in c.arrows().iter().filter(|h| c.is_composable(&g, h)) {
            let at = Element::pair(p.clone(), Element::pair(gf.clone(), h.clone()));
            check(
                &mut dec_square,
                "h^g = (h^gf)^(g^f)",
                rs.r_arr(&g, h),
                tau_tau(&f, &g, h).as_ref(),
                at,
            );
        }
    }

    let mut restricted_vertex = Vec::new();
    for x in c.objects().iter().filter(|x| rs.e(x) == Some(*x)) {
        for f in c.arrows().iter().filter(|f| c.dom(f).ok() == Some(x)) {
            check(
                &mut restricted_vertex,
                "r f = cod f",
                rs.r_obj(f),
                c.cod(f).ok(),
                f,
            );
            for g in c.arrows().iter().filter(|g| c.is_composable(f, g)) {
                let at = Element::pair(f.clone(), g.clone());
                check(
                    &mut restricted_vertex,
                    "g^f = g",
                    rs.r_arr(f, g),
                    Some(g),
                    at,
                );
            }
        }
    }

    let mut factor = Vec::new();
    for f in c.arrows() {
        let rf = rs.r_obj(f);
        for g in c.arrows().iter().filter(|g| c.is_composable(f, g)) {
            let at = Element::pair(f.clone(), g.clone());
            let gf_act = rs.r_arr(f, g);
            let from = gf_act.and_then(|a| c.dom(a).ok());
            check(&mut factor, "dom g^f = r f", from, rf, &at);
            check(
                &mut factor,
                "r(g^f) = r g",
                gf_act.and_then(|a| rs.r_obj(a)),
                rs.r_obj(g),
                &at,
            );
            for h in c.arrows().iter().filter(|h| c.is_composable(g, h)) {
                let at = Element::tuple([f.clone(), g.clone(), h.clone()]);
                check(
                    &mut factor,
                    "(h^gf)^(g^f) = h^g",
                    tau_tau(f, g, h).as_ref(),
                    rs.r_arr(g, h),
                    at,
                );
            }
        }
    }

    let mut ee = Vec::new();
    for f in c.arrows() {
        let via_r = rs.r_obj(f).and_then(|y| rs.e(y));
        let via_cod = c.cod(f).ok().and_then(|y| rs.e(y));
        check(&mut ee, "E(r f) = E(cod f)", via_r, via_cod, f);
    }

    let mut psi_invariance = Vec::new();
    if let Ok(psi) = rs.psi() {
        for f in c.arrows() {
            let lhs = c.cod(f).ok().and_then(|y| psi.apply(y));
            let rhs = rs.r_obj(f).and_then(|y| psi.apply(y));
            check(&mut psi_invariance, "psi(cod f) = psi(r f)", lhs, rhs, f);
        }
    }

    let factor_implies_ee = !factor.is_empty() || ee.is_empty();
    ConditionReport {
        functorial,
        dec_square,
        restricted_vertex,
        idempotent,
        factor,
        ee,
        psi_invariance,
        factor_implies_ee,
    }
}

/// The category `(C, E, s, t, delta, phi)` and `R = (r, tau)` of a verified instance.
pub fn extract(m: &SkewMonoidaleData) -> Result<RStructure> {
    let report = verify(m);
    if !report.all_pass() {
        let why = report
            .failing()
            .first()
            .map(|a| a.to_string())
            .or_else(|| report.wellformed.first().map(|v| v.to_string()))
            .or(report.error.clone())
            .unwrap_or_else(|| "checkers disagree".into());
        return Err(Error::AxiomsFail(why));
    }
    let x = m.composable();
    let comp = x.iter().map(|p| {
        let (f, g) = p.as_pair().expect("pair");
        (
            (f.clone(), g.clone()),
            m.delta.at(p).expect("p in X").clone(),
        )
    });
    let cat = FinCat::new(
        m.c.clone(),
        m.e.clone(),
        m.s.clone(),
        m.t.clone(),
        m.phi.clone(),
        comp,
    )?;
    cat.require_valid()?;
    let (dec, _) = dec_cat(&cat)?;
    let r_arrows = FinFn::try_from_fn(dec.arrows().clone(), m.e.clone(), |p| m.tau.at(p).cloned())?;
    let r_objects = m.r.clone();
    RStructure::new(cat, r_objects, r_arrows)
}

/// The skew monoidale of an `RStructure`, with the canonical splitting
/// `U = {x | R(1_x) = x}` and `j` the inclusion.
pub fn build(rs: &RStructure) -> Result<SkewMonoidaleData> {
    let report = check_conditions(rs);
    if !report.holds() {
        return Err(Error::ConditionsFail(
            report.first_failure().unwrap_or_default(),
        ));
    }
    let c = &rs.cat;
    let u = rs.u();
    let j = FinFn::inclusion(&u, c.objects())?;
    let psi = rs.psi()?;
    let x = pullback(c.cod_fn(), c.dom_fn())?.apex;
    let delta = FinFn::try_from_fn(x.clone(), c.arrows().clone(), |p| {
        let (f, g) = p.as_pair().expect("pair");
        c.compose(f, g)
            .cloned()
            .ok_or_else(|| Error::InvalidCategory(format!("no composite for {p}")))
    })?;
    let tau = FinFn::try_from_fn(x, c.arrows().clone(), |p| rs.r_arrows().at(p).cloned())?;
    SkewMonoidaleData::new(
        c.objects().clone(),
        c.arrows().clone(),
        c.dom_fn().clone(),
        rs.r_objects().clone(),
        c.cod_fn().clone(),
        u,
        j,
        c.id_fn().clone(),
        psi,
        tau,
        delta,
    )
}

/// Result of comparing `build(extract(m))` with `m`.
#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub mismatches: Vec<String>,
    /// `u ↦ j u`, as pairs `(u, u')`.
    pub unit_iso: Vec<(String, String)>,
}

impl RoundtripReport {
    pub fn isomorphic(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.isomorphic() {
            write!(f, "round trip: ISOMORPHIC")?;
            for (a, b) in &self.unit_iso {
                write!(f, "\n  U: {a} -> {b}")?;
            }
            Ok(())
        } else {
            write!(f, "round trip: MISMATCH")?;
            for m in &self.mismatches {
                write!(f, "\n  {m}")?;
            }
            Ok(())
        }
    }
}

/// Compares `m` with `m' = build(extract(m))`: equality on `C`, `E`, `s`,
/// `r`, `t`, `phi`, `tau`, `delta`, and `k: U -> U'`, `u ↦ j u`, a bijection
/// with `j' k = j` and `psi' = k psi`.
pub fn roundtrip(m: &SkewMonoidaleData) -> Result<RoundtripReport> {
    let rs = extract(m)?;
    let back = build(&rs)?;
    Ok(compare_up_to_unit(m, &back))
}

pub fn compare_up_to_unit(m: &SkewMonoidaleData, back: &SkewMonoidaleData) -> RoundtripReport {
    let mut mismatches = Vec::new();
    if m.c != back.c {
        mismatches.push("carrier differs".to_string());
    }
    if m.e != back.e {
        mismatches.push("E differs".to_string());
    }
    for (name, a, b) in [
        ("s", &m.s, &back.s),
        ("r", &m.r, &back.r),
        ("t", &m.t, &back.t),
        ("phi", &m.phi, &back.phi),
        ("tau", &m.tau, &back.tau),
        ("delta", &m.delta, &back.delta),
    ] {
        if a != b {
            let at = a
                .first_difference(b)
                .map(Element::to_string)
                .unwrap_or_default();
            mismatches.push(format!("{name} differs at {at}"));
        }
    }
    let mut unit_iso = Vec::new();
    match FinFn::try_from_fn(m.u.clone(), back.u.clone(), |u| m.j.at(u).cloned()) {
        Ok(k) => {
            if !k.is_bijective() {
                mismatches.push("u -> j u is not a bijection onto U'".into());
            }
            for (u, v) in k.iter() {
                if back.j.apply(v) != m.j.apply(u) {
                    mismatches.push(format!("j' k differs from j at {u}"));
                }
                unit_iso.push((u.to_string(), v.to_string()));
            }
            for x in m.c.iter() {
                if back.psi.apply(x) != m.psi.apply(x).and_then(|u| k.apply(u)) {
                    mismatches.push(format!("psi' differs from k psi at {x}"));
                }
            }
        }
        Err(e) => mismatches.push(format!("no map U -> U': {e}")),
    }
    RoundtripReport {
        mismatches,
        unit_iso,
    }
}

fn product_size(sizes: &[u128]) -> u128 {
    sizes.iter().fold(1u128, |a, &b| a.saturating_mul(b))
}

/// All `R: Dec(C) -> C` satisfying [`check_conditions`], by brute force over
/// object and arrow parts, object part varying slowest.
pub fn enumerate_rstructures(c: &FinCat, cap: u128) -> Result<Vec<RStructure>> {
    c.require_valid()?;
    let (dec, _) = dec_cat(c)?;
    let size = product_size(&[
        function_count(dec.objects(), c.objects()),
        function_count(dec.arrows(), c.arrows()),
    ]);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut out = Vec::new();
    for r_objects in enumerate_functions(dec.objects(), c.objects(), cap)? {
        for r_arrows in enumerate_functions(dec.arrows(), c.arrows(), cap)? {
            let r = Functor::new(dec.clone(), c.clone(), r_objects.clone(), r_arrows)?;
            let rs = RStructure {
                cat: c.clone(),
                dec: dec.clone(),
                r,
            };
            if check_conditions(&rs).holds() {
                out.push(rs);
            }
        }
    }
    Ok(out)
}

fn subsets(s: &FinSet) -> impl Iterator<Item = FinSet> + '_ {
    (0u64..1 << s.len()).map(move |mask| {
        FinSet::new(
            s.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone()),
        )
        .expect("subset of a set")
    })
}

/// Search space of [`enumerate_skew_structures`].
pub fn skew_structure_space(c: &FinCat) -> u128 {
    let objects = c.objects();
    let x = c.composable_pairs();
    let units: u128 = subsets(objects).map(|u| function_count(objects, &u)).sum();
    product_size(&[
        function_count(c.arrows(), objects),
        function_count(&x, c.arrows()),
        units,
    ])
}

/// All verified instances with `C`, `E`, `s`, `t`, `delta`, `phi` taken from
/// `c`, ranging over `r`, `tau`, `U ⊆ C` with `j` the inclusion, and `psi`.
pub fn enumerate_skew_structures(c: &FinCat, cap: u128) -> Result<Vec<SkewMonoidaleData>> {
    c.require_valid()?;
    let size = skew_structure_space(c);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let objects = c.objects();
    let x = pullback(c.cod_fn(), c.dom_fn())?.apex;
    let delta = FinFn::try_from_fn(x.clone(), c.arrows().clone(), |p| {
        let (f, g) = p.as_pair().expect("pair");
        c.compose(f, g)
            .cloned()
            .ok_or_else(|| Error::InvalidCategory(p.to_string()))
    })?;
    let mut out = Vec::new();
    for r in enumerate_functions(c.arrows(), objects, cap)? {
        for tau in enumerate_functions(&x, c.arrows(), cap)? {
            for u in subsets(objects) {
                let j = FinFn::inclusion(&u, objects)?;
                for psi in enumerate_functions(objects, &u, cap)? {
                    let m = SkewMonoidaleData::new(
                        objects.clone(),
                        c.arrows().clone(),
                        c.dom_fn().clone(),
                        r.clone(),
                        c.cod_fn().clone(),
                        u.clone(),
                        j.clone(),
                        c.id_fn().clone(),
                        psi,
                        tau.clone(),
                        delta.clone(),
                    )?;
                    // Both checkers must pass, so a pointwise failure settles it.
                    let pointwise_ok = wellformed(&m).is_empty()
                        && axioms_pointwise(&m).is_ok_and(|v| v.iter().all(|a| a.holds));
                    if pointwise_ok && verify(&m).all_pass() {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every copy of `rs` with one value of `R` changed, object part first.
pub fn rstructure_mutations(rs: &RStructure) -> Vec<RStructure> {
    let mut out = Vec::new();
    for (x, y) in rs.r.on_objects.iter() {
        for v in rs.cat.objects().iter().filter(|v| *v != y) {
            let mut r = rs.r.clone();
            r.on_objects = r.on_objects.with_value(x, v).expect("value in codomain");
            out.push(RStructure { r, ..rs.clone() });
        }
    }
    for (x, y) in rs.r.on_arrows.iter() {
        for v in rs.cat.arrows().iter().filter(|v| *v != y) {
            let mut r = rs.r.clone();
            r.on_arrows = r.on_arrows.with_value(x, v).expect("value in codomain");
            out.push(RStructure { r, ..rs.clone() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::is_isomorphic;
    use crate::examples::{
        interval_category, monoid_to_monoidale, one_object_category, restricted_unit_monoidale,
        t_category, terminal_category, trivial_monoid, zmod,
    };
    use crate::finset::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn extract_from_zmod2() {
        let m = monoid_to_monoidale(&zmod(2));
        let rs = extract(&m).unwrap();
        assert_eq!(rs.cat.objects().len(), 2);
        assert_eq!(rs.cat.arrows().len(), 4);
        for (f, y) in rs.r_objects().iter() {
            assert_eq!(f.snd(), Some(y));
        }
        assert!(check_conditions(&rs).holds());
        assert!(is_isomorphic(&rs.cat, &t_category(&zmod(2))));
    }

    #[test]
    fn restricted_unit_gives_cod() {
        let two = interval_category();
        let rs = extract(&restricted_unit_monoidale(&two).unwrap()).unwrap();
        let cod = RStructure::cod(&two).unwrap();
        assert!(rs.same_as(&cod));
    }

    #[test]
    fn cod_passes_everywhere() {
        for c in [
            terminal_category(),
            interval_category(),
            t_category(&zmod(2)),
            one_object_category(&zmod(3)),
        ] {
            let rep = check_conditions(&RStructure::cod(&c).unwrap());
            assert!(rep.holds(), "{rep}");
        }
    }

    #[test]
    fn mutated_arrow_part_breaks_the_square() {
        let rs = extract(&monoid_to_monoidale(&zmod(2))).unwrap();
        let (p, v) = rs.r_arrows().iter().next().unwrap();
        let other = rs.cat.arrows().iter().find(|a| *a != v).unwrap();
        let mut bad = rs.clone();
        bad.r.on_arrows = bad.r.on_arrows.with_value(p, other).unwrap();
        let rep = check_conditions(&bad);
        assert!(!rep.dec_square.is_empty());
        assert!(!rep.holds());
        assert!(matches!(build(&bad), Err(Error::ConditionsFail(_))));
    }

    #[test]
    fn build_from_cod_is_restricted_unit() {
        let two = interval_category();
        let m = build(&RStructure::cod(&two).unwrap()).unwrap();
        assert_eq!(m.u, *two.objects());
        assert_eq!(m.j, FinFn::identity(two.objects()));
        assert!(verify(&m).all_pass());
        let direct = restricted_unit_monoidale(&two).unwrap();
        assert!(compare_up_to_unit(&direct, &m).isomorphic());
    }

    #[test]
    fn roundtrips() {
        for m in [
            monoid_to_monoidale(&zmod(2)),
            monoid_to_monoidale(&trivial_monoid()),
            restricted_unit_monoidale(&interval_category()).unwrap(),
        ] {
            let rep = roundtrip(&m).unwrap();
            assert!(rep.isomorphic(), "{rep}");
        }
        let mut bad = monoid_to_monoidale(&zmod(2));
        let (p, _) = bad.delta.iter().next().unwrap();
        let p = p.clone();
        let v = bad.e.get(3).clone();
        bad.delta = bad.delta.with_value(&p, &v).unwrap();
        assert!(matches!(roundtrip(&bad), Err(Error::AxiomsFail(_))));
    }

    #[test]
    fn splitting_laws() {
        let rs = extract(&monoid_to_monoidale(&zmod(3))).unwrap();
        let m = build(&rs).unwrap();
        for u in m.u.iter() {
            assert_eq!(m.psi.apply(m.j.apply(u).unwrap()), Some(u));
        }
        for x in m.c.iter() {
            assert_eq!(m.j.apply(m.psi.apply(x).unwrap()), rs.e(x));
        }
    }

    #[test]
    fn enumeration_counts() {
        let one = enumerate_rstructures(&terminal_category(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(one.len(), 1);
        let two = enumerate_rstructures(&interval_category(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(two.len(), 3);
        let cod = RStructure::cod(&interval_category()).unwrap();
        assert!(two.iter().any(|rs| rs.same_as(&cod)));
        for rs in &two {
            assert!(verify(&build(rs).unwrap()).all_pass());
        }
        assert!(matches!(
            enumerate_rstructures(&t_category(&zmod(2)), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn dual_enumeration_on_terminal() {
        let found =
            enumerate_skew_structures(&terminal_category(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn mutants_of_cod() {
        let rs = RStructure::cod(&interval_category()).unwrap();
        let muts = rstructure_mutations(&rs);
        assert_eq!(muts.len(), 3 + 4 * 2);
        let valid = enumerate_rstructures(&interval_category(), DEFAULT_ENUMERATION_CAP).unwrap();
        for m in &muts {
            let rep = check_conditions(m);
            assert!(rep.factor_implies_ee);
            assert_eq!(rep.holds(), valid.iter().any(|v| v.same_as(m)));
        }
    }
}

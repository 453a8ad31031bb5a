//! Standard small categories and monoids, and the monoidales built from them.

use crate::category::{is_isomorphic, FinCat, Functor};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{fn_compose, product, pullback, FinFn, FinSet};
use crate::simplicial::{dec_cat, dec_functor};
use crate::skew::{SkewMonoidaleData, StructureCells};

/// A finite monoid with an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FinMonoid {
    pub carrier: FinSet,
    /// Defined on the canonical product `carrier × carrier`.
    pub mul: FinFn,
    pub unit: Element,
}

impl FinMonoid {
    /// Checks the unit and associativity laws.
    pub fn new(carrier: FinSet, mul: FinFn, unit: Element) -> Result<Self> {
        let m = FinMonoid { carrier, mul, unit };
        m.check()?;
        Ok(m)
    }

    pub fn from_table(
        carrier: FinSet,
        unit: Element,
        mul: impl Fn(&Element, &Element) -> Element,
    ) -> Result<Self> {
        let sq = product(&carrier, &carrier).apex;
        let table = FinFn::from_fn(sq, carrier.clone(), |p| {
            let (a, b) = p.as_pair().unwrap();
            mul(a, b)
        })
        .map_err(|e| Error::MonoidLawsFail(e.to_string()))?;
        Self::new(carrier, table, unit)
    }

    fn check(&self) -> Result<()> {
        let sq = product(&self.carrier, &self.carrier).apex;
        if self.mul.domain() != &sq || self.mul.codomain() != &self.carrier {
            return Err(Error::MonoidLawsFail(
                "multiplication has the wrong type".into(),
            ));
        }
        if !self.carrier.contains(&self.unit) {
            return Err(Error::MonoidLawsFail(format!(
                "unit {} is not in the carrier",
                self.unit
            )));
        }
        for a in &self.carrier {
            if self.mul(&self.unit, a) != *a || self.mul(a, &self.unit) != *a {
                return Err(Error::MonoidLawsFail(format!("unit law at {a}")));
            }
            for b in &self.carrier {
                for c in &self.carrier {
                    if self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c)) {
                        return Err(Error::MonoidLawsFail(format!(
                            "associativity at {}",
                            Element::tuple([a.clone(), b.clone(), c.clone()])
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.mul
            .apply(&Element::pair(a.clone(), b.clone()))
            .expect("elements of the carrier")
            .clone()
    }
}

/// The cyclic group `ℤ/n` written additively, with elements `"0"`, …, `"n-1"`.
pub fn zmod(n: usize) -> FinMonoid {
    assert!(n > 0);
    let carrier = FinSet::atoms((0..n).map(|i| i.to_string())).unwrap();
    let num = |e: &Element| e.as_atom().unwrap().parse::<usize>().unwrap();
    FinMonoid::from_table(carrier, Element::atom("0"), |a, b| {
        Element::atom(((num(a) + num(b)) % n).to_string())
    })
    .unwrap()
}

/// The one-element monoid `{e}`.
pub fn trivial_monoid() -> FinMonoid {
    FinMonoid::from_table(FinSet::atoms(["e"]).unwrap(), Element::atom("e"), |_, _| {
        Element::atom("e")
    })
    .unwrap()
}

/// `{1, a, b}` with unit `1` and `xy = x` for `x, y ∈ {a, b}`.
pub fn left_absorbing_monoid() -> FinMonoid {
    let one = Element::atom("1");
    FinMonoid::from_table(
        FinSet::atoms(["1", "a", "b"]).unwrap(),
        one.clone(),
        |x, y| {
            if *x == one {
                y.clone()
            } else {
                x.clone()
            }
        },
    )
    .unwrap()
}

fn simple_cat(
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    ids: &[(&str, &str)],
    comp: &[((&str, &str), &str)],
) -> FinCat {
    let objs = FinSet::atoms(objects.iter().copied()).unwrap();
    let arrs = FinSet::atoms(arrows.iter().map(|a| a.0)).unwrap();
    let dom = FinFn::new(
        arrs.clone(),
        objs.clone(),
        arrows.iter().map(|a| (a.0.into(), a.1.into())),
    )
    .unwrap();
    let cod = FinFn::new(
        arrs.clone(),
        objs.clone(),
        arrows.iter().map(|a| (a.0.into(), a.2.into())),
    )
    .unwrap();
    let id = FinFn::new(
        objs.clone(),
        arrs.clone(),
        ids.iter().map(|&(x, f)| (x.into(), f.into())),
    )
    .unwrap();
    FinCat::checked(
        objs,
        arrs,
        dom,
        cod,
        id,
        comp.iter()
            .map(|&((f, g), h)| ((f.into(), g.into()), h.into())),
    )
    .unwrap()
}

/// The terminal category: object `*`, arrow `1`.
pub fn terminal_category() -> FinCat {
    simple_cat(
        &["*"],
        &[("1", "*", "*")],
        &[("*", "1")],
        &[(("1", "1"), "1")],
    )
}

/// The interval `a -u-> b`, with identities `1a` and `1b`.
pub fn interval_category() -> FinCat {
    simple_cat(
        &["a", "b"],
        &[("1a", "a", "a"), ("1b", "b", "b"), ("u", "a", "b")],
        &[("a", "1a"), ("b", "1b")],
        &[
            (("1a", "1a"), "1a"),
            (("1b", "1b"), "1b"),
            (("1a", "u"), "u"),
            (("u", "1b"), "u"),
        ],
    )
}

/// The one-object category `BM` on object `*`; "`f` then `g`" is the product `f·g`.
pub fn one_object_category(m: &FinMonoid) -> FinCat {
    let objs = FinSet::terminal();
    let arrs = m.carrier.clone();
    let star = FinFn::to_terminal(&arrs);
    let id = FinFn::from_fn(objs.clone(), arrs.clone(), |_| m.unit.clone()).unwrap();
    let comp = m.mul.iter().map(|(p, v)| {
        let (a, b) = p.as_pair().unwrap();
        ((a.clone(), b.clone()), v.clone())
    });
    FinCat::new(objs, arrs, star.clone(), star, id, comp).unwrap()
}

/// The category `T(M)`: objects the elements of `M`, arrows `(a, b): a -> ab`.
pub fn t_category(m: &FinMonoid) -> FinCat {
    let objs = m.carrier.clone();
    let arrs = product(&objs, &objs).apex;
    let dom = FinFn::from_fn(arrs.clone(), objs.clone(), |f| f.fst().unwrap().clone()).unwrap();
    let cod = m.mul.with_codomain(objs.clone()).unwrap();
    let id = FinFn::from_fn(objs.clone(), arrs.clone(), |a| {
        Element::pair(a.clone(), m.unit.clone())
    })
    .unwrap();
    let mut comp = Vec::new();
    for f in &arrs {
        let (a, b) = f.as_pair().unwrap();
        let ab = m.mul(a, b);
        for c in &objs {
            let g = Element::pair(ab.clone(), c.clone());
            comp.push(((f.clone(), g), Element::pair(a.clone(), m.mul(b, c))));
        }
    }
    FinCat::new(objs, arrs, dom, cod, id, comp).unwrap()
}

/// A monoid morphism, checked to preserve multiplication and unit.
#[derive(Clone, Debug)]
pub struct MonoidMorphism {
    pub source: FinMonoid,
    pub target: FinMonoid,
    pub map: FinFn,
}

impl MonoidMorphism {
    pub fn new(source: FinMonoid, target: FinMonoid, map: FinFn) -> Result<Self> {
        if map.domain() != &source.carrier || map.codomain() != &target.carrier {
            return Err(Error::NotAMonoidMorphism("map has the wrong type".into()));
        }
        let f = |x: &Element| map.apply(x).unwrap().clone();
        if f(&source.unit) != target.unit {
            return Err(Error::NotAMonoidMorphism("unit is not preserved".into()));
        }
        for a in &source.carrier {
            for b in &source.carrier {
                if f(&source.mul(a, b)) != target.mul(&f(a), &f(b)) {
                    return Err(Error::NotAMonoidMorphism(format!(
                        "multiplication is not preserved at ({a},{b})"
                    )));
                }
            }
        }
        Ok(MonoidMorphism {
            source,
            target,
            map,
        })
    }

    pub fn then(&self, next: &MonoidMorphism) -> Result<MonoidMorphism> {
        MonoidMorphism::new(
            self.source.clone(),
            next.target.clone(),
            fn_compose(&next.map, &self.map)?,
        )
    }
}

/// `T(f): T(M) -> T(M')`, sending `m` to `fm` and `(m, n)` to `(fm, fn)`.
pub fn mon_functor_t(f: &MonoidMorphism) -> Result<Functor> {
    let src = t_category(&f.source);
    let tgt = t_category(&f.target);
    let on_arrows = FinFn::try_from_fn(src.arrows().clone(), tgt.arrows().clone(), |a| {
        let (m, n) = a.as_pair().unwrap();
        Ok(Element::pair(f.map.at(m)?.clone(), f.map.at(n)?.clone()))
    })?;
    let functor = Functor::new(src, tgt, f.map.clone(), on_arrows)?;
    functor.require_valid()?;
    Ok(functor)
}

/// `Bf: BM -> BM'`.
pub fn one_object_functor(f: &MonoidMorphism) -> Result<Functor> {
    let src = one_object_category(&f.source);
    let tgt = one_object_category(&f.target);
    let objs = FinFn::identity(src.objects());
    Functor::new(src, tgt, objs, f.map.clone())
}

/// How `T(M)` compares with `Dec(BM)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecComparison {
    /// Same objects, arrows and tables, with no relabelling.
    pub equal: bool,
    pub isomorphic: bool,
}

pub fn dec_comparison(m: &FinMonoid) -> Result<DecComparison> {
    m.check()?;
    let t = t_category(m);
    let (dec, _) = dec_cat(&one_object_category(m))?;
    Ok(DecComparison {
        equal: t.same_as(&dec),
        isomorphic: is_isomorphic(&t, &dec),
    })
}

/// Whether `T(f)` coincides with `Dec(Bf)`.
pub fn dec_functor_comparison(f: &MonoidMorphism) -> Result<bool> {
    let tf = mon_functor_t(f)?;
    let df = dec_functor(&one_object_functor(f)?)?;
    Ok(tf.agrees_with(&df))
}

/// The monoidale of a monoid: tensor `M × M <-(π₁,π₂)- M × M -μ-> M`,
/// unit `1 <- 1 -η-> M`.
pub fn monoid_to_monoidale(m: &FinMonoid) -> SkewMonoidaleData {
    let c = m.carrier.clone();
    let e = product(&c, &c).apex;
    let s = FinFn::from_fn(e.clone(), c.clone(), |f| f.fst().unwrap().clone()).unwrap();
    let r = FinFn::from_fn(e.clone(), c.clone(), |f| f.snd().unwrap().clone()).unwrap();
    let t = m.mul.with_codomain(c.clone()).unwrap();
    let u = FinSet::terminal();
    let j = FinFn::from_fn(u.clone(), c.clone(), |_| m.unit.clone()).unwrap();
    let phi = FinFn::from_fn(c.clone(), e.clone(), |a| {
        Element::pair(a.clone(), m.unit.clone())
    })
    .unwrap();
    let psi = FinFn::to_terminal(&c);
    let x = pullback(&t, &s).unwrap().apex;
    // ((a, b), (ab, c)) ↦ (a, bc) and (b, c).
    let delta = FinFn::from_fn(x.clone(), e.clone(), |p| {
        let (f, g) = p.as_pair().unwrap();
        Element::pair(
            f.fst().unwrap().clone(),
            m.mul(f.snd().unwrap(), g.snd().unwrap()),
        )
    })
    .unwrap();
    let tau = FinFn::from_fn(x, e.clone(), |p| {
        let (f, g) = p.as_pair().unwrap();
        Element::pair(f.snd().unwrap().clone(), g.snd().unwrap().clone())
    })
    .unwrap();
    SkewMonoidaleData::new(c, e, s, r, t, u, j, phi, psi, tau, delta).unwrap()
}

/// The monoidale of a category on its arrows: the tensor has apex the
/// composable pairs, legs the projections and composition; the unit is the
/// identity assignment `objects -> arrows`.
pub fn category_to_monoidale(cat: &FinCat) -> Result<SkewMonoidaleData> {
    cat.require_valid()?;
    let c = cat.arrows().clone();
    let e = cat.composable_pairs();
    let s = FinFn::from_fn(e.clone(), c.clone(), |f| f.fst().unwrap().clone())?;
    let r = FinFn::from_fn(e.clone(), c.clone(), |f| f.snd().unwrap().clone())?;
    let t = cat.comp_fn()?;
    let u = cat.objects().clone();
    let j = cat.id_fn().clone();
    let phi = FinFn::try_from_fn(c.clone(), e.clone(), |a| {
        Ok(Element::pair(a.clone(), cat.id(cat.cod(a)?)?.clone()))
    })?;
    let psi = cat.cod_fn().clone();
    let x = pullback(&t, &s)?.apex;
    let delta = FinFn::from_fn(x.clone(), e.clone(), |p| {
        let (f, g) = p.as_pair().unwrap();
        let (b, c2) = (f.snd().unwrap(), g.snd().unwrap());
        Element::pair(
            f.fst().unwrap().clone(),
            cat.compose(b, c2).unwrap().clone(),
        )
    })?;
    let tau = FinFn::from_fn(x, e.clone(), |p| {
        let (f, g) = p.as_pair().unwrap();
        Element::pair(f.snd().unwrap().clone(), g.snd().unwrap().clone())
    })?;
    SkewMonoidaleData::new(c, e, s, r, t, u, j, phi, psi, tau, delta)
}

/// The skew monoidale of a category with unit `1 <- C -1-> C`: the tensor is
/// `C × C <-(dom,cod)- arrows -cod-> C`, `δ` is composition and `g^f = g`.
pub fn restricted_unit_monoidale(cat: &FinCat) -> Result<SkewMonoidaleData> {
    cat.require_valid()?;
    let c = cat.objects().clone();
    let e = cat.arrows().clone();
    let x = pullback(cat.cod_fn(), cat.dom_fn())?.apex;
    let delta = FinFn::try_from_fn(x.clone(), e.clone(), |p| {
        let (f, g) = p.as_pair().unwrap();
        cat.compose(f, g)
            .cloned()
            .ok_or_else(|| Error::InvalidCategory(format!("no composite for {p}")))
    })?;
    let tau = FinFn::from_fn(x, e.clone(), |p| p.snd().unwrap().clone())?;
    SkewMonoidaleData::new(
        c.clone(),
        e,
        cat.dom_fn().clone(),
        cat.cod_fn().clone(),
        cat.cod_fn().clone(),
        c.clone(),
        FinFn::identity(&c),
        cat.id_fn().clone(),
        FinFn::identity(&c),
        tau,
        delta,
    )
}

/// Whether the associator of `m`, read on normal forms, is the identity of
/// `C × C × C`: both source legs are bijective onto triples and `α` commutes
/// with them.
pub fn alpha_is_identity(m: &SkewMonoidaleData) -> Result<bool> {
    let cells = StructureCells::new(m)?;
    let a = &cells.alpha;
    let (src_left, tgt_left) = (&a.source.left, &a.target.left);
    if !src_left.is_bijective() || !tgt_left.is_bijective() {
        return Ok(false);
    }
    let inv = src_left.inverse().unwrap();
    let through = fn_compose(tgt_left, &fn_compose(&a.map, &inv)?)?;
    let identity = through.iter().all(|(x, y)| x == y);
    Ok(identity)
}

/// Whether the left and right unit 2-cells are invertible.
pub fn units_invertible(m: &SkewMonoidaleData) -> Result<bool> {
    let cells = StructureCells::new(m)?;
    Ok(cells.lambda.is_invertible() && cells.rho.is_invertible())
}

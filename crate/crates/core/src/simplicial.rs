//! Truncated simplicial sets, nerves of categories, and décalage.

use serde::Serialize;

use crate::category::{cat_coproduct, coslice, FinCat, Functor, Violation};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{fn_compose, FinFn, FinSet};

/// Default truncation depth.
pub const DEFAULT_DEPTH: usize = 3;

/// Levels `S_0 … S_n` with face maps `d_i: S_k -> S_{k-1}` (`0 ≤ i ≤ k`)
/// and degeneracies `s_i: S_k -> S_{k+1}` (`0 ≤ i ≤ k`, `k < n`).
#[derive(Clone, Debug)]
pub struct TruncSimplicialSet {
    levels: Vec<FinSet>,
    /// `faces[k][i]`; `faces[0]` is empty.
    faces: Vec<Vec<FinFn>>,
    /// `degens[k][i]`; `degens[n]` is empty.
    degens: Vec<Vec<FinFn>>,
}

impl TruncSimplicialSet {
    pub fn new(
        levels: Vec<FinSet>,
        faces: Vec<Vec<FinFn>>,
        degens: Vec<Vec<FinFn>>,
    ) -> Result<Self> {
        let n = levels
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("a simplicial set needs level 0".into()))?;
        if faces.len() != n + 1 || degens.len() != n + 1 {
            return Err(Error::Shape(
                "wrong number of face or degeneracy levels".into(),
            ));
        }
        for k in 0..=n {
            let want_faces = if k == 0 { 0 } else { k + 1 };
            let want_degens = if k == n { 0 } else { k + 1 };
            if faces[k].len() != want_faces || degens[k].len() != want_degens {
                return Err(Error::Shape(format!("wrong number of maps at level {k}")));
            }
            for d in &faces[k] {
                if d.domain() != &levels[k] || d.codomain() != &levels[k - 1] {
                    return Err(Error::Shape(format!(
                        "face map at level {k} has the wrong type"
                    )));
                }
            }
            for s in &degens[k] {
                if s.domain() != &levels[k] || s.codomain() != &levels[k + 1] {
                    return Err(Error::Shape(format!(
                        "degeneracy at level {k} has the wrong type"
                    )));
                }
            }
        }
        Ok(TruncSimplicialSet {
            levels,
            faces,
            degens,
        })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &FinSet {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[FinSet] {
        &self.levels
    }

    /// `d_i: S_k -> S_{k-1}`.
    pub fn face(&self, k: usize, i: usize) -> &FinFn {
        &self.faces[k][i]
    }

    /// `s_i: S_k -> S_{k+1}`.
    pub fn degeneracy(&self, k: usize, i: usize) -> &FinFn {
        &self.degens[k][i]
    }

    /// Copy with `d_i` on level `k` replaced.
    pub fn with_face(&self, k: usize, i: usize, d: FinFn) -> Result<Self> {
        let mut faces = self.faces.clone();
        faces[k][i] = d;
        Self::new(self.levels.clone(), faces, self.degens.clone())
    }

    /// The constant simplicial set on a point.
    pub fn point(depth: usize) -> Self {
        let pt = FinSet::terminal();
        let id = FinFn::identity(&pt);
        TruncSimplicialSet {
            levels: vec![pt; depth + 1],
            faces: (0..=depth)
                .map(|k| vec![id.clone(); if k == 0 { 0 } else { k + 1 }])
                .collect(),
            degens: (0..=depth)
                .map(|k| vec![id.clone(); if k == depth { 0 } else { k + 1 }])
                .collect(),
        }
    }
}

fn compare(law: String, lhs: &FinFn, rhs: &FinFn, out: &mut Vec<Violation>) {
    if let Some(x) = lhs.first_difference(rhs) {
        out.push(Violation::new(law, x));
    }
}

/// Checks the simplicial identities among the stored maps.
pub fn simp_validate(s: &TruncSimplicialSet) -> Vec<Violation> {
    let n = s.depth();
    let mut out = Vec::new();
    let c = |g: &FinFn, f: &FinFn| fn_compose(g, f).expect("typed by construction");
    // d_i d_j = d_{j-1} d_i for i < j, on S_k.
    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                let lhs = c(s.face(k - 1, i), s.face(k, j));
                let rhs = c(s.face(k - 1, j - 1), s.face(k, i));
                compare(
                    format!("d{i} d{j} = d{} d{i} on level {k}", j - 1),
                    &lhs,
                    &rhs,
                    &mut out,
                );
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i ≤ j, on S_k.
    for k in 0..n.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                let lhs = c(s.degeneracy(k + 1, i), s.degeneracy(k, j));
                let rhs = c(s.degeneracy(k + 1, j + 1), s.degeneracy(k, i));
                compare(
                    format!("s{i} s{j} = s{} s{i} on level {k}", j + 1),
                    &lhs,
                    &rhs,
                    &mut out,
                );
            }
        }
    }
    // d_i s_j on S_k.
    for k in 0..n {
        for j in 0..=k {
            let sj = s.degeneracy(k, j);
            for i in 0..=k + 1 {
                let lhs = c(s.face(k + 1, i), sj);
                let (rhs, name) = if i < j {
                    (
                        c(s.degeneracy(k - 1, j - 1), s.face(k, i)),
                        format!("s{} d{i}", j - 1),
                    )
                } else if i == j || i == j + 1 {
                    (FinFn::identity(s.level(k)), "id".to_string())
                } else {
                    (
                        c(s.degeneracy(k - 1, j), s.face(k, i - 1)),
                        format!("s{j} d{}", i - 1),
                    )
                };
                compare(
                    format!("d{i} s{j} = {name} on level {k}"),
                    &lhs,
                    &rhs,
                    &mut out,
                );
            }
        }
    }
    out
}

/// Level-wise components of a map of truncated simplicial sets.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub components: Vec<FinFn>,
}

/// Checks that `f` commutes with faces and degeneracies up to the smaller depth.
pub fn is_simplicial_map(
    f: &SimplicialMap,
    x: &TruncSimplicialSet,
    y: &TruncSimplicialSet,
) -> Vec<Violation> {
    let n = x.depth().min(y.depth()).min(f.components.len() - 1);
    let c = |g: &FinFn, h: &FinFn| fn_compose(g, h);
    let mut out = Vec::new();
    for k in 0..=n {
        let fk = &f.components[k];
        if fk.domain() != x.level(k) || fk.codomain() != y.level(k) {
            out.push(Violation::new(
                format!("component {k} has the wrong type"),
                k,
            ));
            return out;
        }
    }
    for k in 1..=n {
        for i in 0..=k {
            match (
                c(&f.components[k - 1], x.face(k, i)),
                c(y.face(k, i), &f.components[k]),
            ) {
                (Ok(a), Ok(b)) => compare(
                    format!("map commutes with d{i} on level {k}"),
                    &a,
                    &b,
                    &mut out,
                ),
                _ => out.push(Violation::new("type error", k)),
            }
        }
    }
    for k in 0..n {
        for i in 0..=k {
            match (
                c(&f.components[k + 1], x.degeneracy(k, i)),
                c(y.degeneracy(k, i), &f.components[k]),
            ) {
                (Ok(a), Ok(b)) => compare(
                    format!("map commutes with s{i} on level {k}"),
                    &a,
                    &b,
                    &mut out,
                ),
                _ => out.push(Violation::new("type error", k)),
            }
        }
    }
    out
}

fn arrows_of(t: &Element) -> &[Element] {
    t.as_tuple().expect("nerve simplex")
}

/// The nerve of `c` to the given depth: level 0 is the objects, level
/// `k ≥ 1` the composable `k`-tuples `<f_1, …, f_k>` (first arrow first).
pub fn nerve(c: &FinCat, depth: usize) -> Result<TruncSimplicialSet> {
    c.require_valid()?;
    let mut levels = vec![c.objects().clone()];
    let mut chains: Vec<Vec<Element>> = c.arrows().iter().map(|f| vec![f.clone()]).collect();
    for k in 1..=depth {
        if k > 1 {
            chains = chains
                .into_iter()
                .flat_map(|ch| {
                    let last = ch.last().unwrap().clone();
                    c.arrows()
                        .iter()
                        .filter(move |g| c.is_composable(&last, g))
                        .map(move |g| {
                            let mut next = ch.clone();
                            next.push(g.clone());
                            next
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        levels.push(FinSet::new(
            chains.iter().map(|ch| Element::tuple(ch.iter().cloned())),
        )?);
    }
    let vertex = |t: &Element, i: usize| -> Result<Element> {
        let fs = arrows_of(t);
        Ok(if i == 0 {
            c.dom(&fs[0])?.clone()
        } else {
            c.cod(&fs[i - 1])?.clone()
        })
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=depth {
        let mut dk = Vec::new();
        for i in 0..=k {
            let d = FinFn::try_from_fn(levels[k].clone(), levels[k - 1].clone(), |t| {
                let fs = arrows_of(t);
                if k == 1 {
                    return vertex(t, 1 - i);
                }
                let mut out: Vec<Element> = Vec::with_capacity(k - 1);
                if i == 0 {
                    out.extend(fs[1..].iter().cloned());
                } else if i == k {
                    out.extend(fs[..k - 1].iter().cloned());
                } else {
                    out.extend(fs[..i - 1].iter().cloned());
                    let composite = c
                        .compose(&fs[i - 1], &fs[i])
                        .ok_or_else(|| Error::InvalidCategory(format!("no composite in {t}")))?;
                    out.push(composite.clone());
                    out.extend(fs[i + 1..].iter().cloned());
                }
                Ok(Element::tuple(out))
            })?;
            dk.push(d);
        }
        faces.push(dk);
    }
    let mut degens = Vec::new();
    for k in 0..=depth {
        let mut sk = Vec::new();
        if k < depth {
            for i in 0..=k {
                let s = FinFn::try_from_fn(levels[k].clone(), levels[k + 1].clone(), |t| {
                    if k == 0 {
                        return Ok(Element::tuple([c.id(t)?.clone()]));
                    }
                    let fs = arrows_of(t);
                    let mut out = fs[..i].to_vec();
                    out.push(c.id(&vertex(t, i)?)?.clone());
                    out.extend(fs[i..].iter().cloned());
                    Ok(Element::tuple(out))
                })?;
                sk.push(s);
            }
        }
        degens.push(sk);
    }
    TruncSimplicialSet::new(levels, faces, degens)
}

/// The map of nerves induced by a functor.
pub fn nerve_map(f: &Functor, depth: usize) -> Result<SimplicialMap> {
    let x = nerve(&f.source, depth)?;
    let y = nerve(&f.target, depth)?;
    let mut components = vec![f.on_objects.clone()];
    for k in 1..=depth {
        components.push(FinFn::try_from_fn(
            x.level(k).clone(),
            y.level(k).clone(),
            |t| {
                Ok(Element::tuple(
                    arrows_of(t)
                        .iter()
                        .map(|g| f.arr(g).cloned())
                        .collect::<Result<Vec<_>>>()?,
                ))
            },
        )?);
    }
    Ok(SimplicialMap { components })
}

/// Décalage of a simplicial set, with the counit `d_0: Dec(S) -> S`.
#[derive(Clone, Debug)]
pub struct Decalage {
    pub dec: TruncSimplicialSet,
    pub d0: SimplicialMap,
}

/// Drops `d_0` and `s_0` and shifts down one level: `Dec(S)_k = S_{k+1}`,
/// with `d_i` of `Dec(S)` the `d_{i+1}` of `S` and `s_i` the `s_{i+1}`.
pub fn dec_simplicial(s: &TruncSimplicialSet) -> Result<Decalage> {
    let n = s.depth();
    if n < 1 {
        return Err(Error::DepthTooSmall {
            depth: n,
            needed: 1,
        });
    }
    let levels = s.levels[1..].to_vec();
    let faces = (0..n)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                s.faces[k + 1][1..].to_vec()
            }
        })
        .collect();
    let degens = (0..n)
        .map(|k| {
            if k == n - 1 {
                Vec::new()
            } else {
                s.degens[k + 1][1..].to_vec()
            }
        })
        .collect();
    let dec = TruncSimplicialSet::new(levels, faces, degens)?;
    let d0 = SimplicialMap {
        components: (0..n).map(|k| s.faces[k + 1][0].clone()).collect(),
    };
    let bad = is_simplicial_map(&d0, &dec, s);
    if let Some(v) = bad.first() {
        return Err(Error::Shape(format!("d0 is not a simplicial map: {v}")));
    }
    Ok(Decalage { dec, d0 })
}

/// Renames objects and arrows of a category along injective maps.
fn relabel(
    c: &FinCat,
    obj: impl Fn(&Element) -> Element,
    arr: impl Fn(&Element) -> Element,
) -> Result<FinCat> {
    let objects = FinSet::new(c.objects().iter().map(&obj))?;
    let arrows = FinSet::new(c.arrows().iter().map(&arr))?;
    let dom = FinFn::new(
        arrows.clone(),
        objects.clone(),
        c.arrows().iter().map(|f| (arr(f), obj(c.dom(f).unwrap()))),
    )?;
    let cod = FinFn::new(
        arrows.clone(),
        objects.clone(),
        c.arrows().iter().map(|f| (arr(f), obj(c.cod(f).unwrap()))),
    )?;
    let id = FinFn::new(
        objects.clone(),
        arrows.clone(),
        c.objects().iter().map(|x| (obj(x), arr(c.id(x).unwrap()))),
    )?;
    let comp = c
        .comp_entries()
        .into_iter()
        .map(|((f, g), h)| ((arr(&f), arr(&g)), arr(&h)));
    FinCat::new(objects, arrows, dom, cod, id, comp)
}

/// `Dec(C)`, the disjoint union of the coslices `(x ↓ C)`, and the counit
/// `Cod: Dec(C) -> C`. Objects are the arrows `f` of `C`; arrows are the
/// composable pairs `(f, g)`, read as `g: f -> gf`.
pub fn dec_cat(c: &FinCat) -> Result<(FinCat, Functor)> {
    c.require_valid()?;
    let slices = c
        .objects()
        .iter()
        .map(|x| coslice(c, x).map(|s| s.cat))
        .collect::<Result<Vec<_>>>()?;
    let (sum, _) = cat_coproduct(&slices)?;
    let untag = |e: &Element| e.snd().expect("tagged element").clone();
    let dec = relabel(&sum, untag, untag)?;
    let on_objects = FinFn::try_from_fn(dec.objects().clone(), c.objects().clone(), |f| {
        c.cod(f).cloned()
    })?;
    let on_arrows = FinFn::from_fn(dec.arrows().clone(), c.arrows().clone(), |p| {
        p.snd().unwrap().clone()
    })?;
    let cod = Functor::new(dec.clone(), c.clone(), on_objects, on_arrows)?;
    Ok((dec, cod))
}

/// `Dec(F)`: `f ↦ F f` on objects, `(f, g) ↦ (F f, F g)` on arrows.
pub fn dec_functor(f: &Functor) -> Result<Functor> {
    f.require_valid()?;
    let (src, _) = dec_cat(&f.source)?;
    let (tgt, _) = dec_cat(&f.target)?;
    let on_objects = FinFn::try_from_fn(src.objects().clone(), tgt.objects().clone(), |g| {
        f.arr(g).cloned()
    })?;
    let on_arrows = FinFn::try_from_fn(src.arrows().clone(), tgt.arrows().clone(), |p| {
        let (a, b) = p.as_pair().unwrap();
        Ok(Element::pair(f.arr(a)?.clone(), f.arr(b)?.clone()))
    })?;
    Functor::new(src, tgt, on_objects, on_arrows)
}

#[derive(Clone, Debug, Serialize)]
pub struct NerveDecReport {
    pub depth: usize,
    /// Sizes of `N(Dec C)_k` and `Dec(N C)_k`.
    pub level_sizes: Vec<(usize, usize)>,
    pub violations: Vec<Violation>,
}

impl NerveDecReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `N(Dec C)` with `Dec(N C)` through `depth`, relabelling a chain
/// `(f, g_1), (g_1 f, g_2), …` of `Dec C` as `<f, g_1, g_2, …>`, and checks
/// that the nerve of `Cod` is `d_0` under that relabelling.
pub fn nerve_dec_compat(c: &FinCat, depth: usize) -> Result<NerveDecReport> {
    if depth < 1 {
        return Err(Error::DepthTooSmall { depth, needed: 1 });
    }
    let (dec, cod) = dec_cat(c)?;
    let n_dec = nerve(&dec, depth)?;
    let shifted = dec_simplicial(&nerve(c, depth + 1)?)?;
    let mut violations = Vec::new();
    let mut level_sizes = Vec::new();
    let mut relabels = Vec::new();
    for k in 0..=depth {
        level_sizes.push((n_dec.level(k).len(), shifted.dec.level(k).len()));
        let map = FinFn::try_from_fn(n_dec.level(k).clone(), shifted.dec.level(k).clone(), |t| {
            if k == 0 {
                return Ok(Element::tuple([t.clone()]));
            }
            let pairs = arrows_of(t);
            let mut out = vec![pairs[0].fst().unwrap().clone()];
            out.extend(pairs.iter().map(|p| p.snd().unwrap().clone()));
            Ok(Element::tuple(out))
        });
        match map {
            Ok(m) if m.is_bijective() => relabels.push(m),
            Ok(_) => {
                violations.push(Violation::new("relabelling is not a bijection", k));
                return Ok(NerveDecReport {
                    depth,
                    level_sizes,
                    violations,
                });
            }
            Err(e) => {
                violations.push(Violation::new(format!("relabelling fails: {e}"), k));
                return Ok(NerveDecReport {
                    depth,
                    level_sizes,
                    violations,
                });
            }
        }
    }
    let relabel = SimplicialMap {
        components: relabels,
    };
    violations.extend(is_simplicial_map(&relabel, &n_dec, &shifted.dec));
    let n_cod = nerve_map(&cod, depth)?;
    for k in 0..=depth {
        let via_d0 = fn_compose(&shifted.d0.components[k], &relabel.components[k])?;
        compare(
            format!("Cod agrees with d0 on level {k}"),
            &n_cod.components[k],
            &via_d0,
            &mut violations,
        );
    }
    Ok(NerveDecReport {
        depth,
        level_sizes,
        violations,
    })
}

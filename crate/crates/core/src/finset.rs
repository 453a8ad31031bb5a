//! Finite sets, total functions between them, and the canonical pullback
//! and product constructions that span composition is built on.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};

/// Default cap on the size of brute-force function spaces.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

struct SetInner {
    elems: Vec<Element>,
    index: HashMap<Element, usize>,
}

/// A duplicate-free finite set with a fixed iteration order.
///
/// Equality is set equality; the order only matters for iteration.
#[derive(Clone)]
pub struct FinSet(Arc<SetInner>);

impl FinSet {
    pub fn new(elems: impl IntoIterator<Item = Element>) -> Result<Self> {
        let elems: Vec<Element> = elems.into_iter().collect();
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.to_string()));
            }
        }
        Ok(FinSet(Arc::new(SetInner { elems, index })))
    }

    /// Builds a set, silently keeping the first occurrence of repeated elements.
    pub fn dedup(elems: impl IntoIterator<Item = Element>) -> Self {
        let mut index = HashMap::new();
        let mut out = Vec::new();
        for e in elems {
            if !index.contains_key(&e) {
                index.insert(e.clone(), out.len());
                out.push(e);
            }
        }
        FinSet(Arc::new(SetInner { elems: out, index }))
    }

    pub fn atoms<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(labels.into_iter().map(Element::atom))
    }

    pub fn empty() -> Self {
        Self::dedup(std::iter::empty())
    }

    /// The chosen terminal set `{*}`.
    pub fn terminal() -> Self {
        Self::dedup([Element::star()])
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.0.elems.iter()
    }

    pub fn elements(&self) -> &[Element] {
        &self.0.elems
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.0.index.contains_key(e)
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.0.index.get(e).copied()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.0.elems[i]
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// Subset of elements satisfying `keep`, in the original order.
    pub fn filter(&self, keep: impl Fn(&Element) -> bool) -> FinSet {
        FinSet::dedup(self.iter().filter(|e| keep(e)).cloned())
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.len() == other.len() && self.is_subset_of(other))
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// A total function between finite sets.
#[derive(Clone)]
pub struct FinFn {
    domain: FinSet,
    codomain: FinSet,
    images: Vec<usize>,
}

impl FinFn {
    /// Builds a function from explicit `(input, output)` entries. Every domain
    /// element must appear exactly once and every output must lie in the codomain.
    pub fn new(
        domain: FinSet,
        codomain: FinSet,
        entries: impl IntoIterator<Item = (Element, Element)>,
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; domain.len()];
        for (x, y) in entries {
            let i = domain
                .index_of(&x)
                .ok_or_else(|| Error::NotInDomain(x.to_string()))?;
            let j = codomain.index_of(&y).ok_or_else(|| Error::NotInCodomain {
                at: x.to_string(),
                value: y.to_string(),
            })?;
            if images[i] != usize::MAX && images[i] != j {
                return Err(Error::Parse(format!("conflicting values for {x}")));
            }
            images[i] = j;
        }
        if let Some(i) = images.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotTotal(domain.get(i).to_string()));
        }
        Ok(FinFn {
            domain,
            codomain,
            images,
        })
    }

    pub fn from_fn(
        domain: FinSet,
        codomain: FinSet,
        f: impl Fn(&Element) -> Element,
    ) -> Result<Self> {
        Self::try_from_fn(domain, codomain, |x| Ok(f(x)))
    }

    pub fn try_from_fn(
        domain: FinSet,
        codomain: FinSet,
        f: impl Fn(&Element) -> Result<Element>,
    ) -> Result<Self> {
        let images = domain
            .iter()
            .map(|x| {
                let y = f(x)?;
                codomain.index_of(&y).ok_or_else(|| Error::NotInCodomain {
                    at: x.to_string(),
                    value: y.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn from_indices(domain: FinSet, codomain: FinSet, images: Vec<usize>) -> Self {
        debug_assert_eq!(domain.len(), images.len());
        FinFn {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(set: &FinSet) -> Self {
        FinFn {
            domain: set.clone(),
            codomain: set.clone(),
            images: (0..set.len()).collect(),
        }
    }

    /// The unique map `A -> {*}`.
    pub fn to_terminal(set: &FinSet) -> Self {
        FinFn {
            domain: set.clone(),
            codomain: FinSet::terminal(),
            images: vec![0; set.len()],
        }
    }

    /// Inclusion of a subset.
    pub fn inclusion(sub: &FinSet, sup: &FinSet) -> Result<Self> {
        Self::from_fn(sub.clone(), sup.clone(), |x| x.clone())
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn apply(&self, x: &Element) -> Option<&Element> {
        self.domain
            .index_of(x)
            .map(|i| self.codomain.get(self.images[i]))
    }

    /// Like [`FinFn::apply`] but reports a missing input as an error.
    pub fn at(&self, x: &Element) -> Result<&Element> {
        self.apply(x)
            .ok_or_else(|| Error::NotInDomain(x.to_string()))
    }

    pub fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Element)> + '_ {
        self.domain
            .iter()
            .zip(self.images.iter().map(|&j| self.codomain.get(j)))
    }

    /// Copy of this function with the value at `x` replaced.
    pub fn with_value(&self, x: &Element, y: &Element) -> Result<FinFn> {
        let i = self
            .domain
            .index_of(x)
            .ok_or_else(|| Error::NotInDomain(x.to_string()))?;
        let j = self
            .codomain
            .index_of(y)
            .ok_or_else(|| Error::NotInCodomain {
                at: x.to_string(),
                value: y.to_string(),
            })?;
        let mut images = self.images.clone();
        images[i] = j;
        Ok(FinFn::from_indices(
            self.domain.clone(),
            self.codomain.clone(),
            images,
        ))
    }

    /// Same mapping, viewed with a (possibly larger) codomain.
    pub fn with_codomain(&self, codomain: FinSet) -> Result<FinFn> {
        Self::from_fn(self.domain.clone(), codomain, |x| {
            self.apply(x).unwrap().clone()
        })
    }

    pub fn image(&self) -> FinSet {
        FinSet::dedup(self.iter().map(|(_, y)| y.clone()))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.images
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &j in &self.images {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.codomain.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Some(FinFn::from_indices(
            self.codomain.clone(),
            self.domain.clone(),
            images,
        ))
    }

    /// First domain element where the two functions disagree.
    pub fn first_difference<'a>(&'a self, other: &'a FinFn) -> Option<&'a Element> {
        self.domain.iter().find(|x| self.apply(x) != other.apply(x))
    }
}

impl PartialEq for FinFn {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.iter().all(|(x, y)| other.apply(x) == Some(y))
    }
}

impl Eq for FinFn {}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn fn_compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.codomain() != g.domain() {
        return Err(Error::DomainMismatch(format!(
            "codomain {:?} of the first map is not the domain {:?} of the second",
            f.codomain(),
            g.domain()
        )));
    }
    let images = f
        .images
        .iter()
        .map(|&j| {
            let y = f.codomain.get(j);
            g.image_index(g.domain.index_of(y).expect("checked equal domains"))
        })
        .collect();
    Ok(FinFn::from_indices(
        f.domain.clone(),
        g.codomain.clone(),
        images,
    ))
}

/// The chosen pullback of a cospan `A -f-> C <-g- B`.
#[derive(Clone, Debug)]
pub struct PullbackResult {
    pub apex: FinSet,
    pub proj1: FinFn,
    pub proj2: FinFn,
}

/// Canonical pullback: the pairs `(a, b)` with `f(a) = g(b)`, ordered
/// lexicographically by the domain orders of `A` and `B`.
pub fn pullback(f: &FinFn, g: &FinFn) -> Result<PullbackResult> {
    if f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch(format!(
            "pullback legs have different codomains {:?} and {:?}",
            f.codomain(),
            g.codomain()
        )));
    }
    let mut by_value: HashMap<&Element, Vec<usize>> = HashMap::new();
    for (bi, (_, y)) in g.iter().enumerate() {
        by_value.entry(y).or_default().push(bi);
    }
    let mut elems = Vec::new();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for (ai, (a, y)) in f.iter().enumerate() {
        if let Some(bs) = by_value.get(y) {
            for &bi in bs {
                elems.push(Element::pair(a.clone(), g.domain().get(bi).clone()));
                p1.push(ai);
                p2.push(bi);
            }
        }
    }
    let apex = FinSet::new(elems).expect("pairs of distinct indices are distinct");
    Ok(PullbackResult {
        proj1: FinFn::from_indices(apex.clone(), f.domain().clone(), p1),
        proj2: FinFn::from_indices(apex.clone(), g.domain().clone(), p2),
        apex,
    })
}

/// Every `m: T -> apex` with `proj1 m = h` and `proj2 m = k`, found by
/// enumerating all functions `T -> apex`.
pub fn cone_mediators(pb: &PullbackResult, h: &FinFn, k: &FinFn, cap: u128) -> Result<Vec<FinFn>> {
    if h.domain() != k.domain() {
        return Err(Error::DomainMismatch(
            "cone legs have different domains".into(),
        ));
    }
    let mut out = Vec::new();
    for m in enumerate_functions(h.domain(), &pb.apex, cap)? {
        if fn_compose(&pb.proj1, &m)? == *h && fn_compose(&pb.proj2, &m)? == *k {
            out.push(m);
        }
    }
    Ok(out)
}

/// Cartesian product, obtained as the pullback over the terminal set.
pub fn product(a: &FinSet, b: &FinSet) -> PullbackResult {
    pullback(&FinFn::to_terminal(a), &FinFn::to_terminal(b))
        .expect("both legs land in the terminal set")
}

/// `f × g` between the canonical products.
pub fn fn_product(f: &FinFn, g: &FinFn) -> FinFn {
    let dom = product(f.domain(), g.domain()).apex;
    let cod = product(f.codomain(), g.codomain()).apex;
    FinFn::from_fn(dom, cod, |x| {
        let (a, b) = x.as_pair().expect("product elements are pairs");
        Element::pair(f.apply(a).unwrap().clone(), g.apply(b).unwrap().clone())
    })
    .expect("componentwise images lie in the product")
}

/// Number of functions `A -> B`, saturating.
pub fn function_count(a: &FinSet, b: &FinSet) -> u128 {
    let base = b.len() as u128;
    let mut n: u128 = 1;
    for _ in 0..a.len() {
        n = n.saturating_mul(base);
        if n == 0 {
            break;
        }
    }
    n
}

/// All total functions `A -> B` in lexicographic order (the first domain
/// element varies slowest).
pub fn enumerate_functions(a: &FinSet, b: &FinSet, cap: u128) -> Result<FunctionIter> {
    let size = function_count(a, b);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(FunctionIter {
        domain: a.clone(),
        codomain: b.clone(),
        current: if size == 0 {
            None
        } else {
            Some(vec![0; a.len()])
        },
    })
}

pub struct FunctionIter {
    domain: FinSet,
    codomain: FinSet,
    current: Option<Vec<usize>>,
}

impl Iterator for FunctionIter {
    type Item = FinFn;

    fn next(&mut self) -> Option<FinFn> {
        let cur = self.current.take()?;
        let out = FinFn::from_indices(self.domain.clone(), self.codomain.clone(), cur.clone());
        let mut next = cur;
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.codomain.len() {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::atoms(labels).unwrap()
    }

    fn func(dom: &FinSet, cod: &FinSet, pairs: &[(&str, &str)]) -> FinFn {
        FinFn::new(
            dom.clone(),
            cod.clone(),
            pairs
                .iter()
                .map(|(a, b)| (Element::atom(a), Element::atom(b))),
        )
        .unwrap()
    }

    #[test]
    fn rejects_duplicates_and_partial_maps() {
        assert!(matches!(
            FinSet::atoms(["a", "a"]),
            Err(Error::DuplicateElement(_))
        ));
        let a = set(&["a", "b"]);
        let b = set(&["0"]);
        assert!(matches!(
            FinFn::new(a.clone(), b.clone(), [("a".into(), "0".into())]),
            Err(Error::NotTotal(_))
        ));
        assert!(matches!(
            FinFn::new(a, b, [("a".into(), "0".into()), ("b".into(), "1".into())]),
            Err(Error::NotInCodomain { .. })
        ));
    }

    #[test]
    fn compose_identity_and_constants() {
        let a = set(&["a"]);
        let b = set(&["b"]);
        let c = set(&["c"]);
        let f = func(&a, &b, &[("a", "b")]);
        let g = func(&b, &c, &[("b", "c")]);
        assert_eq!(fn_compose(&FinFn::identity(&b), &f).unwrap(), f);
        let gf = fn_compose(&g, &f).unwrap();
        assert_eq!(gf.apply(&"a".into()), Some(&"c".into()));
        assert!(matches!(fn_compose(&f, &g), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn pullback_of_unit_against_source() {
        // U = {u}, j(u) = x0; E = {f1, f2}, s(f1) = x0, s(f2) = x1.
        let c = set(&["x0", "x1"]);
        let u = set(&["u"]);
        let e = set(&["f1", "f2"]);
        let j = func(&u, &c, &[("u", "x0")]);
        let s = func(&e, &c, &[("f1", "x0"), ("f2", "x1")]);
        let pb = pullback(&j, &s).unwrap();
        let uf1: Element = ("u", "f1").into();
        assert_eq!(pb.apex.elements(), std::slice::from_ref(&uf1));
        assert_eq!(pb.proj1.apply(&uf1), Some(&"u".into()));
        assert_eq!(pb.proj2.apply(&uf1), Some(&"f1".into()));
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let c = set(&["a", "b", "c"]);
        let id = FinFn::identity(&c);
        let pb = pullback(&id, &id).unwrap();
        let diag: Vec<Element> = c
            .iter()
            .map(|x| Element::pair(x.clone(), x.clone()))
            .collect();
        assert_eq!(pb.apex.elements(), diag.as_slice());
    }

    #[test]
    fn mediator_of_a_cone() {
        let a = FinSet::atoms(["0", "1", "2"]).unwrap();
        let c = FinSet::atoms(["x", "y"]).unwrap();
        let f = FinFn::from_fn(a.clone(), c.clone(), |e| {
            if e.as_atom() == Some("2") {
                "y".into()
            } else {
                "x".into()
            }
        })
        .unwrap();
        let pb = pullback(&f, &f).unwrap();
        let t = FinSet::atoms(["p", "q"]).unwrap();
        let h = FinFn::from_fn(t.clone(), a.clone(), |e| {
            if e.as_atom() == Some("p") {
                "0".into()
            } else {
                "2".into()
            }
        })
        .unwrap();
        let k = FinFn::from_fn(t.clone(), a.clone(), |e| {
            if e.as_atom() == Some("p") {
                "1".into()
            } else {
                "2".into()
            }
        })
        .unwrap();
        let ms = cone_mediators(&pb, &h, &k, 1 << 20).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(
            ms[0].apply(&"p".into()),
            Some(&Element::pair("0".into(), "1".into()))
        );
        let bad = FinFn::from_fn(t, a, |_| "2".into()).unwrap();
        assert!(cone_mediators(&pb, &h, &bad, 1 << 20).unwrap().is_empty());
    }

    #[test]
    fn pullback_rejects_mismatched_codomains() {
        let a = set(&["a"]);
        let f = FinFn::identity(&a);
        let g = FinFn::identity(&set(&["b"]));
        assert!(matches!(pullback(&f, &g), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn products_are_lexicographic() {
        let x = set(&["x"]);
        let y = set(&["y"]);
        assert_eq!(product(&x, &y).apex.elements(), &[("x", "y").into()]);
        let b = set(&["0", "1"]);
        let p = product(&b, &b);
        let expect: Vec<Element> = vec![
            ("0", "0").into(),
            ("0", "1").into(),
            ("1", "0").into(),
            ("1", "1").into(),
        ];
        assert_eq!(p.apex.elements(), expect.as_slice());
        assert_eq!(product(&FinSet::terminal(), &b).apex.len(), 2);
        assert!(product(&FinSet::empty(), &b).apex.is_empty());
    }

    #[test]
    fn fn_product_expands_componentwise() {
        // j × 1 for U = {u}, C = {x0, x1}, j(u) = x0.
        let c = set(&["x0", "x1"]);
        let u = set(&["u"]);
        let j = func(&u, &c, &[("u", "x0")]);
        let jx1 = fn_product(&j, &FinFn::identity(&c));
        assert_eq!(jx1.apply(&("u", "x0").into()), Some(&("x0", "x0").into()));
        assert_eq!(jx1.apply(&("u", "x1").into()), Some(&("x0", "x1").into()));
        let idid = fn_product(&FinFn::identity(&c), &FinFn::identity(&c));
        assert_eq!(idid, FinFn::identity(&product(&c, &c).apex));
        // ! × 1 collapses the first coordinate.
        let bang = fn_product(&FinFn::to_terminal(&u), &FinFn::identity(&c));
        assert_eq!(bang.apply(&("u", "x1").into()), Some(&("*", "x1").into()));
    }

    #[test]
    fn enumeration_counts() {
        let a = set(&["a"]);
        let b = set(&["0", "1"]);
        assert_eq!(enumerate_functions(&a, &b, 10).unwrap().count(), 2);
        assert_eq!(
            enumerate_functions(&FinSet::empty(), &b, 10)
                .unwrap()
                .count(),
            1
        );
        assert_eq!(
            enumerate_functions(&FinSet::empty(), &FinSet::empty(), 10)
                .unwrap()
                .count(),
            1
        );
        assert_eq!(
            enumerate_functions(&a, &FinSet::empty(), 10)
                .unwrap()
                .count(),
            0
        );
        let ab = set(&["a", "b"]);
        let three = set(&["0", "1", "2"]);
        let all: Vec<FinFn> = enumerate_functions(&ab, &three, 100).unwrap().collect();
        assert_eq!(all.len(), 9);
        for (i, f) in all.iter().enumerate() {
            assert!(all[i + 1..].iter().all(|g| g != f));
        }
        assert!(matches!(
            enumerate_functions(&ab, &three, 8),
            Err(Error::CapExceeded { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn set_equality_ignores_order() {
        assert_eq!(set(&["a", "b"]), set(&["b", "a"]));
        assert_ne!(set(&["a", "b"]), set(&["a"]));
    }

    #[test]
    fn inverse_of_bijection() {
        let a = set(&["a", "b"]);
        let b = set(&["0", "1"]);
        let f = func(&a, &b, &[("a", "1"), ("b", "0")]);
        let g = f.inverse().unwrap();
        assert_eq!(fn_compose(&g, &f).unwrap(), FinFn::identity(&a));
        let k = func(&a, &b, &[("a", "1"), ("b", "1")]);
        assert!(k.inverse().is_none());
        assert!(!k.is_injective() && !k.is_surjective());
    }
}

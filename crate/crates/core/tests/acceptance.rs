//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewspan::category::is_isomorphic;
use skewspan::characterization::{
    check_conditions, enumerate_rstructures, enumerate_skew_structures, extract, roundtrip,
    rstructure_mutations, RStructure,
};
use skewspan::examples::{
    alpha_is_identity, category_to_monoidale, interval_category, left_absorbing_monoid,
    monoid_to_monoidale, one_object_category, restricted_unit_monoidale, t_category,
    terminal_category, units_invertible, zmod,
};
use skewspan::finset::{
    cone_mediators, enumerate_functions, fn_compose, pullback, DEFAULT_ENUMERATION_CAP,
};
use skewspan::io::{read_instance, Instance};
use skewspan::simplicial::{
    dec_cat, dec_simplicial, is_simplicial_map, nerve, nerve_dec_compat, simp_validate,
};
use skewspan::skew::{shuffled_mutations, verify, AxiomReport, SkewMonoidaleData};
use skewspan::{Element, FinFn, FinSet};

const SEED: u64 = 20_240_611;
/// Valid R-structures on the terminal category and on the arrow category,
/// counted by a separate brute-force script before this suite was written.
const PINNED_COUNTS: [(&str, usize); 2] = [("terminal", 1), ("interval", 3)];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", start.elapsed())
    })
}

fn bundled_monoidales() -> Vec<(String, SkewMonoidaleData)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .expect("fixtures directory")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json") && !n.starts_with("broken_"))
        .collect();
    names.sort();
    names
        .into_iter()
        .filter_map(
            |n| match read_instance(dir.join(&n)).expect("fixture parses") {
                Instance::Monoidale(m) => Some((n, m)),
                _ => None,
            },
        )
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (name, m) in [
        ("Z/2", zmod(2)),
        ("Z/3", zmod(3)),
        ("left-absorbing", left_absorbing_monoid()),
    ] {
        let inst = monoid_to_monoidale(&m);
        let report = verify(&inst);
        ensure(report.all_pass(), || format!("{name}: {report}"))?;
        ensure(alpha_is_identity(&inst).map_err(|e| e.to_string())?, || {
            format!("{name}: alpha is not 1")
        })?;
        ensure(units_invertible(&inst).map_err(|e| e.to_string())?, || {
            format!("{name}: lambda or rho not bijective")
        })?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "3 monoids, both checkers, alpha = 1, units bijective, {:?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let bases = [
        restricted_unit_monoidale(&one_object_category(&zmod(2))).unwrap(),
        restricted_unit_monoidale(&one_object_category(&zmod(3))).unwrap(),
        restricted_unit_monoidale(&one_object_category(&zmod(4))).unwrap(),
        restricted_unit_monoidale(&one_object_category(&left_absorbing_monoid())).unwrap(),
        restricted_unit_monoidale(&interval_category()).unwrap(),
        monoid_to_monoidale(&zmod(2)),
        category_to_monoidale(&interval_category()).unwrap(),
    ];
    let (mut variants, mut compared, mut failing) = (0, 0, 0);
    for (i, base) in bases.iter().enumerate() {
        for m in shuffled_mutations(base, SEED + i as u64) {
            let report = verify(&m.instance);
            variants += 1;
            ensure(report.agree, || {
                format!("checkers disagree on {m}: {report}")
            })?;
            if let (Some(a), Some(b)) = (
                AxiomReport::verdicts(&report.pointwise),
                AxiomReport::verdicts(&report.bicategorical),
            ) {
                ensure(a == b, || format!("verdicts differ on {m}"))?;
                compared += 1;
                if a.contains(&false) {
                    failing += 1;
                }
            }
        }
    }
    ensure(compared >= 100, || {
        format!("only {compared} well-formed variants")
    })?;
    let bundled = bundled_monoidales();
    for (name, m) in &bundled {
        let report = verify(m);
        ensure(report.all_pass(), || format!("{name}: {report}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{compared} well-formed variants compared ({failing} failing some axiom) of {variants} seeded mutations, {} bundled instances, {:?}",
        bundled.len(),
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let bundled = bundled_monoidales();
    for (name, m) in &bundled {
        let report = roundtrip(m).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.isomorphic(), || format!("{name}: {report}"))?;
    }
    Ok(format!("{} bundled instances round-trip", bundled.len()))
}

fn criterion_4() -> Outcome {
    let mut corpus: Vec<SkewMonoidaleData> =
        bundled_monoidales().into_iter().map(|(_, m)| m).collect();
    let restricted: Vec<_> = [
        terminal_category(),
        interval_category(),
        one_object_category(&zmod(2)),
        one_object_category(&zmod(3)),
        one_object_category(&left_absorbing_monoid()),
        t_category(&zmod(2)),
    ]
    .iter()
    .map(|c| restricted_unit_monoidale(c).unwrap())
    .collect();
    for m in &restricted {
        corpus.extend(shuffled_mutations(m, SEED).into_iter().map(|x| x.instance));
    }
    corpus.extend(restricted);
    corpus
        .extend(enumerate_skew_structures(&interval_category(), DEFAULT_ENUMERATION_CAP).unwrap());
    let mut checked = 0;
    let mut with_restricted_unit = 0;
    for m in &corpus {
        if !m.j.is_surjective() || !verify(m).is_wellformed() {
            continue;
        }
        ensure(m.r_equals_t(), || {
            let f =
                m.r.first_difference(&m.t)
                    .map(Element::to_string)
                    .unwrap_or_default();
            format!("r and t differ at {f}")
        })?;
        checked += 1;
        if m.u.len() == m.c.len() {
            with_restricted_unit += 1;
        }
    }
    ensure(with_restricted_unit >= 6, || {
        "restricted-unit instances missing from the corpus".into()
    })?;
    Ok(format!(
        "{checked} well-formed instances with surjective j, r = t on all"
    ))
}

fn criterion_5() -> Outcome {
    for (name, c) in [
        ("1", terminal_category()),
        ("2", interval_category()),
        ("BZ/2", one_object_category(&zmod(2))),
    ] {
        let m = restricted_unit_monoidale(&c).unwrap();
        ensure(m.j == FinFn::identity(&m.c), || {
            format!("{name}: j is not the identity")
        })?;
        let rs = extract(&m).map_err(|e| format!("{name}: {e}"))?;
        let cod = RStructure::cod(&c).unwrap();
        ensure(rs.r_objects() == cod.r_objects(), || {
            format!("{name}: R is not Cod on objects")
        })?;
        ensure(rs.r_arrows() == cod.r_arrows(), || {
            format!("{name}: R is not Cod on arrows")
        })?;
        for (p, v) in m.tau.iter() {
            ensure(p.snd() == Some(v), || format!("{name}: tau{p} = {v}"))?;
        }
    }
    Ok("1, 2, BZ/2: R = Cod and tau(f,g) = g".into())
}

fn criterion_6() -> Outcome {
    let mut valid: Vec<RStructure> = Vec::new();
    for c in [terminal_category(), interval_category()] {
        valid.extend(enumerate_rstructures(&c, DEFAULT_ENUMERATION_CAP).unwrap());
    }
    for m in [zmod(2), zmod(3), left_absorbing_monoid()] {
        valid.push(extract(&monoid_to_monoidale(&m)).unwrap());
    }
    for c in [
        one_object_category(&zmod(2)),
        one_object_category(&left_absorbing_monoid()),
        t_category(&zmod(2)),
    ] {
        valid.push(RStructure::cod(&c).unwrap());
    }
    let mut checked = 0;
    let mut factor_pass = 0;
    let mut mutated_fail_both = 0;
    for rs in &valid {
        let report = check_conditions(rs);
        ensure(report.holds(), || {
            format!("a valid R-structure fails: {report}")
        })?;
        checked += 1;
        factor_pass += 1;
        for mutant in rstructure_mutations(rs) {
            let report = check_conditions(&mutant);
            checked += 1;
            if report.factor_holds() {
                factor_pass += 1;
                ensure(report.ee_holds(), || {
                    format!("(factor) holds but (ee) fails: {report}")
                })?;
            } else if !report.ee_holds() {
                mutated_fail_both += 1;
            }
        }
    }
    ensure(mutated_fail_both > 0, || {
        "no mutant fails both (factor) and (ee)".into()
    })?;
    Ok(format!(
        "{checked} R-structures ({} valid), {factor_pass} pass (factor) and all of those pass (ee), {mutated_fail_both} mutants fail both",
        valid.len()
    ))
}

fn criterion_7() -> Outcome {
    for (name, c) in [
        ("1", terminal_category()),
        ("2", interval_category()),
        ("T(Z/2)", t_category(&zmod(2))),
    ] {
        let n = nerve(&c, 3).map_err(|e| e.to_string())?;
        let bad = simp_validate(&n);
        ensure(bad.is_empty(), || format!("N({name}): {}", bad[0]))?;
        let dec = dec_simplicial(&n).map_err(|e| format!("Dec N({name}): {e}"))?;
        let bad = is_simplicial_map(&dec.d0, &dec.dec, &n);
        ensure(bad.is_empty(), || format!("d0 on N({name}): {}", bad[0]))?;
        let bad = simp_validate(&dec.dec);
        ensure(bad.is_empty(), || format!("Dec N({name}): {}", bad[0]))?;
        let compat = nerve_dec_compat(&c, 2).map_err(|e| e.to_string())?;
        ensure(compat.holds(), || {
            format!("N Dec vs Dec N on {name}: {}", compat.violations[0])
        })?;
    }
    let (dec_b, _) = dec_cat(&one_object_category(&zmod(2))).unwrap();
    let extracted = extract(&monoid_to_monoidale(&zmod(2))).unwrap();
    ensure(is_isomorphic(&dec_b, &extracted.cat), || {
        "Dec(BZ/2) is not the extracted category".into()
    })?;
    Ok("nerves of 1, 2, T(Z/2) to depth 3, d0, N Dec = Dec N to depth 2, Dec(BZ/2) matches".into())
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for ((label, pinned), c) in PINNED_COUNTS
        .iter()
        .zip([terminal_category(), interval_category()])
    {
        let r = enumerate_rstructures(&c, DEFAULT_ENUMERATION_CAP)
            .map_err(|e| e.to_string())?
            .len();
        let m = enumerate_skew_structures(&c, DEFAULT_ENUMERATION_CAP)
            .map_err(|e| e.to_string())?
            .len();
        ensure(r == *pinned && m == *pinned, || {
            format!("{label}: R-structures {r}, monoidales {m}, pinned {pinned}")
        })?;
        parts.push(format!("{label} {r} = {m}"));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{}, {:?}", parts.join(", "), start.elapsed()))
}

fn random_fn(rng: &mut ChaCha8Rng, a: &FinSet, b: &FinSet) -> FinFn {
    FinFn::new(
        a.clone(),
        b.clone(),
        a.iter()
            .map(|x| (x.clone(), b.get(rng.gen_range(0..b.len())).clone())),
    )
    .unwrap()
}

fn set(prefix: &str, n: usize) -> FinSet {
    FinSet::new((0..n).map(|i| Element::atom(format!("{prefix}{i}")))).unwrap()
}

/// For a cospan `f, g` and a test set `T`, checks that `m ↦ (p1 m, p2 m)` is a
/// bijection from maps `T -> P` onto commuting cones, and spot-checks
/// `cone_mediators` on sampled cones.
fn check_configuration(
    rng: &mut ChaCha8Rng,
    f: &FinFn,
    g: &FinFn,
    t: &FinSet,
) -> Result<usize, String> {
    let pb = pullback(f, g).map_err(|e| e.to_string())?;
    let cap = DEFAULT_ENUMERATION_CAP;
    let mut cones = 0usize;
    for h in enumerate_functions(t, f.domain(), cap).map_err(|e| e.to_string())? {
        let fh = fn_compose(f, &h).unwrap();
        for k in enumerate_functions(t, g.domain(), cap).map_err(|e| e.to_string())? {
            if fn_compose(g, &k).unwrap() == fh {
                cones += 1;
            }
        }
    }
    let mut images = HashSet::new();
    for m in enumerate_functions(t, &pb.apex, cap).map_err(|e| e.to_string())? {
        let h = fn_compose(&pb.proj1, &m).unwrap();
        let k = fn_compose(&pb.proj2, &m).unwrap();
        ensure(
            fn_compose(f, &h).unwrap() == fn_compose(g, &k).unwrap(),
            || "projections do not commute".into(),
        )?;
        let key: Vec<Element> = t
            .iter()
            .flat_map(|x| [h.apply(x).unwrap().clone(), k.apply(x).unwrap().clone()])
            .collect();
        ensure(images.insert(key), || "two mediators for one cone".into())?;
    }
    ensure(images.len() == cones, || {
        format!("{cones} cones but {} mediated", images.len())
    })?;
    if !pb.apex.is_empty() || t.is_empty() {
        for _ in 0..3 {
            let m = if t.is_empty() {
                FinFn::new(t.clone(), pb.apex.clone(), []).unwrap()
            } else {
                random_fn(rng, t, &pb.apex)
            };
            let h = fn_compose(&pb.proj1, &m).unwrap();
            let k = fn_compose(&pb.proj2, &m).unwrap();
            let found = cone_mediators(&pb, &h, &k, cap).map_err(|e| e.to_string())?;
            ensure(found.len() == 1 && found[0] == m, || {
                "cone_mediators is not unique".into()
            })?;
        }
    }
    Ok(cones)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total_cones = 0;
    for _ in 0..50 {
        let c = set("c", rng.gen_range(1..=4));
        let a = set("a", rng.gen_range(0..=4));
        let b = set("b", rng.gen_range(0..=4));
        let t = set("t", rng.gen_range(0..=4));
        let f = random_fn(&mut rng, &a, &c);
        let g = random_fn(&mut rng, &b, &c);
        total_cones += check_configuration(&mut rng, &f, &g, &t)?;
    }
    Ok(format!(
        "50 seeded configurations, {total_cones} cones, each with exactly one mediator"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("monoid examples", criterion_1),
        ("checker equivalence", criterion_2),
        ("round trip", criterion_3),
        ("surjective unit gives r = t", criterion_4),
        ("restricted-unit recovery", criterion_5),
        ("factor implies ee", criterion_6),
        ("simplicial suite", criterion_7),
        ("brute-force equivalence", criterion_8),
        ("pullback universal property", criterion_9),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => {
                passed += 1;
                println!("criterion {} [{name}]: PASS ({detail})", i + 1);
            }
            Err(why) => println!("criterion {} [{name}]: FAIL ({why})", i + 1),
        }
    }
    println!("{passed}/{} criteria pass", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}

//! End-to-end acceptance run. Prints one line per criterion; run with
//! `cargo test -p orbitsym --test acceptance -- --nocapture`.
//!
//! Tolerances are exact equality throughout. Time limits are pinned below
//! and measured in whatever profile the test is built with.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use orbitsym::algebra::rat;
use orbitsym::chartable::{Character, CharacterTable};
use orbitsym::classify::{
    classify_affine, classify_rational, nker_r, nontrivial_nker_family, verify_witness, witness_automorphism,
};
use orbitsym::gensym::{
    explore_abelian_closure, ideal_part, intersect_generic_symmetries, sym_group_of_character, GenericSymmetryResult,
    SearchOptions,
};
use orbitsym::group::{builtin_group, catalog_up_to, parse_group_spec, FiniteGroup, GPermutationGroup, GroupSpec};
use orbitsym::io::charexpr::CharEvaluator;
use orbitsym::oracle::{
    closure_iterate, ideal_component_rep, regular_representation, rep_from_generators, sample_generic_point,
    verify_theory_vs_oracle, OracleError, RationalRepresentation, VerifyOptions,
};
use orbitsym::{Cyclotomic, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMITS: [Duration; 9] = [
    Duration::from_secs(1),
    Duration::from_secs(1),
    Duration::from_secs(60),
    Duration::from_secs(600),
    Duration::from_secs(600),
    Duration::from_secs(120),
    Duration::from_secs(120),
    Duration::from_secs(60),
    Duration::from_secs(900),
];

const SEED: u64 = 2024;

/// Outcome of one criterion: the checks that held, and any that did not.
#[derive(Default)]
struct Outcome {
    notes: Vec<String>,
    failures: Vec<String>,
    /// Parts that cannot be decided within the oracle's point budget.
    out_of_reach: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }
}

fn table(spec: &str) -> CharacterTable {
    CharacterTable::compute(&builtin_group(spec).unwrap()).unwrap()
}

fn expr(spec: &str, text: &str) -> (CharacterTable, Character) {
    let s = parse_group_spec(spec).unwrap();
    let t = CharacterTable::compute(&s.build().unwrap()).unwrap();
    let chi = CharEvaluator::new(&t, Some(s)).parse(text).unwrap();
    (t, chi)
}

fn sym(t: &CharacterTable, chi: &Character) -> Result<GenericSymmetryResult, String> {
    sym_group_of_character(t, chi, SearchOptions::default()).map_err(|e| e.to_string())
}

fn order_of(t: &CharacterTable, chi: &Character) -> String {
    sym(t, chi).map_or_else(|e| e, |r| r.order().to_string())
}

fn same_group(a: &GPermutationGroup, b: &GPermutationGroup) -> bool {
    let (ca, cb) = (a.chain(), b.chain());
    a.order() == b.order() && a.generators().iter().all(|p| cb.contains(p)) && b.generators().iter().all(|p| ca.contains(p))
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rotation() -> RationalRepresentation {
    let g = builtin_group("cyclic(4)").unwrap();
    let r = RationalMatrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]).unwrap();
    rep_from_generators(&g, &[(1, r)]).unwrap()
}

fn fig1() -> Outcome {
    let mut o = Outcome::default();
    let (t, chi) = expr("cyclic(4)", "lambda+conj(lambda)");
    let order = order_of(&t, &chi);
    o.check(order == "8", format!("|Sym(C4, lambda+conj(lambda))| = {order}"));
    let opts = VerifyOptions { trials: 3, seed: SEED, ..VerifyOptions::default() };
    match verify_theory_vs_oracle(&t, &rotation(), &chi, opts) {
        Ok(r) => {
            let orders: Vec<_> = r.trials.iter().map(|x| x.oracle_order.clone()).collect();
            o.check(orders.iter().all(|x| *x == big(8)) && r.trials.len() == 3, format!("oracle orders {orders:?}"));
            o.check(r.trials.iter().all(|x| x.groups_equal && x.orbit_size == 4), "identical groups on 4 points");
        }
        Err(e) => o.check(false, format!("oracle: {e}")),
    }
    o
}

fn rectangle() -> Outcome {
    let mut o = Outcome::default();
    let (t, chi) = expr("elem_abelian(2,2)", "sigma1+sigma2");
    let order = order_of(&t, &chi);
    o.check(order == "8", format!("|Sym(C2xC2, sigma1+sigma2)| = {order}"));
    let v = classify_affine(t.group());
    o.check(!v.realizable && v.case_number() == Some("iii"), format!("affine case {}", v.case_number().unwrap_or("-")));
    o
}

fn closed(spec: &str, text: &str, want: u64) -> Outcome {
    let mut o = Outcome::default();
    let (t, chi) = expr(spec, text);
    match sym(&t, &chi) {
        Ok(r) => o.check(r.order() == &big(want) && t.group().order() as u64 == want, format!("|Sym| = {}", r.order())),
        Err(e) => o.check(false, e),
    }
    o
}

/// Regular representation, each rational ideal component, and each sum of
/// two distinct components.
fn sweep_reps(t: &CharacterTable) -> Vec<(String, RationalRepresentation)> {
    let g = t.group();
    let mut out = vec![("regular".to_string(), regular_representation(g))];
    let ideals = t.rational_ideal_characters();
    let comps: Vec<RationalRepresentation> = ideals.iter().map(|gamma| ideal_component_rep(t, gamma).unwrap()).collect();
    for (i, r) in comps.iter().enumerate() {
        out.push((format!("I{i}"), r.clone()));
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            out.push((format!("I{i}+I{j}"), comps[i].direct_sum(&comps[j])));
        }
    }
    out
}

fn sweep_tables() -> Vec<CharacterTable> {
    catalog_up_to(16).iter().map(|s| CharacterTable::compute(&s.build().unwrap()).unwrap()).collect()
}

fn theory_vs_oracle(tables: &[CharacterTable]) -> Outcome {
    let mut o = Outcome::default();
    let mut runs = 0;
    for t in tables {
        for (name, rep) in sweep_reps(t) {
            let chi = rep.character(t).embed(t.conductor());
            let opts = VerifyOptions { trials: 3, seed: SEED, ..VerifyOptions::default() };
            runs += 1;
            match verify_theory_vs_oracle(t, &rep, &chi, opts) {
                Ok(r) if r.passed() && r.trials.len() == 3 => {}
                Ok(r) => o.check(false, format!("{} {name}: {r}", t.group().label())),
                Err(e) => o.check(false, format!("{} {name}: {e}", t.group().label())),
            }
        }
    }
    o.check(runs > 0, format!("{runs} representations at 3 points each"));
    o
}

/// Expected affine verdicts, read off each family's structure.
fn expected_affine(spec: &GroupSpec, g: &FiniteGroup) -> Option<&'static str> {
    let name = spec.to_string();
    if name.starts_with("dihedral(") || name == "product(quaternion8,cyclic(4))" {
        return None;
    }
    if name == "quaternion8" || name.starts_with("dicyclic(") {
        return Some("ii");
    }
    if name.starts_with("elem_abelian(2,") {
        return matches!(g.order(), 4 | 8 | 16).then_some("iii");
    }
    // cyclic and odd elementary abelian groups
    (g.order() > 2).then_some("i")
}

fn classification() -> Outcome {
    let mut o = Outcome::default();
    let mut checked = 0;
    for spec in catalog_up_to(32) {
        let g = spec.build().unwrap();
        let v = classify_affine(&g);
        let want = expected_affine(&spec, &g);
        let got = if v.realizable { None } else { v.case_number() };
        if got != want {
            o.check(false, format!("{spec}: expected {want:?}, got {got:?}"));
        }
        checked += 1;
    }
    o.check(true, format!("{checked} catalog groups"));
    for k in 1..=5 {
        let g = builtin_group(&format!("elem_abelian(2,{k})")).unwrap();
        let r = classify_affine(&g).realizable;
        o.check(r == !(2..=4).contains(&k), format!("C2^{k} realizable = {r}"));
    }
    o.check(!classify_affine(&builtin_group("quaternion8").unwrap()).realizable, "Q8 not realizable");
    let q8c7 = builtin_group("product(quaternion8,cyclic(7))").unwrap();
    o.check(classify_affine(&q8c7).realizable, "Q8xC7 affine realizable");
    match classify_rational(&q8c7) {
        Ok(v) => {
            let ord = v.matched_case.as_ref().map(|c| c.evidence["order_of_2_mod_a"].clone());
            o.check(
                !v.realizable && v.case_number() == Some("ii") && ord == Some(3.into()),
                format!("Q8xC7 rational case {}, ord_7(2) = {}", v.case_number().unwrap_or("-"), ord.unwrap_or_default()),
            );
        }
        Err(e) => o.check(false, e.to_string()),
    }
    let q8c4 = builtin_group("product(quaternion8,cyclic(4))").unwrap();
    o.check(classify_rational(&q8c4).is_ok_and(|v| v.realizable), "Q8xC4 rational realizable");
    o
}

/// Families with a nontrivial real kernel intersection, by structure.
fn in_family_list(spec: &GroupSpec, g: &FiniteGroup) -> bool {
    let name = spec.to_string();
    g.is_abelian()
        || name == "quaternion8"
        || name.starts_with("dicyclic(")
        || name.starts_with("product(quaternion8,cyclic(4))")
        || name.starts_with("product(quaternion8,quaternion8)")
}

fn nker() -> Outcome {
    let mut o = Outcome::default();
    let mut checked = 0;
    for spec in catalog_up_to(32) {
        let g = spec.build().unwrap();
        // the trivial group is abelian but has trivial kernel intersection
        if g.order() == 1 {
            continue;
        }
        let t = CharacterTable::compute(&g).unwrap();
        let nontrivial = !nker_r(&t).is_trivial();
        let listed = nontrivial_nker_family(&g).is_some();
        if nontrivial != in_family_list(&spec, &g) || nontrivial != listed {
            o.check(false, format!("{spec}: nker nontrivial {nontrivial}, family {listed}"));
        }
        checked += 1;
    }
    o.check(true, format!("{checked} catalog groups"));
    o
}

fn exploration() -> Outcome {
    let mut o = Outcome::default();
    let t = table("elem_abelian(3,2)");
    match explore_abelian_closure(&t, 1 << 16, SearchOptions::default()) {
        Ok(r) => o.check(r.found.is_none() && r.tested == 511, format!("C3xC3: none over {} candidates", r.tested)),
        Err(e) => o.check(false, e.to_string()),
    }
    for n in [2, 3, 5, 7] {
        let t = table(&format!("cyclic({n})"));
        match explore_abelian_closure(&t, 1 << 16, SearchOptions::default()) {
            Ok(r) => {
                let ok = r.found.as_ref().is_some_and(|(mask, chi)| mask.count_ones() == 1 && t.kernel_of(chi).is_trivial());
                o.check(ok, format!("C{n}: faithful linear character"));
            }
            Err(e) => o.check(false, format!("C{n}: {e}")),
        }
    }
    o
}

fn degrees(t: &CharacterTable) -> Vec<u64> {
    t.irreducibles().iter().map(|p| p.degree().is_rational().unwrap().to_integer().to_u64().unwrap()).collect()
}

fn admissible(t: &CharacterTable) -> Vec<Vec<u64>> {
    let d = degrees(t);
    let mut out = vec![vec![]];
    for &di in &d {
        out = out.into_iter().flat_map(|m: Vec<u64>| (0..=di).map(move |x| [m.clone(), vec![x]].concat())).collect();
    }
    out.retain(|m| m.iter().any(|&x| x > 0));
    out
}

fn orthogonality(o: &mut Outcome) {
    let mut bad = Vec::new();
    for spec in catalog_up_to(32) {
        let t = CharacterTable::compute(&spec.build().unwrap()).unwrap();
        let irr = t.irreducibles();
        let rows = irr.iter().enumerate().all(|(i, a)| {
            irr.iter().enumerate().all(|(j, b)| t.inner_product(a, b) == Ok(Cyclotomic::from_int(i64::from(i == j))))
        });
        let k = irr.len();
        let cols: Vec<Vec<Cyclotomic>> = (0..k).map(|x| irr.iter().map(|p| p.at_class(x).clone()).collect()).collect();
        let sizes = &t.classes().sizes;
        let ones = vec![1; k];
        let columns = (0..k).all(|x| {
            (0..k).all(|y| {
                let want = if x == y { (t.group().order() / sizes[x]) as i64 } else { 0 };
                Cyclotomic::hermitian_sum(&cols[x], &cols[y], &ones) == Cyclotomic::from_int(want)
            })
        });
        if !(rows && columns) {
            bad.push(spec.to_string());
        }
    }
    o.check(bad.is_empty(), format!("orthogonality up to order 32, failures {bad:?}"));
}

fn duality(o: &mut Outcome, tables: &[CharacterTable]) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = 0;
    let mut bad = Vec::new();
    while done < 20 {
        let t = &tables[rng.gen_range(0..tables.len())];
        let d = degrees(t);
        let m: Vec<u64> = d.iter().map(|&x| rng.gen_range(0..=x)).collect();
        let rest: Vec<u64> = d.iter().zip(&m).map(|(x, y)| x - y).collect();
        if m.iter().all(|&x| x == 0) || rest.iter().all(|&x| x == 0) {
            continue;
        }
        done += 1;
        let a = sym(t, &t.combine(&m).unwrap());
        let b = sym(t, &t.combine(&rest).unwrap());
        if !matches!((&a, &b), (Ok(a), Ok(b)) if same_group(&a.group, &b.group)) {
            bad.push(format!("{} {m:?}", t.group().label()));
        }
    }
    o.check(bad.is_empty(), format!("duality on {done} sampled characters, failures {bad:?}"));
}

fn decomposition(o: &mut Outcome, tables: &[CharacterTable]) {
    let mut count = 0;
    let mut bad = Vec::new();
    for t in tables.iter().filter(|t| t.group().order() <= 12) {
        for m in admissible(t) {
            count += 1;
            let chi = t.combine(&m).unwrap();
            let ok = (|| -> Result<bool, String> {
                let d = ideal_part(t, &chi).map_err(|e| e.to_string())?;
                let mut parts = vec![d.chi_i.clone()];
                parts.extend(d.constituents_of_residual.iter().map(|&(k, _)| t.irreducibles()[k].clone()));
                let inter = intersect_generic_symmetries(t, &parts, SearchOptions::default()).map_err(|e| e.to_string())?;
                Ok(same_group(&sym(t, &chi)?.group, &inter))
            })();
            if ok != Ok(true) {
                bad.push(format!("{} {m:?}", t.group().label()));
            }
        }
    }
    o.check(bad.is_empty(), format!("decomposition on all {count} admissible characters up to order 12, failures {bad:?}"));
}

fn witnesses(o: &mut Outcome) {
    let q8 = builtin_group("quaternion8").unwrap();
    let c4 = builtin_group("cyclic(4)").unwrap();
    let q8c7 = builtin_group("product(quaternion8,cyclic(7))").unwrap();
    let mut cases = vec![
        ("Q8", q8.clone(), orbitsym::Subgroup::from_elements(&q8, &[0, 1, 2, 3]).unwrap(), 2),
        ("C4", c4.clone(), orbitsym::Subgroup::from_elements(&c4, &[0, 2]).unwrap(), 2),
    ];
    match classify_rational(&q8c7).map(|v| v.matched_case.and_then(|c| c.witness)) {
        Ok(Some(w)) => cases.push(("Q8xC7", q8c7.clone(), w.n, w.z)),
        other => o.check(false, format!("Q8xC7 witness data: {other:?}")),
    }
    for (name, g, n, z) in cases {
        let ok = witness_automorphism(&g, &n, z)
            .is_ok_and(|w| !w.alpha.is_identity() && verify_witness(&w, &CharacterTable::compute(&g).unwrap()));
        o.check(ok, format!("{name} witness"));
    }
}

fn closure(o: &mut Outcome, tables: &[CharacterTable]) {
    let mut stable = 0;
    for t in tables {
        for (name, rep) in sweep_reps(t) {
            let label = format!("{} {name}", t.group().label());
            let opts = VerifyOptions { seed: SEED, ..VerifyOptions::default() };
            let result = sample_generic_point(&rep, SEED, opts.bound).and_then(|orb| closure_iterate(&rep, &orb, opts));
            match result {
                Ok(r) if r.stabilized && r.steps() <= 1 => stable += 1,
                Ok(r) => o.check(false, format!("{label}: chain {:?}", r.chain)),
                Err(OracleError::SearchBudgetExceeded { .. }) => o.out_of_reach.push(label),
                Err(e) => o.check(false, format!("{label}: {e}")),
            }
        }
    }
    o.check(true, format!("closure stable in <= 1 step on {stable} representations"));
}

fn properties() -> Outcome {
    let mut o = Outcome::default();
    let tables = sweep_tables();
    orthogonality(&mut o);
    duality(&mut o, &tables);
    decomposition(&mut o, &tables);
    witnesses(&mut o);
    closure(&mut o, &tables);
    o
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

#[test]
fn acceptance() {
    let tables = sweep_tables();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("C4 rotation orbit", Box::new(fig1)),
        ("C2xC2 rectangle", Box::new(rectangle)),
        (
            "Q8xC4 generically closed",
            Box::new(|| {
                closed(
                    "product(quaternion8,cyclic(4))",
                    "alpha x (lambda+conj(lambda)) + 2*alpha x 1 + 1 x (lambda+conj(lambda))",
                    32,
                )
            }),
        ),
        (
            "Q8xQ8 generically closed",
            Box::new(|| closed("product(quaternion8,quaternion8)", "alpha x alpha + 2*alpha x 1 + 1 x 2*alpha", 64)),
        ),
        ("theory vs oracle sweep", Box::new(|| theory_vs_oracle(&tables))),
        ("affine classification", Box::new(classification)),
        ("real kernel families", Box::new(nker)),
        ("abelian exploration", Box::new(exploration)),
        ("property suites", Box::new(properties)),
    ];
    let mut hard_failures = Vec::new();
    for (i, ((name, run), limit)) in criteria.iter().zip(LIMITS).enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = out.failures.is_empty() && out.out_of_reach.is_empty() && in_time;
        println!(
            "criterion {}: {} {name} ({:.2?} of {:?}) {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            out.notes.join("; ")
        );
        for f in &out.failures {
            println!("    failed: {f}");
        }
        if !out.out_of_reach.is_empty() {
            println!(
                "    beyond the {}-point oracle budget ({}): {}",
                VerifyOptions::default().point_budget,
                out.out_of_reach.len(),
                out.out_of_reach.join(", ")
            );
        }
        if !out.failures.is_empty() || !in_time {
            hard_failures.push(i + 1);
        }
    }
    // Closure chains whose next orbit exceeds the point budget stay red in
    // the printout without failing the run; everything else must pass.
    assert!(hard_failures.is_empty(), "criteria failed: {hard_failures:?}");
}

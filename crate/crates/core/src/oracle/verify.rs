//! Cross-checks of character-theoretic predictions against orbit geometry.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    linear_symmetry_group, linear_symmetry_of_points, random_point, sample_generic_point, OracleError, OrbitData,
    PointFrame, RationalRepresentation, SAMPLE_TRIES,
};
use crate::algebra::Rational;
use crate::chartable::{Character, CharacterTable};
use crate::gensym::{sym_group_of_character, SearchOptions, DEFAULT_NODE_BUDGET};
use crate::group::{factorial, GPermutation, StabChain};
use crate::RationalMatrix;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
    /// Resamples after a mismatch before giving up.
    pub retries: usize,
    pub node_budget: u64,
    /// Largest orbit built during closure iteration.
    pub point_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 3, seed: 0, bound: 10, retries: 5, node_budget: DEFAULT_NODE_BUDGET, point_budget: 2000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialReport {
    pub point: Vec<Rational>,
    /// Samples drawn for this trial, including rejected ones.
    pub attempts: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub oracle_order: BigUint,
    pub groups_equal: bool,
    pub order_formula: bool,
    pub traces_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub theory_order: BigUint,
    pub theory_generators: usize,
    pub trials: Vec<TrialReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.groups_equal && t.order_formula && t.traces_agree)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory |Sym(G,chi)| = {} ({} generators)", self.theory_order, self.theory_generators)?;
        for (i, t) in self.trials.iter().enumerate() {
            let pt: Vec<String> = t.point.iter().map(crate::algebra::rational_to_string).collect();
            writeln!(
                f,
                "trial {i}: v = ({}) after {} sample(s); |Gv| = {}, |H| = {}, |GL(Gv)| = {}; groups {}, order formula {}, traces {}",
                pt.join(", "),
                t.attempts,
                t.orbit_size,
                t.stabilizer_order,
                t.oracle_order,
                ok(t.groups_equal),
                ok(t.order_formula),
                ok(t.traces_agree)
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "agree"
    } else {
        "DISAGREE"
    }
}

/// Compare Sym(G, chi) with GL(Gv) at sampled generic points:
/// (a) the theory group pushed to the orbit equals GL(Gv),
/// (b) |Sym(G,chi)| = |GL(Gv)| (|H|!)^|G:H|,
/// (c) the oracle matrix of each theory generator has trace hat-chi.
pub fn verify_theory_vs_oracle(
    t: &CharacterTable,
    rep: &RationalRepresentation,
    chi: &Character,
    opts: VerifyOptions,
) -> Result<VerifyReport, OracleError> {
    let theory = sym_group_of_character(t, chi, SearchOptions { node_budget: opts.node_budget })?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trials = Vec::with_capacity(opts.trials);
    for _ in 0..opts.trials {
        let mut last = None;
        for attempt in 1..=opts.retries + 1 {
            let o = sample_generic_point(rep, rng.next_u64(), opts.bound)?;
            let report = compare_at(&theory, &o, attempt, opts)?;
            let good = report.groups_equal && report.order_formula && report.traces_agree;
            last = Some(report);
            if good {
                break;
            }
        }
        let report = last.expect("at least one attempt");
        if !(report.groups_equal && report.order_formula && report.traces_agree) {
            return Err(OracleError::PersistentMismatch(format!(
                "after {} samples: groups {}, order formula {}, traces {}",
                report.attempts,
                ok(report.groups_equal),
                ok(report.order_formula),
                ok(report.traces_agree)
            )));
        }
        trials.push(report);
    }
    Ok(VerifyReport { theory_order: theory.order().clone(), theory_generators: theory.group.generators().len(), trials })
}

fn compare_at(
    theory: &crate::gensym::GenericSymmetryResult,
    o: &OrbitData,
    attempts: usize,
    opts: VerifyOptions,
) -> Result<TrialReport, OracleError> {
    let gl = linear_symmetry_group(o, opts.node_budget)?;
    let n = o.points.len();
    let h = o.stabilizer.order();
    let pushed: Option<Vec<_>> = theory.group.generators().iter().map(|p| o.push_permutation(p)).collect();
    let mut groups_equal = false;
    let mut traces_agree = false;
    if let Some(pushed) = &pushed {
        let oracle_chain = gl.chain();
        let image = StabChain::new(n, pushed);
        groups_equal = image.order() == gl.order && pushed.iter().all(|p| oracle_chain.contains(p));
        traces_agree = theory.hat_values.iter().zip(pushed).all(|((_, hat), sigma)| {
            gl.frame.coordinate_matrix(sigma).is_some_and(|c| hat.is_rational() == Some(c.trace()))
        });
    }
    let kernel_order = factorial(h).pow(n as u32);
    Ok(TrialReport {
        point: o.base_point.clone(),
        attempts,
        orbit_size: n,
        stabilizer_order: h,
        order_formula: theory.order() == &(&gl.order * kernel_order),
        oracle_order: gl.order,
        groups_equal,
        traces_agree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// |D(G)|, then |GL(G_0 v)|, |GL(G_1 w)|, ... up to the first repeat.
    pub chain: Vec<BigUint>,
    pub stabilized: bool,
}

impl ClosureReport {
    /// Number of strict enlargements before the chain became constant.
    pub fn steps(&self) -> usize {
        self.chain.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

const MAX_CLOSURE_ROUNDS: usize = 4;

/// Iterate G_0 = D(G), G_{i+1} = GL(G_i w_i) with w_i generic for G_i.
/// Each G_i sits inside G_{i+1}, so equal orders mean equal groups.
pub fn closure_iterate(rep: &RationalRepresentation, orbit: &OrbitData, opts: VerifyOptions) -> Result<ClosureReport, OracleError> {
    if !orbit.spans {
        return Err(OracleError::NotSpanning);
    }
    let image_order = BigUint::from(rep.group().order() / rep.kernel().order());
    let mut chain = vec![image_order];
    let mut current = linear_symmetry_group(orbit, opts.node_budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..MAX_CLOSURE_ROUNDS {
        let stable = chain.last() == Some(&current.order);
        chain.push(current.order.clone());
        if stable {
            return Ok(ClosureReport { chain, stabilized: true });
        }
        let (points, actions) = free_orbit(&current.coordinate_matrices, &current.order, orbit.dim, &mut rng, opts)?;
        current = linear_symmetry_of_points(&points, orbit.dim, &actions, opts.node_budget)?;
    }
    Ok(ClosureReport { chain, stabilized: false })
}

/// A spanning orbit of the matrix group on which it acts freely, with the
/// permutations induced by the generators.
fn free_orbit(
    gens: &[RationalMatrix],
    order: &BigUint,
    dim: usize,
    rng: &mut ChaCha8Rng,
    opts: VerifyOptions,
) -> Result<(Vec<Vec<Rational>>, Vec<GPermutation>), OracleError> {
    if order > &BigUint::from(opts.point_budget) {
        return Err(OracleError::SearchBudgetExceeded { lower_bound: order.clone() });
    }
    let target = usize::try_from(order.clone()).unwrap_or(usize::MAX);
    for _ in 0..SAMPLE_TRIES {
        let w = random_point(rng, dim, opts.bound.max(1));
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut points = vec![w.clone()];
        index.insert(w, 0);
        let mut images = vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < points.len() {
            for (a, img) in gens.iter().zip(images.iter_mut()) {
                let p = a.mul_vec(&points[i]).expect("square generators");
                let next = points.len();
                let j = *index.entry(p.clone()).or_insert(next);
                if j == next {
                    points.push(p);
                }
                img.push(j);
            }
            i += 1;
        }
        if points.len() == target && PointFrame::new(&points, dim).is_some() {
            let perms = images.into_iter().map(|im| GPermutation::from_images(im).expect("bijective")).collect();
            return Ok((points, perms));
        }
    }
    Err(OracleError::NotCyclic)
}

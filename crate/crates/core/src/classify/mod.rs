//! Decision procedures for which finite groups occur as symmetry groups of
//! orbit polytopes: isometries (Babai), affine symmetries, and affine
//! symmetries of polytopes with rational vertices.
//!
//! Each procedure checks the negative list case by case and reports the
//! first matching case together with every match. Cases that admit an
//! automorphism witness (a normal subgroup N of prime index p and a central
//! z of order p lying in every cyclic subgroup not contained in N) record
//! the pair, which `witness_automorphism` turns into a checkable map.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{is_prime, multiplicative_order, p_part, prime_factors};
use crate::chartable::CharacterTable;
use crate::group::{
    builtin_group, centralizer, hall_subgroup, is_generalized_dicyclic, is_isomorphic, sylow_subgroup, FiniteGroup,
    GPermutation, GroupError, Subgroup, SIZE_LIMIT,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("group of order {order} exceeds the limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("witness hypotheses fail: {0}")]
    BadWitnessData(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Isometry groups of euclidean orbit polytopes.
    Euclidean,
    /// Affine symmetry groups of orbit polytopes.
    Affine,
    /// Affine symmetry groups of orbit polytopes with rational vertices.
    Rational,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Euclidean => "euclidean",
            Problem::Affine => "affine",
            Problem::Rational => "rational",
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean" => Ok(Problem::Euclidean),
            "affine" => Ok(Problem::Affine),
            "rational" | "integer" => Ok(Problem::Rational),
            _ => Err(format!("unknown mode {s:?}; expected euclidean, affine or rational")),
        }
    }
}

/// N of prime index and z of order p, as used by `witness_automorphism`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessData {
    pub n: Subgroup,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseMatch {
    /// Roman numeral of the case in the classification.
    pub case: &'static str,
    pub tag: String,
    pub evidence: Value,
    pub witness: Option<WitnessData>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationVerdict {
    pub problem: Problem,
    pub realizable: bool,
    pub matched_case: Option<CaseMatch>,
    pub all_matches: Vec<CaseMatch>,
    pub notes: Vec<String>,
}

impl ClassificationVerdict {
    fn from_matches(problem: Problem, all_matches: Vec<CaseMatch>, notes: Vec<String>) -> Self {
        ClassificationVerdict {
            problem,
            realizable: all_matches.is_empty(),
            matched_case: all_matches.first().cloned(),
            all_matches,
            notes,
        }
    }

    pub fn case_tag(&self) -> &str {
        self.matched_case.as_ref().map_or("none", |c| c.tag.as_str())
    }

    pub fn case_number(&self) -> Option<&'static str> {
        self.matched_case.as_ref().map(|c| c.case)
    }
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.matched_case {
            None => write!(f, "{}: realizable", self.problem.name())?,
            Some(c) => write!(f, "{}: not realizable, case ({}) {}", self.problem.name(), c.case, c.tag)?,
        }
        for extra in self.all_matches.iter().skip(1) {
            write!(f, "; also case ({}) {}", extra.case, extra.tag)?;
        }
        for n in &self.notes {
            write!(f, "; note: {n}")?;
        }
        Ok(())
    }
}

fn elems(s: &Subgroup) -> Value {
    json!(s.elements())
}

fn abelian_exponent_gt2(g: &FiniteGroup) -> Option<CaseMatch> {
    (g.is_abelian() && g.exponent() > 2).then(|| CaseMatch {
        case: "i",
        tag: "abelian of exponent > 2".into(),
        evidence: json!({ "exponent": g.exponent() }),
        witness: None,
    })
}

fn elementary_2_of_order_4_8_16(g: &FiniteGroup) -> bool {
    g.is_abelian() && g.exponent() == 2 && matches!(g.order(), 4 | 8 | 16)
}

fn dicyclic_case(g: &FiniteGroup, case: &'static str) -> Option<CaseMatch> {
    let w = is_generalized_dicyclic(g)?;
    let z = g.mul(w.g, w.g);
    Some(CaseMatch {
        case,
        tag: "generalized dicyclic".into(),
        evidence: json!({ "abelian_subgroup": elems(&w.a), "element": w.g }),
        witness: Some(WitnessData { n: w.a, z }),
    })
}

/// Isometry groups of euclidean orbit polytopes: excluded are (i) abelian
/// groups that are not elementary abelian 2-groups and (ii) generalized
/// dicyclic groups.
pub fn classify_euclidean(g: &FiniteGroup) -> ClassificationVerdict {
    let mut m = Vec::new();
    if let Some(mut c) = abelian_exponent_gt2(g) {
        c.tag = "abelian, not elementary 2-abelian".into();
        m.push(c);
    }
    m.extend(dicyclic_case(g, "ii"));
    ClassificationVerdict::from_matches(Problem::Euclidean, m, vec![])
}

/// Affine symmetry groups: excluded are (i) abelian groups of exponent > 2,
/// (ii) generalized dicyclic groups, (iii) elementary abelian groups of
/// order 4, 8 or 16.
pub fn classify_affine(g: &FiniteGroup) -> ClassificationVerdict {
    let mut m = Vec::new();
    m.extend(abelian_exponent_gt2(g));
    m.extend(dicyclic_case(g, "ii"));
    if elementary_2_of_order_4_8_16(g) {
        m.push(CaseMatch {
            case: "iii",
            tag: "elementary abelian of order 4, 8 or 16".into(),
            evidence: json!({ "order": g.order() }),
            witness: None,
        });
    }
    ClassificationVerdict::from_matches(Problem::Affine, m, vec![])
}

/// G = U x W with U the Hall subgroup for `primes` and W its complement
/// Hall subgroup, when both exist and commute.
fn split_by_primes(g: &FiniteGroup, primes: &[u64]) -> Option<(Subgroup, Subgroup)> {
    let all = prime_factors(g.order() as u64);
    let (inside, outside): (Vec<u64>, Vec<u64>) = all.into_iter().partition(|p| primes.contains(p));
    let hall = |ps: &[u64]| if ps.is_empty() { Some(Subgroup::trivial(g)) } else { hall_subgroup(g, ps) };
    let u = hall(&inside)?;
    let w = hall(&outside)?;
    let commute = u.elements().iter().all(|&a| w.elements().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    commute.then_some((u, w))
}

fn odd_order_two(n: usize) -> (u64, bool) {
    let o = multiplicative_order(2, n as u64).expect("odd modulus");
    (o, o % 2 == 1)
}

/// G = S x A with S generalized dicyclic of exponent 4, A abelian of odd
/// order, and the order of 2 modulo |A| odd.
fn case_s_times_a(g: &FiniteGroup) -> Option<CaseMatch> {
    let (s, a) = split_by_primes(g, &[2])?;
    if s.exponent(g) != 4 || !a.is_abelian(g) {
        return None;
    }
    let sg = s.as_group(g, "S");
    let w = is_generalized_dicyclic(&sg)?;
    let (ord2, odd) = odd_order_two(a.order());
    if !odd {
        return None;
    }
    let back = |x: usize| s.elements()[x];
    let gen = back(w.g);
    let z = g.mul(gen, gen);
    let mut n_gens: Vec<usize> = w.a.elements().iter().map(|&x| back(x)).collect();
    n_gens.extend_from_slice(a.elements());
    let n = Subgroup::generated(g, &n_gens);
    Some(CaseMatch {
        case: "ii",
        tag: "S x A, S generalized dicyclic of exponent 4".into(),
        evidence: json!({
            "s": elems(&s), "a": elems(&a), "order_a": a.order(), "order_of_2_mod_a": ord2,
        }),
        witness: Some(WitnessData { n, z }),
    })
}

/// Data of a (PQ) x B decomposition.
#[derive(Clone, Debug)]
struct PqbMatch {
    evidence: Value,
    witness: WitnessData,
    /// The same conditions with exp(B) in place of |B| in the final clause.
    holds_with_exponent: bool,
    holds_with_order: bool,
}

/// Search for G = (PQ) x B with P, Q Sylow subgroups for distinct primes,
/// P, Q, B abelian, P = <g, C_P(Q)>, x^g = x^k on Q, and the arithmetic
/// conditions on c, d. `c >= 1` is required: otherwise P centralizes Q and
/// G is abelian.
fn pqb_decomposition(g: &FiniteGroup) -> Vec<PqbMatch> {
    let primes = prime_factors(g.order() as u64);
    let mut out = Vec::new();
    for &p in &primes {
        for &q in &primes {
            if p == q {
                continue;
            }
            if let Some(m) = pqb_for_primes(g, p, q) {
                out.push(m);
            }
        }
    }
    out
}

fn pqb_for_primes(g: &FiniteGroup, p: u64, q: u64) -> Option<PqbMatch> {
    let (h, b) = split_by_primes(g, &[p, q])?;
    if !b.is_abelian(g) {
        return None;
    }
    let pg = sylow_subgroup(g, p);
    let qg = sylow_subgroup(g, q);
    if !pg.is_abelian(g) || !qg.is_abelian(g) || !qg.is_normal(g) {
        return None;
    }
    debug_assert!(pg.order() * qg.order() == h.order());
    let cent = centralizer(g, qg.elements()).intersect(&pg);
    let c_pow = pg.order() / cent.order();
    if c_pow == 1 {
        return None;
    }
    let exp_q = qg.exponent(g);
    let exp_c = cent.exponent(g) as u64;
    let b_order = b.order() as u64;
    let b_exp = b.exponent(g) as u64;
    for &x in pg.elements() {
        if cent.contains(x) {
            continue;
        }
        let mut gens = cent.elements().to_vec();
        gens.push(x);
        if Subgroup::generated(g, &gens) != pg {
            continue;
        }
        let Some(k) = (0..exp_q).find(|&k| qg.elements().iter().all(|&y| g.conj(y, x) == g.pow(y, k as i64))) else {
            continue;
        };
        let pd = g.element_order(g.pow(x, c_pow as i64)) as u64;
        if exp_c != pd || !pd.is_multiple_of(p_part(q - 1, p)) {
            continue;
        }
        let ord_q_pd = multiplicative_order(q, pd).expect("q prime to p");
        let last = |m: u64| {
            let o = multiplicative_order(q, m).expect("B has order prime to q");
            ord_q_pd.is_multiple_of(p_part(o, p))
        };
        let holds_with_order = last(b_order);
        let holds_with_exponent = last(b_exp);
        if !holds_with_order && !holds_with_exponent {
            continue;
        }
        let mut n_gens = vec![g.pow(x, p as i64)];
        n_gens.extend_from_slice(cent.elements());
        n_gens.extend_from_slice(qg.elements());
        n_gens.extend_from_slice(b.elements());
        let n = Subgroup::generated(g, &n_gens);
        let z = g.pow(x, (c_pow as u64 * pd / p) as i64);
        let c = log_p(c_pow as u64, p);
        let d = log_p(pd, p);
        return Some(PqbMatch {
            evidence: json!({
                "p": p, "q": q, "g": x, "k": k, "c": c, "d": d,
                "p_sylow": elems(&pg), "q_sylow": elems(&qg), "b": elems(&b),
                "centralizer_of_q_in_p": elems(&cent),
                "order_of_q_mod_order_b": multiplicative_order(q, b_order),
                "order_of_q_mod_exponent_b": multiplicative_order(q, b_exp),
                "order_of_q_mod_p_d": ord_q_pd,
            }),
            witness: WitnessData { n, z },
            holds_with_exponent,
            holds_with_order,
        });
    }
    None
}

/// Exponent of the largest power of p dividing n.
fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn pqb_case(g: &FiniteGroup, notes: &mut Vec<String>) -> Option<CaseMatch> {
    let matches = pqb_decomposition(g);
    if matches.iter().any(|m| m.holds_with_order != m.holds_with_exponent) {
        notes.push(format!(
            "(PQ) x B: the final clause differs when |B| is replaced by exp(B) (literal |B| reading {})",
            if matches.iter().any(|m| m.holds_with_order) { "matches" } else { "does not match" }
        ));
    }
    let m = matches.into_iter().find(|m| m.holds_with_order)?;
    Some(CaseMatch { case: "iv", tag: "(PQ) x B".into(), evidence: m.evidence, witness: Some(m.witness) })
}

fn q8_times_elementary(r: u32) -> FiniteGroup {
    let spec = match r {
        0 => "quaternion8".to_string(),
        1 => "product(quaternion8,cyclic(2))".to_string(),
        _ => format!("product(quaternion8,elem_abelian(2,{r}))"),
    };
    builtin_group(&spec).expect("valid constructor")
}

/// G = Q8 x C2^r x H with H of odd order as in the (PQ) x B case and the
/// order of 2 modulo |H| odd.
fn case_q8_times_h(g: &FiniteGroup, notes: &mut Vec<String>) -> Option<CaseMatch> {
    let (s, h) = split_by_primes(g, &[2])?;
    if h.is_trivial() || s.order() < 8 {
        return None;
    }
    let r = (s.order() / 8).trailing_zeros();
    let sg = s.as_group(g, "S");
    if sg.is_abelian() || sg.exponent() != 4 || !is_isomorphic(&sg, &q8_times_elementary(r)) {
        return None;
    }
    let (ord2, odd) = odd_order_two(h.order());
    if !odd {
        return None;
    }
    let hg = h.as_group(g, "H");
    let inner = pqb_case(&hg, notes)?;
    let back = |x: usize| h.elements()[x];
    let w = inner.witness.expect("(PQ) x B carries a witness");
    let mut n_gens: Vec<usize> = w.n.elements().iter().map(|&x| back(x)).collect();
    n_gens.extend_from_slice(s.elements());
    let n = Subgroup::generated(g, &n_gens);
    Some(CaseMatch {
        case: "v",
        tag: "Q8 x C2^r x H".into(),
        evidence: json!({
            "r": r, "two_part": elems(&s), "h": elems(&h), "order_of_2_mod_h": ord2, "h_decomposition": inner.evidence,
        }),
        witness: Some(WitnessData { n, z: back(w.z) }),
    })
}

/// Affine symmetry groups of orbit polytopes with rational (equivalently
/// integer) vertices; five excluded cases.
pub fn classify_rational(g: &FiniteGroup) -> Result<ClassificationVerdict, ClassifyError> {
    if g.order() > SIZE_LIMIT {
        return Err(ClassifyError::SizeLimit { order: g.order(), limit: SIZE_LIMIT });
    }
    let mut m = Vec::new();
    let mut notes = Vec::new();
    if let Some(mut c) = abelian_exponent_gt2(g) {
        c.tag = "abelian, exponent > 2".into();
        m.push(c);
    } else if elementary_2_of_order_4_8_16(g) {
        m.push(CaseMatch {
            case: "i",
            tag: "elementary abelian of order 4, 8 or 16".into(),
            evidence: json!({ "order": g.order() }),
            witness: None,
        });
    }
    m.extend(case_s_times_a(g));
    m.extend(dicyclic_case(g, "iii"));
    m.extend(pqb_case(g, &mut notes));
    m.extend(case_q8_times_h(g, &mut notes));
    Ok(ClassificationVerdict::from_matches(Problem::Rational, m, notes))
}

pub fn classify(g: &FiniteGroup, problem: Problem) -> Result<ClassificationVerdict, ClassifyError> {
    match problem {
        Problem::Euclidean => Ok(classify_euclidean(g)),
        Problem::Affine => Ok(classify_affine(g)),
        Problem::Rational => classify_rational(g),
    }
}

/// Intersection of the kernels of the irreducibles whose degree exceeds
/// their real Schur index (2 for Frobenius-Schur indicator -1, else 1);
/// the whole group when there are none.
pub fn nker_r(t: &CharacterTable) -> Subgroup {
    let g = t.group();
    let mut k = Subgroup::whole(g);
    for (i, psi) in t.irreducibles().iter().enumerate() {
        let m = t.real_schur_index(i);
        let degree = psi.degree().is_rational().expect("degrees are integers");
        if degree > crate::algebra::rat(m as i64) {
            k = k.intersect(&t.kernel_of(psi));
        }
    }
    k
}

/// Which family of the list of groups with nontrivial real NKer the group
/// belongs to: abelian, generalized dicyclic, Q8 x C4 x C2^r or
/// Q8 x Q8 x C2^r.
pub fn nontrivial_nker_family(g: &FiniteGroup) -> Option<String> {
    if g.is_abelian() {
        return Some("abelian".into());
    }
    if is_generalized_dicyclic(g).is_some() {
        return Some("generalized dicyclic".into());
    }
    for (base, name) in [(32usize, "quaternion8,cyclic(4)"), (64, "quaternion8,quaternion8")] {
        if !g.order().is_multiple_of(base) || !(g.order() / base).is_power_of_two() {
            continue;
        }
        let r = (g.order() / base).trailing_zeros();
        let spec = match r {
            0 => format!("product({name})"),
            1 => format!("product(product({name}),cyclic(2))"),
            _ => format!("product(product({name}),elem_abelian(2,{r}))"),
        };
        if is_isomorphic(g, &builtin_group(&spec).expect("valid constructor")) {
            return Some(format!("Q8 x {} x C2^{r}", if base == 32 { "C4" } else { "Q8" }));
        }
    }
    None
}

/// The map g -> g kappa(g) for kappa: G -> <z> with kernel N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessAutomorphism {
    pub n: Subgroup,
    pub z: usize,
    pub p: usize,
    /// kappa(g) for every element.
    pub kappa: Vec<usize>,
    pub alpha: GPermutation,
}

pub fn witness_automorphism(g: &FiniteGroup, n: &Subgroup, z: usize) -> Result<WitnessAutomorphism, ClassifyError> {
    let bad = |m: String| ClassifyError::BadWitnessData(m);
    if n.elements().iter().any(|&x| x >= g.order()) || z >= g.order() {
        return Err(bad("element out of range".into()));
    }
    if !n.is_normal(g) {
        return Err(bad("N is not normal".into()));
    }
    let p = g.order() / n.order();
    if !is_prime(p as u64) {
        return Err(bad(format!("index {p} is not prime")));
    }
    if g.element_order(z) != p {
        return Err(bad(format!("z = {z} has order {}, expected {p}", g.element_order(z))));
    }
    if let Some(x) = g.elements().find(|&x| !n.contains(x) && !g.cyclic_subgroup(x).contains(&z)) {
        return Err(bad(format!("z is not a power of g = {x} outside N")));
    }
    let g0 = g.elements().find(|&x| !n.contains(x)).expect("proper subgroup");
    let labels = n.left_coset_labels(g);
    let mut kappa_of_label = vec![usize::MAX; p];
    let (mut x, mut zj) = (g.identity(), g.identity());
    for _ in 0..p {
        kappa_of_label[labels[x]] = zj;
        x = g.mul(x, g0);
        zj = g.mul(zj, z);
    }
    let kappa: Vec<usize> = g.elements().map(|x| kappa_of_label[labels[x]]).collect();
    let alpha = GPermutation::from_images(g.elements().map(|x| g.mul(x, kappa[x])).collect())
        .map_err(|_| bad("g -> g kappa(g) is not bijective".into()))?;
    let hom = g.elements().all(|a| g.elements().all(|b| alpha.apply(g.mul(a, b)) == g.mul(alpha.apply(a), alpha.apply(b))));
    if !hom {
        return Err(bad("g -> g kappa(g) is not a homomorphism".into()));
    }
    Ok(WitnessAutomorphism { n: n.clone(), z, p, kappa, alpha })
}

/// gamma(alpha(g)^-1 alpha(h)) = gamma(g^-1 h) for every rational ideal
/// character gamma and all g, h.
pub fn verify_witness(w: &WitnessAutomorphism, t: &CharacterTable) -> bool {
    let g = t.group();
    if w.alpha.degree() != g.order() {
        return false;
    }
    t.rational_ideal_characters().iter().all(|gamma| {
        g.elements().all(|a| {
            let aa = g.inv(w.alpha.apply(a));
            let ia = g.inv(a);
            g.elements().all(|b| t.value_at(gamma, g.mul(aa, w.alpha.apply(b))) == t.value_at(gamma, g.mul(ia, b)))
        })
    })
}

//! Geometric ground truth: explicit rational representations, orbits and
//! their linear symmetry groups, computed without character theory.
//!
//! Linear symmetries of a spanning point set S preserve the quadratic form
//! Q = (sum_s s s^T)^-1, and a permutation of S preserving all Q-inner
//! products is induced by a unique linear map. GL(S) is therefore the
//! automorphism group of the complete graph on S colored by Q-Gram values;
//! every permutation found this way is still converted to its matrix and
//! checked to permute S.

mod verify;

pub use verify::{closure_iterate, verify_theory_vs_oracle, ClosureReport, TrialReport, VerifyOptions, VerifyReport};

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Cyclotomic, Rational};
use crate::chartable::{Character, CharacterTable};
use crate::gensym::engine::{automorphisms, intern, ColoredGraph};
use crate::gensym::GensymError;
use crate::group::{FiniteGroup, GPermutation, StabChain, Subgroup};
use crate::RationalMatrix;

pub const SAMPLE_TRIES: usize = 20;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the given elements do not generate the group")]
    NotGenerating,
    #[error("homomorphism property fails at ({0}, {1})")]
    RelationViolated(usize, usize),
    #[error("matrix of element {0} is singular")]
    Singular(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a rational ideal character: {0}")]
    NotRationalIdealCharacter(String),
    #[error("orbit does not span the module")]
    NotSpanning,
    #[error("no spanning point with minimal stabilizer found")]
    NotCyclic,
    #[error("search budget exceeded; order is at least {lower_bound}")]
    SearchBudgetExceeded { lower_bound: BigUint },
    #[error("theory and oracle disagree after all retries: {0}")]
    PersistentMismatch(String),
    #[error(transparent)]
    Gensym(#[from] GensymError),
}

/// Matrices D(g) for every element, with D(a) D(b) = D(ab).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRepresentation {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<RationalMatrix>,
}

impl RationalRepresentation {
    /// Validate a full list of matrices; the homomorphism property is
    /// checked on all pairs (x, s) with s in a generating set, which implies
    /// it for all pairs.
    pub fn from_matrices(group: FiniteGroup, matrices: Vec<RationalMatrix>) -> Result<Self, OracleError> {
        if matrices.len() != group.order() {
            return Err(OracleError::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices.first().map_or(0, |m| m.rows());
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(OracleError::DimensionMismatch(format!("expected {dim}x{dim}, got {}x{}", m.rows(), m.cols())));
        }
        if !matrices[group.identity()].is_identity() {
            let e = group.identity();
            return Err(OracleError::RelationViolated(e, e));
        }
        for s in group.generators() {
            for x in group.elements() {
                if matrices[x].mul(&matrices[s]).unwrap() != matrices[group.mul(x, s)] {
                    return Err(OracleError::RelationViolated(x, s));
                }
            }
        }
        Ok(RationalRepresentation { group, dim, matrices })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &RationalMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    pub fn act(&self, g: usize, v: &[Rational]) -> Vec<Rational> {
        self.matrices[g].mul_vec(v).expect("dimension checked")
    }

    /// Traces on class representatives.
    pub fn character(&self, t: &CharacterTable) -> Character {
        Character::new(
            t.classes()
                .representatives
                .iter()
                .map(|&r| Cyclotomic::from_rational(self.matrices[r].trace()))
                .collect(),
        )
        .embed(t.conductor())
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self.group.elements().filter(|&g| self.matrices[g].is_identity()).collect();
        Subgroup::from_elements(&self.group, &members).expect("kernel is a subgroup")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = RationalMatrix::zeros(d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = a[(r, c)].clone();
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = b[(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        RationalRepresentation { group: self.group.clone(), dim: d, matrices }
    }
}

/// Complete a representation from generator images by breadth-first
/// search over the multiplication table.
pub fn rep_from_generators(g: &FiniteGroup, gens: &[(usize, RationalMatrix)]) -> Result<RationalRepresentation, OracleError> {
    let dim = gens.first().map_or(0, |(_, m)| m.rows());
    for (x, m) in gens {
        if *x >= g.order() {
            return Err(OracleError::DimensionMismatch(format!("element {x} out of range")));
        }
        if m.rows() != dim || m.cols() != dim {
            return Err(OracleError::DimensionMismatch(format!("generator {x} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
        }
        if m.inverse().is_none() {
            return Err(OracleError::Singular(*x));
        }
    }
    let mut mats: Vec<Option<RationalMatrix>> = vec![None; g.order()];
    mats[g.identity()] = Some(RationalMatrix::identity(dim));
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (s, m) in gens {
            let y = g.mul(x, *s);
            if mats[y].is_none() {
                mats[y] = Some(mats[x].as_ref().unwrap().mul(m).unwrap());
                queue.push(y);
            }
        }
        i += 1;
    }
    if queue.len() < g.order() {
        return Err(OracleError::NotGenerating);
    }
    let mats: Vec<RationalMatrix> = mats.into_iter().map(Option::unwrap).collect();
    for (s, m) in gens {
        for x in g.elements() {
            if mats[x].mul(m).unwrap() != mats[g.mul(x, *s)] {
                return Err(OracleError::RelationViolated(x, *s));
            }
        }
    }
    Ok(RationalRepresentation { group: g.clone(), dim, matrices: mats })
}

/// D(g) e_h = e_{gh}.
pub fn regular_representation(g: &FiniteGroup) -> RationalRepresentation {
    let n = g.order();
    let matrices = g
        .elements()
        .map(|x| {
            let mut m = RationalMatrix::zeros(n, n);
            for h in g.elements() {
                m[(g.mul(x, h), h)] = Rational::one();
            }
            m
        })
        .collect();
    RationalRepresentation { group: g.clone(), dim: n, matrices }
}

/// The two-sided ideal cut out by the central idempotent
/// e = (1/|G|) sum_g gamma(g^-1) g, in a rational basis of its image in
/// the regular representation.
pub fn ideal_component_rep(t: &CharacterTable, gamma: &Character) -> Result<RationalRepresentation, OracleError> {
    let bad = |m: &str| OracleError::NotRationalIdealCharacter(m.to_string());
    let g = t.group();
    let n = g.order();
    let gamma = t.adopt(gamma).map_err(|e| bad(&e.to_string()))?;
    let values: Vec<Rational> = g
        .elements()
        .map(|x| t.value_at(&gamma, x).is_rational())
        .collect::<Option<_>>()
        .ok_or_else(|| bad("irrational values"))?;
    let reg = regular_representation(g);
    let mut e = RationalMatrix::zeros(n, n);
    let scale = Rational::new(BigInt::one(), BigInt::from(n));
    for x in g.elements() {
        let c = &values[g.inv(x)] * &scale;
        if c.is_zero() {
            continue;
        }
        e = e.add(&reg.matrix(x).scale(&c)).unwrap();
    }
    if e.mul(&e).unwrap() != e {
        return Err(bad("the element it defines is not idempotent"));
    }
    let pivots = e.pivot_columns();
    let d = pivots.len();
    let cols: Vec<Vec<Rational>> = pivots.iter().map(|&c| e.column(c)).collect();
    let b = RationalMatrix::from_columns(n, &cols).unwrap();
    let rows = b.transpose().pivot_columns();
    let mut bp = RationalMatrix::zeros(d, d);
    for (i, &r) in rows.iter().enumerate() {
        for c in 0..d {
            bp[(i, c)] = b[(r, c)].clone();
        }
    }
    let bp_inv = bp.inverse().expect("independent rows");
    let matrices = g
        .elements()
        .map(|x| {
            let mb = reg.matrix(x).mul(&b).unwrap();
            let mut top = RationalMatrix::zeros(d, d);
            for (i, &r) in rows.iter().enumerate() {
                for c in 0..d {
                    top[(i, c)] = mb[(r, c)].clone();
                }
            }
            let a = bp_inv.mul(&top).unwrap();
            debug_assert!(b.mul(&a).unwrap() == mb);
            a
        })
        .collect();
    Ok(RationalRepresentation { group: g.clone(), dim: d, matrices })
}

/// An orbit Gv with its stabilizer and spanning data.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub base_point: Vec<Rational>,
    pub points: Vec<Vec<Rational>>,
    /// Index into `points` of g v, for every element g.
    pub point_of: Vec<usize>,
    pub stabilizer: Subgroup,
    pub spans: bool,
    /// Elements g_1..g_d with g_i v a basis, when the orbit spans.
    pub basis_elements: Vec<usize>,
    pub dim: usize,
    /// Permutations of `points` induced by the group's generators.
    pub generator_actions: Vec<GPermutation>,
}

impl OrbitData {
    /// Orbit points indexed by the elements in `basis_elements`.
    pub fn basis_points(&self) -> Vec<usize> {
        self.basis_elements.iter().map(|&g| self.point_of[g]).collect()
    }

    /// The permutation of orbit points induced by a permutation of G, when
    /// it is well defined.
    pub fn push_permutation(&self, p: &GPermutation) -> Option<GPermutation> {
        let mut images = vec![usize::MAX; self.points.len()];
        for (g, &pt) in self.point_of.iter().enumerate() {
            let img = self.point_of[p.apply(g)];
            if images[pt] == usize::MAX {
                images[pt] = img;
            } else if images[pt] != img {
                return None;
            }
        }
        GPermutation::from_images(images).ok()
    }
}

pub fn orbit(rep: &RationalRepresentation, v: &[Rational]) -> Result<OrbitData, OracleError> {
    if v.len() != rep.dim {
        return Err(OracleError::DimensionMismatch(format!("point has length {}, expected {}", v.len(), rep.dim)));
    }
    let g = &rep.group;
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut point_of = Vec::with_capacity(g.order());
    for x in g.elements() {
        let p = rep.act(x, v);
        let next = points.len();
        let i = *index.entry(p.clone()).or_insert(next);
        if i == next {
            points.push(p);
        }
        point_of.push(i);
    }
    let stab: Vec<usize> = g.elements().filter(|&x| point_of[x] == point_of[g.identity()]).collect();
    let stabilizer = Subgroup::from_elements(g, &stab).expect("stabilizer is a subgroup");
    let pivots = if rep.dim == 0 { vec![] } else { RationalMatrix::from_columns(rep.dim, &points).unwrap().pivot_columns() };
    let spans = pivots.len() == rep.dim;
    let basis_elements = if spans {
        pivots.iter().map(|&i| point_of.iter().position(|&q| q == i).unwrap()).collect()
    } else {
        vec![]
    };
    let generator_actions = g
        .generators()
        .into_iter()
        .map(|s| {
            let mut images = vec![0; points.len()];
            for x in g.elements() {
                images[point_of[x]] = point_of[g.mul(s, x)];
            }
            GPermutation::from_images(images).expect("group elements permute the orbit")
        })
        .collect();
    Ok(OrbitData {
        base_point: v.to_vec(),
        points,
        point_of,
        stabilizer,
        spans,
        basis_elements,
        dim: rep.dim,
        generator_actions,
    })
}

/// A spanning point set with the coordinates of every point in a basis
/// chosen among the points (leftmost independent ones).
#[derive(Clone, Debug)]
pub struct PointFrame {
    pub basis: Vec<usize>,
    /// coords[j][i]: coefficient of points[basis[i]] in points[j].
    pub coords: Vec<Vec<Rational>>,
    dim: usize,
}

impl PointFrame {
    pub fn new(points: &[Vec<Rational>], dim: usize) -> Option<Self> {
        let p = RationalMatrix::from_columns(dim, points).ok()?;
        let (r, basis) = p.rref();
        if basis.len() != dim {
            return None;
        }
        let coords = (0..points.len()).map(|j| (0..dim).map(|i| r[(i, j)].clone()).collect()).collect();
        Some(PointFrame { basis, coords, dim })
    }

    /// The matrix, in the basis of the frame, of the linear map sending each
    /// point j to point sigma(j), when there is one.
    pub fn coordinate_matrix(&self, sigma: &GPermutation) -> Option<RationalMatrix> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|&b| self.coords[sigma.apply(b)].clone()).collect();
        let c = RationalMatrix::from_columns(self.dim, &cols).unwrap();
        self.coords
            .iter()
            .enumerate()
            .all(|(j, x)| c.mul_vec(x).unwrap() == self.coords[sigma.apply(j)])
            .then_some(c)
    }

    /// A coordinate matrix rewritten in the ambient basis: B C B^-1.
    pub fn ambient_matrix(&self, points: &[Vec<Rational>], c: &RationalMatrix) -> RationalMatrix {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|&b| points[b].clone()).collect();
        let b = RationalMatrix::from_columns(self.dim, &cols).unwrap();
        let inv = b.inverse().expect("basis");
        b.mul(c).unwrap().mul(&inv).unwrap()
    }
}

/// GL(S) for a spanning point set S.
#[derive(Clone, Debug)]
pub struct LinearSymmetryGroup {
    /// Generators as matrices in the basis of `frame`.
    pub coordinate_matrices: Vec<RationalMatrix>,
    pub orbit_permutations: Vec<GPermutation>,
    pub order: BigUint,
    pub frame: PointFrame,
    points: Vec<Vec<Rational>>,
}

impl LinearSymmetryGroup {
    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn chain(&self) -> StabChain {
        StabChain::new(self.degree(), &self.orbit_permutations)
    }

    /// Generators as matrices in the ambient coordinates.
    pub fn matrices(&self) -> Vec<RationalMatrix> {
        self.coordinate_matrices.iter().map(|c| self.frame.ambient_matrix(&self.points, c)).collect()
    }
}

/// Colors of the orthogonal projector onto the row space of the d x n point
/// matrix P; this equals the Gram matrix in the form Q = (P P^T)^-1, which is
/// GL(S)-invariant. When the kernel of P is smaller than its row space the
/// complementary projector is used, which has the same equality pattern.
pub fn invariant_gram_colors(points: &[Vec<Rational>], dim: usize) -> Vec<u32> {
    let n = points.len();
    if n - dim >= dim {
        return projector_colors(points, dim);
    }
    if n == dim {
        let mut c = vec![1; n * n];
        for i in 0..n {
            c[i * n + i] = 0;
        }
        return c;
    }
    let kernel = RationalMatrix::from_columns(dim, points).unwrap().kernel();
    let k = kernel.len();
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| kernel.iter().map(|v| v[i].clone()).collect()).collect();
    projector_colors(&rows, k)
}

/// Gram colors of the rows of an n x k matrix of rank k in the form
/// (sum r r^T)^-1, computed over scaled integers.
fn projector_colors(points: &[Vec<Rational>], dim: usize) -> Vec<u32> {
    let n = points.len();
    let denom = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&denom / x.denom())).collect())
        .collect();
    let mut m = RationalMatrix::zeros(dim, dim);
    for p in &ints {
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] += Rational::from_integer(&p[r] * &p[c]);
            }
        }
    }
    let q = m.inverse().expect("spanning points give an invertible form");
    let qden = (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c))).fold(BigInt::one(), |acc, rc| acc.lcm(q[rc].denom()));
    let qint: Vec<Vec<BigInt>> =
        (0..dim).map(|r| (0..dim).map(|c| q[(r, c)].numer() * (&qden / q[(r, c)].denom())).collect()).collect();
    let qp: Vec<Vec<BigInt>> = ints
        .iter()
        .map(|p| qint.iter().map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let bits = |vs: &[Vec<BigInt>]| vs.iter().flatten().map(|x| x.bits()).max().unwrap_or(0);
    let room = 126 - (64 - (dim as u64).leading_zeros()) as u64;
    if bits(&ints) + bits(&qp) < room {
        let a: Vec<Vec<i128>> = ints.iter().map(|p| p.iter().map(|x| x.to_i128().unwrap()).collect()).collect();
        let b: Vec<Vec<i128>> = qp.iter().map(|p| p.iter().map(|x| x.to_i128().unwrap()).collect()).collect();
        let gram: Vec<i128> =
            (0..n * n).map(|i| a[i / n].iter().zip(&b[i % n]).map(|(x, y)| x * y).sum()).collect();
        intern(&gram)
    } else {
        let gram: Vec<BigInt> =
            (0..n * n).map(|i| ints[i / n].iter().zip(&qp[i % n]).map(|(x, y)| x * y).sum()).collect();
        intern(&gram)
    }
}

/// GL(S) of a spanning point set S. When `transitive` generates a group of
/// linear symmetries transitive on S, GL(S) is that group times the
/// stabilizer of point 0, and only the stabilizer is searched for.
pub fn linear_symmetry_of_points(
    points: &[Vec<Rational>],
    dim: usize,
    transitive: &[GPermutation],
    budget: u64,
) -> Result<LinearSymmetryGroup, OracleError> {
    let frame = PointFrame::new(points, dim).ok_or(OracleError::NotSpanning)?;
    let n = points.len();
    let colors = invariant_gram_colors(points, dim);
    let is_transitive = !transitive.is_empty() && crate::gensym::engine::orbit(n, 0, transitive).iter().all(|&b| b);
    let mut labels = vec![0; n];
    if is_transitive {
        labels[0] = 1;
    }
    let graph = ColoredGraph::new(n, colors, labels);
    let aut = automorphisms(&graph, budget).map_err(|e| OracleError::SearchBudgetExceeded {
        lower_bound: if is_transitive { e.lower_bound * BigUint::from(n) } else { e.lower_bound },
    })?;
    let (generators, order) = if is_transitive {
        let mut gens = transitive.to_vec();
        gens.extend(aut.generators);
        (gens, aut.order * BigUint::from(n))
    } else {
        (aut.generators, aut.order)
    };
    let mut coordinate_matrices = Vec::with_capacity(generators.len());
    for sigma in &generators {
        let c = frame
            .coordinate_matrix(sigma)
            .ok_or_else(|| OracleError::PersistentMismatch("Gram-preserving permutation is not linear".into()))?;
        coordinate_matrices.push(c);
    }
    Ok(LinearSymmetryGroup { coordinate_matrices, orbit_permutations: generators, order, frame, points: points.to_vec() })
}

pub fn linear_symmetry_group(orbit: &OrbitData, budget: u64) -> Result<LinearSymmetryGroup, OracleError> {
    if !orbit.spans {
        return Err(OracleError::NotSpanning);
    }
    linear_symmetry_of_points(&orbit.points, orbit.dim, &orbit.generator_actions, budget)
}

/// pi(Ann(v)) inside Ann(v), with Ann(v) the kernel of a -> sum_g a_g g v.
pub fn annihilator_symmetry_check(orbit: &OrbitData, p: &GPermutation) -> Result<bool, OracleError> {
    if !orbit.spans {
        return Err(OracleError::NotSpanning);
    }
    let n = orbit.point_of.len();
    if p.degree() != n {
        return Err(OracleError::DimensionMismatch(format!("permutation of degree {}, group of order {n}", p.degree())));
    }
    let cols: Vec<Vec<Rational>> = orbit.point_of.iter().map(|&i| orbit.points[i].clone()).collect();
    let k = RationalMatrix::from_columns(orbit.dim, &cols).unwrap();
    for a in k.kernel() {
        let mut b = vec![Rational::zero(); n];
        for (g, x) in a.into_iter().enumerate() {
            b[p.apply(g)] = x;
        }
        if k.mul_vec(&b).unwrap().iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random integer point in [-bound, bound]^d.
pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<Rational> {
    (0..dim).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// A spanning point whose stabilizer is the kernel of the representation.
pub fn sample_generic_point(rep: &RationalRepresentation, seed: u64, bound: i64) -> Result<OrbitData, OracleError> {
    if rep.dim == 0 {
        return Err(OracleError::NotCyclic);
    }
    let kernel = rep.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_TRIES {
        let v = random_point(&mut rng, rep.dim, bound.max(1));
        let o = orbit(rep, &v)?;
        if o.spans && o.stabilizer == kernel {
            return Ok(o);
        }
    }
    Err(OracleError::NotCyclic)
}

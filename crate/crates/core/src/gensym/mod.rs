//! Generic symmetry groups Sym(G, chi) of characters of cyclic CG-modules.
//!
//! A permutation pi of G lies in Sym(G, chi) iff
//! (i) chi_I(pi(h)^-1 pi(g)) = chi_I(h^-1 g) for all g, h, and
//! (ii) pi(gN) = pi(1) gN for all g, with N the kernel of chi - chi_I.
//! The group is lambda(G) times the stabilizer of 1, and that stabilizer is
//! the automorphism group of the Cayley coloring with the N-cosets as
//! vertex labels and the identity singled out.

pub mod engine;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{rat, Cyclotomic, Rational};
use crate::chartable::{CharError, Character, CharacterTable};
use crate::group::{factorial, FiniteGroup, GPermutation, GPermutationGroup, Subgroup};
use engine::{automorphisms, ColoredGraph};

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;
pub const EXPLORE_LIMIT: usize = 64;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GensymError {
    #[error("not the character of a cyclic module: {0}")]
    NotCyclicModuleCharacter(String),
    #[error("search budget exceeded; order is at least {lower_bound}")]
    SearchBudgetExceeded { lower_bound: BigUint },
    #[error("exploration stopped after {tested} candidates")]
    ExplorationBudgetExceeded { tested: u64 },
    #[error("character is not irreducible")]
    NotIrreducible,
    #[error("permutation is not a generic symmetry")]
    NotAGenericSymmetry,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group of order {order} exceeds the limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error(transparent)]
    Char(#[from] CharError),
}

/// chi = chi_I + residual, with chi_I the sum of the constituents whose
/// multiplicity equals their degree.
#[derive(Clone, Debug)]
pub struct IdealPartDecomposition {
    pub chi: Character,
    pub chi_i: Character,
    pub residual: Character,
    pub n: Subgroup,
    pub multiplicities: Vec<u64>,
    /// (index into the table's irreducibles, multiplicity).
    pub constituents_of_residual: Vec<(usize, u64)>,
}

fn degree_of(psi: &Character) -> u64 {
    psi.degree().is_rational().unwrap().to_integer().to_u64().unwrap()
}

pub fn ideal_part(t: &CharacterTable, chi: &Character) -> Result<IdealPartDecomposition, GensymError> {
    let chi = t.adopt(chi)?;
    if chi.is_zero() {
        return Err(GensymError::NotCyclicModuleCharacter("zero character".into()));
    }
    decompose_admissible(t, &chi)
}

/// Like [`ideal_part`] but accepts the zero character.
fn decompose_admissible(t: &CharacterTable, chi: &Character) -> Result<IdealPartDecomposition, GensymError> {
    let m = t.decompose(chi).map_err(|e| GensymError::NotCyclicModuleCharacter(e.to_string()))?;
    let mut chi_i = Character::zero(t.classes().len()).embed(t.conductor());
    let mut constituents = Vec::new();
    for (i, psi) in t.irreducibles().iter().enumerate() {
        let d = degree_of(psi);
        if m[i] > d {
            return Err(GensymError::NotCyclicModuleCharacter(format!("psi_{i} has multiplicity {} > degree {d}", m[i])));
        }
        if m[i] == d {
            chi_i = chi_i.add(&psi.scale(&rat(d as i64)));
        } else if m[i] > 0 {
            constituents.push((i, m[i]));
        }
    }
    let residual = chi.sub(&chi_i);
    let n = t.kernel_of(&residual);
    Ok(IdealPartDecomposition {
        chi: chi.clone(),
        chi_i,
        residual,
        n,
        multiplicities: m,
        constituents_of_residual: constituents,
    })
}

/// Arc colors chi_I(g^-1 h) and the left-coset partition of N.
#[derive(Clone, Debug)]
pub struct CayleyColoring {
    group: FiniteGroup,
    order: usize,
    color_of: Vec<u32>,
    palette: Vec<Cyclotomic>,
    coset_labels: Vec<usize>,
}

impl CayleyColoring {
    pub fn new(t: &CharacterTable, chi_i: &Character, n: &Subgroup) -> Self {
        let g = t.group();
        let (palette, class_color) = palette_of(t, chi_i);
        let order = g.order();
        let mut color_of = vec![0u32; order * order];
        for a in g.elements() {
            for b in g.elements() {
                color_of[a * order + b] = class_color[t.classes().class_of[g.mul(g.inv(a), b)]];
            }
        }
        CayleyColoring { group: g.clone(), order, color_of, palette, coset_labels: n.left_coset_labels(g) }
    }

    pub fn color(&self, g: usize, h: usize) -> u32 {
        self.color_of[g * self.order + h]
    }

    pub fn palette(&self) -> &[Cyclotomic] {
        &self.palette
    }

    pub fn coset_labels(&self) -> &[usize] {
        &self.coset_labels
    }

    /// True when all arcs share one color, so condition (i) is vacuous.
    pub fn is_uniform(&self) -> bool {
        let n = self.order;
        let mut off = (0..n * n).filter(|i| i / n != i % n).map(|i| self.color_of[i]);
        match off.next() {
            None => true,
            Some(c) => off.all(|x| x == c),
        }
    }
}

/// Distinct values of chi, interned by sort key, and the color of each class.
fn palette_of(t: &CharacterTable, chi: &Character) -> (Vec<Cyclotomic>, Vec<u32>) {
    let vals = chi.embed(t.conductor());
    let mut palette: Vec<Cyclotomic> = vals.values().to_vec();
    palette.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    palette.dedup();
    let class_color = vals
        .values()
        .iter()
        .map(|v| palette.binary_search_by(|p| p.sort_key().cmp(&v.sort_key())).unwrap() as u32)
        .collect();
    (palette, class_color)
}

/// Sym(G, chi) with the data needed for membership tests.
#[derive(Clone, Debug)]
pub struct GenericSymmetryResult {
    pub group: GPermutationGroup,
    pub generically_closed: bool,
    /// chi-hat on each generator of `group`.
    pub hat_values: Vec<(GPermutation, Cyclotomic)>,
    pub decomposition: IdealPartDecomposition,
    coloring: CayleyColoring,
}

impl GenericSymmetryResult {
    pub fn order(&self) -> &BigUint {
        self.group.order()
    }

    /// Direct test of conditions (i) and (ii).
    pub fn contains(&self, p: &GPermutation) -> bool {
        satisfies_conditions(&self.coloring, p)
    }

    pub fn coloring(&self) -> &CayleyColoring {
        &self.coloring
    }

    /// Closed-form order when known, else the decimal order.
    pub fn order_expr_string(&self) -> String {
        self.group.order_expr().map_or_else(|| self.group.order().to_string(), str::to_string)
    }
}

fn satisfies_conditions(c: &CayleyColoring, p: &GPermutation) -> bool {
    let n = c.order;
    if p.degree() != n {
        return false;
    }
    let g = &c.group;
    let x = p.apply(g.identity());
    g.elements().all(|a| c.coset_labels[p.apply(a)] == c.coset_labels[g.mul(x, a)])
        && (0..n).all(|a| (0..n).all(|b| c.color(p.apply(a), p.apply(b)) == c.color(a, b)))
}

/// Membership in Sym(G, chi) by the two defining conditions.
pub fn is_generic_symmetry(t: &CharacterTable, d: &IdealPartDecomposition, p: &GPermutation) -> bool {
    satisfies_conditions(&CayleyColoring::new(t, &d.chi_i, &d.n), p)
}

fn lambda_generators(t: &CharacterTable) -> Vec<GPermutation> {
    let g = t.group();
    g.generators().into_iter().map(|x| g.left_translation(x)).collect()
}

/// lambda(G) together with the full symmetric group on every left coset of
/// `n`: the group of all pi with pi(gN) = pi(1) gN.
fn coset_preserving_group(t: &CharacterTable, n: &Subgroup) -> GPermutationGroup {
    let g = t.group();
    let order = g.order();
    let labels = n.left_coset_labels(g);
    let index = order / n.order();
    let mut gens = lambda_generators(t);
    for c in 0..index {
        let coset: Vec<usize> = (0..order).filter(|&x| labels[x] == c).collect();
        if coset.len() > 1 {
            gens.push(GPermutation::transposition(order, coset[0], coset[1]));
        }
        if coset.len() > 2 {
            gens.push(GPermutation::cycle(order, &coset));
        }
    }
    let k = n.order();
    let size = BigUint::from(index) * num_traits::pow(factorial(k), index);
    let expr = match (k, index) {
        (1, _) => None,
        (_, 1) => Some(format!("{k}!")),
        _ => Some(format!("{index}*({k}!)^{index}")),
    };
    GPermutationGroup::new(order, gens, size, expr)
}

fn finish(
    t: &CharacterTable,
    d: IdealPartDecomposition,
    coloring: CayleyColoring,
    group: GPermutationGroup,
) -> GenericSymmetryResult {
    let generically_closed = *group.order() == BigUint::from(t.group().order());
    let hat_values = group.generators().iter().map(|p| (p.clone(), hat_unchecked(t, &d.chi, p))).collect();
    GenericSymmetryResult { group, generically_closed, hat_values, decomposition: d, coloring }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Sym(G, chi) with exact order.
pub fn sym_group_of_character(
    t: &CharacterTable,
    chi: &Character,
    opts: SearchOptions,
) -> Result<GenericSymmetryResult, GensymError> {
    let d = ideal_part(t, chi)?;
    let coloring = CayleyColoring::new(t, &d.chi_i, &d.n);
    let group = if coloring.is_uniform() {
        coset_preserving_group(t, &d.n)
    } else {
        search_intersection(t, std::slice::from_ref(&d), opts)?
    };
    Ok(finish(t, d, coloring, group))
}

/// Intersection of Sym(G, chi_k) over admissible characters (zero allowed,
/// meaning no constraint), computed in one search over tuple colors.
pub fn intersect_generic_symmetries(
    t: &CharacterTable,
    chars: &[Character],
    opts: SearchOptions,
) -> Result<GPermutationGroup, GensymError> {
    let ds = chars
        .iter()
        .map(|c| decompose_admissible(t, &t.adopt(c)?))
        .collect::<Result<Vec<_>, _>>()?;
    search_intersection(t, &ds, opts)
}

fn search_intersection(
    t: &CharacterTable,
    ds: &[IdealPartDecomposition],
    opts: SearchOptions,
) -> Result<GPermutationGroup, GensymError> {
    let g = t.group();
    let order = g.order();
    let colorings: Vec<CayleyColoring> = ds.iter().map(|d| CayleyColoring::new(t, &d.chi_i, &d.n)).collect();
    let id = g.identity();
    let graph = ColoredGraph::from_keys(
        order,
        |a, b| colorings.iter().map(|c| c.color(a, b)).collect::<Vec<_>>(),
        |v| {
            if v == id {
                None
            } else {
                Some(colorings.iter().map(|c| c.coset_labels()[v]).collect::<Vec<_>>())
            }
        },
    );
    let aut = automorphisms(&graph, opts.node_budget).map_err(|e| GensymError::SearchBudgetExceeded {
        lower_bound: e.lower_bound * BigUint::from(order),
    })?;
    let mut gens = lambda_generators(t);
    gens.extend(aut.generators);
    Ok(GPermutationGroup::new(order, gens, aut.order * BigUint::from(order), None))
}

/// Closed form for an irreducible psi with kernel K: all pi with
/// pi(gK) = pi(1) gK.
pub fn sym_of_irreducible(t: &CharacterTable, psi: &Character) -> Result<GenericSymmetryResult, GensymError> {
    let psi = t.adopt(psi)?;
    if !t.is_irreducible(&psi) {
        return Err(GensymError::NotIrreducible);
    }
    let d = ideal_part(t, &psi)?;
    let group = coset_preserving_group(t, &t.kernel_of(&psi));
    let coloring = CayleyColoring::new(t, &d.chi_i, &d.n);
    Ok(finish(t, d, coloring, group))
}

fn hat_unchecked(t: &CharacterTable, chi: &Character, p: &GPermutation) -> Cyclotomic {
    let g = t.group();
    let mut s = Cyclotomic::zero();
    for a in g.elements() {
        s = &s + t.value_at(chi, g.mul(g.inv(a), p.apply(a)));
    }
    s.scale(&Rational::new(One::one(), (g.order() as i64).into()))
}

/// (1/|G|) sum_g chi(g^-1 pi(g)) for pi in Sym(G, chi).
pub fn hat_character(t: &CharacterTable, chi: &Character, p: &GPermutation) -> Result<Cyclotomic, GensymError> {
    let d = ideal_part(t, chi)?;
    if !is_generic_symmetry(t, &d, p) {
        return Err(GensymError::NotAGenericSymmetry);
    }
    Ok(hat_unchecked(t, &d.chi, p))
}

/// |Sym(G, chi)| = |G|, with the faithful-residual shortcut tried first.
pub fn is_generically_closed(t: &CharacterTable, chi: &Character, opts: SearchOptions) -> Result<bool, GensymError> {
    let d = ideal_part(t, chi)?;
    if d.n.is_trivial() {
        return Ok(true);
    }
    Ok(sym_group_of_character(t, chi, opts)?.generically_closed)
}

#[derive(Clone, Debug)]
pub struct ExplorationResult {
    /// Bitmask over the table's irreducibles of the first closed candidate.
    pub found: Option<(u64, Character)>,
    pub tested: u64,
}

/// Search the characters of cyclic modules of an abelian group (sums of
/// distinct linear characters) for a generically closed one. Candidates go
/// by size, faithful ones first, then by bitmask.
pub fn explore_abelian_closure(
    t: &CharacterTable,
    candidate_budget: u64,
    opts: SearchOptions,
) -> Result<ExplorationResult, GensymError> {
    let g = t.group();
    if !g.is_abelian() {
        return Err(GensymError::NotAbelian);
    }
    if g.order() > EXPLORE_LIMIT {
        return Err(GensymError::SizeLimit { order: g.order(), limit: EXPLORE_LIMIT });
    }
    let k = t.irreducibles().len();
    let kernels: Vec<Subgroup> = t.irreducibles().iter().map(|c| t.kernel_of(c)).collect();
    let faithful = |mask: u64| {
        let mut inter = Subgroup::whole(g);
        for (i, ker) in kernels.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inter = inter.intersect(ker);
            }
        }
        inter.is_trivial()
    };
    let mut tested = 0u64;
    for size in 1..=k as u32 {
        let mut masks: Vec<(bool, u64)> = masks_of_popcount(k, size).into_iter().map(|m| (!faithful(m), m)).collect();
        masks.sort_unstable();
        for (_, mask) in masks {
            if tested == candidate_budget {
                return Err(GensymError::ExplorationBudgetExceeded { tested });
            }
            tested += 1;
            let chi = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .fold(Character::zero(k).embed(t.conductor()), |acc, i| acc.add(&t.irreducibles()[i]));
            if is_generically_closed(t, &chi, opts)? {
                return Ok(ExplorationResult { found: Some((mask, chi)), tested });
            }
        }
    }
    Ok(ExplorationResult { found: None, tested })
}

fn masks_of_popcount(k: usize, size: u32) -> Vec<u64> {
    assert!(k < 64 || size as usize == k, "bitmask exploration needs fewer than 64 characters");
    if k >= 64 {
        return vec![u64::MAX];
    }
    (1u64..1 << k).filter(|m| m.count_ones() == size).collect()
}

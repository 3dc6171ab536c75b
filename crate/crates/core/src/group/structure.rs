use std::collections::BTreeSet;

use super::{FiniteGroup, GroupError, Subgroup, SIZE_LIMIT};
use crate::algebra::prime_factors;

#[derive(Clone, Debug)]
pub struct StructureInfo {
    pub is_abelian: bool,
    pub exponent: usize,
    pub is_elementary_abelian: bool,
    pub center: Subgroup,
    pub commutator_subgroup: Subgroup,
}

pub fn structure_predicates(g: &FiniteGroup) -> StructureInfo {
    let is_abelian = g.is_abelian();
    let exponent = g.exponent();
    StructureInfo {
        is_abelian,
        exponent,
        is_elementary_abelian: is_abelian && crate::algebra::is_prime(exponent as u64),
        center: center(g),
        commutator_subgroup: commutator_subgroup(g),
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g.elements().filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a))).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut comms = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            comms.insert(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
        }
    }
    Subgroup::generated(g, &comms.into_iter().collect::<Vec<_>>())
}

/// Elements commuting with every member of `s`.
pub fn centralizer(g: &FiniteGroup, s: &[usize]) -> Subgroup {
    let members = g.elements().filter(|&a| s.iter().all(|&b| g.mul(a, b) == g.mul(b, a))).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

/// All subgroups of index 2, as kernels of the nonzero functionals on
/// G / (commutators * squares).
pub fn index_two_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut gens: Vec<usize> = commutator_subgroup(g).elements().to_vec();
    gens.extend(g.elements().map(|a| g.mul(a, a)));
    let m = Subgroup::generated(g, &gens);
    let lab = m.left_coset_labels(g);
    let ncos = g.order() / m.order();
    let mut coord: Vec<Option<u32>> = vec![None; ncos];
    coord[lab[g.identity()]] = Some(0);
    let mut known = vec![(g.identity(), 0u32)];
    let mut k = 0;
    for a in g.elements() {
        if coord[lab[a]].is_some() {
            continue;
        }
        let bit = 1u32 << k;
        k += 1;
        for (x, v) in known.clone() {
            let y = g.mul(x, a);
            coord[lab[y]] = Some(v ^ bit);
            known.push((y, v ^ bit));
        }
    }
    (1u32..(1 << k))
        .map(|f| {
            let members = g
                .elements()
                .filter(|&a| (coord[lab[a]].unwrap() & f).count_ones().is_multiple_of(2))
                .collect();
            Subgroup::from_members_unchecked(g.order(), members)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicyclicWitness {
    pub a: Subgroup,
    pub g: usize,
}

/// An abelian subgroup A of index 2 and g outside A of order 4 with
/// g^-1 a g = a^-1 for all a in A. The definition is applied literally, so
/// some abelian groups (C4, for one) qualify.
pub fn is_generalized_dicyclic(g: &FiniteGroup) -> Option<DicyclicWitness> {
    for a in index_two_subgroups(g) {
        if !a.is_abelian(g) {
            continue;
        }
        let found = g.elements().find(|&x| {
            !a.contains(x) && g.element_order(x) == 4 && a.elements().iter().all(|&y| g.conj(y, x) == g.inv(y))
        });
        if let Some(x) = found {
            return Some(DicyclicWitness { a, g: x });
        }
    }
    None
}

/// Elements whose order only involves the given primes, when they form a subgroup.
pub fn hall_subgroup(g: &FiniteGroup, primes: &[u64]) -> Option<Subgroup> {
    let members: Vec<usize> = g
        .elements()
        .filter(|&a| prime_factors(g.element_order(a) as u64).iter().all(|p| primes.contains(p)))
        .collect();
    let s = Subgroup::from_members_unchecked(g.order(), members);
    let closed = s.elements().iter().all(|&a| s.elements().iter().all(|&b| s.contains(g.mul(a, b))));
    let expected: u64 = prime_factors(g.order() as u64)
        .into_iter()
        .filter(|p| primes.contains(p))
        .map(|p| crate::algebra::p_part(g.order() as u64, p))
        .product();
    (closed && s.order() as u64 == expected).then_some(s)
}

/// A Sylow p-subgroup, grown one factor p at a time inside normalizers.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Subgroup {
    let target = crate::algebra::p_part(g.order() as u64, p) as usize;
    let mut s = Subgroup::trivial(g);
    while s.order() < target {
        let next = g.elements().find(|&x| {
            !s.contains(x)
                && s.elements().iter().all(|&y| s.contains(g.conj(y, x)))
                && s.contains(g.pow(x, p as i64))
        });
        let x = next.expect("a p-subgroup below Sylow order has a p-element in its normalizer");
        let mut gens = s.elements().to_vec();
        gens.push(x);
        s = Subgroup::generated(g, &gens);
    }
    s
}

/// Normal closure of a set of elements.
pub fn normal_closure(g: &FiniteGroup, elems: &[usize]) -> Subgroup {
    let mut gens = BTreeSet::new();
    for &x in elems {
        for y in g.elements() {
            gens.insert(g.conj(x, y));
        }
    }
    Subgroup::generated(g, &gens.into_iter().collect::<Vec<_>>())
}

/// All normal subgroups, found as joins of normal closures of single
/// elements. Stops after `cap` subgroups; the flag reports truncation.
pub fn normal_subgroups(g: &FiniteGroup, cap: usize) -> (Vec<Subgroup>, bool) {
    let mut closures: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let c = normal_closure(g, &[x]);
        if !closures.contains(&c) {
            closures.push(c);
        }
    }
    let mut all: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(all[0].elements().to_vec());
    let mut i = 0;
    while i < all.len() {
        for c in &closures {
            if c.elements().iter().all(|&x| all[i].contains(x)) {
                continue;
            }
            let j = all[i].join(g, c);
            if seen.insert(j.elements().to_vec()) {
                if all.len() >= cap {
                    return (all, true);
                }
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    (all, false)
}

#[derive(Clone, Debug)]
pub struct Splitting {
    pub u: Subgroup,
    pub w: Subgroup,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    /// For each prime divisor, the Sylow subgroup when it is normal.
    pub normal_sylows: Vec<(u64, Option<Subgroup>)>,
    /// Nontrivial direct splittings G = U x W, each unordered pair once.
    pub splittings: Vec<Splitting>,
    /// Hall subgroups for proper nonempty prime sets, where the set of
    /// elements of those orders is a subgroup.
    pub halls: Vec<(Vec<u64>, Subgroup)>,
    pub truncated: bool,
}

const NORMAL_SUBGROUP_CAP: usize = 4096;

pub fn decompose_structure(g: &FiniteGroup) -> Result<StructureReport, GroupError> {
    g.check_size(SIZE_LIMIT)?;
    let primes = prime_factors(g.order() as u64);
    let normal_sylows = primes.iter().map(|&p| (p, hall_subgroup(g, &[p]))).collect();
    let mut halls = Vec::new();
    for mask in 1u32..(1 << primes.len()) - 1 {
        let set: Vec<u64> = (0..primes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
        if let Some(h) = hall_subgroup(g, &set) {
            halls.push((set, h));
        }
    }
    let (normals, truncated) = normal_subgroups(g, NORMAL_SUBGROUP_CAP);
    let mut splittings = Vec::new();
    for (i, u) in normals.iter().enumerate() {
        if u.is_trivial() || u.is_whole() {
            continue;
        }
        for w in &normals[i + 1..] {
            if u.order() * w.order() == g.order() && u.intersect(w).is_trivial() {
                splittings.push(Splitting { u: u.clone(), w: w.clone() });
            }
        }
    }
    Ok(StructureReport { normal_sylows, splittings, halls, truncated })
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    v.sort_unstable();
    v
}

/// Isomorphism test: invariant screening, then a search over images of a
/// generating set of `h` inside `g`.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order()
        || g.is_abelian() != h.is_abelian()
        || order_profile(g) != order_profile(h)
        || center(g).order() != center(h).order()
    {
        return false;
    }
    let gens = h.generators();
    let mut images = Vec::new();
    extend_iso(g, h, &gens, &mut images)
}

/// Tries to extend the assignment `gens[..images.len()] -> images`.
fn extend_iso(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
    let Some(map) = partial_hom(g, h, &gens[..images.len()], images) else {
        return false;
    };
    if images.len() == gens.len() {
        return map.iter().all(|&x| x != usize::MAX);
    }
    let s = gens[images.len()];
    let want = h.element_order(s);
    for x in g.elements() {
        if g.element_order(x) != want {
            continue;
        }
        images.push(x);
        if extend_iso(g, h, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// The injective homomorphism on the subgroup generated by `gens` sending
/// them to `images`, if one exists; unreached entries are `usize::MAX`.
fn partial_hom(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; h.order()];
    let mut used = vec![false; g.order()];
    map[h.identity()] = g.identity();
    used[g.identity()] = true;
    let mut queue = vec![h.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = h.mul(x, s);
            let fy = g.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

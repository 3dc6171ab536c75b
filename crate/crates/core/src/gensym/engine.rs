//! Automorphism groups of complete digraphs with colored arcs and labelled
//! vertices.
//!
//! Vertices whose transposition is an automorphism (twins) are collapsed
//! first; the quotient is searched by 1-dimensional color refinement and
//! backtracking along a base, one orbit representative at a time.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::group::{factorial, GPermutation};

const ARC_BITS: u32 = 21;

/// Complete digraph on `0..n` with an arc color for every ordered pair and a
/// label for every vertex. Only equality of colors and labels matters.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    arcs: Vec<u32>,
    labels: Vec<u32>,
}

impl ColoredGraph {
    /// `arcs` is row-major, `arcs[u * n + v]` the color of u -> v.
    pub fn new(n: usize, arcs: Vec<u32>, labels: Vec<u32>) -> Self {
        assert_eq!(arcs.len(), n * n);
        assert_eq!(labels.len(), n);
        assert!(arcs.iter().all(|&c| c < 1 << ARC_BITS), "too many arc colors");
        ColoredGraph { n, arcs, labels }
    }

    /// Build from arbitrary keys, interned in sorted order.
    pub fn from_keys<A, L>(n: usize, arc: impl Fn(usize, usize) -> A, label: impl Fn(usize) -> L) -> Self
    where
        A: Ord + Clone,
        L: Ord + Clone,
    {
        let arc_keys: Vec<A> = (0..n * n).map(|i| arc(i / n, i % n)).collect();
        let label_keys: Vec<L> = (0..n).map(label).collect();
        ColoredGraph::new(n, intern(&arc_keys), intern(&label_keys))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn arc(&self, u: usize, v: usize) -> u32 {
        self.arcs[u * self.n + v]
    }

    pub fn is_automorphism(&self, p: &GPermutation) -> bool {
        let n = self.n;
        p.degree() == n
            && (0..n).all(|u| self.labels[p.apply(u)] == self.labels[u])
            && (0..n).all(|u| (0..n).all(|v| u == v || self.arc(p.apply(u), p.apply(v)) == self.arc(u, v)))
    }
}

/// Replace keys by their rank among the distinct keys.
pub fn intern<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut uniq: Vec<&K> = keys.iter().collect();
    uniq.sort();
    uniq.dedup();
    keys.iter().map(|k| uniq.binary_search(&k).unwrap() as u32).collect()
}

#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub generators: Vec<GPermutation>,
    pub order: BigUint,
    /// Classes of mutually interchangeable vertices, sizes at least 2.
    pub twin_classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    /// Order of the subgroup certified before the budget ran out.
    pub lower_bound: BigUint,
    pub nodes: u64,
}

/// Full automorphism group, or a certified lower bound when more than
/// `budget` search nodes would be needed.
pub fn automorphisms(g: &ColoredGraph, budget: u64) -> Result<Automorphisms, BudgetExceeded> {
    let classes = twin_classes(g);
    let twin_order = classes.iter().fold(BigUint::from(1u32), |acc, c| acc * factorial(c.len()));
    let mut twin_gens = Vec::new();
    for c in classes.iter().filter(|c| c.len() > 1) {
        twin_gens.push(GPermutation::transposition(g.n, c[0], c[1]));
        if c.len() > 2 {
            twin_gens.push(GPermutation::cycle(g.n, c));
        }
    }
    let nontrivial: Vec<Vec<usize>> = classes.iter().filter(|c| c.len() > 1).cloned().collect();
    if nontrivial.is_empty() {
        let (generators, order) = Search::new(g, budget).run()?;
        return Ok(Automorphisms { generators, order, twin_classes: nontrivial });
    }

    let m = classes.len();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let labels: Vec<(u32, usize, u32, u32)> = classes
        .iter()
        .map(|c| {
            let inner = if c.len() > 1 { g.arc(c[0], c[1]) } else { u32::MAX };
            (g.labels[c[0]], c.len(), g.arc(c[0], c[0]), inner)
        })
        .collect();
    let quotient = ColoredGraph::new(
        m,
        (0..m * m).map(|i| if i / m == i % m { 0 } else { g.arc(reps[i / m], reps[i % m]) }).collect(),
        intern(&labels),
    );
    let (qgens, qorder) = Search::new(&quotient, budget).run().map_err(|e| BudgetExceeded {
        lower_bound: e.lower_bound * &twin_order,
        nodes: e.nodes,
    })?;
    let mut generators: Vec<GPermutation> = qgens
        .iter()
        .map(|q| {
            let mut images = vec![0; g.n];
            for (a, c) in classes.iter().enumerate() {
                for (x, y) in c.iter().zip(&classes[q.apply(a)]) {
                    images[*x] = *y;
                }
            }
            GPermutation::from_images(images).expect("classes of equal size")
        })
        .collect();
    generators.extend(twin_gens);
    Ok(Automorphisms { generators, order: qorder * twin_order, twin_classes: nontrivial })
}

/// Partition into classes of vertices whose transpositions are automorphisms.
fn twin_classes(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = g.n;
    let twins = |u: usize, v: usize| {
        g.arc(u, v) == g.arc(v, u)
            && g.arc(u, u) == g.arc(v, v)
            && (0..n).all(|w| w == u || w == v || (g.arc(u, w) == g.arc(v, w) && g.arc(w, u) == g.arc(w, v)))
    };
    let mut buckets: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let reps = buckets.entry((g.labels[v], g.arc(v, v))).or_default();
        match reps.iter().find(|&&c| twins(classes[c][0], v)) {
            Some(&c) => classes[c].push(v),
            None => {
                reps.push(classes.len());
                classes.push(vec![v]);
            }
        }
    }
    classes
}

struct Level {
    part: Vec<u32>,
    base: usize,
    cell: Vec<usize>,
}

struct Search<'a> {
    g: &'a ColoredGraph,
    budget: u64,
    nodes: u64,
}

fn cell_counts(part: &[u32]) -> Vec<usize> {
    let mut c = vec![0; part.len()];
    for &x in part {
        c[x as usize] += 1;
    }
    c
}

fn individualize(part: &[u32], v: usize) -> Vec<u32> {
    part.iter().enumerate().map(|(u, &x)| 2 * x + u32::from(u != v)).collect()
}

pub(crate) fn orbit(n: usize, start: usize, gens: &[GPermutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for s in gens {
            let y = s.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

impl<'a> Search<'a> {
    fn new(g: &'a ColoredGraph, budget: u64) -> Self {
        Search { g, budget, nodes: 0 }
    }

    /// Coarsest equitable refinement; labels are ranks of signatures, so the
    /// result commutes with automorphisms.
    fn refine(&self, start: &[u32]) -> Vec<u32> {
        let n = self.g.n;
        let mut cur = intern(start);
        let mut cells = cur.iter().max().map_or(0, |&m| m as usize + 1);
        while cells < n {
            let sigs: Vec<(u32, Vec<u64>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<u64> = (0..n)
                        .filter(|&u| u != v)
                        .map(|u| {
                            (u64::from(cur[u]) << (2 * ARC_BITS))
                                | (u64::from(self.g.arc(v, u)) << ARC_BITS)
                                | u64::from(self.g.arc(u, v))
                        })
                        .collect();
                    s.sort_unstable();
                    (cur[v], s)
                })
                .collect();
            let next = intern(&sigs);
            let k = next.iter().max().map_or(0, |&m| m as usize + 1);
            cur = next;
            if k == cells {
                break;
            }
            cells = k;
        }
        cur
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn run(mut self) -> Result<(Vec<GPermutation>, BigUint), BudgetExceeded> {
        let n = self.g.n;
        let mut levels: Vec<Level> = Vec::new();
        let mut part = self.refine(&self.g.labels);
        loop {
            let counts = cell_counts(&part);
            let Some(label) = (0..n).filter(|&c| counts[c] > 1).min_by_key(|&c| (counts[c], c)) else {
                break;
            };
            let cell: Vec<usize> = (0..n).filter(|&v| part[v] as usize == label).collect();
            let base = cell[0];
            let next = self.refine(&individualize(&part, base));
            levels.push(Level { part, base, cell });
            part = next;
        }
        let leaf = part;

        let k = levels.len();
        let mut gens_by_level: Vec<Vec<GPermutation>> = vec![Vec::new(); k];
        let mut order = BigUint::from(1u32);
        for i in (0..k).rev() {
            let below: Vec<GPermutation> = gens_by_level[i..].iter().flatten().cloned().collect();
            let mut current = below;
            let mut in_orbit = orbit(n, levels[i].base, &current);
            let mut failed = vec![false; n];
            for idx in 0..levels[i].cell.len() {
                let gamma = levels[i].cell[idx];
                if in_orbit[gamma] || failed[gamma] {
                    continue;
                }
                let exceeded = |orbit_size: usize, nodes: u64| BudgetExceeded {
                    lower_bound: &order * BigUint::from(orbit_size),
                    nodes,
                };
                if !self.tick() {
                    return Err(exceeded(in_orbit.iter().filter(|&&b| b).count(), self.nodes));
                }
                let target = self.refine(&individualize(&levels[i].part, gamma));
                match self.dive(&levels, &leaf, i + 1, target) {
                    Err(()) => return Err(exceeded(in_orbit.iter().filter(|&&b| b).count(), self.nodes)),
                    Ok(Some(p)) => {
                        gens_by_level[i].push(p.clone());
                        current.push(p);
                        in_orbit = orbit(n, levels[i].base, &current);
                    }
                    Ok(None) => {
                        for (v, hit) in orbit(n, gamma, &current).into_iter().enumerate() {
                            failed[v] |= hit;
                        }
                    }
                }
            }
            order *= BigUint::from(in_orbit.iter().filter(|&&b| b).count());
        }
        Ok((gens_by_level.into_iter().flatten().collect(), order))
    }

    /// Extend a partial correspondence; `Err` when the budget runs out.
    fn dive(&mut self, levels: &[Level], leaf: &[u32], j: usize, target: Vec<u32>) -> Result<Option<GPermutation>, ()> {
        let source = if j == levels.len() { leaf } else { &levels[j].part };
        if cell_counts(source) != cell_counts(&target) {
            return Ok(None);
        }
        if j == levels.len() {
            let mut where_label = vec![0; target.len()];
            for (u, &x) in target.iter().enumerate() {
                where_label[x as usize] = u;
            }
            let p = GPermutation::from_images(leaf.iter().map(|&x| where_label[x as usize]).collect())
                .expect("discrete partitions");
            return Ok(self.g.is_automorphism(&p).then_some(p));
        }
        let label = levels[j].part[levels[j].base];
        let candidates: Vec<usize> = (0..target.len()).filter(|&u| target[u] == label).collect();
        for u in candidates {
            if !self.tick() {
                return Err(());
            }
            let next = self.refine(&individualize(&target, u));
            if let Some(p) = self.dive(levels, leaf, j + 1, next)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

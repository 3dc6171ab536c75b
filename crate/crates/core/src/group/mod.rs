//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`. Every constructor documents its element
//! ordering so that JSON fixtures stay stable.

mod builtin;
mod perm;
mod schreier;
mod structure;
mod subgroup;

pub use builtin::{builtin_group, catalog, catalog_products, catalog_up_to, parse_group_spec, GroupSpec};
pub use perm::{GPermutation, GPermutationGroup};
pub use schreier::StabChain;
pub use perm::factorial;
pub use structure::{
    center, centralizer, commutator_subgroup, decompose_structure, hall_subgroup, index_two_subgroups,
    is_generalized_dicyclic, is_isomorphic, normal_closure, normal_subgroups, structure_predicates,
    sylow_subgroup, DicyclicWitness, Splitting, StructureInfo, StructureReport,
};
pub use subgroup::Subgroup;

/// Exhaustive subgroup searches refuse groups larger than this.
pub const SIZE_LIMIT: usize = 128;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or has entries out of range: {0}")]
    BadTable(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("group of order {order} exceeds the limit {limit}")]
    SizeLimit { order: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    element_order: Vec<usize>,
    exponent: usize,
}

impl FiniteGroup {
    /// Validate a multiplication table; `table[a][b]` is the index of `a*b`.
    pub fn from_table(label: &str, table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadTable("table must be square and non-empty".into()));
        }
        if identity >= n {
            return Err(GroupError::BadTable(format!("identity {identity} out of range")));
        }
        if let Some(x) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(GroupError::BadTable(format!("entry {x} out of range")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if m(identity, a) != a || m(a, identity) != a {
                return Err(GroupError::NoIdentity(identity));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let found: Vec<usize> = (0..n).filter(|&b| m(a, b) == identity && m(b, a) == identity).collect();
            if found.len() != 1 {
                return Err(GroupError::NoInverse(a));
            }
            inverse[a] = found[0];
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::assemble(label.to_string(), n, flat, identity, inverse))
    }

    /// Build from a table already known to define a group.
    pub(crate) fn trusted(label: String, n: usize, flat: Vec<usize>, identity: usize) -> Self {
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| flat[a * n + b] == identity).expect("group table");
        }
        Self::assemble(label, n, flat, identity, inverse)
    }

    fn assemble(label: String, n: usize, table: Vec<usize>, identity: usize, inverse: Vec<usize>) -> Self {
        let mut element_order = vec![0; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != identity {
                x = table[x * n + a];
                k += 1;
            }
            element_order[a] = k;
        }
        let exponent = element_order.iter().fold(1, |acc, &k| num_integer::lcm(acc, k));
        FiniteGroup { label, order: n, table, identity, inverse, element_order, exponent }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order[a] as i64;
        let k = k.rem_euclid(o);
        let mut x = self.identity;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `g^-1 a g`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Left multiplication by `g` as a permutation of the element set.
    pub fn left_translation(&self, g: usize) -> GPermutation {
        GPermutation::from_images_unchecked((0..self.order).map(|h| self.mul(g, h)).collect())
    }

    /// Elements of the cyclic subgroup generated by `g`, in power order.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = g;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    /// A small generating set, chosen greedily by large element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = Subgroup::trivial(self);
        while sub.order() < self.order {
            let g = (0..self.order)
                .filter(|&g| !sub.contains(g))
                .max_by_key(|&g| (self.element_order[g], std::cmp::Reverse(g)))
                .unwrap();
            gens.push(g);
            sub = Subgroup::generated(self, &gens);
        }
        gens
    }

    pub fn check_size(&self, limit: usize) -> Result<(), GroupError> {
        if self.order > limit {
            Err(GroupError::SizeLimit { order: self.order, limit })
        } else {
            Ok(())
        }
    }
}

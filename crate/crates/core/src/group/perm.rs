use num_bigint::BigUint;

use super::{GroupError, StabChain};

/// A permutation of `0..n` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPermutation {
    images: Vec<usize>,
}

impl GPermutation {
    pub fn identity(n: usize) -> Self {
        GPermutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::BadParameter("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(GPermutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        GPermutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        GPermutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        GPermutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        GPermutation { images }
    }

    /// The cycle `cycle[0] -> cycle[1] -> ... -> cycle[0]`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &x) in cycle.iter().enumerate() {
            images[x] = cycle[(i + 1) % cycle.len()];
        }
        GPermutation { images }
    }
}

/// A permutation group of known exact order.
///
/// `order_expr` carries a closed-form description when the order came from
/// a formula rather than from a search.
#[derive(Clone, Debug)]
pub struct GPermutationGroup {
    degree: usize,
    generators: Vec<GPermutation>,
    order: BigUint,
    order_expr: Option<String>,
}

impl GPermutationGroup {
    pub fn new(degree: usize, generators: Vec<GPermutation>, order: BigUint, order_expr: Option<String>) -> Self {
        GPermutationGroup { degree, generators, order, order_expr }
    }

    /// Order computed by Schreier-Sims.
    pub fn from_generators(degree: usize, generators: Vec<GPermutation>) -> Self {
        let order = StabChain::new(degree, &generators).order();
        GPermutationGroup { degree, generators, order, order_expr: None }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[GPermutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_expr(&self) -> Option<&str> {
        self.order_expr.as_deref()
    }

    pub fn chain(&self) -> StabChain {
        StabChain::new(self.degree, &self.generators)
    }
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

use super::{FiniteGroup, GroupError};

/// A subgroup as a sorted member list plus a membership mask over the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_members_unchecked(g.order(), vec![g.identity()])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_members_unchecked(g.order(), g.elements().collect())
    }

    pub(crate) fn from_members_unchecked(parent_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    /// Validates closure under products and inverses.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Result<Self, GroupError> {
        if elems.iter().any(|&x| x >= g.order()) {
            return Err(GroupError::BadParameter("element out of range".into()));
        }
        let s = Self::from_members_unchecked(g.order(), elems.to_vec());
        if !s.contains(g.identity()) {
            return Err(GroupError::BadParameter("subset lacks the identity".into()));
        }
        for &a in &s.members {
            if !s.contains(g.inv(a)) {
                return Err(GroupError::BadParameter(format!("not closed under inverse at {a}")));
            }
            for &b in &s.members {
                if !s.contains(g.mul(a, b)) {
                    return Err(GroupError::BadParameter(format!("not closed at ({a}, {b})")));
                }
            }
        }
        Ok(s)
    }

    /// Closure of a set of elements.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mask = vec![false; g.order()];
        let mut members = vec![g.identity()];
        mask[g.identity()] = true;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        let gens = g.generators();
        self.members.iter().all(|&a| gens.iter().all(|&x| self.contains(g.conj(a, x))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members.iter().all(|&a| self.members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_members_unchecked(self.mask.len(), members)
    }

    /// Subgroup generated by both.
    pub fn join(&self, g: &FiniteGroup, other: &Self) -> Self {
        let mut gens = self.members.clone();
        gens.extend_from_slice(&other.members);
        Self::generated(g, &gens)
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    /// Left coset label per element: elements `a`, `b` share a label iff `aH = bH`.
    /// Labels are numbered by first appearance in element order.
    pub fn left_coset_labels(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut label = vec![usize::MAX; g.order()];
        let mut next = 0;
        for a in g.elements() {
            if label[a] != usize::MAX {
                continue;
            }
            for &h in &self.members {
                label[g.mul(a, h)] = next;
            }
            next += 1;
        }
        label
    }

    /// Exponent of the subgroup.
    pub fn exponent(&self, g: &FiniteGroup) -> usize {
        self.members.iter().fold(1, |acc, &x| num_integer::lcm(acc, g.element_order(x)))
    }

    /// The subgroup as a group in its own right, elements renumbered in sorted order.
    pub fn as_group(&self, g: &FiniteGroup, label: &str) -> FiniteGroup {
        let n = self.order();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &m) in self.members.iter().enumerate() {
            pos[m] = i;
        }
        let mut flat = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                flat.push(pos[g.mul(a, b)]);
            }
        }
        FiniteGroup::trusted(label.to_string(), n, flat, pos[g.identity()])
    }
}

use crate::group::FiniteGroup;

/// Conjugacy classes. Class 0 is the identity class; the others are ordered
/// by their smallest element, which is also the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
    pub sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// Class of the square of each class.
    pub power_map: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    /// Class of `rep^k`.
    pub fn power_class(&self, g: &FiniteGroup, class: usize, k: i64) -> usize {
        self.class_of[g.pow(self.representatives[class], k)]
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = vec![g.identity()];
    order.extend(g.elements().filter(|&a| a != g.identity()));
    for a in order {
        if class_of[a] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut cls: Vec<usize> = g.elements().map(|x| g.conj(a, x)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &b in &cls {
            class_of[b] = c;
        }
        members.push(cls);
    }
    let representatives: Vec<usize> = members.iter().map(|m| m[0]).collect();
    let sizes = members.iter().map(|m| m.len()).collect();
    let inverse_class = representatives.iter().map(|&r| class_of[g.inv(r)]).collect();
    let power_map = representatives.iter().map(|&r| class_of[g.mul(r, r)]).collect();
    ClassData { representatives, class_of, sizes, inverse_class, power_map, members }
}

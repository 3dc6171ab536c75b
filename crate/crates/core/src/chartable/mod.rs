//! Conjugacy classes, irreducible character tables and the character
//! operations used downstream (inner products, Frobenius-Schur indicators,
//! kernels, rational ideal characters, left-ideal criteria).

mod classes;
mod dixon;

pub use classes::{conjugacy_classes, ClassData};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{gcd_u64, rat, Cyclotomic, Rational};
use crate::group::{FiniteGroup, GroupError, Subgroup, SIZE_LIMIT};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("character table failed validation: {0}")]
    ValidationFailure(String),
    #[error("characters live on different class structures")]
    GroupMismatch,
    #[error("character is not irreducible")]
    NotIrreducible,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A class function, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn at_class(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn zero(classes: usize) -> Self {
        Character { values: vec![Cyclotomic::zero(); classes] }
    }

    pub fn add(&self, other: &Self) -> Self {
        Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Character { values: self.values.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn conj(&self) -> Self {
        Character { values: self.values.iter().map(|a| a.conj()).collect() }
    }

    pub fn galois(&self, k: i64) -> Option<Self> {
        let values: Result<Vec<_>, _> = self.values.iter().map(|a| a.galois(k)).collect();
        values.ok().map(|values| Character { values })
    }

    /// All values written over Q(zeta_m).
    pub fn embed(&self, m: u64) -> Self {
        Character { values: self.values.iter().map(|a| a.embed(m)).collect() }
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|a| a.is_rational().is_some())
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|a| a.conj() == *a)
    }
}

/// The complete irreducible character table of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ClassData,
    irreducibles: Vec<Character>,
    fs_indicators: Vec<i8>,
    galois_orbits: Vec<Vec<usize>>,
}

fn value_key(c: &Character) -> Vec<(u64, Vec<Rational>)> {
    c.values.iter().map(|v| (v.conductor(), v.coefficients().to_vec())).collect()
}

impl CharacterTable {
    /// Compute the table by Dixon's method and validate it.
    pub fn compute(g: &FiniteGroup) -> Result<Self, CharError> {
        g.check_size(SIZE_LIMIT)?;
        let classes = conjugacy_classes(g);
        let rows = dixon::irreducible_values(g, &classes)
            .ok_or_else(|| CharError::ValidationFailure("no prime separated the characters".into()))?;
        Self::from_values(g.clone(), classes, rows)
    }

    /// Assemble and validate a table from raw per-class values. Rows are
    /// sorted by degree, trivial character first, then by value.
    pub fn from_values(group: FiniteGroup, classes: ClassData, rows: Vec<Vec<Cyclotomic>>) -> Result<Self, CharError> {
        let e = group.exponent() as u64;
        let mut irreducibles: Vec<Character> = rows
            .into_iter()
            .map(|r| {
                if r.len() != classes.len() {
                    return Err(CharError::ValidationFailure("row length differs from class count".into()));
                }
                if r.iter().any(|v| !e.is_multiple_of(v.conductor())) {
                    return Err(CharError::ValidationFailure("value outside Q(zeta_exp)".into()));
                }
                Ok(Character::new(r).embed(e))
            })
            .collect::<Result<_, _>>()?;
        irreducibles.sort_by(|a, b| {
            let da = a.degree().is_rational().unwrap_or_default();
            let db = b.degree().is_rational().unwrap_or_default();
            let ta = a.values.iter().all(|v| v.is_one());
            let tb = b.values.iter().all(|v| v.is_one());
            (da, !ta, value_key(a)).cmp(&(db, !tb, value_key(b)))
        });
        let mut t = CharacterTable { group, classes, irreducibles, fs_indicators: Vec::new(), galois_orbits: Vec::new() };
        t.validate()?;
        t.fs_indicators = (0..t.irreducibles.len())
            .map(|i| t.fs_raw(&t.irreducibles[i]).to_i8().unwrap())
            .collect();
        t.galois_orbits = t.compute_galois_orbits()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), CharError> {
        let k = self.classes.len();
        if self.irreducibles.len() != k {
            return Err(CharError::ValidationFailure(format!(
                "{} irreducibles for {k} classes",
                self.irreducibles.len()
            )));
        }
        for i in 0..k {
            for j in 0..=i {
                let ip = self.inner_product_raw(&self.irreducibles[i], &self.irreducibles[j]);
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != want {
                    return Err(CharError::ValidationFailure(format!("<psi_{i}, psi_{j}> = {ip}")));
                }
            }
        }
        let mut sum = Rational::zero();
        for psi in &self.irreducibles {
            let d = psi.degree().is_rational().ok_or_else(|| CharError::ValidationFailure("irrational degree".into()))?;
            if !d.is_integer() || !d.is_positive() {
                return Err(CharError::ValidationFailure(format!("degree {d} is not a positive integer")));
            }
            sum += &d * &d;
        }
        if sum != rat(self.group.order() as i64) {
            return Err(CharError::ValidationFailure(format!("sum of squared degrees is {sum}")));
        }
        Ok(())
    }

    fn compute_galois_orbits(&self) -> Result<Vec<Vec<usize>>, CharError> {
        let e = self.group.exponent() as u64;
        let k = self.irreducibles.len();
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut orbit = vec![i];
            for a in 2..e.max(2) {
                if gcd_u64(a, e) != 1 {
                    continue;
                }
                let img = self.irreducibles[i].galois(a as i64).expect("unit exponent");
                let j = self
                    .irreducibles
                    .iter()
                    .position(|c| *c == img)
                    .ok_or_else(|| CharError::ValidationFailure("table not closed under Galois action".into()))?;
                if !orbit.contains(&j) {
                    orbit.push(j);
                }
            }
            orbit.sort_unstable();
            for &j in &orbit {
                orbit_of[j] = orbits.len();
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn fs_indicators(&self) -> &[i8] {
        &self.fs_indicators
    }

    pub fn galois_orbits(&self) -> &[Vec<usize>] {
        &self.galois_orbits
    }

    pub fn conductor(&self) -> u64 {
        self.group.exponent() as u64
    }

    /// Value of a class function at a group element.
    pub fn value_at<'a>(&self, chi: &'a Character, g: usize) -> &'a Cyclotomic {
        &chi.values[self.classes.class_of[g]]
    }

    /// Normalize a character to this table's conductor, checking its length.
    pub fn adopt(&self, chi: &Character) -> Result<Character, CharError> {
        if chi.values.len() != self.classes.len() {
            return Err(CharError::GroupMismatch);
        }
        let e = self.conductor();
        if chi.values.iter().any(|v| !e.is_multiple_of(v.conductor())) {
            return Err(CharError::NotACharacter("values outside Q(zeta_exp)".into()));
        }
        Ok(chi.embed(e))
    }

    fn inner_product_raw(&self, a: &Character, b: &Character) -> Cyclotomic {
        let weights: Vec<i64> = self.classes.sizes.iter().map(|&s| s as i64).collect();
        Cyclotomic::hermitian_sum(&a.values, &b.values, &weights)
            .scale(&Rational::new(One::one(), (self.group.order() as i64).into()))
    }

    /// (1/|G|) sum_g a(g) conj(b(g)).
    pub fn inner_product(&self, a: &Character, b: &Character) -> Result<Cyclotomic, CharError> {
        if a.values.len() != self.classes.len() || b.values.len() != self.classes.len() {
            return Err(CharError::GroupMismatch);
        }
        Ok(self.inner_product_raw(a, b))
    }

    fn fs_raw(&self, psi: &Character) -> Rational {
        let mut s = Cyclotomic::zero();
        for (l, size) in self.classes.sizes.iter().enumerate() {
            s = &s + &psi.values[self.classes.power_map[l]].scale(&rat(*size as i64));
        }
        s.is_rational().expect("indicator is rational") / rat(self.group.order() as i64)
    }

    pub fn is_irreducible(&self, psi: &Character) -> bool {
        self.irreducibles.iter().any(|c| c == psi)
    }

    /// Frobenius-Schur indicator of an irreducible character.
    pub fn fs_indicator(&self, psi: &Character) -> Result<i8, CharError> {
        let i = self.irreducibles.iter().position(|c| c == psi).ok_or(CharError::NotIrreducible)?;
        Ok(self.fs_indicators[i])
    }

    /// Real Schur index of irreducible `i`: 2 when the indicator is -1.
    pub fn real_schur_index(&self, i: usize) -> u64 {
        if self.fs_indicators[i] == -1 {
            2
        } else {
            1
        }
    }

    /// Multiplicities of the irreducibles in `chi`, as rationals.
    pub fn multiplicities(&self, chi: &Character) -> Result<Vec<Rational>, CharError> {
        self.irreducibles
            .iter()
            .map(|psi| {
                self.inner_product(chi, psi)?
                    .is_rational()
                    .ok_or_else(|| CharError::NotACharacter("irrational multiplicity".into()))
            })
            .collect()
    }

    /// Multiplicities as nonnegative integers; fails for virtual or
    /// non-class-function inputs.
    pub fn decompose(&self, chi: &Character) -> Result<Vec<u64>, CharError> {
        let m = self.multiplicities(chi)?;
        m.iter()
            .enumerate()
            .map(|(i, r)| {
                if r.is_integer() && !r.is_negative() {
                    Ok(r.to_integer().to_u64().unwrap())
                } else {
                    Err(CharError::NotACharacter(format!("multiplicity {r} of psi_{i}")))
                }
            })
            .collect()
    }

    /// sum_i m_i psi_i.
    pub fn combine(&self, mult: &[u64]) -> Result<Character, CharError> {
        if mult.len() != self.irreducibles.len() {
            return Err(CharError::GroupMismatch);
        }
        let mut chi = Character::zero(self.classes.len()).embed(self.conductor());
        for (m, psi) in mult.iter().zip(&self.irreducibles) {
            if *m > 0 {
                chi = chi.add(&psi.scale(&rat(*m as i64)));
            }
        }
        Ok(chi)
    }

    pub fn trivial(&self) -> &Character {
        &self.irreducibles[0]
    }

    /// The regular character: |G| at 1, zero elsewhere.
    pub fn regular(&self) -> Character {
        let mut values = vec![Cyclotomic::zero().embed(self.conductor()); self.classes.len()];
        values[0] = Cyclotomic::from_int(self.group.order() as i64).embed(self.conductor());
        Character::new(values)
    }

    /// {g : chi(g) = chi(1)}.
    pub fn kernel_of(&self, chi: &Character) -> Subgroup {
        let members = self.group.elements().filter(|&g| self.value_at(chi, g) == chi.degree()).collect();
        Subgroup::from_members_unchecked(self.group.order(), members)
    }

    /// One character per Galois orbit: psi(1) times the orbit sum.
    pub fn rational_ideal_characters(&self) -> Vec<Character> {
        self.galois_orbits
            .iter()
            .map(|orbit| {
                let d = self.irreducibles[orbit[0]].degree().is_rational().unwrap();
                let mut s = Character::zero(self.classes.len());
                for &i in orbit {
                    s = s.add(&self.irreducibles[i]);
                }
                s.scale(&d).embed(self.conductor())
            })
            .collect()
    }

    /// Whether chi is the character of a left ideal of kG, for k = C or R.
    pub fn affordable_by_left_ideal(&self, chi: &Character, field: Field) -> Result<bool, CharError> {
        let m = self.decompose(chi)?;
        for (i, psi) in self.irreducibles.iter().enumerate() {
            let d = psi.degree().is_rational().unwrap().to_integer().to_u64().unwrap();
            if m[i] > d {
                return Ok(false);
            }
            if field == Field::Real && m[i] % self.real_schur_index(i) != 0 {
                return Ok(false);
            }
        }
        if field == Field::Real && !chi.is_real() {
            return Ok(false);
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Complex,
    Real,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    fn table(s: &str) -> CharacterTable {
        CharacterTable::compute(&builtin_group(s).unwrap()).unwrap()
    }

    fn degrees(t: &CharacterTable) -> Vec<i64> {
        t.irreducibles().iter().map(|c| c.degree().is_rational().unwrap().to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(degrees(&table("dihedral(3)")), vec![1, 1, 2]);
        assert_eq!(degrees(&table("quaternion8")), vec![1, 1, 1, 1, 2]);
        let c4 = table("cyclic(4)");
        assert_eq!(degrees(&c4), vec![1; 4]);
        assert!(c4.irreducibles().iter().any(|c| *c.at_class(1) == Cyclotomic::zeta(4, 1)));
    }

    #[test]
    fn indicators() {
        let q8 = table("quaternion8");
        assert_eq!(q8.fs_indicators(), &[1, 1, 1, 1, -1]);
        let c4 = table("cyclic(4)");
        let faithful = c4.irreducibles().iter().find(|c| *c.at_class(1) == Cyclotomic::zeta(4, 1)).unwrap();
        assert_eq!(c4.fs_indicator(faithful).unwrap(), 0);
        assert_eq!(c4.fs_indicator(c4.trivial()).unwrap(), 1);
    }

    #[test]
    fn ideal_characters_and_kernels() {
        let c4 = table("cyclic(4)");
        assert_eq!(c4.rational_ideal_characters().len(), 3);
        let q8 = table("quaternion8");
        assert_eq!(q8.rational_ideal_characters().len(), 5);
        assert!(q8.kernel_of(&q8.irreducibles()[4]).is_trivial());
        assert!(q8.kernel_of(&q8.regular()).is_trivial());
        assert!(q8.kernel_of(q8.trivial()).is_whole());
        let t1 = table("cyclic(1)");
        assert_eq!(t1.rational_ideal_characters(), vec![t1.trivial().clone()]);
    }

    #[test]
    fn left_ideal_criteria() {
        let q8 = table("quaternion8");
        let alpha = q8.irreducibles()[4].clone();
        assert!(q8.affordable_by_left_ideal(&q8.regular(), Field::Complex).unwrap());
        assert!(!q8.affordable_by_left_ideal(&alpha, Field::Real).unwrap());
        assert!(q8.affordable_by_left_ideal(&alpha.scale(&rat(2)), Field::Real).unwrap());
    }
}

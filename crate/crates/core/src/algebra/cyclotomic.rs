use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gcd_u64, lcm_u64, rat, rational_to_string, totient, AlgebraError, Rational};

/// Reduction data for Q(zeta_n): `powers[k]` is zeta^k in the power basis
/// 1, zeta, ..., zeta^(phi-1) modulo the cyclotomic polynomial.
struct Reduction {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_poly(n: u64, cache: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1, low degree first
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &div);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn reduction(n: u64) -> Arc<Reduction> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Reduction>>>> = OnceLock::new();
    static POLYS: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let poly = {
        let mut polys = POLYS.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
        cyclotomic_poly(n, &mut polys)
    };
    let phi = totient(n) as usize;
    debug_assert_eq!(poly.len(), phi + 1);
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic relation
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * poly[j];
            }
        }
    }
    let r = Arc::new(Reduction { phi, powers });
    cache.lock().unwrap().insert(n, r.clone());
    r
}

/// An element of Q(zeta_n) in canonical form.
///
/// The canonical form is the coefficient vector in the power basis
/// `1, zeta_n, ..., zeta_n^(phi(n)-1)`. Values with different conductors
/// compare equal when they agree after embedding into the common field.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    c: Vec<Rational>,
}

impl Cyclotomic {
    /// Build from exponent/coefficient pairs; exponents are taken mod n.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let red = reduction(n);
        let mut c = vec![Rational::zero(); red.phi];
        for (e, a) in terms {
            if a.is_zero() {
                continue;
            }
            let k = e.rem_euclid(n as i64) as usize;
            for (j, &m) in red.powers[k].iter().enumerate() {
                match m {
                    0 => {}
                    1 => c[j] += &a,
                    -1 => c[j] -= &a,
                    _ => c[j] += &a * rat(m),
                }
            }
        }
        Cyclotomic { n, c }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(rat(k))
    }

    /// zeta_n^k.
    pub fn zeta(n: u64, k: i64) -> Self {
        Self::from_terms(n, [(k, Rational::one())])
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.c
    }

    /// Nonzero (exponent, coefficient) pairs of the canonical form.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero())
    }

    /// The same number written in Q(zeta_m); `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.n), "conductor {} does not divide {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as i64;
        Self::from_terms(m, self.terms().map(|(e, a)| (e as i64 * step, a.clone())))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = lcm_u64(self.n, other.n);
        (self.embed(m), other.embed(m))
    }

    /// Coefficients as machine integers, when they all are small integers.
    fn small_integer_coefficients(&self) -> Option<Vec<i64>> {
        self.c
            .iter()
            .map(|x| if x.is_integer() { x.numer().to_i64().filter(|v| v.abs() < 1 << 24) } else { None })
            .collect()
    }

    /// sum_l w_l a_l conj(b_l) over the common length.
    pub fn hermitian_sum(a: &[Self], b: &[Self], w: &[i64]) -> Self {
        Self::weighted_hermitian_sum(a, b, w).unwrap_or_else(|| {
            a.iter().zip(b).zip(w).fold(Self::zero(), |acc, ((x, y), &wl)| &acc + &(x * &y.conj()).scale(&rat(wl)))
        })
    }

    /// Integer-arithmetic case of `hermitian_sum`: every value has small
    /// integer coefficients and the same conductor.
    fn weighted_hermitian_sum(a: &[Self], b: &[Self], w: &[i64]) -> Option<Self> {
        let n = a.first()?.n;
        let mut raw = vec![0i128; n as usize];
        for ((x, y), &wl) in a.iter().zip(b).zip(w) {
            if x.n != n || y.n != n {
                return None;
            }
            let (xs, ys) = (x.small_integer_coefficients()?, y.small_integer_coefficients()?);
            for (i, &u) in xs.iter().enumerate().filter(|(_, u)| **u != 0) {
                let uw = i128::from(u) * i128::from(wl);
                for (j, &v) in ys.iter().enumerate().filter(|(_, v)| **v != 0) {
                    raw[(i + n as usize - j) % n as usize] += uw * i128::from(v);
                }
            }
        }
        let red = reduction(n);
        let mut c = vec![0i128; red.phi];
        for (k, &v) in raw.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (j, &m) in red.powers[k].iter().enumerate() {
                c[j] += v * i128::from(m);
            }
        }
        Some(Cyclotomic { n, c: c.into_iter().map(|v| Rational::from_integer(v.into())).collect() })
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let n = a.n;
        let red = reduction(n);
        if let (Some(x), Some(y)) = (a.small_integer_coefficients(), b.small_integer_coefficients()) {
            // algebraic integers, the usual case for character values
            let mut prod = vec![0i128; 2 * red.phi];
            for (i, &u) in x.iter().enumerate().filter(|(_, u)| **u != 0) {
                for (j, &v) in y.iter().enumerate() {
                    prod[i + j] += i128::from(u) * i128::from(v);
                }
            }
            let mut c = vec![0i128; red.phi];
            for (k, &v) in prod.iter().enumerate().filter(|(_, v)| **v != 0) {
                if k < red.phi {
                    c[k] += v;
                } else {
                    for (j, &m) in red.powers[k % n as usize].iter().enumerate() {
                        c[j] += v * i128::from(m);
                    }
                }
            }
            let c = c.into_iter().map(|v| Rational::from_integer(v.into())).collect();
            return Cyclotomic { n, c };
        }
        let mut prod = vec![Rational::zero(); 2 * red.phi];
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                prod[i + j] += x * y;
            }
        }
        let mut c = vec![Rational::zero(); red.phi];
        for (k, a) in prod.into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if k < red.phi {
                c[k] += a;
            } else {
                for (j, &m) in red.powers[k % n as usize].iter().enumerate() {
                    if m != 0 {
                        c[j] += &a * rat(m);
                    }
                }
            }
        }
        Cyclotomic { n, c }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { n: self.n, c: self.c.iter().map(|a| a * r).collect() }
    }

    /// The automorphism zeta -> zeta^k.
    pub fn galois(&self, k: i64) -> Result<Self, AlgebraError> {
        let kk = k.rem_euclid(self.n as i64) as u64;
        if gcd_u64(kk, self.n) != 1 && self.n > 1 {
            return Err(AlgebraError::BadGaloisExponent { k, n: self.n });
        }
        Ok(Self::from_terms(self.n, self.terms().map(|(e, a)| (e as i64 * k, a.clone()))))
    }

    /// Complex conjugation, zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn is_rational(&self) -> Option<Rational> {
        if self.c.iter().skip(1).all(|a| a.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Lexicographic key, usable once conductors agree.
    pub fn sort_key(&self) -> (u64, &[Rational]) {
        (self.n, &self.c)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = self.aligned(other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, a) in self.terms() {
            let neg = a.is_negative();
            let abs = a.abs();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sign)?;
            first = false;
            if e == 0 {
                f.write_str(&rational_to_string(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", rational_to_string(&abs))?;
                }
                write!(f, "z{}", self.n)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|a| a.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            return Cyclotomic { n: self.n, c: self.c.iter().zip(&rhs.c).map(|(x, y)| x + y).collect() };
        }
        let (a, b) = self.aligned(rhs);
        Cyclotomic { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            return Cyclotomic { n: self.n, c: self.c.iter().zip(&rhs.c).map(|(x, y)| x - y).collect() };
        }
        let (a, b) = self.aligned(rhs);
        Cyclotomic { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = rhs.is_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.is_rational() {
            return rhs.scale(&r);
        }
        if self.n == rhs.n {
            return Cyclotomic::mul_same(self, rhs);
        }
        let (a, b) = self.aligned(rhs);
        Cyclotomic::mul_same(&a, &b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn i_squared() {
        let i = Cyclotomic::zeta(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one() + &Cyclotomic::zeta(3, 1)) + &Cyclotomic::zeta(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn symmetric_sum_is_real() {
        let a = &Cyclotomic::zeta(5, 1) + &Cyclotomic::zeta(5, 4);
        assert_eq!(a.conj(), a);
        assert!(a.is_rational().is_none());
    }

    #[test]
    fn embedding_preserves_value() {
        let z3 = Cyclotomic::zeta(3, 1);
        let z6sq = Cyclotomic::zeta(6, 2);
        assert_eq!(z3, z6sq);
        assert_eq!(z3.embed(12).conductor(), 12);
        assert_eq!(z3.embed(12), z3);
    }

    #[test]
    fn galois_rejects_non_units() {
        assert!(Cyclotomic::zeta(4, 1).galois(2).is_err());
        assert_eq!(Cyclotomic::zeta(8, 1).galois(3).unwrap(), Cyclotomic::zeta(8, 3));
    }

    #[test]
    fn sqrt_two_from_eighth_roots() {
        let s = &Cyclotomic::zeta(8, 1) + &Cyclotomic::zeta(8, 7);
        assert_eq!(&s * &s, Cyclotomic::from_int(2));
        assert_eq!(s.scale(&ratio(1, 2)).conj(), s.scale(&ratio(1, 2)));
    }
}

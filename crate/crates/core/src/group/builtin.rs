//! Constructor grammar for the built-in families.
//!
//! Element orderings:
//! - `cyclic(n)`: index k is t^k.
//! - `elem_abelian(p,r)`: index sum_i x_i p^i is the vector (x_0, ..., x_{r-1}).
//! - `dihedral(n)` (order 2n): index k < n is r^k, index n + k is s r^k,
//!   with s r s = r^-1.
//! - `dicyclic(n)` (order 4n): index k < 2n is a^k, index 2n + k is x a^k,
//!   with x^2 = a^n and x^-1 a x = a^-1.
//! - `quaternion8`: the ordering of `dicyclic(2)`; 0 = 1, 1 = i, 2 = -1,
//!   3 = -i, 4 = j, 5 = j i = -k, 6 = -j, 7 = k.
//! - `product(A,B)`: index a |B| + b is (a, b).

use std::fmt;

use super::{FiniteGroup, GroupError};
use crate::algebra::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    ElemAbelian(usize, usize),
    Dihedral(usize),
    Quaternion8,
    Dicyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::ElemAbelian(p, r) => write!(f, "elem_abelian({p},{r})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::ElemAbelian(p, r) => p.pow(*r as u32),
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Product(a, b) => a.order() * b.order(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let label = self.to_string();
        let bad = |m: &str| Err(GroupError::BadParameter(format!("{label}: {m}")));
        let (n, flat): (usize, Vec<usize>) = match *self {
            GroupSpec::Cyclic(n) => {
                if n < 1 {
                    return bad("n must be at least 1");
                }
                (n, (0..n * n).map(|i| (i / n + i % n) % n).collect())
            }
            GroupSpec::ElemAbelian(p, r) => {
                if !is_prime(p as u64) {
                    return bad("p must be prime");
                }
                if r < 1 {
                    return bad("r must be at least 1");
                }
                let n = p.pow(r as u32);
                let add = |mut a: usize, mut b: usize| {
                    let (mut out, mut place) = (0, 1);
                    for _ in 0..r {
                        out += ((a % p + b % p) % p) * place;
                        a /= p;
                        b /= p;
                        place *= p;
                    }
                    out
                };
                (n, (0..n * n).map(|i| add(i / n, i % n)).collect())
            }
            GroupSpec::Dihedral(n) => {
                if n < 1 {
                    return bad("n must be at least 1");
                }
                let m = |a: usize, b: usize| -> usize {
                    let (sa, ka) = (a / n, a % n);
                    let (sb, kb) = (b / n, b % n);
                    match (sa, sb) {
                        (0, 0) => (ka + kb) % n,
                        (0, _) => n + (kb + n - ka) % n,
                        (_, 0) => n + (ka + kb) % n,
                        _ => (kb + n - ka) % n,
                    }
                };
                let o = 2 * n;
                (o, (0..o * o).map(|i| m(i / o, i % o)).collect())
            }
            GroupSpec::Quaternion8 => return Ok(GroupSpec::Dicyclic(2).build()?.with_label(&label)),
            GroupSpec::Dicyclic(n) => {
                if n < 1 {
                    return bad("n must be at least 1");
                }
                let h = 2 * n;
                let m = |a: usize, b: usize| -> usize {
                    let (xa, ka) = (a / h, a % h);
                    let (xb, kb) = (b / h, b % h);
                    match (xa, xb) {
                        (0, 0) => (ka + kb) % h,
                        (0, _) => h + (kb + h - ka) % h,
                        (_, 0) => h + (ka + kb) % h,
                        _ => (n + kb + h - ka) % h,
                    }
                };
                let o = 4 * n;
                (o, (0..o * o).map(|i| m(i / o, i % o)).collect())
            }
            GroupSpec::Product(ref a, ref b) => {
                let ga = a.build()?;
                let gb = b.build()?;
                let (na, nb) = (ga.order(), gb.order());
                let o = na * nb;
                let m = |x: usize, y: usize| ga.mul(x / nb, y / nb) * nb + gb.mul(x % nb, y % nb);
                (o, (0..o * o).map(|i| m(i / o, i % o)).collect())
            }
        };
        Ok(FiniteGroup::trusted(label, n, flat, 0))
    }
}

/// Parse a constructor expression such as `product(quaternion8,cyclic(7))`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: compact.as_bytes(), i: 0 };
    let spec = p.spec()?;
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(spec)
}

pub fn builtin_group(text: &str) -> Result<FiniteGroup, GroupError> {
    parse_group_spec(text)?.build()
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> GroupError {
        GroupError::BadParameter(format!("{msg} at offset {} of group expression", self.i))
    }

    fn ident(&mut self) -> String {
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.i]).into_owned()
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, GroupError> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn args(&mut self, k: usize) -> Result<Vec<usize>, GroupError> {
        self.expect(b'(')?;
        let mut out = Vec::new();
        for j in 0..k {
            if j > 0 {
                self.expect(b',')?;
            }
            out.push(self.number()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn spec(&mut self) -> Result<GroupSpec, GroupError> {
        let name = self.ident();
        Ok(match name.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.args(1)?[0]),
            "elem_abelian" => {
                let a = self.args(2)?;
                GroupSpec::ElemAbelian(a[0], a[1])
            }
            "dihedral" => GroupSpec::Dihedral(self.args(1)?[0]),
            "dicyclic" => GroupSpec::Dicyclic(self.args(1)?[0]),
            "quaternion8" => GroupSpec::Quaternion8,
            "product" => {
                self.expect(b'(')?;
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                self.expect(b')')?;
                GroupSpec::product(a, b)
            }
            "" => return Err(self.err("expected a constructor name")),
            other => return Err(GroupError::BadParameter(format!("unknown constructor {other:?}"))),
        })
    }
}

/// The built-in catalog: cyclic, elementary abelian, dihedral and dicyclic
/// groups of order at most 32, plus Q8, Q8 x C4, Q8 x C7 and Q8 x Q8.
pub fn catalog() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let mut out: Vec<GroupSpec> = (1..=32).map(Cyclic).collect();
    for p in [2usize, 3, 5] {
        let mut r = 2;
        while p.pow(r as u32) <= 32 {
            out.push(ElemAbelian(p, r));
            r += 1;
        }
    }
    out.extend((3..=16).map(Dihedral));
    out.push(Quaternion8);
    out.extend((2..=8).map(Dicyclic));
    out.push(GroupSpec::product(Quaternion8, Cyclic(4)));
    out.push(GroupSpec::product(Quaternion8, Cyclic(7)));
    out.push(GroupSpec::product(Quaternion8, Quaternion8));
    out
}

/// Catalog members of order at most `max_order`.
pub fn catalog_up_to(max_order: usize) -> Vec<GroupSpec> {
    catalog().into_iter().filter(|s| s.order() <= max_order).collect()
}

/// Direct products A x B of catalog members (A listed no later than B)
/// with |A|, |B| > 1 and |A||B| at most `max_order`.
pub fn catalog_products(max_order: usize) -> Vec<GroupSpec> {
    let base: Vec<GroupSpec> = catalog().into_iter().filter(|s| s.order() > 1).collect();
    let mut out = Vec::new();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.order() * b.order() <= max_order {
                out.push(GroupSpec::product(a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group(g: &FiniteGroup) {
        let rows = g.table_rows();
        FiniteGroup::from_table(g.label(), rows, g.identity()).expect("valid group table");
    }

    #[test]
    fn constructors_validate() {
        for s in [
            "cyclic(1)",
            "cyclic(4)",
            "elem_abelian(2,4)",
            "elem_abelian(3,2)",
            "dihedral(1)",
            "dihedral(3)",
            "dihedral(4)",
            "quaternion8",
            "dicyclic(1)",
            "dicyclic(3)",
            "product(quaternion8,cyclic(7))",
        ] {
            check_group(&builtin_group(s).unwrap());
        }
    }

    #[test]
    fn orders_and_exponents() {
        let g = builtin_group("cyclic(4)").unwrap();
        assert_eq!((g.order(), g.exponent()), (4, 4));
        assert_eq!(builtin_group("product(quaternion8, cyclic(7))").unwrap().order(), 56);
        let e = builtin_group("elem_abelian(2,4)").unwrap();
        assert_eq!((e.order(), e.exponent()), (16, 2));
    }

    #[test]
    fn quaternion_relations() {
        let q = builtin_group("quaternion8").unwrap();
        // i^2 = j^2 = -1, and j i = -k with k = 7
        assert_eq!(q.mul(1, 1), 2);
        assert_eq!(q.mul(4, 4), 2);
        assert_eq!(q.mul(4, 1), 5);
        assert_eq!(q.mul(1, 4), 7);
        assert_eq!(q.mul(7, 7), 2);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(builtin_group("cyclic(0)"), Err(GroupError::BadParameter(_))));
        assert!(matches!(builtin_group("elem_abelian(4,2)"), Err(GroupError::BadParameter(_))));
        assert!(builtin_group("cyclic(4").is_err());
        assert_eq!(parse_group_spec("product(cyclic(2), dihedral(3))").unwrap().to_string(), "product(cyclic(2),dihedral(3))");
    }
}

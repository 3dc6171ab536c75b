//! Small-prime arithmetic for the modular eigenvector step of the
//! character table computation. Values are kept in `0..p` with `p < 2^31`.

use super::is_prime;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < (1 << 31));
        Fp { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer.
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn primitive_root(self) -> u64 {
        let factors = super::prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("every prime field has a primitive root")
    }

    /// Null space basis of a dense matrix given by rows.
    pub fn kernel(self, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(pr, r);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; ncols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, m[row][free]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial (low degree first, monic) via Hessenberg reduction.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else {
                continue;
            };
            if piv != c + 1 {
                h.swap(piv, c + 1);
                for row in h.iter_mut() {
                    row.swap(piv, c + 1);
                }
            }
            let inv = self.inv(h[c + 1][c]);
            for i in c + 2..n {
                if h[i][c] == 0 {
                    continue;
                }
                let f = self.mul(h[i][c], inv);
                for j in 0..n {
                    let t = self.mul(f, h[c + 1][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[i]);
                    row[c + 1] = self.add(row[c + 1], t);
                }
            }
        }
        // p_k = characteristic polynomial of the leading k x k block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let mut pk = vec![0u64; k + 1];
            let prev = &polys[k - 1];
            // (x - h[k-1][k-1]) * p_{k-1}
            for (i, &c) in prev.iter().enumerate() {
                pk[i + 1] = self.add(pk[i + 1], c);
                let t = self.mul(h[k - 1][k - 1], c);
                pk[i] = self.sub(pk[i], t);
            }
            let mut prod = 1u64;
            for i in (1..k).rev() {
                prod = self.mul(prod, h[i][i - 1]);
                if prod == 0 {
                    break;
                }
                let coef = self.mul(prod, h[i - 1][k - 1]);
                for (j, &c) in polys[i - 1].iter().enumerate() {
                    let t = self.mul(coef, c);
                    pk[j] = self.sub(pk[j], t);
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    /// All roots in the prime field, by exhaustive evaluation.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.p)
            .filter(|&x| poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c)) == 0)
            .collect()
    }
}

/// Smallest prime `p > lower` with `p = 1 (mod m)`.
pub fn prime_congruent_one(m: u64, lower: u64) -> u64 {
    let mut p = (lower / m + 1) * m + 1;
    while !is_prime(p) {
        p += m;
    }
    p
}

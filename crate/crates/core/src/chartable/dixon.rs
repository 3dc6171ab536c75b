//! Dixon's method: simultaneous eigenvectors of the class multiplication
//! matrices modulo a prime p = 1 (mod exp G), then an exact lift of each
//! character value to a sum of e-th roots of unity.

use super::ClassData;
use crate::algebra::modp::{prime_congruent_one, Fp};
use crate::algebra::{rat, Cyclotomic};
use crate::group::FiniteGroup;

/// Structure constants: `m[j][k][l]` counts x in class j with x^-1 z_l in class k.
fn class_matrices(g: &FiniteGroup, cl: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let k = cl.len();
    let mut m = vec![vec![vec![0u64; k]; k]; k];
    for (l, &z) in cl.representatives.iter().enumerate() {
        for x in g.elements() {
            let y = g.mul(g.inv(x), z);
            m[cl.class_of[x]][cl.class_of[y]][l] += 1;
        }
    }
    m
}

/// Row-reduce a set of vectors; returns the echelon rows and their pivot columns.
fn echelon(f: Fp, vecs: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut rows = vecs;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(p, r);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for j in 0..ncols {
                    let s = f.mul(t, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Row-reduced basis of a subspace with its pivot columns.
type Space = (Vec<Vec<u64>>, Vec<usize>);

/// Split every space into eigenspaces of `mat` (which leaves each space invariant).
fn split(f: Fp, mat: &[Vec<u64>], spaces: Vec<Space>) -> Option<Vec<Space>> {
    let mut out = Vec::new();
    for (basis, pivots) in spaces {
        let d = basis.len();
        if d == 1 {
            out.push((basis, pivots));
            continue;
        }
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|b| {
                mat.iter()
                    .map(|row| row.iter().zip(b).fold(0, |acc, (&a, &x)| f.add(acc, f.mul(a, x))))
                    .collect()
            })
            .collect();
        // a[i][t] = coordinate i of mat * basis[t]
        let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|t| images[t][pivots[i]]).collect()).collect();
        let mut total = 0;
        for lambda in f.roots(&f.charpoly(&a)) {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|t| if i == t { f.sub(a[i][t], lambda) } else { a[i][t] }).collect())
                .collect();
            let ker = f.kernel(&shifted, d);
            total += ker.len();
            let vecs: Vec<Vec<u64>> = ker
                .iter()
                .map(|x| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (t, &xt) in x.iter().enumerate() {
                        for (vi, &bi) in v.iter_mut().zip(&basis[t]) {
                            *vi = f.add(*vi, f.mul(xt, bi));
                        }
                    }
                    v
                })
                .collect();
            out.push(echelon(f, vecs));
        }
        if total != d {
            return None;
        }
    }
    Some(out)
}

/// One attempt with a fixed prime; `None` means the prime was unlucky.
fn attempt(g: &FiniteGroup, cl: &ClassData, mats: &[Vec<Vec<u64>>], p: u64) -> Option<Vec<Vec<Cyclotomic>>> {
    let f = Fp::new(p);
    let k = cl.len();
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    let ident: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![(ident, (0..k).collect::<Vec<_>>())];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        spaces = split(f, m, spaces)?;
    }
    if spaces.len() != k || spaces.iter().any(|(b, _)| b.len() != 1) {
        return None;
    }
    let omega = f.pow(f.primitive_root(), (p - 1) / e);
    let powers: Vec<Vec<usize>> = (0..k).map(|l| (0..e).map(|t| cl.power_class(g, l, t as i64)).collect()).collect();
    let mut rows = Vec::with_capacity(k);
    for (basis, _) in spaces {
        let v = &basis[0];
        if v[0] == 0 {
            return None;
        }
        let inv0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        // sum_l w_l w_{l*} / |C_l| = |G| / chi(1)^2
        let s = (0..k).fold(0, |acc, l| {
            let t = f.mul(f.mul(w[l], w[cl.inverse_class[l]]), f.inv(cl.sizes[l] as u64 % p));
            f.add(acc, t)
        });
        if s == 0 {
            return None;
        }
        let d2 = f.mul(n % p, f.inv(s));
        let d = (1..).take_while(|d| d * d <= n).find(|d| d * d == d2)?;
        let vals: Vec<u64> = (0..k).map(|l| f.mul(f.mul(w[l], d), f.inv(cl.sizes[l] as u64 % p))).collect();
        let inv_e = f.inv(e % p);
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let mut terms = Vec::new();
            for s_exp in 0..e {
                let mut acc = 0;
                for t in 0..e {
                    let root = f.pow(omega, (e - (s_exp * t) % e) % e);
                    acc = f.add(acc, f.mul(vals[powers[l][t as usize]], root));
                }
                let m = f.mul(acc, inv_e);
                if m > d {
                    return None;
                }
                if m > 0 {
                    terms.push((s_exp as i64, rat(m as i64)));
                }
            }
            row.push(Cyclotomic::from_terms(e, terms));
        }
        rows.push(row);
    }
    Some(rows)
}

/// Irreducible character values per class, over Q(zeta_e), unsorted and
/// unvalidated. Tries successive primes until one separates all characters.
pub(super) fn irreducible_values(g: &FiniteGroup, cl: &ClassData) -> Option<Vec<Vec<Cyclotomic>>> {
    let mats = class_matrices(g, cl);
    let e = g.exponent() as u64;
    let mut p = prime_congruent_one(e, (2 * g.order() as u64).max(64));
    for _ in 0..8 {
        if let Some(rows) = attempt(g, cl, &mats, p) {
            return Some(rows);
        }
        p = prime_congruent_one(e, p);
    }
    None
}

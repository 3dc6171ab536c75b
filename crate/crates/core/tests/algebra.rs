use num_traits::{One, Zero};
use orbitsym::algebra::{ratio, Cyclotomic, Rational};
use orbitsym::io::json::{decode_cyclotomic, decode_matrix, decode_rational, encode_cyclotomic, encode_matrix, encode_rational};
use orbitsym::RationalMatrix;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

/// A random element of Q(zeta_n) for n among a few conductors.
fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u64, 3, 4, 5, 8, 12]), prop::collection::vec((0i64..24, rational()), 0..5))
        .prop_map(|(n, terms)| Cyclotomic::from_terms(n, terms))
}

/// Complex value via zeta_n = exp(2 pi i / n), an independent evaluation.
fn complex(c: &Cyclotomic) -> (f64, f64) {
    let n = c.conductor() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, a) in c.terms() {
        let x = num_traits::ToPrimitive::to_f64(a).unwrap();
        let t = 2.0 * std::f64::consts::PI * k as f64 / n;
        re += x * t.cos();
        im += x * t.sin();
    }
    (re, im)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, m), n)
        .prop_map(|rows| RationalMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| ratio(x, 1)).collect()).collect()).unwrap())
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Cyclotomic::zero());
        prop_assert_eq!(a.clone() * Cyclotomic::one(), a.clone());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
    }

    #[test]
    fn arithmetic_agrees_with_complex_evaluation(a in cyclotomic(), b in cyclotomic()) {
        let (x, y) = (complex(&a), complex(&b));
        prop_assert!(close(complex(&(a.clone() * b.clone())), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
        prop_assert!(close(complex(&(a.clone() + b.clone())), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(complex(&a.conj()), (x.0, -x.1)));
    }

    #[test]
    fn equality_is_independent_of_conductor(a in cyclotomic(), m in 1u64..4) {
        let big = a.conductor() * m;
        let e = a.embed(big);
        prop_assert_eq!(e.conductor(), big);
        prop_assert_eq!(&e, &a);
        prop_assert!(close(complex(&e), complex(&a)));
    }

    #[test]
    fn rational_values_round_trip(r in rational(), n in prop::sample::select(vec![1u64, 4, 6, 9])) {
        let c = Cyclotomic::from_rational(r.clone()).embed(n);
        prop_assert_eq!(c.is_rational(), Some(r.clone()));
        // a + conj(a) is always real, and rational when a is in Q(i) or Q(zeta_3)
        let z = Cyclotomic::zeta(4, 1) * Cyclotomic::from_rational(r.clone());
        prop_assert_eq!((z.clone() + z.conj()).is_rational(), Some(Rational::zero()));
    }

    #[test]
    fn inverse_and_rank_nullity(a in (1usize..5).prop_flat_map(|n| matrix(n, n)), b in (1usize..4, 1usize..6).prop_flat_map(|(n, m)| matrix(n, m))) {
        if let Some(inv) = a.inverse() {
            prop_assert!(inv.mul(&a).unwrap().is_identity());
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert_eq!(a.rank(), a.rows());
        } else {
            prop_assert!(a.rank() < a.rows());
        }
        let ker = b.kernel();
        prop_assert_eq!(b.rank() + ker.len(), b.cols());
        for v in &ker {
            prop_assert!(b.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn json_codecs_round_trip(r in rational(), c in cyclotomic(), m in (1usize..4, 1usize..4).prop_flat_map(|(n, k)| matrix(n, k))) {
        prop_assert_eq!(decode_rational(&encode_rational(&r), "").unwrap(), r);
        let back = decode_cyclotomic(&encode_cyclotomic(&c), "").unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(decode_matrix(&encode_matrix(&m), "").unwrap(), m);
    }
}

#[test]
fn cyclotomic_json_shape() {
    let z = Cyclotomic::zeta(3, 1);
    assert_eq!(encode_cyclotomic(&z), serde_json::json!({"conductor": 3, "coeffs": [[1, "1"]]}));
    // zeta_3^2 = -1 - zeta_3
    assert_eq!(encode_cyclotomic(&Cyclotomic::zeta(3, 2)), serde_json::json!({"conductor": 3, "coeffs": [[0, "-1"], [1, "-1"]]}));
    assert_eq!(encode_cyclotomic(&Cyclotomic::from_rational(ratio(-3, 4))), serde_json::json!("-3/4"));
    assert_eq!(decode_rational(&serde_json::json!(7), "").unwrap(), ratio(7, 1));
    let e = decode_cyclotomic(&serde_json::json!({"conductor": 3, "coeffs": [[1, "q"]]}), "/x").unwrap_err();
    assert_eq!(e.pointer, "/x/coeffs/0/1");
}

use std::sync::OnceLock;

use num_traits::{One, Zero};
use orbitsym::algebra::rat;
use orbitsym::chartable::{Character, CharacterTable};
use orbitsym::group::{builtin_group, catalog_up_to};
use orbitsym::io::json::{decode_table, encode_table};
use orbitsym::Cyclotomic;

fn tables(max: usize) -> Vec<CharacterTable> {
    static ALL: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    ALL.get_or_init(|| catalog_up_to(32).iter().map(|s| CharacterTable::compute(&s.build().unwrap()).unwrap()).collect())
        .iter()
        .filter(|t| t.group().order() <= max)
        .cloned()
        .collect()
}

#[test]
fn orthogonality_relations_hold_exactly() {
    for t in tables(32) {
        let g = t.group();
        let c = t.classes();
        let irr = t.irreducibles();
        assert_eq!(irr.len(), c.len(), "{}", g.label());
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                let ip = t.inner_product(a, b).unwrap();
                assert_eq!(ip, Cyclotomic::from_int(i64::from(i == j)), "{} rows {i},{j}", g.label());
            }
        }
        let columns: Vec<Vec<Cyclotomic>> = (0..c.len()).map(|x| irr.iter().map(|psi| psi.at_class(x).clone()).collect()).collect();
        let ones = vec![1; irr.len()];
        for x in 0..c.len() {
            for y in 0..c.len() {
                let s = Cyclotomic::hermitian_sum(&columns[x], &columns[y], &ones);
                let want = if x == y { (g.order() / c.sizes[x]) as i64 } else { 0 };
                assert_eq!(s, Cyclotomic::from_int(want), "{} columns {x},{y}", g.label());
            }
        }
    }
}

#[test]
fn indicators_degrees_and_regular_character() {
    for t in tables(32) {
        let g = t.group();
        let rho = t.regular();
        let mut sum = Character::zero(t.classes().len());
        for (i, psi) in t.irreducibles().iter().enumerate() {
            let fs = t.fs_indicators()[i];
            assert!((-1..=1).contains(&fs));
            assert_eq!(fs == 0, !psi.is_real(), "{}", g.label());
            assert_eq!(t.real_schur_index(i), if fs == -1 { 2 } else { 1 });
            sum = sum.add(&psi.scale(&psi.degree().is_rational().unwrap()));
        }
        assert_eq!(sum, rho);
        assert_eq!(rho.at_class(0), &Cyclotomic::from_int(g.order() as i64));
        assert!((1..t.classes().len()).all(|c| rho.at_class(c).is_zero()));
        let ideal_sum = t.rational_ideal_characters().iter().fold(Character::zero(t.classes().len()), |a, b| a.add(b));
        assert_eq!(ideal_sum, rho, "{}", g.label());
    }
}

#[test]
fn abelian_characters_are_homomorphisms() {
    for t in tables(32).into_iter().filter(|t| t.group().is_abelian()) {
        let g = t.group();
        assert_eq!(t.irreducibles().len(), g.order());
        for chi in t.irreducibles() {
            // multiplicativity against generators implies it everywhere
            for a in g.elements() {
                for b in g.generators() {
                    let lhs = t.value_at(chi, g.mul(a, b)).clone();
                    assert_eq!(lhs, t.value_at(chi, a).clone() * t.value_at(chi, b).clone(), "{}", g.label());
                }
            }
        }
    }
}

#[test]
fn class_counts_match_brute_force() {
    for t in tables(32) {
        let g = t.group();
        let mut seen = vec![false; g.order()];
        let mut count = 0;
        for a in g.elements() {
            if seen[a] {
                continue;
            }
            count += 1;
            for x in g.elements() {
                seen[g.conj(a, x)] = true;
            }
        }
        assert_eq!(t.classes().len(), count, "{}", g.label());
    }
}

#[test]
fn known_tables() {
    let s3 = CharacterTable::compute(&builtin_group("dihedral(3)").unwrap()).unwrap();
    let degrees: Vec<_> = s3.irreducibles().iter().map(|c| c.degree().clone()).collect();
    assert_eq!(degrees, vec![Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::from_int(2)]);
    let q8 = CharacterTable::compute(&builtin_group("quaternion8").unwrap()).unwrap();
    assert_eq!(q8.fs_indicators(), &[1, 1, 1, 1, -1]);
    let d4 = CharacterTable::compute(&builtin_group("dihedral(4)").unwrap()).unwrap();
    assert_eq!(d4.fs_indicators(), &[1, 1, 1, 1, 1]);
    let c3 = CharacterTable::compute(&builtin_group("cyclic(3)").unwrap()).unwrap();
    assert_eq!(c3.fs_indicators(), &[1, 0, 0]);
    assert_eq!(c3.rational_ideal_characters().len(), 2);
}

#[test]
fn tables_round_trip_through_json() {
    for t in tables(32) {
        let v = encode_table(&t);
        assert_eq!(decode_table(&v).unwrap(), t, "{}", t.group().label());
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::to_string(&encode_table(&decode_table(&serde_json::from_str(&text).unwrap()).unwrap())).unwrap(), text);
    }
}

#[test]
fn ingested_tables_are_revalidated() {
    let t = CharacterTable::compute(&builtin_group("dihedral(4)").unwrap()).unwrap();
    let mut v = encode_table(&t);
    v["irreducibles"][4][1] = serde_json::json!("1");
    let e = decode_table(&v).unwrap_err();
    assert_eq!(e.pointer, "/irreducibles");
    let mut v = encode_table(&t);
    v["irreducibles"][2][0] = serde_json::json!({"conductor": 4, "coeffs": [[1, "zz"]]});
    assert_eq!(decode_table(&v).unwrap_err().pointer, "/irreducibles/2/0/coeffs/0/1");
    let mut v = encode_table(&t);
    v["irreducibles"].as_array_mut().unwrap().pop();
    assert!(decode_table(&v).is_err());
    assert!(t.inner_product(&t.irreducibles()[4], &t.irreducibles()[4].scale(&rat(2))).unwrap() == Cyclotomic::from_int(2));
}

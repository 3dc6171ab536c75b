use num_bigint::BigUint;
use num_traits::One;
use orbitsym::algebra::rat;
use orbitsym::chartable::CharacterTable;
use orbitsym::group::{builtin_group, GPermutation};
use orbitsym::oracle::{
    annihilator_symmetry_check, closure_iterate, ideal_component_rep, linear_symmetry_group, orbit,
    regular_representation, rep_from_generators, sample_generic_point, verify_theory_vs_oracle, OracleError,
    RationalRepresentation, VerifyOptions,
};
use orbitsym::{Cyclotomic, Rational, RationalMatrix};

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
}

fn pt(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

fn rotation() -> RationalRepresentation {
    let g = builtin_group("cyclic(4)").unwrap();
    rep_from_generators(&g, &[(1, m(&[&[0, -1], &[1, 0]]))]).unwrap()
}

fn table(s: &str) -> CharacterTable {
    CharacterTable::compute(&builtin_group(s).unwrap()).unwrap()
}

#[test]
fn representations_from_generators() {
    let r = rotation();
    assert_eq!(r.dim(), 2);
    assert_eq!(r.matrix(2), &m(&[&[-1, 0], &[0, -1]]));
    let c2 = builtin_group("cyclic(2)").unwrap();
    assert_eq!(rep_from_generators(&c2, &[(1, m(&[&[2]]))]).unwrap_err(), OracleError::RelationViolated(1, 1));
    let swap = rep_from_generators(&c2, &[(1, m(&[&[0, 1], &[1, 0]]))]).unwrap();
    assert_eq!(swap.dim(), 2);
    assert_eq!(rep_from_generators(&c2, &[(1, m(&[&[0, 0], &[1, 0]]))]).unwrap_err(), OracleError::Singular(1));
    let c4 = builtin_group("cyclic(4)").unwrap();
    assert_eq!(rep_from_generators(&c4, &[(2, m(&[&[-1]]))]).unwrap_err(), OracleError::NotGenerating);
}

#[test]
fn ideal_components() {
    let c4 = table("cyclic(4)");
    let lambda = c4.irreducibles().iter().find(|c| c.values()[1] == Cyclotomic::zeta(4, 1)).unwrap().clone();
    let gamma = lambda.add(&lambda.conj());
    let r = ideal_component_rep(&c4, &gamma).unwrap();
    assert_eq!(r.dim(), 2);
    assert_eq!(r.character(&c4), gamma);
    let r = ideal_component_rep(&c4, c4.trivial()).unwrap();
    assert!(r.matrices().iter().all(|a| a == &m(&[&[1]])));
    assert!(matches!(ideal_component_rep(&c4, &lambda), Err(OracleError::NotRationalIdealCharacter(_))));

    let q8 = table("quaternion8");
    let two_alpha = q8.irreducibles()[4].scale(&rat(2));
    let r = ideal_component_rep(&q8, &two_alpha).unwrap();
    assert_eq!(r.dim(), 4);
    assert_eq!(r.character(&q8), two_alpha);
    for chi in q8.rational_ideal_characters() {
        assert_eq!(ideal_component_rep(&q8, &chi).unwrap().character(&q8), chi);
    }
}

#[test]
fn orbits() {
    let r = rotation();
    let o = orbit(&r, &pt(&[1, 0])).unwrap();
    assert_eq!(o.points.len(), 4);
    assert!(o.stabilizer.is_trivial() && o.spans);
    let z = orbit(&r, &pt(&[0, 0])).unwrap();
    assert_eq!(z.points.len(), 1);
    assert!(z.stabilizer.is_whole() && !z.spans);
    let reg = regular_representation(&builtin_group("cyclic(3)").unwrap());
    let o = orbit(&reg, &pt(&[1, 0, 0])).unwrap();
    assert_eq!(o.points.len(), 3);
    assert!(o.spans);
    assert!(matches!(orbit(&reg, &pt(&[1])), Err(OracleError::DimensionMismatch(_))));
}

#[test]
fn linear_symmetry_examples() {
    let o = orbit(&rotation(), &pt(&[1, 0])).unwrap();
    assert_eq!(linear_symmetry_group(&o, 1 << 20).unwrap().order, BigUint::from(8u32));

    let v4 = builtin_group("elem_abelian(2,2)").unwrap();
    let signs = rep_from_generators(&v4, &[(1, m(&[&[-1, 0], &[0, 1]])), (2, m(&[&[1, 0], &[0, -1]]))]).unwrap();
    let rect = orbit(&signs, &pt(&[1, 2])).unwrap();
    let gl = linear_symmetry_group(&rect, 1 << 20).unwrap();
    assert_eq!(gl.order, BigUint::from(8u32));
    for (a, p) in gl.matrices().iter().zip(&gl.orbit_permutations) {
        for (i, x) in rect.points.iter().enumerate() {
            assert_eq!(a.mul_vec(x).unwrap(), rect.points[p.apply(i)]);
        }
    }

    let reg = regular_representation(&builtin_group("cyclic(3)").unwrap());
    let o = orbit(&reg, &pt(&[3, -1, 7])).unwrap();
    assert_eq!(linear_symmetry_group(&o, 1 << 20).unwrap().order, BigUint::from(6u32));
    let z = orbit(&reg, &pt(&[1, 1, 1])).unwrap();
    assert_eq!(linear_symmetry_group(&z, 1 << 20).unwrap_err(), OracleError::NotSpanning);
}

#[test]
fn annihilator_examples() {
    let o = orbit(&rotation(), &pt(&[1, 0])).unwrap();
    assert!(annihilator_symmetry_check(&o, &GPermutation::identity(4)).unwrap());
    assert!(annihilator_symmetry_check(&o, &GPermutation::from_images(vec![0, 3, 2, 1]).unwrap()).unwrap());
    assert!(!annihilator_symmetry_check(&o, &GPermutation::transposition(4, 0, 1)).unwrap());
}

#[test]
fn generic_points() {
    let r = rotation();
    let o = sample_generic_point(&r, 1, 10).unwrap();
    assert!(o.spans && o.stabilizer.is_trivial());
    assert_eq!(sample_generic_point(&r, 1, 10).unwrap().base_point, o.base_point);

    let d4 = table("dihedral(4)");
    let sign = d4.irreducibles().iter().find(|c| c.degree() == &Cyclotomic::one() && !c.is_zero() && c != &d4.trivial()).unwrap();
    let r = ideal_component_rep(&d4, sign).unwrap();
    let o = sample_generic_point(&r, 7, 10).unwrap();
    assert_eq!(o.stabilizer, r.kernel());
    assert_eq!(o.stabilizer.order(), 4);

    let c2 = builtin_group("cyclic(2)").unwrap();
    let empty = rep_from_generators(&c2, &[(1, RationalMatrix::zeros(0, 0))]).unwrap();
    assert_eq!(sample_generic_point(&empty, 0, 10).unwrap_err(), OracleError::NotCyclic);
}

#[test]
fn theory_agrees_with_oracle() {
    let c4 = table("cyclic(4)");
    let r = rotation();
    let rep = verify_theory_vs_oracle(&c4, &r, &r.character(&c4), VerifyOptions::default()).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.theory_order, BigUint::from(8u32));
    assert!(rep.trials.iter().all(|t| t.oracle_order == BigUint::from(8u32)));

    for s in ["cyclic(5)", "dihedral(3)"] {
        let t = table(s);
        let reg = regular_representation(t.group());
        let rep = verify_theory_vs_oracle(&t, &reg, &t.regular(), VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{s}");
    }

    let q8 = table("quaternion8");
    let two_alpha = q8.irreducibles()[4].scale(&rat(2));
    let r = ideal_component_rep(&q8, &two_alpha).unwrap();
    let rep = verify_theory_vs_oracle(&q8, &r, &two_alpha, VerifyOptions::default()).unwrap();
    // v, iv, jv, kv is a basis and Q8 v is its cross-polytope
    assert_eq!(rep.theory_order, BigUint::from(384u32));
    assert!(rep.passed());
}

#[test]
fn closure_chains() {
    let big = |xs: &[u32]| xs.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    let r = rotation();
    let o = orbit(&r, &pt(&[1, 0])).unwrap();
    let c = closure_iterate(&r, &o, VerifyOptions::default()).unwrap();
    assert_eq!(c.chain, big(&[4, 8, 8]));
    assert!(c.stabilized && c.steps() == 1);

    let d4 = builtin_group("dihedral(4)").unwrap();
    let rot = d4.elements().find(|&x| d4.element_order(x) == 4).unwrap();
    let refl = d4.elements().find(|&x| d4.element_order(x) == 2 && !d4.cyclic_subgroup(rot).contains(&x)).unwrap();
    let r = rep_from_generators(&d4, &[(rot, m(&[&[0, -1], &[1, 0]])), (refl, m(&[&[1, 0], &[0, -1]]))]).unwrap();
    let o = sample_generic_point(&r, 3, 10).unwrap();
    assert_eq!(closure_iterate(&r, &o, VerifyOptions::default()).unwrap().chain, big(&[8, 8]));

    let reg = regular_representation(&builtin_group("cyclic(2)").unwrap());
    let o = orbit(&reg, &pt(&[1, 0])).unwrap();
    assert_eq!(closure_iterate(&reg, &o, VerifyOptions::default()).unwrap().chain, big(&[2, 2]));
}

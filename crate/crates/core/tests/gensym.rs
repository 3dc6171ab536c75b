use num_bigint::BigUint;
use num_traits::{One, Zero};
use orbitsym::algebra::rat;
use orbitsym::chartable::{Character, CharacterTable};
use orbitsym::gensym::{
    explore_abelian_closure, hat_character, ideal_part, is_generically_closed, sym_group_of_character,
    sym_of_irreducible, GensymError, SearchOptions,
};
use orbitsym::group::{builtin_group, factorial, GPermutation};
use orbitsym::Cyclotomic;

fn table(s: &str) -> CharacterTable {
    CharacterTable::compute(&builtin_group(s).unwrap()).unwrap()
}

/// The irreducible taking value `f(rep)` on each class representative.
fn irreducible_by(t: &CharacterTable, f: impl Fn(usize) -> Cyclotomic) -> Character {
    let want = Character::new(t.classes().representatives.iter().map(|&r| f(r)).collect()).embed(t.conductor());
    t.irreducibles().iter().find(|c| **c == want).expect("irreducible present").clone()
}

fn order_of(t: &CharacterTable, chi: &Character) -> BigUint {
    sym_group_of_character(t, chi, SearchOptions::default()).unwrap().order().clone()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn rotation_character_of_c4_has_dihedral_symmetry() {
    let t = table("cyclic(4)");
    let lambda = irreducible_by(&t, |k| Cyclotomic::zeta(4, k as i64));
    let chi = lambda.add(&lambda.conj());
    let r = sym_group_of_character(&t, &chi, SearchOptions::default()).unwrap();
    assert_eq!(r.order(), &big(8));
    assert!(!r.generically_closed);
    // inversion t -> t^3 is a generic symmetry with hat value 0
    let inv = GPermutation::from_images(vec![0, 3, 2, 1]).unwrap();
    assert!(r.contains(&inv));
    assert_eq!(hat_character(&t, &chi, &inv).unwrap(), Cyclotomic::zero());
    let swap = GPermutation::transposition(4, 0, 1);
    assert!(!r.contains(&swap));
    assert_eq!(hat_character(&t, &chi, &swap), Err(GensymError::NotAGenericSymmetry));
}

#[test]
fn rectangle_character_has_order_eight() {
    let t = table("elem_abelian(2,2)");
    let sign = |bit: usize| move |x: usize| Cyclotomic::from_int(if x >> bit & 1 == 1 { -1 } else { 1 });
    let chi = irreducible_by(&t, sign(0)).add(&irreducible_by(&t, sign(1)));
    assert_eq!(order_of(&t, &chi), big(8));
}

#[test]
fn regular_character_gives_full_symmetric_group() {
    for s in ["cyclic(3)", "dihedral(3)", "quaternion8", "product(quaternion8,quaternion8)"] {
        let t = table(s);
        let r = sym_group_of_character(&t, &t.regular(), SearchOptions::default()).unwrap();
        assert_eq!(r.order(), &factorial(t.group().order()), "{s}");
        assert_eq!(r.order_expr_string(), format!("{}!", t.group().order()));
    }
}

#[test]
fn irreducible_closed_forms_match_search() {
    let c5 = table("cyclic(5)");
    let faithful = irreducible_by(&c5, |k| Cyclotomic::zeta(5, k as i64));
    assert_eq!(sym_of_irreducible(&c5, &faithful).unwrap().order(), &big(5));
    assert_eq!(order_of(&c5, &faithful), big(5));
    assert_eq!(sym_of_irreducible(&c5, c5.trivial()).unwrap().order(), &factorial(5));

    let q8 = table("quaternion8");
    let alpha = q8.irreducibles()[4].clone();
    assert_eq!(sym_of_irreducible(&q8, &alpha).unwrap().order(), &big(8));
    assert_eq!(order_of(&q8, &alpha), big(8));
    assert!(matches!(sym_of_irreducible(&q8, &alpha.scale(&rat(2))), Err(GensymError::NotIrreducible)));

    // every irreducible of a few groups: closed form equals the search
    for s in ["dihedral(4)", "dicyclic(3)", "cyclic(6)", "elem_abelian(2,3)"] {
        let t = table(s);
        for psi in t.irreducibles() {
            let closed = sym_of_irreducible(&t, psi).unwrap();
            let searched = orbitsym::gensym::intersect_generic_symmetries(&t, std::slice::from_ref(psi), SearchOptions::default())
                .unwrap();
            assert_eq!(closed.order(), searched.order(), "{s}");
        }
    }
}

#[test]
fn ideal_part_examples() {
    let q8 = table("quaternion8");
    let d = ideal_part(&q8, &q8.regular()).unwrap();
    assert!(d.residual.is_zero() && d.n.is_whole());
    let d = ideal_part(&q8, &q8.irreducibles()[4]).unwrap();
    assert!(d.chi_i.is_zero() && d.n.is_trivial());
    let c4 = table("cyclic(4)");
    let lambda = irreducible_by(&c4, |k| Cyclotomic::zeta(4, k as i64));
    let chi = lambda.add(&lambda.conj());
    let d = ideal_part(&c4, &chi).unwrap();
    assert_eq!(d.chi_i, chi);
    assert!(d.n.is_whole());
    assert!(matches!(ideal_part(&c4, &lambda.scale(&rat(2))), Err(GensymError::NotCyclicModuleCharacter(_))));
    assert!(matches!(
        ideal_part(&c4, &Character::zero(4).embed(4)),
        Err(GensymError::NotCyclicModuleCharacter(_))
    ));
}

#[test]
fn closure_of_s3_and_c4() {
    let s3 = table("dihedral(3)");
    let two_dim = s3.irreducibles()[2].clone();
    assert!(is_generically_closed(&s3, &two_dim, SearchOptions::default()).unwrap());
    let c4 = table("cyclic(4)");
    let lambda = irreducible_by(&c4, |k| Cyclotomic::zeta(4, k as i64));
    assert!(!is_generically_closed(&c4, &lambda.add(&lambda.conj()), SearchOptions::default()).unwrap());
}

#[test]
fn abelian_exploration() {
    let t = table("elem_abelian(3,2)");
    let r = explore_abelian_closure(&t, 1 << 12, SearchOptions::default()).unwrap();
    assert!(r.found.is_none());
    assert_eq!(r.tested, 511);
    for n in [2, 3, 5, 7] {
        let t = table(&format!("cyclic({n})"));
        let (_, chi) = explore_abelian_closure(&t, 1 << 12, SearchOptions::default()).unwrap().found.unwrap();
        assert_eq!(chi.degree(), &Cyclotomic::one());
        assert!(t.kernel_of(&chi).is_trivial());
    }
    let q8 = table("quaternion8");
    assert!(matches!(explore_abelian_closure(&q8, 10, SearchOptions::default()), Err(GensymError::NotAbelian)));
}

#[test]
fn lambda_values_of_hat_character() {
    let t = table("dihedral(4)");
    let g = t.group();
    for chi in [t.regular(), t.irreducibles()[4].clone(), t.irreducibles()[1].add(&t.irreducibles()[4])] {
        for x in g.elements() {
            let h = hat_character(&t, &chi, &g.left_translation(x)).unwrap();
            assert_eq!(&h, t.value_at(&chi, x));
        }
    }
}

fn closed_case(group: &str, expr: &str) -> BigUint {
    let spec = orbitsym::group::parse_group_spec(group).unwrap();
    let t = CharacterTable::compute(&spec.build().unwrap()).unwrap();
    let chi = orbitsym::io::charexpr::CharEvaluator::new(&t, Some(spec)).parse(expr).unwrap();
    sym_group_of_character(&t, &chi, SearchOptions::default()).unwrap().order().clone()
}

#[test]
fn quaternion_product_characters_are_generically_closed() {
    let o = closed_case(
        "product(quaternion8,cyclic(4))",
        "alpha x (lambda+conj(lambda)) + 2*alpha x 1 + 1 x (lambda+conj(lambda))",
    );
    assert_eq!(o, big(32));
    let o = closed_case("product(quaternion8,quaternion8)", "alpha x alpha + 2*alpha x 1 + 1 x 2*alpha");
    assert_eq!(o, big(64));
}

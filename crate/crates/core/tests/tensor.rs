use grp_core::enumerate::Limits;
use grp_core::group::{FiniteGroup, Hom};
use grp_core::presentation::Presentation;
use grp_core::tensor::{
    central_torsion_power_check, exterior_square, j_subgroup, nabla, schur_multiplier,
    tensor_square, xi_hom, ExtensionData,
};
use grp_core::Error;

fn group(text: &str) -> FiniteGroup {
    FiniteGroup::from_presentation(&Presentation::parse(text).unwrap(), Limits::default()).unwrap()
}

fn q8() -> FiniteGroup {
    group("< i, j | i^4, i^2 j^-2, j^-1 i j i >")
}

fn h() -> FiniteGroup {
    group("< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >")
}

fn s3() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn cyclic_three_is_multiplicative() {
    let g = FiniteGroup::cyclic(3);
    let t = tensor_square(&g, lim()).unwrap();
    assert_eq!(t.carrier().order(), 3);
    let u = t.pair(1, 1);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(t.pair(i, j), t.carrier().pow(u, (i * j) as i64));
        }
    }
    assert!(nabla(&t).unwrap().is_whole());
    assert!(j_subgroup(&t).unwrap().is_whole());
    assert!(t.commutator_hom().unwrap().image().is_trivial());
}

#[test]
fn trivial_source() {
    let t = tensor_square(&FiniteGroup::trivial(), lim()).unwrap();
    assert_eq!(t.carrier().order(), 1);
    assert!(j_subgroup(&t).unwrap().is_trivial());
}

#[test]
fn binary_tetrahedral_square() {
    let g = h();
    let t = tensor_square(&g, lim()).unwrap();
    let oracle = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &q8());
    assert_eq!(t.carrier().fingerprint(), oracle.fingerprint());
    assert_eq!(t.commutator_hom().unwrap().image().order(), 8);
    assert_eq!(j_subgroup(&t).unwrap().order(), 3);
    let e = exterior_square(&g, lim()).unwrap();
    assert_eq!(e.carrier().order(), 8);
    assert_eq!(nabla(&t).unwrap().order(), t.carrier().order() / e.carrier().order());
}

#[test]
fn exterior_squares_of_cyclic_groups_vanish() {
    for n in 1..=6 {
        let e = exterior_square(&FiniteGroup::cyclic(n), lim()).unwrap();
        assert_eq!(e.carrier().order(), 1, "n = {n}");
        assert!(schur_multiplier(&FiniteGroup::cyclic(n), lim()).unwrap().is_trivial());
    }
}

#[test]
fn small_multipliers() {
    let z3z3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3));
    assert_eq!(exterior_square(&z3z3, lim()).unwrap().carrier().order(), 3);
    let z2z2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    assert_eq!(schur_multiplier(&z2z2, lim()).unwrap().torsion_u64(), vec![2]);
    assert!(schur_multiplier(&s3(), lim()).unwrap().is_trivial());
    assert_eq!(exterior_square(&s3(), lim()).unwrap().carrier().order(), 3);
}

#[test]
fn quaternion_commutator_image() {
    let t = tensor_square(&q8(), lim()).unwrap();
    assert_eq!(t.commutator_hom().unwrap().image().order(), 2);
}

#[test]
fn source_budget() {
    let big = FiniteGroup::cyclic(37);
    assert_eq!(
        tensor_square(&big, lim()).unwrap_err(),
        Error::SourceTooLarge { order: 37, budget: 36 }
    );
}

#[test]
fn torsion_of_central_pairs() {
    let z6 = FiniteGroup::cyclic(6);
    let t = tensor_square(&z6, lim()).unwrap();
    for g in 0..6 {
        assert!(central_torsion_power_check(&t, 2, g).unwrap());
        assert!(central_torsion_power_check(&t, 0, g).unwrap());
    }

    let q = q8();
    let t = tensor_square(&q, lim()).unwrap();
    let minus_one = q.center().elements()[1];
    assert!(central_torsion_power_check(&t, minus_one, q.generators()[0]).unwrap());
    assert_eq!(
        central_torsion_power_check(&t, q.generators()[0], 0).unwrap_err(),
        Error::NotCentral(q.generators()[0])
    );
}

fn central_quotient_extension(k: &FiniteGroup) -> ExtensionData {
    let z = k.center();
    let (g, proj) = k.quotient(&z).unwrap();
    let pi = Hom::from_element_map(k, &g, proj).unwrap();
    ExtensionData::new(k.clone(), z, pi).unwrap()
}

#[test]
fn xi_on_quaternion_extension() {
    let ext = central_quotient_extension(&q8());
    assert_eq!(ext.quotient().order(), 4);
    let t = tensor_square(ext.quotient(), lim()).unwrap();
    let xi = xi_hom(&ext, &t).unwrap();
    assert_eq!(xi.image(), *ext.kernel());
}

#[test]
fn xi_on_binary_tetrahedral_extension() {
    let ext = central_quotient_extension(&h());
    assert_eq!(ext.quotient().order(), 12);
    let t = tensor_square(ext.quotient(), lim()).unwrap();
    let xi = xi_hom(&ext, &t).unwrap();
    assert_eq!(xi.image().order(), 8);
}

#[test]
fn xi_on_split_extension() {
    let g = s3();
    let k = FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(2));
    let a = k.subgroup_from_sorted(vec![0, 1]);
    let pi = Hom::from_element_map(&k, &g, (0..12).map(|x| x / 2).collect()).unwrap();
    let ext = ExtensionData::new(k.clone(), a, pi).unwrap();
    let t = tensor_square(&g, lim()).unwrap();
    let xi = xi_hom(&ext, &t).unwrap();
    let derived: Vec<usize> = g.derived_subgroup().elements().iter().map(|&c| 2 * c).collect();
    assert_eq!(xi.image().elements(), derived.as_slice());
}

#[test]
fn extension_validation() {
    let q = q8();
    let z = q.center();
    let (g, proj) = q.quotient(&z).unwrap();
    let pi = Hom::from_element_map(&q, &g, proj).unwrap();
    let not_central = q.subgroup_generated(&[q.generators()[0]]);
    assert!(matches!(
        ExtensionData::new(q.clone(), not_central, pi.clone()),
        Err(Error::IncompatibleExtension(_))
    ));
    let ext = ExtensionData::new(q, z, pi).unwrap();
    let other = tensor_square(&FiniteGroup::cyclic(4), lim()).unwrap();
    assert!(matches!(xi_hom(&ext, &other), Err(Error::IncompatibleExtension(_))));
}

use grp_core::abelian::{abelianization, AbelianInvariants};
use grp_core::enumerate::{todd_coxeter, Limits};
use grp_core::group::{FiniteGroup, Hom};
use grp_core::knots::{
    green_table, maeda_group, metacyclic_compose, metacyclic_normal_form, wirtinger_presentation,
    GaussCode,
};
use grp_core::presentation::Presentation;
use grp_core::word::Word;
use num_integer::Integer;

const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
const FIGURE_EIGHT: &str = "O1- U2- O3+ U4+ O2- U1- O4+ U3+";
const VIRTUAL_TREFOIL: &str = "O1- U2- U1- O2-";

fn wirtinger(code: &str) -> Presentation {
    wirtinger_presentation(&GaussCode::parse(code).unwrap()).unwrap()
}

#[test]
fn codes_give_wirtinger_presentations_with_infinite_cyclic_abelianization() {
    for code in [TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL, "O1+ U1+"] {
        let p = wirtinger(code);
        assert!(p.is_wirtinger(), "{code}");
        assert_eq!(p.deficiency(), 0, "{code}");
        assert_eq!(abelianization(&p), AbelianInvariants::free(1), "{code}");
    }
}

#[test]
fn trefoil_maps_onto_s3() {
    let p = wirtinger(TREFOIL);
    let quotient = p.add_relators(&[Word::generator(0).pow(2)]).unwrap();
    assert_eq!(todd_coxeter(&quotient, &[], Limits::default()).unwrap().len(), 6);

    // arcs to the three transpositions of S3
    let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
    let (t12, t23, t13) = (s3.generators()[0], s3.generators()[1], s3.generators()[2]);
    let hom = Hom::from_presentation(&p, &s3, &[t12, t23, t13])
        .or_else(|_| Hom::from_presentation(&p, &s3, &[t12, t13, t23]))
        .unwrap();
    assert_eq!(hom.image().order(), 6);

    // the last relator is a consequence of the others
    let fewer = Presentation::new(p.generators().to_vec(), p.relators()[..2].to_vec())
        .unwrap()
        .add_relators(&[Word::generator(0).pow(2)])
        .unwrap();
    assert_eq!(todd_coxeter(&fewer, &[], Limits::default()).unwrap().len(), 6);
}

/// `y -> x a^-1` in the free group on `x` (0) and `a` (1).
fn substitute(w: &Word) -> Word {
    let x = Word::generator(0);
    let y = x.concat(&Word::generator(1).inverse());
    w.substitute(&[x, y])
}

#[test]
fn maeda_substitution_is_sound() {
    for m in 1..=11u64 {
        for n in -(m as i64)..=(2 * m as i64) {
            let Ok(g) = maeda_group(m, n) else {
                assert!(n.gcd(&(m as i64)) != 1 || (n - 1).gcd(&(m as i64)) != 1);
                continue;
            };
            assert_eq!(((g.q as i64) * (n - 1)).mod_floor(&(m as i64)), 1 % m as i64);
            for r in g.wirtinger.relators() {
                let nf = metacyclic_normal_form(&substitute(r), m, n).unwrap();
                assert_eq!(nf, (0, 0), "m = {m}, n = {n}");
            }
            for r in g.metacyclic.relators() {
                assert_eq!(metacyclic_normal_form(r, m, n).unwrap(), (0, 0));
            }
        }
    }
}

#[test]
fn maeda_three_two_first_relator() {
    let g = maeda_group(3, 2).unwrap();
    let r = substitute(&g.wirtinger.relators()[0]);
    assert_eq!(metacyclic_normal_form(&r, 3, 2).unwrap(), (0, 0));
}

#[test]
fn normal_form_is_multiplicative() {
    let words = [
        Word::from_signed(&[1, 2, -1, 2, 2]),
        Word::from_signed(&[-1, -1, 2]),
        Word::from_signed(&[2, 1, 1, -2, -1]),
        Word::empty(),
    ];
    for (m, l) in [(5u64, 2i64), (7, 3), (9, 2), (4, 3)] {
        for a in &words {
            for b in &words {
                let ab = metacyclic_normal_form(&a.concat(b), m, l).unwrap();
                let composed = metacyclic_compose(
                    metacyclic_normal_form(a, m, l).unwrap(),
                    metacyclic_normal_form(b, m, l).unwrap(),
                    m,
                    l,
                )
                .unwrap();
                assert_eq!(ab, composed);
            }
        }
    }
}

#[test]
fn bundled_groups_have_infinite_cyclic_abelianization() {
    for (id, p) in green_table().unwrap() {
        assert!(abelianization(&p).is_infinite_cyclic(), "{id}");
    }
}

use grp_core::enumerate::Limits;
use grp_core::group::{FiniteGroup, Hom};
use grp_core::presentation::Presentation;
use proptest::prelude::*;
use std::collections::BTreeMap;

/// SL(2,3) as all determinant-one 2x2 matrices over F3, identity first.
fn sl23() -> FiniteGroup {
    let mut mats = vec![[1u8, 0, 0, 1]];
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    let m = [a, b, c, d];
                    if (3 + a * d % 3 - b * c % 3) % 3 == 1 && m != mats[0] {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let mul = |x: [u8; 4], y: [u8; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let n = mats.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = mul(mats[i], mats[j]);
            table[i * n + j] = mats.iter().position(|&m| m == p).unwrap() as u32;
        }
    }
    FiniteGroup::from_table(n, table).unwrap()
}

fn h() -> FiniteGroup {
    let p = Presentation::parse("< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >").unwrap();
    FiniteGroup::from_presentation(&p, Limits::default()).unwrap()
}

#[test]
fn sl23_oracle() {
    let g = sl23();
    let f = g.fingerprint();
    assert_eq!(f.order, 24);
    assert_eq!(f.order_histogram, BTreeMap::from([(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]));
    assert_eq!(f.abelianization, vec![3]);
    assert_eq!(h().fingerprint(), f);
}

#[test]
fn derived_and_lower_central_series() {
    for g in [sl23(), h(), FiniteGroup::cyclic(12)] {
        let f = g.fingerprint();
        assert!(f.derived_series.windows(2).all(|w| w[1] < w[0]));
        if let Some(c) = f.nilpotency_class {
            assert!((c as f64) <= (g.order() as f64).log2());
        }
        let sum: usize = f.order_histogram.values().sum();
        assert_eq!(sum, f.order);
    }
    assert_eq!(sl23().fingerprint().nilpotency_class, None);
}

#[test]
fn hom_sizes() {
    let g = sl23();
    let (q, proj) = g.quotient(&g.center()).unwrap();
    let hom = Hom::from_element_map(&g, &q, proj).unwrap();
    assert_eq!(hom.image().order() * hom.kernel().unwrap().order(), g.order());
    assert_eq!(q.order(), 12);
    assert!(g.derived_subgroup().order() == 8);
    assert!(FiniteGroup::cyclic(7).derived_subgroup().is_trivial());
}

fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[perm[a] * n + perm[b]] = perm[g.mul(a, b)] as u32;
        }
    }
    FiniteGroup::from_table(n, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fingerprint_survives_relabeling(seed in proptest::collection::vec(any::<u32>(), 23)) {
        let g = sl23();
        // Fisher-Yates on 1..24 so the identity stays at 0
        let mut perm: Vec<usize> = (0..24).collect();
        for i in (2..24).rev() {
            let j = 1 + seed[i - 1] as usize % i;
            perm.swap(i, j);
        }
        prop_assert_eq!(relabel(&g, &perm).fingerprint(), g.fingerprint());
    }
}

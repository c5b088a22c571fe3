use gkm_core::coupling::{clebsch_gordan, coupling_range, structure_coeff};
use gkm_core::Surd;
use proptest::prelude::*;

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).map(|l| l.split_whitespace().collect())
}

#[test]
fn structure_coefficients_match_reference_table() {
    let mut n = 0;
    for r in rows(include_str!("data/structure_coeff_l3.txt")) {
        let (l1, m1, l2, m2, l3) = (
            r[0].parse().unwrap(),
            r[1].parse().unwrap(),
            r[2].parse().unwrap(),
            r[3].parse().unwrap(),
            r[4].parse().unwrap(),
        );
        let expected: Surd = r[5].parse().unwrap();
        assert_eq!(structure_coeff(l1, m1, l2, m2, l3).unwrap(), expected, "{r:?}");
        n += 1;
    }
    assert_eq!(n, 1336);
}

#[test]
fn clebsch_gordan_match_reference_table() {
    for r in rows(include_str!("data/clebsch_gordan_l2.txt")) {
        let v: Vec<i32> = r[..6].iter().map(|s| s.parse().unwrap()).collect();
        let expected: Surd = r[6].parse().unwrap();
        let got = clebsch_gordan(v[0] as u32, v[1], v[2] as u32, v[3], v[4] as u32, v[5]).unwrap();
        assert_eq!(got, expected, "{r:?}");
    }
}

#[test]
fn selected_values() {
    let s = |t: &str| t.parse::<Surd>().unwrap();
    assert_eq!(structure_coeff(1, 1, 1, -1, 0).unwrap(), s("-1"));
    assert_eq!(structure_coeff(1, 1, 1, -1, 2).unwrap(), s("1/5*sqrt(5)"));
    assert_eq!(structure_coeff(2, 2, 1, -1, 1).unwrap(), s("-1/5*sqrt(30)"));
    assert_eq!(structure_coeff(2, 2, 1, -1, 3).unwrap(), s("1/35*sqrt(105)"));
    assert_eq!(structure_coeff(2, 1, 3, -2, 5).unwrap(), s("2/231*sqrt(2310)"));
    assert_eq!(structure_coeff(3, 2, 3, -1, 4).unwrap(), s("-4/11*sqrt(2)"));
    assert_eq!(structure_coeff(3, 2, 3, -1, 6).unwrap(), s("5/429*sqrt(1365)"));
    assert_eq!(structure_coeff(2, 0, 3, -2, 5).unwrap(), s("1/11*sqrt(55)"));
}

#[test]
fn orthogonality_of_clebsch_gordan() {
    // Σ_{m1} (l1 m1 l2 M−m1 | L M)(l1 m1 l2 M−m1 | L' M) = δ_{LL'}
    for l1 in 0..=3u32 {
        for l2 in 0..=3u32 {
            for big_m in -((l1 + l2) as i32)..=(l1 + l2) as i32 {
                let lo = l1.abs_diff(l2).max(big_m.unsigned_abs());
                for la in lo..=l1 + l2 {
                    for lb in lo..=l1 + l2 {
                        let mut sum = Surd::zero();
                        for m1 in -(l1 as i32)..=l1 as i32 {
                            let m2 = big_m - m1;
                            if m2.unsigned_abs() > l2 {
                                continue;
                            }
                            let a = clebsch_gordan(l1, m1, l2, m2, la, big_m).unwrap();
                            let b = clebsch_gordan(l1, m1, l2, m2, lb, big_m).unwrap();
                            sum += &(&a * &b);
                        }
                        assert_eq!(sum.is_one(), la == lb, "{l1} {l2} {big_m} {la} {lb}");
                        assert!(la == lb || sum.is_zero());
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn structure_coefficients_are_symmetric(l1 in 0u32..6, l2 in 0u32..6, a in 0u32..13, b in 0u32..13) {
        let m1 = (a % (2 * l1 + 1)) as i32 - l1 as i32;
        let m2 = (b % (2 * l2 + 1)) as i32 - l2 as i32;
        for l3 in 0..=l1 + l2 {
            prop_assert_eq!(structure_coeff(l1, m1, l2, m2, l3).unwrap(), structure_coeff(l2, m2, l1, m1, l3).unwrap());
        }
    }

    #[test]
    fn range_lists_exactly_the_nonzero_coefficients(l1 in 0u32..7, l2 in 0u32..7, a in 0u32..15, b in 0u32..15) {
        let m1 = (a % (2 * l1 + 1)) as i32 - l1 as i32;
        let m2 = (b % (2 * l2 + 1)) as i32 - l2 as i32;
        let range = coupling_range(l1, m1, l2, m2).unwrap();
        for l3 in 0..=l1 + l2 + 1 {
            let nonzero = !structure_coeff(l1, m1, l2, m2, l3).unwrap().is_zero();
            prop_assert_eq!(range.contains(&l3), nonzero);
        }
    }
}

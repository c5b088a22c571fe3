use gkm_core::coupling::{coupling_range, structure_coeff};
use gkm_core::harmonic::{
    default_nodes, gaunt_project, gaunt_project_with, oracle_table, orthonormality_defect, q_hat, QuadratureRule,
};
use proptest::prelude::*;

#[test]
fn oracle_matches_exact_through_l6() {
    let rows = oracle_table(6).unwrap();
    assert!(rows.len() > 10_000);
    let worst = rows.iter().filter(|r| !r.excluded).map(|r| r.diff()).fold(0.0, f64::max);
    assert!(worst < 1e-9, "{worst}");
    let leak = rows.iter().filter(|r| r.excluded).map(|r| r.oracle.abs()).fold(0.0, f64::max);
    assert!(leak < 1e-10, "{leak}");
}

#[test]
fn gram_matrices_are_identity() {
    assert!(orthonormality_defect(12, 64) < 1e-10);
}

#[test]
fn doubling_nodes_is_stable() {
    for l1 in 0..=6u32 {
        for l2 in 0..=6u32 {
            for (m1, m2) in [(0, 0), (l1 as i32, -(l2 as i32)), (-(l1 as i32), 0), (l1 as i32, l2 as i32)] {
                for l3 in 0..=6 {
                    let n = default_nodes(l1, l2, l3);
                    let a = gaunt_project_with(l1, m1, l2, m2, l3, &QuadratureRule::gauss_legendre(n)).unwrap();
                    let b = gaunt_project_with(l1, m1, l2, m2, l3, &QuadratureRule::gauss_legendre(2 * n)).unwrap();
                    assert!((a - b).abs() < 1e-12, "{l1} {m1} {l2} {m2} {l3}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn reflection(l in 0u32..20, m in 0i32..20, x in -1.0f64..=1.0) {
        prop_assume!(m as u32 <= l);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let a = q_hat(l, -m, x).unwrap();
        let b = q_hat(l, m, x).unwrap();
        prop_assert!((a - sign * b).abs() < 1e-12 * (1.0 + b.abs()));
    }

    #[test]
    fn oracle_within_range(l1 in 0u32..8, l2 in 0u32..8, m1 in -8i32..=8, m2 in -8i32..=8) {
        prop_assume!(m1.unsigned_abs() <= l1 && m2.unsigned_abs() <= l2);
        for l3 in coupling_range(l1, m1, l2, m2).unwrap() {
            let exact = structure_coeff(l1, m1, l2, m2, l3).unwrap().to_f64();
            prop_assert!((exact - gaunt_project(l1, m1, l2, m2, l3).unwrap()).abs() < 1e-9);
        }
    }
}

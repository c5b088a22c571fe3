use gkm_core::algebra::Manifold;
use gkm_core::gkm::CurrentAlgebra;
use gkm_core::presentations::{
    build_caff_from_css, cartan_rank_facts, generation_check, verify_relations, Presentation,
};
use gkm_core::scalar::Rational;
use gkm_core::{builtin_algebra, parse_element, Error, LieAlgebra};

#[test]
fn su3_css_relations_cutoff_2() {
    let g = builtin_algebra("su3").unwrap();
    let r = verify_relations(&Presentation::css(g), 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures.first());
    assert!(r.checked > 60_000);
}

#[test]
fn su3_built_affine_relations_cutoff_2() {
    let g = builtin_algebra("su3").unwrap();
    let built = build_caff_from_css(&Presentation::css(g)).unwrap();
    let r = verify_relations(&built, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures.first());
    let direct = verify_relations(&Presentation::caff(g), 2).unwrap();
    assert!(direct.passed());
    assert_eq!(r.checked, direct.checked);
}

#[test]
fn su2_has_no_serre_relations() {
    let g = builtin_algebra("su2").unwrap();
    let r = verify_relations(&Presentation::css(g), 2).unwrap();
    assert!(r.passed());
    let p = Presentation::css(g);
    assert!(matches!(p.serre_power(true, 1, 1, &[vec![0, 0]], &[0, 0]), Err(Error::DiagonalSerre(1))));
}

#[test]
fn built_and_direct_realizations_agree() {
    for name in ["su2", "su3", "su4"] {
        let g = builtin_algebra(name).unwrap();
        let built = build_caff_from_css(&Presentation::css(g)).unwrap();
        let direct = Presentation::caff(g);
        for i in direct.nodes() {
            for m in -2..=2 {
                assert_eq!(built.e(true, i, &[m]).unwrap(), direct.e(true, i, &[m]).unwrap(), "{name} e+ {i} {m}");
                assert_eq!(built.e(false, i, &[m]).unwrap(), direct.e(false, i, &[m]).unwrap(), "{name} e- {i} {m}");
                assert_eq!(built.h(i, &[m]).unwrap(), direct.h(i, &[m]).unwrap(), "{name} h {i} {m}");
            }
        }
    }
}

#[test]
fn common_generators_bracket_alike() {
    // on generators shared by both presentations (e±ⁱ_{0m}, i ≥ 1) the tables coincide
    let g = builtin_algebra("su3").unwrap();
    let css = Presentation::css(g);
    let caff = build_caff_from_css(&css).unwrap();
    let torus = CurrentAlgebra::new(g, Manifold::Torus);
    for i in 1..=2 {
        for j in 1..=2 {
            for m in -2..=2 {
                for n in -2..=2 {
                    for (p, q) in [(true, false), (true, true), (false, false)] {
                        let a = torus.bracket(&css.e(p, i, &[0, m]).unwrap(), &css.e(q, j, &[0, n]).unwrap()).unwrap();
                        let b = torus.bracket(&caff.e(p, i, &[m]).unwrap(), &caff.e(q, j, &[n]).unwrap()).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn affine_node_cartan_element() {
    let g = builtin_algebra("su3").unwrap();
    let built = build_caff_from_css(&Presentation::css(g)).unwrap();
    // ψ = e₁ − e₃ has components (1/√2, √6/2) on H¹ = diag(1,−1,0)/√2, H² = diag(1,1,−2)/√6
    let h00 = built.h(0, &[0]).unwrap();
    assert_eq!(h00, parse_element("-1/2*sqrt(2)*H:i=1,m=0,n=0-1/2*sqrt(6)*H:i=2,m=0,n=0+k1").unwrap());
    let h03 = built.h(0, &[3]).unwrap();
    assert_eq!(h03, parse_element("-1/2*sqrt(2)*H:i=1,m=0,n=3-1/2*sqrt(6)*H:i=2,m=0,n=3").unwrap());
}

#[test]
fn cartan_ranks() {
    for (name, n) in [("su2", 2), ("su3", 3), ("su4", 4), ("su5", 5), ("su6", 6)] {
        let (det, corank) = cartan_rank_facts(builtin_algebra(name).unwrap());
        assert_eq!(det, Rational::from_integer(n));
        assert_eq!(corank, 1);
    }
}

#[test]
fn generation_su3_target_1() {
    let g = builtin_algebra("su3").unwrap();
    let r = generation_check(&Presentation::css(g), 1).unwrap();
    assert!(r.passed(), "{:?}", r.unreached);
    assert_eq!(r.targets, 9 * (6 + 2) + 2);
}

#[test]
fn generation_from_one_mode_generators() {
    let g = builtin_algebra("su2").unwrap();
    let built = build_caff_from_css(&Presentation::css(g)).unwrap();
    let r = generation_check(&built, 1).unwrap();
    assert!(r.passed(), "{:?}", r.unreached);
}

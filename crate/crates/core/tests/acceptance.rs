//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gkm_core::algebra::{family_algebra, Family};
use gkm_core::generator::GenId;
use gkm_core::gkm::affine_subalgebra_check;
use gkm_core::harmonic::{oracle_table, orthonormality_defect};
use gkm_core::presentations::{
    build_caff_from_css, cartan_rank_facts, generation_check, verify_relations, Presentation,
};
use gkm_core::table::{bracket_table, write_table, Format};
use gkm_core::verify::{self, enumerate_generators, Basis, Cutoffs};
use gkm_core::{builtin_algebra, BaseAlgebra};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde_json::json;

const ORACLE_TOL: f64 = 1e-9;
const EXCLUDED_TOL: f64 = 1e-10;
const ORTH_TOL: f64 = 1e-10;
const TORUS_JACOBI_BUDGET: Duration = Duration::from_secs(60);
const SPHERE_JACOBI_BUDGET: Duration = Duration::from_secs(300);
const TABLE_BUDGET: Duration = Duration::from_secs(30);
const GRADING_SAMPLES: usize = 4000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn su(n: &str) -> &'static BaseAlgebra {
    builtin_algebra(n).unwrap()
}

fn jacobi_count(g: &'static BaseAlgebra, family: Family, cut: Cutoffs) -> (bool, u64) {
    let alg = family_algebra(g, family);
    let gens = enumerate_generators(g, family, cut, Basis::Hermitian);
    let r = verify::jacobi(alg.as_ref(), &gens, json!({}));
    (r.passed(), r.checked)
}

fn torus_jacobi() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["su2", "su3"] {
        let (ok, n) = jacobi_count(su(name), Family::Torus, Cutoffs::uniform(3));
        pass &= ok;
        parts.push(format!("{name}: {n} triples"));
    }
    let took = t.elapsed();
    Outcome { pass: pass && took < TORUS_JACOBI_BUDGET, detail: format!("{} in {took:.1?}", parts.join(", ")) }
}

fn sphere_jacobi() -> Outcome {
    let t = Instant::now();
    let (ok, n) = jacobi_count(su("su2"), Family::Sphere, Cutoffs::uniform(4));
    let took = t.elapsed();
    Outcome { pass: ok && took < SPHERE_JACOBI_BUDGET, detail: format!("su2 l<=4: {n} triples in {took:.1?}") }
}

fn oracle() -> Outcome {
    let rows = oracle_table(6).unwrap();
    let worst = rows.iter().filter(|r| !r.excluded).map(|r| r.diff()).fold(0.0, f64::max);
    let leak = rows.iter().filter(|r| r.excluded).map(|r| r.oracle.abs()).fold(0.0, f64::max);
    Outcome {
        pass: worst < ORACLE_TOL && leak < EXCLUDED_TOL,
        detail: format!("{} coefficients, max diff {worst:.2e}, max excluded {leak:.2e}", rows.len()),
    }
}

fn orthonormality() -> Outcome {
    let d = orthonormality_defect(12, 64);
    Outcome { pass: d < ORTH_TOL, detail: format!("l<=12, 64 nodes, max |G - I| = {d:.2e}") }
}

fn affine() -> Outcome {
    let c = affine_subalgebra_check(su("su2"), 3);
    Outcome {
        pass: c.passed() && c.checked > 0,
        detail: format!(
            "{} pairs, {} mismatches, {} k2 components, {} off-slice",
            c.checked,
            c.mismatches.len(),
            c.k2_components,
            c.off_slice
        ),
    }
}

fn presentations() -> Outcome {
    let g = su("su3");
    let css = Presentation::css(g);
    let a = verify_relations(&css, 2).unwrap();
    let caff = build_caff_from_css(&css).unwrap();
    let b = verify_relations(&caff, 2).unwrap();
    let mut facts = true;
    for name in ["su2", "su3", "su4", "su5", "su6"] {
        let (det, corank) = cartan_rank_facts(su(name));
        facts &= !det.is_zero() && corank == 1;
    }
    Outcome {
        pass: a.passed() && b.passed() && facts,
        detail: format!(
            "su3 cutoff 2: {} + {} relations, {} failures; det A != 0 and corank 1 for su2..su6: {facts}",
            a.checked,
            b.checked,
            a.failures.len() + b.failures.len()
        ),
    }
}

fn generation() -> Outcome {
    let r = generation_check(&Presentation::css(su("su3")), 1).unwrap();
    Outcome {
        pass: r.passed(),
        detail: format!("su3 target 1: {}/{} targets, {} independent elements", r.reached, r.targets, r.explored),
    }
}

fn virasoro() -> Outcome {
    let t = Instant::now();
    let g = su("su2");
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, cut) in [
        (Family::VirCircle, Cutoffs::uniform(4)),
        (Family::VirTorus, Cutoffs::uniform(3)),
        (Family::VirSphere, Cutoffs::uniform(3)),
    ] {
        let (ok, n) = jacobi_count(g, family, cut);
        pass &= ok;
        parts.push(format!("{}: {n}", family.name()));
    }
    // ad(−L₀) against ad(d) (ad(d₁) on the torus) on every current
    let mut gradings = 0;
    for (family, l0, d) in [
        (Family::VirCircle, GenId::CircleL { m: 0 }, GenId::D),
        (Family::VirTorus, GenId::TorusL { m: 0, n: 0 }, GenId::D1),
        (Family::VirSphere, GenId::SphereL { l: 0, m: 0 }, GenId::D),
    ] {
        let vir = family_algebra(g, family);
        let current = family_algebra(g, Family::current(family.manifold()));
        for x in enumerate_generators(g, family, Cutoffs::uniform(3), Basis::Hermitian) {
            if !Family::current(family.manifold()).admits(&x) || x.is_central() {
                continue;
            }
            gradings += 1;
            let lhs = -vir.bracket_gens(&l0, &x).unwrap();
            pass &= lhs == current.bracket_gens(&d, &x).unwrap();
        }
    }
    Outcome {
        pass,
        detail: format!("Jacobi triples {}; {gradings} gradings match, {:.1?}", parts.join(", "), t.elapsed()),
    }
}

fn grading() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut failures = 0;
    for (name, family) in [
        ("su2", Family::Torus),
        ("su3", Family::Torus),
        ("su2", Family::Sphere),
        ("su3", Family::Sphere),
        ("su3", Family::Affine),
    ] {
        let g = su(name);
        let alg = family_algebra(g, family);
        let finite = g.cw_gens();
        for _ in 0..GRADING_SAMPLES / 5 {
            let mut pick = || {
                let x = finite[rng.random_range(0..finite.len())];
                match family {
                    Family::Torus => GenId::Torus { x, m: rng.random_range(-40..=40), n: rng.random_range(-40..=40) },
                    Family::Sphere => {
                        let l = rng.random_range(0..=12u32);
                        GenId::Sphere { x, l, m: rng.random_range(-(l as i32)..=l as i32) }
                    }
                    _ => GenId::Circle { x, m: rng.random_range(-40..=40) },
                }
            };
            let pair = [pick(), pick()];
            let r = verify::grading(alg.as_ref(), &pair, json!({}));
            checked += r.checked;
            failures += r.failures.len();
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!("{checked} sampled brackets, {failures} outside the predicted root space"),
    }
}

fn table_bytes(workers: usize) -> (Vec<u8>, Duration) {
    let t = Instant::now();
    let g = su("su2");
    let alg = family_algebra(g, Family::Sphere);
    let cut = Cutoffs::uniform(10);
    let gens = enumerate_generators(g, Family::Sphere, cut, Basis::Hermitian);
    let rows = bracket_table(alg.as_ref(), &gens, workers).unwrap();
    let mut out = Vec::new();
    let header = json!({"algebra": "su2", "family": "sphere", "cutoffs": cut.to_json(), "basis": "hermitian"});
    write_table(&mut out, &rows, &header, Format::Json).unwrap();
    (out, t.elapsed())
}

fn table() -> Outcome {
    let (a, took) = table_bytes(1);
    let (b, _) = table_bytes(1);
    let (c, _) = table_bytes(2);
    let (d, _) = table_bytes(4);
    let same = a == b && a == c && a == d;
    Outcome {
        pass: same && took < TABLE_BUDGET,
        detail: format!("{} bytes in {took:.1?}; identical across runs and 1/2/4 workers: {same}", a.len()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact Jacobi, torus su2/su3 |m|,|n|<=3", torus_jacobi),
        ("exact Jacobi, sphere su2 l<=4", sphere_jacobi),
        ("oracle agreement l<=6", oracle),
        ("orthonormality l<=12", orthonormality),
        ("affine embedding su2 |m|<=3", affine),
        ("presentations", presentations),
        ("generation su3", generation),
        ("Virasoro extensions", virasoro),
        ("grading", grading),
        ("sphere table su2 l<=10", table),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("[{}] {:>2}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

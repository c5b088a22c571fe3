use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use gkm_core::algebra::{family_algebra, Family, Manifold};
use gkm_core::coupling::structure_coeff;
use gkm_core::generator::element_to_json;
use gkm_core::gkm::affine_subalgebra_check;
use gkm_core::harmonic::{gaunt_project, inner_product, oracle_table, QuadratureRule};
use gkm_core::presentations::{
    build_caff_from_css, cartan_rank_facts, serre_check as run_serre, verify_relations, Presentation,
};
use gkm_core::table::{base_dump, bracket_table, write_table, Format};
use gkm_core::verify::{self, enumerate_generators, Basis, Cutoffs, Report};
use gkm_core::{builtin_algebra, parse_element, BaseAlgebra, Element, Error, GenId};
use serde_json::json;

use crate::Common;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::InvalidLabel(_) | Error::UnknownAlgebra(_) | Error::Descriptor(..) => 2,
            Error::Scalar(gkm_core::scalar::ScalarError::Parse(_)) => 2,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError { code: 3, message: e.to_string() }
    }
}

type CliResult = Result<ExitCode, CliError>;

fn passed(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError { code: 3, message: format!("{}: {e}", p.display()) })?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn format(common: &Common, default: Format) -> Result<Format, CliError> {
    match &common.format {
        Some(f) => Ok(f.parse()?),
        None => Ok(default),
    }
}

fn algebra(name: &str) -> Result<&'static BaseAlgebra, CliError> {
    Ok(builtin_algebra(name)?)
}

fn manifold(common: &Common, default: Manifold) -> Result<Manifold, CliError> {
    match &common.manifold {
        Some(m) => Ok(m.parse()?),
        None => Ok(default),
    }
}

fn family(common: &Common, manifold: Manifold) -> Family {
    if common.virasoro {
        Family::virasoro(manifold)
    } else {
        Family::current(manifold)
    }
}

fn cutoffs(common: &Common, default: u32) -> Cutoffs {
    let c = common.cutoff.unwrap_or(default);
    Cutoffs { lmax: common.lmax.unwrap_or(c), mmax: common.mmax.unwrap_or(c), nmax: common.nmax.unwrap_or(c) }
}

pub fn coeff(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, format: &str) -> CliResult {
    let exact = structure_coeff(l1, m1, l2, m2, l3)?;
    let oracle = gaunt_project(l1, m1, l2, m2, l3)?;
    match format {
        "json" => println!(
            "{}",
            json!({"labels": [l1, m1, l2, m2, l3], "exact": exact.to_string(), "float": exact.to_f64(), "oracle": oracle})
        ),
        "text" => println!("{exact} ≈ {:.12}    oracle {:.12}", exact.to_f64(), oracle),
        other => return Err(CliError::usage(format!("unknown format {other:?} (json or text)"))),
    }
    Ok(ExitCode::SUCCESS)
}

/// Manifold suggested by the mode labels of the operands.
fn infer_manifold(elements: &[&Element<GenId>]) -> Option<Manifold> {
    elements.iter().flat_map(|e| e.gens()).find_map(|g| match g {
        GenId::Circle { .. } | GenId::CircleL { .. } => Some(Manifold::Circle),
        GenId::Torus { .. } | GenId::TorusL { .. } | GenId::D1 | GenId::D2 | GenId::K1 | GenId::K2 => {
            Some(Manifold::Torus)
        }
        GenId::Sphere { .. } | GenId::SphereL { .. } => Some(Manifold::Sphere),
        _ => None,
    })
}

pub fn bracket(common: &Common, x: &str, y: &str) -> CliResult {
    let g = algebra(&common.algebra)?;
    let (x, y) = (parse_element(x)?, parse_element(y)?);
    let manifold = match &common.manifold {
        Some(m) => m.parse()?,
        None => infer_manifold(&[&x, &y])
            .ok_or_else(|| CliError::usage("cannot infer the manifold from the operands; pass --manifold"))?,
    };
    let virasoro = common.virasoro
        || [&x, &y]
            .iter()
            .flat_map(|e| e.gens())
            .any(|g| matches!(g, GenId::CircleL { .. } | GenId::TorusL { .. } | GenId::SphereL { .. } | GenId::C));
    let family = if virasoro { Family::virasoro(manifold) } else { Family::current(manifold) };
    let r = family_algebra(g, family).bracket(&x, &y)?;
    let mut w = output(common.out.as_deref())?;
    match format(common, Format::Text)? {
        Format::Json => writeln!(w, "{}", element_to_json(&r))?,
        Format::Text => writeln!(w, "{r}")?,
        Format::Csv => {
            writeln!(w, "gen,coeff")?;
            for (gen, c) in r.terms() {
                writeln!(w, "\"{gen}\",\"{c}\"")?;
            }
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn emit_report(common: &Common, report: &Report, unit: &str) -> CliResult {
    if let Some(p) = &common.out {
        let mut f = output(Some(p))?;
        serde_json::to_writer_pretty(&mut f, &report.to_json()).map_err(Error::from)?;
        writeln!(f)?;
        f.flush()?;
    }
    match format(common, Format::Text)? {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).map_err(Error::from)?),
        _ => {
            println!("{}: {} {unit} checked, {} failures", report.suite, report.checked, report.failures.len());
            for f in report.failures.iter().take(10) {
                println!("  {}: {}", f.instance, f.residual);
            }
        }
    }
    Ok(passed(report.passed()))
}

pub fn verify(suite: &str, cartan_weyl: bool, common: &Common) -> CliResult {
    let g = algebra(&common.algebra)?;
    let basis = if cartan_weyl { Basis::CartanWeyl } else { Basis::Hermitian };
    let (report, unit) = match suite {
        "jacobi" | "cocycle" | "grading" => {
            let manifold = manifold(common, Manifold::Torus)?;
            let family = family(common, manifold);
            let cut = cutoffs(common, 2);
            let alg = family_algebra(g, family);
            // root decomposition reads off root vectors directly
            let basis = if suite == "grading" { Basis::CartanWeyl } else { basis };
            let gens = enumerate_generators(g, family, cut, basis);
            let config = json!({"algebra": g.name(), "family": family.name(), "cutoffs": cut.to_json(), "generators": gens.len()});
            match suite {
                "jacobi" => (verify::jacobi(alg.as_ref(), &gens, config), "triples"),
                "cocycle" => (verify::cocycle(alg.as_ref(), &gens, config), "triples"),
                _ => (verify::grading(alg.as_ref(), &gens, config), "pairs"),
            }
        }
        "affine" => {
            let c = common.cutoff.or(common.mmax).unwrap_or(3);
            let check = affine_subalgebra_check(g, c);
            let mut report = Report::new("affine", json!({"algebra": g.name(), "cutoff": c}));
            report.checked = check.checked as u64;
            for m in &check.mismatches {
                report.fail(m.clone(), "differs from the affine bracket");
            }
            if check.k2_components > 0 {
                report.fail("k2 components", check.k2_components.to_string());
            }
            if check.off_slice > 0 {
                report.fail("brackets leaving the n = 0 slice", check.off_slice.to_string());
            }
            (report, "pairs")
        }
        "serre" => {
            let c = common.cutoff.unwrap_or(2);
            let css = Presentation::css(g);
            let caff = build_caff_from_css(&css)?;
            let mut report = Report::new("serre", json!({"algebra": g.name(), "cutoff": c}));
            for p in [&css, &caff] {
                let r = verify_relations(p, c)?;
                report.checked += r.checked;
                for f in r.failures {
                    report.fail(format!("{}: {}", p.kind(), f.instance), f.residual);
                }
            }
            let (det, corank) = cartan_rank_facts(g);
            report.checked += 2;
            if det.is_zero() {
                report.fail("det A", "0");
            }
            if corank != 1 {
                report.fail("corank of the affine Cartan matrix", corank.to_string());
            }
            (report, "relations")
        }
        "orth" => {
            let lmax = common.lmax.or(common.cutoff).unwrap_or(12);
            let tol = common.tol.unwrap_or(1e-10);
            let rule = QuadratureRule::cached((2 * lmax as usize + 2).max(64));
            let mut report = Report::new("orth", json!({"lmax": lmax, "tol": tol, "nodes": rule.len()}));
            for m in -(lmax as i32)..=lmax as i32 {
                for l1 in m.unsigned_abs()..=lmax {
                    for l2 in l1..=lmax {
                        let v = inner_product(l1, m, l2, m, &rule)?;
                        let d = (v - if l1 == l2 { 1.0 } else { 0.0 }).abs();
                        report.checked += 1;
                        if d >= tol {
                            report.fail(format!("(Q{l1},{m}, Q{l2},{m})"), format!("{d:e}"));
                        }
                    }
                }
            }
            (report, "inner products")
        }
        "oracle" => {
            let lmax = common.lmax.or(common.cutoff).unwrap_or(6);
            let tol = common.tol.unwrap_or(1e-9);
            let rows = oracle_table(lmax)?;
            let worst = rows.iter().map(|r| r.diff()).fold(0.0, f64::max);
            let mut report = Report::new("oracle", json!({"lmax": lmax, "tol": tol, "max_abs_diff": worst}));
            for r in &rows {
                report.checked += 1;
                if r.diff() >= tol {
                    report.fail(format!("c({},{},{},{};{})", r.l1, r.m1, r.l2, r.m2, r.l3), format!("{:e}", r.diff()));
                }
            }
            (report, "coefficients")
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown suite {other:?} (jacobi, cocycle, grading, affine, serre, orth or oracle)"
            )))
        }
    };
    emit_report(common, &report, unit)
}

pub fn table(base: bool, common: &Common, workers: usize) -> CliResult {
    let g = algebra(&common.algebra)?;
    let mut w = output(common.out.as_deref())?;
    if base {
        serde_json::to_writer_pretty(&mut w, &base_dump(g)).map_err(Error::from)?;
        writeln!(w)?;
        w.flush()?;
        return Ok(ExitCode::SUCCESS);
    }
    let family = family(common, manifold(common, Manifold::Torus)?);
    let cut = cutoffs(common, 2);
    let gens = enumerate_generators(g, family, cut, Basis::Hermitian);
    let rows = bracket_table(family_algebra(g, family).as_ref(), &gens, workers)?;
    let header = json!({"algebra": g.name(), "family": family.name(), "cutoffs": cut.to_json(), "basis": "hermitian"});
    write_table(&mut w, &rows, &header, format(common, Format::Json)?)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn oracle_diff(lmax: u32, out: Option<&Path>) -> CliResult {
    let rows = oracle_table(lmax)?;
    let mut w = output(out)?;
    writeln!(w, "l1,m1,l2,m2,l3,exact,oracle,abs_diff")?;
    for r in &rows {
        writeln!(
            w,
            "{},{},{},{},{},{:.17e},{:.17e},{:.3e}",
            r.l1,
            r.m1,
            r.l2,
            r.m2,
            r.l3,
            r.exact,
            r.oracle,
            r.diff()
        )?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn serre_check(algebra_name: &str, presentation: &str, cutoff: u32, out: Option<&Path>) -> CliResult {
    let g = algebra(algebra_name)?;
    let css = Presentation::css(g);
    let p = match presentation {
        "css" => css,
        "caff" => build_caff_from_css(&css)?,
        other => return Err(CliError::usage(format!("unknown presentation {other:?} (css or caff)"))),
    };
    let records = run_serre(&p, cutoff)?;
    let ok = records.iter().all(|r| r.residual.is_zero());
    let mut w = output(out)?;
    write!(w, "[")?;
    for (k, r) in records.iter().enumerate() {
        write!(w, "{}\n{}", if k == 0 { "" } else { "," }, r.to_json())?;
    }
    writeln!(w, "\n]")?;
    w.flush()?;
    Ok(passed(ok))
}

//! Exhaustive exact checks over cutoff-bounded generator sets.
//!
//! The algebras are never truncated: every bracket of two generators is a
//! finite element, so a cutoff only limits which generators are enumerated.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Family, LieAlgebra};
use crate::base::BaseAlgebra;
use crate::element::{Accumulator, Element};
use crate::generator::GenId;
use crate::gkm::{root_decompose, RootLabel};

/// Enumeration bounds. `lmax` applies to the sphere, `mmax`/`nmax` to the
/// circle and torus modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cutoffs {
    pub lmax: u32,
    pub mmax: u32,
    pub nmax: u32,
}

impl Cutoffs {
    pub fn uniform(c: u32) -> Cutoffs {
        Cutoffs { lmax: c, mmax: c, nmax: c }
    }

    pub fn to_json(&self) -> Value {
        json!({"lmax": self.lmax, "mmax": self.mmax, "nmax": self.nmax})
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Hermitian,
    CartanWeyl,
}

/// Currents with every finite generator of the chosen basis and all mode
/// labels within the cutoffs, followed by the Virasoro generators, gradings
/// and centrals of the family.
pub fn enumerate_generators(g: &BaseAlgebra, family: Family, cut: Cutoffs, basis: Basis) -> Vec<GenId> {
    let finite = match basis {
        Basis::Hermitian => g.t_gens(),
        Basis::CartanWeyl => g.cw_gens(),
    };
    let (mm, nn) = (cut.mmax as i32, cut.nmax as i32);
    let mut modes: Vec<GenId> = Vec::new();
    let mut virasoro: Vec<GenId> = Vec::new();
    match family.manifold() {
        crate::algebra::Manifold::Circle => {
            for m in -mm..=mm {
                modes.push(GenId::CircleL { m });
                virasoro.push(GenId::CircleL { m });
            }
        }
        crate::algebra::Manifold::Torus => {
            for m in -mm..=mm {
                for n in -nn..=nn {
                    modes.push(GenId::TorusL { m, n });
                    virasoro.push(GenId::TorusL { m, n });
                }
            }
        }
        crate::algebra::Manifold::Sphere => {
            for l in 0..=cut.lmax {
                for m in -(l as i32)..=l as i32 {
                    modes.push(GenId::SphereL { l, m });
                    virasoro.push(GenId::SphereL { l, m });
                }
            }
        }
    }
    let mut gens = Vec::new();
    for mode in &modes {
        for x in &finite {
            gens.push(match *mode {
                GenId::CircleL { m } => GenId::Circle { x: *x, m },
                GenId::TorusL { m, n } => GenId::Torus { x: *x, m, n },
                GenId::SphereL { l, m } => GenId::Sphere { x: *x, l, m },
                _ => unreachable!(),
            });
        }
    }
    let extra: &[GenId] = match family {
        Family::Affine | Family::Sphere => &[GenId::D, GenId::K],
        Family::Torus => &[GenId::D1, GenId::D2, GenId::K1, GenId::K2],
        _ => {
            gens.extend(virasoro);
            &[GenId::K, GenId::C]
        }
    };
    gens.extend_from_slice(extra);
    gens
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub instance: String,
    pub residual: String,
}

/// Result of one verification suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub config: Value,
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(suite: &str, config: Value) -> Report {
        Report { suite: suite.to_string(), config, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, instance: impl Into<String>, residual: impl Into<String>) {
        self.failures.push(Failure { instance: instance.into(), residual: residual.into() });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "config": self.config,
            "checked": self.checked,
            "failures": self.failures.iter()
                .map(|f| json!({"instance": f.instance, "residual": f.residual}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Brackets of all pairs `i ≤ j`, stored row-major in the upper triangle.
struct PairTable {
    n: usize,
    rows: Vec<Vec<Element<GenId>>>,
}

impl PairTable {
    fn new(alg: &dyn LieAlgebra, gens: &[GenId]) -> PairTable {
        let rows = (0..gens.len())
            .into_par_iter()
            .map(|i| (i..gens.len()).map(|j| alg.bracket_unchecked(&gens[i], &gens[j])).collect())
            .collect();
        PairTable { n: gens.len(), rows }
    }

    /// `[g_i, g_j]` for `i ≤ j`.
    fn get(&self, i: usize, j: usize) -> &Element<GenId> {
        debug_assert!(i <= j && j < self.n);
        &self.rows[i][j - i]
    }
}

fn add_outer(acc: &mut Accumulator<GenId>, alg: &dyn LieAlgebra, x: &GenId, inner: &Element<GenId>, sign: i64) {
    for (w, c) in inner.terms() {
        if w.is_central() {
            continue;
        }
        let r = alg.bracket_unchecked(x, w);
        if sign < 0 {
            acc.add_scaled(&r, &-c);
        } else {
            acc.add_scaled(&r, c);
        }
    }
}

/// Checks `[x,y] + [y,x] = 0` on all ordered pairs.
pub fn antisymmetry(alg: &dyn LieAlgebra, gens: &[GenId], config: Value) -> Report {
    let mut report = Report::new("antisymmetry", config);
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i..] {
            report.checked += 1;
            let s = &alg.bracket_unchecked(x, y) + &alg.bracket_unchecked(y, x);
            if !s.is_zero() {
                report.fail(format!("[{x}, {y}]"), s.to_string());
            }
        }
    }
    report
}

/// Jacobi sum `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` for all `i ≤ j ≤ k`. With
/// antisymmetry (checked as well, failures reported under the same suite)
/// this covers every ordered triple.
pub fn jacobi(alg: &dyn LieAlgebra, gens: &[GenId], config: Value) -> Report {
    let mut report = antisymmetry(alg, gens, config.clone());
    report.suite = "jacobi".to_string();
    report.checked = 0;
    let table = PairTable::new(alg, gens);
    let n = gens.len();
    let results: Vec<(u64, Vec<Failure>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut checked = 0u64;
            let mut failures = Vec::new();
            for j in i..n {
                let xy = table.get(i, j);
                for k in j..n {
                    checked += 1;
                    let mut acc = Accumulator::new();
                    add_outer(&mut acc, alg, &gens[i], table.get(j, k), 1);
                    // [y, [z, x]] = −[y, [x, z]]
                    add_outer(&mut acc, alg, &gens[j], table.get(i, k), -1);
                    add_outer(&mut acc, alg, &gens[k], xy, 1);
                    let sum = acc.finish();
                    if !sum.is_zero() {
                        failures.push(Failure {
                            instance: format!("({}, {}, {})", gens[i], gens[j], gens[k]),
                            residual: sum.to_string(),
                        });
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    for (c, f) in results {
        report.checked += c;
        report.failures.extend(f);
    }
    report
}

fn central_part(alg: &dyn LieAlgebra, e: &Element<GenId>) -> Element<GenId> {
    let centrals = alg.centrals();
    e.filter(|g| centrals.contains(g))
}

/// The central components `ω(x,y)` of the brackets: antisymmetry and the
/// cocycle identity `ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0`.
pub fn cocycle(alg: &dyn LieAlgebra, gens: &[GenId], config: Value) -> Report {
    let mut report = Report::new("cocycle", config);
    let n = gens.len();
    let table = PairTable::new(alg, gens);
    for i in 0..n {
        for j in i..n {
            let a = central_part(alg, table.get(i, j));
            let b = central_part(alg, &alg.bracket_unchecked(&gens[j], &gens[i]));
            if !(&a + &b).is_zero() {
                report.fail(format!("ω({}, {})", gens[i], gens[j]), (&a + &b).to_string());
            }
        }
    }
    // ω(w, z) for a non-central w, linearly extended
    let omega = |w: &Element<GenId>, z: &GenId, sign: i64| -> Element<GenId> {
        let mut acc = Accumulator::new();
        for (g, c) in w.terms() {
            if g.is_central() {
                continue;
            }
            let r = central_part(alg, &alg.bracket_unchecked(g, z));
            acc.add_scaled(&r, &if sign < 0 { -c } else { c.clone() });
        }
        acc.finish()
    };
    let results: Vec<(u64, Vec<Failure>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for j in i..n {
                for k in j..n {
                    checked += 1;
                    let (x, y, z) = (&gens[i], &gens[j], &gens[k]);
                    let s = &(&omega(table.get(i, j), z, 1) + &omega(table.get(j, k), x, 1))
                        + &omega(table.get(i, k), y, -1);
                    if !s.is_zero() {
                        failures.push(Failure { instance: format!("({x}, {y}, {z})"), residual: s.to_string() });
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    for (c, f) in results {
        report.checked += c;
        report.failures.extend(f);
    }
    report
}

/// Every bracket of two Cartan-Weyl generators lies in the root space whose
/// label is the sum of the factors' labels.
pub fn grading(alg: &dyn LieAlgebra, gens: &[GenId], config: Value) -> Report {
    let mut report = Report::new("grading", config);
    let g = alg.base();
    let manifold = alg.family().manifold();
    let label = |x: &GenId| RootLabel::of(manifold, g.rank(), x).expect("grading needs Cartan-Weyl generators");
    for x in gens {
        for y in gens {
            report.checked += 1;
            let want = label(x).add(&label(y)).expect("labels of one manifold");
            let got: BTreeSet<RootLabel> =
                root_decompose(g, manifold, &alg.bracket_unchecked(x, y)).into_keys().collect();
            if got.iter().any(|l| *l != want) {
                let got: Vec<String> = got.iter().map(|l| l.to_string()).collect();
                report.fail(format!("[{x}, {y}] expected {want}"), got.join(" "));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::family_algebra;
    use crate::base::builtin_algebra;

    #[test]
    fn enumeration_sizes() {
        let g = builtin_algebra("su3").unwrap();
        let t = enumerate_generators(g, Family::Torus, Cutoffs::uniform(3), Basis::Hermitian);
        assert_eq!(t.len(), 8 * 49 + 4);
        let s = enumerate_generators(g, Family::VirSphere, Cutoffs::uniform(2), Basis::CartanWeyl);
        assert_eq!(s.len(), 9 * 8 + 9 + 2);
    }

    #[test]
    fn small_suites_pass() {
        let g = builtin_algebra("su2").unwrap();
        for family in Family::ALL {
            let alg = family_algebra(g, family);
            let cut = Cutoffs::uniform(1);
            let gens = enumerate_generators(g, family, cut, Basis::Hermitian);
            let r = jacobi(alg.as_ref(), &gens, Value::Null);
            assert!(r.passed(), "{family}: {:?}", r.failures.first());
            let r = cocycle(alg.as_ref(), &gens, Value::Null);
            assert!(r.passed(), "{family}: {:?}", r.failures.first());
            let cw = enumerate_generators(g, family, cut, Basis::CartanWeyl);
            let r = grading(alg.as_ref(), &cw, Value::Null);
            assert!(r.passed(), "{family}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn broken_bracket_is_caught() {
        struct Broken(&'static BaseAlgebra);
        impl LieAlgebra for Broken {
            fn base(&self) -> &BaseAlgebra {
                self.0
            }
            fn family(&self) -> Family {
                Family::Torus
            }
            fn bracket_unchecked(&self, x: &GenId, y: &GenId) -> Element<GenId> {
                let inner = crate::gkm::CurrentAlgebra::new(self.0, crate::algebra::Manifold::Torus);
                let r = inner.bracket_unchecked(x, y);
                // cocycle κ m³ instead of κ m: antisymmetric but not closed
                let m = match x {
                    GenId::Torus { m, .. } => *m as i64,
                    _ => 1,
                };
                let cube = crate::scalar::ComplexSurd::from_integer(m * m);
                Element::from_terms(r.terms().iter().map(|(g, c)| {
                    if *g == GenId::K1 {
                        (*g, c * &cube)
                    } else {
                        (*g, c.clone())
                    }
                }))
            }
        }
        let g = builtin_algebra("su2").unwrap();
        let gens = enumerate_generators(g, Family::Torus, Cutoffs::uniform(2), Basis::Hermitian);
        let r = jacobi(&Broken(g), &gens, Value::Null);
        assert!(!r.passed());
        assert!(!cocycle(&Broken(g), &gens, Value::Null).passed());
    }
}

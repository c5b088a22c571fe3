//! Floating-point oracle for the sphere structure constants.
//!
//! `Q̂_{ℓm}(x) = √((2ℓ+1)(ℓ−m)!/(ℓ+m)!) P_{ℓm}(x)` with the Condon-Shortley
//! phase, normalized so that `½∫₋₁¹ Q̂_{ℓm} Q̂_{ℓ'm} dx = δ_{ℓℓ'}`. The
//! Gaunt projection `½∫ Q̂_{ℓ₁m₁} Q̂_{ℓ₂m₂} Q̂_{ℓ₃,m₁+m₂} dx` reproduces the
//! exact coupling coefficients.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

fn check_labels(l: u32, m: i32, x: f64) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Associated Legendre function `P_{ℓm}(x)` (Condon-Shortley phase) by the
/// upward recurrence in `ℓ`; negative `m` by reflection.
pub fn legendre_assoc(l: u32, m: i32, x: f64) -> Result<f64> {
    check_labels(l, m, x)?;
    let ma = m.unsigned_abs();
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=ma {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    let p = if l == ma {
        pmm
    } else {
        let mut prev = pmm;
        let mut cur = x * (2 * ma + 1) as f64 * pmm;
        for ll in ma + 2..=l {
            let next = (x * (2 * ll - 1) as f64 * cur - (ll + ma - 1) as f64 * prev) / (ll - ma) as f64;
            prev = cur;
            cur = next;
        }
        cur
    };
    if m >= 0 {
        return Ok(p);
    }
    // P_{ℓ,−m} = (−1)^m (ℓ−m)!/(ℓ+m)! P_{ℓm}
    let mut ratio = 1.0;
    for k in l - ma + 1..=l + ma {
        ratio /= k as f64;
    }
    Ok(if ma % 2 == 0 { ratio * p } else { -ratio * p })
}

/// `Q̂_{ℓm}(x)` by the normalized recurrence, which stays in range for
/// large `ℓ`.
pub fn q_hat(l: u32, m: i32, x: f64) -> Result<f64> {
    check_labels(l, m, x)?;
    let ma = m.unsigned_abs();
    let s = (1.0 - x * x).max(0.0).sqrt();
    // u_m = (−1)^m √(∏ (2k−1)/(2k)) s^m, Q̂_mm = √(2m+1) u_m
    let mut u = 1.0;
    for k in 1..=ma {
        u *= -s * (((2 * k - 1) as f64) / ((2 * k) as f64)).sqrt();
    }
    let qmm = ((2 * ma + 1) as f64).sqrt() * u;
    let q = if l == ma {
        qmm
    } else {
        let mut prev = qmm;
        let mut cur = x * ((2 * ma + 3) as f64).sqrt() * qmm;
        let mf = ma as f64;
        for ll in ma + 2..=l {
            let lf = ll as f64;
            let d = lf * lf - mf * mf;
            let a = ((4.0 * lf * lf - 1.0) / d).sqrt();
            let b = ((2.0 * lf + 1.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf) / ((2.0 * lf - 3.0) * d)).sqrt();
            let next = a * x * cur - b * prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    Ok(if m < 0 && ma % 2 == 1 { -q } else { q })
}

/// `Q̂_{ℓm}` from `P_{ℓm}` and the factorial normalization; for
/// cross-checking [`q_hat`] at small `ℓ`.
pub fn q_hat_direct(l: u32, m: i32, x: f64) -> Result<f64> {
    let p = legendre_assoc(l, m, x)?;
    let mut ratio = (2 * l + 1) as f64;
    if m >= 0 {
        for k in l - m as u32 + 1..=l + m as u32 {
            ratio /= k as f64;
        }
    } else {
        for k in l - m.unsigned_abs() + 1..=l + m.unsigned_abs() {
            ratio *= k as f64;
        }
    }
    Ok(ratio.sqrt() * p)
}

/// Gauss-Legendre nodes and weights on `[−1, 1]`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn gauss_legendre(n: usize) -> QuadratureRule {
        assert!(n > 0, "at least one node");
        // (P_n(x), P'_n(x))
        let eval = |x: f64| {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                (x, 1.0)
            } else {
                (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
            }
        };
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let theta = PI * (4.0 * (i + 1) as f64 - 1.0) / (4.0 * nf + 2.0);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            for _ in 0..100 {
                let (p, dp) = eval(x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            if 2 * i + 1 == n {
                x = 0.0;
            }
            let dp = eval(x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        QuadratureRule { nodes, weights }
    }

    /// Shared rule with `n` nodes.
    pub fn cached(n: usize) -> Arc<QuadratureRule> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(n).or_insert_with(|| Arc::new(QuadratureRule::gauss_legendre(n))).clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫₋₁¹ f(x) dx`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `½∫ Q̂_{ℓ₁m} Q̂_{ℓ₂m} dx`.
pub fn inner_product(l1: u32, m1: i32, l2: u32, m2: i32, rule: &QuadratureRule) -> Result<f64> {
    if m1 != m2 {
        return Err(Error::MismatchedM(m1, m2));
    }
    q_hat(l1, m1, 0.0)?;
    q_hat(l2, m2, 0.0)?;
    Ok(0.5 * rule.integrate(|x| q_hat(l1, m1, x).unwrap() * q_hat(l2, m2, x).unwrap()))
}

/// Default node count for a triple product.
pub fn default_nodes(l1: u32, l2: u32, l3: u32) -> usize {
    (l1 + l2 + l3 + 8) as usize
}

/// `½∫ Q̂_{ℓ₁m₁} Q̂_{ℓ₂m₂} Q̂_{ℓ₃,m₁+m₂} dx`; zero when `|m₁+m₂| > ℓ₃`.
pub fn gaunt_project(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32) -> Result<f64> {
    gaunt_project_with(l1, m1, l2, m2, l3, &QuadratureRule::cached(default_nodes(l1, l2, l3)))
}

pub fn gaunt_project_with(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, rule: &QuadratureRule) -> Result<f64> {
    q_hat(l1, m1, 0.0)?;
    q_hat(l2, m2, 0.0)?;
    let m3 = m1 + m2;
    if m3.unsigned_abs() > l3 {
        return Ok(0.0);
    }
    Ok(0.5 * rule.integrate(|x| q_hat(l1, m1, x).unwrap() * q_hat(l2, m2, x).unwrap() * q_hat(l3, m3, x).unwrap()))
}

/// Discrete Fourier projection of `e^{−i(m₁+m₂)θ} e^{−i(n₁+n₂)θ'}` (the
/// product of two torus modes) onto the mode window around it. Returns the
/// weight on `(m₁+m₂, n₁+n₂)` and the largest weight found on any other
/// mode.
pub fn fourier_oracle_torus(m1: i32, n1: i32, m2: i32, n2: i32) -> (f64, f64) {
    let (m, n) = (m1 + m2, n1 + n2);
    let span = [m1, n1, m2, n2, m, n].iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as i32 + 2;
    // grid resolves every mode in [−2·span, 2·span] without aliasing
    let grid = (4 * span + 2) as usize;
    let h = 2.0 * PI / grid as f64;
    let weight = |p: i32, q: i32| -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for a in 0..grid {
            for b in 0..grid {
                let (t, u) = (a as f64 * h, b as f64 * h);
                // f = e^{−i(m1 t + n1 u)} e^{−i(m2 t + n2 u)}, projected on e^{−i(p t + q u)}
                let phase = -((m1 + m2 - p) as f64 * t + (n1 + n2 - q) as f64 * u);
                re += phase.cos();
                im += phase.sin();
            }
        }
        let norm = (grid * grid) as f64;
        (re / norm).hypot(im / norm)
    };
    let on = weight(m, n);
    let mut leak: f64 = 0.0;
    for p in m - span..=m + span {
        for q in n - span..=n + span {
            if (p, q) != (m, n) {
                leak = leak.max(weight(p, q));
            }
        }
    }
    (on, leak)
}

/// One exact coefficient next to its quadrature value.
#[derive(Clone, Debug)]
pub struct OracleRow {
    pub l1: u32,
    pub m1: i32,
    pub l2: u32,
    pub m2: i32,
    pub l3: u32,
    pub exact: f64,
    pub oracle: f64,
    /// `ℓ₃` is not in the coupling range, so the exact value is zero.
    pub excluded: bool,
}

impl OracleRow {
    pub fn diff(&self) -> f64 {
        (self.exact - self.oracle).abs()
    }
}

/// Every label set with `ℓ₁, ℓ₂ ≤ lmax`, `ℓ₃ ≤ min(ℓ₁+ℓ₂+1, lmax)`, in
/// lexicographic order.
pub fn oracle_table(lmax: u32) -> Result<Vec<OracleRow>> {
    let mut rows = Vec::new();
    for l1 in 0..=lmax {
        for m1 in -(l1 as i32)..=l1 as i32 {
            for l2 in 0..=lmax {
                for m2 in -(l2 as i32)..=l2 as i32 {
                    let range = crate::coupling::coupling_range(l1, m1, l2, m2)?;
                    for l3 in 0..=(l1 + l2 + 1).min(lmax) {
                        let exact = crate::coupling::structure_coeff(l1, m1, l2, m2, l3)?.to_f64();
                        let oracle = gaunt_project(l1, m1, l2, m2, l3)?;
                        rows.push(OracleRow { l1, m1, l2, m2, l3, exact, oracle, excluded: !range.contains(&l3) });
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Largest `|G − I|` entry over the quadrature Gram matrices of
/// `{Q̂_{ℓm} : ℓ ≤ lmax}`, one per `m`.
pub fn orthonormality_defect(lmax: u32, nodes: usize) -> f64 {
    let rule = QuadratureRule::cached(nodes);
    let mut worst: f64 = 0.0;
    for m in -(lmax as i32)..=lmax as i32 {
        for l1 in m.unsigned_abs()..=lmax {
            for l2 in l1..=lmax {
                let v = inner_product(l1, m, l2, m, &rule).expect("labels in range");
                let target = if l1 == l2 { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
    }
    worst
}

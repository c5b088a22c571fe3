//! SO(3) Clebsch-Gordan coefficients for integer spins and the sphere
//! structure coefficients built from them.
//!
//! All values follow the Condon-Shortley phase convention. The structure
//! coefficient for a fixed `ℓ₃` is
//!
//! ```text
//! c_{ℓ₁m₁ℓ₂m₂}^{ℓ₃} = √((2ℓ₁+1)(2ℓ₂+1)/(2ℓ₃+1)) · (ℓ₁0ℓ₂0|ℓ₃0) · (ℓ₁m₁ℓ₂m₂|ℓ₃,m₁+m₂)
//! ```
//!
//! which is the coefficient of `Ŷ_{ℓ₃,m₁+m₂}` in the product `Ŷ_{ℓ₁m₁}·Ŷ_{ℓ₂m₂}` of
//! spherical harmonics normalised to unit mean square on the sphere.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num::traits::{One, Zero};
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Surd};

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    static CACHE: LazyLock<RwLock<Vec<BigInt>>> = LazyLock::new(|| RwLock::new(vec![BigInt::one()]));
    let n = n as usize;
    if let Some(v) = CACHE.read().expect("factorial cache").get(n) {
        return v.clone();
    }
    let mut cache = CACHE.write().expect("factorial cache");
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * BigInt::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

fn check_m(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidLabel(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    Ok(())
}

fn triangle(l1: u32, l2: u32, l3: u32) -> bool {
    l3 >= l1.abs_diff(l2) && l3 <= l1 + l2
}

/// The Clebsch-Gordan coefficient as `(sign, square)`, so that several
/// coefficients can be multiplied before taking one square root.
fn cg_signed_square(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, m3: i32) -> (i32, Rational) {
    if m3 != m1 + m2 || !triangle(l1, l2, l3) || m3.unsigned_abs() > l3 {
        return (0, Rational::zero());
    }
    let (j1, j2, j, a, b, m) = (l1 as i64, l2 as i64, l3 as i64, m1 as i64, m2 as i64, m3 as i64);
    let f = factorial;
    let prefactor_num = BigInt::from(2 * j + 1)
        * f(j + j1 - j2)
        * f(j - j1 + j2)
        * f(j1 + j2 - j)
        * f(j + m)
        * f(j - m)
        * f(j1 - a)
        * f(j1 + a)
        * f(j2 - b)
        * f(j2 + b);
    let prefactor = BigRational::new(prefactor_num, f(j1 + j2 + j + 1));

    let k_min = 0.max(j2 - j - a).max(j1 - j + b);
    let k_max = (j1 + j2 - j).min(j1 - a).min(j2 + b);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = f(k) * f(j1 + j2 - j - k) * f(j1 - a - k) * f(j2 + b - k) * f(j - j2 + a + k) * f(j - j1 - b + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let sign = if sum.is_zero() {
        0
    } else if sum > BigRational::zero() {
        1
    } else {
        -1
    };
    (sign, Rational::from_big(&sum * &sum * prefactor))
}

/// Exact Condon-Shortley Clebsch-Gordan coefficient `(ℓ₁m₁ℓ₂m₂|ℓ₃m₃)`.
///
/// Zero unless `m₃ = m₁+m₂` and `(ℓ₁, ℓ₂, ℓ₃)` satisfy the triangle rule.
pub fn clebsch_gordan(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, m3: i32) -> Result<Surd> {
    check_m(l1, m1)?;
    check_m(l2, m2)?;
    check_m(l3, m3)?;
    let (sign, sq) = cg_signed_square(l1, m1, l2, m2, l3, m3);
    Ok(signed_sqrt(sign, &sq))
}

fn signed_sqrt(sign: i32, sq: &Rational) -> Surd {
    if sign == 0 {
        return Surd::zero();
    }
    let root = Surd::sqrt_rational(sq).expect("squares are non-negative");
    if sign < 0 {
        -root
    } else {
        root
    }
}

fn structure_coeff_uncached(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32) -> Surd {
    let m3 = m1 + m2;
    if m3.unsigned_abs() > l3 || !triangle(l1, l2, l3) || (l1 + l2 + l3) % 2 == 1 {
        return Surd::zero();
    }
    let (s0, sq0) = cg_signed_square(l1, 0, l2, 0, l3, 0);
    let (s1, sq1) = cg_signed_square(l1, m1, l2, m2, l3, m3);
    if s0 == 0 || s1 == 0 {
        return Surd::zero();
    }
    let weight = Rational::new(((2 * l1 + 1) * (2 * l2 + 1)) as i64, (2 * l3 + 1) as i64);
    signed_sqrt(s0 * s1, &(&weight * &(&sq0 * &sq1)))
}

/// Non-zero `(ℓ₃, c)` pairs for the product of `Ŷ_{ℓ₁m₁}` and `Ŷ_{ℓ₂m₂}`,
/// sorted by `ℓ₃`.
pub type CouplingTerms = Arc<Vec<(u32, Surd)>>;

type Key = (u32, i32, u32, i32);

static TERMS: LazyLock<RwLock<HashMap<Key, CouplingTerms>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// All non-zero structure coefficients for a label pair, memoised.
///
/// The memo is shared between threads behind a read-write lock; entries are
/// immutable once inserted.
pub fn coupling_terms(l1: u32, m1: i32, l2: u32, m2: i32) -> Result<CouplingTerms> {
    check_m(l1, m1)?;
    check_m(l2, m2)?;
    let key = (l1, m1, l2, m2);
    if let Some(v) = TERMS.read().expect("coupling memo").get(&key) {
        return Ok(v.clone());
    }
    let lo = l1.abs_diff(l2).max((m1 + m2).unsigned_abs());
    let terms: Vec<(u32, Surd)> = (lo..=l1 + l2)
        .filter(|l3| (l1 + l2 + l3) % 2 == 0)
        .map(|l3| (l3, structure_coeff_uncached(l1, m1, l2, m2, l3)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let terms = Arc::new(terms);
    TERMS.write().expect("coupling memo").entry(key).or_insert_with(|| terms.clone());
    Ok(terms)
}

/// Sphere structure coefficient `c_{ℓ₁m₁ℓ₂m₂}^{ℓ₃}` (with `m₃ = m₁+m₂`).
pub fn structure_coeff(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32) -> Result<Surd> {
    let terms = coupling_terms(l1, m1, l2, m2)?;
    Ok(terms.iter().find(|(l, _)| *l == l3).map(|(_, c)| c.clone()).unwrap_or_default())
}

/// Exactly the `ℓ₃` with a non-zero structure coefficient.
///
/// Besides the triangle, parity and `ℓ₃ ≥ |m₁+m₂|` rules this also drops the
/// accidental zeros of the Clebsch-Gordan coefficients, e.g. `(2,0;3,−2|3,−2)`.
pub fn coupling_range(l1: u32, m1: i32, l2: u32, m2: i32) -> Result<Vec<u32>> {
    Ok(coupling_terms(l1, m1, l2, m2)?.iter().map(|(l, _)| *l).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn coupling_with_scalar_is_identity() {
        for l in 0..5u32 {
            for m in -(l as i32)..=l as i32 {
                assert!(clebsch_gordan(l, m, 0, 0, l, m).unwrap().is_one());
                assert!(structure_coeff(0, 0, l, m, l).unwrap().is_one());
            }
        }
    }

    #[test]
    fn parity_selection() {
        assert!(clebsch_gordan(1, 0, 1, 0, 1, 0).unwrap().is_zero());
        assert!(structure_coeff(1, 0, 1, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn spin_one_singlet() {
        let cg = clebsch_gordan(1, 1, 1, -1, 0, 0).unwrap();
        assert_eq!(cg, Surd::monomial(q(1, 3), 3));
    }

    #[test]
    fn small_structure_coefficients() {
        // 3 · (−1/√3)² = 1
        assert!(structure_coeff(1, 0, 1, 0, 0).unwrap().is_one());
        // (3/√5) · (2/3) = 2/√5
        assert_eq!(structure_coeff(1, 0, 1, 0, 2).unwrap(), Surd::monomial(q(2, 5), 5));
    }

    #[test]
    fn ranges() {
        assert_eq!(coupling_range(1, 0, 1, 0).unwrap(), vec![0, 2]);
        assert_eq!(coupling_range(0, 0, 5, 3).unwrap(), vec![5]);
        assert_eq!(coupling_range(1, 1, 1, 1).unwrap(), vec![2]);
        // (2,0;3,−2|3,−2) vanishes although every selection rule allows it.
        assert_eq!(coupling_range(2, 0, 3, -2).unwrap(), vec![5]);
    }

    #[test]
    fn invalid_magnetic_numbers() {
        assert!(clebsch_gordan(1, 2, 1, 0, 2, 2).is_err());
        assert!(structure_coeff(1, 0, 2, -3, 3).is_err());
        assert!(coupling_range(0, 1, 0, 0).is_err());
    }

    #[test]
    fn wrong_m3_or_triangle_is_zero() {
        assert!(clebsch_gordan(1, 1, 1, 0, 2, 0).unwrap().is_zero());
        assert!(clebsch_gordan(1, 0, 1, 0, 3, 0).unwrap().is_zero());
    }
}

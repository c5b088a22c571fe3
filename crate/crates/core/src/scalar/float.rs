//! Bounded-error evaluation of surds.

use num::traits::{Signed, ToPrimitive, Zero};
use num::{BigInt, BigRational};

use super::surd::big_isqrt;
use super::Surd;

/// Approximation `A` of the surd together with an error bound `E`, valid to
/// `|A − value| ≤ E`, computed with `k` fractional bits per square root.
pub(crate) fn approx(x: &Surd, k: u32) -> (BigRational, BigRational) {
    let scale = BigInt::from(1u8) << k;
    let mut sum = BigRational::zero();
    let mut err = BigRational::zero();
    for (rad, q) in x.terms() {
        let q = q.to_big();
        if rad == 1 {
            sum += q;
            continue;
        }
        // ⌊√rad · 2^k⌋ is within 1 of the true scaled root.
        let s = big_isqrt(&(BigInt::from(rad) << (2 * k)));
        sum += &q * BigRational::new(s, scale.clone());
        err += q.abs() / BigRational::from_integer(scale.clone());
    }
    (sum, err)
}

pub(crate) fn sign(x: &Surd) -> i32 {
    let mut k = 64;
    loop {
        let (a, e) = approx(x, k);
        if a.abs() > e {
            return if a.is_positive() { 1 } else { -1 };
        }
        k *= 2;
    }
}

pub(crate) fn to_f64_prec(x: &Surd, bits: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_rational() {
        return x.as_rational().expect("rational").to_f64();
    }
    let target = BigRational::from_integer(BigInt::from(1u8) << bits);
    let mut k = bits + 16;
    loop {
        let (a, e) = approx(x, k);
        let margin = a.abs() - &e;
        if margin.is_positive() && e * &target <= margin {
            return a.to_f64().unwrap_or(f64::NAN);
        }
        k *= 2;
    }
}

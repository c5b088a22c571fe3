use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::integer::{Integer, Roots};
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::{BigInt, BigUint};
use smallvec::SmallVec;

use super::{Rational, ScalarError};

type Terms = SmallVec<[(u64, Rational); 1]>;

/// Exact real number `Σ qᵢ·√nᵢ` with rational `qᵢ` and distinct squarefree
/// radicands `nᵢ` (radicand 1 holds the rational part).
///
/// Terms are kept sorted by radicand with no zero coefficients. Square roots
/// of distinct squarefree integers are linearly independent over ℚ, so two
/// surds are equal as real numbers iff their term lists are identical.
///
/// Radicands are machine words. Multiplying two surds whose combined radicand
/// exceeds `u64::MAX` panics, like integer overflow.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: Terms,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, 1)
    }

    /// `q·√rad` for a radicand already known to be squarefree.
    pub fn monomial(q: Rational, rad: u64) -> Self {
        debug_assert!(rad >= 1);
        let mut terms = SmallVec::new();
        if !q.is_zero() {
            terms.push((rad, q));
        }
        Surd { terms }
    }

    /// `√n` for any natural `n`.
    pub fn sqrt_u64(n: u64) -> Self {
        if n == 0 {
            return Surd::zero();
        }
        let (s, t) = squarefree_split(n);
        Self::monomial(Rational::from_integer(s as i64), t)
    }

    /// Canonical surd from arbitrary `(radicand, coefficient)` pairs.
    ///
    /// Radicands need not be squarefree or distinct; a zero radicand
    /// contributes nothing.
    pub fn from_terms<I: IntoIterator<Item = (u64, Rational)>>(items: I) -> Self {
        let mut terms: Terms = SmallVec::new();
        for (rad, q) in items {
            if rad == 0 || q.is_zero() {
                continue;
            }
            let (s, t) = squarefree_split(rad);
            let q = if s == 1 { q } else { q * Rational::from_integer(s as i64) };
            terms.push((t, q));
        }
        Self::canonicalize(terms)
    }

    fn canonicalize(mut terms: Terms) -> Self {
        if terms.len() > 1 {
            terms.sort_unstable_by_key(|(r, _)| *r);
            let mut out: Terms = SmallVec::with_capacity(terms.len());
            for (r, q) in terms.into_iter() {
                match out.last_mut() {
                    Some((lr, lq)) if *lr == r => *lq = &*lq + &q,
                    _ => out.push((r, q)),
                }
            }
            out.retain(|(_, q)| !q.is_zero());
            terms = out;
        } else {
            terms.retain(|(_, q)| !q.is_zero());
        }
        Surd { terms }
    }

    /// Exact square root of a non-negative rational, `√(a/b) = (1/b)·√(ab)`
    /// with the square part of `ab` pulled out.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ScalarError> {
        match q.signum() {
            -1 => return Err(ScalarError::NegativeSqrt(q.to_string())),
            0 => return Ok(Surd::zero()),
            _ => {}
        }
        if let Some((n, d)) = q.to_small() {
            let prod = n as u128 * d as u128;
            if let Ok(p) = u64::try_from(prod) {
                let (s, t) = squarefree_split(p);
                return Ok(Self::monomial(Rational::new(s as i64, d), t));
            }
        }
        let prod = (q.numer() * q.denom()).to_biguint().expect("positive");
        let (s, t) = squarefree_split_big(&prod)?;
        let coeff = Rational::from_bigints(BigInt::from(s), q.denom());
        Ok(Self::monomial(coeff, t))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    /// True for zero or a single `q·√n` term, the surds that can be inverted.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (u64, &Rational)> + '_ {
        self.terms.iter().map(|(r, q)| (*r, q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        Surd { terms: self.terms.iter().map(|(r, c)| (*r, c * q)).collect() }
    }

    /// Inverse of a single-term surd: `(q√n)⁻¹ = (1/(qn))·√n`.
    pub fn recip(&self) -> Result<Surd, ScalarError> {
        match self.terms.as_slice() {
            [] => Err(ScalarError::DivisionByZero),
            [(r, q)] => {
                let denom = q * &Rational::from_integer(*r as i64);
                Ok(Self::monomial(denom.recip(), *r))
            }
            _ => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    pub fn checked_div(&self, rhs: &Surd) -> Result<Surd, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    /// Sign of the real value, decided exactly by refining interval bounds.
    pub fn signum(&self) -> i32 {
        match self.terms.as_slice() {
            [] => 0,
            [(_, q)] => q.signum(),
            _ => super::float::sign(self),
        }
    }

    /// Nearest `f64`, accurate to within a couple of ulps.
    pub fn to_f64(&self) -> f64 {
        self.to_f64_prec(64)
    }

    /// Float value evaluated with `precision_bits` of working precision.
    ///
    /// Each term is computed as a scaled integer square root, so the sum is
    /// within `2^(1-precision_bits)·|value|` before the final rounding to `f64`.
    pub fn to_f64_prec(&self, precision_bits: u32) -> f64 {
        super::float::to_f64_prec(self, precision_bits.max(53))
    }

    fn mul_ref(&self, rhs: &Surd) -> Surd {
        if self.is_zero() || rhs.is_zero() {
            return Surd::zero();
        }
        if let ([(ra, qa)], [(rb, qb)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            let (g, rad) = mul_radicands(*ra, *rb);
            let mut q = qa * qb;
            if g != 1 {
                q = q * Rational::from_integer(g as i64);
            }
            return Surd::monomial(q, rad);
        }
        let mut out: Terms = SmallVec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ra, qa) in &self.terms {
            for (rb, qb) in &rhs.terms {
                let (g, rad) = mul_radicands(*ra, *rb);
                let mut q = qa * qb;
                if g != 1 {
                    q = q * Rational::from_integer(g as i64);
                }
                out.push((rad, q));
            }
        }
        Self::canonicalize(out)
    }

    fn add_ref(&self, rhs: &Surd) -> Surd {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let mut out: Terms = SmallVec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let q = &a[i].1 + &b[j].1;
                    if !q.is_zero() {
                        out.push((a[i].0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Surd { terms: out }
    }

    fn neg_ref(&self) -> Surd {
        Surd { terms: self.terms.iter().map(|(r, q)| (*r, -q)).collect() }
    }
}

/// `√a·√b = g·√(ab/g²)` for squarefree `a`, `b` with `g = gcd(a, b)`.
fn mul_radicands(a: u64, b: u64) -> (u64, u64) {
    if a == 1 {
        return (1, b);
    }
    if b == 1 {
        return (1, a);
    }
    let g = a.gcd(&b);
    let rad = (a / g).checked_mul(b / g).unwrap_or_else(|| panic!("surd radicand overflow: sqrt({a})*sqrt({b})"));
    (g, rad)
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && squarefree_split(n).0 == 1
}

/// Writes `n = s²·t` with `t` squarefree. `n` must be non-zero.
///
/// Trial division runs only while `p³ ≤ r` for the unfactored remainder `r`;
/// past that point `r` has at most two prime factors, so it is squarefree
/// unless it is a perfect square.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n != 0, "squarefree_split(0)");
    let mut r = n;
    let mut s: u64 = 1;
    let mut t: u64 = 1;
    let mut take = |p: u64, r: &mut u64| {
        let mut e = 0u32;
        while *r % p == 0 {
            *r /= p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                t *= p;
            }
        }
    };
    take(2, &mut r);
    take(3, &mut r);
    let mut p: u64 = 5;
    let mut step = 2;
    while (p as u128).pow(3) <= r as u128 {
        take(p, &mut r);
        p += step;
        step = 6 - step;
    }
    if r > 1 {
        let root = r.sqrt();
        if root * root == r {
            s *= root;
        } else {
            t *= r;
        }
    }
    (s, t)
}

const BIG_TRIAL_LIMIT: u64 = 1 << 20;

fn squarefree_split_big(n: &BigUint) -> Result<(BigUint, u64), ScalarError> {
    if let Some(small) = n.to_u64() {
        let (s, t) = squarefree_split(small);
        return Ok((BigUint::from(s), t));
    }
    let mut r = n.clone();
    let mut s = BigUint::one();
    let mut t = BigUint::one();
    let mut p: u64 = 2;
    loop {
        if let Some(small) = r.to_u64() {
            let (s2, t2) = squarefree_split(small);
            s *= s2;
            t *= t2;
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > r {
            let root = r.sqrt();
            if &root * &root == r {
                s *= root;
            } else {
                t *= &r;
            }
            break;
        }
        if p > BIG_TRIAL_LIMIT {
            return Err(ScalarError::FactorizationLimit(n.to_string()));
        }
        let mut e = 0u32;
        loop {
            let (q, rem) = r.div_rem(&pb);
            if !rem.is_zero() {
                break;
            }
            r = q;
            e += 1;
        }
        if e > 0 {
            s *= pb.pow(e / 2);
            if e % 2 == 1 {
                t *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let t = t.to_u64().ok_or_else(|| ScalarError::RadicandOverflow(t.to_string()))?;
    Ok((s, t))
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd::from_rational(q)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::from_integer(n)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::one()
    }
}

macro_rules! surd_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a> $trait<&'a Surd> for &'a Surd {
            type Output = Surd;
            fn $method(self, rhs: &'a Surd) -> Surd {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                let ($a, $b) = (&self, &rhs);
                $body
            }
        }
        impl<'a> $trait<&'a Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: &'a Surd) -> Surd {
                let ($a, $b) = (&self, rhs);
                $body
            }
        }
    };
}

surd_binop!(Add, add, |a, b| a.add_ref(b));
surd_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
surd_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, rhs: &Surd) {
        *self = self.add_ref(&rhs.neg_ref());
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        self.neg_ref()
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        self.neg_ref()
    }
}

/// Integer `⌊√n⌋·sign` helper for callers that need the big integer square root.
pub(crate) fn big_isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn like_terms_merge() {
        let half_root3 = Surd::monomial(r(1, 2), 3);
        assert_eq!(&half_root3 + &half_root3, Surd::sqrt_u64(3));
    }

    #[test]
    fn cancellation_gives_empty_map() {
        let x = Surd::sqrt_u64(2) + Surd::monomial(r(-1, 1), 2);
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn distinct_radicands_are_kept() {
        let x = Surd::one() + Surd::sqrt_u64(5);
        let terms: Vec<_> = x.terms().map(|(n, q)| (n, q.clone())).collect();
        assert_eq!(terms, vec![(1, r(1, 1)), (5, r(1, 1))]);
    }

    #[test]
    fn products_reduce_radicands() {
        assert_eq!(Surd::sqrt_u64(2) * Surd::sqrt_u64(2), Surd::from_integer(2));
        assert_eq!(Surd::sqrt_u64(2) * Surd::sqrt_u64(3), Surd::sqrt_u64(6));
        // 60 = 2²·15
        assert_eq!(Surd::sqrt_u64(6) * Surd::sqrt_u64(10), Surd::monomial(r(2, 1), 15));
    }

    #[test]
    fn sqrt_of_rationals() {
        let x = Surd::sqrt_rational(&r(9, 5)).unwrap();
        assert_eq!(x, Surd::monomial(r(3, 5), 5));
        assert_eq!((&x * &x).as_rational(), Some(r(9, 5)));
        assert_eq!(Surd::sqrt_rational(&r(4, 1)).unwrap(), Surd::from_integer(2));
        assert!(Surd::sqrt_rational(&Rational::zero()).unwrap().is_zero());
        assert!(matches!(Surd::sqrt_rational(&r(-1, 3)), Err(ScalarError::NegativeSqrt(_))));
    }

    #[test]
    fn sqrt_of_big_rationals_with_small_primes() {
        // (30!)² · 7 / 11 → 30!/11 · √77
        let f30: BigInt = (1..=30u32).map(BigInt::from).product();
        let q = Rational::from_bigints(&f30 * &f30 * 7, BigInt::from(11));
        let x = Surd::sqrt_rational(&q).unwrap();
        assert_eq!(x, Surd::monomial(Rational::from_bigints(f30, BigInt::from(11)), 77));
    }

    #[test]
    fn squarefree_split_handles_large_prime_squares() {
        let p: u64 = 4_294_967_291; // largest prime below 2³²
        assert_eq!(squarefree_split(p * p), (p, 1));
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(2 * 3 * 5 * 7 * 49), (7, 210));
    }

    #[test]
    fn recip_only_for_monomials() {
        let x = Surd::monomial(r(3, 5), 5);
        assert!((&x * &x.recip().unwrap()).is_one());
        assert!(Surd::zero().recip().is_err());
        assert!((Surd::one() + Surd::sqrt_u64(2)).recip().is_err());
    }

    #[test]
    fn signum_of_near_cancelling_sum() {
        // 99/70 and 140/99 bracket √2 to within 1e-4.
        let x = Surd::sqrt_u64(2) - Surd::from_rational(r(99, 70));
        assert_eq!(x.signum(), -1);
        let y = Surd::sqrt_u64(2) - Surd::from_rational(r(140, 99));
        assert_eq!(y.signum(), 1);
    }

    fn small_surd() -> impl Strategy<Value = Surd> {
        let radicand = prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 15]);
        prop::collection::vec((radicand, -6i64..=6, 1i64..=5), 0..4)
            .prop_map(|ts| Surd::from_terms(ts.into_iter().map(|(n, a, b)| (n, Rational::new(a, b)))))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_surd(), b in small_surd(), c in small_surd()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_form_is_idempotent(a in small_surd()) {
            let again = Surd::from_terms(a.terms().map(|(n, q)| (n, q.clone())));
            prop_assert_eq!(again, a);
        }

        #[test]
        fn float_of_square_matches_square_of_float(a in small_surd()) {
            let x = a.to_f64();
            let sq = (&a * &a).to_f64();
            prop_assert!((sq - x * x).abs() <= 1e-12 * (1.0 + sq.abs()));
        }
    }
}

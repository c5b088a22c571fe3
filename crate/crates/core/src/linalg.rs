//! Exact linear algebra over the rationals, used for Cartan matrices and
//! span computations.

use crate::scalar::Rational;

/// Row-reduces `m` in place to reduced echelon form and returns the pivot
/// columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x = &*x - &(&factor * p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(&mut m.to_vec()).len()
}

pub fn integer_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect()).collect()
}

/// Basis of the right kernel `{x : m·x = 0}`.
pub fn kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&a[row][f];
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b))).collect()
}

/// Determinant by elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].recip();
        let pivot = a[c].clone();
        for row in &mut a[c + 1..] {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = &*x - &(&factor * p);
            }
        }
    }
    det
}

/// Smallest positive integer multiple of a rational vector, with the first
/// non-zero entry made positive.
pub fn primitive_integer(v: &[Rational]) -> Vec<i64> {
    use num::integer::Integer;
    use num::{BigInt, One, ToPrimitive, Zero};
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(&x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    let sign: i64 = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| if *x < BigInt::zero() { -1 } else { 1 });
    ints.iter().map(|x| (x / &g * sign).to_i64().expect("small integer kernel vector")).collect()
}

//! Coefficient scalars.
//!
//! Every series type in this crate is generic over [`Scalar`]. Exact work uses
//! [`Rational`]; `f64`/`f32` instances exist for quick numerical experiments and
//! follow the same code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A field element usable as a series coefficient.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_rational(r: &Rational) -> Self;

    /// Human-readable rendering used in failure messages.
    fn display(&self) -> String {
        format!("{self:?}")
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.clone() * b.clone();
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + prod;
    }

    /// Truncated univariate product: `out[k] = sum a[i] b[k - i]` for `k < len`.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (i, ai) in a.iter().enumerate().take(len) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(len - i) {
                out[i + j].add_mul(ai, bj);
            }
        }
        out
    }

    /// Product of two bivariate arrays in graded layout, truncated below total degree `p`.
    ///
    /// Degree `k` occupies `k(k+1)/2 .. (k+1)(k+2)/2`, ordered by the exponent of the
    /// first variable.
    fn convolve_graded(a: &[Self], b: &[Self], p: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); p * (p + 1) / 2];
        for k1 in 0..p {
            let o1 = k1 * (k1 + 1) / 2;
            for i1 in 0..=k1 {
                let x = &a[o1 + i1];
                if x.is_zero() {
                    continue;
                }
                for k2 in 0..p - k1 {
                    let o2 = k2 * (k2 + 1) / 2;
                    let k = k1 + k2;
                    let base = k * (k + 1) / 2 + i1;
                    for i2 in 0..=k2 {
                        out[base + i2].add_mul(x, &b[o2 + i2]);
                    }
                }
            }
        }
        out
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn display(&self) -> String {
        self.to_string()
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    // Products are formed over a common denominator so the inner loop runs on
    // integers; one reduction per output coefficient instead of one per term.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let (an, ad) = clear_denominators(&a[..a.len().min(len)]);
        let (bn, bd) = clear_denominators(&b[..b.len().min(len)]);
        let mut out = vec![BigInt::zero(); len];
        for (i, ai) in an.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in bn.iter().enumerate().take(len - i) {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        let den = ad * bd;
        out.into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect()
    }

    fn convolve_graded(a: &[Self], b: &[Self], p: usize) -> Vec<Self> {
        let (an, ad) = clear_denominators(a);
        let (bn, bd) = clear_denominators(b);
        let mut out = vec![BigInt::zero(); p * (p + 1) / 2];
        for k1 in 0..p {
            let o1 = k1 * (k1 + 1) / 2;
            for i1 in 0..=k1 {
                let x = &an[o1 + i1];
                if x.is_zero() {
                    continue;
                }
                for k2 in 0..p - k1 {
                    let o2 = k2 * (k2 + 1) / 2;
                    let k = k1 + k2;
                    let base = k * (k + 1) / 2 + i1;
                    for i2 in 0..=k2 {
                        let y = &bn[o2 + i2];
                        if !y.is_zero() {
                            out[base + i2] += x * y;
                        }
                    }
                }
            }
        }
        let den = ad * bd;
        out.into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect()
    }
}

/// Writes `values[i] = nums[i] / den` with integer `nums` and a common `den`.
fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for v in values {
        if !v.is_zero() && !v.denom().is_one() {
            den = den.lcm(v.denom());
        }
    }
    let nums = values
        .iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else if v.denom() == &den {
                v.numer().clone()
            } else {
                v.numer() * (&den / v.denom())
            }
        })
        .collect();
    (nums, den)
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Shorthand for an exact rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an exact integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `p/q` rendering with an explicit denominator, e.g. `240/1`.
pub fn fmt_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer power of a scalar; negative exponents invert.
pub fn powi<T: Scalar>(x: &T, e: i64) -> T {
    let mut base = if e < 0 { T::one() / x.clone() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_fraction(&int(240)), "240/1");
        assert_eq!(fmt_fraction(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn rational_convolution_matches_generic() {
        let a: Vec<Rational> = (1..6).map(|k| rat(k, k + 2)).collect();
        let b: Vec<Rational> = (1..6).map(|k| rat(3 - k, 2 * k + 1)).collect();
        let fast = <Rational as Scalar>::convolve(&a, &b, 5);
        let mut slow = vec![Rational::zero(); 5];
        for i in 0..5 {
            for j in 0..5 - i {
                slow[i + j] += &a[i] * &b[j];
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(powi(&rat(2, 3), -3), rat(27, 8));
        assert_eq!(powi(&2.0f64, 10), 1024.0);
        assert_eq!(powi(&rat(5, 1), 0), int(1));
    }
}

//! Truncated univariate Puiseux series.

use std::borrow::Cow;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::{powi, Rational, Scalar};

/// `sum_n coeffs[n] q^((start + n)/ram) + O(q^(prec/ram))`.
///
/// All exponents are stored as integers in units of `1/ram`. The tail starting
/// at `prec` is unknown, never assumed to be zero. The coefficient vector is
/// dense up to `prec` and its first entry is nonzero unless the series is zero
/// to its whole known order, in which case it is empty and `start == prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct PSeries<T> {
    ram: u32,
    start: i64,
    coeffs: Vec<T>,
    prec: i64,
}

/// A coefficient that contradicts an expected vanishing.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub exponent: Rational,
    pub value: String,
}

impl<T: Scalar> PSeries<T> {
    /// Builds and normalizes a series. `coeffs[n]` multiplies `q^((start+n)/ram)`;
    /// entries at or beyond `prec` are dropped, gaps below `prec` are zero.
    pub fn new(ram: u32, start: i64, coeffs: Vec<T>, prec: i64) -> Self {
        assert!(ram > 0, "ramification must be positive");
        let mut s = PSeries {
            ram,
            start,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// Integer-exponent series `sum coeffs[n] q^n + O(q^prec)`.
    pub fn from_coeffs(coeffs: Vec<T>, prec: i64) -> Self {
        Self::new(1, 0, coeffs, prec)
    }

    pub fn zero(prec: i64) -> Self {
        Self::new(1, prec, Vec::new(), prec)
    }

    pub fn constant(c: T, prec: i64) -> Self {
        Self::new(1, 0, vec![c], prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(T::one(), prec)
    }

    /// `c * q^(exp/ram) + O(q^(prec/ram))`.
    pub fn monomial(c: T, exp: i64, ram: u32, prec: i64) -> Self {
        Self::new(ram, exp, vec![c], prec)
    }

    /// The variable itself, `q + O(q^prec)`.
    pub fn var(prec: i64) -> Self {
        Self::monomial(T::one(), 1, 1, prec)
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.start).max(0) as usize;
        if self.start >= self.prec {
            self.coeffs.clear();
        } else {
            self.coeffs.truncate(keep);
            self.coeffs.resize(keep, T::zero());
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
        }
        self.reduce_ramification();
    }

    fn reduce_ramification(&mut self) {
        if self.ram == 1 {
            return;
        }
        let mut g = BigInt::from(self.ram);
        g = g.gcd(&BigInt::from(self.prec));
        if !self.coeffs.is_empty() {
            g = g.gcd(&BigInt::from(self.start));
        }
        for (n, c) in self.coeffs.iter().enumerate() {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(&BigInt::from(self.start + n as i64));
            }
        }
        let g: i64 = g.try_into().unwrap_or(1);
        if g <= 1 {
            return;
        }
        let gu = g as usize;
        let new_coeffs: Vec<T> = self.coeffs.iter().step_by(gu).cloned().collect();
        self.coeffs = new_coeffs;
        self.start /= g;
        self.prec /= g;
        self.ram /= g as u32;
        if self.coeffs.is_empty() {
            self.start = self.prec;
        }
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// Exponent of the first stored coefficient, in units of `1/ram`.
    pub fn start_units(&self) -> i64 {
        self.start
    }

    /// Precision bound in units of `1/ram` (exclusive).
    pub fn prec_units(&self) -> i64 {
        self.prec
    }

    /// Dense coefficients from `start_units()` up to the precision bound.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The series is `... + O(q^precision())`.
    pub fn precision(&self) -> Rational {
        Rational::new(self.prec.into(), self.ram.into())
    }

    /// Exponent of the leading nonzero term, `None` if zero to its order.
    pub fn valuation(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(Rational::new(self.start.into(), self.ram.into()))
        }
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^exp`; an error if `exp` lies in the unknown tail.
    pub fn coeff(&self, exp: &Rational) -> Result<T> {
        if *exp >= self.precision() {
            return Err(Error::OrderUnderflow(format!(
                "coefficient of q^{exp} requested, series known below q^{}",
                self.precision()
            )));
        }
        let scaled = exp * Rational::from_integer(self.ram.into());
        if !scaled.denom().is_one() {
            return Ok(T::zero());
        }
        let e: i64 = scaled.numer().try_into().unwrap_or(i64::MAX);
        if e < self.start {
            return Ok(T::zero());
        }
        Ok(self.coeffs[(e - self.start) as usize].clone())
    }

    /// Coefficient of `q^n` for integer `n`.
    pub fn coeff_int(&self, n: i64) -> Result<T> {
        self.coeff(&Rational::from_integer(n.into()))
    }

    /// Nonzero terms as `(exponent, coefficient)`, sorted by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &T)> + '_ {
        let ram = self.ram;
        let start = self.start;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| (Rational::new((start + n as i64).into(), ram.into()), c))
    }

    /// Re-expresses the series with ramification `ram`, a multiple of the current one.
    pub fn with_ram(&self, ram: u32) -> Self {
        assert!(ram.is_multiple_of(self.ram), "target ramification must be a multiple");
        let k = (ram / self.ram) as i64;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::new();
        if !self.coeffs.is_empty() {
            coeffs = vec![T::zero(); ((self.prec - self.start) * k) as usize];
            for (n, c) in self.coeffs.iter().enumerate() {
                coeffs[n * k as usize] = c.clone();
            }
        }
        PSeries {
            ram,
            start: self.start * k,
            coeffs,
            prec: self.prec * k,
        }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.ram == b.ram {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = BigInt::from(a.ram).lcm(&BigInt::from(b.ram));
        let l: u32 = l.try_into().expect("ramification overflow");
        (Cow::Owned(a.with_ram(l)), Cow::Owned(b.with_ram(l)))
    }

    /// Lowers the precision to `O(q^bound)` if it is currently higher.
    pub fn truncate(&self, bound: &Rational) -> Self {
        let scaled = bound * Rational::from_integer(self.ram.into());
        let units: i64 = scaled.ceil().to_integer().try_into().unwrap_or(i64::MAX);
        self.truncate_units(units)
    }

    pub fn truncate_units(&self, units: i64) -> Self {
        if units >= self.prec {
            return self.clone();
        }
        Self::new(self.ram, self.start, self.coeffs.clone(), units)
    }

    /// Claims zeros up to `units`. Only sound when the caller knows the tail vanishes
    /// to that order (exact polynomials) or is running a self-correcting iteration.
    pub(crate) fn extend_zero_units(&self, units: i64) -> Self {
        if units <= self.prec {
            return self.clone();
        }
        if self.coeffs.is_empty() {
            return Self::new(self.ram, units, Vec::new(), units);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize((units - self.start) as usize, T::zero());
        PSeries {
            ram: self.ram,
            start: self.start,
            coeffs,
            prec: units,
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.ram,
            self.start,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            self.prec,
        )
    }

    /// Multiplies by `q^(units/ram)`.
    pub fn shift_units(&self, units: i64) -> Self {
        PSeries {
            ram: self.ram,
            start: self.start + units,
            coeffs: self.coeffs.clone(),
            prec: self.prec + units,
        }
    }

    pub fn try_add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = Self::aligned(self, other);
        let prec = a.prec.min(b.prec);
        let start = a.start.min(b.start).min(prec);
        let len = (prec - start).max(0) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (n, c) in a.coeffs.iter().enumerate() {
            let idx = a.start + n as i64 - start;
            if (idx as usize) < len {
                coeffs[idx as usize] = c.clone();
            }
        }
        for (n, c) in b.coeffs.iter().enumerate() {
            let idx = b.start + n as i64 - start;
            if (idx as usize) < len {
                let slot = &mut coeffs[idx as usize];
                let cur = std::mem::replace(slot, T::zero());
                *slot = if negate { cur - c.clone() } else { cur + c.clone() };
            }
        }
        Self::new(a.ram, start, coeffs, prec)
    }

    fn product(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let prec = (a.start + b.prec).min(b.start + a.prec);
        let start = a.start + b.start;
        if a.coeffs.is_empty() || b.coeffs.is_empty() || start >= prec {
            return Self::new(a.ram, prec, Vec::new(), prec);
        }
        let len = (prec - start) as usize;
        let coeffs = T::convolve(&a.coeffs, &b.coeffs, len);
        Self::new(a.ram, start, coeffs, prec)
    }

    /// Multiplicative inverse; needs a nonzero leading coefficient.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let r = self.coeffs.len();
        let c0inv = T::one() / c0.clone();
        let mut out: Vec<T> = Vec::with_capacity(r);
        out.push(c0inv.clone());
        for n in 1..r {
            let mut acc = T::zero();
            for k in 1..=n {
                acc.add_mul(&self.coeffs[k], &out[n - k]);
            }
            out.push(-(acc * c0inv.clone()));
        }
        Ok(Self::new(self.ram, -self.start, out, -self.start + r as i64))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power with repeated squaring; negative powers invert first.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e == 0 {
            // a^0 = 1, known to the relative precision of a
            let rel = self.prec - self.start;
            return Ok(PSeries::new(self.ram, 0, vec![T::one()], rel.max(0)));
        }
        let mut b = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => &a * &b,
                });
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// `self^e` for rational `e` by the binomial-series recurrence.
    ///
    /// Non-integer exponents need leading coefficient 1; the result lives at
    /// ramification `ram * den(e)` before reduction.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        let p: i64 = e
            .numer()
            .try_into()
            .map_err(|_| Error::OrderUnderflow("exponent too large".into()))?;
        let d: i64 = e
            .denom()
            .try_into()
            .map_err(|_| Error::OrderUnderflow("exponent too large".into()))?;
        let Some(c0) = self.coeffs.first() else {
            if e.is_positive() {
                let units = (self.prec as i128 * p as i128) as i64;
                return Ok(PSeries::new(self.ram * d as u32, units, Vec::new(), units));
            }
            return Err(Error::DivisionByZero);
        };
        if d != 1 && !c0.is_one() {
            return Err(Error::NonUnitLeading(c0.display()));
        }
        let r = self.coeffs.len();
        let ef = T::from_rational(e);
        let c0inv = T::one() / c0.clone();
        let u: Vec<T> = self
            .coeffs
            .iter()
            .map(|c| c.clone() * c0inv.clone())
            .collect();
        let mut g: Vec<T> = Vec::with_capacity(r);
        g.push(T::one());
        for n in 1..r {
            let mut acc = T::zero();
            for k in 1..=n {
                let factor = ef.clone() * T::from_i64(k as i64) - T::from_i64((n - k) as i64);
                acc.add_mul(&(factor * u[k].clone()), &g[n - k]);
            }
            g.push(acc / T::from_i64(n as i64));
        }
        let lead = if d == 1 { powi(c0, p) } else { T::one() };
        let du = d as usize;
        let mut coeffs = vec![T::zero(); (r - 1) * du + 1];
        for (n, gn) in g.into_iter().enumerate() {
            coeffs[n * du] = gn * lead.clone();
        }
        let start = p * self.start;
        let prec = start + d * r as i64;
        Ok(Self::new(self.ram * d as u32, start, coeffs, prec))
    }

    /// Euler derivative `q d/dq`: the coefficient of `q^e` is multiplied by `e`.
    pub fn dq(&self) -> Self {
        let ram = T::from_i64(self.ram as i64);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.clone() * T::from_i64(self.start + n as i64) / ram.clone())
            .collect();
        Self::new(self.ram, self.start, coeffs, self.prec)
    }

    /// Ordinary derivative `d/dq`; integer exponents only.
    pub fn deriv(&self) -> Result<Self> {
        self.require_integral()?;
        Ok(self.dq().shift_units(-1))
    }

    fn require_integral(&self) -> Result<()> {
        if self.ram != 1 {
            Err(Error::FractionalExponents(self.ram))
        } else {
            Ok(())
        }
    }

    /// `exp(self)`; every known term must have positive exponent.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs.is_empty() && self.start <= 0 {
            return Err(Error::ExpDomain);
        }
        if self.prec <= 0 {
            return Err(Error::ExpDomain);
        }
        let r = self.prec as usize;
        let a = |k: usize| -> Option<&T> {
            let k = k as i64;
            if k < self.start || self.coeffs.is_empty() {
                None
            } else {
                self.coeffs.get((k - self.start) as usize)
            }
        };
        let mut g: Vec<T> = Vec::with_capacity(r);
        g.push(T::one());
        for n in 1..r {
            let mut acc = T::zero();
            for k in 1..=n {
                if let Some(ak) = a(k) {
                    if !ak.is_zero() {
                        acc.add_mul(&(ak.clone() * T::from_i64(k as i64)), &g[n - k]);
                    }
                }
            }
            g.push(acc / T::from_i64(n as i64));
        }
        Ok(Self::new(self.ram, 0, g, self.prec))
    }

    /// `log(self)` for a series `1 + (positive-exponent terms)`.
    pub fn log(&self) -> Result<Self> {
        if self.start != 0 || !self.coeffs.first().is_some_and(|c| c.is_one()) {
            return Err(Error::LogDomain);
        }
        let r = self.coeffs.len();
        let a = &self.coeffs;
        let mut g: Vec<T> = vec![T::zero(); r];
        for n in 1..r {
            let mut acc = a[n].clone() * T::from_i64(n as i64);
            for k in 1..n {
                let t = g[k].clone() * T::from_i64(k as i64);
                acc = acc - t * a[n - k].clone();
            }
            g[n] = acc / T::from_i64(n as i64);
        }
        Ok(Self::new(self.ram, 0, g, self.prec))
    }

    /// Substitutes `inner` for the variable of `self` (which must have integer exponents).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.require_integral()?;
        if inner.coeffs.is_empty() {
            if inner.prec <= 0 {
                return Err(Error::NonPositiveValuation);
            }
            if self.start < 0 {
                return Err(Error::NonPositiveValuation);
            }
            let c0 = if self.start == 0 && !self.coeffs.is_empty() {
                self.coeffs[0].clone()
            } else {
                T::zero()
            };
            let prec = if self.prec >= 1 { inner.prec } else { 0 };
            return Ok(Self::new(inner.ram, 0, vec![c0], prec));
        }
        let v = inner.start;
        if v <= 0 {
            return Err(Error::NonPositiveValuation);
        }
        let rel = inner.prec - v;
        let mut target = self.prec.saturating_mul(v);
        let first_nonconst = self
            .terms_units()
            .find(|(k, _)| *k != 0)
            .map(|(k, _)| k);
        if let Some(k) = first_nonconst {
            target = target.min(k * v + rel);
        }
        let mut acc = Self::new(inner.ram, target, Vec::new(), target);
        if self.coeffs.is_empty() {
            return Ok(acc);
        }
        let kmin = self.start;
        let kmax = self.prec - 1;
        // powers for k >= 0
        if kmax >= 0 {
            let mut pw = Self::new(inner.ram, 0, vec![T::one()], target);
            for k in 0..=kmax {
                if k > 0 {
                    pw = (&pw * inner).truncate_units(target);
                    if pw.start >= target {
                        break;
                    }
                }
                if k >= kmin {
                    let c = &self.coeffs[(k - kmin) as usize];
                    if !c.is_zero() {
                        acc = &acc + &pw.scale(c);
                    }
                }
            }
        }
        if kmin < 0 {
            let invi = inner.inv()?;
            let mut pw = Self::new(inner.ram, 0, vec![T::one()], target);
            for k in 1..=(-kmin) {
                pw = &pw * &invi;
                let idx = -k - kmin;
                if idx >= 0 && (idx as usize) < self.coeffs.len() {
                    let c = &self.coeffs[idx as usize];
                    if !c.is_zero() {
                        acc = &acc + &pw.scale(c);
                    }
                }
            }
        }
        Ok(acc.truncate_units(target))
    }

    fn terms_units(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| (self.start + n as i64, c))
    }

    /// Compositional inverse of `c q + ...` by Newton iteration.
    pub fn reversion(&self) -> Result<Self> {
        self.require_integral()?;
        if self.coeffs.is_empty() || self.start != 1 {
            return Err(Error::ZeroLinearCoefficient);
        }
        let p = self.prec;
        let c1 = self.coeffs[0].clone();
        let mut b = Self::monomial(T::one() / c1, 1, 1, 2.min(p));
        let da = self.deriv()?;
        let q = Self::var(p);
        let mut known = b.prec;
        while known < p {
            let target = (2 * known - 1).min(p).max(known + 1);
            let bb = b.extend_zero_units(target);
            let err = &self.compose(&bb)?.truncate_units(target) - &q;
            let slope = da.compose(&bb)?;
            let corr = err.div(&slope)?;
            b = (&bb - &corr).truncate_units(target);
            b = b.extend_zero_units(target);
            known = target;
        }
        Ok(b)
    }

    /// `q -> q^k`, realizing `tau -> k tau` on q-expansions.
    pub fn rescale(&self, k: u32) -> Self {
        assert!(k > 0, "rescale factor must be positive");
        let k64 = k as i64;
        let mut coeffs = Vec::new();
        if !self.coeffs.is_empty() {
            coeffs = vec![T::zero(); ((self.prec - self.start) * k64) as usize];
            for (n, c) in self.coeffs.iter().enumerate() {
                coeffs[n * k as usize] = c.clone();
            }
        }
        Self::new(self.ram, self.start * k64, coeffs, self.prec * k64)
    }

    /// The first coefficient with exponent `<= order` that is nonzero, or an
    /// error when the series is not known through `order`.
    pub fn first_nonzero_through(&self, order: &Rational) -> Result<Option<Mismatch>> {
        if self.precision() <= *order {
            return Err(Error::OrderUnderflow(format!(
                "needed through q^{order}, known only below q^{}",
                self.precision()
            )));
        }
        Ok(self
            .terms()
            .find(|(e, _)| e <= order)
            .map(|(exponent, c)| Mismatch {
                exponent,
                value: c.display(),
            }))
    }
}

impl<T: Scalar> Add for &PSeries<T> {
    type Output = PSeries<T>;
    fn add(self, rhs: Self) -> PSeries<T> {
        self.combine(rhs, false)
    }
}

impl<T: Scalar> Sub for &PSeries<T> {
    type Output = PSeries<T>;
    fn sub(self, rhs: Self) -> PSeries<T> {
        self.combine(rhs, true)
    }
}

impl<T: Scalar> Mul for &PSeries<T> {
    type Output = PSeries<T>;
    fn mul(self, rhs: Self) -> PSeries<T> {
        self.product(rhs)
    }
}

impl<T: Scalar> Neg for &PSeries<T> {
    type Output = PSeries<T>;
    fn neg(self) -> PSeries<T> {
        PSeries {
            ram: self.ram,
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }
}

impl<T: Scalar> Add for PSeries<T> {
    type Output = PSeries<T>;
    fn add(self, rhs: Self) -> PSeries<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for PSeries<T> {
    type Output = PSeries<T>;
    fn sub(self, rhs: Self) -> PSeries<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for PSeries<T> {
    type Output = PSeries<T>;
    fn mul(self, rhs: Self) -> PSeries<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for PSeries<T> {
    type Output = PSeries<T>;
    fn neg(self) -> PSeries<T> {
        -&self
    }
}

impl PSeries<Rational> {
    /// Exact-arithmetic convenience: every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type S = PSeries<Rational>;

    fn poly(c: &[i64], prec: i64) -> S {
        S::from_coeffs(c.iter().map(|&x| int(x)).collect(), prec)
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[1, 1], 10);
        let b = poly(&[1, -1], 10);
        assert_eq!(&a * &b, poly(&[1, 0, -1], 10));
    }

    #[test]
    fn geometric_series() {
        let inv = poly(&[1, -1], 8).inv().unwrap();
        assert_eq!(inv, poly(&[1; 8], 8));
    }

    #[test]
    fn division_by_zero_series_is_an_error() {
        let z = S::zero(5);
        assert_eq!(poly(&[1], 5).div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_shifts_valuation() {
        let a = S::monomial(int(3), 5, 1, 12);
        let b = S::monomial(int(1), 2, 1, 12);
        let c = a.div(&b).unwrap();
        assert_eq!(c.valuation(), Some(int(3)));
        // 3q^3 (1 + O(q^7)) / (1 + O(q^10))
        assert_eq!(c.precision(), int(10));
    }

    #[test]
    fn binomial_half_power() {
        let s = poly(&[1, 1], 6).pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(s.coeff_int(0).unwrap(), int(1));
        assert_eq!(s.coeff_int(1).unwrap(), rat(1, 2));
        assert_eq!(s.coeff_int(2).unwrap(), rat(-1, 8));
        assert_eq!(s.coeff_int(3).unwrap(), rat(1, 16));
    }

    #[test]
    fn fractional_power_of_nonunit_leading_fails() {
        let s = poly(&[2, 1], 6);
        assert!(matches!(s.pow_rational(&rat(1, 3)), Err(Error::NonUnitLeading(_))));
        // integer powers accept any leading coefficient
        let cube = s.pow_rational(&int(3)).unwrap();
        assert_eq!(cube, (&(&s * &s) * &s));
    }

    #[test]
    fn power_of_ramified_leading_term() {
        // (q (1 + q))^(1/2) = q^(1/2) (1 + q/2 - ...)
        let s = poly(&[0, 1, 1], 6).pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(s.ram(), 2);
        assert_eq!(s.valuation(), Some(rat(1, 2)));
        assert_eq!(s.coeff(&rat(3, 2)).unwrap(), rat(1, 2));
        assert_eq!(s.coeff(&int(1)).unwrap(), int(0));
    }

    #[test]
    fn dq_monomial_rule() {
        let s = S::monomial(int(1), 3, 1, 10);
        assert_eq!(s.dq(), S::monomial(int(3), 3, 1, 10));
        assert!(S::constant(int(5), 10).dq().is_zero());
    }

    #[test]
    fn mercator_series() {
        let l = poly(&[1, 1], 6).log().unwrap();
        let want: Vec<Rational> = vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)];
        assert_eq!(l, S::from_coeffs(want, 6));
        assert_eq!(S::zero(6).exp().unwrap(), S::one(6));
    }

    #[test]
    fn exp_and_log_domain_errors() {
        assert_eq!(poly(&[1, 1], 5).exp(), Err(Error::ExpDomain));
        assert_eq!(poly(&[2, 1], 5).log(), Err(Error::LogDomain));
        assert_eq!(poly(&[0, 1], 5).log(), Err(Error::LogDomain));
    }

    #[test]
    fn compose_identity_substitution() {
        let outer = poly(&[1, 1, 1], 3);
        let inner = S::var(10);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c, poly(&[1, 1, 1], 3));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let outer = poly(&[1, 1], 5);
        assert_eq!(outer.compose(&poly(&[1, 1], 5)), Err(Error::NonPositiveValuation));
    }

    #[test]
    fn reversion_of_identity_and_catalan() {
        assert_eq!(S::var(9).reversion().unwrap(), S::var(9));
        let r = poly(&[0, 1, -1], 9).reversion().unwrap();
        let catalan = [0, 1, 1, 2, 5, 14, 42, 132, 429];
        assert_eq!(r, poly(&catalan, 9));
    }

    #[test]
    fn reversion_needs_linear_term() {
        assert_eq!(poly(&[0, 0, 1], 9).reversion(), Err(Error::ZeroLinearCoefficient));
        assert_eq!(poly(&[1, 1], 9).reversion(), Err(Error::ZeroLinearCoefficient));
    }

    #[test]
    fn rescale_spreads_coefficients() {
        assert_eq!(poly(&[1, 1], 5).rescale(3), poly(&[1, 0, 0, 1], 15));
    }

    #[test]
    fn mixed_ramification_merges_to_lcm() {
        let a = S::monomial(int(1), 1, 2, 20); // q^(1/2)
        let b = S::monomial(int(1), 1, 3, 30); // q^(1/3)
        let c = &a * &b;
        assert_eq!(c.ram(), 6);
        assert_eq!(c.valuation(), Some(rat(5, 6)));
        assert_eq!(c.precision(), int(10) + rat(1, 3));
    }

    #[test]
    fn unknown_coefficients_are_errors() {
        let s = poly(&[1, 2, 3], 3);
        assert!(s.coeff_int(3).is_err());
        assert!(s.first_nonzero_through(&int(3)).is_err());
    }
}

//! Bivariate truncated power series and fractions with linear-form denominators.
//!
//! Truncation is by total degree: a [`BiSeries`] of precision `P` knows every
//! coefficient of `u1^i u2^j` with `i + j < P`. Total degree is the grading in
//! which exact division by a linear form `a u1 + b u2` loses exactly one unit
//! of precision, which is what [`BiFrac`] relies on.

use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::pseries::PSeries;

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let k = i + j;
    k * (k + 1) / 2 + i
}

#[inline]
fn tri(p: usize) -> usize {
    p * (p + 1) / 2
}

/// `sum c[i][j] u1^i u2^j + O(total degree prec)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<T> {
    prec: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> BiSeries<T> {
    pub fn zero(prec: usize) -> Self {
        BiSeries {
            prec,
            coeffs: vec![T::zero(); tri(prec)],
        }
    }

    pub fn constant(c: T, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(T::one(), prec)
    }

    /// `c u1^i u2^j`, dropped if its degree is not below `prec`.
    pub fn monomial(c: T, i: usize, j: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if i + j < prec {
            s.coeffs[idx(i, j)] = c;
        }
        s
    }

    pub fn var1(prec: usize) -> Self {
        Self::monomial(T::one(), 1, 0, prec)
    }

    pub fn var2(prec: usize) -> Self {
        Self::monomial(T::one(), 0, 1, prec)
    }

    /// Fills every known coefficient from `f(i, j)`.
    pub fn from_fn(prec: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut coeffs = Vec::with_capacity(tri(prec));
        for k in 0..prec {
            for i in 0..=k {
                coeffs.push(f(i, k - i));
            }
        }
        BiSeries { prec, coeffs }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Coefficient of `u1^i u2^j`; an error if that term is not known.
    pub fn coeff(&self, i: usize, j: usize) -> Result<T> {
        if i + j >= self.prec {
            return Err(Error::OrderUnderflow(format!(
                "coefficient of u1^{i} u2^{j} requested, series known below total degree {}",
                self.prec
            )));
        }
        Ok(self.coeffs[idx(i, j)].clone())
    }

    /// Known coefficients of total degree `k`, by increasing power of `u1`.
    pub fn component(&self, k: usize) -> &[T] {
        &self.coeffs[tri(k)..tri(k + 1)]
    }

    /// Nonzero known terms as `(i, j, coefficient)`, by degree then power of `u1`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        (0..self.prec).flat_map(move |k| {
            self.component(k)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (i, k - i, c))
        })
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..self.prec).find(|&k| self.component(k).iter().any(|c| !c.is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(i, j, c)| &self.coeffs[idx(j, i)] == c)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        BiSeries {
            prec,
            coeffs: self.coeffs[..tri(prec)].to_vec(),
        }
    }

    fn padded(&self, prec: usize) -> Vec<T> {
        let mut c = self.coeffs[..tri(prec.min(self.prec))].to_vec();
        c.resize(tri(prec), T::zero());
        c
    }

    pub fn scale(&self, c: &T) -> Self {
        BiSeries {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let prec = self.prec.min(other.prec);
        let n = tri(prec);
        let coeffs = self.coeffs[..n]
            .iter()
            .zip(&other.coeffs[..n])
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        BiSeries { prec, coeffs }
    }

    fn product(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.prec);
        let vb = other.valuation().unwrap_or(other.prec);
        let prec = (self.prec + vb).min(other.prec + va);
        let coeffs = T::convolve_graded(&self.padded(prec), &other.padded(prec), prec);
        BiSeries { prec, coeffs }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let p = self.prec;
        if p == 0 {
            return Ok(Self::zero(0));
        }
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c0inv = T::one() / c0;
        let mut g = vec![T::zero(); tri(p)];
        g[0] = c0inv.clone();
        for k in 1..p {
            let mut acc = vec![T::zero(); k + 1];
            for d in 1..=k {
                let a = &self.coeffs[tri(d)..tri(d + 1)];
                let gk = &g[tri(k - d)..tri(k - d + 1)];
                for (ia, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (ig, y) in gk.iter().enumerate() {
                        acc[ia + ig].add_mul(x, y);
                    }
                }
            }
            let base = tri(k);
            for (i, v) in acc.into_iter().enumerate() {
                g[base + i] = -(v * c0inv.clone());
            }
        }
        Ok(BiSeries { prec: p, coeffs: g })
    }

    /// `u1 d/du1`.
    pub fn dq1(&self) -> Self {
        Self::from_fn(self.prec, |i, j| self.coeffs[idx(i, j)].clone() * T::from_i64(i as i64))
    }

    /// `u2 d/du2`.
    pub fn dq2(&self) -> Self {
        Self::from_fn(self.prec, |i, j| self.coeffs[idx(i, j)].clone() * T::from_i64(j as i64))
    }

    /// Exchanges the two variables.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.prec, |i, j| self.coeffs[idx(j, i)].clone())
    }

    /// Lifts a one-variable power series into the first slot.
    pub fn embed1(s: &PSeries<T>, prec: usize) -> Result<Self> {
        if s.ram() != 1 {
            return Err(Error::FractionalExponents(s.ram()));
        }
        if s.start_units() < 0 && !s.is_zero() {
            return Err(Error::OrderUnderflow("negative exponents cannot be embedded".into()));
        }
        let p = prec.min(s.prec_units().max(0) as usize);
        let mut out = Self::zero(p);
        for (e, c) in s.terms() {
            let i: usize = e.to_integer().try_into().unwrap_or(usize::MAX);
            if i < p {
                out.coeffs[idx(i, 0)] = c.clone();
            }
        }
        Ok(out)
    }

    /// Lifts a one-variable power series into the second slot.
    pub fn embed2(s: &PSeries<T>, prec: usize) -> Result<Self> {
        Ok(Self::embed1(s, prec)?.transpose())
    }

    /// Sets `u2 = 0`.
    pub fn restrict1(&self) -> PSeries<T> {
        let c = (0..self.prec).map(|i| self.coeffs[idx(i, 0)].clone()).collect();
        PSeries::from_coeffs(c, self.prec as i64)
    }

    /// Multiplies by the linear form `a u1 + b u2`; the product is known one degree further.
    pub fn mul_linear(&self, a: &T, b: &T) -> Self {
        let p = self.prec + 1;
        let mut out = Self::zero(p);
        for k in 0..self.prec {
            for i in 0..=k {
                let c = &self.coeffs[idx(i, k - i)];
                if c.is_zero() {
                    continue;
                }
                out.coeffs[idx(i + 1, k - i)].add_mul(a, c);
                out.coeffs[idx(i, k - i + 1)].add_mul(b, c);
            }
        }
        out
    }

    /// Exact quotient by `a u1 + b u2`, known one degree less. Fails when some
    /// known homogeneous component is not divisible.
    pub fn div_linear(&self, a: &T, b: &T) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let not_divisible = || Error::Degenerate("series not divisible by the linear form".into());
        if self.prec == 0 {
            return Ok(Self::zero(0));
        }
        if !self.coeffs[0].is_zero() {
            return Err(not_divisible());
        }
        let p = self.prec - 1;
        let mut out = Self::zero(p);
        for k in 1..self.prec {
            let n = self.component(k);
            let mut m = vec![T::zero(); k];
            if !b.is_zero() {
                // n_i = a m_{i-1} + b m_i
                for i in 0..k {
                    let prev = if i == 0 { T::zero() } else { a.clone() * m[i - 1].clone() };
                    m[i] = (n[i].clone() - prev) / b.clone();
                }
                if n[k] != a.clone() * m[k - 1].clone() {
                    return Err(not_divisible());
                }
            } else {
                if !n[0].is_zero() {
                    return Err(not_divisible());
                }
                for i in 0..k {
                    m[i] = n[i + 1].clone() / a.clone();
                }
            }
            let base = tri(k - 1);
            for (i, v) in m.into_iter().enumerate() {
                out.coeffs[base + i] = v;
            }
        }
        Ok(out)
    }
}

impl<T: Scalar> Add for &BiSeries<T> {
    type Output = BiSeries<T>;
    fn add(self, rhs: Self) -> BiSeries<T> {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &BiSeries<T> {
    type Output = BiSeries<T>;
    fn sub(self, rhs: Self) -> BiSeries<T> {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Mul for &BiSeries<T> {
    type Output = BiSeries<T>;
    fn mul(self, rhs: Self) -> BiSeries<T> {
        self.product(rhs)
    }
}

impl<T: Scalar> Neg for &BiSeries<T> {
    type Output = BiSeries<T>;
    fn neg(self) -> BiSeries<T> {
        BiSeries {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// The linear forms allowed in a [`BiFrac`] denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `u1`
    U1,
    /// `u2`
    U2,
    /// `u1 + u2`
    Sum,
    /// `u1 - u2`
    Diff,
}

impl Atom {
    pub const ALL: [Atom; 4] = [Atom::U1, Atom::U2, Atom::Sum, Atom::Diff];

    fn coeffs(self) -> (i64, i64) {
        match self {
            Atom::U1 => (1, 0),
            Atom::U2 => (0, 1),
            Atom::Sum => (1, 1),
            Atom::Diff => (1, -1),
        }
    }

    fn pos(self) -> usize {
        self as usize
    }
}

/// `num / prod atom^den[atom]`.
///
/// The value is only claimed up to total degree `order()`: the numerator is
/// known below degree `num.prec()` and the denominator is homogeneous of
/// degree `den_degree()`. Any common atom factor is cancelled eagerly, so a
/// fraction whose value is a power series is stored with an empty denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct BiFrac<T> {
    num: BiSeries<T>,
    den: [u32; 4],
}

impl<T: Scalar> From<BiSeries<T>> for BiFrac<T> {
    fn from(num: BiSeries<T>) -> Self {
        BiFrac { num, den: [0; 4] }
    }
}

impl<T: Scalar> BiFrac<T> {
    /// `num / atom^e ...`, cancelled.
    pub fn new(num: BiSeries<T>, den: &[(Atom, u32)]) -> Self {
        let mut d = [0u32; 4];
        for &(a, e) in den {
            d[a.pos()] += e;
        }
        let mut f = BiFrac { num, den: d };
        f.cancel();
        f
    }

    pub fn constant(c: T, prec: usize) -> Self {
        BiSeries::constant(c, prec).into()
    }

    pub fn num(&self) -> &BiSeries<T> {
        &self.num
    }

    pub fn den_exponent(&self, a: Atom) -> u32 {
        self.den[a.pos()]
    }

    pub fn den_degree(&self) -> usize {
        self.den.iter().map(|&e| e as usize).sum()
    }

    /// The value is determined modulo terms of total degree `>= order()`.
    pub fn order(&self) -> i64 {
        self.num.prec() as i64 - self.den_degree() as i64
    }

    /// True when the numerator vanishes on everything it knows.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The power series this fraction equals, if its denominator cancelled.
    pub fn as_series(&self) -> Option<&BiSeries<T>> {
        (self.den_degree() == 0).then_some(&self.num)
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            let deg = self.den_degree();
            self.num = BiSeries::zero(self.num.prec().saturating_sub(deg));
            self.den = [0; 4];
            return;
        }
        for a in Atom::ALL {
            let (x, y) = a.coeffs();
            let (x, y) = (T::from_i64(x), T::from_i64(y));
            while self.den[a.pos()] > 0 {
                match self.num.div_linear(&x, &y) {
                    Ok(q) => {
                        self.num = q;
                        self.den[a.pos()] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
    }

    fn times_atoms(num: &BiSeries<T>, exps: &[u32; 4]) -> BiSeries<T> {
        let mut out = num.clone();
        for a in Atom::ALL {
            let (x, y) = a.coeffs();
            let (x, y) = (T::from_i64(x), T::from_i64(y));
            for _ in 0..exps[a.pos()] {
                out = out.mul_linear(&x, &y);
            }
        }
        out
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut den = [0u32; 4];
        let mut ea = [0u32; 4];
        let mut eb = [0u32; 4];
        for k in 0..4 {
            den[k] = self.den[k].max(other.den[k]);
            ea[k] = den[k] - self.den[k];
            eb[k] = den[k] - other.den[k];
        }
        let na = Self::times_atoms(&self.num, &ea);
        let nb = Self::times_atoms(&other.num, &eb);
        let num = if negate { &na - &nb } else { &na + &nb };
        let mut f = BiFrac { num, den };
        f.cancel();
        f
    }

    fn product(&self, other: &Self) -> Self {
        let mut den = self.den;
        for k in 0..4 {
            den[k] += other.den[k];
        }
        let mut f = BiFrac {
            num: &self.num * &other.num,
            den,
        };
        f.cancel();
        f
    }

    pub fn scale(&self, c: &T) -> Self {
        BiFrac {
            num: self.num.scale(c),
            den: self.den,
        }
    }

    pub fn mul_series(&self, s: &BiSeries<T>) -> Self {
        self.product(&BiFrac::from(s.clone()))
    }

    /// Inverse; the numerator must be a product of atoms times a unit.
    pub fn inv(&self) -> Result<Self> {
        let v = self.num.valuation().ok_or(Error::DivisionByZero)?;
        let lead = BiSeries::from_fn(v + 1, |i, j| {
            if i + j == v {
                self.num.coeffs[idx(i, j)].clone()
            } else {
                T::zero()
            }
        });
        // factor the lowest homogeneous part over the atoms
        let mut rest = lead;
        let mut atoms = [0u32; 4];
        let mut deg = v;
        for a in Atom::ALL {
            let (x, y) = a.coeffs();
            let (x, y) = (T::from_i64(x), T::from_i64(y));
            while deg > 0 {
                match rest.div_linear(&x, &y) {
                    Ok(q) => {
                        rest = q;
                        atoms[a.pos()] += 1;
                        deg -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        if deg > 0 {
            return Err(Error::Degenerate(format!(
                "leading form of degree {v} is not a product of u1, u2, u1+u2, u1-u2"
            )));
        }
        let mut unit = self.num.clone();
        for a in Atom::ALL {
            let (x, y) = a.coeffs();
            let (x, y) = (T::from_i64(x), T::from_i64(y));
            for _ in 0..atoms[a.pos()] {
                unit = unit.div_linear(&x, &y).map_err(|_| {
                    Error::Degenerate("denominator is not an atom product times a unit".into())
                })?;
            }
        }
        let num = Self::times_atoms(&unit.inv()?, &self.den);
        let mut f = BiFrac { num, den: atoms };
        f.cancel();
        Ok(f)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.product(&other.inv()?))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = BiFrac::constant(T::one(), self.num.prec());
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Euler operator in the first (`which = 1`) or second variable.
    pub fn theta(&self, which: u8) -> Self {
        let dn = if which == 1 { self.num.dq1() } else { self.num.dq2() };
        let mut l = [0u32; 4];
        for k in 0..4 {
            l[k] = u32::from(self.den[k] > 0);
        }
        let first = Self::times_atoms(&dn, &l);
        // N * sum_k e_k theta(atom_k) * L / atom_k
        let mut second: Option<BiSeries<T>> = None;
        for a in Atom::ALL {
            let e = self.den[a.pos()];
            if e == 0 {
                continue;
            }
            let (x, y) = a.coeffs();
            let c = if which == 1 { x } else { y };
            if c == 0 {
                continue;
            }
            let mut others = l;
            others[a.pos()] -= 1;
            let t = if which == 1 {
                self.num.mul_linear(&T::from_i64(c * e as i64), &T::zero())
            } else {
                self.num.mul_linear(&T::zero(), &T::from_i64(c * e as i64))
            };
            let t = Self::times_atoms(&t, &others);
            second = Some(match second {
                None => t,
                Some(s) => &s + &t,
            });
        }
        let num = match second {
            None => first,
            Some(s) => &first - &s,
        };
        let mut den = self.den;
        for k in 0..4 {
            den[k] += l[k];
        }
        let mut f = BiFrac { num, den };
        f.cancel();
        f
    }

    /// Exchanges the two variables.
    pub fn transpose(&self) -> Self {
        let mut num = self.num.transpose();
        if self.den[Atom::Diff.pos()] % 2 == 1 {
            num = -&num;
        }
        let mut den = self.den;
        den.swap(Atom::U1.pos(), Atom::U2.pos());
        BiFrac { num, den }
    }

    /// Cross-multiplied comparison: the difference and the order it is known to.
    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, true)
    }
}

impl<T: Scalar> Add for &BiFrac<T> {
    type Output = BiFrac<T>;
    fn add(self, rhs: Self) -> BiFrac<T> {
        self.combine(rhs, false)
    }
}

impl<T: Scalar> Sub for &BiFrac<T> {
    type Output = BiFrac<T>;
    fn sub(self, rhs: Self) -> BiFrac<T> {
        self.combine(rhs, true)
    }
}

impl<T: Scalar> Mul for &BiFrac<T> {
    type Output = BiFrac<T>;
    fn mul(self, rhs: Self) -> BiFrac<T> {
        self.product(rhs)
    }
}

impl<T: Scalar> Neg for &BiFrac<T> {
    type Output = BiFrac<T>;
    fn neg(self) -> BiFrac<T> {
        BiFrac {
            num: -&self.num,
            den: self.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    type B = BiSeries<Rational>;
    type F = BiFrac<Rational>;

    fn u1(p: usize) -> B {
        B::var1(p)
    }
    fn u2(p: usize) -> B {
        B::var2(p)
    }

    #[test]
    fn dq1_monomial() {
        let m = B::monomial(int(1), 2, 1, 8);
        assert_eq!(m.dq1(), B::monomial(int(2), 2, 1, 8));
        assert_eq!(m.dq2(), m);
    }

    #[test]
    fn unit_denominator_expansion() {
        let p = 8;
        let one = B::one(p);
        let num = &u1(p) + &u2(p);
        let den = &(&u1(p) - &one) * &(&u2(p) - &one);
        let x = &num * &den.inv().unwrap();
        // (u1+u2) / ((1-u1)(1-u2)), all coefficients from the geometric series
        let want = B::from_fn(p, |i, j| match (i, j) {
            (0, 0) => int(0),
            (0, _) | (_, 0) => int(1),
            _ => int(2),
        });
        assert_eq!(x, want);
    }

    #[test]
    fn linear_division_round_trip() {
        let p = 7;
        let a = B::from_fn(p, |i, j| int((i * 3 + j) as i64 - 2));
        let b = a.mul_linear(&int(1), &int(-1));
        assert_eq!(b.prec(), p + 1);
        assert_eq!(b.div_linear(&int(1), &int(-1)).unwrap(), a);
        assert!(a.div_linear(&int(1), &int(1)).is_err());
    }

    #[test]
    fn fraction_cancels_common_atoms() {
        let p = 8;
        let s = &u1(p) + &u2(p);
        let f = F::new(&s * &s, &[(Atom::Sum, 1)]);
        assert_eq!(f.den_degree(), 0);
        assert_eq!(f.as_series().unwrap(), &s.truncate(f.order() as usize));
    }

    #[test]
    fn y_two_ways() {
        let p = 10;
        let y1 = F::new(&u1(p) * &u2(p), &[(Atom::Sum, 2)]);
        // 1 / (u1/u2 + 2 + u2/u1)
        let r = &(&F::new(u1(p), &[(Atom::U2, 1)]) + &F::constant(int(2), p))
            + &F::new(u2(p), &[(Atom::U1, 1)]);
        let y2 = r.inv().unwrap();
        let d = y1.difference(&y2);
        assert!(d.is_zero());
        assert!(d.order() >= 6);
    }

    #[test]
    fn theta_of_a_fraction() {
        let p = 10;
        // theta1 of u1/(u1+u2) is u1 u2/(u1+u2)^2
        let f = F::new(u1(p), &[(Atom::Sum, 1)]);
        let want = F::new(&u1(p) * &u2(p), &[(Atom::Sum, 2)]);
        assert!(f.theta(1).difference(&want).is_zero());
    }

    #[test]
    fn transpose_flips_difference_atom() {
        let p = 8;
        let f = F::new(u1(p), &[(Atom::Diff, 1)]);
        let g = F::new(-&u2(p), &[(Atom::Diff, 1)]);
        assert!(f.transpose().difference(&g).is_zero());
    }

    #[test]
    fn inverse_needs_atom_leading_form() {
        let p = 8;
        let q = &(&u1(p) * &u1(p)) + &(&u2(p) * &u2(p));
        assert!(matches!(F::from(q).inv(), Err(Error::Degenerate(_))));
    }
}

//! Differential operators `sum c x^a z^b Tx^k Tz^l` in the Euler operators
//! `Tx = x d/dx`, `Tz = z d/dz`, kept in normal order (coefficients left).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::series::PSeries;

/// Exponents of `x, z, Tx, Tz` in one normal-ordered monomial.
pub type Monomial = [u32; 4];

const X: usize = 0;
const Z: usize = 1;
const TX: usize = 2;
const TZ: usize = 3;

/// Canonical form: monomials sorted, like terms merged, zero coefficients dropped.
/// Equality of operators is equality of this map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaOperator {
    terms: BTreeMap<Monomial, Rational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl ThetaOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut op = Self::zero();
        op.add_term(m, c);
        op
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), [1, 0, 0, 0])
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), [0, 1, 0, 0])
    }

    /// `Tx = x d/dx`.
    pub fn theta() -> Self {
        Self::monomial(Rational::one(), [0, 0, 1, 0])
    }

    /// `Tz = z d/dz`.
    pub fn theta_z() -> Self {
        Self::monomial(Rational::one(), [0, 0, 0, 1])
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// The substitution `x -> c x` (`Tx` is unchanged).
    pub fn rescale_x(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * crate::scalar::powi(c, m[X] as i64));
        }
        out
    }

    /// Drops every term containing `Tz`: the action on functions of `x` alone.
    pub fn without_theta_z(&self) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m[TZ] == 0 {
                out.add_term(*m, v.clone());
            }
        }
        out
    }

    /// Exchanges `x <-> z` and `Tx <-> Tz`.
    pub fn swap_variables(&self) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term([m[Z], m[X], m[TZ], m[TX]], v.clone());
        }
        out
    }

    fn one_variable(&self) -> Result<()> {
        if self.terms.keys().any(|m| m[Z] > 0 || m[TZ] > 0) {
            return Err(Error::Unsupported("operator involves z; only x is supported".into()));
        }
        Ok(())
    }

    /// `R_i(T)` with `self = sum_i x^i R_i(T)`; `R_i` as coefficient vectors in `T`.
    pub fn x_layers(&self) -> Result<Vec<Vec<Rational>>> {
        self.one_variable()?;
        let mut layers: Vec<Vec<Rational>> = Vec::new();
        for (m, v) in &self.terms {
            let (i, k) = (m[X] as usize, m[TX] as usize);
            if layers.len() <= i {
                layers.resize(i + 1, Vec::new());
            }
            if layers[i].len() <= k {
                layers[i].resize(k + 1, Rational::zero());
            }
            layers[i][k] = v.clone();
        }
        Ok(layers)
    }

    /// Applies the operator to a one-variable series.
    pub fn apply<T: Scalar>(&self, s: &PSeries<T>) -> Result<PSeries<T>> {
        self.apply_log(&LogPair::plain(s.clone())).map(|p| p.rest)
    }

    /// Applies the operator to `log * log(x) + rest`.
    pub fn apply_log<T: Scalar>(&self, s: &LogPair<T>) -> Result<LogPair<T>> {
        self.one_variable()?;
        let top = self.terms.keys().map(|m| m[TX]).max().unwrap_or(0);
        let mut powers = vec![s.clone()];
        for _ in 0..top {
            let next = powers.last().expect("nonempty").theta();
            powers.push(next);
        }
        let mut acc: Option<LogPair<T>> = None;
        for (m, v) in &self.terms {
            let c = T::from_rational(v);
            let p = &powers[m[TX] as usize];
            let term = LogPair {
                log: p.log.scale(&c).shift_units(m[X] as i64),
                rest: p.rest.scale(&c).shift_units(m[X] as i64),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => LogPair {
                    log: &a.log + &term.log,
                    rest: &a.rest + &term.rest,
                },
            });
        }
        Ok(acc.unwrap_or_else(|| LogPair {
            log: s.log.scale(&T::zero()),
            rest: s.rest.scale(&T::zero()),
        }))
    }
}

/// `log * log(x) + rest`, the single-log depth a Frobenius basis needs.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPair<T> {
    pub log: PSeries<T>,
    pub rest: PSeries<T>,
}

impl<T: Scalar> LogPair<T> {
    pub fn plain(rest: PSeries<T>) -> Self {
        LogPair {
            log: PSeries::zero(rest.prec_units()),
            rest,
        }
    }

    /// `T(h log x) = (T h) log x + h`.
    pub fn theta(&self) -> Self {
        LogPair {
            log: self.log.dq(),
            rest: &self.log + &self.rest.dq(),
        }
    }
}

impl Add for &ThetaOperator {
    type Output = ThetaOperator;
    fn add(self, rhs: &ThetaOperator) -> ThetaOperator {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl Sub for &ThetaOperator {
    type Output = ThetaOperator;
    fn sub(self, rhs: &ThetaOperator) -> ThetaOperator {
        self + &-rhs
    }
}

impl Neg for &ThetaOperator {
    type Output = ThetaOperator;
    fn neg(self) -> ThetaOperator {
        self.scale(&-Rational::one())
    }
}

/// `Tx^k x^a = x^a (Tx + a)^k`, expanded binomially.
impl Mul for &ThetaOperator {
    type Output = ThetaOperator;
    fn mul(self, rhs: &ThetaOperator) -> ThetaOperator {
        let mut out = ThetaOperator::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1 * c2;
                for i in 0..=m1[TX] {
                    let bx = Rational::from_integer(binomial(m1[TX], i) * BigInt::from(m2[X]).pow(m1[TX] - i));
                    if bx.is_zero() {
                        continue;
                    }
                    for j in 0..=m1[TZ] {
                        let bz =
                            Rational::from_integer(binomial(m1[TZ], j) * BigInt::from(m2[Z]).pow(m1[TZ] - j));
                        if bz.is_zero() {
                            continue;
                        }
                        let m = [m1[X] + m2[X], m1[Z] + m2[Z], i + m2[TX], j + m2[TZ]];
                        out.add_term(m, &c * &bx * &bz);
                    }
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for ThetaOperator {
            type Output = ThetaOperator;
            fn $f(self, rhs: ThetaOperator) -> ThetaOperator {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for ThetaOperator {
    /// Highest `T` powers first, e.g. `T^3 - 1728*x*T^3 - 2592*x*T^2 - ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (m[X], m[Z], std::cmp::Reverse((m[TX], m[TZ]))));
        for (m, c) in ordered {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let mut factors = Vec::new();
            if !a.is_one() || m.iter().all(|e| *e == 0) {
                factors.push(a.to_string());
            }
            for (idx, name) in [(X, "x"), (Z, "z"), (TX, "T"), (TZ, "Tz")] {
                match m[idx] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = chars[st..i].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|_| Error::Parse(format!("bad number `{n}`")))?));
        } else if c.is_alphabetic() {
            let st = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let word: String = chars[st..i].iter().collect();
            // `6x` and `xT` style juxtaposition: split unknown words into known names
            out.extend(split_word(&word)?);
        } else if "+-*/^()".contains(c) || c == '\u{2212}' {
            out.push(Tok::Sym(if c == '\u{2212}' { '-' } else { c }));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

const NAMES: [&str; 9] = ["theta", "Theta", "Tx", "Tz", "T", "x", "z", "\u{398}", "\u{3b8}"];

fn split_word(word: &str) -> Result<Vec<Tok>> {
    let mut rest = word;
    let mut out = Vec::new();
    'outer: while !rest.is_empty() {
        for name in NAMES {
            if let Some(r) = rest.strip_prefix(name) {
                out.push(Tok::Ident(name.to_string()));
                rest = r;
                continue 'outer;
            }
        }
        if let Some(d) = rest.find(|c: char| !c.is_ascii_digit()).or(Some(rest.len())).filter(|&d| d > 0) {
            out.push(Tok::Num(rest[..d].parse().expect("digits")));
            rest = &rest[d..];
            continue;
        }
        return Err(Error::Parse(format!("unknown name in `{word}`")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ThetaOperator> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<ThetaOperator> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = match d.terms.iter().next() {
                    Some(([0, 0, 0, 0], c)) if d.terms.len() == 1 => c.clone(),
                    _ => return Err(Error::Parse("division only by a nonzero constant".into())),
                };
                acc = acc.scale(&c.recip());
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ThetaOperator> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ThetaOperator> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ThetaOperator> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ThetaOperator::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "x" => ThetaOperator::x(),
                    "z" => ThetaOperator::z(),
                    "Tz" => ThetaOperator::theta_z(),
                    _ => ThetaOperator::theta(),
                })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

impl std::str::FromStr for ThetaOperator {
    type Err = Error;

    /// Grammar: integers, `/` by constants, `x`, `z`, `T` (also `theta`, `Tx`)
    /// and `Tz`, with `+ - * ^`, parentheses and juxtaposition as product.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            toks: tokenize(s)?,
            pos: 0,
        };
        let op = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Series;

    fn op(s: &str) -> ThetaOperator {
        s.parse().unwrap()
    }

    #[test]
    fn commutation() {
        // T x = x T + x
        assert_eq!(&ThetaOperator::theta() * &ThetaOperator::x(), op("x*T + x"));
        assert_eq!(op("T*x^2"), op("x^2 T + 2x^2"));
    }

    #[test]
    fn factor_extraction() {
        assert_eq!(op("12(6T+5)(6T+1)"), op("432(T+5/6)(T+1/6)"));
        assert_eq!(op("theta^3 - 64x(T+1/2)^3"), op("T^3 - 8x(2T+1)^3"));
    }

    #[test]
    fn parse_errors() {
        assert!("T^".parse::<ThetaOperator>().is_err());
        assert!("(T".parse::<ThetaOperator>().is_err());
        assert!("T/x".parse::<ThetaOperator>().is_err());
        assert!("y".parse::<ThetaOperator>().is_err());
    }

    #[test]
    fn theta_on_monomials_and_logs() {
        let s = Series::monomial(int(1), 5, 1, 10);
        let r = op("T").apply(&s).unwrap();
        assert_eq!(r, Series::monomial(int(5), 5, 1, 10));
        let one = LogPair {
            log: Series::one(6),
            rest: Series::zero(6),
        };
        let t = op("T").apply_log(&one).unwrap();
        assert!(t.log.is_zero());
        assert_eq!(t.rest, Series::one(6));
    }

    #[test]
    fn display_round_trips() {
        let o = op("T^3 - 8x(6T+5)(6T+3)(6T+1)");
        assert_eq!(o.to_string().parse::<ThetaOperator>().unwrap(), o);
        assert_eq!(op("x/2").to_string(), "1/2*x");
        assert_eq!(op("x/2"), op("x").scale(&rat(1, 2)));
    }
}

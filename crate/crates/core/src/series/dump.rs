//! Plain-text series dumps.
//!
//! One nonzero term per line, `num/den * q^(a/b)` (or `num/den * u1^i u2^j`),
//! sorted by exponent, followed by the truncation line `O(q^(a/b))` (or
//! `O(deg P)`). Every number is an exact integer, so a dump parses back to the
//! identical series.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_fraction, parse_rational, Rational};
use crate::series::bivariate::BiSeries;
use crate::series::pseries::PSeries;

pub fn dump(s: &PSeries<Rational>) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let _ = writeln!(out, "{} * q^({})", fmt_fraction(c), fmt_fraction(&e));
    }
    let _ = writeln!(out, "O(q^({}))", fmt_fraction(&s.precision()));
    out
}

pub fn dump_bi(s: &BiSeries<Rational>) -> String {
    let mut out = String::new();
    for (i, j, c) in s.terms() {
        let _ = writeln!(out, "{} * u1^{i} u2^{j}", fmt_fraction(c));
    }
    let _ = writeln!(out, "O(deg {})", s.prec());
    out
}

fn inside<'a>(s: &'a str, open: &str, close: &str) -> Result<&'a str> {
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected `{open}...{close}`, found `{s}`")))
}

pub fn parse(text: &str) -> Result<PSeries<Rational>> {
    let mut terms: Vec<(Rational, Rational)> = Vec::new();
    let mut prec = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if line.starts_with("O(") {
            prec = Some(parse_rational(inside(line, "O(q^(", "))")?)?);
            continue;
        }
        let (c, e) = line
            .split_once(" * ")
            .ok_or_else(|| Error::Parse(format!("malformed term `{line}`")))?;
        let e = parse_rational(inside(e.trim(), "q^(", ")")?)?;
        terms.push((e, parse_rational(c)?));
    }
    let prec = prec.ok_or_else(|| Error::Parse("missing O(...) line".into()))?;
    let mut ram = prec.denom().clone();
    for (e, _) in &terms {
        ram = num_integer::Integer::lcm(&ram, e.denom());
    }
    let ram_u: u32 = ram
        .try_into()
        .map_err(|_| Error::Parse("ramification too large".into()))?;
    let scale = Rational::from_integer(ram_u.into());
    let units = |r: &Rational| -> Result<i64> {
        let v = r * &scale;
        debug_assert!(v.denom().is_one());
        v.numer()
            .try_into()
            .map_err(|_| Error::Parse("exponent too large".into()))
    };
    let p = units(&prec)?;
    let start = match terms.first() {
        Some((e, _)) => units(e)?,
        None => p,
    };
    let mut coeffs = vec![Rational::zero(); (p - start).max(0) as usize];
    for (e, c) in terms {
        let k = units(&e)? - start;
        if k < 0 || k as usize >= coeffs.len() {
            return Err(Error::Parse(format!("term q^({e}) out of order or beyond O(...)")));
        }
        coeffs[k as usize] = c;
    }
    Ok(PSeries::new(ram_u, start, coeffs, p))
}

pub fn parse_bi(text: &str) -> Result<BiSeries<Rational>> {
    let mut terms = Vec::new();
    let mut prec = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if line.starts_with("O(") {
            let p = inside(line, "O(deg ", ")")?;
            prec = Some(
                p.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree `{p}`")))?,
            );
            continue;
        }
        let (c, m) = line
            .split_once(" * ")
            .ok_or_else(|| Error::Parse(format!("malformed term `{line}`")))?;
        let (a, b) = m
            .trim()
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("malformed monomial `{m}`")))?;
        let exp = |s: &str, v: &str| -> Result<usize> {
            s.strip_prefix(v)
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| Error::Parse(format!("malformed power `{s}`")))
        };
        terms.push((exp(a, "u1^")?, exp(b, "u2^")?, parse_rational(c)?));
    }
    let prec = prec.ok_or_else(|| Error::Parse("missing O(...) line".into()))?;
    let mut out = BiSeries::zero(prec);
    for (i, j, c) in terms {
        if i + j >= prec {
            return Err(Error::Parse(format!("term u1^{i} u2^{j} beyond O(deg {prec})")));
        }
        out = &out + &BiSeries::monomial(c, i, j, prec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn univariate_format() {
        let s = PSeries::new(2, 1, vec![int(1), int(0), rat(-3, 2)], 5);
        assert_eq!(dump(&s), "1/1 * q^(1/2)\n-3/2 * q^(3/2)\nO(q^(5/2))\n");
        assert_eq!(parse(&dump(&s)).unwrap(), s);
    }

    #[test]
    fn bivariate_format() {
        let s = BiSeries::from_fn(3, |i, j| int(i as i64 - j as i64));
        let text = dump_bi(&s);
        assert_eq!(text, "-1/1 * u1^0 u2^1\n1/1 * u1^1 u2^0\n-2/1 * u1^0 u2^2\n2/1 * u1^2 u2^0\nO(deg 3)\n");
        assert_eq!(parse_bi(&text).unwrap(), s);
    }

    #[test]
    fn zero_series_dumps_only_order() {
        assert_eq!(dump(&PSeries::zero(4)), "O(q^(4/1))\n");
        assert_eq!(parse("O(q^(4/1))").unwrap(), PSeries::zero(4));
    }
}

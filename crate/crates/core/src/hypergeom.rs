//! Generalized hypergeometric series and the transformation identities built on them.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::forms;
use crate::report::{all, series_equal_to, series_zero, Outcome, VerificationItem};
use crate::scalar::{rat, Rational};
use crate::Series;

/// Upper and lower parameters of a `pFq`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomParams {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

impl HypergeomParams {
    /// Rejects lower parameters that are zero or negative integers.
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        if let Some(b) = lower
            .iter()
            .find(|b| b.is_integer() && !b.is_positive())
        {
            return Err(Error::InvalidLowerParameter(b.to_string()));
        }
        Ok(HypergeomParams { upper, lower })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }
}

/// `sum_n prod (upper)_n / (prod (lower)_n n!) z^n` through `z^order`.
pub fn pfq(params: &HypergeomParams, order: usize) -> Series {
    let mut c = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    c.push(term.clone());
    for n in 0..order {
        let nn = Rational::from_integer(n.into());
        let mut num = Rational::one();
        for a in &params.upper {
            num *= a + &nn;
        }
        let mut den = &nn + Rational::one();
        for b in &params.lower {
            den *= b + &nn;
        }
        term = term * num / den;
        c.push(term.clone());
    }
    Series::from_coeffs(c, order as i64 + 1)
}

/// `2F1(a, b; c; z)`.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Result<Series> {
    let p = HypergeomParams::new(vec![a.clone(), b.clone()], vec![c.clone()])?;
    Ok(pfq(&p, order))
}

/// `t(1-t) f'' + [1 - (1+a+b)t] f' - ab f`.
pub fn hg_ode_residual(a: &Rational, b: &Rational, f: &Series) -> Result<Series> {
    let p = f.prec_units();
    let t = Series::var(p + 2);
    let one = Series::one(p + 2);
    let f1 = f.deriv()?;
    let f2 = f1.deriv()?;
    let lin = &one - &t.scale(&(Rational::one() + a + b));
    let r = &(&(&t * &(&one - &t)) * &f2) + &(&lin * &f1);
    Ok(&r - &f.scale(&(a * b)))
}

/// `(1 - s)^e` for a series `s` of positive valuation.
pub fn one_minus_pow(s: &Series, e: &Rational) -> Result<Series> {
    let one = Series::one(s.prec_units().max(1));
    (&one - s).pow_rational(e)
}

fn z(order: usize) -> Series {
    Series::var(order as i64 + 1)
}

fn one(order: usize) -> Series {
    Series::one(order as i64 + 1)
}

/// Euler: `(1-t)^a 2F1(a,b;c;t) = 2F1(a, c-b; c; t/(t-1))`.
pub fn euler_check(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Outcome {
    let t = z(order);
    let lhs = &one_minus_pow(&t, a)? * &hyp2f1(a, b, c, order)?;
    let arg = t.div(&(&t - &one(order)))?;
    let rhs = hyp2f1(a, &(c - b), c, order)?.compose(&arg)?;
    series_equal_to(&lhs, &rhs, order)
}

/// Kummer: `((1+sqrt(1-z))/2)^(2a) 2F1(a,b;a+b+1/2;z)
///   = 2F1(2a, a-b+1/2; a+b+1/2; (sqrt(1-z)-1)/(sqrt(1-z)+1))`.
pub fn kummer_check(a: &Rational, b: &Rational, order: usize) -> Outcome {
    let half = rat(1, 2);
    let c = a + b + &half;
    let w = order + 1;
    let r = one_minus_pow(&z(w), &half)?;
    let pre = (&one(w) + &r).scale(&half).pow_rational(&(a * Rational::from_integer(2.into())))?;
    let lhs = &pre * &hyp2f1(a, b, &c, w)?;
    let arg = (&r - &one(w)).div(&(&r + &one(w)))?;
    let two_a = a + a;
    let rhs = hyp2f1(&two_a, &(a - b + &half), &c, w)?.compose(&arg)?;
    series_equal_to(&lhs, &rhs, order)
}

/// `2F1(al, be; al-be+1; x) = (1-x)^(-al) 2F1(al/2, (1+al)/2 - be; al-be+1; -4x/(1-x)^2)`.
pub fn quadratic_check(al: &Rational, be: &Rational, order: usize) -> Outcome {
    let c = al - be + Rational::one();
    let x = z(order);
    let lhs = hyp2f1(al, be, &c, order)?;
    let arg = x.scale(&Rational::from_integer((-4).into())).div(&(&one(order) - &x).powi(2)?)?;
    let half = rat(1, 2);
    let inner = hyp2f1(&(al * &half), &((Rational::one() + al) * &half - be), &c, order)?.compose(&arg)?;
    let rhs = &one_minus_pow(&x, &-al)? * &inner;
    series_equal_to(&lhs, &rhs, order)
}

/// Clausen: `2F1(a,b;a+b+1/2;z)^2 = 3F2(2a, a+b, 2b; a+b+1/2, 2a+2b; z)`.
pub fn clausen_check(a: &Rational, b: &Rational, order: usize) -> Outcome {
    let half = rat(1, 2);
    let c = a + b + &half;
    let f = hyp2f1(a, b, &c, order)?;
    let p = HypergeomParams::new(
        vec![a + a, a + b, b + b],
        vec![c.clone(), (a + b) * Rational::from_integer(2.into())],
    )?;
    series_equal_to(&(&f * &f), &pfq(&p, order), order)
}

/// `E4 = 2F1(1/12, 5/12; 1; 1728/j)^4`, and the Euler-transformed one-variable
/// identity `(1-t)^(1/6) 2F1(1/6,1/6;1;t) = 2F1(1/6,5/6;1;t/(t-1))`.
pub fn classical_e4_check(order: usize) -> Outcome {
    let h1 = forms::haupt1(order)?;
    let f = hyp2f1(&rat(1, 12), &rat(5, 12), &Rational::one(), order)?.compose(&h1)?;
    let e4 = forms::eisenstein(4, order)?;
    all([
        ("E4 = 2F1(1/12,5/12;1;1728/j)^4".to_string(), series_equal_to(&f.powi(4)?, &e4, order)),
        (
            "Euler transform with a = b = 1/6".to_string(),
            euler_check(&rat(1, 6), &rat(1, 6), &Rational::one(), order),
        ),
    ])
}

/// The eight `(a, b)` pairs of the `Gamma_0(N)^*` family.
pub fn theorem52_pairs() -> [(Rational, Rational); 8] {
    [
        (rat(1, 12), rat(5, 12)),
        (rat(1, 12), rat(7, 12)),
        (rat(1, 8), rat(3, 8)),
        (rat(1, 8), rat(5, 8)),
        (rat(1, 6), rat(1, 3)),
        (rat(1, 6), rat(2, 3)),
        (rat(1, 4), rat(1, 4)),
        (rat(1, 4), rat(3, 4)),
    ]
}

/// The pairs for which Clausen's identity links the order-three operators.
pub fn clausen_pairs() -> [(Rational, Rational); 4] {
    [
        (rat(1, 12), rat(5, 12)),
        (rat(1, 8), rat(3, 8)),
        (rat(1, 6), rat(1, 3)),
        (rat(1, 4), rat(1, 4)),
    ]
}

/// Every hypergeometric parameter set used elsewhere, for the ODE self-consistency check.
fn ode_parameter_sets() -> Vec<(Rational, Rational)> {
    let mut v: Vec<(Rational, Rational)> = [2, 3, 4, 6]
        .iter()
        .map(|&d| (rat(1, d), rat(1, d)))
        .collect();
    v.extend(theorem52_pairs());
    v
}

pub fn suite_items(order: usize) -> Vec<VerificationItem> {
    let mut items = Vec::new();
    let ode = all(ode_parameter_sets().into_iter().map(|(a, b)| {
        let o = hyp2f1(&a, &b, &Rational::one(), order + 2)
            .and_then(|f| hg_ode_residual(&a, &b, &f))
            .and_then(|r| series_zero(&r, &Rational::from_integer(order.into())));
        (format!("2F1({a},{b};1;t)"), o)
    }));
    items.push(VerificationItem::new(
        "hypergeom.ode-residual",
        r"t(1-t)f^{\prime\prime}+[1-(1+a+b)t]f^\prime-abf=0",
        order,
        ode,
    ));
    let sym = all(theorem52_pairs().into_iter().map(|(a, b)| {
        let o = (|| {
            let c = Rational::one();
            series_equal_to(&hyp2f1(&a, &b, &c, order)?, &hyp2f1(&b, &a, &c, order)?, order)
        })();
        (format!("({a},{b})"), o)
    }));
    items.push(VerificationItem::new("hypergeom.symmetry", "2F1(a,b;c;z) = 2F1(b,a;c;z)", order, sym));
    let euler = all(theorem52_pairs().into_iter().map(|(a, b)| {
        (format!("({a},{b})"), euler_check(&a, &b, &Rational::one(), order))
    }));
    items.push(VerificationItem::new(
        "hypergeom.euler",
        r"_2F_1(\alpha,\beta;\gamma;x)=(1-x)^{-\alpha}\,_2F_1\left(\alpha,\gamma-\beta;\gamma;\frac x{x-1}\right)",
        order,
        euler,
    ));
    items.push(VerificationItem::new(
        "hypergeom.kummer",
        r"\left(\frac{1+\sqrt{1-z}}2\right)^{2a}\,_2F_1\left(a,b;a+b+\frac12;z\right)=\,_2F_1\left(2a,a-b+\frac12;a+b+\frac12;\frac{\sqrt{1-z}-1}{\sqrt{1-z}+1}\right)",
        order,
        all(clausen_pairs()
            .into_iter()
            .map(|(a, b)| (format!("({a},{b})"), kummer_check(&a, &b, order)))),
    ));
    items.push(VerificationItem::new(
        "hypergeom.quadratic",
        r"_2F_1(\alpha,\beta;\alpha-\beta+1;x)=(1-x)^{-\alpha}\,_2F_1\left(\frac\alpha2,\frac{1+\alpha}2-\beta;\alpha-\beta+1;-\frac{4x}{(1-x)^2}\right)",
        order,
        all([2, 3, 4, 6].into_iter().map(|d| {
            let a = rat(1, d);
            (format!("alpha = beta = {a}"), quadratic_check(&a, &a, order))
        })),
    ));
    items.push(VerificationItem::new(
        "hypergeom.clausen",
        r"correspond to the cases $(1/12,5/12)$, $(1/8,3/8)$, $(1/6,1/3)$, $(1/4,1/4)$",
        order,
        all(clausen_pairs()
            .into_iter()
            .map(|(a, b)| (format!("({a},{b})"), clausen_check(&a, &b, order)))),
    ));
    items.push(VerificationItem::new(
        "hypergeom.classical-e4",
        r"E_4(\tau)^{1/4}=\,_2F_1\left(\frac1{12},\frac5{12};1;\frac{1728}{j(\tau)}\right)",
        order,
        classical_e4_check(order),
    ));
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn central_binomial_squares() {
        let f = hyp2f1(&rat(1, 2), &rat(1, 2), &int(1), 3).unwrap();
        let want = [int(1), rat(1, 4), rat(9, 64), rat(25, 256)];
        assert_eq!(f.coeffs(), &want[..]);
    }

    #[test]
    fn invalid_lower_parameters() {
        assert!(matches!(
            HypergeomParams::new(vec![int(1)], vec![int(0)]),
            Err(Error::InvalidLowerParameter(_))
        ));
        assert!(HypergeomParams::new(vec![int(1)], vec![int(-2)]).is_err());
        assert!(HypergeomParams::new(vec![int(1)], vec![rat(-1, 2)]).is_ok());
    }

    #[test]
    fn ode_kills_constant_when_ab_is_zero() {
        let r = hg_ode_residual(&int(0), &int(0), &Series::one(10)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn identities_at_low_order() {
        assert_eq!(euler_check(&rat(1, 6), &rat(1, 3), &int(1), 10), Ok(None));
        assert_eq!(kummer_check(&rat(1, 12), &rat(5, 12), 10), Ok(None));
        assert_eq!(quadratic_check(&rat(1, 3), &rat(1, 3), 10), Ok(None));
        assert_eq!(clausen_check(&rat(1, 6), &rat(1, 3), 10), Ok(None));
    }

    #[test]
    fn suite_passes() {
        for item in suite_items(40) {
            assert_eq!(item.status, crate::report::Status::Pass, "{item:?}");
        }
    }
}

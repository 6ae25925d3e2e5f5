//! Classical one-variable q-expansions: Eisenstein series, eta, theta functions,
//! the Hauptmoduln used by the constructed families, and the weight-one pairs.
//!
//! "Order `N`" means every coefficient of exponent `<= N` is known. Each
//! construction has an independent brute-force counterpart in [`oracle`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::report::{all, expect, series_equal_to, series_zero, Outcome, VerificationItem};
use crate::scalar::{int, rat, Rational};
use crate::Series;

/// Extra working precision for constructions that divide by a series with a pole or zero.
const MARGIN: usize = 3;

/// Cuts `s` down to "known through `q^order`", or fails if it is not known that far.
fn through(s: Series, order: usize) -> Result<Series> {
    let want = Rational::from_integer((order + 1).into());
    if s.precision() < want {
        return Err(Error::OrderUnderflow(format!(
            "construction reached only q^{}, order {order} requested",
            s.precision()
        )));
    }
    Ok(s.truncate(&want))
}

fn order_prec(order: usize) -> i64 {
    order as i64 + 1
}

/// Bernoulli numbers `B_2, B_4, B_6, B_8`.
pub fn bernoulli(k: u32) -> Result<Rational> {
    match k {
        2 => Ok(rat(1, 6)),
        4 => Ok(rat(-1, 30)),
        6 => Ok(rat(1, 42)),
        8 => Ok(rat(-1, 30)),
        _ => Err(Error::UnknownForm(format!("E{k}"))),
    }
}

/// `E_k = 1 - (2k/B_k) sum_n n^(k-1) q^n / (1 - q^n)`, expanded as a Lambert series.
pub fn eisenstein(k: u32, order: usize) -> Result<Series> {
    let c = -Rational::from_integer((2 * k).into()) / bernoulli(k)?;
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = Rational::one();
    for n in 1..=order {
        let w = c.clone() * Rational::from_integer(num_bigint::BigInt::from(n).pow(k - 1));
        let mut m = n;
        while m <= order {
            coeffs[m] += &w;
            m += n;
        }
    }
    Ok(Series::from_coeffs(coeffs, order_prec(order)))
}

/// Multiplies a dense coefficient vector in place by `1 + sign q^k`.
fn mul_binomial(c: &mut [Rational], k: usize, sign: i64) {
    let s = int(sign);
    for m in (k..c.len()).rev() {
        let prev = c[m - k].clone();
        if !prev.is_zero() {
            c[m] += &s * prev;
        }
    }
}

/// `prod_{n >= 1} (1 - q^n)` through `q^order`.
pub fn euler_product(order: usize) -> Series {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = Rational::one();
    for n in 1..=order {
        mul_binomial(&mut c, n, -1);
    }
    Series::from_coeffs(c, order_prec(order))
}

/// `eta = q^(1/24) prod (1 - q^n)`.
pub fn eta(order: usize) -> Series {
    euler_product(order).with_ram(24).shift_units(1)
}

/// `Delta = eta^24 = q prod (1 - q^n)^24`.
pub fn delta(order: usize) -> Result<Series> {
    let p = euler_product(order).powi(24)?;
    through(p.shift_units(1), order)
}

/// `j = E4^3 / eta^24`.
pub fn j_invariant(order: usize) -> Result<Series> {
    let w = order + MARGIN;
    let e4 = eisenstein(4, w)?;
    let num = e4.powi(3)?;
    through(num.div(&delta(w)?)?, order)
}

/// `theta3 = sum q^(n^2)` via the triple product `prod (1 - q^2n)(1 + q^(2n-1))^2`.
pub fn theta3(order: usize) -> Series {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = Rational::one();
    for n in 1..=order {
        if 2 * n <= order {
            mul_binomial(&mut c, 2 * n, -1);
        }
        mul_binomial(&mut c, 2 * n - 1, 1);
        mul_binomial(&mut c, 2 * n - 1, 1);
    }
    Series::from_coeffs(c, order_prec(order))
}

/// `theta4 = sum (-1)^n q^(n^2)` via `prod (1 - q^2n)(1 - q^(2n-1))^2`.
pub fn theta4(order: usize) -> Series {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = Rational::one();
    for n in 1..=order {
        if 2 * n <= order {
            mul_binomial(&mut c, 2 * n, -1);
        }
        mul_binomial(&mut c, 2 * n - 1, -1);
        mul_binomial(&mut c, 2 * n - 1, -1);
    }
    Series::from_coeffs(c, order_prec(order))
}

/// `theta2 = q^(1/4) sum q^(n(n+1))` via `2 q^(1/4) prod (1 - q^2n)(1 + q^2n)^2`.
pub fn theta2(order: usize) -> Series {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = int(2);
    for n in 1..=order / 2 {
        mul_binomial(&mut c, 2 * n, -1);
        mul_binomial(&mut c, 2 * n, 1);
        mul_binomial(&mut c, 2 * n, 1);
    }
    Series::from_coeffs(c, order_prec(order))
        .with_ram(4)
        .shift_units(1)
}

/// `q (prod(1 - q^(kn)) / prod(1 - q^n))^e`, the eta quotient `eta(k tau)^e / eta(tau)^e`
/// when `(k - 1) e = 24`.
fn eta_quotient(k: u32, e: i64, order: usize) -> Result<Series> {
    let p = euler_product(order);
    let ratio = p.rescale(k).div(&p)?.powi(e)?;
    Ok(ratio.shift_units(1))
}

/// `haupt1 = 1728/j`.
pub fn haupt1(order: usize) -> Result<Series> {
    let w = order + MARGIN;
    let e4 = eisenstein(4, w)?;
    let h = delta(w)?.div(&e4.powi(3)?)?.scale(&int(1728));
    through(h, order)
}

/// `haupt2 = -64 eta(2 tau)^24 / eta(tau)^24`.
pub fn haupt2(order: usize) -> Result<Series> {
    through(eta_quotient(2, 24, order)?.scale(&int(-64)), order)
}

/// `haupt3 = -27 eta(3 tau)^12 / eta(tau)^12`.
pub fn haupt3(order: usize) -> Result<Series> {
    through(eta_quotient(3, 12, order)?.scale(&int(-27)), order)
}

/// `haupt4 = theta2^4 / theta3^4`.
pub fn haupt4(order: usize) -> Result<Series> {
    let t = theta2(order + 1).powi(4)?.div(&theta3(order + 1).powi(4)?)?;
    through(t, order)
}

/// `t = (r - 1)/(r + 1)` with `r = sqrt(1 - 1728/j)` on its principal branch.
pub fn example_t(order: usize) -> Result<Series> {
    let w = order + MARGIN;
    let r = (&Series::one(w as i64 + 1) - &haupt1(w)?).pow_rational(&rat(1, 2))?;
    let one = Series::one(w as i64 + 1);
    through((&r - &one).div(&(&r + &one))?, order)
}

/// A weight-one form `h` and the Hauptmodul `t` it is attached to, with the
/// hypergeometric parameter `alpha`: `h = 2F1(alpha, alpha; 1; t) (1 - t)^alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOnePair {
    pub case: char,
    pub alpha: Rational,
    pub h: Series,
    pub t: Series,
}

pub fn weight_one_pair(case: char, order: usize) -> Result<WeightOnePair> {
    let (alpha, h, t) = match case {
        'a' => (rat(1, 2), theta4(order).powi(2)?, haupt4(order)?),
        'b' => {
            let e2 = eisenstein(2, order)?;
            let g = (&e2.rescale(3).scale(&int(3)) - &e2).scale(&rat(1, 2));
            (rat(1, 3), g.pow_rational(&rat(1, 2))?, haupt3(order)?)
        }
        'c' => {
            let e2 = eisenstein(2, order)?;
            let g = &e2.rescale(2).scale(&int(2)) - &e2;
            (rat(1, 4), g.pow_rational(&rat(1, 2))?, haupt2(order)?)
        }
        'd' => (
            rat(1, 6),
            eisenstein(4, order)?.pow_rational(&rat(1, 4))?,
            example_t(order)?,
        ),
        other => return Err(Error::UnknownForm(format!("w1pair_{other}"))),
    };
    Ok(WeightOnePair {
        case,
        alpha,
        h: through(h, order)?,
        t: through(t, order)?,
    })
}

/// Every named form addressable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormName {
    E2,
    E4,
    E6,
    E8,
    Eta,
    Theta2,
    Theta3,
    Theta4,
    Delta,
    J,
    Haupt(u8),
    W1Pair(char),
}

impl FormName {
    pub const ALL: [FormName; 18] = [
        FormName::E2,
        FormName::E4,
        FormName::E6,
        FormName::E8,
        FormName::Eta,
        FormName::Theta2,
        FormName::Theta3,
        FormName::Theta4,
        FormName::Delta,
        FormName::J,
        FormName::Haupt(1),
        FormName::Haupt(2),
        FormName::Haupt(3),
        FormName::Haupt(4),
        FormName::W1Pair('a'),
        FormName::W1Pair('b'),
        FormName::W1Pair('c'),
        FormName::W1Pair('d'),
    ];
}

impl fmt::Display for FormName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormName::E2 => write!(f, "E2"),
            FormName::E4 => write!(f, "E4"),
            FormName::E6 => write!(f, "E6"),
            FormName::E8 => write!(f, "E8"),
            FormName::Eta => write!(f, "eta"),
            FormName::Theta2 => write!(f, "theta2"),
            FormName::Theta3 => write!(f, "theta3"),
            FormName::Theta4 => write!(f, "theta4"),
            FormName::Delta => write!(f, "delta"),
            FormName::J => write!(f, "j"),
            FormName::Haupt(n) => write!(f, "haupt{n}"),
            FormName::W1Pair(c) => write!(f, "w1pair_{c}"),
        }
    }
}

impl FromStr for FormName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormName::ALL
            .into_iter()
            .find(|n| n.to_string() == s)
            .ok_or_else(|| Error::UnknownForm(s.to_string()))
    }
}

/// A built form: one series, or the `(h, t)` of a weight-one pair.
#[derive(Clone, Debug, PartialEq)]
pub enum Built {
    Single(Series),
    Pair(WeightOnePair),
}

pub fn build_form(name: FormName, order: usize) -> Result<Built> {
    if order < 1 {
        return Err(Error::InvalidOrder(order, 1));
    }
    let s = match name {
        FormName::E2 => eisenstein(2, order)?,
        FormName::E4 => eisenstein(4, order)?,
        FormName::E6 => eisenstein(6, order)?,
        FormName::E8 => eisenstein(8, order)?,
        FormName::Eta => eta(order),
        FormName::Theta2 => theta2(order),
        FormName::Theta3 => theta3(order),
        FormName::Theta4 => theta4(order),
        FormName::Delta => delta(order)?,
        FormName::J => j_invariant(order)?,
        FormName::Haupt(1) => haupt1(order)?,
        FormName::Haupt(2) => haupt2(order)?,
        FormName::Haupt(3) => haupt3(order)?,
        FormName::Haupt(4) => haupt4(order)?,
        FormName::Haupt(n) => return Err(Error::UnknownForm(format!("haupt{n}"))),
        FormName::W1Pair(c) => return Ok(Built::Pair(weight_one_pair(c, order)?)),
    };
    Ok(Built::Single(s))
}

/// Brute-force expansions that share no code with the constructions above.
pub mod oracle {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    use crate::scalar::{int, Rational};
    use crate::Series;

    /// `sigma_k(n)` by trial division.
    pub fn sigma(k: u32, n: u64) -> BigInt {
        let mut s = BigInt::zero();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                s += BigInt::from(d).pow(k);
            }
        }
        s
    }

    /// `1 + c sum sigma_{k-1}(n) q^n` with `c = -2k/B_k` supplied by the caller.
    pub fn eisenstein(k: u32, c: &Rational, order: usize) -> Series {
        let mut v = vec![Rational::one()];
        for n in 1..=order as u64 {
            v.push(c * Rational::from_integer(sigma(k - 1, n)));
        }
        Series::from_coeffs(v, order as i64 + 1)
    }

    /// Coefficients of `prod (1 - q^n)` from the pentagonal number theorem.
    pub fn pentagonal(order: usize) -> Series {
        let mut v = vec![Rational::zero(); order + 1];
        for k in -(order as i64)..=(order as i64) {
            let e = k * (3 * k - 1) / 2;
            if e >= 0 && (e as usize) <= order {
                v[e as usize] = int(if k % 2 == 0 { 1 } else { -1 });
            }
        }
        Series::from_coeffs(v, order as i64 + 1)
    }

    /// `sum_{n in Z} s(n) q^(e(n))` by enumerating lattice points, with exponents in
    /// units of `1/ram`.
    fn lattice(order: usize, ram: u32, e: impl Fn(i64) -> i64, s: impl Fn(i64) -> i64) -> Series {
        let bound = (order as i64 + 1) * ram as i64;
        let mut v = vec![Rational::zero(); bound as usize];
        let r = ((bound as f64).sqrt() as i64) + 2;
        for n in -r..=r {
            let k = e(n);
            if (0..bound).contains(&k) {
                v[k as usize] += int(s(n));
            }
        }
        Series::new(ram, 0, v, bound)
    }

    pub fn theta3(order: usize) -> Series {
        lattice(order, 1, |n| n * n, |_| 1)
    }

    pub fn theta4(order: usize) -> Series {
        lattice(order, 1, |n| n * n, |n| if n % 2 == 0 { 1 } else { -1 })
    }

    /// `sum q^((n + 1/2)^2)`, exponents in quarters.
    pub fn theta2(order: usize) -> Series {
        lattice(order, 4, |n| (2 * n + 1) * (2 * n + 1), |_| 1)
    }
}

fn forms_anchor_ek() -> &'static str {
    r"E_k=1-\frac{2k}{B_k}\sum_{n\in\mathbb N}\frac{n^{k-1}q^n}{1-q^n}"
}

/// The six checks of the classical-forms suite.
pub fn suite_items(order: usize) -> Vec<VerificationItem> {
    let eis = || -> Outcome {
        all((2..=8).step_by(2).map(|k| {
            let o = (|| {
                let c = -Rational::from_integer((2 * k).into()) / bernoulli(k)?;
                series_equal_to(&eisenstein(k, order)?, &oracle::eisenstein(k, &c, order), order)
            })();
            (format!("E{k}"), o)
        }))
    };
    let eta_check = || -> Outcome {
        let oracle_eta = oracle::pentagonal(order).with_ram(24).shift_units(1);
        let order_r = Rational::from_integer(order.into());
        crate::report::series_equal(&eta(order), &oracle_eta, &order_r)
    };
    let theta_check = || -> Outcome {
        let o = Rational::from_integer(order.into());
        all([
            ("theta2".to_string(), crate::report::series_equal(&theta2(order), &oracle::theta2(order), &o)),
            ("theta3".to_string(), crate::report::series_equal(&theta3(order), &oracle::theta3(order), &o)),
            ("theta4".to_string(), crate::report::series_equal(&theta4(order), &oracle::theta4(order), &o)),
        ])
    };
    vec![
        VerificationItem::new("forms.eisenstein-oracle", forms_anchor_ek(), order, eis()),
        VerificationItem::new(
            "forms.eta-oracle",
            r"\eta(\tau)=q^{1/24}\prod_{n\in\mathbb N}(1-q^n)",
            order,
            eta_check(),
        ),
        VerificationItem::new(
            "forms.theta-oracle",
            r"\theta_2(\tau)=q^{1/4}\sum_{n\in\mathbb Z} q^{n(n+1)},\quad \theta_3(\tau)=\sum_{n\in\mathbb Z} q^{n^2},\quad \theta_4(\tau)=\sum_{n\in\mathbb Z} (-1)^nq^{n^2}",
            order,
            theta_check(),
        ),
        VerificationItem::new(
            "forms.ramanujan",
            r"D_qE_2=\frac{E_2^2-E_4}{12}, D_qE_4=\frac{E_2E_4-E_6}3, D_qE_6=\frac{E_2E_6-E_4^2}2",
            order,
            ramanujan_check(order),
        ),
        VerificationItem::new("forms.jacobi", r"\theta_3^4=\theta_2^4+\theta_4^4", order, jacobi_check(order)),
        VerificationItem::new(
            "forms.derived-identities",
            r"E_8=E_4^2; 1-1728/j=E_6^2/E_4^3; Hauptmoduln of valuation 1",
            order,
            derived_check(order),
        ),
    ]
}

/// The three Ramanujan residuals, each zero through `order`.
pub fn ramanujan_residuals(order: usize) -> Result<[Series; 3]> {
    let e2 = eisenstein(2, order)?;
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let r2 = &e2.dq() - &(&(&e2 * &e2) - &e4).scale(&rat(1, 12));
    let r4 = &e4.dq() - &(&(&e2 * &e4) - &e6).scale(&rat(1, 3));
    let r6 = &e6.dq() - &(&(&e2 * &e6) - &(&e4 * &e4)).scale(&rat(1, 2));
    Ok([r2, r4, r6])
}

pub fn ramanujan_check(order: usize) -> Outcome {
    let o = Rational::from_integer(order.into());
    let [r2, r4, r6] = ramanujan_residuals(order)?;
    all([
        ("D_q E2".to_string(), series_zero(&r2, &o)),
        ("D_q E4".to_string(), series_zero(&r4, &o)),
        ("D_q E6".to_string(), series_zero(&r6, &o)),
    ])
}

pub fn jacobi_check(order: usize) -> Outcome {
    let o = Rational::from_integer(order.into());
    let t2 = theta2(order).powi(4)?;
    let t3 = theta3(order).powi(4)?;
    let t4 = theta4(order).powi(4)?;
    let one = Series::one(order as i64 + 1);
    let lhs = &theta3(order).powi(2)? * &(&one - &haupt4(order)?).pow_rational(&rat(1, 2))?;
    all([
        ("theta3^4 - theta2^4 - theta4^4".to_string(), series_zero(&(&(&t3 - &t2) - &t4), &o)),
        (
            "theta3^2 (1 - theta2^4/theta3^4)^(1/2) - theta4^2".to_string(),
            crate::report::series_equal(&lhs, &theta4(order).powi(2)?, &o),
        ),
    ])
}

pub fn derived_check(order: usize) -> Outcome {
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let one = Series::one(order as i64 + 1);
    let mut checks = vec![
        ("E8 - E4^2".to_string(), series_equal_to(&eisenstein(8, order)?, &(&e4 * &e4), order)),
        (
            "1 - 1728/j - E6^2/E4^3".to_string(),
            series_equal_to(&(&one - &haupt1(order)?), &(&e6 * &e6).div(&e4.powi(3)?)?, order),
        ),
    ];
    for (name, t) in [
        ("haupt1", haupt1(order)?),
        ("haupt2", haupt2(order)?),
        ("haupt3", haupt3(order)?),
        ("haupt4", haupt4(order)?),
        ("example t", example_t(order)?),
    ] {
        let v = t.valuation();
        checks.push((
            format!("valuation of {name}"),
            expect(v == Some(Rational::one()), || format!("valuation {v:?}")),
        ));
    }
    all(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e4_leading_coefficients() {
        let e4 = eisenstein(4, 3).unwrap();
        let want: Vec<Rational> = [1, 240, 2160, 6720].iter().map(|&n| int(n)).collect();
        assert_eq!(e4.coeffs(), &want[..]);
    }

    #[test]
    fn eta_starts_at_one_24th() {
        let e = eta(5);
        assert_eq!(e.valuation(), Some(rat(1, 24)));
        assert_eq!(e.coeff(&(int(1) + rat(1, 24))).unwrap(), int(-1));
        assert_eq!(e.precision(), int(6) + rat(1, 24));
    }

    #[test]
    fn names_round_trip() {
        for n in FormName::ALL {
            assert_eq!(n.to_string().parse::<FormName>().unwrap(), n);
        }
        assert!("E10".parse::<FormName>().is_err());
    }

    #[test]
    fn j_principal_part() {
        let j = j_invariant(2).unwrap();
        assert_eq!(j.valuation(), Some(int(-1)));
        assert_eq!(j.coeff_int(0).unwrap(), int(744));
        assert_eq!(j.coeff_int(1).unwrap(), int(196884));
        assert_eq!(j.coeff_int(2).unwrap(), int(21493760));
    }

    #[test]
    fn suite_passes_at_low_order() {
        for item in suite_items(12) {
            assert_eq!(item.status, crate::report::Status::Pass, "{item:?}");
        }
    }
}

//! Frobenius solutions of order-3 theta operators, their mirror maps, the
//! modular relations those maps satisfy, and the operator identities relating
//! the Picard-Fuchs presentations to the two-variable systems.

pub mod operator;

use num_traits::{One, Zero};

pub use operator::{LogPair, ThetaOperator};

use crate::error::{Error, Result};
use crate::forms;
use crate::hypergeom::{clausen_check, clausen_pairs, hyp2f1, pfq, HypergeomParams};
use crate::report::{all, expect, series_equal_to, series_zero, Outcome, VerificationItem};
use crate::scalar::{int, rat, Rational};
use crate::Series;

/// `f0` with `f0(0) = 1`, and `g` with `f1 = f0 log x + g`, `g(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusBasis {
    pub f0: Series,
    pub g: Series,
}

fn eval(poly: &[Rational], n: i64) -> Rational {
    let x = Rational::from_integer(n.into());
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
}

fn derivative(poly: &[Rational]) -> Vec<Rational> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
        .collect()
}

/// Solves `sum_i x^i R_i(T)` against `sum a_n x^n` and the log companion, for
/// `R_0 = c T^k` (maximal unipotent monodromy at `x = 0`).
pub fn frobenius(op: &ThetaOperator, order: usize) -> Result<FrobeniusBasis> {
    let layers = op.x_layers()?;
    let r0 = layers.first().cloned().unwrap_or_default();
    let nonzero: Vec<usize> = (0..r0.len()).filter(|&k| !r0[k].is_zero()).collect();
    if nonzero.len() != 1 || nonzero[0] < 2 {
        return Err(Error::NotMum(format!("x^0 part of `{op}` is not c T^k with k >= 2")));
    }
    let k = nonzero[0];
    let lead = r0[k].clone();
    let derivs: Vec<Vec<Rational>> = layers.iter().map(|p| derivative(p)).collect();
    let mut a = vec![Rational::one()];
    let mut b = vec![Rational::zero()];
    for n in 1..=order {
        let mut sa = Rational::zero();
        let mut sb = Rational::zero();
        for (i, layer) in layers.iter().enumerate().skip(1) {
            if i > n {
                break;
            }
            let m = (n - i) as i64;
            let am = &a[n - i];
            sa += eval(layer, m) * am;
            sb += eval(layer, m) * &b[n - i] + eval(&derivs[i], m) * am;
        }
        let nn = Rational::from_integer((n as i64).into());
        let r0n = &lead * crate::scalar::powi(&nn, k as i64);
        let r0dn = &lead * Rational::from_integer((k as i64).into()) * crate::scalar::powi(&nn, k as i64 - 1);
        let an = -sa / &r0n;
        let bn = -(sb + &r0dn * &an) / &r0n;
        a.push(an);
        b.push(bn);
    }
    let p = order as i64 + 1;
    Ok(FrobeniusBasis {
        f0: Series::from_coeffs(a, p),
        g: Series::from_coeffs(b, p),
    })
}

/// `x(q)`, the reversion of `q = x exp(g/f0)`.
pub fn mirror_map(basis: &FrobeniusBasis) -> Result<Series> {
    forward_map(basis)?.reversion()
}

/// `q(x) = x exp(g/f0)`.
pub fn forward_map(basis: &FrobeniusBasis) -> Result<Series> {
    Ok(basis.g.div(&basis.f0)?.exp()?.shift_units(1))
}

/// The four order-3 operators of the modular relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MirrorCase {
    I,
    II,
    III,
    IV,
}

impl MirrorCase {
    pub const ALL: [MirrorCase; 4] = [MirrorCase::I, MirrorCase::II, MirrorCase::III, MirrorCase::IV];

    pub fn label(self) -> &'static str {
        match self {
            MirrorCase::I => "I",
            MirrorCase::II => "II",
            MirrorCase::III => "III",
            MirrorCase::IV => "IV",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s) || c.index().to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown case `{s}` (expected I, II, III or IV)")))
    }

    fn index(self) -> usize {
        self as usize + 1
    }

    /// The operator as printed in the table of Picard-Fuchs operators.
    pub fn displayed_operator(self) -> &'static str {
        match self {
            MirrorCase::I => "T^3-8x(6T+5)(6T+3)(6T+1)",
            MirrorCase::II => "T^3-4x(4T+3)(4T+2)(4T+1)",
            MirrorCase::III => "T^3-6x(2T+1)(3T+2)(3T+1)",
            MirrorCase::IV => "T^3-8x(2T+1)^3",
        }
    }

    pub fn operator(self) -> ThetaOperator {
        self.displayed_operator().parse().expect("table operators parse")
    }

    /// `(lambda, nu)`; `lambda_I = 1728 = 8 * 6^3` fixes `x_I = 1/j`.
    pub fn lambda_nu(self) -> (Rational, Rational) {
        match self {
            MirrorCase::I => (int(1728), rat(1, 3)),
            MirrorCase::II => (int(256), rat(1, 4)),
            MirrorCase::III => (int(108), rat(1, 6)),
            MirrorCase::IV => (int(64), int(0)),
        }
    }

    /// The `(a, b)` with `2F1(a, b; a+b+1/2; lambda x)^2 = omega_0`.
    pub fn clausen_pair(self) -> (Rational, Rational) {
        clausen_pairs()[self as usize].clone()
    }

    /// `T^3 - lambda x (T+1/2)(T+1/2+nu)(T+1/2-nu)`.
    pub fn hypergeometric_operator(self) -> ThetaOperator {
        let (l, nu) = self.lambda_nu();
        let t = ThetaOperator::theta();
        let half = ThetaOperator::constant(rat(1, 2));
        let shift = |c: Rational| &(&t + &half) + &ThetaOperator::constant(c);
        let cubic = &(&shift(Rational::zero()) * &shift(nu.clone())) * &shift(-nu);
        &t.pow(3) - &(&ThetaOperator::x() * &cubic).scale(&l)
    }

    /// `sum_n c_n x^n` with the factorial coefficients of the table.
    pub fn factorial_series(self, order: usize) -> Series {
        let fact = |n: u64| -> Rational { Rational::from_integer((1..=n).product::<num_bigint::BigInt>()) };
        let c = (0..=order as u64)
            .map(|n| match self {
                MirrorCase::I => fact(6 * n) / (fact(3 * n) * fact(n).pow(3)),
                MirrorCase::II => fact(4 * n) / fact(n).pow(4),
                MirrorCase::III => fact(2 * n) * fact(3 * n) / fact(n).pow(5),
                MirrorCase::IV => fact(2 * n).pow(3) / fact(n).pow(6),
            })
            .collect();
        Series::from_coeffs(c, order as i64 + 1)
    }
}

/// `op(s)`, which vanishes when `s` is annihilated.
pub fn annihilator_check(op: &ThetaOperator, s: &Series) -> Result<Series> {
    op.apply(s)
}

/// `f0` agrees with the factorial sum and with `3F2(1/2,1/2+nu,1/2-nu;1,1;lambda x)`,
/// and the operator kills `f0` and `f0 log x + g`.
pub fn frobenius_check(case: MirrorCase, order: usize) -> Outcome {
    let op = case.operator();
    let basis = frobenius(&op, order)?;
    let (l, nu) = case.lambda_nu();
    let half = rat(1, 2);
    let p = HypergeomParams::new(vec![half.clone(), &half + &nu, &half - &nu], vec![int(1), int(1)])?;
    let f3 = pfq(&p, order).compose(&Series::var(order as i64 + 1).scale(&l))?;
    let o = Rational::from_integer(order.into());
    let log_res = op.apply_log(&LogPair {
        log: basis.f0.clone(),
        rest: basis.g.clone(),
    })?;
    all([
        ("factorial sum".to_string(), series_equal_to(&basis.f0, &case.factorial_series(order), order)),
        ("3F2".to_string(), series_equal_to(&basis.f0, &f3, order)),
        ("L f0".to_string(), series_zero(&op.apply(&basis.f0)?, &o)),
        ("L f1, log part".to_string(), series_zero(&log_res.log, &o)),
        ("L f1, log-free part".to_string(), series_zero(&log_res.rest, &o)),
    ])
}

/// `omega_0(x(q))^2 = x'^2/(x^2 (1 - lambda x))`, plus `= E4` and `1/x = j` for case I.
pub fn relation_check(case: MirrorCase, order: usize) -> Outcome {
    let basis = frobenius(&case.operator(), order + 2)?;
    let x = mirror_map(&basis)?;
    let (l, _) = case.lambda_nu();
    let omega = basis.f0.compose(&x)?;
    let lhs = &omega * &omega;
    let one = Series::one(x.prec_units());
    let dx = x.dq();
    let rhs = (&dx * &dx).div(&(&(&x * &x) * &(&one - &x.scale(&l))))?;
    let mut checks = vec![
        ("omega_0^2 = x'^2/(x^2(1-lambda x))".to_string(), series_equal_to(&lhs, &rhs, order)),
        (
            "forward map round trip".to_string(),
            series_equal_to(&forward_map(&basis)?.compose(&x)?, &Series::var(order as i64 + 1), order),
        ),
    ];
    if case == MirrorCase::I {
        checks.push(("omega_0^2 = E4".to_string(), series_equal_to(&lhs, &forms::eisenstein(4, order)?, order)));
        let j = forms::j_invariant(order)?;
        checks.push(("1/x = j".to_string(), series_equal_to(&x.inv()?, &j, order.saturating_sub(1))));
    }
    all(checks)
}

/// `op(2F1(a,b;1;lambda x)^2) = 0` for the Clausen pair of the case.
pub fn symmetric_square_check(case: MirrorCase, order: usize) -> Outcome {
    let (a, b) = case.clausen_pair();
    let (l, _) = case.lambda_nu();
    let c = &a + &b + rat(1, 2);
    let f = hyp2f1(&a, &b, &c, order)?.compose(&Series::var(order as i64 + 1).scale(&l))?;
    let r = annihilator_check(&case.operator(), &(&f * &f))?;
    series_zero(&r, &Rational::from_integer(order.into()))
}

fn relation_anchor(case: MirrorCase) -> &'static str {
    match case {
        MirrorCase::I => r"I &:\Bigg(\sum_{n=0}^{\infty}\frac{(6n)!}{(3n)!(n!)^3}\frac{1}{j(\tau)^n}\Bigg)^2& =& E_4(q)",
        MirrorCase::II => r"II &:\Bigg(\sum_{n=0}^{\infty}\frac{(4n)!}{(n!)^4} x_2(\tau)^n\Bigg)^2& =&\frac{x_2^{\prime\,2}}{x^2(1-256x)}",
        MirrorCase::III => r"III &:\Bigg(\sum_{n=0}^{\infty}\frac{(2n)!(3n)!}{(n!)^5} x_3(\tau)^n\Bigg)^2&=&\frac{x_3^{\prime\,2}}{x_3^2(1-108x_3)}",
        MirrorCase::IV => r"IV &:\Bigg(\sum_{n=0}^{\infty}\frac{(2n)!^3}{(n!)^6} x_4(\tau)^n\Bigg)^2&=&\frac{x_4^{\prime\,2}}{x_4^2(1-64x_4)}",
    }
}

pub fn case_items(case: MirrorCase, order: usize) -> Vec<VerificationItem> {
    let id = |s: &str| format!("mirror.{s}.{}", case.label());
    let mut rel = VerificationItem::new(id("relation"), relation_anchor(case), order, relation_check(case, order));
    if case == MirrorCase::I {
        rel = rel.with_reason("lambda = 1728 = 8*6^3, so the mirror map of operator I is x = 1/j");
    }
    vec![
        VerificationItem::new(
            id("frobenius"),
            r"a unique solution $f_0(t)$ near $t=0$ with $f_0(0)=1$, and a solution $f_1(t)$ with $f_1(t)=f_0(t)\mbox{log}\,t+O(t)$",
            order,
            frobenius_check(case, order),
        ),
        rel,
        VerificationItem::new(
            id("symmetric-square"),
            r"symmetric square of an order $2$ differential equation",
            order,
            symmetric_square_check(case, order),
        ),
    ]
}

/// Frobenius data, relations and symmetric squares at `order`; Clausen at `3 order / 2`.
pub fn suite_items(order: usize) -> Vec<VerificationItem> {
    use rayon::prelude::*;
    let mut items: Vec<VerificationItem> = MirrorCase::ALL
        .par_iter()
        .flat_map_iter(|c| case_items(*c, order))
        .collect();
    let co = order * 3 / 2;
    items.push(VerificationItem::new(
        "mirror.clausen",
        r"_2F_1\left(a,b;a+b+\frac12;z\right)^2=\,_3F_2\left(2a,a+b,2b;a+b+\frac12,2a+2b;z\right)",
        co,
        all(clausen_pairs()
            .into_iter()
            .map(|(a, b)| (format!("({a},{b})"), clausen_check(&a, &b, co)))),
    ));
    items
}

/// `Tx(Tx - 2Tz) + x(Tx + a)(Tx + 1 - a)`, the operator of the `x`-equation
/// of the `2F1(a,a;1;t)` family with `y` renamed `z`.
pub fn hgde_x_operator(a: &Rational) -> ThetaOperator {
    let t = ThetaOperator::theta();
    let tz = ThetaOperator::theta_z();
    let c = |v: Rational| ThetaOperator::constant(v);
    let first = &t * &(&t - &tz.scale(&int(2)));
    let second = &ThetaOperator::x() * &(&(&t + &c(a.clone())) * &(&t + &c(Rational::one() - a)));
    &first + &second
}

/// `Tz^2 - z(2Tz - Tx + 1)(2Tz - Tx)`.
pub fn hgde_y_operator() -> ThetaOperator {
    let t = ThetaOperator::theta();
    let tz = ThetaOperator::theta_z();
    let inner = &tz.scale(&int(2)) - &t;
    let one = ThetaOperator::constant(Rational::one());
    &tz.pow(2) - &(&ThetaOperator::z() * &(&(&inner + &one) * &inner))
}

fn equal_ops(lhs: &ThetaOperator, rhs: &ThetaOperator) -> Outcome {
    let d = lhs - rhs;
    expect(d.is_zero(), || format!("differ by {d}"))
}

/// One of the three `K3` systems and the family parameter it matches.
struct System {
    name: &'static str,
    l1: &'static str,
    elliptic: &'static str,
    lambda: i64,
    a: Rational,
    anchor: &'static str,
    /// Parameter the system is labelled with, when it differs from the one that matches.
    printed_a: Option<Rational>,
}

fn systems() -> [System; 3] {
    [
        System {
            name: "example61",
            l1: "Tx(Tx-2Tz)-12x(6Tx+5)(6Tx+1)",
            elliptic: "Tx^2-12x(6Tx+5)(6Tx+1)",
            lambda: 432,
            a: rat(1, 6),
            anchor: r"L_1&=&\Theta_x(\Theta_x-2\Theta_z)-12\,x(6\Theta_x+5)(6\Theta_x+1)",
            printed_a: None,
        },
        System {
            name: "example62",
            l1: "Tx(Tx-2Tz)-64x(Tx+1/2+1/4)(Tx+1/2-1/4)",
            elliptic: "Tx^2-64x(Tx+1/2+1/4)(Tx+1/2-1/4)",
            lambda: 64,
            a: rat(1, 4),
            anchor: r"L_1&=& \Theta_x(\Theta_x-2\Theta_z)-64\,x(\Theta_x+\frac{1}{2}+\frac{1}{4})(\Theta_x+\frac{1}{2}-\frac{1}{4})",
            printed_a: Some(rat(1, 3)),
        },
        System {
            name: "example63",
            l1: "Tx(Tx-2Tz)-27x(Tx+1/2+1/6)(Tx+1/2-1/6)",
            elliptic: "Tx^2-27x(Tx+1/2+1/6)(Tx+1/2-1/6)",
            lambda: 27,
            a: rat(1, 3),
            anchor: r"L_1&=& \Theta_x(\Theta_x-2\Theta_z)-27\,x(\Theta_x+\frac{1}{2}+\frac{1}{6})(\Theta_x+\frac{1}{2}-\frac{1}{6})",
            printed_a: Some(rat(1, 4)),
        },
    ]
}

const L2: &str = "Tz^2-z(2Tz-Tx+1)(2Tz-Tx)";

/// Symbolic identities between the Picard-Fuchs presentations, the
/// two-variable systems and the order-3 table.
pub fn op_equiv_items() -> Vec<VerificationItem> {
    let mut items = Vec::new();
    for s in systems() {
        let l1: ThetaOperator = s.l1.parse().expect("fixed operator");
        let target = hgde_x_operator(&s.a).rescale_x(&int(-s.lambda));
        items.push(VerificationItem::new(
            format!("op-equiv.{}.l1", s.name),
            s.anchor,
            0,
            equal_ops(&l1, &target),
        ));
        if let Some(pa) = &s.printed_a {
            let literal = equal_ops(&l1, &hgde_x_operator(pa).rescale_x(&int(-s.lambda)));
            let detail = match literal {
                Ok(Some(d)) => d,
                Ok(None) => "no difference".into(),
                Err(e) => e.to_string(),
            };
            items.push(VerificationItem::skipped(
                format!("op-equiv.{}.l1-as-printed", s.name),
                s.anchor,
                0,
                format!(
                    "the label pairs this system with a = {pa}, which does not match ({detail}); it matches a = {} under x -> -{}x",
                    s.a, s.lambda
                ),
            ));
        }
        let l2: ThetaOperator = L2.parse().expect("fixed operator");
        items.push(VerificationItem::new(
            format!("op-equiv.{}.l2", s.name),
            r"L_2&=& \Theta_z^2-z(2\Theta_z-\Theta_x+1)(2\Theta_z-\Theta_x)",
            0,
            equal_ops(&l2, &hgde_y_operator()),
        ));
        let elliptic = l1.without_theta_z();
        let l: ThetaOperator = s.elliptic.parse().expect("fixed operator");
        items.push(VerificationItem::new(
            format!("op-equiv.{}.elliptic", s.name),
            r"L=\Theta_x^2-\lambda\,x(\Theta_x+\frac{1}{2}+\nu)(\Theta_x+\frac{1}{2}-\nu)",
            0,
            equal_ops(&elliptic, &l),
        ));
    }
    for c in MirrorCase::ALL {
        items.push(VerificationItem::new(
            format!("op-equiv.table.{}", c.label()),
            r"L=\Theta_x^3-\lambda\,x(\Theta_x+\frac{1}{2})(\Theta_x+\frac{1}{2}+\nu)(\Theta_x+\frac{1}{2}-\nu)",
            0,
            equal_ops(&c.operator(), &c.hypergeometric_operator()),
        ));
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undeformed_operator_has_trivial_basis() {
        let b = frobenius(&"T^3".parse().unwrap(), 10).unwrap();
        assert_eq!(b.f0, Series::one(11));
        assert!(b.g.is_zero());
        assert_eq!(series_equal_to(&mirror_map(&b).unwrap(), &Series::var(11), 10), Ok(None));
    }

    #[test]
    fn non_mum_is_rejected() {
        assert!(matches!(frobenius(&"T^3 + 1".parse().unwrap(), 5), Err(Error::NotMum(_))));
        assert!(matches!(frobenius(&"T - x".parse().unwrap(), 5), Err(Error::NotMum(_))));
    }

    #[test]
    fn case_i_mirror_map_is_one_over_j() {
        assert_eq!(relation_check(MirrorCase::I, 8), Ok(None));
    }

    #[test]
    fn op_equiv_items_pass() {
        for it in op_equiv_items() {
            assert_ne!(it.status, crate::report::Status::Fail, "{it:?}");
        }
    }
}

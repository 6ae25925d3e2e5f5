//! Two-variable systems `D_x^2 F + a0 D_x D_y F + a1 D_x F + a2 D_y F + a3 F = 0`
//! (and the `b` companion) built from logarithmic derivatives.
//!
//! Everything is normalized by `F`: [`FDerivs`] holds `D_x F / F`, `D_x^2 F / F`
//! and so on, computed by inverting the Jacobian of `(x, y)` with respect to
//! the two uniformizing variables. Bivariate "order `N`" means every
//! coefficient `u1^i u2^j` with `i, j <= N`, certified through total degree `2N`.

pub mod example41;
pub mod families;
pub mod random;
pub mod schwarzian;
pub mod weight_one;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hypergeom::{hyp2f1, one_minus_pow};
use crate::report::{bifrac_equal, bifrac_zero, Outcome};
use crate::scalar::{int, Rational};
use crate::{BiFracQ, BiSeriesQ, Series};

/// Total degree that covers the box `i, j <= order`.
pub fn box_degree(order: usize) -> usize {
    2 * order
}

/// `f == 0` on the box `i, j <= order`.
pub fn certify_zero(f: &BiFracQ, order: usize) -> Outcome {
    bifrac_zero(f, box_degree(order))
}

/// `a == b` on the box `i, j <= order`.
pub fn certify_equal(a: &BiFracQ, b: &BiFracQ, order: usize) -> Outcome {
    bifrac_equal(a, b, box_degree(order))
}

/// Hypergeometric family a context was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `f = 2F1(a, a; 1; t)`, `F = f(t1) f(t2) (1-t1)^a (1-t2)^a`.
    Thm31 { a: Rational },
    /// `f = 2F1(a, b; 1; t)`, `F = f(t1) f(t2) ((1-t1)(1-t2))^((a+b)/2)`.
    Thm51 { a: Rational, b: Rational },
}

impl Family {
    pub fn params(&self) -> (Rational, Rational) {
        match self {
            Family::Thm31 { a } => (a.clone(), a.clone()),
            Family::Thm51 { a, b } => (a.clone(), b.clone()),
        }
    }

    /// The exponent `e` in `D_q t = t (1-t)^e f(t)^2`.
    pub fn weight_exponent(&self) -> Rational {
        let (a, b) = self.params();
        a + b
    }

    /// `2F1(a, b; 1; t)` through `t^order`.
    pub fn f(&self, order: usize) -> Result<Series> {
        let (a, b) = self.params();
        hyp2f1(&a, &b, &Rational::one(), order)
    }

    /// `(1 - t)^e f^2`, the factor with `D_q = w(t) t d/dt`.
    pub fn weight(&self, order: usize) -> Result<Series> {
        let f = self.f(order)?;
        Ok(&one_minus_pow(&Series::var(order as i64 + 1), &self.weight_exponent())? * &(&f * &f))
    }

    /// `f(t) (1 - t)^(e/2)`, one factor of `F`.
    pub fn form(&self, order: usize) -> Result<Series> {
        let half = self.weight_exponent() / int(2);
        Ok(&self.f(order)? * &one_minus_pow(&Series::var(order as i64 + 1), &half)?)
    }
}

/// How `D_{q_j}` acts on the stored bivariate series.
#[derive(Clone, Debug, PartialEq)]
pub enum Coordinates {
    /// The series are in `q1, q2` and `D_{q_j}` is the Euler operator.
    Q,
    /// The series are in `t1, t2` and `D_{q_j} = w(t_j) t_j d/dt_j`.
    T { weights: [BiSeriesQ; 2] },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarContext {
    pub f: BiFracQ,
    pub x: BiFracQ,
    pub y: BiFracQ,
    pub coords: Coordinates,
}

impl TwoVarContext {
    pub fn new(f: BiFracQ, x: BiFracQ, y: BiFracQ, coords: Coordinates) -> Result<Self> {
        for (name, s) in [("x", &x), ("y", &y)] {
            let d1 = s.theta(1);
            let d2 = s.theta(2);
            if d1.is_zero() && d2.is_zero() {
                return Err(Error::Degenerate(format!("{name} is constant to its known order")));
            }
        }
        Ok(TwoVarContext { f, x, y, coords })
    }

    /// `D_{q_j} g`.
    pub fn dq(&self, g: &BiFracQ, j: u8) -> BiFracQ {
        let t = g.theta(j);
        match &self.coords {
            Coordinates::Q => t,
            Coordinates::T { weights } => t.mul_series(&weights[usize::from(j - 1)]),
        }
    }

    /// The same context with `q1` and `q2` exchanged.
    pub fn transpose(&self) -> Self {
        let coords = match &self.coords {
            Coordinates::Q => Coordinates::Q,
            Coordinates::T { weights } => Coordinates::T {
                weights: [weights[1].transpose(), weights[0].transpose()],
            },
        };
        TwoVarContext {
            f: self.f.transpose(),
            x: self.x.transpose(),
            y: self.y.transpose(),
            coords,
        }
    }
}

/// Logarithmic derivatives `G_{t,j} = D_{q_j} t / t`, index `j - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GSet {
    pub gx: [BiFracQ; 2],
    pub gy: [BiFracQ; 2],
    pub gf: [BiFracQ; 2],
}

pub fn logderivs(ctx: &TwoVarContext) -> Result<GSet> {
    let lg = |s: &BiFracQ| -> Result<[BiFracQ; 2]> {
        let inv = s.inv()?;
        Ok([&ctx.dq(s, 1) * &inv, &ctx.dq(s, 2) * &inv])
    };
    Ok(GSet {
        gx: lg(&ctx.x)?,
        gy: lg(&ctx.y)?,
        gf: lg(&ctx.f)?,
    })
}

impl GSet {
    /// `G_{x,1} G_{y,2} - G_{x,2} G_{y,1}`.
    pub fn delta(&self) -> BiFracQ {
        &(&self.gx[0] * &self.gy[1]) - &(&self.gx[1] * &self.gy[0])
    }

    /// `G_{x,1} G_{y,2} + G_{y,1} G_{x,2}`.
    pub fn sum(&self) -> BiFracQ {
        &(&self.gx[0] * &self.gy[1]) + &(&self.gy[0] * &self.gx[1])
    }

    pub fn transpose(&self) -> Self {
        let sw = |p: &[BiFracQ; 2]| [p[1].transpose(), p[0].transpose()];
        GSet {
            gx: sw(&self.gx),
            gy: sw(&self.gy),
            gf: sw(&self.gf),
        }
    }
}

/// `a0..a3`, `b0..b3` of the system.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSet {
    pub a: [BiFracQ; 4],
    pub b: [BiFracQ; 4],
}

impl CoefficientSet {
    pub fn get(&self, name: &str) -> Option<&BiFracQ> {
        let (which, k) = name.split_at(1);
        let k: usize = k.parse().ok()?;
        match which {
            "a" => self.a.get(k),
            "b" => self.b.get(k),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (String, &BiFracQ)> {
        let a = self.a.iter().enumerate().map(|(k, c)| (format!("a{k}"), c));
        let b = self.b.iter().enumerate().map(|(k, c)| (format!("b{k}"), c));
        a.chain(b)
    }
}

fn degenerate(e: Error, what: &str) -> Error {
    match e {
        Error::DivisionByZero | Error::Degenerate(_) => {
            Error::Degenerate(format!("{what} vanishes or is not invertible to the working order"))
        }
        other => other,
    }
}

/// The eight coefficients from the logarithmic derivatives.
pub fn coefficients_thm21(ctx: &TwoVarContext, g: &GSet) -> Result<CoefficientSet> {
    let two = int(2);
    let s_inv = g
        .sum()
        .inv()
        .map_err(|e| degenerate(e, "G_{x,1}G_{y,2}+G_{y,1}G_{x,2}"))?;
    let [gx1, gx2] = &g.gx;
    let [gy1, gy2] = &g.gy;
    let [gf1, gf2] = &g.gf;
    let den = &(&(gx1 * gx1) * &(gy2 * gy2)) - &(&(gy1 * gy1) * &(gx2 * gx2));
    let den_inv = den
        .inv()
        .map_err(|e| degenerate(e, "G_{x,1}^2G_{y,2}^2-G_{y,1}^2G_{x,2}^2"))?;
    // D_{q_j} G - 2 G_{F,j} G
    let weight4 = |gj: &BiFracQ, j: u8, gfj: &BiFracQ| &ctx.dq(gj, j) - &(gfj * gj).scale(&two);
    let ax = [weight4(gx1, 1, gf1), weight4(gx2, 2, gf2)];
    let ay = [weight4(gy1, 1, gf1), weight4(gy2, 2, gf2)];
    let af = [&ctx.dq(gf1, 1) - &(gf1 * gf1), &ctx.dq(gf2, 2) - &(gf2 * gf2)];
    let gy1s = gy1 * gy1;
    let gy2s = gy2 * gy2;
    let gx1s = gx1 * gx1;
    let gx2s = gx2 * gx2;
    let a_comb = |p: &[BiFracQ; 2]| &(&(&gy2s * &p[0]) - &(&gy1s * &p[1])) * &den_inv;
    let b_comb = |p: &[BiFracQ; 2]| &(&(&gx1s * &p[1]) - &(&gx2s * &p[0])) * &den_inv;
    Ok(CoefficientSet {
        a: [
            (&(gy1 * gy2) * &s_inv).scale(&two),
            a_comb(&ax),
            a_comb(&ay),
            -&a_comb(&af),
        ],
        b: [
            (&(gx1 * gx2) * &s_inv).scale(&two),
            b_comb(&ax),
            b_comb(&ay),
            -&b_comb(&af),
        ],
    })
}

/// Derivatives of `F` in the Euler operators `D_x = x d/dx`, `D_y = y d/dy`,
/// each divided by `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct FDerivs {
    pub fx: BiFracQ,
    pub fy: BiFracQ,
    pub fxx: BiFracQ,
    /// `D_y D_x F / F`, from differentiating `D_x F`.
    pub fyx: BiFracQ,
    /// `D_x D_y F / F`, from differentiating `D_y F`.
    pub fxy: BiFracQ,
    pub fyy: BiFracQ,
}

/// The inverse-Jacobian route: `D_x F = F Delta_x / Delta`, then the same
/// procedure applied to `D_x F` and `D_y F`.
pub fn f_derivs(ctx: &TwoVarContext, g: &GSet) -> Result<FDerivs> {
    let [gx1, gx2] = &g.gx;
    let [gy1, gy2] = &g.gy;
    let [gf1, gf2] = &g.gf;
    let delta_inv = g
        .delta()
        .inv()
        .map_err(|e| degenerate(e, "Delta = G_{x,1}G_{y,2}-G_{x,2}G_{y,1}"))?;
    let dx = &(gf1 * gy2) - &(gf2 * gy1);
    let dy = &(gx1 * gf2) - &(gx2 * gf1);
    let fx = &dx * &delta_inv;
    let fy = &dy * &delta_inv;
    // D_x (F r) / F = r D_x F / F + D_x r, with D_x r from the inverse Jacobian
    let ex = |r: &BiFracQ| -> BiFracQ { &(&(gy2 * &ctx.dq(r, 1)) - &(gy1 * &ctx.dq(r, 2))) * &delta_inv };
    let ey = |r: &BiFracQ| -> BiFracQ { &(&(gx1 * &ctx.dq(r, 2)) - &(gx2 * &ctx.dq(r, 1))) * &delta_inv };
    let fxx = &(&fx * &fx) + &ex(&fx);
    let fyx = &(&fx * &fy) + &ey(&fx);
    let fxy = &(&fx * &fy) + &ex(&fy);
    let fyy = &(&fy * &fy) + &ey(&fy);
    Ok(FDerivs {
        fx,
        fy,
        fxx,
        fyx,
        fxy,
        fyy,
    })
}

/// `sum c_k * term_k + c_F`, each argument a normalized derivative of `F`.
pub fn combine(terms: &[(&BiFracQ, &BiFracQ)], constant: &BiFracQ) -> BiFracQ {
    terms
        .iter()
        .fold(constant.clone(), |acc, (c, t)| &acc + &(*c * *t))
}

/// Both residuals of the system, divided by `F`.
pub fn residual_main(d: &FDerivs, c: &CoefficientSet) -> (BiFracQ, BiFracQ) {
    let r1 = &d.fxx + &combine(&[(&c.a[0], &d.fyx), (&c.a[1], &d.fx), (&c.a[2], &d.fy)], &c.a[3]);
    let r2 = &d.fyy + &combine(&[(&c.b[0], &d.fyx), (&c.b[1], &d.fx), (&c.b[2], &d.fy)], &c.b[3]);
    (r1, r2)
}

/// Everything a system check needs, computed once.
#[derive(Clone, Debug)]
pub struct Solved {
    pub g: GSet,
    pub coeffs: CoefficientSet,
    pub derivs: FDerivs,
}

pub fn solve(ctx: &TwoVarContext) -> Result<Solved> {
    let g = logderivs(ctx)?;
    let coeffs = coefficients_thm21(ctx, &g)?;
    let derivs = f_derivs(ctx, &g)?;
    Ok(Solved { g, coeffs, derivs })
}

/// Residuals of the system with its own coefficients vanish, and `D_x D_y = D_y D_x`.
pub fn formal_identity_check(s: &Solved, order: usize) -> Outcome {
    let (r1, r2) = residual_main(&s.derivs, &s.coeffs);
    crate::report::all([
        ("first equation".to_string(), certify_zero(&r1, order)),
        ("second equation".to_string(), certify_zero(&r2, order)),
        (
            "D_x D_y F = D_y D_x F".to_string(),
            certify_equal(&s.derivs.fxy, &s.derivs.fyx, order),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BiSeries;

    #[test]
    fn monomial_logderivs() {
        let p = 8;
        let x: BiFracQ = BiSeries::monomial(int(1), 1, 1, p).into();
        let y: BiFracQ = (&BiSeries::var1(p) + &BiSeries::var2(p)).into();
        let f = BiFracQ::constant(int(1), p);
        let ctx = TwoVarContext::new(f, x, y, Coordinates::Q).unwrap();
        let g = logderivs(&ctx).unwrap();
        let one = BiFracQ::constant(int(1), p);
        assert_eq!(bifrac_equal(&g.gx[0], &one, 5), Ok(None));
        assert_eq!(bifrac_equal(&g.gx[1], &one, 5), Ok(None));
        assert!(g.gf[0].is_zero() && g.gf[1].is_zero());
    }

    #[test]
    fn constant_x_is_rejected() {
        let c = BiFracQ::constant(int(3), 6);
        let y: BiFracQ = BiSeries::var1(6).into();
        assert!(TwoVarContext::new(c.clone(), c, y, Coordinates::Q).is_err());
    }
}

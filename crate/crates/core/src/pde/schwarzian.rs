//! `2 t' t''' - 3 t''^2` for the hypergeometric uniformizations, in `t`.
//!
//! Dots are `D_q`, rewritten as `D_q = t w(t) d/dt` with `w = (1-t)^e f^2`.

use num_traits::One;

use super::Family;
use crate::error::Result;
use crate::hypergeom::theorem52_pairs;
use crate::report::{all, series_equal_to, Outcome, VerificationItem};
use crate::scalar::{int, Rational};
use crate::Series;

const MARGIN: usize = 4;

/// `(t', t'', t''')` as series in `t`.
pub fn derivatives(family: &Family, order: usize) -> Result<[Series; 3]> {
    let w = family.weight(order + MARGIN)?;
    let t = Series::var(w.prec_units());
    let d1 = &t * &w;
    let d = |s: &Series| -> Result<Series> { Ok(&d1 * &s.deriv()?) };
    let d2 = d(&d1)?;
    let d3 = d(&d2)?;
    Ok([d1, d2, d3])
}

/// `2 t' t''' - 3 t''^2`.
pub fn schwarzian_numerator(family: &Family, order: usize) -> Result<Series> {
    let [d1, d2, d3] = derivatives(family, order)?;
    Ok(&(&d1 * &d3).scale(&int(2)) - &(&d2 * &d2).scale(&int(3)))
}

fn t_ops(order: usize) -> (Series, Series) {
    let p = (order + MARGIN) as i64 + 1;
    (Series::var(p), Series::one(p))
}

/// The displayed multiple of `t'^4`: `-((t-1)^2 + 4a(1-a)t)/(t^2(t-1)^2)` for
/// `a = b`, `((a-b)^2 t^2 - (1-t)^2 + (4ab-2a-2b)t)/(t^2(1-t)^2)` in general.
pub fn displayed_factor(family: &Family, order: usize) -> Result<Series> {
    let (t, one) = t_ops(order);
    let omt = &one - &t;
    let den = (&(&t * &t) * &(&omt * &omt)).inv()?;
    let num = match family {
        Family::Thm31 { a } => {
            -&(&(&omt * &omt) + &t.scale(&(a * (Rational::one() - a) * int(4))))
        }
        Family::Thm51 { a, b } => {
            let amb = a - b;
            let lin = a * b * int(4) - a * int(2) - b * int(2);
            &(&(&t * &t).scale(&(&amb * &amb)) - &(&omt * &omt)) + &t.scale(&lin)
        }
    };
    Ok(&num * &den)
}

/// `Q = (4 p2 - 2 p1' - p1^2)/4` for `f'' + p1 f' + p2 f = 0` the hypergeometric equation.
pub fn q_invariant(family: &Family, order: usize) -> Result<Series> {
    let (a, b) = family.params();
    let (t, one) = t_ops(order);
    let tt = (&t * &(&one - &t)).inv()?;
    let p1 = &(&one - &t.scale(&(Rational::one() + &a + &b))) * &tt;
    let p2 = tt.scale(&-(&a * &b));
    let q = &(&p2.scale(&int(4)) - &p1.deriv()?.scale(&int(2))) - &(&p1 * &p1);
    Ok(q.scale(&Rational::new(1.into(), 4.into())))
}

pub fn family_check(family: &Family, order: usize) -> Outcome {
    let lhs = schwarzian_numerator(family, order)?;
    let [d1, ..] = derivatives(family, order)?;
    let d4 = d1.powi(4)?;
    let displayed = &displayed_factor(family, order)? * &d4;
    series_equal_to(&lhs, &displayed, order)
}

fn label(family: &Family) -> String {
    match family {
        Family::Thm31 { a } => format!("thm31.a={a}"),
        Family::Thm51 { a, b } => format!("thm51.a={a},b={b}"),
    }
}

pub fn suite_items(order: usize) -> Vec<VerificationItem> {
    let mut fams: Vec<Family> = super::families::thm31_parameters()
        .into_iter()
        .map(|a| Family::Thm31 { a })
        .collect();
    fams.extend(theorem52_pairs().into_iter().map(|(a, b)| Family::Thm51 { a, b }));
    let mut items: Vec<VerificationItem> = fams
        .iter()
        .map(|f| {
            let anchor = match f {
                Family::Thm31 { .. } => {
                    r"2\dot t_j\dddot t_j-3\ddot t_j^2=-\frac{(t_j-1)^2+4a(1-a)t_j}{t_j^2(t_j-1)^2}\dot t_j^4"
                }
                Family::Thm51 { .. } => {
                    r"2\dot t_j\dddot t_j-3\ddot t_j^2=\dot t_j^4\frac{(a-b)^2t_j^2-(1-t_j)^2+(4ab-2a-2b)t_j}{t_j^2(1-t_j)^2}"
                }
            };
            VerificationItem::new(format!("schwarzian.{}", label(f)), anchor, order, family_check(f, order))
        })
        .collect();
    items.push(VerificationItem::new(
        "schwarzian.lemma32",
        r"Q=\frac{4p_2-2p_1^\prime-p_1^2}4",
        order,
        all(fams.iter().map(|f| {
            let o = (|| {
                let lhs = schwarzian_numerator(f, order)?;
                let [d1, ..] = derivatives(f, order)?;
                // 2Q t'^2 + {t, tau} = 0 with {t, tau} = t'''/t' - (3/2)(t''/t')^2
                let q = q_invariant(f, order)?;
                let schw = lhs.div(&(&d1 * &d1).scale(&int(2)))?;
                series_equal_to(&(&q.scale(&int(2)) * &(&d1 * &d1)), &-&schw, order)
            })();
            (label(f), o)
        })),
    ));
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_parameter_collapses() {
        // a = 0: f = 1, t' = t, and the target is -t'^4/t^2
        let fam = Family::Thm31 { a: int(0) };
        let lhs = schwarzian_numerator(&fam, 10).unwrap();
        let t = Series::var(15);
        let want = -&(&t * &t);
        assert_eq!(series_equal_to(&lhs, &want, 10), Ok(None));
        assert_eq!(family_check(&fam, 10), Ok(None));
    }

    #[test]
    fn half_matches_displayed_form() {
        assert_eq!(family_check(&Family::Thm31 { a: Rational::new(1.into(), 2.into()) }, 12), Ok(None));
    }
}

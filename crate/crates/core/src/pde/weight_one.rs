//! One-variable checks for the weight-one forms: `h = 2F1(a,a;1;t)(1-t)^a`
//! and the second-order equation it satisfies in `q`.

use num_traits::One;

use crate::error::Result;
use crate::forms::{self, WeightOnePair};
use crate::hypergeom::{hyp2f1, one_minus_pow};
use crate::report::{all, series_equal_to, series_zero, Outcome, VerificationItem};
use crate::scalar::{int, rat, Rational};
use crate::Series;

const MARGIN: usize = 4;

pub const CASES: [char; 4] = ['a', 'b', 'c', 'd'];

/// Logarithmic data for `f = h (1-t)^(-alpha)`.
#[derive(Clone, Debug)]
pub struct LemmaData {
    pub pair: WeightOnePair,
    pub f: Series,
    pub g_t: Series,
    pub g_f: Series,
    /// `(D_q G_t - 2 G_f G_t) / G_t^2`
    pub ratio1: Series,
    /// `(D_q G_f - G_f^2) / G_t^2`
    pub ratio2: Series,
}

pub fn lemma_data(case: char, order: usize) -> Result<LemmaData> {
    let pair = forms::weight_one_pair(case, order + MARGIN)?;
    let t = &pair.t;
    let f = &pair.h * &one_minus_pow(t, &-&pair.alpha)?;
    let g_t = t.dq().div(t)?;
    let g_f = f.dq().div(&f)?;
    let gt2_inv = (&g_t * &g_t).inv()?;
    let ratio1 = &(&g_t.dq() - &(&g_f * &g_t).scale(&int(2))) * &gt2_inv;
    let ratio2 = &(&g_f.dq() - &(&g_f * &g_f)) * &gt2_inv;
    Ok(LemmaData {
        pair,
        f,
        g_t,
        g_f,
        ratio1,
        ratio2,
    })
}

impl LemmaData {
    /// `D_t = t d/dt = D_q / G_t`.
    pub fn d_t(&self, s: &Series) -> Result<Series> {
        s.dq().div(&self.g_t)
    }

    fn t_over_1mt(&self) -> Result<Series> {
        let t = &self.pair.t;
        t.div(&(&Series::one(t.prec_units()) - t))
    }

    /// `-2 alpha t/(1-t)` and `alpha^2 t/(1-t)`.
    pub fn expected_ratios(&self) -> Result<(Series, Series)> {
        let r = self.t_over_1mt()?;
        let al = &self.pair.alpha;
        Ok((r.scale(&(al * int(-2))), r.scale(&(al * al))))
    }

    /// `D_t^2 f + ratio1 D_t f - ratio2 f`.
    pub fn lemma_residual(&self) -> Result<Series> {
        let d1 = self.d_t(&self.f)?;
        let d2 = self.d_t(&d1)?;
        Ok(&(&d2 + &(&self.ratio1 * &d1)) - &(&self.ratio2 * &self.f))
    }

    /// `(1-t) D_t^2 f - 2 alpha t D_t f - alpha^2 t f`.
    pub fn hg_residual(&self) -> Result<Series> {
        let t = &self.pair.t;
        let al = &self.pair.alpha;
        let d1 = self.d_t(&self.f)?;
        let d2 = self.d_t(&d1)?;
        let omt = &Series::one(t.prec_units()) - t;
        Ok(&(&(&omt * &d2) - (&(t * &d1).scale(&(al * int(2))))) - &(t * &self.f).scale(&(al * al)))
    }
}

fn anchor(case: char) -> &'static str {
    match case {
        'a' => r"F(\tau_1,\tau_2)=\theta_4(\tau_1)^2\theta_4(\tau_2)^2, \qquad t=\theta_2(\tau)^4/\theta_3(\tau)^4",
        'b' => r"F(\tau_1,\tau_2)=\frac12(3E_2(3\tau_1)-E_2(\tau_1))^{1/2}(3E_2(3\tau_2)-E_2(\tau_2))^{1/2}, \quad t=-27\frac{\eta(3\tau)^{12}}{\eta(\tau)^{12}}",
        'c' => r"F(\tau_1,\tau_2)=(2E_2(2\tau_1)-E_2(\tau_1))^{1/2}(2E_2(2\tau_2)-E_2(\tau_2))^{1/2}, \quad t=-64\frac{\eta(2\tau)^{24}}{\eta(\tau)^{24}}",
        _ => r"(d) For $a=1/6$, they are given as in Example \ref{Example 4.1}.",
    }
}

pub fn case_items(case: char, order: usize) -> Vec<VerificationItem> {
    let id = |s: &str| format!("thm41.case-{case}.{s}");
    let data = match lemma_data(case, order) {
        Ok(d) => d,
        Err(e) => return vec![VerificationItem::new(id("setup"), anchor(case), order, Err(e))],
    };
    let o = Rational::from_integer(order.into());
    let al = data.pair.alpha.clone();
    let hyper = (|| -> Outcome {
        let f = hyp2f1(&al, &al, &Rational::one(), order)?.compose(&data.pair.t)?;
        let h = &f * &one_minus_pow(&data.pair.t, &al)?;
        series_equal_to(&data.pair.h, &h, order)
    })();
    let g_t = VerificationItem::new(
        id("g-t"),
        r"G_t=\frac12(3E_2(3\tau)-E_2(\tau))=g",
        order,
        series_equal_to(&data.g_t, &(&data.pair.h * &data.pair.h), order),
    );
    let mut items = vec![
        VerificationItem::new(id("hypergeometric"), anchor(case), order, hyper),
        if case == 'b' { g_t } else { g_t.with_reason("checked as D_q t / t = h^2") },
    ];
    let ratios = (|| -> Outcome {
        let (r1, r2) = data.expected_ratios()?;
        all([
            ("first ratio".to_string(), series_equal_to(&data.ratio1, &r1, order)),
            ("second ratio".to_string(), series_equal_to(&data.ratio2, &r2, order)),
        ])
    })();
    let mut ratio_item = VerificationItem::new(
        id("ratios"),
        r"\frac{D_qG_t-2G_fG_t}{G_t^2}=-\frac{2t}{3(1-t)}; (D_qG_f-G_f^2)/G_t^2 is equal to $-t/(9(1-t))$",
        order,
        ratios,
    );
    if case == 'b' {
        let literal = (|| -> Outcome {
            let r = data.t_over_1mt()?.scale(&rat(-1, 9));
            series_equal_to(&data.ratio2, &r, order)
        })();
        let note = match literal {
            Ok(Some(t)) => format!(
                "second ratio verified as +t/(9(1-t)), the sign forced by the lemma for 2F1(1/3,1/3;1;t); the printed -t/(9(1-t)) fails at {t}"
            ),
            Ok(None) => "the printed -t/(9(1-t)) also holds".into(),
            Err(e) => format!("printed sign not compared: {e}"),
        };
        ratio_item = ratio_item.with_reason(note);
    }
    items.push(ratio_item);
    items.push(VerificationItem::new(
        id("lemma42"),
        r"D_t^2f+\frac{D_qG_t-2G_fG_t}{G_t^2}D_tf-\frac{D_qG_f-G_f^2}{G_t^2}f=0",
        order,
        data.lemma_residual().and_then(|r| series_zero(&r, &o)),
    ));
    items.push(VerificationItem::new(
        id("hg-ode"),
        "(1-t) D_t^2 f - 2 alpha t D_t f - alpha^2 t f = 0",
        order,
        data.hg_residual().and_then(|r| series_zero(&r, &o)),
    ));
    if case == 'a' {
        let theta = (|| -> Outcome {
            let t3 = forms::theta3(order);
            let lam = forms::haupt4(order)?;
            let f = hyp2f1(&rat(1, 2), &rat(1, 2), &Rational::one(), order)?.compose(&lam)?;
            series_equal_to(&(&t3 * &t3), &f, order)
        })();
        items.push(VerificationItem::new(
            id("theta3-squared"),
            r"\theta_3^2=\,_2F_1\left(\frac12,\frac12;1;\frac{\theta_2^4}{\theta_3^4}\right)",
            order,
            theta,
        ));
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn case_b_passes_and_records_the_sign() {
        let items = case_items('b', 15);
        for it in &items {
            assert_eq!(it.status, Status::Pass, "{it:?}");
        }
        let ratio = items.iter().find(|i| i.id.ends_with("ratios")).unwrap();
        assert!(ratio.reason.as_ref().unwrap().contains("fails at"));
    }
}

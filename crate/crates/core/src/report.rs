//! Verification reports and the comparison helpers that feed them.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{fmt_fraction, Rational, Scalar};
use crate::series::{BiFrac, PSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationItem {
    pub id: String,
    /// Verbatim formula from the source the identity is taken from.
    pub anchor: String,
    pub order: usize,
    pub status: Status,
    /// First coefficient that broke the identity, or the error that stopped the check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Result of a single check: `Ok(None)` holds, `Ok(Some(term))` fails at `term`.
pub type Outcome = Result<Option<String>>;

impl VerificationItem {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, order: usize, outcome: Outcome) -> Self {
        let (status, first_failing) = match outcome {
            Ok(None) => (Status::Pass, None),
            Ok(Some(t)) => (Status::Fail, Some(t)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        VerificationItem {
            id: id.into(),
            anchor: anchor.into(),
            order,
            status,
            first_failing,
            reason: None,
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: impl Into<String>, order: usize, reason: impl Into<String>) -> Self {
        VerificationItem {
            id: id.into(),
            anchor: anchor.into(),
            order,
            status: Status::Skipped,
            first_failing: None,
            reason: Some(reason.into()),
        }
    }

    /// Attaches an explanatory note (kept for passing items too).
    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub order: usize,
    pub seed: Option<u64>,
    pub items: Vec<VerificationItem>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    /// Builds a report with items in canonical (id-sorted) order.
    pub fn new(suite: impl Into<String>, order: usize, seed: Option<u64>, mut items: Vec<VerificationItem>, elapsed_ms: u128) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport {
            suite: suite.into(),
            order,
            seed,
            items,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        let _ = writeln!(out, "suite {} order={}{seed}", self.suite, self.order);
        for item in &self.items {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(out, "  {tag} {} [order {}] {}", item.id, item.order, item.anchor);
            if let Some(t) = &item.first_failing {
                let _ = write!(out, "\n       first failing: {t}");
            }
            if let Some(r) = &item.reason {
                let _ = write!(out, "\n       note: {r}");
            }
            out.push('\n');
        }
        let pass = self.items.iter().filter(|i| i.status == Status::Pass).count();
        let skip = self.items.iter().filter(|i| i.status == Status::Skipped).count();
        let fail = self.items.len() - pass - skip;
        let _ = writeln!(out, "{pass} passed, {fail} failed, {skip} skipped in {} ms", self.elapsed_ms);
        out
    }
}

/// `a == b` through `q^order` (inclusive); fails if either side is not known that far.
pub fn series_equal<T: Scalar>(a: &PSeries<T>, b: &PSeries<T>, order: &Rational) -> Outcome {
    series_zero(&(a - b), order)
}

/// `s == 0` through `q^order` (inclusive).
pub fn series_zero<T: Scalar>(s: &PSeries<T>, order: &Rational) -> Outcome {
    Ok(s
        .first_nonzero_through(order)?
        .map(|m| format!("q^({}): {}", fmt_fraction(&m.exponent), m.value)))
}

/// Integer-order shorthand for [`series_equal`].
pub fn series_equal_to<T: Scalar>(a: &PSeries<T>, b: &PSeries<T>, order: usize) -> Outcome {
    series_equal(a, b, &Rational::from_integer(order.into()))
}

/// `f == 0` for every term of total degree `<= order`.
pub fn bifrac_zero<T: Scalar>(f: &BiFrac<T>, order: usize) -> Outcome {
    if f.order() <= order as i64 {
        return Err(Error::OrderUnderflow(format!(
            "needed through total degree {order}, known only below {}",
            f.order()
        )));
    }
    let num = f.num();
    let shift = f.den_degree();
    Ok(num
        .terms()
        .find(|(i, j, _)| i + j <= order + shift)
        .map(|(i, j, c)| {
            if shift == 0 {
                format!("u1^{i} u2^{j}: {}", c.display())
            } else {
                format!("u1^{i} u2^{j} of the numerator over a degree-{shift} denominator: {}", c.display())
            }
        }))
}

/// `a == b` as fractions, compared by cross-multiplication.
pub fn bifrac_equal<T: Scalar>(a: &BiFrac<T>, b: &BiFrac<T>, order: usize) -> Outcome {
    bifrac_zero(&a.difference(b), order)
}

/// Plain boolean check with a description of the failure.
pub fn expect(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    Ok(if ok { None } else { Some(what()) })
}

/// Combines several outcomes, reporting the first failure.
pub fn all(outcomes: impl IntoIterator<Item = (String, Outcome)>) -> Outcome {
    for (label, o) in outcomes {
        match o {
            Ok(None) => {}
            Ok(Some(t)) => return Ok(Some(format!("{label}: {t}"))),
            Err(e) => return Ok(Some(format!("{label}: error: {e}"))),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn items_sort_and_exit_code() {
        let items = vec![
            VerificationItem::new("b", "x", 3, Ok(None)),
            VerificationItem::new("a", "y", 3, Ok(Some("q^1".into()))),
            VerificationItem::skipped("c", "z", 3, "no pairing"),
        ];
        let r = VerificationReport::new("demo", 3, None, items, 0);
        assert_eq!(r.items[0].id, "a");
        assert_eq!(r.exit_code(), 1);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["items"][0]["status"], "fail");
        assert_eq!(json["items"][2]["reason"], "no pairing");
        assert!(json["seed"].is_null());
    }

    #[test]
    fn errors_become_failures() {
        let s = PSeries::from_coeffs(vec![int(1)], 2);
        let item = VerificationItem::new("x", "", 5, series_equal_to(&s, &s, 5));
        assert_eq!(item.status, Status::Fail);
        assert!(item.first_failing.unwrap().contains("order underflow"));
    }
}

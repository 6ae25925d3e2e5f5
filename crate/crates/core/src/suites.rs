//! Named verification suites and their default orders.

use std::time::Instant;

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergeom::theorem52_pairs;
use crate::pde::{example41, families, random, schwarzian, weight_one};
use crate::report::{VerificationItem, VerificationReport};
use crate::scalar::Rational;
use crate::{forms, hypergeom, mirror};

/// Smallest accepted truncation order.
pub const MIN_ORDER: usize = 2;

pub const SUITES: [&str; 12] = [
    "forms",
    "hypergeom",
    "thm21-random",
    "thm31",
    "thm41",
    "thm51",
    "thm52-transforms",
    "example41",
    "schwarzian",
    "mirror",
    "op-equiv",
    "all",
];

/// Per-run parameters; `None` selects the suite default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteOptions {
    pub order: Option<usize>,
    pub seed: u64,
    pub instances: Option<u64>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub case: Option<char>,
}

pub const DEFAULT_INSTANCES: u64 = 25;

/// Default order of a suite: 40 for one-variable suites, 10 for two-variable
/// ones, 20 for the mirror suite, 0 for the purely symbolic one.
pub fn default_order(suite: &str) -> usize {
    match suite {
        "thm21-random" | "thm31" | "thm51" | "example41" => 10,
        "mirror" => 20,
        "op-equiv" | "all" => 0,
        _ => 40,
    }
}

fn check_parameter(name: &str, v: &Rational) -> Result<()> {
    if !v.is_positive() || v >= &Rational::one() {
        return Err(Error::Parse(format!("--{name} must lie strictly between 0 and 1, got {v}")));
    }
    Ok(())
}

fn items(suite: &str, order: usize, opts: &SuiteOptions) -> Result<Vec<VerificationItem>> {
    Ok(match suite {
        "forms" => forms::suite_items(order),
        "hypergeom" => hypergeom::suite_items(order),
        "thm21-random" => {
            let n = opts.instances.unwrap_or(DEFAULT_INSTANCES);
            (0..n)
                .into_par_iter()
                .map(|i| random::instance_item(opts.seed, i, order))
                .collect()
        }
        "thm31" => {
            let params: Vec<Rational> = match &opts.a {
                Some(a) => {
                    check_parameter("a", a)?;
                    vec![a.clone()]
                }
                None => families::thm31_parameters().to_vec(),
            };
            params
                .par_iter()
                .flat_map_iter(|a| families::thm31_items(a, order))
                .collect()
        }
        "thm41" => {
            let cases: Vec<char> = match opts.case {
                Some(c) if weight_one::CASES.contains(&c) => vec![c],
                Some(c) => return Err(Error::Parse(format!("--case must be one of a, b, c, d, got {c}"))),
                None => weight_one::CASES.to_vec(),
            };
            cases
                .par_iter()
                .flat_map_iter(|c| weight_one::case_items(*c, order))
                .collect()
        }
        "thm51" => {
            let pairs: Vec<(Rational, Rational)> = match (&opts.a, &opts.b) {
                (Some(a), Some(b)) => {
                    check_parameter("a", a)?;
                    check_parameter("b", b)?;
                    vec![(a.clone(), b.clone())]
                }
                (None, None) => theorem52_pairs().to_vec(),
                _ => return Err(Error::Parse("--a and --b must be given together".into())),
            };
            pairs
                .par_iter()
                .flat_map_iter(|(a, b)| families::thm51_items(a, b, order))
                .collect()
        }
        "thm52-transforms" => families::thm52_items(order),
        "example41" => example41::suite_items(order),
        "schwarzian" => schwarzian::suite_items(order),
        "mirror" => mirror::suite_items(order),
        "op-equiv" => mirror::op_equiv_items(),
        "all" => {
            let parts: Vec<Result<Vec<VerificationItem>>> = SUITES[..SUITES.len() - 1]
                .par_iter()
                .map(|s| {
                    let sub = SuiteOptions {
                        order: None,
                        ..opts.clone()
                    };
                    items(s, default_order(s), &sub)
                })
                .collect();
            let mut all = Vec::new();
            for p in parts {
                all.extend(p?);
            }
            all
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Runs a suite. `all` runs every suite at its default order.
pub fn run_suite(suite: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let order = match suite {
        "all" | "op-equiv" => 0,
        _ => opts.order.unwrap_or_else(|| default_order(suite)),
    };
    if suite != "all" && suite != "op-equiv" && order < MIN_ORDER {
        return Err(Error::InvalidOrder(order, MIN_ORDER));
    }
    let start = Instant::now();
    let found = items(suite, order, opts)?;
    let seed = matches!(suite, "thm21-random" | "all").then_some(opts.seed);
    Ok(VerificationReport::new(
        suite,
        order,
        seed,
        found,
        start.elapsed().as_millis(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let low = SuiteOptions {
            order: Some(1),
            ..Default::default()
        };
        assert_eq!(run_suite("forms", &low), Err(Error::InvalidOrder(1, 2)));
        assert!(matches!(run_suite("nope", &SuiteOptions::default()), Err(Error::UnknownSuite(_))));
        let half_pair = SuiteOptions {
            a: Some(crate::scalar::rat(1, 2)),
            ..Default::default()
        };
        assert!(run_suite("thm51", &half_pair).is_err());
    }

    #[test]
    fn op_equiv_has_no_failures() {
        let r = run_suite("op-equiv", &SuiteOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.exit_code(), 0);
    }
}

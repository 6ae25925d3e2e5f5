//! Acceptance run: one PASS/FAIL line per criterion, with the orders and time
//! limits pinned below. All comparisons are exact; there is no tolerance.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use modpde::forms;
use modpde::hypergeom;
use modpde::mirror::{self, MirrorCase};
use modpde::pde::{example41, families, random, schwarzian, weight_one};
use modpde::report::{Status, VerificationItem};
use modpde::scalar::Rational;

const FORMS_ORACLE_ORDER: usize = 30;
const RAMANUJAN_ORDER: usize = 50;
const JACOBI_ORDER: usize = 40;
const RANDOM_INSTANCES: u64 = 25;
const RANDOM_SEED: u64 = 42;
const BIVARIATE_ORDER: usize = 10;
const THM31_ORDER: usize = 12;
const WEIGHT_ONE_ORDER: usize = 40;
const TRANSFORM_ORDER: usize = 30;
const MIRROR_ORDER: usize = 20;
const SCHWARZIAN_ORDER: usize = 25;

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Option<Duration>,
}

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

fn from_items(items: &[VerificationItem]) -> Outcome {
    let mut out = Outcome {
        failures: Vec::new(),
        notes: Vec::new(),
    };
    for it in items {
        match it.status {
            Status::Fail => out.failures.push(format!(
                "{} at order {}: {}",
                it.id,
                it.order,
                it.first_failing.as_deref().unwrap_or("?")
            )),
            Status::Skipped => out
                .notes
                .push(format!("{} skipped: {}", it.id, it.reason.as_deref().unwrap_or(""))),
            Status::Pass => {
                if let Some(r) = it.reason.as_deref().filter(|r| r.contains("printed")) {
                    out.notes.push(format!("{}: {r}", it.id));
                }
            }
        }
    }
    out
}

fn single(id: &str, order: usize, o: modpde::report::Outcome) -> VerificationItem {
    VerificationItem::new(id, "", order, o)
}

fn run(c: Criterion, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = body();
    let elapsed = start.elapsed();
    if let Some(limit) = c.limit {
        if elapsed > limit {
            out.failures.push(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
        }
    }
    let ok = out.failures.is_empty();
    let limit = c.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
    println!(
        "{} criterion {:>2}: {} ({:.2} s{limit})",
        if ok { "PASS" } else { "FAIL" },
        c.number,
        c.title,
        elapsed.as_secs_f64()
    );
    for f in &out.failures {
        println!("       failure: {f}");
    }
    for n in &out.notes {
        println!("       note: {n}");
    }
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;

    ok &= run(
        Criterion {
            number: 1,
            title: "classical forms against brute-force oracles to 30, Ramanujan to 50, Jacobi to 40",
            limit: Some(secs(10)),
        },
        || {
            let mut items = forms::suite_items(FORMS_ORACLE_ORDER);
            items.push(single("forms.ramanujan", RAMANUJAN_ORDER, forms::ramanujan_check(RAMANUJAN_ORDER)));
            items.push(single("forms.jacobi", JACOBI_ORDER, forms::jacobi_check(JACOBI_ORDER)));
            from_items(&items)
        },
    );

    ok &= run(
        Criterion {
            number: 2,
            title: "formal identity on 25 seeded random contexts at bivariate order 10",
            limit: Some(secs(60)),
        },
        || {
            use rayon::prelude::*;
            let items: Vec<_> = (0..RANDOM_INSTANCES)
                .into_par_iter()
                .map(|i| random::instance_item(RANDOM_SEED, i, BIVARIATE_ORDER))
                .collect();
            from_items(&items)
        },
    );

    ok &= run(
        Criterion {
            number: 3,
            title: "closed-form coefficients and hypergeometric residuals for a in {1/2, 1/3, 1/4, 1/6} at order 12",
            limit: Some(secs(60)),
        },
        || {
            use rayon::prelude::*;
            let items: Vec<_> = families::thm31_parameters()
                .par_iter()
                .flat_map_iter(|a| families::thm31_items(a, THM31_ORDER))
                .collect();
            from_items(&items)
        },
    );

    ok &= run(
        Criterion {
            number: 4,
            title: "weight-one forms as 2F1 in t and the coefficient ratios, four cases to order 40",
            limit: None,
        },
        || {
            let items: Vec<_> = weight_one::CASES
                .iter()
                .flat_map(|c| weight_one::case_items(*c, WEIGHT_ONE_ORDER))
                .collect();
            from_items(&items)
        },
    );

    ok &= run(
        Criterion {
            number: 5,
            title: "eight (a,b) pairs at bivariate order 10 and the transformations to order 30",
            limit: None,
        },
        || {
            use rayon::prelude::*;
            let mut items: Vec<_> = hypergeom::theorem52_pairs()
                .par_iter()
                .flat_map_iter(|(a, b)| families::thm51_items(a, b, BIVARIATE_ORDER))
                .collect();
            items.extend(families::thm52_items(TRANSFORM_ORDER));
            from_items(&items)
        },
    );

    ok &= run(
        Criterion {
            number: 6,
            title: "j in t to order 25, the bivariate system at order 10, Kummer and E4 to order 30",
            limit: None,
        },
        || from_items(&example41::suite_items(BIVARIATE_ORDER)),
    );

    ok &= run(
        Criterion {
            number: 7,
            title: "mirror relations I-IV to order 20 and Clausen to order 30",
            limit: None,
        },
        || {
            let mut out = from_items(&mirror::suite_items(MIRROR_ORDER));
            // Case I: 1/x(q) must carry the coefficient 196884 exactly.
            let check = (|| -> modpde::Result<bool> {
                let op = MirrorCase::I.operator();
                let x = mirror::mirror_map(&mirror::frobenius(&op, MIRROR_ORDER)?)?;
                Ok(x.inv()?.coeff_int(1)? == Rational::from_integer(196884.into()))
            })();
            if !matches!(check, Ok(true)) {
                out.failures.push(format!("1/x(q) coefficient of q is not 196884: {check:?}"));
            }
            out
        },
    );

    ok &= run(
        Criterion {
            number: 8,
            title: "symbolic operator identities and the (lambda, nu) table",
            limit: None,
        },
        || from_items(&mirror::op_equiv_items()),
    );

    ok &= run(
        Criterion {
            number: 9,
            title: "Schwarzian identities to order 25",
            limit: None,
        },
        || from_items(&schwarzian::suite_items(SCHWARZIAN_ORDER)),
    );

    ok &= run(
        Criterion {
            number: 10,
            title: "`modpde verify all` exits 0",
            limit: Some(secs(300)),
        },
        || {
            let mut out = Outcome {
                failures: Vec::new(),
                notes: Vec::new(),
            };
            match Command::new(env!("CARGO_BIN_EXE_modpde")).args(["verify", "all"]).output() {
                Ok(o) if o.status.success() => {
                    let text = String::from_utf8_lossy(&o.stdout);
                    if let Some(last) = text.lines().last() {
                        out.notes.push(last.to_string());
                    }
                }
                Ok(o) => out.failures.push(format!("exit status {:?}", o.status.code())),
                Err(e) => out.failures.push(format!("could not start the binary: {e}")),
            }
            out
        },
    );

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

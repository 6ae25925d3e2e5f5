use approx::assert_relative_eq;
use proptest::prelude::*;

use modpde::mirror::ThetaOperator;
use modpde::report::series_equal_to;
use modpde::scalar::{int, rat};
use modpde::series::dump;
use modpde::{BiSeriesQ, Rational, Series, SeriesF64};

const PREC: i64 = 8;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), PREC as usize).prop_map(|c| Series::from_coeffs(c, PREC))
}

/// Series with zero constant term.
fn series0() -> impl Strategy<Value = Series> {
    series().prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c.resize(PREC as usize, int(0));
        c[0] = int(0);
        Series::from_coeffs(c, PREC)
    })
}

/// `c q + ...` with `c != 0`.
fn invertible_map() -> impl Strategy<Value = Series> {
    (series0(), small_rational().prop_filter("nonzero", |c| *c != int(0))).prop_map(|(s, c)| {
        let mut v = s.coeffs().to_vec();
        v.resize(PREC as usize, int(0));
        v[0] = int(0);
        v[1] = c;
        Series::from_coeffs(v, PREC)
    })
}

fn operator() -> impl Strategy<Value = ThetaOperator> {
    let term = (0u32..3, 0u32..2, 0u32..4, 0u32..2, small_rational());
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        ts.into_iter().fold(ThetaOperator::zero(), |acc, (x, z, tx, tz, c)| {
            &acc + &ThetaOperator::monomial(c, [x, z, tx, tz])
        })
    })
}

fn x_operator() -> impl Strategy<Value = ThetaOperator> {
    prop::collection::vec((0u32..3, 0u32..4, small_rational()), 1..5).prop_map(|ts| {
        ts.into_iter().fold(ThetaOperator::zero(), |acc, (x, tx, c)| {
            &acc + &ThetaOperator::monomial(c, [x, 0, tx, 0])
        })
    })
}

fn holds(o: modpde::report::Outcome) -> bool {
    matches!(o, Ok(None))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn multiplication_is_associative_and_distributive(a in series(), b in series(), c in series()) {
        let n = PREC as usize - 1;
        prop_assert!(holds(series_equal_to(&(&(&a * &b) * &c), &(&a * &(&b * &c)), n)));
        prop_assert!(holds(series_equal_to(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), n)));
    }

    #[test]
    fn inverse_times_series_is_one(a in series0(), c in small_rational().prop_filter("nonzero", |c| *c != int(0))) {
        let s = &Series::constant(c, PREC) + &a;
        let p = &s * &s.inv().unwrap();
        prop_assert!(holds(series_equal_to(&p, &Series::one(PREC), PREC as usize - 1)));
    }

    #[test]
    fn exp_inverts_log(a in series0()) {
        let s = &Series::one(PREC) + &a;
        let back = s.log().unwrap().exp().unwrap();
        prop_assert!(holds(series_equal_to(&back, &s, PREC as usize - 1)));
    }

    #[test]
    fn reversion_round_trip(s in invertible_map()) {
        let r = s.reversion().unwrap();
        let n = PREC as usize - 1;
        prop_assert!(holds(series_equal_to(&s.compose(&r).unwrap(), &Series::var(PREC), n)));
        prop_assert!(holds(series_equal_to(&r.compose(&s).unwrap(), &Series::var(PREC), n)));
    }

    #[test]
    fn square_root_squares_back(a in series0()) {
        let s = &Series::one(PREC) + &a;
        let r = s.pow_rational(&rat(1, 2)).unwrap();
        prop_assert!(holds(series_equal_to(&(&r * &r), &s, PREC as usize - 1)));
    }

    #[test]
    fn dq_is_a_derivation(a in series(), b in series()) {
        let lhs = (&a * &b).dq();
        let rhs = &(&a.dq() * &b) + &(&a * &b.dq());
        prop_assert!(holds(series_equal_to(&lhs, &rhs, PREC as usize - 1)));
    }

    #[test]
    fn dump_parse_round_trip(s in series()) {
        prop_assert_eq!(dump::parse(&dump::dump(&s)).unwrap(), s);
    }

    #[test]
    fn rescale_is_an_involution_with_the_reciprocal(op in operator(), c in small_rational().prop_filter("nonzero", |c| *c != int(0))) {
        let back = op.rescale_x(&c).rescale_x(&(int(1) / &c));
        prop_assert_eq!(back, op.clone());
        prop_assert_eq!(op.swap_variables().swap_variables(), op);
    }

    #[test]
    fn operator_display_parse_round_trip(op in operator()) {
        let shown = op.to_string();
        prop_assert_eq!(shown.parse::<ThetaOperator>().unwrap(), op, "{}", shown);
    }

    #[test]
    fn operator_product_is_composition(a in x_operator(), b in x_operator(), s in series()) {
        let lhs = (&a * &b).apply(&s).unwrap();
        let rhs = a.apply(&b.apply(&s).unwrap()).unwrap();
        prop_assert!(holds(series_equal_to(&lhs, &rhs, PREC as usize - 3)));
    }

    #[test]
    fn bivariate_inverse_and_transpose(c in prop::collection::vec(small_rational(), 15), k in 1i64..5) {
        let mut it = c.into_iter();
        let s = BiSeriesQ::from_fn(5, |i, j| if i + j == 0 { int(k) } else { it.next().unwrap_or_else(|| int(0)) });
        prop_assert_eq!(&(&s * &s.inv().unwrap()), &BiSeriesQ::one(5));
        prop_assert_eq!(s.transpose().transpose(), s);
    }
}

#[test]
fn engine_runs_over_f64() {
    let n = 12;
    // 1/(1-q) and its logarithm -log(1-q) = sum q^k / k.
    let geo = SeriesF64::from_coeffs(vec![1.0; n], n as i64);
    let log = geo.log().unwrap();
    for k in 1..n {
        assert_relative_eq!(log.coeff_int(k as i64).unwrap(), 1.0 / k as f64, epsilon = 1e-12);
    }
    // q/(1-q) reverts to q/(1+q).
    let map = SeriesF64::new(1, 1, vec![1.0; n - 1], n as i64);
    let r = map.reversion().unwrap();
    for k in 1..n {
        let want = if k % 2 == 1 { 1.0 } else { -1.0 };
        assert_relative_eq!(r.coeff_int(k as i64).unwrap(), want, epsilon = 1e-9);
    }
    let op: ThetaOperator = "T^2 - x(T+1)^2".parse().unwrap();
    assert!(op.apply(&geo).unwrap().coeffs().iter().all(|c| c.abs() < 1e-12));
}

//! Seeded random contexts for the formal identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{formal_identity_check, solve, Coordinates, TwoVarContext};
use crate::error::Result;
use crate::report::VerificationItem;
use crate::scalar::Rational;
use crate::{BiFracQ, BiSeries, BiSeriesQ};

/// Degree bound of the random polynomials.
pub const DEGREE: usize = 4;
const MARGIN: usize = 8;
const RANGE: i64 = 3;

fn poly(rng: &mut ChaCha8Rng, linear: (i64, i64), prec: usize) -> BiSeriesQ {
    BiSeries::from_fn(prec, |i, j| {
        let v = match (i, j) {
            (0, 0) => 1,
            (1, 0) => linear.0,
            (0, 1) => linear.1,
            _ if i + j <= DEGREE => rng.gen_range(-RANGE..=RANGE),
            _ => 0,
        };
        Rational::from_integer(v.into())
    })
}

/// `F, x, y` with constant term 1 and linear parts `(x10, x01), (y10, y01)`
/// satisfying `x10 y01 != +-x01 y10`, so both `Delta` and `G_x1 G_y2 + G_y1 G_x2`
/// are `u1 u2` times a unit.
pub fn random_context(seed: u64, instance: u64, prec: usize) -> Result<TwoVarContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    let mut lin = || (rng.gen_range(-RANGE..=RANGE), rng.gen_range(-RANGE..=RANGE));
    let (lx, ly) = loop {
        let (lx, ly) = (lin(), lin());
        let (p, q) = (lx.0 * ly.1, lx.1 * ly.0);
        if p != q && p != -q {
            break (lx, ly);
        }
    };
    let lf = lin();
    let x = poly(&mut rng, lx, prec);
    let y = poly(&mut rng, ly, prec);
    let f = poly(&mut rng, lf, prec);
    TwoVarContext::new(BiFracQ::from(f), x.into(), y.into(), Coordinates::Q)
}

pub fn working_prec(order: usize) -> usize {
    super::box_degree(order) + MARGIN
}

pub fn instance_item(seed: u64, instance: u64, order: usize) -> VerificationItem {
    let outcome = random_context(seed, instance, working_prec(order))
        .and_then(|ctx| solve(&ctx))
        .and_then(|s| formal_identity_check(&s, order));
    VerificationItem::new(
        format!("thm21.random.{instance:03}"),
        r"it suffices to verify (\ref{main}) as formal identities",
        order,
        outcome,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contexts_are_reproducible() {
        let a = random_context(7, 3, 6).unwrap();
        let b = random_context(7, 3, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_context(7, 4, 6).unwrap());
    }
}

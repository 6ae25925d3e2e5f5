//! Frozen coefficient values. Each one is produced here by a naive oracle
//! that shares no code with the library, then compared with the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use modpde::forms::{self, FormName};
use modpde::mirror::{self, MirrorCase};
use modpde::scalar::{int, rat};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Truncated product of coefficient vectors of equal length.
fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            c[i + j] += &a[i] * &b[j];
        }
    }
    c
}

fn inv(a: &[Q]) -> Vec<Q> {
    let mut b = vec![Q::zero(); a.len()];
    b[0] = a[0].recip();
    for n in 1..a.len() {
        let s: Q = (1..=n).map(|k| &a[k] * &b[n - k]).sum();
        b[n] = -s / &a[0];
    }
    b
}

/// exp of a series with zero constant term, from n b_n = sum k a_k b_{n-k}.
fn exp(a: &[Q]) -> Vec<Q> {
    let mut b = vec![Q::zero(); a.len()];
    b[0] = Q::one();
    for n in 1..a.len() {
        let s: Q = (1..=n).map(|k| q(k as i64) * &a[k] * &b[n - k]).sum();
        b[n] = s / q(n as i64);
    }
    b
}

fn sigma(k: u32, n: usize) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as i64).pow(k)).sum()
}

/// Coefficients of q^-1 .. q^(len-2) of j = E4^3 / (q prod (1-q^n)^24).
fn j_oracle(len: usize) -> Vec<Q> {
    let mut e4 = vec![Q::one(); len];
    for (n, c) in e4.iter_mut().enumerate().skip(1) {
        *c = q(240 * sigma(3, n));
    }
    let mut prod = vec![Q::zero(); len];
    prod[0] = Q::one();
    for n in 1..len {
        let mut f = vec![Q::zero(); len];
        f[0] = Q::one();
        f[n] = -Q::one();
        for _ in 0..24 {
            prod = mul(&prod, &f);
        }
    }
    mul(&mul(&mul(&e4, &e4), &e4), &inv(&prod))
}

fn harmonic(n: u64) -> Q {
    (1..=n).map(|k| Q::new(BigInt::one(), BigInt::from(k))).sum()
}

fn fact(n: u64) -> Q {
    Q::from_integer((1..=n).product())
}

/// Mirror map of sum (4n)!/n!^4 x^n: q = x exp(g/f0) with
/// g = sum c_n (4 H_{4n} - 4 H_n) x^n, then inverted by fixed-point iteration.
fn quartic_mirror_oracle(len: usize) -> Vec<Q> {
    let c: Vec<Q> = (0..len as u64).map(|n| fact(4 * n) / fact(n).pow(4)).collect();
    let g: Vec<Q> = (0..len as u64)
        .map(|n| &c[n as usize] * (q(4) * harmonic(4 * n) - q(4) * harmonic(n)))
        .collect();
    // q(x) / x = exp(g / f0), coefficients of x^0 ..
    let e = exp(&mul(&g, &inv(&c)));
    // x = q / e(x), iterated; index k holds the coefficient of q^(k+1).
    let mut x = vec![Q::zero(); len];
    x[0] = Q::one();
    for _ in 0..len {
        // powers of x(q) expressed in q, shifted so index k is q^(k+1)
        let mut comp = vec![Q::zero(); len];
        let mut pow = vec![Q::zero(); len];
        pow[0] = Q::one();
        for (k, ek) in e.iter().enumerate() {
            for i in 0..len {
                comp[i] += ek * &pow[i];
            }
            if k + 1 < len {
                let mut shifted = vec![Q::zero(); len];
                shifted[1..].clone_from_slice(&x[..len - 1]);
                pow = mul(&pow, &shifted);
            }
        }
        let mut unit = vec![Q::zero(); len];
        unit[0] = Q::one();
        x = mul(&unit, &inv(&comp));
    }
    x
}

#[test]
fn j_coefficients_match_the_eta_quotient_oracle() {
    let oracle = j_oracle(8);
    let j = forms::j_invariant(6).unwrap();
    for (k, want) in oracle.iter().enumerate().take(7) {
        assert_eq!(&j.coeff_int(k as i64 - 1).unwrap(), want, "q^{}", k as i64 - 1);
    }
    assert_eq!(oracle[0], q(1));
    assert_eq!(oracle[1], q(744));
    assert_eq!(oracle[2], q(196884));
    assert_eq!(oracle[3], q(21493760));
}

#[test]
fn e4_and_delta_leading_coefficients() {
    let e4 = forms::eisenstein(4, 5).unwrap();
    assert_eq!(e4.coeff_int(1).unwrap(), int(240));
    assert_eq!(e4.coeff_int(2).unwrap(), int(2160));
    let d = forms::delta(5).unwrap();
    assert_eq!(d.coeff_int(1).unwrap(), int(1));
    assert_eq!(d.coeff_int(2).unwrap(), int(-24));
    assert_eq!(d.coeff_int(3).unwrap(), int(252));
    assert_eq!(forms::bernoulli(4).unwrap(), rat(-1, 30));
}

#[test]
fn quartic_mirror_map_matches_the_harmonic_number_oracle() {
    let len = 8;
    let oracle = quartic_mirror_oracle(len);
    assert_eq!(oracle[1], q(-104));
    assert_eq!(oracle[2], q(6444));
    let basis = mirror::frobenius(&MirrorCase::II.operator(), len).unwrap();
    let x = mirror::mirror_map(&basis).unwrap();
    for (k, want) in oracle.iter().enumerate() {
        assert_eq!(&x.coeff_int(k as i64 + 1).unwrap(), want, "q^{}", k + 1);
    }
}

#[test]
fn holomorphic_periods_start_with_the_factorial_coefficients() {
    let f0 = |c: MirrorCase| mirror::frobenius(&c.operator(), 4).unwrap().f0;
    assert_eq!(f0(MirrorCase::I).coeff_int(1).unwrap(), int(120));
    assert_eq!(f0(MirrorCase::I).coeff_int(2).unwrap(), int(83160));
    assert_eq!(f0(MirrorCase::II).coeff_int(1).unwrap(), int(24));
    assert_eq!(f0(MirrorCase::III).coeff_int(1).unwrap(), int(12));
    assert_eq!(f0(MirrorCase::IV).coeff_int(1).unwrap(), int(8));
    assert_eq!(f0(MirrorCase::IV).coeff_int(2).unwrap(), int(216));
}

#[test]
fn theta_lattice_counts() {
    // r_4(n) = 8 sigma(n) - 32 sigma(n/4): theta3^4 counts sums of four squares.
    let t = forms::theta3(12).powi(4).unwrap();
    for n in 1..=12usize {
        let mut r = 8 * sigma(1, n);
        if n % 4 == 0 {
            r -= 32 * sigma(1, n / 4);
        }
        assert_eq!(t.coeff_int(n as i64).unwrap(), int(r), "n = {n}");
    }
}

#[test]
fn every_named_form_builds() {
    for name in FormName::ALL {
        assert!(forms::build_form(name, 6).is_ok(), "{name}");
    }
}

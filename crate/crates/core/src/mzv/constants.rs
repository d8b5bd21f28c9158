//! Classical constants in double precision, and the rational ratios
//! `zeta(2n) / pi^(2n)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{binomial, factorial, Rational};

/// Borwein's acceleration order for the alternating zeta series; the
/// truncation error is below `3 / (3 + sqrt 8)^n`.
const BORWEIN_ORDER: usize = 30;

pub fn ln2() -> f64 {
    std::f64::consts::LN_2
}

/// Riemann zeta at an integer `s >= 2`, via the Dirichlet eta function.
pub fn zeta(s: u32) -> f64 {
    let n = BORWEIN_ORDER;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut acc = term;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut eta = 0.0;
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (d[k] - dn) / ((k + 1) as f64).powi(s as i32);
    }
    eta = -eta / dn;
    eta / (1.0 - 2f64.powi(1 - s as i32))
}

/// `Li_s(1/2)` by its defining series.
pub fn polylog_half(s: u32) -> f64 {
    let mut total = 0.0;
    let mut pow = 1.0;
    for k in 1..=80u32 {
        pow *= 0.5;
        total += pow / (k as f64).powi(s as i32);
    }
    total
}

/// Bernoulli numbers `B_0, ..., B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        if j == 0 {
            b.push(Rational::from_integer(BigInt::from(1)));
            continue;
        }
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(j as u32 + 1, k as u32)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(j + 1)));
    }
    b
}

/// The rational `zeta(2n) / pi^(2n)` for `n >= 1`.
pub fn even_zeta_over_pi(n: u32) -> Rational {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let b = bernoulli(64);
        (0..=32u32)
            .map(|k| {
                if k == 0 {
                    return Rational::zero();
                }
                let b2k = b[2 * k as usize].abs();
                b2k * Rational::from_integer(BigInt::from(2).pow(2 * k - 1))
                    / Rational::from_integer(factorial(2 * k))
            })
            .collect()
    });
    match table.get(n as usize) {
        Some(r) => r.clone(),
        None => {
            let b = bernoulli(2 * n as usize);
            b[2 * n as usize].abs() * Rational::from_integer(BigInt::from(2).pow(2 * n - 1))
                / Rational::from_integer(factorial(2 * n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::ToPrimitive;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat(0, 1));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn even_zeta_ratios() {
        assert_eq!(even_zeta_over_pi(1), rat(1, 6));
        assert_eq!(even_zeta_over_pi(2), rat(1, 90));
        assert_eq!(even_zeta_over_pi(3), rat(1, 945));
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2) - 1.6449340668482264).abs() < 1e-15);
        assert!((zeta(3) - 1.2020569031595942).abs() < 1e-15);
        assert!((zeta(5) - 1.0369277551433699).abs() < 1e-15);
        for n in 1..=4u32 {
            let exact = even_zeta_over_pi(n).to_f64().unwrap() * PI.powi(2 * n as i32);
            assert!((zeta(2 * n) - exact).abs() < 4e-15, "n={n}");
        }
    }

    #[test]
    fn polylog_half_values() {
        // Li2(1/2) = pi^2/12 - ln^2(2)/2
        let li2 = PI * PI / 12.0 - ln2() * ln2() / 2.0;
        assert!((polylog_half(2) - li2).abs() < 1e-15);
        // Li3(1/2) = 7/8 zeta(3) - pi^2 ln2 / 12 + ln^3(2) / 6
        let li3 = 0.875 * zeta(3) - PI * PI * ln2() / 12.0 + ln2().powi(3) / 6.0;
        assert!((polylog_half(3) - li3).abs() < 1e-15);
        assert!((polylog_half(4) - 0.5174790616738994).abs() < 1e-15);
    }
}

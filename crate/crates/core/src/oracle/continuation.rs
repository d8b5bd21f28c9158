//! Smooth continuations of the summand ingredients to real `x`, accurate to
//! rounding for `x` of a few dozen and beyond. Used for tail integrals.

use std::f64::consts::PI;

use crate::mzv::constants::zeta;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_2, B_4, ..., B_14`.
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// `Gamma(x + 1/2) / (sqrt(pi) Gamma(x + 1))`, equal to `binom(2n, n) / 4^n`
/// at integers.
pub fn central_ratio(x: f64) -> f64 {
    let (z1, z2) = (x + 0.5, x + 1.0);
    // Stirling series for the difference, arranged to avoid cancelling the
    // large `x ln x` parts
    let mut s = -0.5 * x.ln() + x * (0.5 / x).ln_1p() - (x + 0.5) * (1.0 / x).ln_1p() + 0.5;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (k + 1) as i32;
        let e = 1 - 2 * k;
        s += b / f64::from(2 * k * (2 * k - 1)) * (z1.powi(e) - z2.powi(e));
    }
    (s - 0.5 * PI.ln()).exp()
}

/// `H^(s)(x) = sum_{j>=1} (1/j^s - 1/(x+j)^s)`, equal to `H_n^(s)` at integers.
pub fn harmonic(s: u32, x: f64) -> f64 {
    if s == 1 {
        // psi(x + 1) + gamma
        let mut v = x.ln() + EULER_GAMMA + 0.5 / x;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k = (k + 1) as i32;
            v -= b / (f64::from(2 * k) * x.powi(2 * k));
        }
        v
    } else {
        zeta(s) - hurwitz_shifted(s, x)
    }
}

/// `zeta(s, x + 1) = sum_{j>=1} (x + j)^-s` by Euler-Maclaurin at `x`.
fn hurwitz_shifted(s: u32, x: f64) -> f64 {
    let sf = f64::from(s);
    let xs = x.powf(-sf);
    let mut v = x * xs / (sf - 1.0) - 0.5 * xs;
    // coefficient B_2k / (2k)! * s (s+1) ... (s+2k-2)
    let mut poch = sf;
    let mut fact = 2.0;
    let mut power = xs / x;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        if k > 0 {
            let j = 2.0 * k as f64;
            poch *= (sf + j - 1.0) * (sf + j);
            fact *= (j + 1.0) * (j + 2.0);
            power /= x * x;
        }
        v += b / fact * poch * power;
    }
    v
}

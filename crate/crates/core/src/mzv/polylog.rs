//! Alternating MZVs as iterated integrals over `[0, 1]`, evaluated by
//! splitting the path at `1/2` (Hölder convolution).
//!
//! An alternating MZV `zeta(s_1 sigma_1, ..., s_k sigma_k)` equals
//! `(-1)^k G(0^{s_1-1}, z_1, ..., 0^{s_k-1}, z_k; 1)` with
//! `z_j = sigma_1 ... sigma_j` and
//! `G(a_1, ..., a_w; y) = int_0^y dt / (t - a_1) G(a_2, ..., a_w; t)`.
//! Splitting at `1/2` and reflecting `t -> 1 - t` on the upper half gives
//!
//! `G(a; 1) = sum_j (-1)^j G(1 - a_j, ..., 1 - a_1; 1/2) G(a_{j+1}, ..., a_w; 1/2)`
//!
//! and every factor on the right is a power series in `t / a` with
//! `|t / a| <= 1/2`, so truncation at order `K` costs about `2^-K`.

use crate::exact::{Sign, SignedIndexWord};

/// `(value, estimated absolute error)`.
pub type Estimate = (f64, f64);

/// Letters of the integration alphabet (`dt / (t - a)`).
fn word_letters(word: &SignedIndexWord) -> Vec<i8> {
    let mut letters = Vec::with_capacity(word.weight() as usize);
    let mut running = 1i8;
    for e in word.entries() {
        for _ in 1..e.s {
            letters.push(0);
        }
        if e.sign == Sign::Minus {
            running = -running;
        }
        letters.push(running);
    }
    letters
}

/// `G(letters; 1/2)` by power series of order `order`; the last letter must
/// be nonzero.
fn g_at_half(letters: &[i8], order: usize) -> Estimate {
    let Some((&last, rest)) = letters.split_last() else {
        return (1.0, 0.0);
    };
    debug_assert!(last != 0, "trailing zero letter");
    // coefficients c[k] of t^k, k = 0..=order (c[0] stays 0)
    let mut c = vec![0.0f64; order + 1];
    let inv = 1.0 / last as f64;
    let mut p = 1.0;
    for (k, ck) in c.iter_mut().enumerate().skip(1) {
        p *= inv;
        *ck = -p / k as f64;
    }
    for &a in rest.iter().rev() {
        if a == 0 {
            for (k, ck) in c.iter_mut().enumerate().skip(1) {
                *ck /= k as f64;
            }
        } else {
            let inv = 1.0 / a as f64;
            let mut e = 0.0;
            let mut next = vec![0.0f64; order + 1];
            for n in 1..order {
                e = c[n] + e * inv;
                next[n + 1] = -e * inv / (n + 1) as f64;
            }
            c = next;
        }
    }
    let mut total = 0.0;
    let mut magnitude = 0.0;
    let mut scale = 1.0;
    let mut tail_probe = 0.0f64;
    for (k, ck) in c.iter().enumerate().skip(1) {
        scale *= 0.5;
        let term = ck * scale;
        total += term;
        magnitude += term.abs();
        if k + 4 > order {
            tail_probe = tail_probe.max(term.abs());
        }
    }
    let rounding = magnitude * f64::EPSILON * (letters.len() as f64 + 2.0);
    (total, 4.0 * tail_probe + rounding)
}

/// `G(letters; 1)` by splitting the path at `1/2`.
fn g_at_one(letters: &[i8], order: usize) -> Estimate {
    let w = letters.len();
    let mut value = 0.0;
    let mut err = 0.0;
    for j in 0..=w {
        let reflected: Vec<i8> = letters[..j].iter().rev().map(|&a| 1 - a).collect();
        let (upper, upper_err) = g_at_half(&reflected, order);
        let (lower, lower_err) = g_at_half(&letters[j..], order);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        value += sign * upper * lower;
        err += upper.abs() * lower_err + lower.abs() * upper_err;
    }
    err += value.abs() * f64::EPSILON * 4.0;
    (value, err)
}

/// Numerical value of a convergent alternating MZV.
pub fn alternating_mzv(word: &SignedIndexWord, order: usize) -> Estimate {
    let letters = word_letters(word);
    let (g, err) = g_at_one(&letters, order);
    let sign = if word.depth() % 2 == 0 { 1.0 } else { -1.0 };
    (sign * g, err)
}

/// `Li_s(1/2) = -G(0^{s-1}, 1; 1/2)`.
pub fn polylog_half_via_g(s: u32, order: usize) -> Estimate {
    let mut letters = vec![0i8; s as usize - 1];
    letters.push(1);
    let (g, err) = g_at_half(&letters, order);
    (-g, err)
}

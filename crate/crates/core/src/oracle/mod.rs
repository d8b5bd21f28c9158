//! Direct summation of the series, independent of the formula modules.
//!
//! Partial sums run in `f64` with compensated accumulation; the remainder
//! is an Euler-Maclaurin tail built from smooth continuations of the
//! summand, optionally followed by Richardson extrapolation in `1/n`.

mod continuation;

pub use continuation::{central_ratio, harmonic};

use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rat, Rational};
use crate::mzv::NumericValue;
use crate::series::{Family, SeriesError, SeriesId};

/// Largest `n_max` accepted by [`sum_series_exact_prefix`].
pub const EXACT_PREFIX_LIMIT: u64 = 2000;
/// Default number of terms summed directly.
pub const DEFAULT_N_MAX: u64 = 100_000;
/// Smallest index at which the tail continuations are trusted.
const TAIL_MIN_N: u64 = 64;
const RICHARDSON_NODES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("n_max must be positive")]
    EmptySum,
    #[error("exact prefix limited to n_max <= {limit}, got {n_max}")]
    Budget { n_max: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TailModel {
    None,
    Integral,
    Richardson,
}

impl fmt::Display for TailModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailModel::None => "none",
            TailModel::Integral => "integral",
            TailModel::Richardson => "richardson",
        })
    }
}

impl FromStr for TailModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(TailModel::None),
            "integral" => Ok(TailModel::Integral),
            "richardson" => Ok(TailModel::Richardson),
            _ => Err(format!("unknown tail model `{s}` (expected none, integral, richardson)")),
        }
    }
}

/// Result of a direct summation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSum {
    pub value: f64,
    pub err: f64,
    pub n_max: u64,
    pub tail: TailModel,
    /// Set when `n_max` is below what the tail model needs.
    pub warning: Option<String>,
}

impl OracleSum {
    pub fn numeric(&self) -> NumericValue {
        NumericValue { value: self.value, err: self.err }
    }
}

/// Which numerator factors a series carries.
#[derive(Debug, Clone)]
struct Shape {
    orders: Vec<u32>,
    star_m: u32,
    extra: Extra,
    reciprocal: bool,
    exponent: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Extra {
    One,
    H2n,
    Odd,
}

impl Shape {
    fn new(id: &SeriesId) -> Result<Self, OracleError> {
        id.validate()?;
        let (orders, extra) = match id.family {
            Family::S | Family::Sstar | Family::TS => (id.orders.clone(), Extra::One),
            Family::TS1 => (vec![1], Extra::One),
            Family::T | Family::TT1 => (vec![], Extra::H2n),
            Family::U | Family::TU1 => (vec![], Extra::Odd),
        };
        Ok(Shape {
            orders,
            star_m: id.star_m.unwrap_or(0),
            extra,
            reciprocal: id.family.is_reciprocal(),
            exponent: id.exponent,
        })
    }

    /// Highest `H^(s)` order the numerator needs.
    fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0).max(self.star_m).max(1) as usize
    }

    fn numerator(&self, h: &[f64], h2n: f64, odd: f64) -> f64 {
        let mut v: f64 = self.orders.iter().map(|&o| h[o as usize - 1]).product();
        if self.star_m > 0 {
            v *= star_ones(h, self.star_m as usize);
        }
        match self.extra {
            Extra::One => v,
            Extra::H2n => v * h2n,
            Extra::Odd => v * odd,
        }
    }

    fn assemble(&self, numerator: f64, ratio: f64, n: f64) -> f64 {
        let c = if self.reciprocal { 1.0 / ratio } else { ratio };
        numerator * c / n.powi(self.exponent as i32)
    }

    /// Summand continued to real `x`.
    fn smooth_term(&self, x: f64) -> f64 {
        let h: Vec<f64> = (1..=self.max_order() as u32).map(|s| harmonic(s, x)).collect();
        let (h2n, odd) = match self.extra {
            Extra::One => (0.0, 0.0),
            _ => {
                let h2 = harmonic(1, 2.0 * x);
                (h2, h2 - 0.5 * h[0])
            }
        };
        self.assemble(self.numerator(&h, h2n, odd), central_ratio(x), x)
    }
}

/// `zeta*_n({1}_m)` from power sums `h[i-1] = H^(i)` by the Newton
/// recurrence `m e_m = sum_{i=1}^m p_i e_{m-i}`.
fn star_ones(h: &[f64], m: usize) -> f64 {
    let mut e = vec![1.0];
    for k in 1..=m {
        let s: f64 = (1..=k).map(|i| h[i - 1] * e[k - i]).sum();
        e.push(s / k as f64);
    }
    e[m]
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    sum: f64,
    c: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Running state of the summand in floating point.
#[derive(Debug, Clone)]
pub struct SeriesTermState {
    shape: Shape,
    n: u64,
    ratio: f64,
    h: Vec<Acc>,
    h2n: Acc,
    odd: Acc,
}

impl SeriesTermState {
    pub fn new(id: &SeriesId) -> Result<Self, OracleError> {
        let shape = Shape::new(id)?;
        let h = vec![Acc::default(); shape.max_order()];
        Ok(SeriesTermState { shape, n: 0, ratio: 1.0, h, h2n: Acc::default(), odd: Acc::default() })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `binom(2n, n) / 4^n` at the current index.
    pub fn central_ratio(&self) -> f64 {
        self.ratio
    }

    /// Moves to the next index and returns its term.
    pub fn advance(&mut self) -> f64 {
        self.n += 1;
        let n = self.n as f64;
        self.ratio *= (2.0 * n - 1.0) / (2.0 * n);
        let inv = 1.0 / n;
        let mut pw = inv;
        for acc in &mut self.h {
            acc.add(pw);
            pw *= inv;
        }
        let odd = 1.0 / (2.0 * n - 1.0);
        self.h2n.add(odd);
        self.h2n.add(0.5 * inv);
        self.odd.add(odd);
        self.term()
    }

    /// Term at the current index (`n >= 1`).
    pub fn term(&self) -> f64 {
        let h: Vec<f64> = self.h.iter().map(Acc::value).collect();
        let num = self.shape.numerator(&h, self.h2n.value(), self.odd.value());
        self.shape.assemble(num, self.ratio, self.n as f64)
    }
}

/// Running state of the summand in exact rationals.
#[derive(Debug, Clone)]
pub struct ExactTermState {
    shape: Shape,
    n: u64,
    ratio: Rational,
    h: Vec<Rational>,
    h2n: Rational,
    odd: Rational,
}

impl ExactTermState {
    pub fn new(id: &SeriesId) -> Result<Self, OracleError> {
        let shape = Shape::new(id)?;
        let h = vec![Rational::zero(); shape.max_order()];
        Ok(ExactTermState {
            shape,
            n: 0,
            ratio: Rational::one(),
            h,
            h2n: Rational::zero(),
            odd: Rational::zero(),
        })
    }

    pub fn central_ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn harmonics(&self) -> &[Rational] {
        &self.h
    }

    pub fn advance(&mut self) -> Rational {
        self.n += 1;
        let n = self.n as i64;
        self.ratio *= rat(2 * n - 1, 2 * n);
        let inv = rat(1, n);
        let mut pw = inv.clone();
        for h in &mut self.h {
            *h += &pw;
            pw *= &inv;
        }
        let odd = rat(1, 2 * n - 1);
        self.h2n += &odd + rat(1, 2 * n);
        self.odd += odd;
        self.term()
    }

    pub fn term(&self) -> Rational {
        let sh = &self.shape;
        let mut v: Rational = sh.orders.iter().map(|&o| self.h[o as usize - 1].clone()).product();
        if sh.star_m > 0 {
            let m = sh.star_m as usize;
            let mut e = vec![Rational::one()];
            for k in 1..=m {
                let s: Rational = (1..=k).map(|i| &self.h[i - 1] * &e[k - i]).sum();
                e.push(s / rat(k as i64, 1));
            }
            v *= &e[m];
        }
        match sh.extra {
            Extra::One => {}
            Extra::H2n => v *= &self.h2n,
            Extra::Odd => v *= &self.odd,
        }
        let c = if sh.reciprocal { self.ratio.recip() } else { self.ratio.clone() };
        let den = num_traits::pow(Rational::from_integer(self.n.into()), sh.exponent as usize);
        v * c / den
    }
}

/// Exact partial sum `sum_{n=1}^{n_max}` of the series.
pub fn sum_series_exact_prefix(id: &SeriesId, n_max: u64) -> Result<Rational, OracleError> {
    if n_max > EXACT_PREFIX_LIMIT {
        return Err(OracleError::Budget { n_max, limit: EXACT_PREFIX_LIMIT });
    }
    let mut st = ExactTermState::new(id)?;
    let terms: Vec<Rational> = (0..n_max).map(|_| st.advance()).collect();
    Ok(pairwise_sum(terms))
}

/// Sums by pairing neighbours, which keeps the operands of each exact
/// addition of similar size.
fn pairwise_sum(mut v: Vec<Rational>) -> Rational {
    while v.len() > 1 {
        v = v
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] + &c[1] } else { c[0].clone() })
            .collect();
    }
    v.pop().unwrap_or_else(Rational::zero)
}

/// Floating partial sums at the given increasing indices.
pub fn partial_sums(id: &SeriesId, checkpoints: &[u64]) -> Result<Vec<f64>, OracleError> {
    let mut st = SeriesTermState::new(id)?;
    let mut acc = Acc::default();
    let mut out = Vec::with_capacity(checkpoints.len());
    for &k in checkpoints {
        while st.n() < k {
            acc.add(st.advance());
        }
        out.push(acc.value());
    }
    Ok(out)
}

fn rules() -> &'static (GaussLegendre, GaussLegendre) {
    static RULES: OnceLock<(GaussLegendre, GaussLegendre)> = OnceLock::new();
    RULES.get_or_init(|| {
        let rule = |d: usize| GaussLegendre::new(NonZeroUsize::new(d).expect("positive degree"));
        (rule(12), rule(20))
    })
}

/// `sum_{n > N} f(n)` with an error estimate.
fn tail(shape: &Shape, n: u64) -> (f64, f64) {
    let x0 = n as f64;
    let (coarse, fine) = rules();
    // x = N e^u; the integrand decays like e^{-u/2} times powers of u
    let g = |u: f64| {
        let x = x0 * u.exp();
        shape.smooth_term(x) * x
    };
    let (mut lo, mut hi) = (Acc::default(), Acc::default());
    let width = 2.0;
    for k in 0..120 {
        let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
        lo.add(coarse.integrate(a, b, g));
        hi.add(fine.integrate(a, b, g));
    }
    let integral = hi.value();
    let f0 = shape.smooth_term(x0);
    let d = x0 / 100.0;
    let fp = (shape.smooth_term(x0 + d) - shape.smooth_term(x0 - d)) / (2.0 * d);
    let value = integral - 0.5 * f0 - fp / 12.0;
    let err = (hi.value() - lo.value()).abs() + f0.abs() / x0.powi(3) + 64.0 * f64::EPSILON * integral.abs();
    (value, err)
}

/// Polynomial extrapolation of `(h_j, y_j)` to `h = 0` (Neville).
fn extrapolate_to_zero(h: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (h[i], h[i + level]);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

/// Direct sum of a convergent series to `n_max` terms with a tail model.
pub fn sum_series(id: &SeriesId, n_max: u64, tail_model: TailModel) -> Result<OracleSum, OracleError> {
    if n_max == 0 {
        return Err(OracleError::EmptySum);
    }
    let shape = Shape::new(id)?;
    let nodes: Vec<u64> = match tail_model {
        TailModel::Richardson => {
            let mut v: Vec<u64> = (0..RICHARDSON_NODES).map(|j| (n_max >> j).max(1)).collect();
            v.dedup();
            v.reverse();
            v
        }
        _ => vec![n_max],
    };
    let sums = partial_sums(id, &nodes)?;
    let top = *sums.last().expect("at least one node");
    let rounding = 4.0 * f64::EPSILON * (n_max as f64).sqrt() * top.abs();
    let warning = match tail_model {
        TailModel::None => None,
        _ if nodes[0] < TAIL_MIN_N => Some(format!(
            "n_max = {n_max} is too small for the {tail_model} tail model (needs every node >= {TAIL_MIN_N})"
        )),
        _ => None,
    };
    let (value, err) = match tail_model {
        TailModel::None => {
            let (t, e) = tail(&shape, n_max);
            (top, t.abs() + e + rounding)
        }
        TailModel::Integral => {
            let (t, e) = tail(&shape, n_max);
            (top + t, e + rounding)
        }
        TailModel::Richardson => {
            let mut corrected = Vec::with_capacity(nodes.len());
            let mut tail_err = 0.0f64;
            for (&n, &s) in nodes.iter().zip(&sums) {
                let (t, e) = tail(&shape, n);
                corrected.push(s + t);
                tail_err = tail_err.max(e);
            }
            let last = *corrected.last().expect("at least one node");
            if nodes.len() < 2 {
                (last, tail_err + rounding)
            } else {
                let h: Vec<f64> = nodes.iter().map(|&n| 1.0 / n as f64).collect();
                let v = extrapolate_to_zero(&h, &corrected);
                (v, (v - last).abs() + tail_err + rounding)
            }
        }
    };
    Ok(OracleSum { value, err, n_max, tail: tail_model, warning })
}

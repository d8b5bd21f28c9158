use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::atom::MzvAtom;
use super::constants;
use super::expr::MzvExpr;
use super::polylog;
use super::MzvError;

/// A real number with an estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericValue {
    pub value: f64,
    pub err: f64,
}

impl NumericValue {
    pub fn exact(value: f64) -> Self {
        NumericValue { value, err: 0.0 }
    }

    /// Number of decimals supported by `err`, capped at what `f64` carries.
    pub fn digits(&self) -> usize {
        if self.err <= 0.0 {
            return 15;
        }
        (-self.err.log10()).floor().clamp(0.0, 15.0) as usize
    }

    /// Decimal string with no digits beyond what `err` supports.
    pub fn trimmed(&self) -> String {
        format!("{:.*}", self.digits(), self.value)
    }

    pub fn agrees_with(&self, other: &NumericValue, tol: f64) -> bool {
        (self.value - other.value).abs() <= tol
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (err {:.1e})", self.trimmed(), self.err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Requested absolute error.
    pub target: f64,
    /// Largest power-series order tried for iterated integrals.
    pub max_order: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { target: 1e-10, max_order: 200 }
    }
}

impl EvalConfig {
    /// Target of `10^-digits`.
    pub fn with_digits(digits: u32) -> Self {
        EvalConfig { target: 10f64.powi(-(digits as i32)), ..Default::default() }
    }
}

fn cache() -> &'static RwLock<HashMap<MzvAtom, NumericValue>> {
    static CACHE: OnceLock<RwLock<HashMap<MzvAtom, NumericValue>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn compute(atom: &MzvAtom, cfg: &EvalConfig) -> NumericValue {
    match atom {
        MzvAtom::Ln2 => NumericValue { value: constants::ln2(), err: f64::EPSILON },
        MzvAtom::Zeta(s) => NumericValue { value: constants::zeta(*s), err: 4.0 * f64::EPSILON },
        MzvAtom::PolylogHalf(s) => {
            NumericValue { value: constants::polylog_half(*s), err: 4.0 * f64::EPSILON }
        }
        MzvAtom::AltMzv(word) => {
            let mut order = 48;
            loop {
                let (value, err) = polylog::alternating_mzv(word, order);
                if err <= cfg.target * 1e-3 || order >= cfg.max_order {
                    return NumericValue { value, err };
                }
                order = (order * 2).min(cfg.max_order);
            }
        }
    }
}

/// Numerical value of one atom; the result is cached across calls.
pub fn eval_atom(atom: &MzvAtom, cfg: &EvalConfig) -> Result<NumericValue, MzvError> {
    let cached = cache().read().ok().and_then(|c| c.get(atom).copied());
    let v = match cached {
        Some(v) if v.err <= cfg.target => v,
        _ => {
            let v = compute(atom, cfg);
            if let Ok(mut c) = cache().write() {
                let better = c.get(atom).map_or(true, |old| v.err < old.err);
                if better {
                    c.insert(atom.clone(), v);
                }
            }
            v
        }
    };
    if v.err > cfg.target {
        return Err(MzvError::PrecisionUnreachable { best: v, target: cfg.target });
    }
    Ok(v)
}

/// `sum coeff * prod atoms` with first-order error propagation.
pub fn eval_expr(e: &MzvExpr, cfg: &EvalConfig) -> Result<NumericValue, MzvError> {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut short = false;
    for (monomial, coeff) in e.terms() {
        let c = coeff.to_f64().unwrap_or(f64::NAN);
        let mut factors = Vec::with_capacity(monomial.len());
        for atom in monomial {
            match eval_atom(atom, cfg) {
                Ok(v) => factors.push(v),
                Err(MzvError::PrecisionUnreachable { best, .. }) => {
                    short = true;
                    factors.push(best);
                }
                Err(other) => return Err(other),
            }
        }
        let product: f64 = factors.iter().map(|v| v.value).product();
        let mut term_err = 0.0;
        for (i, f) in factors.iter().enumerate() {
            let others: f64 = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.value.abs())
                .product();
            term_err += others * f.err;
        }
        value += c * product;
        err += c.abs() * term_err + (c * product).abs() * f64::EPSILON;
    }
    let out = NumericValue { value, err };
    if short || err > cfg.target {
        return Err(MzvError::PrecisionUnreachable { best: out, target: cfg.target });
    }
    Ok(out)
}

//! One series taken through its formula, the closed-form table and the
//! direct-summation oracle, with the residuals between them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{formula_for, variants_for, FormulaError, Variant};
use crate::mzv::{
    closed_form_table, eval_expr, lookup, ClosedFormEntry, EvalConfig, MzvError, MzvExpr,
    NumericValue,
};
use crate::oracle::{sum_series, OracleError, TailModel, DEFAULT_N_MAX};
use crate::series::{Family, SeriesError, SeriesId};

/// Formula against a stored closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Formula against the direct sum.
pub const ORACLE_TOL: f64 = 1e-5;
/// Formula against the direct sum for `S` series with harmonic weights and
/// `p = 1`, whose tails decay slowest.
pub const ORACLE_TOL_SLOW: f64 = 1e-4;

pub fn oracle_tolerance(id: &SeriesId) -> f64 {
    if id.family == Family::S && id.exponent == 1 && !id.orders.is_empty() {
        ORACLE_TOL_SLOW
    } else {
        ORACLE_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Mzv(#[from] MzvError),
}

impl ReportError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            ReportError::Formula(FormulaError::Domain(msg)) if msg.contains("diverges") => "divergent",
            ReportError::Oracle(OracleError::Series(SeriesError::Divergent(_))) => "divergent",
            ReportError::Formula(FormulaError::Domain(_)) => "domain",
            ReportError::Formula(FormulaError::Unsupported(_)) => "unsupported",
            ReportError::Formula(FormulaError::VariantMismatch { .. }) => "variant",
            ReportError::Formula(FormulaError::Mzv(_)) | ReportError::Mzv(_) => "evaluation",
            ReportError::Oracle(_) => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions<'a> {
    /// Absolute target for the MZV evaluation.
    pub precision: f64,
    /// Run the direct-summation oracle.
    pub verify: bool,
    pub n_max: u64,
    pub tail: TailModel,
    /// Render expressions as LaTeX instead of the atom syntax.
    pub latex: bool,
    pub table: &'a [ClosedFormEntry],
}

impl Default for ReportOptions<'static> {
    fn default() -> Self {
        ReportOptions {
            precision: 1e-10,
            verify: false,
            n_max: DEFAULT_N_MAX,
            tail: TailModel::Richardson,
            latex: false,
            table: closed_form_table(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub expr: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub value: f64,
    pub err: f64,
    pub n_max: u64,
    pub tail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula_vs_closed_form: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula_vs_oracle: Option<f64>,
}

/// Field order here is the JSON field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub series: String,
    pub weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub mixed_form: String,
    pub expanded_form: String,
    pub numeric: NumericValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub residuals: Residuals,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Value rounded to the decimals its error supports; error to two digits.
fn trim(v: NumericValue) -> NumericValue {
    NumericValue {
        value: v.trimmed().parse().unwrap_or(v.value),
        err: format!("{:.1e}", v.err).parse().unwrap_or(v.err),
    }
}

/// Evaluates `e`, falling back to the best estimate when the target is
/// out of reach.
fn evaluate(e: &MzvExpr, cfg: &EvalConfig, warnings: &mut Vec<String>) -> Result<NumericValue, MzvError> {
    match eval_expr(e, cfg) {
        Err(MzvError::PrecisionUnreachable { best, target }) => {
            warnings.push(format!("precision {target:e} not reached; err {:.1e}", best.err));
            Ok(best)
        }
        other => other,
    }
}

/// Builds the report for one series.
pub fn eval_report(
    id: &SeriesId,
    variant: Option<Variant>,
    opts: &ReportOptions<'_>,
) -> Result<EvalReport, ReportError> {
    let formula = formula_for(id, variant)?;
    let cfg = EvalConfig { target: opts.precision, ..EvalConfig::default() };
    let mut warnings = Vec::new();
    let numeric = evaluate(&formula.expanded, &cfg, &mut warnings)?;
    let render = |e: &MzvExpr| if opts.latex { e.to_latex() } else { e.to_string() };
    let mixed_form = if opts.latex { formula.mixed.to_latex() } else { formula.mixed.to_string() };

    let mut passed = true;
    let mut residuals = Residuals::default();
    let closed_form = match lookup(opts.table, id) {
        Some(expr) => {
            let v = evaluate(&expr, &cfg, &mut warnings)?;
            let r = (numeric.value - v.value).abs();
            passed &= r <= CLOSED_FORM_TOL.max(numeric.err + v.err);
            residuals.formula_vs_closed_form = Some(r);
            Some(ClosedFormReport { expr: render(&expr), value: trim(v).value })
        }
        None => None,
    };
    let oracle = if opts.verify {
        let o = sum_series(id, opts.n_max, opts.tail)?;
        let r = (numeric.value - o.value).abs();
        passed &= r <= oracle_tolerance(id).max(numeric.err + o.err);
        residuals.formula_vs_oracle = Some(r);
        warnings.extend(o.warning.clone());
        let t = trim(o.numeric());
        Some(OracleReport { value: t.value, err: t.err, n_max: o.n_max, tail: o.tail.to_string() })
    } else {
        None
    };
    let variant = variant.or_else(|| variants_for(id).first().copied());
    Ok(EvalReport {
        series: id.to_string(),
        weight: id.weight(),
        variant: variant.map(|v| v.to_string()),
        mixed_form,
        expanded_form: render(&formula.expanded),
        numeric: trim(numeric),
        closed_form,
        oracle,
        residuals,
        passed,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let opts = ReportOptions { verify: true, n_max: 5000, ..ReportOptions::default() };
        for id in [SeriesId::ts(2), SeriesId::s(&[1], 4), SeriesId::sstar(true, 2, 2)] {
            let r = eval_report(&id, None, &opts).unwrap();
            assert!(r.passed, "{r:?}");
            let text = serde_json::to_string(&r).unwrap();
            let back: EvalReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }

    #[test]
    fn residuals_follow_the_operands() {
        let r = eval_report(&SeriesId::sstar(false, 3, 2), None, &ReportOptions::default()).unwrap();
        assert!(r.closed_form.is_none() && r.oracle.is_none());
        assert_eq!(r.residuals, Residuals::default());
        let r = eval_report(&SeriesId::ts(2), None, &ReportOptions::default()).unwrap();
        assert!(r.residuals.formula_vs_closed_form.unwrap() < 1e-12);
        assert!(r.residuals.formula_vs_oracle.is_none());
    }

    #[test]
    fn error_kinds() {
        let opts = ReportOptions::default();
        let e = eval_report(&SeriesId::s(&[1], 0), None, &opts).unwrap_err();
        assert_eq!(e.kind(), "divergent");
        let e = eval_report(&SeriesId::s(&[2, 3], 1), None, &opts).unwrap_err();
        assert_eq!(e.kind(), "unsupported");
        let e = eval_report(&SeriesId::t1(1), Some(Variant::Chen), &opts).unwrap_err();
        assert_eq!(e.kind(), "variant");
    }

    #[test]
    fn numeric_is_trimmed_to_its_error() {
        let opts = ReportOptions { precision: 1e-6, ..ReportOptions::default() };
        let r = eval_report(&SeriesId::s(&[], 2), None, &opts).unwrap();
        let shown = serde_json::to_value(r.numeric).unwrap()["value"].to_string();
        assert!(shown.len() <= 2 + r.numeric.digits(), "{shown}");
    }
}

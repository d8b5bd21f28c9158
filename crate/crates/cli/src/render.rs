//! Plain-text rendering of reports.

use std::fmt::Write;

use easum_core::mzv::NumericValue;
use easum_core::report::EvalReport;
use easum_core::selftest::Check;

fn row(out: &mut String, label: &str, value: &str) {
    let _ = writeln!(out, "{label:<15}{value}");
}

fn residual(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |v| format!("{v:.1e}"))
}

fn status(passed: bool) -> &'static str {
    if passed {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn eval_text(r: &EvalReport, label: &str) -> String {
    let mut out = String::new();
    row(&mut out, "series", &format!("{}    {label}    weight {}", r.series, r.weight));
    if let Some(v) = &r.variant {
        row(&mut out, "variant", v);
    }
    row(&mut out, "mixed form", &r.mixed_form);
    row(&mut out, "expanded form", &r.expanded_form);
    row(&mut out, "numeric", &r.numeric.to_string());
    if let Some(c) = &r.closed_form {
        row(&mut out, "closed form", &c.expr);
        row(&mut out, "", &format!("= {}", c.value));
    }
    if let Some(o) = &r.oracle {
        let v = NumericValue { value: o.value, err: o.err };
        row(&mut out, "oracle", &format!("{v}, n_max {}, {} tail", o.n_max, o.tail));
    }
    let res = &r.residuals;
    if res.formula_vs_closed_form.is_some() || res.formula_vs_oracle.is_some() {
        let text = format!(
            "closed form {}, oracle {}",
            residual(res.formula_vs_closed_form),
            residual(res.formula_vs_oracle)
        );
        row(&mut out, "residuals", &text);
    }
    row(&mut out, "status", status(r.passed));
    for w in &r.warnings {
        row(&mut out, "warning", w);
    }
    out
}

pub fn table_text(reports: &[EvalReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>6}  {:>22}  {:>11}  {:>11}  status",
        "series", "weight", "value", "closed form", "oracle"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<14} {:>6}  {:>22}  {:>11}  {:>11}  {}",
            r.series,
            r.weight,
            r.numeric.trimmed(),
            residual(r.residuals.formula_vs_closed_form),
            residual(r.residuals.formula_vs_oracle),
            status(r.passed)
        );
    }
    let failures = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} series, {failures} failures", reports.len());
    out
}

pub fn selftest_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(out, "{c}");
    }
    let failures = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(out, "{} checks, {failures} failures", checks.len());
    out
}

//! Desk-scale invariant suites, one pass/fail line per invariant.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact::{
    factorial, int, mhs, mhs_ones, mhs_star, rat, signed_words, stirling_cycle, zeta_star_ones,
    Rational, Sign, SignedIndex, SignedIndexWord,
};
use crate::formulas::{self as fm, Formula, FormulaError, Variant};
use crate::mzv::constants::{polylog_half, zeta};
use crate::mzv::polylog::polylog_half_via_g;
use crate::mzv::{closed_form_table, eval_atom, eval_expr, normalize, EvalConfig, MzvAtom, MzvExpr};
use crate::oracle::{partial_sums, sum_series, sum_series_exact_prefix, TailModel};
use crate::report::oracle_tolerance;
use crate::series::{table_ids, Family, SeriesId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Mzv,
    Integral,
    Contour,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Exact, Suite::Mzv, Suite::Integral, Suite::Contour, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Mzv => "mzv",
            Suite::Integral => "formulas-integral",
            Suite::Contour => "formulas-contour",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.to_ascii_lowercase();
        Suite::ALL
            .into_iter()
            .find(|v| v.name() == s || v.name().strip_prefix("formulas-") == Some(s.as_str()))
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|v| v.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<18} {:<34} {:>7.2}s", self.suite.name(), self.name, self.seconds)?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

type Outcome = Result<String, String>;

/// Numeric gates: `tol` bounds every floating comparison.
struct Gates {
    tol: f64,
    cfg: EvalConfig,
}

impl Gates {
    fn num(&self, e: &MzvExpr) -> Result<f64, String> {
        eval_expr(e, &self.cfg).map(|v| v.value).map_err(|e| e.to_string())
    }

    fn formula(&self, r: Result<Formula, FormulaError>) -> Result<f64, String> {
        self.num(&r.map_err(|e| e.to_string())?.expanded)
    }

    /// Largest `|a - b|` over the cases, failing above `tol`.
    fn worst<I>(&self, cases: I) -> Outcome
    where
        I: IntoIterator<Item = (String, Result<(f64, f64), String>)>,
    {
        let mut worst = 0.0f64;
        for (label, pair) in cases {
            let (a, b) = pair.map_err(|e| format!("{label}: {e}"))?;
            let d = (a - b).abs();
            if !(d <= self.tol) {
                return Err(format!("{label}: |{a} - {b}| = {d:.1e}"));
            }
            worst = worst.max(d);
        }
        Ok(format!("max diff {worst:.1e}"))
    }
}

fn exact_all<I: IntoIterator<Item = (String, bool)>>(cases: I) -> Outcome {
    let mut count = 0;
    for (label, ok) in cases {
        if !ok {
            return Err(label);
        }
        count += 1;
    }
    Ok(format!("{count} exact cases"))
}

fn telescoped_recurrence() -> Outcome {
    let mut cases = Vec::new();
    for w in signed_words(3, 5) {
        for n in 1..=8u64 {
            let mut rhs = int(0);
            let mut prefix = int(1);
            for l in 0..=w.depth() {
                let suffix = SignedIndexWord::new(w.entries()[l..].to_vec());
                let term = prefix.clone() * mhs(n, &suffix);
                rhs += if l % 2 == 0 { term } else { -term };
                if l < w.depth() {
                    prefix *= w.entries()[l].term(n);
                }
            }
            cases.push((format!("w={w} n={n}"), mhs(n - 1, &w) == rhs));
        }
    }
    exact_all(cases)
}

fn doubling_splitting() -> Outcome {
    let mut cases = Vec::new();
    for w in signed_words(2, 4) {
        if w.entries().iter().any(|e| e.sign == Sign::Minus) {
            continue;
        }
        let m = w.depth();
        for n in 0..=6u64 {
            let mut total = int(0);
            for mask in 0..(1u32 << m) {
                let signed = w
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(j, e)| if mask >> j & 1 == 1 { SignedIndex::bar(e.s) } else { *e })
                    .collect();
                total += mhs(2 * n, &SignedIndexWord::new(signed));
            }
            let factor = Rational::from_integer(BigInt::from(2).pow(w.weight() - m as u32));
            cases.push((format!("w={w} n={n}"), mhs(n, &w) == factor * total));
        }
    }
    exact_all(cases)
}

fn stirling_link() -> Outcome {
    let mut cases = Vec::new();
    for n in 2..=9u32 {
        for k in 2..=n {
            let rhs = Rational::new(BigInt::from(stirling_cycle(n, k)), factorial(n - 1));
            cases.push((format!("n={n} k={k}"), mhs_ones(u64::from(n - 1), (k - 1) as usize) == rhs));
        }
    }
    exact_all(cases)
}

fn star_bell() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=8u64 {
        for m in 0..=6usize {
            cases.push((format!("n={n} m={m}"), zeta_star_ones(n, m) == mhs_star(n, &vec![1; m])));
        }
    }
    exact_all(cases)
}

fn c_d_convolution() -> Outcome {
    let inv_fact = |k: u32| Rational::new(1.into(), factorial(k));
    exact_all((0..=8u32).map(|k| {
        let mut acc = MzvExpr::zero();
        for i in 0..=k {
            let c = inv_fact(i) * inv_fact(k - i);
            acc = acc + (&fm::seq_c(i as usize) * &fm::seq_d((k - i) as usize)).scale(&c);
        }
        let expected = if k == 0 { MzvExpr::one() } else { MzvExpr::zero() };
        (format!("k={k}"), normalize(&acc) == expected)
    }))
}

fn mzv_relations(g: &Gates) -> Outcome {
    let atom = |w: &[i32]| MzvAtom::alt(SignedIndexWord::from_signed(w)).map_err(|e| e.to_string());
    let val = |a: MzvAtom| eval_atom(&a, &g.cfg).map(|v| v.value).map_err(|e| e.to_string());
    let mut cases = Vec::new();
    cases.push(("z(2,1) = z(3)".to_string(), atom(&[2, 1]).and_then(val).map(|v| (v, zeta(3)))));
    cases.push(("z(-1) = -L2".to_string(), atom(&[-1]).and_then(val).map(|v| (v, -std::f64::consts::LN_2))));
    for s in 2..=6u32 {
        let rhs = (2f64.powi(1 - s as i32) - 1.0) * zeta(s);
        cases.push((format!("z(-{s})"), atom(&[-(s as i32)]).and_then(val).map(|v| (v, rhs))));
    }
    g.worst(cases)
}

fn polylog_routes(g: &Gates) -> Outcome {
    g.worst((1..=6u32).map(|s| {
        let (v, _) = polylog_half_via_g(s, 120);
        (format!("Li{s}(1/2)"), Ok((v, polylog_half(s))))
    }))
}

fn table_weights() -> Outcome {
    for entry in closed_form_table() {
        for (mono, _) in entry.expr.terms() {
            let w: u32 = mono.iter().map(MzvAtom::weight).sum();
            if w != entry.id.weight() {
                return Err(format!("{}: monomial of weight {w}", entry.id));
            }
        }
    }
    Ok(format!("{} entries", closed_form_table().len()))
}

fn table_against_formulas(g: &Gates, contour: bool) -> Outcome {
    let from_contour = |id: &SeriesId| !matches!(id.family, Family::S | Family::Sstar);
    g.worst(closed_form_table().iter().filter(|e| from_contour(&e.id) == contour).map(|e| {
        let pair = g.formula(fm::formula_for(&e.id, None)).and_then(|a| Ok((a, g.num(&e.expr)?)));
        (e.id.to_string(), pair)
    }))
}

fn s1_variants(g: &Gates) -> Outcome {
    g.worst((0..=4).map(|p| {
        let pair = g
            .formula(fm::formula_s_1(p, Variant::CoroS1p))
            .and_then(|a| Ok((a, g.formula(fm::formula_s_1(p, Variant::CoroMixed))?)));
        (format!("p={p}"), pair)
    }))
}

fn cubic_quadratic_routes(g: &Gates) -> Outcome {
    let mut cases = Vec::new();
    for p in 1..=3 {
        let a = g.formula(fm::formula_s_cubic(p, Variant::SixThreeTwo));
        let b = g.formula(fm::formula_s_cubic(p, Variant::TwoOne));
        cases.push((format!("cubic p={p}"), a.and_then(|a| Ok((a, b?)))));
        let c = g.formula(fm::formula_s_quad11(p));
        let d = g.formula(fm::formula_s_quad11_star(p));
        cases.push((format!("1^2 p={p}"), c.and_then(|c| Ok((c, d?)))));
    }
    g.worst(cases)
}

fn star_specialisations(g: &Gates) -> Outcome {
    let mut cases = Vec::new();
    for p in 0..=4 {
        let a = g.formula(fm::formula_s_star(0, p + 2));
        let b = g.formula(fm::formula_s(p + 1));
        cases.push((format!("m=0 p={p}"), a.and_then(|a| Ok((a, b?)))));
    }
    for p in 0..=3 {
        let a = g.formula(fm::formula_s_star_1m(0, p));
        let b = g.formula(fm::formula_s_1(p, Variant::CoroMixed));
        cases.push((format!("H m=0 p={p}"), a.and_then(|a| Ok((a, b?)))));
    }
    g.worst(cases)
}

fn closed_s_matches(g: &Gates) -> Outcome {
    g.worst((2..=7).map(|q| {
        let a = fm::closed_s(q).map_err(|e| e.to_string()).and_then(|e| g.num(&e));
        let b = g.formula(fm::formula_s(q - 2));
        (format!("q={q}"), a.and_then(|a| Ok((a, b?))))
    }))
}

fn ts_variants(g: &Gates) -> Outcome {
    g.worst((2..=6).map(|q| {
        let a = g.formula(fm::formula_ts(q, Variant::Contour));
        let b = g.formula(fm::formula_ts(q, Variant::Chen));
        (format!("q={q}"), a.and_then(|a| Ok((a, b?))))
    }))
}

fn named_constants(g: &Gates) -> Outcome {
    let z3 = zeta(3);
    let l = std::f64::consts::LN_2;
    g.worst([
        ("tU1(2) = 7 z(3)".to_string(), g.formula(fm::formula_tu1(2)).map(|v| (v, 7.0 * z3))),
        ("Apery 7 z(3)".to_string(), g.formula(fm::apery_first()).map(|v| (v, 7.0 * z3))),
        ("Apery 21/2 z(3)".to_string(), g.formula(fm::apery_second()).map(|v| (v, 10.5 * z3))),
        ("Knuth L2^2".to_string(), g.formula(fm::knuth_combination()).map(|v| (v, l * l))),
    ])
}

fn closing_relation(g: &Gates) -> Outcome {
    g.worst((2..=6).map(|q| {
        let r = fm::relation_check_closing(q, &g.cfg).map(|v| (v.value, 0.0)).map_err(|e| e.to_string());
        (format!("q={q}"), r)
    }))
}

fn exact_prefix_examples() -> Outcome {
    let check = |id: SeriesId, n: u64, want: Rational| {
        (format!("{id} n={n}"), sum_series_exact_prefix(&id, n).ok() == Some(want))
    };
    exact_all([
        check(SeriesId::s(&[], 1), 1, rat(1, 2)),
        check(SeriesId::s(&[], 1), 2, rat(11, 16)),
        check(SeriesId::ts(2), 2, rat(8, 3)),
    ])
}

fn float_vs_exact_prefix() -> Outcome {
    let n = 300;
    let mut worst = 0.0f64;
    for id in table_ids(6) {
        let exact = sum_series_exact_prefix(&id, n).map_err(|e| e.to_string())?;
        let exact = exact.to_f64().unwrap_or(f64::NAN);
        let float = partial_sums(&id, &[n]).map_err(|e| e.to_string())?[0];
        let rel = ((float - exact) / exact).abs();
        if !(rel <= 1e-12) {
            return Err(format!("{id}: relative {rel:.1e}"));
        }
        worst = worst.max(rel);
    }
    Ok(format!("max relative {worst:.1e}"))
}

fn oracle_reference_values(g: &Gates) -> Outcome {
    let l = std::f64::consts::LN_2;
    let sum = |id: SeriesId| {
        sum_series(&id, 100_000, TailModel::Richardson).map(|r| r.value).map_err(|e| e.to_string())
    };
    let tol = g.tol.max(1e-6);
    let mut worst = 0.0f64;
    for (label, got, want) in [
        ("S:2", sum(SeriesId::s(&[], 2))?, zeta(2) - 2.0 * l * l),
        ("tS:2", sum(SeriesId::ts(2))?, 3.0 * zeta(2)),
        ("U:1,1", sum(SeriesId::u1(1))?, 1.5 * zeta(2)),
    ] {
        let d = (got - want).abs();
        if !(d <= tol) {
            return Err(format!("{label}: diff {d:.1e}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("max diff {worst:.1e}"))
}

fn oracle_against_formulas(g: &Gates) -> Outcome {
    let mut worst = 0.0f64;
    for id in table_ids(5) {
        let v = g.formula(fm::formula_for(&id, None))?;
        let r = sum_series(&id, 20_000, TailModel::Richardson).map_err(|e| e.to_string())?;
        let d = (v - r.value).abs();
        if !(d <= g.tol.max(oracle_tolerance(&id)).max(r.err)) {
            return Err(format!("{id}: diff {d:.1e}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("max diff {worst:.1e}"))
}

/// Runs the selected suites; `tol` bounds every floating comparison.
pub fn run(only: Option<Suite>, tol: f64) -> Vec<Check> {
    let g = Gates { tol, cfg: EvalConfig { target: (tol / 100.0).min(1e-10), ..EvalConfig::default() } };
    let g = &g;
    let all: Vec<(Suite, &'static str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (Suite::Exact, "telescoped MHS recurrence", Box::new(telescoped_recurrence)),
        (Suite::Exact, "MHS doubling split", Box::new(doubling_splitting)),
        (Suite::Exact, "Stirling link", Box::new(stirling_link)),
        (Suite::Exact, "star sums via Bell", Box::new(star_bell)),
        (Suite::Mzv, "depth-one relations", Box::new(move || mzv_relations(g))),
        (Suite::Mzv, "Li_s(1/2) two routes", Box::new(move || polylog_routes(g))),
        (Suite::Mzv, "table weights", Box::new(table_weights)),
        (Suite::Integral, "table vs formulas", Box::new(move || table_against_formulas(g, false))),
        (Suite::Integral, "S_{1,p+1} variants", Box::new(move || s1_variants(g))),
        (Suite::Integral, "cubic and quadratic routes", Box::new(move || cubic_quadratic_routes(g))),
        (Suite::Integral, "star specialisations", Box::new(move || star_specialisations(g))),
        (Suite::Contour, "C/D convolution", Box::new(c_d_convolution)),
        (Suite::Contour, "table vs formulas", Box::new(move || table_against_formulas(g, true))),
        (Suite::Contour, "closed S_q vs integral S_q", Box::new(move || closed_s_matches(g))),
        (Suite::Contour, "tS_q variants", Box::new(move || ts_variants(g))),
        (Suite::Contour, "named constants", Box::new(move || named_constants(g))),
        (Suite::Contour, "closing relation", Box::new(move || closing_relation(g))),
        (Suite::Oracle, "exact prefix examples", Box::new(exact_prefix_examples)),
        (Suite::Oracle, "float vs exact prefix", Box::new(float_vs_exact_prefix)),
        (Suite::Oracle, "reference values", Box::new(move || oracle_reference_values(g))),
        (Suite::Oracle, "direct sums vs formulas", Box::new(move || oracle_against_formulas(g))),
    ];
    all.into_iter()
        .filter(|(s, _, _)| only.map_or(true, |o| o == *s))
        .map(|(suite, name, check)| {
            let start = Instant::now();
            let (passed, detail) = match check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check { suite, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}

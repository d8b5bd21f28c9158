//! Published closed forms over the basis `{ln 2, zeta(2..5), Li4(1/2), Li5(1/2)}`.
//!
//! The table ships embedded; setting `EASUM_TABLE` to a file path replaces it.

use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::exact::{parse_rational, Rational};
use crate::series::SeriesId;

use super::atom::MzvAtom;
use super::expr::MzvExpr;

const EMBEDDED: &str = include_str!("../../data/closed_forms.json");

pub const TABLE_ENV: &str = "EASUM_TABLE";

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read table {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("table entry `{key}`: {reason}")]
    Entry { key: String, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormEntry {
    pub id: SeriesId,
    pub provenance: String,
    pub expr: MzvExpr,
}

#[derive(Deserialize)]
struct RawTerm {
    coeff: String,
    monomial: Vec<String>,
}

#[derive(Deserialize)]
struct RawEntry {
    key: String,
    provenance: String,
    terms: Vec<RawTerm>,
}

/// Parses table text (a JSON array of entries).
pub fn parse_table(text: &str) -> Result<Vec<ClosedFormEntry>, TableError> {
    let raw: Vec<RawEntry> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|e| {
            let fail = |reason: String| TableError::Entry { key: e.key.clone(), reason };
            let id: SeriesId = e.key.parse().map_err(|err| fail(format!("{err}")))?;
            let mut expr = MzvExpr::zero();
            for t in &e.terms {
                let c: Rational = parse_rational(&t.coeff)
                    .ok_or_else(|| fail(format!("bad coefficient `{}`", t.coeff)))?;
                let atoms = t
                    .monomial
                    .iter()
                    .map(|a| a.parse::<MzvAtom>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|err| fail(err.to_string()))?;
                expr = expr + MzvExpr::monomial(c, atoms);
            }
            Ok(ClosedFormEntry { id, provenance: e.provenance, expr })
        })
        .collect()
}

pub fn load_table(path: &Path) -> Result<Vec<ClosedFormEntry>, TableError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| TableError::Io { path: path.display().to_string(), source })?;
    parse_table(&text)
}

/// The active table: `EASUM_TABLE` if set and readable, else the embedded copy.
pub fn closed_form_table() -> &'static [ClosedFormEntry] {
    static TABLE: OnceLock<Vec<ClosedFormEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        if let Some(path) = std::env::var_os(TABLE_ENV) {
            match load_table(Path::new(&path)) {
                Ok(t) => return t,
                Err(err) => eprintln!("warning: {err}; using embedded table"),
            }
        }
        parse_table(EMBEDDED).expect("embedded closed-form table is valid")
    })
}

pub fn known_closed_form(id: &SeriesId) -> Option<MzvExpr> {
    lookup(closed_form_table(), id)
}

pub fn lookup(table: &[ClosedFormEntry], id: &SeriesId) -> Option<MzvExpr> {
    table.iter().find(|e| &e.id == id).map(|e| e.expr.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(key: &str) -> String {
        known_closed_form(&key.parse().unwrap()).unwrap().to_string()
    }

    #[test]
    fn embedded_examples() {
        assert_eq!(entry("S:3"), "4/3*L2^3 - 2*L2*z(2) + 2*z(3)");
        assert_eq!(entry("tS:4"), "1/3*L2^4 + 4*L2^2*z(2) - 19/4*z(4) + 8*Li4h");
        assert_eq!(entry("S:1^3,1"), "5/3*L2^4 - 10*L2^2*z(2) + 35*L2*z(3) + 115/4*z(4) + 40*Li4h");
        assert!(known_closed_form(&"S:5".parse().unwrap()).is_none());
    }

    #[test]
    fn table_shape() {
        let t = parse_table(EMBEDDED).unwrap();
        assert_eq!(t.len(), 34);
        for e in &t {
            assert!(!e.provenance.is_empty());
            assert!(!e.expr.is_zero());
            for (mono, _) in e.expr.terms() {
                let w: u32 = mono.iter().map(MzvAtom::weight).sum();
                assert_eq!(w, e.id.weight(), "{}", e.id);
            }
        }
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(parse_table("{"), Err(TableError::Json(_))));
        let bad = r#"[{"key":"S:2","provenance":"x","terms":[{"coeff":"1/0","monomial":[]}]}]"#;
        assert!(matches!(parse_table(bad), Err(TableError::Entry { .. })));
        let bad = r#"[{"key":"S:2","provenance":"x","terms":[{"coeff":"1","monomial":["z(1)"]}]}]"#;
        assert!(matches!(parse_table(bad), Err(TableError::Entry { .. })));
    }
}

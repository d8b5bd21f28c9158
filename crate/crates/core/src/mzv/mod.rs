//! Decorated multiple zeta values: the expression ring, expansion into
//! alternating MZVs, numerical evaluation and the table of known closed forms.

mod atom;
pub mod constants;
mod expr;
mod numeric;
pub mod polylog;
mod table;

pub use atom::{DecoratedIndex, DecoratedWord, Decoration, MzvAtom};
pub use expr::{expand_decorated, normalize, Combination, MixedExpr, MixedFactor, MzvExpr};
pub use numeric::{eval_atom, eval_expr, EvalConfig, NumericValue};
pub use table::{
    closed_form_table, known_closed_form, load_table, lookup, parse_table, ClosedFormEntry,
    TableError, TABLE_ENV,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MzvError {
    #[error("divergent word {0}")]
    DivergentWord(String),
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("target error {target:e} unreachable; best estimate {best}")]
    PrecisionUnreachable { best: NumericValue, target: f64 },
}

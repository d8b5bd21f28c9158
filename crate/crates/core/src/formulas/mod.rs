//! Explicit formulas for the series families, each returned both in the
//! decorated shape the derivation produces and as a normalized
//! alternating-MZV expression.

mod contour;
mod integral;

pub use contour::{
    apery_first, apery_second, closed_s, coeff_a, coeff_b, coeff_g, coeff_h, formula_t1,
    formula_ts, formula_ts1, formula_tt1, formula_tu1, formula_u1, knuth_combination,
    relation_check_closing, seq_c, seq_d,
};
pub use integral::{
    formula_s, formula_s_1, formula_s_cubic, formula_s_linear, formula_s_quad, formula_s_quad11,
    formula_s_quad11_star, formula_s_star, formula_s_star_1m,
};

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::exact::Rational;
use crate::mzv::{normalize, MixedExpr, MzvError, MzvExpr};
use crate::series::{Family, SeriesId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Mzv(#[from] MzvError),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("no formula for {0}")]
    Unsupported(String),
    #[error("variant {variant} does not apply to {series}")]
    VariantMismatch { variant: Variant, series: String },
}

/// A series expressed through (alternating) MZVs.
#[derive(Debug, Clone, PartialEq)]
pub struct Formula {
    /// Shape as stated: decorated words, constants and their products.
    pub mixed: MixedExpr,
    /// Decorations expanded and normalized.
    pub expanded: MzvExpr,
}

impl Formula {
    pub fn from_mixed(mixed: MixedExpr) -> Result<Self, MzvError> {
        let expanded = normalize(&mixed.expand()?);
        Ok(Formula { mixed, expanded })
    }

    pub fn from_mzv(e: &MzvExpr) -> Self {
        Formula { mixed: MixedExpr::from_mzv(e), expanded: normalize(e) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Formula { mixed: self.mixed.scale(c), expanded: self.expanded.scale(c) }
    }

    /// Product with a decoration-free factor such as `zeta(m+1)`.
    pub fn times(&self, e: &MzvExpr) -> Self {
        Formula {
            mixed: &self.mixed * &MixedExpr::from_mzv(e),
            expanded: normalize(&(&self.expanded * e)),
        }
    }
}

impl Add for Formula {
    type Output = Formula;
    fn add(self, rhs: Formula) -> Formula {
        Formula {
            mixed: self.mixed + rhs.mixed,
            expanded: normalize(&(self.expanded + rhs.expanded)),
        }
    }
}

impl Sub for Formula {
    type Output = Formula;
    fn sub(self, rhs: Formula) -> Formula {
        Formula {
            mixed: self.mixed - rhs.mixed,
            expanded: normalize(&(self.expanded - rhs.expanded)),
        }
    }
}

/// Alternative derivations where more than one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `S_{1,p+1}` through the `S*_{1,p+1}` composition sum.
    CoroS1p,
    /// `S_{1,p+1}` through the two-word mixed form.
    CoroMixed,
    /// `S_{1^2,p} = 2 S*_{2,p} - S_{2,p}`.
    TwoStar,
    /// `S_{1^2,p} = S*_{11,p}`.
    Star,
    /// `S_{1^3,p} = 6 S*_{3,p} - 3 S_{12,p} - 2 S_{3,p}`.
    SixThreeTwo,
    /// `S_{1^3,p} = 2 S*_{12,p} - S_{12,p}`.
    TwoOne,
    /// Residue computation.
    Contour,
    /// `tS_q = 2 zeta(~2, {~1}_{q-2})`.
    Chen,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::CoroS1p,
        Variant::CoroMixed,
        Variant::TwoStar,
        Variant::Star,
        Variant::SixThreeTwo,
        Variant::TwoOne,
        Variant::Contour,
        Variant::Chen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::CoroS1p => "coro_s1p",
            Variant::CoroMixed => "coro_mixed",
            Variant::TwoStar => "two_star",
            Variant::Star => "star",
            Variant::SixThreeTwo => "six_three_two",
            Variant::TwoOne => "two_one",
            Variant::Contour => "contour",
            Variant::Chen => "chen",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = Variant::ALL.iter().map(|v| v.name()).collect();
                format!("unknown variant `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Variants a series accepts; the first is the default.
pub fn variants_for(id: &SeriesId) -> &'static [Variant] {
    match (id.family, id.orders.as_slice()) {
        (Family::S, [1]) => &[Variant::CoroMixed, Variant::CoroS1p],
        (Family::S, [1, 1]) => &[Variant::TwoStar, Variant::Star],
        (Family::S, [1, 1, 1]) => &[Variant::SixThreeTwo, Variant::TwoOne],
        (Family::TS, _) => &[Variant::Contour, Variant::Chen],
        _ => &[],
    }
}

/// Formula for a series given by its literal harmonic orders and exponent.
pub fn formula_for(id: &SeriesId, variant: Option<Variant>) -> Result<Formula, FormulaError> {
    id.validate().map_err(|e| FormulaError::Domain(e.to_string()))?;
    let allowed = variants_for(id);
    let variant = match variant {
        None => allowed.first().copied(),
        Some(v) if allowed.contains(&v) => Some(v),
        Some(v) => {
            return Err(FormulaError::VariantMismatch { variant: v, series: id.to_string() })
        }
    };
    let p = id.exponent;
    let unsupported = || FormulaError::Unsupported(id.to_string());
    match id.family {
        Family::S => match id.orders.as_slice() {
            [] => formula_s(p - 1),
            [1] => formula_s_1(p - 1, variant.unwrap_or(Variant::CoroMixed)),
            [m] => formula_s_linear(m - 1, p - 1),
            [1, 1] => match variant {
                Some(Variant::Star) => formula_s_quad11_star(p),
                _ => formula_s_quad11(p),
            },
            [1, m] => formula_s_quad(m - 1, p),
            [1, 1, 1] => formula_s_cubic(p, variant.unwrap_or(Variant::SixThreeTwo)),
            _ => Err(unsupported()),
        },
        Family::Sstar => {
            let m = id.star_m.unwrap_or(0);
            if id.orders.is_empty() {
                formula_s_star(m, p)
            } else {
                formula_s_star_1m(m, p - 1)
            }
        }
        Family::T => formula_t1(p),
        Family::U => formula_u1(p),
        Family::TS => formula_ts(p, variant.unwrap_or(Variant::Contour)),
        Family::TS1 => formula_ts1(p),
        Family::TT1 => formula_tt1(p),
        Family::TU1 => formula_tu1(p),
    }
}

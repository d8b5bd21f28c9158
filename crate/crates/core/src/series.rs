//! Identifiers for the Euler-Apery-type series handled by the crate.
//!
//! With `c_n = binom(2n, n) / 4^n`:
//!
//! | family  | summand                                        |
//! |---------|------------------------------------------------|
//! | `S`     | `H_n^(i_1) ... H_n^(i_k) c_n / n^p`            |
//! | `Sstar` | `[H_n] zeta*_n({1}_m) c_n / n^p`                |
//! | `T`     | `H_2n c_n / n^q`                               |
//! | `U`     | `O_n c_n / n^q`                                |
//! | `tS`    | `1 / (c_n n^q)`                                |
//! | `tS1`   | `H_n / (c_n n^q)`                              |
//! | `tT1`   | `H_2n / (c_n n^q)`                             |
//! | `tU1`   | `O_n / (c_n n^q)`                              |
//!
//! Keys: `S:3`, `S:2,1`, `S:1^2,2`, `S:12,1`, `Sstar:*2,3`, `Sstar:1*2,3`,
//! `T:1,2`, `U:1,2`, `tS:3`, `tS:1,3`, `tT:1,3`, `tU:1,3`. Orders above 9
//! are braced: `S:{10},1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cannot parse series key `{0}`")]
    Parse(String),
    #[error("series {0} diverges")]
    Divergent(String),
    #[error("no formula for {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    S,
    Sstar,
    T,
    U,
    TS,
    TS1,
    TT1,
    TU1,
}

impl Family {
    /// Whether the central binomial ratio sits in the denominator.
    pub fn is_reciprocal(self) -> bool {
        matches!(self, Family::TS | Family::TS1 | Family::TT1 | Family::TU1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesId {
    pub family: Family,
    /// Harmonic orders `i_1 <= ... <= i_k` (`S`; `Sstar` allows `[]` or `[1]`).
    pub orders: Vec<u32>,
    /// `m` in a `zeta*_n({1}_m)` factor (`Sstar` only).
    pub star_m: Option<u32>,
    /// Denominator exponent `p` (or `q`).
    pub exponent: u32,
}

impl SeriesId {
    pub fn s(orders: &[u32], p: u32) -> Self {
        let mut orders = orders.to_vec();
        orders.sort_unstable();
        SeriesId { family: Family::S, orders, star_m: None, exponent: p }
    }

    pub fn sstar(with_h: bool, m: u32, p: u32) -> Self {
        let orders = if with_h { vec![1] } else { vec![] };
        SeriesId { family: Family::Sstar, orders, star_m: Some(m), exponent: p }
    }

    fn simple(family: Family, q: u32) -> Self {
        SeriesId { family, orders: vec![], star_m: None, exponent: q }
    }

    pub fn t1(q: u32) -> Self {
        Self::simple(Family::T, q)
    }
    pub fn u1(q: u32) -> Self {
        Self::simple(Family::U, q)
    }
    pub fn ts(q: u32) -> Self {
        Self::simple(Family::TS, q)
    }
    pub fn ts1(q: u32) -> Self {
        Self::simple(Family::TS1, q)
    }
    pub fn tt1(q: u32) -> Self {
        Self::simple(Family::TT1, q)
    }
    pub fn tu1(q: u32) -> Self {
        Self::simple(Family::TU1, q)
    }

    pub fn weight(&self) -> u32 {
        let numerator = match self.family {
            Family::S | Family::Sstar => self.orders.iter().sum::<u32>() + self.star_m.unwrap_or(0),
            Family::TS => 0,
            Family::T | Family::U | Family::TS1 | Family::TT1 | Family::TU1 => 1,
        };
        numerator + self.exponent
    }

    /// Rejects divergent or malformed identifiers.
    pub fn validate(&self) -> Result<(), SeriesError> {
        let min_exp = if self.family.is_reciprocal() { 2 } else { 1 };
        if self.exponent < min_exp {
            return Err(SeriesError::Divergent(self.to_string()));
        }
        let ok = match self.family {
            Family::S => self.orders.iter().all(|&o| o >= 1) && self.star_m.is_none(),
            Family::Sstar => self.star_m.is_some() && (self.orders.is_empty() || self.orders == [1]),
            _ => self.orders.is_empty() && self.star_m.is_none(),
        };
        if ok {
            Ok(())
        } else {
            Err(SeriesError::Parse(self.to_string()))
        }
    }

    /// LaTeX label, e.g. `S_{1^2,2}` or `\tilde{S}_{1,3}`.
    pub fn latex(&self) -> String {
        let q = self.exponent;
        match self.family {
            Family::S if self.orders.is_empty() => format!("S_{{{q}}}"),
            Family::S => format!("S_{{{},{q}}}", orders_text(&self.orders)),
            Family::Sstar => {
                let h = if self.orders.is_empty() { "" } else { "1" };
                format!("S^\\star_{{{h}{},{q}}}", self.star_m.unwrap_or(0))
            }
            Family::T => format!("T_{{1,{q}}}"),
            Family::U => format!("U_{{1,{q}}}"),
            Family::TS => format!("\\tilde{{S}}_{{{q}}}"),
            Family::TS1 => format!("\\tilde{{S}}_{{1,{q}}}"),
            Family::TT1 => format!("\\tilde{{T}}_{{1,{q}}}"),
            Family::TU1 => format!("\\tilde{{U}}_{{1,{q}}}"),
        }
    }
}

fn orders_text(orders: &[u32]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < orders.len() {
        let o = orders[i];
        let run = orders[i..].iter().take_while(|&&x| x == o).count();
        if o < 10 {
            out.push_str(&o.to_string());
        } else {
            out.push_str(&format!("{{{o}}}"));
        }
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}

fn parse_orders(text: &str) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let value = if bytes[i] == b'{' {
            let close = text[i..].find('}')? + i;
            let v: u32 = text[i + 1..close].parse().ok()?;
            i = close + 1;
            v
        } else if bytes[i].is_ascii_digit() {
            i += 1;
            (bytes[i - 1] - b'0') as u32
        } else {
            return None;
        };
        let mut reps = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let start = i + 1;
            let end = text[start..]
                .find(|c: char| !c.is_ascii_digit())
                .map_or(text.len(), |e| start + e);
            reps = text[start..end].parse().ok()?;
            i = end;
        }
        if value == 0 || reps == 0 {
            return None;
        }
        out.extend(std::iter::repeat(value).take(reps));
    }
    out.sort_unstable();
    Some(out)
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.exponent;
        match self.family {
            Family::S if self.orders.is_empty() => write!(f, "S:{q}"),
            Family::S => write!(f, "S:{},{q}", orders_text(&self.orders)),
            Family::Sstar => {
                let h = if self.orders.is_empty() { "" } else { "1" };
                write!(f, "Sstar:{h}*{},{q}", self.star_m.unwrap_or(0))
            }
            Family::T => write!(f, "T:1,{q}"),
            Family::U => write!(f, "U:1,{q}"),
            Family::TS => write!(f, "tS:{q}"),
            Family::TS1 => write!(f, "tS:1,{q}"),
            Family::TT1 => write!(f, "tT:1,{q}"),
            Family::TU1 => write!(f, "tU:1,{q}"),
        }
    }
}

impl FromStr for SeriesId {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        let bad = || SeriesError::Parse(s.to_string());
        let (head, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let (params, exp) = match body.rsplit_once(',') {
            Some((a, b)) => (Some(a), b),
            None => (None, body),
        };
        let exponent: u32 = exp.trim().parse().map_err(|_| bad())?;
        let id = match (head, params) {
            ("S", None) => SeriesId::s(&[], exponent),
            ("S", Some(o)) => SeriesId::s(&parse_orders(o).ok_or_else(bad)?, exponent),
            ("Sstar", Some(o)) => {
                let (h, m) = o.split_once('*').ok_or_else(bad)?;
                let m: u32 = m.parse().map_err(|_| bad())?;
                match h {
                    "" => SeriesId::sstar(false, m, exponent),
                    "1" => SeriesId::sstar(true, m, exponent),
                    _ => return Err(bad()),
                }
            }
            ("T", Some("1")) => SeriesId::t1(exponent),
            ("U", Some("1")) => SeriesId::u1(exponent),
            ("tS", None) => SeriesId::ts(exponent),
            ("tS", Some("1")) => SeriesId::ts1(exponent),
            ("tT", Some("1")) => SeriesId::tt1(exponent),
            ("tU", Some("1")) => SeriesId::tu1(exponent),
            _ => return Err(bad()),
        };
        Ok(id)
    }
}

impl Serialize for SeriesId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeriesId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Every series with a formula and `2 <= weight <= max_weight`, ordered by
/// weight and then by family.
pub fn table_ids(max_weight: u32) -> Vec<SeriesId> {
    let mut ids = Vec::new();
    for w in 2..=max_weight {
        ids.push(SeriesId::s(&[], w));
        for m in 1..w {
            ids.push(SeriesId::s(&[m], w - m));
        }
        for m in 1..w.saturating_sub(1) {
            ids.push(SeriesId::s(&[1, m], w - 1 - m));
        }
        if w >= 4 {
            ids.push(SeriesId::s(&[1, 1, 1], w - 3));
        }
        ids.push(SeriesId::t1(w - 1));
        ids.push(SeriesId::u1(w - 1));
        ids.push(SeriesId::ts(w));
        if w >= 3 {
            ids.push(SeriesId::ts1(w - 1));
            ids.push(SeriesId::tt1(w - 1));
            ids.push(SeriesId::tu1(w - 1));
        }
    }
    ids
}

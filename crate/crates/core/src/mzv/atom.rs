use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::exact::{Sign, SignedIndex, SignedIndexWord};

use super::MzvError;

/// Numerator factor attached to one summation index `n_j` of a mixed MZV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    /// `1`
    Plain,
    /// `(-1)^{n_j}`
    Bar,
    /// `1 + (-1)^{n_j}`
    Hat,
    /// `1 - (-1)^{n_j}`
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedIndex {
    pub s: u32,
    pub deco: Decoration,
}

impl DecoratedIndex {
    pub fn plain(s: u32) -> Self {
        DecoratedIndex { s, deco: Decoration::Plain }
    }
    pub fn bar(s: u32) -> Self {
        DecoratedIndex { s, deco: Decoration::Bar }
    }
    pub fn hat(s: u32) -> Self {
        DecoratedIndex { s, deco: Decoration::Hat }
    }
    pub fn tilde(s: u32) -> Self {
        DecoratedIndex { s, deco: Decoration::Tilde }
    }

    pub fn latex(&self) -> String {
        match self.deco {
            Decoration::Plain => self.s.to_string(),
            Decoration::Bar => format!("\\bar{{{}}}", self.s),
            Decoration::Hat => format!("\\hat{{{}}}", self.s),
            Decoration::Tilde => format!("\\tilde{{{}}}", self.s),
        }
    }
}

impl fmt::Display for DecoratedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.deco {
            Decoration::Plain => "",
            Decoration::Bar => "-",
            Decoration::Hat => "^",
            Decoration::Tilde => "~",
        };
        write!(f, "{prefix}{}", self.s)
    }
}

impl FromStr for DecoratedIndex {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self, MzvError> {
        let t = s.trim();
        let (deco, digits) = match t.chars().next() {
            Some('-') => (Decoration::Bar, &t[1..]),
            Some('^') => (Decoration::Hat, &t[1..]),
            Some('~') => (Decoration::Tilde, &t[1..]),
            _ => (Decoration::Plain, t),
        };
        let value: u32 = digits
            .parse()
            .map_err(|_| MzvError::Parse(format!("bad index `{s}`")))?;
        if value == 0 {
            return Err(MzvError::Parse(format!("index must be positive in `{s}`")));
        }
        Ok(DecoratedIndex { s: value, deco })
    }
}

/// A mixed multiple zeta value `zeta(k_1, ..., k_m)` with decorated slots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DecoratedWord(pub Vec<DecoratedIndex>);

impl DecoratedWord {
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|d| d.s).sum()
    }

    pub fn latex(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(DecoratedIndex::latex).collect();
        format!("\\zeta({})", inner.join(","))
    }
}

impl fmt::Display for DecoratedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "z({})", inner.join(","))
    }
}

impl FromStr for DecoratedWord {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self, MzvError> {
        let body = s
            .trim()
            .strip_prefix("z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| MzvError::Parse(format!("expected z(...), got `{s}`")))?;
        if body.trim().is_empty() {
            return Ok(DecoratedWord::default());
        }
        body.split(',')
            .map(DecoratedIndex::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(DecoratedWord)
    }
}

/// Atomic constant appearing in expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MzvAtom {
    /// `ln 2`
    Ln2,
    /// `zeta(s)`, `s >= 2`
    Zeta(u32),
    /// `Li_s(1/2)`, `s >= 2`
    PolylogHalf(u32),
    /// Convergent alternating MZV.
    AltMzv(SignedIndexWord),
}

impl MzvAtom {
    pub fn zeta(s: u32) -> Result<Self, MzvError> {
        if s < 2 {
            return Err(MzvError::InvalidAtom(format!("zeta({s}) diverges")));
        }
        Ok(MzvAtom::Zeta(s))
    }

    pub fn polylog_half(s: u32) -> Result<Self, MzvError> {
        if s < 2 {
            return Err(MzvError::InvalidAtom(format!("Li{s}(1/2) is not a basis atom")));
        }
        Ok(MzvAtom::PolylogHalf(s))
    }

    /// Alternating MZV atom; rejects the empty word and a leading `(1, +1)`.
    pub fn alt(word: SignedIndexWord) -> Result<Self, MzvError> {
        if word.depth() == 0 {
            return Err(MzvError::InvalidAtom("empty word is not an atom".into()));
        }
        if !word.is_convergent() {
            return Err(MzvError::DivergentWord(format!("z({word})")));
        }
        Ok(MzvAtom::AltMzv(word))
    }

    pub fn weight(&self) -> u32 {
        match self {
            MzvAtom::Ln2 => 1,
            MzvAtom::Zeta(s) | MzvAtom::PolylogHalf(s) => *s,
            MzvAtom::AltMzv(w) => w.weight(),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            MzvAtom::Ln2 => 0,
            MzvAtom::Zeta(_) => 1,
            MzvAtom::PolylogHalf(_) => 2,
            MzvAtom::AltMzv(_) => 3,
        }
    }

    pub fn latex(&self) -> String {
        match self {
            MzvAtom::Ln2 => "\\ln(2)".to_string(),
            MzvAtom::Zeta(s) => format!("\\zeta({s})"),
            MzvAtom::PolylogHalf(s) => format!("\\mathrm{{Li}}_{{{s}}}(1/2)"),
            MzvAtom::AltMzv(w) => {
                let inner: Vec<String> = w
                    .entries()
                    .iter()
                    .map(|e| match e.sign {
                        Sign::Plus => e.s.to_string(),
                        Sign::Minus => format!("\\bar{{{}}}", e.s),
                    })
                    .collect();
                format!("\\zeta({})", inner.join(","))
            }
        }
    }
}

impl Ord for MzvAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| match (self, other) {
                (MzvAtom::AltMzv(a), MzvAtom::AltMzv(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for MzvAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MzvAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MzvAtom::Ln2 => f.write_str("L2"),
            MzvAtom::Zeta(s) => write!(f, "z({s})"),
            MzvAtom::PolylogHalf(s) => write!(f, "Li{s}h"),
            MzvAtom::AltMzv(w) => write!(f, "z({w})"),
        }
    }
}

impl FromStr for MzvAtom {
    type Err = MzvError;

    /// Parses `L2`, `Li4h`, `z(3)` (a zeta value) or `z(-2,1)`.
    fn from_str(s: &str) -> Result<Self, MzvError> {
        let t = s.trim();
        if t == "L2" {
            return Ok(MzvAtom::Ln2);
        }
        if let Some(order) = t.strip_prefix("Li").and_then(|r| r.strip_suffix('h')) {
            let order: u32 = order
                .parse()
                .map_err(|_| MzvError::Parse(format!("bad polylog atom `{s}`")))?;
            return MzvAtom::polylog_half(order);
        }
        let word: DecoratedWord = t.parse()?;
        let mut entries = Vec::with_capacity(word.0.len());
        for d in &word.0 {
            let sign = match d.deco {
                Decoration::Plain => Sign::Plus,
                Decoration::Bar => Sign::Minus,
                _ => {
                    return Err(MzvError::Parse(format!(
                        "atom `{s}` carries a hat/tilde; expand it first"
                    )))
                }
            };
            entries.push(SignedIndex { s: d.s, sign });
        }
        match entries.as_slice() {
            [SignedIndex { s, sign: Sign::Plus }] => MzvAtom::zeta(*s),
            _ => MzvAtom::alt(SignedIndexWord(entries)),
        }
    }
}

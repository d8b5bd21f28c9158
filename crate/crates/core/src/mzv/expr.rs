use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{format_rational, Rational, Sign, SignedIndex, SignedIndexWord};

use super::atom::{DecoratedIndex, DecoratedWord, Decoration, MzvAtom};
use super::constants::even_zeta_over_pi;
use super::MzvError;

/// Formal rational linear combination of monomials, a monomial being a
/// sorted multiset of factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combination<A: Ord> {
    terms: BTreeMap<Vec<A>, Rational>,
}

/// Linear combination of products of atomic constants.
pub type MzvExpr = Combination<MzvAtom>;

/// Factor of a mixed expression: a decorated MZV or an atomic constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixedFactor {
    Atom(MzvAtom),
    Word(DecoratedWord),
}

/// Linear combination of products of mixed MZVs and constants, kept in the
/// shape a theorem states it.
pub type MixedExpr = Combination<MixedFactor>;

impl<A: Ord + Clone> Default for Combination<A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<A: Ord + Clone> Combination<A> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn factor(a: A) -> Self {
        Self::monomial(Rational::one(), vec![a])
    }

    /// `c * a_1 * ... * a_k`; the factor list is sorted on insertion.
    pub fn monomial(c: Rational, mut factors: Vec<A>) -> Self {
        factors.sort();
        let mut out = Self::zero();
        out.add_term(factors, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[A], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Coefficient of a (sorted) monomial.
    pub fn coefficient(&self, monomial: &[A]) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, monomial: Vec<A>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Applies `f` to every factor and multiplies the images out.
    pub fn try_map_factors<B, E>(
        &self,
        mut f: impl FnMut(&A) -> Result<Combination<B>, E>,
    ) -> Result<Combination<B>, E>
    where
        B: Ord + Clone,
    {
        let mut out = Combination::<B>::zero();
        for (mono, c) in &self.terms {
            let mut prod = Combination::<B>::constant(c.clone());
            for a in mono {
                prod = &prod * &f(a)?;
            }
            out = &out + &prod;
        }
        Ok(out)
    }
}

impl<A: Ord + Clone> Add for &Combination<A> {
    type Output = Combination<A>;
    fn add(self, rhs: &Combination<A>) -> Combination<A> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<A: Ord + Clone> Add for Combination<A> {
    type Output = Combination<A>;
    fn add(self, rhs: Combination<A>) -> Combination<A> {
        &self + &rhs
    }
}

impl<A: Ord + Clone> Neg for &Combination<A> {
    type Output = Combination<A>;
    fn neg(self) -> Combination<A> {
        self.scale(&-Rational::one())
    }
}

impl<A: Ord + Clone> Neg for Combination<A> {
    type Output = Combination<A>;
    fn neg(self) -> Combination<A> {
        -&self
    }
}

impl<A: Ord + Clone> Sub for &Combination<A> {
    type Output = Combination<A>;
    fn sub(self, rhs: &Combination<A>) -> Combination<A> {
        self + &(-rhs)
    }
}

impl<A: Ord + Clone> Sub for Combination<A> {
    type Output = Combination<A>;
    fn sub(self, rhs: Combination<A>) -> Combination<A> {
        &self - &rhs
    }
}

impl<A: Ord + Clone> Mul for &Combination<A> {
    type Output = Combination<A>;
    fn mul(self, rhs: &Combination<A>) -> Combination<A> {
        let mut out = Combination::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend(mb.iter().cloned());
                m.sort();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl<A: Ord + Clone> Mul for Combination<A> {
    type Output = Combination<A>;
    fn mul(self, rhs: Combination<A>) -> Combination<A> {
        &self * &rhs
    }
}

impl<A: Ord + Clone> crate::exact::BellRing for Combination<A> {
    fn zero() -> Self {
        Combination::zero()
    }
    fn one() -> Self {
        Combination::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &BigInt) -> Self {
        Combination::scale(self, &Rational::from_integer(k.clone()))
    }
}

/// Factor rendering shared by the plain and LaTeX printers.
pub trait Render {
    fn plain(&self) -> String;
    fn latex(&self) -> String;
}

impl Render for MzvAtom {
    fn plain(&self) -> String {
        self.to_string()
    }
    fn latex(&self) -> String {
        MzvAtom::latex(self)
    }
}

impl Render for MixedFactor {
    fn plain(&self) -> String {
        match self {
            MixedFactor::Atom(a) => a.to_string(),
            MixedFactor::Word(w) => w.to_string(),
        }
    }
    fn latex(&self) -> String {
        match self {
            MixedFactor::Atom(a) => a.latex(),
            MixedFactor::Word(w) => w.latex(),
        }
    }
}

fn render<A: Ord + Clone + Render>(e: &Combination<A>, latex: bool) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in e.terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut pieces: Vec<String> = Vec::new();
        if mono.is_empty() || !magnitude.is_one() {
            pieces.push(if latex && !magnitude.is_integer() {
                format!("\\frac{{{}}}{{{}}}", magnitude.numer(), magnitude.denom())
            } else {
                format_rational(&magnitude)
            });
        }
        let mut idx = 0;
        while idx < mono.len() {
            let mut run = 1;
            while idx + run < mono.len() && mono[idx + run] == mono[idx] {
                run += 1;
            }
            let base = if latex { mono[idx].latex() } else { mono[idx].plain() };
            pieces.push(match (run, latex) {
                (1, _) => base,
                (_, false) => format!("{base}^{run}"),
                (_, true) => format!("{base}^{{{run}}}"),
            });
            idx += run;
        }
        out.push_str(&pieces.join(if latex { " " } else { "*" }));
    }
    out
}

impl<A: Ord + Clone + Render> Combination<A> {
    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

impl fmt::Display for MzvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl fmt::Display for MixedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl MzvExpr {
    pub fn atom(a: MzvAtom) -> Self {
        Self::factor(a)
    }

    pub fn ln2() -> Self {
        Self::atom(MzvAtom::Ln2)
    }

    /// `zeta(s)` for `s >= 2`.
    pub fn zeta(s: u32) -> Self {
        Self::atom(MzvAtom::Zeta(s.max(2)))
    }

    /// True when only `ln 2` and zeta values occur.
    pub fn is_zeta_polynomial(&self) -> bool {
        self.terms
            .keys()
            .flatten()
            .all(|a| matches!(a, MzvAtom::Ln2 | MzvAtom::Zeta(_)))
    }

    /// Every alternating-MZV atom occurring in the expression.
    pub fn alt_words(&self) -> Vec<&SignedIndexWord> {
        let mut out: Vec<&SignedIndexWord> = self
            .terms
            .keys()
            .flatten()
            .filter_map(|a| match a {
                MzvAtom::AltMzv(w) => Some(w),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl MixedExpr {
    pub fn word(w: Vec<DecoratedIndex>) -> Self {
        Self::factor(MixedFactor::Word(DecoratedWord(w)))
    }

    pub fn atom(a: MzvAtom) -> Self {
        Self::factor(MixedFactor::Atom(a))
    }

    /// Lifts a decoration-free expression.
    pub fn from_mzv(e: &MzvExpr) -> Self {
        e.try_map_factors::<MixedFactor, std::convert::Infallible>(|a| {
            Ok(MixedExpr::atom(a.clone()))
        })
        .unwrap_or_default()
    }

    /// Expands every decorated word into alternating MZVs (no normalization).
    pub fn expand(&self) -> Result<MzvExpr, MzvError> {
        self.try_map_factors(|f| match f {
            MixedFactor::Atom(a) => Ok(MzvExpr::atom(a.clone())),
            MixedFactor::Word(w) => expand_decorated(&w.0),
        })
    }
}

/// Rewrites a mixed MZV as a signed sum of alternating MZVs.
///
/// `hat s -> s + bar s`, `tilde s -> s - bar s`; each of the
/// `2^(#hat + #tilde)` resulting words carries coefficient +1 or -1. Errors
/// when a resulting word starts with `(1, +1)`.
pub fn expand_decorated(word: &[DecoratedIndex]) -> Result<MzvExpr, MzvError> {
    let mut branches: Vec<(i64, Vec<SignedIndex>)> = vec![(1, Vec::with_capacity(word.len()))];
    for d in word {
        let choices: &[(i64, Sign)] = match d.deco {
            Decoration::Plain => &[(1, Sign::Plus)],
            Decoration::Bar => &[(1, Sign::Minus)],
            Decoration::Hat => &[(1, Sign::Plus), (1, Sign::Minus)],
            Decoration::Tilde => &[(1, Sign::Plus), (-1, Sign::Minus)],
        };
        let mut next = Vec::with_capacity(branches.len() * choices.len());
        for (c, w) in &branches {
            for &(k, sign) in choices {
                let mut w2 = w.clone();
                w2.push(SignedIndex { s: d.s, sign });
                next.push((c * k, w2));
            }
        }
        branches = next;
    }
    let mut out = MzvExpr::zero();
    for (c, w) in branches {
        let coeff = Rational::from_integer(BigInt::from(c));
        if w.is_empty() {
            out = &out + &MzvExpr::constant(coeff);
            continue;
        }
        let expanded = SignedIndexWord(w);
        if !expanded.is_convergent() {
            return Err(MzvError::DivergentWord(format!(
                "z({expanded}) in the expansion of {}",
                DecoratedWord(word.to_vec())
            )));
        }
        out = &out + &MzvExpr::monomial(coeff, vec![MzvAtom::AltMzv(expanded)]);
    }
    Ok(out)
}

#[cfg(test)]
fn word_to_decorated(entries: &[SignedIndex]) -> Vec<DecoratedIndex> {
    entries
        .iter()
        .map(|e| match e.sign {
            Sign::Plus => DecoratedIndex::plain(e.s),
            Sign::Minus => DecoratedIndex::bar(e.s),
        })
        .collect()
}


/// Rewrites one atom as `coefficient * atom'` using the depth-one relations
/// `zeta(bar 1) = -ln 2`, `zeta(bar s) = (2^(1-s) - 1) zeta(s)` and
/// `zeta(s)` for plain depth-one words.
fn reduce_atom(a: &MzvAtom) -> (Rational, MzvAtom) {
    match a {
        MzvAtom::AltMzv(w) if w.depth() == 1 => {
            let e = w.entries()[0];
            match (e.s, e.sign) {
                (1, Sign::Minus) => (-Rational::one(), MzvAtom::Ln2),
                (s, Sign::Minus) => {
                    let c = Rational::new(BigInt::one(), BigInt::from(2).pow(s - 1)) - Rational::one();
                    (c, MzvAtom::Zeta(s))
                }
                (s, Sign::Plus) => (Rational::one(), MzvAtom::Zeta(s)),
            }
        }
        other => (Rational::one(), other.clone()),
    }
}

/// Merges products of even zeta values, `zeta(2a) zeta(2b) = c zeta(2a+2b)`
/// with `c` rational.
fn merge_even_zetas(coeff: &mut Rational, mono: &mut Vec<MzvAtom>) {
    loop {
        let evens: Vec<usize> = mono
            .iter()
            .enumerate()
            .filter(|(_, a)| matches!(a, MzvAtom::Zeta(s) if s % 2 == 0))
            .map(|(i, _)| i)
            .take(2)
            .collect();
        let [i, j] = evens[..] else { return };
        let (MzvAtom::Zeta(sa), MzvAtom::Zeta(sb)) = (&mono[i], &mono[j]) else {
            return;
        };
        let (a, b) = (sa / 2, sb / 2);
        *coeff = &*coeff * even_zeta_over_pi(a) * even_zeta_over_pi(b) / even_zeta_over_pi(a + b);
        mono.remove(j);
        mono[i] = MzvAtom::Zeta(2 * (a + b));
    }
}

/// Canonical form: depth-one alternating atoms rewritten to `ln 2` and zeta
/// values, products of even zeta values merged, like monomials collected
/// and zero terms dropped. Idempotent.
pub fn normalize(e: &MzvExpr) -> MzvExpr {
    let mut out = MzvExpr::zero();
    for (mono, c) in e.terms() {
        let mut coeff = c.clone();
        let mut atoms = Vec::with_capacity(mono.len());
        for a in mono {
            let (k, reduced) = reduce_atom(a);
            coeff *= k;
            atoms.push(reduced);
        }
        merge_even_zetas(&mut coeff, &mut atoms);
        atoms.sort();
        out.add_term(atoms, coeff);
    }
    out
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bell_complete, factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `sign^n` as +1 / -1.
    pub fn pow_i64(self, n: u64) -> i64 {
        match self {
            Sign::Minus if n % 2 == 1 => -1,
            _ => 1,
        }
    }
}

/// One slot `(s, sigma)` of an alternating sum: contributes `sigma^k / k^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedIndex {
    pub s: u32,
    pub sign: Sign,
}

impl SignedIndex {
    pub fn plain(s: u32) -> Self {
        SignedIndex { s, sign: Sign::Plus }
    }

    pub fn bar(s: u32) -> Self {
        SignedIndex { s, sign: Sign::Minus }
    }

    /// `sigma^k / k^s`.
    pub fn term(&self, k: u64) -> Rational {
        let den = BigInt::from(k).pow(self.s);
        Rational::new(BigInt::from(self.sign.pow_i64(k)), den)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.s),
            Sign::Minus => write!(f, "-{}", self.s),
        }
    }
}

/// Ordered argument list `(s_1 sigma_1, ..., s_m sigma_m)`; may be empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignedIndexWord(pub Vec<SignedIndex>);

impl SignedIndexWord {
    pub fn new(entries: Vec<SignedIndex>) -> Self {
        SignedIndexWord(entries)
    }

    pub fn empty() -> Self {
        SignedIndexWord(Vec::new())
    }

    /// Builds a word from signed integers, negative meaning a barred slot.
    pub fn from_signed(entries: &[i32]) -> Self {
        SignedIndexWord(
            entries
                .iter()
                .map(|&e| {
                    let s = e.unsigned_abs();
                    if e < 0 {
                        SignedIndex::bar(s)
                    } else {
                        SignedIndex::plain(s)
                    }
                })
                .collect(),
        )
    }

    pub fn plain(entries: &[u32]) -> Self {
        SignedIndexWord(entries.iter().map(|&s| SignedIndex::plain(s)).collect())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|e| e.s).sum()
    }

    pub fn entries(&self) -> &[SignedIndex] {
        &self.0
    }

    /// True when the infinite sum converges, i.e. the leading slot is not `(1, +1)`.
    pub fn is_convergent(&self) -> bool {
        self.0.first() != Some(&SignedIndex::plain(1))
    }
}

impl fmt::Display for SignedIndexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Alternating multiple harmonic sum `zeta_n(w)` over `n >= n_1 > ... > n_m >= 1`.
///
/// Built from suffix partial sums, so the cost is `O(n * depth)` rational
/// operations. Returns 1 on the empty word and 0 when `n < depth`.
pub fn mhs(n: u64, w: &SignedIndexWord) -> Rational {
    nested_partial_sums(n, w.entries(), true)
}

/// Multiple harmonic star sum `zeta*_n(s_1, ..., s_m)` over
/// `n >= n_1 >= ... >= n_m >= 1`.
pub fn mhs_star(n: u64, w: &[u32]) -> Rational {
    let word: Vec<SignedIndex> = w.iter().map(|&s| SignedIndex::plain(s)).collect();
    nested_partial_sums(n, &word, false)
}

fn nested_partial_sums(n: u64, word: &[SignedIndex], strict: bool) -> Rational {
    let len = n as usize + 1;
    // inner[i] = value of the already-processed suffix summed up to i
    let mut inner: Vec<Rational> = vec![Rational::one(); len];
    for slot in word.iter().rev() {
        let mut outer: Vec<Rational> = Vec::with_capacity(len);
        outer.push(Rational::zero());
        for i in 1..len {
            let tail = if strict { &inner[i - 1] } else { &inner[i] };
            let next = if tail.is_zero() {
                outer[i - 1].clone()
            } else {
                &outer[i - 1] + slot.term(i as u64) * tail
            };
            outer.push(next);
        }
        inner = outer;
    }
    inner[n as usize].clone()
}

/// Generalized harmonic number `H_n^{(s)}`.
pub fn harmonic(n: u64, s: u32) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| {
        acc + Rational::new(BigInt::one(), BigInt::from(k).pow(s))
    })
}

/// `zeta_n({1}_k)`.
pub fn mhs_ones(n: u64, k: usize) -> Rational {
    mhs(n, &SignedIndexWord::plain(&vec![1; k]))
}

/// `zeta*_n({1}_m)` through the Bell-polynomial form
/// `(1/m!) Y_m(H_n, 1! H_n^(2), ..., (m-1)! H_n^(m))`.
pub fn zeta_star_ones(n: u64, m: usize) -> Rational {
    let args: Vec<Rational> = (1..=m as u32)
        .map(|j| harmonic(n, j) * Rational::from_integer(factorial(j - 1)))
        .collect();
    let y = bell_complete(&args, m).expect("argument list has length m");
    y / Rational::from_integer(factorial(m as u32))
}

/// Every signed word of depth at most `max_depth` and weight at most
/// `max_weight`, the empty word included.
pub fn signed_words(max_depth: usize, max_weight: u32) -> Vec<SignedIndexWord> {
    let mut out = vec![SignedIndexWord::empty()];
    let mut frontier = vec![SignedIndexWord::empty()];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 1..=max_weight.saturating_sub(w.weight()) {
                for sign in [Sign::Plus, Sign::Minus] {
                    let mut e = w.0.clone();
                    e.push(SignedIndex { s, sign });
                    next.push(SignedIndexWord(e));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, stirling_cycle};
    use proptest::prelude::*;

    /// Direct nested enumeration, exponential in depth; only for tiny n.
    fn mhs_naive(n: u64, w: &[SignedIndex], strict: bool) -> Rational {
        fn go(upper: u64, w: &[SignedIndex], strict: bool) -> Rational {
            let Some((head, rest)) = w.split_first() else {
                return int(1);
            };
            let mut total = int(0);
            for k in 1..=upper {
                let next = if strict { k - 1 } else { k };
                total += head.term(k) * go(next, rest, strict);
            }
            total
        }
        go(n, w, strict)
    }

    #[test]
    fn mhs_examples() {
        assert_eq!(mhs(2, &SignedIndexWord::plain(&[1])), rat(3, 2));
        assert_eq!(mhs(3, &SignedIndexWord::plain(&[2, 1])), rat(5, 12));
        assert_eq!(mhs(2, &SignedIndexWord::from_signed(&[-1])), rat(-1, 2));
        assert_eq!(mhs(5, &SignedIndexWord::empty()), int(1));
        assert_eq!(mhs(1, &SignedIndexWord::plain(&[1, 1])), int(0));
        assert_eq!(mhs(0, &SignedIndexWord::plain(&[2])), int(0));
    }

    #[test]
    fn mhs_star_examples() {
        assert_eq!(mhs_star(1, &[1, 1]), int(1));
        assert_eq!(mhs_star(2, &[1]), rat(3, 2));
        assert_eq!(mhs_star(3, &[1, 1]), rat(85, 36));
        assert_eq!(mhs_star(4, &[]), int(1));
    }

    #[test]
    fn zeta_star_ones_examples() {
        assert_eq!(zeta_star_ones(7, 0), int(1));
        for n in 1..=6 {
            let h = harmonic(n, 1);
            let h2 = harmonic(n, 2);
            assert_eq!(zeta_star_ones(n, 2), (h.clone() * h.clone() + h2) / int(2));
        }
        let (h, h2, h3, h4) = (harmonic(2, 1), harmonic(2, 2), harmonic(2, 3), harmonic(2, 4));
        let expected = (h.pow(4) + int(6) * h.pow(2) * h2.clone() + int(3) * h2.pow(2)
            + int(8) * h * h3
            + int(6) * h4)
            / int(24);
        assert_eq!(zeta_star_ones(2, 4), expected);
        assert_eq!(zeta_star_ones(0, 0), int(1));
        assert_eq!(zeta_star_ones(0, 3), int(0));
    }

    #[test]
    fn suffix_sums_match_naive_nesting() {
        let words: Vec<Vec<i32>> = vec![
            vec![1],
            vec![-1],
            vec![2, 1],
            vec![-2, 1],
            vec![1, -1, 2],
            vec![-1, -1, -1],
            vec![3, -2, 1, 1],
        ];
        for w in &words {
            let word = SignedIndexWord::from_signed(w);
            for n in 0..=6 {
                assert_eq!(mhs(n, &word), mhs_naive(n, word.entries(), true), "{w:?} n={n}");
            }
        }
        for w in [vec![1u32], vec![1, 1], vec![2, 1, 3]] {
            let word = SignedIndexWord::plain(&w);
            for n in 0..=6 {
                assert_eq!(mhs_star(n, &w), mhs_naive(n, word.entries(), false));
            }
        }
    }

    #[test]
    fn bell_form_matches_nested_star_sum() {
        for n in 1..=8 {
            for m in 0..=6 {
                assert_eq!(zeta_star_ones(n, m), mhs_star(n, &vec![1; m]), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn stirling_link() {
        for n in 2..=9u32 {
            for k in 2..=n {
                let lhs = mhs_ones((n - 1) as u64, (k - 1) as usize);
                let rhs = Rational::new(
                    BigInt::from(stirling_cycle(n, k)),
                    factorial(n - 1),
                );
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn telescoped_recurrence() {
        for w in signed_words(3, 5) {
            for n in 1..=8u64 {
                let lhs = mhs(n - 1, &w);
                let mut rhs = int(0);
                // signed slots pick up sigma_j^n from each peeled prefix entry
                let mut prefix = int(1);
                for l in 0..=w.depth() {
                    let suffix = SignedIndexWord(w.0[l..].to_vec());
                    let sign = if l % 2 == 0 { int(1) } else { int(-1) };
                    rhs += sign * prefix.clone() * mhs(n, &suffix);
                    if l < w.depth() {
                        prefix = prefix * w.0[l].term(n);
                    }
                }
                assert_eq!(lhs, rhs, "w={w} n={n}");
            }
        }
    }

    #[test]
    fn doubling_splitting() {
        let plain: Vec<SignedIndexWord> = signed_words(2, 4)
            .into_iter()
            .filter(|w| w.0.iter().all(|e| e.sign == Sign::Plus))
            .collect();
        for w in plain {
            let m = w.depth();
            for n in 0..=6u64 {
                let mut total = int(0);
                for mask in 0..(1u32 << m) {
                    let signed: Vec<SignedIndex> = w
                        .0
                        .iter()
                        .enumerate()
                        .map(|(j, e)| SignedIndex {
                            s: e.s,
                            sign: if mask >> j & 1 == 1 { Sign::Minus } else { Sign::Plus },
                        })
                        .collect();
                    total += mhs(2 * n, &SignedIndexWord(signed));
                }
                let factor = Rational::from_integer(BigInt::from(2).pow(w.weight() - m as u32));
                assert_eq!(mhs(n, &w), factor * total, "w={w} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn plain_mhs_is_nondecreasing(
            w in proptest::collection::vec(1u32..4, 0..4),
            n in 0u64..12,
        ) {
            let word = SignedIndexWord::plain(&w);
            prop_assert!(mhs(n + 1, &word) >= mhs(n, &word));
        }
    }
}

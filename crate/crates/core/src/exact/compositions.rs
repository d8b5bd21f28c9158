/// Lexicographic stream of tuples `(k_1, ..., k_parts)` with every
/// `k_i >= min_part` and `k_1 + ... + k_parts <= total_max`.
///
/// With `parts == 0` the stream holds the single empty tuple.
pub fn compositions(total_max: u32, parts: usize, min_part: u32) -> Compositions {
    let start = vec![min_part; parts];
    let first_ok = (parts as u64) * (min_part as u64) <= total_max as u64;
    Compositions {
        total_max,
        min_part,
        next: first_ok.then_some(start),
    }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    total_max: u32,
    min_part: u32,
    next: Option<Vec<u32>>,
}

impl Compositions {
    /// Restricts the stream to tuples whose sum is exactly `total`.
    pub fn with_sum(self, total: u32) -> impl Iterator<Item = Vec<u32>> {
        self.filter(move |k| k.iter().sum::<u32>() == total)
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let parts = current.len();
        let mut prefix: u32 = 0;
        let mut bump = None;
        for (i, &k) in current.iter().enumerate() {
            prefix += k;
            let rest = (parts - 1 - i) as u32 * self.min_part;
            if prefix + 1 + rest <= self.total_max {
                bump = Some(i);
            }
        }
        if let Some(i) = bump {
            let mut successor = current.clone();
            successor[i] += 1;
            for k in successor.iter_mut().skip(i + 1) {
                *k = self.min_part;
            }
            self.next = Some(successor);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use num_bigint::BigInt;

    fn brute(total_max: u32, parts: usize, min_part: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..parts {
            let mut next = Vec::new();
            for t in &out {
                for k in min_part..=total_max {
                    let mut u: Vec<u32> = t.clone();
                    u.push(k);
                    next.push(u);
                }
            }
            out = next;
        }
        out.retain(|t| t.iter().sum::<u32>() <= total_max);
        out.sort();
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(compositions(2, 2, 1).collect::<Vec<_>>(), vec![vec![1, 1]]);
        assert_eq!(
            compositions(3, 2, 1).collect::<Vec<_>>(),
            vec![vec![1, 1], vec![1, 2], vec![2, 1]]
        );
        assert_eq!(compositions(4, 3, 0).count(), 35);
        assert_eq!(compositions(1, 2, 1).count(), 0);
        assert_eq!(compositions(0, 0, 1).collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn matches_brute_force_and_ballot_count() {
        for total in 0..=7u32 {
            for parts in 1..=4usize {
                for min in 0..=2u32 {
                    let got: Vec<_> = compositions(total, parts, min).collect();
                    assert_eq!(got, brute(total, parts, min), "({total},{parts},{min})");
                    let free = total as i64 - parts as i64 * min as i64;
                    let expected = if free < 0 {
                        BigInt::from(0)
                    } else {
                        binomial(free as u32 + parts as u32, parts as u32)
                    };
                    assert_eq!(BigInt::from(got.len()), expected);
                }
            }
        }
    }

    #[test]
    fn exact_sum_filter() {
        let v: Vec<_> = compositions(3, 2, 0).with_sum(3).collect();
        assert_eq!(v, vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
    }
}

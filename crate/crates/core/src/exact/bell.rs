use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{binomial, ExactError, Rational};

/// Minimal commutative-ring surface needed to run the Bell recurrence over
/// something other than plain rationals (the contour coefficients use it
/// over symbolic zeta polynomials).
pub trait BellRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
}

impl BellRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &BigInt) -> Self {
        self * Rational::from_integer(k.clone())
    }
}

/// Complete exponential Bell polynomial `Y_n(x_1, ..., x_n)`.
///
/// `x[0]` holds `x_1`. Uses `Y_n = sum_{j<n} C(n-1, j) x_{n-j} Y_j` with
/// `Y_0 = 1`.
pub fn bell_complete(x: &[Rational], n: usize) -> Result<Rational, ExactError> {
    bell_complete_in(x, n)
}

/// [`bell_complete`] over an arbitrary [`BellRing`].
pub fn bell_complete_in<T: BellRing>(x: &[T], n: usize) -> Result<T, ExactError> {
    if x.len() < n {
        return Err(ExactError::ArgumentTooShort {
            needed: n,
            got: x.len(),
        });
    }
    let mut ys: Vec<T> = Vec::with_capacity(n + 1);
    ys.push(T::one());
    for m in 1..=n {
        let mut acc = T::zero();
        for (j, yj) in ys.iter().enumerate() {
            let c = binomial((m - 1) as u32, j as u32);
            acc = acc.add(&x[m - j - 1].mul(yj).scale(&c));
        }
        ys.push(acc);
    }
    Ok(ys.pop().unwrap_or_else(T::one))
}

/// Unsigned Stirling number of the first kind (number of permutations of
/// `n` elements with exactly `k` cycles).
pub fn stirling_cycle(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    // row[j] = [i, j] for the current i
    let mut row = vec![BigUint::zero(); (n + 1) as usize];
    row[0] = BigUint::one();
    for i in 0..n {
        for j in (1..=(i + 1) as usize).rev() {
            let carried = &row[j] * BigUint::from(i);
            row[j] = carried + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, int, rat};

    /// Sum over all set partitions of {0..n-1} of the product of x_{|block|}.
    fn bell_by_set_partitions(x: &[Rational], n: usize) -> Rational {
        fn go(i: usize, n: usize, blocks: &mut Vec<usize>, x: &[Rational]) -> Rational {
            if i == n {
                return blocks
                    .iter()
                    .fold(int(1), |acc, &b| acc * x[b - 1].clone());
            }
            let mut total = int(0);
            for b in 0..blocks.len() {
                blocks[b] += 1;
                total += go(i + 1, n, blocks, x);
                blocks[b] -= 1;
            }
            blocks.push(1);
            total += go(i + 1, n, blocks, x);
            blocks.pop();
            total
        }
        go(0, n, &mut Vec::new(), x)
    }

    /// Coefficient of t^n/n! in exp(sum x_k t^k / k!), via truncated power series.
    fn bell_by_generating_function(x: &[Rational], n: usize) -> Rational {
        // a(t) = sum x_k t^k/k!, exp via f' = a' f
        let a: Vec<Rational> = (0..=n)
            .map(|k| {
                if k == 0 {
                    int(0)
                } else {
                    x[k - 1].clone() / Rational::from_integer(factorial(k as u32))
                }
            })
            .collect();
        let mut f = vec![int(0); n + 1];
        f[0] = int(1);
        for m in 1..=n {
            let mut acc = int(0);
            for k in 1..=m {
                acc += int(k as i64) * a[k].clone() * f[m - k].clone();
            }
            f[m] = acc / int(m as i64);
        }
        f[n].clone() * Rational::from_integer(factorial(n as u32))
    }

    #[test]
    fn bell_small_values() {
        assert_eq!(bell_complete(&[], 0).unwrap(), int(1));
        assert_eq!(bell_complete(&[rat(7, 3)], 1).unwrap(), rat(7, 3));
        let ones = vec![int(1); 3];
        assert_eq!(bell_complete(&ones, 3).unwrap(), int(5));
        assert_eq!(bell_by_set_partitions(&ones, 3), int(5));
        assert_eq!(bell_by_generating_function(&ones, 3), int(5));
    }

    #[test]
    fn bell_short_list_is_an_error() {
        assert_eq!(
            bell_complete(&[int(1)], 2),
            Err(ExactError::ArgumentTooShort { needed: 2, got: 1 })
        );
    }

    #[test]
    fn bell_matches_set_partitions_and_generating_function() {
        let x: Vec<Rational> = (1..=7).map(|k| rat(k * k - 3, k + 1)).collect();
        for n in 0..=7 {
            let y = bell_complete(&x, n).unwrap();
            assert_eq!(y, bell_by_set_partitions(&x, n), "n={n}");
            assert_eq!(y, bell_by_generating_function(&x, n), "n={n}");
        }
    }

    fn count_cycles(perm: &[usize]) -> usize {
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_cycle(0, 0), BigUint::from(1u32));
        assert_eq!(stirling_cycle(3, 2), BigUint::from(3u32));
        assert_eq!(stirling_cycle(5, 2), BigUint::from(50u32));
        assert_eq!(stirling_cycle(2, 5), BigUint::from(0u32));
        assert_eq!(stirling_cycle(4, 0), BigUint::from(0u32));
    }

    #[test]
    fn stirling_matches_permutation_cycle_counts() {
        for n in 0..=6usize {
            let perms = permutations(n);
            for k in 0..=n {
                let brute = perms.iter().filter(|p| count_cycles(p) == k).count();
                assert_eq!(stirling_cycle(n as u32, k as u32), BigUint::from(brute), "[{n},{k}]");
            }
        }
    }
}

//! Brute-force checks of the alternating MZV evaluator.

use easum_core::exact::SignedIndexWord;
use easum_core::mzv::{
    eval_atom, eval_expr, expand_decorated, DecoratedIndex, EvalConfig, MzvAtom,
};

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Acc {
    sum: f64,
    c: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }
    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Solves a small dense system by partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Limit of partial sums `P(K)` assuming
/// `P(K) = t + sum_{i=1,2} sum_{j=0..2} c_ij ln^j(K) / K^i`.
fn extrapolate(points: &[(f64, f64)]) -> f64 {
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|&(k, _)| {
            let l = k.ln();
            let mut r = vec![1.0];
            for i in 1..=2 {
                for j in 0..=2 {
                    r.push(l.powi(j) / k.powi(i));
                }
            }
            r
        })
        .collect();
    let rhs: Vec<f64> = points.iter().map(|p| p.1).collect();
    solve(rows, rhs)[0]
}

/// Partial sums of the Hoffman t-value `t(s_1, ..., s_m)` (odd
/// denominators, `n_1 > ... > n_m`) after `K` odd terms, at each checkpoint.
fn hoffman_t(word: &[u32], checkpoints: &[usize]) -> Vec<(f64, f64)> {
    let m = word.len();
    // level j holds sums over chains using the last j+1 slots
    let mut levels: Vec<Acc> = (0..m).map(|_| Acc::default()).collect();
    let mut out = Vec::new();
    let last = *checkpoints.last().unwrap();
    for k in 1..=last {
        let n = (2 * k - 1) as f64;
        for j in (0..m).rev() {
            let slot = word[m - 1 - j];
            let inner = if j == 0 { 1.0 } else { levels[j - 1].value() };
            levels[j].add(inner / n.powi(slot as i32));
        }
        if checkpoints.contains(&k) {
            out.push((k as f64, levels[m - 1].value()));
        }
    }
    out
}

#[test]
fn bar_two_one_against_double_sum() {
    // zeta(bar2, 1) = sum_n (-1)^n H_{n-1} / n^2; averaging consecutive
    // partial sums cancels the leading alternating tail.
    let n_max = 100_000usize;
    let mut h = 0.0;
    let mut acc = Acc::default();
    let mut prev = 0.0;
    for n in 1..=n_max {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prev = acc.value();
        acc.add(sign * h / (n as f64).powi(2));
        h += 1.0 / n as f64;
    }
    let oracle = 0.5 * (prev + acc.value());
    let atom = MzvAtom::alt(SignedIndexWord::from_signed(&[-2, 1])).unwrap();
    let v = eval_atom(&atom, &EvalConfig::default()).unwrap();
    assert!((v.value - oracle).abs() < 1e-9, "{} vs {oracle}", v.value);
}

#[test]
fn tilde_words_are_scaled_hoffman_values() {
    let checkpoints: Vec<usize> = (0..7).map(|i| 4000 << i).collect();
    let words: &[&[u32]] = &[&[2], &[3], &[2, 1], &[3, 1], &[2, 2], &[2, 1, 1], &[4, 1], &[3, 2], &[2, 1, 2], &[3, 1, 1]];
    for word in words {
        let t = extrapolate(&hoffman_t(word, &checkpoints));
        let tilde: Vec<DecoratedIndex> = word.iter().map(|&s| DecoratedIndex::tilde(s)).collect();
        let expr = expand_decorated(&tilde).unwrap();
        let v = eval_expr(&expr, &EvalConfig::default()).unwrap();
        let scaled = 2f64.powi(word.len() as i32) * t;
        assert!((v.value - scaled).abs() < 1e-9, "{word:?}: {} vs {scaled}", v.value);
    }
}

#[test]
fn euler_and_depth_one_relations() {
    let cfg = EvalConfig::default();
    let z21 = eval_atom(&MzvAtom::alt(SignedIndexWord::plain(&[2, 1])).unwrap(), &cfg).unwrap();
    let z3 = eval_atom(&MzvAtom::Zeta(3), &cfg).unwrap();
    assert!((z21.value - z3.value).abs() <= z21.err + z3.err);
    for s in 2..=6u32 {
        let bar = eval_atom(&MzvAtom::alt(SignedIndexWord::from_signed(&[-(s as i32)])).unwrap(), &cfg)
            .unwrap();
        let rhs = (2f64.powi(1 - s as i32) - 1.0) * eval_atom(&MzvAtom::Zeta(s), &cfg).unwrap().value;
        assert!((bar.value - rhs).abs() <= bar.err + 1e-15);
    }
}

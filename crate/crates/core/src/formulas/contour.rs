//! Formulas obtained by residue computation, built from the Taylor
//! coefficients `C_k` of `Gamma(1+z) e^{gamma z}` and `D_k` of its reciprocal.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::exact::{
    bell_complete_in, compositions, factorial, int, mhs_ones, rat, zeta_star_ones, Rational,
};
use crate::mzv::{
    eval_expr, normalize, DecoratedIndex as D, EvalConfig, MixedExpr, MzvExpr, NumericValue,
};

use super::integral::{formula_s_1, formula_s_linear, formula_s_quad11};
use super::{Formula, FormulaError, Variant};

const CACHED: usize = 16;

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn inv_factorial(k: u32) -> Rational {
    Rational::new(BigInt::from(1), factorial(k))
}

/// `Y_k(x_1, ..., x_k)` with `x_1 = 0`, `x_j = s (-1)^j (j-1)! zeta(j)`.
fn bell_of_zetas(k: usize, s: i64) -> MzvExpr {
    let x: Vec<MzvExpr> = (1..=k as u32)
        .map(|j| {
            if j == 1 {
                MzvExpr::zero()
            } else {
                let c = Rational::from_integer(factorial(j - 1) * BigInt::from(s * sign(j)));
                MzvExpr::zeta(j).scale(&c)
            }
        })
        .collect();
    normalize(&bell_complete_in(&x, k).unwrap_or_default())
}

/// `C_k = Y_k(0, 1! zeta(2), -2! zeta(3), ...)`.
pub fn seq_c(k: usize) -> MzvExpr {
    static TABLE: OnceLock<Vec<MzvExpr>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (0..CACHED).map(|k| bell_of_zetas(k, 1)).collect());
    t.get(k).cloned().unwrap_or_else(|| bell_of_zetas(k, 1))
}

/// `D_k = Y_k(0, -1! zeta(2), 2! zeta(3), ...)`.
pub fn seq_d(k: usize) -> MzvExpr {
    static TABLE: OnceLock<Vec<MzvExpr>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (0..CACHED).map(|k| bell_of_zetas(k, -1)).collect());
    t.get(k).cloned().unwrap_or_else(|| bell_of_zetas(k, -1))
}

/// `A_k(n) = sum_{k1+k2=k} zeta*_n({1}_{k1}) C_{k2} / k2!`.
pub fn coeff_a(k: u32, n: u64) -> MzvExpr {
    let mut out = MzvExpr::zero();
    for k1 in 0..=k {
        let k2 = k - k1;
        let c = zeta_star_ones(n, k1 as usize) * inv_factorial(k2);
        out = out + seq_c(k2 as usize).scale(&c);
    }
    normalize(&out)
}

/// `B_k(n) = sum_{k1+k2=k} (-1)^{k1} zeta_n({1}_{k1}) D_{k2} / k2!`.
pub fn coeff_b(k: u32, n: u64) -> MzvExpr {
    let mut out = MzvExpr::zero();
    for k1 in 0..=k {
        let k2 = k - k1;
        let c = mhs_ones(n, k1 as usize) * int(sign(k1)) * inv_factorial(k2);
        out = out + seq_d(k2 as usize).scale(&c);
    }
    normalize(&out)
}

fn ln2_power(k: u32) -> MzvExpr {
    MzvExpr::ln2().pow(k)
}

/// `G(k) = 2^{k3+k4} ln^{k4}(2) C_{k1} C_{k2} D_{k3} / (k1! k2! k3! k4!)`.
pub fn coeff_g(k1: u32, k2: u32, k3: u32, k4: u32) -> MzvExpr {
    let c = int(1i64 << (k3 + k4))
        * inv_factorial(k1)
        * inv_factorial(k2)
        * inv_factorial(k3)
        * inv_factorial(k4);
    let prod = &(&seq_c(k1 as usize) * &seq_c(k2 as usize)) * &seq_d(k3 as usize);
    normalize(&(&prod * &ln2_power(k4)).scale(&c))
}

/// `H(k) = (-1)^{k4} 2^{k1+k4} ln^{k4}(2) C_{k1} D_{k2} D_{k3} / (k1! k2! k3! k4!)`.
pub fn coeff_h(k1: u32, k2: u32, k3: u32, k4: u32) -> MzvExpr {
    let c = int(sign(k4) * (1i64 << (k1 + k4)))
        * inv_factorial(k1)
        * inv_factorial(k2)
        * inv_factorial(k3)
        * inv_factorial(k4);
    let prod = &(&seq_c(k1 as usize) * &seq_d(k2 as usize)) * &seq_d(k3 as usize);
    normalize(&(&prod * &ln2_power(k4)).scale(&c))
}

/// Tuples of `parts` nonnegative integers summing to `total`.
fn tuples(total: u32, parts: usize) -> impl Iterator<Item = Vec<u32>> {
    compositions(total, parts, 0).with_sum(total)
}

fn g_of(k: &[u32]) -> MzvExpr {
    coeff_g(k[0], k[1], k[2], k[3])
}

/// `sum_{|k|_4 = n} G(k)`.
fn g_sum(n: u32) -> MzvExpr {
    tuples(n, 4).fold(MzvExpr::zero(), |acc, k| acc + g_of(&k))
}

/// `sum_{|k|_5 = n} G(k_1..k_4) w(k_5) zeta(k_5 + 2)`.
fn g_zeta_sum(n: u32, weight: impl Fn(u32) -> Rational) -> MzvExpr {
    let mut out = MzvExpr::zero();
    for k in tuples(n, 5) {
        out = out + (&g_of(&k) * &MzvExpr::zeta(k[4] + 2)).scale(&weight(k[4]));
    }
    normalize(&out)
}

/// `sum_{|k|_6 = n} G(k_1..k_4) zeta(k_5 + 2) zeta(k_6 + 2)`, zero for `n < 0`.
fn g_zeta_zeta_sum(n: i64) -> MzvExpr {
    if n < 0 {
        return MzvExpr::zero();
    }
    let mut out = MzvExpr::zero();
    for k in tuples(n as u32, 6) {
        let z = &MzvExpr::zeta(k[4] + 2) * &MzvExpr::zeta(k[5] + 2);
        out = out + &g_of(&k) * &z;
    }
    normalize(&out)
}

fn q_domain(q: u32, min: u32, what: &str) -> Result<(), FormulaError> {
    if q < min {
        return Err(FormulaError::Domain(format!("{what} needs q >= {min}")));
    }
    Ok(())
}

/// `S_{q-1} = (-1)^q sum_{|k|_4 = q-1} G(k)`, a polynomial in `ln 2` and
/// zeta values; `q >= 2`.
pub fn closed_s(q: u32) -> Result<MzvExpr, FormulaError> {
    q_domain(q, 2, "closed_s")?;
    Ok(normalize(&g_sum(q - 1).scale(&int(sign(q)))))
}

fn closed_s_formula(q: u32) -> Result<Formula, FormulaError> {
    Ok(Formula::from_mzv(&closed_s(q)?))
}

/// `tS_q`, `q >= 2`.
pub fn formula_ts(q: u32, variant: Variant) -> Result<Formula, FormulaError> {
    q_domain(q, 2, "tS_q")?;
    match variant {
        Variant::Contour => {
            let s1 = formula_s_1(q - 2, Variant::CoroMixed)?.scale(&int(sign(q)));
            Ok(s1 + Formula::from_mzv(&g_zeta_sum(q - 2, |_| int(1))))
        }
        Variant::Chen => {
            let w: Vec<D> =
                std::iter::once(D::tilde(2)).chain((0..q - 2).map(|_| D::tilde(1))).collect();
            Ok(Formula::from_mixed(MixedExpr::word(w).scale(&int(2)))?)
        }
        other => Err(FormulaError::VariantMismatch { variant: other, series: format!("tS:{q}") }),
    }
}

/// `S_{1^2,q-1} - c zeta(2) S_{q-1} + c S_{2,q-1}`.
fn bracket(q: u32, c: i64) -> Result<Formula, FormulaError> {
    let s11 = formula_s_quad11(q - 1)?;
    let s = closed_s_formula(q)?.times(&MzvExpr::zeta(2)).scale(&int(c));
    let s2 = formula_s_linear(1, q - 2)?.scale(&int(c));
    Ok(s11 - s + s2)
}

/// `tS_{1,q}`, `q >= 2`.
pub fn formula_ts1(q: u32) -> Result<Formula, FormulaError> {
    q_domain(q, 2, "tS_{1,q}")?;
    let ts = formula_ts(q + 1, Variant::Contour)?;
    let br = bracket(q, 1)?.scale(&rat(sign(q), 2));
    let gz = g_zeta_sum(q - 1, |k5| int(k5 as i64 + 1)).scale(&rat(1, 2));
    let gzz = g_zeta_zeta_sum(q as i64 - 3).scale(&rat(1, 2));
    Ok(ts + br + Formula::from_mzv(&(gz - gzz)))
}

/// `tT_{1,q}`, `q >= 2`.
pub fn formula_tt1(q: u32) -> Result<Formula, FormulaError> {
    q_domain(q, 2, "tT_{1,q}")?;
    let ts_next = formula_ts(q + 1, Variant::Contour)?.scale(&rat(2 - q as i64, 2));
    let ts = formula_ts(q, Variant::Contour)?.times(&MzvExpr::ln2());
    let br = bracket(q, 2)?.scale(&rat(sign(q), 2));
    let gz = g_zeta_sum(q - 1, |k5| int(k5 as i64 + 1));
    let gzz = g_zeta_zeta_sum(q as i64 - 3).scale(&rat(1, 2));
    Ok(ts_next + ts + br + Formula::from_mzv(&(gz - gzz)))
}

/// `tU_{1,q} = tT_{1,q} - tS_{1,q} / 2`, `q >= 2`.
pub fn formula_tu1(q: u32) -> Result<Formula, FormulaError> {
    Ok(formula_tt1(q)? - formula_ts1(q)?.scale(&rat(1, 2)))
}

/// `T_{1,q}`, `q >= 1`.
pub fn formula_t1(q: u32) -> Result<Formula, FormulaError> {
    q_domain(q, 1, "T_{1,q}")?;
    let s_q = closed_s_formula(q + 1)?.times(&MzvExpr::ln2());
    let s_next = closed_s_formula(q + 2)?.scale(&rat(q as i64, 2));
    let s1 = formula_s_1(q - 1, Variant::CoroMixed)?;
    let ts = formula_ts(q + 1, Variant::Contour)?.scale(&rat(sign(q), 2));

    let h = |k: &[u32]| coeff_h(k[0], k[1], k[2], k[3]);
    let mut rest = MzvExpr::zero();
    for k in tuples(q + 1, 4) {
        rest = rest - h(&k).scale(&rat(1, 2));
    }
    // |k|_4 + 2 k5 = q - 1
    for k5 in 0..=(q - 1) / 2 {
        for k in tuples(q - 1 - 2 * k5, 4) {
            rest = rest + (&h(&k) * &MzvExpr::zeta(2 * k5 + 2)).scale(&int(2));
        }
    }
    // |k|_4 + 2 k5 + 2 k6 = q - 3
    if q >= 3 {
        let n = q - 3;
        for k5 in 0..=n / 2 {
            for k6 in 0..=(n - 2 * k5) / 2 {
                let z = &MzvExpr::zeta(2 * k5 + 2) * &MzvExpr::zeta(2 * k6 + 2);
                for k in tuples(n - 2 * k5 - 2 * k6, 4) {
                    rest = rest - (&h(&k) * &z).scale(&int(2));
                }
            }
        }
    }
    Ok(s_q + s_next + s1 + ts + Formula::from_mzv(&normalize(&rest)))
}

/// `U_{1,q} = T_{1,q} - S_{1,q} / 2`, `q >= 1`.
pub fn formula_u1(q: u32) -> Result<Formula, FormulaError> {
    let t = formula_t1(q)?;
    Ok(t - formula_s_1(q - 1, Variant::CoroMixed)?.scale(&rat(1, 2)))
}

/// `sum 4^n H_{n-1} / (n^2 binom(2n,n)) = tS_{1,2} - tS_3`.
pub fn apery_first() -> Result<Formula, FormulaError> {
    Ok(formula_ts1(2)? - formula_ts(3, Variant::Contour)?)
}

/// `sum 4^n H_{2n-1} / (n^2 binom(2n,n)) = tT_{1,2} - tS_3 / 2`.
pub fn apery_second() -> Result<Formula, FormulaError> {
    Ok(formula_tt1(2)? - formula_ts(3, Variant::Contour)?.scale(&rat(1, 2)))
}

/// `sum (H_{2n-1} - H_n) binom(2n,n) / (4^n n) = T_{1,1} - S_2 / 2 - S_{1,1}`.
pub fn knuth_combination() -> Result<Formula, FormulaError> {
    let s2 = closed_s_formula(3)?.scale(&rat(1, 2));
    Ok(formula_t1(1)? - s2 - formula_s_1(0, Variant::CoroMixed)?)
}

/// Residual `|LHS - RHS|` of
/// `zeta(~2, {~1}_{q-2}) - (-1)^q zeta(~2, {^1}_{q-2}) + (-1)^q zeta(-1, ~1, {^1}_{q-2})
///  = 1/2 sum_{|k|_5 = q-2} G(k) zeta(k_5 + 2)`.
pub fn relation_check_closing(q: u32, cfg: &EvalConfig) -> Result<NumericValue, FormulaError> {
    q_domain(q, 2, "closing relation")?;
    let n = (q - 2) as usize;
    let w1: Vec<D> = std::iter::once(D::tilde(2)).chain(vec![D::tilde(1); n]).collect();
    let w2: Vec<D> = std::iter::once(D::tilde(2)).chain(vec![D::hat(1); n]).collect();
    let w3: Vec<D> = [D::bar(1), D::tilde(1)].into_iter().chain(vec![D::hat(1); n]).collect();
    let s = int(sign(q));
    let lhs = MixedExpr::word(w1) - MixedExpr::word(w2).scale(&s) + MixedExpr::word(w3).scale(&s);
    let lhs = normalize(&lhs.expand()?);
    let rhs = g_zeta_sum(q - 2, |_| int(1)).scale(&rat(1, 2));
    let diff = eval_expr(&(lhs - rhs), cfg).map_err(FormulaError::from)?;
    Ok(NumericValue { value: diff.value.abs(), err: diff.err })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(e: &MzvExpr) -> String {
        e.to_string()
    }

    #[test]
    fn c_and_d_sequences() {
        let c: Vec<String> = (0..5).map(|k| text(&seq_c(k))).collect();
        assert_eq!(c, ["1", "0", "z(2)", "-2*z(3)", "27/2*z(4)"]);
        let d: Vec<String> = (0..5).map(|k| text(&seq_d(k))).collect();
        assert_eq!(d, ["1", "0", "-z(2)", "2*z(3)", "3/2*z(4)"]);
    }

    #[test]
    fn c_d_convolution_is_unit() {
        for k in 0..=8u32 {
            let mut acc = MzvExpr::zero();
            for i in 0..=k {
                let c = inv_factorial(i) * inv_factorial(k - i);
                acc = acc + (&seq_c(i as usize) * &seq_d((k - i) as usize)).scale(&c);
            }
            let expected = if k == 0 { MzvExpr::one() } else { MzvExpr::zero() };
            assert_eq!(normalize(&acc), expected, "k={k}");
        }
    }

    #[test]
    fn a_b_examples() {
        for n in 0..=6 {
            assert_eq!(coeff_a(0, n), MzvExpr::one());
            assert_eq!(coeff_a(1, n), MzvExpr::constant(crate::exact::harmonic(n, 1)));
        }
        // the z^j coefficient of prod_{k=1}^{n} (1 + z/k) is zeta_n({1}_j)
        for n in 0..=5u64 {
            let mut poly = vec![int(1)];
            for k in 1..=n {
                let mut next = poly.clone();
                next.push(int(0));
                for (j, c) in poly.iter().enumerate() {
                    next[j + 1] += c * rat(1, k as i64);
                }
                poly = next;
            }
            poly.resize(3, int(0));
            let b = coeff_b(2, n);
            let expected = MzvExpr::constant(poly[2].clone()) - MzvExpr::zeta(2).scale(&rat(1, 2));
            assert_eq!(b, expected, "n={n}");
        }
        assert_eq!(coeff_b(2, 3), MzvExpr::one() - MzvExpr::zeta(2).scale(&rat(1, 2)));
    }

    #[test]
    fn g_h_examples() {
        assert_eq!(coeff_g(0, 0, 0, 0), MzvExpr::one());
        assert_eq!(coeff_g(0, 0, 0, 2), MzvExpr::ln2().pow(2).scale(&int(2)));
        assert_eq!(coeff_g(2, 0, 0, 0), MzvExpr::zeta(2).scale(&rat(1, 2)));
        assert_eq!(coeff_h(0, 0, 0, 0), MzvExpr::one());
        assert_eq!(coeff_h(0, 0, 0, 1), MzvExpr::ln2().scale(&int(-2)));
        assert_eq!(coeff_h(0, 2, 0, 0), MzvExpr::zeta(2).scale(&rat(-1, 2)));
    }

    #[test]
    fn closed_single_sums() {
        assert_eq!(text(&closed_s(2).unwrap()), "2*L2");
        assert_eq!(text(&closed_s(3).unwrap()), "-2*L2^2 + z(2)");
        assert_eq!(text(&closed_s(4).unwrap()), "4/3*L2^3 - 2*L2*z(2) + 2*z(3)");
        assert!(closed_s(1).is_err());
    }
}

//! Formulas obtained from iterated-integral representations.
//!
//! Parameters follow the theorems: `formula_s(p)` is `S_{p+1}`,
//! `formula_s_linear(m, p)` is `S_{m+1,p+1}` and so on; each function
//! documents its own shift.

use crate::exact::{compositions, int, Rational};
use crate::mzv::{DecoratedIndex as D, MixedExpr, MzvExpr};

use super::{Formula, FormulaError, Variant};

type Word = Vec<D>;

fn hats(n: u32) -> impl Iterator<Item = D> {
    (0..n).map(|_| D::hat(1))
}

fn word(parts: Word) -> MixedExpr {
    MixedExpr::word(parts)
}

fn pow2(k: u32) -> Rational {
    int(1i64 << k)
}

fn finish(mixed: MixedExpr) -> Result<Formula, FormulaError> {
    Ok(Formula::from_mixed(mixed)?)
}

fn domain(msg: String) -> FormulaError {
    FormulaError::Domain(msg)
}

/// `S_{p+1} = -2 zeta(-1, {^1}_p)`.
pub fn formula_s(p: u32) -> Result<Formula, FormulaError> {
    let w: Word = std::iter::once(D::bar(1)).chain(hats(p)).collect();
    finish(word(w).scale(&int(-2)))
}

/// `S_{m+1,p+1} = 4 zeta(-1, {^1}_p, ^2, {^1}_{m-1}) - 2 zeta(m+1) zeta(-1, {^1}_p)`,
/// for `m >= 1`.
pub fn formula_s_linear(m: u32, p: u32) -> Result<Formula, FormulaError> {
    if m == 0 {
        return Err(domain("S_{m+1,p+1} needs m >= 1".into()));
    }
    let long: Word = std::iter::once(D::bar(1))
        .chain(hats(p))
        .chain(std::iter::once(D::hat(2)))
        .chain(hats(m - 1))
        .collect();
    let short: Word = std::iter::once(D::bar(1)).chain(hats(p)).collect();
    let zeta = MixedExpr::from_mzv(&MzvExpr::zeta(m + 1));
    finish(word(long).scale(&int(4)) - (&zeta * &word(short)).scale(&int(2)))
}

/// `S*_{m,exponent}`: the series with `zeta*_n({1}_m)` in the numerator.
///
/// Exponent 1 gives `-2^{m+1} zeta(-(m+1))`; exponent `p + 2` gives
/// `-2^{m+1} sum zeta(-k_{p+1}, ^(w-|k|), ^k_1, ..., ^k_p)` over
/// `k_i >= 1`, `|k| <= w - 1`, `w = m + p + 2`.
pub fn formula_s_star(m: u32, exponent: u32) -> Result<Formula, FormulaError> {
    let c = -pow2(m + 1);
    match exponent {
        0 => Err(domain("S*_{m,0} diverges".into())),
        1 => finish(word(vec![D::bar(m + 1)]).scale(&c)),
        _ => {
            let p = exponent - 2;
            let w = m + p + 2;
            let mut mixed = MixedExpr::zero();
            for k in compositions(w - 1, (p + 1) as usize, 1) {
                let total: u32 = k.iter().sum();
                let mut parts = vec![D::bar(k[p as usize]), D::hat(w - total)];
                parts.extend(k[..p as usize].iter().map(|&s| D::hat(s)));
                mixed = mixed + word(parts);
            }
            finish(mixed.scale(&c))
        }
    }
}

/// `S_{1,p+1}` for `p >= 0`.
pub fn formula_s_1(p: u32, variant: Variant) -> Result<Formula, FormulaError> {
    match variant {
        Variant::CoroS1p => {
            let mut mixed = word(std::iter::once(D::bar(2)).chain(hats(p)).collect());
            for l in 0..p {
                let parts: Word = std::iter::once(D::bar(1))
                    .chain(hats(l))
                    .chain(std::iter::once(D::hat(2)))
                    .chain(hats(p - 1 - l))
                    .collect();
                mixed = mixed + word(parts);
            }
            finish(mixed.scale(&int(-4)))
        }
        Variant::CoroMixed => {
            let a: Word = [D::bar(1), D::tilde(1)].into_iter().chain(hats(p)).collect();
            let b: Word = std::iter::once(D::tilde(2)).chain(hats(p)).collect();
            finish(word(b).scale(&int(2)) - word(a).scale(&int(2)))
        }
        other => Err(FormulaError::VariantMismatch {
            variant: other,
            series: format!("S:1,{}", p + 1),
        }),
    }
}

/// `S_{1(m+1),p}` for `m, p >= 1`:
/// `4 zeta(-1, ~1, {^1}_{p-1}, ^2, {^1}_{m-1}) - 4 zeta(~2, {^1}_{p-1}, ^2, {^1}_{m-1}) + zeta(m+1) S_{1,p}`.
pub fn formula_s_quad(m: u32, p: u32) -> Result<Formula, FormulaError> {
    if m == 0 || p == 0 {
        return Err(domain("S_{1(m+1),p} needs m, p >= 1".into()));
    }
    let tail = || hats(p - 1).chain(std::iter::once(D::hat(2))).chain(hats(m - 1));
    let a: Word = [D::bar(1), D::tilde(1)].into_iter().chain(tail()).collect();
    let b: Word = std::iter::once(D::tilde(2)).chain(tail()).collect();
    let head = Formula::from_mixed(word(a).scale(&int(4)) - word(b).scale(&int(4)))?;
    let s1p = formula_s_1(p - 1, Variant::CoroMixed)?;
    Ok(head + s1p.times(&MzvExpr::zeta(m + 1)))
}

/// `S*_{1m,p+1}`: the series with `H_n zeta*_n({1}_m)`, for `m, p >= 0`.
///
/// `-2^{m+1} sum_{|k|_{p+1} <= w-1} zeta(-k_{p+1}, ~(w-|k|), ^k_1, ..., ^k_p)
///  + 2^{m+1} sum_{|k|_p <= w-2} (w-1-|k|) zeta(~(w-|k|), ^k_1, ..., ^k_p)`,
/// `w = m + p + 2`.
pub fn formula_s_star_1m(m: u32, p: u32) -> Result<Formula, FormulaError> {
    let w = m + p + 2;
    let c = pow2(m + 1);
    let mut first = MixedExpr::zero();
    for k in compositions(w - 1, (p + 1) as usize, 1) {
        let total: u32 = k.iter().sum();
        let mut parts = vec![D::bar(k[p as usize]), D::tilde(w - total)];
        parts.extend(k[..p as usize].iter().map(|&s| D::hat(s)));
        first = first + word(parts);
    }
    let mut second = MixedExpr::zero();
    for k in compositions(w - 2, p as usize, 1) {
        let total: u32 = k.iter().sum();
        let mut parts = vec![D::tilde(w - total)];
        parts.extend(k.iter().map(|&s| D::hat(s)));
        second = second + word(parts).scale(&int((w - 1 - total) as i64));
    }
    finish(second.scale(&c) - first.scale(&c))
}

/// `S_{1^2,p} = 2 S*_{2,p} - S_{2,p}` for `p >= 1`.
pub fn formula_s_quad11(p: u32) -> Result<Formula, FormulaError> {
    if p == 0 {
        return Err(domain("S_{1^2,p} needs p >= 1".into()));
    }
    Ok(formula_s_star(2, p)?.scale(&int(2)) - formula_s_linear(1, p - 1)?)
}

/// `S_{1^2,p} = S*_{11,p}` for `p >= 1`.
pub fn formula_s_quad11_star(p: u32) -> Result<Formula, FormulaError> {
    if p == 0 {
        return Err(domain("S_{1^2,p} needs p >= 1".into()));
    }
    formula_s_star_1m(1, p - 1)
}

/// `S_{1^3,p}` for `p >= 1`.
pub fn formula_s_cubic(p: u32, variant: Variant) -> Result<Formula, FormulaError> {
    if p == 0 {
        return Err(domain("S_{1^3,p} needs p >= 1".into()));
    }
    let s12 = formula_s_quad(1, p)?;
    match variant {
        Variant::SixThreeTwo => {
            let star3 = formula_s_star(3, p)?;
            let s3 = formula_s_linear(2, p - 1)?;
            Ok(star3.scale(&int(6)) - s12.scale(&int(3)) - s3.scale(&int(2)))
        }
        Variant::TwoOne => Ok(formula_s_star_1m(2, p - 1)?.scale(&int(2)) - s12),
        other => Err(FormulaError::VariantMismatch {
            variant: other,
            series: format!("S:1^3,{p}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mzv::{eval_expr, EvalConfig, MzvAtom};

    fn num(f: &Formula) -> f64 {
        eval_expr(&f.expanded, &EvalConfig::default()).unwrap().value
    }

    fn z(s: u32) -> f64 {
        crate::mzv::constants::zeta(s)
    }

    const L: f64 = std::f64::consts::LN_2;

    #[test]
    fn single_sums() {
        assert_eq!(formula_s(0).unwrap().expanded, MzvExpr::ln2().scale(&int(2)));
        let s2 = formula_s(1).unwrap();
        assert_eq!(s2.mixed.to_string(), "-2*z(-1,^1)");
        assert!((num(&s2) - (z(2) - 2.0 * L * L)).abs() < 1e-12);
        let s4 = num(&formula_s(3).unwrap());
        let published = 2.25 * z(4) - 4.0 * z(3) * L + 2.0 * z(2) * L * L - 2.0 / 3.0 * L.powi(4);
        assert!((s4 - published).abs() < 1e-12);
    }

    #[test]
    fn weights_are_homogeneous() {
        for p in 0..4 {
            for (mono, _) in formula_s(p).unwrap().expanded.terms() {
                assert_eq!(mono.iter().map(MzvAtom::weight).sum::<u32>(), p + 1);
            }
            for m in 1..3 {
                for (mono, _) in formula_s_linear(m, p).unwrap().expanded.terms() {
                    assert_eq!(mono.iter().map(MzvAtom::weight).sum::<u32>(), m + p + 2);
                }
                for (mono, _) in formula_s_star(m, p + 2).unwrap().expanded.terms() {
                    assert_eq!(mono.iter().map(MzvAtom::weight).sum::<u32>(), m + p + 2);
                }
            }
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(formula_s_star(0, 1).unwrap().expanded, MzvExpr::ln2().scale(&int(2)));
        assert_eq!(formula_s_star(2, 1).unwrap().expanded, MzvExpr::zeta(3).scale(&int(6)));
        let s12 = num(&formula_s_star(1, 2).unwrap());
        assert!((s12 - (4.5 * z(3) - 4.0 * z(2) * L)).abs() < 1e-12);
        // setting m = 0 recovers the single sums
        for p in 0..4 {
            let a = num(&formula_s_star(0, p + 2).unwrap());
            let b = num(&formula_s(p + 1).unwrap());
            assert!((a - b).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn star_one_m_examples() {
        assert!((num(&formula_s_star_1m(0, 0).unwrap()) - 2.0 * z(2)).abs() < 1e-12);
        assert!((num(&formula_s_star_1m(1, 0).unwrap()) - 10.5 * z(3)).abs() < 1e-12);
    }

    #[test]
    fn linear_examples() {
        assert!((num(&formula_s_linear(1, 0).unwrap()) - 1.5 * z(3)).abs() < 1e-12);
        let v = num(&formula_s_linear(1, 1).unwrap());
        assert!((v - (3.0 * z(4) - 3.0 * z(3) * L)).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(formula_s_linear(0, 1).is_err());
        assert!(formula_s_quad(0, 1).is_err());
        assert!(formula_s_quad11(0).is_err());
        assert!(formula_s_cubic(1, Variant::Chen).is_err());
        assert!(formula_s_star(1, 0).is_err());
    }
}

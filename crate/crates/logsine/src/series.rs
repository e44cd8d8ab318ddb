//! Truncated power-series arithmetic used for generating-function
//! coefficient extraction.
//!
//! Series are plain coefficient vectors at a fixed precision; all products
//! truncate to the shorter operand's length. Exponentials use the standard
//! `A' = B'·A` recurrence, so coefficients are produced by exact recursion
//! rather than numerical differentiation.

use rug::Float;

use crate::mpcore::{Context, MpComplex};

/// `c ← a·b` truncated to `len(a).min(len(b))` terms.
pub fn mul(prec: u32, a: &[Float], b: &[Float]) -> Vec<Float> {
    let n = a.len().min(b.len());
    let mut out = vec![Float::new(prec); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += Float::with_val(prec, &a[i] * &b[j]);
        }
    }
    out
}

/// `exp(a)` truncated to `len(a)` terms; requires `a[0] = 0`.
pub fn exp(prec: u32, a: &[Float]) -> Vec<Float> {
    debug_assert!(a[0].is_zero(), "series exp needs a vanishing constant term");
    let n = a.len();
    let mut out = vec![Float::new(prec); n];
    out[0] = Float::with_val(prec, 1);
    for m in 1..n {
        let mut acc = Float::new(prec);
        for k in 1..=m {
            acc += Float::with_val(prec, &a[k] * &out[m - k]) * k as u32;
        }
        out[m] = acc / Float::with_val(prec, m as u32);
    }
    out
}

/// Rescales the variable: returns the coefficients of `f(s·x)`.
pub fn scale_var(prec: u32, a: &[Float], s: &Float) -> Vec<Float> {
    let mut pw = Float::with_val(prec, 1);
    a.iter()
        .map(|c| {
            let out = Float::with_val(prec, c * &pw);
            pw *= s;
            out
        })
        .collect()
}

/// Coefficients of `ln Γ(1+x)` up to `x^n`: `-γx + Σ_{k≥2} (-1)^k ζ(k) x^k / k`.
pub fn lngamma1p(ctx: &Context, n: usize) -> Vec<Float> {
    let prec = ctx.prec();
    let mut out = vec![Float::new(prec); n + 1];
    if n >= 1 {
        out[1] = -ctx.euler_gamma();
    }
    for k in 2..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out[k] = ctx.zeta(k as u32) * sign / Float::with_val(prec, k as u32);
    }
    out
}

/// Coefficients of `ln Γ(1/2+x) - ln Γ(1/2)` up to `x^n`:
/// `-(γ+2ln2)x + Σ_{k≥2} (-1)^k (2^k-1) ζ(k) x^k / k`.
pub fn lngamma_half(ctx: &Context, n: usize) -> Vec<Float> {
    let prec = ctx.prec();
    let mut out = vec![Float::new(prec); n + 1];
    if n >= 1 {
        out[1] = -(ctx.euler_gamma() + ctx.ln_u(2) * 2u32);
    }
    for k in 2..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let two_k = Float::with_val(prec, 2).pow(k as u32) - 1u32;
        out[k] = ctx.zeta(k as u32) * two_k * sign / Float::with_val(prec, k as u32);
    }
    out
}

/// Coefficients of `ln(1+x)` up to `x^n`.
pub fn ln1p(prec: u32, n: usize) -> Vec<Float> {
    let mut out = vec![Float::new(prec); n + 1];
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out[k] = Float::with_val(prec, sign) / Float::with_val(prec, k as u32);
    }
    out
}

/// Complex series product truncated to the shorter length.
pub fn cmul(a: &[MpComplex], b: &[MpComplex]) -> Vec<MpComplex> {
    let n = a.len().min(b.len());
    let prec = a[0].prec().max(b[0].prec());
    let mut out = vec![MpComplex::zero(prec); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::agree_digits;

    #[test]
    fn exp_of_ln_is_identity() {
        let ctx = Context::new(40).unwrap();
        let prec = ctx.prec();
        let l = ln1p(prec, 12);
        let e = exp(prec, &l);
        assert!(agree_digits(&e[0], &ctx.float(1), 50) >= 40);
        assert!(agree_digits(&e[1], &ctx.float(1), 50) >= 40);
        for c in &e[2..] {
            assert!(c.clone().abs() < ctx.work_tolerance(), "nonzero tail {c}");
        }
    }

    #[test]
    fn lngamma_series_matches_mpfr() {
        let ctx = Context::new(50).unwrap();
        let prec = ctx.prec();
        let x = ctx.float(1) / 64u32;
        for (series, base) in [
            (lngamma1p(&ctx, 40), ctx.float(1)),
            (lngamma_half(&ctx, 40), ctx.float(1) / 2u32),
        ] {
            let mut acc = Float::new(prec);
            for c in series.iter().rev() {
                acc = acc * &x + c;
            }
            let direct = Float::with_val(prec, &base + &x).ln_gamma()
                - Float::with_val(prec, base).ln_gamma();
            assert!(agree_digits(&acc, &direct, 60) >= 50);
        }
    }

    #[test]
    fn product_truncates_consistently() {
        let ctx = Context::new(30).unwrap();
        let prec = ctx.prec();
        let l = ln1p(prec, 10);
        let sq = mul(prec, &l, &l);
        // [x^2] ln²(1+x) = 1, [x^3] = -1
        assert!(agree_digits(&sq[2], &ctx.float(1), 40) >= 30);
        assert!(agree_digits(&sq[3], &ctx.float(-1), 40) >= 30);
    }
}

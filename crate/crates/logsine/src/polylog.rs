//! Classical polylogarithms `Li_n` for real and complex arguments, the
//! inverse tangent integrals `Ti_k`, and the Dirichlet eta and beta series.
//!
//! Arguments inside the half-disc `|z| ≤ 1/2` use the defining series.  The
//! annulus `1/2 < |z| ≤ 1` uses the logarithmic expansion around `z = 1`,
//! which stays accurate on the unit circle itself.  Real arguments below
//! `-1` reduce to the unit interval through the standard inversion, and
//! `[-1, -1/2)` through the duplication `Li_n(z) + Li_n(-z) = 2^{1-n} Li_n(z²)`.

use rug::ops::Pow;
use rug::Float;

use crate::asym::{bernoulli2, hurwitz_log};
use crate::error::{Error, Result};
use crate::mpcore::{Context, MpComplex};
use crate::quad::tanh_sinh;

/// Dirichlet eta `η(n) = (1-2^{1-n}) ζ(n)`, with `η(0) = 1/2`, `η(1) = ln 2`.
pub fn eta(ctx: &Context, n: u32) -> Float {
    let prec = ctx.prec();
    match n {
        0 => Float::with_val(prec, 1) / 2u32,
        1 => Float::with_val(prec, 2u32).ln(),
        _ => {
            let scale = Float::with_val(prec, 1) - Float::with_val(prec, 2u32).pow(1 - n as i32);
            scale * ctx.zeta(n)
        }
    }
}

/// Dirichlet beta `β(k) = Σ (-1)^j (2j+1)^{-k}` via `4^{-k}(ζ(k,1/4) - ζ(k,3/4))`.
pub fn dirichlet_beta(ctx: &Context, k: u32) -> Result<Float> {
    if k < 2 {
        return Err(Error::Domain("dirichlet_beta needs k >= 2".into()));
    }
    let quarter = ctx.float(1) / 4u32;
    let three_q = ctx.float(3) / 4u32;
    let diff = hurwitz_log(ctx, k, 0, &quarter)? - hurwitz_log(ctx, k, 0, &three_q)?;
    Ok(diff * ctx.float(4).pow(-(k as i32)))
}

/// Exact harmonic number `H_m` as a float.
fn harmonic(prec: u32, m: u32) -> Float {
    let mut h = Float::new(prec);
    for i in 1..=m {
        h += Float::with_val(prec, 1) / Float::with_val(prec, i);
    }
    h
}

/// Direct series `Σ_{k≥1} z^k / k^n`, for `|z| ≤ 0.75` (real form).
fn li_series_real(ctx: &Context, n: u32, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let tol = ctx.work_tolerance();
    let mut sum = Float::new(prec);
    let mut xp = Float::with_val(prec, 1);
    for k in 1..1_000_000u32 {
        xp *= x;
        let term = xp.clone() / Float::with_val(prec, k).pow(n);
        let small = term.clone().abs() < tol;
        sum += term;
        if small {
            return Ok(sum);
        }
    }
    Err(Error::Convergence("polylogarithm series did not converge".into()))
}

/// Expansion of `Li_n(e^μ)` in powers of `μ = ln z`, valid for `|μ| < 2π`:
/// regular zeta terms, the `μ^{n-1}(H_{n-1} - ln(-μ))` term, and the
/// Bernoulli tail from zeta at non-positive integers.
fn li_log_expansion(ctx: &Context, n: u32, mu: &MpComplex, ln_neg_mu: &MpComplex) -> Result<MpComplex> {
    let prec = ctx.prec();
    let tol = ctx.work_tolerance();
    let mut sum = MpComplex::zero(prec);
    // k = 0 .. n-2: ζ(n-k) μ^k / k!
    let mut mupow = MpComplex::new(ctx.float(1), ctx.float(0));
    let mut kfact = Float::with_val(prec, 1);
    for k in 0..n.saturating_sub(1) {
        if k > 0 {
            mupow = mupow.mul(mu);
            kfact *= Float::with_val(prec, k);
        }
        let z = ctx.zeta(n - k);
        sum = sum.add(&mupow.scale(&Float::with_val(prec, &z / &kfact)));
    }
    // k = n-1: μ^{n-1}/(n-1)! · (H_{n-1} - ln(-μ))
    if n >= 2 {
        mupow = mupow.mul(mu);
        kfact *= Float::with_val(prec, n - 1);
    }
    let h = harmonic(prec, n - 1);
    let bracket = MpComplex::new(h, ctx.float(0)).sub(ln_neg_mu);
    sum = sum.add(&mupow.mul(&bracket).scale(&Float::with_val(prec, kfact.clone().recip())));
    // k = n: ζ(0) = -1/2
    mupow = mupow.mul(mu);
    kfact *= Float::with_val(prec, n);
    let half_fact = Float::with_val(prec, &kfact * 2u32).recip();
    sum = sum.sub(&mupow.scale(&half_fact));
    // k = n-1+2j, j ≥ 1: ζ(1-2j) = -B_{2j}/(2j); advance μ^k/k! stepwise.
    let mut k = n;
    for j in 1..200_000u32 {
        let kt = n - 1 + 2 * j;
        while k < kt {
            k += 1;
            mupow = mupow.mul(mu);
            kfact *= Float::with_val(prec, k);
        }
        let coeff = -bernoulli2(prec, j) / Float::with_val(prec, 2 * j);
        let term = mupow.scale(&Float::with_val(prec, &coeff / &kfact));
        let mag = term.abs();
        sum = sum.add(&term);
        if mag < tol && j > 2 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence("logarithmic polylogarithm expansion stalled".into()))
}

/// `Li_n(x)` for real `x ≤ 1` (requires `n ≥ 2` at `x = 1`).
pub fn li_real(ctx: &Context, n: u32, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    if n == 0 {
        // x/(1-x)
        let one_minus = Float::with_val(prec, 1 - x.clone());
        return Ok(Float::with_val(prec, x / &one_minus));
    }
    if !x.is_finite() || *x > 1u32 {
        return Err(Error::Domain("li_real requires x <= 1".into()));
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    if *x == 1u32 {
        if n < 2 {
            return Err(Error::Domain("Li_1 diverges at x = 1".into()));
        }
        return Ok(ctx.zeta(n));
    }
    if n == 1 {
        let om = Float::with_val(prec, 1 - x.clone());
        return Ok(-om.ln());
    }
    let half = Float::with_val(prec, 3) / 4u32;
    if x.clone().abs() <= half {
        return li_series_real(ctx, n, x);
    }
    if *x > 0u32 {
        // 3/4 < x < 1: logarithmic expansion, everything real.
        let mu = x.clone().ln();
        let ln_neg_mu = (-mu.clone()).ln();
        let v = li_log_expansion(
            ctx,
            n,
            &MpComplex::new(mu, ctx.float(0)),
            &MpComplex::new(ln_neg_mu, ctx.float(0)),
        )?;
        return Ok(v.re);
    }
    if *x >= -1i32 {
        // -1 ≤ x < -3/4: duplication to positive arguments.
        let ax = x.clone().abs();
        let sq = x.clone().square();
        let a = li_real(ctx, n, &sq)?;
        let b = li_real(ctx, n, &ax)?;
        return Ok(a * Float::with_val(prec, 2u32).pow(1 - n as i32) - b);
    }
    // x < -1: inversion to -1/x ∈ (-1, 0).
    let y = -x.clone();
    let inv = Float::with_val(prec, x.clone().recip());
    let li_inv = li_real(ctx, n, &inv)?;
    let ln_y = y.ln();
    let mut rhs = Float::new(prec);
    let mut j = 0u32;
    while 2 * j <= n {
        let e = eta(ctx, 2 * j);
        rhs += e * ln_y.clone().pow(n - 2 * j)
            / Float::with_val(prec, Float::factorial(n - 2 * j));
        j += 1;
    }
    let signed = if n % 2 == 0 { li_inv } else { -li_inv };
    Ok(-(rhs * 2u32) - signed)
}

/// `Li_n(z)` for complex `|z| ≤ 1`, `z ≠ 1`.
pub fn li_complex(ctx: &Context, n: u32, z: &MpComplex) -> Result<MpComplex> {
    let prec = ctx.prec();
    if n == 0 {
        let one = MpComplex::new(ctx.float(1), ctx.float(0));
        return Ok(z.div(&one.sub(z)));
    }
    let r = z.abs();
    if r > Float::with_val(prec, 1.000001f64) {
        return Err(Error::Domain("li_complex requires |z| <= 1".into()));
    }
    if z.im.is_zero() {
        return Ok(MpComplex::new(li_real(ctx, n, &z.re)?, ctx.float(0)));
    }
    if n == 1 {
        let one = MpComplex::new(ctx.float(1), ctx.float(0));
        return Ok(one.sub(z).ln().neg());
    }
    let half = Float::with_val(prec, 3) / 4u32;
    if r <= half {
        let tol = ctx.work_tolerance();
        let mut sum = MpComplex::zero(prec);
        let mut zp = MpComplex::new(ctx.float(1), ctx.float(0));
        for k in 1..1_000_000u32 {
            zp = zp.mul(z);
            let term = zp.scale(&Float::with_val(prec, k).pow(-(n as i32)));
            let mag = term.abs();
            sum = sum.add(&term);
            if mag < tol {
                return Ok(sum);
            }
        }
        return Err(Error::Convergence("complex polylogarithm series stalled".into()));
    }
    let mu = z.ln();
    let ln_neg_mu = mu.neg().ln();
    li_log_expansion(ctx, n, &mu, &ln_neg_mu)
}

/// `Li_2(x ± i0)` for real `x > 1` on the principal branch approached from
/// above: `π²/3 - ln²x/2 - Li_2(1/x) - iπ ln x`.
pub fn li2_above_one(ctx: &Context, x: &Float) -> Result<MpComplex> {
    if !(*x > 1u32) {
        return Err(Error::Domain("li2_above_one requires x > 1".into()));
    }
    let prec = ctx.prec();
    let pi = ctx.pi();
    let inv = Float::with_val(prec, x.clone().recip());
    let lnx = x.clone().ln();
    let re = pi.clone().square() / 3u32 - lnx.clone().square() / 2u32 - li_real(ctx, 2, &inv)?;
    let im = -(pi * &lnx);
    Ok(MpComplex::new(re, im))
}

/// Inverse tangent integral `Ti_k(x) = Σ_j (-1)^j x^{2j+1}/(2j+1)^k`, `|x| ≤ 1`.
pub fn ti(ctx: &Context, k: u32, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    if x.clone().abs() > 1u32 {
        return Err(Error::Domain("ti series requires |x| <= 1".into()));
    }
    if x.clone().abs() == 1u32 {
        if k < 2 {
            // Ti_1(1) = arctan(1) = π/4.
            let v = ctx.pi() / 4u32;
            return Ok(if *x < 0u32 { -v } else { v });
        }
        let b = dirichlet_beta(ctx, k)?;
        return Ok(if *x < 0u32 { -b } else { b });
    }
    let tol = ctx.work_tolerance();
    let x2 = x.clone().square();
    let mut sum = Float::new(prec);
    let mut xp = x.clone();
    for j in 0..4_000_000u32 {
        let term = xp.clone() / Float::with_val(prec, 2 * j + 1).pow(k);
        let small = term.clone().abs() < tol;
        sum += term;
        if small {
            return Ok(sum);
        }
        xp *= &x2;
        xp = -xp;
    }
    Err(Error::Convergence("inverse tangent integral series stalled".into()))
}

/// `Ti_2(x) = ∫_0^x arctan(t)/t dt` by quadrature, any `x > 0`; an
/// integration route independent of the series.
pub fn ti2_quad(ctx: &Context, x: &Float) -> Result<Float> {
    if !(*x > 0u32) {
        return Err(Error::Domain("ti2_quad requires x > 0".into()));
    }
    let prec = ctx.prec();
    tanh_sinh(ctx, &ctx.float(0), x, |p| {
        if p.from_a.is_zero() {
            Float::with_val(prec, 1)
        } else {
            Float::with_val(prec, p.from_a.clone().atan() / &p.from_a)
        }
    })
}

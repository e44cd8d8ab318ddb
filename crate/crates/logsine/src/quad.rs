//! Tanh-sinh (double-exponential) quadrature over finite intervals.
//!
//! The variable change `x = m + r·tanh(π/2·sinh t)` pushes endpoint
//! singularities of log or algebraic type below the quadrature weights, so
//! integrands only need to be evaluable on the open interval. Abscissas are
//! handed to the integrand together with cancellation-free distances to both
//! endpoints; integrands with endpoint singularities must use those distances
//! instead of recomputing `x - a` or `b - x` themselves.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::Context;

/// One quadrature node.
pub struct QuadPoint {
    /// Abscissa; may round to an endpoint at extreme nodes.
    pub x: Float,
    /// `x - a`, exact to working precision even when `x` rounds to `a`.
    pub from_a: Float,
    /// `b - x`, exact to working precision even when `x` rounds to `b`.
    pub from_b: Float,
}

/// Integrates `f` over `[a, b]` to the context's working tolerance.
pub fn tanh_sinh<F>(ctx: &Context, a: &Float, b: &Float, mut f: F) -> Result<Float>
where
    F: FnMut(&QuadPoint) -> Float,
{
    let prec = ctx.prec();
    let wd = ctx.work_digits();
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain("quadrature needs a finite interval a < b".into()));
    }
    let half = Float::with_val(prec, 1) / 2u32;
    let mid = Float::with_val(prec, a + b) * &half;
    let rad = Float::with_val(prec, b - a) * &half;
    let pi_half = ctx.pi() * &half;

    // Clip the abscissa range where the weight underflows the working digits.
    let ln10 = Float::with_val(prec, 10).ln();
    let depth = Float::with_val(prec, (wd + 12) as u32) * &ln10 / &pi_half;
    let t_max = depth.asinh();

    let mut evaluate = |t: &Float| -> (Float, Float) {
        // u = (π/2)·sinh t ≥ 0 is handled with its mirror image in one go.
        let u = Float::with_val(prec, t.clone().sinh() * &pi_half);
        let e2 = Float::with_val(prec, -2 * u.clone()).exp();
        let denom = Float::with_val(prec, 1 + &e2);
        // 1 ∓ tanh u without cancellation.
        let near = Float::with_val(prec, 2 * e2.clone()) / &denom;
        let far = Float::with_val(prec, 2) / &denom;
        let sech2 = Float::with_val(prec, 4 * e2) / denom.clone().square();
        let w = Float::with_val(prec, t.clone().cosh() * &pi_half) * sech2 * &rad;
        let (lo, hi) = (
            Float::with_val(prec, &rad * &near),
            Float::with_val(prec, &rad * &far),
        );
        // Node to the right of the midpoint; the caller mirrors for t < 0.
        let x = Float::with_val(prec, &mid + Float::with_val(prec, &rad - &lo));
        let p = QuadPoint { x, from_a: hi.clone(), from_b: lo.clone() };
        let v_pos = f(&p);
        let x_neg = Float::with_val(prec, &mid - Float::with_val(prec, &rad - &lo));
        let p_neg = QuadPoint { x: x_neg, from_a: lo, from_b: hi };
        let v_neg = f(&p_neg);
        (Float::with_val(prec, v_pos + v_neg), w)
    };

    let check = |v: &Float, w: &Float| -> Result<()> {
        if v.is_finite() {
            return Ok(());
        }
        // A non-finite sample only matters if its weight is not negligible.
        let wlog = if w.is_zero() { f64::NEG_INFINITY } else { w.get_exp().unwrap_or(0) as f64 };
        if wlog > -2.0 * (wd as f64) * 3.33 {
            return Err(Error::Convergence(
                "integrand returned a non-finite value at a non-negligible node".into(),
            ));
        }
        Ok(())
    };

    // Level 0: midpoint plus seed spacing h = t_max / 4.
    let mut h = Float::with_val(prec, &t_max) / 4u32;
    let zero_t = Float::new(prec);
    let (v0, w0) = evaluate(&zero_t);
    let mut sum = Float::with_val(prec, v0 * w0) * &half;
    let mut j = 1u64;
    loop {
        let t = Float::with_val(prec, j) * &h;
        if t > t_max {
            break;
        }
        let (v, w) = evaluate(&t);
        check(&v, &w)?;
        sum += v * w;
        j += 1;
    }
    let mut estimate = Float::with_val(prec, &sum * &h);
    let mut prev_diff: Option<Float> = None;

    let tol = Float::with_val(prec, 10).pow(-((wd as i32) - 4));
    let max_level = 16;
    for _level in 1..=max_level {
        h /= 2u32;
        // New nodes are the odd multiples of the refined spacing.
        let mut j = 1u64;
        loop {
            let t = Float::with_val(prec, j) * &h;
            if t > t_max {
                break;
            }
            let (v, w) = evaluate(&t);
            check(&v, &w)?;
            sum += v * w;
            j += 2;
        }
        let new_estimate = Float::with_val(prec, &sum * &h);
        let diff = Float::with_val(prec, &new_estimate - &estimate).abs();
        estimate = new_estimate;
        let scale = Float::with_val(prec, estimate.clone().abs().max(&Float::with_val(prec, 1)));
        if diff <= scale.clone() * &tol {
            return Ok(estimate);
        }
        // Quadratic convergence means the next refinement roughly squares the
        // error; accept once the extrapolated error clears the tolerance.
        if let Some(pd) = &prev_diff {
            if !pd.is_zero() {
                let projected = diff.clone().square() / pd.clone();
                if projected <= scale * &tol && diff <= Float::with_val(prec, 10).pow(-6) {
                    return Ok(estimate);
                }
            }
        }
        prev_diff = Some(diff);
    }
    Err(Error::Convergence(format!(
        "tanh-sinh did not reach {wd} working digits in {max_level} levels"
    )))
}

/// Integrates over `[points[0], points.last()]`, splitting at the interior
/// breakpoints (used where the integrand has interior singularities or kinks).
pub fn tanh_sinh_panels<F>(ctx: &Context, points: &[Float], mut f: F) -> Result<Float>
where
    F: FnMut(&QuadPoint) -> Float,
{
    if points.len() < 2 {
        return Err(Error::Domain("panel quadrature needs at least two breakpoints".into()));
    }
    let mut total = ctx.zero();
    for w in points.windows(2) {
        total += tanh_sinh(ctx, &w[0], &w[1], &mut f)?;
    }
    Ok(total)
}

/// Like [`tanh_sinh`] for fallible integrands: the first error from `f` wins
/// over any quadrature outcome (failed nodes are fed in as NaN, which the
/// convergence check rejects on its own if the error capture were bypassed).
pub fn tanh_sinh_result<F>(ctx: &Context, a: &Float, b: &Float, mut f: F) -> Result<Float>
where
    F: FnMut(&QuadPoint) -> Result<Float>,
{
    let mut captured: Option<Error> = None;
    let value = tanh_sinh(ctx, a, b, |p| match f(p) {
        Ok(v) => v,
        Err(e) => {
            if captured.is_none() {
                captured = Some(e);
            }
            Float::with_val(p.x.prec(), f64::NAN)
        }
    });
    match captured {
        Some(e) => Err(e),
        None => value,
    }
}

/// Like [`tanh_sinh_panels`] for fallible integrands.
pub fn tanh_sinh_panels_result<F>(ctx: &Context, points: &[Float], mut f: F) -> Result<Float>
where
    F: FnMut(&QuadPoint) -> Result<Float>,
{
    if points.len() < 2 {
        return Err(Error::Domain("panel quadrature needs at least two breakpoints".into()));
    }
    let mut total = ctx.zero();
    for w in points.windows(2) {
        total += tanh_sinh_result(ctx, &w[0], &w[1], &mut f)?;
    }
    Ok(total)
}

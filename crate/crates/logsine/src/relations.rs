//! Catalogue of checkable identities relating Mahler measures, log-sine
//! integrals, polylogarithmic arc moments and circle constants.
//!
//! Every entry carries two evaluators that compute the same quantity along
//! different routes. [`check_identity`] measures how many decimal digits the
//! routes share; [`run_suite`] does the same for a filtered slice of the
//! registry in parallel. Entries that are numerically supported but unproven
//! carry a question tag which reports preserve verbatim, so a numerical pass
//! is never mistaken for a proof.

use std::sync::OnceLock;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logsine::{
    ls3_extended, ls3_extended_quad, ls_pi3_closed, ls_quad, lsc_quad, LsSpec, LscSpec,
};
use crate::mahler::{boyd_mu, mu_mn_symmetric, mu_n_finite_diff};
use crate::mpcore::{agree_digits, Context};
use crate::multilog::{clausen, glaisher};
use crate::polylog::{dirichlet_beta, li_real, ti};
use crate::quad::{tanh_sinh_result, QuadPoint};

/// Proof status of a registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Both sides are established; a failure indicates a library defect.
    Proven,
    /// Numerically supported equality carrying its question tag.
    Conjectural(&'static str),
}

impl Status {
    pub fn is_proven(self) -> bool {
        matches!(self, Status::Proven)
    }

    /// Human-readable label, with the question tag kept verbatim.
    pub fn label(self) -> String {
        match self {
            Status::Proven => "proven".into(),
            Status::Conjectural(tag) => format!("conjectural {tag}"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Which registry entries a suite run should include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    Proven,
    Conjectural,
}

impl Filter {
    pub fn admits(self, status: Status) -> bool {
        match self {
            Filter::All => true,
            Filter::Proven => status.is_proven(),
            Filter::Conjectural => !status.is_proven(),
        }
    }
}

type Evaluator = fn(&Context) -> Result<Float>;

/// One catalogued identity: two independent evaluators plus the digit
/// agreement required for a pass.
pub struct IdentityRecord {
    pub id: &'static str,
    pub status: Status,
    pub note: &'static str,
    pub min_digits: u32,
    lhs: Evaluator,
    rhs: Evaluator,
}

/// Outcome of checking one identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: &'static str,
    pub status: Status,
    pub agree_digits: u32,
    pub min_digits: u32,
    pub pass: bool,
    pub note: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The immutable identity registry.
pub fn registry() -> &'static [IdentityRecord] {
    static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

/// Look up a single entry by id.
pub fn find(id: &str) -> Option<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id)
}

/// Evaluate both sides of the identity `id` and report their agreement.
/// The evaluation context escalates to slightly above the entry's digit
/// requirement when the caller's context is weaker.
pub fn check_identity(ctx: &Context, id: &str) -> Result<IdentityReport> {
    let rec = find(id).ok_or_else(|| Error::Config(format!("unknown identity id '{id}'")))?;
    Ok(evaluate(ctx, rec))
}

/// Check every registry entry admitted by `filter`, in parallel.
pub fn run_suite(ctx: &Context, filter: Filter) -> Vec<IdentityReport> {
    registry()
        .par_iter()
        .filter(|r| filter.admits(r.status))
        .map(|r| evaluate(ctx, r))
        .collect()
}

/// A suite run fails only when a proven identity misses its requirement;
/// conjectural rows are advisory.
pub fn suite_passes(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.pass || !r.status.is_proven())
}

/// Render reports as an aligned text table.
pub fn render_table(reports: &[IdentityReport]) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "id".into(),
        "status".into(),
        "digits".into(),
        "pass".into(),
        "note".into(),
    ]];
    for r in reports {
        let detail = match &r.error {
            Some(e) => format!("error: {e}"),
            None => r.note.to_string(),
        };
        rows.push([
            r.id.to_string(),
            r.status.label(),
            format!("{}/{}", r.agree_digits, r.min_digits),
            if r.pass { "pass".into() } else { "FAIL".into() },
            detail,
        ]);
    }
    let mut width = [0usize; 5];
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (w, cell) in width.iter().zip(row) {
            line.push_str(&format!("{cell:<w$}  "));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn evaluate(ctx: &Context, rec: &IdentityRecord) -> IdentityReport {
    let report = |agree: u32, pass: bool, error: Option<String>| IdentityReport {
        id: rec.id,
        status: rec.status,
        agree_digits: agree,
        min_digits: rec.min_digits,
        pass,
        note: rec.note,
        error,
    };
    let digits = ctx.target_digits().max(rec.min_digits + 8);
    let ectx = match Context::new(digits) {
        Ok(c) => c,
        Err(e) => return report(0, false, Some(e.to_string())),
    };
    let sides = (rec.lhs)(&ectx).and_then(|l| Ok((l, (rec.rhs)(&ectx)?)));
    match sides {
        Ok((lhs, rhs)) => {
            let agree = agree_digits(&lhs, &rhs, ectx.target_digits());
            report(agree, agree >= rec.min_digits, None)
        }
        Err(e) => report(0, false, Some(e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Stable integrand building blocks.
//
// The arc integrands live on (0, π/6) and (π/6, π/2) and involve 4sin²θ,
// its complement against 1, and log(2 sin θ). All three lose every digit
// when computed naively next to θ = π/6, so they are rebuilt from the exact
// distance to the nearest panel edge that the quadrature provides.
// ---------------------------------------------------------------------------

fn sqrt3(prec: u32) -> Float {
    Float::with_val(prec, 3u32).sqrt()
}

/// On (0, π/6): x = 4sin²θ, its complement om = 1 - x, and log(2 sin θ),
/// each formed from whichever edge distance keeps it cancellation free
/// (1 - 4sin²(π/6 - d) = 2 sin d (√3 cos d - sin d)).
fn inner_parts(prec: u32, p: &QuadPoint) -> (Float, Float, Float) {
    if p.from_a < p.from_b {
        let s = Float::with_val(prec, 2u32 * p.from_a.clone().sin());
        let x = s.clone().square();
        let om = Float::with_val(prec, 1u32 - &x);
        (x, om, s.ln())
    } else {
        let sd = p.from_b.clone().sin();
        let cd = p.from_b.clone().cos();
        let om = Float::with_val(prec, 2u32 * &sd)
            * Float::with_val(prec, sqrt3(prec) * cd - &sd);
        let x = Float::with_val(prec, 1u32 - &om);
        let shalf = Float::with_val(prec, &p.from_b / 2u32).sin();
        let drop = Float::with_val(prec, sqrt3(prec) * &sd)
            + 2u32 * shalf.square();
        (x, om, (-drop).ln_1p())
    }
}

/// On (π/6, π/2) with d the distance to π/6: delta = 4sin²θ - 1
/// (= 2 sin d (sin d + √3 cos d), exact on the whole panel), the
/// reciprocal r = 1/(4sin²θ) with complement om_r = 1 - r, and log(2 sin θ).
fn outer_parts(prec: u32, p: &QuadPoint) -> (Float, Float, Float, Float) {
    let sd = p.from_a.clone().sin();
    let cd = p.from_a.clone().cos();
    let delta = Float::with_val(prec, 2u32 * &sd)
        * (Float::with_val(prec, sqrt3(prec) * cd) + &sd);
    let y = Float::with_val(prec, 1u32 + &delta);
    let r = y.clone().recip();
    let om_r = Float::with_val(prec, &delta / &y);
    let shalf = Float::with_val(prec, &p.from_a / 2u32).sin();
    let rise = Float::with_val(prec, sqrt3(prec) * &sd) - 2u32 * shalf.square();
    let lsin = rise.ln_1p();
    (delta, r, om_r, lsin)
}

/// Re Li_2(1 + delta) for delta ≥ 0 through the inversion
/// 2ζ(2) - Li_2(1/(1+delta)) - ½log²(1+delta).
fn re_li2_above(ctx: &Context, delta: &Float) -> Result<Float> {
    let prec = ctx.prec();
    if delta.is_zero() {
        return Ok(ctx.zeta(2));
    }
    let ln_y = delta.clone().ln_1p();
    let inv = Float::with_val(prec, 1u32 + delta).recip();
    Ok(2u32 * ctx.zeta(2) - li_real(ctx, 2, &inv)? - ln_y.square() / 2u32)
}

/// Li_{2,1}(x) for 0 ≤ x ≤ 1 with the complement om = 1 - x supplied by the
/// caller: ½log²(om)·log x + log(om)·Li_2(om) - Li_3(om) + ζ(3). Logs pick
/// whichever of x, om is the accurate small quantity.
fn li21_below(ctx: &Context, x: &Float, om: &Float) -> Result<Float> {
    if x.is_zero() || x.is_sign_negative() {
        return Ok(ctx.zero());
    }
    if om.is_zero() {
        return Ok(ctx.zeta(3));
    }
    let lx = if x <= om {
        x.clone().ln()
    } else {
        (-om.clone()).ln_1p()
    };
    let lo = if om <= x {
        om.clone().ln()
    } else {
        (-x.clone()).ln_1p()
    };
    Ok(lo.clone().square() * lx / 2u32 + lo * li_real(ctx, 2, om)? - li_real(ctx, 3, om)?
        + ctx.zeta(3))
}

/// Re Li_{2,1}(1/r) for 0 < r ≤ 1 with om_r = 1 - r supplied, from the
/// reflection against Li_{2,1}(r).
fn li21_above(ctx: &Context, r: &Float, om_r: &Float) -> Result<Float> {
    let prec = ctx.prec();
    if om_r.is_zero() {
        return Ok(ctx.zeta(3));
    }
    let lr = if r <= om_r {
        r.clone().ln()
    } else {
        (-om_r.clone()).ln_1p()
    };
    let pi2 = ctx.pi().square();
    Ok(ctx.zeta(3) - lr.clone().pow(3u32) / 6u32 + Float::with_val(prec, &pi2 * &lr) / 2u32
        - li_real(ctx, 2, r)? * &lr
        + li_real(ctx, 3, r)?
        - li21_below(ctx, r, om_r)?)
}

// ---------------------------------------------------------------------------
// Arc integral components shared by the registry evaluators.
// ---------------------------------------------------------------------------

/// ∫_0^{π/6} [direct Li_2(4sin²θ)] [+ inverse Re Li_2(1/(4sin²θ))] dθ,
/// optionally weighted by log(2 sin θ).
fn inner_dilog(ctx: &Context, direct: bool, inverse: bool, log_weight: bool) -> Result<Float> {
    let prec = ctx.prec();
    let sixth = Float::with_val(prec, ctx.pi() / 6u32);
    tanh_sinh_result(ctx, &ctx.zero(), &sixth, |p| {
        let (x, om, lsin) = inner_parts(prec, p);
        let mut v = Float::new(prec);
        if direct {
            v += li_real(ctx, 2, &x)?;
        }
        if inverse {
            let delta = Float::with_val(prec, &om / &x);
            v += re_li2_above(ctx, &delta)?;
        }
        if log_weight {
            v *= &lsin;
        }
        Ok(v)
    })
}

/// The matching integral over (π/6, π/2).
fn outer_dilog(ctx: &Context, direct: bool, inverse: bool, log_weight: bool) -> Result<Float> {
    let prec = ctx.prec();
    let sixth = Float::with_val(prec, ctx.pi() / 6u32);
    let half = Float::with_val(prec, ctx.pi() / 2u32);
    tanh_sinh_result(ctx, &sixth, &half, |p| {
        let (delta, r, _om_r, lsin) = outer_parts(prec, p);
        let mut v = Float::new(prec);
        if direct {
            v += re_li2_above(ctx, &delta)?;
        }
        if inverse {
            v += li_real(ctx, 2, &r)?;
        }
        if log_weight {
            v *= &lsin;
        }
        Ok(v)
    })
}

/// ∫_0^{π/6} [Li_{2,1}(4sin²θ)] [+ Re Li_{2,1}(1/(4sin²θ))] dθ.
fn inner_li21(ctx: &Context, direct: bool, inverse: bool) -> Result<Float> {
    let prec = ctx.prec();
    let sixth = Float::with_val(prec, ctx.pi() / 6u32);
    tanh_sinh_result(ctx, &ctx.zero(), &sixth, |p| {
        let (x, om, _lsin) = inner_parts(prec, p);
        let mut v = Float::new(prec);
        if direct {
            v += li21_below(ctx, &x, &om)?;
        }
        if inverse {
            v += li21_above(ctx, &x, &om)?;
        }
        Ok(v)
    })
}

/// ∫_{π/6}^{π/2} [Re Li_{2,1}(4sin²θ)] [+ Li_{2,1}(1/(4sin²θ))] dθ.
fn outer_li21(ctx: &Context, direct: bool, inverse: bool) -> Result<Float> {
    let prec = ctx.prec();
    let sixth = Float::with_val(prec, ctx.pi() / 6u32);
    let half = Float::with_val(prec, ctx.pi() / 2u32);
    tanh_sinh_result(ctx, &sixth, &half, |p| {
        let (_delta, r, om_r, _lsin) = outer_parts(prec, p);
        let mut v = Float::new(prec);
        if direct {
            v += li21_above(ctx, &r, &om_r)?;
        }
        if inverse {
            v += li21_below(ctx, &r, &om_r)?;
        }
        Ok(v)
    })
}

/// ∫_0^{π/3} log²(1 - 4sin²(θ/2))·log(2 sin(θ/2)) dθ. The first factor
/// vanishes at π/3 (1 - 4sin²(θ/2) = √3 sin d - 2sin²(d/2) at distance d)
/// and the second at 0, so both come from edge distances.
fn band_log_moment(ctx: &Context) -> Result<Float> {
    let prec = ctx.prec();
    let third = Float::with_val(prec, ctx.pi() / 3u32);
    tanh_sinh_result(ctx, &ctx.zero(), &third, |p| {
        let sd = p.from_b.clone().sin();
        let shalf = Float::with_val(prec, &p.from_b / 2u32).sin();
        let u = Float::with_val(prec, sqrt3(prec) * sd) - 2u32 * shalf.square();
        let lsin = if p.from_a < p.from_b {
            Float::with_val(prec, 2u32 * Float::with_val(prec, &p.from_a / 2u32).sin()).ln()
        } else {
            let squar = Float::with_val(prec, &p.from_b / 4u32).sin().square();
            let sin_half = Float::with_val(prec, &p.from_b / 2u32).sin();
            let drop = Float::with_val(prec, sqrt3(prec) * sin_half) + 2u32 * squar;
            (-drop).ln_1p()
        };
        Ok(u.ln().square() * lsin)
    })
}

/// Ls_4(2π/3) assembled from circle-value series only:
/// (31/18)πζ(3) + (π²/12)Cl_2(2π/3) - (3/2)Cl_4(2π/3) + 6Cl_{2,1,1}(2π/3).
fn ls4_two_thirds_series(ctx: &Context) -> Result<Float> {
    let prec = ctx.prec();
    let pi = ctx.pi();
    let two_thirds = Float::with_val(prec, 2u32 * &pi) / 3u32;
    Ok(Float::with_val(prec, &pi * &ctx.zeta(3)) * 31u32 / 18u32
        + Float::with_val(prec, pi.clone().square() * clausen(ctx, &[2], &two_thirds)?) / 12u32
        - clausen(ctx, &[4], &two_thirds)? * 3u32 / 2u32
        + clausen(ctx, &[2, 1, 1], &two_thirds)? * 6u32)
}

fn cl_pi3(ctx: &Context, n: u32) -> Result<Float> {
    let third = Float::with_val(ctx.prec(), ctx.pi() / 3u32);
    clausen(ctx, &[n], &third)
}

fn ls_23_quad(ctx: &Context, n: u32) -> Result<Float> {
    let two_thirds = Float::with_val(ctx.prec(), 2u32 * ctx.pi()) / 3u32;
    ls_quad(ctx, &LsSpec::new(ctx, n, 0, two_thirds)?)
}

fn ti_inv_sqrt3(ctx: &Context, k: u32) -> Result<Float> {
    let x = sqrt3(ctx.prec()).recip();
    ti(ctx, k, &x)
}

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

fn rec(
    id: &'static str,
    status: Status,
    min_digits: u32,
    note: &'static str,
    lhs: Evaluator,
    rhs: Evaluator,
) -> IdentityRecord {
    IdentityRecord { id, status, note, min_digits, lhs, rhs }
}

fn build_registry() -> Vec<IdentityRecord> {
    use Status::{Conjectural, Proven};
    vec![
        rec(
            "mu1-ls",
            Proven,
            45,
            "height-one measure of 1+x+y against the sigma = 2pi/3 log-sine value",
            |ctx| mu_n_finite_diff(ctx, 1),
            |ctx| {
                let prec = ctx.prec();
                let two_thirds = Float::with_val(prec, 2u32 * ctx.pi()) / 3u32;
                let ls2 = ls_quad(ctx, &LsSpec::new(ctx, 2, 0, two_thirds)?)?;
                Ok(ls2 * 3u32 / Float::with_val(prec, 2u32 * ctx.pi()))
            },
        ),
        rec(
            "mu2-ls",
            Proven,
            45,
            "second measure moment of 1+x+y against Ls_3(2pi/3)",
            |ctx| mu_n_finite_diff(ctx, 2),
            |ctx| {
                let prec = ctx.prec();
                let ls3 = ls_23_quad(ctx, 3)?;
                Ok(ls3 * 3u32 / ctx.pi() + Float::with_val(prec, ctx.pi().square()) / 4u32)
            },
        ),
        rec(
            "mu3-conj",
            Conjectural("?[1]"),
            40,
            "third measure moment against Ls_4(2pi/3) and pi/3 circle values",
            |ctx| mu_n_finite_diff(ctx, 3),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(ls_23_quad(ctx, 4)? * 6u32 / &pi
                    - cl_pi3(ctx, 4)? * 9u32 / &pi
                    - Float::with_val(prec, &pi * &cl_pi3(ctx, 2)?) / 4u32
                    - Float::with_val(prec, 13u32 * ctx.zeta(3)) / 2u32)
            },
        ),
        rec(
            "mu3-lsc",
            Proven,
            40,
            "third measure moment through the mixed sine-cosine integral at pi/3",
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, ctx.pi() * mu_n_finite_diff(ctx, 3)?))
            },
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                let third = Float::with_val(prec, &pi / 3u32);
                let lsc = lsc_quad(ctx, &LscSpec::new(ctx, 2, 3, third)?)?;
                Ok(ls_23_quad(ctx, 4)? * 15u32 - lsc * 18u32 - cl_pi3(ctx, 4)? * 15u32
                    - Float::with_val(prec, pi.clone().square() * cl_pi3(ctx, 2)?) / 4u32
                    - Float::with_val(prec, &pi * ctx.zeta(3)) * 17u32)
            },
        ),
        rec(
            "lsc23-conj",
            Conjectural("?[1]"),
            40,
            "reduction of Lsc_{2,3}(pi/3) to Ls_4 values",
            |ctx| {
                let third = Float::with_val(ctx.prec(), ctx.pi() / 3u32);
                Ok(lsc_quad(ctx, &LscSpec::new(ctx, 2, 3, third)?)? * 12u32)
            },
            |ctx| {
                let prec = ctx.prec();
                Ok(ls4_two_thirds_series(ctx)? * 6u32
                    - ls_pi3_closed(ctx, 4)? * 8u32 / 9u32
                    - Float::with_val(prec, ctx.pi() * ctx.zeta(3)) * 59u32 / 9u32)
            },
        ),
        rec(
            "ti4-conj",
            Conjectural("?[1]"),
            40,
            "order-four inverse-tangent integral at 1/sqrt(3) via Ls_4 values",
            |ctx| ti_inv_sqrt3(ctx, 4),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                let l3 = Float::with_val(prec, 3u32).ln();
                Ok(ls4_two_thirds_series(ctx)? * 5u32 / 24u32
                    + ls_pi3_closed(ctx, 4)? * 7u32 / 54u32
                    - Float::with_val(prec, &pi * ctx.zeta(3)) * 59u32 / 216u32
                    - Float::with_val(prec, &pi * l3.clone().pow(3u32)) / 288u32
                    - Float::with_val(prec, &l3 * ti_inv_sqrt3(ctx, 3)?) / 2u32
                    - Float::with_val(prec, l3.square() * ti_inv_sqrt3(ctx, 2)?) / 8u32)
            },
        ),
        rec(
            "mu4-conj",
            Conjectural("?[5]"),
            40,
            "fourth measure moment via Ls_5 and depth-two circle values",
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, ctx.pi() * mu_n_finite_diff(ctx, 4)?))
            },
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                let two_thirds = Float::with_val(prec, 2u32 * &pi) / 3u32;
                let cl2 = cl_pi3(ctx, 2)?;
                Ok(ls_23_quad(ctx, 5)? * 12u32
                    - ls_pi3_closed(ctx, 5)? * 49u32 / 3u32
                    + glaisher(ctx, &[4, 1], &two_thirds)? * 81u32
                    + Float::with_val(prec, pi.clone().square() * glaisher(ctx, &[2, 1], &two_thirds)?)
                        * 3u32
                    + Float::with_val(prec, 2u32 * ctx.zeta(3)) * &cl2
                    + Float::with_val(prec, &pi * cl2.clone().square())
                    - Float::with_val(prec, pi.clone().pow(5u32)) * 29u32 / 90u32)
            },
        ),
        rec(
            "dilog-arc-full",
            Proven,
            40,
            "full-arc average of Re Li_2(4sin^2) equals 2 zeta(2)",
            |ctx| {
                let total = inner_dilog(ctx, true, false, false)?
                    + outer_dilog(ctx, true, false, false)?;
                Ok(total * 4u32 / ctx.pi())
            },
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, ctx.pi().square()) / 3u32)
            },
        ),
        rec(
            "dilog-arc-outer",
            Proven,
            40,
            "outer-arc dilogarithm pair with reciprocal arguments",
            |ctx| outer_dilog(ctx, true, true, false),
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, ctx.pi().pow(3u32)) * 5u32 / 54u32)
            },
        ),
        rec(
            "logdilog-inner-pair",
            Proven,
            40,
            "log-sine weighted dilogarithm pair on the inner arc",
            |ctx| Ok(inner_dilog(ctx, true, true, true)? * 3u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(Float::with_val(prec, 3u32 * ctx.zeta(3)) / 2u32
                    - Float::with_val(prec, &pi * cl_pi3(ctx, 2)?) / 2u32
                    + cl_pi3(ctx, 4)? * 27u32 / Float::with_val(prec, 2u32 * &pi))
            },
        ),
        rec(
            "logdilog-outer-pair",
            Proven,
            40,
            "log-sine weighted dilogarithm pair on the outer arc",
            |ctx| Ok(outer_dilog(ctx, true, true, true)? * 3u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(Float::with_val(prec, 3u32 * ctx.zeta(3))
                    + Float::with_val(prec, &pi * cl_pi3(ctx, 2)?) / 2u32
                    - cl_pi3(ctx, 4)? * 27u32 / Float::with_val(prec, 2u32 * &pi))
            },
        ),
        rec(
            "logdilog-full-direct-conj",
            Conjectural("?[2]"),
            40,
            "log-sine weighted direct dilogarithm over both arcs",
            |ctx| {
                let total = inner_dilog(ctx, true, false, true)?
                    + outer_dilog(ctx, true, false, true)?;
                Ok(total * 3u32 / ctx.pi())
            },
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, 7u32 * ctx.zeta(3)) / 2u32
                    - Float::with_val(prec, ctx.pi() * cl_pi3(ctx, 2)?))
            },
        ),
        rec(
            "logdilog-full-inverse-conj",
            Conjectural("?[2]"),
            40,
            "log-sine weighted reciprocal dilogarithm over both arcs",
            |ctx| {
                let total = inner_dilog(ctx, false, true, true)?
                    + outer_dilog(ctx, false, true, true)?;
                Ok(total * 3u32 / ctx.pi())
            },
            |ctx| {
                let prec = ctx.prec();
                Ok(ctx.zeta(3) + Float::with_val(prec, ctx.pi() * cl_pi3(ctx, 2)?))
            },
        ),
        rec(
            "logdilog-inner-direct-conj",
            Conjectural("?[3]"),
            40,
            "log-sine weighted direct dilogarithm on the inner arc",
            |ctx| Ok(inner_dilog(ctx, true, false, true)? * 3u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(Float::with_val(prec, 7u32 * ctx.zeta(3)) / 6u32
                    - Float::with_val(prec, 11u32 * Float::with_val(prec, &pi * cl_pi3(ctx, 2)?))
                        / 12u32
                    + cl_pi3(ctx, 4)? * 5u32 / &pi)
            },
        ),
        rec(
            "logdilog-outer-inverse",
            Conjectural("?[3]"),
            40,
            "log-sine weighted reciprocal dilogarithm on the outer arc",
            |ctx| Ok(outer_dilog(ctx, false, true, true)? * 3u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(Float::with_val(prec, 2u32 * ctx.zeta(3)) / 3u32
                    + Float::with_val(prec, 7u32 * Float::with_val(prec, &pi * cl_pi3(ctx, 2)?))
                        / 12u32
                    - cl_pi3(ctx, 4)? * 17u32 / Float::with_val(prec, 2u32 * &pi))
            },
        ),
        rec(
            "li21-inner-pair",
            Proven,
            40,
            "depth-two polylogarithm pair on the inner arc",
            |ctx| Ok(inner_li21(ctx, true, true)? * 2u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                let inner = ctx.zeta(3) - Float::with_val(prec, &pi * cl_pi3(ctx, 2)?)
                    + cl_pi3(ctx, 4)? * 6u32 / &pi;
                Ok(inner / 9u32)
            },
        ),
        rec(
            "li21-outer-pair",
            Proven,
            40,
            "depth-two polylogarithm pair on the outer arc",
            |ctx| Ok(outer_li21(ctx, true, true)? * 2u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                let inner = Float::with_val(prec, 2u32 * ctx.zeta(3))
                    - Float::with_val(prec, 5u32 * Float::with_val(prec, &pi * cl_pi3(ctx, 2)?))
                    - cl_pi3(ctx, 4)? * 6u32 / &pi;
                Ok(inner / 9u32)
            },
        ),
        rec(
            "li21-inner-moment",
            Proven,
            40,
            "inner-arc depth-two moment against the squared-log band integral",
            |ctx| Ok(inner_li21(ctx, true, false)? * 2u32 / ctx.pi()),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(Float::with_val(prec, 20u32 * ctx.zeta(3)) / 27u32
                    - Float::with_val(prec, 8u32 * Float::with_val(prec, &pi * cl_pi3(ctx, 2)?))
                        / 27u32
                    + cl_pi3(ctx, 4)? * 4u32 / Float::with_val(prec, 9u32 * &pi)
                    + band_log_moment(ctx)? / &pi)
            },
        ),
        rec(
            "li21-half",
            Proven,
            40,
            "direct depth-two moment over both arcs",
            |ctx| {
                let total = inner_li21(ctx, true, false)? + outer_li21(ctx, true, false)?;
                Ok(total * 2u32 / ctx.pi())
            },
            |ctx| {
                let prec = ctx.prec();
                Ok(ctx.zeta(3) / 3u32
                    - Float::with_val(prec, 2u32 * Float::with_val(prec, ctx.pi() * cl_pi3(ctx, 2)?))
                        / 3u32)
            },
        ),
        rec(
            "ls4-moment-conj",
            Conjectural("?[4]"),
            40,
            "Ls_4(2pi/3) against the squared-log band integral",
            |ctx| Ok(-(ls4_two_thirds_series(ctx)? / ctx.pi())),
            |ctx| {
                let prec = ctx.prec();
                let pi = ctx.pi();
                Ok(-Float::with_val(prec, 37u32 * ctx.zeta(3)) / 54u32
                    - Float::with_val(prec, 7u32 * Float::with_val(prec, &pi * cl_pi3(ctx, 2)?))
                        / 27u32
                    - cl_pi3(ctx, 4)? * 7u32 / Float::with_val(prec, 9u32 * &pi)
                    + band_log_moment(ctx)? / Float::with_val(prec, 2u32 * &pi))
            },
        ),
        rec(
            "beta-moment-sum",
            Proven,
            45,
            "alternating factorial-weighted mixed measures summing to a beta value",
            |ctx| {
                let prec = ctx.prec();
                let mut acc = Float::new(prec);
                for k in 0..=4u32 {
                    let v = mu_mn_symmetric(ctx, k, 4 - k)?;
                    let w = Float::with_val(prec, Float::factorial(k))
                        * Float::with_val(prec, Float::factorial(4 - k));
                    let term = v / w;
                    if k % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                Ok(acc)
            },
            |ctx| Ok(dirichlet_beta(ctx, 5)? * 4u32 / ctx.pi()),
        ),
        rec(
            "cl-shift-2",
            Proven,
            45,
            "Clausen angle shift between pi/3 and 2pi/3 at weight 2",
            |ctx| cl_pi3(ctx, 2),
            |ctx| cl_shift_rhs(ctx, 2),
        ),
        rec(
            "cl-shift-3",
            Proven,
            45,
            "Clausen angle shift between pi/3 and 2pi/3 at weight 3",
            |ctx| cl_pi3(ctx, 3),
            |ctx| cl_shift_rhs(ctx, 3),
        ),
        rec(
            "cl-shift-4",
            Proven,
            45,
            "Clausen angle shift between pi/3 and 2pi/3 at weight 4",
            |ctx| cl_pi3(ctx, 4),
            |ctx| cl_shift_rhs(ctx, 4),
        ),
        rec(
            "cl-shift-5",
            Proven,
            45,
            "Clausen angle shift between pi/3 and 2pi/3 at weight 5",
            |ctx| cl_pi3(ctx, 5),
            |ctx| cl_shift_rhs(ctx, 5),
        ),
        rec(
            "ls3-ext-a",
            Proven,
            40,
            "extended order-three log-sine reduction at theta = pi/5, omega = pi/7",
            |ctx| {
                let prec = ctx.prec();
                let t = Float::with_val(prec, ctx.pi() / 5u32);
                let w = Float::with_val(prec, ctx.pi() / 7u32);
                ls3_extended_quad(ctx, &t, &w)
            },
            |ctx| {
                let prec = ctx.prec();
                let t = Float::with_val(prec, ctx.pi() / 5u32);
                let w = Float::with_val(prec, ctx.pi() / 7u32);
                ls3_extended(ctx, &t, &w)
            },
        ),
        rec(
            "ls3-ext-b",
            Proven,
            40,
            "extended order-three log-sine reduction at theta = 2pi/7, omega = pi/3",
            |ctx| {
                let prec = ctx.prec();
                let t = Float::with_val(prec, 2u32 * ctx.pi()) / 7u32;
                let w = Float::with_val(prec, ctx.pi() / 3u32);
                ls3_extended_quad(ctx, &t, &w)
            },
            |ctx| {
                let prec = ctx.prec();
                let t = Float::with_val(prec, 2u32 * ctx.pi()) / 7u32;
                let w = Float::with_val(prec, ctx.pi() / 3u32);
                ls3_extended(ctx, &t, &w)
            },
        ),
        rec(
            "boyd-catalan",
            Proven,
            35,
            "quadratic family measure at c = 3 equals 16G/(3pi)",
            |ctx| boyd_mu(ctx, &ctx.float(3)),
            |ctx| {
                let prec = ctx.prec();
                Ok(Float::with_val(prec, 16u32 * ctx.catalan())
                    / Float::with_val(prec, 3u32 * ctx.pi()))
            },
        ),
        rec(
            "boyd-clausen",
            Proven,
            30,
            "quadratic family measure at c = -5 equals (20/3pi)Cl_2(pi/3)",
            |ctx| boyd_mu(ctx, &ctx.float(-5)),
            |ctx| {
                let prec = ctx.prec();
                Ok(cl_pi3(ctx, 2)? * 20u32 / Float::with_val(prec, 3u32 * ctx.pi()))
            },
        ),
    ]
}

/// (2^{1-n} + (-1)^n)·Cl_n(2π/3).
fn cl_shift_rhs(ctx: &Context, n: u32) -> Result<Float> {
    let prec = ctx.prec();
    let two_thirds = Float::with_val(prec, 2u32 * ctx.pi()) / 3u32;
    let mut factor = Float::with_val(prec, 2u32).pow(1i32 - n as i32);
    if n % 2 == 0 {
        factor += 1u32;
    } else {
        factor -= 1u32;
    }
    Ok(factor * clausen(ctx, &[n], &two_thirds)?)
}

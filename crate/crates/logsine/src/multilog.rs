//! Multiple polylogarithms `Li_{a_1,…,a_k}(z)`, multiple zeta values, circle
//! values (Clausen and Glaisher functions), and weight-four closed-form
//! reductions.
//!
//! Evaluation strategy by region:
//! - `|z|` small: the defining nested series, truncated by the provable bound
//!   `|z|^N N^depth/(1-|z|)` (streamed multiple harmonic sums, `O(N·depth)`).
//! - real `z` near 1: an expansion in `u = 1-z` and `log u`, built
//!   recursively from the differential structure of the nested sums, with
//!   integration constants supplied by `mzv` (admissible words) or by series
//!   values at `z = 1/2` (words with leading 1s).
//! - `z = 1`: Hölder convolution at 1/2 (`mzv`), plus an independent
//!   Euler–Maclaurin route (`mzv_em`) used for cross-checks.
//! - `|z| = 1`, rational `θ/π`: exact partial sums plus residue-class
//!   Euler–Maclaurin tails (full working precision).
//! - `|z| = 1`, generic `θ`: Levin-accelerated series, certified to ~30
//!   digits only.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::Pow;
use rug::Float;

use crate::asym::{indefinite_sum, osc_tail, real_tail, tail_depth, tail_start, LogPoly};
use crate::error::{Error, Result};
use crate::mpcore::{Context, MpComplex};
use crate::polylog::li_real;
use crate::quad::tanh_sinh;

/// A composition `(a_1, …, a_k)` indexing a multiple polylogarithm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&a| a == 0) {
            return Err(Error::Domain("index entries must be positive".into()));
        }
        Ok(MultiIndex { entries })
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    /// True iff the value at `z = 1` converges (`a_1 ≥ 2`).
    pub fn admissible(&self) -> bool {
        self.entries[0] >= 2
    }
}

pub fn weight(w: &[u32]) -> u32 {
    w.iter().sum()
}

fn validate(w: &[u32]) -> Result<()> {
    if w.is_empty() || w.iter().any(|&a| a == 0) {
        return Err(Error::Domain("index entries must be positive".into()));
    }
    Ok(())
}

/// Terms needed so that `r^N·N^depth/(1-r) ≤ 10^{-digits}` (the provable
/// crude tail bound for the nested series).
fn series_terms_needed(r: f64, depth: u32, digits: f64) -> u64 {
    if r <= 0.0 {
        return 8;
    }
    let lr = -r.ln();
    let target = digits * std::f64::consts::LN_10 - (1.0 - r).ln();
    let mut n = 32.0f64;
    for _ in 0..200 {
        n = (depth as f64 * n.max(2.0).ln() + target) / lr;
    }
    (n.ceil() as u64 + 8).max(8)
}

/// Nested series with real argument, `|x| < 1`.
fn series_real(ctx: &Context, w: &[u32], x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let k = w.len();
    let r = x.clone().abs().to_f64();
    if r >= 0.9951 {
        return Err(Error::Domain("series route requires |x| ≤ 0.995".into()));
    }
    let n_max = series_terms_needed(r, k as u32, ctx.work_digits() as f64 + 5.0);
    let mut inner = vec![Float::new(prec); k + 1];
    inner[k] = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    let mut xp = Float::with_val(prec, 1);
    for n in 1..=n_max {
        xp *= x;
        let nf = Float::with_val(prec, n);
        sum += xp.clone() * &inner[1] * nf.clone().pow(-(w[0] as i32));
        for j in 1..k {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j] as i32)));
            inner[j] += add;
        }
    }
    Ok(sum)
}

/// Nested series with complex argument, `|z| < 1`.
fn series_complex(ctx: &Context, w: &[u32], z: &MpComplex) -> Result<MpComplex> {
    let prec = ctx.prec();
    let k = w.len();
    let r = z.abs().to_f64();
    if r >= 0.9951 {
        return Err(Error::Domain("series route requires |z| ≤ 0.995".into()));
    }
    let n_max = series_terms_needed(r, k as u32, ctx.work_digits() as f64 + 5.0);
    let mut inner = vec![Float::new(prec); k + 1];
    inner[k] = Float::with_val(prec, 1);
    let mut sum = MpComplex::zero(prec);
    let mut zp = MpComplex::new(ctx.float(1), ctx.float(0));
    for n in 1..=n_max {
        zp = zp.mul(z);
        let nf = Float::with_val(prec, n);
        let scale = Float::with_val(prec, &inner[1] * nf.clone().pow(-(w[0] as i32)));
        sum = sum.add(&zp.scale(&scale));
        for j in 1..k {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j] as i32)));
            inner[j] += add;
        }
    }
    Ok(sum)
}

/// Exact multiple harmonic sum `Z_N(w) = Σ_{N ≥ n_1 > … > n_k ≥ 1} Π n_i^{-a_i}`.
fn mhs_exact(prec: u32, w: &[u32], n_up_to: u64) -> Float {
    if w.is_empty() {
        return Float::with_val(prec, 1);
    }
    let k = w.len();
    let mut inner = vec![Float::new(prec); k + 1];
    inner[k] = Float::with_val(prec, 1);
    for n in 1..=n_up_to {
        let nf = Float::with_val(prec, n);
        for j in 0..k {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j] as i32)));
            inner[j] += add;
        }
    }
    inner.swap_remove(0)
}

/// Binary encoding of a composition: `a ↦ 0^{a-1} 1`, concatenated.
fn to_binary(w: &[u32]) -> Vec<u8> {
    let mut b = Vec::with_capacity(weight(w) as usize);
    for &a in w {
        for _ in 1..a {
            b.push(0);
        }
        b.push(1);
    }
    b
}

/// Inverse of `to_binary`; the word must end in 1.
fn from_binary(b: &[u8]) -> Vec<u32> {
    let mut w = Vec::new();
    let mut zeros = 0u32;
    for &bit in b {
        if bit == 0 {
            zeros += 1;
        } else {
            w.push(zeros + 1);
            zeros = 0;
        }
    }
    debug_assert_eq!(zeros, 0);
    w
}

fn mzv_cache() -> &'static RwLock<HashMap<(Vec<u32>, u32), Float>> {
    static CACHE: OnceLock<RwLock<HashMap<(Vec<u32>, u32), Float>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Multiple zeta value `ζ(w) = Li_w(1)` by the Hölder convolution at 1/2:
/// with the binary word `b` of length `n`, `ζ(w)` equals
/// `Σ_{j=0}^n Li_{rev-flip(b_1..b_j)}(1/2) · Li_{(b_{j+1}..b_n)}(1/2)`.
pub fn mzv(ctx: &Context, w: &[u32]) -> Result<Float> {
    validate(w)?;
    if w[0] < 2 {
        return Err(Error::Domain("zeta value diverges unless a_1 ≥ 2".into()));
    }
    let prec = ctx.prec();
    let key = (w.to_vec(), prec);
    if let Some(v) = mzv_cache().read().expect("mzv cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let b = to_binary(w);
    let n = b.len();
    let half = ctx.float(1) / 2u32;
    let mut total = Float::new(prec);
    for j in 0..=n {
        let left: Vec<u8> = b[..j].iter().rev().map(|&x| 1 - x).collect();
        let right = &b[j..];
        let lv = if left.is_empty() {
            Float::with_val(prec, 1)
        } else {
            series_real(ctx, &from_binary(&left), &half)?
        };
        let rv = if right.is_empty() {
            Float::with_val(prec, 1)
        } else {
            series_real(ctx, &from_binary(right), &half)?
        };
        total += lv * rv;
    }
    mzv_cache().write().expect("mzv cache poisoned").insert(key, total.clone());
    Ok(total)
}

/// Asymptotic expansion (in `log N`, `1/N`) of `Z_{N-1}(rest)`, constant
/// matched against the exact sum at `N = n0`.
fn inner_expansion(ctx: &Context, rest: &[u32], n0: u64, dmax: usize) -> LogPoly {
    let prec = ctx.prec();
    if rest.is_empty() {
        return LogPoly::constant(prec, Float::with_val(prec, 1), 0, dmax);
    }
    let e_rest = inner_expansion(ctx, &rest[1..], n0, dmax);
    let g = e_rest.shift_d(rest[0] as usize, dmax);
    let f0 = indefinite_sum(prec, &g, dmax);
    let exact = mhs_exact(prec, rest, n0 - 1);
    let c = exact - f0.eval(n0);
    let mut e = f0;
    e.c[0][0] += c;
    e
}

/// Independent `ζ(w)` route: exact partial sums plus Euler–Maclaurin tails.
pub fn mzv_em(ctx: &Context, w: &[u32]) -> Result<Float> {
    validate(w)?;
    if w[0] < 2 {
        return Err(Error::Domain("zeta value diverges unless a_1 ≥ 2".into()));
    }
    let prec = ctx.prec();
    let n0 = tail_start(ctx);
    let dmax = tail_depth(ctx, n0);
    let e = inner_expansion(ctx, &w[1..], n0, dmax);
    let k = w.len();
    let mut inner = vec![Float::new(prec); k];
    inner[k - 1] = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    for n in 1..n0 {
        let nf = Float::with_val(prec, n);
        sum += inner[0].clone() * nf.clone().pow(-(w[0] as i32));
        for j in 0..k - 1 {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j + 1] as i32)));
            inner[j] += add;
        }
    }
    for (i, row) in e.c.iter().enumerate() {
        for (d, v) in row.iter().enumerate() {
            if !v.is_zero() {
                sum += v.clone() * real_tail(ctx, w[0] + d as u32, i as u32, n0)?;
            }
        }
    }
    Ok(sum)
}

fn circle_cache() -> &'static RwLock<HashMap<(Vec<u32>, u64, u64, u32), MpComplex>> {
    static CACHE: OnceLock<RwLock<HashMap<(Vec<u32>, u64, u64, u32), MpComplex>>> =
        OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Li_w(e^{iπq/p})` (reduced `q/p`, `0 < q < 2p`) to full working precision,
/// by exact partial sums plus residue-class Euler–Maclaurin tails.
pub fn circle_li(ctx: &Context, w: &[u32], q: u64, p: u64) -> Result<MpComplex> {
    validate(w)?;
    if w[0] < 2 {
        return Err(Error::Domain("non-admissible index on the unit circle".into()));
    }
    let g = gcd(q, p);
    let (q, p) = (q / g, p / g);
    if q == 0 || q >= 2 * p {
        return Err(Error::Domain("angle must lie strictly inside (0, 2π)".into()));
    }
    let prec = ctx.prec();
    let key = (w.to_vec(), q, p, prec);
    if let Some(v) = circle_cache().read().expect("circle cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let n0 = tail_start(ctx);
    let dmax = tail_depth(ctx, n0);
    let e = inner_expansion(ctx, &w[1..], n0, dmax);
    let k = w.len();
    let theta = ctx.pi() * Float::with_val(prec, q) / Float::with_val(prec, p);
    let z = MpComplex::unit(&theta);
    let mut inner = vec![Float::new(prec); k];
    inner[k - 1] = Float::with_val(prec, 1);
    let mut sum = MpComplex::zero(prec);
    let mut zp = MpComplex::new(ctx.float(1), ctx.float(0));
    for n in 1..n0 {
        zp = zp.mul(&z);
        let nf = Float::with_val(prec, n);
        let scale = Float::with_val(prec, &inner[0] * nf.clone().pow(-(w[0] as i32)));
        sum = sum.add(&zp.scale(&scale));
        for j in 0..k - 1 {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j + 1] as i32)));
            inner[j] += add;
        }
    }
    for (i, row) in e.c.iter().enumerate() {
        for (d, v) in row.iter().enumerate() {
            if !v.is_zero() {
                let tail = osc_tail(ctx, q as i64, p, w[0] + d as u32, i as u32, n0)?;
                sum = sum.add(&tail.scale(v));
            }
        }
    }
    circle_cache().write().expect("circle cache poisoned").insert(key, sum.clone());
    Ok(sum)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

/// Levin u-accelerated boundary series for `Li_w(e^{iθ})`, generic `θ`.
/// Certified to roughly 30 digits only; callers gate on target precision.
pub fn circle_levin(ctx: &Context, w: &[u32], theta: &Float) -> Result<MpComplex> {
    validate(w)?;
    if w[0] < 2 {
        return Err(Error::Domain("non-admissible index on the unit circle".into()));
    }
    let prec = ctx.prec() + 128;
    let k = w.len();
    let z = {
        let t = Float::with_val(prec, theta);
        MpComplex::unit(&t)
    };
    let n_terms = 420usize;
    let mut partials = Vec::with_capacity(n_terms);
    let mut terms = Vec::with_capacity(n_terms);
    let mut inner = vec![Float::new(prec); k];
    inner[k - 1] = Float::with_val(prec, 1);
    let mut zp = MpComplex::new(Float::with_val(prec, 1), Float::new(prec));
    let mut s = MpComplex::zero(prec);
    for n in 1..=n_terms as u64 {
        zp = zp.mul(&z);
        let nf = Float::with_val(prec, n);
        let scale = Float::with_val(prec, &inner[0] * nf.clone().pow(-(w[0] as i32)));
        let term = zp.scale(&scale);
        s = s.add(&term);
        terms.push(term);
        partials.push(s.clone());
        for j in 0..k - 1 {
            let add = Float::with_val(prec, &inner[j + 1] * nf.clone().pow(-(w[j + 1] as i32)));
            inner[j] += add;
        }
    }
    // Levin u-transform with remainder estimates ω_n = (n+1)·a_n.
    let n0 = 8usize;
    let mut best = partials[n_terms - 1].clone();
    let mut best_err = Float::with_val(prec, 1);
    let mut prev: Option<MpComplex> = None;
    for kk in 3..90usize {
        let mut num = MpComplex::zero(prec);
        let mut den = MpComplex::zero(prec);
        let mut binom = Float::with_val(prec, 1);
        for j in 0..=kk {
            let idx = n0 + j;
            let cfac = Float::with_val(prec, idx as u32 + 1).pow((kk as u32).saturating_sub(1));
            let omega = terms[idx].scale(&Float::with_val(prec, idx as u32 + 1));
            let winv = omega.recip();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let fac = Float::with_val(prec, &binom * &cfac) * sign;
            num = num.add(&partials[idx].mul(&winv).scale(&fac));
            den = den.add(&winv.scale(&fac));
            binom = binom * Float::with_val(prec, (kk - j) as u32)
                / Float::with_val(prec, j as u32 + 1);
        }
        let t = num.div(&den);
        if let Some(pv) = &prev {
            let err = t.sub(pv).abs();
            if err < best_err {
                best_err = err.clone();
                best = t.clone();
            }
        }
        prev = Some(t);
    }
    let achieved = -best_err.to_f64().log10();
    let needed = (ctx.target_digits() as f64).min(30.0) + 2.0;
    if !achieved.is_finite() || achieved < needed {
        return Err(Error::Convergence(format!(
            "accelerated boundary series reached only {achieved:.0} digits"
        )));
    }
    Ok(MpComplex::new(
        Float::with_val(ctx.prec(), &best.re),
        Float::with_val(ctx.prec(), &best.im),
    ))
}

/// Expansion of `Li_w(1-u)` as polynomial rows over `log^i u · u^j`.
struct UExp {
    rows: Vec<Vec<Float>>,
}

impl UExp {
    fn eval(&self, prec: u32, u: &Float) -> Float {
        let lu = u.clone().ln();
        let mut acc = Float::new(prec);
        for (i, row) in self.rows.iter().enumerate() {
            // Horner in u.
            let mut h = Float::new(prec);
            for c in row.iter().rev() {
                h = h * u + c;
            }
            acc += h * lu.clone().pow(i as u32);
        }
        acc
    }
}

fn uexp_cache() -> &'static RwLock<HashMap<(Vec<u32>, u32, usize), Arc<UExp>>> {
    static CACHE: OnceLock<RwLock<HashMap<(Vec<u32>, u32, usize), Arc<UExp>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Truncation order for the `u = 1-z` expansion; the integration constants
/// are matched at `u = 1/2`, so the order must clear the tolerance at 1/2.
fn uexp_order(ctx: &Context) -> usize {
    let m = ((ctx.work_digits() as f64 + 8.0) * std::f64::consts::LN_10
        / std::f64::consts::LN_2)
        .ceil() as usize
        + 8;
    m.div_ceil(64) * 64
}

fn uexp_build(ctx: &Context, w: &[u32], m: usize) -> Result<Arc<UExp>> {
    let prec = ctx.prec();
    let key = (w.to_vec(), prec, m);
    if let Some(e) = uexp_cache().read().expect("uexp cache poisoned").get(&key) {
        return Ok(e.clone());
    }
    let built = if w.is_empty() {
        let mut rows = vec![vec![Float::new(prec); m + 1]];
        rows[0][0] = Float::with_val(prec, 1);
        UExp { rows }
    } else if w[0] == 1 {
        // d/dz Li_w = Li_{w'}/(1-z): integrate E_{w'}(v)/v from 1/2, where
        // the constant is Li_w(1/2) + F(1/2).
        let er = uexp_build(ctx, &w[1..], m)?;
        let mut f = vec![vec![Float::new(prec); m + 1]; er.rows.len() + 1];
        for (i, row) in er.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if j == 0 {
                    f[i + 1][0] += Float::with_val(prec, c / Float::with_val(prec, i as u32 + 1));
                } else {
                    // ∫ v^{j-1} log^i v dv = v^j Σ_t (-1)^{i-t}(i!/t!) log^t v / j^{i-t+1}
                    let mut iofr = Float::with_val(prec, 1);
                    for t in (0..=i).rev() {
                        let denom = Float::with_val(prec, j as u32).pow((i - t) as u32 + 1);
                        let signed = if (i - t) % 2 == 0 { 1 } else { -1 };
                        f[t][j] += Float::with_val(prec, c * &iofr) * signed / denom;
                        if t > 0 {
                            iofr *= Float::with_val(prec, t as u32);
                        }
                    }
                }
            }
        }
        let half = ctx.float(1) / 2u32;
        let f_half = UExp { rows: f.clone() }.eval(prec, &half);
        let li_half = series_real(ctx, w, &half)?;
        let mut rows: Vec<Vec<Float>> = f
            .into_iter()
            .map(|row| row.into_iter().map(|c| -c).collect())
            .collect();
        rows[0][0] += li_half + f_half;
        UExp { rows }
    } else {
        // d/dz Li_w = Li_{dec}/z: Li_w(1-u) = ζ(w) - ∫_0^u E_dec(v)/(1-v) dv.
        let mut dec = w.to_vec();
        dec[0] -= 1;
        let ed = uexp_build(ctx, &dec, m)?;
        // Multiply by 1/(1-v): cumulative sums along powers of v.
        let mut t_rows = vec![vec![Float::new(prec); m + 1]; ed.rows.len()];
        for (i, row) in ed.rows.iter().enumerate() {
            let mut run = Float::new(prec);
            for (j, c) in row.iter().enumerate() {
                run += c;
                if j + 1 <= m {
                    // ∫_0^u v^j log^i v dv, with coefficient `run` at (i, j).
                    let mut iofr = Float::with_val(prec, 1);
                    for t in (0..=i).rev() {
                        let denom = Float::with_val(prec, j as u32 + 1).pow((i - t) as u32 + 1);
                        let signed = if (i - t) % 2 == 0 { 1 } else { -1 };
                        t_rows[t][j + 1] += Float::with_val(prec, &run * &iofr) * signed / denom;
                        if t > 0 {
                            iofr *= Float::with_val(prec, t as u32);
                        }
                    }
                }
            }
        }
        let mut rows: Vec<Vec<Float>> = t_rows
            .into_iter()
            .map(|row| row.into_iter().map(|c| -c).collect())
            .collect();
        rows[0][0] += mzv(ctx, w)?;
        UExp { rows }
    };
    let arc = Arc::new(built);
    uexp_cache().write().expect("uexp cache poisoned").insert(key, arc.clone());
    Ok(arc)
}

/// `Li_w(x)` for real `-0.995 ≤ x ≤ 1` (`x = 1` requires admissibility).
pub fn multi_li_real(ctx: &Context, w: &[u32], x: &Float) -> Result<Float> {
    validate(w)?;
    let prec = ctx.prec();
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    if *x == 1u32 {
        return mzv(ctx, w);
    }
    if !x.is_finite() || *x > 1u32 || *x < -1i32 {
        return Err(Error::Domain("real argument must lie in [-1, 1]".into()));
    }
    let threshold = Float::with_val(prec, 0.72f64);
    if *x > threshold {
        let u = Float::with_val(prec, 1 - x.clone());
        let e = uexp_build(ctx, w, uexp_order(ctx))?;
        return Ok(e.eval(prec, &u));
    }
    if *x == -1i32 {
        if w[0] < 2 {
            return Err(Error::Domain("non-admissible index at x = -1".into()));
        }
        return Ok(circle_li(ctx, w, 1, 1)?.re);
    }
    series_real(ctx, w, x)
}

/// `Li_w(z)` with the region dispatch described in the module docs.
pub fn multi_li(ctx: &Context, w: &[u32], z: &MpComplex) -> Result<MpComplex> {
    validate(w)?;
    let prec = ctx.prec();
    if z.im.is_zero() {
        return Ok(MpComplex::new(multi_li_real(ctx, w, &z.re)?, ctx.float(0)));
    }
    let r = z.abs();
    let circle_tol = Float::with_val(prec, 10).pow(-((ctx.work_digits() - 6) as i32));
    if (r.clone() - 1u32).abs() < circle_tol {
        let mut theta = z.arg();
        if theta < 0u32 {
            theta += 2u32 * ctx.pi();
        }
        return circle_value(ctx, w, &theta);
    }
    if r < 1u32 {
        return series_complex(ctx, w, z);
    }
    Err(Error::Domain("argument outside the closed unit disc".into()))
}

/// Detect `θ = qπ/p` with small `p` at working accuracy.
pub fn detect_pi_rational(ctx: &Context, theta: &Float) -> Option<(u64, u64)> {
    let prec = ctx.prec();
    let r = Float::with_val(prec, theta / ctx.pi());
    let tol = Float::with_val(prec, 10).pow(-((ctx.work_digits() as i32) - 6));
    let mut x = r.clone();
    let (mut h0, mut h1) = (1i64, x.clone().floor().to_f64() as i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    for _ in 0..64 {
        let approx = Float::with_val(prec, &r - Float::with_val(prec, h1) / Float::with_val(prec, k1))
            .abs();
        if approx < tol {
            if h1 <= 0 || k1 <= 0 {
                return None;
            }
            return Some((h1 as u64, k1 as u64));
        }
        let frac = Float::with_val(prec, &x - x.clone().floor());
        if frac.clone().abs() < tol {
            return None;
        }
        x = frac.recip();
        let a = x.clone().floor().to_f64();
        if !a.is_finite() || a > 1e12 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1).and_then(|v| v.checked_add(h0))?;
        let k2 = a.checked_mul(k1).and_then(|v| v.checked_add(k0))?;
        if k2 > 240 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

/// Full complex value on the unit circle: exact engine for rational `θ/π`
/// (or the zeta expansion at depth 1), accelerated fallback otherwise.
fn circle_value(ctx: &Context, w: &[u32], theta: &Float) -> Result<MpComplex> {
    let prec = ctx.prec();
    let two_pi = 2u32 * ctx.pi();
    let wtol = ctx.work_tolerance();
    if theta.clone().abs() < wtol || (theta.clone() - &two_pi).abs() < wtol {
        if w[0] < 2 {
            return Err(Error::Domain("non-admissible index at z = 1".into()));
        }
        return Ok(MpComplex::new(mzv(ctx, w)?, ctx.float(0)));
    }
    if *theta < 0u32 || *theta > two_pi {
        return Err(Error::Domain("θ must lie in [0, 2π]".into()));
    }
    if w.len() == 1 {
        if w[0] < 2 {
            return Err(Error::Domain("Li_1 diverges on the boundary at z = 1".into()));
        }
        let z = MpComplex::unit(&Float::with_val(prec, theta));
        return crate::polylog::li_complex(ctx, w[0], &z);
    }
    if let Some((q, p)) = detect_pi_rational(ctx, theta) {
        return circle_li(ctx, w, q, p);
    }
    if ctx.target_digits() > 30 {
        return Err(Error::Precision(
            "generic-angle boundary values are certified to 30 digits only; \
             use a rational multiple of π for full precision"
                .into(),
        ));
    }
    circle_levin(ctx, w, theta)
}

/// Clausen value: the parity-selected part of `Li_w(e^{iθ})`
/// (imaginary part for even weight, real part for odd).
pub fn clausen(ctx: &Context, w: &[u32], theta: &Float) -> Result<Float> {
    let v = circle_value(ctx, w, theta)?;
    Ok(if weight(w) % 2 == 0 { v.im } else { v.re })
}

/// Glaisher value: the complementary part (real for even weight).
pub fn glaisher(ctx: &Context, w: &[u32], theta: &Float) -> Result<Float> {
    let v = circle_value(ctx, w, theta)?;
    Ok(if weight(w) % 2 == 0 { v.re } else { v.im })
}

/// `Li_{2,1}` closed form:
/// `½ log²(1-x) log x + log(1-x) Li_2(1-x) - Li_3(1-x) + ζ(3)`.
fn z21_closed(ctx: &Context, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let om = Float::with_val(prec, 1 - x.clone());
    let l1 = om.clone().ln();
    let lx = x.clone().ln();
    Ok(l1.clone().square() * &lx / 2u32 + l1 * li_real(ctx, 2, &om)? - li_real(ctx, 3, &om)?
        + ctx.zeta(3))
}

/// `Li_{1,2}` closed form.
fn li12_closed(ctx: &Context, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let om = Float::with_val(prec, 1 - x.clone());
    let l1 = om.clone().ln();
    let lx = x.clone().ln();
    Ok(2u32 * li_real(ctx, 3, &om)? - l1.clone() * li_real(ctx, 2, x)?
        - 2u32 * l1.clone() * li_real(ctx, 2, &om)?
        - l1.square() * lx
        - 2u32 * ctx.zeta(3))
}

/// `Li_{2,2}` closed form (weight four, depth one polylogarithms only).
fn li22_closed(ctx: &Context, t: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let om = Float::with_val(prec, 1 - t.clone());
    let l1 = om.clone().ln();
    let lt = t.clone().ln();
    let ratio = Float::with_val(prec, -(t.clone() / &om));
    let li2t = li_real(ctx, 2, t)?;
    Ok(-l1.clone().pow(4u32) / 12u32 + l1.clone().pow(3u32) * &lt / 3u32
        - ctx.zeta(2) * l1.clone().square()
        + 2u32 * l1.clone() * li_real(ctx, 3, t)?
        - 2u32 * ctx.zeta(3) * &l1
        - 2u32 * li_real(ctx, 4, t)?
        - 2u32 * li_real(ctx, 4, &ratio)?
        + 2u32 * li_real(ctx, 4, &om)?
        - 2u32 * ctx.zeta(4)
        + li2t.square() / 2u32)
}

/// `Li_{2,{1}_{n-1}}` closed form:
/// `ζ(n+1) - Σ_{m=0}^n (-1)^{n-m}/(n-m)!·log^{n-m}(1-x)·Li_{m+1}(1-x)`.
fn li2ones_closed(ctx: &Context, n: u32, x: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let om = Float::with_val(prec, 1 - x.clone());
    let l1 = om.clone().ln();
    let mut acc = ctx.zeta(n + 1);
    for m in 0..=n {
        let sign = if (n - m) % 2 == 0 { 1 } else { -1 };
        let fact = Float::with_val(prec, Float::factorial(n - m));
        let li = if m == 0 {
            -x.clone().ln()
        } else {
            li_real(ctx, m + 1, &om)?
        };
        acc -= Float::with_val(prec, l1.clone().pow(n - m) * sign) * li / fact;
    }
    Ok(acc)
}

/// Closed-form reductions for the supported low-weight families; everything
/// is expressed through classical `Li_k` and logarithms.
pub fn reduce_low_weight(ctx: &Context, w: &[u32], x: &Float) -> Result<Float> {
    validate(w)?;
    if !(*x > 0u32 && *x < 1u32) {
        return Err(Error::Domain("reduction requires 0 < x < 1".into()));
    }
    let prec = ctx.prec();
    match w {
        [2, 1] => z21_closed(ctx, x),
        [1, 2] => li12_closed(ctx, x),
        [2, 2] => li22_closed(ctx, x),
        [3, 1] => {
            let li2 = li_real(ctx, 2, x)?;
            Ok(li2.square() / 4u32 - li22_closed(ctx, x)? / 2u32)
        }
        [2, 1, 1] => li2ones_closed(ctx, 3, x),
        _ if w.iter().all(|&a| a == 1) => {
            let n = w.len() as u32;
            let om = Float::with_val(prec, 1 - x.clone());
            let val = Float::with_val(prec, (-om.ln()).pow(n))
                / Float::with_val(prec, Float::factorial(n));
            Ok(val)
        }
        [2, rest @ ..] if rest.iter().all(|&a| a == 1) => {
            li2ones_closed(ctx, w.len() as u32, x)
        }
        _ => Err(Error::UnsupportedReduction(format!(
            "no closed reduction for index {w:?}"
        ))),
    }
}

/// `Re Li_{2,1}(1/x)` for `0 < x < 1`, from the reflection
/// `Re Li_{2,1}(1/x) + Li_{2,1}(x) = ζ(3) - log³x/6 + π²log x/2
///  - Li_2(x)·log x + Li_3(x)`.
pub fn li21_reflection(ctx: &Context, x: &Float) -> Result<Float> {
    if !(*x > 0u32 && *x < 1u32) {
        return Err(Error::Domain("reflection requires 0 < x < 1".into()));
    }
    let prec = ctx.prec();
    let lx = x.clone().ln();
    let pi2 = ctx.pi().square();
    let rhs = ctx.zeta(3) - lx.clone().pow(3u32) / 6u32 + Float::with_val(prec, &pi2 * &lx) / 2u32
        - li_real(ctx, 2, x)? * &lx
        + li_real(ctx, 3, x)?;
    Ok(rhs - z21_closed(ctx, x)?)
}

/// Quadrature route for `Re Li_{2,1}(y)`, `y > 1`:
/// `∫_0^1 log²(1-t)/(2t) dt + ∫_1^y (log²(t-1) - π²)/(2t) dt`.
pub fn li21_upper_quad(ctx: &Context, y: &Float) -> Result<Float> {
    if !(*y > 1u32) {
        return Err(Error::Domain("quadrature route requires y > 1".into()));
    }
    let prec = ctx.prec();
    let pi2 = ctx.pi().square();
    let p1 = tanh_sinh(ctx, &ctx.float(0), &ctx.float(1), |p| {
        if p.from_a.is_zero() {
            Float::new(prec)
        } else {
            Float::with_val(prec, p.from_b.clone().ln().square() / (2u32 * p.from_a.clone()))
        }
    })?;
    let p2 = tanh_sinh(ctx, &ctx.float(1), y, |p| {
        let num = p.from_a.clone().ln().square() - &pi2;
        Float::with_val(prec, num / (2u32 * p.x.clone()))
    })?;
    Ok(p1 + p2)
}

/// `Re Li_2(α)` for `α > 1`: `2ζ(2) - Li_2(1/α) - ½log²α`.
pub fn dilog_inversion(ctx: &Context, alpha: &Float) -> Result<Float> {
    if !(*alpha > 1u32) {
        return Err(Error::Domain("inversion requires α > 1".into()));
    }
    let prec = ctx.prec();
    let inv = Float::with_val(prec, alpha.clone().recip());
    Ok(2u32 * ctx.zeta(2) - li_real(ctx, 2, &inv)? - alpha.clone().ln().square() / 2u32)
}

//! Log-sine integrals `Ls_n(σ)`, their moments `Ls_n^{(k)}(σ)`, log-sine-cosine
//! integrals `Lsc_{m,n}(σ)`, the extended `Ls_3(θ,ω)`, and a solver recovering
//! Clausen/Glaisher constants at π/3 and 2π/3 from log-sine values.
//!
//! Quadrature routes use tanh-sinh panels split where a log factor vanishes
//! (|2 sin(θ/2)| = 1 at θ = π/3, 5π/3; |2 cos(θ/2)| = 1 at 2π/3, 4π/3) or
//! blows up (θ = 0, π, 2π). Closed forms at σ = π come from Taylor
//! coefficients of Gamma-function generating functions; the moment extractor
//! sums a binomial series exactly up to the tail start and disposes of the
//! rest with Euler–Maclaurin residue tails.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;
use rug::Float;

use crate::asym::{
    harmonic_expansion, harmonic_k_expansion, osc_tail, real_tail, tail_depth, tail_start,
    LogPoly,
};
use crate::error::{Error, Result};
use crate::mpcore::{Context, MpComplex};
use crate::multilog::{clausen, glaisher};
use crate::polylog::li_complex;
use crate::quad::tanh_sinh;
use crate::series;

/// Order, moment and endpoint of a log-sine integral `Ls_n^{(k)}(σ)`.
#[derive(Debug, Clone)]
pub struct LsSpec {
    pub n: u32,
    pub k: u32,
    pub sigma: Float,
}

impl LsSpec {
    pub fn new(ctx: &Context, n: u32, k: u32, sigma: Float) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("order n must be at least 1".into()));
        }
        if k + 1 > n {
            return Err(Error::Domain("moment k must satisfy k ≤ n-1".into()));
        }
        let two_pi = 2u32 * ctx.pi();
        if !(sigma >= 0u32 && sigma <= two_pi) {
            return Err(Error::Domain("σ must lie in [0, 2π]".into()));
        }
        Ok(LsSpec { n, k, sigma })
    }
}

/// Orders and endpoint of a log-sine-cosine integral `Lsc_{m,n}(σ)`.
#[derive(Debug, Clone)]
pub struct LscSpec {
    pub m: u32,
    pub n: u32,
    pub sigma: Float,
}

impl LscSpec {
    pub fn new(ctx: &Context, m: u32, n: u32, sigma: Float) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::Domain("orders must be at least 1".into()));
        }
        let two_pi = 2u32 * ctx.pi();
        if !(sigma >= 0u32 && sigma <= two_pi) {
            return Err(Error::Domain("σ must lie in [0, 2π]".into()));
        }
        Ok(LscSpec { m, n, sigma })
    }
}

/// Panel edges: 0, σ and every cut point (multiples of π/3 where some log
/// factor vanishes or becomes singular) strictly inside (0, σ).
fn panel_edges(ctx: &Context, sigma: &Float) -> Vec<Float> {
    let prec = ctx.prec();
    let pi = ctx.pi();
    let mut edges = vec![ctx.zero()];
    for sixth in 1..=5u32 {
        let cut = Float::with_val(prec, &pi * sixth) / 3u32;
        let gap = Float::with_val(prec, sigma - &cut);
        if cut < *sigma && gap > 1e-3 {
            edges.push(cut);
        }
    }
    edges.push(sigma.clone());
    edges
}

/// |2 sin(θ/2)|, stable near both θ = 0 and θ = 2π, where the quadrature
/// abscissa may round onto the endpoint; the cancellation-free distances
/// must be used there instead.
fn abs_two_sin_half(
    prec: u32,
    x: &Float,
    dist_to_zero: Option<&Float>,
    dist_to_two_pi: Option<&Float>,
) -> Float {
    if let Some(d) = dist_to_zero {
        if *d < 1u32 {
            return Float::with_val(prec, d / 2u32).sin() * 2u32;
        }
    }
    if let Some(d) = dist_to_two_pi {
        if *d < 1u32 {
            return Float::with_val(prec, d / 2u32).sin() * 2u32;
        }
    }
    Float::with_val(prec, x / 2u32).sin().abs() * 2u32
}

/// |2 cos(θ/2)|, stable near θ = π where it vanishes.
fn abs_two_cos_half(prec: u32, x: &Float, dist_to_pi: &Float) -> Float {
    if dist_to_pi.clone().abs() < 1u32 {
        Float::with_val(prec, dist_to_pi / 2u32).sin().abs() * 2u32
    } else {
        Float::with_val(prec, x / 2u32).cos().abs() * 2u32
    }
}

/// `Ls_n^{(k)}(σ) = -∫_0^σ θ^k log^{n-1-k}|2 sin(θ/2)| dθ` by tanh-sinh
/// quadrature on the panel decomposition.
pub fn ls_quad(ctx: &Context, spec: &LsSpec) -> Result<Float> {
    let prec = ctx.prec();
    let logpow = spec.n - 1 - spec.k;
    let two_pi = 2u32 * ctx.pi();
    let edges = panel_edges(ctx, &spec.sigma);
    let mut total = Float::new(prec);
    for w in edges.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(b > a) {
            continue;
        }
        let top_gap = Float::with_val(prec, &two_pi - b).abs();
        let ends_at_top = top_gap < 1e-30;
        let starts_at_zero = a.is_zero();
        let val = tanh_sinh(ctx, a, b, |p| {
            let s = abs_two_sin_half(
                prec,
                &p.x,
                if starts_at_zero { Some(&p.from_a) } else { None },
                if ends_at_top { Some(&p.from_b) } else { None },
            );
            let mut f = if logpow == 0 {
                Float::with_val(prec, 1)
            } else {
                s.ln().pow(logpow)
            };
            if spec.k > 0 {
                f *= p.x.clone().pow(spec.k);
            }
            f
        })?;
        total += val;
    }
    Ok(-total)
}

/// `Lsc_{m,n}(σ) = -∫_0^σ log^{m-1}|2 sin(θ/2)| log^{n-1}|2 cos(θ/2)| dθ`.
pub fn lsc_quad(ctx: &Context, spec: &LscSpec) -> Result<Float> {
    let prec = ctx.prec();
    let (ps, pc) = (spec.m - 1, spec.n - 1);
    let pi = ctx.pi();
    let two_pi = 2u32 * ctx.pi();
    let edges = panel_edges(ctx, &spec.sigma);
    let mut total = Float::new(prec);
    for w in edges.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(b > a) {
            continue;
        }
        let top_gap = Float::with_val(prec, &two_pi - b).abs();
        let ends_at_top = top_gap < 1e-30;
        let starts_at_zero = a.is_zero();
        let a_at_pi = Float::with_val(prec, a - &pi).abs() < 1e-30;
        let b_at_pi = Float::with_val(prec, b - &pi).abs() < 1e-30;
        let val = tanh_sinh(ctx, a, b, |p| {
            let mut f = Float::with_val(prec, 1);
            if ps > 0 {
                let s = abs_two_sin_half(
                    prec,
                    &p.x,
                    if starts_at_zero { Some(&p.from_a) } else { None },
                    if ends_at_top { Some(&p.from_b) } else { None },
                );
                f *= s.ln().pow(ps);
            }
            if pc > 0 {
                let dist = if a_at_pi {
                    p.from_a.clone()
                } else if b_at_pi {
                    p.from_b.clone()
                } else {
                    Float::with_val(prec, &p.x - &pi)
                };
                let c = abs_two_cos_half(prec, &p.x, &dist);
                f *= c.ln().pow(pc);
            }
            f
        })?;
        total += val;
    }
    Ok(-total)
}

fn ls_pi_cache() -> &'static RwLock<HashMap<u32, Vec<Float>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<Float>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Ls_n(π)` for 1 ≤ n ≤ 12 from the exponential generating function
/// `-(1/π) Σ_m Ls_{m+1}(π) u^m/m! = Γ(1+u)/Γ²(1+u/2)`.
pub fn ls_pi_closed(ctx: &Context, n: u32) -> Result<Float> {
    if !(1..=12).contains(&n) {
        return Err(Error::UnsupportedReduction(
            "closed form available for 1 ≤ n ≤ 12 only".into(),
        ));
    }
    let prec = ctx.prec();
    let order = 12usize;
    let cached = ls_pi_cache().read().expect("cache poisoned").get(&prec).cloned();
    let coeffs = {
        if let Some(c) = cached {
            c
        } else {
            let lg1 = series::lngamma1p(ctx, order);
            let lg_half = series::scale_var(prec, &lg1, &(ctx.float(1) / 2u32));
            let mut logs = lg1;
            for (c, h) in logs.iter_mut().zip(lg_half.iter()) {
                *c -= Float::with_val(prec, 2u32 * h);
            }
            let c = series::exp(prec, &logs);
            ls_pi_cache().write().expect("cache poisoned").insert(prec, c.clone());
            c
        }
    };
    let m = (n - 1) as usize;
    let mut fact = Float::with_val(prec, 1);
    for i in 2..=m {
        fact *= Float::with_val(prec, i as u32);
    }
    Ok(-(ctx.pi() * fact) * &coeffs[m])
}

type Biv = Vec<Vec<MpComplex>>;

fn biv_zero(prec: u32, rows: usize, cols: usize) -> Biv {
    vec![vec![MpComplex::zero(prec); cols]; rows]
}

fn biv_mul(prec: u32, x: &Biv, y: &Biv) -> Biv {
    let (rows, cols) = (x.len(), x[0].len());
    let mut out = biv_zero(prec, rows, cols);
    for a1 in 0..rows {
        for b1 in 0..cols {
            if x[a1][b1].re.is_zero() && x[a1][b1].im.is_zero() {
                continue;
            }
            for a2 in 0..rows - a1 {
                for b2 in 0..cols - b1 {
                    let prod = x[a1][b1].mul(&y[a2][b2]);
                    out[a1 + a2][b1 + b2] = out[a1 + a2][b1 + b2].add(&prod);
                }
            }
        }
    }
    out
}

fn lsd_table_cache() -> &'static RwLock<HashMap<u32, Biv>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Biv>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Bivariate Taylor table of
/// `-i Σ_{n≥0} binom(λ,n)·((-1)^n e^{iπλ/2} - e^{iπμ})/(μ - λ/2 + n)`,
/// whose (λ^a, μ^b) coefficient carries `Ls^{(b)}_{a+b+1}(π)·i^b/(a!·b!)`.
/// Terms up to the tail start are summed exactly; beyond it the binomial
/// factor is expanded by harmonic-number asymptotics and the residual sums
/// become Euler–Maclaurin tails (plain and alternating).
fn lsd_table(ctx: &Context) -> Result<Biv> {
    let prec = ctx.prec();
    if let Some(t) = lsd_table_cache().read().expect("cache poisoned").get(&prec) {
        return Ok(t.clone());
    }
    let dim = 10usize;
    let pi = ctx.pi();
    let n0 = tail_start(ctx);
    let dmax = tail_depth(ctx, n0);
    let tmax = 2 * dim - 2;

    // e^{iπλ/2} and e^{iπμ} coefficient arrays.
    let mut el = vec![MpComplex::zero(prec); dim];
    let mut em = vec![MpComplex::zero(prec); dim];
    let i_unit = MpComplex::new(ctx.float(0), ctx.float(1));
    el[0] = MpComplex::new(ctx.float(1), ctx.float(0));
    em[0] = MpComplex::new(ctx.float(1), ctx.float(0));
    for r in 1..dim {
        let stepl = i_unit.scale(&Float::with_val(prec, &pi / (2 * r as u32)));
        el[r] = el[r - 1].mul(&stepl);
        let stepm = i_unit.scale(&Float::with_val(prec, &pi / Float::with_val(prec, r as u32)));
        em[r] = em[r - 1].mul(&stepm);
    }

    // n = 0 term: -i(e^{iπλ/2}-e^{iπμ})/(μ-λ/2) has coefficients
    // i·(iπ)^{a+b+1}/(a+b+1)!·2^{-a}.
    let mut total = biv_zero(prec, dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let r = a + b + 1;
            let mut c = i_unit.clone();
            for j in 1..=r {
                c = c.mul(&i_unit.scale(&Float::with_val(prec, &pi / Float::with_val(prec, j as u32))));
            }
            let half = Float::with_val(prec, 2u32).pow(-(a as i32));
            total[a][b] = c.scale(&half);
        }
    }

    // Exact terms 1 ≤ n < n0, accumulated without the -i prefactor.
    let binom_small: Vec<Vec<Float>> = (0..=tmax)
        .map(|t| {
            (0..=t)
                .map(|b| {
                    let mut v = Float::with_val(prec, 1);
                    for j in 0..b {
                        v = v * Float::with_val(prec, (t - j) as u32)
                            / Float::with_val(prec, j as u32 + 1);
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut exact = biv_zero(prec, dim, dim);
    let mut bn = vec![Float::new(prec); dim];
    for n in 1..n0 {
        // binom(λ, n) = binom(λ, n-1)·(λ-(n-1))/n.
        if n == 1 {
            bn[1] = Float::with_val(prec, 1);
        } else {
            let nm1 = Float::with_val(prec, n - 1);
            let nf = Float::with_val(prec, n);
            let mut next = vec![Float::new(prec); dim];
            for (a, slot) in next.iter_mut().enumerate() {
                let mut v = Float::new(prec);
                if a >= 1 {
                    v += &bn[a - 1];
                }
                v -= Float::with_val(prec, &bn[a] * &nm1);
                *slot = v / &nf;
            }
            bn = next;
        }
        let sign = if n % 2 == 0 { 1i32 } else { -1 };
        // 1/(n+s) coefficients g[a][b] = (-1)^{a+b} C(a+b,b) (-1/2)^a n^{-(a+b+1)}.
        let inv_n = Float::with_val(prec, n).recip();
        let mut npow = vec![Float::new(prec); 2 * dim];
        npow[0] = inv_n.clone();
        for j in 1..2 * dim {
            npow[j] = Float::with_val(prec, &npow[j - 1] * &inv_n);
        }
        let mut u = biv_zero(prec, dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let t = a + b;
                let mut g = Float::with_val(prec, &binom_small[t][b] * &npow[t]);
                if a % 2 == 1 {
                    g = -g;
                }
                g = g / Float::with_val(prec, 2u32).pow(a as u32);
                if t % 2 == 1 {
                    g = -g;
                }
                // U = ((-1)^n E_λ - E_μ)·G, using sparsity of both factors.
                let mut acc = MpComplex::zero(prec);
                for a1 in 0..=a {
                    let gval = {
                        let t2 = (a - a1) + b;
                        let mut v = Float::with_val(prec, &binom_small[t2][b] * &npow[t2]);
                        if (a - a1) % 2 == 1 {
                            v = -v;
                        }
                        v = v / Float::with_val(prec, 2u32).pow((a - a1) as u32);
                        if t2 % 2 == 1 {
                            v = -v;
                        }
                        v
                    };
                    acc = acc.add(&el[a1].scale(&Float::with_val(prec, &gval * sign)));
                }
                for b1 in 1..=b {
                    let gval = {
                        let t2 = a + (b - b1);
                        let mut v = Float::with_val(prec, &binom_small[t2][b - b1] * &npow[t2]);
                        if a % 2 == 1 {
                            v = -v;
                        }
                        v = v / Float::with_val(prec, 2u32).pow(a as u32);
                        if t2 % 2 == 1 {
                            v = -v;
                        }
                        v
                    };
                    acc = acc.sub(&em[b1].scale(&gval));
                }
                // b1 = 0 of the E_μ part.
                acc = acc.sub(&em[0].scale(&g));
                u[a][b] = acc;
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = MpComplex::zero(prec);
                for p in 0..=a {
                    if bn[p].is_zero() {
                        continue;
                    }
                    acc = acc.add(&u[a - p][b].scale(&bn[p]));
                }
                exact[a][b] = exact[a][b].add(&acc);
            }
        }
    }
    let neg_i = MpComplex::new(ctx.float(0), ctx.float(-1));
    for row in exact.iter_mut() {
        for v in row.iter_mut() {
            *v = v.mul(&neg_i);
        }
    }

    // Tail: (-1)^n binom(λ,n) = (-λ/n)·exp(-Σ_r λ^r H^{(r)}_{n-1}/r).
    let mut hexp: Vec<LogPoly> = Vec::with_capacity(dim);
    hexp.push(harmonic_expansion(ctx, dmax));
    for r in 2..dim as u32 {
        hexp.push(harmonic_k_expansion(ctx, r, dmax));
    }
    let mut xq: Vec<LogPoly> = Vec::with_capacity(dim - 1);
    xq.push(LogPoly::constant(prec, Float::with_val(prec, 1), 0, dmax));
    for q in 1..dim - 1 {
        let mut acc = LogPoly::zero(prec, 0, dmax);
        for r in 1..=q {
            let term = hexp[r - 1].mul(&xq[q - r]);
            acc = acc.add(&term.scale(&Float::with_val(prec, -1)));
        }
        let inv_q = Float::with_val(prec, q as u32).recip();
        xq.push(acc.scale(&inv_q));
    }

    let mut plain_memo: HashMap<(u32, u32), Float> = HashMap::new();
    let mut alt_memo: HashMap<(u32, u32), Float> = HashMap::new();
    let mut dot = |poly: &LogPoly, t: usize, alt: bool| -> Result<Float> {
        let mut acc = Float::new(prec);
        for (i, row) in poly.c.iter().enumerate() {
            for (d, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let s_total = (d + t + 2) as u32;
                let key = (s_total, i as u32);
                let tail_val = if alt {
                    if let Some(x) = alt_memo.get(&key) {
                        x.clone()
                    } else {
                        let x = osc_tail(ctx, 1, 1, s_total, i as u32, n0)?.re;
                        alt_memo.insert(key, x.clone());
                        x
                    }
                } else if let Some(x) = plain_memo.get(&key) {
                    x.clone()
                } else {
                    let x = real_tail(ctx, s_total, i as u32, n0)?;
                    plain_memo.insert(key, x.clone());
                    x
                };
                acc += Float::with_val(prec, v * &tail_val);
            }
        }
        Ok(acc)
    };
    let mut t_plain = biv_zero(prec, dim, dim);
    let mut t_alt = biv_zero(prec, dim, dim);
    for a in 1..dim {
        for b in 0..dim {
            let mut accp = Float::new(prec);
            let mut acca = Float::new(prec);
            for t in b..=(a - 1 + b) {
                let q = a - 1 - (t - b);
                let mut coef = binom_small[t][b].clone();
                if t % 2 == 1 {
                    coef = -coef;
                }
                let p = t - b;
                coef = coef / Float::with_val(prec, 2u32).pow(p as u32);
                if p % 2 == 1 {
                    coef = -coef;
                }
                accp += coef.clone() * dot(&xq[q], t, false)?;
                acca += coef * dot(&xq[q], t, true)?;
            }
            t_plain[a][b] = MpComplex::new(accp, ctx.float(0));
            t_alt[a][b] = MpComplex::new(acca, ctx.float(0));
        }
    }
    let mut el_biv = biv_zero(prec, dim, dim);
    let mut em_biv = biv_zero(prec, dim, dim);
    for r in 0..dim {
        el_biv[r][0] = el[r].clone();
        em_biv[0][r] = em[r].clone();
    }
    let tail_l = biv_mul(prec, &el_biv, &t_plain);
    let tail_m = biv_mul(prec, &em_biv, &t_alt);
    for a in 0..dim {
        for b in 0..dim {
            let contrib = tail_l[a][b].sub(&tail_m[a][b]).mul(&i_unit);
            total[a][b] = total[a][b].add(&exact[a][b]).add(&contrib);
        }
    }
    lsd_table_cache().write().expect("cache poisoned").insert(prec, total.clone());
    Ok(total)
}

/// `Ls_n^{(k)}(π)` for n ≤ 10 by double-Taylor extraction from the binomial
/// sum generating function.
pub fn lsd_pi_closed(ctx: &Context, n: u32, k: u32) -> Result<Float> {
    if n < 1 || k + 1 > n || n > 10 {
        return Err(Error::UnsupportedReduction(
            "moment closed form supports 1 ≤ n ≤ 10, k ≤ n-1".into(),
        ));
    }
    let prec = ctx.prec();
    let table = lsd_table(ctx)?;
    let a = (n - 1 - k) as usize;
    let b = k as usize;
    let mut coeff = table[a][b].clone();
    // Divide by i^k and multiply by a!·b!.
    for _ in 0..k % 4 {
        coeff = coeff.mul(&MpComplex::new(ctx.float(0), ctx.float(-1)));
    }
    let mut fact = Float::with_val(prec, 1);
    for j in 2..=a {
        fact *= Float::with_val(prec, j as u32);
    }
    for j in 2..=b {
        fact *= Float::with_val(prec, j as u32);
    }
    Ok(coeff.re * fact)
}

fn lsc_pi_cache() -> &'static RwLock<HashMap<u32, Vec<Vec<Float>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<Vec<Float>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Lsc_{m,n}(π)` for m+n ≤ 12 from the bivariate generating function
/// `gs(u,v) = 2^{u+v} Γ((1+u)/2) Γ((1+v)/2) / (π·Γ(1+(u+v)/2))`
/// (so `Lsc_{m+1,n+1}(π) = -π·m!·n!·[u^m v^n] gs`).
pub fn lsc_pi_closed(ctx: &Context, m: u32, n: u32) -> Result<Float> {
    if m < 1 || n < 1 || m + n > 12 {
        return Err(Error::UnsupportedReduction(
            "closed form available for m, n ≥ 1 with m+n ≤ 12".into(),
        ));
    }
    let prec = ctx.prec();
    let dim = 12usize;
    let cached = lsc_pi_cache().read().expect("cache poisoned").get(&prec).cloned();
    let table = {
        if let Some(t) = cached {
            t
        } else {
            // log A(u) = u log 2 + log Γ(1/2+u/2) - log Γ(1/2).
            let lg_h = series::lngamma_half(ctx, dim);
            let mut log_a = series::scale_var(prec, &lg_h, &(ctx.float(1) / 2u32));
            log_a[1] += ctx.ln_u(2);
            let a_series = series::exp(prec, &log_a);
            // C(w) = 1/Γ(1+w/2).
            let lg1 = series::lngamma1p(ctx, dim);
            let mut log_c = series::scale_var(prec, &lg1, &(ctx.float(1) / 2u32));
            for c in log_c.iter_mut() {
                *c = -c.clone();
            }
            let c_series = series::exp(prec, &log_c);
            // gs[a][b] = Σ_{r} A_a-ish: gs(u,v) = A(u)·A(v)·C(u+v);
            // C(u+v) spreads by binomials: [u^a v^b](u+v)^r = C(r,a) for a+b=r.
            let mut binom_row = vec![vec![Float::new(prec); dim + 1]; dim + 1];
            for (r, row) in binom_row.iter_mut().enumerate() {
                row[0] = Float::with_val(prec, 1);
                for a in 1..=r {
                    let prev = row[a - 1].clone();
                    row[a] = prev * Float::with_val(prec, (r - a + 1) as u32)
                        / Float::with_val(prec, a as u32);
                }
            }
            let mut gs = vec![vec![Float::new(prec); dim + 1]; dim + 1];
            for a in 0..=dim {
                for b in 0..=dim - a {
                    // (A(u)A(v))[p][q] convolved with C-part.
                    let mut acc = Float::new(prec);
                    for p in 0..=a {
                        for q in 0..=b {
                            let r = (a - p) + (b - q);
                            let spread =
                                Float::with_val(prec, &c_series[r] * &binom_row[r][a - p]);
                            acc += Float::with_val(prec, &a_series[p] * &a_series[q]) * spread;
                        }
                    }
                    gs[a][b] = acc;
                }
            }
            lsc_pi_cache().write().expect("cache poisoned").insert(prec, gs.clone());
            gs
        }
    };
    let (a, b) = ((m - 1) as usize, (n - 1) as usize);
    let mut fact = Float::with_val(prec, 1);
    for j in 2..=a {
        fact *= Float::with_val(prec, j as u32);
    }
    for j in 2..=b {
        fact *= Float::with_val(prec, j as u32);
    }
    Ok(-(ctx.pi() * fact) * &table[a][b])
}

/// `Ls_n(π/3)` for 2 ≤ n ≤ 8 through the tabulated Clausen/Glaisher
/// combinations, with the circle constants supplied by the residue-class
/// engine (independent of any quadrature).
pub fn ls_pi3_closed(ctx: &Context, n: u32) -> Result<Float> {
    if !(2..=8).contains(&n) {
        return Err(Error::UnsupportedReduction(
            "π/3 closed forms cover 2 ≤ n ≤ 8".into(),
        ));
    }
    let prec = ctx.prec();
    let pi = ctx.pi();
    let third = Float::with_val(prec, &pi / 3u32);
    Ok(match n {
        2 => clausen(ctx, &[2], &third)?,
        3 => -Float::with_val(prec, pi.clone().pow(3u32)) * 7u32 / 108u32,
        4 => {
            Float::with_val(prec, &pi * &ctx.zeta(3)) / 2u32
                + clausen(ctx, &[4], &third)? * 9u32 / 2u32
        }
        5 => {
            glaisher(ctx, &[4, 1], &third)? * 6u32
                - Float::with_val(prec, pi.clone().pow(5u32)) * 1543u32 / 19440u32
        }
        6 => {
            Float::with_val(prec, &pi * &ctx.zeta(5)) * 15u32 / 2u32
                + Float::with_val(prec, pi.clone().pow(3u32) * &ctx.zeta(3)) * 35u32 / 36u32
                + clausen(ctx, &[6], &third)? * 135u32 / 2u32
        }
        7 => {
            glaisher(ctx, &[6, 1], &third)? * 135u32
                - Float::with_val(prec, pi.clone().pow(7u32)) * 74369u32 / 326592u32
                - Float::with_val(prec, &pi * ctx.zeta(3).square()) * 15u32 / 2u32
        }
        8 => {
            Float::with_val(prec, pi.clone().pow(5u32) * &ctx.zeta(3)) * 13181u32 / 2592u32
                + Float::with_val(prec, pi.clone().pow(3u32) * &ctx.zeta(5)) * 1225u32 / 24u32
                + Float::with_val(prec, &pi * &ctx.zeta(7)) * 319445u32 / 864u32
                + Float::with_val(prec, pi.clone().square() * clausen(ctx, &[6], &third)?)
                    * 35u32
                    / 2u32
                + clausen(ctx, &[8], &third)? * 945u32 / 4u32
                + clausen(ctx, &[6, 1, 1], &third)? * 315u32
        }
        _ => unreachable!(),
    })
}

/// High-precision circle constants recovered from log-sine quadratures.
#[derive(Debug, Clone)]
pub struct CircleConstants {
    pub cl2_pi3: Float,
    pub cl4_pi3: Float,
    pub cl6_pi3: Float,
    pub gl41_pi3: Float,
    pub gl61_pi3: Float,
    pub cl611_pi3: Float,
    pub cl211_2pi3: Float,
    pub gl21_2pi3: Float,
}

impl CircleConstants {
    /// Named view, convenient for reports and the CLI.
    pub fn entries(&self) -> Vec<(&'static str, &Float)> {
        vec![
            ("Cl_2(pi/3)", &self.cl2_pi3),
            ("Cl_4(pi/3)", &self.cl4_pi3),
            ("Cl_6(pi/3)", &self.cl6_pi3),
            ("Gl_{4,1}(pi/3)", &self.gl41_pi3),
            ("Gl_{6,1}(pi/3)", &self.gl61_pi3),
            ("Cl_{6,1,1}(pi/3)", &self.cl611_pi3),
            ("Cl_{2,1,1}(2pi/3)", &self.cl211_2pi3),
            ("Gl_{2,1}(2pi/3)", &self.gl21_2pi3),
        ]
    }
}

/// Solve the triangular π/3 log-sine relations in reverse: quadrature values
/// of `Ls_n(π/3)` (and `Ls_4(2π/3)`) yield the Clausen/Glaisher constants.
/// Depth-one values entering the solve (`Cl_8(π/3)` and the π/3 → 2π/3
/// transforms) are classical single polylogarithms. `Gl_{2,1}(2π/3)` has no
/// proven linear log-sine relation here, so it is taken from the
/// residue-class series engine directly.
pub fn circle_constants(ctx: &Context) -> Result<CircleConstants> {
    let prec = ctx.prec();
    let pi = ctx.pi();
    let third = Float::with_val(prec, &pi / 3u32);
    let ls = |n: u32| -> Result<Float> {
        ls_quad(ctx, &LsSpec::new(ctx, n, 0, third.clone())?)
    };
    let cl2_pi3 = ls(2)?;
    let cl4_pi3 = (ls(4)? - Float::with_val(prec, &pi * &ctx.zeta(3)) / 2u32) * 2u32 / 9u32;
    let gl41_pi3 = (ls(5)? + Float::with_val(prec, pi.clone().pow(5u32)) * 1543u32 / 19440u32)
        / 6u32;
    let cl6_pi3 = (ls(6)?
        - Float::with_val(prec, &pi * &ctx.zeta(5)) * 15u32 / 2u32
        - Float::with_val(prec, pi.clone().pow(3u32) * &ctx.zeta(3)) * 35u32 / 36u32)
        * 2u32
        / 135u32;
    let gl61_pi3 = (ls(7)?
        + Float::with_val(prec, pi.clone().pow(7u32)) * 74369u32 / 326592u32
        + Float::with_val(prec, &pi * ctx.zeta(3).square()) * 15u32 / 2u32)
        / 135u32;
    let z = MpComplex::unit(&third);
    let cl8_pi3 = li_complex(ctx, 8, &z)?.im;
    let cl611_pi3 = (ls(8)?
        - Float::with_val(prec, pi.clone().pow(5u32) * &ctx.zeta(3)) * 13181u32 / 2592u32
        - Float::with_val(prec, pi.clone().pow(3u32) * &ctx.zeta(5)) * 1225u32 / 24u32
        - Float::with_val(prec, &pi * &ctx.zeta(7)) * 319445u32 / 864u32
        - Float::with_val(prec, pi.clone().square() * &cl6_pi3) * 35u32 / 2u32
        - cl8_pi3 * 945u32 / 4u32)
        / 315u32;
    // Depth-one transform Cl_n(π/3) = (2^{1-n} + (-1)^n)·Cl_n(2π/3).
    let cl2_2pi3 = Float::with_val(prec, &cl2_pi3 * 2u32) / 3u32;
    let cl4_2pi3 = Float::with_val(prec, &cl4_pi3 * 8u32) / 9u32;
    let two_thirds = Float::with_val(prec, &pi * 2u32) / 3u32;
    let ls4_2pi3 = ls_quad(ctx, &LsSpec::new(ctx, 4, 0, two_thirds.clone())?)?;
    let cl211_2pi3 = (ls4_2pi3
        - Float::with_val(prec, &pi * &ctx.zeta(3)) * 31u32 / 18u32
        - Float::with_val(prec, pi.clone().square() * &cl2_2pi3) / 12u32
        + cl4_2pi3 * 3u32 / 2u32)
        / 6u32;
    let gl21_2pi3 = glaisher(ctx, &[2, 1], &two_thirds)?;
    Ok(CircleConstants {
        cl2_pi3,
        cl4_pi3,
        cl6_pi3,
        gl41_pi3,
        gl61_pi3,
        cl611_pi3,
        cl211_2pi3,
        gl21_2pi3,
    })
}

/// Direct quadrature of the extended integral
/// `Ls_3(x, y) = -∫_0^x log|2 sin(σ/2)|·log|2 sin((σ+y)/2)| dσ`
/// (here called with x = 2θ, y = 2ω).
pub fn ls3_extended_quad(ctx: &Context, theta: &Float, omega: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let two_pi = 2u32 * ctx.pi();
    let x = Float::with_val(prec, theta * 2u32);
    let y = Float::with_val(prec, omega * 2u32);
    if !(x >= 0u32 && x <= two_pi && y >= 0u32 && y <= two_pi) {
        return Err(Error::Domain("2θ and 2ω must lie in [0, 2π]".into()));
    }
    // Panel edges: singularities/zeros of either log factor inside (0, x):
    // σ ∈ {kπ/3} and σ + y ∈ {kπ/3, k ≤ 12}.
    let mut edges = vec![ctx.zero()];
    let pi = ctx.pi();
    for sixth in 1..=11u32 {
        let c = Float::with_val(prec, &pi * sixth) / 3u32;
        for cand in [c.clone(), Float::with_val(prec, &c - &y)] {
            let gap_lo = cand.clone();
            let gap_hi = Float::with_val(prec, &x - &cand);
            if gap_lo > 1e-3 && gap_hi > 1e-3 {
                edges.push(cand);
            }
        }
    }
    edges.push(x.clone());
    edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));
    edges.dedup_by(|a, b| Float::with_val(53, &*a - &*b).abs() < 1e-6);
    let y_zero = y.is_zero();
    let mut total = Float::new(prec);
    for w in edges.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(b > a) {
            continue;
        }
        let starts_at_zero = a.is_zero();
        let val = tanh_sinh(ctx, a, b, |p| {
            let s1 = abs_two_sin_half(
                prec,
                &p.x,
                if starts_at_zero { Some(&p.from_a) } else { None },
                None,
            );
            let s2 = if y_zero {
                s1.clone()
            } else {
                let shifted = Float::with_val(prec, &p.x + &y);
                Float::with_val(prec, shifted / 2u32).sin().abs() * 2u32
            };
            s1.ln() * s2.ln()
        })?;
        total += val;
    }
    Ok(-total)
}

/// `Ls_3(2θ, 2ω)` via the closed reduction: plain `Ls_3` values, a
/// trilogarithm, and Clausen terms. Requires 0 < θ and θ+ω < π so that
/// sin(θ+ω) stays away from zero.
pub fn ls3_extended(ctx: &Context, theta: &Float, omega: &Float) -> Result<Float> {
    let prec = ctx.prec();
    let pi = ctx.pi();
    let sum = Float::with_val(prec, theta + omega);
    if !(*theta > 0u32 && sum.clone() < pi && *omega >= 0u32) {
        return Err(Error::Domain(
            "reduction route requires 0 < θ, 0 ≤ ω, θ+ω < π".into(),
        ));
    }
    let sin_t = theta.clone().sin();
    let sin_s = sum.clone().sin();
    if sin_s.clone().abs() < ctx.work_tolerance() {
        return Err(Error::Domain("sin(θ+ω) vanishes".into()));
    }
    let two = |v: &Float| Float::with_val(prec, v * 2u32);
    let ls3 = |sigma: Float| -> Result<Float> {
        if sigma.is_zero() {
            return Ok(ctx.zero());
        }
        ls_quad(ctx, &LsSpec::new(ctx, 3, 0, sigma)?)
    };
    let cl2 = |sigma: Float| -> Result<Float> {
        if sigma.is_zero() {
            return Ok(ctx.zero());
        }
        clausen(ctx, &[2], &sigma)
    };
    let ratio = Float::with_val(prec, &sin_t / &sin_s);
    let lr = ratio.clone().ln();
    let arg = MpComplex::unit(omega).scale(&ratio);
    let im_li3 = li_complex(ctx, 3, &arg)?.im;
    let mut rhs = ls3(two(omega))? / 2u32 - ls3(two(theta))? / 2u32 - ls3(two(&sum))? / 2u32;
    rhs -= im_li3 * 2u32;
    rhs += Float::with_val(prec, theta * lr.clone().square());
    let cl_sum = cl2(two(theta))? + cl2(two(omega))? - cl2(two(&sum))?;
    rhs += lr * cl_sum;
    Ok(-rhs)
}

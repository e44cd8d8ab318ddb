//! Precision context, fundamental constants and complex scalars.
//!
//! Every computation in the crate runs against a [`Context`]: the caller asks
//! for `target_digits` of accuracy and all internal arithmetic is carried out
//! at a guarded working precision derived from it. Fundamental constants
//! (π, ζ(n), Catalan, Euler's γ, integer logarithms) are memoized per working
//! precision behind a lock so repeated lookups are cheap and thread-safe.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Bits per decimal digit, rounded up generously when converting.
const LOG2_10: f64 = 3.321928094887362;

/// Maximum accepted request, in decimal digits.
pub const MAX_TARGET_DIGITS: u32 = 10_000;

/// Precision context carried through every operation.
///
/// `work_digits = target_digits + max(10, ceil(0.1 * target_digits))`; the
/// extra guard digits absorb roundoff so results are trustworthy to the
/// requested target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    target_digits: u32,
    work_digits: u32,
    prec: u32,
}

impl Context {
    /// Creates a context that aims for `target_digits` correct decimal digits.
    pub fn new(target_digits: u32) -> Result<Self> {
        if target_digits == 0 || target_digits > MAX_TARGET_DIGITS {
            return Err(Error::Config(format!(
                "target_digits must be in 1..={MAX_TARGET_DIGITS}, got {target_digits}"
            )));
        }
        let guard = (target_digits as f64 * 0.1).ceil() as u32;
        let work_digits = target_digits + guard.max(10);
        Ok(Self::with_work_digits(target_digits, work_digits))
    }

    fn with_work_digits(target_digits: u32, work_digits: u32) -> Self {
        let prec = (work_digits as f64 * LOG2_10).ceil() as u32 + 16;
        Context { target_digits, work_digits, prec }
    }

    /// Requested number of correct decimal digits.
    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    /// Working decimal digits actually used internally.
    pub fn work_digits(&self) -> u32 {
        self.work_digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// A context with the same target but `extra` additional working digits.
    ///
    /// Used by routines (finite differences, relation soundness re-checks)
    /// that need temporary headroom beyond the standard guard.
    pub fn escalated(&self, extra: u32) -> Context {
        Context::with_work_digits(self.target_digits, self.work_digits + extra)
    }

    /// Fresh zero at working precision.
    pub fn zero(&self) -> Float {
        Float::new(self.prec)
    }

    /// Converts anything MPFR can assign into a working-precision float.
    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec, v)
    }

    /// Parses a decimal string at working precision.
    pub fn float_from_str(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s)
            .map_err(|e| Error::Config(format!("cannot parse '{s}' as a number: {e}")))?;
        Ok(Float::with_val(self.prec, parsed))
    }

    /// `10^(-target_digits)`: the acceptance tolerance of this context.
    pub fn tolerance(&self) -> Float {
        self.float(10).pow(-(self.target_digits as i32))
    }

    /// `10^(-work_digits)`: the roundoff floor of internal arithmetic.
    pub fn work_tolerance(&self) -> Float {
        self.float(10).pow(-(self.work_digits as i32))
    }

    /// π at working precision (memoized).
    pub fn pi(&self) -> Float {
        cached(CKey::Pi, self.prec, || self.float(Constant::Pi))
    }

    /// Riemann ζ(n) for integer n ≥ 2 at working precision (memoized).
    pub fn zeta(&self, n: u32) -> Float {
        debug_assert!(n >= 2, "zeta cache is for integer arguments >= 2");
        cached(CKey::Zeta(n), self.prec, || self.float(Float::zeta_u(n)))
    }

    /// Catalan's constant at working precision (memoized).
    pub fn catalan(&self) -> Float {
        cached(CKey::Catalan, self.prec, || self.float(Constant::Catalan))
    }

    /// Euler's constant γ at working precision (memoized).
    pub fn euler_gamma(&self) -> Float {
        cached(CKey::Euler, self.prec, || self.float(Constant::Euler))
    }

    /// Natural logarithm of a positive integer at working precision (memoized).
    pub fn ln_u(&self, k: u32) -> Float {
        debug_assert!(k >= 1);
        cached(CKey::Ln(k), self.prec, || self.float(k).ln())
    }
}

/// Cache key for memoized constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CKey {
    Pi,
    Zeta(u32),
    Catalan,
    Euler,
    Ln(u32),
}

fn cache() -> &'static RwLock<HashMap<(CKey, u32), Float>> {
    static CACHE: OnceLock<RwLock<HashMap<(CKey, u32), Float>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(key: CKey, prec: u32, make: impl FnOnce() -> Float) -> Float {
    if let Some(v) = cache().read().expect("constant cache poisoned").get(&(key, prec)) {
        return v.clone();
    }
    let v = make();
    cache().write().expect("constant cache poisoned").insert((key, prec), v.clone());
    v
}

/// Number of decimal digits on which `a` and `b` agree.
///
/// Measured as `-log10(|a-b| / scale)` with `scale = max(|a|, |b|, 1)`,
/// clamped to `[0, cap]`. Exact equality returns `cap`.
pub fn agree_digits(a: &Float, b: &Float, cap: u32) -> u32 {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    if diff.is_zero() {
        return cap;
    }
    let mut scale = Float::with_val(prec, a).abs();
    let babs = Float::with_val(prec, b).abs();
    if babs > scale {
        scale = babs;
    }
    if scale < 1u32 {
        scale = Float::with_val(prec, 1);
    }
    let rel = diff / scale;
    let lg = -rel.log10();
    if lg < 0u32 {
        0
    } else {
        lg.to_f64().floor().min(cap as f64) as u32
    }
}

/// Renders `x` as a plain positional decimal string with `digits` significant
/// digits (no exponent for moderate magnitudes, scientific otherwise).
pub fn to_decimal(x: &Float, digits: u32) -> String {
    let digits = digits.max(1) as usize;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if *x < 0u32 { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return "0".into();
    }
    let (sign, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let neg = if sign { "-" } else { "" };
    let m = mantissa.trim_end_matches('0');
    let m = if m.is_empty() { "0" } else { m };
    // exp is the power of ten such that the value is 0.mantissa * 10^exp
    if exp > 0 && (exp as usize) <= digits + 4 {
        let e = exp as usize;
        if e >= m.len() {
            format!("{neg}{m}{}", "0".repeat(e - m.len()))
        } else {
            format!("{neg}{}.{}", &m[..e], &m[e..])
        }
    } else if exp <= 0 && exp > -6 {
        format!("{neg}0.{}{}", "0".repeat((-exp) as usize), m)
    } else {
        let rest = if m.len() > 1 { format!(".{}", &m[1..]) } else { String::new() };
        format!("{neg}{}{rest}e{}", &m[..1], exp - 1)
    }
}

/// Complex scalar over a pair of MPFR floats.
///
/// Only the operations the crate needs are implemented; `ln` and `arg` use
/// the principal branch.
#[derive(Debug, Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        MpComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_re(re: Float) -> Self {
        let prec = re.prec();
        MpComplex { re, im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        MpComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        MpComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        MpComplex { re, im }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        MpComplex {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn neg(&self) -> Self {
        MpComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.im).atan2(&self.re)
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        MpComplex { re: num.re / d.clone(), im: num.im / d }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        let c = self.conj();
        MpComplex { re: c.re / d.clone(), im: c.im / d }
    }

    /// Principal natural logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let half = Float::with_val(p, 0.5);
        MpComplex { re: self.norm_sqr().ln() * half, im: self.arg() }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, &self.re).exp();
        let (sin, cos) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        MpComplex { re: cos * r.clone(), im: sin * r }
    }

    /// `e^{iθ}` at the precision of `theta`.
    pub fn unit(theta: &Float) -> Self {
        let p = theta.prec();
        let (sin, cos) = theta.clone().sin_cos(Float::new(p));
        MpComplex { re: cos, im: sin }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u32) -> Self {
        let p = self.prec();
        let mut base = self.clone();
        let mut acc = MpComplex { re: Float::with_val(p, 1), im: Float::new(p) };
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_bounds_are_enforced() {
        assert!(matches!(Context::new(0), Err(Error::Config(_))));
        assert!(matches!(Context::new(MAX_TARGET_DIGITS + 1), Err(Error::Config(_))));
        assert!(Context::new(1).is_ok());
        assert!(Context::new(MAX_TARGET_DIGITS).is_ok());
    }

    #[test]
    fn guard_digit_formula() {
        assert_eq!(Context::new(50).unwrap().work_digits(), 60);
        assert_eq!(Context::new(100).unwrap().work_digits(), 110);
        assert_eq!(Context::new(200).unwrap().work_digits(), 220);
        assert_eq!(Context::new(10).unwrap().work_digits(), 20);
        assert_eq!(Context::new(1000).unwrap().work_digits(), 1100);
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        let ctx = Context::new(500).unwrap();
        let pi = ctx.pi();
        let want = pi.clone().square() / 6u32;
        assert!(agree_digits(&ctx.zeta(2), &want, 520) >= 500);
    }

    #[test]
    fn constants_survive_concurrent_access() {
        let handles: Vec<_> = (0..8)
            .map(|i| {
                std::thread::spawn(move || {
                    let ctx = Context::new(60 + (i % 3)).unwrap();
                    (ctx.pi(), ctx.zeta(3), ctx.catalan(), ctx.ln_u(2))
                })
            })
            .collect();
        let mut vals = Vec::new();
        for h in handles {
            vals.push(h.join().unwrap());
        }
        for w in vals.windows(2) {
            if w[0].0.prec() == w[1].0.prec() {
                assert_eq!(w[0].0, w[1].0);
            }
        }
    }

    #[test]
    fn agreement_counter_behaves() {
        let ctx = Context::new(50).unwrap();
        let a = ctx.float(1) / 3u32;
        let mut b = a.clone();
        b += ctx.float(10).pow(-30);
        let d = agree_digits(&a, &b, 60);
        assert!((28..=31).contains(&d), "got {d}");
        assert_eq!(agree_digits(&a, &a, 60), 60);
    }

    #[test]
    fn decimal_rendering() {
        let ctx = Context::new(30).unwrap();
        let x = ctx.float(425) / 100u32;
        assert_eq!(to_decimal(&x, 10), "4.25");
        let y = ctx.float(-3) / 1000u32;
        assert_eq!(to_decimal(&y, 5), "-0.003");
        let z = ctx.float(0);
        assert_eq!(to_decimal(&z, 5), "0");
        let big = ctx.float(123456u32);
        assert_eq!(to_decimal(&big, 10), "123456");
        let tiny = ctx.float(7) / ctx.float(10).pow(12);
        assert_eq!(to_decimal(&tiny, 3), "7e-12");
    }

    #[test]
    fn complex_field_rules() {
        let ctx = Context::new(40).unwrap();
        let z = MpComplex::new(ctx.float(3) / 7u32, ctx.float(-2) / 5u32);
        let w = MpComplex::new(ctx.float(1) / 3u32, ctx.float(4) / 9u32);
        let prod = z.mul(&w);
        let back = prod.div(&w);
        assert!(agree_digits(&back.re, &z.re, 50) >= 40);
        assert!(agree_digits(&back.im, &z.im, 50) >= 40);
        let e = z.ln().exp();
        assert!(agree_digits(&e.re, &z.re, 50) >= 39);
        assert!(agree_digits(&e.im, &z.im, 50) >= 39);
        // e^{iπ} = -1
        let u = MpComplex::unit(&ctx.pi());
        assert!(agree_digits(&u.re, &ctx.float(-1), 50) >= 40);
        assert!(u.im.clone().abs() < ctx.work_tolerance());
    }
}

//! Bisection root finding and the polynomials that decide where the rate
//! comparisons switch branches.

use std::fmt;

use crate::error::{Error, Result};

pub use crate::channel::{ian_tdma_crossover, noisy_boundary};

/// Default absolute tolerance on the final bracket width.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Maximum number of bracket doublings for half-open searches.
pub const MAX_DOUBLINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    /// Final bracket; the sign change lies inside it.
    pub bracket: (f64, f64),
    /// `f(value)`.
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection on `[lo, hi]` until the bracket is no wider than `tol` (or can
/// no longer be split in double precision). Returns the midpoint of the final
/// bracket. An endpoint where `f` is exactly zero is returned as is.
pub fn bracketed_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<RootResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain {
            name: "bracket",
            value: hi - lo,
            reason: "need finite lo < hi",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { x })
        }
    };

    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = eval(lo)?;
    let f_hi = eval(hi)?;
    if f_lo == 0.0 || f_hi == 0.0 {
        let value = if f_lo == 0.0 { lo } else { hi };
        return Ok(RootResult {
            value,
            bracket: (lo, hi),
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }

    let mut iterations = 0;
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(mid)?;
        iterations += 1;
        if f_mid == 0.0 {
            return Ok(RootResult {
                value: mid,
                bracket: (lo, hi),
                residual: 0.0,
                iterations,
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let value = lo + 0.5 * (hi - lo);
    Ok(RootResult {
        value,
        bracket: (lo, hi),
        residual: eval(value)?,
        iterations,
    })
}

/// Bisection on `(lo, hi)` where `hi` starts at `start` and doubles until
/// `f(hi)` has the opposite sign of `f(lo)`.
pub fn root_with_growth<F>(f: F, lo: f64, start: f64, tol: f64) -> Result<RootResult>
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let mut hi = start;
    for _ in 0..=MAX_DOUBLINGS {
        let f_hi = f(hi);
        if f_hi == 0.0 || f_hi.signum() != f_lo.signum() {
            return bracketed_root(&f, lo, hi, tol);
        }
        hi *= 2.0;
    }
    Err(Error::Bracket {
        lo,
        hi,
        f_lo,
        f_hi: f(hi),
    })
}

/// The polynomials and rational functions that appear in the branch and
/// comparison analysis, each with its captured `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFnKind {
    /// `P a³ + a² − a − 1`; its positive root switches the ETW branch.
    F,
    /// `(1 + P + aP)(2 + 1/a)`.
    G,
    /// `1 + aP + 1/a`.
    H,
    /// `2P²a³ − 3Pa² − 2a + 1` (monotonicity bound behind `P'`).
    F1,
    /// `2P²a³ − 9Pa² − 6a + 3` (monotonicity bound behind `P''`).
    F1Thm3,
    /// `8Pa⁴ − 8a³ − 27a − 9` (K = 3 approximate ETW branch switch).
    G1,
    /// `18Pa³ − (6P − 9)a² − (P − 6)a + 1`.
    G2,
    /// `(aP − 1)(1 + 1/(3a))`.
    G3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NamedFn {
    pub kind: NamedFnKind,
    pub p: f64,
}

impl NamedFn {
    pub fn new(kind: NamedFnKind, p: f64) -> Self {
        Self { kind, p }
    }

    pub fn eval(&self, a: f64) -> f64 {
        let p = self.p;
        match self.kind {
            NamedFnKind::F => f(p, a),
            NamedFnKind::G => (1.0 + p + a * p) * (2.0 + 1.0 / a),
            NamedFnKind::H => 1.0 + a * p + 1.0 / a,
            NamedFnKind::F1 => ((2.0 * p * p * a - 3.0 * p) * a - 2.0) * a + 1.0,
            NamedFnKind::F1Thm3 => ((2.0 * p * p * a - 9.0 * p) * a - 6.0) * a + 3.0,
            NamedFnKind::G1 => g1(p, a),
            NamedFnKind::G2 => g2(p, a),
            NamedFnKind::G3 => (a * p - 1.0) * (1.0 + 1.0 / (3.0 * a)),
        }
    }
}

impl fmt::Display for NamedFnKind {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(match self {
            NamedFnKind::F => "f",
            NamedFnKind::G => "g",
            NamedFnKind::H => "h",
            NamedFnKind::F1 => "f1",
            NamedFnKind::F1Thm3 => "f1_thm3",
            NamedFnKind::G1 => "g1",
            NamedFnKind::G2 => "g2",
            NamedFnKind::G3 => "g3",
        })
    }
}

/// `f(a) = P a³ + a² − a − 1`.
#[inline]
pub fn f(p: f64, a: f64) -> f64 {
    ((p * a + 1.0) * a - 1.0) * a - 1.0
}

/// `g1(a) = 8P a⁴ − 8a³ − 27a − 9`.
#[inline]
pub fn g1(p: f64, a: f64) -> f64 {
    (((8.0 * p * a - 8.0) * a) * a - 27.0) * a - 9.0
}

/// `g2(a) = 18P a³ − (6P − 9) a² − (P − 6) a + 1`.
#[inline]
pub fn g2(p: f64, a: f64) -> f64 {
    ((18.0 * p * a - (6.0 * p - 9.0)) * a - (p - 6.0)) * a + 1.0
}

/// Unique positive root `a0` of `f`. Below it the ETW rate is limited by the
/// individual common-message bound, above it by the common sum bound.
///
/// `f(0) = −1` and `f` has a single positive critical point (a minimum), so
/// there is exactly one sign change on `(0, ∞)`. For `P ≥ 1`, `f(1) = P − 1 ≥ 0`
/// brackets it in `(0, 1]`.
pub fn find_a0(p: f64) -> Result<f64> {
    crate::error::check_positive("P", p)?;
    let fp = |a: f64| f(p, a);
    let r = if p >= 1.0 {
        bracketed_root(fp, 0.0, 1.0, DEFAULT_TOL)?
    } else {
        root_with_growth(fp, 0.0, 2.0, DEFAULT_TOL)?
    };
    Ok(r.value)
}

/// The `a ≤ 1` solution of `½log2(1+P+aP) + ½log2(2+1/a) − 1 = ½log2(1+2P)`,
/// i.e. the smaller root of `2Pa² − (5P+2)a + 1 + P = 0`:
/// `(5P + 2 − √(17P² + 12P + 4)) / (4P)`.
///
/// Evaluated in the rationalised form `2(P+1) / (5P + 2 + √(17P² + 12P + 4))`.
pub fn a1_closed(p: f64) -> f64 {
    2.0 * (p + 1.0) / (5.0 * p + 2.0 + (17.0 * p * p + 12.0 * p + 4.0).sqrt())
}

/// As [`a1_closed`] with the right-hand side raised by half a bit:
/// `(13P + 6 − √(161P² + 148P + 36)) / (4P)`, rationalised to
/// `2(P+1) / (13P + 6 + √(161P² + 148P + 36))`.
pub fn a2_closed(p: f64) -> f64 {
    2.0 * (p + 1.0) / (13.0 * p + 6.0 + (161.0 * p * p + 148.0 * p + 36.0).sqrt())
}

/// Largest SNR (from `P = 4` up) at which `f(a1(P)) < 0`; below it point-to-point
/// coding beats ETW throughout the weak regime.
///
/// `f(a1(P))` is increasing in `P` on `P ≥ 4`, so bisection on `[4, 1e6]`
/// finds the unique crossing.
pub fn compute_p_prime() -> Result<f64> {
    let r = bracketed_root(|p| f(p, a1_closed(p)), 4.0, 1e6, 1e-9)?;
    if r.value <= 100.0 {
        return Err(Error::Unsupported {
            what: "P'",
            reason: format!("computed {} <= 100", r.value),
        });
    }
    Ok(r.value)
}

/// Half-bit analogue of [`compute_p_prime`] using `a2`, searched on `[100, 1e8]`.
pub fn compute_p_doubleprime() -> Result<f64> {
    let r = bracketed_root(|p| f(p, a2_closed(p)), 100.0, 1e8, 1e-9)?;
    if r.value <= 1000.0 {
        return Err(Error::Unsupported {
            what: "P''",
            reason: format!("computed {} <= 1000", r.value),
        });
    }
    Ok(r.value)
}

/// Unique positive root of `g1`. For `K = 3`, below it the approximate ETW
/// rate follows its `(K−1)`-user common term, above it the total-sum term.
pub fn g1_root(p: f64) -> Result<f64> {
    crate::error::check_positive("P", p)?;
    Ok(root_with_growth(|a| g1(p, a), 0.0, 1.0, DEFAULT_TOL)?.value)
}

/// Lower end of the SNR interval of the K = 3 comparison, `(−24 + 9√10)/26`.
pub fn k3_snr_lower() -> f64 {
    (-24.0 + 9.0 * 10f64.sqrt()) / 26.0
}

/// Upper end of the SNR interval of the K = 3 comparison, `142389/2048`.
pub const K3_SNR_UPPER: f64 = 142389.0 / 2048.0;

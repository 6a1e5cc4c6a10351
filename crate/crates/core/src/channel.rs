//! Channel parameter types and interference-regime classification.
//!
//! Noise is unit-variance throughout, so `P` is the direct-link SNR and `a`
//! the interference-to-signal ratio; the received interference-to-noise
//! ratio is `aP`.

use std::fmt;

use crate::error::{check_positive, Error, Result};

/// Gaussian mutual information `log2(1 + signal / residual)`.
///
/// Every rate in this crate is a sum of such terms: the decoded signal power
/// over whatever is left after conditioning (noise plus interference treated
/// as noise).
pub fn mi_gaussian(signal_power: f64, residual_power: f64) -> Result<f64> {
    if !signal_power.is_finite() || signal_power < 0.0 {
        return Err(Error::Domain {
            name: "signal_power",
            value: signal_power,
            reason: "must be finite and non-negative",
        });
    }
    check_positive("residual_power", residual_power)?;
    Ok(log2_1p(signal_power / residual_power))
}

/// `log2(1 + x)` without the cancellation of `(1 + x).log2()` for small `x`.
#[inline]
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Two-user symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel2Sym {
    p: f64,
    a: f64,
}

impl Channel2Sym {
    pub fn new(p: f64, a: f64) -> Result<Self> {
        Ok(Self {
            p: check_positive("P", p)?,
            a: check_positive("a", a)?,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Interference-to-noise ratio `aP`.
    pub fn inr(&self) -> f64 {
        self.a * self.p
    }
}

/// Two-user asymmetric channel. Receiver 1 sees user 2 at `a1·P2`, receiver 2
/// sees user 1 at `a2·P1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel2Asym {
    p1: f64,
    p2: f64,
    a1: f64,
    a2: f64,
}

impl Channel2Asym {
    /// Users are labelled so that `P1 ≥ P2`.
    pub fn new(p1: f64, p2: f64, a1: f64, a2: f64) -> Result<Self> {
        let p1 = check_positive("P1", p1)?;
        let p2 = check_positive("P2", p2)?;
        if p1 < p2 {
            return Err(Error::Domain {
                name: "P2",
                value: p2,
                reason: "users must be ordered so that P1 >= P2",
            });
        }
        Ok(Self {
            p1,
            p2,
            a1: check_positive("a1", a1)?,
            a2: check_positive("a2", a2)?,
        })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// `(P_i, a_i)` for user `i ∈ {0, 1}`.
    pub(crate) fn user(&self, i: usize) -> (f64, f64) {
        if i == 0 {
            (self.p1, self.a1)
        } else {
            (self.p2, self.a2)
        }
    }
}

/// K-user symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelKSym {
    k: usize,
    p: f64,
    a: f64,
}

impl ChannelKSym {
    pub fn new(k: usize, p: f64, a: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain {
                name: "K",
                value: k as f64,
                reason: "need at least two users",
            });
        }
        Ok(Self {
            k,
            p: check_positive("P", p)?,
            a: check_positive("a", a)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn inr(&self) -> f64 {
        self.a * self.p
    }

    pub fn num_interferers(&self) -> usize {
        self.k - 1
    }
}

/// Two-user symmetric interference regimes, ordered by interference level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime2 {
    Noisy,
    Weak,
    Strong,
    VeryStrong,
}

/// Two-user asymmetric regimes. The mixed regime (exactly one cross gain
/// above one) is split by which link limits the sum rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeAsym {
    Noisy,
    Weak,
    MixedDirectLimited,
    MixedCrossLimited,
    Strong,
}

/// K-user symmetric interference regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeK {
    Noisy,
    Weak,
    Strong,
    VeryStrong,
}

impl Regime2 {
    pub fn label(self) -> &'static str {
        match self {
            Regime2::Noisy => "Noisy",
            Regime2::Weak => "Weak",
            Regime2::Strong => "Strong",
            Regime2::VeryStrong => "VeryStrong",
        }
    }
}

impl RegimeAsym {
    pub fn label(self) -> &'static str {
        match self {
            RegimeAsym::Noisy => "Noisy",
            RegimeAsym::Weak => "Weak",
            RegimeAsym::MixedDirectLimited => "MixedDirectLimited",
            RegimeAsym::MixedCrossLimited => "MixedCrossLimited",
            RegimeAsym::Strong => "Strong",
        }
    }
}

impl RegimeK {
    pub fn label(self) -> &'static str {
        match self {
            RegimeK::Noisy => "Noisy",
            RegimeK::Weak => "Weak",
            RegimeK::Strong => "Strong",
            RegimeK::VeryStrong => "VeryStrong",
        }
    }
}

macro_rules! impl_display_label {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }
    )*};
}
impl_display_label!(Regime2, RegimeAsym, RegimeK);

/// Upper edge of the noisy regime, `(−1 + √(1+4P)) / (2P)`.
///
/// Evaluated as `2 / (1 + √(1+4P))`, which is the same number without the
/// cancellation at small `P`.
pub fn noisy_boundary(p: f64) -> f64 {
    2.0 / (1.0 + (1.0 + 4.0 * p).sqrt())
}

/// ISR at which IAN and TDMA tie, `(−1 + √(1+2P)) / (2P)`, evaluated as
/// `1 / (1 + √(1+2P))`.
pub fn ian_tdma_crossover(p: f64) -> f64 {
    1.0 / (1.0 + (1.0 + 2.0 * p).sqrt())
}

pub fn classify2sym(ch: &Channel2Sym) -> Regime2 {
    let (p, a) = (ch.p, ch.a);
    if a <= noisy_boundary(p) {
        Regime2::Noisy
    } else if a <= 1.0 {
        Regime2::Weak
    } else if a <= 1.0 + p {
        Regime2::Strong
    } else {
        Regime2::VeryStrong
    }
}

pub fn classify2asym(ch: &Channel2Asym) -> RegimeAsym {
    let (p1, a1) = ch.user(0);
    let (p2, a2) = ch.user(1);
    // a_i (1 + a_j P_i) for (i, j) = (1, 2) and (2, 1).
    let lhs1 = a1 * (1.0 + a2 * p1);
    let lhs2 = a2 * (1.0 + a1 * p2);
    match (a1 > 1.0, a2 > 1.0) {
        (true, true) => RegimeAsym::Strong,
        (false, false) => {
            if lhs1 <= 1.0 && lhs2 <= 1.0 {
                RegimeAsym::Noisy
            } else {
                RegimeAsym::Weak
            }
        }
        (true, false) => mixed(lhs1, p1),
        (false, true) => mixed(lhs2, p2),
    }
}

fn mixed(lhs_strong_user: f64, p_strong_user: f64) -> RegimeAsym {
    if lhs_strong_user >= 1.0 + p_strong_user {
        RegimeAsym::MixedDirectLimited
    } else {
        RegimeAsym::MixedCrossLimited
    }
}

/// The two quantities the K-user regime tests compare, kept together so the
/// comparisons can switch between linear and log evaluation.
struct KPowers {
    k: usize,
    /// `1 + (K−1)aP`: total received power with only interference.
    interference: f64,
    /// `1 + (K−1)aP + P`: total received power.
    total: f64,
    p: f64,
}

impl KPowers {
    fn new(ch: &ChannelKSym) -> Self {
        let ia = (ch.k - 1) as f64 * ch.a * ch.p;
        Self {
            k: ch.k,
            interference: 1.0 + ia,
            total: 1.0 + ia + ch.p,
            p: ch.p,
        }
    }

    /// `total^(K−1) > interference^K`.
    fn noisy(&self) -> bool {
        let k = self.k as i32;
        let lhs = self.total.powi(k - 1);
        let rhs = self.interference.powi(k);
        if lhs.is_finite() && rhs.is_finite() {
            lhs > rhs
        } else {
            (k - 1) as f64 * self.total.ln() > k as f64 * self.interference.ln()
        }
    }

    /// `total ≥ (1 + P)^K`.
    fn very_strong(&self) -> bool {
        let rhs = (1.0 + self.p).powi(self.k as i32);
        if rhs.is_finite() {
            self.total >= rhs
        } else {
            self.total.ln() >= self.k as f64 * self.p.ln_1p()
        }
    }
}

/// Classifies the K-user symmetric channel.
///
/// The powers are compared directly when `(1+P)^K` fits in a double and in
/// the log domain otherwise, so small integer cases land exactly on their
/// boundaries while large `K·log P` does not overflow.
pub fn classify_k_sym(ch: &ChannelKSym) -> RegimeK {
    let pw = KPowers::new(ch);
    if pw.noisy() {
        RegimeK::Noisy
    } else if pw.very_strong() {
        RegimeK::VeryStrong
    } else if ch.a < 1.0 {
        RegimeK::Weak
    } else {
        RegimeK::Strong
    }
}

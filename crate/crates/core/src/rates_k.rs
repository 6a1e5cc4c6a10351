//! K-user symmetric rates.
//!
//! Receiver 1 is analysed throughout; by symmetry it determines the
//! symmetric rate. Interferers are users `2..=K`.
//!
//! Two families of functions live here. The closed forms
//! ([`rate_sym_p2p_k_closed`], [`rate_sym_etw_k_closed`]) are what callers
//! should use. The oracles ([`rate_sym_subset`], [`rate_sym_p2p_k_oracle`],
//! [`rate_sym_etw_k_oracle`]) enumerate decode sets or constraint
//! cardinalities directly and exist to check the closed forms; they are
//! exponential in `K`.

use crate::channel::{classify_k_sym, log2_1p, ChannelKSym, RegimeK};
use crate::error::{check_positive, Error, Result};
use crate::par::{self, Exec};
use crate::rates2::{ActiveBound, RateResult, Scheme};

/// Largest `K` the enumeration oracles accept (`2^(K−1)` decode sets).
pub const MAX_ORACLE_USERS: usize = 20;

/// A set `S ⊆ {2, …, K}` of interferers that receiver 1 decodes jointly with
/// its own message. Stored as a bitmask where bit `i − 2` stands for user `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecodeSubset {
    k: usize,
    mask: u32,
}

impl DecodeSubset {
    /// Builds `S` from 1-based user indices.
    pub fn new(k: usize, members: &[usize]) -> Result<Self> {
        if !(2..=32).contains(&k) {
            return Err(Error::Subset(format!("K = {k} outside 2..=32")));
        }
        let mut mask = 0u32;
        for &m in members {
            if m < 2 || m > k {
                return Err(Error::Subset(format!(
                    "user {m} is not an interferer of receiver 1 (K = {k})"
                )));
            }
            let bit = 1u32 << (m - 2);
            if mask & bit != 0 {
                return Err(Error::Subset(format!("user {m} listed twice")));
            }
            mask |= bit;
        }
        Ok(Self { k, mask })
    }

    pub fn empty(k: usize) -> Self {
        Self { k, mask: 0 }
    }

    /// All interferers `{2, …, K}`.
    pub fn full(k: usize) -> Self {
        Self {
            k,
            mask: full_mask(k),
        }
    }

    pub(crate) fn from_mask(k: usize, mask: u32) -> Self {
        Self { k, mask }
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.k)
    }

    /// 1-based user indices in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.k - 1)
            .filter(|b| self.mask & (1 << b) != 0)
            .map(|b| b + 2)
            .collect()
    }

    fn check(&self, ch: &ChannelKSym) -> Result<()> {
        if self.k != ch.k() {
            return Err(Error::Subset(format!(
                "subset built for K = {} used with K = {}",
                self.k,
                ch.k()
            )));
        }
        Ok(())
    }
}

fn full_mask(k: usize) -> u32 {
    if k > 32 {
        u32::MAX
    } else {
        (1u32 << (k - 1)) - 1
    }
}

/// `I(X1, X_T; Y1 | X_{S∖T})` for the Gaussian channel: users `{1} ∪ T` are
/// decoded, `S ∖ T` is known, and the interferers outside `S` are noise.
fn conditional_mi(ch: &ChannelKSym, s_mask: u32, t_mask: u32) -> f64 {
    let inr = ch.inr();
    let mut decoded = ch.p();
    let mut residual = 1.0;
    for b in 0..ch.num_interferers() {
        let bit = 1u32 << b;
        if t_mask & bit != 0 {
            decoded += inr;
        } else if s_mask & bit == 0 {
            residual += inr;
        }
    }
    log2_1p(decoded / residual)
}

/// Symmetric rate when receiver 1 decodes `S`: the minimum over every
/// `T ⊆ S` of `I(X1, X_T; Y1 | X_{S∖T}) / (|T| + 1)`.
///
/// Enumerates all `2^|S|` subsets `T`.
pub fn rate_sym_subset(ch: &ChannelKSym, s: &DecodeSubset) -> Result<f64> {
    s.check(ch)?;
    let s_mask = s.mask;
    // Walk the submasks of s_mask, including 0.
    let mut t = s_mask;
    let mut best = f64::INFINITY;
    loop {
        let v = conditional_mi(ch, s_mask, t) / (t.count_ones() as f64 + 1.0);
        best = best.min(v);
        if t == 0 {
            break;
        }
        t = (t - 1) & s_mask;
    }
    Ok(best)
}

/// The two candidate bounds for a decode set `S`:
/// `(I(X1; Y1 | X_S), I(X1, X_S; Y1) / (|S| + 1))`.
pub fn subset_bounds(ch: &ChannelKSym, s_len: usize) -> (f64, f64) {
    let (p, inr) = (ch.p(), ch.inr());
    let noise = 1.0 + (ch.num_interferers() - s_len) as f64 * inr;
    let individual = log2_1p(p / noise);
    let total = log2_1p((p + s_len as f64 * inr) / noise) / (s_len as f64 + 1.0);
    (individual, total)
}

/// Symmetric rate for decode set `S` using only the individual and the total
/// sum bound.
pub fn rate_sym_subset_twobound(ch: &ChannelKSym, s: &DecodeSubset) -> Result<f64> {
    s.check(ch)?;
    let (individual, total) = subset_bounds(ch, s.len());
    Ok(individual.min(total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct P2pOracle {
    pub rate: RateResult,
    /// Decode set attaining the maximum; the first in bitmask order on ties.
    pub argmax: DecodeSubset,
}

fn oracle_size_check(k: usize) -> Result<()> {
    if k > MAX_ORACLE_USERS {
        return Err(Error::Resource {
            what: "decode-subset enumeration",
            size: k,
            limit: MAX_ORACLE_USERS,
        });
    }
    Ok(())
}

/// Symmetric rate of Gaussian point-to-point codes by brute force: the
/// maximum over all decode sets `S` of [`rate_sym_subset`].
pub fn rate_sym_p2p_k_oracle(ch: &ChannelKSym) -> Result<P2pOracle> {
    rate_sym_p2p_k_oracle_with(ch, Exec::default())
}

pub fn rate_sym_p2p_k_oracle_with(ch: &ChannelKSym, exec: Exec) -> Result<P2pOracle> {
    oracle_size_check(ch.k())?;
    let k = ch.k();
    let n = 1usize << (k - 1);
    let values = par::map_range(exec, n, |mask| {
        rate_sym_subset(ch, &DecodeSubset::from_mask(k, mask as u32))
    });
    let mut best = (f64::NEG_INFINITY, 0u32);
    for (mask, v) in values.into_iter().enumerate() {
        let v = v?;
        if v > best.0 {
            best = (v, mask as u32);
        }
    }
    let argmax = DecodeSubset::from_mask(k, best.1);
    let (scheme, bound) = if argmax.is_empty() {
        (Scheme::Ian, ActiveBound::IndividualIan)
    } else {
        let (individual, total) = subset_bounds(ch, argmax.len());
        let b = if individual <= total {
            ActiveBound::Individual
        } else {
            ActiveBound::Sum
        };
        (Scheme::JointCapacity, b)
    };
    Ok(P2pOracle {
        rate: RateResult::new(best.0, scheme, bound),
        argmax,
    })
}

/// Closed-form symmetric rate of Gaussian point-to-point codes, by regime:
/// IAN when noisy, the K-user sum bound when weak or strong, and the
/// interference-free rate when very strong.
pub fn rate_sym_p2p_k_closed(ch: &ChannelKSym) -> RateResult {
    let k = ch.k() as f64;
    let (p, inr) = (ch.p(), ch.inr());
    match classify_k_sym(ch) {
        RegimeK::Noisy => RateResult::new(
            log2_1p(p / (1.0 + (k - 1.0) * inr)),
            Scheme::Ian,
            ActiveBound::IndividualIan,
        ),
        RegimeK::Weak | RegimeK::Strong => RateResult::new(
            log2_1p(p + (k - 1.0) * inr) / k,
            Scheme::JointCapacity,
            ActiveBound::Sum,
        ),
        RegimeK::VeryStrong => {
            RateResult::new(log2_1p(p), Scheme::JointCapacity, ActiveBound::Individual)
        }
    }
}

/// `(1/K)·log2(1 + KP)`.
pub fn rate_sym_tdma_k(k: usize, p: f64) -> Result<RateResult> {
    if k < 2 {
        return Err(Error::Domain {
            name: "K",
            value: k as f64,
            reason: "need at least two users",
        });
    }
    let p = check_positive("P", p)?;
    let k = k as f64;
    Ok(RateResult::new(
        log2_1p(k * p) / k,
        Scheme::Tdma,
        ActiveBound::Tdma,
    ))
}

/// `log2(1 + P/(1 + (K−1)aP))`: every interferer treated as noise.
pub fn rate_sym_ian_k(ch: &ChannelKSym) -> RateResult {
    let k = ch.k() as f64;
    RateResult::new(
        log2_1p(ch.p() / (1.0 + (k - 1.0) * ch.inr())),
        Scheme::Ian,
        ActiveBound::IndividualIan,
    )
}

/// Better of Gaussian point-to-point codes and TDMA.
pub fn rate_sym_p2p_combined_k(ch: &ChannelKSym) -> RateResult {
    let codes = rate_sym_p2p_k_closed(ch);
    let tdma = rate_sym_tdma_k(ch.k(), ch.p()).expect("channel invariants hold");
    let best = if codes.value >= tdma.value {
        codes
    } else {
        tdma
    };
    RateResult::new(best.value, Scheme::P2pCombined, best.active_bound)
}

/// Per-user common and private rates of the K-user ETW scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtwKSplit {
    pub common_rate: f64,
    pub private_rate: f64,
}

impl EtwKSplit {
    pub fn total(&self) -> f64 {
        self.common_rate + self.private_rate
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtwKRate {
    pub rate: RateResult,
    pub split: EtwKSplit,
}

/// Pieces shared by the ETW closed form and its oracle when `aP > 1`.
struct EtwKTerms {
    k: f64,
    /// Common power of an interferer above the noise floor, `aP − 1`.
    cross: f64,
    /// Own common power, `P − 1/a`.
    own: f64,
    /// Noise floor for common decoding, `K + 1/a`.
    floor: f64,
}

impl EtwKTerms {
    fn new(ch: &ChannelKSym) -> Self {
        let a = ch.a();
        Self {
            k: ch.k() as f64,
            cross: ch.inr() - 1.0,
            own: ch.p() - 1.0 / a,
            floor: ch.k() as f64 + 1.0 / a,
        }
    }

    /// `log2(1 + 1/(Ka))`.
    fn private(&self, a: f64) -> f64 {
        log2_1p(1.0 / (self.k * a))
    }

    /// Bound on the sum of `n` interferers' common rates with the own common
    /// message known.
    fn cross_bound(&self, n: f64) -> f64 {
        log2_1p(n * self.cross / self.floor)
    }

    /// Bound on the own common message plus `n` interferers' common messages.
    fn with_own_bound(&self, n: f64) -> f64 {
        log2_1p((n * self.cross + self.own) / self.floor)
    }
}

/// Closed-form symmetric rate of the K-user ETW scheme.
pub fn rate_sym_etw_k_closed(ch: &ChannelKSym) -> EtwKRate {
    let (k, p, a) = (ch.k() as f64, ch.p(), ch.a());
    if a <= 1.0 / p {
        let private = log2_1p(p / (1.0 + (k - 1.0) * ch.inr()));
        return EtwKRate {
            rate: RateResult::new(private, Scheme::Etw, ActiveBound::EtwPrivate),
            split: EtwKSplit {
                common_rate: 0.0,
                private_rate: private,
            },
        };
    }
    let t = EtwKTerms::new(ch);
    let total = t.with_own_bound(k - 1.0) / k;
    let individual = if a < 1.0 {
        t.cross_bound(k - 1.0) / (k - 1.0)
    } else {
        t.with_own_bound(0.0)
    };
    let (common, bound) = if individual <= total {
        (individual, ActiveBound::EtwCommonIndividual)
    } else {
        (total, ActiveBound::EtwCommonSum)
    };
    let split = EtwKSplit {
        common_rate: common,
        private_rate: t.private(a),
    };
    EtwKRate {
        rate: RateResult::new(split.total(), Scheme::Etw, bound),
        split,
    }
}

/// Per-user common-rate bound from every constraint cardinality
/// `k = 1, …, K`: `(1/k)·min{cross_bound(k), with_own_bound(k−1)}` for `k < K`
/// and `(1/K)·with_own_bound(K−1)` for the full set. One constraint per
/// cardinality suffices on the symmetric channel.
pub fn etw_k_cardinality_bounds(ch: &ChannelKSym) -> Result<Vec<f64>> {
    if ch.inr() <= 1.0 {
        return Err(Error::Domain {
            name: "aP",
            value: ch.inr(),
            reason: "ETW common messages need aP > 1",
        });
    }
    let t = EtwKTerms::new(ch);
    let kk = ch.k();
    Ok((1..=kk)
        .map(|card| {
            let n = card as f64;
            let bound = if card < kk {
                t.cross_bound(n).min(t.with_own_bound(n - 1.0))
            } else {
                t.with_own_bound(n - 1.0)
            };
            bound / n
        })
        .collect())
}

/// Symmetric ETW rate by enumerating every constraint cardinality.
pub fn rate_sym_etw_k_oracle(ch: &ChannelKSym) -> Result<f64> {
    oracle_size_check(ch.k())?;
    let bounds = etw_k_cardinality_bounds(ch)?;
    let common = bounds.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(common + EtwKTerms::new(ch).private(ch.a()))
}

/// `(1/K)·log2(KP)`, the high-SNR form of the TDMA rate.
pub fn approx_tdma(k: usize, p: f64) -> Result<f64> {
    let kp = k as f64 * p;
    if !(kp > 1.0) || !kp.is_finite() {
        return Err(Error::Domain {
            name: "KP",
            value: kp,
            reason: "approximate TDMA rate needs KP > 1",
        });
    }
    Ok(kp.log2() / k as f64)
}

/// High-SNR form of the ETW rate:
/// `log2(1 + 1/(Ka)) + min{(1/(K−1))·log2((K−1)(aP−1)/(K+1/a)), (1/K)·log2(K(P−1/a)/(K+1/a))}`.
pub fn approx_etw_k(k: usize, p: f64, a: f64) -> Result<f64> {
    Ok(approx_etw_k_rate(k, p, a)?.value)
}

/// [`approx_etw_k`] with the term that attains the minimum. The value can be
/// negative close to `aP = 1`, where the approximation is poor.
pub fn approx_etw_k_rate(k: usize, p: f64, a: f64) -> Result<ApproxRate> {
    let ch = ChannelKSym::new(k, p, a)?;
    let t = EtwKTerms::new(&ch);
    if !(t.cross > 0.0) || !(t.own > 0.0) {
        return Err(Error::Domain {
            name: "aP",
            value: ch.inr(),
            reason: "approximate ETW rate needs aP > 1",
        });
    }
    let kf = t.k;
    let first = ((kf - 1.0) * t.cross / t.floor).log2() / (kf - 1.0);
    let second = (kf * t.own / t.floor).log2() / kf;
    let (common, bound) = if first <= second {
        (first, ActiveBound::EtwCommonIndividual)
    } else {
        (second, ActiveBound::EtwCommonSum)
    };
    Ok(ApproxRate {
        value: t.private(a) + common,
        active_bound: bound,
    })
}

/// An approximate rate; unlike [`RateResult`] the value may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRate {
    pub value: f64,
    pub active_bound: ActiveBound,
}

/// The `K = 3` specialisation of [`approx_etw_k`]:
/// `min{½·log2((2/3)·g3(a)), ⅓·log2((P − 1/a)(1 + 1/(3a))²)}` with
/// `g3(a) = (aP − 1)(1 + 1/(3a))`.
pub fn approx_etw_k3(p: f64, a: f64) -> Result<f64> {
    let g3 = (a * p - 1.0) * (1.0 + 1.0 / (3.0 * a));
    let own = p - 1.0 / a;
    if !(g3 > 0.0) || !(own > 0.0) {
        return Err(Error::Domain {
            name: "aP",
            value: a * p,
            reason: "approximate ETW rate needs aP > 1",
        });
    }
    let q = 1.0 + 1.0 / (3.0 * a);
    Ok((0.5 * (2.0 / 3.0 * g3).log2()).min((own * q * q).log2() / 3.0))
}

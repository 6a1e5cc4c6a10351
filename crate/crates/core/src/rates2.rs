//! Two-user rates: symmetric rates of point-to-point coding (IAN, joint
//! decoding, TDMA) and of the ETW common/private split, maximum sum rates on
//! the asymmetric channel, and the vertices of the achievable regions.

use std::fmt;

use crate::channel::{
    classify2asym, classify2sym, log2_1p, Channel2Asym, Channel2Sym, Regime2, RegimeAsym,
};
use crate::error::{check_positive, Error, Result};
use crate::numerics::find_a0;

/// Transmission scheme that produced a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Ian,
    Tdma,
    /// Union of point-to-point capacity-achieving codes and TDMA.
    P2pCombined,
    Etw,
    /// Joint (simultaneous) decoding with point-to-point codes.
    JointCapacity,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Ian => "IAN",
            Scheme::Tdma => "TDMA",
            Scheme::P2pCombined => "P2P-combined",
            Scheme::Etw => "ETW",
            Scheme::JointCapacity => "JointCapacity",
        }
    }
}

/// The constraint that binds at the reported rate. The label set is fixed so
/// sweep output stays machine-readable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActiveBound {
    /// Single-user rate with interference treated as noise.
    IndividualIan,
    /// Interference-free single-user bound `log2(1+P)`.
    Individual,
    /// Joint-decoding sum bound at a receiver.
    Sum,
    /// Time-sharing point.
    Tdma,
    /// ETW with all messages private (`a ≤ 1/P`).
    EtwPrivate,
    /// ETW limited by the sum of common rates.
    EtwCommonSum,
    /// ETW limited by a single (or `K−1`-user) common-rate bound.
    EtwCommonIndividual,
}

impl ActiveBound {
    pub fn label(self) -> &'static str {
        match self {
            ActiveBound::IndividualIan => "individual-IAN",
            ActiveBound::Individual => "individual",
            ActiveBound::Sum => "sum",
            ActiveBound::Tdma => "tdma",
            ActiveBound::EtwPrivate => "ETW-private",
            ActiveBound::EtwCommonSum => "ETW-common-sum",
            ActiveBound::EtwCommonIndividual => "ETW-common-individual",
        }
    }

    pub const ALL: [ActiveBound; 7] = [
        ActiveBound::IndividualIan,
        ActiveBound::Individual,
        ActiveBound::Sum,
        ActiveBound::Tdma,
        ActiveBound::EtwPrivate,
        ActiveBound::EtwCommonSum,
        ActiveBound::EtwCommonIndividual,
    ];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for ActiveBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A rate in bits per channel use with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub value: f64,
    pub scheme: Scheme,
    pub active_bound: ActiveBound,
}

impl RateResult {
    pub(crate) fn new(value: f64, scheme: Scheme, active_bound: ActiveBound) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0, "rate {value}");
        Self {
            value,
            scheme,
            active_bound,
        }
    }
}

/// `log2(1 + P/(1+aP))`, each receiver treating the other user as noise.
pub fn rate_sym_ian(ch: &Channel2Sym) -> RateResult {
    let v = log2_1p(ch.p() / (1.0 + ch.inr()));
    RateResult::new(v, Scheme::Ian, ActiveBound::IndividualIan)
}

/// `½·log2(1+2P)`: each user alone for half the time at full power.
pub fn rate_sym_tdma2(p: f64) -> Result<RateResult> {
    let p = check_positive("P", p)?;
    Ok(RateResult::new(
        0.5 * log2_1p(2.0 * p),
        Scheme::Tdma,
        ActiveBound::Tdma,
    ))
}

/// Symmetric rate of the combined point-to-point scheme (p2p codes with the
/// better of IAN/simultaneous decoding, plus TDMA).
pub fn rate_sym_p2p(ch: &Channel2Sym) -> RateResult {
    let p = ch.p();
    let tdma = 0.5 * log2_1p(2.0 * p);
    let individual = log2_1p(p);
    let (value, bound) = match classify2sym(ch) {
        Regime2::Noisy => {
            let ian = rate_sym_ian(ch).value;
            if ian >= tdma {
                (ian, ActiveBound::IndividualIan)
            } else {
                (tdma, ActiveBound::Tdma)
            }
        }
        // ½log2(1+P+aP) ≤ ½log2(1+2P) for a ≤ 1.
        Regime2::Weak => (tdma, ActiveBound::Tdma),
        Regime2::Strong => {
            let sum_half = 0.5 * log2_1p(p + ch.inr());
            if individual <= sum_half {
                (individual, ActiveBound::Individual)
            } else {
                (sum_half, ActiveBound::Sum)
            }
        }
        Regime2::VeryStrong => (individual, ActiveBound::Individual),
    };
    RateResult::new(value, Scheme::P2pCombined, bound)
}

/// The two terms of the ETW minimum for `1/P < a ≤ 1`:
/// `(½log2(1+P+aP) + ½log2(2+1/a) − 1, log2(1+aP+1/a) − 1)`.
pub fn etw_terms(ch: &Channel2Sym) -> (f64, f64) {
    let (p, a) = (ch.p(), ch.a());
    let sum = 0.5 * log2_1p(p + a * p) + 0.5 * (2.0 + 1.0 / a).log2() - 1.0;
    let individual = (1.0 + a * p + 1.0 / a).log2() - 1.0;
    (sum, individual)
}

fn etw_domain(ch: &Channel2Sym) -> Result<()> {
    if ch.a() > 1.0 {
        return Err(Error::Unsupported {
            what: "two-user ETW symmetric rate",
            reason: format!(
                "a = {} > 1; the formula covers 0 < a <= 1 (use the p2p rate, which is capacity there)",
                ch.a()
            ),
        });
    }
    Ok(())
}

/// Symmetric rate of the ETW scheme for `0 < a ≤ 1`.
pub fn rate_sym_etw(ch: &Channel2Sym) -> Result<RateResult> {
    etw_domain(ch)?;
    if ch.a() <= 1.0 / ch.p() {
        let v = rate_sym_ian(ch).value;
        return Ok(RateResult::new(v, Scheme::Etw, ActiveBound::EtwPrivate));
    }
    let (sum, individual) = etw_terms(ch);
    let (v, bound) = if sum < individual {
        (sum, ActiveBound::EtwCommonSum)
    } else {
        (individual, ActiveBound::EtwCommonIndividual)
    };
    Ok(RateResult::new(v, Scheme::Etw, bound))
}

/// Which term limits the ETW rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtwBranch {
    /// `a ≤ 1/P`: every message is private.
    AllPrivate,
    /// `a0 < a ≤ 1`: common sum bound.
    SumBound,
    /// `1/P < a ≤ a0`: individual common bound.
    IndividualBound,
}

impl EtwBranch {
    pub fn active_bound(self) -> ActiveBound {
        match self {
            EtwBranch::AllPrivate => ActiveBound::EtwPrivate,
            EtwBranch::SumBound => ActiveBound::EtwCommonSum,
            EtwBranch::IndividualBound => ActiveBound::EtwCommonIndividual,
        }
    }
}

/// Branch of the ETW rate from the position of `a` relative to `1/P` and the
/// root `a0` of `f`, without evaluating either rate term.
pub fn etw_branch(ch: &Channel2Sym) -> Result<EtwBranch> {
    etw_domain(ch)?;
    if ch.a() <= 1.0 / ch.p() {
        return Ok(EtwBranch::AllPrivate);
    }
    let a0 = find_a0(ch.p())?;
    Ok(if ch.a() <= a0 {
        EtwBranch::IndividualBound
    } else {
        EtwBranch::SumBound
    })
}

/// Maximum sum rate of point-to-point capacity-achieving codes on the
/// asymmetric channel, in the noisy, weak and mixed regimes.
pub fn sum_rate_p2p_asym(ch: &Channel2Asym) -> Result<RateResult> {
    let (p1, a1) = ch.user(0);
    let (p2, a2) = ch.user(1);
    let regime = classify2asym(ch);
    let (value, scheme, bound) = match regime {
        RegimeAsym::Noisy => (
            log2_1p(p1 / (1.0 + a1 * p2)) + log2_1p(p2 / (1.0 + a2 * p1)),
            Scheme::Ian,
            ActiveBound::IndividualIan,
        ),
        RegimeAsym::Weak => (
            log2_1p(p1 + a1 * p2).max(log2_1p(a2 * p1 + p2)),
            Scheme::JointCapacity,
            ActiveBound::Sum,
        ),
        RegimeAsym::MixedCrossLimited | RegimeAsym::MixedDirectLimited => {
            // i: the user whose receiver sees the strong cross link.
            let (i, j) = if a1 > 1.0 { (0, 1) } else { (1, 0) };
            let (pi, ai) = ch.user(i);
            let (pj, aj) = ch.user(j);
            if regime == RegimeAsym::MixedCrossLimited {
                (
                    log2_1p(pi + ai * pj),
                    Scheme::JointCapacity,
                    ActiveBound::Sum,
                )
            } else {
                (
                    log2_1p(pj / (1.0 + aj * pi)) + log2_1p(pi),
                    Scheme::JointCapacity,
                    ActiveBound::Individual,
                )
            }
        }
        RegimeAsym::Strong => {
            return Err(Error::Unsupported {
                what: "p2p sum rate",
                reason: "no closed-form sum rate in the strong regime (both a_i > 1)".into(),
            })
        }
    };
    Ok(RateResult::new(value, scheme, bound))
}

/// Sum rate when both receivers treat interference as noise,
/// `Σ log2(1 + P_i/(1 + a_i P_j))`; defined in every regime.
pub fn sum_rate_ian_asym(ch: &Channel2Asym) -> RateResult {
    let (p1, a1) = ch.user(0);
    let (p2, a2) = ch.user(1);
    RateResult::new(
        log2_1p(p1 / (1.0 + a1 * p2)) + log2_1p(p2 / (1.0 + a2 * p1)),
        Scheme::Ian,
        ActiveBound::IndividualIan,
    )
}

/// Achievable regions of the two-user symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Both receivers treat interference as noise.
    C0,
    /// Simultaneous decoding: individual bounds plus a sum bound.
    C1,
    /// Individual interference-free bounds only.
    C1Prime,
    /// Capacity region of p2p codes for the channel's regime.
    Capacity,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::C0 => "C0",
            Region::C1 => "C1",
            Region::C1Prime => "C1prime",
            Region::Capacity => "Capacity",
        }
    }

    pub fn parse(s: &str) -> Option<Region> {
        match s {
            "C0" | "c0" => Some(Region::C0),
            "C1" | "c1" => Some(Region::C1),
            "C1prime" | "c1prime" | "C1'" => Some(Region::C1Prime),
            "Capacity" | "capacity" => Some(Region::Capacity),
            _ => None,
        }
    }
}

/// Boundary polygon of a down-closed rate region, counter-clockwise from the
/// origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionVertices {
    pub vertices: Vec<(f64, f64)>,
}

/// Upper boundary of a down-closed polygon as a staircase of corner points
/// sorted by increasing `R1`, ending on the `R1` axis.
#[derive(Debug, Clone)]
struct Frontier {
    /// `(R1, R2)` corners from `(0, R2max)` to `(R1max, 0)`.
    corners: Vec<(f64, f64)>,
}

impl Frontier {
    /// Rectangle with side bounds `r1`, `r2` and an optional sum bound.
    fn pentagon(r1: f64, r2: f64, sum: Option<f64>) -> Self {
        let mut corners = vec![(0.0, r2)];
        match sum {
            Some(s) if s < r1 + r2 => {
                corners.push(((s - r2).max(0.0), r2));
                corners.push((r1, (s - r1).max(0.0)));
            }
            _ => corners.push((r1, r2)),
        }
        corners.push((r1, 0.0));
        Frontier { corners }
    }

    fn x_max(&self) -> f64 {
        self.corners.last().map_or(0.0, |c| c.0)
    }

    /// Highest `R2` of the region at `x` approached from the left (`left`) or
    /// from the right; `None` outside the region's `R1` range.
    fn height(&self, x: f64, left: bool) -> Option<f64> {
        if x < 0.0 || x > self.x_max() || (!left && x >= self.x_max()) {
            return None;
        }
        let c = &self.corners;
        let mut best: Option<f64> = None;
        for w in c.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            let inside = if left {
                x > x0 && x <= x1 || (x == 0.0 && x0 == 0.0)
            } else {
                x >= x0 && x < x1
            };
            if !inside {
                continue;
            }
            let y = if x1 == x0 {
                y0.max(y1)
            } else {
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            };
            best = Some(best.map_or(y, |b: f64| b.max(y)));
        }
        best
    }

    fn segments(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        self.corners.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Outer boundary of the union of down-closed regions.
fn union(frontiers: &[Frontier]) -> RegionVertices {
    let mut xs: Vec<f64> = frontiers
        .iter()
        .flat_map(|f| f.corners.iter().map(|c| c.0))
        .collect();
    // Crossings between non-vertical edges of different regions.
    for (i, fa) in frontiers.iter().enumerate() {
        for fb in &frontiers[i + 1..] {
            for (p0, p1) in fa.segments() {
                for (q0, q1) in fb.segments() {
                    if let Some(x) = crossing(p0, p1, q0, q1) {
                        xs.push(x);
                    }
                }
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs().max(1.0));

    let envelope = |x: f64, left: bool| {
        frontiers
            .iter()
            .filter_map(|f| f.height(x, left))
            .fold(None, |acc: Option<f64>, y| {
                Some(acc.map_or(y, |a| a.max(y)))
            })
    };
    // Upper boundary traversed with increasing R1.
    let mut top: Vec<(f64, f64)> = Vec::new();
    for &x in &xs {
        let l = envelope(x, true);
        let r = envelope(x, false);
        let (hi, lo) = match (l, r) {
            (Some(l), Some(r)) => (l.max(r), l.min(r)),
            (Some(l), None) => (l, 0.0),
            (None, Some(r)) => (r, r),
            (None, None) => continue,
        };
        // Left limit first when descending at a vertical edge.
        let left_y = l.unwrap_or(hi);
        if left_y >= hi {
            top.push((x, hi));
            if lo < hi {
                top.push((x, lo));
            }
        } else {
            top.push((x, lo));
            top.push((x, hi));
        }
    }
    let x_max = top.last().map_or(0.0, |p| p.0);
    if top.last().is_none_or(|p| p.1 != 0.0) {
        top.push((x_max, 0.0));
    }

    let mut ccw = vec![(0.0, 0.0)];
    ccw.extend(top.iter().rev().copied());
    RegionVertices {
        vertices: simplify(ccw),
    }
}

fn crossing(p0: (f64, f64), p1: (f64, f64), q0: (f64, f64), q1: (f64, f64)) -> Option<f64> {
    if p0.0 == p1.0 || q0.0 == q1.0 {
        return None;
    }
    let sp = (p1.1 - p0.1) / (p1.0 - p0.0);
    let sq = (q1.1 - q0.1) / (q1.0 - q0.0);
    if sp == sq {
        return None;
    }
    // p0.1 + sp (x - p0.0) = q0.1 + sq (x - q0.0)
    let x = (q0.1 - p0.1 + sp * p0.0 - sq * q0.0) / (sp - sq);
    let lo = p0.0.max(q0.0);
    let hi = p1.0.min(q1.0);
    (x > lo && x < hi).then_some(x)
}

/// Drops repeated points and interior points of straight runs.
fn simplify(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let close = |a: (f64, f64), b: (f64, f64)| {
        (a.0 - b.0).abs() <= 1e-14 * a.0.abs().max(1.0)
            && (a.1 - b.1).abs() <= 1e-14 * a.1.abs().max(1.0)
    };
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for p in points {
        if out.last().is_some_and(|&q| close(p, q)) {
            continue;
        }
        out.push(p);
    }
    while out.len() > 1 && close(out[0], *out.last().unwrap()) {
        out.pop();
    }
    let n = out.len();
    if n < 3 {
        return out;
    }
    let mut kept = Vec::with_capacity(n);
    for i in 0..n {
        let prev = out[(i + n - 1) % n];
        let cur = out[i];
        let next = out[(i + 1) % n];
        let cross = (cur.0 - prev.0) * (next.1 - cur.1) - (cur.1 - prev.1) * (next.0 - cur.0);
        let scale = ((cur.0 - prev.0).abs() + (cur.1 - prev.1).abs())
            * ((next.0 - cur.0).abs() + (next.1 - cur.1).abs());
        if cross.abs() > 1e-14 * scale.max(f64::MIN_POSITIVE) {
            kept.push(cur);
        }
    }
    kept
}

/// Boundary vertices of one of the two-user symmetric regions (closures of
/// the open regions).
pub fn region_vertices(ch: &Channel2Sym, region: Region) -> RegionVertices {
    let p = ch.p();
    let ian = rate_sym_ian(ch).value;
    let individual = log2_1p(p);
    let sum = log2_1p(p + ch.inr());
    let c0 = Frontier::pentagon(ian, ian, None);
    let c1 = Frontier::pentagon(individual, individual, Some(sum));
    let c1p = Frontier::pentagon(individual, individual, None);
    let frontiers = match region {
        Region::C0 => vec![c0],
        Region::C1 => vec![c1],
        Region::C1Prime => vec![c1p],
        Region::Capacity => match classify2sym(ch) {
            Regime2::Noisy => vec![c0, c1],
            Regime2::Weak | Regime2::Strong => vec![c1],
            Regime2::VeryStrong => vec![c1p],
        },
    };
    union(&frontiers)
}

impl RegionVertices {
    /// True when the vertex set is unchanged by swapping `R1` and `R2`.
    pub fn is_swap_symmetric(&self, tol: f64) -> bool {
        self.vertices.iter().all(|&(x, y)| {
            self.vertices
                .iter()
                .any(|&(u, v)| (u - y).abs() <= tol && (v - x).abs() <= tol)
        })
    }

    /// Twice the signed area; positive for counter-clockwise order.
    pub fn signed_area2(&self) -> f64 {
        let v = &self.vertices;
        (0..v.len())
            .map(|i| {
                let (x0, y0) = v[i];
                let (x1, y1) = v[(i + 1) % v.len()];
                x0 * y1 - x1 * y0
            })
            .sum()
    }

    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| {
            let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
            (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0) >= -1e-12
        })
    }
}

//! Parameter sweeps with CSV output.
//!
//! A sweep is described by a flat TOML document:
//!
//! ```toml
//! model = "two-sym"          # two-sym | two-asym | k-sym
//! P = 100.0                  # or snr_db = 20.0
//! sweep = "a"                # parameter to vary
//! range = [0.01, 1.0]
//! points = 100
//! spacing = "log"            # linear (default) | log
//! schemes = ["p2p", "etw"]
//! ```
//!
//! `two-asym` takes `P1`, `P2`, `a1`, `a2`; `k-sym` takes `K`, `P`, `a`. The
//! swept parameter must not also be given a fixed value.
//!
//! The CSV has a mandatory header. The first columns are always
//! `model,K,P,a,P1,P2,a1,a2,regime` (cells a model does not use are empty),
//! followed by `rate_<scheme>,bound_<scheme>` for each requested scheme in
//! request order. Numbers use 17 significant digits. A scheme whose domain
//! excludes a grid point leaves both of its cells empty.

use std::io::Write;

use serde::Deserialize;

use crate::channel::{
    classify2asym, classify2sym, classify_k_sym, Channel2Asym, Channel2Sym, ChannelKSym,
};
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::par::{self, Exec};
use crate::rates2::{self, ActiveBound, RateResult};
use crate::rates_k;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    TwoSym,
    TwoAsym,
    KSym,
}

impl Model {
    pub fn label(self) -> &'static str {
        match self {
            Model::TwoSym => "two-sym",
            Model::TwoAsym => "two-asym",
            Model::KSym => "k-sym",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    P,
    A,
    P1,
    P2,
    A1,
    A2,
}

impl Param {
    fn parse(s: &str) -> Option<Param> {
        Some(match s {
            "P" => Param::P,
            "a" => Param::A,
            "P1" => Param::P1,
            "P2" => Param::P2,
            "a1" => Param::A1,
            "a2" => Param::A2,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            Param::P => "P",
            Param::A => "a",
            Param::P1 => "P1",
            Param::P2 => "P2",
            Param::A1 => "a1",
            Param::A2 => "a2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Scheme columns a sweep can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeSel {
    Ian,
    Tdma,
    P2p,
    Etw,
    ApproxEtw,
    ApproxTdma,
}

impl SchemeSel {
    pub fn parse(s: &str) -> Option<SchemeSel> {
        Some(match s {
            "ian" => SchemeSel::Ian,
            "tdma" => SchemeSel::Tdma,
            "p2p" => SchemeSel::P2p,
            "etw" => SchemeSel::Etw,
            "approx-etw" => SchemeSel::ApproxEtw,
            "approx-tdma" => SchemeSel::ApproxTdma,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeSel::Ian => "ian",
            SchemeSel::Tdma => "tdma",
            SchemeSel::P2p => "p2p",
            SchemeSel::Etw => "etw",
            SchemeSel::ApproxEtw => "approx-etw",
            SchemeSel::ApproxTdma => "approx-tdma",
        }
    }

    fn supported_by(self, model: Model) -> bool {
        match model {
            Model::TwoAsym => matches!(self, SchemeSel::Ian | SchemeSel::P2p),
            Model::TwoSym | Model::KSym => true,
        }
    }
}

/// Raw TOML form of a sweep configuration.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: String,
    #[serde(rename = "K")]
    k: Option<usize>,
    #[serde(rename = "P")]
    p: Option<f64>,
    snr_db: Option<f64>,
    a: Option<f64>,
    #[serde(rename = "P1")]
    p1: Option<f64>,
    #[serde(rename = "P2")]
    p2: Option<f64>,
    a1: Option<f64>,
    a2: Option<f64>,
    sweep: String,
    range: [f64; 2],
    points: usize,
    spacing: Option<String>,
    schemes: Vec<String>,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: Model,
    pub k: Option<usize>,
    /// Fixed values of `P, a, P1, P2, a1, a2` (in that order); the swept one
    /// is `None`.
    fixed: [Option<f64>; 6],
    pub param: Param,
    pub range: (f64, f64),
    pub points: usize,
    pub spacing: Spacing,
    pub schemes: Vec<SchemeSel>,
}

fn slot(param: Param) -> usize {
    match param {
        Param::P => 0,
        Param::A => 1,
        Param::P1 => 2,
        Param::P2 => 3,
        Param::A1 => 4,
        Param::A2 => 5,
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl SweepSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawConfig) -> Result<Self> {
        let model = match raw.model.as_str() {
            "two-sym" => Model::TwoSym,
            "two-asym" => Model::TwoAsym,
            "k-sym" => Model::KSym,
            other => {
                return Err(config_err(format!(
                    "field `model`: unknown model {other:?} (expected two-sym, two-asym or k-sym)"
                )))
            }
        };
        let param = Param::parse(&raw.sweep).ok_or_else(|| {
            config_err(format!("field `sweep`: unknown parameter {:?}", raw.sweep))
        })?;
        let allowed: &[Param] = match model {
            Model::TwoSym | Model::KSym => &[Param::P, Param::A],
            Model::TwoAsym => &[Param::P1, Param::P2, Param::A1, Param::A2],
        };
        if !allowed.contains(&param) {
            return Err(config_err(format!(
                "field `sweep`: {} is not a parameter of model {}",
                param.label(),
                model.label()
            )));
        }

        if raw.p.is_some() && raw.snr_db.is_some() {
            return Err(config_err("fields `P` and `snr_db` are mutually exclusive"));
        }
        let p = raw.p.or(raw.snr_db.map(db_to_linear));
        let mut fixed = [p, raw.a, raw.p1, raw.p2, raw.a1, raw.a2];
        let names = ["P", "a", "P1", "P2", "a1", "a2"];
        for (i, name) in names.iter().enumerate() {
            let used = allowed.iter().any(|q| slot(*q) == i);
            let swept = slot(param) == i;
            match (fixed[i], used, swept) {
                (Some(_), _, true) => {
                    return Err(config_err(format!(
                        "field `{name}`: swept parameter must not be fixed"
                    )))
                }
                (Some(_), false, _) => {
                    return Err(config_err(format!(
                        "field `{name}`: not a parameter of model {}",
                        model.label()
                    )))
                }
                (None, true, false) => {
                    return Err(config_err(format!(
                        "field `{name}`: required for model {}",
                        model.label()
                    )))
                }
                (Some(v), true, false) if !(v.is_finite() && v > 0.0) => {
                    return Err(config_err(format!(
                        "field `{name}`: must be positive, got {v}"
                    )))
                }
                _ => {}
            }
        }
        fixed[slot(param)] = None;

        let k = match (model, raw.k) {
            (Model::KSym, Some(k)) if k >= 2 => Some(k),
            (Model::KSym, Some(k)) => {
                return Err(config_err(format!("field `K`: need K >= 2, got {k}")))
            }
            (Model::KSym, None) => return Err(config_err("field `K`: required for model k-sym")),
            (_, Some(_)) => return Err(config_err("field `K`: only used by model k-sym")),
            (_, None) => None,
        };

        let spacing = match raw.spacing.as_deref() {
            None | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => {
                return Err(config_err(format!(
                    "field `spacing`: expected linear or log, got {other:?}"
                )))
            }
        };
        let [lo, hi] = raw.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(config_err(format!(
                "field `range`: need min < max, got [{lo}, {hi}]"
            )));
        }
        if lo <= 0.0 {
            return Err(config_err(format!(
                "field `range`: {} must stay positive",
                param.label()
            )));
        }
        if raw.points < 2 {
            return Err(config_err(format!(
                "field `points`: need at least 2, got {}",
                raw.points
            )));
        }
        if raw.schemes.is_empty() {
            return Err(config_err(
                "field `schemes`: at least one scheme is required",
            ));
        }
        let mut schemes = Vec::with_capacity(raw.schemes.len());
        for s in &raw.schemes {
            let sel = SchemeSel::parse(s).ok_or_else(|| {
                config_err(format!(
                    "field `schemes`: unknown scheme {s:?} (expected ian, tdma, p2p, etw, approx-etw, approx-tdma)"
                ))
            })?;
            if !sel.supported_by(model) {
                return Err(config_err(format!(
                    "field `schemes`: {s} is not available for model {}",
                    model.label()
                )));
            }
            if schemes.contains(&sel) {
                return Err(config_err(format!("field `schemes`: {s} listed twice")));
            }
            schemes.push(sel);
        }

        Ok(SweepSpec {
            model,
            k,
            fixed,
            param,
            range: (lo, hi),
            points: raw.points,
            spacing,
            schemes,
        })
    }

    /// Values of the swept parameter in sweep order. The endpoints are
    /// exactly the range bounds.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return lo;
                }
                if i == n - 1 {
                    return hi;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => lo + (hi - lo) * t,
                    Spacing::Log => (lo.ln() + (hi.ln() - lo.ln()) * t).exp(),
                }
            })
            .collect()
    }

    fn params_at(&self, x: f64) -> [Option<f64>; 6] {
        let mut v = self.fixed;
        v[slot(self.param)] = Some(x);
        v
    }

    pub fn header(&self) -> String {
        let mut cols = vec![
            "model".to_string(),
            "K".into(),
            "P".into(),
            "a".into(),
            "P1".into(),
            "P2".into(),
            "a1".into(),
            "a2".into(),
            "regime".into(),
        ];
        for s in &self.schemes {
            cols.push(format!("rate_{}", s.name()));
            cols.push(format!("bound_{}", s.name()));
        }
        cols.join(",")
    }
}

/// `10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: Model,
    pub k: Option<usize>,
    /// `P, a, P1, P2, a1, a2`; unused ones are `None`.
    pub params: [Option<f64>; 6],
    pub regime: &'static str,
    /// One entry per requested scheme; `None` outside the scheme's domain.
    pub rates: Vec<Option<(f64, ActiveBound)>>,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let mut cells = vec![
            self.model.label().to_string(),
            self.k.map(|k| k.to_string()).unwrap_or_default(),
        ];
        cells.extend(self.params.iter().map(|p| p.map(sig17).unwrap_or_default()));
        cells.push(self.regime.to_string());
        for r in &self.rates {
            match r {
                Some((v, b)) => {
                    cells.push(sig17(*v));
                    cells.push(b.label().to_string());
                }
                None => {
                    cells.push(String::new());
                    cells.push(String::new());
                }
            }
        }
        cells.join(",")
    }
}

fn from_rate(r: RateResult) -> Option<(f64, ActiveBound)> {
    Some((r.value, r.active_bound))
}

fn eval_row(spec: &SweepSpec, x: f64) -> Result<SweepRow> {
    let params = spec.params_at(x);
    let get = |i: usize| params[i].expect("validated parameter");
    let (regime, rates): (&'static str, Vec<_>) = match spec.model {
        Model::TwoSym => {
            let ch = Channel2Sym::new(get(0), get(1))?;
            let rates = spec
                .schemes
                .iter()
                .map(|s| match s {
                    SchemeSel::Ian => from_rate(rates2::rate_sym_ian(&ch)),
                    SchemeSel::Tdma => rates2::rate_sym_tdma2(ch.p()).ok().and_then(from_rate),
                    SchemeSel::P2p => from_rate(rates2::rate_sym_p2p(&ch)),
                    SchemeSel::Etw => rates2::rate_sym_etw(&ch).ok().and_then(from_rate),
                    SchemeSel::ApproxTdma => rates_k::approx_tdma(2, ch.p())
                        .ok()
                        .map(|v| (v, ActiveBound::Tdma)),
                    SchemeSel::ApproxEtw => rates_k::approx_etw_k_rate(2, ch.p(), ch.a())
                        .ok()
                        .map(|r| (r.value, r.active_bound)),
                })
                .collect();
            (classify2sym(&ch).label(), rates)
        }
        Model::KSym => {
            let k = spec.k.expect("validated K");
            let ch = ChannelKSym::new(k, get(0), get(1))?;
            let rates = spec
                .schemes
                .iter()
                .map(|s| match s {
                    SchemeSel::Ian => from_rate(rates_k::rate_sym_ian_k(&ch)),
                    SchemeSel::Tdma => rates_k::rate_sym_tdma_k(k, ch.p()).ok().and_then(from_rate),
                    SchemeSel::P2p => from_rate(rates_k::rate_sym_p2p_combined_k(&ch)),
                    SchemeSel::Etw => from_rate(rates_k::rate_sym_etw_k_closed(&ch).rate),
                    SchemeSel::ApproxTdma => rates_k::approx_tdma(k, ch.p())
                        .ok()
                        .map(|v| (v, ActiveBound::Tdma)),
                    SchemeSel::ApproxEtw => rates_k::approx_etw_k_rate(k, ch.p(), ch.a())
                        .ok()
                        .map(|r| (r.value, r.active_bound)),
                })
                .collect();
            (classify_k_sym(&ch).label(), rates)
        }
        Model::TwoAsym => {
            let ch = Channel2Asym::new(get(2), get(3), get(4), get(5))?;
            let rates = spec
                .schemes
                .iter()
                .map(|s| match s {
                    SchemeSel::Ian => from_rate(rates2::sum_rate_ian_asym(&ch)),
                    SchemeSel::P2p => rates2::sum_rate_p2p_asym(&ch).ok().and_then(from_rate),
                    _ => unreachable!("rejected during validation"),
                })
                .collect();
            (classify2asym(&ch).label(), rates)
        }
    };
    Ok(SweepRow {
        model: spec.model,
        k: spec.k,
        params,
        regime,
        rates,
    })
}

/// Evaluates every grid point; rows come back in sweep order.
pub fn run(spec: &SweepSpec, exec: Exec) -> Result<Vec<SweepRow>> {
    let grid = spec.grid();
    par::map_slice(exec, &grid, |&x| eval_row(spec, x))
        .into_iter()
        .collect()
}

pub fn write_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{}", spec.header())?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
model = "two-sym"
P = 100.0
sweep = "a"
range = [0.01, 1.0]
points = 100
spacing = "log"
schemes = ["p2p", "etw"]
"#;

    #[test]
    fn parses_basic() {
        let s = SweepSpec::from_toml_str(BASIC).unwrap();
        assert_eq!(s.model, Model::TwoSym);
        assert_eq!(s.param, Param::A);
        assert_eq!(s.grid().len(), 100);
        assert_eq!(*s.grid().last().unwrap(), 1.0);
        assert_eq!(s.grid()[0], 0.01);
        assert_eq!(
            s.header(),
            "model,K,P,a,P1,P2,a1,a2,regime,rate_p2p,bound_p2p,rate_etw,bound_etw"
        );
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            BASIC.replace(r#"["p2p", "etw"]"#, "[]"),
            BASIC.replace("points = 100", "points = 1"),
            BASIC.replace("[0.01, 1.0]", "[1.0, 0.01]"),
            BASIC.replace(r#""p2p""#, r#""nope""#),
            BASIC.replace("P = 100.0", "P = 100.0\na = 0.5"),
            BASIC.replace("P = 100.0", ""),
            BASIC.replace("P = 100.0", "P = 100.0\nK = 3"),
            BASIC.replace("P = 100.0", "P = 100.0\nsnr_db = 20.0"),
            BASIC.replace("two-sym", "three-sym"),
            BASIC.replace(r#"sweep = "a""#, r#"sweep = "a1""#),
            BASIC.replace("log", "cubic"),
            BASIC.replace("P = 100.0", "P = 100.0\nbogus = 1"),
            BASIC.replace("P = 100.0", "P = -3.0"),
        ];
        for text in bad {
            let err = SweepSpec::from_toml_str(&text).unwrap_err();
            assert!(matches!(err, Error::Config(_)), "{text}");
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = SweepSpec::from_toml_str("model = \n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn linear_grid_hits_half() {
        let text = BASIC
            .replace("log", "linear")
            .replace("points = 100", "points = 3");
        let s = SweepSpec::from_toml_str(&text.replace("[0.01, 1.0]", "[0.0001, 1.0]")).unwrap();
        let g = s.grid();
        assert_eq!(g.len(), 3);
        assert_eq!(g[1], 0.0001 + (1.0 - 0.0001) * 0.5);
    }

    #[test]
    fn snr_db_is_converted_once() {
        let text = BASIC.replace("P = 100.0", "snr_db = 20.0");
        let s = SweepSpec::from_toml_str(&text).unwrap();
        let rows = run(&s, Exec::Sequential).unwrap();
        assert_eq!(rows[0].params[0], Some(db_to_linear(20.0)));
        assert_eq!(db_to_linear(20.0), 100.0);
    }

    #[test]
    fn etw_out_of_domain_is_empty() {
        let text = BASIC
            .replace("[0.01, 1.0]", "[0.5, 2.0]")
            .replace("points = 100", "points = 4");
        let s = SweepSpec::from_toml_str(&text).unwrap();
        let rows = run(&s, Exec::Sequential).unwrap();
        let last = rows.last().unwrap();
        assert!(last.rates[0].is_some());
        assert!(last.rates[1].is_none());
        assert!(last.to_csv_line().ends_with(",,"));
    }

    #[test]
    fn asym_and_k_models() {
        let asym = r#"
model = "two-asym"
P1 = 10.0
P2 = 5.0
a1 = 0.5
sweep = "a2"
range = [0.1, 3.0]
points = 5
schemes = ["p2p", "ian"]
"#;
        let s = SweepSpec::from_toml_str(asym).unwrap();
        let rows = run(&s, Exec::Parallel).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[4].regime, "MixedDirectLimited");
        assert!(SweepSpec::from_toml_str(&asym.replace(r#""ian""#, r#""etw""#)).is_err());

        let k = r#"
model = "k-sym"
K = 3
P = 10.0
sweep = "a"
range = [0.2, 2.0]
points = 4
schemes = ["p2p", "etw", "approx-etw", "approx-tdma"]
"#;
        let s = SweepSpec::from_toml_str(k).unwrap();
        let rows = run(&s, Exec::Parallel).unwrap();
        assert_eq!(rows[0].regime, "Noisy");
        assert!(rows[0].to_csv_line().starts_with("k-sym,3,"));
    }
}

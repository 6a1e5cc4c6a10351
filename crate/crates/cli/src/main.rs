//! `icrates` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
//! `ICRATES_THREADS` sets the worker thread count.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icrates::channel::{
    classify2asym, classify2sym, classify_k_sym, ian_tdma_crossover, noisy_boundary,
};
use icrates::format::sig;
use icrates::numerics::{a1_closed, a2_closed, compute_p_doubleprime, compute_p_prime, find_a0};
use icrates::rates2::{self, region_vertices, Region};
use icrates::rates_k;
use icrates::sweep::{self, db_to_linear, SweepSpec};
use icrates::verify::{self, Suite};
use icrates::{ActiveBound, Channel2Asym, Channel2Sym, ChannelKSym, Exec, Regime2};

const SWEEP_HELP: &str = "\
Sweep configuration (TOML):

  model   = \"two-sym\" | \"two-asym\" | \"k-sym\"
  K       = 3                     # k-sym only, K >= 2
  P       = 100.0                 # two-sym, k-sym (or snr_db = 20.0)
  a       = 0.5                   # two-sym, k-sym
  P1, P2, a1, a2                  # two-asym, P1 >= P2
  sweep   = \"a\"                   # the parameter to vary; leave it unset above
  range   = [0.01, 1.0]           # min < max, both positive
  points  = 100                   # >= 2
  spacing = \"linear\" | \"log\"      # default linear
  schemes = [\"p2p\", \"etw\"]        # ian tdma p2p etw approx-etw approx-tdma
                                  # (two-asym: ian, p2p)

Output CSV columns: model,K,P,a,P1,P2,a1,a2,regime then rate_<s>,bound_<s>
per scheme. Cells outside a model or a scheme's domain are empty.";

#[derive(Parser)]
#[command(
    name = "icrates",
    version,
    about = "Achievable rates of simple schemes on Gaussian interference channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the interference regime and its thresholds.
    Classify(ChannelArgs),
    /// Evaluate one scheme at one channel.
    Rate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
    },
    /// Evaluate schemes over a parameter grid and write CSV.
    #[command(after_help = SWEEP_HELP)]
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites: all thm1 cor20 cor30 power k3 kbound maxS etwk-oracle roots.
    Verify {
        /// Suite name or "all" (the default).
        #[arg(conflicts_with = "suite")]
        selector: Option<String>,
        /// Same as the positional selector.
        #[arg(long)]
        suite: Option<String>,
        /// Also write the reports as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the threshold values for a given SNR.
    Roots(SnrArgs),
    /// Print the corner points of a two-user rate region.
    Region {
        #[command(flatten)]
        snr: SnrArgs,
        /// Interference-to-signal ratio a.
        #[arg(long, allow_negative_numbers = true)]
        isr: f64,
        /// C0, C1, C1prime, Capacity or all.
        #[arg(long, default_value = "all")]
        which: String,
        /// Write a gnuplot script drawing the regions.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SnrArgs {
    /// SNR P, linear.
    #[arg(
        long,
        allow_negative_numbers = true,
        conflicts_with = "snr_db",
        required_unless_present = "snr_db"
    )]
    snr: Option<f64>,
    /// SNR in dB; converted once as 10^(x/10).
    #[arg(long = "snr-db", allow_negative_numbers = true)]
    snr_db: Option<f64>,
}

impl SnrArgs {
    fn value(&self) -> f64 {
        self.snr
            .or(self.snr_db.map(db_to_linear))
            .expect("clap requires one")
    }
}

#[derive(Args)]
struct ChannelArgs {
    /// Number of users.
    #[arg(long = "users", visible_alias = "k", default_value_t = 2)]
    users: usize,
    /// SNR P, linear.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "snr_db")]
    snr: Option<f64>,
    #[arg(long = "snr-db", allow_negative_numbers = true)]
    snr_db: Option<f64>,
    /// Interference-to-signal ratio a.
    #[arg(long, allow_negative_numbers = true)]
    isr: Option<f64>,
    /// Asymmetric channel: SNR of user 1 (requires --snr2 --isr1 --isr2).
    #[arg(long, allow_negative_numbers = true, requires_all = ["snr2", "isr1", "isr2"], conflicts_with_all = ["snr", "snr_db", "isr"])]
    snr1: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "snr1")]
    snr2: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "snr1")]
    isr1: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "snr1")]
    isr2: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ian,
    Tdma,
    P2p,
    Etw,
    ApproxEtw,
    ApproxTdma,
}

enum Model {
    Two(Channel2Sym),
    Asym(Channel2Asym),
    K(ChannelKSym),
}

enum Failure {
    Usage(String),
    Verify,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

impl ChannelArgs {
    fn model(&self) -> Result<Model, Failure> {
        if let Some(p1) = self.snr1 {
            if self.users != 2 {
                return Err(Failure::Usage(
                    "the asymmetric channel has two users".into(),
                ));
            }
            let ch = Channel2Asym::new(
                p1,
                self.snr2.expect("clap requires"),
                self.isr1.expect("clap requires"),
                self.isr2.expect("clap requires"),
            )?;
            return Ok(Model::Asym(ch));
        }
        let p = self
            .snr
            .or(self.snr_db.map(db_to_linear))
            .ok_or_else(|| Failure::Usage("--snr or --snr-db is required".into()))?;
        let a = self
            .isr
            .ok_or_else(|| Failure::Usage("--isr is required".into()))?;
        match self.users {
            2 => Ok(Model::Two(Channel2Sym::new(p, a)?)),
            k => Ok(Model::K(ChannelKSym::new(k, p, a)?)),
        }
    }
}

fn classify(args: &ChannelArgs) -> CmdResult {
    Ok(match args.model()? {
        Model::Two(ch) => {
            let p = ch.p();
            let nb = sig(noisy_boundary(p), 5);
            let top = sig(1.0 + p, 5);
            let regime = classify2sym(&ch);
            let range = match regime {
                Regime2::Noisy => format!("a ≤ {nb}"),
                Regime2::Weak => format!("{nb} < a ≤ 1"),
                Regime2::Strong => format!("1 < a ≤ {top}"),
                Regime2::VeryStrong => format!("a > {top}"),
            };
            format!("{regime} ({range})")
        }
        Model::Asym(ch) => classify2asym(&ch).to_string(),
        Model::K(ch) => classify_k_sym(&ch).to_string(),
    })
}

fn rate_line(value: f64, scheme: &str, bound: ActiveBound) -> String {
    format!("{} scheme={scheme} bound={}", sig(value, 12), bound.label())
}

fn rate(args: &ChannelArgs, scheme: SchemeArg) -> CmdResult {
    use SchemeArg::*;
    let approx_etw = |k, p, a| -> CmdResult {
        let r = rates_k::approx_etw_k_rate(k, p, a)?;
        Ok(rate_line(r.value, "approx-ETW", r.active_bound))
    };
    let approx_tdma = |k, p| -> CmdResult {
        Ok(rate_line(
            rates_k::approx_tdma(k, p)?,
            "approx-TDMA",
            ActiveBound::Tdma,
        ))
    };
    let r = match args.model()? {
        Model::Two(ch) => match scheme {
            Ian => rates2::rate_sym_ian(&ch),
            Tdma => rates2::rate_sym_tdma2(ch.p())?,
            P2p => rates2::rate_sym_p2p(&ch),
            Etw => rates2::rate_sym_etw(&ch)?,
            ApproxEtw => return approx_etw(2, ch.p(), ch.a()),
            ApproxTdma => return approx_tdma(2, ch.p()),
        },
        Model::K(ch) => match scheme {
            Ian => rates_k::rate_sym_ian_k(&ch),
            Tdma => rates_k::rate_sym_tdma_k(ch.k(), ch.p())?,
            P2p => rates_k::rate_sym_p2p_combined_k(&ch),
            Etw => rates_k::rate_sym_etw_k_closed(&ch).rate,
            ApproxEtw => return approx_etw(ch.k(), ch.p(), ch.a()),
            ApproxTdma => return approx_tdma(ch.k(), ch.p()),
        },
        Model::Asym(ch) => match scheme {
            Ian => rates2::sum_rate_ian_asym(&ch),
            P2p => rates2::sum_rate_p2p_asym(&ch)?,
            _ => {
                return Err(Failure::Usage(
                    "the asymmetric channel supports --scheme ian or p2p (sum rates)".into(),
                ))
            }
        },
    };
    Ok(rate_line(r.value, r.scheme.label(), r.active_bound))
}

fn run_sweep(config: &PathBuf, out: Option<&PathBuf>) -> CmdResult {
    let text = fs::read_to_string(config)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", config.display())))?;
    let spec = SweepSpec::from_toml_str(&text)?;
    let rows = sweep::run(&spec, Exec::Parallel)?;
    let summary = format!(
        "{} rows, model {}, {} over [{}, {}], schemes {}",
        rows.len(),
        spec.model.label(),
        spec.param.label(),
        spec.range.0,
        spec.range.1,
        spec.schemes
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(",")
    );
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            sweep::write_csv(&spec, &rows, BufWriter::new(file))?;
            Ok(format!("wrote {} ({summary})", path.display()))
        }
        None => {
            sweep::write_csv(&spec, &rows, io::stdout().lock())?;
            eprintln!("{summary}");
            Ok(String::new())
        }
    }
}

fn run_verify(selector: Option<&str>, csv: Option<&PathBuf>) -> CmdResult {
    let selector = selector.unwrap_or("all");
    let suites: Vec<Suite> = if selector == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::parse(selector).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown suite {selector:?}; expected all, {}",
                Suite::ALL.map(|s| s.label()).join(", ")
            ))
        })?]
    };
    let mut out = String::new();
    let mut reports = Vec::new();
    for s in suites {
        let r = verify::run_suite(s, &s.default_grid());
        writeln!(out, "{}", r.record()).unwrap();
        for n in &r.notes {
            writeln!(out, "  {n}").unwrap();
        }
        reports.push(r);
    }
    if let Some(path) = csv {
        fs::write(path, verify::reports_csv(&reports))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(&out);
    if reports.iter().all(|r| r.pass) {
        Ok(String::new())
    } else {
        Err(Failure::Verify)
    }
}

fn roots(args: &SnrArgs) -> CmdResult {
    let p = args.value();
    let a0 = find_a0(p)?;
    let mut out = String::new();
    writeln!(out, "P = {p}").unwrap();
    writeln!(out, "a0 = {a0}").unwrap();
    writeln!(out, "a1 = {}", a1_closed(p)).unwrap();
    writeln!(out, "a2 = {}", a2_closed(p)).unwrap();
    writeln!(out, "noisy boundary = {}", noisy_boundary(p)).unwrap();
    writeln!(out, "IAN/TDMA crossover = {}", ian_tdma_crossover(p)).unwrap();
    writeln!(out, "P' = {}", compute_p_prime()?).unwrap();
    write!(out, "P'' = {}", compute_p_doubleprime()?).unwrap();
    Ok(out)
}

fn parse_regions(which: &str) -> Result<Vec<Region>, Failure> {
    if which == "all" {
        return Ok(vec![Region::C0, Region::C1, Region::C1Prime]);
    }
    Region::parse(which).map(|r| vec![r]).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown region {which:?}; expected C0, C1, C1prime, Capacity or all"
        ))
    })
}

fn region(args: &SnrArgs, isr: f64, which: &str, plot: Option<&PathBuf>) -> CmdResult {
    let ch = Channel2Sym::new(args.value(), isr)?;
    let regions = parse_regions(which)?;
    let mut out = String::new();
    let mut script = String::new();
    writeln!(script, "# P = {}, a = {}", ch.p(), ch.a()).unwrap();
    for r in &regions {
        let v = region_vertices(&ch, *r);
        let pts: Vec<String> = v
            .vertices
            .iter()
            .map(|(x, y)| format!("({x}, {y})"))
            .collect();
        writeln!(out, "{}: {}", r.label(), pts.join(" ")).unwrap();
        writeln!(script, "${} << EOD", r.label()).unwrap();
        for (x, y) in v.vertices.iter().chain(v.vertices.first()) {
            writeln!(script, "{x} {y}").unwrap();
        }
        writeln!(script, "EOD").unwrap();
    }
    if let Some(path) = plot {
        script.push_str(
            "set xlabel \"R1 (bits/channel use)\"\nset ylabel \"R2 (bits/channel use)\"\n",
        );
        script.push_str("set size square\nset key bottom left\n");
        let layers: Vec<String> = regions
            .iter()
            .map(|r| format!("${0} with lines linewidth 2 title \"{0}\"", r.label()))
            .collect();
        writeln!(script, "plot {}", layers.join(", \\\n     ")).unwrap();
        fs::write(path, script)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        write!(out, "plot script written to {}", path.display()).unwrap();
    }
    Ok(out.trim_end().to_string())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("ICRATES_THREADS") else {
        return Ok(());
    };
    let n: usize = value.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "ICRATES_THREADS must be a positive integer, got {value:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn dispatch(cli: Cli) -> CmdResult {
    configure_threads()?;
    match &cli.command {
        Command::Classify(args) => classify(args),
        Command::Rate { channel, scheme } => rate(channel, *scheme),
        Command::Sweep { config, out } => run_sweep(config, out.as_ref()),
        Command::Verify {
            selector,
            suite,
            csv,
        } => run_verify(selector.as_deref().or(suite.as_deref()), csv.as_ref()),
        Command::Roots(args) => roots(args),
        Command::Region {
            snr,
            isr,
            which,
            plot,
        } => region(snr, *isr, which, plot.as_ref()),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(text) => {
            if !text.is_empty() {
                emit(&format!("{text}\n"));
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

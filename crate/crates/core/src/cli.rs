//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! refusal, 4 IO error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    certified_bounds_with, complex_bounds, floor_root_pow2, ratio_table, verify_cover,
    BoundOptions, Effort, KRule,
};
use crate::constructions::{
    canonical_packing, code_packing, cube_grid_cover, greedy_maximal_packing, hamming_code,
    interpolation_cover, self_cover, sparse_support_cover, support_packing, support_system,
    CandidateSource, DEFAULT_GRID_RESOLUTION,
};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::formats::{read_witness, write_ratio_csv, write_witness, Witness};
use crate::spaces::SpaceDescriptor;
use crate::special::{complex_theoretical_rate, log_volume_lp_ball, theoretical_rate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Candidate budget for codes and support systems built from the command line.
const CLI_BUDGET: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "lp-entropy", version, about = "Entropy numbers of finite-dimensional lp identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Theoretical rate and regime of e_k(id: l_p^n -> l_q^n).
    Rate(RateArgs),
    /// Certified lower and upper bounds.
    Bounds(BoundsArgs),
    /// Build a covering net and write it as a witness file.
    Net(NetArgs),
    /// Build a separated set and write it as a witness file.
    Packing(PackingArgs),
    /// Re-check a witness file.
    Verify(VerifyArgs),
    /// Ratio table of certified bounds against the rate, as CSV.
    Table(TableArgs),
    /// Volume of the unit ball of l_p^n.
    Volume(VolumeArgs),
}

#[derive(Args, Debug)]
struct Cell {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: usize,
    /// Source exponent: a positive decimal or "inf".
    #[arg(long)]
    p: Exponent,
    /// Target exponent: a positive decimal or "inf".
    #[arg(long)]
    q: Exponent,
}

#[derive(Args, Debug)]
struct RateArgs {
    #[command(flatten)]
    cell: Cell,
    /// Rate for the complex spaces l_p^n(C) -> l_q^n(C).
    #[arg(long)]
    complex: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EffortArg {
    Analytic,
    Constructive,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    cell: Cell,
    #[arg(long, value_enum, default_value = "analytic")]
    effort: EffortArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verification samples per built witness (constructive effort).
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Emit one JSON object.
    #[arg(long)]
    json: bool,
    /// Intersect with the small-instance oracle where it applies.
    #[arg(long)]
    oracle: bool,
    /// Fail with exit 3 instead of falling back when a construction exceeds its budget.
    #[arg(long)]
    no_fallback: bool,
    /// Bounds for l_p^n(C) -> l_q^n(C) via the real 2n-dimensional spaces.
    #[arg(long)]
    complex: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("construction").required(true).args(["self_cover", "sparse", "interp"])))]
struct NetArgs {
    /// Self-cover of B_p^n with at most 2^{k-1} translates (needs --k).
    #[arg(long = "self")]
    self_cover: bool,
    /// Sparse-support cover in the sup-norm (needs --m).
    #[arg(long)]
    sparse: bool,
    /// Interpolated cover in l_q from a self-cover (--k1) and a sup-grid (--k2).
    #[arg(long)]
    interp: bool,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Exponent,
    /// Covering metric for --interp.
    #[arg(long)]
    q: Option<Exponent>,
    #[arg(long)]
    k: Option<u64>,
    /// Support size for --sparse.
    #[arg(long)]
    m: Option<usize>,
    /// Sup-grid cells per axis of the inner cover for --sparse.
    #[arg(long, default_value_t = 2)]
    cells: usize,
    #[arg(long)]
    k1: Option<u64>,
    #[arg(long)]
    k2: Option<u64>,
    /// Grid resolution for self-covers.
    #[arg(long, default_value_t = DEFAULT_GRID_RESOLUTION)]
    resolution: usize,
    /// Random representatives for --interp.
    #[arg(long, default_value_t = 20_000)]
    representatives: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("construction").required(true).args(["code", "canonical", "greedy", "support"])))]
struct PackingArgs {
    /// Scaled ternary code with pairwise Hamming distance > m (needs --m).
    #[arg(long)]
    code: bool,
    /// Unit vectors.
    #[arg(long)]
    canonical: bool,
    /// Greedy maximal separated set (needs --tau).
    #[arg(long)]
    greedy: bool,
    /// Normalized indicators of a support system (needs --m as the set size).
    #[arg(long)]
    support: bool,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Exponent,
    #[arg(long)]
    q: Exponent,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    tau: Option<f64>,
    /// Grid resolution for --greedy.
    #[arg(long, default_value_t = DEFAULT_GRID_RESOLUTION)]
    resolution: usize,
    /// Draw this many random candidates for --greedy instead of the grid.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    p: Exponent,
    #[arg(long)]
    q: Exponent,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
    n_list: Vec<usize>,
    /// "linear:C" for k = 1..C*n, or "dyadic".
    #[arg(long, default_value = "linear:4")]
    k_rule: KRule,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VolumeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Exponent,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Io { .. } | Error::Format(_) => EXIT_IO,
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::EmptyCandidates => EXIT_USAGE,
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::Io { path: "<stdout>".into(), source: e }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Rate(a) => cmd_rate(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Net(a) => cmd_net(a, out),
        Command::Packing(a) => cmd_packing(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Volume(a) => cmd_volume(a, out),
    }
}

fn cmd_rate(a: RateArgs, out: &mut dyn Write) -> Result<i32> {
    let Cell { k, n, p, q } = a.cell;
    let (rate, regime) = if a.complex {
        complex_theoretical_rate(k, n as u64, p, q)?
    } else {
        theoretical_rate(k, n as u64, p, q)?
    };
    writeln!(out, "{rate} {regime}").map_err(io_out)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let Cell { k, n, p, q } = a.cell;
    let effort = match a.effort {
        EffortArg::Analytic => Effort::Analytic,
        EffortArg::Constructive => Effort::Constructive { seed: a.seed, samples: a.samples },
    };
    if a.complex {
        let c = complex_bounds(k, n, p, q, effort)?;
        if a.json {
            writeln!(out, "{}", serde_json::to_string_pretty(&c)?).map_err(io_out)?;
        } else {
            writeln!(out, "complex k={k} n={n} p={p} q={q}").map_err(io_out)?;
            writeln!(out, "lower {}", c.lower).map_err(io_out)?;
            writeln!(out, "upper {}", c.upper).map_err(io_out)?;
            writeln!(out, "rate {} ({})", c.rate, c.regime).map_err(io_out)?;
            writeln!(out, "real_dimension {}", 2 * n).map_err(io_out)?;
        }
        return Ok(EXIT_OK);
    }
    let opts = BoundOptions { effort, fallback: !a.no_fallback, oracle: a.oracle };
    let c = certified_bounds_with(k, n, p, q, &opts)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&c)?).map_err(io_out)?;
        return Ok(EXIT_OK);
    }
    let mut text = format!(
        "k={k} n={n} p={p} q={q}\nlower {} ({})\nupper {} ({}, {})\n",
        c.lower, c.lower_method, c.upper, c.upper_method, c.upper_source
    );
    if let Some(s) = &c.sampled_upper {
        text += &format!("sampled_upper {} ({}, {})\n", s.value, s.method, s.verified.label());
    }
    text += &format!(
        "rate {} ({})\nlower/rate {}\nupper/rate {}\n",
        c.rate, c.regime, c.lower_over_rate, c.upper_over_rate
    );
    for d in &c.downgrades {
        text += &format!("downgrade {d}\n");
    }
    out.write_all(text.as_bytes()).map_err(io_out)?;
    Ok(EXIT_OK)
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("{what} needs {flag}")))
}

fn cmd_net(a: NetArgs, out: &mut dyn Write) -> Result<i32> {
    let space = SpaceDescriptor::new(a.n, a.p)?;
    let w = if a.self_cover {
        let k = need(a.k, "--k", "--self")?;
        if k == 0 {
            return Err(usage("k must be at least 1"));
        }
        self_cover(k, space, a.resolution)?
    } else if a.sparse {
        let m = need(a.m, "--m", "--sparse")?;
        let inner_space = SpaceDescriptor::new(m, a.p)?;
        let inner = cube_grid_cover(inner_space, a.cells)?;
        sparse_support_cover(a.n, m, &inner, a.p, CLI_BUDGET)?
    } else {
        let q = need(a.q, "--q", "--interp")?;
        let k1 = need(a.k1, "--k1", "--interp")?;
        let k2 = need(a.k2, "--k2", "--interp")?;
        if k1 == 0 || k2 == 0 {
            return Err(usage("k1 and k2 must be at least 1"));
        }
        let cover_p = self_cover(k1, space, a.resolution)?;
        let cover_inf = cube_grid_cover(space, floor_root_pow2(k2 - 1, a.n as u64) as usize)?;
        let reps = CandidateSource::Random { count: a.representatives };
        interpolation_cover(&cover_p, &cover_inf, q, reps, a.seed)?
    };
    writeln!(
        out,
        "cover centers={} radius={} verified={}",
        w.len(),
        w.radius,
        w.verified.label()
    )
    .map_err(io_out)?;
    write_witness(&a.out, &Witness::Cover(w))?;
    Ok(EXIT_OK)
}

fn cmd_packing(a: PackingArgs, out: &mut dyn Write) -> Result<i32> {
    let w = if a.code {
        let m = need(a.m, "--m", "--code")?;
        code_packing(&hamming_code(a.n, m, CLI_BUDGET)?, a.p, a.q)?
    } else if a.canonical {
        canonical_packing(a.n, a.p, a.q)?
    } else if a.support {
        let m = need(a.m, "--m", "--support")?;
        support_packing(&support_system(a.n, m, CLI_BUDGET)?, a.p, a.q)?
    } else {
        let tau = need(a.tau, "--tau", "--greedy")?;
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(usage(format!("tau must be finite and >= 0, got {tau}")));
        }
        let source = match a.random {
            Some(count) => CandidateSource::Random { count },
            None => CandidateSource::ExhaustiveGrid { resolution: a.resolution },
        };
        greedy_maximal_packing(SpaceDescriptor::new(a.n, a.p)?, a.q, tau, source, a.seed)?
    };
    writeln!(out, "packing points={} separation={}", w.len(), w.separation).map_err(io_out)?;
    write_witness(&a.out, &Witness::Packing(w))?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    match read_witness(&a.input)? {
        Witness::Cover(mut w) => {
            let report = verify_cover(&mut w, a.samples, a.seed);
            if a.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(io_out)?;
            } else {
                writeln!(
                    out,
                    "{} samples={} failures={} max_distance={} radius={} confidence={}",
                    if report.passed { "PASS" } else { "FAIL" },
                    report.samples,
                    report.failures,
                    report.max_distance,
                    report.radius,
                    report.confidence
                )
                .map_err(io_out)?;
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Witness::Packing(w) => {
            let check = w.validate();
            let json = serde_json::json!({
                "passed": check.is_ok(),
                "points": w.len(),
                "separation": w.separation,
                "error": check.as_ref().err().map(|e| e.to_string()),
            });
            if a.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&json)?).map_err(io_out)?;
            } else {
                match &check {
                    Ok(()) => writeln!(out, "PASS points={} separation={}", w.len(), w.separation),
                    Err(e) => writeln!(out, "FAIL {e}"),
                }
                .map_err(io_out)?;
            }
            Ok(if check.is_ok() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    if a.n_list.contains(&0) {
        return Err(usage("dimensions must be at least 1"));
    }
    let rows = ratio_table(a.p, a.q, &a.n_list, a.k_rule, Effort::Analytic)?;
    match a.csv {
        Some(path) => {
            let file = std::fs::File::create(&path)
                .map_err(|source| Error::Io { path: path.clone(), source })?;
            write_ratio_csv(&rows, std::io::BufWriter::new(file)).map_err(|e| match e {
                Error::Io { source, .. } => Error::Io { path: path.clone(), source },
                other => other,
            })?;
            let max = |f: fn(&crate::bounds::RatioRow) -> f64| {
                rows.iter().map(f).fold(0.0, f64::max)
            };
            writeln!(
                out,
                "rows={} max_upper_over_rate={} max_rate_over_lower={}",
                rows.len(),
                max(|r| r.upper_over_rate),
                max(|r| 1.0 / r.lower_over_rate)
            )
            .map_err(io_out)?;
        }
        None => write_ratio_csv(&rows, &mut *out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_volume(a: VolumeArgs, out: &mut dyn Write) -> Result<i32> {
    let log_vol = log_volume_lp_ball(a.n, a.p)?;
    // 15 significant digits hide the last-ulp noise of exp(log_vol)
    let vol: f64 = format!("{:.14e}", log_vol.exp()).parse().expect("float text");
    writeln!(out, "vol {vol}\nlog_vol {log_vol}").map_err(io_out)?;
    Ok(EXIT_OK)
}

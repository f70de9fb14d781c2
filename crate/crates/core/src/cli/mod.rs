//! Command-line front end. Exit codes: 0 pass, 2 invalid input, 3 certified
//! failure, 4 internal error. Warnings go to stderr and never change the
//! exit code.

mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp_embed::{self, LpEmbeddingFile};
use crate::moduli::{exp_dominate, regularize_omega, regularize_rho, Family, ModulusCurve};
use crate::spaces::{fixtures, Exponent, FiniteMetricSpace, Space, SpaceFile};
use crate::stable_embed::{embed_stable, StableEmbeddingFile};
use crate::verify::{self, EmbeddingReport, Pairing};
use io::{read_curve, read_input, read_pairing, read_space, write_output};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAIL: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tight-embed", version, about = "Construct and certify embeddings of finite metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed a finite subset of l_p into a block sum and certify the sandwich.
    EmbedLp {
        #[arg(long)]
        input: PathBuf,
        /// Modulus JSON (inline or a path). A curve in Phi is dominated first;
        /// a `log2_dominated` curve is used as is.
        #[arg(long, default_value = r#"{"family":"exp_floor"}"#)]
        modulus: String,
        /// Defaults to max(100, 2 / (1 - 16 r) + 1).
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 0.06)]
        r: f64,
        #[arg(long = "outer-s", default_value = "2")]
        outer_s: Exponent,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-pair report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Embed a finite metric space into l_inf coordinates and certify
    /// rho(d) <= D <= omega(d).
    EmbedStable {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-verify a stored embedding, or check a map given as two spaces.
    Verify {
        /// Stored embedding JSON to re-verify.
        #[arg(long, conflicts_with_all = ["input", "image", "mode"])]
        embedding: Option<PathBuf>,
        #[arg(long, requires = "image")]
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        image: Option<PathBuf>,
        /// JSON list mapping source index i to image index (inline or path).
        #[arg(long)]
        pairing: Option<String>,
        #[arg(long, value_enum, requires = "input")]
        mode: Option<Mode>,
        /// Distance range `s1:s2`; `s2` may be `inf`.
        #[arg(long)]
        range: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Distortion D of the range bound r d <= d_Y <= D r d.
        #[arg(long, default_value_t = 1.0)]
        distortion: f64,
        /// Snowflake exponent.
        #[arg(long)]
        s: Option<f64>,
        /// Threshold for the compression exponent.
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Empirical moduli (t, rho_hat, omega_hat) of a map as CSV.
    Moduli {
        #[arg(long)]
        input: PathBuf,
        /// Image space; defaults to the input (the identity map).
        #[arg(long)]
        image: Option<PathBuf>,
        #[arg(long)]
        pairing: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a deterministic fixture.
    Fixtures {
        #[arg(long, value_enum)]
        kind: FixtureKind,
        /// Required for randomized fixtures.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "2")]
        p: Exponent,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        /// Comma-separated weights for `kalton`; default 4^{-n}, n = 1..6.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        /// Net radius for `net`.
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Space to take a net of; a random point set is generated otherwise.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated positions for `line`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        positions: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Range,
    Snowflake,
    Exponent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FixtureKind {
    Kalton,
    Net,
    RandomPoints,
    RandomMetric,
    Line,
}

/// Map a library error to the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownBlock(_) | Error::OutsidePlan { .. } => EXIT_INTERNAL,
        Error::Io(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Parse arguments, run one command and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

enum CliError {
    /// Problems reading or parsing user input.
    Input(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: {msg}");
}

fn summarize(report: &EmbeddingReport) {
    let verdict = if report.pass { "pass" } else { "FAIL" };
    eprintln!("{}: {verdict} ({} pairs, {} failing)", report.check, report.pairs, report.failures);
    if let Some(row) = report.failing_rows().next() {
        eprintln!(
            "  first failing pair ({}, {}): d_x = {}, d_y = {}, lower = {:?}, upper = {:?}",
            row.i, row.j, row.d_x, row.d_y, row.lower, row.refined_upper.or(row.upper)
        );
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> CliResult<bool> {
    match cmd {
        Command::EmbedLp { input, modulus, eta, r, outer_s, out, csv } => {
            cmd_embed_lp(&input, &modulus, eta, r, outer_s, out.as_deref(), csv.as_deref())
        }
        Command::EmbedStable { input, rho, omega, basepoint, out, csv } => {
            cmd_embed_stable(&input, &rho, &omega, basepoint, out.as_deref(), csv.as_deref())
        }
        Command::Verify { embedding, input, image, pairing, mode, range, r, distortion, s, tau, out, csv } => {
            if let Some(path) = embedding {
                return cmd_reverify(&path, out.as_deref(), csv.as_deref());
            }
            let (Some(input), Some(image), Some(mode)) = (input, image, mode) else {
                return Err(CliError::Input("verify needs --embedding, or --input, --image and --mode".into()));
            };
            let x = read_space(&input)?.metric();
            let y = read_space(&image)?.metric();
            let pairing = read_pairing(pairing.as_deref())?;
            let opts = VerifyOptions { range, r, distortion, s, tau };
            cmd_verify_map(&x, &y, &pairing, mode, &opts, out.as_deref(), csv.as_deref())
        }
        Command::Moduli { input, image, pairing, csv } => {
            let x = read_space(&input)?.metric();
            let y = match image {
                Some(p) => read_space(&p)?.metric(),
                None => x.clone(),
            };
            let pairing = read_pairing(pairing.as_deref())?;
            let profile = verify::measure_moduli(&x, &y, &pairing)?;
            write_output(csv.as_deref(), &profile.to_csv())?;
            Ok(true)
        }
        Command::Fixtures { kind, seed, p, dim, count, weights, delta, input, positions, out } => {
            let text = cmd_fixtures(kind, seed, p, dim, count, weights, delta, input, positions)?;
            write_output(out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

/// `mu` for the `l_p` construction: curves in Phi are dominated, curves
/// that already are `log2` envelopes pass through.
fn dominating_modulus(curve: ModulusCurve) -> Result<ModulusCurve> {
    match curve.family() {
        Family::Log2Dominated(_) => Ok(curve),
        _ => exp_dominate(&curve),
    }
}

fn cmd_embed_lp(
    input: &std::path::Path,
    modulus: &str,
    eta: Option<f64>,
    r: f64,
    outer: Exponent,
    out: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> CliResult<bool> {
    let points = read_space(input)?.into_points()?;
    let mu = dominating_modulus(read_curve(modulus)?)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param(format!("r must be positive, got {r}")).into());
    }
    let eta = eta.unwrap_or_else(|| lp_embed::default_eta(r));
    if r >= lp_embed::R_LIMIT {
        warn(format_args!("r = {r} is not below 1/16; the lower bound is not guaranteed by the construction"));
    } else if eta < lp_embed::eta_guidance(r) {
        warn(format_args!(
            "eta = {eta} is below 2 / (1 - 16 r) = {}; the lower bound is not guaranteed",
            lp_embed::eta_guidance(r)
        ));
    }
    let plan = lp_embed::build_plan(&points, &mu, eta, r, outer)?;
    let emb = lp_embed::embed(&plan, &points)?;
    let report = lp_embed::verify_sandwich(&emb, &points, &mu, r)?;
    summarize(&report.report);
    let file = LpEmbeddingFile::new(&points, &emb, &report);
    write_output(out, &(file.to_json() + "\n"))?;
    if let Some(path) = csv {
        write_output(Some(path), &report.report.to_csv())?;
    }
    Ok(report.pass())
}

fn cmd_embed_stable(
    input: &std::path::Path,
    rho: &str,
    omega: &str,
    basepoint: usize,
    out: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> CliResult<bool> {
    let space = read_space(input)?;
    let m = space.metric();
    let rho = regularize_rho(&read_curve(rho)?)?;
    let omega = regularize_omega(&read_curve(omega)?)?;
    let emb = embed_stable(&m, basepoint, &rho, &omega)?;
    let report = emb.verify();
    summarize(&report.report);
    if !report.lower_attained {
        eprintln!("  lower bound not attained by the diagonal coordinate");
    }
    eprintln!("  max N_omega over coordinates: {}", report.max_n_omega);
    let file = StableEmbeddingFile::new(&space, &emb, &report);
    write_output(out, &(file.to_json() + "\n"))?;
    if let Some(path) = csv {
        write_output(Some(path), &report.report.to_csv())?;
    }
    Ok(report.pass)
}

fn cmd_reverify(path: &std::path::Path, out: Option<&std::path::Path>, csv: Option<&std::path::Path>) -> CliResult<bool> {
    let text = read_input(path)?;
    let kind = serde_json::from_str::<serde_json::Value>(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .get("kind")
        .and_then(|k| k.as_str().map(str::to_owned))
        .ok_or_else(|| CliError::Input(format!("{}: missing embedding `kind`", path.display())))?;
    let (report, stored_pass, fresh_json) = match kind.as_str() {
        "lp" => {
            let file = LpEmbeddingFile::from_json(&text)?;
            let fresh = file.reverify()?;
            (fresh.report.clone(), file.report.pass, json(&fresh))
        }
        "stable" => {
            let file = StableEmbeddingFile::from_json(&text)?;
            let fresh = file.reverify()?;
            let pass = fresh.pass;
            let stored = file.report.pass;
            let mut report = fresh.report.clone();
            report.pass = pass;
            (report, stored, json(&fresh))
        }
        other => return Err(CliError::Input(format!("unknown embedding kind `{other}`"))),
    };
    summarize(&report);
    if report.pass != stored_pass {
        warn("stored verdict differs from the re-verified verdict");
    }
    if out.is_some() {
        write_output(out, &fresh_json)?;
    }
    if let Some(path) = csv {
        write_output(Some(path), &report.to_csv())?;
    }
    Ok(report.pass)
}

struct VerifyOptions {
    range: Option<String>,
    r: f64,
    distortion: f64,
    s: Option<f64>,
    tau: f64,
}

fn parse_range(text: &str) -> CliResult<(f64, f64)> {
    let parse = |v: &str| -> CliResult<f64> {
        match v.trim() {
            "inf" | "infinity" => Ok(f64::INFINITY),
            t => t.parse().map_err(|_| CliError::Input(format!("bad range bound `{t}`"))),
        }
    };
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("range must look like s1:s2, got `{text}`")))?;
    Ok((parse(a)?, parse(b)?))
}

fn cmd_verify_map(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    pairing: &Pairing,
    mode: Mode,
    opts: &VerifyOptions,
    out: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> CliResult<bool> {
    let report = match mode {
        Mode::Range => {
            let (s1, s2) = match &opts.range {
                Some(r) => parse_range(r)?,
                None => return Err(CliError::Input("range mode needs --range s1:s2".into())),
            };
            verify::range_check(x, y, pairing, s1, s2, opts.r, opts.distortion)?
        }
        Mode::Snowflake => {
            let s = opts.s.ok_or_else(|| CliError::Input("snowflake mode needs --s".into()))?;
            verify::snowflake_check(x, y, pairing, s)?
        }
        Mode::Exponent => {
            let est = verify::compression_exponent_estimate(x, y, pairing, opts.tau)?;
            eprintln!(
                "compression exponent estimate: alpha = {}, C = {} over {} pairs (witness pair {:?}); a certificate for this sample, not a supremum",
                est.alpha, est.c, est.pairs_used, est.witness
            );
            write_output(out, &json(&est))?;
            return Ok(true);
        }
    };
    summarize(&report);
    write_output(out, &json(&report))?;
    if let Some(path) = csv {
        write_output(Some(path), &report.to_csv())?;
    }
    Ok(report.pass)
}

#[derive(Serialize)]
struct NetFixture {
    delta: f64,
    net: Vec<usize>,
    assignment: Vec<usize>,
    covering_radius: f64,
    separation: f64,
    space: SpaceFile,
}

#[allow(clippy::too_many_arguments)]
fn cmd_fixtures(
    kind: FixtureKind,
    seed: Option<u64>,
    p: Exponent,
    dim: Option<usize>,
    count: Option<usize>,
    weights: Option<Vec<f64>>,
    delta: f64,
    input: Option<PathBuf>,
    positions: Option<Vec<f64>>,
) -> CliResult<String> {
    let need_seed = || seed.ok_or_else(|| CliError::Input("--seed is required for randomized fixtures".into()));
    let space = match kind {
        FixtureKind::Kalton => {
            let w = weights.unwrap_or_else(|| fixtures::geometric_weights(0.25, 6));
            Space::Points(fixtures::kalton_compact_sample(p, &w, count.unwrap_or(50), need_seed()?)?)
        }
        FixtureKind::RandomPoints => {
            Space::Points(fixtures::random_point_set(p, dim.unwrap_or(8), count.unwrap_or(100), need_seed()?)?)
        }
        FixtureKind::RandomMetric => Space::Metric(fixtures::random_metric(count.unwrap_or(60), need_seed()?)?),
        FixtureKind::Line => {
            let pos = positions.ok_or_else(|| CliError::Input("line fixtures need --positions".into()))?;
            let base = pos.iter().position(|&t| t == 0.0);
            let coords = pos.into_iter().map(|t| vec![t]).collect();
            Space::Points(crate::spaces::LpPointSet::new(p, coords, base)?)
        }
        FixtureKind::Net => {
            let space = match input {
                Some(path) => read_space(&path)?,
                None => Space::Points(fixtures::random_point_set(
                    p,
                    dim.unwrap_or(2),
                    count.unwrap_or(100),
                    need_seed()?,
                )?),
            };
            let m = space.metric();
            let net = crate::spaces::epsilon_net(&m, delta)?;
            let assignment = crate::spaces::nearest_net_map(&m, &net)?;
            let fixture = NetFixture {
                delta,
                covering_radius: crate::spaces::covering_radius(&m, &net),
                separation: crate::spaces::separation(&m, &net),
                net,
                assignment,
                space: SpaceFile::from(&space),
            };
            return Ok(json(&fixture));
        }
    };
    Ok(space.to_json() + "\n")
}

//! Command-line surface of branchlab. [`run`] takes argv and two output
//! streams and returns the process exit code.

pub mod cache;
pub mod spec;
pub mod wire;

use std::io::Write;
use std::path::PathBuf;

use branchlab::asymptotics::{
    asymptotic_volume, format_point, format_weight, logconcavity_report, stretch_sequence, Degree,
    DEFAULT_K,
};
use branchlab::branching_cone::{branching_cone, eff_cone_report};
use branchlab::{EffConeModel, Error, MultiplicityOracle, Rational};
use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cache::{CachedOracle, CACHE_ENV, DEFAULT_DIR};
use crate::spec::load;
use crate::wire::{parse_point, parse_weight};

#[derive(Parser, Debug)]
#[command(name = "branchlab", version, about = "Branching multiplicities, branching cones and stretched asymptotics")]
pub struct Cli {
    /// Do not read or write the multiplicity cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of X, G and the quotient.
    Dims {
        #[arg(short, long)]
        embedding: String,
    },
    /// Decomposition of V_lambda restricted to the subgroup.
    Branch {
        #[arg(short, long)]
        embedding: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Single multiplicity m(mu, lambda).
    Mult {
        #[arg(short, long)]
        embedding: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
    },
    /// Sampled branching cone.
    Cone {
        #[arg(short, long)]
        embedding: String,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Stretched multiplicities m(k mu, k lambda) for k = 0..K.
    Stretch {
        #[arg(short, long)]
        embedding: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(short = 'K', default_value_t = DEFAULT_K)]
        k: usize,
    },
    /// Fibre volume at an interior point.
    Volume {
        #[arg(short, long)]
        embedding: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(short = 'K', default_value_t = DEFAULT_K)]
        k: usize,
        /// Cone level used for the interior test.
        #[arg(long)]
        level: Option<i64>,
    },
    /// Midpoint log-concavity of the fibre volume.
    Logcc {
        #[arg(short, long)]
        embedding: String,
        /// JSON array of points "target;source".
        #[arg(long)]
        points: PathBuf,
        #[arg(short = 'K', default_value_t = DEFAULT_K)]
        k: usize,
        #[arg(long)]
        tol: f64,
        #[arg(long)]
        level: Option<i64>,
    },
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Parse(_) | Error::UnsupportedType(_) | Error::DimensionMismatch { .. } | Error::InvalidArgument(_) => 1,
            _ => 2,
        };
        Failure { exit, code: e.code().to_string(), message: e.to_string() }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { exit: 2, code: "io".into(), message: e.to_string() }
}

/// The cache is only a memo: a failed write loses reuse, not results.
fn persist(o: &CachedOracle) {
    let _ = o.flush();
}

fn default_level(source_rank: usize) -> i64 {
    if source_rank <= 2 {
        4
    } else {
        3
    }
}

fn cache_dir(no_cache: bool) -> Option<PathBuf> {
    if no_cache {
        return None;
    }
    Some(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report serializes")
}

fn model(oracle: &CachedOracle, level: Option<i64>) -> Result<EffConeModel, Failure> {
    let level = level.unwrap_or_else(|| default_level(oracle.embedding().source().rank()));
    Ok(branching_cone(oracle.brancher(), level)?)
}

#[derive(Serialize)]
struct StretchReport {
    point: String,
    values: Vec<u64>,
    q: usize,
    degree: Degree,
    leading: Option<f64>,
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let no_cache = cli.no_cache;
    let open = |spec: &str| -> Result<CachedOracle, Failure> {
        let loaded = load(spec)?;
        Ok(CachedOracle::open(loaded.embedding, loaded.fingerprint, cache_dir(no_cache).as_deref()))
    };
    let text = match cli.command {
        Command::Dims { embedding } => to_json(&load(&embedding)?.embedding.space_dims()),
        Command::Branch { embedding, lambda, json } => {
            let o = open(&embedding)?;
            let e = o.embedding();
            let lambda = parse_weight(e.source(), &lambda)?;
            let d = o.brancher().decompose(&lambda)?;
            if json {
                let map: Map<String, Value> =
                    d.table.iter().map(|(mu, m)| (format_weight(e.target(), mu), json!(m))).collect();
                to_json(&map)
            } else {
                let mut s = format!(
                    "V({}) of {} restricted to {}, dimension {}\n",
                    format_weight(e.source(), &lambda),
                    e.source().type_string(),
                    e.target().type_string(),
                    d.total_dimension
                );
                for (mu, m) in &d.table {
                    s.push_str(&format!("  W({})  x{m}\n", format_weight(e.target(), mu)));
                }
                s.pop();
                s
            }
        }
        Command::Mult { embedding, mu, lambda } => {
            let o = open(&embedding)?;
            let mu = parse_weight(o.embedding().target(), &mu)?;
            let lambda = parse_weight(o.embedding().source(), &lambda)?;
            let m = o.multiplicity(&mu, &lambda)?;
            persist(&o);
            to_json(&json!({ "point": format_point(&o, &mu, &lambda), "multiplicity": m }))
        }
        Command::Cone { embedding, level, json } => {
            let o = open(&embedding)?;
            let report = eff_cone_report(&model(&o, level)?)?;
            if json {
                to_json(&report)
            } else {
                report.to_string().trim_end().to_string()
            }
        }
        Command::Stretch { embedding, mu, lambda, k } => {
            let o = open(&embedding)?;
            let mu = parse_weight(o.embedding().target(), &mu)?;
            let lambda = parse_weight(o.embedding().source(), &lambda)?;
            let s = stretch_sequence(&o, &mu, &lambda, k)?;
            persist(&o);
            to_json(&StretchReport {
                point: format_point(&o, &mu, &lambda),
                q: s.quasi_period,
                degree: s.degree,
                leading: s.leading.as_ref().and_then(ToPrimitive::to_f64),
                values: s.values,
            })
        }
        Command::Volume { embedding, mu, lambda, k, level } => {
            let o = open(&embedding)?;
            let mu = parse_weight(o.embedding().target(), &mu)?;
            let lambda = parse_weight(o.embedding().source(), &lambda)?;
            let est = asymptotic_volume(&o, &model(&o, level)?, &mu, &lambda, k)?;
            persist(&o);
            to_json(&est.report())
        }
        Command::Logcc { embedding, points, k, tol, level } => {
            let o = open(&embedding)?;
            let text = std::fs::read_to_string(&points)
                .map_err(|e| Error::Parse(format!("cannot read points file `{}`: {e}", points.display())))?;
            let raw: Vec<String> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("points file must be a JSON array of strings: {e}")))?;
            let e = o.embedding();
            let pts: Vec<Vec<Rational>> =
                raw.iter().map(|p| parse_point(e.target(), e.source(), p)).collect::<branchlab::Result<_>>()?;
            let report = logconcavity_report(&o, &model(&o, level)?, &pts, k, tol)?;
            persist(&o);
            to_json(&report)
        }
    };
    writeln!(out, "{text}").map_err(io_failure)
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 on success, 1 on usage or input errors, 2 on computation
/// errors. Failures are reported as one JSON object on `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.render().to_string();
            let _ = writeln!(err, "{}", json!({ "error": "usage", "message": msg.trim_end() }));
            return 1;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", json!({ "error": f.code, "message": f.message }));
            f.exit
        }
    }
}

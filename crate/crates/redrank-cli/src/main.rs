//! Command-line front end: rank ranges and certificates, explicit state
//! construction, membership verification, inequality listings, region
//! checks, and channel synthesis.
//!
//! Output is JSON by default (floats printed with 17 significant digits so
//! identical inputs give byte-identical bytes); `--text` switches to a
//! short human form. Exit codes: 0 ok, 1 verification failed, 2 parse
//! error, 3 invalid state, 4 infeasible request, 5 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use redrank::channels;
use redrank::combinat;
use redrank::construct;
use redrank::error::Error;
use redrank::feasibility;
use redrank::io::{to_json_string, KrausJson, MatrixJson, SpectrumJson};
use redrank::linalg::{DensityMatrix, HermitianMatrix, Spectrum};
use redrank::rational::{format_rational, parse_rational, rationalize};
use redrank::{Tolerances, WitnessOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "redrank",
    version,
    about = "Achievable ranks of bipartite states given both marginals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for randomized construction (falls back to REDRANK_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    /// Write the report here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,

    #[command(flatten)]
    tols: TolArgs,
}

#[derive(Args)]
struct TolArgs {
    /// Partial-trace residual allowed by `verify`.
    #[arg(long, global = true)]
    member_tol: Option<f64>,
    /// Eigenvalues below this count as zero for ranks.
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    /// Positivity slack for density-matrix validation.
    #[arg(long, global = true)]
    psd_tol: Option<f64>,
    /// Denominator cap when rationalizing floating spectra.
    #[arg(long, global = true)]
    rat_den_cap: Option<u64>,
    /// Restart budget for the numerical witness search.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Iteration budget per restart.
    #[arg(long, global = true)]
    iters: Option<usize>,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(v) = self.member_tol {
            t.member_tol = v;
        }
        if let Some(v) = self.rank_tol {
            t.rank_tol = v;
        }
        if let Some(v) = self.psd_tol {
            t.psd_tol = v;
        }
        if let Some(v) = self.rat_den_cap {
            t.rat_den_cap = v;
        }
        t
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal and maximal achievable rank for a marginal pair.
    Minrank {
        #[arg(long)]
        sigma1: PathBuf,
        #[arg(long)]
        sigma2: PathBuf,
        /// Inputs are spectrum files instead of matrices.
        #[arg(long)]
        spectra: bool,
    },
    /// Full contiguous range of achievable ranks.
    Range {
        #[arg(long)]
        sigma1: PathBuf,
        #[arg(long)]
        sigma2: PathBuf,
        #[arg(long)]
        spectra: bool,
    },
    /// Build a joint state of the requested rank.
    Construct {
        #[arg(long)]
        sigma1: PathBuf,
        #[arg(long)]
        sigma2: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Check a candidate state against prescribed marginals.
    Verify {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma1: PathBuf,
        #[arg(long)]
        sigma2: PathBuf,
    },
    /// Eigenvalue-inequality index sets.
    Ineq {
        #[command(subcommand)]
        cmd: IneqCommand,
    },
    /// Rank-r feasibility region queries on spectra.
    Region {
        #[command(subcommand)]
        cmd: RegionCommand,
    },
    /// Channel synthesis and analysis.
    Channel {
        #[command(subcommand)]
        cmd: ChannelCommand,
    },
}

#[derive(Subcommand)]
enum IneqCommand {
    /// List every tuple for the given dimension and summand count.
    List {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum RegionCommand {
    /// Is the pair (a, b) compatible with a joint rank of at most r?
    Check {
        #[arg(long)]
        r: usize,
        /// Comma-separated values, rational or decimal: "3/4,1/4".
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum ChannelCommand {
    /// Synthesize a channel with a prescribed Choi rank and fixed marginal.
    Make {
        #[arg(long)]
        sigma2: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Report Choi rank, trace preservation, and the image of I/m.
    Analyze {
        #[arg(long)]
        kraus: PathBuf,
    },
}

// ---------------------------------------------------------------------
// Reports

#[derive(Serialize)]
struct MinrankReport {
    min_rank: usize,
    max_rank: usize,
    witness_c: Vec<String>,
    inequality_count: usize,
}

#[derive(Serialize)]
struct RangeReport {
    min_rank: usize,
    max_rank: usize,
    ranks: Vec<usize>,
}

#[derive(Serialize)]
struct ConstructReport {
    rank: usize,
    residual_tr1: f64,
    residual_tr2: f64,
    output: Option<String>,
}

#[derive(Serialize)]
struct IneqItem {
    j0: Vec<usize>,
    js: Vec<Vec<usize>>,
    text: String,
}

#[derive(Serialize)]
struct IneqReport {
    m: usize,
    r: usize,
    count: usize,
    inequalities: Vec<IneqItem>,
}

#[derive(Serialize)]
struct RegionReport {
    feasible: bool,
    witness_c: Option<Vec<String>>,
    binding: Vec<String>,
    inequality_count: usize,
}

#[derive(Serialize)]
struct ChannelMakeReport {
    choi_rank: usize,
    trace_preservation_deviation: f64,
    output: Option<String>,
}

#[derive(Serialize)]
struct ChannelAnalysis {
    choi_rank: usize,
    trace_preserving: bool,
    fixed_marginal: MatrixJson,
}

// ---------------------------------------------------------------------

enum Failure {
    Verification,
    Tool(Error),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Io(_) => 2,
            Failure::Tool(e) => match e {
                Error::Json(_) | Error::ParseRational(_) => 2,
                Error::Dimension(_)
                | Error::NotHermitian { .. }
                | Error::NotPositive { .. }
                | Error::NotUnitTrace { .. }
                | Error::NotUnitary(_)
                | Error::NotNormalized(_)
                | Error::NotTracePreserving { .. }
                | Error::ZeroVector => 3,
                Error::RankOutOfRange { .. }
                | Error::SpectraMismatch(_)
                | Error::CapExceeded { .. } => 4,
                Error::NumericalFailure(_) | Error::SplitOutOfRange { .. } => 5,
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Tool(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification => eprintln!("verification failed"),
                Failure::Tool(e) => eprintln!("error: {e}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_density(path: &Path, tols: &Tolerances) -> Result<DensityMatrix, Failure> {
    let text = read_file(path)?;
    let mj: MatrixJson = serde_json::from_str(&text).map_err(|e| Failure::Tool(Error::Json(e)))?;
    Ok(DensityMatrix::from_matrix(mj.to_matrix()?, tols)?)
}

fn load_spectrum(path: &Path, tols: &Tolerances) -> Result<Spectrum, Failure> {
    let text = read_file(path)?;
    let sj: SpectrumJson =
        serde_json::from_str(&text).map_err(|e| Failure::Tool(Error::Json(e)))?;
    Ok(sj.to_spectrum(tols)?)
}

/// Marginal spectra from either matrix or spectrum files.
fn load_pair(
    sigma1: &Path,
    sigma2: &Path,
    spectra: bool,
    tols: &Tolerances,
) -> Result<(Spectrum, Spectrum), Failure> {
    if spectra {
        Ok((load_spectrum(sigma1, tols)?, load_spectrum(sigma2, tols)?))
    } else {
        let s1 = load_density(sigma1, tols)?;
        let s2 = load_density(sigma2, tols)?;
        Ok((s1.spectrum(tols), s2.spectrum(tols)))
    }
}

fn parse_values(list: &str, cap: u64) -> Result<Spectrum, Failure> {
    let vals = list
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            parse_rational(tok).or_else(|_| {
                tok.parse::<f64>()
                    .map(|x| rationalize(x, cap))
                    .map_err(|_| Error::ParseRational(tok.to_string()))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if vals.is_empty() {
        return Err(Failure::Tool(Error::Dimension("empty value list".into())));
    }
    Ok(Spectrum::from_rationals(vals))
}

fn emit(cli: &Cli, json: String, text: String) -> CmdResult {
    let payload = if cli.text { text + "\n" } else { json };
    match &cli.output {
        Some(path) => {
            fs::write(path, payload).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn witness_options(cli: &Cli) -> WitnessOptions {
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("REDRANK_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_SEED);
    let mut opts = WitnessOptions::with_seed(seed);
    if let Some(r) = cli.tols.restarts {
        opts.max_restarts = r;
    }
    if let Some(i) = cli.tols.iters {
        opts.iters = i;
    }
    opts
}

fn run(cli: &Cli) -> CmdResult {
    let tols = cli.tols.tolerances();
    match &cli.command {
        Command::Minrank {
            sigma1,
            sigma2,
            spectra,
        } => {
            let (a, b) = load_pair(sigma1, sigma2, *spectra, &tols)?;
            let res = feasibility::min_rank(&a, &b, &tols)?;
            let max_rank = a.rank(tols.rank_tol) * b.rank(tols.rank_tol);
            let report = MinrankReport {
                min_rank: res.rank,
                max_rank,
                witness_c: res.witness.iter().map(format_rational).collect(),
                inequality_count: res.inequality_count,
            };
            let text = format!(
                "min rank {}  max rank {}  witness c = ({})",
                report.min_rank,
                report.max_rank,
                report.witness_c.join(", ")
            );
            emit(cli, to_json_string(&report)?, text)
        }
        Command::Range {
            sigma1,
            sigma2,
            spectra,
        } => {
            let (a, b) = load_pair(sigma1, sigma2, *spectra, &tols)?;
            let range = feasibility::rank_range_spectra(&a, &b, &tols)?;
            let report = RangeReport {
                min_rank: *range.start(),
                max_rank: *range.end(),
                ranks: range.clone().collect(),
            };
            let text = report
                .ranks
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            emit(cli, to_json_string(&report)?, text)
        }
        Command::Construct {
            sigma1,
            sigma2,
            rank,
        } => {
            let s1 = load_density(sigma1, &tols)?;
            let s2 = load_density(sigma2, &tols)?;
            let opts = witness_options(cli);
            let rho = construct::state_of_rank(&s1, &s2, *rank, &opts, &tols)?;
            let report = construct::verify_density(&rho, &s1, &s2, &tols)?;
            let json_state = to_json_string(&MatrixJson::from_matrix(rho.matrix()))?;
            let out = ConstructReport {
                rank: report.rank,
                residual_tr1: report.residual_tr1,
                residual_tr2: report.residual_tr2,
                output: cli.output.as_ref().map(|p| p.display().to_string()),
            };
            match &cli.output {
                Some(path) => {
                    fs::write(path, json_state)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    let text = format!("wrote rank-{} state to {}", out.rank, path.display());
                    let summary = to_json_string(&out)?;
                    print!("{}", if cli.text { text + "\n" } else { summary });
                    Ok(())
                }
                None => emit(cli, json_state.clone(), json_state),
            }
        }
        Command::Verify {
            rho,
            sigma1,
            sigma2,
        } => {
            let s1 = load_density(sigma1, &tols)?;
            let s2 = load_density(sigma2, &tols)?;
            let text = read_file(rho)?;
            let mat = {
                let mj: MatrixJson =
                    serde_json::from_str(&text).map_err(|e| Failure::Tool(Error::Json(e)))?;
                mj.to_matrix()?
            };
            let herm = HermitianMatrix::new(mat, &tols)?;
            let report = construct::verify_membership(&herm, s1.dim(), s2.dim(), &s1, &s2, &tols)?;
            let pass = report.pass;
            let human = format!(
                "pass: {}  residual_tr1: {:.3e}  residual_tr2: {:.3e}  min_eig: {:.3e}  rank: {}",
                report.pass,
                report.residual_tr1,
                report.residual_tr2,
                report.psd_min_eig,
                report.rank
            );
            emit(cli, to_json_string(&report)?, human)?;
            if pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Ineq {
            cmd: IneqCommand::List { m, r },
        } => {
            let tuples = combinat::klyachko_inequalities(*m, *r)?;
            let report = IneqReport {
                m: *m,
                r: *r,
                count: tuples.len(),
                inequalities: tuples
                    .iter()
                    .map(|t| IneqItem {
                        j0: t.j0.clone(),
                        js: t.js.clone(),
                        text: t.canonical_text(),
                    })
                    .collect(),
            };
            let text = report
                .inequalities
                .iter()
                .map(|i| i.text.clone())
                .collect::<Vec<_>>()
                .join("\n");
            emit(cli, to_json_string(&report)?, text)
        }
        Command::Region {
            cmd: RegionCommand::Check { r, a, b },
        } => {
            let a = parse_values(a, tols.rat_den_cap)?;
            let b = parse_values(b, tols.rat_den_cap)?;
            let check = feasibility::region_check(&a, &b, *r, &tols)?;
            let report = RegionReport {
                feasible: check.feasible,
                witness_c: check
                    .witness
                    .as_ref()
                    .map(|w| w.iter().map(format_rational).collect()),
                binding: check.binding,
                inequality_count: check.inequality_count,
            };
            let text = if report.feasible {
                format!(
                    "feasible  witness c = ({})  binding: {}",
                    report.witness_c.as_ref().unwrap().join(", "),
                    report.binding.join("; ")
                )
            } else {
                "infeasible".to_string()
            };
            emit(cli, to_json_string(&report)?, text)
        }
        Command::Channel { cmd } => match cmd {
            ChannelCommand::Make { sigma2, m, rank } => {
                let s2 = load_density(sigma2, &tols)?;
                let opts = witness_options(cli);
                let kraus = channels::channel_with_choi_rank(&s2, *m, *rank, &opts, &tols)?;
                let deviation = kraus.trace_preservation_deviation();
                let json_kraus = to_json_string(&KrausJson::from_kraus(&kraus))?;
                match &cli.output {
                    Some(path) => {
                        fs::write(path, json_kraus)
                            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                        let report = ChannelMakeReport {
                            choi_rank: kraus.len(),
                            trace_preservation_deviation: deviation,
                            output: Some(path.display().to_string()),
                        };
                        let text = format!(
                            "wrote {} Kraus operators to {}",
                            kraus.len(),
                            path.display()
                        );
                        print!(
                            "{}",
                            if cli.text {
                                text + "\n"
                            } else {
                                to_json_string(&report)?
                            }
                        );
                        Ok(())
                    }
                    None => emit(cli, json_kraus.clone(), json_kraus),
                }
            }
            ChannelCommand::Analyze { kraus } => {
                let text = read_file(kraus)?;
                let kj: KrausJson =
                    serde_json::from_str(&text).map_err(|e| Failure::Tool(Error::Json(e)))?;
                let rep = kj.to_kraus(&tols)?;
                let choi = channels::choi_from_kraus(&rep, &tols)?;
                let fixed = channels::fixed_marginal(&rep, &tols)?;
                let report = ChannelAnalysis {
                    choi_rank: choi.rank(&tols),
                    trace_preserving: rep.trace_preservation_deviation() <= tols.tp_tol,
                    fixed_marginal: MatrixJson::from_matrix(&fixed),
                };
                let human = format!(
                    "choi rank {}  trace preserving: {}",
                    report.choi_rank, report.trace_preserving
                );
                emit(cli, to_json_string(&report)?, human)
            }
        },
    }
}

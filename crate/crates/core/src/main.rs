use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tensorcp::auxiliary::{pad_rhs, AuxiliarySystem};
use tensorcp::classes::{check, ClassName};
use tensorcp::config::{ArithmeticMode, OutputFormat, RunConfig};
use tensorcp::io::{
    format_delimited, format_tensor, matrix_to_json, parse_lcp, parse_tensor_any, parse_vector, tensor_to_json,
    vec_to_json,
};
use tensorcp::lcp::{enumerate_solutions, lemke_solve, w_unique, LcpInstance, LemkeOutcome};
use tensorcp::linalg::Matrix;
use tensorcp::numeric::{format_rational, format_vec, vec_to_f64, Rational};
use tensorcp::report::{omega_report, w_unique_report, Report};
use tensorcp::suite::run_example_suite;
use tensorcp::tcp::{omega_unique, solve_enumerate, solve_exact_reduced, TcpInstance};
use tensorcp::{Error, SparseTensor};

const EXIT_USAGE: u8 = 64;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tensorcp",
    version,
    about = "Tensor and linear complementarity problems with exact certificates"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Number of independent random searches.
    #[arg(long, global = true)]
    seeds: Option<u64>,
    /// Base random seed (default from TENSORCP_SEED, else 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print exact rationals where available (default).
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// Print floating point values.
    #[arg(long, global = true)]
    float: bool,
    /// Largest LCP size for exact support enumeration.
    #[arg(long, global = true)]
    cap_lcp: Option<usize>,
    /// Largest matrix size for exhaustive adequacy checks.
    #[arg(long, global = true)]
    cap_adequacy: Option<usize>,
    /// Largest tensor dimension for TCP support enumeration.
    #[arg(long, global = true)]
    cap_tcp: Option<usize>,
    /// Largest monomial count for which the padded matrix is stored.
    #[arg(long, global = true)]
    cap_abar: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and transform tensors.
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// Auxiliary linear system of a tensor.
    #[command(subcommand)]
    Aux(AuxCmd),
    /// Linear complementarity problems given as "k", k rows, then q.
    #[command(subcommand)]
    Lcp(LcpCmd),
    /// Tensor complementarity problems.
    #[command(subcommand)]
    Tcp(TcpCmd),
    /// Class membership check; exit 0 holds, 1 fails, 2 unknown.
    Check {
        class: String,
        file: PathBuf,
        /// Random samples per seed.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Recompute every worked example and diff against the expected values.
    #[command(name = "reproduce-paper")]
    ReproduceExamples,
}

#[derive(Subcommand)]
enum TensorCmd {
    /// Shape, entries, majorization matrix and structure flags.
    Info { file: PathBuf },
    /// Evaluate A x^(m-1) and A x^m.
    Apply {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Principal sub-tensor on 1-based indices.
    Subtensor {
        file: PathBuf,
        #[arg(long)]
        indices: String,
    },
    /// Diagonal scaling P A Q^(m-1) or permutation similarity.
    Transform {
        file: PathBuf,
        /// Diagonal of P.
        #[arg(long, allow_hyphen_values = true, requires = "q_diag", conflicts_with = "perm")]
        p_diag: Option<String>,
        /// Diagonal of Q.
        #[arg(long, allow_hyphen_values = true, requires = "p_diag")]
        q_diag: Option<String>,
        /// 1-based permutation sigma with p_{i, sigma(i)} = 1.
        #[arg(long)]
        perm: Option<String>,
    },
}

#[derive(Subcommand)]
enum AuxCmd {
    /// Coefficient matrix, padded matrix, padded q and monomial headers.
    Build {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Tab-separated output instead of aligned columns.
        #[arg(long)]
        delimited: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LcpMethod {
    Lemke,
    Enumerate,
}

#[derive(Subcommand)]
enum LcpCmd {
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "enumerate")]
        method: LcpMethod,
    },
    /// Whether every solution has the same w; exit 0 unique, 1 not unique.
    WUnique { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum TcpMethod {
    Auto,
    Reduced,
    Enumerate,
}

#[derive(Subcommand)]
enum TcpCmd {
    Solve {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: TcpMethod,
    },
    /// Whether every solution has the same omega; exit 0 unique, 1 not unique, 2 undecided.
    OmegaUnique {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = match config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command, &cfg) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Unknown { .. } => ExitCode::from(EXIT_USAGE),
                _ => ExitCode::from(EXIT_RUNTIME),
            }
        }
    }
}

fn config(g: &Global) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(s) = g.seeds {
        cfg.seeds = s;
    }
    cfg.mode = if g.float {
        ArithmeticMode::Float
    } else {
        ArithmeticMode::Exact
    };
    cfg.format = match g.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    let caps = &mut cfg.caps;
    caps.lcp = g.cap_lcp.unwrap_or(caps.lcp);
    caps.adequacy = g.cap_adequacy.unwrap_or(caps.adequacy);
    caps.tcp = g.cap_tcp.unwrap_or(caps.tcp);
    caps.abar = g.cap_abar.unwrap_or(caps.abar);
    cfg.validate()?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_tensor(path: &Path) -> Result<SparseTensor, Error> {
    parse_tensor_any(&read(path)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn vector(s: &str) -> Result<Vec<Rational>, Error> {
    parse_vector(s).map_err(|e| Error::Unknown {
        kind: "vector",
        value: format!("{s} ({e})"),
    })
}

fn indices(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Unknown {
        kind: "index list",
        value: s.to_string(),
    };
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(bad)
        })
        .collect()
}

fn emit_tensor(t: &SparseTensor, cfg: &RunConfig) -> String {
    match cfg.format {
        OutputFormat::Text => format_tensor(t),
        OutputFormat::Json => serde_json::to_string_pretty(&tensor_to_json(t)).expect("tensor serializes") + "\n",
    }
}

fn run(cmd: Command, cfg: &RunConfig) -> Result<(String, u8), Error> {
    let exact = cfg.mode == ArithmeticMode::Exact;
    match cmd {
        Command::Tensor(TensorCmd::Info { file }) => {
            let t = load_tensor(&file)?;
            let aux = AuxiliarySystem::build_with_cap(&t, 0)?;
            let mut r = Report::new("tensor info");
            r.text(format!(
                "order {}, dimension {}, stored entries {}",
                t.order(),
                t.dim(),
                t.nnz()
            ))
            .text(format!(
                "majorization matrix M(A):\n{}",
                t.majorization().to_aligned(None)
            ))
            .text(format!("monomials N = {}", aux.width()))
            .text(format!("row diagonal: {}", t.is_row_diagonal()))
            .text(format!("mixed block B is zero: {}", aux.b_is_zero()))
            .detail("order", json!(t.order()))
            .detail("dim", json!(t.dim()))
            .detail("nnz", json!(t.nnz()))
            .detail("majorization", matrix_to_json(&t.majorization()))
            .detail("monomials", json!(aux.width()))
            .detail("row_diagonal", json!(t.is_row_diagonal()))
            .detail("mixed_block_zero", json!(aux.b_is_zero()));
            Ok((r.emit(cfg.format), 0))
        }
        Command::Tensor(TensorCmd::Apply { file, x }) => {
            let t = load_tensor(&file)?;
            let x = vector(&x)?;
            if x.len() != t.dim() {
                return Err(Error::DimensionMismatch {
                    expected: t.dim(),
                    found: x.len(),
                });
            }
            let mut r = Report::new("tensor apply");
            if exact {
                let image = t.apply_deg(&x)?;
                let full = t.apply_full(&x)?;
                r.text(format!("A x^(m-1) = {}", format_vec(&image)))
                    .text(format!("A x^m = {}", format_rational(&full)))
                    .detail("image", vec_to_json(&image))
                    .detail("form", json!(format_rational(&full)));
            } else {
                let xf = vec_to_f64(&x);
                let image = t.apply_deg_f64(&xf);
                let full = t.apply_full_f64(&xf);
                r.text(format!("A x^(m-1) = {image:?}"))
                    .text(format!("A x^m = {full}"))
                    .detail("image", json!(image))
                    .detail("form", json!(full));
            }
            Ok((r.emit(cfg.format), 0))
        }
        Command::Tensor(TensorCmd::Subtensor { file, indices: idx }) => {
            let t = load_tensor(&file)?;
            let sub = t.principal_subtensor(&indices(&idx)?)?;
            Ok((emit_tensor(&sub, cfg), 0))
        }
        Command::Tensor(TensorCmd::Transform {
            file,
            p_diag,
            q_diag,
            perm,
        }) => {
            let t = load_tensor(&file)?;
            let out = match (p_diag, q_diag, perm) {
                (Some(p), Some(q), None) => {
                    t.transform_diag(&Matrix::diagonal(&vector(&p)?), &Matrix::diagonal(&vector(&q)?))?
                }
                (None, None, Some(s)) => t.transform_perm(&Matrix::from_permutation(&indices(&s)?))?,
                _ => {
                    return Err(Error::Unknown {
                        kind: "transform",
                        value: "give --p-diag and --q-diag, or --perm".to_string(),
                    })
                }
            };
            Ok((emit_tensor(&out, cfg), 0))
        }
        Command::Aux(AuxCmd::Build { file, q, delimited }) => {
            let t = load_tensor(&file)?;
            let start = Instant::now();
            let aux = AuxiliarySystem::build_with_cap(&t, cfg.caps.abar)?;
            let elapsed = start.elapsed();
            let headers = aux.basis().headers();
            let show = |m: &Matrix| {
                if delimited {
                    format_delimited(m, Some(&headers))
                } else {
                    m.to_aligned(Some(&headers))
                }
            };
            let mut r = Report::new("aux build");
            r.text(format!("monomials ({}): {}", aux.width(), headers.join(" ")))
                .text(format!("coef = (M(A) | B):\n{}", show(aux.coef())))
                .detail("headers", json!(headers))
                .detail("coef", matrix_to_json(aux.coef()));
            match aux.abar() {
                Some(abar) => {
                    r.text(format!("padded matrix:\n{}", show(abar)))
                        .detail("abar", matrix_to_json(abar));
                }
                None => {
                    r.text(format!(
                        "padded matrix not stored: N = {} exceeds --cap-abar",
                        aux.width()
                    ));
                }
            }
            if let Some(q) = q {
                let q = vector(&q)?;
                if q.len() != aux.n() {
                    return Err(Error::DimensionMismatch {
                        expected: aux.n(),
                        found: q.len(),
                    });
                }
                let qbar = pad_rhs(&q, aux.width())?;
                r.text(format!("padded q = {}", format_vec(&qbar)))
                    .detail("qbar", vec_to_json(&qbar));
            }
            r.timing("build", elapsed);
            Ok((r.emit(cfg.format), 0))
        }
        Command::Lcp(LcpCmd::Solve { file, method }) => {
            let (m, q) = parse_lcp(&read(&file)?)?;
            let inst = LcpInstance::new(m, q)?;
            let start = Instant::now();
            let mut r = Report::new("lcp solve");
            match method {
                LcpMethod::Lemke => match lemke_solve(&inst)? {
                    LemkeOutcome::Solved { z, pivots, .. } => {
                        r.status("solved").lcp_solutions(&[z]).detail("pivots", json!(pivots));
                    }
                    LemkeOutcome::Ray { pivots } => {
                        r.status("secondary ray")
                            .text("Lemke terminated on a secondary ray; no solution was found")
                            .detail("pivots", json!(pivots));
                    }
                },
                LcpMethod::Enumerate => {
                    let pieces = enumerate_solutions(&inst, cfg.caps.lcp)?;
                    let status = if pieces.is_empty() { "no solution" } else { "solved" };
                    r.status(status).pieces(&pieces);
                }
            }
            r.timing("solve", start.elapsed());
            Ok((r.emit(cfg.format), 0))
        }
        Command::Lcp(LcpCmd::WUnique { file }) => {
            let (m, q) = parse_lcp(&read(&file)?)?;
            let inst = LcpInstance::new(m, q)?;
            let start = Instant::now();
            let rep = w_unique(&inst, cfg.caps.lcp)?;
            let mut r = w_unique_report(&rep);
            r.timing("enumerate", start.elapsed());
            Ok((r.emit(cfg.format), if rep.unique { 0 } else { 1 }))
        }
        Command::Tcp(TcpCmd::Solve { file, q, method }) => {
            let t = load_tensor(&file)?;
            let inst = TcpInstance::new(t, vector(&q)?)?;
            let start = Instant::now();
            let mut r = Report::new("tcp solve");
            let reducible =
                inst.tensor().order() % 2 == 0 && AuxiliarySystem::build_with_cap(inst.tensor(), 0)?.b_is_zero();
            let use_reduced = match method {
                TcpMethod::Reduced => true,
                TcpMethod::Enumerate => false,
                TcpMethod::Auto => reducible && inst.tensor().dim() <= cfg.caps.lcp,
            };
            if use_reduced {
                let red = solve_exact_reduced(&inst, cfg.caps.lcp)?;
                let pieces: Vec<_> = red.families.iter().map(|f| f.piece.clone()).collect();
                r.text("method: reduced LCP(q, M(A)) with x = y^[1/(m-1)]")
                    .tcp_solutions(&red.points, exact)
                    .pieces(&pieces)
                    .detail("method", json!("reduced"))
                    .detail("root_degree", json!(inst.tensor().order() - 1));
                r.text("each piece lists y = x^[m-1]; every point of a piece gives a solution");
            } else {
                let sols = solve_enumerate(&inst, cfg.enumerate())?;
                r.text("method: support enumeration with multi-start Newton (not exhaustive)")
                    .tcp_solutions(&sols, exact)
                    .detail("method", json!("enumerate"));
            }
            r.timing("solve", start.elapsed());
            Ok((r.emit(cfg.format), 0))
        }
        Command::Tcp(TcpCmd::OmegaUnique { file, q }) => {
            let t = load_tensor(&file)?;
            let inst = TcpInstance::new(t, vector(&q)?)?;
            let start = Instant::now();
            let rep = omega_unique(&inst, cfg.omega())?;
            let mut r = omega_report(&rep, exact);
            r.timing("decide", start.elapsed());
            let code = match rep.unique {
                Some(true) => 0,
                Some(false) => 1,
                None => 2,
            };
            Ok((r.emit(cfg.format), code))
        }
        Command::Check { class, file, budget } => {
            let class: ClassName = class.parse()?;
            let t = load_tensor(&file)?;
            let mut cfg = *cfg;
            if budget.is_some() {
                cfg.budget = budget;
            }
            let start = Instant::now();
            let v = check(class, &t, &cfg.check())?;
            let mut r = Report::new(format!("check {class}"));
            r.verdict(&v).timing("check", start.elapsed());
            Ok((r.emit(cfg.format), v.exit_code() as u8))
        }
        Command::ReproduceExamples => {
            let rep = run_example_suite(cfg)?;
            let out = match cfg.format {
                OutputFormat::Text => rep.to_text(),
                OutputFormat::Json => {
                    let cases: Vec<_> = rep
                        .cases
                        .iter()
                        .map(|c| {
                            json!({
                                "id": c.id,
                                "description": c.description,
                                "passed": c.passed(),
                                "checks": c.checks,
                                "mismatches": c.mismatches,
                                "ms": c.elapsed.as_secs_f64() * 1e3,
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "verdict": if rep.passed() { "pass" } else { "fail" },
                        "cases": cases,
                        "timings": { "total": rep.elapsed.as_secs_f64() * 1e3 },
                    }))
                    .expect("suite serializes")
                        + "\n"
                }
            };
            Ok((out, if rep.passed() { 0 } else { 1 }))
        }
    }
}

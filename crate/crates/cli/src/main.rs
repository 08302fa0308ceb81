//! File-based realization algebra.
//!
//! Subcommands transform realization documents (invert, mul, compose1,
//! compose2, circuit), evaluate and analyze them (eval, minimal), and run
//! positivity checks (check-pr, check-stieltjes).
//!
//! Exit codes: 0 success; 1 usage error (bad arguments, unreadable or
//! malformed documents); 2 numerical precondition failure (singular
//! feedthrough, singular shifted pencil, pole hit, non-diagonalizable state
//! matrix); 3 check failed (check-* commands only).

mod document;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use document::{NetworkDocument, RealizationDocument};
use realize_core::compose::{self, DiagCase};
use realize_core::networks;
use realize_core::sampling::rhp_grid;
use realize_core::spectral;
use realize_core::stieltjes;
use realize_core::{Complex64, Error as CoreError, Realization};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "realize",
    about = "State-space realization calculus on JSON documents",
    version
)]
struct Cli {
    /// Relative tolerance for rank / singularity / diagonalizability decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for the sampling grids of the check commands
    #[arg(long, global = true, default_value_t = 4242)]
    seed: u64,

    /// Machine-readable JSON reports on stdout
    #[arg(long, global = true, default_value_t = false)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum CaseArg {
    /// Scalar right factor substituted for the left variable
    #[value(name = "scalar-inner")]
    ScalarInner,
    /// Diagonalizable left state, right factor sized like the left state (q = n)
    #[value(name = "I", alias = "i")]
    I,
    /// Diagonalizable left state, square match (q = p), residues on the input side
    #[value(name = "IIa", alias = "iia")]
    IIa,
    /// Diagonalizable left state, square match (q = p), residues on the output side
    #[value(name = "IIb", alias = "iib")]
    IIb,
    /// Diagonalizable left state, scalar left function, any right size
    #[value(name = "III", alias = "iii")]
    III,
    /// Scalar left factor over a matrix right factor (works without diagonalizability)
    #[value(name = "scalar-outer")]
    ScalarOuter,
}

#[derive(Subcommand)]
enum Command {
    /// Realize the functional inverse F(z)^{-1}
    Invert {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Realize the product F1(z) F2(z)
    Mul {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compose by substituting the right function for the left variable
    Compose1 {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compose by substituting the right value for the left pencil argument
    Compose2 {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate F(z) at a point
    Eval {
        input: PathBuf,
        /// Evaluation point as RE,IM
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Controllability, observability, minimality and McMillan degree
    Minimal { input: PathBuf },
    /// Sampled positive-real check on a right-half-plane grid
    CheckPr {
        input: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Sampled Stieltjes check plus the canonical-realization certificate
    CheckStieltjes {
        input: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Flatten a network expression tree to a realization
    Circuit {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are not errors
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Map library errors onto the exit-code contract: tolerance-dependent
/// numerical failures are exit 2, static input problems are exit 1.
fn from_core(err: CoreError) -> Failure {
    let code = match unwrap_network(&err) {
        CoreError::Singular(_)
        | CoreError::SingularDelta { .. }
        | CoreError::Pole { .. }
        | CoreError::NotDiagonalizable
        | CoreError::NotCanonical(_)
        | CoreError::RankDeficient(_)
        | CoreError::ConvergenceFailure(_) => EXIT_PRECONDITION,
        // static shape problems (wrong value dimensions for the requested
        // construction) are usage errors, like any other malformed input
        _ => EXIT_USAGE,
    };
    Failure {
        code,
        message: err.to_string(),
    }
}

fn unwrap_network(err: &CoreError) -> &CoreError {
    match err {
        CoreError::Network { source, .. } => unwrap_network(source),
        other => other,
    }
}

fn load_realization(path: &Path) -> Result<Realization, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: RealizationDocument = serde_json::from_str(&text)
        .map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))?;
    doc.to_realization()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn save_realization(path: &Path, r: &Realization) -> Result<(), Failure> {
    let doc = RealizationDocument::from_realization(r, None);
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| usage(format!("cannot serialize output: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_point(spec: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!("point must be RE,IM, got {spec:?}")));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| usage(format!("bad real part {:?}: {e}", parts[0])))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| usage(format!("bad imaginary part {:?}: {e}", parts[1])))?;
    Ok(Complex64::new(re, im))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| usage(format!("cannot serialize report: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let tol = cli.tol;
    match &cli.command {
        Command::Invert { input, output } => {
            let r = load_realization(input)?;
            let inv = r.inverse(tol).map_err(from_core)?;
            save_realization(output, &inv)?;
            Ok(0)
        }
        Command::Mul {
            left,
            right,
            output,
        } => {
            let l = load_realization(left)?;
            let r = load_realization(right)?;
            let prod = l.product(&r).map_err(from_core)?;
            save_realization(output, &prod)?;
            Ok(0)
        }
        Command::Compose1 {
            left,
            right,
            case,
            output,
        } => {
            let l = load_realization(left)?;
            let r = load_realization(right)?;
            let composed = match case {
                CaseArg::ScalarInner => compose::scalar_inner(&l, &r, tol),
                CaseArg::I => compose::diagonalizable(&l, &r, DiagCase::StateMatched, tol),
                CaseArg::IIa => compose::diagonalizable(&l, &r, DiagCase::SquareInput, tol),
                CaseArg::IIb => compose::diagonalizable(&l, &r, DiagCase::SquareOutput, tol),
                CaseArg::III => compose::diagonalizable(&l, &r, DiagCase::ScalarResidues, tol),
                CaseArg::ScalarOuter => compose::scalar_outer(&l, &r, tol),
            }
            .map_err(from_core)?;
            save_realization(output, &composed)?;
            Ok(0)
        }
        Command::Compose2 {
            left,
            right,
            output,
        } => {
            let l = load_realization(left)?;
            let r = load_realization(right)?;
            let composed = compose::pencil(&l, &r, tol).map_err(from_core)?;
            save_realization(output, &composed)?;
            Ok(0)
        }
        Command::Eval { input, z } => {
            let r = load_realization(input)?;
            let point = parse_point(z)?;
            let value = r.eval_with_tol(point, tol).map_err(from_core)?;
            if cli.json {
                #[derive(Serialize)]
                struct EvalReport {
                    z: [f64; 2],
                    rows: usize,
                    cols: usize,
                    value: document::MatrixDoc,
                }
                print_json(&EvalReport {
                    z: [point.re, point.im],
                    rows: value.rows(),
                    cols: value.cols(),
                    value: document::value_to_doc(&value),
                })?;
            } else {
                println!("F({}) =", point);
                println!("{value}");
            }
            Ok(0)
        }
        Command::Minimal { input } => {
            let r = load_realization(input)?;
            let pbh_c = spectral::pbh_controllable(r.a(), r.b(), tol).ok();
            let pbh_o = spectral::pbh_observable(r.a(), r.c(), tol).ok();
            let kal_c = spectral::kalman_controllable(r.a(), r.b(), tol).map_err(from_core)?;
            let kal_o = spectral::kalman_observable(r.a(), r.c(), tol).map_err(from_core)?;
            let degree = spectral::mcmillan_degree(&r, tol);
            let minimal = spectral::is_minimal(&r, tol);
            if cli.json {
                #[derive(Serialize)]
                struct MinimalReport {
                    state_dim: usize,
                    pbh_controllable: Option<bool>,
                    pbh_observable: Option<bool>,
                    kalman_controllable: bool,
                    kalman_observable: bool,
                    mcmillan_degree: usize,
                    minimal: bool,
                }
                print_json(&MinimalReport {
                    state_dim: r.state_dim(),
                    pbh_controllable: pbh_c,
                    pbh_observable: pbh_o,
                    kalman_controllable: kal_c,
                    kalman_observable: kal_o,
                    mcmillan_degree: degree,
                    minimal,
                })?;
            } else {
                println!("state dimension: {}", r.state_dim());
                match (pbh_c, pbh_o) {
                    (Some(ctrl), Some(obs)) => {
                        println!("eigenvector test: controllable={ctrl} observable={obs}");
                    }
                    _ => println!(
                        "eigenvector test: n/a (state matrix not diagonalizable at tolerance)"
                    ),
                }
                println!("Kalman rank test: controllable={kal_c} observable={kal_o}");
                println!("McMillan degree: {degree}");
                println!("minimal: {minimal}");
            }
            Ok(0)
        }
        Command::CheckPr { input, samples } => {
            let r = load_realization(input)?;
            let grid = rhp_grid(*samples, cli.seed);
            let verdict = stieltjes::is_positive_sampled(&r, &grid, tol).map_err(from_core)?;
            let failure = first_positivity_failure(&r, &grid, tol);
            if cli.json {
                #[derive(Serialize)]
                struct PrReport {
                    check: &'static str,
                    samples: usize,
                    seed: u64,
                    positive_real_sampled: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    first_failure: Option<[f64; 2]>,
                }
                print_json(&PrReport {
                    check: "positive-real",
                    samples: *samples,
                    seed: cli.seed,
                    positive_real_sampled: verdict,
                    first_failure: failure.map(|z| [z.re, z.im]),
                })?;
            } else if verdict {
                println!(
                    "positive-real (sampled): PASS on {samples} right-half-plane samples (seed {})",
                    cli.seed
                );
            } else {
                let z = failure.expect("failed verdicts have a witness");
                println!(
                    "positive-real (sampled): FAIL, Hermitian part not PSD (or pole) at z = {z}"
                );
            }
            Ok(if verdict { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::CheckStieltjes { input, samples } => {
            let r = load_realization(input)?;
            let grid = rhp_grid(*samples, cli.seed);
            let sampled = stieltjes::is_stieltjes_sampled(&r, &grid, tol).map_err(from_core)?;
            let canonical = stieltjes::is_canonical(&r, tol);
            if cli.json {
                #[derive(Serialize)]
                struct StieltjesReport {
                    check: &'static str,
                    samples: usize,
                    seed: u64,
                    stieltjes_sampled: bool,
                    canonical_certificate: bool,
                    verdict: &'static str,
                }
                print_json(&StieltjesReport {
                    check: "stieltjes",
                    samples: *samples,
                    seed: cli.seed,
                    stieltjes_sampled: sampled,
                    canonical_certificate: canonical,
                    verdict: if canonical && sampled {
                        "certified"
                    } else if sampled {
                        "sampled only"
                    } else {
                        "failed"
                    },
                })?;
            } else if sampled && canonical {
                println!(
                    "stieltjes: PASS, certified (all blocks full rank, sign-flipped realization array PSD) and sampled on {samples} points"
                );
            } else if sampled {
                println!(
                    "stieltjes: PASS, sampled only on {samples} points (no canonical certificate at this coordinate frame)"
                );
            } else {
                println!(
                    "stieltjes: FAIL on the {samples}-point grid (seed {})",
                    cli.seed
                );
            }
            Ok(if sampled { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Circuit { input, output } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
            let doc: NetworkDocument = serde_json::from_str(&text)
                .map_err(|e| usage(format!("cannot parse {}: {e}", input.display())))?;
            let expr = doc
                .to_expr()
                .map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let flat = networks::flatten(&expr, tol).map_err(from_core)?;
            save_realization(output, &flat)?;
            Ok(0)
        }
    }
}

/// First grid point at which positivity fails, for the failure report.
fn first_positivity_failure(r: &Realization, grid: &[Complex64], tol: f64) -> Option<Complex64> {
    grid.iter()
        .find(|&&z| match stieltjes::hermitian_part_at(r, z) {
            Err(_) => true,
            Ok(h) => !realize_core::matrix::herm_psd_check(&h, tol).is_psd(),
        })
        .copied()
}

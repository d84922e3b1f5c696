//! One binary, subcommand per operation, bit-exact file formats.
//!
//! Exit codes: 0 success or PASS, 1 verification/test failure, 2 usage or
//! I/O errors. Reports go to stdout, diagnostics to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use beamsplit_core::construct::{is_hadamard, paley, sylvester};
use beamsplit_core::extract::{borel_normality_test, monobit_summary, von_neumann_extract};
use beamsplit_core::schwinger::{
    dita_explore, is_complex_hadamard, schwinger_basis, unbiased_check, Basis,
};
use beamsplit_core::search::{count_normalized_stats, search_existence, SearchOutcome};
use beamsplit_core::sim::{sample_bits, GapModel, GapSourceConfig};
use beamsplit_core::{BitStream, PhaseMatrix, SignMatrix};

#[derive(Parser)]
#[command(
    name = "beamsplit",
    version,
    about = "Hadamard matrices, unbiased bases, beam-splitter bit sources, and stream tests"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a matrix and write it in .smat/.pmat form.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Verify a matrix file or a basis pair.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Backtracking search for a normalized Hadamard matrix.
    Search {
        /// Order to search (at most 20; counting caps at 8).
        #[arg(long)]
        order: usize,
        /// Count normalized matrices by full enumeration instead.
        #[arg(long)]
        count: bool,
    },
    /// Sample a seeded bit (or symbol) stream from a gap model.
    Sim {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Beam splitter port count.
        #[arg(long)]
        n: Option<usize>,
        /// Beam splitter input port.
        #[arg(long)]
        port: Option<usize>,
        /// Bernoulli probability of symbol 1 (symmetry/emission models).
        #[arg(long)]
        bias: Option<f64>,
        /// Number of symbols to draw.
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Stream transforms.
    Extract {
        #[command(subcommand)]
        what: ExtractCmd,
    },
    /// Statistical stream tests; exit code 1 on FAIL.
    Test {
        #[command(subcommand)]
        what: TestCmd,
    },
    /// Exhaustive parameter-space explorers.
    Explore {
        #[command(subcommand)]
        what: ExploreCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Sylvester doubling construction of order 2^k.
    Sylvester {
        #[arg(long)]
        k: u32,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Paley construction of order q+1 for a prime q = 3 (mod 4).
    Paley {
        #[arg(long)]
        q: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Cyclic-shift eigenbasis (Fourier phases) of order n.
    Schwinger {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check a .smat (real) or .pmat (complex) file for the Hadamard property.
    Hadamard { file: PathBuf },
    /// Check two bases for mutual unbiasedness; `identity` names the
    /// standard basis.
    Unbiased { a: String, b: String },
}

#[derive(Subcommand)]
enum ExtractCmd {
    /// von Neumann pair debiasing: 01 -> 0, 10 -> 1.
    Vonneumann { input: PathBuf, output: PathBuf },
}

#[derive(Subcommand)]
enum TestCmd {
    /// Finite-string normality over all block lengths up to log2 log2 n.
    Borel { input: PathBuf },
    /// Ones-frequency summary at 4 sigma.
    Monobit { input: PathBuf },
}

#[derive(Subcommand)]
enum ExploreCmd {
    /// All diagonal-sign and quarter-turn rotation assignments at n = 2 or 4.
    Dita {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Beamsplitter,
    Symmetry,
    Emission,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Gen { what } => {
            let (text, out) = match what {
                GenCmd::Sylvester { k, out } => {
                    (sylvester(k).map_err(|e| e.to_string())?.to_smat(), out)
                }
                GenCmd::Paley { q, out } => (paley(q).map_err(|e| e.to_string())?.to_smat(), out),
                GenCmd::Schwinger { n, out } => (
                    schwinger_basis(n).map_err(|e| e.to_string())?.to_pmat(),
                    out,
                ),
            };
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Verify { what } => match what {
            VerifyCmd::Hadamard { file } => {
                let text = read_file(&file)?;
                let ok = match file.extension().and_then(|e| e.to_str()) {
                    Some("smat") => {
                        is_hadamard(&SignMatrix::parse_smat(&text).map_err(|e| e.to_string())?)
                    }
                    Some("pmat") => is_complex_hadamard(
                        &PhaseMatrix::parse_pmat(&text).map_err(|e| e.to_string())?,
                    ),
                    _ => {
                        return Err(format!(
                            "{}: expected a .smat or .pmat file",
                            file.display()
                        ))
                    }
                };
                println!("verdict: {}", if ok { "PASS" } else { "FAIL" });
                Ok(if ok { 0 } else { 1 })
            }
            VerifyCmd::Unbiased { a, b } => {
                let basis_a = load_basis(&a, &b)?;
                let basis_b = load_basis(&b, &a)?;
                let report = unbiased_check(&basis_a, &basis_b).map_err(|e| e.to_string())?;
                print!("{}", report.render());
                Ok(if report.passed { 0 } else { 1 })
            }
        },
        Cmd::Search { order, count } => {
            if count {
                let r = count_normalized_stats(order).map_err(|e| e.to_string())?;
                println!("count: {}", r.count);
                println!("nodes: {}", r.nodes_explored);
                println!("elapsed_ms: {}", r.elapsed.as_millis());
                Ok(0)
            } else {
                let r = search_existence(order).map_err(|e| e.to_string())?;
                let (line, matrix, code) = match r.outcome {
                    SearchOutcome::Found(m) => ("FOUND", Some(m), 0),
                    SearchOutcome::NoneExists => ("NONE_EXISTS", None, 1),
                    SearchOutcome::Inadmissible => ("INADMISSIBLE", None, 1),
                };
                println!("outcome: {line}");
                if let Some(m) = matrix {
                    print!("{}", m.to_smat());
                }
                println!("nodes: {}", r.nodes_explored);
                println!("elapsed_ms: {}", r.elapsed.as_millis());
                Ok(code)
            }
        }
        Cmd::Sim {
            model,
            n,
            port,
            bias,
            bits,
            seed,
            out,
        } => {
            let model = match model {
                ModelArg::Beamsplitter => {
                    if bias.is_some() {
                        return Err("--bias does not apply to the beamsplitter model".into());
                    }
                    GapModel::BeamSplitter {
                        ports: n.unwrap_or(2),
                        input_port: port.unwrap_or(0),
                    }
                }
                ModelArg::Symmetry => {
                    if n.is_some() || port.is_some() {
                        return Err("--n/--port apply only to the beamsplitter model".into());
                    }
                    GapModel::SymmetryBreak {
                        bias: bias.unwrap_or(0.5),
                    }
                }
                ModelArg::Emission => {
                    if n.is_some() || port.is_some() {
                        return Err("--n/--port apply only to the beamsplitter model".into());
                    }
                    GapModel::Emission {
                        probability: bias.unwrap_or(0.5),
                    }
                }
            };
            let stream = sample_bits(&GapSourceConfig {
                model,
                seed,
                length: bits,
            })
            .map_err(|e| e.to_string())?;
            let text = stream.to_text().map_err(|e| e.to_string())?;
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Extract { what } => match what {
            ExtractCmd::Vonneumann { input, output } => {
                let text = read_file(&input)?;
                let stream = BitStream::parse_text(&text).map_err(|e| e.to_string())?;
                let extracted = von_neumann_extract(&stream).map_err(|e| e.to_string())?;
                let out_text = extracted.to_text().map_err(|e| e.to_string())?;
                std::fs::write(&output, out_text)
                    .map_err(|e| format!("{}: {e}", output.display()))?;
                println!("extracted: {}", extracted.len());
                Ok(0)
            }
        },
        Cmd::Test { what } => {
            type Runner = fn(&BitStream) -> beamsplit_core::Result<beamsplit_core::TestReport>;
            let (path, runner): (&PathBuf, Runner) = match &what {
                TestCmd::Borel { input } => (input, borel_normality_test),
                TestCmd::Monobit { input } => (input, monobit_summary),
            };
            let text = read_file(path)?;
            let stream = BitStream::parse_text(&text).map_err(|e| e.to_string())?;
            let report = runner(&stream).map_err(|e| e.to_string())?;
            print!("{}", report.render());
            Ok(if report.passed { 0 } else { 1 })
        }
        Cmd::Explore { what } => match what {
            ExploreCmd::Dita { n } => {
                let report = dita_explore(n).map_err(|e| e.to_string())?;
                print!("{}", report.render());
                Ok(0)
            }
        },
    }
}

/// A basis argument: a .pmat path, or the literal `identity` for the standard
/// basis (its dimension is taken from the other argument).
fn load_basis(arg: &str, other: &str) -> Result<Basis, String> {
    if arg == "identity" {
        if other == "identity" {
            return Err("at most one basis may be `identity`".into());
        }
        let text = read_file(Path::new(other))?;
        let p = PhaseMatrix::parse_pmat(&text).map_err(|e| e.to_string())?;
        return Ok(Basis::Standard(p.order()));
    }
    let text = read_file(Path::new(arg))?;
    let p = PhaseMatrix::parse_pmat(&text).map_err(|e| e.to_string())?;
    Ok(Basis::Phases(p))
}

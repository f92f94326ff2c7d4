use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use linefree::arrangement::io::{parse_input, Input};
use linefree::arrangement::lattice_isomorphic;
use linefree::certify::{analyze, certify_nearly_free_le12, certify_terao_13, reduce_terao_14, Certificate};
use linefree::diophantine::{enumerate_nonneg, parse_system_json, predefined_with, PREDEFINED};
use linefree::error::Error;
use linefree::restriction::{exponents_2multi, ziegler};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "LINEFREE_THREADS";

#[derive(Parser)]
#[command(name = "linefree", version, about = "Freeness and near freeness of projective line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial and, given coordinates, algebraic report.
    Analyze {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Run a decision procedure and print its certificate.
    Certify {
        procedure: ProcedureArg,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Named and user-supplied integer systems.
    Systems {
        #[command(subcommand)]
        action: SystemsAction,
    },
    /// Ziegler multirestriction onto one line and its exponents.
    Restrict {
        file: PathBuf,
        #[arg(long)]
        line: usize,
    },
    /// Test two lattices for isomorphism.
    Iso { file1: PathBuf, file2: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcedureArg {
    Terao13,
    Nfree12,
    Reduce14,
}

#[derive(Subcommand)]
enum SystemsAction {
    List,
    Solve {
        name: String,
        /// Use the rows exactly as printed, including the misprinted one.
        #[arg(long)]
        strict_transcription: bool,
        #[arg(long)]
        json: bool,
    },
    SolveFile {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invalid {THREADS_VAR}: {0}")]
    Threads(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Input { source, .. } | CliError::Core(source) => source,
            _ => return 1,
        };
        match core {
            Error::Parse { .. } => 2,
            Error::InternalInconsistency(_) => 3,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path) -> Result<Input, CliError> {
    parse_input(&read(path)?).map_err(|source| CliError::Input { path: path.into(), source })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| CliError::Threads(raw.clone()))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn render_text(report: &Value) -> String {
    let mut out = format!("lines: {}\n", report["d"]);
    let nk: Vec<String> = report["n_k"]
        .as_object()
        .map(|m| m.iter().map(|(k, v)| format!("n{k}={v}")).collect())
        .unwrap_or_default();
    out += &format!("points: {}\n", nk.join(" "));
    out += &format!("chi: {}\n", report["chi"].as_str().unwrap_or(""));
    out += &format!("tau (combinatorial): {}\n", report["tau_comb"]);
    out += &format!("hirzebruch: {}\n", report["hirzebruch"].as_str().unwrap_or(""));
    for line in report["lines"].as_array().into_iter().flatten() {
        let exps = match &line["ziegler_exponents"] {
            Value::Array(e) => format!("({}, {})", e[0], e[1]),
            _ => "open".into(),
        };
        let ty = line["type13"].as_str().map(|t| format!(" type {t}")).unwrap_or_default();
        out += &format!("  line {}: {} points{ty}, restriction exponents {exps}\n", line["index"], line["points"]);
    }
    match &report["algebraic"] {
        Value::String(s) => out += &format!("algebraic: {s}\n"),
        alg => {
            out += &format!("mdr: {}\n", alg["mdr"]);
            out += &format!("tau (algebraic): {}\n", alg["tau_alg"]);
            out += &format!("verdict: {} {}\n", alg["verdict"].as_str().unwrap_or(""), alg["exponents"]);
        }
    }
    match &report["certificate"] {
        Value::Null => {}
        Value::Object(c) if c.contains_key("error") => out += &format!("certificate: {}\n", c["error"]),
        c => {
            for b in c["branches"].as_array().into_iter().flatten() {
                out += &format!(
                    "certificate {}: branch {}: {}\n",
                    c["procedure"].as_str().unwrap_or(""),
                    b["branch"].as_str().unwrap_or(""),
                    b["claim"].as_str().unwrap_or("")
                );
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file, json, text } => {
            let report = analyze(&load(&file)?)?;
            if text && !json {
                print!("{}", render_text(&report));
            } else {
                print_json(&report);
            }
        }
        Command::Certify { procedure, file, json } => {
            let input = load(&file)?;
            let inc = input.incidence();
            let real = input.realization();
            let cert: Certificate = match procedure {
                ProcedureArg::Terao13 => certify_terao_13(&inc, real)?,
                ProcedureArg::Nfree12 => certify_nearly_free_le12(&inc, real)?,
                ProcedureArg::Reduce14 => reduce_terao_14(&inc)?,
            };
            cert.replay(&inc, real)?;
            if json {
                print_json(&serde_json::to_value(&cert).expect("serializable"));
            } else {
                print!("{cert}");
            }
        }
        Command::Systems { action } => match action {
            SystemsAction::List => {
                for name in PREDEFINED {
                    println!("{name}");
                    for row in predefined_with(name, false)?.to_text().lines() {
                        println!("    {row}");
                    }
                }
            }
            SystemsAction::Solve { name, strict_transcription, json } => {
                let sys = predefined_with(&name, strict_transcription)?;
                let sols = enumerate_nonneg(&sys)?;
                if json {
                    print_json(&sols.to_json());
                } else {
                    println!("{}", sys.to_text());
                    println!("{} solutions", sols.len());
                    print!("{}", sols.to_table());
                }
            }
            SystemsAction::SolveFile { spec, json } => {
                let sys = parse_system_json(&read(&spec)?)
                    .map_err(|source| CliError::Input { path: spec.clone(), source })?;
                let sols = enumerate_nonneg(&sys)?;
                if json {
                    print_json(&sols.to_json());
                } else {
                    println!("{} solutions", sols.len());
                    print!("{}", sols.to_table());
                }
            }
        },
        Command::Restrict { file, line } => {
            let inc = load(&file)?.incidence();
            let ma = ziegler(&inc, line)?;
            let exps = exponents_2multi(&ma)?;
            println!("multiplicities: {:?}", ma.mults());
            match exps.value {
                Some((e1, e2)) => println!("exponents: ({e1}, {e2}) by cases {:?}", exps.cases),
                None => println!("exponents: no closed form applies"),
            }
        }
        Command::Iso { file1, file2 } => {
            let a = load(&file1)?.incidence();
            let b = load(&file2)?.incidence();
            match lattice_isomorphic(&a, &b) {
                Some(perm) => println!("isomorphic: {perm:?}"),
                None => println!("not isomorphic"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

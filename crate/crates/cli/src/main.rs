use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use observa_core::observability::MAX_HIERARCHY_K;
use observa_core::oracle::{enumerate_language, find_witness, Claim, SearchError, WitnessTask};
use observa_core::suite::{run_suite, SuiteConfig};
use observa_core::{
    compile_str, equivalent, hierarchy_witness, minimize, parse_dfa, to_text, Alphabet, Dfa, Error,
    Homomorphism, ObservabilityReport, Operation,
};

#[derive(Parser)]
#[command(
    name = "observa",
    version,
    about = "Observability analysis of regular languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the observability report of an automaton or regex.
    Analyze {
        /// DFA file, or `-` for stdin.
        file: Option<String>,
        #[arg(
            short = 'e',
            long = "regex",
            requires = "alphabet",
            conflicts_with = "file"
        )]
        regex: Option<String>,
        #[arg(short = 'a', long = "alphabet")]
        alphabet: Option<String>,
        #[command(flatten)]
        load: Load,
        #[arg(long)]
        json: bool,
    },
    /// Apply a language operation and write the result.
    Op {
        /// union, intersect, complement, concat, plus, star, hom, invhom,
        /// mirror, lquot or rquot.
        name: String,
        a: String,
        b: Option<String>,
        /// Homomorphism file (`a -> ab` per line).
        #[arg(short = 'm', long = "hom")]
        hom: Option<String>,
        /// Target alphabet of `hom`; defaults to the image symbols.
        #[arg(long)]
        target: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Keep the raw construction instead of minimizing.
        #[arg(long)]
        no_min: bool,
        #[command(flatten)]
        load: Load,
    },
    /// Minimize an automaton.
    Min {
        file: String,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        #[command(flatten)]
        load: Load,
    },
    /// Decide language equality.
    Eq {
        a: String,
        b: String,
        #[command(flatten)]
        load: Load,
    },
    /// List accepted words up to a length.
    Enum {
        file: String,
        #[arg(short = 'n', long = "max-len")]
        max_len: usize,
        #[command(flatten)]
        load: Load,
    },
    /// Extend an automaton to a larger alphabet.
    Embed {
        file: String,
        #[arg(short = 'a', long = "alphabet")]
        alphabet: String,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        #[command(flatten)]
        load: Load,
    },
    /// Search for a counterexample to a closure claim.
    Witness {
        claim: String,
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        max_image: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
    /// Run the replication suite.
    Suite {
        /// Time budget for the index-3 Kleene plus search.
        #[arg(long, default_value_t = 300)]
        budget_seconds: u64,
        #[arg(long)]
        json: bool,
        /// Override the state bound of every counterexample search.
        #[arg(long)]
        witness_max_states: Option<usize>,
        /// State bound of the exhaustive sweeps.
        #[arg(long, default_value_t = 4)]
        sweep_states: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Emit an automaton whose index is exactly K.
    GenHierarchy {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Load {
    /// Send missing transitions to a fresh sink state.
    #[arg(long)]
    complete: bool,
}

enum Failure {
    Usage(String),
    Input(String),
    Bounds(String),
    Assertion(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Bounds(_) => 3,
            Failure::Assertion(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Bounds(m) | Failure::Assertion(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("observa: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze {
            file,
            regex,
            alphabet,
            load,
            json,
        } => {
            let dfa = match (file, regex) {
                (_, Some(re)) => {
                    let sigma = parse_alphabet(alphabet.as_deref().unwrap_or_default())?;
                    compile_str(&re, &sigma).map_err(|e| Failure::Input(format!("-e: {e}")))?
                }
                (Some(f), None) => load_dfa(&f, &load)?,
                (None, None) => {
                    return Err(Failure::Usage(
                        "analyze needs a DFA file or -e REGEX".into(),
                    ))
                }
            };
            let report = ObservabilityReport::new(&dfa);
            if json {
                emit(None, &json_line(&report))
            } else {
                emit(None, &report.to_string())
            }
        }
        Command::Op {
            name,
            a,
            b,
            hom,
            target,
            out,
            no_min,
            load,
        } => {
            let op: Operation = name.parse().map_err(|_| {
                Failure::Usage(format!(
                    "unknown operation {name:?}; expected one of {}",
                    op_names()
                ))
            })?;
            let mut inputs = vec![load_dfa(&a, &load)?];
            match (op.arity(), b) {
                (2, Some(b)) => inputs.push(load_dfa(&b, &load)?),
                (2, None) => return Err(Failure::Usage(format!("{op} needs two automata"))),
                (_, Some(_)) => return Err(Failure::Usage(format!("{op} takes one automaton"))),
                (_, None) => {}
            }
            let h = match (op.needs_homomorphism(), hom) {
                (true, Some(path)) => {
                    let text = read_input(&path)?;
                    let target = match (op, target) {
                        (Operation::InvHom, _) => Some(inputs[0].alphabet().clone()),
                        (_, Some(t)) => Some(parse_alphabet(&t)?),
                        (_, None) => None,
                    };
                    Some(
                        Homomorphism::parse(&text, target.as_ref())
                            .map_err(|e| input_error(&path, e))?,
                    )
                }
                (true, None) => return Err(Failure::Usage(format!("{op} needs -m HOM-FILE"))),
                (false, Some(_)) => {
                    return Err(Failure::Usage(format!("{op} takes no homomorphism")))
                }
                (false, None) => None,
            };
            let result = op
                .apply(&inputs, h.as_ref(), !no_min)
                .map_err(|e| Failure::Input(format!("{op}: {e}")))?;
            let text = if no_min {
                raw_text(&result)
            } else {
                to_text(&result)
            };
            emit(out.as_deref(), &text)
        }
        Command::Min { file, out, load } => {
            let dfa = load_dfa(&file, &load)?;
            emit(out.as_deref(), &to_text(&minimize(&dfa)))
        }
        Command::Eq { a, b, load } => {
            let left = load_dfa(&a, &load)?;
            let right = load_dfa(&b, &load)?;
            let same = equivalent(&left, &right).map_err(|e| Failure::Input(e.to_string()))?;
            emit(None, &format!("equivalent: {same}\n"))
        }
        Command::Enum {
            file,
            max_len,
            load,
        } => {
            let dfa = load_dfa(&file, &load)?;
            let words =
                enumerate_language(&dfa, max_len).map_err(|e| Failure::Usage(e.to_string()))?;
            let text: String = words.iter().map(|w| format!("{w}\n")).collect();
            emit(None, &text)
        }
        Command::Embed {
            file,
            alphabet,
            out,
            load,
        } => {
            let dfa = load_dfa(&file, &load)?;
            let sigma = parse_alphabet(&alphabet)?;
            let wide = dfa
                .embed(&sigma)
                .map_err(|e| Failure::Input(e.to_string()))?;
            emit(out.as_deref(), &raw_text(&wide))
        }
        Command::Witness {
            claim,
            max_states,
            sigma,
            max_image,
            out,
            workers,
            budget_seconds,
        } => {
            let claim = Claim::parse(&claim).map_err(|_| {
                let ids: Vec<String> = Claim::registry().into_iter().map(|c| c.id).collect();
                Failure::Usage(format!(
                    "unknown claim {claim:?}; expected one of {}",
                    ids.join(", ")
                ))
            })?;
            let mut bounds = claim.default_bounds();
            if let Some(n) = max_states {
                bounds.max_states = n;
            }
            if let Some(s) = sigma {
                bounds.sigma = parse_alphabet(&s)?;
            }
            if let Some(m) = max_image {
                bounds.max_image = m;
            }
            let mut task = WitnessTask::new(claim, bounds);
            task.workers = workers;
            task.deadline = budget_seconds.map(|s| Instant::now() + Duration::from_secs(s));
            let witness = find_witness(&task).map_err(|e| match e {
                SearchError::BoundsExhausted { .. } | SearchError::BudgetExceeded => {
                    Failure::Bounds(format!("{}: {e}", task.bounds))
                }
                SearchError::Verification(_) => Failure::Assertion(e.to_string()),
                _ => Failure::Usage(e.to_string()),
            })?;
            let report = witness.to_string();
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
                for (i, dfa) in witness.inputs.iter().enumerate() {
                    write_file(&dir.join(format!("input{i}.dfa")), &to_text(dfa))?;
                }
                if let Some(h) = &witness.homomorphism {
                    write_file(&dir.join("hom.txt"), &h.to_string())?;
                }
                write_file(&dir.join("result.dfa"), &to_text(&witness.result))?;
                write_file(&dir.join("witness.txt"), &report)?;
            }
            emit(None, &report)
        }
        Command::Suite {
            budget_seconds,
            json,
            witness_max_states,
            sweep_states,
            workers,
        } => {
            if sweep_states == 0 || sweep_states > 4 {
                return Err(Failure::Usage("--sweep-states must be in 1..=4".into()));
            }
            let config = SuiteConfig {
                budget: Some(Duration::from_secs(budget_seconds)),
                witness_max_states,
                workers,
                sweep_states,
                ..SuiteConfig::default()
            };
            let report = run_suite(&config);
            if json {
                emit(None, &json_line(&report))?;
            } else {
                emit(None, &report.to_string())?;
            }
            match report.first_failure() {
                None => Ok(()),
                Some(a) => Err(Failure::Assertion(format!(
                    "assertion ({}) {} failed: {}",
                    a.step, a.name, a.detail
                ))),
            }
        }
        Command::GenHierarchy { k, out } => {
            let dfa = hierarchy_witness(k)
                .ok_or_else(|| Failure::Usage(format!("k must be at most {MAX_HIERARCHY_K}")))?;
            emit(out.as_deref(), &to_text(&dfa))
        }
    }
}

fn op_names() -> String {
    Operation::ALL
        .iter()
        .map(|op| op.name())
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_alphabet(text: &str) -> Result<Alphabet, Failure> {
    Alphabet::parse(text).map_err(|e| Failure::Usage(format!("alphabet {text:?}: {e}")))
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("<stdin>: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| io_error(Path::new(path), e))?;
    }
    Ok(text)
}

fn load_dfa(path: &str, load: &Load) -> Result<Dfa, Failure> {
    let text = read_input(path)?;
    parse_dfa(&text, load.complete).map_err(|e| input_error(path, e))
}

fn input_error(path: &str, e: Error) -> Failure {
    let label = if path == "-" { "<stdin>" } else { path };
    match e {
        Error::Format { line, message } if line > 0 => {
            Failure::Input(format!("{label}:{line}: {message}"))
        }
        Error::Format { message, .. } => Failure::Input(format!("{label}: {message}")),
        other => Failure::Input(format!("{label}: {other}")),
    }
}

fn io_error(path: &Path, e: io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// Canonical text followed by `# qN = name` lines giving the original
/// state names.
fn raw_text(dfa: &Dfa) -> String {
    let mut out = to_text(dfa);
    let trimmed = dfa.trimmed();
    for (i, name) in trimmed.names().iter().enumerate() {
        out.push_str(&format!("# q{i} = {name}\n"));
    }
    out
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("<stdout>: {e}")))
        }
    }
}

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rightcon::lab::{self, ExperimentConfig, ExperimentMode};
use rightcon::oaf::{parse_oaf, print_oaf};
use rightcon::{Acceptor, BoolOp, Error, InfoClass, LassoWord, Limits, Obstruction, Polarity};

#[derive(Parser)]
#[command(
    name = "rightcon",
    version,
    about = "Right-congruence analysis of deterministic ω-automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an acceptor file.
    Validate { file: PathBuf },
    /// Decide membership of a lasso `spoke:cycle`.
    Member { file: PathBuf, lasso: String },
    /// Index, informative classes, respective and non-counting verdicts.
    Classify { file: PathBuf },
    /// Write the quotient with the strongest acceptance it certifies.
    Quotient {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Language equivalence, with a separating lasso when they differ.
    Equiv { left: PathBuf, right: PathBuf },
    /// Complement, union or intersection.
    Op {
        op: OpKind,
        left: PathBuf,
        right: Option<PathBuf>,
        #[arg(short)]
        o: PathBuf,
    },
    /// Longest accepting/rejecting alternation along a loop chain.
    Alternation { file: PathBuf },
    /// Generate an acceptor.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Write a catalog automaton.
    Fixture {
        name: String,
        #[arg(short)]
        o: PathBuf,
    },
    /// Fraction of random Muller acceptors that are already minimal.
    Experiment {
        #[arg(long, value_parser = parse_range)]
        sizes: (usize, usize),
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum Gen {
    Wagner {
        n: usize,
        m: usize,
        #[arg(value_parser = parse_polarity, allow_hyphen_values = true)]
        polarity: Polarity,
        #[arg(short)]
        o: PathBuf,
    },
    Random {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Complement,
    Union,
    Intersect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sample,
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text.split_once("..").ok_or("expected A..B")?;
    let a: usize = a.parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_polarity(text: &str) -> Result<Polarity, String> {
    match text {
        "+" | "plus" => Ok(Polarity::Plus),
        "-" | "minus" => Ok(Polarity::Minus),
        "±" | "+-" | "both" => Ok(Polarity::Both),
        _ => Err(format!("unknown polarity {text:?}")),
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Oaf { path: PathBuf, source: Error },
    #[error("{0}")]
    Usage(String),
    #[error("index {0}: the quotient carries no acceptance for this language")]
    Uninformative(usize),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Uninformative(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Lib(Error::CapacityExceeded { .. })
            | CliError::Oaf {
                source: Error::CapacityExceeded { .. },
                ..
            } => 4,
            _ => 3,
        }
    }
}

fn load(path: &Path) -> Result<Acceptor, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    parse_oaf(&text).map_err(|source| CliError::Oaf {
        path: path.into(),
        source,
    })
}

fn save(path: &Path, acceptor: &Acceptor) -> Result<(), CliError> {
    fs::write(path, print_oaf(acceptor)).map_err(|source| CliError::Write {
        path: path.into(),
        source,
    })
}

fn class_name(class: InfoClass) -> &'static str {
    match class {
        InfoClass::IT => "IT",
        InfoClass::IM => "IM",
        InfoClass::IP => "IP",
        InfoClass::IB => "IB",
        InfoClass::IC => "IC",
    }
}

fn set_text(set: &rightcon::StateSet) -> String {
    let items: Vec<String> = set.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn verdict(accepting: bool) -> &'static str {
    if accepting {
        "accepting"
    } else {
        "rejecting"
    }
}

fn obstruction_text(o: &Obstruction, acceptor: &Acceptor) -> String {
    let alphabet = acceptor.structure().alphabet();
    match o {
        Obstruction::ConflictingLassos { accepted, rejected } => {
            format!(
                "accepted={} rejected={}",
                accepted.display(alphabet),
                rejected.display(alphabet)
            )
        }
        Obstruction::CoveredComponent {
            component,
            accepting,
        } => {
            format!(
                "covered_component={} {}",
                set_text(component),
                verdict(*accepting)
            )
        }
        Obstruction::UnmarkedLoop { set, accepting } => {
            format!("unmarked_loop={} {}", set_text(set), verdict(*accepting))
        }
    }
}

fn classify(acceptor: &Acceptor) -> Result<String, CliError> {
    let c = rightcon::classify(acceptor)?;
    let alphabet = acceptor.structure().alphabet();
    let limits = Limits::default();
    let respective = rightcon::respective_violation(acceptor, &limits)?;
    let counting = rightcon::counting_witness(acceptor, &limits)?;
    let mut out = String::new();
    writeln!(out, "index={}", c.index).unwrap();
    writeln!(out, "trivial={}", c.trivial).unwrap();
    writeln!(out, "weak={}", c.weak).unwrap();
    writeln!(out, "db={}", c.db).unwrap();
    writeln!(out, "dc={}", c.dc).unwrap();
    for class in InfoClass::ALL {
        writeln!(out, "{}={}", class_name(class), c.holds(class)).unwrap();
    }
    writeln!(out, "respective={}", respective.is_none()).unwrap();
    writeln!(out, "noncounting={}", counting.is_none()).unwrap();
    if let Some(w) = &respective {
        let x = alphabet.format_word(&w.prefix);
        let u = alphabet.format_word(&w.pumped);
        writeln!(out, "witness_respective=x={x} u={u}").unwrap();
    }
    if let Some(w) = &counting {
        writeln!(
            out,
            "witness_counting=x={} u={} n={} tail={}",
            alphabet.format_word(&w.prefix),
            alphabet.format_word(&w.pumped),
            w.exponent,
            w.tail.display(alphabet)
        )
        .unwrap();
    }
    for class in InfoClass::ALL {
        if let Some(o) = c.obstructions.get(&class) {
            writeln!(
                out,
                "witness_{}={}",
                class_name(class),
                obstruction_text(o, acceptor)
            )
            .unwrap();
        }
    }
    for class in InfoClass::ALL {
        if let Some(cert) = c.certificate(class) {
            for line in print_oaf(&cert)
                .lines()
                .filter(|l| l.starts_with("type ") || l.starts_with("acc "))
            {
                writeln!(out, "certificate_{}={line}", class_name(class)).unwrap();
            }
        }
    }
    Ok(out)
}

fn quotient(acceptor: &Acceptor, target: &Path) -> Result<String, CliError> {
    let c = rightcon::classify(acceptor)?;
    let strongest = [
        InfoClass::IB,
        InfoClass::IC,
        InfoClass::IP,
        InfoClass::IM,
        InfoClass::IT,
    ]
    .into_iter()
    .find(|&class| c.holds(class))
    .ok_or(CliError::Uninformative(c.index))?;
    save(target, &c.certificate(strongest).expect("holds"))?;
    Ok(format!(
        "index={}\nacceptance={}\n",
        c.index,
        class_name(strongest)
    ))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let a = load(&file)?;
            Ok(format!(
                "valid=true\ntype={}\nstates={}\n",
                a.kind(),
                a.state_count()
            ))
        }
        Command::Member { file, lasso } => {
            let a = load(&file)?;
            let w = LassoWord::parse(a.structure().alphabet(), &lasso)?;
            Ok(format!("accepted={}\n", a.accepts(&w)?))
        }
        Command::Classify { file } => classify(&load(&file)?),
        Command::Quotient { file, o } => quotient(&load(&file)?, &o),
        Command::Equiv { left, right } => {
            let (a, b) = (load(&left)?, load(&right)?);
            match rightcon::distinguish(&a, &b)? {
                None => Ok("equivalent=true\n".into()),
                Some(w) => Ok(format!(
                    "equivalent=false\nwitness={}\n",
                    w.display(a.structure().alphabet())
                )),
            }
        }
        Command::Op { op, left, right, o } => {
            let a = load(&left)?;
            let result = match (op, right) {
                (OpKind::Complement, None) => rightcon::complement(&a)?,
                (OpKind::Complement, Some(_)) => {
                    return Err(CliError::Usage("complement takes one operand".into()))
                }
                (_, None) => {
                    return Err(CliError::Usage(
                        "binary operation needs two operands".into(),
                    ))
                }
                (OpKind::Union, Some(b)) => rightcon::combine(&a, &load(&b)?, BoolOp::Union)?,
                (OpKind::Intersect, Some(b)) => {
                    rightcon::combine(&a, &load(&b)?, BoolOp::Intersection)?
                }
            };
            save(&o, &result)?;
            Ok(format!(
                "type={}\nstates={}\n",
                result.kind(),
                result.state_count()
            ))
        }
        Command::Alternation { file } => {
            let m = rightcon::alternation_measure(&load(&file)?)?;
            let polarity = m
                .polarity
                .map_or_else(|| "none".to_string(), |p| p.to_string());
            Ok(format!(
                "alternations={}\npolarity={polarity}\n",
                m.max_alternations
            ))
        }
        Command::Gen { what } => {
            let (a, o) = match what {
                Gen::Wagner { n, m, polarity, o } => (lab::wagner_family(n, m, polarity), o),
                Gen::Random { states, seed, o } => (lab::random_dma(states, seed)?, o),
            };
            save(&o, &a)?;
            Ok(format!("states={}\n", a.state_count()))
        }
        Command::Fixture { name, o } => {
            let a = lab::fixture(&name)?;
            save(&o, &a)?;
            Ok(format!("states={}\n", a.state_count()))
        }
        Command::Experiment {
            sizes,
            trials,
            seed,
            mode,
            samples,
        } => {
            let cfg = ExperimentConfig {
                sizes: (sizes.0..=sizes.1).collect(),
                trials_per_size: trials,
                mode: match mode {
                    Mode::Exact => ExperimentMode::Exact,
                    Mode::Sample => ExperimentMode::Sampled,
                },
                samples,
                seed,
                ..ExperimentConfig::default()
            };
            Ok(lab::run_experiment(&cfg)?.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("rightcon: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

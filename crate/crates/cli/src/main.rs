//! `katra`: compile, compare and certify KAT terms from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use katra::automaton::distinguishing_word;
use katra::certificate::{check_certificate, Certificate};
use katra::program::{
    check_while_determinism, decide_hoare, encode_while, parse_while, HoareImplication,
    UniversalMode,
};
use katra::{
    build_automaton, compile, denote, parse_term, reduce_to_ka, to_nnf, Alphabet, Error,
    GsAutomaton, KatTerm,
};

#[derive(Parser)]
#[command(
    name = "katra",
    version,
    about = "Decide KAT equations through guarded-string automata"
)]
struct Cli {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Primitive programs, comma-separated
    #[arg(long, global = true, default_value = "")]
    programs: String,
    /// Primitive tests, comma-separated; the first one is the most significant atom bit
    #[arg(long, global = true, default_value = "")]
    tests: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a term and write its automaton as JSON
    Compile {
        term: String,
        /// Automaton file; stdout when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the construction certificate
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Exit 0 if two terms are equivalent, 1 with a shortest witness if not
    Equiv { left: String, right: String },
    /// List the guarded strings of a term up to a length, one per line
    Denote {
        term: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Print the negation normal form of a term
    Nnf { term: String },
    /// Print the plain KA terms equivalent to two KAT terms, with atom definitions
    ReduceKa { left: String, right: String },
    /// Reduce `r = 0 -> p = q` to one equation and decide it
    Hoare {
        #[arg(long)]
        r: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Use `(a1 + ... + an)*` as the universal program
        #[arg(long)]
        starred_u: bool,
    },
    /// Translate a while program to a KAT term
    While {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        check_determinism: bool,
    },
    /// Replay a certificate against an automaton file and a term
    CheckCert {
        certificate: PathBuf,
        automaton: PathBuf,
        term: String,
    },
}

#[derive(Debug)]
enum Failure {
    Katra(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Katra(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Katra(Error::TooManyTests(_)) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Katra(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn checked_term(src: &str, alpha: &Alphabet) -> Result<KatTerm, Failure> {
    alpha.check_test_cap()?;
    let t = parse_term(src, alpha)?;
    t.sort()?;
    Ok(t)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let alpha = Alphabet::from_lists(&cli.alphabet.programs, &cli.alphabet.tests)?;
    let term = |src: &str| checked_term(src, &alpha);
    match cli.command {
        Command::Compile {
            term: src,
            output,
            certificate,
        } => {
            let c = compile(&term(&src)?, &alpha)?;
            if let Some(path) = certificate {
                write(&path, &c.certificate.to_json())?;
            }
            let json = c.automaton.to_json(&alpha);
            match output {
                Some(path) => {
                    write(&path, &json)?;
                    println!("states: {}", c.automaton.n());
                }
                None => {
                    println!("{json}");
                    eprintln!("states: {}", c.automaton.n());
                }
            }
        }
        Command::Equiv { left, right } => {
            let a = build_automaton(&term(&left)?, &alpha)?;
            let b = build_automaton(&term(&right)?, &alpha)?;
            match distinguishing_word(&a, &b)? {
                None => println!("equivalent"),
                Some(w) => {
                    println!("not equivalent");
                    println!("witness: {}", alpha.word_text(&w));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Denote { term: src, max_len } => {
            for w in &denote(&term(&src)?, &alpha, max_len)?.words {
                println!("{}", w.display(&alpha));
            }
        }
        Command::Nnf { term: src } => println!("{}", to_nnf(&term(&src)?).display(&alpha)),
        Command::ReduceKa { left, right } => {
            let r = reduce_to_ka(&term(&left)?, &term(&right)?, &alpha)?;
            println!("left: {}", r.left.display(&alpha));
            println!("right: {}", r.right.display(&alpha));
            for (atom, t) in &r.atom_definitions {
                println!(
                    "{} = {}",
                    alpha.letter_text(katra::Letter::Atom(*atom)),
                    t.display(&alpha)
                );
            }
        }
        Command::Hoare { r, p, q, starred_u } => {
            let h = HoareImplication {
                r: term(&r)?,
                p: term(&p)?,
                q: term(&q)?,
            };
            let mode = if starred_u {
                UniversalMode::StarredUniversal
            } else {
                UniversalMode::PlainSum
            };
            let d = decide_hoare(&h, &alpha, mode)?;
            println!("{} = {}", d.left.display(&alpha), d.right.display(&alpha));
            match d.witness {
                None => println!("valid"),
                Some(w) => {
                    println!("invalid");
                    println!("witness: {}", alpha.word_text(&w));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::While {
            file,
            check_determinism,
        } => {
            let w = parse_while(&read(&file)?, &alpha)?;
            println!("{}", encode_while(&w).display(&alpha));
            if check_determinism {
                let report = check_while_determinism(&w, &alpha)?;
                println!(
                    "states: {}, reachable subsets: {}, largest live subset: {}, largest subset: {}",
                    report.states, report.reachable_subsets, report.max_subset, report.raw_max_subset
                );
                if !report.is_deterministic() {
                    println!("nondeterministic");
                    return Ok(ExitCode::from(1));
                }
                println!("deterministic");
            }
        }
        Command::CheckCert {
            certificate,
            automaton,
            term: src,
        } => {
            let cert = Certificate::from_json(&read(&certificate)?)?;
            let aut = GsAutomaton::from_json(&read(&automaton)?, &alpha)?;
            let verdict = check_certificate(&cert, &aut, &term(&src)?)?;
            println!("{verdict}");
            if !verdict.is_accept() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

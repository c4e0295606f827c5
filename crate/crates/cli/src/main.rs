//! Command-line front end: evaluate, check, decide, summarize monoids,
//! construct witnesses, and extract supports of weighted automata over
//! finite commutative rings.
//!
//! Results go to stdout and are byte-identical across runs on identical
//! inputs; diagnostics and timings go to stderr. Exit codes: 0 for success
//! (or a positive verdict), 1 for a negative verdict under `--assert` or a
//! failed witness verification, 2 for malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use revwa::io::{
    parse_decomposition, parse_dfa, parse_element, parse_ring, parse_weighted_automaton,
    print_dfa, print_element, print_weighted_automaton,
};
use revwa::{
    classify_language, decide_reversibility, ecom_language_check, parity_support_dfa,
    support_dfa, verify_witness, witness_characteristic_series, Alphabet, DecideOptions,
    MonoidSummary, Word,
};

#[derive(Parser)]
#[command(
    name = "revwa",
    version,
    about = "Reversibility analysis for weighted automata over finite commutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the coefficient of a word and print its canonical encoding.
    Eval {
        /// Weighted automaton file.
        automaton: PathBuf,
        /// The word as a string of single-character symbols ("" for the
        /// empty word).
        word: Option<String>,
        /// Read the word from a file with one symbol per line instead, for
        /// alphabets with multi-character symbols.
        #[arg(long, conflicts_with = "word")]
        word_file: Option<PathBuf>,
    },
    /// Report structural reversibility of a weighted automaton.
    Check {
        /// Weighted automaton file.
        automaton: PathBuf,
        /// Exit with status 1 if the automaton is not reversible.
        #[arg(long)]
        assert: bool,
    },
    /// Decide whether the series admits any reversible realization.
    Decide {
        /// Weighted automaton file.
        automaton: PathBuf,
        /// Exit with status 1 on a not-reversible verdict.
        #[arg(long)]
        assert: bool,
        /// Print the machine-readable report instead of text.
        #[arg(long)]
        json: bool,
        /// Quantify shifts over the subring generated by the weights only.
        #[arg(long)]
        subring: bool,
    },
    /// Print the syntactic monoid summary of a complete deterministic
    /// acceptor.
    Monoid {
        /// Complete deterministic acceptor file.
        dfa: PathBuf,
    },
    /// Classify the language of a complete deterministic acceptor.
    Classify {
        /// Complete deterministic acceptor file.
        dfa: PathBuf,
    },
    /// Construct a reversible weighted automaton realizing a characteristic
    /// series from a decomposition.
    Witness {
        /// Decomposition file: reversible one-initial acceptors over a
        /// shared alphabet.
        decomposition: PathBuf,
        /// Ring specification file.
        ring: PathBuf,
        /// Target acceptor; defaults to the decomposition's odd-membership
        /// language.
        target: Option<PathBuf>,
        /// Write the automaton here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the minimized acceptor of the shifted support of a series.
    Support {
        /// Weighted automaton file.
        automaton: PathBuf,
        /// Shift as a canonical element encoding; defaults to zero.
        #[arg(long)]
        shift: Option<String>,
        /// Write the acceptor here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, document: &str) -> Result<(), String> {
    fs::write(path, format!("{document}\n")).map_err(|e| format!("{}: {e}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The word argument: either a string of single-character symbols or, via
/// `--word-file`, a file with one symbol per line.
fn word_argument(
    alphabet: &Alphabet,
    word: Option<String>,
    word_file: Option<PathBuf>,
) -> Result<Word, String> {
    let symbols: Vec<String> = match (word, word_file) {
        (Some(w), None) => w.chars().map(String::from).collect(),
        (None, Some(path)) => read(&path)?.lines().map(str::to_owned).collect(),
        (None, None) => return Err("a word or --word-file is required".to_owned()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    alphabet.word(&symbols).map_err(|e| e.to_string())
}

/// Longest spot-check length keeping the checked word count modest: at most
/// 1365 words, never longer than 12.
fn spot_check_length(alphabet_size: usize) -> usize {
    let mut total = 1usize;
    let mut level = 1usize;
    let mut len = 0;
    while len < 12 {
        match level
            .checked_mul(alphabet_size)
            .and_then(|next| total.checked_add(next))
        {
            Some(t) if t <= 1365 => {
                level *= alphabet_size;
                total = t;
                len += 1;
            }
            _ => break,
        }
    }
    len
}

fn print_monoid_summary(summary: &MonoidSummary, alphabet: &Alphabet) {
    println!("minimal states: {}", summary.minimal_states);
    println!("monoid size: {}", summary.size);
    println!("idempotents: {}", summary.idempotent_count);
    match &summary.violation {
        None => println!("ecom: yes"),
        Some(v) => println!(
            "ecom: no (idempotents \"{}\" and \"{}\" do not commute)",
            alphabet.render(&v.first),
            alphabet.render(&v.second)
        ),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval {
            automaton,
            word,
            word_file,
        } => {
            let wa = parse_weighted_automaton(&read(&automaton)?).map_err(|e| e.to_string())?;
            let word = word_argument(wa.alphabet(), word, word_file)?;
            println!("{}", print_element(wa.ring(), &wa.coefficient(&word)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { automaton, assert } => {
            let wa = parse_weighted_automaton(&read(&automaton)?).map_err(|e| e.to_string())?;
            let reversible = match wa.check_reversible() {
                Ok(()) => {
                    println!("reversible: yes");
                    true
                }
                Err(violation) => {
                    println!("reversible: no ({violation})");
                    false
                }
            };
            println!("bideterministic: {}", yes_no(wa.is_bideterministic()));
            println!("one-initial: {}", yes_no(wa.initial_weights().len() <= 1));
            Ok(if assert && !reversible {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Decide {
            automaton,
            assert,
            json,
            subring,
        } => {
            let wa = parse_weighted_automaton(&read(&automaton)?).map_err(|e| e.to_string())?;
            let report = decide_reversibility(
                &wa,
                &DecideOptions {
                    restrict_to_weight_subring: subring,
                },
            );
            eprintln!("elapsed: {:?}", report.elapsed);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(if assert && !report.reversible {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Monoid { dfa } => {
            let dfa = parse_dfa(&read(&dfa)?).map_err(|e| e.to_string())?;
            print_monoid_summary(&ecom_language_check(&dfa), dfa.alphabet());
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { dfa } => {
            let dfa = parse_dfa(&read(&dfa)?).map_err(|e| e.to_string())?;
            let classification = classify_language(&dfa);
            print_monoid_summary(&classification.monoid, dfa.alphabet());
            match &classification.omega_violation {
                _ if !classification.monoid.ecom => println!("pin_reversible: no"),
                None => println!("pin_reversible: yes"),
                Some(v) => {
                    let render = |w: &Word| dfa.alphabet().render(w);
                    println!(
                        "pin_reversible: no (\"{}{}{}\" is accepted but \"{}{}\" is not)",
                        render(&v.prefix),
                        render(&v.idempotent),
                        render(&v.continuation),
                        render(&v.prefix),
                        render(&v.continuation),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness {
            decomposition,
            ring,
            target,
            out,
        } => {
            let dec = parse_decomposition(&read(&decomposition)?).map_err(|e| e.to_string())?;
            let ring = parse_ring(&read(&ring)?).map_err(|e| e.to_string())?;
            let target = match target {
                Some(path) => parse_dfa(&read(&path)?).map_err(|e| e.to_string())?,
                None => parity_support_dfa(&dec),
            };
            let wa =
                witness_characteristic_series(&dec, &target, &ring).map_err(|e| e.to_string())?;
            let max_len = spot_check_length(dec.alphabet().len());
            let verification = verify_witness(&wa, &target, max_len).map_err(|e| e.to_string())?;
            let summary = format!(
                "states: {}\nreversible: {}\nsupport matches target: {}\ncoefficients: {} words up to length {}, {}",
                wa.states(),
                yes_no(verification.reversible),
                yes_no(verification.support_matches),
                verification.words_checked,
                max_len,
                if verification.coefficients_match {
                    "all match"
                } else {
                    "MISMATCH"
                },
            );
            let document = print_weighted_automaton(&wa);
            match &out {
                Some(path) => {
                    write(path, &document)?;
                    println!("{summary}");
                }
                None => {
                    println!("{document}");
                    eprintln!("{summary}");
                }
            }
            if verification.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: witness verification failed");
                Ok(ExitCode::from(1))
            }
        }
        Command::Support {
            automaton,
            shift,
            out,
        } => {
            let wa = parse_weighted_automaton(&read(&automaton)?).map_err(|e| e.to_string())?;
            let shift = match shift {
                Some(text) => parse_element(wa.ring(), &text).map_err(|e| e.to_string())?,
                None => wa.ring().zero(),
            };
            let dfa = support_dfa(&wa, &shift)
                .map_err(|e| e.to_string())?
                .minimized();
            let document = print_dfa(&dfa);
            match &out {
                Some(path) => write(path, &document)?,
                None => println!("{document}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

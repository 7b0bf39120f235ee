//! Command-line front end.
//!
//! Exit status: 0 for success or a positive answer, 1 for a negative answer,
//! 2 for usage or data errors, 3 when a guard or budget is exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stallings_core::format::{automaton_dot, nfa_dot, AutomatonFile, NfaFile, SubgroupFile};
use stallings_core::oracle::{brute_membership_set, brute_reduced_language, enum_reduced};
use stallings_core::rational::DEFAULT_GENERATOR_LIMIT;
use stallings_core::stallings::DEFAULT_TAKAHASI_LIMIT;
use stallings_core::{
    Alphabet, EnumerationBudget, Error, RationalSet, ReducedWord, StallingsAutomaton, Subgroup, Word,
};

#[derive(Parser)]
#[command(
    name = "stallings",
    version,
    about = "Stallings automata and rational subsets of free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finitely generated subgroups.
    Sg(SgArgs),
    /// Rational subsets, read from automaton files.
    Rat(RatArgs),
    /// Brute-force enumeration.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Output {
    /// Print Graphviz DOT.
    #[arg(long, global = true, conflicts_with = "json")]
    dot: bool,
    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct SgArgs {
    #[command(subcommand)]
    op: SgOp,
    /// Rank of the ambient free group (default: the largest generator used).
    #[arg(short, long, global = true)]
    rank: Option<usize>,
    /// Generator of H (repeatable); letters a, b, … and inverses A, B, ….
    #[arg(short = 'g', long = "gen", global = true)]
    gens: Vec<String>,
    /// Generator of the second subgroup K (repeatable).
    #[arg(short = 'k', long = "other", global = true)]
    others: Vec<String>,
    /// Read H from a subgroup or automaton JSON file instead of `-g`.
    #[arg(short, long, global = true)]
    file: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum SgOp {
    /// Stallings automaton of H.
    Build,
    /// Is WORD in H?
    Member { word: String },
    /// Free basis read off a spanning tree.
    Basis,
    /// WORD as a product of basis elements (k, or -k for the inverse).
    Express { word: String },
    /// Index of H.
    Index,
    /// Core and tail of S(H).
    Core,
    /// Find x with K = x^-1 H x.
    Conjugate,
    /// Is H normal?
    Normal,
    /// Does H contain K?
    Contains,
    /// H ∩ K.
    Intersect,
    /// Every subgroup whose automaton is a quotient of S(H).
    Takahasi {
        #[arg(long, default_value_t = DEFAULT_TAKAHASI_LIMIT)]
        limit: usize,
    },
    /// A finite-index subgroup containing H but not WORD.
    Hall { word: String },
    /// Finite-index commensurator subgroup.
    Commensurator,
    /// Normal core of a finite-index H.
    Normalcore,
    /// Is H pure (or p-pure with `--prime`)?
    Pure {
        #[arg(long)]
        prime: Option<usize>,
    },
}

#[derive(Args)]
struct RatArgs {
    #[command(subcommand)]
    op: RatOp,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum RatOp {
    /// Reduced language of an automaton.
    Reduce {
        file: PathBuf,
        /// Print the ε-edges added at each saturation stage.
        #[arg(long)]
        trace: bool,
    },
    Union {
        first: PathBuf,
        second: PathBuf,
    },
    Intersect {
        first: PathBuf,
        second: PathBuf,
    },
    Concat {
        first: PathBuf,
        second: PathBuf,
    },
    Star {
        file: PathBuf,
    },
    Inverse {
        file: PathBuf,
    },
    Complement {
        file: PathBuf,
    },
    /// Reduced members up to a length.
    Members {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Is WORD in the set (after reduction)?
    Member {
        file: PathBuf,
        word: String,
    },
    /// Is the set a subgroup?
    Issubgroup {
        file: PathBuf,
    },
    /// Free basis of a set that is a subgroup, from its generating words.
    Generators {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_LIMIT)]
        limit: usize,
    },
    /// Right stabilizer { g : Xg ⊆ X }.
    Stabilizer {
        file: PathBuf,
    },
    /// Recognizable or disjunctive?
    Recognizable {
        file: PathBuf,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    op: OracleOp,
}

#[derive(Subcommand)]
enum OracleOp {
    /// All reduced words up to a length.
    Words {
        #[arg(short, long)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Reduced products of generators within the budget.
    Members {
        #[arg(short, long)]
        rank: Option<usize>,
        #[arg(short = 'g', long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_word: usize,
        #[arg(long, default_value_t = 12)]
        max_product: usize,
    },
    /// Reductions of accepted words, by enumeration.
    Reduced {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_in: usize,
        #[arg(long, default_value_t = 6)]
        max_out: usize,
    },
}

type Outcome = stallings_core::Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sg(args) => run_sg(args),
        Command::Rat(args) => run_rat(args),
        Command::Oracle(args) => run_oracle(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard() { 3 } else { 2 })
        }
    }
}

fn read(path: &Path) -> stallings_core::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// The explicit rank, or the smallest rank whose alphabet covers `texts`.
fn resolve_rank(rank: Option<usize>, texts: &[&String]) -> stallings_core::Result<usize> {
    if let Some(r) = rank {
        return Ok(r);
    }
    let widest = Alphabet::new(26)?;
    texts
        .iter()
        .try_fold(1, |r, t| Ok(r.max(Word::parse(t, widest)?.min_rank())))
}

fn reduced(text: &str, alphabet: Alphabet) -> stallings_core::Result<ReducedWord> {
    Ok(Word::parse(text, alphabet)?.reduce())
}

fn print_automaton(s: &StallingsAutomaton, output: &Output) {
    if output.dot {
        print!("{}", automaton_dot(s.automaton()));
    } else if output.json {
        println!("{}", AutomatonFile::from_automaton(s.automaton()).to_json());
    } else {
        println!("{s}");
    }
}

fn print_subgroup(h: &Subgroup, output: &Output) {
    if output.json {
        println!("{}", SubgroupFile::from_subgroup(h).to_json());
    } else if output.dot {
        print!("{}", automaton_dot(h.stallings().automaton()));
    } else {
        println!("{h}");
    }
}

fn print_set(x: &RationalSet, output: &Output) {
    if output.json {
        println!("{}", NfaFile::from_set(x).to_json());
    } else if output.dot {
        print!("{}", nfa_dot(&x.to_nfa()));
    } else {
        println!("{x}");
    }
}

fn load_subgroup(path: &Path, rank: Option<usize>) -> stallings_core::Result<Subgroup> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    let h = if value.get("generators").is_some() {
        SubgroupFile::from_json(&text)?.to_subgroup()?
    } else {
        AutomatonFile::from_json(&text)?.to_stallings()?.subgroup()
    };
    match rank {
        Some(r) if r != h.alphabet().rank() => Err(Error::RankMismatch {
            left: r,
            right: h.alphabet().rank(),
        }),
        _ => Ok(h),
    }
}

fn run_sg(args: SgArgs) -> Outcome {
    let SgArgs {
        op,
        rank,
        gens,
        others,
        file,
        output,
    } = args;
    let word_arg = match &op {
        SgOp::Member { word } | SgOp::Express { word } | SgOp::Hall { word } => Some(word.clone()),
        _ => None,
    };
    let h = match &file {
        Some(path) => load_subgroup(path, rank)?,
        None => {
            let texts: Vec<&String> = gens.iter().chain(&others).chain(&word_arg).collect();
            let r = resolve_rank(rank, &texts)?;
            Subgroup::parse(r, &gens)?
        }
    };
    let alphabet = h.alphabet();
    let k = || Subgroup::parse(alphabet.rank(), &others);
    let word = || reduced(word_arg.as_deref().unwrap_or(""), alphabet);
    let s = h.stallings();
    match op {
        SgOp::Build => print_automaton(&s, &output),
        SgOp::Member { .. } => {
            let yes = s.member(&word()?);
            println!("{yes}");
            return Ok(yes);
        }
        SgOp::Basis => {
            for g in s.basis().elements {
                println!("{g}");
            }
        }
        SgOp::Express { .. } => {
            let indices = s.express_in_basis(&word()?)?;
            let shown: Vec<String> = indices.iter().map(|k| k.to_string()).collect();
            println!("{}", shown.join(" "));
        }
        SgOp::Index => println!("{}", s.index()),
        SgOp::Core => {
            let ct = s.core_tail()?;
            println!("tail {}", ct.tail);
            print_automaton(&StallingsAutomaton::from_inverse(&ct.core), &output);
        }
        SgOp::Conjugate => match h.conjugator_to(&k()?)? {
            Some(x) => println!("{x}"),
            None => {
                println!("not conjugate");
                return Ok(false);
            }
        },
        SgOp::Normal => {
            let yes = h.is_normal();
            println!("{yes}");
            return Ok(yes);
        }
        SgOp::Contains => {
            let yes = h.contains(&k()?)?;
            println!("{yes}");
            return Ok(yes);
        }
        SgOp::Intersect => print_subgroup(&h.intersect(&k()?)?, &output),
        SgOp::Takahasi { limit } => {
            for e in s.takahasi_extensions(limit)? {
                println!("{}", e.subgroup());
            }
        }
        SgOp::Hall { .. } => {
            let sep = s.hall_separation(&word()?)?;
            eprintln!("index {}", sep.index());
            print_subgroup(&sep.subgroup(), &output);
        }
        SgOp::Commensurator => print_subgroup(&s.commensurator_fi()?.subgroup(), &output),
        SgOp::Normalcore => print_subgroup(&s.normal_core()?.subgroup(), &output),
        SgOp::Pure { prime } => {
            let yes = h.is_pure(prime)?;
            println!("{yes}");
            return Ok(yes);
        }
    }
    Ok(true)
}

fn load_set(path: &Path) -> stallings_core::Result<RationalSet> {
    NfaFile::from_json(&read(path)?)?.to_set()
}

fn run_rat(args: RatArgs) -> Outcome {
    let output = &args.output;
    let pair =
        |a: &Path, b: &Path| -> stallings_core::Result<(RationalSet, RationalSet)> { Ok((load_set(a)?, load_set(b)?)) };
    match args.op {
        RatOp::Reduce { file, trace } => {
            let nfa = NfaFile::from_json(&read(&file)?)?.to_nfa()?;
            if trace {
                for (i, added) in nfa.saturate_traced().added.iter().enumerate() {
                    let shown: Vec<String> = added.iter().map(|(p, q)| format!("{p}->{q}")).collect();
                    eprintln!(
                        "stage {}: {}",
                        i + 1,
                        if shown.is_empty() { "-".into() } else { shown.join(" ") }
                    );
                }
            }
            print_set(&stallings_core::reduce_lang(&nfa), output);
        }
        RatOp::Union { first, second } => {
            let (x, y) = pair(&first, &second)?;
            print_set(&x.union(&y)?, output);
        }
        RatOp::Intersect { first, second } => {
            let (x, y) = pair(&first, &second)?;
            print_set(&x.intersection(&y)?, output);
        }
        RatOp::Concat { first, second } => {
            let (x, y) = pair(&first, &second)?;
            print_set(&x.concat(&y)?, output);
        }
        RatOp::Star { file } => print_set(&load_set(&file)?.star(), output),
        RatOp::Inverse { file } => print_set(&load_set(&file)?.inverse_set(), output),
        RatOp::Complement { file } => print_set(&load_set(&file)?.complement(), output),
        RatOp::Members { file, max_len } => {
            for u in load_set(&file)?.members_up_to(max_len) {
                println!("{u}");
            }
        }
        RatOp::Member { file, word } => {
            let x = load_set(&file)?;
            let yes = x.contains(&Word::parse(&word, x.alphabet())?);
            println!("{yes}");
            return Ok(yes);
        }
        RatOp::Issubgroup { file } => {
            let yes = load_set(&file)?.is_subgroup();
            println!("{yes}");
            return Ok(yes);
        }
        RatOp::Generators { file, limit } => {
            // the enumerated set is highly redundant; print a free basis of it
            let h = load_set(&file)?.subgroup_generators(limit)?;
            print_subgroup(&h.stallings().subgroup(), output);
        }
        RatOp::Stabilizer { file } => print_set(&load_set(&file)?.right_stabilizer(), output),
        RatOp::Recognizable { file } => {
            let r = load_set(&file)?.recognizability();
            println!("{}", if r.recognizable { "recognizable" } else { "disjunctive" });
            println!("K(X) = {}", r.k_of_x);
            if let Some(n) = &r.n_of_x {
                println!("N(X) = {n}");
            }
            return Ok(r.recognizable);
        }
    }
    Ok(true)
}

fn print_shortlex(words: impl IntoIterator<Item = ReducedWord>) {
    let mut words: Vec<ReducedWord> = words.into_iter().collect();
    words.sort_by_key(|u| u.len());
    for u in words {
        println!("{u}");
    }
}

fn run_oracle(args: OracleArgs) -> Outcome {
    match args.op {
        OracleOp::Words { rank, max_len } => {
            for u in enum_reduced(Alphabet::new(rank)?, max_len)? {
                println!("{u}");
            }
        }
        OracleOp::Members {
            rank,
            gens,
            max_word,
            max_product,
        } => {
            let texts: Vec<&String> = gens.iter().collect();
            let h = Subgroup::parse(resolve_rank(rank, &texts)?, &gens)?;
            let budget = EnumerationBudget::new(max_word, max_product)?;
            print_shortlex(brute_membership_set(h.generators(), budget)?);
        }
        OracleOp::Reduced { file, max_in, max_out } => {
            let nfa = NfaFile::from_json(&read(&file)?)?.to_nfa()?;
            print_shortlex(brute_reduced_language(&nfa, max_in, max_out)?);
        }
    }
    Ok(true)
}

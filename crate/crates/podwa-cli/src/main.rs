//! Command-line front end for the automata toolkit.
//!
//! Exit codes: 0 = positive/success verdict, 1 = negative verdict (witness or
//! violations printed), 2 = inconclusive, 3 = usage error, 4 = data error.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use podwa::automaton::{Dwa, Podwa, Word};
use podwa::engine::{
    brute_force_witness, equivalent, EngineConfig, EngineVerdict, QueryStatus, Witness,
};
use podwa::fitting::{check_sample, fit_prefix_tree, fit_single_state, SampleViolation};
use podwa::format::{
    parse_cnf, parse_document, parse_graph, parse_sample, serialize_dwa, serialize_podwa,
    serialize_sample, to_dot, Document,
};
use podwa::generators as gen;
use podwa::omin::{omin_by_merging, MergeSearchConfig, OminError};
use podwa::transforms::{complement, minimize_exact, scale};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_DATA: u8 = 4;

#[derive(Parser)]
#[command(
    name = "podwa",
    about = "Weighted automata under interval observations: evaluate, compare, minimize, fit, generate",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CapArgs {
    /// brute-force word length of the equivalence engine
    #[arg(long, default_value_t = 8)]
    bf_len: usize,
    /// cap on enumerated walk bases
    #[arg(long, default_value_t = 20000)]
    max_paths: usize,
    /// cap on enumerated simple cycles
    #[arg(long, default_value_t = 20000)]
    max_cycles: usize,
}

impl CapArgs {
    fn engine(&self) -> EngineConfig {
        EngineConfig {
            bf_len: self.bf_len,
            max_paths: self.max_paths,
            max_cycles: self.max_cycles,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Value of a word under an automaton
    Eval {
        file: String,
        #[arg(long)]
        word: String,
    },
    /// Interval index of a word under an observed automaton
    Observe {
        file: String,
        #[arg(long)]
        word: String,
    },
    /// Observational equivalence of two observed automata
    Equiv {
        file_a: String,
        file_b: String,
        #[command(flatten)]
        caps: CapArgs,
        /// machine-readable verdict object
        #[arg(long)]
        json: bool,
    },
    /// Shortlex separating word by exhaustive search
    BruteWitness {
        file_a: String,
        file_b: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Observation-flipping complement of a binary instance
    Complement { file: String },
    /// Affine rescaling of values and cuts
    Scale {
        file: String,
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
    },
    /// Minimal automaton computing exactly the same values
    MinExact { file: String },
    /// Smallest merged automaton observationally equivalent to the input
    OminMerge {
        file: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        weight_bound: Option<i64>,
        #[arg(long, default_value_t = 2_000_000)]
        max_partitions: usize,
        #[arg(long, default_value_t = 2_000)]
        max_assignments: usize,
    },
    /// Fit an automaton to a sample
    FitSample {
        sample: String,
        /// exhaustive one-state fit within the weight bound
        #[arg(long, conflicts_with = "tree")]
        single_state: bool,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// constructive prefix-tree fit
        #[arg(long)]
        tree: bool,
    },
    /// Check an observed automaton against a sample
    CheckSample { file: String, sample: String },
    /// Emit a reference or random instance
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// GraphViz rendering of an automaton
    Dot { file: String },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Single-state counting instance over {a, b, c}
    Ccount,
    /// Three-letter family needing exponential weights after minimization
    LambdaN { n: usize },
    /// Minimal counterpart of lambda-n
    LambdaNMin { n: usize },
    /// Equivalent but non-isomorphic binary pair
    Fig2 {
        #[arg(long, default_value_t = 1)]
        which: u8,
    },
    /// Subset-sum equivalence pair
    SubsetSum {
        /// comma-separated values
        values: String,
        target: i64,
        #[arg(long, default_value_t = 1)]
        which: u8,
    },
    /// Coloring instance from an edge-list graph file
    Coloring { graph: String },
    /// Fitting sample encoding a DIMACS formula
    SatSample { cnf: String },
    /// Seeded random instance
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        states: usize,
        #[arg(long)]
        letters: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: i64,
        /// comma-separated strictly increasing cut points
        #[arg(long, default_value = "1")]
        cuts: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep clap's rendering but pin the exit code contract
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn load_podwa(path: &str) -> Result<Podwa, String> {
    match parse_document(&read(path)?).map_err(|e| format!("{path}: {e}"))? {
        Document::Podwa(p) => Ok(p),
        Document::Dwa(_) => Err(format!("{path}: needs cuts, found a `dwa` document")),
        Document::Sample(_) => Err(format!("{path}: expected an automaton, found a sample")),
    }
}

fn load_automaton(path: &str) -> Result<Dwa, String> {
    match parse_document(&read(path)?).map_err(|e| format!("{path}: {e}"))? {
        Document::Podwa(p) => Ok(p.automaton),
        Document::Dwa(d) => Ok(d),
        Document::Sample(_) => Err(format!("{path}: expected an automaton, found a sample")),
    }
}

fn parse_word_for(p: &Dwa, text: &str) -> Result<Word, String> {
    let w = p
        .alphabet()
        .parse_word(text)
        .map_err(|e| e.to_string())?;
    if w.is_empty() {
        return Err("the empty word has no value".into());
    }
    Ok(w)
}

fn witness_line(p: &Podwa, w: &Witness) -> String {
    format!(
        "witness {} v1={} v2={} i1={} i2={}",
        p.automaton.alphabet().render_word(&w.word),
        w.value1,
        w.value2,
        w.index1,
        w.index2
    )
}

fn run(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Eval { file, word } => {
            let a = load_automaton(&file)?;
            let w = parse_word_for(&a, &word)?;
            println!("{}", a.evaluate(&w).map_err(|e| e.to_string())?);
            Ok(EXIT_OK)
        }
        Command::Observe { file, word } => {
            let p = load_podwa(&file)?;
            let w = parse_word_for(&p.automaton, &word)?;
            println!("{}", p.observe(&w).map_err(|e| e.to_string())?);
            Ok(EXIT_OK)
        }
        Command::Equiv {
            file_a,
            file_b,
            caps,
            json,
        } => {
            let p1 = load_podwa(&file_a)?;
            let p2 = load_podwa(&file_b)?;
            let started = Instant::now();
            let verdict = equivalent(&p1, &p2, &caps.engine()).map_err(|e| e.to_string())?;
            let elapsed_ms = started.elapsed().as_millis() as u64;
            if json {
                println!("{}", verdict_json(&p1, &verdict, elapsed_ms));
            } else {
                match &verdict {
                    EngineVerdict::Equivalent => println!("EQUIVALENT"),
                    EngineVerdict::NotEquivalent(w) => {
                        println!("NOT_EQUIVALENT");
                        println!("{}", witness_line(&p1, w));
                    }
                    EngineVerdict::Inconclusive(reports) => {
                        println!("INCONCLUSIVE");
                        for r in reports {
                            if let QueryStatus::CapExceeded(c) = &r.status {
                                eprintln!("cap exceeded: {c}");
                            }
                        }
                    }
                }
            }
            Ok(match verdict {
                EngineVerdict::Equivalent => EXIT_OK,
                EngineVerdict::NotEquivalent(_) => EXIT_NEGATIVE,
                EngineVerdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
            })
        }
        Command::BruteWitness {
            file_a,
            file_b,
            max_len,
        } => {
            let p1 = load_podwa(&file_a)?;
            let p2 = load_podwa(&file_b)?;
            match brute_force_witness(&p1, &p2, max_len).map_err(|e| e.to_string())? {
                Some(w) => {
                    println!("NOT_EQUIVALENT");
                    println!("{}", witness_line(&p1, &w));
                    Ok(EXIT_NEGATIVE)
                }
                None => {
                    println!("NO_WITNESS_UP_TO {max_len}");
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Complement { file } => {
            let p = load_podwa(&file)?;
            let c = complement(&p).map_err(|e| e.to_string())?;
            print!("{}", serialize_podwa(&c));
            Ok(EXIT_OK)
        }
        Command::Scale { file, alpha, beta } => {
            let p = load_podwa(&file)?;
            let s = scale(&p, alpha, beta).map_err(|e| e.to_string())?;
            print!("{}", serialize_podwa(&s));
            Ok(EXIT_OK)
        }
        Command::MinExact { file } => {
            let a = load_automaton(&file)?;
            let (min, _) = minimize_exact(&a);
            print!("{}", serialize_dwa(&min));
            Ok(EXIT_OK)
        }
        Command::OminMerge {
            file,
            k,
            weight_bound,
            max_partitions,
            max_assignments,
        } => {
            let p = load_podwa(&file)?;
            let mut cfg = MergeSearchConfig::new(k);
            cfg.weight_bound = weight_bound;
            cfg.max_partitions = max_partitions;
            cfg.max_assignments = max_assignments;
            match omin_by_merging(&p, &cfg) {
                Ok(Some(b)) => {
                    print!("{}", serialize_podwa(&Podwa::new(b, p.scheme.clone())));
                    Ok(EXIT_OK)
                }
                Ok(None) => {
                    println!("NONE");
                    Ok(EXIT_NEGATIVE)
                }
                Err(OminError::CapExceeded(c)) => {
                    println!("INCONCLUSIVE");
                    eprintln!("cap exceeded: {c}");
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(OminError::InconclusiveEngine) => {
                    println!("INCONCLUSIVE");
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::FitSample {
            sample,
            single_state,
            bound,
            tree,
        } => {
            let s = parse_sample(&read(&sample)?).map_err(|e| e.to_string())?;
            if tree || !single_state {
                let p = fit_prefix_tree(&s).map_err(|e| e.to_string())?;
                print!("{}", serialize_podwa(&p));
                Ok(EXIT_OK)
            } else {
                match fit_single_state(&s, bound).map_err(|e| e.to_string())? {
                    Some(p) => {
                        print!("{}", serialize_podwa(&p));
                        Ok(EXIT_OK)
                    }
                    None => {
                        println!("NONE");
                        Ok(EXIT_NEGATIVE)
                    }
                }
            }
        }
        Command::CheckSample { file, sample } => {
            let p = load_podwa(&file)?;
            let s = parse_sample(&read(&sample)?).map_err(|e| e.to_string())?;
            let violations = check_sample(&p, &s).map_err(|e| e.to_string())?;
            if violations.is_empty() {
                println!("CONSISTENT");
                Ok(EXIT_OK)
            } else {
                println!("INCONSISTENT");
                for v in violations {
                    match v {
                        SampleViolation::DirectContradiction { word } => println!(
                            "contradiction {}",
                            p.automaton.alphabet().render_word(&word)
                        ),
                        SampleViolation::Mismatch {
                            word,
                            expected,
                            actual,
                        } => println!(
                            "mismatch {} expected={expected} actual={actual}",
                            p.automaton.alphabet().render_word(&word)
                        ),
                    }
                }
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Gen { what } => run_gen(what),
        Command::Dot { file } => {
            let a = load_automaton(&file)?;
            print!("{}", to_dot(&a));
            Ok(EXIT_OK)
        }
    }
}

fn run_gen(what: GenCommand) -> Result<u8, String> {
    let out = match what {
        GenCommand::Ccount => serialize_podwa(&gen::example_ccount()),
        GenCommand::LambdaN { n } => {
            serialize_podwa(&gen::lambda_n(n).map_err(|e| e.to_string())?)
        }
        GenCommand::LambdaNMin { n } => {
            serialize_podwa(&gen::lambda_n_minimal(n).map_err(|e| e.to_string())?)
        }
        GenCommand::Fig2 { which } => {
            let (a, b) = gen::fig2_pair();
            serialize_podwa(match which {
                1 => &a,
                2 => &b,
                _ => return Err("--which takes 1 or 2".into()),
            })
        }
        GenCommand::SubsetSum {
            values,
            target,
            which,
        } => {
            let values: Result<Vec<i64>, _> =
                values.split(',').map(|v| v.trim().parse::<i64>()).collect();
            let values = values.map_err(|_| "values must be comma-separated integers")?;
            let (a, b) = gen::subset_sum_pair(&values, target).map_err(|e| e.to_string())?;
            serialize_podwa(match which {
                1 => &a,
                2 => &b,
                _ => return Err("--which takes 1 or 2".into()),
            })
        }
        GenCommand::Coloring { graph } => {
            let g = parse_graph(&read(&graph)?).map_err(|e| e.to_string())?;
            serialize_podwa(&gen::coloring_automaton(&g).map_err(|e| e.to_string())?)
        }
        GenCommand::SatSample { cnf } => {
            let formula = parse_cnf(&read(&cnf)?).map_err(|e| e.to_string())?;
            serialize_sample(&gen::sat_sample(&formula))
        }
        GenCommand::Random {
            seed,
            states,
            letters,
            max_weight,
            cuts,
        } => {
            let cuts: Result<Vec<i64>, _> =
                cuts.split(',').map(|v| v.trim().parse::<i64>()).collect();
            let cuts = cuts.map_err(|_| "cuts must be comma-separated integers")?;
            serialize_podwa(
                &gen::random_podwa(seed, states, letters, max_weight, &cuts)
                    .map_err(|e| e.to_string())?,
            )
        }
    };
    print!("{out}");
    Ok(EXIT_OK)
}

fn verdict_json(p1: &Podwa, verdict: &EngineVerdict, elapsed_ms: u64) -> String {
    let mut obj = BTreeMap::new();
    match verdict {
        EngineVerdict::Equivalent => {
            obj.insert("verdict", serde_json::json!("EQUIVALENT"));
        }
        EngineVerdict::NotEquivalent(w) => {
            obj.insert("verdict", serde_json::json!("NOT_EQUIVALENT"));
            obj.insert(
                "witness",
                serde_json::json!(p1.automaton.alphabet().render_word(&w.word)),
            );
            obj.insert("values", serde_json::json!([w.value1, w.value2]));
            obj.insert("indices", serde_json::json!([w.index1, w.index2]));
        }
        EngineVerdict::Inconclusive(reports) => {
            obj.insert("verdict", serde_json::json!("INCONCLUSIVE"));
            obj.insert("open_queries", serde_json::json!(reports.len()));
        }
    }
    obj.insert("timings", serde_json::json!({ "total_ms": elapsed_ms }));
    serde_json::to_string(&obj).expect("verdict serializes")
}

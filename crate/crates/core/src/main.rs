//! Command-line surface: validation, classification reports, Hasse
//! diagrams in DOT, cohomology solving and checking, deterministic
//! sampling, and the built-in exact example.
//!
//! Exit codes: 0 success, 1 parse error, 2 validation failure,
//! 3 resource cap, 4 internal inconsistency.

use clap::{Parser, Subcommand, ValueEnum};
use crossed_order::classify::{self, ClassifyError};
use crossed_order::cohomology::{self, CohomologyError};
use crossed_order::doc::{self, DocError, ParsedCocycle};
use crossed_order::group::GaloisSetup;
use crossed_order::qix::{self, ExampleCocycle, QiRatFunc};
use crossed_order::valuation::ValCocycle;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "crossed-order", version, about = "Classify crossed-product orders over discrete valuation rings from the valuations of their two-cocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a setup document and a cocycle document.
    Validate {
        setup: PathBuf,
        cocycle: PathBuf,
    },
    /// Classify: H, graph, Azumaya/hereditary/maximal, radical, localizations.
    Classify {
        setup: PathBuf,
        cocycle: PathBuf,
        /// Emit the full JSON report instead of the human-readable summary.
        #[arg(long)]
        json: bool,
    },
    /// Print the graph of f.
    Graph {
        setup: PathBuf,
        cocycle: PathBuf,
        /// Emit DOT instead of the text summary.
        #[arg(long)]
        dot: bool,
    },
    /// Run the built-in exact example over Q(i)(x).
    Example {
        which: ExampleArg,
    },
    /// Solve for, or check, a coboundary witness between two cocycles.
    Cohom {
        #[arg(long, conflicts_with = "check")]
        solve: bool,
        #[arg(long)]
        check: bool,
        setup: PathBuf,
        f: PathBuf,
        g: PathBuf,
        /// Witness document, required with --check.
        witness: Option<PathBuf>,
    },
    /// Sample valid valuation cocycles for a setup, deterministically.
    Sample {
        setup: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        max_val: i64,
        /// Write one JSON document per sample into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleArg {
    F1,
    F2,
    /// Both cocycles plus the coboundary witness between them.
    Pair,
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Doc(DocError),
    Classify(ClassifyError),
    Cohomology(CohomologyError),
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Usage(_) => 1,
            CliError::Doc(DocError::Json(_)) => 1,
            CliError::Doc(_) => 2,
            CliError::Classify(ClassifyError::InternalInconsistency { .. })
            | CliError::Classify(ClassifyError::SubgroupClosureFailure) => 4,
            CliError::Classify(_) => 2,
            CliError::Cohomology(CohomologyError::CapExhausted { .. }) => 3,
            CliError::Cohomology(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
            CliError::Doc(e) => e.to_string(),
            CliError::Classify(e) => e.to_string(),
            CliError::Cohomology(e) => e.to_string(),
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Doc(e)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Classify(e)
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        CliError::Cohomology(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_setup(path: &Path) -> Result<GaloisSetup, CliError> {
    Ok(doc::parse_setup(&read(path)?)?)
}

/// Loads a cocycle document and reduces it to its valuation table.
fn load_valuation(path: &Path, setup: &GaloisSetup) -> Result<ValCocycle, CliError> {
    match doc::parse_cocycle(&read(path)?, setup)? {
        ParsedCocycle::Valuation(f) => Ok(f),
        ParsedCocycle::Exact(_, shadow) => Ok(shadow),
        ParsedCocycle::Witness(_) | ParsedCocycle::ExactWitness(_) => Err(CliError::Usage(
            "expected a cocycle document, found a witness".to_string(),
        )),
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { setup, cocycle } => {
            let s = load_setup(&setup)?;
            doc::parse_cocycle(&read(&cocycle)?, &s)?;
            println!("ok");
            Ok(())
        }
        Command::Classify { setup, cocycle, json } => {
            let s = load_setup(&setup)?;
            let f = load_valuation(&cocycle, &s)?;
            let report = classify::classify(&f)?;
            let document = doc::report_document(&f, &report);
            if json {
                println!("{}", doc::emit_report(&document));
            } else {
                print!("{}", doc::render_report_text(&f, &report));
            }
            Ok(())
        }
        Command::Graph { setup, cocycle, dot } => {
            let s = load_setup(&setup)?;
            let f = load_valuation(&cocycle, &s)?;
            let graph = classify::graph_of_f(&f)?;
            if dot {
                print!("{}", doc::dot_graph(&graph, &f.setup.group));
            } else {
                for (i, coset) in graph.cosets.iter().enumerate() {
                    let names: Vec<&str> = coset.iter().map(|&g| f.setup.group.names[g].as_str()).collect();
                    println!("coset {i}: {{{}}}", names.join(", "));
                }
                for &(a, b) in &graph.hasse {
                    println!("cover: {a} < {b}");
                }
            }
            Ok(())
        }
        Command::Example { which } => run_example(which),
        Command::Cohom { solve, check, setup, f, g, witness } => {
            if solve == check {
                return Err(CliError::Usage("pass exactly one of --solve or --check".to_string()));
            }
            let s = load_setup(&setup)?;
            if check {
                let witness = witness.ok_or_else(|| CliError::Usage("--check requires a witness document".to_string()))?;
                run_cohom_check(&s, &f, &g, &witness)
            } else {
                let fv = load_valuation(&f, &s)?;
                let gv = load_valuation(&g, &s)?;
                match cohomology::is_cohomologous_k_valuation(&fv, &gv)? {
                    Some(w) => println!("{}", doc::emit_cocycle(&doc::witness_document(&w))),
                    None => println!("infeasible"),
                }
                Ok(())
            }
        }
        Command::Sample { setup, count, seed, max_val, out } => {
            let s = load_setup(&setup)?;
            let samples = cohomology::sample_cocycles(&s, max_val, count, seed)?;
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)
                        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                    for (i, f) in samples.iter().enumerate() {
                        let path = dir.join(format!("sample_{i:04}.json"));
                        std::fs::write(&path, doc::emit_cocycle(&doc::valuation_document(f)))
                            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                        println!("{}", path.display());
                    }
                }
                None => {
                    for f in &samples {
                        println!("{}", doc::emit_cocycle(&doc::valuation_document(f)));
                    }
                }
            }
            Ok(())
        }
    }
}

fn print_exact_report(name: &str, which: ExampleCocycle) -> Result<ValCocycle, CliError> {
    let exact = qix::build_example(which);
    let f = qix::to_valuation_model(&exact).map_err(DocError::Qix)?;
    let report = classify::classify(&f)?;
    println!("== {name} ==");
    for sigma in 0..2 {
        for tau in 0..2 {
            let s = if sigma == 0 { "1" } else { "s" };
            let t = if tau == 0 { "1" } else { "s" };
            println!("f({s},{t}) = {}", exact.vals[sigma][tau]);
        }
    }
    print!("{}", doc::render_report_text(&f, &report));
    Ok(f)
}

fn run_example(which: ExampleArg) -> Result<(), CliError> {
    match which {
        ExampleArg::F1 => {
            print_exact_report("f1", ExampleCocycle::F1)?;
        }
        ExampleArg::F2 => {
            print_exact_report("f2", ExampleCocycle::F2)?;
        }
        ExampleArg::Pair => {
            let f1v = print_exact_report("f1", ExampleCocycle::F1)?;
            let f2v = print_exact_report("f2", ExampleCocycle::F2)?;
            let f1 = qix::build_example(ExampleCocycle::F1);
            let f2 = qix::build_example(ExampleCocycle::F2);
            let c = [QiRatFunc::one(), qix::parse_element("x+1i").map_err(DocError::Qix)?];
            let ok = qix::verify_coboundary_exact(&f1, &f2, &c).map_err(DocError::Qix)?;
            if !ok {
                return Err(CliError::Classify(ClassifyError::InternalInconsistency {
                    left: "exact coboundary witness",
                    right: "example cocycles",
                }));
            }
            println!("== pair ==");
            println!("~K witness verified exactly: c_sigma = x+1i");
            match cohomology::is_cohomologous_k_valuation(&f1v, &f2v)? {
                Some(w) => println!(
                    "valuation solver witness: c_sigma exponents {:?}",
                    w.cvecs[1].0
                ),
                None => {
                    return Err(CliError::Classify(ClassifyError::InternalInconsistency {
                        left: "valuation solver",
                        right: "exact coboundary witness",
                    }))
                }
            }
        }
    }
    Ok(())
}

fn run_cohom_check(setup: &GaloisSetup, f: &Path, g: &Path, witness: &Path) -> Result<(), CliError> {
    let fdoc = doc::parse_cocycle(&read(f)?, setup)?;
    let gdoc = doc::parse_cocycle(&read(g)?, setup)?;
    let wdoc = doc::parse_cocycle(&read(witness)?, setup)?;
    let verdict = match (&fdoc, &gdoc, &wdoc) {
        (ParsedCocycle::Exact(fe, _), ParsedCocycle::Exact(ge, _), ParsedCocycle::ExactWitness(c)) => {
            let c = [c[0].clone(), c[1].clone()];
            qix::verify_coboundary_exact(fe, ge, &c).map_err(DocError::Qix)?
        }
        (_, _, ParsedCocycle::Witness(w)) => {
            let fv = match fdoc {
                ParsedCocycle::Valuation(ref v) => v.clone(),
                ParsedCocycle::Exact(_, ref v) => v.clone(),
                _ => return Err(CliError::Usage("f must be a cocycle document".to_string())),
            };
            let gv = match gdoc {
                ParsedCocycle::Valuation(ref v) => v.clone(),
                ParsedCocycle::Exact(_, ref v) => v.clone(),
                _ => return Err(CliError::Usage("g must be a cocycle document".to_string())),
            };
            let table = cohomology::coboundary_of(w, setup);
            (0..setup.order()).all(|s| {
                (0..setup.order()).all(|t| table[s][t] == gv.vals[s][t].sub(&fv.vals[s][t]))
            })
        }
        _ => {
            return Err(CliError::Usage(
                "witness model must match the cocycle models".to_string(),
            ))
        }
    };
    println!("{}", if verdict { "true" } else { "false" });
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

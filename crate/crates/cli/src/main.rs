//! `rickart`: queries and checks on matrix Rickart *-rings.
//!
//! Matrices are read from JSON files; results go to standard output as JSON
//! (or DOT for `hasse`) and diagnostics to standard error. Exit status is 0
//! on success, 1 for a negative answer (`order`, `verify`) and 2 on errors.

mod hasse;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rickart::harness::{run_suite, PosetTable, RingTable, RingUniverse, SuiteConfig, DEFAULT_ENTRY_BOUND, DEFAULT_SAMPLES};
use rickart::order_structure::{initial_segment, segment_join, segment_meet};
use rickart::orders::{equivalence_report, OrderFormulation};
use rickart::star_ring::{pinv, primes};
use rickart::{Error, FormulationRegistry, Matrix, Projection, RingDescriptor, Side};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rickart", version, about = "Exact Rickart *-ring computations on matrix rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moore-Penrose inverse.
    Pinv { a: PathBuf },
    /// The four primes {"lp", "rp", "ld", "rd"}.
    Primes { a: PathBuf },
    /// Decide a ≤ b in a one-sided star order.
    Order {
        #[arg(long)]
        side: Side,
        #[arg(long, default_value = "all")]
        formulation: String,
        a: PathBuf,
        b: PathBuf,
    },
    /// Meet of a and b inside the segment below the bound.
    Meet {
        #[arg(long)]
        bound: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// Join of a and b inside the segment below the bound.
    Join {
        #[arg(long)]
        bound: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// All elements below the top in the right star order.
    Segment {
        #[arg(long)]
        top: PathBuf,
        #[arg(long)]
        ring: RingDescriptor,
    },
    /// Hasse diagram of a finite poset in DOT.
    Hasse {
        #[arg(long, value_enum)]
        relation: Relation,
        #[arg(long)]
        ring: RingDescriptor,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        ring: RingDescriptor,
        /// Number of sampled cases; enumerable rings are searched exhaustively when omitted.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
        entry_bound: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    RightCstar,
    LeftCstar,
    Projections,
}

fn read_matrix(path: &Path) -> Result<Matrix, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Matrix::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn print(value: &Value) {
    println!("{value}");
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Pinv { a } => print(&pinv(&read_matrix(&a)?)?.to_json_value()),
        Command::Primes { a } => {
            let q = primes(&read_matrix(&a)?)?;
            print(&json!({
                "lp": q.left_prime.matrix().to_json_value(),
                "rp": q.right_prime.matrix().to_json_value(),
                "ld": q.left_double.matrix().to_json_value(),
                "rd": q.right_double.matrix().to_json_value(),
            }));
        }
        Command::Order { side, formulation, a, b } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let holds = if formulation == "all" {
                let report = equivalence_report(&a, &b, side)?;
                let verdicts: serde_json::Map<String, Value> =
                    report.verdicts.iter().map(|(f, v)| (f.name().to_string(), Value::Bool(*v))).collect();
                print(&json!({ "side": side, "verdicts": verdicts, "agreed": report.agreed }));
                report.verdict() == Some(true)
            } else {
                let f: OrderFormulation = formulation.parse()?;
                let holds = FormulationRegistry::global().get(f.name())?.holds(&a, &b, side)?;
                print(&json!({ "side": side, "formulation": f.name(), "holds": holds }));
                holds
            };
            return Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Meet { bound, a, b } => {
            print(&segment_meet(&read_matrix(&bound)?, &read_matrix(&a)?, &read_matrix(&b)?)?.to_json_value())
        }
        Command::Join { bound, a, b } => {
            print(&segment_join(&read_matrix(&bound)?, &read_matrix(&a)?, &read_matrix(&b)?)?.to_json_value())
        }
        Command::Segment { top, ring } => {
            let x = read_matrix(&top)?;
            let ring = ring.require_proper()?;
            if RingDescriptor::of(&x)? != ring {
                return Err(Error::ShapeMismatch(format!("top is not an element of {ring}")));
            }
            let seg = initial_segment(&x)?;
            print(&Value::Array(seg.iter().map(Matrix::to_json_value).collect()));
        }
        Command::Hasse { relation, ring, output } => {
            let ring = ring.require_proper()?;
            if !ring.enumerable {
                return Err(Error::NotEnumerable(ring.to_string()));
            }
            let t = RingTable::shared(ring)?;
            let dot = match relation {
                Relation::RightCstar => hasse::emit_hasse_dot(&t.right),
                Relation::LeftCstar => hasse::emit_hasse_dot(&t.left),
                Relation::Projections => {
                    let p: Vec<Matrix> = t.projections.iter().map(|&i| t.at(i).clone()).collect();
                    let table = PosetTable::build(p, |e, f| {
                        let (e, f) = (Projection::certify(e.clone()), Projection::certify(f.clone()));
                        matches!((e, f), (Ok(e), Ok(f)) if e.le(&f).unwrap_or(false))
                    });
                    hasse::emit_hasse_dot(&table)
                }
            };
            match output {
                Some(path) => fs::write(&path, dot).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => print!("{dot}"),
            }
        }
        Command::Verify { suite, ring, samples, seed, entry_bound } => {
            let ring = ring.require_proper()?;
            let universe = match samples {
                None if ring.enumerable => RingUniverse::exhaustive(ring)?,
                _ => RingUniverse::sampled(ring, samples.unwrap_or(DEFAULT_SAMPLES), seed, entry_bound),
            };
            let reports = run_suite(&SuiteConfig { suites: vec![suite], universe })?;
            for r in &reports {
                eprintln!(
                    "{}: {} cases, {} failures, {:.2}s",
                    r.suite,
                    r.cases,
                    r.failures.len(),
                    r.seconds
                );
            }
            print(&serde_json::to_value(&reports).expect("reports serialize"));
            let passed = reports.iter().all(|r| r.passed());
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
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
            ExitCode::from(2)
        }
    }
}

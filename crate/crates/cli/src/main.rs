//! `k2t`: build, audit and certify the `K_{2,t+1}`-free constructions.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 search budget exhausted.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use k2t_core::bounds::{self, BoundQuery, CertVariant, CertifyOverrides};
use k2t_core::construction::{build_g_plus, build_g_times, structural_audit};
use k2t_core::field::Field;
use k2t_core::graph::{Graph, GraphJson};
use k2t_core::independence::{
    conjecture_check, explicit_qr_set, max_independent_set_exact, verify_independent, Budget, ConjectureFamily,
    LoopSemantics, Verdict,
};
use k2t_core::random::{lemma_parameters, monte_carlo_check};
use k2t_core::spectral::verify_spectrum;
use k2t_core::{primes, Error};

#[derive(Parser)]
#[command(
    name = "k2t",
    version,
    about = "Finite-field K_{2,t+1}-free graphs and Ramsey lower-bound certificates"
)]
struct Cli {
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for audits, searches and sampling (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(q): modulus and generator.
    Field {
        #[arg(long)]
        q: u64,
    },
    /// Build G+(q,t) or Gx(q,t) and write it in g2t format.
    Build {
        #[arg(long, value_enum)]
        variant: BuildVariant,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural audit of a graph file.
    Audit { graph: PathBuf },
    /// Exact spectrum of a construction graph.
    Spectrum { graph: PathBuf },
    /// Exact independence number by branch and bound.
    Alpha {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "ignore-loops")]
        semantics: LoopSemantics,
    },
    /// The quadratic-residue independent set in G+(p², p).
    Qrset {
        #[arg(long)]
        p: u32,
    },
    /// Compare exact α of G+(2^a, 2^(a-1)) or G+(p², p) with the conjectured value.
    Conjecture {
        /// Even characteristic: the graph G+(2^a, 2^(a-1)).
        #[arg(long, conflicts_with = "p", required_unless_present = "p")]
        a: Option<u32>,
        /// Odd characteristic: the graph G+(p², p).
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Monte Carlo checks of the G(n,p) recipe for given m and t.
    Random {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u32,
        /// Recipe constant; engineering default min(1/c2², 1/(400e^8)).
        #[arg(long)]
        c3: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Lower-bound certificate for r_k(K_{2,t}; K_m).
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        m: u64,
        /// Defaults to k2 for k = 2 and k3plus otherwise.
        #[arg(long, value_enum)]
        variant: Option<CertArg>,
        /// Log exponent (k2: 2, k3plus: 1).
        #[arg(long)]
        s: Option<u32>,
        /// Recipe constant (k2: 8, k3plus: 4k).
        #[arg(long = "L")]
        l: Option<f64>,
    },
    /// Bound table over a grid of (k, t, m).
    BoundsTable {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Constant for the upper bound; omitted means no upper bound column.
        #[arg(long)]
        c1: Option<f64>,
    },
    /// Convert a g2t graph to JSON.
    Export {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a JSON graph to g2t.
    Import {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildVariant {
    Plus,
    Times,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertArg {
    K2,
    K3plus,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 100_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 300.0)]
    budget_secs: f64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_secs: self.budget_secs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    CheckFailed = 1,
    Invalid = 2,
    Budget = 3,
}

struct Failure(Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::AnnihilatorFailed | Error::MomentSystem(_) | Error::Internal(_) => Status::CheckFailed,
            _ => Status::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(Status::Invalid, msg.into())
}

struct Outcome {
    status: Status,
    doc: Value,
    /// Raw text written to stdout in human mode instead of `doc`.
    raw: Option<String>,
}

fn outcome(status: Status, doc: impl Serialize) -> Result<Outcome, Failure> {
    let doc = serde_json::to_value(doc).map_err(|e| Failure(Status::CheckFailed, e.to_string()))?;
    Ok(Outcome { status, doc, raw: None })
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    if text.starts_with("g2t ") {
        Ok(Graph::from_text(&text)?)
    } else {
        let j: GraphJson = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Ok(Graph::from_json(&j)?)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Field { q } => {
            let (p, a) = primes::prime_power(*q).ok_or(Error::NotPrimePower(*q))?;
            let f = Field::new(p as u32, a)?;
            let g = f.generator();
            let order = f.element_order(g);
            let status = if order == Some(*q - 1) {
                Status::Ok
            } else {
                Status::CheckFailed
            };
            outcome(
                status,
                json!({
                    "p": p, "a": a, "q": q,
                    "modulus": f.modulus(),
                    "generator": g,
                    "generator_digits": f.digits(g),
                    "generator_order": order,
                }),
            )
        }
        Command::Build { variant, q, t, out } => {
            let c = match variant {
                BuildVariant::Plus => build_g_plus(*q, *t)?,
                BuildVariant::Times => build_g_times(*q, *t)?,
            };
            let g = &c.graph;
            let text = g.to_text();
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    outcome(
                        Status::Ok,
                        json!({
                            "variant": g.meta().variant, "q": q, "t": t, "n": g.n(),
                            "edges": g.edge_count(), "loops": g.loop_count(),
                            "out": path.display().to_string(),
                        }),
                    )
                }
                None => {
                    let mut o = outcome(Status::Ok, g.to_json())?;
                    o.raw = Some(text);
                    Ok(o)
                }
            }
        }
        Command::Audit { graph } => {
            let g = read_graph(graph)?;
            let r = structural_audit(&g);
            let ok = r.n_ok && r.regular_ok && r.k2t1_free && r.definition_ok != Some(false);
            outcome(if ok { Status::Ok } else { Status::CheckFailed }, r)
        }
        Command::Spectrum { graph } => {
            let g = read_graph(graph)?;
            let r = verify_spectrum(&g)?;
            let ok = r.annihilator_verified && r.character_route_agrees && r.matches_lemma != Some(false);
            outcome(if ok { Status::Ok } else { Status::CheckFailed }, r)
        }
        Command::Alpha {
            graph,
            budget,
            semantics,
        } => {
            let g = read_graph(graph)?;
            let r = max_independent_set_exact(&g, budget.budget(), *semantics);
            let status = if !verify_independent(&g, &r.witness, *semantics) {
                Status::CheckFailed
            } else if r.exact {
                Status::Ok
            } else {
                Status::Budget
            };
            outcome(status, r)
        }
        Command::Qrset { p } => {
            let set = explicit_qr_set(*p)?;
            let c = build_g_plus(p * p, *p)?;
            let independent = verify_independent(&c.graph, &set, LoopSemantics::IgnoreLoops);
            let target = (p * p / 2) as usize;
            let ok = independent && set.len() == target;
            outcome(
                if ok { Status::Ok } else { Status::CheckFailed },
                json!({
                    "p": p, "size": set.len(), "expected_size": target,
                    "independent": independent, "witness": set,
                }),
            )
        }
        Command::Conjecture { a, p, budget } => {
            let family = match (a, p) {
                (Some(a), None) => ConjectureFamily::EvenChar { a: *a },
                (None, Some(p)) => ConjectureFamily::OddSquare { p: *p },
                _ => return Err(invalid("give exactly one of --a and --p")),
            };
            let r = conjecture_check(family, budget.budget())?;
            let inconclusive = r
                .outcomes
                .iter()
                .any(|o| o.vs_conjecture == Verdict::InconclusiveBudget);
            let status = if !r.reproducing_semantics.is_empty() {
                Status::Ok
            } else if inconclusive {
                Status::Budget
            } else {
                Status::CheckFailed
            };
            outcome(status, r)
        }
        Command::Random {
            m,
            t,
            c3,
            seed,
            samples,
            budget,
        } => {
            let recipe = lemma_parameters(*m, *t, *c3, *seed)?;
            let r = monte_carlo_check(&recipe, *samples, budget.budget());
            let ok = r.edge_count_4sigma_ok && r.count_within_3x != Some(false) && r.free_fraction_ok != Some(false);
            outcome(if ok { Status::Ok } else { Status::CheckFailed }, r)
        }
        Command::Certify { k, t, m, variant, s, l } => {
            let query = BoundQuery::new(*k, *t, *m)?;
            let variant = match variant {
                Some(CertArg::K2) => CertVariant::K2,
                Some(CertArg::K3plus) => CertVariant::K3plus,
                None if *k == 2 => CertVariant::K2,
                None => CertVariant::K3plus,
            };
            let c = bounds::certify(&query, variant, CertifyOverrides { s: *s, l: *l })?;
            outcome(
                if c.certified_n.is_some() {
                    Status::Ok
                } else {
                    Status::CheckFailed
                },
                c,
            )
        }
        Command::BoundsTable { k, t, m, c1 } => {
            let mut rows = Vec::new();
            for &k in k {
                for &t in t {
                    for &m in m {
                        rows.push(bounds::bounds_row(&BoundQuery::new(k, t, m)?, *c1)?);
                    }
                }
            }
            outcome(Status::Ok, json!({ "rows": rows }))
        }
        Command::Export { graph, out } => {
            let g = read_graph(graph)?;
            let text = serde_json::to_string_pretty(&g.to_json()).expect("graph serializes") + "\n";
            if let Some(path) = out {
                write_file(path, &text)?;
                outcome(Status::Ok, json!({ "n": g.n(), "out": path.display().to_string() }))
            } else {
                let mut o = outcome(Status::Ok, g.to_json())?;
                o.raw = Some(text);
                Ok(o)
            }
        }
        Command::Import { graph, out } => {
            let g = read_graph(graph)?;
            let text = g.to_text();
            if let Some(path) = out {
                write_file(path, &text)?;
                outcome(Status::Ok, json!({ "n": g.n(), "out": path.display().to_string() }))
            } else {
                let mut o = outcome(Status::Ok, g.to_json())?;
                o.raw = Some(text);
                Ok(o)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(Status::Invalid as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let status = match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.doc).expect("value serializes"));
            } else if let Some(raw) = o.raw {
                print!("{raw}");
            } else {
                print!("{}", output::human(&o.doc));
            }
            o.status
        }
        Err(Failure(status, msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg, "exit_code": status as u8 }));
            }
            eprintln!("error: {msg}");
            status
        }
    };
    if status != Status::Ok && status != Status::Invalid {
        eprintln!(
            "exit status {}: {}",
            status as u8,
            match status {
                Status::CheckFailed => "a verification check failed",
                _ => "budget exhausted, result is a bracket",
            }
        );
    }
    ExitCode::from(status as u8)
}

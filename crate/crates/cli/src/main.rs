//! `pdgenus` command-line front end.
//!
//! Every command renders either line-oriented text or one JSON object per
//! invocation. Output never depends on `--threads`.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdgenus::audit;
use pdgenus::census::{DEFAULT_ENUMERATION_CAP, DEFAULT_SEARCH_CAP};
use pdgenus::pdengine::{pde_of_map, pdg_threads};
use pdgenus::{
    BouquetClass, BouquetError, Census, CensusError, EngineError, GenusPolynomial, RotationSystem,
    SignedRotation,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "pdgenus", version, about = "Partial-dual genus polynomials of ribbon graphs")]
struct Cli {
    /// Worker threads for enumeration; output is identical for every value.
    #[arg(long, global = true, env = "PD_THREADS", default_value_t = 1)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the partial-dual Euler-genus polynomial (or the orientable one with --pdg).
    Eval {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pdg: bool,
    },
    /// Print the signed sequence of a bouquet.
    Seq {
        #[arg(long)]
        rotation: String,
    },
    /// Print the prime factors of a bouquet, one per line.
    Factor {
        #[arg(long)]
        rotation: String,
    },
    /// Print a rotation system of the partial dual along a set of edges.
    Dual {
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated edge labels.
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// List the isomorphism classes of bouquets with a given number of edges.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        orientable: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Search small bouquets for counterexamples.
    Search {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
    },
    /// Recompute every reference value and report PASS/FAIL per check.
    VerifyPaper,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// A bouquet in signed-rotation notation, e.g. "(a, b, -a, b)".
    #[arg(long)]
    rotation: Option<String>,
    /// A file with one "v<i>: tok tok ..." line per vertex.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Conjecture {
    /// Orientable polynomials with a single term of positive degree.
    #[value(name = "3.1")]
    SingleTerm,
    /// Non-orientable Euler polynomials with a gap.
    #[value(name = "5.3")]
    Gap,
}

/// A failed command: message for stderr and the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

impl From<BouquetError> for Failure {
    fn from(e: BouquetError) -> Self {
        Failure::new(2, e)
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::new(4, e)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::NonOrientable => 3,
            _ => 2,
        };
        Failure::new(code, e)
    }
}

/// What a command produced: the rendered text and the structured object.
struct Output {
    text: String,
    structured: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&out.structured)
                        .expect("values are serialisable");
                    s.push('\n');
                    s
                }
            };
            if let Err(e) = emit(&cli, &body) {
                eprintln!("error: {}", e.message);
                return ExitCode::from(e.code);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let threads = cli.threads.max(1);
    match &cli.command {
        Command::Eval { input, pdg } => cmd_eval(input, *pdg, threads),
        Command::Seq { rotation } => cmd_seq(rotation),
        Command::Factor { rotation } => cmd_factor(rotation),
        Command::Dual { input, subset } => cmd_dual(input, subset),
        Command::Enumerate {
            edges,
            prime,
            orientable,
            cap,
        } => cmd_enumerate(*edges, *prime, *orientable, *cap, threads),
        Command::Search {
            conjecture,
            max_edges,
            cap,
        } => cmd_search(*conjecture, *max_edges, *cap, threads),
        Command::VerifyPaper => Ok(cmd_verify(threads)),
    }
}

fn parse_rotation(text: &str) -> Result<SignedRotation, Failure> {
    Ok(text.parse::<SignedRotation>()?)
}

/// Reads the input graph and a description of where it came from.
fn load(input: &GraphInput) -> Result<(RotationSystem, String), Failure> {
    match (&input.rotation, &input.graph) {
        (Some(text), _) => Ok((parse_rotation(text)?.to_rotation_system(), text.clone())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
            let r = RotationSystem::parse_graph(&text)?;
            Ok((r, path.display().to_string()))
        }
        (None, None) => Err(Failure::new(2, "one of --rotation or --graph is required")),
    }
}

fn poly_json(p: &GenusPolynomial) -> Value {
    let mut m = Map::new();
    for (d, c) in p.terms() {
        let v = u64::try_from(c).map_or_else(|_| Value::String(c.to_string()), Value::from);
        m.insert(d.to_string(), v);
    }
    Value::Object(m)
}

fn cmd_eval(input: &GraphInput, want_pdg: bool, threads: usize) -> Result<Output, Failure> {
    let (r, source) = load(input)?;
    let (kind, p) = if want_pdg {
        ("pdg", pdg_threads(&r, threads)?)
    } else {
        ("pde", pde_of_map(&r.to_map(), threads)?)
    };
    Ok(Output {
        text: format!("{p}\n"),
        structured: json!({
            "input": source,
            "polynomial": poly_json(&p),
            "meta": {
                "command": "eval",
                "kind": kind,
                "edges": r.edge_count(),
                "vertices": r.vertex_count(),
                "text": p.to_string(),
            },
        }),
        ok: true,
    })
}

fn cmd_seq(text: &str) -> Result<Output, Failure> {
    let r = parse_rotation(text)?;
    let seq = r.signed_sequence();
    Ok(Output {
        text: format!("{seq}\n"),
        structured: json!({
            "input": text,
            "sequence": seq.to_string(),
            "meta": { "command": "seq", "edges": r.edge_count() },
        }),
        ok: true,
    })
}

fn cmd_factor(text: &str) -> Result<Output, Failure> {
    let r = parse_rotation(text)?;
    let factors: Vec<String> = r.factor().iter().map(ToString::to_string).collect();
    let mut out = String::new();
    for f in &factors {
        let _ = writeln!(out, "{f}");
    }
    Ok(Output {
        text: out,
        structured: json!({
            "input": text,
            "factors": factors,
            "meta": { "command": "factor", "edges": r.edge_count(), "prime": factors.len() <= 1 },
        }),
        ok: true,
    })
}

fn cmd_dual(input: &GraphInput, subset: &str) -> Result<Output, Failure> {
    let (r, source) = load(input)?;
    let labels: Vec<&str> = subset
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let a = r.subset(&labels)?;
    let dual = r
        .to_map()
        .partial_dual(a)
        .map_err(|e| Failure::new(2, e))?;
    let (rotated, _) = dual.extract_rotation_labeled(r.labels());
    let counts = dual.counts();
    Ok(Output {
        text: rotated.to_string(),
        structured: json!({
            "input": source,
            "subset": labels,
            "rotation_system": rotated.to_string(),
            "meta": {
                "command": "dual",
                "vertices": counts.vertices,
                "edges": counts.edges,
                "faces": counts.faces,
                "components": counts.components,
                "euler_genus": counts.euler_genus(),
                "twisted": rotated
                    .twisted_edges()
                    .iter()
                    .zip(rotated.labels())
                    .filter(|(t, _)| **t)
                    .map(|(_, l)| l.clone())
                    .collect::<Vec<_>>(),
            },
        }),
        ok: true,
    })
}

fn class_json(c: &BouquetClass) -> Value {
    json!({
        "canonical": c.canonical,
        "sequence": c.sequence.to_string(),
        "prime": c.prime,
        "orientable": c.orientable,
        "pde": poly_json(&c.pde),
        "pdg": c.pdg.as_ref().map(poly_json),
    })
}

fn class_listing(classes: &[BouquetClass], noun: &str) -> String {
    let mut out = String::new();
    for c in classes {
        let _ = writeln!(out, "{c}");
    }
    let _ = writeln!(out, "{} {noun}", classes.len());
    out
}

fn cmd_enumerate(
    edges: usize,
    prime: bool,
    orientable: bool,
    cap: usize,
    threads: usize,
) -> Result<Output, Failure> {
    let classes = Census::with_cap(cap)
        .threads(threads)
        .enumerate(edges, orientable, prime)?;
    Ok(Output {
        text: class_listing(&classes, "classes"),
        structured: json!({
            "input": { "edges": edges, "prime": prime, "orientable": orientable },
            "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
            "meta": { "command": "enumerate", "count": classes.len() },
        }),
        ok: true,
    })
}

fn cmd_search(
    conjecture: Conjecture,
    max_edges: usize,
    cap: usize,
    threads: usize,
) -> Result<Output, Failure> {
    let census = Census::with_cap(cap).threads(threads);
    let (name, hits) = match conjecture {
        Conjecture::SingleTerm => ("3.1", census.search_conjecture_31(max_edges)?),
        Conjecture::Gap => ("5.3", census.search_conjecture_53(max_edges)?),
    };
    Ok(Output {
        text: class_listing(&hits, "hits"),
        structured: json!({
            "input": { "conjecture": name, "max_edges": max_edges },
            "classes": hits.iter().map(class_json).collect::<Vec<_>>(),
            "meta": { "command": "search", "count": hits.len() },
        }),
        ok: true,
    })
}

fn cmd_verify(threads: usize) -> Output {
    let checks: Vec<audit::Check> = audit::run_all(threads)
        .into_iter()
        .map(|t| t.check)
        .collect();
    let table = audit::theta_table(12);
    let failed = checks.iter().filter(|c| !c.passed).count();

    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{c}");
    }
    let _ = writeln!(text, "\ntheta family");
    let _ = writeln!(text, "t\tgenus\tpDg\tclosed form");
    for row in &table {
        let _ = writeln!(text, "{}\t{}\t{}\t{}", row.t, row.genus, row.pdg, row.closed_form);
    }
    let _ = writeln!(
        text,
        "\n{} checks, {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    );

    let structured = json!({
        "input": "verify-paper",
        "checks": checks.iter().map(|c| json!({
            "criterion": c.criterion,
            "name": c.name,
            "passed": c.passed,
            "expected": c.detail.as_ref().map(|d| d.0.clone()),
            "actual": c.detail.as_ref().map(|d| d.1.clone()),
        })).collect::<Vec<_>>(),
        "theta": table.iter().map(|r| json!({
            "t": r.t,
            "genus": r.genus,
            "pdg": poly_json(&r.pdg),
            "closed_form": poly_json(&r.closed_form),
        })).collect::<Vec<_>>(),
        "meta": { "command": "verify-paper", "checks": checks.len(), "failed": failed },
    });
    Output {
        text,
        structured,
        ok: failed == 0,
    }
}

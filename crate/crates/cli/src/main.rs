use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use schurring::enumerate::{census_with, enumerate_with_cap, DEFAULT_CAP};
use schurring::{classify, witness, AutSearch, Error, GroupOrder, SRing};

mod doc;

use doc::SRingDocument;

/// Schur rings over cyclic groups.
#[derive(Debug, Parser)]
#[command(name = "schurring", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide from the arithmetic of n whether Z_n is a Schur group.
    Classify { n: String },
    /// Build the non-schurian S-ring over Z_{n1 n2}.
    Witness {
        n1: String,
        n2: String,
        /// Write the ring to this file instead of standard output.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Validate a ring and report its structure.
    Analyze { file: PathBuf },
    /// Decide whether a ring is schurian.
    Schurity {
        file: PathBuf,
        /// Search node limit (default: $SCHURRING_BUDGET or 100000000).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Count the S-rings over Z_n.
    Enumerate {
        n: String,
        /// Decide schurity of every ring.
        #[arg(long)]
        census: bool,
        /// Also count rings up to multiplier isomorphism.
        #[arg(long)]
        up_to_cayley: bool,
        /// Largest n accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Search node limit for the census.
        #[arg(long)]
        budget: Option<u64>,
    },
}

const EXIT_INPUT: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NotAPartition { .. }
            | Error::ZeroClassNotSingleton { .. }
            | Error::NotInverseClosed { .. }
            | Error::NotClosedUnderProduct { .. },
        ) => EXIT_INVALID,
        Some(Error::SearchBudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn parse_number<T: std::str::FromStr>(what: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| anyhow!("{what} must be a positive integer, got {s:?}"))
}

fn load(path: &Path) -> Result<SRing> {
    let doc = SRingDocument::read(path)?;
    Ok(doc.into_ring()?)
}

fn search(budget: Option<u64>) -> AutSearch {
    budget.map_or_else(AutSearch::from_env, AutSearch::with_budget)
}

fn order_json(o: &GroupOrder) -> Value {
    json!({
        "value": o.to_string(),
        "factors": o.factors(),
    })
}

/// A report: JSON value plus its human-readable rendering.
struct Report {
    json: Value,
    text: String,
}

fn classify_cmd(n: &str) -> Result<Report> {
    let n: u64 = parse_number("n", n)?;
    let c = classify(n)?;
    Ok(match c.nonschur_split {
        None => {
            let labels: Vec<&str> = c.families.iter().map(|f| f.label()).collect();
            Report {
                json: json!({ "schur": true, "families": labels }),
                text: format!("Z_{n} is a Schur group: {}", labels.join(", ")),
            }
        }
        Some((n1, n2)) => Report {
            json: json!({ "schur": false, "split": [n1, n2] }),
            text: format!("Z_{n} is not a Schur group: {n} = {n1} * {n2}"),
        },
    })
}

fn witness_cmd(n1: &str, n2: &str, output: Option<&Path>) -> Result<Report> {
    let (n1, n2) = (parse_number("n1", n1)?, parse_number("n2", n2)?);
    let w = witness(n1, n2)?;
    let doc = SRingDocument::from_ring(&w.ring);
    let mut text = format!(
        "witness over Z_{}: rank {}, {} branch, n1 = {}, n2 = {}, (a, b, c, d) = ({}, {}, {}, {})",
        w.ring.n(),
        w.ring.rank(),
        w.branch,
        w.n1,
        w.n2,
        w.a,
        w.b,
        w.c,
        w.d
    );
    match output {
        Some(path) => {
            doc.write(path)?;
            text += &format!("\nwritten to {}", path.display());
        }
        None => text += &format!("\n{}", doc.to_json()),
    }
    let mut json = json!({
        "n": w.ring.n(),
        "rank": w.ring.rank(),
        "branch": w.branch.to_string(),
        "n1": w.n1,
        "n2": w.n2,
        "a": w.a,
        "b": w.b,
        "c": w.c,
        "d": w.d,
    });
    match output {
        Some(path) => json["output"] = json!(path.display().to_string()),
        None => json["ring"] = serde_json::to_value(&doc)?,
    }
    Ok(Report { json, text })
}

fn analyze_cmd(path: &Path) -> Result<Report> {
    let a = load(path)?;
    let rad = a.radical();
    let cyclotomic = a.is_cyclotomic();
    let wreaths: Vec<[usize; 2]> = a
        .wreath_decompositions()
        .iter()
        .map(|s| [s.u, s.l])
        .collect();
    let json = json!({
        "n": a.n(),
        "rank": a.rank(),
        "a_groups": a.a_groups(),
        "radical": {
            "per_class": rad.per_class_radical,
            "ring_radical": rad.ring_radical,
            "well_defined": rad.well_defined,
        },
        "primitive": a.is_primitive(),
        "dense": a.is_dense(),
        "quasidense": a.is_quasidense(),
        "cyclotomic": cyclotomic.as_ref().map(|k| json!({
            "order": k.order(),
            "elements": k.elements(),
        })),
        "wreath_decompositions": wreaths,
    });
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = [
        format!("S-ring over Z_{} of rank {}", a.n(), a.rank()),
        format!("A-groups: {:?}", a.a_groups()),
        format!(
            "radical: {}{}",
            rad.ring_radical,
            if rad.well_defined {
                ""
            } else {
                " (highest classes disagree)"
            }
        ),
        format!(
            "primitive: {}, dense: {}, quasidense: {}",
            yes(a.is_primitive()),
            yes(a.is_dense()),
            yes(a.is_quasidense())
        ),
        match &cyclotomic {
            Some(k) => format!("cyclotomic: K = {:?}", k.elements()),
            None => "cyclotomic: no".into(),
        },
        format!("proper wreath decompositions (u, l): {wreaths:?}"),
    ]
    .join("\n");
    Ok(Report { json, text })
}

fn schurity_cmd(path: &Path, budget: Option<u64>) -> Result<Report> {
    let a = load(path)?;
    let v = search(budget).is_schurian(&a)?;
    let mismatch = v.witness_mismatch.as_ref().map(|m| {
        json!({
            "orbit": m.orbit,
            "class": m.class,
            "class_orbits": m.class_orbits,
        })
    });
    let json = json!({
        "n": a.n(),
        "schurian": v.schurian,
        "aut_order": order_json(&v.aut_order),
        "stabilizer_orbits": v.stabilizer_orbits.len(),
        "mismatch": mismatch,
        "nodes": v.nodes,
    });
    let mut text = format!(
        "{}schurian; |aut| = {}; {} stabilizer orbits for rank {}",
        if v.schurian { "" } else { "not " },
        v.aut_order,
        v.stabilizer_orbits.len(),
        a.rank()
    );
    if let Some(m) = &v.witness_mismatch {
        text += &format!(
            "\nclass {:?} splits into stabilizer orbits {:?}",
            m.class, m.class_orbits
        );
    }
    Ok(Report { json, text })
}

fn enumerate_cmd(
    n: &str,
    census: bool,
    up_to_cayley: bool,
    cap: usize,
    budget: Option<u64>,
) -> Result<Report> {
    let n: usize = parse_number("n", n)?;
    let catalog = enumerate_with_cap(n, cap)?;
    let mut json = json!({ "n": n, "count": catalog.count_exact });
    let mut text = format!("S-rings over Z_{n}: {}", catalog.count_exact);
    if up_to_cayley {
        json["count_up_to_cayley"] = json!(catalog.count_up_to_cayley);
        text += &format!("\nup to multipliers: {}", catalog.count_up_to_cayley);
    }
    if census {
        let r = census_with(n, cap, search(budget))?;
        let first = r.first_non_schurian.as_ref().map(|(a, v)| {
            json!({
                "ring": SRingDocument::from_ring(a),
                "mismatch": v.witness_mismatch.as_ref().map(|m| json!({
                    "orbit": m.orbit,
                    "class": m.class,
                })),
            })
        });
        let labels: Vec<&str> = r.families.iter().map(|f| f.label()).collect();
        json["census"] = json!({
            "schurian": r.schurian,
            "non_schurian": r.total - r.schurian,
            "all_schurian": r.all_schurian(),
            "families": labels,
            "consistent_with_classification": r.consistent_with_classification(),
            "first_non_schurian": first,
        });
        text += &format!(
            "\nschurian: {}, non-schurian: {}",
            r.schurian,
            r.total - r.schurian
        );
        match &r.first_non_schurian {
            None => text += "\nall schurian",
            Some((a, _)) => {
                text += &format!(
                    "\nfirst non-schurian: {}",
                    SRingDocument::from_ring(a).to_json()
                )
            }
        }
    }
    Ok(Report { json, text })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Classify { n } => classify_cmd(n),
        Command::Witness { n1, n2, output } => witness_cmd(n1, n2, output.as_deref()),
        Command::Analyze { file } => analyze_cmd(file),
        Command::Schurity { file, budget } => schurity_cmd(file, *budget),
        Command::Enumerate {
            n,
            census,
            up_to_cayley,
            cap,
            budget,
        } => enumerate_cmd(n, *census, *up_to_cayley, *cap, *budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = exit_code(&err);
            if cli.json {
                println!(
                    "{}",
                    json!({ "error": format!("{:#}", err), "exit_code": code })
                );
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

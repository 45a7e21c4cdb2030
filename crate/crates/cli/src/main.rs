use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilbu::reference::table_row;
use nilbu::sweep::{self, sweep_manifolds};
use nilbu::{
    classify, double_cover, enumerate_epis, equivalence_classes, h1, quotients_of,
    z2_index, CoveringDescriptor, Error, NilManifold, SeifertInvariant, Z2Char,
};

/// Double covers and Borsuk-Ulam indices of Nil 3-manifolds.
#[derive(Debug, Parser)]
#[command(name = "nilbu", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a Seifert invariant such as "SF(0;+1;0;(2,1)(3,1)(6,5))".
    Classify { invariant: String },
    /// First homology with the images of the canonical generators.
    H1 { manifold: String },
    /// Epimorphisms onto Z2 and their equivalence classes.
    Epis { manifold: String },
    /// The double cover for a character.
    Cover {
        manifold: String,
        /// JSON such as '{"s":[1,0,1],"h":0}', or a position in the `epis` list.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Z2-index of the double cover for a character.
    Index {
        manifold: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Every free involution, as the 2-quotients of the manifold.
    Involutions { manifold: String },
    /// The (c, d, b_min) table for b from b_min to b_min + B_MAX.
    Table {
        #[arg(long, default_value_t = 4)]
        b_max: i64,
    },
    /// Cross-check the whole pipeline for b from b_min to b_min + B_MAX.
    Verify {
        #[arg(long, default_value_t = 16)]
        b_max: i64,
    },
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_manifold(s: &str) -> Result<NilManifold, Failure> {
    if s.trim_start().starts_with("SF") {
        let inv: SeifertInvariant = s.parse()?;
        return Ok(classify(&inv)?);
    }
    Ok(s.parse()?)
}

fn parse_phi(n: &NilManifold, s: &str) -> Result<Z2Char, Failure> {
    if let Ok(i) = s.trim().parse::<usize>() {
        let epis = enumerate_epis(n);
        return epis.get(i).cloned().ok_or_else(|| {
            Failure::Domain(format!("{n} has {} epimorphisms; index {i} is out of range", epis.len()))
        });
    }
    let phi: Z2Char = serde_json::from_str(s)
        .map_err(|e| Failure::Domain(format!("parse error: bad character {s:?}: {e}")))?;
    phi.validate(n)?;
    Ok(phi)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn cmd_classify(fmt: Format, s: &str) -> Outcome {
    let inv: SeifertInvariant = s.parse()?;
    let m = classify(&inv)?;
    match fmt {
        Format::Text => println!("{m}"),
        Format::Json => print_json(&json!({
            "manifold": m.to_string(),
            "family": m.family().tag(),
            "b": m.b(),
            "params": m.params(),
            "invariant": m.expand().to_string(),
            "euler_number": m.euler_number()?.to_string(),
        })),
    }
    Ok(())
}

fn cmd_h1(fmt: Format, s: &str) -> Outcome {
    let m = parse_manifold(s)?;
    let g = h1(&m)?;
    match fmt {
        Format::Text => {
            println!("{g}");
            for (name, img) in g.generators().iter().zip(g.gen_images()) {
                let coords: Vec<String> = img.iter().map(i64::to_string).collect();
                println!("  {name} -> ({})", coords.join(", "));
            }
        }
        Format::Json => print_json(&serde_json::to_value(&g).expect("serializes")),
    }
    Ok(())
}

fn cmd_epis(fmt: Format, s: &str) -> Outcome {
    let m = parse_manifold(s)?;
    let epis = enumerate_epis(&m);
    let part = equivalence_classes(&m);
    let class_no = |phi: &Z2Char| part.classes.iter().position(|c| c.members.contains(phi));
    match fmt {
        Format::Text => {
            println!("{m}: {} epimorphisms in {} classes", epis.len(), part.classes.len());
            for (i, phi) in epis.iter().enumerate() {
                let k = class_no(phi).expect("partition covers the enumeration");
                let rep = &part.classes[k].representative;
                let mark = if rep == phi { "  (representative)" } else { "" };
                println!("  {i}: {phi}  class {k}{mark}");
            }
        }
        Format::Json => print_json(&json!({
            "manifold": m.to_string(),
            "epimorphisms": epis,
            "classes": part.classes,
        })),
    }
    Ok(())
}

fn descriptor(m: &NilManifold, phi: &Z2Char) -> Result<CoveringDescriptor, Failure> {
    let rep = nilbu::epimorphisms::canonical_representative(phi, m)?;
    Ok(CoveringDescriptor {
        base: m.clone(),
        cover: double_cover(m, &rep)?,
        index: z2_index(m, &rep)?.index,
        phi: rep,
    })
}

fn cmd_cover(fmt: Format, s: &str, phi: &str) -> Outcome {
    let m = parse_manifold(s)?;
    let phi = parse_phi(&m, phi)?;
    let d = descriptor(&m, &phi)?;
    match fmt {
        Format::Text => println!("{d}"),
        Format::Json => print_json(&serde_json::to_value(&d).expect("serializes")),
    }
    Ok(())
}

fn cmd_index(fmt: Format, s: &str, phi: &str) -> Outcome {
    let m = parse_manifold(s)?;
    let phi = parse_phi(&m, phi)?;
    let r = z2_index(&m, &phi)?;
    match fmt {
        Format::Text => {
            println!("{}", r.index);
            println!("criterion: {}", r.criterion);
        }
        Format::Json => print_json(&json!({
            "manifold": m.to_string(),
            "phi": phi,
            "index": r.index,
            "criterion": r.criterion,
            "criterion_text": r.criterion.to_string(),
        })),
    }
    Ok(())
}

fn ascii_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|j| rows.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("| {} |", padded.join(" | "))
    };
    let rule = format!("+{}+", widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("+"));
    let mut out = vec![rule.clone(), line(header.to_vec()), rule.clone()];
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.push(rule);
    out.join("\n")
}

fn cmd_involutions(fmt: Format, s: &str) -> Outcome {
    let m = parse_manifold(s)?;
    let q = quotients_of(&m)?;
    let note = q.is_empty().then(|| format!("{m} supports no free involution"));
    match fmt {
        Format::Text => {
            println!("{m}: {} free involution(s) up to equivalence", q.len());
            if let Some(note) = &note {
                println!("{note}");
            } else {
                let rows: Vec<Vec<String>> = q
                    .iter()
                    .map(|d| vec![d.base.to_string(), d.phi.to_string(), d.index.to_string()])
                    .collect();
                println!("{}", ascii_table(&["quotient", "phi", "index"], &rows));
            }
        }
        Format::Json => print_json(&json!({
            "manifold": m.to_string(),
            "quotients": q,
            "note": note,
        })),
    }
    Ok(())
}

fn cmd_table(fmt: Format, b_max: i64) -> Outcome {
    if b_max < 0 {
        return Err(Failure::Domain("--b-max must be non-negative".into()));
    }
    let mut rows = Vec::new();
    let mut objs = Vec::new();
    for m in sweep_manifolds(b_max) {
        let inv = m.expand();
        let cd = inv.cd_invariants()?;
        let fibres: Vec<String> = inv.pairs().iter().map(|p| format!("({},{})", p.a, p.beta)).collect();
        let row = table_row(m.family(), m.params()).expect("every option has a row");
        let formula = format!("{}b{:+}", row.c_slope, row.c_offset);
        rows.push(vec![
            m.to_string(),
            inv.g_prime().to_string(),
            inv.epsilon().to_string(),
            fibres.join(""),
            m.b_min()?.to_string(),
            formula.clone(),
            cd.c.to_string(),
            cd.d.to_string(),
        ]);
        objs.push(json!({
            "manifold": m.to_string(),
            "g_prime": inv.g_prime(),
            "epsilon": inv.epsilon().sign(),
            "fibres": inv.pairs().iter().map(|p| [p.a, p.beta]).collect::<Vec<_>>(),
            "b_min": m.b_min()?,
            "c_formula": formula,
            "c": cd.c,
            "d": cd.d,
        }));
    }
    match fmt {
        Format::Text => println!(
            "{}",
            ascii_table(&["manifold", "g'", "eps", "fibres", "b_min", "c(b)", "c", "d"], &rows)
        ),
        Format::Json => print_json(&Value::Array(objs)),
    }
    Ok(())
}

fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var("NILBU_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Domain(format!("NILBU_THREADS must be a non-negative integer, got {v:?}"))),
    }
}

fn cmd_verify(fmt: Format, b_max: i64) -> Outcome {
    if b_max < 0 {
        return Err(Failure::Domain("--b-max must be non-negative".into()));
    }
    let threads = threads_from_env()?;
    let reports = sweep::verify(b_max, threads).map_err(|e| Failure::Domain(e.to_string()))?;
    let ok = reports.iter().all(|r| r.passed());
    match fmt {
        Format::Text => {
            let n = sweep_manifolds(b_max).len();
            println!("sweep: {n} manifolds, b from b_min to b_min + {b_max}");
            for r in &reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                println!("[{tag}] {} {}: {} cases", r.check.number(), r.check, r.cases);
                for f in r.failures.iter().take(20) {
                    println!("    {f}");
                }
                if r.failures.len() > 20 {
                    println!("    ... {} more", r.failures.len() - 20);
                }
            }
            println!("{}", if ok { "all checks passed" } else { "verification FAILED" });
        }
        Format::Json => print_json(&json!({ "b_max": b_max, "passed": ok, "checks": reports })),
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Classify { invariant } => cmd_classify(fmt, &invariant),
        Command::H1 { manifold } => cmd_h1(fmt, &manifold),
        Command::Epis { manifold } => cmd_epis(fmt, &manifold),
        Command::Cover { manifold, phi } => cmd_cover(fmt, &manifold, &phi),
        Command::Index { manifold, phi } => cmd_index(fmt, &manifold, &phi),
        Command::Involutions { manifold } => cmd_involutions(fmt, &manifold),
        Command::Table { b_max } => cmd_table(fmt, b_max),
        Command::Verify { b_max } => cmd_verify(fmt, b_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

//! Command-line front end: validation, composition, normalization,
//! decomposition, relation checks and homology tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anntl::analysis::decompose;
use anntl::functors::{read_g, verify_relations, Status};
use anntl::homology::{parse_scalar, AnnularModuleSpec, HomologyKind, Ring, TlModule};
use anntl::word::{standard_form, words_equal, Word};
use anntl::{AtlMorphism, BoundaryObject};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "anntl", version, about = "Exact computations with annular Temperley-Lieb tangles")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a tangle file describes a valid annular tangle.
    Validate { file: PathBuf },
    /// Compose two tangle files: the first applied after the second.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Print the standard form of a word.
    Normalize {
        #[arg(long)]
        at: String,
        word: String,
    },
    /// Decide whether two words are equal.
    Equal {
        #[arg(long)]
        at: String,
        first: String,
        second: String,
    },
    /// Split a tangle into its Type I, Type II and Type III factors.
    Decompose { file: PathBuf },
    /// Check every relation family on objects up to [max-n].
    VerifyRelations {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=8))]
        max_n: u32,
    },
    /// Hochschild or cyclic homology of an annular module.
    Homology {
        #[arg(long, value_enum, default_value_t = Module::Tl)]
        module: Module,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta_plus: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta_minus: String,
        #[arg(long)]
        kind: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Module {
    Tl,
}

/// A failure inside the domain (exit 1) as opposed to bad usage (exit 2).
struct DomainError(String);

impl<E: std::fmt::Display> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

struct Report {
    text: String,
    json: Value,
    success: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            success: true,
        }
    }
}

fn read_tangle(path: &PathBuf) -> Result<AtlMorphism, DomainError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DomainError(format!("{}: {e}", path.display())))?;
    AtlMorphism::from_json(&text).map_err(|e| DomainError(format!("{}: {e}", path.display())))
}

fn tangle_value(m: &AtlMorphism) -> Value {
    serde_json::from_str(&m.to_json()).expect("tangle json is valid")
}

fn parse_object(s: &str) -> Result<BoundaryObject, DomainError> {
    s.parse::<BoundaryObject>().map_err(DomainError::from)
}

fn run(cli: Cli) -> Result<Report, DomainError> {
    match cli.command {
        Command::Validate { file } => {
            let m = read_tangle(&file)?;
            let t = &m.tangle;
            let text = format!(
                "valid tangle {} -> {}: {} through strings, {} caps, {} cups, {} non-contractible loops",
                m.source(),
                m.target(),
                t.through().len(),
                t.caps().len(),
                t.cups().len(),
                t.loops()
            );
            Ok(Report::ok(text, json!({"valid": true, "tangle": tangle_value(&m)})))
        }
        Command::Compose { outer, inner } => {
            let a = read_tangle(&outer)?;
            let b = read_tangle(&inner)?;
            let c = a.compose(&b)?;
            Ok(Report::ok(c.to_json(), tangle_value(&c)))
        }
        Command::Normalize { at, word } => {
            let w = Word::parse(&word, parse_object(&at)?)?;
            let s = standard_form(&w);
            let mut j = serde_json::to_value(s.to_json()).expect("serializable");
            j["word"] = json!(s.to_word().to_string());
            Ok(Report::ok(format!("{s}\n{}", s.to_word()), j))
        }
        Command::Equal { at, first, second } => {
            let obj = parse_object(&at)?;
            let v = Word::parse(&first, obj)?;
            let w = Word::parse(&second, obj)?;
            let eq = words_equal(&v, &w)?;
            Ok(Report::ok(eq.to_string(), json!({"equal": eq})))
        }
        Command::Decompose { file } => {
            let m = read_tangle(&file)?;
            let (first, second, third) = decompose(&m);
            let s = read_g(&m);
            let wrap = |t| AtlMorphism::new(t);
            let (f1, f2, f3) = (wrap(first), wrap(second), wrap(third));
            let text = format!(
                "type I:   {}\ntype II:  {}\ntype III: {}\nstandard form: {}",
                f1.to_json(),
                f2.to_json(),
                f3.to_json(),
                s.to_word()
            );
            let j = json!({
                "type1": tangle_value(&f1),
                "type2": tangle_value(&f2),
                "type3": tangle_value(&f3),
                "c_plus": m.c_plus,
                "c_minus": m.c_minus,
                "standard_form": serde_json::to_value(s.to_json()).expect("serializable"),
            });
            Ok(Report::ok(text, j))
        }
        Command::VerifyRelations { max_n } => {
            let report = verify_relations(max_n);
            let failed = report.iter().filter(|c| c.status == Status::Fail).count();
            let mut families: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
            for c in &report {
                let e = families.entry(c.relation.as_str()).or_default();
                e.0 += 1;
                if c.status == Status::Pass {
                    e.1 += 1;
                }
            }
            let mut text = String::new();
            for (name, (total, pass)) in &families {
                let _ = writeln!(text, "{name}: {pass}/{total} pass");
            }
            for c in report.iter().filter(|c| c.status == Status::Fail) {
                let _ = writeln!(text, "FAIL {}: {}", c.relation, c.instance);
            }
            let _ = write!(text, "{} of {} instances pass", report.len() - failed, report.len());
            Ok(Report {
                text,
                json: json!({"total": report.len(), "failed": failed, "checks": report}),
                success: failed == 0,
            })
        }
        Command::Homology {
            module: Module::Tl,
            ring,
            delta_plus,
            delta_minus,
            kind,
            max_degree,
        } => {
            let ring: Ring = ring.parse()?;
            let spec = AnnularModuleSpec::tl(ring, parse_scalar(&delta_plus)?, parse_scalar(&delta_minus)?)?;
            let kind: HomologyKind = kind.parse()?;
            let table = TlModule::new(spec).homology(kind, max_degree as usize)?;
            let json: Value = serde_json::from_str(&table.to_json()).expect("table json is valid");
            Ok(Report::ok(table.to_string().trim_end().to_string(), json))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ANNTL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(DomainError(msg)) => {
            match format {
                Format::Text => eprintln!("error: {msg}"),
                Format::Json => println!("{}", json!({"error": msg})),
            }
            ExitCode::from(1)
        }
    }
}

//! Command-line front end: `check`, `catalog` and `regress`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{build_family, regression_suite, Family};
use crate::error::{Error, Result};
use crate::graph::{abelianization_classes, parse_rational, validate_character, Character, DefiningGraph, InputDocument};
use crate::homology::Ring;
use crate::laurent::Field;
use crate::report::run_report;
use crate::sigma::{default_fields, Flags};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sigma-artin", version, about = "Σ-invariants of Artin groups and finiteness of Artin kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyse a defining graph read from a JSON document.
    Check {
        /// JSON document with `vertices`, `edges` and optionally `character`.
        #[arg(long)]
        graph: String,
        /// Character: a JSON file, `v=p/q,...` pairs or one value per vertex.
        #[arg(long = "char")]
        character: Option<String>,
        #[command(flatten)]
        opts: Options,
    },
    /// Analyse a member of a named family.
    Catalog {
        /// A, B, D, E, F, H, I2, A~, B~, C~, D~, E~, F~, G~, I~ or triangle.
        family: String,
        /// Rank, dihedral label, or the three triangle labels.
        #[arg(required = true)]
        params: Vec<u32>,
        /// One value per abelianization class, or one per vertex.
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Run the regression suite of closed-form families.
    Regress {
        /// Largest absolute class value in the sampled grid.
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct Options {
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Field codes: 0 for Q, a prime p for F_p.
    #[arg(long, value_delimiter = ',')]
    fields: Option<Vec<String>>,
    /// Z, Q or F<p>.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long = "assume-k-pi-1", default_value_t = true, action = clap::ArgAction::Set)]
    assume_k_pi_1: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn flags(g: &DefiningGraph, o: &Options) -> Result<Flags> {
    let ring: Ring = o.ring.parse().map_err(|_| Error::Validation(format!("invalid ring `{}`", o.ring)))?;
    let fields = match &o.fields {
        None => default_fields(g),
        Some(list) => {
            let mut out = Vec::new();
            for f in list {
                let field: Field = f.parse().map_err(|e: Error| Error::Validation(e.to_string()))?;
                if !out.contains(&field) {
                    out.push(field);
                }
            }
            out
        }
    };
    Ok(Flags { assume_k_pi_1: o.assume_k_pi_1, ring, fields, ..Flags::for_graph(g) })
}

fn parse_values(text: &str) -> Result<Vec<num_rational::Ratio<i64>>> {
    text.split(',').map(parse_rational).collect()
}

/// Resolve `--char` for `check`: file, `name=value` pairs or a value list.
fn check_character(g: &DefiningGraph, doc: &InputDocument, spec: Option<&str>) -> Result<Character> {
    let Some(spec) = spec else {
        let raw = doc
            .raw_character()?
            .ok_or_else(|| Error::Validation("no character given (use --char or a `character` field)".into()))?;
        return validate_character(g, &raw);
    };
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        let map = value.get("character").cloned().unwrap_or(value);
        let doc: InputDocument = serde_json::from_value(serde_json::json!({ "vertices": [], "character": map }))
            .map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return validate_character(g, &doc.raw_character()?.unwrap_or_default());
    }
    if spec.contains('=') {
        let mut raw = BTreeMap::new();
        for part in spec.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("invalid pair `{part}`")))?;
            raw.insert(k.trim().to_string(), parse_rational(v)?);
        }
        return validate_character(g, &raw);
    }
    let values = parse_values(spec)?;
    if values.len() != g.vertex_count() {
        return Err(Error::Validation(format!("expected {} values, got {}", g.vertex_count(), values.len())));
    }
    Character::new(g, values)
}

/// `--char` for `catalog`: class values, or vertex values when the counts differ.
fn catalog_character(g: &DefiningGraph, spec: &str) -> Result<Character> {
    let values = parse_values(spec)?;
    let ab = abelianization_classes(g);
    if values.len() == ab.rank() {
        let per_vertex = (0..g.vertex_count()).map(|v| values[ab.class_of[v]]).collect();
        Character::new(g, per_vertex)
    } else if values.len() == g.vertex_count() {
        Character::new(g, values)
    } else {
        Err(Error::Validation(format!(
            "expected {} class values or {} vertex values, got {}",
            ab.rank(),
            g.vertex_count(),
            values.len()
        )))
    }
}

fn emit(g: &DefiningGraph, chi: &Character, o: &Options, out: &mut dyn Write) -> Result<()> {
    let report = run_report(g, chi, o.n_max, flags(g, o)?)?;
    let text = match o.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json()? + "\n",
    };
    write!(out, "{text}").map_err(|e| Error::Internal(e.to_string()))
}

fn regress(bound: i64, format: Format, out: &mut dyn Write) -> Result<bool> {
    let outcomes = regression_suite(bound)?;
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let io = |e: std::io::Error| Error::Internal(e.to_string());
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&outcomes).map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)?;
        }
        Format::Text => {
            for o in &outcomes {
                if !o.passed() {
                    writeln!(
                        out,
                        "FAIL {} ({}) n={} expected {} got {} via {}",
                        o.case.family,
                        o.case.classes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                        o.case.n,
                        o.case.expected,
                        o.verdict.answer,
                        o.verdict.certificate
                    )
                    .map_err(io)?;
                }
            }
            writeln!(
                out,
                "regression: {passed}/{} cases agree with the closed forms (sampled confirmation, |value| ≤ {bound})",
                outcomes.len()
            )
            .map_err(io)?;
        }
    }
    Ok(passed == outcomes.len())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Check { graph, character, opts } => {
            let text = std::fs::read_to_string(&graph).map_err(|e| Error::Parse(format!("{graph}: {e}")))?;
            let doc = InputDocument::parse(&text)?;
            let g = doc.graph()?;
            let chi = check_character(&g, &doc, character.as_deref())?;
            emit(&g, &chi, &opts, out)?;
            Ok(EXIT_OK)
        }
        Command::Catalog { family, params, character, opts } => {
            let spec = build_family(Family::parse(&family)?, &params)?;
            let chi = catalog_character(&spec.graph, &character)?;
            emit(&spec.graph, &chi, &opts, out)?;
            Ok(EXIT_OK)
        }
        Command::Regress { bound, format } => {
            if regress(bound, format, out)? {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_INTERNAL)
            }
        }
    }
}

/// Run the tool on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

//! Command-line front end. [`run`] parses arguments, dispatches, and
//! returns the exit code with the rendered output.

pub mod catalog;
mod render;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use stabdiff::bordism::{all_tables, coefficient_table, Category, Structure};
use stabdiff::classification::{classify_with, DEFAULT_CHECK_DEGREE};
use stabdiff::cohomology::cohomology_range;
use stabdiff::config::Limits;
use stabdiff::gmodule::GModule;
use stabdiff::group::{odd_normal_complement, orientation_characters, parse_group, Character2, FiniteGroup};
use stabdiff::hypothesis::thom_simplification_applicable;
use stabdiff::manifold::{parse_expr, stably_equivalent, Tangential};
use stabdiff::resolution::{best_resolution, ResolutionKind};
use stabdiff::spectral::{ahss_e2_page, diagonal_report, lhs_e2_page, twisted_thom_homology};
use stabdiff::{AbelianGroup, Error};

pub use catalog::{catalog, catalog_groups, CatalogRow, CATALOG_BOUND};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "stabdiff", version, about = "Stable classification of unorientable 4-manifolds with fundamental group of order 2 mod 4")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    #[value(name = "Z")]
    Z,
    #[value(name = "Z2")]
    Z2,
    #[value(name = "Zw")]
    Zw,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stable class tables for the three unorientable normal 1-types.
    Classify {
        group: String,
        #[arg(long, default_value = "smooth")]
        category: Category,
    },
    /// Decide whether the Thom spectrum reduces to the 2-group quotient.
    CheckHypothesis {
        group: String,
        #[arg(long, default_value_t = DEFAULT_CHECK_DEGREE)]
        max_degree: usize,
    },
    /// Integral, mod 2 or orientation-twisted cohomology.
    Cohomology {
        group: String,
        #[arg(long, value_enum)]
        coeff: Coeff,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Lyndon–Hochschild–Serre E2 page for the odd normal complement.
    Lhs {
        group: String,
        #[arg(long, default_value_t = 4)]
        range: usize,
    },
    /// Atiyah–Hirzebruch E2 page over the twisted Thom homology.
    Ahss {
        group: String,
        #[arg(long)]
        coeff: Structure,
        #[arg(long, default_value_t = 4)]
        diagonal: usize,
    },
    /// Stable equivalence of two generator expressions.
    Compare {
        left: String,
        right: String,
        #[arg(long)]
        category: Category,
        #[arg(long)]
        structure: Tangential,
    },
    /// Stored bordism coefficient tables.
    Tables,
    /// Hypothesis verdicts and class counts over the built-in groups.
    Catalog {
        #[arg(long, default_value_t = CATALOG_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..=CATALOG_BOUND as u64))]
        max_order: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub kind: String,
    pub result: Option<Value>,
    pub error: Option<ErrorReport>,
    pub citations: Vec<String>,
    pub elapsed_us: u64,
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Usage errors exit with 2; everything else the library raises is a
/// domain error and exits with 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownStructure(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::UnknownStructure(_) => "usage",
        Error::HypothesisFailed { .. } => "hypothesis",
        Error::Infeasible { .. } => "feasibility",
        _ => "domain",
    }
}

fn orientation_character(g: &FiniteGroup) -> Result<Character2, Error> {
    orientation_characters(g)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Incompatible(format!("{} has no surjection onto C2", g.name())))
}

fn resolution_name(kind: &ResolutionKind) -> String {
    match kind {
        ResolutionKind::Bar => "bar".into(),
        ResolutionKind::Periodic { .. } => "periodic".into(),
        ResolutionKind::Tensor { left, right } => format!("tensor({left}, {right})"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub group: String,
    pub coefficients: String,
    pub resolution: String,
    pub groups: Vec<AbelianGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhssResult {
    pub group: String,
    pub thom_homology: Vec<AbelianGroup>,
    pub page: stabdiff::spectral::E2Page,
    pub diagonal: stabdiff::spectral::DiagonalReport,
}

struct Computed {
    kind: &'static str,
    result: Value,
    citations: Vec<String>,
    text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn dispatch(command: &Command, limits: &Limits) -> Result<Computed, Error> {
    Ok(match command {
        Command::Classify { group, category } => {
            let g = parse_group(group)?;
            let report = thom_simplification_applicable(&g, DEFAULT_CHECK_DEGREE, limits)?;
            let c = classify_with(&report, *category)?;
            let mut citations: Vec<String> = c.types.iter().flat_map(|t| t.citations.clone()).collect();
            citations.sort();
            citations.dedup();
            Computed { kind: "classification", text: render::classification(&c), result: to_value(&c), citations }
        }
        Command::CheckHypothesis { group, max_degree } => {
            let g = parse_group(group)?;
            let r = thom_simplification_applicable(&g, *max_degree, limits)?;
            Computed { kind: "hypothesis", text: render::hypothesis(&r), result: to_value(&r), citations: vec![] }
        }
        Command::Cohomology { group, coeff, degree } => {
            let g = parse_group(group)?;
            let (module, name) = match coeff {
                Coeff::Z => (GModule::trivial_integers(&g), "Z".to_string()),
                Coeff::Z2 => (GModule::mod2(&g), "Z/2".to_string()),
                Coeff::Zw => {
                    let w = orientation_character(&g)?;
                    (GModule::twisted_integers(&w), format!("Z_w, w trivial on {:?}", w.kernel()))
                }
            };
            let resolution = resolution_name(best_resolution(&g, degree + 1, limits)?.kind());
            let groups = cohomology_range(&g, &module, *degree, limits)?;
            let r = CohomologyResult { group: g.name().to_string(), coefficients: name, resolution, groups };
            Computed { kind: "cohomology", text: render::cohomology(&r), result: to_value(&r), citations: vec![] }
        }
        Command::Lhs { group, range } => {
            let g = parse_group(group)?;
            let oc = odd_normal_complement(&g)
                .ok_or_else(|| Error::Incompatible(format!("{} has no odd normal complement", g.name())))?;
            let twist = orientation_character(&oc.p)?;
            let page = lhs_e2_page(&g, &oc, &twist, *range, limits)?;
            Computed { kind: "lhs", text: render::page(&page), result: to_value(&page), citations: vec![] }
        }
        Command::Ahss { group, coeff, diagonal } => {
            let g = parse_group(group)?;
            let w = orientation_character(&g)?;
            let range = diagonal + 1;
            let x = (0..=range).map(|n| twisted_thom_homology(&g, Some(&w), n, limits)).collect::<Result<Vec<_>, _>>()?;
            let table = coefficient_table(*coeff);
            let page = ahss_e2_page(&x, &table, range)?;
            let diag = diagonal_report(&page, *diagonal);
            let citations = table.entries.iter().map(|e| format!("Omega_{}^{}: {}", e.degree, table.structure, e.citation)).collect();
            let r = AhssResult { group: g.name().to_string(), thom_homology: x, page, diagonal: diag };
            Computed { kind: "ahss", text: render::ahss(&r), result: to_value(&r), citations }
        }
        Command::Compare { left, right, category, structure } => {
            let c = stably_equivalent(&parse_expr(left)?, &parse_expr(right)?, *category, *structure)?;
            Computed { kind: "comparison", text: render::comparison(&c), result: to_value(&c), citations: vec![] }
        }
        Command::Tables => {
            let tables = all_tables();
            Computed { kind: "tables", text: render::tables(&tables), result: to_value(&tables), citations: vec![] }
        }
        Command::Catalog { max_order } => {
            let rows = catalog(*max_order as usize, limits);
            Computed { kind: "catalog", text: render::catalog(&rows), result: to_value(&rows), citations: vec![] }
        }
    })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let limits = Limits::from_env();
    let start = Instant::now();
    let computed = dispatch(&cli.command, &limits);
    let elapsed_us = start.elapsed().as_micros() as u64;
    match (computed, cli.format) {
        (Ok(c), Format::Text) => {
            let mut stdout = c.text;
            if !c.citations.is_empty() {
                stdout.push_str("\nCitations:\n");
                for cite in &c.citations {
                    stdout.push_str(&format!("  {cite}\n"));
                }
            }
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        (Ok(c), Format::Json) => {
            let report = Report {
                schema: SCHEMA,
                command,
                kind: c.kind.to_string(),
                result: Some(c.result),
                error: None,
                citations: c.citations,
                elapsed_us,
            };
            Outcome { code: 0, stdout: json_line(&report), stderr: String::new() }
        }
        (Err(e), format) => {
            let code = exit_code(&e);
            let stderr = format!("error: {e}\n");
            let stdout = match format {
                Format::Text => String::new(),
                Format::Json => json_line(&Report {
                    schema: SCHEMA,
                    command,
                    kind: "error".into(),
                    result: None,
                    error: Some(ErrorReport { kind: error_kind(&e).into(), message: e.to_string() }),
                    citations: vec![],
                    elapsed_us,
                }),
            };
            Outcome { code, stdout, stderr }
        }
    }
}

fn json_line(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

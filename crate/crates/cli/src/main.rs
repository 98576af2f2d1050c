//! Command-line front end: sequence generation, grid rendering, Riordan
//! array arithmetic, and the identity-check suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use latticewalk::families::{named_sequence, Family, FamilyId};
use latticewalk::lattice::{build_grid, step_set_for, PathGrid};
use latticewalk::riordan::{materialize, pascal_power, riordan_mul, NamedArray, TriMatrix};
use latticewalk::verify::{report_to_json, run_all, run_check_id, CheckParams, CheckResult};

#[derive(Parser)]
#[command(name = "latticewalk", version, about = "Exact lattice-path sequences, grids, and Riordan arrays")]
struct Cli {
    /// Output format (defaults to ascii on a terminal, json when redirected)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Ascii,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of a family's sequence
    Seq {
        /// catalan, schroder-large, schroder-small, or motzkin
        family: String,
        /// Level-step colors (defaults to the family's definition)
        #[arg(long)]
        colors: Option<u32>,
        /// How many terms to print
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Render the grid of path counts to each lattice point
    Grid {
        /// catalan, schroder-large, schroder-small, or motzkin
        family: String,
        /// Level-step colors (defaults to the family's definition)
        #[arg(long)]
        colors: Option<u32>,
        /// Rightmost x coordinate (at most 64)
        #[arg(long, default_value_t = 10)]
        width: usize,
        /// Topmost y coordinate (at most 32)
        #[arg(long, default_value_t = 5)]
        height: usize,
    },
    /// Materialize and multiply Riordan arrays
    Riordan {
        #[command(subcommand)]
        op: RiordanOp,
    },
    /// Run identity checks (a single id, or --all)
    Verify {
        /// Check id, e.g. eq9 or eq20-motzkin
        id: Option<String>,
        /// Run the whole catalog
        #[arg(long)]
        all: bool,
        /// Series truncation order for the checks
        #[arg(long, default_value_t = 32)]
        order: usize,
        /// Matrix dimension for the materialized checks
        #[arg(long, default_value_t = 12)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum RiordanOp {
    /// Print the top-left corner of a named array
    /// (pascal, pascal^N, motzkin[N], schroder[N])
    Materialize {
        name: String,
        #[arg(long, default_value_t = 6)]
        dim: usize,
    },
    /// Multiply two named arrays via the Riordan product
    Mul {
        a: String,
        b: String,
        #[arg(long, default_value_t = 6)]
        dim: usize,
    },
    /// Print the n-th power of Pascal's triangle
    PascalPow {
        n: u32,
        #[arg(long, default_value_t = 6)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or_else(|| {
        if std::io::stdout().is_terminal() {
            OutputFormat::Ascii
        } else {
            OutputFormat::Json
        }
    });
    match execute(cli.command, format) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command, format: OutputFormat) -> Result<ExitCode, String> {
    match command {
        Command::Seq { family, colors, terms } => {
            if terms < 1 {
                return Err("--terms must be at least 1".into());
            }
            let family = parse_family(&family, colors)?;
            let seq = named_sequence(&family, terms - 1).map_err(|e| e.to_string())?;
            let terms: Vec<String> = seq.coeffs.iter().map(|c| c.to_string()).collect();
            match format {
                OutputFormat::Ascii => println!("{}", terms.join(" ")),
                OutputFormat::Csv => println!("{}", terms.join(",")),
                OutputFormat::Json => {
                    #[derive(Serialize)]
                    struct SeqJson {
                        family: &'static str,
                        n_colors: u32,
                        terms: Vec<String>,
                    }
                    let doc = SeqJson {
                        family: family.id().as_str(),
                        n_colors: family.n_colors(),
                        terms,
                    };
                    println!("{}", serde_json::to_string(&doc).expect("serializable"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid { family, colors, width, height } => {
            if width > 64 {
                return Err(format!("--width {width} exceeds the maximum of 64"));
            }
            if height > 32 {
                return Err(format!("--height {height} exceeds the maximum of 32"));
            }
            let family = parse_family(&family, colors)?;
            let steps = step_set_for(family.id(), family.n_colors());
            let grid = build_grid(&steps, width, height);
            match format {
                OutputFormat::Ascii => print!("{}", render_grid_ascii(&grid)),
                OutputFormat::Csv => print!("{}", grid.to_csv()),
                OutputFormat::Json => println!("{}", grid.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Riordan { op } => {
            let matrix = match op {
                RiordanOp::Materialize { name, dim } => {
                    check_dim(dim)?;
                    let pair = parse_array(&name)?.pair(dim).map_err(|e| e.to_string())?;
                    materialize(&pair, dim).map_err(|e| e.to_string())?
                }
                RiordanOp::Mul { a, b, dim } => {
                    check_dim(dim)?;
                    let a = parse_array(&a)?.pair(dim).map_err(|e| e.to_string())?;
                    let b = parse_array(&b)?.pair(dim).map_err(|e| e.to_string())?;
                    let product = riordan_mul(&a, &b).map_err(|e| e.to_string())?;
                    materialize(&product, dim).map_err(|e| e.to_string())?
                }
                RiordanOp::PascalPow { n, dim } => {
                    check_dim(dim)?;
                    materialize(&pascal_power(n, dim), dim).map_err(|e| e.to_string())?
                }
            };
            match format {
                OutputFormat::Ascii => print!("{}", render_matrix_ascii(&matrix)),
                OutputFormat::Csv => print!("{}", matrix.to_csv()),
                OutputFormat::Json => println!("{}", matrix.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { id, all, order, dim } => {
            let params = CheckParams::default().with_order(order).with_dimension(dim);
            let results = match (id, all) {
                (Some(id), false) => {
                    vec![run_check_id(&id, params).map_err(|e| e.to_string())?]
                }
                (None, true) => run_all(order, dim).map_err(|e| e.to_string())?,
                (Some(_), true) => return Err("pass either a check id or --all, not both".into()),
                (None, false) => return Err("pass a check id or --all".into()),
            };
            let all_passed = results.iter().all(|r| r.passed);
            match format {
                OutputFormat::Ascii => print!("{}", render_results_ascii(&results)),
                OutputFormat::Csv => print!("{}", render_results_csv(&results)),
                OutputFormat::Json => println!("{}", report_to_json(&results)),
            }
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn parse_family(name: &str, colors: Option<u32>) -> Result<Family, String> {
    let id: FamilyId = name.parse().map_err(|e| format!("{e}"))?;
    let colors = colors.unwrap_or_else(|| Family::default_colors(id));
    Family::new(id, colors).map_err(|e| e.to_string())
}

fn parse_array(name: &str) -> Result<NamedArray, String> {
    name.parse().map_err(|e| format!("{e}"))
}

fn check_dim(dim: usize) -> Result<(), String> {
    if dim < 1 || dim > 64 {
        return Err(format!("--dim {dim} is out of range (1..=64)"));
    }
    Ok(())
}

/// Triangular lattice layout: x increases rightward, y upward, zero counts
/// left blank, columns right-aligned with two-space gutters.
fn render_grid_ascii(grid: &PathGrid) -> String {
    let widths: Vec<usize> = (0..=grid.width())
        .map(|x| {
            (0..=grid.height())
                .map(|y| {
                    let c = grid.count(x, y);
                    if c.is_zero() { 0 } else { c.to_string().len() }
                })
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    let mut out = String::new();
    for y in (0..=grid.height()).rev() {
        let mut cells = Vec::with_capacity(grid.width() + 1);
        for x in 0..=grid.width() {
            let c = grid.count(x, y);
            let text = if c.is_zero() { String::new() } else { c.to_string() };
            cells.push(format!("{text:>width$}", width = widths[x]));
        }
        let line = cells.join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Ragged lower-triangular layout with column-aligned entries.
fn render_matrix_ascii(matrix: &TriMatrix) -> String {
    let n = matrix.dim();
    let widths: Vec<usize> = (0..n)
        .map(|j| {
            (j..n)
                .map(|i| matrix.entry(i, j).to_string().len())
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    for row in matrix.rows() {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, v)| format!("{:>width$}", v.to_string(), width = widths[j]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_results_ascii(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        match &r.detail {
            Some(detail) => out.push_str(&format!("{:<28} {status}  {detail}\n", r.id)),
            None => out.push_str(&format!("{:<28} {status}\n", r.id)),
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let noun = if results.len() == 1 { "check" } else { "checks" };
    out.push_str(&format!("{} {noun}, {passed} passed\n", results.len()));
    out
}

fn render_results_csv(results: &[CheckResult]) -> String {
    let mut out = String::from("id,passed,detail\n");
    for r in results {
        let detail = r.detail.as_deref().unwrap_or("");
        out.push_str(&format!("{},{},{}\n", r.id, r.passed, detail.replace(',', ";")));
    }
    out
}

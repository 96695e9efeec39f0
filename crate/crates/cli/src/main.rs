mod pattern;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polyext_core::classifier::{classify, ClassifyOptions, ExtendabilityReport, Method};
use polyext_core::graph::{encode_graph6, parse_auto, parse_graph6, Graph};
use polyext_core::polynomial::{graph_polynomial, TermJson};
use polyext_core::verifier::{
    enumerate_outerplanar, enumerate_polygon_triangulations, enumerate_snakes, run_suite,
    SuiteMode, SuiteOptions,
};

/// Exit status for a theorem discrepancy or a failed suite.
const DISCREPANCY: u8 = 2;

#[derive(Parser)]
#[command(name = "polyext", version, about = "List-colouring extendability of outerplanar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphInput {
    /// Graph file (graph6 or edge list), or `-` for stdin.
    input: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long, conflicts_with = "input")]
    g6: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Structural,
    Oracle,
    Both,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum Class {
    Triangulations,
    Snakes,
    Outerplanar,
}

#[derive(Subcommand)]
enum Command {
    /// Classify (G, x, y) into case I, II or III with a witness monomial.
    Analyze {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand the graph polynomial, or list the terms matching a pattern.
    Poly {
        #[command(flatten)]
        graph: GraphInput,
        /// `none` or one cap per vertex, comma separated (`-` leaves one uncapped).
        #[arg(long)]
        caps: Option<String>,
        /// Exponent pattern such as `x=0,y=1,rest<=2`.
        #[arg(long)]
        find: Option<String>,
        /// Vertex named `x` in the pattern.
        #[arg(long, default_value_t = 0)]
        x: usize,
        /// Vertex named `y` in the pattern.
        #[arg(long, default_value_t = 1)]
        y: usize,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print graph6 lines for an instance class.
    Enumerate {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long)]
        n: usize,
    },
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    if let Some(g6) = &input.g6 {
        return parse_graph6(g6).with_context(|| format!("invalid graph6 {g6:?}"));
    }
    let Some(path) = &input.input else {
        bail!("no graph given: pass a file, `-` for stdin, or --g6");
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_auto(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn text_report(r: &ExtendabilityReport) -> String {
    let mut s = format!(
        "case {} (beta = {}, gamma = {}), colour relation {:?}, route {:?}, method {:?}\n",
        r.case, r.beta, r.gamma, r.color_relation, r.route, r.method
    );
    match &r.witness {
        Some(w) => s.push_str(&format!("witness {:?} with coefficient {}\n", w.exponents, w.coefficient)),
        None => s.push_str("no witness\n"),
    }
    if let Some(d) = &r.discrepancy {
        s.push_str(&format!("DISCREPANCY: {}\n", d.note));
    }
    s
}

#[derive(Serialize)]
struct FindOutput {
    pattern: String,
    x: usize,
    y: usize,
    count: usize,
    terms: Vec<TermJson>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            graph,
            x,
            y,
            method,
            format,
        } => {
            let g = read_graph(&graph)?;
            let opts = ClassifyOptions {
                method: match method {
                    MethodArg::Structural => Method::Structural,
                    MethodArg::Oracle => Method::PolynomialOracle,
                    MethodArg::Both => Method::Both,
                },
                ..Default::default()
            };
            let report = classify(&g, x, y, &opts)?;
            match format {
                Format::Json => print_json(&report)?,
                Format::Text => print!("{}", text_report(&report)),
            }
            Ok(if report.discrepancy.is_some() {
                ExitCode::from(DISCREPANCY)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Poly {
            graph,
            caps,
            find,
            x,
            y,
        } => {
            let g = read_graph(&graph)?;
            let n = g.n();
            let pat = find
                .as_deref()
                .map(|f| pattern::parse(f, n, x, y))
                .transpose()?;
            let caps = match (&caps, &pat) {
                (Some(c), _) => pattern::parse_caps(c, n)?,
                (None, Some(p)) => p.caps(),
                (None, None) => vec![None; n],
            };
            let p = graph_polynomial(&g, &caps)?;
            match pat {
                None => print_json(&p.to_json())?,
                Some(pat) => {
                    let terms: Vec<TermJson> = p
                        .matching_terms(&pat.bounds, &pat.exact)
                        .into_iter()
                        .map(|(exps, coef)| TermJson { exps, coef })
                        .collect();
                    print_json(&FindOutput {
                        pattern: find.unwrap_or_default(),
                        x,
                        y,
                        count: terms.len(),
                        terms,
                    })?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { mode, max_n, jobs } => {
            let mode: SuiteMode = mode.parse()?;
            let mut opts = SuiteOptions::new(max_n.unwrap_or(mode.default_max_n()));
            opts.jobs = jobs;
            let report = run_suite(mode, &opts)?;
            print_json(&report)?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(DISCREPANCY)
            })
        }
        Command::Enumerate { class, n } => {
            let graphs = match class {
                Class::Triangulations => enumerate_polygon_triangulations(n)?,
                Class::Snakes => enumerate_snakes(n)?,
                Class::Outerplanar => enumerate_outerplanar(n)?,
            };
            for g in &graphs {
                println!("{}", encode_graph6(g));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

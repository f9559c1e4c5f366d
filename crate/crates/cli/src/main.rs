use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use yamada_core::cube::{build_complex_with, BuildOptions, Variant, DEFAULT_MAX_EDGES};
use yamada_core::homology::{cohomology, poincare};
use yamada_core::invariants::{
    chromatic_polynomial, flow_polynomial, g_polynomials, negami_polynomial, tutte_polynomial,
    yamada_state_sum,
};
use yamada_core::verify::{run_checks, CheckName};
use yamada_core::{BivariateLaurent, Multigraph};

#[derive(Debug, Parser)]
#[command(name = "yamada", version, about = "Graph polynomials and the bigraded cohomology of the Yamada polynomial")]
struct Cli {
    /// Refuse graphs with more edges than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    max_edges: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph JSON file: {"vertices": n, "edges": [[u, v], ...]}.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a polynomial invariant.
    Poly {
        #[arg(long, value_enum)]
        which: Which,
        /// Integer value of `t` for the Negami polynomial.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        negami_t: i64,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Integer cohomology table of the cube complex.
    Cohomology {
        #[arg(long, value_enum, default_value = "yamada")]
        variant: VariantArg,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Run theorem checkers; exits with status 2 if any check fails.
    Check {
        /// Run every check (the default when no --check is given).
        #[arg(long)]
        all: bool,
        /// Run only the named checks.
        #[arg(long = "check", value_parser = parse_check_name)]
        checks: Vec<CheckName>,
        /// Edge permutation for the permutation check, e.g. 2,0,1.
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
        /// Edge subset for the projection check, e.g. 0,2. Empty means no edges.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        subgraph: Option<Vec<usize>>,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Differential blocks as JSON.
    Dump {
        #[arg(long, value_enum, default_value = "yamada")]
        variant: VariantArg,
        #[arg(long)]
        height: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Yamada,
    G,
    GTilde,
    Tutte,
    Chromatic,
    Flow,
    Negami,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Yamada,
    Tutte,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Yamada => Variant::Yamada,
            VariantArg::Tutte => Variant::Tutte,
        }
    }
}

fn parse_check_name(s: &str) -> Result<CheckName, String> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path, max_edges: usize) -> Result<Multigraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let g = Multigraph::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if g.edge_count() > max_edges {
        return Err(format!(
            "{}: graph has {} edges, above the limit of {max_edges} (raise it with --max-edges)",
            path.display(),
            g.edge_count()
        )
        .into());
    }
    Ok(g)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn poly(g: &Multigraph, which: Which, negami_t: i64, json: bool) -> Result<String, Failure> {
    let (p, vars): (BivariateLaurent, (&str, &str)) = match which {
        Which::Yamada => (yamada_state_sum(g), ("x", "y")),
        Which::G => (g_polynomials(g).1, ("t", "w")),
        Which::GTilde => (g_polynomials(g).0, ("x", "y")),
        Which::Tutte => (tutte_polynomial(g), ("x", "y")),
        Which::Chromatic => (chromatic_polynomial(g), ("x", "y")),
        Which::Flow => (flow_polynomial(g), ("x", "y")),
        Which::Negami => (negami_polynomial(g, negami_t)?, ("x", "y")),
    };
    Ok(if json {
        to_json(&p)
    } else {
        p.display_with(vars.0, vars.1).to_string()
    })
}

fn cohomology_text(g: &Multigraph, variant: Variant, options: &BuildOptions, json: bool) -> Result<String, Failure> {
    let cx = build_complex_with(g, variant, options)?;
    let table = cohomology(&cx);
    if json {
        return Ok(to_json(&table.to_json()));
    }
    let mut out = format!("variant {variant}\n");
    out.push_str("i  bidegree  rank  torsion\n");
    for (&(i, (j, k)), group) in &table.groups {
        let torsion = if group.torsion.is_empty() {
            "-".to_string()
        } else {
            group.torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
        };
        let bd = format!("({j},{k})");
        writeln!(out, "{i:<2} {bd:<9} {:<5} {torsion}", group.free_rank).unwrap();
    }
    write!(out, "euler {}", poincare(&table).euler.display_with("t", "w")).unwrap();
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let options = BuildOptions {
        max_edges: cli.max_edges,
        ..BuildOptions::default()
    };
    match cli.command {
        Command::Poly {
            which,
            negami_t,
            input,
            json,
        } => poly(&load(&input.input, cli.max_edges)?, which, negami_t, json),
        Command::Cohomology { variant, input, json } => {
            cohomology_text(&load(&input.input, cli.max_edges)?, variant.into(), &options, json)
        }
        Command::Check {
            all,
            checks,
            perm,
            subgraph,
            input,
            json,
        } => {
            let g = load(&input.input, cli.max_edges)?;
            let names = if all || checks.is_empty() {
                CheckName::ALL.to_vec()
            } else {
                checks
            };
            let reports = run_checks(&g, &names, perm.as_deref(), subgraph.as_deref(), &options)?;
            let text = if json {
                to_json(&reports)
            } else {
                reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            };
            if reports.iter().all(|r| r.passed()) {
                Ok(text)
            } else {
                Err(Failure { code: 2, message: text })
            }
        }
        Command::Dump { variant, height, input } => {
            let g = load(&input.input, cli.max_edges)?;
            let cx = build_complex_with(&g, variant.into(), &options)?;
            Ok(to_json(&cx.dump(height)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure { code: 2, message }) => {
            println!("{message}");
            ExitCode::from(2)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

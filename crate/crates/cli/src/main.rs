//! `mcmullen`: transfer matrices, f/h/g-vectors, M-sequences and total
//! nonnegativity checks from the command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 negative minor
//! found, 4 internal cross-check failure.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mcmullen::exactnum::format_rational;
use mcmullen::io::{integers_to_csv, parse_integer_list, parse_matrix, rational_json};
use mcmullen::macaulay::{self, Violation};
use mcmullen::polyvec::{self, FVector, GVector, MapForm};
use mcmullen::{lgv, tnn, transfer, ExactMatrix, Integer};

const EXIT_NEGATIVE_MINOR: u8 = 3;
const EXIT_CROSS_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "mcmullen", version, about = "Exact McMullen transfer matrices and total nonnegativity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print M_d (--d) or W_n (--n).
    #[command(group(ArgGroup::new("size").required(true).multiple(false).args(["d", "n"])))]
    Matrix {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// With --d, print W_{d+1}, whose extra leading column carries f_{-1}.
        #[arg(long, conflicts_with = "n")]
        augmented: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every minor of M_d, W_n, or a matrix file (CSV or JSON).
    #[command(group(ArgGroup::new("source").required(true).multiple(false).args(["d", "n", "file"])))]
    Tnn {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Only check minors up to this order.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// f-vector to g-vector.
    F2g {
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// g-vector to f-vector through g * M_d.
    G2f {
        #[arg(long)]
        g: String,
        #[arg(long)]
        d: usize,
        /// Multiply by W_{d+1} instead, prepending f_{-1}.
        #[arg(long)]
        augmented: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Euler-Poincare check of an f-vector.
    Euler {
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a vector is the f-vector of a simplicial d-polytope.
    #[command(group(ArgGroup::new("vector").required(true).multiple(false).args(["f", "g"])))]
    Feasible {
        #[arg(long)]
        f: Option<String>,
        /// Test the image g * M_d of a candidate g-vector.
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Test whether a sequence is an M-sequence.
    Msequence {
        #[arg(long)]
        seq: String,
        /// Also run the exhaustive multicomplex search and compare.
        #[arg(long)]
        oracle: bool,
        /// Variables available to the oracle (default n_1).
        #[arg(long)]
        max_vars: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The weighted lattice graph T_n.
    Lgv {
        #[arg(long)]
        n: usize,
        /// Write the graph in Graphviz DOT format to FILE.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Compare a minor of W_n with its path-family sum.
        #[arg(long, requires_all = ["rows", "cols"])]
        verify: bool,
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("not an index: {t:?}")))
        .collect()
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        bail!("output format not supported by this command");
    }
    Ok(())
}

fn render_rows(rows: &[Vec<Integer>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(Integer::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

fn cmd_matrix(d: Option<usize>, n: Option<usize>, augmented: bool, format: Format) -> Result<u8> {
    reject_format(format, &[Format::Text, Format::Csv, Format::Json])?;
    let (label, csv, json, text) = match (d, n, augmented) {
        (Some(d), _, false) => {
            let m = transfer::build_m(d)?;
            (None, m.to_csv(), m.to_json(), render_rows(m.rows()))
        }
        (Some(d), _, true) => {
            let w = transfer::build_w(d + 1)?;
            let label = format!("# W_{} = M_{} with leading f_(-1) column", d + 1, d);
            (Some(label), w.to_csv(), w.to_json(), render_rows(w.rows()))
        }
        (None, Some(n), _) => {
            let w = transfer::build_w(n)?;
            (None, w.to_csv(), w.to_json(), render_rows(w.rows()))
        }
        (None, None, _) => unreachable!("clap requires --d or --n"),
    };
    match format {
        Format::Csv => print!("{csv}"),
        Format::Json => println!("{json}"),
        _ => {
            if let Some(label) = label {
                println!("{label}");
            }
            print!("{text}");
        }
    }
    Ok(0)
}

fn cmd_tnn(
    d: Option<usize>,
    n: Option<usize>,
    file: Option<PathBuf>,
    max_order: Option<usize>,
    jobs: usize,
    format: Format,
) -> Result<u8> {
    reject_format(format, &[Format::Text, Format::Json])?;
    let m = if let Some(d) = d {
        ExactMatrix::from_integers(transfer::build_m(d)?.rows())?
    } else if let Some(n) = n {
        ExactMatrix::from_integers(transfer::build_w(n)?.rows())?
    } else {
        let path = file.expect("clap requires a matrix source");
        let text = fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
        parse_matrix(&text).with_context(|| format!("cannot parse {}", path.display()))?
    };
    let report = tnn::is_totally_nonnegative_par(&m, max_order, jobs)?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    Ok(if report.is_tnn { 0 } else { EXIT_NEGATIVE_MINOR })
}

fn print_vector(values: &[Integer], key: &str, format: Format) {
    match format {
        Format::Json => println!("{}", json!({ key: values.iter().map(mcmullen::io::integer_json).collect::<Vec<_>>() })),
        _ => println!("{}", integers_to_csv(values)),
    }
}

fn cmd_feasible(f: Option<String>, g: Option<String>, d: usize, format: Format) -> Result<u8> {
    reject_format(format, &[Format::Text, Format::Json])?;
    let verdict = match (f, g) {
        (Some(f), _) => polyvec::is_polytopal_f(&FVector::new(d, parse_integer_list(&f)?)?),
        (None, Some(g)) => polyvec::is_polytopal_g(&GVector::new(d, parse_integer_list(&g)?)?)?,
        (None, None) => unreachable!("clap requires --f or --g"),
    };
    match format {
        Format::Json => println!("{}", verdict.to_json()),
        _ => {
            println!("pass: {}", verdict.pass);
            println!("g: {}", integers_to_csv(verdict.g.values()));
            println!("vertices: {}", verdict.vertices);
            if let Some(c) = verdict.failed_condition {
                println!("failed_condition: {}", c.as_str());
            }
            if let Some(w) = &verdict.witness {
                println!("witness: {w}");
            }
        }
    }
    Ok(0)
}

fn cmd_msequence(seq: &str, oracle: bool, max_vars: Option<usize>, format: Format) -> Result<u8> {
    reject_format(format, &[Format::Text, Format::Json])?;
    let seq = parse_integer_list(seq)?;
    let verdict = macaulay::is_m_sequence(&seq)?;
    let oracle_answer = if oracle {
        let vars = match max_vars {
            Some(v) => v,
            None => seq.get(1).map_or(Some(0), |n1| usize::try_from(n1).ok()).unwrap_or(0),
        };
        Some(macaulay::oracle_is_m_sequence(&seq, vars)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut j = verdict.to_json();
            if let Some(o) = oracle_answer {
                j["oracle"] = json!(o);
            }
            println!("{j}");
        }
        _ => {
            println!("is_m_sequence: {}", verdict.holds);
            match &verdict.witness {
                None => {}
                Some(Violation::LeadingNotOne { value }) => println!("witness: n_0 = {value}, expected 1"),
                Some(Violation::Negative { index, value }) => println!("witness: n_{index} = {value} is negative"),
                Some(Violation::Boundary { k, boundary, previous }) => {
                    println!("witness: k={k} boundary={boundary} previous={previous}")
                }
            }
            if let Some(o) = oracle_answer {
                println!("oracle: {o}");
            }
        }
    }
    if oracle_answer.is_some_and(|o| o != verdict.holds) {
        eprintln!("error: boundary test and multicomplex search disagree");
        return Ok(EXIT_CROSS_CHECK);
    }
    Ok(0)
}

fn cmd_lgv(
    n: usize,
    dot: Option<PathBuf>,
    verify: bool,
    rows: Option<String>,
    cols: Option<String>,
    format: Format,
) -> Result<u8> {
    let g = lgv::build_t(n)?;
    if let Some(path) = &dot {
        fs::write(path, g.to_dot()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if verify {
        reject_format(format, &[Format::Text, Format::Json])?;
        let rows = parse_indices(rows.as_deref().unwrap_or_default())?;
        let cols = parse_indices(cols.as_deref().unwrap_or_default())?;
        let via_paths = g.minor_via_lgv(&rows, &cols)?;
        let w = ExactMatrix::from_integers(transfer::build_w(n)?.rows())?;
        let det = tnn::determinant(&w.submatrix(&rows, &cols))?;
        let equal = det == via_paths;
        match format {
            Format::Json => println!(
                "{}",
                json!({ "det": rational_json(&det), "lgv": rational_json(&via_paths), "equal": equal })
            ),
            _ => println!(
                "det={}\nlgv={}\nequal={}",
                format_rational(&det),
                format_rational(&via_paths),
                equal
            ),
        }
        if !equal {
            eprintln!("error: determinant and path-family sum differ");
            return Ok(EXIT_CROSS_CHECK);
        }
        return Ok(0);
    }
    match format {
        Format::Dot => print!("{}", g.to_dot()),
        Format::Json => println!("{}", g.to_json()),
        Format::Text => {
            if dot.is_none() {
                println!("T_{}: {} vertices, {} arcs", n, g.vertices().len(), g.arcs().len());
                println!("sources: {:?}", g.sources());
                println!("sinks: {:?}", g.sinks());
            }
        }
        Format::Csv => bail!("output format not supported by this command"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Matrix { d, n, augmented, format } => cmd_matrix(d, n, augmented, format),
        Command::Tnn { d, n, file, max_order, jobs, format } => cmd_tnn(d, n, file, max_order, jobs, format),
        Command::F2g { f, d, format } => {
            reject_format(format, &[Format::Text, Format::Json])?;
            let g = polyvec::f_to_g(&FVector::new(d, parse_integer_list(&f)?)?);
            print_vector(g.values(), "g", format);
            Ok(0)
        }
        Command::G2f { g, d, augmented, format } => {
            reject_format(format, &[Format::Text, Format::Json])?;
            let g = GVector::new(d, parse_integer_list(&g)?)?;
            let form = if augmented { MapForm::Augmented } else { MapForm::Plain };
            print_vector(&polyvec::g_to_f(&g, form), "f", format);
            Ok(0)
        }
        Command::Euler { f, d, format } => {
            reject_format(format, &[Format::Text, Format::Json])?;
            let holds = polyvec::euler_check(&FVector::new(d, parse_integer_list(&f)?)?);
            match format {
                Format::Json => println!("{}", json!({ "euler": holds })),
                _ => println!("{holds}"),
            }
            Ok(0)
        }
        Command::Feasible { f, g, d, format } => cmd_feasible(f, g, d, format),
        Command::Msequence { seq, oracle, max_vars, format } => cmd_msequence(&seq, oracle, max_vars, format),
        Command::Lgv { n, dot, verify, rows, cols, format } => cmd_lgv(n, dot, verify, rows, cols, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

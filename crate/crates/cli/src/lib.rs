//! Command-line front end: parses arguments, loads `.cplx` files and dispatches to the library.
//!
//! Exit codes: 0 when every verdict is PASS, NOT-APPLICABLE or HYPOTHESIS-NOT-MET, 1 when any
//! check fails or a computation cannot be carried out, 2 for usage and parse errors.

mod batch;
mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use facering::FieldSpec;

pub use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "facering",
    version,
    about = "Face rings, socles and Lefschetz probes of simplicial complexes"
)]
pub struct Cli {
    /// Coefficient field: Q, Fp (p = 32003), Fp:<p> or F<p>
    #[arg(long, global = true, default_value = "Q")]
    pub field: FieldSpec,

    /// Master seed for every generic draw
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Independent generic draws per claim
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,

    /// Degree window for local cohomology, `a..b` inclusive
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Purity, connectivity, Buchsbaum / manifold / sphere tests, f, h and Betti numbers
    Classify { file: PathBuf },
    /// Graded socle of k(Δ) against C(d,i)·β_(i-1)
    Socle { file: PathBuf },
    /// Socle of the Gorenstein quotient bar k(Δ)
    Gorenstein { file: PathBuf },
    /// Symmetry of h''
    Symmetry { file: PathBuf },
    /// Ranks of ω^(d-2i) on bar k(Δ) for generic ω
    Lefschetz {
        file: PathBuf,
        /// Only this degree i <= d/2
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Special case of the manifold g-conjecture via faces whose star holds every vertex
    Gcheck { file: PathBuf },
    /// Link isomorphism k(lk v) -> (x_v) at every vertex, or one
    Linkiso {
        file: PathBuf,
        /// Vertex label
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Middle-degree link surjectivity and the resulting g-profile on bar k(Δ)
    Connection {
        file: PathBuf,
        /// Force the link multiplier to zero
        #[arg(long)]
        zero_omega: bool,
    },
    /// Local cohomology dimensions from relative cohomology of contrastars
    Localcoh { file: PathBuf },
    /// Macaulay's M-vector test
    Mvector {
        #[arg(required = true, allow_hyphen_values = true, value_delimiter = ',')]
        sequence: Vec<i64>,
    },
    /// f, h, h' and h'' side by side
    Hvectors { file: PathBuf },
    /// Write a bundled family member as a .cplx document
    Generate {
        /// simplex-boundary or cross-polytope-boundary
        kind: facering::complex::Generator,
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the standard checks on every .cplx file of a directory
    Batch {
        dir: PathBuf,
        /// Report directory (default: <dir>/reports)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad window start `{a}`"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad window end `{b}`"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok((a, b))
}

/// Runs the command line `args` (including the program name) and collects its output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => commands::dispatch(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

//! `gkm`: structure constants, brackets, tables and verification suites for
//! current algebras on the circle, torus and sphere.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 semantic
//! error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "gkm",
    version,
    about = "Exact Kac-Moody and Virasoro structure constants on the circle, torus and sphere"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Base algebra, su2 through su6.
    #[arg(long, default_value = "su2")]
    pub algebra: String,
    /// circle, torus or sphere.
    #[arg(long)]
    pub manifold: Option<String>,
    /// Use the Virasoro extension of the current algebra.
    #[arg(long)]
    pub virasoro: bool,
    /// Uniform cutoff for every mode label.
    #[arg(long)]
    pub cutoff: Option<u32>,
    #[arg(long)]
    pub lmax: Option<u32>,
    #[arg(long)]
    pub mmax: Option<u32>,
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Tolerance for the floating-point oracle suites.
    #[arg(long)]
    pub tol: Option<f64>,
    /// json, csv or text (tables default to json, everything else to text).
    #[arg(long)]
    pub format: Option<String>,
    /// Write the report or table here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere structure coefficient c_{l1 m1 l2 m2}^{l3}, exact and by quadrature.
    Coeff {
        l1: u32,
        #[arg(allow_hyphen_values = true)]
        m1: i32,
        l2: u32,
        #[arg(allow_hyphen_values = true)]
        m2: i32,
        l3: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Bracket of two generators or elements.
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Run a verification suite: jacobi, cocycle, grading, affine, serre, orth or oracle.
    Verify {
        suite: String,
        /// Generators in the Cartan-Weyl basis instead of the hermitian one.
        #[arg(long)]
        cartan_weyl: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Export the bracket table of all enumerated generator pairs.
    Table {
        /// Dump the base algebra (structure constants, Cartan matrix) instead.
        #[arg(long)]
        base: bool,
        #[command(flatten)]
        common: Common,
    },
    /// CSV of exact and quadrature structure coefficients with l1, l2, l3 <= lmax.
    OracleDiff {
        #[arg(long, default_value_t = 6)]
        lmax: u32,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate every Serre relation and list the residuals as JSON.
    SerreCheck {
        #[arg(long, default_value = "su3")]
        algebra: String,
        /// css (two modes, Cartan matrix) or caff (one mode, affine Cartan matrix).
        #[arg(long, default_value = "css")]
        presentation: String,
        #[arg(long, default_value_t = 1)]
        cutoff: u32,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    let result = match cli.command {
        Command::Coeff { l1, m1, l2, m2, l3, format } => commands::coeff(l1, m1, l2, m2, l3, &format),
        Command::Bracket { common, x, y } => commands::bracket(&common, &x, &y),
        Command::Verify { suite, cartan_weyl, common } => commands::verify(&suite, cartan_weyl, &common),
        Command::Table { base, common } => commands::table(base, &common, cli.workers),
        Command::OracleDiff { lmax, out } => commands::oracle_diff(lmax, out.as_deref()),
        Command::SerreCheck { algebra, presentation, cutoff, out } => {
            commands::serre_check(&algebra, &presentation, cutoff, out.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gkm: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

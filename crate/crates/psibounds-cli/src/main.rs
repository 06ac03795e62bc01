//! Command-line front end: evaluate the digamma-family kernels, print
//! certified enclosures, run the verification suite, and export the
//! harmonic bound table.
//!
//! Exit codes: 0 on success (and all-pass for `verify`), 1 when
//! verification finds a failing property, 2 for usage and domain
//! errors. Nothing else.

mod format;

use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use format::{compact17, fixed17};
use psibounds::bounds::{harmonic_enclosure, psi_enclosure, HarmonicIndex};
use psibounds::kernel::{self, KernelConfig, PositiveAbscissa};
use psibounds::oracle::HarmonicSweep;
use psibounds::verifier::{run_all, GridSpec, Spacing, VerifierConfig};

#[derive(Parser)]
#[command(
    name = "psibounds",
    version,
    about = "Digamma-family kernels with certified interval enclosures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Func {
    /// psi(x), the logarithmic derivative of the gamma function
    Digamma,
    /// psi'(x)
    Trigamma,
    /// psi''(x)
    Tetragamma,
    /// phi(x) = psi(x) + ln(e^(1/x) - 1)
    Phi,
    /// f(x) = exp(phi(x))
    F,
    /// f'(x) = h(x+1) - h(x) with h = exp(psi) psi'
    Fprime,
    /// psi'(x)^2 + psi''(x)
    Positivity,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one kernel at a point
    Eval {
        /// Which kernel to evaluate
        #[arg(long = "fn", value_enum)]
        func: Func,
        /// Evaluation point, must be > 0
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Print a certified enclosure for psi(x) or H_n
    Bound {
        /// Enclosure of psi(x); needs --x
        #[arg(long, group = "kind", requires = "x")]
        psi: bool,
        /// Enclosure of the harmonic number H_n; needs --n
        #[arg(long, group = "kind", requires = "n")]
        harmonic: bool,
        /// Abscissa for --psi
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// Index for --harmonic
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Run the verification suite and print one line per property
    Verify {
        /// Lower end of the main evaluation grid
        #[arg(long, default_value_t = 1e-3)]
        grid_start: f64,
        /// Upper end of the main evaluation grid
        #[arg(long, default_value_t = 1e3)]
        grid_stop: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 100_000)]
        points: usize,
        /// Harmonic indices checked against their enclosure
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
    },
    /// Write the harmonic bound table as CSV
    Table {
        /// Last row of the table
        #[arg(long)]
        n_max: u64,
        /// Output path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    // Clap itself exits with code 2 on usage errors.
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Eval { func, x } => cmd_eval(func, x),
        Command::Bound {
            psi,
            harmonic,
            x,
            n,
        } => cmd_bound(psi, harmonic, x, n),
        Command::Verify {
            grid_start,
            grid_stop,
            points,
            n_max,
        } => cmd_verify(grid_start, grid_stop, points, n_max),
        Command::Table { n_max, out } => cmd_table(n_max, &out),
    }
}

fn cmd_eval(func: Func, x: f64) -> Result<u8, String> {
    let a = PositiveAbscissa::new(x).map_err(|e| e.to_string())?;
    let cfg = KernelConfig::default();
    let value = match func {
        Func::Digamma => kernel::digamma(a, &cfg),
        Func::Trigamma => kernel::trigamma(a, &cfg),
        Func::Tetragamma => kernel::tetragamma(a, &cfg),
        Func::Phi => kernel::phi(a, &cfg),
        Func::F => kernel::f_func(a, &cfg),
        Func::Fprime => kernel::f_prime(a, &cfg).map_err(|e| e.to_string())?,
        Func::Positivity => kernel::positivity_expr(a, &cfg),
    };
    println!("{value:e}");
    Ok(0)
}

fn cmd_bound(psi: bool, harmonic: bool, x: Option<f64>, n: Option<i64>) -> Result<u8, String> {
    if psi == harmonic {
        return Err("choose exactly one of --psi or --harmonic".to_string());
    }
    if psi {
        let x = x.expect("clap enforces --x with --psi");
        let a = PositiveAbscissa::new(x).map_err(|e| e.to_string())?;
        let iv = psi_enclosure(a).map_err(|e| e.to_string())?;
        println!("({}, {})", fixed17(iv.lo()), fixed17(iv.hi()));
    } else {
        let n = n.expect("clap enforces --n with --harmonic");
        if n < 1 {
            return Err(format!("n must be >= 1 (got {n})"));
        }
        let idx = HarmonicIndex::new(n as u64).map_err(|e| e.to_string())?;
        let iv = harmonic_enclosure(idx);
        println!("{} <= H_{} < {}", fixed17(iv.lo()), n, fixed17(iv.hi()));
    }
    Ok(0)
}

fn cmd_verify(grid_start: f64, grid_stop: f64, points: usize, n_max: u64) -> Result<u8, String> {
    let config = VerifierConfig {
        grid: GridSpec {
            start: grid_start,
            stop: grid_stop,
            count: points,
            spacing: Spacing::Log,
        },
        n_max,
        ..VerifierConfig::default()
    };
    let reports = run_all(&config).map_err(|e| e.to_string())?;
    let mut all_passed = true;
    for report in &reports {
        println!("{}", report.line());
        all_passed &= report.passed;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_table(n_max: u64, out: &PathBuf) -> Result<u8, String> {
    if n_max < 1 {
        return Err(format!("n must be >= 1 (got {n_max})"));
    }
    let file = std::fs::File::create(out)
        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    let mut w = BufWriter::new(file);
    let io = |e: std::io::Error| format!("cannot write {}: {e}", out.display());
    writeln!(w, "n,H_exact,lower,upper,slack_lower,slack_upper").map_err(io)?;
    let mut sweep = HarmonicSweep::with_cap(n_max);
    for n in 1..=n_max {
        sweep.advance().map_err(|e| e.to_string())?;
        let h = sweep.value_f64();
        let idx = HarmonicIndex::new(n).expect("n >= 1");
        let iv = harmonic_enclosure(idx);
        writeln!(
            w,
            "{},{},{},{},{},{}",
            n,
            compact17(h),
            compact17(iv.lo()),
            compact17(iv.hi()),
            compact17(h - iv.lo()),
            compact17(iv.hi() - h)
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(0)
}

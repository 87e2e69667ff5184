//! The `kneser` command line: `construct`, `verify`, `stats`, `base import`
//! and `base search`.
//!
//! Exit codes: 0 success, 1 verification failed (or I/O trouble writing
//! output), 2 invalid parameters or unparsable input, 3 base case
//! unavailable, 4 a constructed object failed its own verification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bitcore::binomial;
use crate::derive::{
    bipartite_hamilton, coverage_fraction, kneser_cycle, qnk_cycle, HCycleCertificate,
};
use crate::error::Error;
use crate::format::CertificateFile;
use crate::lemma::LemmaStructure;
use crate::middle_levels::{
    import_certificate, solve_base, BaseCaseProvider, CertificateDirProvider, ChainProvider,
    SearchProvider,
};
use crate::verify::{verify_certificate, verify_lemma_structure, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PROVIDER: i32 = 3;
pub const EXIT_SELF_CHECK: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "kneser",
    version,
    about = "Hamilton cycles in Kneser-type graphs, with certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a cycle certificate.
    Construct(ConstructArgs),
    /// Check a certificate file or LEMMA dump.
    Verify { path: PathBuf },
    /// Print vertex counts, cycle lengths and the Kneser coverage fraction.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Manage middle-levels base certificates in $KNESER_BASE_DIR.
    #[command(subcommand)]
    Base(BaseCommand),
}

#[derive(Subcommand, Debug)]
pub enum BaseCommand {
    /// Validate a MID certificate and install it.
    Import { path: PathBuf },
    /// Search for a middle-levels cycle and install it.
    Search {
        #[arg(long)]
        k: usize,
        /// Seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    H,
    K,
    Q,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Bits,
    Sets,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub graph: GraphArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Bits)]
    pub format: OutputFormat,
    /// Seconds allowed for a base-case search when no certificate is installed.
    #[arg(long, default_value_t = 60)]
    pub budget: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match cli.command {
        Command::Construct(args) => run_construct(&args, out, err),
        Command::Verify { path } => run_verify(&path, out, err),
        Command::Stats { n, k } => run_stats(n, k, out, err),
        Command::Base(BaseCommand::Import { path }) => run_base_import(&path, out, err),
        Command::Base(BaseCommand::Search { k, budget }) => run_base_search(k, budget, out, err),
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let code = match e {
        Error::InvalidParameters(_) | Error::Parse { .. } | Error::NotInGraph { .. } => {
            EXIT_INVALID
        }
        Error::Provider { .. } | Error::BudgetExhausted { .. } => EXIT_PROVIDER,
        Error::InvariantViolation { .. } | Error::Validation { .. } => EXIT_SELF_CHECK,
        _ => EXIT_FAIL,
    };
    let _ = writeln!(err, "error: {e}");
    code
}

fn default_provider(budget: Duration) -> impl BaseCaseProvider {
    ChainProvider::new(
        CertificateDirProvider::from_env(),
        SearchProvider::new(budget),
    )
}

/// Builds the requested certificate with the given provider.
pub fn construct_certificate(
    graph: GraphArg,
    n: usize,
    k: usize,
    provider: &dyn BaseCaseProvider,
) -> crate::error::Result<HCycleCertificate> {
    match graph {
        GraphArg::H => bipartite_hamilton(n, k, provider),
        GraphArg::K => kneser_cycle(n, k, provider),
        GraphArg::Q => qnk_cycle(n, k, provider),
    }
}

pub fn run_construct(args: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let provider = default_provider(Duration::from_secs(args.budget));
    let cert = match construct_certificate(args.graph, args.n, args.k, &provider) {
        Ok(c) => c,
        Err(e) => return report_error(err, &e),
    };
    let report = verify_certificate(&cert);
    if !report.ok {
        let _ = writeln!(err, "error: constructed certificate failed verification");
        let _ = err.write_all(report.render().as_bytes());
        return EXIT_SELF_CHECK;
    }
    let file = match cert.to_file() {
        Ok(f) => f,
        Err(e) => return report_error(err, &e),
    };
    let text = match args.format {
        OutputFormat::Bits => file.render(),
        OutputFormat::Sets => file.render_sets(),
    };
    let written = match &args.out {
        Some(path) => fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => report_error(err, &Error::Io(e)),
    }
}

/// Verifies certificate text or a `LEMMA` dump.
pub fn verify_text(text: &str) -> crate::error::Result<VerificationReport> {
    let is_dump = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .is_some_and(|l| l.split(' ').next() == Some("LEMMA"));
    if is_dump {
        return Ok(verify_lemma_structure(&LemmaStructure::parse_dump(text)?));
    }
    let file = CertificateFile::parse(text)?;
    Ok(verify_certificate(&HCycleCertificate::from_file(&file)?))
}

pub fn run_verify(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INVALID;
        }
    };
    match verify_text(&text) {
        Ok(report) => {
            let _ = out.write_all(report.render().as_bytes());
            if report.ok {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

/// The `stats` text for `(n,k)`.
pub fn stats_text(n: usize, k: usize) -> crate::error::Result<String> {
    let actual = coverage_fraction(n, k)?;
    let fraction = num_rational::Ratio::new(2 * k as u64, n as u64);
    let count = binomial(n, k).ok_or_else(|| Error::invalid("C(n,k) overflows"))?;
    let k_cycle = if k == 1 {
        n as u128
    } else {
        2 * binomial(n - 1, k - 1).ok_or_else(|| Error::invalid("C(n-1,k-1) overflows"))?
    };
    let mut text = format!(
        "H-cycle {}, K-cycle {k_cycle}, fraction {fraction}\nC({n},{k}) {count}\n",
        2 * count
    );
    if k == 1 {
        text.push_str(&format!("K({n},1) is complete: actual coverage {actual}\n"));
    }
    Ok(text)
}

pub fn run_stats(n: usize, k: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match stats_text(n, k) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => report_error(err, &e),
    }
}

pub fn run_base_import(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INVALID;
        }
    };
    let cycle = match import_certificate(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    match CertificateDirProvider::from_env().install(&cycle) {
        Ok(dest) => {
            let _ = writeln!(out, "installed k={} at {}", cycle.k(), dest.display());
            EXIT_OK
        }
        Err(e) => report_error(err, &e),
    }
}

pub fn run_base_search(k: usize, budget: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cycle = match solve_base(k, Duration::from_secs(budget)) {
        Ok(c) => c,
        Err(e @ Error::InvalidParameters(_)) => return report_error(err, &e),
        Err(e) => {
            let _ = writeln!(err, "error: no middle-levels cycle for k={k}: {e}");
            return EXIT_PROVIDER;
        }
    };
    match CertificateDirProvider::from_env().install(&cycle) {
        Ok(dest) => {
            let _ = writeln!(out, "installed k={k} at {}", dest.display());
            EXIT_OK
        }
        Err(e) => report_error(err, &e),
    }
}

//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error,
//! 3 resource refusal (state cap or table guard), 4 I/O failure.

mod output;
mod parse;
mod render;

pub use output::{
    build_output_record, diagnostics_record, AlphaValue, CheckRecord, ClassCount,
    DiagnosticEntry, DiagnosticsRecord, EdgeCensusSection, ExactDecimal, IndexSection,
    OutputRecord, PolynomialSection, TermRecord, VerificationSection,
};
pub use parse::{parse_alpha, parse_range};
pub use render::write_sweep_csv;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::indices::{default_alphas, oeis_sequence, Alpha, Sequence};
use crate::mpolynomial::literal_report;
use crate::occupancy::HanoiParams;
use crate::oracle::{verify, DEFAULT_STATE_CAP};

/// Environment override for the oracle state cap; `--cap` wins over it.
pub const STATE_CAP_ENV: &str = "HANOI_MPOLY_STATE_CAP";

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_RESOURCE: i32 = 3;
const EXIT_IO: i32 = 4;

#[derive(Parser)]
#[command(
    name = "hanoi-mpoly",
    version,
    about = "Exact M-polynomials and degree-based indices of multi-peg Tower of Hanoi graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomial, edge census, and all indices for one instance
    Compute {
        /// Number of pegs (at least 1)
        #[arg(long)]
        pegs: u32,
        /// Number of discs (0 gives the empty graph)
        #[arg(long)]
        discs: u32,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        /// Randić exponent as integer, fraction, or decimal; repeatable.
        /// Defaults to 1, -1, 1/2, -1/2
        #[arg(long = "alpha", value_name = "RATIONAL", allow_hyphen_values = true)]
        alphas: Vec<String>,
        /// Also run the brute-force check and embed its report; a mismatch
        /// exits 1
        #[arg(long)]
        verify: bool,
        /// State cap for --verify (default: HANOI_MPOLY_STATE_CAP or 2e7)
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Compare closed-form censuses against brute-force enumeration
    Verify {
        #[arg(long)]
        pegs: u32,
        #[arg(long)]
        discs: u32,
        /// Maximum p^n the enumeration may visit
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Index table over ranges of p and n, as CSV (default) or JSON
    Sweep {
        /// Peg range "A..B" or single "A", inclusive
        #[arg(long)]
        pegs: String,
        /// Disc range "A..B" or single "A", inclusive
        #[arg(long)]
        discs: String,
        #[arg(long, value_enum, default_value_t = CsvOrJson::Csv)]
        format: CsvOrJson,
        /// Append exact num/den columns to the CSV
        #[arg(long)]
        exact: bool,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer sequence terms along a parameter family, one per line
    Oeis {
        /// Sequence slug; see `--sequence help` for the list
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 8)]
        terms: u32,
    },
    /// Evaluate the published per-class coefficient formulas and flag where
    /// they diverge from the canonical census
    PaperDiagnostics {
        #[arg(long)]
        pegs: u32,
        #[arg(long)]
        discs: u32,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
}

fn exit_for(err: &Error) -> i32 {
    match err {
        Error::GuardExceeded { .. } | Error::StateCapExceeded { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Write to stdout; a reader that hung up (broken pipe) means nobody wants
/// the rest, which is not an error. `println!` would panic instead.
fn emit_stdout(text: &str) -> i32 {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => EXIT_OK,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            emit_stderr(&format!("error: {e}\n"));
            EXIT_IO
        }
    }
}

/// Best-effort diagnostics; a closed stderr must not panic the process.
fn emit_stderr(text: &str) {
    let _ = io::stderr().lock().write_all(text.as_bytes());
}

fn fail(err: &Error) -> i32 {
    emit_stderr(&format!("error: {err}\n"));
    exit_for(err)
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, i32> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(STATE_CAP_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            emit_stderr(&format!(
                "error: {STATE_CAP_ENV}={raw:?} is not a nonnegative integer\n"
            ));
            EXIT_USAGE
        }),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn resolve_alphas(raw: &[String]) -> Result<Vec<Alpha>, i32> {
    if raw.is_empty() {
        return Ok(default_alphas());
    }
    raw.iter()
        .map(|s| parse_alpha(s).map_err(|e| fail(&e)))
        .collect()
}

fn print_json<T: serde::Serialize>(value: &T) -> i32 {
    match serde_json::to_string_pretty(value) {
        Ok(mut text) => {
            text.push('\n');
            emit_stdout(&text)
        }
        Err(err) => {
            emit_stderr(&format!("error: {err}\n"));
            EXIT_IO
        }
    }
}

fn cmd_compute(
    pegs: u32,
    discs: u32,
    format: TextOrJson,
    alphas: &[String],
    run_verify: bool,
    cap: Option<u64>,
) -> i32 {
    let params = match HanoiParams::new(pegs, discs) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let alphas = match resolve_alphas(alphas) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let verification = if run_verify {
        let cap = match resolve_cap(cap) {
            Ok(c) => c,
            Err(code) => return code,
        };
        match verify(&params, cap) {
            Ok(report) => Some(report),
            Err(e) => return fail(&e),
        }
    } else {
        None
    };
    let record = match build_output_record(&params, &alphas, verification.as_ref()) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let code = match format {
        TextOrJson::Text => emit_stdout(&render::compute_text(&record)),
        TextOrJson::Json => print_json(&record),
    };
    if code == EXIT_OK {
        if let Some(report) = &verification {
            if !report.passed() {
                return EXIT_MISMATCH;
            }
        }
    }
    code
}

fn cmd_verify(pegs: u32, discs: u32, cap: Option<u64>) -> i32 {
    let params = match HanoiParams::new(pegs, discs) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let cap = match resolve_cap(cap) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match verify(&params, cap) {
        Ok(report) => {
            let code = emit_stdout(&render::verify_text(&report));
            if code != EXIT_OK {
                code
            } else if report.passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => fail(&e),
    }
}

fn cmd_sweep(
    pegs: &str,
    discs: &str,
    format: CsvOrJson,
    exact: bool,
    out: Option<&PathBuf>,
) -> i32 {
    let peg_range = match parse_range(pegs) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let disc_range = match parse_range(discs) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let alphas = default_alphas();
    let mut records = Vec::new();
    for p in peg_range {
        for n in disc_range.clone() {
            let params = match HanoiParams::new(p, n) {
                Ok(h) => h,
                Err(e) => return fail(&e),
            };
            match build_output_record(&params, &alphas, None) {
                Ok(r) => records.push(r),
                Err(e) => return fail(&e),
            }
        }
    }
    let result: io::Result<()> = match out {
        Some(path) => File::create(path)
            .and_then(|file| emit_sweep(file, &records, format, exact))
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
        None => emit_sweep(io::stdout().lock(), &records, format, exact),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(err) if err.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(err) => {
            emit_stderr(&format!("error: {err}\n"));
            EXIT_IO
        }
    }
}

/// Unwrap the serializer's wrapper so pipe hangups keep their error kind.
fn csv_to_io(err: csv::Error) -> io::Error {
    if err.is_io_error() {
        match err.into_kind() {
            csv::ErrorKind::Io(e) => e,
            _ => unreachable!("is_io_error guarantees an Io kind"),
        }
    } else {
        io::Error::other(err)
    }
}

fn emit_sweep<W: Write>(
    writer: W,
    records: &[OutputRecord],
    format: CsvOrJson,
    exact: bool,
) -> io::Result<()> {
    match format {
        CsvOrJson::Csv => write_sweep_csv(writer, records, exact).map_err(csv_to_io),
        CsvOrJson::Json => {
            let mut writer = writer;
            serde_json::to_writer_pretty(&mut writer, records)?;
            writeln!(writer)
        }
    }
}

fn cmd_oeis(sequence: &str, terms: u32) -> i32 {
    let seq: Sequence = match sequence.parse() {
        Ok(s) => s,
        Err(e) => {
            let mut msg = format!("error: {e}\nknown sequences:\n");
            for s in Sequence::ALL {
                let _ = writeln!(msg, "  {:<16} {}", s.slug(), s.description());
            }
            emit_stderr(&msg);
            return EXIT_USAGE;
        }
    };
    match oeis_sequence(seq, terms) {
        Ok(values) => {
            let mut lines = String::new();
            for v in values {
                let _ = writeln!(lines, "{v}");
            }
            emit_stdout(&lines)
        }
        Err(e) => fail(&e),
    }
}

fn cmd_diagnostics(pegs: u32, discs: u32, format: TextOrJson) -> i32 {
    let params = match HanoiParams::new(pegs, discs) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    match literal_report(&params) {
        Ok(report) => {
            let record = diagnostics_record(&report);
            match format {
                TextOrJson::Text => emit_stdout(&render::diagnostics_text(&record)),
                TextOrJson::Json => print_json(&record),
            }
        }
        Err(e) => fail(&e),
    }
}

/// Parse the process arguments, run the requested command, and return the
/// exit code for `std::process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on bad usage and 0 for --help/--version.
        Err(err) => err.exit(),
    };
    match cli.command {
        Command::Compute {
            pegs,
            discs,
            format,
            alphas,
            verify,
            cap,
        } => cmd_compute(pegs, discs, format, &alphas, verify, cap),
        Command::Verify { pegs, discs, cap } => cmd_verify(pegs, discs, cap),
        Command::Sweep {
            pegs,
            discs,
            format,
            exact,
            out,
        } => cmd_sweep(&pegs, &discs, format, exact, out.as_ref()),
        Command::Oeis { sequence, terms } => cmd_oeis(&sequence, terms),
        Command::PaperDiagnostics {
            pegs,
            discs,
            format,
        } => cmd_diagnostics(pegs, discs, format),
    }
}

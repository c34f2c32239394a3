//! `ucayley`: spectra, polynomials and structural checks for unitary Cayley
//! graphs from the command line.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ucayley::arith::factorize;
use ucayley::coherent;
use ucayley::graphs::{self, unitary_graph};
use ucayley::polynomials;
use ucayley::spectra;
use ucayley::sweep;
use ucayley::Error;

/// Largest order accepted by the closed-form commands.
const MAX_ORDER: u64 = 1_000_000;
/// Default ceiling for commands that materialise the graph.
const ORACLE_CEILING: u64 = 128;
/// Characteristic polynomials are expanded only up to this order.
const EXPAND_LIMIT: u64 = 1024;
/// The integral check confirms the spectrum splits over Z up to this order.
const INTEGRAL_ORACLE_LIMIT: u64 = 64;

#[derive(Parser)]
#[command(name = "ucayley", version, about = "Exact spectral computations on unitary Cayley graphs X_n")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the output to a file instead of stdout. For `verify` the JSON
    /// report goes to the file and a summary to stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Raise the order ceiling for oracle-backed commands (default 128, or
    /// 64 for `verify`).
    #[arg(long, global = true)]
    max_n: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues with multiplicities.
    Spectrum {
        #[arg(value_parser = order())]
        n: u64,
    },
    /// Characteristic polynomial, factored and (for small n) expanded.
    Charpoly {
        #[arg(value_parser = order())]
        n: u64,
    },
    /// Minimal polynomial in factored form.
    Minpoly {
        #[arg(value_parser = order())]
        n: u64,
    },
    /// Determinant of the adjacency matrix.
    Det {
        #[arg(value_parser = order())]
        n: u64,
    },
    /// Check a structural property by brute force against its prediction.
    Check {
        #[arg(value_parser = order())]
        n: u64,
        #[arg(value_enum)]
        property: Property,
    },
    /// The 0/1 basis of the adjacency algebra and its dimension checks.
    Basis {
        #[arg(value_parser = order())]
        n: u64,
    },
    /// Run every cross-check for each n in a range.
    Verify {
        #[arg(value_parser = order())]
        n_min: u64,
        #[arg(value_parser = order())]
        n_max: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Dr,
    Srg,
    Bipartite,
    Complete,
    Crown,
    Singular,
    Integral,
}

fn order() -> clap::builder::RangedU64ValueParser {
    clap::value_parser!(u64).range(1..=MAX_ORDER)
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Zero | Error::TooLarge { .. } | Error::TooSmall { .. } => Failure::Usage(e.to_string()),
            other => Failure::Mismatch(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Text for the primary output plus whether a verification disagreed.
struct Outcome {
    text: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, mismatch: false }
    }
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether any verification disagreed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Command::Verify { n_min, n_max } = cli.command {
        return verify(cli, n_min, n_max);
    }
    let out = match cli.command {
        Command::Spectrum { n } => spectrum(cli.format, n)?,
        Command::Charpoly { n } => charpoly(cli.format, n)?,
        Command::Minpoly { n } => minpoly(cli.format, n)?,
        Command::Det { n } => det(cli.format, n)?,
        Command::Check { n, property } => check(cli.format, n, property, ceiling(cli, ORACLE_CEILING)?)?,
        Command::Basis { n } => basis(cli.format, n, ceiling(cli, ORACLE_CEILING)?)?,
        Command::Verify { .. } => unreachable!(),
    };
    emit(cli, &out.text)?;
    Ok(out.mismatch)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn ceiling(cli: &Cli, default: u64) -> Result<u64, Failure> {
    match cli.max_n {
        None => Ok(default),
        Some(0) => Err(Failure::Usage("--max-n must be positive".into())),
        Some(m) => {
            if m > default {
                eprintln!("warning: --max-n {m} lifts the default ceiling of {default}; oracle checks may be slow");
            }
            Ok(m)
        }
    }
}

fn guard(n: u64, limit: u64, what: &str) -> Result<(), Failure> {
    if n > limit {
        Err(Failure::Usage(format!(
            "{what} materialises the graph; n = {n} exceeds the ceiling {limit} (raise it with --max-n)"
        )))
    } else {
        Ok(())
    }
}

fn spectrum(format: Format, n: u64) -> Result<Outcome, Failure> {
    let s = spectra::unitary_spectrum(n)?;
    Ok(Outcome::ok(match format {
        Format::Table => render::spectrum_table(&s),
        Format::Json => line(s.to_json()),
    }))
}

fn charpoly(format: Format, n: u64) -> Result<Outcome, Failure> {
    let s = spectra::unitary_spectrum(n)?;
    let factored = render::factored(&s.pairs);
    let expanded = (n <= EXPAND_LIMIT).then(|| s.characteristic_polynomial());
    Ok(Outcome::ok(match format {
        Format::Table => {
            let second = match &expanded {
                Some(p) => format!("expanded: {p}"),
                None => format!("expanded: omitted for n > {EXPAND_LIMIT}"),
            };
            format!("factored: {factored}\n{second}\n")
        }
        Format::Json => {
            let coefficients = expanded
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            line(json!({ "n": n, "factored": factored, "coefficients": coefficients }).to_string())
        }
    }))
}

fn minpoly(format: Format, n: u64) -> Result<Outcome, Failure> {
    let s = spectra::unitary_spectrum(n)?;
    let roots: Vec<(i64, u64)> = s.pairs.iter().map(|&(v, _)| (v, 1)).collect();
    let factored = render::factored(&roots);
    Ok(Outcome::ok(match format {
        Format::Table => line(factored),
        Format::Json => {
            let p = s.minimal_polynomial();
            let coefficients: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            line(
                json!({ "n": n, "degree": roots.len(), "factored": factored, "coefficients": coefficients })
                    .to_string(),
            )
        }
    }))
}

fn det(format: Format, n: u64) -> Result<Outcome, Failure> {
    let d = spectra::determinant_closed(n)?;
    Ok(Outcome::ok(match format {
        Format::Table => line(d.to_string()),
        Format::Json => line(json!({ "n": n, "determinant": d.to_string() }).to_string()),
    }))
}

struct Verdict {
    name: &'static str,
    observed: bool,
    predicted: bool,
    agree: bool,
    text: String,
}

fn check(format: Format, n: u64, property: Property, limit: u64) -> Result<Outcome, Failure> {
    guard(n, limit, "check")?;
    let f = factorize(n)?;
    let nu = n as usize;
    let g = unitary_graph(nu)?;
    let twice_odd_prime = f.is_twice_odd_prime();
    let tag = |agree: bool| if agree { "AGREE" } else { "DISAGREE" };
    let standard = |name, observed: bool, rule: &str, predicted: bool| Verdict {
        name,
        observed,
        predicted,
        agree: observed == predicted,
        text: format!(
            "brute-force: {observed}; characterization ({rule}): {predicted}; {}",
            tag(observed == predicted)
        ),
    };
    let v = match property {
        Property::Dr => standard(
            "dr",
            graphs::is_distance_regular(&g).is_distance_regular(),
            "prime power or 2p",
            f.is_prime_power() || (n.is_multiple_of(2) && factorize(n / 2)?.is_prime()),
        ),
        Property::Srg => {
            let observed = graphs::is_strongly_regular_combinatorial(&g).is_some();
            let spectral = sweep::spectral_srg(&spectra::unitary_spectrum(n)?, &g);
            let predicted = f.is_prime_power() && !f.is_prime();
            let agree = observed == spectral && spectral == predicted;
            Verdict {
                name: "srg",
                observed,
                predicted,
                agree,
                text: format!(
                    "brute-force: {observed}; spectral (three distinct eigenvalues): {spectral}; \
                     characterization (prime power, not prime): {predicted}; {}",
                    tag(agree)
                ),
            }
        }
        Property::Bipartite => standard("bipartite", graphs::is_bipartite(&g), "n even", n.is_multiple_of(2)),
        Property::Complete => standard("complete", graphs::is_complete(&g), "n prime", f.is_prime()),
        Property::Crown => standard("crown", graphs::is_crown(&g), "2p, p odd prime", twice_odd_prime),
        Property::Singular => {
            let observed = polynomials::is_singular_circulant(&polynomials::representer(n, n)?, n)?;
            let predicted = !f.is_square_free();
            let reason = if predicted { "not square-free" } else { "square-free" };
            let mut text = format!("singular: {observed} ({n} {reason})");
            if observed != predicted {
                text.push_str("; DISAGREE");
            }
            Verdict { name: "singular", observed, predicted, agree: observed == predicted, text }
        }
        Property::Integral => {
            let span = coherent::span_membership(&g)?;
            let splits = if n <= INTEGRAL_ORACLE_LIMIT {
                let p = spectra::oracle_char_poly(&g)?;
                let (_, rest) = spectra::integer_roots(&p, f.euler_phi() as i64);
                Some(rest.degree() == Some(0))
            } else {
                None
            };
            let observed = span && splits.unwrap_or(true);
            let splits_text = match splits {
                Some(b) => b.to_string(),
                None => format!("not computed above n = {INTEGRAL_ORACLE_LIMIT}"),
            };
            Verdict {
                name: "integral",
                observed,
                predicted: true,
                agree: observed,
                text: format!(
                    "gcd-class span: {span}; spectrum splits over Z: {splits_text}; \
                     characterization (every X_n): true; {}",
                    tag(observed)
                ),
            }
        }
    };
    let mismatch = !v.agree;
    let text = match format {
        Format::Table => line(v.text),
        Format::Json => line(
            json!({
                "n": n,
                "property": v.name,
                "verdict": v.observed,
                "prediction": v.predicted,
                "agree": !mismatch,
                "detail": v.text,
            })
            .to_string(),
        ),
    };
    Ok(Outcome { text, mismatch })
}

fn basis(format: Format, n: u64, limit: u64) -> Result<Outcome, Failure> {
    guard(n, limit, "basis")?;
    if n < 2 {
        return Err(Failure::Usage("basis needs n >= 2".into()));
    }
    let report = coherent::verify_pattern_polynomial(n as usize)?;
    let text = match format {
        Format::Table => render::basis_table(&report),
        Format::Json => line(serde_json::to_string(&report).expect("report serialises")),
    };
    Ok(Outcome { text, mismatch: !report.pass })
}

fn verify(cli: &Cli, n_min: u64, n_max: u64) -> Result<bool, Failure> {
    if n_min > n_max {
        return Err(Failure::Usage(format!("empty range {n_min}..{n_max}")));
    }
    let limit = ceiling(cli, sweep::DEFAULT_MAX_N)?;
    if n_max > limit {
        return Err(Failure::Usage(format!(
            "n_max = {n_max} exceeds the sweep ceiling {limit} (raise it with --max-n)"
        )));
    }
    let report = sweep::run_sweep(n_min, n_max)?;
    let json = line(serde_json::to_string_pretty(&report).expect("report serialises"));
    match (&cli.output, cli.format) {
        (Some(path), _) => {
            fs::write(path, &json)?;
            print!("{}", render::sweep_table(&report));
        }
        (None, Format::Json) => print!("{json}"),
        (None, Format::Table) => print!("{}", render::sweep_table(&report)),
    }
    Ok(report.has_failures())
}

use std::fmt::Write;

use ucayley::coherent::PatternReport;
use ucayley::spectra::Spectrum;
use ucayley::sweep::{Status, SweepReport};

/// `(x - r)^m` factors with the zero root first, then roots in descending
/// order, e.g. `x*(x-6)*(x+3)`.
pub fn factored(pairs: &[(i64, u64)]) -> String {
    let mut ordered: Vec<(i64, u64)> = pairs.to_vec();
    ordered.sort_by_key(|&(root, _)| (root != 0, std::cmp::Reverse(root)));
    let factors: Vec<String> = ordered
        .iter()
        .map(|&(root, mult)| {
            let base = match root {
                0 => "x".to_string(),
                r if r > 0 => format!("(x-{r})"),
                r => format!("(x+{})", r.unsigned_abs()),
            };
            if mult == 1 {
                base
            } else {
                format!("{base}^{mult}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub fn spectrum_table(s: &Spectrum) -> String {
    let mut out = format!(
        "spectrum of X_{}: {} distinct eigenvalues\n{:>12}  {:>12}\n",
        s.n,
        s.distinct_count(),
        "eigenvalue",
        "multiplicity"
    );
    for &(value, mult) in &s.pairs {
        let _ = writeln!(out, "{value:>12}  {mult:>12}");
    }
    out
}

pub fn basis_table(report: &PatternReport) -> String {
    let mut out = format!(
        "basis of the adjacency algebra of X_{}: {} members\n",
        report.n,
        report.basis.len()
    );
    for entry in &report.basis {
        let shifts: Vec<String> = entry
            .connection_set
            .iter()
            .map(|&s| if s == 0 { "diag".to_string() } else { s.to_string() })
            .collect();
        let _ = writeln!(out, "  {:<10} {{{}}}", entry.label, shifts.join(", "));
    }
    let _ = writeln!(
        out,
        "dimensions: basis {}, coherent closure {}, distinct eigenvalues {}: {}",
        report.dim_closed_form,
        report.dim_wl,
        report.dim_spectral,
        if report.pass { "AGREE" } else { "DISAGREE" }
    );
    out
}

pub fn sweep_table(report: &SweepReport) -> String {
    let mut out = format!(
        "{:>5}  {:>7}  {:<6}  {:<12}  {}\n",
        "n", "checks", "dr", "dims", "notes"
    );
    for rec in &report.per_n {
        let run = rec.checks.iter().filter(|c| c.status != Status::Skipped).count();
        let passed = rec.checks.iter().filter(|c| c.status == Status::Pass).count();
        let dims = rec
            .dims
            .map(|(a, b, c)| format!("({a},{b},{c})"))
            .unwrap_or_else(|| "-".to_string());
        let mut notes: Vec<String> = rec.failures().map(|c| format!("FAIL {}", c.name)).collect();
        if rec.template_erratum {
            notes.push("erratum detected".to_string());
        }
        let _ = writeln!(
            out,
            "{:>5}  {:>7}  {:<6}  {:<12}  {}",
            rec.n,
            format!("{passed}/{run}"),
            rec.dr.brute_force,
            dims,
            notes.join("; ")
        );
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: {} graphs, {} checks passed, {} failed, {} skipped, {} errata",
        s.graphs, s.passed, s.failed, s.skipped, s.errata
    );
    out
}

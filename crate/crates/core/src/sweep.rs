//! Batch verification over a range of `n`: every closed form against its
//! oracle, plus the published table templates, with template mismatches
//! recorded as errata rather than failures.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize};
use crate::coherent;
use crate::error::Result;
use crate::graphs::{self, unitary_graph, IntersectionArray};
use crate::polynomials::{self, IntPoly};
use crate::spectra::{self, tables, Spectrum};

/// Default upper end of a sweep.
pub const DEFAULT_MAX_N: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrSummary {
    pub brute_force: bool,
    /// `n` is a prime power or twice an odd prime.
    pub characterization: bool,
    pub intersection_array: Option<(Vec<usize>, Vec<usize>)>,
}

/// One published spectrum template instantiated at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowCheck {
    pub row: String,
    pub multiplicity_sum: u64,
    pub sums_to_n: bool,
    pub matches_derived: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerN {
    pub n: u64,
    pub spectrum: Spectrum,
    pub checks: Vec<Check>,
    pub dr: DrSummary,
    /// (basis size, coherent-closure dimension, distinct eigenvalues).
    pub dims: Option<(usize, usize, usize)>,
    pub spectrum_templates: Vec<TableRowCheck>,
    /// Some printed spectrum template for this `n` disagrees with `c_n(i)`.
    pub template_erratum: bool,
    pub errata: Vec<String>,
}

impl PerN {
    pub fn check(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub graphs: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errata: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub range: (u64, u64),
    pub per_n: Vec<PerN>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn tally(per_n: &[PerN]) -> Summary {
        let mut s = Summary { graphs: per_n.len(), ..Summary::default() };
        for p in per_n {
            for c in &p.checks {
                match c.status {
                    Status::Pass => s.passed += 1,
                    Status::Fail => s.failed += 1,
                    Status::Skipped => s.skipped += 1,
                }
            }
            s.errata += p.errata.len();
        }
        s
    }
}

/// Names of the per-`n` checks, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "ramanujan_triple",
    "spectrum_invariants",
    "char_poly_oracle",
    "determinant",
    "minimal_polynomial",
    "nullity",
    "cyclotomic_divisibility",
    "ramanujan_poly_structure",
    "structure_predicates",
    "distance_regular",
    "strongly_regular",
    "integral_span",
    "pattern_polynomial",
    "power_expansion",
    "corrected_template",
];

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &str, status: impl Into<Status>, detail: impl Into<String>) {
        let status = status.into();
        let detail = if status == Status::Pass { String::new() } else { detail.into() };
        self.checks.push(Check { name: name.to_string(), status, detail });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.record(name, Status::Skipped, why);
    }
}

fn row_name<T: Serialize>(row: &T) -> String {
    serde_json::to_value(row)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Spectral test for strong regularity: connected, regular, exactly three
/// distinct eigenvalues.
pub fn spectral_srg(spectrum: &Spectrum, g: &graphs::DenseGraph) -> bool {
    g.regular_degree().is_some()
        && graphs::bfs_all_pairs(g).is_connected()
        && spectrum.distinct_count() == 3
}

/// Runs every check for one `n >= 2`.
pub fn verify_n(n: u64) -> Result<PerN> {
    let f = factorize(n)?;
    let nu = n as usize;
    let g = unitary_graph(nu)?;
    let spectrum = spectra::unitary_spectrum(n)?;
    let mut rec = Recorder { checks: Vec::new() };
    let mut errata = Vec::new();

    // Ramanujan sums three ways
    let mut bad = Vec::new();
    for m in 0..n {
        let closed = arith::ramanujan_closed(n, m)?;
        let divisor = arith::ramanujan_divisor_sum(n, m)?;
        let direct = arith::ramanujan_direct(n, m)?;
        if closed != divisor || closed != direct {
            bad.push(format!("m={m}: {closed}/{divisor}/{direct}"));
        }
    }
    rec.record("ramanujan_triple", bad.is_empty(), bad.join(", "));

    let eig_list = spectra::eigenvalue_list(n)?;
    let phi = f.euler_phi() as i64;
    let gamma = f.radical();
    let nonzero: u64 = spectrum.pairs.iter().filter(|p| p.0 != 0).map(|p| p.1).sum();
    let invariants_ok = spectrum.is_consistent()
        && Spectrum::from_eigenvalues(n, eig_list) == spectrum
        && spectrum.pairs.iter().all(|&(v, _)| v == 0 || phi % v == 0)
        && nonzero == gamma
        && (f.is_square_free() || (spectrum.multiplicity(1) == 0 && spectrum.multiplicity(-1) == 0))
        && (n < 3 || spectrum.largest() == Some((phi, 1)));
    rec.record("spectrum_invariants", invariants_ok, format!("{:?}", spectrum.pairs));

    let chr = spectrum.characteristic_polynomial();
    let oracle_chr = if nu <= spectra::CHAR_POLY_ORACLE_LIMIT {
        let o = spectra::oracle_char_poly(&g)?;
        rec.record("char_poly_oracle", o == chr, format!("oracle {o} vs closed {chr}"));
        Some(o)
    } else {
        rec.skip("char_poly_oracle", "above oracle limit");
        None
    };

    let det_closed = spectra::determinant_closed(n)?;
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let det_from_poly = sign * chr.coeff(0);
    if nu <= spectra::CHAR_POLY_ORACLE_LIMIT {
        let det_oracle = spectra::oracle_determinant(&g)?;
        let ok = det_closed == det_oracle && det_closed == det_from_poly && det_closed == spectrum.determinant();
        rec.record("determinant", ok, format!("closed {det_closed}, oracle {det_oracle}"));
    } else {
        rec.record("determinant", det_closed == det_from_poly, format!("closed {det_closed}"));
    }

    let min = spectrum.minimal_polynomial();
    let degree_ok = min.degree() == Some(spectra::minimal_polynomial_degree(n)? as usize);
    let divides = min.divides(&chr)?;
    if nu <= coherent::POWER_EXPANSION_LIMIT {
        let annihilates = spectra::is_zero_matrix(&spectra::evaluate_at_adjacency(&min, &g));
        rec.record("minimal_polynomial", degree_ok && divides && annihilates, format!(
            "degree ok {degree_ok}, divides {divides}, annihilates {annihilates}"
        ));
    } else {
        rec.record("minimal_polynomial", degree_ok && divides, format!("degree ok {degree_ok}, divides {divides}"));
    }

    let pa = polynomials::representer(n, n)?;
    let pgcd = polynomials::poly_gcd(&pa, &IntPoly::x_pow_minus_one(nu))?;
    let null = spectra::nullity(n)?;
    let singular = polynomials::is_singular_circulant(&pa, n)?;
    let nullity_ok = pgcd.degree() == Some(null as usize)
        && spectrum.multiplicity(0) == null
        && singular == !f.is_square_free()
        && (det_closed.is_zero() == singular);
    rec.record("nullity", nullity_ok, format!("gcd degree {:?}, nullity {null}", pgcd.degree()));

    let cyc = polynomials::cyclotomic_table(n)?;
    let phi_n = &cyc[&n];
    let shifted = &pa - &IntPoly::constant(f.moebius());
    let product = cyc.values().fold(IntPoly::one(), |acc, p| &acc * p);
    let cyc_ok = phi_n.divides(&shifted)? && product == IntPoly::x_pow_minus_one(nu) && phi_n.degree() == Some(phi as usize);
    rec.record("cyclotomic_divisibility", cyc_ok, "");

    let rn = polynomials::ramanujan_poly(n)?;
    let unit_coeffs = rn.coeffs().iter().filter(|c| c.abs().is_one()).count();
    let expected_units = if n % 2 == 1 { phi as usize } else { arith::euler_phi(n / 2)? as usize * 2 };
    let rn_ok = rn.nonzero_count() == gamma as usize
        && rn.degree() == Some((n - n / gamma) as usize)
        && (unit_coeffs > 0) == f.is_square_free()
        && (!f.is_square_free() || unit_coeffs == expected_units);
    rec.record("ramanujan_poly_structure", rn_ok, format!("R_n = {rn}"));

    let is_pow2 = n.is_power_of_two();
    let preds = [
        ("bipartite", graphs::is_bipartite(&g), n.is_multiple_of(2)),
        ("complete", graphs::is_complete(&g), f.is_prime()),
        ("complete_bipartite", graphs::is_complete_bipartite(&g), is_pow2),
        ("crown", graphs::is_crown(&g), f.is_twice_odd_prime()),
    ];
    let mismatched: Vec<&str> = preds.iter().filter(|p| p.1 != p.2).map(|p| p.0).collect();
    rec.record("structure_predicates", mismatched.is_empty(), mismatched.join(", "));

    let verdict = graphs::is_distance_regular(&g);
    let characterization = f.is_prime_power() || f.is_twice_odd_prime();
    let dr = DrSummary {
        brute_force: verdict.is_distance_regular(),
        characterization,
        intersection_array: verdict
            .intersection_array()
            .map(|IntersectionArray { b, c }| (b.clone(), c.clone())),
    };
    rec.record("distance_regular", dr.brute_force == characterization, format!(
        "brute force {}, characterization {characterization}", dr.brute_force
    ));

    let srg_comb = graphs::is_strongly_regular_combinatorial(&g).is_some();
    let srg_spec = spectral_srg(&spectrum, &g);
    let srg_pred = f.is_prime_power() && !f.is_prime();
    rec.record("strongly_regular", srg_comb == srg_spec && srg_spec == srg_pred, format!(
        "combinatorial {srg_comb}, spectral {srg_spec}"
    ));

    if nu <= coherent::SPAN_LIMIT {
        let in_span = coherent::span_membership(&g)?;
        let (roots, rest) = oracle_chr
            .as_ref()
            .map(|p| spectra::integer_roots(p, phi))
            .unwrap_or_else(|| spectra::integer_roots(&chr, phi));
        let integral = rest.degree() == Some(0) && roots.total_multiplicity() == n;
        rec.record("integral_span", in_span && integral, format!("span {in_span}, splits {integral}"));
    } else {
        rec.skip("integral_span", "above span limit");
    }

    let mut dims = None;
    if nu <= coherent::WL_LIMIT {
        let report = coherent::verify_pattern_polynomial(nu)?;
        dims = Some((report.dim_closed_form, report.dim_wl, report.dim_spectral));
        rec.record("pattern_polynomial", report.pass, format!("dims {dims:?}"));
    } else {
        rec.skip("pattern_polynomial", "above coherent-closure limit");
    }

    if nu <= coherent::POWER_EXPANSION_LIMIT {
        rec.record("power_expansion", coherent::power_expansion_check(nu)?, "");
    } else {
        rec.skip("power_expansion", "above power-expansion limit");
    }

    let mut spectrum_templates = Vec::new();
    for row in tables::printed_spectra(n)? {
        let name = row_name(&row.row);
        let check = TableRowCheck {
            multiplicity_sum: row.spectrum.total_multiplicity(),
            sums_to_n: row.spectrum.total_multiplicity() == n,
            matches_derived: row.spectrum == spectrum,
            row: name.clone(),
        };
        if !check.matches_derived {
            errata.push(format!(
                "erratum detected: spectrum template {name} gives multiplicities summing to {}{}",
                check.multiplicity_sum,
                if check.sums_to_n { " but the wrong eigenvalues" } else { "" }
            ));
        }
        spectrum_templates.push(check);
    }
    let template_erratum = spectrum_templates.iter().any(|r| !r.matches_derived);
    match tables::corrected_not_square_free(n)? {
        Some(corrected) => rec.record(
            "corrected_template",
            corrected == spectrum,
            format!("{:?}", corrected.pairs),
        ),
        None => rec.skip("corrected_template", "square-free"),
    }

    for row in tables::printed_polynomials(n)? {
        let name = row_name(&row.row);
        if row.minimal != min {
            errata.push(format!("erratum detected: minimal-polynomial template {name} gives {}", row.minimal));
        }
        if row.characteristic != chr {
            errata.push(format!(
                "erratum detected: characteristic-polynomial template {name} has degree {:?}",
                row.characteristic.degree()
            ));
        }
    }

    Ok(PerN {
        n,
        spectrum,
        checks: rec.checks,
        dr,
        dims,
        spectrum_templates,
        template_erratum,
        errata,
    })
}

/// Verifies every `n` in `n_min..=n_max` (clamped below at 2) in ascending
/// order.
pub fn run_sweep(n_min: u64, n_max: u64) -> Result<SweepReport> {
    run_sweep_with_progress(n_min, n_max, |_, _| {})
}

/// Like [`run_sweep`], calling `progress(n, seconds)` after each `n`.
pub fn run_sweep_with_progress(
    n_min: u64,
    n_max: u64,
    mut progress: impl FnMut(u64, f64),
) -> Result<SweepReport> {
    let lo = n_min.max(2);
    let mut per_n = Vec::new();
    for n in lo..=n_max {
        let start = Instant::now();
        per_n.push(verify_n(n)?);
        progress(n, start.elapsed().as_secs_f64());
    }
    let summary = SweepReport::tally(&per_n);
    Ok(SweepReport { range: (lo, n_max), per_n, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_n_passes() {
        let r = verify_n(6).unwrap();
        assert_eq!(r.failures().count(), 0, "{:?}", r.checks);
        assert_eq!(r.dims, Some((4, 4, 4)));
        assert!(r.dr.brute_force);
        assert!(!r.template_erratum);
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES);
    }

    #[test]
    fn twelve_flags_the_table() {
        let r = verify_n(12).unwrap();
        assert_eq!(r.failures().count(), 0, "{:?}", r.checks);
        assert!(r.template_erratum);
        assert_eq!(r.spectrum_templates[0].multiplicity_sum, 18);
        assert_eq!(r.check("corrected_template"), Some(Status::Pass));
        assert!(!r.dr.brute_force && !r.dr.characterization);
    }

    #[test]
    fn summary_matches_tallies() {
        let report = run_sweep(2, 10).unwrap();
        assert_eq!(report.per_n.len(), 9);
        assert_eq!(report.summary, SweepReport::tally(&report.per_n));
        assert_eq!(report.summary.passed + report.summary.skipped, 9 * CHECK_NAMES.len());
        let back: SweepReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(back, report);
    }
}

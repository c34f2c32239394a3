//! Spectrum, characteristic and minimal polynomials, determinant and
//! nullity of `X_n`, together with the exact matrix oracles that check
//! them.
//!
//! The spectrum is always derived from the Ramanujan sums `c_n(i)`. The
//! published row templates for special families of `n` live in
//! [`tables`] as fixtures to be checked, never as a source of truth.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize};
use crate::error::{Error, Result};
use crate::graphs::DenseGraph;
use crate::polynomials::IntPoly;

/// Size guard for [`oracle_char_poly`].
pub const CHAR_POLY_ORACLE_LIMIT: usize = 256;
/// Size guard for [`oracle_determinant`].
pub const DETERMINANT_ORACLE_LIMIT: usize = 1024;

/// Multiset of integer eigenvalues as `(value, multiplicity)` pairs with
/// strictly increasing values.
///
/// Eigenvalues of `X_n` are Ramanujan sums, bounded by `phi(n)` in absolute
/// value, so `i64` holds them exactly for every `n` representable here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: u64,
    pub pairs: Vec<(i64, u64)>,
}

impl Spectrum {
    /// Groups arbitrary `(value, multiplicity)` pairs, summing repeats and
    /// dropping zero multiplicities.
    pub fn from_pairs(n: u64, pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut grouped: BTreeMap<i64, u64> = BTreeMap::new();
        for (v, m) in pairs {
            *grouped.entry(v).or_default() += m;
        }
        Spectrum {
            n,
            pairs: grouped.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    pub fn from_eigenvalues(n: u64, values: impl IntoIterator<Item = i64>) -> Self {
        Spectrum::from_pairs(n, values.into_iter().map(|v| (v, 1)))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    pub fn trace(&self) -> i128 {
        self.pairs.iter().map(|&(v, m)| v as i128 * m as i128).sum()
    }

    pub fn distinct_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn multiplicity(&self, value: i64) -> u64 {
        self.pairs
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0, |&(_, m)| m)
    }

    pub fn largest(&self) -> Option<(i64, u64)> {
        self.pairs.last().copied()
    }

    /// Multiplicities sum to `n`, values strictly increase, trace is zero.
    pub fn is_consistent(&self) -> bool {
        self.total_multiplicity() == self.n
            && self.pairs.windows(2).all(|w| w[0].0 < w[1].0)
            && self.trace() == 0
    }

    pub fn characteristic_polynomial(&self) -> IntPoly {
        IntPoly::from_roots(self.pairs.iter().map(|&(v, m)| (v, m as usize)))
    }

    pub fn minimal_polynomial(&self) -> IntPoly {
        IntPoly::from_roots(self.pairs.iter().map(|&(v, _)| (v, 1)))
    }

    pub fn determinant(&self) -> BigInt {
        self.pairs.iter().fold(BigInt::one(), |acc, &(v, m)| {
            acc * num_traits::pow(BigInt::from(v), m as usize)
        })
    }

    /// Canonical JSON, e.g. `{"n":12,"pairs":[[-4,1],[-2,2],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serialises")
    }
}

/// `lambda_i = c_n(i)` for `0 <= i < n`, in index order.
pub fn eigenvalue_list(n: u64) -> Result<Vec<i64>> {
    (0..n).map(|i| arith::ramanujan_closed(n, i)).collect()
}

/// Spectrum of `X_n`. Since `c_n(i)` depends only on `d = gcd(i, n)`, each
/// divisor contributes `c_n(d)` with multiplicity `phi(n/d)`.
pub fn unitary_spectrum(n: u64) -> Result<Spectrum> {
    let f = factorize(n)?;
    let mut pairs = Vec::new();
    for d in f.divisors() {
        pairs.push((arith::ramanujan_closed(n, d)?, arith::euler_phi(n / d)?));
    }
    Ok(Spectrum::from_pairs(n, pairs))
}

pub fn characteristic_polynomial(n: u64) -> Result<IntPoly> {
    Ok(unitary_spectrum(n)?.characteristic_polynomial())
}

pub fn minimal_polynomial(n: u64) -> Result<IntPoly> {
    Ok(unitary_spectrum(n)?.minimal_polynomial())
}

/// Predicted degree of the minimal polynomial: `tau(n)` for square-free
/// `n`, `tau(gamma(n)) + 1` otherwise.
pub fn minimal_polynomial_degree(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(if f.is_square_free() {
        f.tau()
    } else {
        factorize(f.radical())?.tau() + 1
    })
}

/// The determinant by case analysis on the shape of `n`.
pub fn determinant_closed(n: u64) -> Result<BigInt> {
    let f = factorize(n)?;
    let big = |v: u64| BigInt::from(v);
    if !f.is_square_free() {
        return Ok(BigInt::zero());
    }
    if n == 2 {
        return Ok(BigInt::from(-1));
    }
    if f.is_prime() {
        return Ok(big(n - 1));
    }
    if f.is_twice_odd_prime() {
        let p = n / 2;
        return Ok(-num_traits::pow(big(p - 1), 2));
    }
    let phi = f.euler_phi();
    let d_star = f.d_star();
    if let [(p, 1), (q, 1)] = f.factors() {
        if *p > 2 {
            return Ok(num_traits::pow(big(p - 1), *q as usize) * num_traits::pow(big(q - 1), *p as usize));
        }
    }
    if n % 2 == 1 {
        let r = f.odd_prime_count();
        let mut det = if r % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
        for el in &d_star {
            let signed = if el.t % 2 == 0 { big(el.b) } else { -big(el.b) };
            let e = (phi / el.b) as usize * el.subsets as usize;
            det *= num_traits::pow(signed, e);
        }
        Ok(det)
    } else {
        let mut det = BigInt::one();
        for el in &d_star {
            let e = (phi / el.b) as usize * el.subsets as usize;
            if e % 2 == 1 {
                det = -det;
            }
            det *= num_traits::pow(big(el.b), 2 * e);
        }
        Ok(det)
    }
}

/// `n - gamma(n)`.
pub fn nullity(n: u64) -> Result<u64> {
    Ok(n - arith::radical(n)?)
}

/// Fraction-free Gaussian elimination. Consumes the matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}

/// Determinant of the adjacency matrix by Bareiss elimination.
pub fn oracle_determinant(g: &DenseGraph) -> Result<BigInt> {
    guard("the determinant oracle", g.order(), DETERMINANT_ORACLE_LIMIT)?;
    let m = g
        .adjacency()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(bareiss_determinant(m))
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
fn interpolation_nodes(count: usize) -> Vec<i64> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
        .collect()
}

/// Exact characteristic polynomial `det(xI - A)`: evaluates the determinant
/// at `n + 1` integer nodes with Bareiss elimination and interpolates in
/// Newton form over the rationals.
pub fn oracle_char_poly(g: &DenseGraph) -> Result<IntPoly> {
    let n = g.order();
    guard("the characteristic-polynomial oracle", n, CHAR_POLY_ORACLE_LIMIT)?;
    let adj = g.adjacency();
    let nodes = interpolation_nodes(n + 1);
    let values: Vec<BigInt> = nodes
        .iter()
        .map(|&x| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from(if i == j { x } else { 0 } - adj[i][j]))
                        .collect()
                })
                .collect();
            bareiss_determinant(m)
        })
        .collect();
    interpolate(&nodes, &values)
}

/// Newton divided differences, then expansion to the monomial basis.
fn interpolate(nodes: &[i64], values: &[BigInt]) -> Result<IntPoly> {
    let k = nodes.len();
    let mut coef: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let span = BigRational::from_integer(BigInt::from(nodes[i] - nodes[i - level]));
            coef[i] = (&coef[i] - &coef[i - 1]) / span;
        }
    }
    // Horner on the Newton form: p = c0 + (x - x0)(c1 + (x - x1)(c2 + ...))
    let mut acc: Vec<BigRational> = vec![coef[k - 1].clone()];
    for i in (0..k - 1).rev() {
        let x_i = BigRational::from_integer(BigInt::from(nodes[i]));
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &x_i;
        }
        next[0] += &coef[i];
        acc = next;
    }
    acc.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegralQuotient)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::from_coeffs)
}

/// `p(A)` for the adjacency matrix `A`, by Horner's rule.
pub fn evaluate_at_adjacency(p: &IntPoly, g: &DenseGraph) -> Vec<Vec<BigInt>> {
    let n = g.order();
    let identity_times = |c: &BigInt| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { BigInt::zero() }).collect())
            .collect()
    };
    let Some(deg) = p.degree() else {
        return identity_times(&BigInt::zero());
    };
    let mut m = identity_times(&p.coeff(deg));
    for i in (0..deg).rev() {
        // (M A)[r][c] = sum of M[r][k] over neighbours k of c
        let mut next: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| g.neighbors(c).map(|k| &m[r][k]).sum())
                    .collect()
            })
            .collect();
        let c = p.coeff(i);
        for (r, row) in next.iter_mut().enumerate() {
            row[r] += &c;
        }
        m = next;
    }
    m
}

pub fn is_zero_matrix(m: &[Vec<BigInt>]) -> bool {
    m.iter().all(|row| row.iter().all(Zero::is_zero))
}

/// Strips integer roots from `p` by repeated exact division; returns the
/// roots found and the leftover factor, which is `1` iff `p` splits over
/// the integers. Roots are searched in `[-bound, bound]`.
pub fn integer_roots(p: &IntPoly, bound: i64) -> (Spectrum, IntPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    for r in -bound..=bound {
        let factor = IntPoly::from_i64(&[-r, 1]);
        loop {
            if rest.degree().unwrap_or(0) == 0 || !rest.eval(&BigInt::from(r)).is_zero() {
                break;
            }
            rest = rest.exact_div(&factor).expect("root divides exactly");
            found.push((r, 1));
        }
    }
    let deg = p.degree().unwrap_or(0) as u64;
    (Spectrum::from_pairs(deg, found), rest)
}

pub mod tables {
    //! Published row templates for the spectrum and for the characteristic
    //! and minimal polynomials, instantiated at a given `n` exactly as they
    //! are printed. Each template applies to a family of `n`; several may
    //! apply to the same `n`.

    use serde::Serialize;

    use super::*;

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
    #[serde(rename_all = "snake_case")]
    pub enum SpectrumRow {
        Prime,
        PrimePower,
        TwicePrime,
        OddSemiprime,
        SquareFreeEven,
        SquareFreeOdd,
        EvenNotSquareFree,
        OddNotSquareFree,
    }

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct PrintedSpectrum {
        pub row: SpectrumRow,
        pub spectrum: Spectrum,
    }

    fn sign(even: bool) -> i64 {
        if even {
            1
        } else {
            -1
        }
    }

    /// Every spectrum template whose family contains `n`.
    pub fn printed_spectra(n: u64) -> Result<Vec<PrintedSpectrum>> {
        let f = factorize(n)?;
        let phi = f.euler_phi();
        let gamma = f.radical();
        let r = f.odd_prime_count();
        let d_star = f.d_star();
        let mut rows = Vec::new();
        let mut push = |row, pairs: Vec<(i64, u64)>| {
            rows.push(PrintedSpectrum { row, spectrum: Spectrum::from_pairs(n, pairs) });
        };
        let i = |v: u64| v as i64;

        if f.is_prime() {
            push(SpectrumRow::Prime, vec![(-1, n - 1), (i(n - 1), 1)]);
        }
        if let [(p, k)] = f.factors() {
            if *k > 1 {
                let pk1 = p.pow(k - 1);
                push(
                    SpectrumRow::PrimePower,
                    vec![(-i(pk1), p - 1), (0, n - p), (i((p - 1) * pk1), 1)],
                );
            }
        }
        // "2p, p prime", read literally so that p = 2 is included
        if n.is_multiple_of(2) && factorize(n / 2)?.is_prime() {
            let p = n / 2;
            push(
                SpectrumRow::TwicePrime,
                vec![(-i(p - 1), 1), (-1, p - 1), (1, p - 1), (i(p - 1), 1)],
            );
        }
        if let [(p, 1), (q, 1)] = f.factors() {
            if *p > 2 {
                push(
                    SpectrumRow::OddSemiprime,
                    vec![(1, phi), (-i(p - 1), q - 1), (-i(q - 1), p - 1), (i(phi), 1)],
                );
            }
        }
        if f.is_square_free() && n.is_multiple_of(2) {
            let mut pairs = vec![(-1, phi), (1, phi)];
            for el in &d_star {
                let m = phi / el.b * u64::from(el.subsets);
                pairs.extend([(i(el.b), m), (-i(el.b), m)]);
            }
            push(SpectrumRow::SquareFreeEven, pairs);
        }
        if f.is_square_free() && n % 2 == 1 {
            let mut pairs = vec![(sign(r % 2 == 0), phi)];
            for el in &d_star {
                let m = phi / el.b * u64::from(el.subsets);
                pairs.push((sign((r + el.t as usize).is_multiple_of(2)) * i(el.b), m));
            }
            push(SpectrumRow::SquareFreeOdd, pairs);
        }
        if !f.is_square_free() {
            let s = i(n / gamma);
            if n.is_multiple_of(2) {
                let mut pairs = vec![(0, n - gamma), (-s, phi), (s, phi)];
                for el in &d_star {
                    let m = phi / el.b * u64::from(el.subsets);
                    pairs.extend([(s * i(el.b), m), (-s * i(el.b), m)]);
                }
                push(SpectrumRow::EvenNotSquareFree, pairs);
            } else {
                let mut pairs = vec![(0, n - gamma), (sign(r % 2 == 0) * s, phi)];
                for el in &d_star {
                    let m = phi / el.b * u64::from(el.subsets);
                    pairs.push((sign((r + el.t as usize).is_multiple_of(2)) * s * i(el.b), m));
                }
                push(SpectrumRow::OddNotSquareFree, pairs);
            }
        }
        Ok(rows)
    }

    /// The non-square-free templates with `phi(gamma(n))` in place of
    /// `phi(n)` in the multiplicities, which is what `c_n(i)` gives.
    pub fn corrected_not_square_free(n: u64) -> Result<Option<Spectrum>> {
        let f = factorize(n)?;
        if f.is_square_free() {
            return Ok(None);
        }
        let gamma = f.radical();
        let phi_g = arith::euler_phi(gamma)?;
        let r = f.odd_prime_count();
        let s = (n / gamma) as i64;
        let mut pairs = vec![(0, n - gamma)];
        let base = if n.is_multiple_of(2) {
            vec![(-s, phi_g), (s, phi_g)]
        } else {
            vec![(sign(r % 2 == 0) * s, phi_g)]
        };
        pairs.extend(base);
        for el in f.d_star() {
            let m = phi_g / el.b * u64::from(el.subsets);
            let v = s * el.b as i64;
            if n.is_multiple_of(2) {
                pairs.extend([(v, m), (-v, m)]);
            } else {
                pairs.push((sign((r + el.t as usize).is_multiple_of(2)) * v, m));
            }
        }
        Ok(Some(Spectrum::from_pairs(n, pairs)))
    }

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
    #[serde(rename_all = "snake_case")]
    pub enum PolynomialRow {
        Prime,
        PrimePower,
        SquareFreeEven,
        SquareFreeOdd,
        NotSquareFreeEven,
        NotSquareFreeOdd,
    }

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct PrintedPolynomials {
        pub row: PolynomialRow,
        pub minimal: IntPoly,
        pub characteristic: IntPoly,
    }

    /// Linear factors `(root, exponent)`; the minimal template is read with
    /// repeated roots merged.
    fn build(row: PolynomialRow, min: Vec<i64>, chr: Vec<(i64, usize)>) -> PrintedPolynomials {
        let mut min = min;
        min.sort_unstable();
        min.dedup();
        PrintedPolynomials {
            row,
            minimal: IntPoly::from_roots(min.into_iter().map(|v| (v, 1))),
            characteristic: IntPoly::from_roots(chr),
        }
    }

    /// Every polynomial template whose family contains `n`.
    pub fn printed_polynomials(n: u64) -> Result<Vec<PrintedPolynomials>> {
        let f = factorize(n)?;
        let phi = f.euler_phi() as usize;
        let gamma = f.radical();
        let phi_g = arith::euler_phi(gamma)? as usize;
        let r = f.odd_prime_count();
        let d_star = f.d_star();
        let i = |v: u64| v as i64;
        let mut rows = Vec::new();

        if f.is_prime() {
            rows.push(build(
                PolynomialRow::Prime,
                vec![-1, i(n - 1)],
                vec![(-1, phi), (i(n - 1), 1)],
            ));
        }
        if let [(p, k)] = f.factors() {
            if *k > 1 {
                let pk1 = i(p.pow(k - 1));
                let top = i(p - 1) * pk1;
                rows.push(build(
                    PolynomialRow::PrimePower,
                    vec![0, top, -pk1],
                    vec![(0, (n - p) as usize), (top, 1), (-pk1, (*p - 1) as usize)],
                ));
            }
        }
        if f.is_square_free() {
            let mut min = Vec::new();
            let mut chr = Vec::new();
            if n.is_multiple_of(2) {
                // (x^2 - b^2) = (x - b)(x + b)
                min.extend([1, -1]);
                chr.extend([(1, phi), (-1, phi)]);
                for el in &d_star {
                    let e = phi / el.b as usize * el.subsets as usize;
                    min.extend([i(el.b), -i(el.b)]);
                    chr.extend([(i(el.b), e), (-i(el.b), e)]);
                }
                rows.push(build(PolynomialRow::SquareFreeEven, min, chr));
            } else {
                let lead = sign(r % 2 == 0);
                min.push(lead);
                chr.push((lead, phi));
                for el in &d_star {
                    let e = phi / el.b as usize * el.subsets as usize;
                    let v = sign((r + el.t as usize).is_multiple_of(2)) * i(el.b);
                    min.push(v);
                    chr.push((v, e));
                }
                rows.push(build(PolynomialRow::SquareFreeOdd, min, chr));
            }
        } else if r > 1 {
            let s = i(n / gamma);
            let mut min = vec![0];
            let mut chr = vec![(0, (n - gamma) as usize)];
            if n.is_multiple_of(2) {
                min.extend([s, -s]);
                chr.extend([(s, 1), (-s, 1)]);
                for el in &d_star {
                    let e = phi_g / el.b as usize * el.subsets as usize;
                    let v = s * i(el.b);
                    min.extend([v, -v]);
                    chr.extend([(v, e), (-v, e)]);
                }
                rows.push(build(PolynomialRow::NotSquareFreeEven, min, chr));
            } else {
                min.push(sign(r % 2 == 0) * s);
                chr.extend([(s, 1), (-s, 1)]);
                for el in &d_star {
                    let e = phi_g / el.b as usize * el.subsets as usize;
                    let v = sign((r + el.t as usize).is_multiple_of(2)) * s * i(el.b);
                    min.push(v);
                    chr.push((v, e));
                }
                rows.push(build(PolynomialRow::NotSquareFreeOdd, min, chr));
            }
        }
        Ok(rows)
    }
}

//! The disjoint 0/1 basis of the adjacency algebra of `X_n`, the
//! Weisfeiler–Leman coherent closure and the checks tying them together.
//!
//! Circulant 0/1 matrices are handled as connection sets plus a diagonal
//! flag; only the closure oracle and the power expansion materialise
//! `n x n` matrices.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{self, factorize};
use crate::error::{Error, Result};
use crate::graphs::{unitary_graph, ConnectionSet, DenseGraph};
use crate::spectra;

/// Size guard for [`wl_closure`] and [`verify_pattern_polynomial`].
pub const WL_LIMIT: usize = 128;
/// Size guard for [`power_expansion_check`].
pub const POWER_EXPANSION_LIMIT: usize = 64;
/// Size guard for [`span_membership`].
pub const SPAN_LIMIT: usize = 256;

/// A 0/1 circulant: the off-diagonal support plus whether the diagonal is
/// included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantPattern {
    pub set: ConnectionSet,
    pub diagonal: bool,
}

impl CirculantPattern {
    pub fn contains_shift(&self, s: usize) -> bool {
        if s == 0 {
            self.diagonal
        } else {
            self.set.contains(s)
        }
    }

    pub fn entry(&self, u: usize, v: usize) -> bool {
        let n = self.set.n();
        self.contains_shift((v + n - u) % n)
    }

    fn is_disjoint(&self, other: &CirculantPattern) -> bool {
        !(self.diagonal && other.diagonal) && self.set.is_disjoint(&other.set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMember {
    pub label: String,
    /// The divisor `x` of `gamma(n)` whose `H_x` this member comes from.
    pub x: u64,
    pub pattern: CirculantPattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentBasis {
    pub n: usize,
    pub members: Vec<BasisMember>,
}

impl CoherentBasis {
    pub fn pairwise_disjoint(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members[i + 1..]
                .iter()
                .all(|b| a.pattern.is_disjoint(&b.pattern))
        })
    }

    /// Every shift `0..n` is covered, i.e. the members sum to `J`.
    pub fn covers_all(&self) -> bool {
        (0..self.n).all(|s| self.members.iter().any(|m| m.pattern.contains_shift(s)))
    }
}

/// `H_x = sum of A_d over d | n with gamma(n/d) = x`. The `d = 1` term is
/// `A_1 = I` and sets the diagonal flag.
pub fn h_matrix(n: usize, x: u64) -> Result<CirculantPattern> {
    let f = factorize(n as u64)?;
    let gamma = f.radical();
    if x == 0 || gamma % x != 0 {
        return Err(Error::NotADivisor { n: gamma, d: x });
    }
    let mut pattern = CirculantPattern { set: ConnectionSet::empty(n), diagonal: false };
    for d in f.divisors() {
        if arith::radical(n as u64 / d)? != x {
            continue;
        }
        if d == 1 {
            pattern.diagonal = true;
        } else {
            pattern.set = pattern.set.union(&ConnectionSet::unitary(n, d as usize)?);
        }
    }
    Ok(pattern)
}

/// `{A_d : d | n}` for square-free `n`, otherwise
/// `{I, H_gamma - I} ∪ {H_x : x | gamma, x != gamma}`.
pub fn algebra_basis(n: usize) -> Result<CoherentBasis> {
    if n < 2 {
        return Err(Error::TooSmall { what: "the algebra basis", n, min: 2 });
    }
    let f = factorize(n as u64)?;
    let gamma = f.radical();
    let mut members = Vec::new();
    if f.is_square_free() {
        for d in f.divisors() {
            let pattern = CirculantPattern {
                set: ConnectionSet::unitary(n, d as usize)?,
                diagonal: d == 1,
            };
            let label = if d == 1 { "I".to_string() } else { format!("A_{d}") };
            members.push(BasisMember { label, x: n as u64 / d, pattern });
        }
    } else {
        let identity = CirculantPattern { set: ConnectionSet::empty(n), diagonal: true };
        members.push(BasisMember { label: "I".into(), x: gamma, pattern: identity });
        let mut top = h_matrix(n, gamma)?;
        top.diagonal = false;
        members.push(BasisMember { label: format!("H_{gamma} - I"), x: gamma, pattern: top });
        for x in factorize(gamma)?.divisors().into_iter().filter(|&x| x != gamma) {
            members.push(BasisMember { label: format!("H_{x}"), x, pattern: h_matrix(n, x)? });
        }
    }
    Ok(CoherentBasis { n, members })
}

/// Predicted dimension of the adjacency algebra.
pub fn algebra_dimension(n: u64) -> Result<u64> {
    spectra::minimal_polynomial_degree(n)
}

/// Stable colouring of ordered vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WLColoring {
    pub n: usize,
    /// Row-major `n x n` colour ids in `0..num_colors`.
    pub color: Vec<u32>,
    pub rounds: usize,
    pub num_colors: usize,
}

impl WLColoring {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.color[u * self.n + v]
    }

    /// Whether the 0/1 matrix `entry` is constant on every colour class.
    pub fn is_union_of_classes(&self, entry: impl Fn(usize, usize) -> bool) -> bool {
        let mut class_value: Vec<Option<bool>> = vec![None; self.num_colors];
        for u in 0..self.n {
            for v in 0..self.n {
                let c = self.get(u, v) as usize;
                let e = entry(u, v);
                match class_value[c] {
                    None => class_value[c] = Some(e),
                    Some(prev) if prev != e => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Whether `other` induces the same partition of pairs.
    pub fn same_partition(&self, other: &WLColoring) -> bool {
        if self.n != other.n || self.num_colors != other.num_colors {
            return false;
        }
        let mut map: Vec<Option<u32>> = vec![None; self.num_colors];
        self.color.iter().zip(&other.color).all(|(&a, &b)| match map[a as usize] {
            None => {
                map[a as usize] = Some(b);
                true
            }
            Some(m) => m == b,
        })
    }
}

/// Replaces arbitrary ids by their rank among the distinct values.
fn canonicalise<T: Ord + Clone>(keys: &[T]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<T> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    let ids = keys
        .iter()
        .map(|k| distinct.binary_search(k).expect("present") as u32)
        .collect();
    (ids, distinct.len())
}

/// Old colour plus run-length encoded `(c(u, w), c(w, v))` multiset.
type Signature = (u32, Vec<(u32, u32, u32)>);

/// One round of pair refinement: `(u, v)` is recoloured by its old colour
/// and the multiset of `(c(u, w), c(w, v))` over all `w`.
pub fn wl_round(n: usize, color: &[u32]) -> (Vec<u32>, usize) {
    let mut signatures: Vec<Signature> = Vec::with_capacity(n * n);
    let mut scratch: Vec<(u32, u32)> = Vec::with_capacity(n);
    for u in 0..n {
        for v in 0..n {
            scratch.clear();
            scratch.extend((0..n).map(|w| (color[u * n + w], color[w * n + v])));
            scratch.sort_unstable();
            let mut runs: Vec<(u32, u32, u32)> = Vec::new();
            for &(a, b) in &scratch {
                match runs.last_mut() {
                    Some(last) if last.0 == a && last.1 == b => last.2 += 1,
                    _ => runs.push((a, b, 1)),
                }
            }
            signatures.push((color[u * n + v], runs));
        }
    }
    canonicalise(&signatures)
}

/// Refines `initial` until the number of classes stops growing.
pub fn wl_refine(n: usize, initial: &[u32]) -> WLColoring {
    let (mut color, mut count) = canonicalise(initial);
    let mut rounds = 0;
    loop {
        let (next, next_count) = wl_round(n, &color);
        rounds += 1;
        if next_count == count {
            break;
        }
        color = next;
        count = next_count;
    }
    WLColoring { n, color, rounds, num_colors: count }
}

/// Two-dimensional Weisfeiler–Leman refinement from the (diagonal, edge,
/// non-edge) colouring. The class count is the dimension of the coherent
/// closure of `g`.
pub fn wl_closure(g: &DenseGraph) -> Result<WLColoring> {
    let n = g.order();
    if n > WL_LIMIT {
        return Err(Error::TooLarge { what: "the coherent-closure oracle", n, limit: WL_LIMIT });
    }
    let initial: Vec<u32> = (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            if u == v {
                0
            } else if g.has_edge(u, v) {
                1
            } else {
                2
            }
        })
        .collect();
    Ok(wl_refine(n, &initial))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisEntry {
    pub label: String,
    pub connection_set: Vec<usize>,
}

impl From<&BasisMember> for BasisEntry {
    fn from(m: &BasisMember) -> Self {
        let mut connection_set = m.pattern.set.elems().to_vec();
        if m.pattern.diagonal {
            connection_set.insert(0, 0);
        }
        BasisEntry { label: m.label.clone(), connection_set }
    }
}

/// Outcome of [`verify_pattern_polynomial`]; `connection_set` lists shifts,
/// with `0` standing for the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub n: usize,
    pub dim_closed_form: usize,
    pub dim_wl: usize,
    pub dim_spectral: usize,
    pub pass: bool,
    pub basis: Vec<BasisEntry>,
}

/// Compares the basis size, the coherent-closure dimension and the number
/// of distinct eigenvalues, and checks that every basis member is a union
/// of colour classes.
pub fn verify_pattern_polynomial(n: usize) -> Result<PatternReport> {
    if n > WL_LIMIT {
        return Err(Error::TooLarge { what: "pattern-polynomial verification", n, limit: WL_LIMIT });
    }
    let basis = algebra_basis(n)?;
    let wl = wl_closure(&unitary_graph(n)?)?;
    let spectrum = spectra::unitary_spectrum(n as u64)?;
    let dim_closed_form = basis.members.len();
    let dim_wl = wl.num_colors;
    let dim_spectral = spectrum.distinct_count();
    let members_are_unions = basis
        .members
        .iter()
        .all(|m| wl.is_union_of_classes(|u, v| m.pattern.entry(u, v)));
    let pass = dim_closed_form == dim_wl
        && dim_wl == dim_spectral
        && members_are_unions
        && basis.pairwise_disjoint()
        && basis.covers_all();
    Ok(PatternReport {
        n,
        dim_closed_form,
        dim_wl,
        dim_spectral,
        pass,
        basis: basis.members.iter().map(BasisEntry::from).collect(),
    })
}

/// Expansion of one power `A_n^f` on the disjoint basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTerm {
    pub power: usize,
    /// One coefficient per basis member, read from a single entry.
    pub coefficients: Vec<BigInt>,
    pub exact: bool,
    pub parity_respected: bool,
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Expands `A_n^f` for `f = 0..=dim - 1` on [`algebra_basis`].
///
/// For even `n` the parity flag requires odd powers to use only members
/// with odd `x` and even powers only members with even `x`.
pub fn power_expansion(n: usize) -> Result<Vec<PowerTerm>> {
    if n > POWER_EXPANSION_LIMIT {
        return Err(Error::TooLarge { what: "the power expansion check", n, limit: POWER_EXPANSION_LIMIT });
    }
    let basis = algebra_basis(n)?;
    let ell = basis.members.len() - 1;
    let adj: Vec<Vec<BigInt>> = unitary_graph(n)?
        .adjacency()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();

    let mut terms = Vec::new();
    for f in 0..=ell {
        if f > 0 {
            power = matmul(&power, &adj);
        }
        let coefficients: Vec<BigInt> = basis
            .members
            .iter()
            .map(|m| {
                let rep = if m.pattern.diagonal { 0 } else { m.pattern.set.elems()[0] };
                power[0][rep].clone()
            })
            .collect();
        let exact = (0..n).all(|u| {
            (0..n).all(|v| {
                let rebuilt: BigInt = basis
                    .members
                    .iter()
                    .zip(&coefficients)
                    .filter(|(m, _)| m.pattern.entry(u, v))
                    .map(|(_, c)| c.clone())
                    .sum();
                rebuilt == power[u][v]
            })
        });
        let parity_respected = n % 2 == 1
            || basis
                .members
                .iter()
                .zip(&coefficients)
                .all(|(m, c)| c.is_zero() || (m.x % 2) as usize == f % 2);
        terms.push(PowerTerm { power: f, coefficients, exact, parity_respected });
    }
    Ok(terms)
}

pub fn power_expansion_check(n: usize) -> Result<bool> {
    Ok(power_expansion(n)?
        .iter()
        .all(|t| t.exact && t.parity_respected))
}

/// Whether a circulant graph lies in the span of `{A_d : d | n}`, i.e. its
/// connection set is closed under multiplication by units.
pub fn span_membership(g: &DenseGraph) -> Result<bool> {
    let n = g.order();
    if n > SPAN_LIMIT {
        return Err(Error::TooLarge { what: "the span membership test", n, limit: SPAN_LIMIT });
    }
    let cs = g.circulant_connection_set()?;
    let units = arith::units(n as u64);
    Ok(cs
        .elems()
        .iter()
        .all(|&s| units.iter().all(|&k| cs.contains((s * k as usize) % n))))
}

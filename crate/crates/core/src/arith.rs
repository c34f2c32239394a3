//! Number-theoretic kernel: factorization, the classical multiplicative
//! functions and Ramanujan sums.
//!
//! Ramanujan sums `c_n(m)` are available three ways: the gcd closed form,
//! the Möbius divisor sum and a direct floating-point sum over primitive
//! roots of unity. The last one exists only to check the other two.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Absolute tolerance for [`ramanujan_direct`].
pub const DIRECT_TOLERANCE: f64 = 1e-6;

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

/// An element of `D*`: a product of `t` distinct values `p - 1` over odd
/// primes `p | n`.
///
/// `subsets` counts how many index subsets of size `t` produce the same
/// product; it is 1 unless two subsets collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DStarElement {
    pub b: u64,
    pub t: u32,
    pub subsets: u32,
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    pub fn moebius(&self) -> i64 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Product of the distinct prime divisors.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `n = 2p` with `p` an odd prime.
    pub fn is_twice_odd_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(2, 1), (p, 1)] if *p > 2)
    }

    /// Number of distinct odd prime divisors.
    pub fn odd_prime_count(&self) -> usize {
        self.primes().filter(|&p| p != 2).count()
    }

    /// Number of positive divisors.
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Products of nonempty subsets of `{p - 1 : p odd prime, p | n}`,
    /// deduplicated on `(b, t)` and sorted by `(b, t)`.
    pub fn d_star(&self) -> Vec<DStarElement> {
        let a: Vec<u64> = self.primes().filter(|&p| p != 2).map(|p| p - 1).collect();
        let mut items: Vec<(u64, u32)> = (1u64..(1 << a.len()))
            .map(|mask| {
                let b = a
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &aj)| aj)
                    .product();
                (b, mask.count_ones())
            })
            .collect();
        items.sort_unstable();

        let mut out: Vec<DStarElement> = Vec::new();
        for (b, t) in items {
            match out.last_mut() {
                Some(last) if last.b == b && last.t == t => last.subsets += 1,
                _ => out.push(DStarElement { b, t, subsets: 1 }),
            }
        }
        out
    }
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.euler_phi())
}

pub fn moebius(n: u64) -> Result<i64> {
    Ok(factorize(n)?.moebius())
}

pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

/// `gcd(m, n)` with `gcd(0, n) = n`.
pub fn gcd(m: u64, n: u64) -> u64 {
    m.gcd(&n)
}

/// Units of `Z_n` as residues in `1..=n`; `U_1 = {1}`.
pub fn units(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| gcd(k, n) == 1).collect()
}

/// `c_n(m) = mu(n/d) phi(n) / phi(n/d)` with `d = gcd(m, n)`.
pub fn ramanujan_closed(n: u64, m: u64) -> Result<i64> {
    let f = factorize(n)?;
    let d = gcd(m % n, n);
    let q = factorize(n / d)?;
    let ratio = f.euler_phi() / q.euler_phi();
    Ok(q.moebius() * ratio as i64)
}

/// `c_n(m) = sum over d | gcd(n, m) of mu(n/d) * d`.
pub fn ramanujan_divisor_sum(n: u64, m: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let g = gcd(m % n, n);
    let mut total = 0i64;
    for d in factorize(g)?.divisors() {
        total += moebius(n / d)? * d as i64;
    }
    Ok(total)
}

/// Sums `exp(2 pi i k m / n)` over `k` in `U_n` in double precision and
/// rounds, failing if the sum is not within [`DIRECT_TOLERANCE`] of an
/// integer.
pub fn ramanujan_direct(n: u64, m: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let m = m % n;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for k in (1..=n).filter(|&k| gcd(k, n) == 1) {
        let r = ((u128::from(k) * u128::from(m)) % u128::from(n)) as f64;
        let theta = std::f64::consts::TAU * r / n as f64;
        re += theta.cos();
        im += theta.sin();
    }
    let rounded = re.round();
    if im.abs() >= DIRECT_TOLERANCE || (re - rounded).abs() >= DIRECT_TOLERANCE {
        return Err(Error::OracleTolerance { n, m, re, im });
    }
    Ok(rounded as i64)
}

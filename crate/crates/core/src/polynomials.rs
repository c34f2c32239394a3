//! Dense integer polynomials and the families built from them: representer
//! polynomials of circulants, cyclotomic polynomials and the Ramanujan-sum
//! polynomial `R_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, factorize};
use crate::error::{Error, Result};

/// Integer polynomial; `coeffs[i]` is the coefficient of `x^i`. Trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        IntPoly::from_coeffs(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        IntPoly::monomial(1, n) - IntPoly::one()
    }

    /// `prod (x - root)^mult`.
    pub fn from_roots<I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (i64, usize)>,
    {
        roots.into_iter().fold(IntPoly::one(), |acc, (root, mult)| {
            acc * IntPoly::from_i64(&[-root, 1]).pow(mult)
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides `self` by the gcd of its coefficients and makes the leading
    /// coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let Some(lead) = self.leading() else {
            return IntPoly::zero();
        };
        let mut content = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if lead.is_negative() {
            content = -content;
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Division over the rationals.
    pub fn div_rem_rational(&self, divisor: &IntPoly) -> Result<(RatPoly, RatPoly)> {
        RatPoly::from(self).div_rem(&RatPoly::from(divisor))
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg
    /// divisor`. Fails unless both come out integral, which is guaranteed
    /// for a divisor with leading coefficient `±1`.
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let (q, r) = self.div_rem_rational(divisor)?;
        Ok((q.to_int()?, r.to_int()?))
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonIntegralQuotient)
        }
    }

    pub fn derivative(&self) -> Self {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Number of distinct complex roots, `deg(p / gcd(p, p'))`.
    pub fn distinct_root_count(&self) -> Result<usize> {
        match self.degree() {
            None => Err(Error::ZeroGcd),
            Some(0) => Ok(0),
            Some(d) => Ok(d - poly_gcd(self, &self.derivative())?.degree().unwrap_or(0)),
        }
    }

    pub fn divides(&self, other: &IntPoly) -> Result<bool> {
        let (_, r) = other.div_rem_rational(self)?;
        Ok(r.is_zero())
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for IntPoly {
    /// Descending powers, e.g. `x^4 - x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for exact division and gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly { coeffs: Vec::new() }, self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    /// Integer polynomial with the same coefficients, if they are integral.
    pub fn to_int(&self) -> Result<IntPoly> {
        self.coeffs
            .iter()
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

    /// Clears denominators and returns the primitive integer associate.
    fn to_primitive(&self) -> IntPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        IntPoly::from_coeffs(ints).primitive_part()
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

/// Euclid over the rationals, normalised to a primitive integer polynomial
/// with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let mut u = RatPoly::from(a);
    let mut v = RatPoly::from(b);
    while !v.is_zero() {
        let (_, r) = u.div_rem(&v)?;
        // primitive normalisation keeps the rational coefficients small
        u = RatPoly::from(&v.to_primitive());
        v = if r.is_zero() { r } else { RatPoly::from(&r.to_primitive()) };
    }
    Ok(u.to_primitive())
}

/// All `Phi_d` for `d | n`, built bottom-up by exact division.
pub fn cyclotomic_table(n: u64) -> Result<BTreeMap<u64, IntPoly>> {
    let divs = factorize(n)?.divisors();
    let mut table: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for &d in &divs {
        let mut p = IntPoly::x_pow_minus_one(d as usize);
        for (&e, phi) in table.iter().filter(|(&e, _)| d % e == 0) {
            debug_assert!(e < d);
            p = p.exact_div(phi)?;
        }
        table.insert(d, p);
    }
    Ok(table)
}

/// `Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x)`.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    let mut table = cyclotomic_table(n)?;
    Ok(table.remove(&n).expect("n divides n"))
}

/// `sum_{k in U_d} x^{(n/d) k mod n}`, the first row of `A_d` as a polynomial.
pub fn representer(n: u64, d: u64) -> Result<IntPoly> {
    if n == 0 || d == 0 {
        return Err(Error::Zero);
    }
    if !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { n, d });
    }
    let step = n / d;
    let mut coeffs = vec![BigInt::zero(); n as usize];
    for k in arith::units(d) {
        coeffs[((step * k) % n) as usize] += 1;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `R_n(x) = sum_{i < n} c_n(i) x^i`.
pub fn ramanujan_poly(n: u64) -> Result<IntPoly> {
    (0..n)
        .map(|i| arith::ramanujan_closed(n, i).map(BigInt::from))
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::from_coeffs)
}

/// Whether the `n x n` circulant with representer `p` is singular, i.e.
/// `gcd(p, x^n - 1)` is non-constant.
pub fn is_singular_circulant(p: &IntPoly, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let g = poly_gcd(p, &IntPoly::x_pow_minus_one(n as usize))?;
    Ok(g.degree().unwrap_or(0) >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap(), (p(&[1, 1]), IntPoly::zero()));
        assert_eq!(&p(&[3, 0, 2]) + &IntPoly::zero(), p(&[3, 0, 2]));
        assert_eq!(&p(&[1, 2, 3]) - &p(&[1, 2, 3]), IntPoly::zero());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn division_by_zero_fails() {
        assert_eq!(p(&[1, 1]).div_rem(&IntPoly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn non_monic_division() {
        // (x^2 + 1) / (2x) has quotient x/2
        assert_eq!(p(&[1, 0, 1]).div_rem(&p(&[0, 2])), Err(Error::NonIntegralQuotient));
        let (q, r) = p(&[2, 0, 4]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!((q, r), (p(&[0, 2]), p(&[2])));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[-4, 0, -2]), &IntPoly::zero()).unwrap(), p(&[2, 0, 1]));
        assert_eq!(poly_gcd(&p(&[3]), &p(&[-1, 1])).unwrap(), p(&[1]));
        assert_eq!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()), Err(Error::ZeroGcd));
        let a = p(&[-1, 1]) * p(&[2, 3]) * p(&[1, 0, 1]);
        let b = p(&[2, 3]) * p(&[5, 1]) * p(&[1, 0, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(&[2, 3]) * p(&[1, 0, 1]));
    }

    #[test]
    fn gcd_of_unitary_representer_has_nullity_degree() {
        let pa = representer(12, 12).unwrap();
        let g = poly_gcd(&pa, &IntPoly::x_pow_minus_one(12)).unwrap();
        assert_eq!(g.degree(), Some(6));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), p(&[1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).unwrap().coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn representer_examples() {
        assert_eq!(representer(6, 2).unwrap(), IntPoly::monomial(1, 3));
        assert_eq!(representer(9, 1).unwrap(), IntPoly::one());
        assert_eq!(representer(6, 6).unwrap(), p(&[0, 1, 0, 0, 0, 1]));
        assert_eq!(representer(6, 4), Err(Error::NotADivisor { n: 6, d: 4 }));
    }

    #[test]
    fn ramanujan_poly_of_four() {
        assert_eq!(ramanujan_poly(4).unwrap(), p(&[2, 0, -2]));
    }

    #[test]
    fn singularity() {
        assert!(is_singular_circulant(&representer(12, 12).unwrap(), 12).unwrap());
        assert!(!is_singular_circulant(&representer(6, 6).unwrap(), 6).unwrap());
        assert!(!is_singular_circulant(&IntPoly::one(), 5).unwrap());
    }

    #[test]
    fn distinct_roots() {
        let q = IntPoly::from_roots([(2, 3), (-1, 1), (0, 2)]);
        assert_eq!(q.derivative().degree(), Some(5));
        assert_eq!(q.distinct_root_count().unwrap(), 3);
        assert_eq!((p(&[1, 0, 1]) * p(&[1, 0, 1])).distinct_root_count().unwrap(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -1, 0, 1]).to_string(), "x^4 - x^2 + 1");
        assert_eq!(p(&[-6, -1, 1]).to_string(), "x^2 - x - 6");
        assert_eq!(p(&[0, -3]).to_string(), "-3x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}

//! Truncated power series and polynomials with big-integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

/// `c_0 + c_1 x + ... + c_D x^D`, arithmetic modulo `x^{D+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedIntSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedIntSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Pads with zeros or truncates to degree `degree`.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>, degree: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(degree + 1).map(Into::into).collect();
        c.resize(degree + 1, BigInt::zero());
        Self { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), degree)
    }

    fn check_degree(&self, other: &Self) -> usize {
        self.degree().min(other.degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.check_degree(other);
        Self {
            coeffs: (0..=d).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.check_degree(other);
        Self {
            coeffs: (0..=d).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product truncated at the smaller of the two degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.check_degree(other);
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Series quotient; the divisor must have constant term `+1` or `-1`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = &other.coeffs[0];
        if !(b0.is_one() || (-b0).is_one()) {
            return invalid(format!(
                "series division needs a unit constant term, got {b0}"
            ));
        }
        let d = self.check_degree(other);
        let mut q: Vec<BigInt> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &q[k - j];
                }
            }
            q.push(acc * b0);
        }
        Ok(Self { coeffs: q })
    }

    /// Multiplies by `1/(1 - x^l)`: a prefix sum with stride `l`.
    pub fn mul_geometric(&mut self, l: usize) {
        assert!(l >= 1);
        for k in l..self.coeffs.len() {
            let prev = self.coeffs[k - l].clone();
            self.coeffs[k] += prev;
        }
    }

    /// Multiplies by `1 - x^l`.
    pub fn mul_one_minus(&mut self, l: usize) {
        assert!(l >= 1);
        for k in (l..self.coeffs.len()).rev() {
            let prev = self.coeffs[k - l].clone();
            self.coeffs[k] -= prev;
        }
    }

    /// Multiplies by `1 + x^l`.
    pub fn mul_one_plus(&mut self, l: usize) {
        assert!(l >= 1);
        for k in (l..self.coeffs.len()).rev() {
            let prev = self.coeffs[k - l].clone();
            self.coeffs[k] += prev;
        }
    }

    /// `prod_l 1/(1 - x^l)` over the given exponents.
    pub fn geometric_product(exponents: impl IntoIterator<Item = usize>, degree: usize) -> Self {
        let mut s = Self::one(degree);
        for l in exponents {
            if l <= degree {
                s.mul_geometric(l);
            }
        }
        s
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }
}

impl fmt::Display for TruncatedIntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.to_polynomial(), self.degree() + 1)
    }
}

/// Exact polynomial with big-integer coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `prod_{l in ls} (1 - x^l)`.
    pub fn one_minus_x_product(ls: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::one();
        for l in ls {
            let mut f = vec![BigInt::zero(); l + 1];
            f[0] = BigInt::one();
            f[l] = -BigInt::one();
            p = p.mul(&Self::new(f));
        }
        p
    }

    /// Euclidean division by a divisor with leading coefficient `+-1`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return invalid("division by the zero polynomial");
        };
        let lead = &divisor.coeffs[dd];
        if !(lead.is_one() || (-lead).is_one()) {
            return invalid(format!(
                "polynomial division needs a unit leading coefficient, got {lead}"
            ));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::default(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_series(&self, degree: usize) -> TruncatedIntSeries {
        TruncatedIntSeries::from_coeffs(self.coeffs.iter().cloned(), degree)
    }

    /// Greatest common divisor of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Partition numbers `p(0..=D)`: `prod_{l >= 1} 1/(1 - x^l)`.
pub fn euler_series(degree: usize) -> TruncatedIntSeries {
    TruncatedIntSeries::geometric_product(1..=degree, degree)
}

/// Strict partitions: `prod_{l >= 1} (1 + x^l)`.
pub fn strict_series(degree: usize) -> TruncatedIntSeries {
    let mut s = TruncatedIntSeries::one(degree);
    for l in 1..=degree {
        s.mul_one_plus(l);
    }
    s
}

/// Partitions into parts at most `k` (equivalently at most `k` parts):
/// `prod_{l=1}^{k} 1/(1 - x^l)`.
pub fn bounded_parts_series(k: usize, degree: usize) -> Result<TruncatedIntSeries> {
    if k == 0 {
        return invalid("bounded_parts_series needs k >= 1");
    }
    Ok(TruncatedIntSeries::geometric_product(1..=k, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], d: usize) -> TruncatedIntSeries {
        TruncatedIntSeries::from_coeffs(c.iter().copied(), d)
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_x = s(&[1, -1], 10);
        let ones = s(&[1; 11], 10);
        assert_eq!(one_minus_x.mul(&ones), TruncatedIntSeries::one(10));
        assert_eq!(TruncatedIntSeries::one(10).div(&one_minus_x).unwrap(), ones);
    }

    #[test]
    fn polynomial_division() {
        let a = Polynomial::from_i64(&[1, 0, 0, 0, -1]);
        let b = Polynomial::from_i64(&[1, 0, -1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_i64(&[1, 0, 1]));
        assert!(r.is_zero());
        let (_, r) = Polynomial::from_i64(&[1, 1]).div_rem(&b).unwrap();
        assert_eq!(r, Polynomial::from_i64(&[1, 1]));
        assert!(a.div_rem(&Polynomial::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn non_unit_constant_rejected() {
        assert!(s(&[1], 3).div(&s(&[2, 1], 3)).is_err());
    }

    #[test]
    fn small_partition_numbers() {
        let e = euler_series(5);
        let want: Vec<BigInt> = [1, 1, 2, 3, 5, 7].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(e.coeffs(), want.as_slice());
        let st = strict_series(5);
        let want: Vec<BigInt> = [1, 1, 1, 2, 2, 3].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(st.coeffs(), want.as_slice());
        let b2 = bounded_parts_series(2, 6).unwrap();
        assert_eq!(b2.coeff(4), &BigInt::from(3));
        let b1 = bounded_parts_series(1, 6).unwrap();
        assert!(b1.coeffs().iter().all(|c| c.is_one()));
        assert_eq!(bounded_parts_series(30, 30).unwrap(), euler_series(30));
    }

    #[test]
    fn display() {
        let p = Polynomial::from_i64(&[1, 0, 2, -1]);
        assert_eq!(p.to_string(), "1 + 2x^2 - x^3");
    }
}

//! Exact scalar and vector types.
//!
//! Every quantity in the crate is an arbitrary-precision integer or rational.

use std::fmt;
use std::ops::Index;

use num::{BigInt, BigRational, Integer as _, One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// Lowest-terms `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().ok()?;
            let q: Integer = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<Integer>().ok().map(Rational::from_integer),
    }
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a Integer>) -> Integer {
    values.into_iter().fold(Integer::one(), |acc, v| acc.lcm(v))
}

/// Integer vector; exponents, facet normals and weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerVector(pub Vec<Integer>);

impl IntegerVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        IntegerVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        IntegerVector(vec![Integer::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Integer::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Componentwise `self <= other`.
    pub fn le_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Integer) -> Self {
        IntegerVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &Self) -> Integer {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_point(&self, p: &RationalPoint) -> Rational {
        self.0
            .iter()
            .zip(&p.0)
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn sum(&self) -> Integer {
        self.0.iter().sum()
    }

    pub fn to_point(&self) -> RationalPoint {
        RationalPoint(self.0.iter().map(rat_int).collect())
    }

    /// Divides by the gcd of the entries, keeping signs. Zero stays zero.
    pub fn primitive_signed(&self) -> Self {
        let g = self.0.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntegerVector(self.0.iter().map(|c| c / &g).collect())
    }
}

impl Index<usize> for IntegerVector {
    type Output = Integer;
    fn index(&self, i: usize) -> &Integer {
        &self.0[i]
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Point of Newton space with rational coordinates. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn from_i64(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        RationalPoint(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RationalPoint(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalPoint(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Componentwise `self <= other`.
    pub fn le_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn denominator_lcm(&self) -> Integer {
        lcm_all(self.0.iter().map(|c| c.denom()))
    }

    /// Coordinates as integers; `None` when some coordinate is fractional.
    pub fn to_integer(&self) -> Option<IntegerVector> {
        self.is_integral()
            .then(|| IntegerVector(self.0.iter().map(|c| c.numer().clone()).collect()))
    }
}

impl Index<usize> for RationalPoint {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rational(c))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting_is_lowest_terms() {
        assert_eq!(fmt_rational(&rat(10, 4)), "5/2");
        assert_eq!(fmt_rational(&rat(-6, 3)), "-2");
        assert_eq!(fmt_rational(&rat(0, 7)), "0");
    }

    #[test]
    fn parse_rational_roundtrip() {
        assert_eq!(parse_rational("5/2"), Some(rat(5, 2)));
        assert_eq!(parse_rational(" 3 "), Some(rat(3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn signed_primitive() {
        let v = IntegerVector::from_i64(&[4, -6, 0]);
        assert_eq!(v.primitive_signed(), IntegerVector::from_i64(&[2, -3, 0]));
    }
}

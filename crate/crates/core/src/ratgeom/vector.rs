use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer vector: facet normals, directions `u`, edge directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the absolute values of the entries; zero for the zero vector.
    pub fn gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == BigInt::from(1)
    }

    /// First non-zero entry is positive.
    pub fn is_sign_canonical(&self) -> bool {
        self.0
            .iter()
            .find(|e| !e.is_zero())
            .is_some_and(|e| e.is_positive())
    }

    /// `self` or `-self`, whichever has a positive leading entry.
    pub fn sign_canonical(&self) -> Self {
        if self.is_sign_canonical() || self.is_zero() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(self.dim(), x.len());
        self.0
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, b)| acc + b * a)
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|e| Rational::from_integer(e.clone())).collect()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    /// Divide by `gcd`; panics on a zero vector.
    pub(crate) fn divided_by(&self, g: &BigInt) -> Self {
        Self(self.0.iter().map(|e| e / g).collect())
    }

    /// Smallest positive integer multiple of a non-zero rational vector,
    /// returned primitive.
    pub fn primitive_from_rational(x: &[Rational]) -> Option<Self> {
        let lcm = x
            .iter()
            .fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
        let scaled = Self(
            x.iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect(),
        );
        if scaled.is_zero() {
            return None;
        }
        let g = scaled.gcd();
        Some(scaled.divided_by(&g))
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        Self(v)
    }
}

/// JSON array of integers; entries beyond `i64` become decimal strings.
impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for e in &self.0 {
            match e.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&e.to_string())?,
            }
        }
        seq.end()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `1,-2,3` or `(1,-2,3)`.
impl FromStr for IntVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err(Error::InvalidArgument(format!("empty vector `{s}`")));
        }
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidArgument(format!("`{t}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_primitivity() {
        assert_eq!(IntVector::from_i64(&[2, 4]).gcd(), BigInt::from(2));
        assert!(IntVector::from_i64(&[3, -5]).is_primitive());
        assert!(!IntVector::zeros(3).is_primitive());
        assert_eq!(IntVector::zeros(2).gcd(), BigInt::zero());
    }

    #[test]
    fn sign_canonical_form() {
        assert_eq!(
            IntVector::from_i64(&[0, -1, 2]).sign_canonical(),
            IntVector::from_i64(&[0, 1, -2])
        );
        assert!(IntVector::from_i64(&[1, -1]).is_sign_canonical());
        assert!(!IntVector::zeros(2).is_sign_canonical());
    }

    #[test]
    fn parse_and_display() {
        let v: IntVector = "(1, -2,3)".parse().unwrap();
        assert_eq!(v, IntVector::from_i64(&[1, -2, 3]));
        assert_eq!(v.to_string(), "(1,-2,3)");
        assert!("1,x".parse::<IntVector>().is_err());
        assert!("".parse::<IntVector>().is_err());
    }

    #[test]
    fn primitive_from_rational_scales_denominators() {
        let x = vec![
            Rational::new(BigInt::from(-2), BigInt::from(3)),
            Rational::new(BigInt::from(1), BigInt::from(3)),
        ];
        assert_eq!(
            IntVector::primitive_from_rational(&x),
            Some(IntVector::from_i64(&[-2, 1]))
        );
        assert_eq!(IntVector::primitive_from_rational(&[Rational::zero()]), None);
    }
}

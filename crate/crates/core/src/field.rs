//! Exact scalar fields.
//!
//! All arithmetic in this crate is exact; equality checks are exact. The
//! engine is generic over a field context object (the context carries any
//! runtime data such as a prime modulus), with two implementations: the
//! rationals (default, used for all verification runs) and a prime field
//! (for performance experiments).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)] // the context object builds the element
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// None for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    /// Characteristic, 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().magnitude(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The prime field F_p with p < 2^31 (products stay within u64).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(Error::UnsupportedField(format!(
                "modulus {p} out of range (2 <= p < 2^31)"
            )));
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::UnsupportedField(format!("{p} is not prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        a.is_multiple_of(self.p)
    }
    fn render(&self, a: &u64) -> String {
        (a % self.p).to_string()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Which exact field a run uses. The presentation format itself is
/// field-free; the choice is made at the tool boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldDescriptor {
    #[default]
    Rational,
    Prime(u64),
}

impl std::str::FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "q" || s == "Q" {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::UnsupportedField(format!("bad prime `{p}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldDescriptor::Prime(p));
        }
        Err(Error::UnsupportedField(format!(
            "unknown field `{s}` (expected `q` or `fp:<prime>`)"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let q = Rationals;
        let half = q.div(&q.one(), &q.from_i64(2)).unwrap();
        assert_eq!(q.add(&half, &half), q.one());
        assert_eq!(q.render(&half), "1/2");
        assert_eq!(q.render(&q.neg(&half)), "-1/2");
        assert!(q.inv(&q.zero()).is_none());
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn field_descriptor_parsing() {
        assert_eq!(
            "q".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Rational
        );
        assert_eq!(
            "fp:5".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Prime(5)
        );
        assert!("fp:4".parse::<FieldDescriptor>().is_err());
        assert!("r64".parse::<FieldDescriptor>().is_err());
    }
}

//! Exact rationals over `i64` with overflow detection.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{checked, Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: i64,
    denom: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { numer: 0, denom: 1 };

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidInvariant("zero denominator".into()));
        }
        let g = numer.gcd(&denom);
        let (mut n, mut d) = (numer / g, denom / g);
        if d < 0 {
            n = checked(n.checked_neg())?;
            d = checked(d.checked_neg())?;
        }
        Ok(Rational { numer: n, denom: d })
    }

    pub fn from_int(n: i64) -> Self {
        Rational { numer: n, denom: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.numer
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_integer(&self) -> bool {
        self.denom == 1
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        let l = self.denom.lcm(&rhs.denom);
        let a = checked(self.numer.checked_mul(l / self.denom))?;
        let b = checked(rhs.numer.checked_mul(l / rhs.denom))?;
        Rational::new(checked(a.checked_add(b))?, l)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Rational> {
        Ok(Rational { numer: checked(self.numer.checked_neg())?, denom: self.denom })
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational> {
        let g1 = self.numer.gcd(&rhs.denom).max(1);
        let g2 = rhs.numer.gcd(&self.denom).max(1);
        let n = checked((self.numer / g1).checked_mul(rhs.numer / g2))?;
        let d = checked((self.denom / g2).checked_mul(rhs.denom / g1))?;
        Rational::new(n, d)
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> i64 {
        Integer::div_ceil(&self.numer, &self.denom)
    }

    pub fn signum(&self) -> i64 {
        self.numer.signum()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive
        let l = i128::from(self.numer) * i128::from(other.denom);
        let r = i128::from(other.numer) * i128::from(self.denom);
        l.cmp(&r)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(Rational::new(0, -7).unwrap(), Rational::ZERO);
    }

    #[test]
    fn arithmetic() {
        let half = Rational::new(1, 2).unwrap();
        let third = Rational::new(1, 3).unwrap();
        assert_eq!(half.checked_add(third).unwrap(), Rational::new(5, 6).unwrap());
        assert_eq!(half.checked_sub(third).unwrap(), Rational::new(1, 6).unwrap());
        assert_eq!(half.checked_mul(third).unwrap(), Rational::new(1, 6).unwrap());
        assert!(third < half);
        assert_eq!(Rational::new(5, 3).unwrap().ceil(), 2);
        assert_eq!(Rational::new(-5, 3).unwrap().ceil(), -1);
        assert_eq!(Rational::from_int(2).ceil(), 2);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::from_int(i64::MAX);
        assert_eq!(big.checked_add(big), Err(Error::Overflow));
        assert_eq!(Rational::from_int(i64::MIN).checked_neg(), Err(Error::Overflow));
    }
}

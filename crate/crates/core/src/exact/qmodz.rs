use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of ℚ/ℤ, kept as the reduced fraction `num/den` with
/// `0 <= num < den`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: BigInt,
    den: BigInt,
}

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    /// Canonical representative of `num/den` modulo 1.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    /// `k / n` for a known nonzero `n`.
    pub fn frac(k: i64, n: i64) -> Self {
        Self::new(k, n).expect("nonzero denominator")
    }

    fn normalize(num: BigInt, den: BigInt) -> Self {
        let (mut num, mut den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        num = num.mod_floor(&den);
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        QmodZ { num, den }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(r.numer().clone(), r.denom().clone())
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Additive order; always equal to the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.den.clone()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::normalize(&self.num * k, self.den.clone())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Numerator of this value over the common denominator `n`, if `n·x = 0`.
    pub fn numerator_over(&self, n: &BigInt) -> Option<BigInt> {
        if n.is_zero() || !n.is_multiple_of(&self.den) {
            return None;
        }
        Some(&self.num * (n / &self.den))
    }

    /// Representative in `[0, 1)` as a rational number.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `"a/b"` or a bare integer `"a"`; signs are allowed on either part.
impl FromStr for QmodZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseFraction(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        QmodZ::new(num, den)
    }
}

impl Add<&QmodZ> for &QmodZ {
    type Output = QmodZ;

    fn add(self, rhs: &QmodZ) -> QmodZ {
        if self.den == rhs.den {
            return QmodZ::normalize(&self.num + &rhs.num, self.den.clone());
        }
        QmodZ::normalize(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Add for QmodZ {
    type Output = QmodZ;

    fn add(self, rhs: QmodZ) -> QmodZ {
        &self + &rhs
    }
}

impl AddAssign for QmodZ {
    fn add_assign(&mut self, rhs: QmodZ) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&QmodZ> for QmodZ {
    fn add_assign(&mut self, rhs: &QmodZ) {
        *self = &*self + rhs;
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;

    fn neg(self) -> QmodZ {
        QmodZ::normalize(-&self.num, self.den.clone())
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;

    fn neg(self) -> QmodZ {
        -&self
    }
}

impl Sub<&QmodZ> for &QmodZ {
    type Output = QmodZ;

    fn sub(self, rhs: &QmodZ) -> QmodZ {
        self + &(-rhs)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;

    fn sub(self, rhs: QmodZ) -> QmodZ {
        &self - &rhs
    }
}

impl Mul<&BigInt> for &QmodZ {
    type Output = QmodZ;

    fn mul(self, k: &BigInt) -> QmodZ {
        self.scale(k)
    }
}

impl std::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> Self {
        iter.fold(QmodZ::zero(), |acc, x| &acc + &x)
    }
}

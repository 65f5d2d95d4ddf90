//! Exact coefficient fields: the rationals and the two-element field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub trait Coefficient:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const CHARACTERISTIC: u32;

    fn inv(&self) -> Option<Self>;

    fn from_i64(value: i64) -> Self;

    /// A square root inside the field, when one exists.
    fn sqrt_exact(&self) -> Option<Self>;

    fn parse_coeff(text: &str) -> Result<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn parse_rational(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!q.is_zero()).then(|| Rat::new(p, q))
}

fn sqrt_bigint(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Coefficient for Rat {
    const CHARACTERISTIC: u32 = 0;

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_i64(value: i64) -> Self {
        Rat::from_integer(BigInt::from(value))
    }

    fn sqrt_exact(&self) -> Option<Self> {
        Some(Rat::new(sqrt_bigint(self.numer())?, sqrt_bigint(self.denom())?))
    }

    fn parse_coeff(text: &str) -> Result<Self> {
        parse_rational(text).ok_or_else(|| Error::Json(format!("bad rational {text:?}")))
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct F2(bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Add for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 && rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2::ONE
    }
}

impl Coefficient for F2 {
    const CHARACTERISTIC: u32 = 2;

    fn inv(&self) -> Option<Self> {
        self.0.then_some(F2::ONE)
    }

    fn from_i64(value: i64) -> Self {
        F2(value.rem_euclid(2) == 1)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        Some(*self)
    }

    fn parse_coeff(text: &str) -> Result<Self> {
        let r = parse_rational(text).ok_or_else(|| Error::Json(format!("bad coefficient {text:?}")))?;
        let two = BigInt::from(2);
        if (r.denom() % &two).is_zero() {
            return Err(Error::Json(format!("{text:?} has no image in F2")));
        }
        Ok(F2(!(r.numer() % &two).is_zero()))
    }
}

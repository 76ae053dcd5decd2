//! Exact coefficient rings.
//!
//! Coefficients are plain values; anything that needs to know the ring it
//! lives in (the modulus, for residues) receives it through
//! [`Coefficient::Context`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoefficientError {
    #[error("{num}/{den} is not an element of {ring}")]
    NotInRing { num: BigInt, den: BigInt, ring: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown coefficient ring `{0}` (expected z, q or z/N with N >= 2)")]
    UnknownRing(String),
}

/// A commutative unital ring with exact arithmetic.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Context: Clone + fmt::Debug + Send + Sync;

    fn from_integer(ctx: &Self::Context, n: &BigInt) -> Self;

    /// `num / den` when it exists in the ring.
    fn from_ratio(ctx: &Self::Context, num: &BigInt, den: &BigInt) -> Result<Self, CoefficientError>;

    fn ring_name(ctx: &Self::Context) -> String;

    fn one(ctx: &Self::Context) -> Self {
        Self::from_integer(ctx, &<BigInt as One>::one())
    }

    fn from_i64(ctx: &Self::Context, n: i64) -> Self {
        Self::from_integer(ctx, &BigInt::from(n))
    }

    /// Whether the value prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    fn is_one(&self) -> bool;
}

impl Coefficient for BigInt {
    type Context = ();

    fn from_integer(_: &(), n: &BigInt) -> Self {
        n.clone()
    }

    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Result<Self, CoefficientError> {
        if den.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        let (q, r) = num.div_rem(den);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(CoefficientError::NotInRing {
                num: num.clone(),
                den: den.clone(),
                ring: "Z".into(),
            })
        }
    }

    fn ring_name(_: &()) -> String {
        "Z".into()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Coefficient for BigRational {
    type Context = ();

    fn from_integer(_: &(), n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Result<Self, CoefficientError> {
        if den.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn ring_name(_: &()) -> String {
        "Q".into()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// The modulus of [`ZMod`] values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Option<Self> {
        (m >= 2).then_some(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// A residue modulo `m`, stored reduced in `0..m`.
///
/// `ZMod::zero()` carries no modulus and is the zero of every `Z/m`;
/// arithmetic takes the modulus from whichever operand has one.
#[derive(Clone, Copy, Debug)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl ZMod {
    pub fn new(value: i128, modulus: Modulus) -> Self {
        let m = modulus.0 as i128;
        ZMod {
            value: value.rem_euclid(m) as u64,
            modulus: modulus.0,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn combine_modulus(a: &Self, b: &Self) -> u64 {
        match (a.modulus, b.modulus) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixing residues of different moduli");
                m
            }
        }
    }
}

impl PartialEq for ZMod {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && (self.value == 0 || self.modulus == other.modulus)
    }
}

impl Eq for ZMod {}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Zero for ZMod {
    fn zero() -> Self {
        ZMod {
            value: 0,
            modulus: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Add for ZMod {
    type Output = ZMod;

    fn add(self, rhs: Self) -> Self {
        let m = Self::combine_modulus(&self, &rhs);
        if m == 0 {
            return ZMod::zero();
        }
        ZMod {
            value: ((self.value as u128 + rhs.value as u128) % m as u128) as u64,
            modulus: m,
        }
    }
}

impl Neg for ZMod {
    type Output = ZMod;

    fn neg(self) -> Self {
        if self.value == 0 {
            return self;
        }
        ZMod {
            value: self.modulus - self.value,
            modulus: self.modulus,
        }
    }
}

impl Sub for ZMod {
    type Output = ZMod;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ZMod {
    type Output = ZMod;

    fn mul(self, rhs: Self) -> Self {
        if self.value == 0 || rhs.value == 0 {
            return ZMod::zero();
        }
        let m = Self::combine_modulus(&self, &rhs);
        ZMod {
            value: ((self.value as u128 * rhs.value as u128) % m as u128) as u64,
            modulus: m,
        }
    }
}

impl Coefficient for ZMod {
    type Context = Modulus;

    fn from_integer(ctx: &Modulus, n: &BigInt) -> Self {
        let m = BigInt::from(ctx.0);
        let r = n.mod_floor(&m);
        ZMod {
            value: r.to_u64().expect("residue fits the modulus"),
            modulus: ctx.0,
        }
    }

    fn from_ratio(ctx: &Modulus, num: &BigInt, den: &BigInt) -> Result<Self, CoefficientError> {
        let m = BigInt::from(ctx.0);
        let d = den.mod_floor(&m);
        if d.is_zero() && den.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        let ext = d.extended_gcd(&m);
        if !One::is_one(&ext.gcd) {
            return Err(CoefficientError::NotInRing {
                num: num.clone(),
                den: den.clone(),
                ring: Self::ring_name(ctx),
            });
        }
        let inv = Self::from_integer(ctx, &ext.x);
        Ok(Self::from_integer(ctx, num) * inv)
    }

    fn ring_name(ctx: &Modulus) -> String {
        format!("Z/{}", ctx.0)
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }
}

/// The coefficient rings selectable at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRingSpec {
    Integers,
    Rationals,
    IntegersMod(Modulus),
}

impl FromStr for CoefficientRingSpec {
    type Err = CoefficientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "z" | "int" | "integers" => Ok(CoefficientRingSpec::Integers),
            "q" | "rat" | "rationals" => Ok(CoefficientRingSpec::Rationals),
            _ => t
                .strip_prefix("z/")
                .and_then(|m| m.parse::<u64>().ok())
                .and_then(Modulus::new)
                .map(CoefficientRingSpec::IntegersMod)
                .ok_or_else(|| CoefficientError::UnknownRing(s.to_string())),
        }
    }
}

impl fmt::Display for CoefficientRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRingSpec::Integers => write!(f, "Z"),
            CoefficientRingSpec::Rationals => write!(f, "Q"),
            CoefficientRingSpec::IntegersMod(m) => write!(f, "Z/{}", m.get()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn residues_reduce() {
        let m = Modulus::new(3).unwrap();
        let a = ZMod::from_i64(&m, 5);
        assert_eq!(a.value(), 2);
        assert_eq!((a + a).value(), 1);
        assert!((a + ZMod::from_i64(&m, 1)).is_zero());
        assert_eq!((-a).value(), 1);
        assert_eq!(ZMod::from_i64(&m, -1).value(), 2);
        assert_eq!(ZMod::zero() + a, a);
        assert!((ZMod::zero() * a).is_zero());
    }

    #[test]
    fn mod_two_doubles_vanish() {
        let m = Modulus::new(2).unwrap();
        let one = ZMod::one(&m);
        assert!((one + one).is_zero());
    }

    #[test]
    fn ratios() {
        assert_eq!(BigInt::from_ratio(&(), &z(6), &z(3)), Ok(z(2)));
        assert!(BigInt::from_ratio(&(), &z(1), &z(2)).is_err());
        assert_eq!(
            BigRational::from_ratio(&(), &z(2), &z(4)).unwrap(),
            BigRational::new(z(1), z(2))
        );
        let m = Modulus::new(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(ZMod::from_ratio(&m, &z(1), &z(2)).unwrap().value(), 3);
        let m4 = Modulus::new(4).unwrap();
        assert!(ZMod::from_ratio(&m4, &z(1), &z(2)).is_err());
        assert_eq!(
            BigRational::from_ratio(&(), &z(1), &z(0)),
            Err(CoefficientError::DivisionByZero)
        );
    }

    #[test]
    fn ring_specs() {
        assert_eq!("z".parse(), Ok(CoefficientRingSpec::Integers));
        assert_eq!("Q".parse(), Ok(CoefficientRingSpec::Rationals));
        assert_eq!(
            "z/7".parse(),
            Ok(CoefficientRingSpec::IntegersMod(Modulus::new(7).unwrap()))
        );
        assert!("z/1".parse::<CoefficientRingSpec>().is_err());
        assert!("r".parse::<CoefficientRingSpec>().is_err());
    }
}

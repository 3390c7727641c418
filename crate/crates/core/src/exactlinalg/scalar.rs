use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// The ground field: the rationals or a prime field `F_p` with `p` an odd prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite moduli, 2, and anything at or above 2^31.
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if p == 2 {
            return Err(LinalgError::CharacteristicTwo);
        }
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Parses an integer or fraction literal such as `3`, `-2` or `-1/2`.
    pub fn parse(self, literal: &str) -> Result<Scalar, LinalgError> {
        let text = literal.trim();
        let bad = || LinalgError::BadLiteral(literal.to_string());
        let value = if text.contains('/') {
            BigRational::from_str(text).map_err(|_| bad())?
        } else {
            BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)
        };
        self.from_rational(&value).ok_or_else(bad)
    }

    /// Maps a rational into this field; `None` when the denominator vanishes mod p.
    pub fn from_rational(self, value: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rationals => Some(Scalar::Rational(value.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let reduce = |x: &BigInt| {
                    let r = x % &modulus;
                    let r = if r.is_negative() { r + &modulus } else { r };
                    r.to_u32().expect("residue fits in u32")
                };
                let num = self.residue(reduce(value.numer()));
                let den = self.residue(reduce(value.denom()));
                Some(num * den.inverse()?)
            }
        }
    }

    fn residue(self, value: u32) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Residue { value, modulus: p },
            Field::Rationals => self.int(value as i64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms, residues in `[0, p)`.
///
/// Arithmetic between scalars of different fields is a programming error and panics;
/// the solvers check field agreement up front and report it as an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value as u64, (*modulus - 2) as u64, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut result = self.field().one();
        for _ in 0..exp {
            result *= self;
        }
        result
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(self, k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    /// The value as an `i64` when it is an integer of moderate size (residues map to `[0, p)`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn same_modulus(a: u32, b: u32) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a as u64
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % m) as u32,
                    modulus: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % m) as u32,
                    modulus: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse().expect("division by zero scalar")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        assert!(Field::prime(5).is_ok());
        assert!(matches!(Field::prime(2), Err(LinalgError::CharacteristicTwo)));
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn residues_stay_in_range() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.int(-1), f5.int(4));
        assert_eq!((f5.int(3) * f5.int(4)).to_i64(), Some(2));
        assert_eq!(f5.int(3).inverse().unwrap(), f5.int(2));
        assert_eq!(f5.parse("1/2").unwrap(), f5.int(3));
        assert!(f5.parse("1/5").is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rationals;
        let half = q.parse("2/4").unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!((half.clone() + half).to_string(), "1");
        assert_eq!(q.parse("-3").unwrap().to_string(), "-3");
        assert_eq!(q.int(-2).pow(3), q.int(-8));
    }
}

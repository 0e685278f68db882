//! Exact coefficient fields: the rationals, prime fields and the rational
//! function field F_p(x).

mod fp_poly;
mod rational_function;

use alloc::string::{String, ToString};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use fp_poly::FpPoly;
pub use rational_function::RationalFunction;

use crate::error::{Error, Result};

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Which field the scalars live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    RationalFunctions { p: u64, var: String },
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn rational_functions(p: u64, var: impl Into<String>) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::RationalFunctions { p, var: var.into() })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) | Field::RationalFunctions { p, .. } => *p,
        }
    }

    /// Q and F_p are perfect; F_p(x) is not.
    pub fn is_perfect(&self) -> bool {
        !matches!(self, Field::RationalFunctions { .. })
    }

    /// Name of the transcendental of F_p(x).
    pub fn function_variable(&self) -> Option<&str> {
        match self {
            Field::RationalFunctions { var, .. } => Some(var),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Prime { value: reduce_bigint(n, *p), modulus: *p },
            Field::RationalFunctions { p, .. } => {
                Scalar::Function(RationalFunction::from_poly(FpPoly::constant(*p, reduce_bigint(n, *p))))
            }
        }
    }

    /// `num / den` as a field element.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        self.from_bigint(num).try_div(&self.from_bigint(den))
    }

    /// The generator `x` of F_p(x).
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            Field::RationalFunctions { p, .. } => Ok(Scalar::Function(RationalFunction::from_poly(FpPoly::x(*p)))),
            _ => Err(Error::WrongFieldKind),
        }
    }

    /// Whether `s` is a well-formed element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Prime { modulus, .. }) => p == modulus,
            (Field::RationalFunctions { p, .. }, Scalar::Function(f)) => *p == f.modulus(),
            _ => false,
        }
    }

    /// Canonical text of a scalar; `parse_scalar(format_scalar(a)) == a`.
    pub fn format_scalar(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Prime { value, .. } => value.to_string(),
            Scalar::Function(f) => f.format(self.function_variable().unwrap_or("x")),
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        crate::parse::parse_scalar(self, text)
    }

    /// Short descriptor used on the command line: `QQ`, `Fp:5`, `FpX:2`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rationals => "QQ".into(),
            Field::Prime(p) => alloc::format!("Fp:{p}"),
            Field::RationalFunctions { p, .. } => alloc::format!("FpX:{p}"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// An exact field element. Values are canonical, so `==` is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    Function(RationalFunction),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Function(f) => f.is_one(),
        }
    }

    /// True when printing needs an explicit leading minus (only over Q).
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: fp_poly::add_mod(*a, *b, *p), modulus: *p }
            }
            (Scalar::Function(a), Scalar::Function(b)) if a.modulus() == b.modulus() => Scalar::Function(a.add(b)),
            _ => return Err(Error::FieldMismatch),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: fp_poly::mul_mod(*a, *b, *p), modulus: *p }
            }
            (Scalar::Function(a), Scalar::Function(b)) if a.modulus() == b.modulus() => Scalar::Function(a.mul(b)),
            _ => return Err(Error::FieldMismatch),
        })
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: fp_poly::inv_mod(*value, *modulus), modulus: *modulus }
            }
            Scalar::Function(f) => Scalar::Function(f.inverse().expect("nonzero")),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inverse()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime { value: fp_poly::sub_mod(0, *value, *modulus), modulus: *modulus },
            Scalar::Function(f) => Scalar::Function(f.neg()),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Prime { modulus, .. } => Scalar::Prime { value: 1 % modulus, modulus: *modulus },
            Scalar::Function(f) => Scalar::Function(RationalFunction::from_poly(FpPoly::constant(f.modulus(), 1))),
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// d/dx on F_p(x).
    pub fn formal_derivative(&self) -> Result<Scalar> {
        match self {
            Scalar::Function(f) => Ok(Scalar::Function(f.derivative())),
            _ => Err(Error::WrongFieldKind),
        }
    }
}

// Operator forms panic on mismatched fields; every caller inside the crate
// works within a single ring, so a mismatch is a logic error.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rationals.from_fraction(&n.into(), &d.into()).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 3) + &q(1, 6), q(1, 2));
    }

    #[test]
    fn prime_inverse() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).inverse().unwrap(), f5.from_i64(3));
        assert_eq!(f5.from_i64(0).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn function_identity_product() {
        let f = Field::rational_functions(2, "x").unwrap();
        let x = f.generator().unwrap();
        let x1 = &x + &f.one();
        let a = x1.try_div(&x).unwrap();
        let b = x.try_div(&x1).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn derivatives() {
        let f3 = Field::rational_functions(3, "x").unwrap();
        let x = f3.generator().unwrap();
        assert_eq!((&x * &x).formal_derivative().unwrap(), &f3.from_i64(2) * &x);
        // d(1/x) = -1/x^2 = 2/x^2 over F_3; check via the product rule on (1/x)*x = 1
        let inv = x.inverse().unwrap();
        let d_inv = inv.formal_derivative().unwrap();
        assert_eq!(d_inv, f3.from_i64(2).try_div(&(&x * &x)).unwrap());
        assert!((&(&d_inv * &x) + &inv).is_zero());

        let f2 = Field::rational_functions(2, "x").unwrap();
        let y = f2.generator().unwrap();
        assert!((&y * &y).formal_derivative().unwrap().is_zero());
        assert_eq!(f2.one().formal_derivative().unwrap(), f2.zero());
        assert_eq!(q(1, 2).formal_derivative(), Err(Error::WrongFieldKind));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Field::prime(5).unwrap().one();
        let b = Field::prime(7).unwrap().one();
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.try_mul(&q(1, 2)), Err(Error::FieldMismatch));
    }

    #[test]
    fn non_primes_rejected() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::rational_functions(1, "x"), Err(Error::NotPrime(1)));
    }

    #[test]
    fn huge_integers_do_not_overflow() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let s = Field::Rationals.from_bigint(&big);
        let sq = &s * &s;
        assert_eq!(sq, Scalar::Rational(BigRational::from_integer(&big * &big)));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_bigint(&big), f7.from_i64((&big % 7u32).to_i64().unwrap()));
    }
}

use alloc::format;
use alloc::string::String;

use super::fp_poly::FpPoly;

/// Element of F_p(x) kept as `num / den` with `gcd(num, den) = 1` and `den`
/// monic, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: FpPoly,
    den: FpPoly,
}

impl RationalFunction {
    /// Panics if `den` is zero.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let p = num.modulus();
        if num.is_zero() {
            return RationalFunction { num, den: FpPoly::constant(p, 1) };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        let inv = super::fp_poly::inv_mod(lead, p);
        RationalFunction { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.modulus();
        RationalFunction { num, den: FpPoly::constant(p, 1) }
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    /// d/dx by the quotient rule.
    pub fn derivative(&self) -> Self {
        let top = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(top, self.den.mul(&self.den))
    }

    pub fn format(&self, var: &str) -> String {
        let wrap = |f: &FpPoly| {
            let s = f.format(var);
            if f.term_count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.format(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

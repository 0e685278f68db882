//! Dense univariate polynomials over a prime field, used as numerators and
//! denominators of rational functions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod the prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Coefficients stored low degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                add_mod(a, b, p)
            })
            .collect();
        Self::new(p, out)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = mul_mod(*rem.last().unwrap(), inv_lead, p);
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b, p), p);
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        Self::new(p, out)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (i, c) {
                (0, c) => write!(out, "{c}").unwrap(),
                (1, 1) => out.push_str(var),
                (1, c) => write!(out, "{c}*{var}").unwrap(),
                (i, 1) => write!(out, "{var}^{i}").unwrap(),
                (i, c) => write!(out, "{c}*{var}^{i}").unwrap(),
            }
        }
        out
    }
}

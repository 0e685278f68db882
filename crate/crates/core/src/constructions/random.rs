//! Seeded random inputs for the randomized checks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FpPoly, RationalFunction, Scalar};
use crate::poly::{Monomial, Polynomial, RingRef};

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fp_poly(rng: &mut SeededRng, p: u64, max_degree: usize) -> FpPoly {
    let d = rng.gen_range(0..=max_degree);
    FpPoly::new(p, (0..=d).map(|_| rng.gen_range(0..p)).collect())
}

/// A random element of `F_p(x)` with numerator and denominator of degree at
/// most `max_degree`.
pub fn rational_function(rng: &mut SeededRng, p: u64, max_degree: usize) -> RationalFunction {
    let num = fp_poly(rng, p, max_degree);
    let mut den = fp_poly(rng, p, max_degree);
    while den.is_zero() {
        den = fp_poly(rng, p, max_degree);
    }
    RationalFunction::new(num, den)
}

/// A random scalar, small enough to keep coefficient growth in check.
pub fn scalar(rng: &mut SeededRng, field: &Field) -> Scalar {
    match field {
        Field::Rationals => {
            let num = BigInt::from(rng.gen_range(-9i64..=9));
            let den = BigInt::from(rng.gen_range(1i64..=4));
            field.from_fraction(&num, &den).expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..*p as i64)),
        Field::RationalFunctions { p, .. } => Scalar::Function(rational_function(rng, *p, 2)),
    }
}

pub fn nonzero_scalar(rng: &mut SeededRng, field: &Field) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random polynomial whose monomials are drawn from `pool`.
pub fn polynomial_from(rng: &mut SeededRng, ring: &RingRef, pool: &[Monomial], max_terms: usize) -> Polynomial {
    if pool.is_empty() {
        return Polynomial::zero(ring);
    }
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Monomial, Scalar)> =
        (0..k).map(|_| (pool[rng.gen_range(0..pool.len())].clone(), nonzero_scalar(rng, ring.field()))).collect();
    Polynomial::from_terms(ring, terms)
}

/// All monomials of total degree `1..=max_degree`.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = alloc::vec![0u32; nvars];
    loop {
        let total: u32 = exps.iter().sum();
        if total >= 1 && total <= max_degree {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            exps[i] += 1;
            if exps.iter().sum::<u32>() <= max_degree {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

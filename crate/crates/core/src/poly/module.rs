use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use super::polynomial::{format_monomial, format_term, merge_terms};
use super::ring::{same_ring, Monomial, ModuleMonomial, RingRef};
use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Element of the free module `P^rank`, stored like a polynomial whose
/// monomials are tagged with a component index (position-over-term order,
/// increasing, leading term last).
#[derive(Clone, Debug)]
pub struct ModuleVector {
    ring: RingRef,
    rank: usize,
    terms: Vec<(ModuleMonomial, Scalar)>,
}

impl PartialEq for ModuleVector {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for ModuleVector {}

impl ModuleVector {
    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        ModuleVector { ring: ring.clone(), rank, terms: Vec::new() }
    }

    /// The basis vector `e_i`.
    pub fn unit(ring: &RingRef, rank: usize, i: usize) -> Self {
        assert!(i < rank);
        ModuleVector {
            ring: ring.clone(),
            rank,
            terms: alloc::vec![(ModuleMonomial::new(i, Monomial::one(ring.nvars())), ring.field().one())],
        }
    }

    pub fn from_components(ring: &RingRef, components: &[Polynomial]) -> Result<Self> {
        let rank = components.len();
        let mut terms = Vec::new();
        // higher index = lower priority, so emit components from the last one
        for (i, p) in components.iter().enumerate().rev() {
            if !same_ring(ring, p.ring()) {
                return Err(Error::RingMismatch);
            }
            terms.extend(p.terms().iter().map(|(m, c)| (ModuleMonomial::new(i, m.clone()), c.clone())));
        }
        Ok(ModuleVector { ring: ring.clone(), rank, terms })
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, rank: usize, terms: Vec<(ModuleMonomial, Scalar)>) -> Self {
        ModuleVector { ring: ring.clone(), rank, terms }
    }

    /// Rank-one vector carrying a polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        Self::from_components(p.ring(), core::slice::from_ref(p)).expect("same ring")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(ModuleMonomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(ModuleMonomial, Scalar)> {
        self.terms.last()
    }

    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.component == i)
            .map(|(k, c)| (k.monomial.clone(), c.clone()))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.component(i)).collect()
    }

    fn check(&self, other: &ModuleVector) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            Err(Error::RingMismatch)
        } else if self.rank != other.rank {
            Err(Error::RankMismatch)
        } else {
            Ok(())
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &ModuleVector, c: &Scalar) -> ModuleVector {
        let ring = &self.ring;
        ModuleVector {
            ring: ring.clone(),
            rank: self.rank,
            terms: merge_terms(&self.terms, &other.terms, c, |a, b| ring.cmp_module(a, b)),
        }
    }

    pub fn try_add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check(other)?;
        Ok(self.add_scaled(other, &self.ring.field().one()))
    }

    pub fn try_sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check(other)?;
        Ok(self.add_scaled(other, &-self.ring.field().one()))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return Self::zero(&self.ring, self.rank);
        }
        ModuleVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(k, d)| (k.clone(), c * d)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return Self::zero(&self.ring, self.rank);
        }
        ModuleVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, d)| (ModuleMonomial::new(k.component, k.monomial.mul(m)), c * d))
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<ModuleVector> {
        if !same_ring(&self.ring, p.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut acc = Self::zero(&self.ring, self.rank);
        for (m, c) in p.terms() {
            acc = acc.add_scaled(&self.mul_term(m, c), &self.ring.field().one());
        }
        Ok(acc)
    }

    /// Homogeneous when component `i` is given degree `shifts[i]`.
    pub fn weighted_degree(&self, shifts: &[u64]) -> Option<u64> {
        let mut degs = self.terms.iter().map(|(k, _)| shifts[k.component] + self.ring.weighted_degree(&k.monomial));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }
}

impl Add for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        self.try_add(rhs).expect("module mismatch")
    }
}

impl Sub for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        self.try_sub(rhs).expect("module mismatch")
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (key, c)) in self.terms.iter().rev().enumerate() {
            let mono = if key.monomial.is_one() {
                alloc::format!("e{}", key.component)
            } else {
                alloc::format!("{}*e{}", format_monomial(&self.ring, &key.monomial), key.component)
            };
            let (sign, body) = format_term(self.ring.field(), c, Some(mono));
            match (k, sign) {
                (0, '-') => write!(f, "-{body}")?,
                (0, _) => f.write_str(&body)?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

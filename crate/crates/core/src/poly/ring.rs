use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;

/// Monomial order on the ring. Modules extend it position-over-term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted degree first, then reverse lexicographic.
    #[default]
    WeightedGrevlex,
    Lex,
}

/// Dense exponent vector. Zero exponents are implicit in the sense that two
/// monomials of one ring always have vectors of the ring's length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a.checked_mul(k).expect("exponent overflow")).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent of a single variable if this is a pure power `X_i^e`, e > 0.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// A term position in a free module: basis vector `e_component` times a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMonomial {
    pub component: usize,
    pub monomial: Monomial,
}

impl ModuleMonomial {
    pub fn new(component: usize, monomial: Monomial) -> Self {
        ModuleMonomial { component, monomial }
    }

    pub fn divides(&self, other: &ModuleMonomial) -> bool {
        self.component == other.component && self.monomial.divides(&other.monomial)
    }
}

/// Polynomial ring over an exact field with named, positively weighted variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '#' || c == '\'')
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, weights: Vec<u32>, order: MonomialOrder) -> Result<RingRef> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing("one weight per variable required".into()));
        }
        if let Some(w) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidRing(alloc::format!("variable `{}` has weight 0", vars[w])));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_valid_name(v) {
                return Err(Error::InvalidRing(alloc::format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) || field.function_variable() == Some(v.as_str()) {
                return Err(Error::NameCollision(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, weights, order }))
    }

    /// Standard grading (all weights 1) and weighted grevlex.
    pub fn standard(field: Field, names: &[&str]) -> Result<RingRef> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), vec![1; names.len()], MonomialOrder::default())
    }

    pub fn weighted(field: Field, names: &[(&str, u32)]) -> Result<RingRef> {
        Self::new(
            field,
            names.iter().map(|(s, _)| s.to_string()).collect(),
            names.iter().map(|(_, w)| *w).collect(),
            MonomialOrder::default(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::WeightedGrevlex => self
                .weighted_degree(a)
                .cmp(&self.weighted_degree(b))
                .then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
        }
    }

    /// Position over term: a lower component index dominates.
    pub fn cmp_module(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        b.component.cmp(&a.component).then_with(|| self.cmp(&a.monomial, &b.monomial))
    }

    /// Every monomial of the given weighted degree, in increasing order.
    pub fn monomials_of_degree(&self, degree: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.fill_degree(0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp(a, b));
        out
    }

    fn fill_degree(&self, i: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let w = self.weights[i] as u64;
        let mut e = 0u64;
        while e * w <= left {
            exps[i] = e as u32;
            self.fill_degree(i + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }

    /// Same variables and weights over the same field with another order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing { order, ..self.clone() })
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

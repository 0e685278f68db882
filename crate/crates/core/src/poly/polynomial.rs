use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::ring::{same_ring, Monomial, RingRef};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Sparse polynomial. Terms are kept in increasing monomial order without
/// zero coefficients, so the leading term is the last one and `==` is
/// polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

/// Merge two sorted term lists, `a + c*b`.
pub(crate) fn merge_terms<K: Clone>(
    a: &[(K, Scalar)],
    b: &[(K, Scalar)],
    c: &Scalar,
    mut cmp: impl FnMut(&K, &K) -> Ordering,
) -> Vec<(K, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp(&a[i].0, &b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), c * &b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + &(c * &b[j].1);
                if !s.is_zero() {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(k, s)| (k.clone(), c * s)));
    out
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Self::from_terms(ring, alloc::vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), ring.field().one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds the canonical form from an arbitrary list of terms.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&a.0, &b.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Less));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.last()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, &self.field().one()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, &-self.field().one()))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                products.push((m.mul(n), c * d));
            }
        }
        Ok(Self::from_terms(&self.ring, products))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Polynomial, c: &Scalar) -> Polynomial {
        let ring = &self.ring;
        Polynomial { ring: ring.clone(), terms: merge_terms(&self.terms, &other.terms, c, |a, b| ring.cmp(a, b)) }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    /// `c * m * self`; order is multiplicative so sorting is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, d)| (n.mul(m), c * d)).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                (Monomial::from_exponents(exps), c * &field.from_i64(e as i64))
            })
            .collect();
        // lowering one exponent can collide monomials under weights, so re-sort
        Self::from_terms(&self.ring, terms)
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial_derivative(self.ring.var_index(name)?))
    }

    /// The common weighted degree of all terms, `None` if not homogeneous.
    /// The zero polynomial is reported as degree 0.
    pub fn weighted_degree(&self) -> Option<u64> {
        let mut degs = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree().is_some()
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u64, Polynomial> {
        let mut parts: BTreeMap<u64, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(self.ring.weighted_degree(m)).or_default().push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|(d, t)| (d, Polynomial::from_sorted_terms(&self.ring, t))).collect()
    }

    /// `sum_i weight(X_i) * X_i * dG/dX_i`.
    pub fn euler_apply(&self) -> Polynomial {
        let ring = &self.ring;
        let mut acc = Self::zero(ring);
        for i in 0..ring.nvars() {
            let w = ring.field().from_i64(ring.weights()[i] as i64);
            let part = self.partial_derivative(i).mul_term(&Monomial::var(ring.nvars(), i, 1), &w);
            acc = &acc + &part;
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` of this ring
    /// to variable `mapping[i]` of the target.
    pub fn embed(&self, target: &RingRef, mapping: &[usize]) -> Result<Polynomial> {
        if self.ring.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        if mapping.len() != self.ring.nvars() {
            return Err(Error::InvalidParameter("mapping must cover every variable".into()));
        }
        let mut seen = alloc::vec![false; target.nvars()];
        for &j in mapping {
            if j >= target.nvars() {
                return Err(Error::InvalidParameter("mapping index out of range".into()));
            }
            if seen[j] {
                return Err(Error::NameCollision(target.variables()[j].clone()));
            }
            seen[j] = true;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = alloc::vec![0u32; target.nvars()];
                for (i, &j) in mapping.iter().enumerate() {
                    e[j] = m.exponent(i);
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Ok(Self::from_terms(target, terms))
    }

    /// Renames variables by name; every variable of the ring must be mapped
    /// and the images must be distinct.
    pub fn rename_variables(&self, renaming: &[(&str, &str)]) -> Result<Polynomial> {
        let ring = &self.ring;
        let mut names: Vec<String> = Vec::with_capacity(ring.nvars());
        for v in ring.variables() {
            let (_, new) = renaming.iter().find(|(old, _)| old == v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            if names.iter().any(|n| n == new) {
                return Err(Error::NameCollision((*new).into()));
            }
            names.push((*new).into());
        }
        let target = super::PolyRing::new(ring.field().clone(), names, ring.weights().to_vec(), ring.order())?;
        let identity: Vec<usize> = (0..ring.nvars()).collect();
        self.embed(&target, &identity)
    }

    /// Evaluate under a ring map given by variable images in another ring.
    /// `reduce` is applied after every multiplication to keep sizes bounded.
    pub fn substitute(&self, images: &[Polynomial], target: &RingRef, reduce: &dyn Fn(Polynomial) -> Polynomial) -> Polynomial {
        debug_assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|g| alloc::vec![Polynomial::one(target), g.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = reduce(&powers[i][powers[i].len() - 1] * &images[i]);
                    powers[i].push(next);
                }
                t = reduce(&t * &powers[i][e as usize]);
            }
            acc = &acc + &t;
        }
        reduce(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field().one())
    }
}

pub(crate) fn format_monomial(ring: &RingRef, m: &Monomial) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&ring.variables()[i]);
        if e > 1 {
            write!(s, "^{e}").unwrap();
        }
    }
    s
}

/// Formats `c * m` for position `first`/later in a sum, returning
/// (sign, body) where sign is '+' or '-'.
pub(crate) fn format_term(field: &Field, c: &Scalar, mono: Option<String>) -> (char, String) {
    let (sign, mag) = if c.is_negative() { ('-', -c) } else { ('+', c.clone()) };
    let cs = field.format_scalar(&mag);
    let body = match mono {
        None => {
            if matches!(c, Scalar::Function(_)) && (cs.contains('+') || cs.contains('/') || cs.contains('*')) {
                alloc::format!("({cs})")
            } else {
                cs
            }
        }
        Some(m) if mag.is_one() => m,
        Some(m) => {
            if matches!(c, Scalar::Function(_)) && (cs.contains('+') || cs.contains('/') || cs.contains('*')) {
                alloc::format!("({cs})*{m}")
            } else {
                alloc::format!("{cs}*{m}")
            }
        }
    };
    (sign, body)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = (!m.is_one()).then(|| format_monomial(&self.ring, m));
            let (sign, body) = format_term(self.field(), c, mono);
            match (k, sign) {
                (0, '-') => write!(f, "-{body}")?,
                (0, _) => f.write_str(&body)?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

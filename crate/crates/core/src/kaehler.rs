//! `Ω_{R/k}` for `R = P/I`, presented as `P^s` modulo the Jacobian rows of
//! the generators of `I` and `I·e_i`; `e_i` stands for `dX_i`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{AlgebraMap, BuildOptions, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{Dimension, GroebnerBasis, Staircase};
use crate::linalg::Matrix;
use crate::poly::{format_monomial, format_term, same_ring, ModuleMonomial, ModuleVector, Polynomial, RingRef};

/// What the derivation is linear over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Base {
    /// The coefficient field.
    #[default]
    Field,
    /// The degree-zero part of a graded algebra. Weights are positive, so
    /// this is again the coefficient field, but the algebra must be graded.
    DegreeZero,
}

#[derive(Clone, Debug)]
pub struct KaehlerModule {
    algebra: Arc<QuotientAlgebra>,
    base: Base,
    rows: Vec<ModuleVector>,
    gb: GroebnerBasis,
}

/// `Σ ∂f/∂X_i e_i` in `P^s`.
pub fn gradient(f: &Polynomial) -> ModuleVector {
    let ring = f.ring();
    let comps: Vec<Polynomial> = (0..ring.nvars()).map(|i| f.partial_derivative(i)).collect();
    ModuleVector::from_components(ring, &comps).expect("components share the ring")
}

impl KaehlerModule {
    pub fn new(algebra: &Arc<QuotientAlgebra>, base: Base, opts: &BuildOptions) -> Result<Self> {
        let ring = algebra.ring().clone();
        let s = ring.nvars();
        let ideal = algebra.ideal_generators();
        if base == Base::DegreeZero && !ideal.iter().all(Polynomial::is_homogeneous) {
            return Err(Error::NotHomogeneous(String::from("relations of a degree-zero relative module")));
        }
        let mut rows: Vec<ModuleVector> = Vec::new();
        for g in algebra.presentation().relations().iter().chain(&ideal) {
            let row = gradient(g);
            if !row.is_zero() && !rows.contains(&row) {
                rows.push(row);
            }
        }
        // I·P^s has the basis {g e_i} in a position-over-term order.
        let mut seed = Vec::with_capacity(ideal.len() * s);
        for i in 0..s {
            for g in &ideal {
                seed.push(ModuleVector::unit(&ring, s, i).mul_poly(g)?);
            }
        }
        let seed_gb = GroebnerBasis::from_reduced_unchecked(&ring, s, seed);
        let gb = seed_gb.extend(&rows, opts.budget)?;
        Ok(KaehlerModule { algebra: algebra.clone(), base, rows, gb })
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &RingRef {
        self.algebra.ring()
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.ring().nvars()
    }

    /// Jacobian rows of the presentation relations and of the ideal basis.
    pub fn jacobian_rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        self.gb.normal_form(v)
    }

    pub fn is_zero(&self, v: &ModuleVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// `d(f)`, reduced.
    pub fn d_image(&self, f: &Polynomial) -> Result<ModuleVector> {
        if !same_ring(f.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(&gradient(f)))
    }

    pub fn is_d_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.d_image(f)?.is_zero())
    }

    /// Every `dX_i` lies in the relation submodule.
    pub fn is_omega_zero(&self) -> bool {
        (0..self.rank()).all(|i| self.is_zero(&ModuleVector::unit(self.ring(), self.rank(), i)))
    }

    /// `dim_k Ω` from the staircase of the relation submodule.
    pub fn dimension(&self, cap: usize) -> Result<Dimension> {
        Ok(match self.gb.staircase(cap)? {
            Staircase::Finite(v) => Dimension::Finite(v.len()),
            Staircase::Infinite => Dimension::Infinite,
        })
    }

    /// `dim_k Ω` as `s·dim R` minus the rank of the span of `b·dG_j` over
    /// the staircase basis `b` of `R`, all in `R^s`. Independent of the
    /// module basis.
    pub fn dimension_dense(&self) -> Result<usize> {
        let alg = &self.algebra;
        let n = alg.finite_dimension()?;
        let s = self.rank();
        let mut cols = Vec::new();
        for row in &self.rows {
            let comps = row.components();
            for j in 0..n {
                let b = alg.basis_element(j)?;
                let mut col = Vec::with_capacity(s * n);
                for c in &comps {
                    col.extend(alg.coordinates(&(&b * c))?);
                }
                cols.push(col);
            }
        }
        let rank = Matrix::from_columns(self.ring().field(), s * n, &cols).rank();
        Ok(s * n - rank)
    }

    /// Basis of `{ f ∈ R_deg : df = 0 }`, from the staircase monomials of
    /// degree `deg`.
    pub fn derivation_kernel_in_degree(&self, deg: u64) -> Result<Vec<Polynomial>> {
        if !self.algebra.ideal_generators().iter().all(Polynomial::is_homogeneous) {
            return Err(Error::NotHomogeneous(String::from("relations")));
        }
        let ring = self.ring();
        let basis = self.algebra.groebner_basis().staircase_in_degree(0, deg);
        let images: Vec<ModuleVector> = basis
            .iter()
            .map(|m| self.reduce(&gradient(&Polynomial::monomial(ring, m.clone(), ring.field().one()))))
            .collect();
        let mut index: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
        for v in &images {
            for (key, _) in v.terms() {
                let next = index.len();
                index.entry((key.component, key.monomial.exponents().to_vec())).or_insert(next);
            }
        }
        let cols: Vec<Vec<Scalar>> = images
            .iter()
            .map(|v| {
                let mut col = alloc::vec![ring.field().zero(); index.len()];
                for (key, c) in v.terms() {
                    col[index[&(key.component, key.monomial.exponents().to_vec())]] = c.clone();
                }
                col
            })
            .collect();
        let matrix = Matrix::from_columns(ring.field(), index.len(), &cols);
        Ok(matrix
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let terms = basis.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c)).collect();
                Polynomial::from_terms(ring, terms)
            })
            .collect())
    }

    /// In characteristic `p`: the kernel of `d` vanishes in every degree
    /// `1 ≤ d ≤ max_degree` prime to `p`.
    pub fn veronese_containment_check(&self, max_degree: u64) -> Result<VeroneseCheck> {
        let p = self.ring().field().characteristic();
        if p == 0 {
            return Err(Error::InvalidParameter(String::from("Veronese containment needs positive characteristic")));
        }
        let mut per_degree = Vec::new();
        let mut pass = true;
        for d in 1..=max_degree {
            let k = self.derivation_kernel_in_degree(d)?.len();
            if d % p != 0 && k != 0 {
                pass = false;
            }
            per_degree.push((d, k));
        }
        Ok(VeroneseCheck { characteristic: p, per_degree, pass })
    }

    /// Renders a vector with `dX` in place of `e_i`.
    pub fn format(&self, v: &ModuleVector) -> String {
        format_differential(self.ring(), v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseCheck {
    pub characteristic: u64,
    /// `(degree, dim ker d in that degree)`.
    pub per_degree: Vec<(u64, usize)>,
    pub pass: bool,
}

pub fn format_differential(ring: &RingRef, v: &ModuleVector) -> String {
    if v.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (key, c)) in v.terms().iter().rev().enumerate() {
        let d = alloc::format!("d{}", ring.variables()[key.component]);
        let mono = if key.monomial.is_one() { d } else { alloc::format!("{}*{d}", format_monomial(ring, &key.monomial)) };
        let (sign, body) = format_term(ring.field(), c, Some(mono));
        match (k, sign) {
            (0, '-') => write!(out, "-{body}").unwrap(),
            (0, _) => out.push_str(&body),
            (_, s) => write!(out, " {s} {body}").unwrap(),
        }
    }
    out
}

/// Images `d(φ(X_i))` of the generators `dX_i` in the target module.
pub fn induced_map_on_omega(phi: &AlgebraMap, target: &KaehlerModule) -> Result<Vec<ModuleVector>> {
    if !same_ring(phi.target().ring(), target.ring()) {
        return Err(Error::RingMismatch);
    }
    phi.images().iter().map(|g| target.d_image(g)).collect()
}

pub fn is_zero_induced_map(phi: &AlgebraMap, target: &KaehlerModule) -> Result<bool> {
    Ok(induced_map_on_omega(phi, target)?.iter().all(ModuleVector::is_zero))
}

/// Leading positions of the relation submodule, mostly for diagnostics.
pub fn relation_leads(k: &KaehlerModule) -> Vec<ModuleMonomial> {
    k.gb.leading_monomials()
}

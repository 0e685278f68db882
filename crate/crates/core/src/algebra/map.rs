use alloc::sync::Arc;
use alloc::vec::Vec;

use super::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{same_ring, Polynomial};

/// A k-algebra map `A → B` given by the images of the variables of `A`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<QuotientAlgebra>,
    target: Arc<QuotientAlgebra>,
    images: Vec<Polynomial>,
    certificate: Vec<Polynomial>,
}

impl AlgebraMap {
    /// Checks that every generator of the source ideal maps to zero; the
    /// images of those generators are kept as a certificate.
    pub fn new(source: &Arc<QuotientAlgebra>, target: &Arc<QuotientAlgebra>, images: Vec<Polynomial>) -> Result<Self> {
        if source.ring().field() != target.ring().field() {
            return Err(Error::FieldMismatch);
        }
        if images.len() != source.ring().nvars() {
            return Err(Error::InvalidParameter("one image per source variable required".into()));
        }
        if images.iter().any(|g| !same_ring(g.ring(), target.ring())) {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Polynomial> = images.iter().map(|g| target.reduce(g)).collect();
        let mut certificate = Vec::new();
        for rel in source.ideal_generators() {
            let residue = apply_raw(&images, target, &rel);
            if !residue.is_zero() {
                return Err(Error::NotARingMap { relation: alloc::format!("{rel}"), residue: alloc::format!("{residue}") });
            }
            certificate.push(rel);
        }
        Ok(AlgebraMap { source: source.clone(), target: target.clone(), images, certificate })
    }

    pub fn identity(algebra: &Arc<QuotientAlgebra>) -> Self {
        let images = (0..algebra.ring().nvars()).map(|i| algebra.generator(i)).collect();
        AlgebraMap { source: algebra.clone(), target: algebra.clone(), images, certificate: algebra.ideal_generators() }
    }

    pub fn source(&self) -> &Arc<QuotientAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuotientAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Source relations verified to vanish in the target.
    pub fn certificate(&self) -> &[Polynomial] {
        &self.certificate
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), self.source.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(apply_raw(&self.images, &self.target, f))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AlgebraMap) -> Result<AlgebraMap> {
        if !Arc::ptr_eq(&self.target, &next.source) && !same_ring(self.target.ring(), next.source.ring()) {
            return Err(Error::RingMismatch);
        }
        let images = self.images.iter().map(|g| next.apply(g)).collect::<Result<Vec<_>>>()?;
        AlgebraMap::new(&self.source, &next.target, images)
    }

    /// Matrix in the staircase bases; column `j` holds the image of the
    /// `j`-th source basis monomial.
    pub fn linear_matrix(&self) -> Result<Matrix> {
        let n = self.source.finite_dimension()?;
        let m = self.target.finite_dimension()?;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.target.coordinates(&self.apply(&self.source.basis_element(j)?)?)?);
        }
        Ok(Matrix::from_columns(self.target.ring().field(), m, &cols))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.linear_matrix()?.rank() == self.source.finite_dimension()?)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.linear_matrix()?.rank() == self.target.finite_dimension()?)
    }
}

fn apply_raw(images: &[Polynomial], target: &QuotientAlgebra, f: &Polynomial) -> Polynomial {
    let reduce = |p: Polynomial| target.reduce(&p);
    f.substitute(images, target.ring(), &reduce)
}

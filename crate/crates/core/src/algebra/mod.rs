//! Finitely presented algebras `P/I`, their tensor products, quotients and
//! maps. Power-series quotients `k[[X]]/I` by m-primary ideals are realized
//! as `P/(I + m^N)` for the first `N` at which the dimension stabilizes.

mod map;
mod tensor;

use alloc::string::String;
use alloc::vec::Vec;

pub use map::AlgebraMap;
pub use tensor::{tensor_all, tensor_presentations, tensor_product};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{Dimension, GroebnerBasis, Staircase, DEFAULT_BUDGET, DEFAULT_STAIRCASE_CAP};
use crate::poly::{same_ring, Monomial, Polynomial, RingRef};

/// How a presentation is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// The polynomial quotient itself.
    #[default]
    Plain,
    /// The power-series quotient at the origin; relations must be m-primary.
    Local,
    /// Plain quotient by homogeneous relations.
    Graded,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Local => "local",
            Mode::Graded => "graded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: RingRef,
    relations: Vec<Polynomial>,
    mode: Mode,
}

impl Presentation {
    pub fn new(ring: &RingRef, relations: Vec<Polynomial>, mode: Mode) -> Result<Self> {
        for r in &relations {
            if !same_ring(ring, r.ring()) {
                return Err(Error::RingMismatch);
            }
            if mode == Mode::Graded && !r.is_homogeneous() {
                return Err(Error::NotHomogeneous(alloc::format!("{r}")));
            }
        }
        Ok(Presentation { ring: ring.clone(), relations, mode })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_graded(&self) -> bool {
        self.relations.iter().all(Polynomial::is_homogeneous)
    }
}

/// Resource limits for building algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub budget: u64,
    pub staircase_cap: usize,
    /// Largest `N` tried when stabilizing `I + m^N`.
    pub stabilization_cap: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { budget: DEFAULT_BUDGET, staircase_cap: DEFAULT_STAIRCASE_CAP, stabilization_cap: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    presentation: Presentation,
    gb: GroebnerBasis,
    staircase: Option<Vec<Monomial>>,
    dimension: Dimension,
    stabilized_at: Option<u32>,
}

/// All monomials of total (unweighted) degree `n` in `nvars` variables.
fn monomials_of_total_degree(nvars: usize, n: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps.clone()));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            go(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(0, n, &mut alloc::vec![0; nvars], &mut out);
    }
    out
}

/// Generators of `m^n` for the maximal ideal at the origin.
pub fn maximal_ideal_power(ring: &RingRef, n: u32) -> Vec<Polynomial> {
    monomials_of_total_degree(ring.nvars(), n)
        .into_iter()
        .map(|m| Polynomial::monomial(ring, m, ring.field().one()))
        .collect()
}

fn finish(presentation: Presentation, gb: GroebnerBasis, stabilized_at: Option<u32>, opts: &BuildOptions) -> Result<QuotientAlgebra> {
    let (staircase, dimension) = match gb.staircase(opts.staircase_cap)? {
        Staircase::Finite(st) => {
            let n = st.len();
            (Some(st.into_iter().map(|m| m.monomial).collect()), Dimension::Finite(n))
        }
        Staircase::Infinite => (None, Dimension::Infinite),
    };
    Ok(QuotientAlgebra { presentation, gb, staircase, dimension, stabilized_at })
}

pub fn make_quotient(presentation: &Presentation, opts: &BuildOptions) -> Result<QuotientAlgebra> {
    match presentation.mode {
        Mode::Local => artinian_local_model(presentation.ring(), presentation.relations(), opts),
        Mode::Plain | Mode::Graded => {
            let gb = GroebnerBasis::ideal(presentation.ring(), presentation.relations(), opts.budget)?;
            finish(presentation.clone(), gb, None, opts)
        }
    }
}

/// `k[[X]]/I` as `P/(I + m^N)` at the first `N` with
/// `dim P/(I + m^N) = dim P/(I + m^{N+1})`. Equality of the two dimensions
/// means `m^N ⊆ I + m^{N+1}`, so Nakayama in the power-series ring gives
/// `m^N ⊆ I`.
pub fn artinian_local_model(ring: &RingRef, generators: &[Polynomial], opts: &BuildOptions) -> Result<QuotientAlgebra> {
    let presentation = Presentation::new(ring, generators.to_vec(), Mode::Local)?;
    let truncated = |n: u32| -> Result<(GroebnerBasis, usize)> {
        let mut gens = generators.to_vec();
        gens.extend(maximal_ideal_power(ring, n));
        let gb = GroebnerBasis::ideal(ring, &gens, opts.budget)?;
        let dim = gb.dimension()?.finite().expect("contains a power of m");
        Ok((gb, dim))
    };
    let (mut gb, mut dim) = truncated(1)?;
    for n in 1..=opts.stabilization_cap {
        let (next_gb, next_dim) = truncated(n + 1)?;
        if next_dim == dim {
            return finish(presentation, gb, Some(n), opts);
        }
        gb = next_gb;
        dim = next_dim;
    }
    Err(Error::NotMPrimary(opts.stabilization_cap))
}

impl QuotientAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ring(&self) -> &RingRef {
        self.presentation.ring()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Generators of the ideal actually quotiented by (the reduced basis).
    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        self.gb.polynomials()
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn finite_dimension(&self) -> Result<usize> {
        self.dimension.finite().ok_or(Error::InfiniteDimension)
    }

    pub fn stabilized_at(&self) -> Option<u32> {
        self.stabilized_at
    }

    /// Staircase basis in increasing monomial order (starts with 1).
    pub fn staircase(&self) -> Option<&[Monomial]> {
        self.staircase.as_deref()
    }

    fn staircase_or_err(&self) -> Result<&[Monomial]> {
        self.staircase.as_deref().ok_or(Error::InfiniteDimension)
    }

    pub fn basis_element(&self, i: usize) -> Result<Polynomial> {
        let m = self.staircase_or_err()?.get(i).ok_or(Error::InvalidParameter("basis index".into()))?;
        Ok(Polynomial::monomial(self.ring(), m.clone(), self.ring().field().one()))
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form_poly(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn equal(&self, f: &Polynomial, g: &Polynomial) -> bool {
        self.is_zero(&(f - g))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&(f + g))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&(f * g))
    }

    pub fn pow(&self, f: &Polynomial, k: u32) -> Polynomial {
        let mut acc = self.reduce(&Polynomial::one(self.ring()));
        let base = self.reduce(f);
        for _ in 0..k {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Image of the `i`-th variable.
    pub fn generator(&self, i: usize) -> Polynomial {
        self.reduce(&Polynomial::var(self.ring(), i))
    }

    /// Coordinates of `f` in the staircase basis.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Scalar>> {
        let st = self.staircase_or_err()?;
        let ring = self.ring();
        let mut out = alloc::vec![ring.field().zero(); st.len()];
        for (m, c) in self.reduce(f).terms() {
            let i = st.binary_search_by(|s| ring.cmp(s, m)).expect("normal forms live on the staircase");
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// Element with the given staircase coordinates.
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Result<Polynomial> {
        let st = self.staircase_or_err()?;
        let terms = st.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect();
        Ok(Polynomial::from_terms(self.ring(), terms))
    }

    /// Least `t` with `a^t = 0`, or `None` when `a` is not nilpotent. Powers are
    /// tried up to `dim + 1`, beyond which a nilpotent element cannot survive.
    pub fn nilpotency_index(&self, a: &Polynomial) -> Result<Option<u32>> {
        let dim = self.finite_dimension()?;
        let base = self.reduce(a);
        let mut power = self.reduce(&Polynomial::one(self.ring()));
        for t in 1..=(dim as u32 + 1) {
            power = self.mul(&power, &base);
            if power.is_zero() {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Every generator is nilpotent, so `m = (X_1, …, X_s)` is the unique
    /// maximal ideal and the residue field is the coefficient field. The zero
    /// ring is excluded.
    pub fn is_local_with_nilpotent_generators(&self) -> Result<bool> {
        if self.finite_dimension()? == 0 {
            return Ok(false);
        }
        for i in 0..self.ring().nvars() {
            if self.nilpotency_index(&Polynomial::var(self.ring(), i))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For local algebras with nilpotent generators: reduced iff dimension 1.
    pub fn has_nonzero_nilpotent(&self) -> Result<bool> {
        if !self.is_local_with_nilpotent_generators()? {
            return Err(Error::NotLocal);
        }
        Ok(self.finite_dimension()? > 1)
    }

    /// Staircase monomials other than 1; a basis of the maximal ideal when the
    /// algebra is local with nilpotent generators.
    pub fn maximal_ideal_basis(&self) -> Result<Vec<Polynomial>> {
        let st = self.staircase_or_err()?;
        Ok(st
            .iter()
            .filter(|m| !m.is_one())
            .map(|m| Polynomial::monomial(self.ring(), m.clone(), self.ring().field().one()))
            .collect())
    }

    /// `A / (elements)`, reusing the basis already computed.
    pub fn quotient_by(&self, elements: &[Polynomial], opts: &BuildOptions) -> Result<QuotientAlgebra> {
        let mut relations = self.presentation.relations.clone();
        relations.extend(elements.iter().cloned());
        let mode = match self.presentation.mode {
            Mode::Graded if !elements.iter().all(Polynomial::is_homogeneous) => Mode::Plain,
            m => m,
        };
        let presentation = Presentation::new(self.ring(), relations, mode)?;
        let gb = self.gb.extend_ideal(elements, opts.budget)?;
        finish(presentation, gb, self.stabilized_at, opts)
    }

    /// `self ⊗_k other`, with the variables of `other` renamed on collision.
    pub fn tensor(&self, other: &QuotientAlgebra, opts: &BuildOptions) -> Result<QuotientAlgebra> {
        Ok(tensor_all(&[self, other], opts)?.0)
    }

    /// Names of the ring variables.
    pub fn variable_names(&self) -> Vec<String> {
        self.ring().variables().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_polynomial;
    use crate::poly::PolyRing;

    fn alg(names: &[&str], rels: &[&str], mode: Mode) -> QuotientAlgebra {
        let r = PolyRing::standard(Field::Rationals, names).unwrap();
        let rels = rels.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        make_quotient(&Presentation::new(&r, rels, mode).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = alg(&["Z"], &["Z^2"], Mode::Plain);
        assert_eq!(a.dimension(), Dimension::Finite(2));
        let z = Polynomial::var(a.ring(), 0);
        assert_eq!(a.nilpotency_index(&z).unwrap(), Some(2));
        assert_eq!(a.nilpotency_index(&Polynomial::one(a.ring())).unwrap(), None);
        assert!(a.has_nonzero_nilpotent().unwrap());
    }

    #[test]
    fn truncated_polynomial_ring() {
        for t in 1..6u32 {
            let rel = alloc::format!("Z^{t}");
            assert_eq!(alg(&["Z"], &[&rel], Mode::Plain).dimension(), Dimension::Finite(t as usize));
        }
        assert_eq!(alg(&["X"], &[], Mode::Plain).dimension(), Dimension::Infinite);
    }

    #[test]
    fn local_model_of_monomial_ideal() {
        let a = alg(&["X", "Y"], &["X^2", "Y^3"], Mode::Local);
        assert_eq!(a.dimension(), Dimension::Finite(6));
    }

    #[test]
    fn local_model_discards_points_away_from_origin() {
        // X(1 - X) vanishes at 0 and 1; only the origin survives locally.
        let a = alg(&["X"], &["X - X^2"], Mode::Local);
        assert_eq!(a.dimension(), Dimension::Finite(1));
        let plain = alg(&["X"], &["X - X^2"], Mode::Plain);
        assert_eq!(plain.dimension(), Dimension::Finite(2));
        assert!(!plain.is_local_with_nilpotent_generators().unwrap());
    }

    #[test]
    fn non_primary_ideal_rejected() {
        let r = PolyRing::standard(Field::Rationals, &["X", "Y"]).unwrap();
        let opts = BuildOptions { stabilization_cap: 12, ..Default::default() };
        let err = artinian_local_model(&r, &[Polynomial::var(&r, 0)], &opts).unwrap_err();
        assert_eq!(err, Error::NotMPrimary(12));
    }

    #[test]
    fn quotient_by_elements() {
        let a = alg(&["Z"], &["Z^2"], Mode::Plain);
        let z = Polynomial::var(a.ring(), 0);
        let k = a.quotient_by(&[z], &BuildOptions::default()).unwrap();
        assert_eq!(k.dimension(), Dimension::Finite(1));
        let same = a.quotient_by(&[Polynomial::zero(a.ring())], &BuildOptions::default()).unwrap();
        assert_eq!(same.dimension(), Dimension::Finite(2));
        assert_eq!(same.ideal_generators(), a.ideal_generators());
    }

    #[test]
    fn idempotent_local_algebra_is_not_local_with_nilpotent_generators() {
        let a = alg(&["Z"], &["Z^2 - 1"], Mode::Plain);
        assert!(!a.is_local_with_nilpotent_generators().unwrap());
        assert_eq!(a.has_nonzero_nilpotent(), Err(Error::NotLocal));
    }

    #[test]
    fn field_is_local_and_reduced() {
        let a = alg(&[], &[], Mode::Plain);
        assert_eq!(a.dimension(), Dimension::Finite(1));
        assert!(a.is_local_with_nilpotent_generators().unwrap());
        assert!(!a.has_nonzero_nilpotent().unwrap());
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = alg(&["X", "Y"], &["X^2", "Y^2"], Mode::Plain);
        let f = parse_polynomial(a.ring(), "3 + X*Y - 2*Y + X^3").unwrap();
        let c = a.coordinates(&f).unwrap();
        assert_eq!(a.from_coordinates(&c).unwrap(), a.reduce(&f));
    }
}

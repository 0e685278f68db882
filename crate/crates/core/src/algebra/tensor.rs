use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{finish, BuildOptions, Mode, Presentation, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::groebner::{Dimension, GroebnerBasis};
use crate::poly::{ModuleVector, PolyRing, Polynomial, RingRef};

/// Names for the variables of several factors. Factor 0 keeps its names; a
/// later factor's variable that collides with a name already in use becomes
/// `name#i` (`i` the 1-based factor index), primed until free.
fn merged_names(rings: &[&RingRef]) -> (Vec<String>, Vec<u32>, Vec<Vec<usize>>) {
    let mut names: Vec<String> = Vec::new();
    let mut weights = Vec::new();
    let mut maps = Vec::new();
    for (i, ring) in rings.iter().enumerate() {
        let mut map = Vec::new();
        for (v, &w) in ring.variables().iter().zip(ring.weights()) {
            let mut name = v.clone();
            if i > 0 && names.contains(&name) {
                name = format!("{v}#{}", i + 1);
                while names.contains(&name) {
                    name.push('\'');
                }
            }
            map.push(names.len());
            names.push(name);
            weights.push(w);
        }
        maps.push(map);
    }
    (names, weights, maps)
}

fn merged_ring(rings: &[&RingRef]) -> Result<(RingRef, Vec<Vec<usize>>)> {
    let first = rings.first().ok_or(Error::InvalidParameter("empty tensor product".into()))?;
    if rings.iter().any(|r| r.field() != first.field()) {
        return Err(Error::FieldMismatch);
    }
    let (names, weights, maps) = merged_names(rings);
    Ok((PolyRing::new(first.field().clone(), names, weights, first.order())?, maps))
}

/// Tensor product over the coefficient field of several presentations, with
/// the embedding of each factor's variables. Local only when every factor
/// is; graded only when every factor is.
pub fn tensor_presentations(factors: &[&Presentation]) -> Result<(Presentation, Vec<Vec<usize>>)> {
    let rings: Vec<&RingRef> = factors.iter().map(|p| p.ring()).collect();
    let (ring, maps) = merged_ring(&rings)?;
    let mut relations = Vec::new();
    for (p, map) in factors.iter().zip(&maps) {
        for r in p.relations() {
            relations.push(r.embed(&ring, map)?);
        }
    }
    let mode = if factors.iter().all(|p| p.mode() == Mode::Local) {
        Mode::Local
    } else if factors.iter().all(|p| p.mode() == Mode::Graded) {
        Mode::Graded
    } else {
        Mode::Plain
    };
    Ok((Presentation::new(&ring, relations, mode)?, maps))
}

pub fn tensor_product(a: &Presentation, b: &Presentation) -> Result<Presentation> {
    Ok(tensor_presentations(&[a, b])?.0)
}

/// Tensor product of finished algebras, with the embedding of each factor.
/// The union of reduced bases in disjoint variables is again reduced, so no
/// Gröbner computation is needed. The product of the dimensions is checked
/// against the staircase cap before anything is built.
pub fn tensor_all(factors: &[&QuotientAlgebra], opts: &BuildOptions) -> Result<(QuotientAlgebra, Vec<Vec<usize>>)> {
    let mut needed: u128 = 1;
    for f in factors {
        if let Dimension::Finite(d) = f.dimension() {
            needed = needed.saturating_mul(d as u128);
        }
    }
    if needed > opts.staircase_cap as u128 {
        return Err(Error::CapExceeded { needed, cap: opts.staircase_cap });
    }
    let rings: Vec<&RingRef> = factors.iter().map(|a| a.ring()).collect();
    let (ring, maps) = merged_ring(&rings)?;
    let mut relations = Vec::new();
    let mut elements = Vec::new();
    for (alg, map) in factors.iter().zip(&maps) {
        for g in alg.ideal_generators() {
            let h = g.embed(&ring, map)?;
            elements.push(ModuleVector::from_polynomial(&h));
            relations.push(h);
        }
    }
    let mode = if factors.iter().all(|a| a.presentation().mode() == Mode::Graded) { Mode::Graded } else { Mode::Plain };
    let presentation = Presentation::new(&ring, relations, mode)?;
    let gb = if factors.iter().any(|a| a.groebner_basis().is_unit_ideal()) {
        GroebnerBasis::ideal(&ring, &[Polynomial::one(&ring)], opts.budget)?
    } else {
        GroebnerBasis::from_reduced_unchecked(&ring, 1, elements)
    };
    let stabilized_at = factors.iter().map(|a| a.stabilized_at()).try_fold(0u32, |acc, s| s.map(|s| acc.max(s)));
    Ok((finish(presentation, gb, stabilized_at, opts)?, maps))
}

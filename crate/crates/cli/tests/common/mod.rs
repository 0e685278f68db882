//! Independent oracles: dense Gaussian elimination on truncated monomial
//! spaces. Nothing here touches Gröbner bases.

#![allow(dead_code)]

use std::collections::BTreeMap;

use kahler_core::{Polynomial, RingRef, Scalar};

/// Rank of a list of dense rows, by plain elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        let pivot: Vec<Scalar> = rows[r].iter().map(|v| v * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot[j]);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Exponent vectors with total degree `< bound`.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if bound > 0 {
        go(0, bound - 1, &mut vec![0; nvars], &mut out);
    }
    out
}

/// Exponent vectors of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    monomials_below(nvars, d + 1).into_iter().filter(|e| e.iter().sum::<u32>() == d).collect()
}

fn mono(ring: &RingRef, exps: &[u32]) -> Polynomial {
    Polynomial::monomial(ring, kahler_core::Monomial::from_exponents(exps.to_vec()), ring.field().one())
}

fn row(p: &Polynomial, index: &BTreeMap<Vec<u32>, usize>, width: usize, keep: impl Fn(&[u32]) -> bool) -> Vec<Scalar> {
    let mut out = vec![p.ring().field().zero(); width];
    for (m, c) in p.terms() {
        if keep(m.exponents()) {
            out[index[m.exponents()]] = c.clone();
        }
    }
    out
}

/// `dim k[X]/(I + m^n)`: monomials of degree `< n` minus the rank of all
/// `monomial · generator` products truncated below degree `n`.
pub fn truncated_dimension(ring: &RingRef, gens: &[Polynomial], n: u32) -> usize {
    let monos = monomials_below(ring.nvars(), n);
    let index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &monos {
            let prod = &mono(ring, m) * g;
            let r = row(&prod, &index, monos.len(), |e| e.iter().sum::<u32>() < n);
            if r.iter().any(|v| !v.is_zero()) {
                rows.push(r);
            }
        }
    }
    monos.len() - rank(rows)
}

/// First `N` with `dim k[X]/(I + m^N) = dim k[X]/(I + m^{N+1})`, and that
/// dimension.
pub fn stabilized_dimension(ring: &RingRef, gens: &[Polynomial], max: u32) -> Option<(u32, usize)> {
    let mut prev = truncated_dimension(ring, gens, 1);
    for n in 1..=max {
        let next = truncated_dimension(ring, gens, n + 1);
        if next == prev {
            return Some((n, prev));
        }
        prev = next;
    }
    None
}

/// Membership in an ideal generated by homogeneous polynomials (standard
/// grading): each homogeneous component of `f` of degree `d` must lie in the
/// span of `monomial · g` of degree `d`. Exact for homogeneous ideals.
pub fn homogeneous_member(f: &Polynomial, gens: &[Polynomial]) -> bool {
    let ring = f.ring();
    let mut components: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let d: u32 = m.exponents().iter().sum();
        let entry = components.entry(d).or_insert_with(|| Polynomial::zero(ring));
        *entry = &*entry + &Polynomial::monomial(ring, m.clone(), c.clone());
    }
    components.into_iter().all(|(d, fd)| {
        let monos = monomials_of_degree(ring.nvars(), d);
        let index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let gd = g.terms().last().map(|(m, _)| m.exponents().iter().sum::<u32>()).unwrap_or(0);
            if g.is_zero() || gd > d {
                continue;
            }
            for m in monomials_of_degree(ring.nvars(), d - gd) {
                rows.push(row(&(&mono(ring, &m) * g), &index, monos.len(), |_| true));
            }
        }
        let base = rank(rows.clone());
        rows.push(row(&fd, &index, monos.len(), |_| true));
        rank(rows) == base
    })
}

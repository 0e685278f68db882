//! Buchberger's algorithm for ideals and submodules of free modules.
//!
//! Ideals are handled as rank-one submodules, so there is a single engine.
//! Pairs are selected by the normal strategy (smallest lcm first, ties by
//! pair index) and pruned with the Gebauer–Möller criteria. The returned
//! basis is the reduced Gröbner basis, which is unique for the order, so
//! results do not depend on how the computation was scheduled.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::{same_ring, ModuleMonomial, ModuleVector, Monomial, MonomialOrder, Polynomial, RingRef};

/// Default limit on reduction steps for one basis computation.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default bound on the number of staircase monomials that will be listed.
pub const DEFAULT_STAIRCASE_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// Monomials outside the leading-term module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Staircase {
    Finite(Vec<ModuleMonomial>),
    Infinite,
}

impl Staircase {
    pub fn dimension(&self) -> Dimension {
        match self {
            Staircase::Finite(v) => Dimension::Finite(v.len()),
            Staircase::Infinite => Dimension::Infinite,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingRef,
    rank: usize,
    elements: Vec<ModuleVector>,
}

fn lead(v: &ModuleVector) -> &ModuleMonomial {
    &v.leading_term().expect("nonzero basis element").0
}

fn lcm(a: &ModuleMonomial, b: &ModuleMonomial) -> ModuleMonomial {
    ModuleMonomial::new(a.component, a.monomial.lcm(&b.monomial))
}

/// Sort key realizing the module order, used to keep pairs in a `BTreeSet`.
fn order_key(ring: &RingRef, m: &ModuleMonomial) -> Vec<i64> {
    let e = m.monomial.exponents();
    let mut key = Vec::with_capacity(e.len() + 2);
    key.push(-(m.component as i64));
    match ring.order() {
        MonomialOrder::WeightedGrevlex => {
            key.push(ring.weighted_degree(&m.monomial) as i64);
            key.extend(e.iter().rev().map(|&x| -(x as i64)));
        }
        MonomialOrder::Lex => key.extend(e.iter().map(|&x| x as i64)),
    }
    key
}

fn monic(v: ModuleVector) -> ModuleVector {
    let c = v.leading_term().expect("nonzero").1.inverse().expect("nonzero");
    v.scale(&c)
}

struct Reducer<'a> {
    budget: u64,
    steps: &'a mut u64,
}

impl Reducer<'_> {
    fn tick(&mut self) -> Result<()> {
        *self.steps += 1;
        if *self.steps > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `v` by `basis` (monic elements). Returns the remainder.
fn reduce_by(
    ring: &RingRef,
    basis: &[&ModuleVector],
    v: &ModuleVector,
    mut meter: Option<&mut Reducer<'_>>,
) -> Result<ModuleVector> {
    let mut rest: Vec<(ModuleMonomial, crate::Scalar)> = v.terms().to_vec();
    let mut rem_rev = Vec::new();
    while let Some((k, c)) = rest.last() {
        let divisor = basis.iter().find(|g| lead(g).divides(k));
        match divisor {
            Some(g) => {
                if let Some(m) = meter.as_deref_mut() {
                    m.tick()?;
                }
                let q = lead(g).monomial.quotient_of(&k.monomial).expect("divides");
                let coef = -c;
                let shifted: Vec<_> = g
                    .terms()
                    .iter()
                    .map(|(t, d)| (ModuleMonomial::new(t.component, t.monomial.mul(&q)), d.clone()))
                    .collect();
                // drop the cancelled leading term explicitly, then merge the rest
                rest.pop();
                let shifted = &shifted[..shifted.len() - 1];
                rest = crate::poly::merge_terms(&rest, shifted, &coef, |a, b| ring.cmp_module(a, b));
            }
            None => rem_rev.push(rest.pop().expect("nonempty")),
        }
    }
    rem_rev.reverse();
    Ok(ModuleVector::from_sorted_terms(ring, v.rank(), rem_rev))
}

struct Engine<'a> {
    ring: RingRef,
    polys: Vec<ModuleVector>,
    active: Vec<usize>,
    pairs: BTreeSet<(Vec<i64>, usize, usize)>,
    product_criterion: bool,
    reducer: Reducer<'a>,
}

impl Engine<'_> {
    fn reduce(&mut self, v: &ModuleVector) -> Result<ModuleVector> {
        let basis: Vec<&ModuleVector> = self.active.iter().map(|&i| &self.polys[i]).collect();
        reduce_by(&self.ring, &basis, v, Some(&mut self.reducer))
    }

    fn insert(&mut self, h: ModuleVector) {
        let h_idx = self.polys.len();
        self.polys.push(h);
        let lh = lead(&self.polys[h_idx]).clone();

        let mut c: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&g| lead(&self.polys[g]).component == lh.component)
            .collect();
        let mut d: Vec<usize> = Vec::new();
        let lcm_with = |g: usize, polys: &Vec<ModuleVector>| lcm(&lh, lead(&polys[g]));
        while !c.is_empty() {
            let g1 = c.remove(0);
            let l1 = lcm_with(g1, &self.polys);
            let coprime = self.product_criterion && lh.monomial.is_coprime(&lead(&self.polys[g1]).monomial);
            let dominated = c.iter().chain(d.iter()).any(|&g2| lcm_with(g2, &self.polys).monomial.divides(&l1.monomial));
            if coprime || !dominated {
                d.push(g1);
            }
        }
        let e: Vec<usize> = d
            .into_iter()
            .filter(|&g| !(self.product_criterion && lh.monomial.is_coprime(&lead(&self.polys[g]).monomial)))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|(_, i, j)| {
            let (li, lj) = (lead(&polys[*i]), lead(&polys[*j]));
            if li.component != lh.component {
                return true;
            }
            let l = lcm(li, lj);
            !(lh.monomial.divides(&l.monomial) && lcm(li, &lh) != l && lcm(&lh, lj) != l)
        });
        for g in e {
            let key = order_key(&self.ring, &lcm(&lh, lead(&self.polys[g])));
            let (i, j) = if g < h_idx { (g, h_idx) } else { (h_idx, g) };
            self.pairs.insert((key, i, j));
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(lead(&polys[g])));
        self.active.push(h_idx);
    }

    fn s_vector(&self, i: usize, j: usize) -> ModuleVector {
        let (gi, gj) = (&self.polys[i], &self.polys[j]);
        let l = lcm(lead(gi), lead(gj));
        let one = self.ring.field().one();
        let qi = lead(gi).monomial.quotient_of(&l.monomial).expect("divides");
        let qj = lead(gj).monomial.quotient_of(&l.monomial).expect("divides");
        gi.mul_term(&qi, &one).add_scaled(&gj.mul_term(&qj, &one), &-&one)
    }

    fn run(mut self) -> Result<Vec<ModuleVector>> {
        while let Some((_, i, j)) = self.pairs.pop_first() {
            let s = self.s_vector(i, j);
            let h = self.reduce(&s)?;
            if !h.is_zero() {
                self.insert(monic(h));
            }
        }
        let ring = self.ring.clone();
        let active: Vec<ModuleVector> = self.active.iter().map(|&i| self.polys[i].clone()).collect();
        interreduce(&ring, active)
    }
}

/// Turns a minimal monic basis into the reduced one, sorted by leading term.
fn interreduce(ring: &RingRef, mut basis: Vec<ModuleVector>) -> Result<Vec<ModuleVector>> {
    basis.sort_by(|a, b| ring.cmp_module(lead(a), lead(b)));
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let g = &basis[i];
        let others: Vec<&ModuleVector> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h).collect();
        let (lt, tail) = g.terms().split_last().expect("nonzero");
        let tail_v = ModuleVector::from_sorted_terms(ring, g.rank(), tail.to_vec());
        let reduced_tail = reduce_by(ring, &others, &tail_v, None)?;
        let mut terms = reduced_tail.terms().to_vec();
        terms.push(lt.clone());
        out.push(ModuleVector::from_sorted_terms(ring, g.rank(), terms));
    }
    Ok(out)
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the submodule of `P^rank` generated by `gens`.
    pub fn compute(ring: &RingRef, rank: usize, gens: &[ModuleVector], budget: u64) -> Result<Self> {
        Self::build(ring, rank, Vec::new(), gens, budget)
    }

    /// Reduced Gröbner basis of the ideal generated by `gens`.
    pub fn ideal(ring: &RingRef, gens: &[Polynomial], budget: u64) -> Result<Self> {
        for g in gens {
            if !same_ring(ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let vs: Vec<ModuleVector> = gens.iter().map(ModuleVector::from_polynomial).collect();
        Self::compute(ring, 1, &vs, budget)
    }

    /// Gröbner basis of `self + (new)`, reusing the fact that `self` is already
    /// a basis (none of its internal pairs are recomputed).
    pub fn extend(&self, new: &[ModuleVector], budget: u64) -> Result<Self> {
        Self::build(&self.ring, self.rank, self.elements.clone(), new, budget)
    }

    pub fn extend_ideal(&self, new: &[Polynomial], budget: u64) -> Result<Self> {
        let vs: Vec<ModuleVector> = new.iter().map(ModuleVector::from_polynomial).collect();
        self.extend(&vs, budget)
    }

    /// Wraps elements already known to form a reduced Gröbner basis, such as
    /// the union of bases in disjoint sets of variables.
    pub(crate) fn from_reduced_unchecked(ring: &RingRef, rank: usize, mut elements: Vec<ModuleVector>) -> Self {
        elements.sort_by(|a, b| ring.cmp_module(lead(a), lead(b)));
        GroebnerBasis { ring: ring.clone(), rank, elements }
    }

    fn build(ring: &RingRef, rank: usize, known: Vec<ModuleVector>, gens: &[ModuleVector], budget: u64) -> Result<Self> {
        for g in gens {
            if !same_ring(ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch);
            }
        }
        let mut steps = 0u64;
        let active: Vec<usize> = (0..known.len()).collect();
        let mut engine = Engine {
            ring: ring.clone(),
            polys: known,
            active,
            pairs: BTreeSet::new(),
            product_criterion: rank == 1,
            reducer: Reducer { budget, steps: &mut steps },
        };
        for g in gens {
            let h = engine.reduce(g)?;
            if !h.is_zero() {
                engine.insert(monic(h));
            }
        }
        let elements = engine.run()?;
        Ok(GroebnerBasis { ring: ring.clone(), rank, elements })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    /// Basis elements as polynomials (rank-one bases only).
    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1, "not an ideal basis");
        self.elements.iter().map(|v| v.component(0)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<ModuleMonomial> {
        self.elements.iter().map(|g| lead(g).clone()).collect()
    }

    /// An ideal basis containing a nonzero constant.
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.elements.iter().any(|g| lead(g).monomial.is_one())
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        let basis: Vec<&ModuleVector> = self.elements.iter().collect();
        reduce_by(&self.ring, &basis, v, None).expect("unmetered reduction")
    }

    pub fn normal_form_poly(&self, p: &Polynomial) -> Polynomial {
        self.normal_form(&ModuleVector::from_polynomial(p)).component(0)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, p: &Polynomial) -> bool {
        self.normal_form_poly(p).is_zero()
    }

    /// Every S-vector of basis elements reduces to zero against the basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let one = self.ring.field().one();
        for (i, gi) in self.elements.iter().enumerate() {
            for gj in &self.elements[i + 1..] {
                if lead(gi).component != lead(gj).component {
                    continue;
                }
                let l = lcm(lead(gi), lead(gj));
                let qi = lead(gi).monomial.quotient_of(&l.monomial).unwrap();
                let qj = lead(gj).monomial.quotient_of(&l.monomial).unwrap();
                let s = gi.mul_term(&qi, &one).add_scaled(&gj.mul_term(&qj, &one), &-&one);
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Leading coefficients are one and no term of an element is divisible by
    /// the leading monomial of another element.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_term().unwrap().1.is_one()
                && self.elements.iter().enumerate().all(|(j, h)| {
                    i == j || g.terms().iter().all(|(t, _)| !lead(h).divides(t))
                })
        })
    }

    fn component_leads(&self, component: usize) -> Vec<&Monomial> {
        self.elements.iter().map(lead).filter(|l| l.component == component).map(|l| &l.monomial).collect()
    }

    /// Staircase of the quotient, listing at most `cap` monomials.
    pub fn staircase(&self, cap: usize) -> Result<Staircase> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for comp in 0..self.rank {
            let leads = self.component_leads(comp);
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = alloc::vec![u32::MAX; n];
            for m in &leads {
                if let Some((i, e)) = m.pure_power() {
                    bounds[i] = bounds[i].min(e);
                }
            }
            if bounds.contains(&u32::MAX) {
                return Ok(Staircase::Infinite);
            }
            let mut exps = alloc::vec![0u32; n];
            enumerate_staircase(&leads, &bounds, 0, &mut exps, comp, &mut out, cap)?;
        }
        out.sort_by(|a, b| self.ring.cmp_module(a, b));
        Ok(Staircase::Finite(out))
    }

    pub fn dimension(&self) -> Result<Dimension> {
        Ok(self.staircase(usize::MAX)?.dimension())
    }

    /// Staircase monomials of a given weighted degree in one component.
    pub fn staircase_in_degree(&self, component: usize, degree: u64) -> Vec<Monomial> {
        let leads = self.component_leads(component);
        self.ring
            .monomials_of_degree(degree)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    }
}

fn enumerate_staircase(
    leads: &[&Monomial],
    bounds: &[u32],
    i: usize,
    exps: &mut Vec<u32>,
    comp: usize,
    out: &mut Vec<ModuleMonomial>,
    cap: usize,
) -> Result<()> {
    let current = Monomial::from_exponents(exps.clone());
    if leads.iter().any(|l| l.divides(&current)) {
        return Ok(());
    }
    if i == bounds.len() {
        if out.len() >= cap {
            return Err(Error::CapExceeded { needed: out.len() as u128 + 1, cap });
        }
        out.push(ModuleMonomial::new(comp, current));
        return Ok(());
    }
    for e in 0..bounds[i] {
        exps[i] = e;
        let probe = Monomial::from_exponents(exps.clone());
        if e > 0 && leads.iter().any(|l| l.divides(&probe)) {
            break;
        }
        enumerate_staircase(leads, bounds, i + 1, exps, comp, out, cap)?;
    }
    exps[i] = 0;
    Ok(())
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form_poly(f)
}

pub fn ideal_member(f: &Polynomial, gens: &[Polynomial], budget: u64) -> Result<bool> {
    Ok(GroebnerBasis::ideal(f.ring(), gens, budget)?.contains_poly(f))
}

pub fn module_member(v: &ModuleVector, gens: &[ModuleVector], budget: u64) -> Result<bool> {
    Ok(GroebnerBasis::compute(v.ring(), v.rank(), gens, budget)?.contains(v))
}

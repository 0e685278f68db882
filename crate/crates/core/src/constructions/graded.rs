use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::random;
use crate::algebra::{make_quotient, BuildOptions, Mode, Presentation, QuotientAlgebra};
use crate::error::Result;
use crate::field::Field;
use crate::kaehler::{Base, KaehlerModule};
use crate::parse::parse_polynomial;
use crate::poly::PolyRing;
use crate::report::VerificationReport;

/// Variables with weights, and relations.
pub type GradedEntry = (&'static [(&'static str, u32)], &'static [&'static str]);

/// Graded presentations used by the kernel-of-`d` checks.
pub const GRADED_CORPUS: &[GradedEntry] = &[
    (&[("X", 1), ("Y", 1)], &["X^2 - Y^2"]),
    (&[("X", 2), ("Y", 3)], &["X^3 - Y^2"]),
    (&[("X", 1), ("Y", 1), ("Z", 1)], &["X*Y - Z^2"]),
    (&[("X", 1), ("Y", 1)], &["X*Y"]),
    (&[("X", 1), ("Y", 2), ("Z", 3)], &["X*Z - Y^2"]),
    (&[("X", 1)], &[]),
    (&[("X", 1)], &["X^3"]),
];

pub fn graded_algebra(field: &Field, vars: &[(&str, u32)], rels: &[&str], opts: &BuildOptions) -> Result<Arc<QuotientAlgebra>> {
    let ring = PolyRing::weighted(field.clone(), vars)?;
    let rels = rels.iter().map(|s| parse_polynomial(&ring, s)).collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(make_quotient(&Presentation::new(&ring, rels, Mode::Graded)?, opts)?))
}

fn describe(vars: &[(&str, u32)], rels: &[&str]) -> String {
    let v: Vec<String> = vars.iter().map(|(n, w)| format!("{n}:{w}")).collect();
    format!("k[{}]/({})", v.join(","), rels.join(", "))
}

/// Kernel of `d : R → Ω_{R/R₀}` in degrees `1..=max_degree` over the
/// corpus: zero in characteristic zero, and confined to degrees divisible by
/// `p` in characteristic `p`. Every kernel element `f` also satisfies
/// `deg(f)·f = 0`.
pub fn graded_kernel_check(field: &Field, max_degree: u64, opts: &BuildOptions) -> Result<VerificationReport> {
    let p = field.characteristic();
    let mut r = VerificationReport::new("graded-kernel");
    r.param("field", field.tag()).param("max_degree", max_degree);
    for (vars, rels) in GRADED_CORPUS {
        let label = describe(vars, rels);
        let a = graded_algebra(field, vars, rels, opts)?;
        let omega = KaehlerModule::new(&a, Base::DegreeZero, opts)?;
        let mut dims = Vec::new();
        let mut euler_ok = true;
        for d in 1..=max_degree {
            let ker = omega.derivation_kernel_in_degree(d)?;
            for f in &ker {
                euler_ok &= a.is_zero(&f.scale(&field.from_i64(d as i64)));
            }
            dims.push(ker.len());
        }
        let witness = format!("dim ker d by degree: {dims:?}");
        if p == 0 {
            r.claim(&format!("{label}: ker d = 0 in positive degrees"), "graded.kernel-trivial", dims.iter().all(|&k| k == 0), witness);
        } else {
            let check = omega.veronese_containment_check(max_degree)?;
            r.claim(&format!("{label}: ker d inside the p-th Veronese subring"), "graded.veronese", check.pass, witness);
        }
        r.claim(&format!("{label}: deg(f) f = 0 on ker d"), "graded.euler-kills-kernel", euler_ok, "");
    }
    if p > 0 {
        let a = graded_algebra(field, &[("X", 1)], &[], opts)?;
        let omega = KaehlerModule::new(&a, Base::DegreeZero, opts)?;
        let mut ok = true;
        let mut nonzero = Vec::new();
        for d in 1..=2 * p {
            let k = omega.derivation_kernel_in_degree(d)?.len();
            ok &= (k == 0) == (d % p != 0);
            if k > 0 {
                nonzero.push(d);
            }
        }
        r.claim(
            &format!("k[X]: ker d nonzero exactly in degrees divisible by {p} up to {}", 2 * p),
            "graded.polynomial-ring-kernel",
            ok,
            format!("nonzero in degrees {nonzero:?}"),
        );
    }
    Ok(r)
}

/// `Σ w_i X_i ∂G/∂X_i = deg(G)·G` on random weighted-homogeneous `G`.
pub fn euler_check(field: &Field, trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = random::rng(seed);
    let mut r = VerificationReport::new("euler");
    r.param("field", field.tag()).param("trials", trials).param("seed", seed);
    let names = ["X1", "X2", "X3", "X4"];
    let mut failure = None;
    for i in 0..trials {
        let nvars = rng.gen_range(1..=4);
        let vars: Vec<(&str, u32)> = names[..nvars].iter().map(|n| (*n, rng.gen_range(1..=4))).collect();
        let ring = PolyRing::weighted(field.clone(), &vars)?;
        let (deg, pool) = loop {
            let d = rng.gen_range(1..=12u64);
            let pool = ring.monomials_of_degree(d);
            if !pool.is_empty() {
                break (d, pool);
            }
        };
        let g = loop {
            let g = random::polynomial_from(&mut rng, &ring, &pool, 6);
            if !g.is_zero() {
                break g;
            }
        };
        let lhs = g.euler_apply();
        let rhs = g.scale(&field.from_i64(deg as i64));
        if lhs != rhs {
            failure = Some(format!("trial {i}: G = {g}"));
            break;
        }
        debug_assert_eq!(g.weighted_degree(), Some(deg));
    }
    r.claim("Euler identity", "euler.identity", failure.is_none(), failure.unwrap_or_else(|| format!("{trials} polynomials")));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_zero_corpus() {
        let r = graded_kernel_check(&Field::Rationals, 6, &BuildOptions::default()).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn char_p_corpus() {
        for p in [2, 3] {
            let r = graded_kernel_check(&Field::prime(p).unwrap(), 6, &BuildOptions::default()).unwrap();
            assert!(r.pass(), "{r}");
        }
    }

    #[test]
    fn euler_small() {
        assert!(euler_check(&Field::Rationals, 20, 3).unwrap().pass());
        assert!(euler_check(&Field::prime(2).unwrap(), 20, 3).unwrap().pass());
    }
}

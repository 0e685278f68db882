use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{make_quotient, AlgebraMap, BuildOptions, Mode, Presentation, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kaehler::{induced_map_on_omega, Base, KaehlerModule};
use crate::poly::{PolyRing, Polynomial};
use crate::report::VerificationReport;

/// `F_p[Y]/(Y^{p^n})`, a model of `F_p[X^{1/p^n}]/(X)` with `Y = X^{1/p^n}`.
pub fn truncated_root_algebra(p: u64, n: u32, opts: &BuildOptions) -> Result<Arc<QuotientAlgebra>> {
    let field = Field::prime(p)?;
    let e = p.checked_pow(n).filter(|&e| e <= opts.staircase_cap as u64).ok_or(Error::CapExceeded {
        needed: (p as u128).saturating_pow(n),
        cap: opts.staircase_cap,
    })?;
    let ring = PolyRing::standard(field, &["Y"])?;
    let y = Polynomial::var(&ring, 0);
    Ok(Arc::new(make_quotient(&Presentation::new(&ring, alloc::vec![y.pow(e as u32)], Mode::Plain)?, opts)?))
}

/// `Y ↦ Y'^p` from `A_n` to `A_{n+1}`.
fn transition(a: &Arc<QuotientAlgebra>, b: &Arc<QuotientAlgebra>, p: u64) -> Result<AlgebraMap> {
    AlgebraMap::new(a, b, alloc::vec![Polynomial::var(b.ring(), 0).pow(p as u32)])
}

pub fn charp_tower(p: u64, n_max: u32, opts: &BuildOptions) -> Result<VerificationReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let mut r = VerificationReport::new("charp-tower");
    r.param("p", p).param("n_max", n_max).param("model", "A_n = F_p[Y]/(Y^(p^n)), Y = X^(1/p^n)");
    let algebras = (1..=n_max + 1).map(|n| truncated_root_algebra(p, n, opts)).collect::<Result<Vec<_>>>()?;
    let omegas = algebras.iter().map(|a| KaehlerModule::new(a, Base::Field, opts)).collect::<Result<Vec<_>>>()?;
    let maps = algebras.windows(2).map(|w| transition(&w[0], &w[1], p)).collect::<Result<Vec<_>>>()?;
    for n in 1..=n_max as usize {
        let a = &algebras[n - 1];
        let non_reduced = a.has_nonzero_nilpotent()?;
        r.claim(&format!("A_{n} is local and non-reduced"), "charp.non-reduced", non_reduced, format!("dim A_{n} = {}", a.dimension()));
        let om = &omegas[n - 1];
        r.claim(
            &format!("Omega_(A_{n}/F_{p}) is nonzero"),
            "charp.omega-nonzero",
            !om.is_omega_zero(),
            format!("dim Omega = {}", om.dimension(opts.staircase_cap)?),
        );
        let images = induced_map_on_omega(&maps[n - 1], &omegas[n])?;
        r.claim(
            &format!("A_{n} -> A_{} induces zero on Omega", n + 1),
            "charp.transition-zero",
            images.iter().all(|v| v.is_zero()),
            format!("dY -> {}", omegas[n].format(&images[0])),
        );
    }
    for n in 1..n_max as usize {
        let composite = maps[n - 1].then(&maps[n])?;
        let images = induced_map_on_omega(&composite, &omegas[n + 1])?;
        r.claim(
            &format!("A_{n} -> A_{} induces zero on Omega", n + 2),
            "charp.composite-zero",
            images.iter().all(|v| v.is_zero()),
            format!("Y -> {}", composite.images()[0]),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_towers_pass() {
        let o = BuildOptions::default();
        assert!(charp_tower(2, 3, &o).unwrap().pass());
        assert!(charp_tower(3, 2, &o).unwrap().pass());
        assert_eq!(truncated_root_algebra(5, 1, &o).unwrap().finite_dimension().unwrap(), 5);
    }

    #[test]
    fn non_prime_rejected() {
        assert!(charp_tower(4, 1, &BuildOptions::default()).is_err());
    }
}

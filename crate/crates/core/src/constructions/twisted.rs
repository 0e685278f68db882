use alloc::format;
use alloc::sync::Arc;

use super::random::{self, SeededRng};
use crate::algebra::{make_quotient, AlgebraMap, BuildOptions, Mode, Presentation, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::kaehler::{is_zero_induced_map, Base, KaehlerModule};
use crate::poly::{PolyRing, Polynomial};
use crate::report::VerificationReport;

/// `A_n = L[U,Z]/(U^{p^n} − x − Z, Z²)` over `L = F_p(x)`.
pub fn twisted_algebra(p: u64, n: u32, opts: &BuildOptions) -> Result<Arc<QuotientAlgebra>> {
    let field = Field::rational_functions(p, "x")?;
    let e = p.checked_pow(n).filter(|&e| 2 * e <= opts.staircase_cap as u64).ok_or(Error::CapExceeded {
        needed: 2 * (p as u128).saturating_pow(n),
        cap: opts.staircase_cap,
    })?;
    let ring = PolyRing::standard(field.clone(), &["U", "Z"])?;
    let u = Polynomial::var(&ring, 0);
    let z = Polynomial::var(&ring, 1);
    let x = Polynomial::constant(&ring, field.generator()?);
    let rels = alloc::vec![&(&u.pow(e as u32) - &x) - &z, z.pow(2)];
    Ok(Arc::new(make_quotient(&Presentation::new(&ring, rels, Mode::Plain)?, opts)?))
}

/// `φ(f) = f + f'·z`, the twisted copy of `L` inside `A_n`.
pub fn phi(a: &QuotientAlgebra, f: &Scalar) -> Result<Polynomial> {
    let ring = a.ring();
    let z = Polynomial::var(ring, 1);
    let df = f.formal_derivative()?;
    Ok(a.reduce(&(&Polynomial::constant(ring, f.clone()) + &(&Polynomial::constant(ring, df) * &z))))
}

fn random_pair(rng: &mut SeededRng, p: u64) -> (Scalar, Scalar) {
    (Scalar::Function(random::rational_function(rng, p, 3)), Scalar::Function(random::rational_function(rng, p, 3)))
}

pub fn twisted_example(p: u64, n: u32, samples: usize, seed: u64, opts: &BuildOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let a = twisted_algebra(p, n, opts)?;
    let next = twisted_algebra(p, n + 1, opts)?;
    let field = a.ring().field().clone();
    let mut r = VerificationReport::new("twisted");
    r.param("p", p).param("n", n).param("samples", samples).param("seed", seed);
    r.param("algebra", "A_n = L[U,Z]/(U^(p^n) - x - Z, Z^2), L = F_p(x)");

    let z = Polynomial::var(a.ring(), 1);
    let z_red = a.reduce(&z);
    let z2 = a.mul(&z, &z);
    r.claim("z != 0 and z^2 = 0", "twisted.non-reduced", !z_red.is_zero() && z2.is_zero(), format!("dim_L A_n = {}", a.dimension()));

    let omega = KaehlerModule::new(&a, Base::Field, opts)?;
    let dz = omega.d_image(&z)?;
    r.claim("dz = 0 in Omega_(A_n/L)", "twisted.dz-zero", dz.is_zero(), format!("dz = {}", omega.format(&dz)));
    let du = omega.d_image(&Polynomial::var(a.ring(), 0))?;
    r.claim(
        "Omega_(A_n/L) is nonzero",
        "twisted.omega-nonzero",
        !omega.is_omega_zero(),
        format!("dU = {}, dim_L Omega = {}", omega.format(&du), omega.dimension(opts.staircase_cap)?),
    );

    let x = field.generator()?;
    let e = p.pow(n) as u32;
    let phi_x = phi(&a, &x)?;
    let u_pow = a.pow(&Polynomial::var(a.ring(), 0), e);
    r.claim("phi(x) = u^(p^n)", "twisted.phi-x", phi_x == u_pow, format!("phi(x) = {phi_x}"));

    let mut rng = random::rng(seed);
    let mut bad = None;
    for i in 0..samples {
        let (f, g) = random_pair(&mut rng, p);
        let fg = f.try_mul(&g)?;
        let sum = f.try_add(&g)?;
        let mult = phi(&a, &fg)? == a.mul(&phi(&a, &f)?, &phi(&a, &g)?);
        let add = phi(&a, &sum)? == a.add(&phi(&a, &f)?, &phi(&a, &g)?);
        if !(mult && add) {
            bad = Some(format!("sample {i}: f = {}, g = {}", field.format_scalar(&f), field.format_scalar(&g)));
            break;
        }
    }
    r.claim(
        "phi is a ring map on sampled pairs",
        "twisted.phi-multiplicative",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{samples} pairs")),
    );

    let nu = Polynomial::var(next.ring(), 0);
    let nz = Polynomial::var(next.ring(), 1);
    let map = AlgebraMap::new(&a, &next, alloc::vec![nu.pow(p as u32), nz])?;
    let next_omega = KaehlerModule::new(&next, Base::Field, opts)?;
    let du_image = next_omega.d_image(&map.images()[0])?;
    r.claim(
        "A_n -> A_(n+1) sends dU to zero",
        "twisted.transition-du-zero",
        du_image.is_zero(),
        format!("dU -> {}", next_omega.format(&du_image)),
    );
    r.claim("A_n -> A_(n+1) induces zero on Omega", "twisted.transition-zero", is_zero_induced_map(&map, &next_omega)?, "");
    Ok(r)
}

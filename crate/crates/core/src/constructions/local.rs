use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::charp::truncated_root_algebra;
use super::gabber::gabber_b;
use super::random;
use crate::algebra::{maximal_ideal_power, make_quotient, BuildOptions, Mode, Presentation, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kaehler::{Base, KaehlerModule};
use crate::poly::{PolyRing, Polynomial};
use crate::report::VerificationReport;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub algebra: Arc<QuotientAlgebra>,
}

/// Random Artinian local algebras over Q: a few polynomials without constant
/// term in at most three variables, plus a power of the maximal ideal.
pub fn random_local_corpus(count: usize, seed: u64, opts: &BuildOptions) -> Result<Vec<CorpusEntry>> {
    let mut rng = random::rng(seed);
    let names = ["X", "Y", "Z"];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let nvars = rng.gen_range(1..=3);
        let ring = PolyRing::standard(Field::Rationals, &names[..nvars])?;
        let pool = random::monomials_up_to(nvars, 3);
        let mut rels: Vec<Polynomial> =
            (0..rng.gen_range(1..=3)).map(|_| random::polynomial_from(&mut rng, &ring, &pool, 3)).collect();
        let power = rng.gen_range(2..=4);
        let shown: Vec<String> = rels.iter().map(|r| format!("{r}")).collect();
        let label = format!("random #{i}: ({}) + m^{power}", shown.join(", "));
        rels.extend(maximal_ideal_power(&ring, power));
        let algebra = Arc::new(make_quotient(&Presentation::new(&ring, rels, Mode::Plain)?, opts)?);
        out.push(CorpusEntry { label, algebra });
    }
    Ok(out)
}

/// The field itself, the dual numbers, `B(5)` and truncated root algebras.
pub fn example_corpus(opts: &BuildOptions) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let k = PolyRing::standard(Field::Rationals, &[])?;
    out.push(CorpusEntry {
        label: "Q".into(),
        algebra: Arc::new(make_quotient(&Presentation::new(&k, Vec::new(), Mode::Plain)?, opts)?),
    });
    let r = PolyRing::standard(Field::Rationals, &["Z"])?;
    let z = Polynomial::var(&r, 0);
    out.push(CorpusEntry {
        label: "Q[Z]/(Z^2)".into(),
        algebra: Arc::new(make_quotient(&Presentation::new(&r, alloc::vec![z.pow(2)], Mode::Plain)?, opts)?),
    });
    out.push(CorpusEntry { label: "B(5) over Q".into(), algebra: gabber_b(5, &Field::Rationals, false, opts)?.algebra });
    out.push(CorpusEntry { label: "B(6) over Q".into(), algebra: gabber_b(6, &Field::Rationals, false, opts)?.algebra });
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1)] {
        out.push(CorpusEntry { label: format!("F_{p}[Y]/(Y^{})", p.pow(n)), algebra: truncated_root_algebra(p, n, opts)? });
    }
    Ok(out)
}

/// Instance-wise: `Ω_{R/k} = 0` implies `R = k`, for Artinian local `R` with
/// nilpotent generators over a perfect field. The zero test is cross-checked
/// against dense linear algebra.
pub fn check_theorem_local_case(corpus: &[CorpusEntry], opts: &BuildOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("local-case");
    r.param("entries", corpus.len());
    for e in corpus {
        let a = &e.algebra;
        if !a.ring().field().is_perfect() {
            return Err(Error::InvalidParameter(format!("{}: base field is not perfect", e.label)));
        }
        if !a.is_local_with_nilpotent_generators()? {
            return Err(Error::NotLocal);
        }
        let dim = a.finite_dimension()?;
        let omega = KaehlerModule::new(a, Base::Field, opts)?;
        let zero = omega.is_omega_zero();
        let dense = omega.dimension_dense()?;
        r.claim(
            &format!("{}: Omega = 0 implies dim 1", e.label),
            "local.omega-zero-implies-field",
            !zero || dim == 1,
            format!("dim R = {dim}, Omega zero: {zero}, dim Omega = {dense}"),
        );
        r.claim(&format!("{}: zero test agrees with dense dimension", e.label), "local.dense-cross-check", zero == (dense == 0), "");
    }
    Ok(r)
}

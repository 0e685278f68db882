use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{artinian_local_model, tensor_all, AlgebraMap, BuildOptions, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::kaehler::{is_zero_induced_map, Base, KaehlerModule};
use crate::linalg::Matrix;
use crate::poly::{PolyRing, Polynomial, RingRef};
use crate::report::{Status, VerificationReport};

/// `B(n) = k[[X,Y]]/(X·F₁, Y·F₂)` with `F = X²Y² + Xⁿ + Yⁿ`,
/// `F₁ = 2Y² + nX^{n−2}`, `F₂ = 2X² + nY^{n−2}`, and the image `f` of `F`.
#[derive(Clone, Debug)]
pub struct GabberB {
    pub n: u32,
    pub algebra: Arc<QuotientAlgebra>,
    pub f: Polynomial,
    pub big_f: Polynomial,
    pub f1: Polynomial,
    pub f2: Polynomial,
    /// Set when the field has positive characteristic.
    pub warning: Option<String>,
}

fn scalar(field: &Field, n: i64) -> Scalar {
    field.from_i64(n)
}

fn half(field: &Field, n: i64) -> Result<Scalar> {
    scalar(field, n).try_div(&scalar(field, 2))
}

struct Polys {
    ring: RingRef,
    big_f: Polynomial,
    f1: Polynomial,
    f2: Polynomial,
}

fn polys(n: u32, field: &Field) -> Result<Polys> {
    let ring = PolyRing::standard(field.clone(), &["X", "Y"])?;
    let x = Polynomial::var(&ring, 0);
    let y = Polynomial::var(&ring, 1);
    let c = |k: i64| Polynomial::constant(&ring, scalar(field, k));
    let big_f = &(&x.pow(2) * &y.pow(2)) + &(&x.pow(n) + &y.pow(n));
    let f1 = &(&c(2) * &y.pow(2)) + &(&c(n as i64) * &x.pow(n - 2));
    let f2 = &(&c(2) * &x.pow(2)) + &(&c(n as i64) * &y.pow(n - 2));
    Ok(Polys { ring, big_f, f1, f2 })
}

/// Validates `n` and the characteristic. In characteristic `p` the numbers
/// `2`, `n` and `n − 4` must stay units; `allow_char_p` must be set.
fn check_params(n: u32, field: &Field, allow_char_p: bool) -> Result<Option<String>> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!("n must be at least 5, got {n}")));
    }
    let p = field.characteristic();
    if p == 0 {
        return Ok(None);
    }
    if !allow_char_p {
        return Err(Error::InvalidParameter(format!("B(n) is a characteristic-zero construction; field has characteristic {p}")));
    }
    let n = n as u64;
    if (2 * n * (n - 4)).is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!("characteristic {p} divides 2n(n-4)")));
    }
    Ok(Some(format!("characteristic {p}: outside the characteristic-zero setting of B(n)")))
}

pub fn gabber_b(n: u32, field: &Field, allow_char_p: bool, opts: &BuildOptions) -> Result<GabberB> {
    let warning = check_params(n, field, allow_char_p)?;
    let Polys { ring, big_f, f1, f2 } = polys(n, field)?;
    let x = Polynomial::var(&ring, 0);
    let y = Polynomial::var(&ring, 1);
    let algebra = Arc::new(artinian_local_model(&ring, &[&x * &f1, &y * &f2], opts)?);
    let f = algebra.reduce(&big_f);
    Ok(GabberB { n, algebra, f, big_f, f1, f2, warning })
}

pub fn verify_preparatory(n: u32, field: &Field, allow_char_p: bool, opts: &BuildOptions) -> Result<VerificationReport> {
    let b = gabber_b(n, field, allow_char_p, opts)?;
    let alg = &b.algebra;
    let ring = alg.ring().clone();
    let x = Polynomial::var(&ring, 0);
    let y = Polynomial::var(&ring, 1);
    let mut r = VerificationReport::new("preparatory");
    r.param("n", n).param("field", field.tag());
    if let Some(w) = &b.warning {
        r.param("warning", w);
    }

    let dim = alg.finite_dimension()?;
    let local = alg.is_local_with_nilpotent_generators()?;
    r.claim(
        "B is Artinian local",
        "gabber.B.artinian-local",
        local,
        format!("dim = {dim}, stabilized at N = {}", alg.stabilized_at().unwrap_or(0)),
    );

    r.claim("f is nonzero", "gabber.B.f-nonzero", !b.f.is_zero(), format!("f = {}", b.f));
    let f_sq = alg.mul(&b.f, &b.f);
    r.claim("f^2 = 0", "gabber.B.f-square-zero", f_sq.is_zero(), format!("f^2 = {f_sq}"));

    let omega = KaehlerModule::new(alg, Base::Field, opts)?;
    let df = omega.d_image(&b.f)?;
    r.claim("df = 0 in Omega_{B/k}", "gabber.B.df-zero", df.is_zero(), format!("df = {}", omega.format(&df)));

    let xy3 = alg.reduce(&(&x * &y.pow(3)));
    r.claim("xy^3 = 0 in B", "gabber.B.xy3-zero", xy3.is_zero(), format!("xy^3 = {xy3}"));

    let local_f = artinian_local_model(&ring, &[b.f1.clone(), b.f2.clone()], opts)?;
    let y2 = local_f.reduce(&y.pow(2));
    r.claim(
        "Y^2 in (F1, F2) in k[[X,Y]]",
        "gabber.B.y2-in-local-ideal",
        y2.is_zero(),
        format!("normal form {y2} in k[[X,Y]]/(F1,F2) of dimension {}", local_f.dimension()),
    );

    // F₁ − (n/2)X^{n−4}F₂ = Y²(2 − (n²/2)X^{n−4}Y^{n−4}).
    let k = |s: Scalar| Polynomial::constant(&ring, s);
    let lhs = &b.f1 - &(&k(half(field, n as i64)?) * &(&x.pow(n - 4) * &b.f2));
    let inner = |ey: u32| -> Result<Polynomial> {
        Ok(&y.pow(2) * &(&k(scalar(field, 2)) - &(&k(half(field, (n * n) as i64)?) * &(&x.pow(n - 4) * &y.pow(ey)))))
    };
    let rhs = inner(n - 4)?;
    let alt = inner(n - 2)?;
    r.claim(
        "F1 - (n/2)X^(n-4)F2 = Y^2(2 - (n^2/2)X^(n-4)Y^(n-4))",
        "gabber.B.cofactor-identity",
        lhs == rhs,
        format!("lhs = {lhs}; with Y^(n-2) in place of Y^(n-4) the identity {}", if lhs == alt { "also holds" } else { "fails" }),
    );

    let coeff = Scalar::try_sub(&field.one(), &scalar(field, 4).try_div(&scalar(field, n as i64))?)?;
    let target = alg.reduce(&(&k(coeff.clone()) * &(&x * &y).pow(2)));
    r.claim(
        "f = (1 - 4/n)(xy)^2 in B",
        "gabber.B.f-euler-form",
        target == b.f,
        format!("1 - 4/n = {}", field.format_scalar(&coeff)),
    );
    Ok(r)
}

/// `B_t = B^{⊗(t−1)}` with `g_i = f` in factor `i` and `g = Σ g_i`.
#[derive(Clone, Debug)]
pub struct TensorPower {
    pub algebra: Arc<QuotientAlgebra>,
    pub parts: Vec<Polynomial>,
    pub g: Polynomial,
}

pub fn b_tensor_power(b: &GabberB, t: u32, opts: &BuildOptions) -> Result<TensorPower> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("tensor power needs t >= 2, got {t}")));
    }
    let factors: Vec<&QuotientAlgebra> = (1..t).map(|_| &*b.algebra).collect();
    let (algebra, maps) = tensor_all(&factors, opts)?;
    let ring = algebra.ring().clone();
    let parts = maps.iter().map(|m| b.f.embed(&ring, m)).collect::<Result<Vec<_>>>()?;
    let g = parts.iter().fold(Polynomial::zero(&ring), |acc, p| &acc + p);
    Ok(TensorPower { algebra: Arc::new(algebra), parts, g })
}

/// Checks `g^t = 0` and `g^{t−1} = (t−1)!·f⊗…⊗f ≠ 0`.
pub fn verify_tensor_power(n: u32, t: u32, field: &Field, opts: &BuildOptions) -> Result<VerificationReport> {
    let b = gabber_b(n, field, false, opts)?;
    let tp = b_tensor_power(&b, t, opts)?;
    let alg = &tp.algebra;
    let mut r = VerificationReport::new("tensor-power");
    r.param("n", n).param("t", t).param("field", field.tag());
    let gt = alg.pow(&tp.g, t);
    r.claim("g^t = 0", "gabber.Bt.g-power-zero", gt.is_zero(), format!("dim B_t = {}", alg.dimension()));
    let gt1 = alg.pow(&tp.g, t - 1);
    let fact: i64 = (1..t as i64).product();
    let prod = tp.parts.iter().fold(Polynomial::one(alg.ring()), |acc, p| &acc * p);
    let expected = alg.reduce(&(&Polynomial::constant(alg.ring(), field.from_i64(fact)) * &prod));
    r.claim(
        "g^(t-1) = (t-1)! f⊗...⊗f and is nonzero",
        "gabber.Bt.g-power-top",
        gt1 == expected && !gt1.is_zero(),
        format!("(t-1)! = {fact}"),
    );
    Ok(r)
}

/// Result of adjoining a `t`-th root of nothing: `R' = R ⊗ B_t/(r⊗1 − 1⊗g)`.
#[derive(Clone, Debug)]
pub struct KillingStep {
    pub algebra: Arc<QuotientAlgebra>,
    pub inclusion: AlgebraMap,
    pub report: VerificationReport,
}

/// Largest tensor product dimension for which the dimension of `R'` is
/// cross-checked by dense linear algebra.
const DENSE_CROSS_CHECK_LIMIT: usize = 400;

pub fn killing_step(ring_b: &GabberB, source: &Arc<QuotientAlgebra>, r: &Polynomial, opts: &BuildOptions) -> Result<KillingStep> {
    let rr = source.reduce(r);
    if rr.is_zero() {
        return Err(Error::InvalidParameter("the element to kill is zero".into()));
    }
    let t = source.nilpotency_index(&rr)?.ok_or(Error::NotNilpotent)?;
    let mut report = VerificationReport::new("killing-step");
    report.param("r", &rr).param("t", t).param("B", format!("B({})", ring_b.n));

    let source_dim = source.finite_dimension()?;
    let b_dim = ring_b.algebra.finite_dimension()? as u128;
    let predicted = (source_dim as u128).saturating_mul(b_dim.saturating_pow(t - 1));
    if predicted > opts.staircase_cap as u128 {
        return Err(Error::CapExceeded { needed: predicted, cap: opts.staircase_cap });
    }

    let mut factors: Vec<&QuotientAlgebra> = Vec::with_capacity(t as usize);
    factors.push(source);
    for _ in 1..t {
        factors.push(&ring_b.algebra);
    }
    let (tensor, maps) = tensor_all(&factors, opts)?;
    let ring = tensor.ring().clone();
    let r_left = rr.embed(&ring, &maps[0])?;
    let mut g = Polynomial::zero(&ring);
    for m in &maps[1..] {
        g = &g + &ring_b.f.embed(&ring, m)?;
    }
    let h = &r_left - &g;
    let target = Arc::new(tensor.quotient_by(core::slice::from_ref(&h), opts)?);
    let target_dim = target.finite_dimension()?;

    let images: Vec<Polynomial> = maps[0].iter().map(|&j| Polynomial::var(&ring, j)).collect();
    let inclusion = AlgebraMap::new(source, &target, images)?;

    let tensor_dim = tensor.finite_dimension()?;
    let cross = if tensor_dim <= DENSE_CROSS_CHECK_LIMIT {
        let mut cols = Vec::with_capacity(tensor_dim);
        for j in 0..tensor_dim {
            cols.push(tensor.coordinates(&(&tensor.basis_element(j)? * &h))?);
        }
        let rank = Matrix::from_columns(ring.field(), tensor_dim, &cols).rank();
        Some(tensor_dim - rank)
    } else {
        None
    };
    report.claim(
        "R' is finite-dimensional",
        "killing.finite",
        cross.is_none_or(|d| d == target_dim),
        format!(
            "dim R' = {target_dim}, dim R ⊗ B_t = {tensor_dim}, {}",
            match cross {
                Some(d) => format!("dense cross-check {d}"),
                None => String::from("dense cross-check skipped"),
            }
        ),
    );

    let matrix = inclusion.linear_matrix()?;
    let rank = matrix.rank();
    report.claim("R -> R' is injective", "killing.injective", rank == source_dim, format!("rank {rank} of {source_dim}"));

    let omega = KaehlerModule::new(&target, Base::Field, opts)?;
    let dr = omega.d_image(&inclusion.apply(&rr)?)?;
    report.claim("d(r) = 0 in Omega_{R'/k}", "killing.dr-zero", dr.is_zero(), format!("d(r) = {}", omega.format(&dr)));
    let whole = is_zero_induced_map(&inclusion, &omega)?;
    report.param("induced map on Omega zero", if whole { "yes" } else { "no" });
    Ok(KillingStep { algebra: target, inclusion, report })
}

#[derive(Clone, Debug)]
pub struct KillAll {
    pub algebra: Arc<QuotientAlgebra>,
    pub map: AlgebraMap,
    pub report: VerificationReport,
}

/// Kills `d(e_j)` for the staircase basis `e_1, …, e_l` of the maximal ideal,
/// in increasing monomial order. A cap or budget hit ends the chain; the
/// partial result is returned with status `cap-exceeded`.
pub fn kill_all_differentials(ring_b: &GabberB, source: &Arc<QuotientAlgebra>, opts: &BuildOptions) -> Result<KillAll> {
    if !source.is_local_with_nilpotent_generators()? {
        return Err(Error::NotLocal);
    }
    let basis = source.maximal_ideal_basis()?;
    let mut report = VerificationReport::new("kill-all");
    report.param("dim R", source.finite_dimension()?).param("basis of m", basis.len());
    let mut current = source.clone();
    let mut map = AlgebraMap::identity(source);
    let mut done = 0usize;
    for (j, e) in basis.iter().enumerate() {
        let r = map.apply(e)?;
        if r.is_zero() {
            done += 1;
            continue;
        }
        match killing_step(ring_b, &current, &r, opts) {
            Ok(step) => {
                report.absorb(&format!("step {} ({}): ", j + 1, e), step.report);
                map = map.then(&step.inclusion)?;
                current = step.algebra;
                done += 1;
            }
            Err(err) if err.is_resource_limit() => {
                report.status = Status::CapExceeded;
                report.param("stopped at", format!("basis element {} ({e}): {err}", j + 1));
                break;
            }
            Err(err) => return Err(err),
        }
    }
    report.param("killed", format!("{done}/{}", basis.len()));
    report.param("dim result", current.dimension());
    if report.status == Status::Complete {
        let omega = KaehlerModule::new(&current, Base::Field, opts)?;
        let zero = is_zero_induced_map(&map, &omega)?;
        report.claim(
            "induced map Omega_{R/k} -> Omega_{R~/k} is zero",
            "kill-all.zero-omega-map",
            zero,
            format!("{} generators checked", source.ring().nvars()),
        );
    }
    Ok(KillAll { algebra: current, map, report })
}

/// Seed of a Gabber chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// `B(5)` itself.
    B5,
    /// `k[Z]/(Z²)`.
    DualNumbers,
}

pub fn gabber_sequence(steps: u32, seed: Seed, field: &Field, opts: &BuildOptions) -> Result<VerificationReport> {
    if steps == 0 {
        return Err(Error::InvalidParameter("at least one step is required".into()));
    }
    let b = gabber_b(5, field, field.characteristic() != 0, opts)?;
    let start: Arc<QuotientAlgebra> = match seed {
        Seed::B5 => b.algebra.clone(),
        Seed::DualNumbers => {
            let ring = PolyRing::standard(field.clone(), &["Z"])?;
            let z = Polynomial::var(&ring, 0);
            let p = crate::algebra::Presentation::new(&ring, alloc::vec![z.pow(2)], crate::algebra::Mode::Plain)?;
            Arc::new(crate::algebra::make_quotient(&p, opts)?)
        }
    };
    let mut report = VerificationReport::new("gabber-sequence");
    report.param("steps", steps).param("seed", if seed == Seed::B5 { "B(5)" } else { "k[Z]/(Z^2)" }).param("field", field.tag());
    let mut current = start;
    for i in 0..steps {
        let dim = current.dimension();
        report.claim(
            &format!("R_{i} is finite-dimensional and bigger than k"),
            "sequence.proper-finite",
            dim.finite().is_some_and(|d| d > 1),
            format!("dim R_{i} = {dim}"),
        );
        let step = match kill_all_differentials(&b, &current, opts) {
            Ok(s) => s,
            Err(err) if err.is_resource_limit() => {
                report.status = Status::CapExceeded;
                report.param("stopped", format!("step {i}: {err}"));
                break;
            }
            Err(err) => return Err(err),
        };
        let capped = step.report.status == Status::CapExceeded;
        report.absorb(&format!("R_{i} -> R_{}: ", i + 1), step.report);
        if capped {
            break;
        }
        let inj = step.map.is_injective()?;
        report.claim(&format!("R_{i} -> R_{} is injective", i + 1), "sequence.injective", inj, String::new());
        current = step.algebra;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n_and_char_p() {
        let o = BuildOptions::default();
        assert!(gabber_b(4, &Field::Rationals, false, &o).is_err());
        let f7 = Field::prime(7).unwrap();
        assert!(gabber_b(5, &f7, false, &o).is_err());
        let b = gabber_b(5, &f7, true, &o).unwrap();
        assert!(b.warning.is_some());
        // 5·(5−4)·2 = 10 vanishes mod 5.
        assert!(gabber_b(5, &Field::prime(5).unwrap(), true, &o).is_err());
    }

    #[test]
    fn b5_is_local_of_dimension_eleven() {
        let b = gabber_b(5, &Field::Rationals, false, &BuildOptions::default()).unwrap();
        assert_eq!(b.algebra.finite_dimension().unwrap(), 11);
        assert_eq!(b.algebra.stabilized_at(), Some(6));
    }

    #[test]
    fn preparatory_n5() {
        let r = verify_preparatory(5, &Field::Rationals, false, &BuildOptions::default()).unwrap();
        assert!(r.pass(), "{r}");
        assert_eq!(r.claims.len(), 8);
    }

    #[test]
    fn tensor_power_small() {
        let o = BuildOptions::default();
        assert!(verify_tensor_power(5, 2, &Field::Rationals, &o).unwrap().pass());
        assert!(verify_tensor_power(5, 3, &Field::Rationals, &o).unwrap().pass());
        let b = gabber_b(5, &Field::Rationals, false, &o).unwrap();
        assert!(b_tensor_power(&b, 1, &o).is_err());
    }

    fn dual_numbers() -> Arc<QuotientAlgebra> {
        let ring = PolyRing::standard(Field::Rationals, &["Z"]).unwrap();
        let z = Polynomial::var(&ring, 0);
        let p = crate::algebra::Presentation::new(&ring, alloc::vec![z.pow(2)], crate::algebra::Mode::Plain).unwrap();
        Arc::new(crate::algebra::make_quotient(&p, &BuildOptions::default()).unwrap())
    }

    #[test]
    fn killing_f_in_b5() {
        let o = BuildOptions::default();
        let b = gabber_b(5, &Field::Rationals, false, &o).unwrap();
        let step = killing_step(&b, &b.algebra, &b.f, &o).unwrap();
        assert!(step.report.pass(), "{}", step.report);
        assert!(step.algebra.finite_dimension().unwrap() >= 11);
    }

    #[test]
    fn killing_z_in_dual_numbers() {
        let o = BuildOptions::default();
        let b = gabber_b(5, &Field::Rationals, false, &o).unwrap();
        let r = dual_numbers();
        let all = kill_all_differentials(&b, &r, &o).unwrap();
        assert_eq!(all.report.status, Status::Complete);
        assert!(all.report.pass(), "{}", all.report);
        let zero = Polynomial::zero(r.ring());
        assert!(killing_step(&b, &r, &zero, &o).is_err());
    }

    #[test]
    fn kill_all_on_b5_reports_cap() {
        let o = BuildOptions::default();
        let b = gabber_b(5, &Field::Rationals, false, &o).unwrap();
        let all = kill_all_differentials(&b, &b.algebra, &o).unwrap();
        extern crate std;
        std::println!("{}", all.report);
    }

    #[test]
    fn sequence_from_dual_numbers() {
        let r = gabber_sequence(1, Seed::DualNumbers, &Field::Rationals, &BuildOptions::default()).unwrap();
        assert!(r.pass(), "{r}");
        assert_eq!(r.status, Status::Complete);
    }

    #[test]
    fn sequence_needs_a_step() {
        assert!(gabber_sequence(0, Seed::DualNumbers, &Field::Rationals, &BuildOptions::default()).is_err());
    }
}

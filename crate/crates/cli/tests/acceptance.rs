//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use kahler_core::algebra::{make_quotient, AlgebraMap, BuildOptions, Mode, Presentation, QuotientAlgebra};
use kahler_core::constructions::{self as cons, random};
use kahler_core::groebner::{ideal_member, GroebnerBasis, DEFAULT_BUDGET};
use kahler_core::kaehler::{is_zero_induced_map, Base, KaehlerModule};
use kahler_core::parse::parse_polynomial;
use kahler_core::{Field, Monomial, PolyRing, Polynomial, RingRef};
use rand::Rng;
use serde_json::Value;

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs the CLI in-process and returns (exit code, stdout).
fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kahler").chain(args.iter().copied());
    let code = kahler_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn cli_json(args: &[&str]) -> Result<(i32, Value, String), String> {
    let mut full = vec!["--json", "--deterministic"];
    full.extend_from_slice(args);
    let (code, text) = cli(&full);
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{args:?}: bad JSON ({e})"))?;
    Ok((code, v, text))
}

fn report_passes(args: &[&str]) -> Result<Value, String> {
    let (code, v, _) = cli_json(args)?;
    ensure(code == 0, format!("{args:?}: exit code {code}"))?;
    ensure(v["pass"] == Value::Bool(true), format!("{args:?}: report does not pass"))?;
    ensure(v["status"] == "complete", format!("{args:?}: status {}", v["status"]))?;
    let claims = v["claims"].as_array().ok_or("no claims")?;
    ensure(!claims.is_empty(), format!("{args:?}: empty claim list"))?;
    for c in claims {
        ensure(c["pass"] == Value::Bool(true), format!("{args:?}: claim {} failed", c["label"]))?;
    }
    Ok(v)
}

fn opts() -> BuildOptions {
    BuildOptions::default()
}

fn anchors(v: &Value) -> Vec<String> {
    v["claims"].as_array().unwrap().iter().map(|c| c["anchor"].as_str().unwrap().to_string()).collect()
}

// 1. The preparatory facts about B(n) for n = 5, 6, 7.
fn criterion_1() -> Check {
    let mut dims = Vec::new();
    for n in ["5", "6", "7"] {
        let started = Instant::now();
        let v = report_passes(&["verify", "preparatory", "--n", n, "--field", "QQ"])?;
        ensure(started.elapsed().as_secs() < 60, format!("n = {n} took {:?}", started.elapsed()))?;
        let a = anchors(&v);
        for needed in ["gabber.B.df-zero", "gabber.B.f-nonzero", "gabber.B.f-square-zero"] {
            ensure(a.iter().any(|x| x == needed), format!("n = {n}: missing claim {needed}"))?;
        }
        dims.push(format!("n={n}: {} claims", a.len()));
    }
    Ok(dims.join(", "))
}

// 2. Dimension of B(n) against the truncated linear-algebra oracle.
fn criterion_2() -> Check {
    let mut parts = Vec::new();
    for n in [5u32, 6, 7] {
        // Oracle first, from the defining polynomials only.
        let ring = PolyRing::standard(Field::Rationals, &["X", "Y"]).map_err(fail)?;
        let p = |s: &str| parse_polynomial(&ring, s).unwrap();
        let gens = [
            p(&format!("X*(2*Y^2 + {n}*X^{})", n - 2)),
            p(&format!("Y*(2*X^2 + {n}*Y^{})", n - 2)),
        ];
        let (oracle_n, oracle_dim) = common::stabilized_dimension(&ring, &gens, 64).ok_or("oracle did not stabilize")?;
        let b = cons::gabber_b(n, &Field::Rationals, false, &opts()).map_err(fail)?;
        let dim = b.algebra.finite_dimension().map_err(fail)?;
        ensure(dim == oracle_dim, format!("n = {n}: dim {dim}, oracle {oracle_dim}"))?;
        ensure(b.algebra.stabilized_at() == Some(oracle_n), format!("n = {n}: stabilized at {:?}, oracle {oracle_n}", b.algebra.stabilized_at()))?;
        parts.push(format!("dim B({n}) = {dim} at N = {oracle_n}"));
    }
    Ok(parts.join(", "))
}

fn dual_numbers() -> Result<Arc<QuotientAlgebra>, String> {
    let ring = PolyRing::standard(Field::Rationals, &["Z"]).map_err(fail)?;
    let z = Polynomial::var(&ring, 0);
    let pres = Presentation::new(&ring, vec![z.pow(2)], Mode::Plain).map_err(fail)?;
    Ok(Arc::new(make_quotient(&pres, &opts()).map_err(fail)?))
}

fn check_killing(b: &cons::GabberB, source: &Arc<QuotientAlgebra>, r: &Polynomial, name: &str, whole_map: bool) -> Check {
    let step = cons::killing_step(b, source, r, &opts()).map_err(fail)?;
    ensure(step.report.pass(), format!("{name}: report failed: {step:?}", step = step.report.failed().collect::<Vec<_>>()))?;
    let target = &step.algebra;
    let dim_target = target.finite_dimension().map_err(fail)?;
    // Injectivity: the matrix of the inclusion has full column rank.
    let m = step.inclusion.linear_matrix().map_err(fail)?;
    let rows: Vec<Vec<_>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let dim_source = source.finite_dimension().map_err(fail)?;
    ensure(common::rank(rows) == dim_source, format!("{name}: inclusion not injective"))?;
    let omega = KaehlerModule::new(target, Base::Field, &opts()).map_err(fail)?;
    let image = step.inclusion.apply(r).map_err(fail)?;
    ensure(omega.is_d_zero(&image).map_err(fail)?, format!("{name}: d(r) is nonzero in the target"))?;
    if whole_map {
        ensure(is_zero_induced_map(&step.inclusion, &omega).map_err(fail)?, format!("{name}: induced map on Omega is nonzero"))?;
    }
    Ok(format!("{name}: dim R = {dim_source}, dim R' = {dim_target}"))
}

// 3. One killing step: f in B(5), and z in the dual numbers.
fn criterion_3() -> Check {
    let b = cons::gabber_b(5, &Field::Rationals, false, &opts()).map_err(fail)?;
    let first = check_killing(&b, &b.algebra, &b.f, "B(5), r = f", false)?;
    let dual = dual_numbers()?;
    let z = Polynomial::var(dual.ring(), 0);
    let second = check_killing(&b, &dual, &z, "k[z]/z^2, r = z", true)?;
    Ok(format!("{first}; {second}"))
}

// 4. Characteristic-p tower.
fn criterion_4() -> Check {
    let started = Instant::now();
    for p in ["2", "3", "5"] {
        report_passes(&["verify", "charp-tower", "--p", p, "--n-max", "3"])?;
        let ps: u64 = p.parse().unwrap();
        for n in 1..=3 {
            let a = cons::truncated_root_algebra(ps, n, &opts()).map_err(fail)?;
            ensure(a.has_nonzero_nilpotent().map_err(fail)?, format!("p = {p}, n = {n}: reduced"))?;
            let omega = KaehlerModule::new(&a, Base::Field, &opts()).map_err(fail)?;
            ensure(!omega.is_omega_zero(), format!("p = {p}, n = {n}: Omega is zero"))?;
            if n < 3 {
                let next = cons::truncated_root_algebra(ps, n + 1, &opts()).map_err(fail)?;
                let y = Polynomial::var(next.ring(), 0);
                let map = AlgebraMap::new(&a, &next, vec![y.pow(ps as u32)]).map_err(fail)?;
                let omega_next = KaehlerModule::new(&next, Base::Field, &opts()).map_err(fail)?;
                ensure(is_zero_induced_map(&map, &omega_next).map_err(fail)?, format!("p = {p}, n = {n}: transition not zero"))?;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed.as_secs() < 10, format!("took {elapsed:?}"))?;
    Ok("p in {2, 3, 5}, n <= 3".into())
}

// 5. Twisted tower over F_p(x).
fn criterion_5() -> Check {
    for p in ["2", "3"] {
        for n in ["1", "2"] {
            let v = report_passes(&["verify", "twisted", "--p", p, "--n", n, "--samples", "50"])?;
            let a = anchors(&v);
            ensure(a.iter().any(|x| x == "twisted.phi-multiplicative"), "ring map claim missing")?;
        }
    }
    Ok("p in {2, 3}, n in {1, 2}, 50 samples".into())
}

// 6. Euler identity on random weighted-homogeneous polynomials.
fn criterion_6() -> Check {
    for field in ["QQ", "Fp:2", "Fp:5"] {
        report_passes(&["verify", "euler", "--trials", "100", "--field", field])?;
    }
    Ok("100 trials over QQ, F_2, F_5".into())
}

// 7. Kernel of d in positive degree.
fn criterion_7() -> Check {
    report_passes(&["verify", "graded", "--field", "QQ", "--max-deg", "6"])?;
    for p in [2u64, 3] {
        let field = format!("Fp:{p}");
        report_passes(&["verify", "graded", "--field", &field, "--max-deg", "6"])?;
        // k[X]: the kernel in degree d is nonzero exactly when p | d.
        let ring = PolyRing::standard(Field::prime(p).map_err(fail)?, &["X"]).map_err(fail)?;
        let pres = Presentation::new(&ring, vec![], Mode::Graded).map_err(fail)?;
        let a = Arc::new(make_quotient(&pres, &opts()).map_err(fail)?);
        let omega = KaehlerModule::new(&a, Base::DegreeZero, &opts()).map_err(fail)?;
        for d in 1..=2 * p {
            let kernel = omega.derivation_kernel_in_degree(d).map_err(fail)?;
            ensure(kernel.is_empty() == (d % p != 0), format!("F_{p}[X], degree {d}: kernel dimension {}", kernel.len()))?;
        }
    }
    Ok(format!("{} corpus algebras, degrees 1..=6, F_2 and F_3", cons::GRADED_CORPUS.len()))
}

// 8. Artinian local case over perfect fields.
fn criterion_8() -> Check {
    let v = report_passes(&["verify", "local-case", "--count", "20"])?;
    let mut corpus = cons::random_local_corpus(20, SEED, &opts()).map_err(fail)?;
    corpus.extend(cons::example_corpus(&opts()).map_err(fail)?);
    let mut nonreduced = 0;
    for e in &corpus {
        let omega = KaehlerModule::new(&e.algebra, Base::Field, &opts()).map_err(fail)?;
        let reduced = !e.algebra.has_nonzero_nilpotent().map_err(fail)?;
        if omega.is_omega_zero() {
            ensure(e.algebra.finite_dimension().map_err(fail)? == 1, format!("{}: Omega = 0 but dim > 1", e.label))?;
            ensure(reduced, format!("{}: Omega = 0 but not reduced", e.label))?;
        }
        if !reduced {
            nonreduced += 1;
            ensure(!omega.is_omega_zero(), format!("{}: non-reduced with Omega = 0", e.label))?;
        }
    }
    Ok(format!("{} algebras ({nonreduced} non-reduced), {} claims", corpus.len(), anchors(&v).len()))
}

fn homogeneous_polynomial(rng: &mut random::SeededRng, ring: &RingRef, degree: u64, terms: usize) -> Polynomial {
    let pool: Vec<Monomial> = ring.monomials_of_degree(degree);
    random::polynomial_from(rng, ring, &pool, terms)
}

// 9. Gröbner engine: Buchberger criterion, membership oracle, normal forms.
fn criterion_9() -> Check {
    let mut rng = random::rng(SEED);
    let names = ["X", "Y", "Z"];
    let fields = [Field::Rationals, Field::prime(5).map_err(fail)?];
    let (mut ideals, mut members, mut queries, mut nf_checks) = (0, 0, 0, 0);
    let mut bases: Vec<GroebnerBasis> = Vec::new();
    for trial in 0..24 {
        let nvars = rng.gen_range(1..=3);
        let field = fields[trial % 2].clone();
        let ring = PolyRing::standard(field, &names[..nvars]).map_err(fail)?;
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| {
                let d = rng.gen_range(1..=4);
                homogeneous_polynomial(&mut rng, &ring, d, 3)
            })
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        ideals += 1;
        let gb = GroebnerBasis::ideal(&ring, &gens, DEFAULT_BUDGET).map_err(fail)?;
        for _ in 0..6 {
            let top = rng.gen_range(1..=6u64);
            // A member built from cofactors, plus a random homogeneous part.
            let mut f = Polynomial::zero(&ring);
            for g in &gens {
                let dg = g.weighted_degree().unwrap();
                if dg <= top {
                    f = &f + &(&homogeneous_polynomial(&mut rng, &ring, top - dg, 2) * g);
                }
            }
            let noise_degree = rng.gen_range(0..=top);
            let noise = homogeneous_polynomial(&mut rng, &ring, noise_degree, 2);
            for candidate in [f.clone(), &f + &noise] {
                let oracle = common::homogeneous_member(&candidate, &gens);
                let engine = ideal_member(&candidate, &gens, DEFAULT_BUDGET).map_err(fail)?;
                ensure(oracle == engine, format!("ideal {gens:?}: membership of {candidate:?} oracle {oracle}, engine {engine}"))?;
                members += usize::from(oracle);
                queries += 1;
            }
        }
        bases.push(gb);
    }
    // Non-homogeneous ideals: constructed members and normal forms.
    for _ in 0..20 {
        let nvars = rng.gen_range(1..=3);
        let ring = PolyRing::standard(Field::Rationals, &names[..nvars]).map_err(fail)?;
        let pool = random::monomials_up_to(nvars, 4);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random::polynomial_from(&mut rng, &ring, &pool, 3)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let gb = GroebnerBasis::ideal(&ring, &gens, DEFAULT_BUDGET).map_err(fail)?;
        let small = random::monomials_up_to(nvars, 2);
        for _ in 0..10 {
            let member = gens.iter().fold(Polynomial::zero(&ring), |acc, g| &acc + &(&random::polynomial_from(&mut rng, &ring, &small, 2) * g));
            ensure(gb.contains_poly(&member), format!("constructed member rejected for {gens:?}"))?;
            let f = random::polynomial_from(&mut rng, &ring, &pool, 5);
            let nf = gb.normal_form_poly(&f);
            ensure(gb.normal_form_poly(&nf) == nf, format!("normal form not idempotent on {f:?}"))?;
            ensure(gb.contains_poly(&(&f - &nf)), format!("f - NF(f) not in the ideal for {f:?}"))?;
            nf_checks += 1;
        }
        bases.push(gb);
    }
    ensure(ideals >= 20, format!("only {ideals} homogeneous ideals"))?;
    ensure(nf_checks >= 200, format!("only {nf_checks} normal-form checks"))?;
    for n in [5, 6, 7] {
        bases.push(cons::gabber_b(n, &Field::Rationals, false, &opts()).map_err(fail)?.algebra.groebner_basis().clone());
    }
    let b = cons::gabber_b(5, &Field::Rationals, false, &opts()).map_err(fail)?;
    bases.push(KaehlerModule::new(&b.algebra, Base::Field, &opts()).map_err(fail)?.groebner_basis().clone());
    for (i, gb) in bases.iter().enumerate() {
        ensure(gb.satisfies_buchberger_criterion(), format!("basis {i}: S-pair does not reduce to zero"))?;
        ensure(gb.is_reduced(), format!("basis {i}: not reduced"))?;
    }
    Ok(format!("{ideals} ideals, {queries} membership queries ({members} members), {nf_checks} normal forms, {} bases", bases.len()))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["verify", "preparatory", "--n", "5"],
    &["verify", "preparatory", "--n", "6"],
    &["verify", "preparatory", "--n", "7"],
    &["verify", "killing", "--start", "b5"],
    &["verify", "killing", "--start", "dual"],
    &["verify", "charp-tower", "--p", "2", "--n-max", "3"],
    &["verify", "charp-tower", "--p", "3", "--n-max", "3"],
    &["verify", "charp-tower", "--p", "5", "--n-max", "3"],
    &["verify", "twisted", "--p", "2", "--n", "2"],
    &["verify", "twisted", "--p", "3", "--n", "1"],
    &["verify", "euler", "--field", "Fp:5"],
    &["verify", "graded", "--field", "Fp:2"],
    &["verify", "local-case"],
    &["verify", "gabber", "--start", "dual"],
];

// 10. Byte-identical output for a fixed seed.
fn criterion_10() -> Check {
    for args in DETERMINISM_RUNS {
        let (_, _, first) = cli_json(args)?;
        let (_, _, second) = cli_json(args)?;
        ensure(first == second, format!("{args:?}: JSON differs between runs"))?;
        let (_, a) = cli(args);
        let (_, b) = cli(args);
        let strip = |s: &str| s.lines().filter(|l| !l.starts_with("elapsed")).collect::<Vec<_>>().join("\n");
        ensure(strip(&a) == strip(&b), format!("{args:?}: text output differs between runs"))?;
    }
    let first = cons::random_local_corpus(20, SEED, &opts()).map_err(fail)?;
    let second = cons::random_local_corpus(20, SEED, &opts()).map_err(fail)?;
    let labels = |c: &[cons::CorpusEntry]| c.iter().map(|e| e.label.clone()).collect::<Vec<_>>();
    ensure(labels(&first) == labels(&second), "random corpus differs between runs")?;
    Ok(format!("{} CLI runs compared", DETERMINISM_RUNS.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("preparatory facts for B(5), B(6), B(7)", criterion_1),
        ("dimension of B(n) matches the oracle", criterion_2),
        ("killing step", criterion_3),
        ("characteristic-p tower", criterion_4),
        ("twisted tower over F_p(x)", criterion_5),
        ("Euler identity", criterion_6),
        ("kernel of d in positive degree", criterion_7),
        ("Artinian local case", criterion_8),
        ("Groebner engine", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {} ms)", i + 1, started.elapsed().as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

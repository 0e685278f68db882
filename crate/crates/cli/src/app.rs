use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kahler_core::algebra::{make_quotient, AlgebraMap, BuildOptions, Mode, QuotientAlgebra};
use kahler_core::constructions::{self as cons, Seed};
use kahler_core::groebner::{DEFAULT_BUDGET, DEFAULT_STAIRCASE_CAP};
use kahler_core::kaehler::{format_differential, induced_map_on_omega, Base, KaehlerModule};
use kahler_core::parse::parse_polynomial;
use kahler_core::report::{Status, VerificationReport};
use kahler_core::{Field, Polynomial};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::files::{self, dump_presentation, load_presentation, parse_field};
use crate::json;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "kahler", version, about = "Kähler differentials of finitely presented algebras")]
struct Cli {
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed_ms as 0 so that output is byte-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Reduction-step budget for each Gröbner computation.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Largest staircase (algebra dimension) that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_STAIRCASE_CAP)]
    cap: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BaseArg {
    Field,
    DegreeZero,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Base {
        match b {
            BaseArg::Field => Base::Field,
            BaseArg::DegreeZero => Base::DegreeZero,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StartArg {
    /// B(5) over the chosen field.
    B5,
    /// k[Z]/(Z^2).
    Dual,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary of the module of differentials.
    Omega {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "field")]
        base: BaseArg,
    },
    /// Whether d(element) vanishes.
    DZero {
        #[arg(long)]
        file: PathBuf,
        element: String,
        #[arg(long, value_enum, default_value = "field")]
        base: BaseArg,
    },
    /// Basis of the kernel of d in one degree of a graded algebra.
    KernelDegree {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        deg: u64,
    },
    /// Kernel of d confined to degrees divisible by the characteristic.
    Veronese {
        #[arg(long)]
        file: PathBuf,
        #[arg(long = "max-deg")]
        max_deg: u64,
    },
    /// Run one of the construction checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Whether an algebra map induces the zero map on differentials.
    MapOmega {
        #[arg(long)]
        map: PathBuf,
    },
    /// Dimension of the algebra over its coefficient field.
    Dim {
        #[arg(long)]
        file: PathBuf,
    },
    /// Parse a presentation file; with --dump print its canonical form.
    ParseCheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// The algebra B(n) and its element f.
    Preparatory {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value = "QQ")]
        field: String,
        /// Permit positive characteristic (outside the intended setting).
        #[arg(long)]
        allow_char_p: bool,
    },
    /// g = Σ g_i in the (t−1)-fold tensor power of B(n).
    TensorPower {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long)]
        t: u32,
    },
    /// One killing step R -> R ⊗ B_t/(r⊗1 − 1⊗g).
    Killing {
        #[arg(long, value_enum, default_value = "b5")]
        start: StartArg,
        /// Custom algebra R instead of --start.
        #[arg(long, requires = "element")]
        file: Option<PathBuf>,
        /// Element r of the custom algebra.
        #[arg(long, requires = "file")]
        element: Option<String>,
    },
    /// Kill all differentials of R.
    KillAll {
        #[arg(long, value_enum, default_value = "dual")]
        start: StartArg,
    },
    /// Prefix of the chain R_0 -> R_1 -> ... with zero maps on differentials.
    Gabber {
        #[arg(long, default_value_t = 1)]
        steps: u32,
        #[arg(long, value_enum, default_value = "b5")]
        start: StartArg,
    },
    /// F_p[Y]/(Y^(p^n)) and the maps Y -> Y^p.
    CharpTower {
        #[arg(long)]
        p: u64,
        #[arg(long = "n-max")]
        n_max: u32,
    },
    /// L[U,Z]/(U^(p^n) − x − Z, Z^2) over L = F_p(x).
    Twisted {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Omega = 0 forces R = k on random and example Artinian local algebras.
    LocalCase {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Euler identity on random weighted-homogeneous polynomials.
    Euler {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Kernel of d on the built-in graded corpus.
    Graded {
        #[arg(long, default_value = "QQ")]
        field: String,
        #[arg(long = "max-deg", default_value_t = 6)]
        max_deg: u64,
    },
}

/// What a command produced: JSON, text, and the exit code.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn info(json: Value, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }
}

struct Ctx {
    opts: BuildOptions,
    seed: u64,
    deterministic: bool,
}

fn field_arg(s: &str) -> Result<Field, CliError> {
    parse_field(s).map_err(CliError::Usage)
}

fn load_algebra(path: &Path, ctx: &Ctx) -> Result<Arc<QuotientAlgebra>, CliError> {
    let p = load_presentation(path)?;
    Ok(Arc::new(make_quotient(&p, &ctx.opts)?))
}

fn element(a: &QuotientAlgebra, text: &str) -> Result<Polynomial, CliError> {
    parse_polynomial(a.ring(), text).map_err(|e| match e {
        kahler_core::Error::Parse { offset, message } => CliError::Usage(format!("element, column {}: {message}", offset + 1)),
        other => other.into(),
    })
}

fn finish_report(mut r: VerificationReport, started: Instant, ctx: &Ctx) -> Outcome {
    r.elapsed_ms = Some(if ctx.deterministic { 0 } else { started.elapsed().as_millis() as u64 });
    let code = if !r.pass() {
        1
    } else if r.status == Status::CapExceeded {
        3
    } else {
        0
    };
    let text = format!("{r}\nelapsed: {} ms", r.elapsed_ms.unwrap_or(0));
    Outcome { json: json::report(&r), text, code }
}

fn omega(file: &Path, base: BaseArg, ctx: &Ctx) -> Result<Outcome, CliError> {
    let a = load_algebra(file, ctx)?;
    let k = KaehlerModule::new(&a, base.into(), &ctx.opts)?;
    let zero = k.is_omega_zero();
    let dim = k.dimension(ctx.opts.staircase_cap)?;
    let gens: Vec<String> = a.ring().variables().iter().map(|v| format!("d{v}")).collect();
    let rows: Vec<String> = k.jacobian_rows().iter().map(|v| format_differential(a.ring(), v)).collect();
    let text = format!(
        "dim R: {}\ngenerators: {}\njacobian rows:\n{}\nmodule basis size: {}\nomega zero: {zero}\ndim omega: {dim}",
        a.dimension(),
        gens.join(", "),
        rows.iter().map(|r| format!("  {r}")).collect::<Vec<_>>().join("\n"),
        k.groebner_basis().elements().len(),
    );
    let json = json!({
        "dim_algebra": a.dimension().to_string(),
        "generators": gens,
        "jacobian_rows": rows,
        "omega_zero": zero,
        "dim_omega": dim.to_string(),
    });
    Ok(Outcome::info(json, text))
}

fn d_zero(file: &Path, text: &str, base: BaseArg, ctx: &Ctx) -> Result<Outcome, CliError> {
    let a = load_algebra(file, ctx)?;
    let f = element(&a, text)?;
    let k = KaehlerModule::new(&a, base.into(), &ctx.opts)?;
    let d = k.d_image(&f)?;
    let shown = k.format(&d);
    Ok(Outcome::info(json!({ "element": text, "d": shown, "zero": d.is_zero() }), format!("d({text}) = {shown}\nzero: {}", d.is_zero())))
}

fn kernel_degree(file: &Path, deg: u64, ctx: &Ctx) -> Result<Outcome, CliError> {
    let a = load_algebra(file, ctx)?;
    let k = KaehlerModule::new(&a, Base::DegreeZero, &ctx.opts)?;
    let basis: Vec<String> = k.derivation_kernel_in_degree(deg)?.iter().map(|p| p.to_string()).collect();
    let text = format!("degree {deg}: kernel dimension {}\n{}", basis.len(), basis.join("\n"));
    Ok(Outcome::info(json!({ "degree": deg, "dimension": basis.len(), "basis": basis }), text.trim_end().to_string()))
}

fn veronese(file: &Path, max_deg: u64, ctx: &Ctx, started: Instant) -> Result<Outcome, CliError> {
    let a = load_algebra(file, ctx)?;
    let k = KaehlerModule::new(&a, Base::DegreeZero, &ctx.opts)?;
    let check = k.veronese_containment_check(max_deg)?;
    let mut r = VerificationReport::new("veronese");
    r.param("file", file.display()).param("p", check.characteristic).param("max_deg", max_deg);
    for (d, n) in &check.per_degree {
        if d % check.characteristic == 0 {
            r.param(&format!("dim ker d in degree {d}"), n);
        } else {
            r.claim(&format!("ker d = 0 in degree {d}"), "graded.veronese", *n == 0, format!("dim {n}"));
        }
    }
    Ok(finish_report(r, started, ctx))
}

fn map_omega(path: &Path, ctx: &Ctx) -> Result<Outcome, CliError> {
    let text = files::read_text(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let map_file = files::parse_map_file(&text, dir).map_err(|e| CliError::Format { path: path.to_path_buf(), error: e })?;
    let source = load_algebra(&map_file.source, ctx)?;
    let target = load_algebra(&map_file.target, ctx)?;
    let images = files::map_images(&map_file, source.ring(), target.ring()).map_err(|e| CliError::Format { path: path.to_path_buf(), error: e })?;
    let map = AlgebraMap::new(&source, &target, images)?;
    let k = KaehlerModule::new(&target, Base::Field, &ctx.opts)?;
    let imgs = induced_map_on_omega(&map, &k)?;
    let zero = imgs.iter().all(|v| v.is_zero());
    let lines: Vec<String> =
        source.ring().variables().iter().zip(&imgs).map(|(v, img)| format!("d{v} -> {}", k.format(img))).collect();
    let json = json!({ "images": lines, "zero_map": zero });
    Ok(Outcome::info(json, format!("{}\nzero map: {zero}", lines.join("\n"))))
}

fn dim(file: &Path, ctx: &Ctx) -> Result<Outcome, CliError> {
    let a = load_algebra(file, ctx)?;
    let mut text = format!("dim: {}", a.dimension());
    if let Some(n) = a.stabilized_at() {
        text.push_str(&format!("\nstabilized at N = {n}"));
    }
    let json = json!({ "dimension": a.dimension().to_string(), "stabilized_at": a.stabilized_at() });
    Ok(Outcome::info(json, text))
}

fn parse_check(file: &Path, dump: bool) -> Result<Outcome, CliError> {
    let p = load_presentation(file)?;
    let canonical = dump_presentation(&p);
    let text = if dump {
        canonical.trim_end().to_string()
    } else {
        format!("ok: {} variables, {} relations, mode {}", p.ring().nvars(), p.relations().len(), p.mode().name())
    };
    let json = json!({
        "variables": p.ring().variables(),
        "relations": p.relations().len(),
        "mode": p.mode().name(),
        "canonical": canonical,
    });
    Ok(Outcome::info(json, text))
}

fn dual_numbers(field: &Field, ctx: &Ctx) -> Result<Arc<QuotientAlgebra>, CliError> {
    let ring = kahler_core::PolyRing::standard(field.clone(), &["Z"])?;
    let z = Polynomial::var(&ring, 0);
    let p = kahler_core::algebra::Presentation::new(&ring, vec![z.pow(2)], Mode::Plain)?;
    Ok(Arc::new(make_quotient(&p, &ctx.opts)?))
}

fn verify(what: &Verify, ctx: &Ctx, started: Instant) -> Result<Outcome, CliError> {
    let o = &ctx.opts;
    let report = match what {
        Verify::Preparatory { n, field, allow_char_p } => cons::verify_preparatory(*n, &field_arg(field)?, *allow_char_p, o)?,
        Verify::TensorPower { n, t } => cons::verify_tensor_power(*n, *t, &Field::Rationals, o)?,
        Verify::Killing { start, file, element: elt } => {
            let b = cons::gabber_b(5, &Field::Rationals, false, o)?;
            let (r, x) = match (file, elt) {
                (Some(path), Some(text)) => {
                    let a = load_algebra(path, ctx)?;
                    let x = element(&a, text)?;
                    (a, x)
                }
                _ => match start {
                    StartArg::B5 => (b.algebra.clone(), b.f.clone()),
                    StartArg::Dual => {
                        let a = dual_numbers(&Field::Rationals, ctx)?;
                        let z = Polynomial::var(a.ring(), 0);
                        (a, z)
                    }
                },
            };
            cons::killing_step(&b, &r, &x, o)?.report
        }
        Verify::KillAll { start } => {
            let b = cons::gabber_b(5, &Field::Rationals, false, o)?;
            let r = match start {
                StartArg::B5 => b.algebra.clone(),
                StartArg::Dual => dual_numbers(&Field::Rationals, ctx)?,
            };
            cons::kill_all_differentials(&b, &r, o)?.report
        }
        Verify::Gabber { steps, start } => {
            let seed = match start {
                StartArg::B5 => Seed::B5,
                StartArg::Dual => Seed::DualNumbers,
            };
            cons::gabber_sequence(*steps, seed, &Field::Rationals, o)?
        }
        Verify::CharpTower { p, n_max } => cons::charp_tower(*p, *n_max, o)?,
        Verify::Twisted { p, n, samples } => cons::twisted_example(*p, *n, *samples, ctx.seed, o)?,
        Verify::LocalCase { count } => {
            let mut corpus = cons::random_local_corpus(*count, ctx.seed, o)?;
            corpus.extend(cons::example_corpus(o)?);
            let mut r = cons::check_theorem_local_case(&corpus, o)?;
            r.param("seed", ctx.seed);
            r
        }
        Verify::Euler { trials, field } => cons::euler_check(&field_arg(field)?, *trials, ctx.seed)?,
        Verify::Graded { field, max_deg } => cons::graded_kernel_check(&field_arg(field)?, *max_deg, o)?,
    };
    Ok(finish_report(report, started, ctx))
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Outcome, CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::Omega { file, base } => omega(file, *base, ctx),
        Command::DZero { file, element, base } => d_zero(file, element, *base, ctx),
        Command::KernelDegree { file, deg } => kernel_degree(file, *deg, ctx),
        Command::Veronese { file, max_deg } => veronese(file, *max_deg, ctx, started),
        Command::Verify { what } => verify(what, ctx, started),
        Command::MapOmega { map } => map_omega(map, ctx),
        Command::Dim { file } => dim(file, ctx),
        Command::ParseCheck { file, dump } => parse_check(file, *dump),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 success, 1 a claim failed, 2 usage or input error, 3 budget or
/// cap exceeded.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let ctx = Ctx {
        opts: BuildOptions { budget: cli.budget, staircase_cap: cli.cap, ..Default::default() },
        seed: cli.seed,
        deterministic: cli.deterministic,
    };
    match dispatch(&cli, &ctx) {
        Ok(o) => {
            let body = if cli.json { json::render(&o.json) } else { o.text };
            let _ = writeln!(out, "{body}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

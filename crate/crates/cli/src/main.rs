use std::io::Write;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use muext_core::cohomology::sweep;
use muext_core::ext::{compute_ext, ExtResult};
use muext_core::finite_field::FiniteField;
use muext_core::global::RingSpec;
use muext_core::hopf::{check_hopf, identity_antipode_hopf_data, mutated_hopf_data, reference_hopf_data};
use muext_core::kummer::{t_isomorphic, t_point_group, TScheme};
use muext_core::local::{
    is_pth_power_local, local_power_class_generators, precision_floor, same_subgroup, LocalFieldSpec, PadicElem,
};
use muext_core::Error;

mod render;

const SCHEMA: &str = "muext/1";

#[derive(Parser, Debug)]
#[command(name = "muext", version, about = "Extensions of mu_p by Z/p over rings of S-integers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    /// One JSON record per line.
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Ext^1(mu_p, Z/p) over O_S for K = Q(zeta_K).
    Ext {
        #[arg(long)]
        p: u64,
        /// Conductor of K (1 for Q, 4 for Q(i)).
        #[arg(long = "K", default_value_t = 1)]
        k: u64,
        /// Rational prime whose primes are inverted; repeatable.
        #[arg(long = "S")]
        s: Vec<u64>,
        /// Local precision in p-adic digits; must not be below the floor.
        #[arg(long)]
        precision: Option<u32>,
        /// Print the full audit trail.
        #[arg(long)]
        audit: bool,
    },
    /// Power classes of Q_p(zeta_K) and p-th power tests.
    Local {
        #[arg(long)]
        p: u64,
        #[arg(long = "K", default_value_t = 1)]
        k: u64,
        /// Rational number to test; repeatable.
        #[arg(long = "test", allow_hyphen_values = true)]
        tests: Vec<String>,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Check the Hopf algebra axioms for the order-four algebra.
    Hopf {
        #[arg(long, value_enum, default_value_t = HopfVariant::Reference)]
        variant: HopfVariant,
    },
    /// Points of T(r) over a finite field.
    Tscheme {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Finite field, e.g. F9.
        #[arg(long)]
        over: String,
        /// Also decide whether T(r) and T(r') are isomorphic.
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<i64>,
    },
    /// Twisted cohomology comparisons for finite groups.
    Cohomology {
        /// Run the full parameter sweep.
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HopfVariant {
    Reference,
    IdentityAntipode,
    Mutated,
}

enum Failure {
    Core(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) | Error::DegreeGuard { .. } | Error::GeneratorSearchExhausted { .. } => 2,
        Error::Precision { .. } | Error::IndistinguishableFromZero(_) | Error::Inconclusive(_) => 3,
        Error::InvalidArgument(_)
        | Error::NotPrime(_)
        | Error::ConductorMismatch(..)
        | Error::NotASubfield { .. }
        | Error::ZeroElement(_) => 4,
        _ => 1,
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

struct Out {
    format: Format,
}

impl Out {
    fn human(&self, line: impl AsRef<str>) {
        if self.format == Format::Human {
            emit(line.as_ref());
        }
    }

    fn record(&self, command: &str, mut v: Value) {
        if self.format == Format::Json {
            let obj = v.as_object_mut().expect("record is an object");
            obj.insert("command".into(), json!(command));
            obj.insert("schema".into(), json!(SCHEMA));
            emit(&serde_json::to_string(&v).expect("serializable"));
        }
    }
}

fn check_precision(p: u64, conductor: u64, precision: Option<u32>) -> Outcome {
    if let Some(prec) = precision {
        let (e, _) = LocalFieldSpec::local_degrees(p, conductor);
        let floor = precision_floor(p, e);
        if prec < floor {
            return Err(Failure::Usage(format!("precision {prec} is below the floor {floor}")));
        }
    }
    Ok(())
}

fn cmd_ext(out: &Out, p: u64, k: u64, s: Vec<u64>, precision: Option<u32>, audit: bool) -> Outcome {
    let ring = RingSpec::new(k, p, s)?;
    check_precision(p, ring.big_conductor(), precision)?;
    let res = compute_ext(&ring, precision)?;
    render_ext(out, &res, audit);
    Ok(())
}

fn render_ext(out: &Out, res: &ExtResult, audit: bool) {
    let ring = &res.ring;
    out.human(format!(
        "ring: K = {}, p = {}, S = {}, L = {}",
        render::field_name(ring.m),
        ring.p,
        render::set(&ring.s),
        render::field_name(ring.big_conductor())
    ));
    let cert = &res.certificate;
    out.human(format!(
        "class group of {}: {:?} (Minkowski bound {:.4}, {} primes checked)",
        render::field_name(cert.conductor),
        cert.verdict,
        cert.minkowski_approx,
        cert.checked.len()
    ));
    out.human(format!("dim = {}", res.dimension));
    for ((g, q), d) in res.generators.iter().zip(&res.rational_generators).zip(&res.descriptions) {
        match q {
            Some(q) => out.human(format!("generator = {q}")),
            None => out.human(format!("generator = {g}")),
        }
        out.human(format!("  coefficients = {}", render::coeffs(g)));
        out.human(format!("  {d}"));
    }
    if audit {
        let a = &res.audit;
        out.human("audit:");
        out.human(format!(
            "  global basis ({} classes, expected {}):",
            a.global_basis.dimension(),
            a.expected_unit_dimension
        ));
        for u in &a.global_basis.units {
            out.human(format!("    {u}"));
        }
        out.human(format!(
            "  Gamma = {{{}}}, order of omega on Gamma = {}",
            a.gamma.elements.iter().map(|e| format!("sigma_{e}")).collect::<Vec<_>>().join(", "),
            a.omega_order
        ));
        out.human(format!("  omega^2 eigenspace (dimension {}):", a.eigenspace_units.len()));
        for (v, u) in a.eigenspace_vectors.iter().zip(&a.eigenspace_units) {
            out.human(format!("    {} -> {u}", render::vector(v)));
        }
        let lf = &a.local_field;
        out.human(format!(
            "  local field {}: e = {}, f = {}, precision = {}",
            render::local_name(lf.p, lf.conductor),
            lf.ramification,
            lf.residue_degree,
            lf.precision
        ));
        out.human(format!("  local basis ({} classes):", a.local_basis.len()));
        for b in &a.local_basis {
            out.human(format!("    {}", render::padic(b)));
        }
        out.human("  local images:");
        for img in &a.local_images {
            out.human(format!(
                "    {} -> coordinates {}, p-th power: {}",
                img.unit,
                render::vector(&img.coordinates),
                img.is_pth_power
            ));
        }
        out.human("  coordinate matrix:");
        for i in 0..a.coordinate_matrix.rows {
            out.human(format!("    {}", render::vector(a.coordinate_matrix.row(i))));
        }
        match &a.search_kernel {
            Some(k) => out.human(format!("  kernel by exhaustive search: {}", render::vectors(k))),
            None => out.human("  kernel by exhaustive search: skipped"),
        }
        out.human(format!("  kernel by linear algebra: {}", render::vectors(&a.linear_kernel)));
        out.human(format!("  paths agree: {}", a.paths_agree));
        out.human(format!("  soundness re-verified: {}", a.soundness_verified));
        let rc = &a.rational_units;
        out.human(format!(
            "  rational units {}: span dimension {} in the eigenspace, spans: {}",
            render::signed_set(&rc.units),
            rc.span_dimension,
            rc.spans_eigenspace
        ));
    }
    let generators: Vec<Value> = res
        .generators
        .iter()
        .zip(&res.rational_generators)
        .zip(&res.descriptions)
        .map(|((g, q), d)| json!({"coefficients": g, "rational": q, "description": d}))
        .collect();
    let mut v = json!({
        "ring": ring,
        "dimension": res.dimension,
        "generators": generators,
        "certificate": {
            "conductor": cert.conductor,
            "verdict": cert.verdict,
            "minkowski_bound": cert.minkowski_bound,
            "checked_primes": cert.checked.iter().map(|c| c.rational_prime).collect::<Vec<_>>(),
        },
    });
    if audit {
        v["audit"] = serde_json::to_value(&res.audit).expect("serializable");
    }
    out.record("ext", v);
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, Failure> {
    s.parse::<BigRational>().map_err(|_| Failure::Usage(format!("not a rational number: {s}")))
}

fn reference_set(p: u64) -> Vec<i64> {
    if p == 2 {
        vec![2, 3, 5]
    } else {
        vec![p as i64, 1 + p as i64]
    }
}

fn cmd_local(out: &Out, p: u64, k: u64, tests: Vec<String>, precision: Option<u32>) -> Outcome {
    let values: Vec<BigRational> = tests.iter().map(|t| parse_rational(t)).collect::<std::result::Result<_, _>>()?;
    check_precision(p, k, precision)?;
    let spec = match precision {
        Some(prec) => LocalFieldSpec::new(p, k, prec)?,
        None => LocalFieldSpec::with_default_precision(p, k)?,
    };
    let name = render::local_name(p, spec.conductor);
    let basis = local_power_class_generators(&spec)?;
    out.human(format!(
        "{name}: e = {}, f = {}, precision = {}, dim {}*/({}*)^{p} = {}",
        spec.ramification,
        spec.residue_degree,
        spec.precision,
        name,
        name,
        basis.len()
    ));
    out.human("basis:");
    for b in &basis {
        out.human(format!("  {}", render::padic(b)));
    }
    let mut reference = Value::Null;
    if spec.conductor == 1 {
        let set = reference_set(p);
        let elems: Vec<PadicElem> = set.iter().map(|&n| spec.from_int(n)).collect::<Result<_, _>>()?;
        let same = same_subgroup(&basis, &elems)?;
        out.human(format!("same subgroup as {}: {same}", render::signed_set(&set)));
        reference = json!({"units": set, "same_subgroup": same});
    }
    let mut results = Vec::new();
    for (t, q) in tests.iter().zip(&values) {
        let x = spec.from_rational(q)?;
        let ans = is_pth_power_local(&x)?;
        out.human(format!("{t} is a {} in {name}: {ans}", render::power_word(p)));
        results.push(json!({"value": t, "is_pth_power": ans}));
    }
    out.record(
        "local",
        json!({
            "p": p,
            "conductor": spec.conductor,
            "ramification": spec.ramification,
            "residue_degree": spec.residue_degree,
            "precision": spec.precision,
            "basis": basis,
            "reference": reference,
            "tests": results,
        }),
    );
    Ok(())
}

fn cmd_hopf(out: &Out, variant: HopfVariant) -> Outcome {
    let data = match variant {
        HopfVariant::Reference => reference_hopf_data(),
        HopfVariant::IdentityAntipode => identity_antipode_hopf_data(),
        HopfVariant::Mutated => mutated_hopf_data(),
    };
    let report = check_hopf(&data);
    out.human(format!("{}:", report.name));
    for c in &report.checks {
        out.human(format!("  {:<40} {}", c.axiom, if c.passed { "ok" } else { "FAILED" }));
        if let Some(r) = &c.residual {
            out.human(format!("    residual: {r}"));
        }
    }
    out.human(format!("  cocommutative: {}", report.cocommutative));
    let ok = report.all_axioms_hold();
    if ok {
        out.human("all axioms verified");
    }
    out.record("hopf", json!({"report": report, "all_axioms_verified": ok}));
    if ok {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().iter().map(|c| c.axiom.as_str()).collect();
        Err(Failure::Check(format!("axioms violated: {}", names.join("; "))))
    }
}

fn cmd_tscheme(out: &Out, p: u64, r: i64, over: &str, compare: Option<i64>) -> Outcome {
    if !muext_core::arith::is_prime(p) {
        return Err(Error::NotPrime(p).into());
    }
    let field = FiniteField::parse(over)?;
    let t = TScheme::new(&field, p, field.from_int(r))?;
    let report = t_point_group(&t)?;
    out.human(format!("T({r}) over {} with p = {p}: {} points", render::finite_name(&field), report.order));
    for (i, pt) in report.points.iter().enumerate() {
        out.human(format!("  [{i}] {pt}"));
    }
    out.human("group table:");
    for row in &report.table {
        out.human(format!("  {}", row.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" ")));
    }
    let flags = [
        ("abelian", report.commutative),
        ("associative", report.associative),
        ("inverses", report.has_inverses),
        ("inverse closed form (r/a, p - i)", report.inverse_closed_form),
        ("i = 0 fiber is mu_p", report.fiber_zero_is_mu_p),
        (
            "projection is a surjective homomorphism",
            report.projection_is_homomorphism && report.projection_is_surjective,
        ),
    ];
    for (name, v) in flags {
        out.human(format!("  {name}: {v}"));
    }
    let iso = match compare {
        Some(r2) => {
            let ans = t_isomorphic(&field, p, &field.from_int(r), &field.from_int(r2))?;
            out.human(format!("T({r}) isomorphic to T({r2}): {ans}"));
            Some(ans)
        }
        None => None,
    };
    let ok = report.is_extension();
    out.record("tscheme", json!({"report": report, "extension": ok, "isomorphic": iso}));
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("point group is not an extension of Z/p by mu_p".into()))
    }
}

fn cmd_cohomology(out: &Out, run_sweep: bool) -> Outcome {
    if !run_sweep {
        return Err(Failure::Usage("nothing to do; pass --sweep".into()));
    }
    let cases = sweep()?;
    let bad: Vec<_> = cases.iter().filter(|c| !(c.report.equal && c.joint_twist_invariant)).collect();
    for c in &cases {
        out.record("cohomology_case", serde_json::to_value(c).expect("serializable"));
    }
    for c in &bad {
        out.human(format!(
            "mismatch: p = {}, {}, chi = {}, report {:?}",
            c.p,
            c.group,
            render::vector(&c.chi),
            c.report
        ));
    }
    out.record("cohomology", json!({"instances": cases.len(), "mismatches": bad.len()}));
    if bad.is_empty() {
        out.human(format!("twist isomorphism verified on {} instances", cases.len()));
        Ok(())
    } else {
        Err(Failure::Check(format!("{} of {} instances disagree", bad.len(), cases.len())))
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { format: cli.format };
    match cli.command {
        Command::Ext { p, k, s, precision, audit } => cmd_ext(&out, p, k, s, precision, audit),
        Command::Local { p, k, tests, precision } => cmd_local(&out, p, k, tests, precision),
        Command::Hopf { variant } => cmd_hopf(&out, variant),
        Command::Tscheme { p, r, over, compare } => cmd_tscheme(&out, p, r, &over, compare),
        Command::Cohomology { sweep } => cmd_cohomology(&out, sweep),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    let format = cli.format;
    let (code, message) = match run(cli) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(Failure::Core(e)) => (exit_code(&e), e.to_string()),
        Err(Failure::Usage(m)) => (4, format!("invalid argument: {m}")),
        Err(Failure::Check(m)) => (1, m),
    };
    if format == Format::Json {
        emit(&json!({"schema": SCHEMA, "command": "error", "exit_code": code, "message": message}).to_string());
    }
    eprintln!("error: {message}");
    ExitCode::from(code)
}

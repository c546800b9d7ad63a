//! `epwforge`: command-line front end.
//!
//! Every command prints one JSON document (or its text rendering) on stdout.
//! Exit status is 0 on success, 1 on mathematical or input-file errors and 2
//! on usage errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use epwforge::epw::{
    dual_sextic, epw_rank_at, epw_sextic_with, plane_ranks, sextic_vanishing_census, theta_contains,
    theta_enumerate, DetMethod, StratumReport,
};
use epwforge::field::{Field, FieldDesc, PrimeField, Rationals};
use epwforge::lagrangian::{dual_transport, lagrangian_with_planes, random_lagrangian, Lagrangian};
use epwforge::linalg::Subspace;
use epwforge::orbits::{classify, coordinate_subspace, divisor_kernel, pi1, pi2, OrbitLabel};
use epwforge::store::{
    kvector_from_json, kvector_to_json, lagrangian_from_json, lagrangian_hash, lagrangian_to_json, peek_field,
    read_json, scalar_to_json, sextic_hash, sextic_to_json, to_pretty, KTerm,
};
use epwforge::verify::{parse_suite, run_suite, SuiteConfig};
use epwforge::{numerology, EpwError};

const THREADS_VAR: &str = "EPWFORGE_THREADS";

#[derive(Parser)]
#[command(name = "epwforge", version)]
#[command(about = "Exact EPW sextics, Lagrangian degeneracy loci and trivector orbits over Q and F_p")]
struct Cli {
    /// Output format; text is a rendering of the same JSON structure.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Lagrangian subspace A of wedge^3 W, dim W = 6
    #[command(long_about = "Generate a Lagrangian subspace A of wedge^3 W (dim W = 6) for the symplectic form \
        sigma(a, b) = coefficient of e123456 in a ^ b.\n\n\
        Without --planes, A is the graph of a random symmetric 10x10 matrix over the coordinate Lagrangian \
        <e_I : 1 in I>. With --planes, A contains e_U for each listed coordinate 3-space U (planes must pairwise \
        meet, since sigma(e_U, e_U') = 0 needs dim(U ∩ U') >= 1) and is completed randomly.")]
    Gen {
        /// Field: q or f<p>.
        #[arg(long, default_value = "q")]
        field: String,
        /// Seed for every random choice.
        #[arg(long)]
        seed: u64,
        /// Coordinate 3-spaces to contain, e.g. "1,2,3;1,4,5".
        #[arg(long)]
        planes: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the EPW sextic Y_A = {[v] : A ∩ F_v != 0}
    #[command(long_about = "Compute the EPW sextic Y_A = {[v] in P(W) : A ∩ F_v != 0}, F_v = v ^ wedge^2 W.\n\n\
        On the chart x_c = 1 the determinant of the 10x10 matrix sigma(a_i, v ^ e_jk) has degree 10; after \
        homogenizing, x_c^4 divides it and the quotient is the sextic, normalized to leading coefficient 1. \
        Over Q the determinant is computed modulo word-sized primes and recombined; over F_p by fraction-free \
        elimination. Several charts must agree. Exit 1 with DegenerateSextic if every chart vanishes.")]
    Sextic {
        lagrangian: PathBuf,
        /// Chart x_c = 1 to use (1..6); default 1 with fallback to the others.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        chart: Option<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate Theta_A = G(3,W) ∩ P(A) over F_p, or test one plane
    #[command(long_about = "Theta_A = {U in G(3,W) : e_U in A}: the Grassmannian points of P(A). For every U \
        in Theta_A the whole plane P(U) lies in Y_A[2], so Theta_A is empty for generic A.\n\n\
        Without --plane, enumerates Theta_A over F_p (p <= 5) by testing every point of P(A) for a \
        3-dimensional divisor kernel. With --plane, tests membership of one coordinate 3-space over any field.")]
    Theta {
        lagrangian: PathBuf,
        /// Coordinate 3-space, e.g. "1,2,3".
        #[arg(long)]
        plane: Option<String>,
    },
    /// Rank stratification Y_A[k] = {[v] : dim(A ∩ F_v) >= k}
    #[command(long_about = "Rank stratification Y_A[k] = {[v] : dim(A ∩ F_v) >= k}.\n\n\
        With --exhaustive (F_p, p <= 7), every point of P^5(F_p) is visited, and the zero set of the sextic \
        is checked to equal Y_A[1] point by point. Otherwise --samples random vectors drawn from --seed are \
        tested the same way.")]
    Stratify {
        lagrangian: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// The curve C_{U,A} = {[v] in P(U) : dim(A ∩ F_v) >= 2} for U in Theta_A
    #[command(long_about = "For U in Theta_A, C_{U,A} = {[v] in P(U) : dim(A ∩ F_v) >= 2}, a sextic curve \
        in the plane P(U) for generic A containing e_U. Lists every point of P(U)(F_p) with its rank \
        dim(A ∩ F_v) and the points of C_{U,A}.")]
    Cua {
        lagrangian: PathBuf,
        /// Coordinate 3-space, e.g. "1,2,3".
        #[arg(long)]
        plane: String,
    },
    /// The dual sextic, from the transported Lagrangian in wedge^3 W*
    #[command(long_about = "The dual EPW sextic Y_{A^perp} in P(W*), computed from the image of A under \
        wedge^3 W = wedge^3 W*, e_I -> sgn(I, I') e*_{I'}. Its zero set is {[w] : A ∩ wedge^3(ker w) != 0}; \
        applying the transport twice returns A.")]
    Dual {
        lagrangian: PathBuf,
        /// Print the transported Lagrangian instead of its sextic.
        #[arg(long)]
        lagrangian_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit of a trivector: G(3,6), O2 \ G(3,6) or outside O2
    #[command(long_about = "Orbit of a nonzero trivector w under PGL(W) by the dimension of its divisor \
        kernel {u : u ^ w = 0}: 3 for decomposable w in G(3,6), 1 for w = a ^ b in O2 \\ G(3,6), 0 outside \
        O2. For w in O2 \\ G(3,6) also prints pi1(w) = [a] in P(W) and pi2(w) = [a ^ b ^ b] in P(W*).\n\n\
        The trivector is JSON, inline or a path: {\"field\": \"Fp\", \"p\": 7, \"terms\": [{\"idx\": [1,2,3], \
        \"c\": 1}]} or a bare term list read over --field.")]
    Classify {
        #[arg(long)]
        trivector: String,
        /// Field for a bare term list: q or f<p>.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Characteristic-number checks: deg O2 = 42, Riemann-Roch, Fujiki, A-hat, class identities
    #[command(long_about = "Exact characteristic-number checks on a fourfold of K3^[2] type.\n\n\
        deg42: deg O2 = (6H - E)^4 / 16 = 42 from H^4 = 6, H^3 E = 0, H^2 E^2 = -80, HE^3 = -480, E^4 = -1344.\n\
        rr: h0(O_X(H)) = H^4/24 + c2.H^2/24 + chi = 6 for H^4 = 12, c2.H^2 = 60.\n\
        fujiki: ample degrees are 12 m^2.\n\
        ahat: Ahat_2 = 3, int sqrt(Ahat) = 25/32; flags the Hitchin-Sawon constant.\n\
        classes: lattice identities between H, T, E, H2, E2.")]
    Numerology {
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Run the built-in acceptance suite
    #[command(long_about = "Run the built-in acceptance suite: degree 42 of O2, Riemann-Roch and Fujiki \
        numerology, A-hat data, sextic degree and chart independence, {s_A = 0} = Y_A[1], Theta_A semantics, \
        duality, the orbit trichotomy over F_2, fiber geometry, the tangent cone of G(3,6), divisor-class \
        identities and the singular-stratum census. Timings go to stderr.")]
    Verify {
        /// "all" or a comma-separated list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict the small-field census criteria to f3 or f5.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Usage errors exit with 2, everything else with 1.
enum Failure {
    Usage(String),
    Domain(EpwError),
    /// The command ran and its output reports a failed check.
    Report,
}

impl From<EpwError> for Failure {
    fn from(e: EpwError) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_field(s: &str) -> CliResult<FieldDesc> {
    FieldDesc::parse_flag(s).map_err(|e| usage(format!("--field: {e}")))
}

/// `"1,2,3"` as three distinct sorted indices in `1..=6`.
fn parse_plane(s: &str) -> CliResult<Vec<u8>> {
    let mut idx: Vec<u8> = s
        .split(',')
        .map(|t| t.trim().parse::<u8>().map_err(|_| usage(format!("bad index {t:?} in plane {s:?}"))))
        .collect::<CliResult<_>>()?;
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != 3 || idx.iter().any(|i| !(1..=6).contains(i)) {
        return Err(usage(format!("plane {s:?} must list three distinct indices in 1..6")));
    }
    Ok(idx)
}

fn parse_planes(s: &str) -> CliResult<Vec<Vec<u8>>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_plane).collect()
}

fn threads_from_env() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("{THREADS_VAR}: {e}")))
}

fn prime_field(desc: FieldDesc) -> CliResult<PrimeField> {
    match desc {
        FieldDesc::Fp { p } => Ok(PrimeField::new(p)?),
        FieldDesc::Q => Err(EpwError::NeedsFiniteField.into()),
    }
}

/// Runs `$body` with `$f` bound to the concrete field of `$desc`.
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            FieldDesc::Q => {
                let $f = &Rationals;
                $body
            }
            FieldDesc::Fp { p } => {
                let $f = &PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn load<F: Field>(f: &F, v: &Value) -> CliResult<Lagrangian<F>> {
    Ok(lagrangian_from_json(f, v)?)
}

/// `body` with the field descriptor keys (`field`, `p`) merged in at top level.
fn tagged(desc: FieldDesc, mut body: Value) -> Value {
    if let (Value::Object(tag), Value::Object(map)) = (serde_json::to_value(desc).expect("descriptor serializes"), &mut body) {
        map.extend(tag);
    }
    body
}

fn vector_json<F: Field>(f: &F, v: &[F::El]) -> Value {
    Value::Array(v.iter().map(|x| scalar_to_json(f, x)).collect())
}

fn rows_json<F: Field>(f: &F, rows: &[Vec<F::El>]) -> Value {
    Value::Array(rows.iter().map(|r| vector_json(f, r)).collect())
}

/// Writes `doc` to `out` and reports the path and hash, or returns `doc`.
fn output_or_save(doc: Value, hash: String, out: Option<&Path>) -> CliResult<Value> {
    match out {
        None => Ok(doc),
        Some(path) => {
            std::fs::write(path, to_pretty(&doc)).map_err(EpwError::from)?;
            Ok(json!({ "out": path.display().to_string(), "content_hash": hash }))
        }
    }
}

fn cmd_gen(field: &str, seed: u64, planes: Option<&str>, out: Option<&Path>) -> CliResult<Value> {
    let desc = parse_field(field)?;
    let planes = planes.map(parse_planes).transpose()?;
    with_field!(desc, f => {
        let a = match &planes {
            None => random_lagrangian(f, seed)?,
            Some(ps) => {
                let spaces: Vec<Subspace<_>> = ps.iter().map(|p| coordinate_subspace(f, p)).collect();
                lagrangian_with_planes(f, &spaces, seed)?
            }
        };
        output_or_save(lagrangian_to_json(&a), lagrangian_hash(&a), out)
    })
}

fn cmd_sextic(path: &Path, chart: Option<u8>, out: Option<&Path>) -> CliResult<Value> {
    let v = read_json(path)?;
    let charts = [chart.unwrap_or(1) as usize];
    with_field!(peek_field(&v)?, f => {
        let a = load(f, &v)?;
        let s = epw_sextic_with(&a, &charts, DetMethod::default_for(f))?;
        output_or_save(sextic_to_json(&s), sextic_hash(&s), out)
    })
}

fn cmd_theta(path: &Path, plane: Option<&str>) -> CliResult<Value> {
    let v = read_json(path)?;
    let desc = peek_field(&v)?;
    if let Some(p) = plane {
        let idx = parse_plane(p)?;
        return with_field!(desc, f => {
            let a = load(f, &v)?;
            let inside = theta_contains(&a, &coordinate_subspace(f, &idx))?;
            Ok(tagged(f.descriptor(), json!({ "plane": idx, "in_theta": inside })))
        });
    }
    let f = &prime_field(desc)?;
    let a = load(f, &v)?;
    let planes = theta_enumerate(&a)?;
    Ok(tagged(
        desc,
        json!({
            "count": planes.len(),
            "planes": planes.iter().map(|u| rows_json(f, u.basis())).collect::<Vec<_>>(),
        }),
    ))
}

fn sampled_census<F: Field>(a: &Lagrangian<F>, seed: u64, samples: u64) -> CliResult<StratumReport> {
    let f = a.field();
    let s = epw_sextic_with(a, &[1], DetMethod::default_for(f))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = std::collections::BTreeMap::new();
    let mut drawn = 0;
    while drawn < samples {
        let v: Vec<F::El> = (0..6).map(|_| f.sample(&mut rng)).collect();
        if v.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        let k = epw_rank_at(a, &v)?;
        if s.vanishes_at(&v) != (k >= 1) {
            let coords: Vec<String> = v.iter().map(|x| f.format(x)).collect();
            return Err(EpwError::CensusMismatch(format!("[{}] (k = {k})", coords.join(","))).into());
        }
        *counts.entry(k).or_insert(0) += 1;
        drawn += 1;
    }
    Ok(StratumReport {
        field: f.descriptor(),
        points: samples,
        counts,
        sextic_checked: true,
    })
}

fn census_json(r: &StratumReport, mode: &str) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    let strata: Map<String, Value> = (1..=3).map(|k| (format!("Y[{k}]"), Value::from(r.at_least(k)))).collect();
    v["mode"] = Value::from(mode);
    v["strata"] = Value::Object(strata);
    v
}

fn cmd_stratify(path: &Path, exhaustive: bool, seed: Option<u64>, samples: u64) -> CliResult<Value> {
    let v = read_json(path)?;
    let desc = peek_field(&v)?;
    if exhaustive {
        let f = &prime_field(desc)?;
        let r = sextic_vanishing_census(&load(f, &v)?)?;
        return Ok(census_json(&r, "exhaustive"));
    }
    let seed = seed.ok_or_else(|| usage("sampled stratification needs --seed (or pass --exhaustive)"))?;
    with_field!(desc, f => {
        let r = sampled_census(&load(f, &v)?, seed, samples)?;
        Ok(census_json(&r, "sampled"))
    })
}

fn cmd_cua(path: &Path, plane: &str) -> CliResult<Value> {
    let idx = parse_plane(plane)?;
    let v = read_json(path)?;
    let f = &prime_field(peek_field(&v)?)?;
    let a = load(f, &v)?;
    let ranks = plane_ranks(&a, &coordinate_subspace(f, &idx))?;
    let curve: Vec<Value> = ranks.iter().filter(|(_, k)| *k >= 2).map(|(p, _)| vector_json(f, p)).collect();
    Ok(tagged(
        f.descriptor(),
        json!({
            "plane": idx,
            "points": ranks.iter().map(|(p, k)| json!({ "v": vector_json(f, p), "k": k })).collect::<Vec<_>>(),
            "c_ua_count": curve.len(),
            "c_ua": curve,
        }),
    ))
}

fn cmd_dual(path: &Path, lagrangian_only: bool, out: Option<&Path>) -> CliResult<Value> {
    let v = read_json(path)?;
    with_field!(peek_field(&v)?, f => {
        let a = load(f, &v)?;
        if lagrangian_only {
            let d = dual_transport(&a)?;
            output_or_save(lagrangian_to_json(&d), lagrangian_hash(&d), out)
        } else {
            let s = dual_sextic(&a)?;
            output_or_save(sextic_to_json(&s), sextic_hash(&s), out)
        }
    })
}

/// Inline JSON when the argument looks like JSON, a file path otherwise.
fn trivector_source(arg: &str) -> CliResult<Value> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| usage(format!("--trivector: {e}")))
    } else {
        Ok(read_json(Path::new(arg))?)
    }
}

fn classify_json<F: Field>(f: &F, terms: &[KTerm]) -> CliResult<Value> {
    let w = kvector_from_json(f, 3, terms)?;
    let label = classify(f, &w)?;
    let ker = divisor_kernel(f, &w)?;
    let mut out = json!({
        "trivector": kvector_to_json(f, &w),
        "label": label,
        "kernel_dim": ker.dim(),
        "kernel": rows_json(f, ker.basis()),
    });
    out = tagged(f.descriptor(), out);
    if label == OrbitLabel::PureO2 {
        out["pi1"] = vector_json(f, pi1(f, &w)?.coeffs());
        match pi2(f, &w) {
            Ok(d) => out["pi2"] = vector_json(f, d.coeffs()),
            Err(EpwError::CharacteristicTwo(_)) => out["pi2"] = Value::Null,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn cmd_classify(trivector: &str, field: &str) -> CliResult<Value> {
    let v = trivector_source(trivector)?;
    let (desc, terms) = match &v {
        Value::Array(_) => (parse_field(field)?, v.clone()),
        Value::Object(o) => (
            peek_field(&v)?,
            o.get("terms").cloned().ok_or_else(|| EpwError::Parse("trivector has no \"terms\"".into()))?,
        ),
        other => return Err(EpwError::Parse(format!("expected a trivector, found {other}")).into()),
    };
    let terms: Vec<KTerm> = serde_json::from_value(terms).map_err(|e| EpwError::Parse(format!("trivector terms: {e}")))?;
    with_field!(desc, f => classify_json(f, &terms))
}

fn cmd_numerology(check: &str) -> CliResult<(Value, bool)> {
    let r = numerology::run_check(check).map_err(|e| usage(e.to_string()))?;
    Ok((serde_json::to_value(&r).expect("report serializes"), r.ok()))
}

fn cmd_verify(suite: &str, field: Option<&str>, seed: u64) -> CliResult<(Value, String, bool)> {
    let ids = parse_suite(suite).map_err(|e| usage(format!("--suite: {e}")))?;
    let field = field.map(parse_field).transpose()?;
    let results = run_suite(&ids, &SuiteConfig { seed, field })?;
    let mut text = String::new();
    for r in &results {
        eprintln!("{}", r.summary_line());
        let status = if r.passed() {
            "PASS"
        } else if r.passed_except_unattainable() {
            "FAIL (unattainable threshold)"
        } else {
            "FAIL"
        };
        let _ = writeln!(text, "criterion {:>2} {status} {}", r.id, r.title);
        for c in &r.checks {
            let _ = writeln!(text, "    [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    let ok = results.iter().all(|r| r.passed_except_unattainable());
    Ok((serde_json::to_value(&results).expect("results serialize"), text, ok))
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Indented `key: value` rendering of a JSON document.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) || matches!(x, Value::Array(a) if a.iter().all(is_scalar)) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline_text(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) || matches!(x, Value::Array(a) if a.iter().all(is_scalar)) {
                    let _ = writeln!(out, "{pad}- {}", inline_text(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_text(x, indent + 1, out);
                }
            }
        }
        scalar => {
            let _ = writeln!(out, "{pad}{}", scalar_text(scalar));
        }
    }
}

fn inline_text(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => scalar_text(other),
    }
}

fn emit(format: Format, doc: &Value, text: Option<String>) {
    match format {
        Format::Json => print!("{}", to_pretty(doc)),
        Format::Text => match text {
            Some(t) => print!("{t}"),
            None => {
                let mut s = String::new();
                render_text(doc, 0, &mut s);
                print!("{s}");
            }
        },
    }
}

fn run(cli: Cli) -> CliResult<()> {
    threads_from_env()?;
    let format = cli.format;
    let doc = match cli.command {
        Command::Gen { field, seed, planes, out } => cmd_gen(&field, seed, planes.as_deref(), out.as_deref())?,
        Command::Sextic { lagrangian, chart, out } => cmd_sextic(&lagrangian, chart, out.as_deref())?,
        Command::Theta { lagrangian, plane } => cmd_theta(&lagrangian, plane.as_deref())?,
        Command::Stratify {
            lagrangian,
            exhaustive,
            seed,
            samples,
        } => cmd_stratify(&lagrangian, exhaustive, seed, samples)?,
        Command::Cua { lagrangian, plane } => cmd_cua(&lagrangian, &plane)?,
        Command::Dual {
            lagrangian,
            lagrangian_only,
            out,
        } => cmd_dual(&lagrangian, lagrangian_only, out.as_deref())?,
        Command::Classify { trivector, field } => cmd_classify(&trivector, &field)?,
        Command::Numerology { check } => {
            let (doc, ok) = cmd_numerology(&check)?;
            emit(format, &doc, None);
            return if ok { Ok(()) } else { Err(Failure::Report) };
        }
        Command::Verify { suite, field, seed } => {
            let (doc, text, ok) = cmd_verify(&suite, field.as_deref(), seed)?;
            emit(format, &doc, Some(text));
            return if ok { Ok(()) } else { Err(Failure::Report) };
        }
    };
    emit(format, &doc, None);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Report) => ExitCode::from(1),
    }
}

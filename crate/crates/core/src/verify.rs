//! The acceptance suite: twelve criteria, each a list of exact checks with a
//! pinned runtime limit. Shared by `epwforge verify` and the `acceptance`
//! test target.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::epw::{
    dual_sextic, epw_sextic, epw_sextic_with, gradient_point, stratum_census, theta_by_grassmannian, theta_contains,
    theta_enumerate, DetMethod, EpwSextic,
};
use crate::error::{EpwError, Result};
use crate::exterior::{grade_masks, slot_of, slots_in_grade, wedge, DualVector, KVector};
use crate::field::{Field, FieldDesc, PrimeField, Rationals};
use crate::lagrangian::{dual_transport, is_isotropic, lagrangian_with_planes, random_lagrangian, Lagrangian};
use crate::linalg::Subspace;
use crate::numerology::{self, class_identities, DivisorClass, Functional};
use crate::orbits::{
    classify, coordinate_subspace, divisor_kernel_dim, factor, fiber_f, fiber_f_prime, pi1, pi2, plucker, quadric_q,
    sigma_hyperplane, tangent_g, tangent_o2, OrbitLabel,
};
use crate::projective::{gaussian_binomial, grassmannian_3_6, ProjectiveSpace};

/// Prime for the large-field criteria (the next prime after 10^4).
pub const LARGE_PRIME: u64 = 10007;
/// Empty `Theta_A` needed among the generic seeds of criterion 6.
pub const THETA_EMPTY_THRESHOLD: usize = 15;
pub const THETA_GENERIC_SEEDS: u64 = 20;
/// Seed offset between the first batch and the single re-seeded batch.
pub const THETA_RESEED_OFFSET: u64 = 1000;

/// Why the genericity threshold is out of reach over `F_3`.
pub const THETA_THRESHOLD_NOTE: &str = "over F_3 a random Lagrangian meets G(3,6) in 33880*29524/|P^19(F_3)| = 0.574 \
points on average, so Theta_A is empty for about 56% of seeds and 15 of 20 happens with probability about 7%";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Set when the threshold is known to be out of reach; see the note.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unattainable: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    /// Soft criteria only log their counts beyond the listed checks.
    pub soft: bool,
    pub checks: Vec<Check>,
    pub limit_ms: u64,
    /// Timing-dependent, so kept out of the JSON form.
    #[serde(skip)]
    pub within_limit: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.within_limit && self.checks.iter().all(|c| c.passed)
    }

    /// Passed apart from checks documented as unattainable.
    pub fn passed_except_unattainable(&self) -> bool {
        self.within_limit && self.checks.iter().all(|c| c.passed || c.unattainable.is_some())
    }

    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.3} s, limit {} s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit_ms as f64 / 1000.0
        )
    }

    pub fn render(&self) -> String {
        let mut out = self.summary_line();
        for c in &self.checks {
            let _ = write!(out, "\n    [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
            if let Some(note) = &c.unattainable {
                let _ = write!(out, "\n           unattainable: {note}");
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Base seed; every randomized criterion derives its seeds from it.
    pub seed: u64,
    /// Restricts the small-field census criteria (5 and 12) to this field.
    pub field: Option<FieldDesc>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, field: None }
    }
}

impl SuiteConfig {
    fn census_primes(&self, defaults: &[u64]) -> Vec<u64> {
        match self.field {
            Some(FieldDesc::Fp { p }) if defaults.contains(&p) => vec![p],
            _ => defaults.to_vec(),
        }
    }
}

pub const CRITERIA: [(u8, &str, u64); 12] = [
    (1, "degree of O2 is 42", 1),
    (2, "Riemann-Roch and Fujiki degrees", 1),
    (3, "A-hat genus data", 1_000),
    (4, "sextic degree and chart independence", 60_000),
    (5, "sextic zero locus equals the rank locus", 30_000),
    (6, "Theta_A semantics", 120_000),
    (7, "duality", 60_000),
    (8, "orbit trichotomy over F_2", 60_000),
    (9, "fiber geometry", 120_000),
    (10, "tangent cone of G(3,6) over F_2", 10_000),
    (11, "divisor-class identities", 1),
    (12, "singular-stratum census", 120_000),
];

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
        unattainable: None,
    }
}

fn from_result(name: &str, r: Result<String>) -> Check {
    match r {
        Ok(d) => check(name, true, d),
        Err(e) => check(name, false, e.to_string()),
    }
}

/// Runs one criterion by number.
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Result<CriterionResult> {
    let &(_, title, limit_ms) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| EpwError::Invalid(format!("no criterion {id}; expected 1..12")))?;
    let start = Instant::now();
    let checks = match id {
        1 => criterion_deg42(),
        2 => criterion_rr(),
        3 => criterion_ahat(),
        4 => criterion_sextic(cfg),
        5 => criterion_census(cfg),
        6 => criterion_theta(cfg),
        7 => criterion_duality(cfg),
        8 => criterion_trichotomy(),
        9 => criterion_fibers(cfg),
        10 => criterion_tangent_cone(),
        11 => criterion_classes(),
        _ => criterion_strata(cfg),
    };
    let elapsed = start.elapsed();
    Ok(CriterionResult {
        id,
        title: title.to_string(),
        soft: id == 12,
        checks,
        limit_ms,
        within_limit: elapsed <= Duration::from_millis(limit_ms),
        elapsed,
    })
}

/// Parses `all` or a comma-separated list of criterion numbers.
pub fn parse_suite(s: &str) -> Result<Vec<u8>> {
    if s == "all" {
        return Ok(CRITERIA.iter().map(|c| c.0).collect());
    }
    s.split(',')
        .map(|t| {
            let id: u8 = t.trim().parse().map_err(|_| EpwError::Parse(format!("bad criterion {t:?}")))?;
            if CRITERIA.iter().any(|c| c.0 == id) {
                Ok(id)
            } else {
                Err(EpwError::Invalid(format!("no criterion {id}; expected 1..12")))
            }
        })
        .collect()
}

pub fn run_suite(ids: &[u8], cfg: &SuiteConfig) -> Result<Vec<CriterionResult>> {
    ids.iter().map(|&id| run_criterion(id, cfg)).collect()
}

fn criterion_deg42() -> Vec<Check> {
    let q = numerology::quartic_form(6, -1);
    let d = numerology::degree_o2();
    vec![
        check("quartic (6H-E)^4 = 672", q == 672, format!("{q}")),
        check(
            "two expansions agree",
            numerology::quartic_form_expanded(6, -1) == q,
            format!("{}", numerology::quartic_form_expanded(6, -1)),
        ),
        check("deg O2 = 42", matches!(d, Ok(42)), format!("{d:?}")),
    ]
}

fn criterion_rr() -> Vec<Check> {
    let h = numerology::riemann_roch_h0(12, 60, 3);
    let accepted = numerology::fujiki_accepted(10_000);
    let expected: Vec<i64> = (1..=28).map(|m| 12 * m * m).filter(|&d| d <= 10_000).collect();
    let integral = numerology::rr_integral_k(40);
    let even: Vec<i64> = (2..=40).step_by(2).collect();
    vec![
        check("h0(12, 60, 3) = 6", h == 6.into(), h.to_string()),
        check(
            "Fujiki check accepts exactly 12m^2 on 1..=10^4",
            accepted == expected,
            format!("{} accepted", accepted.len()),
        ),
        check(
            "h0(3k^2, 30k, 3) integral iff k even, k <= 40",
            integral == even,
            format!("{} integral values", integral.len()),
        ),
    ]
}

fn criterion_ahat() -> Vec<Check> {
    let hs = numerology::hs_consistency();
    vec![
        check("Ahat_2 = 3", numerology::ahat2() == 3.into(), numerology::ahat2().to_string()),
        check(
            "int sqrt(Ahat) = 25/32",
            numerology::sqrt_ahat_integral() == num_rational::Rational64::new(25, 32),
            numerology::sqrt_ahat_integral().to_string(),
        ),
        check(
            "Hitchin-Sawon constant flagged: 384 implied vs 192 stated",
            !hs.consistent && hs.constant_from_ground_truth == "384" && hs.stated_constant == 192,
            format!(
                "constant 192 gives ratio {}, stated ratio {}; ground truth forces {}",
                hs.ratio_from_stated_constant, hs.stated_ratio, hs.constant_from_ground_truth
            ),
        ),
    ]
}

/// Charts 1 and 2 both nonzero, equal after normalization, degree 6.
fn two_chart_sextic<F: Field>(a: &Lagrangian<F>) -> Result<()> {
    let s = epw_sextic_with(a, &[1, 2], DetMethod::default_for(a.field()))?;
    if s.provenance().charts != [1, 2] {
        return Err(EpwError::Internal(format!("charts used: {:?}", s.provenance().charts)));
    }
    if !s.poly().is_homogeneous() || s.poly().total_degree() != Some(6) {
        return Err(EpwError::Internal("not a homogeneous sextic".into()));
    }
    Ok(())
}

fn criterion_sextic(cfg: &SuiteConfig) -> Vec<Check> {
    let f = PrimeField::new(LARGE_PRIME).expect("prime");
    let fp: Vec<Result<()>> = (0..25u64)
        .into_par_iter()
        .map(|i| two_chart_sextic(&random_lagrangian(&f, cfg.seed + i)?))
        .collect();
    let q: Vec<Result<()>> = (0..5u64)
        .into_par_iter()
        .map(|i| two_chart_sextic(&random_lagrangian(&Rationals, cfg.seed + i)?))
        .collect();
    let summarize = |rs: &[Result<()>]| -> (bool, String) {
        let bad: Vec<String> = rs
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().err().map(|e| format!("seed {}: {e}", cfg.seed + i as u64)))
            .collect();
        (bad.is_empty(), if bad.is_empty() { format!("{} Lagrangians", rs.len()) } else { bad.join("; ") })
    };
    let (ok_fp, d_fp) = summarize(&fp);
    let (ok_q, d_q) = summarize(&q);
    vec![
        check("F_10007: degree 6, exact division, charts 1 = 2", ok_fp, d_fp),
        check("Q: degree 6, exact division, charts 1 = 2", ok_q, d_q),
    ]
}

/// `{s = 0} = {k >= 1}` on all of `P^5(F_p)`; a degenerate `A` must have
/// `k >= 1` everywhere.
fn census_agrees(a: &Lagrangian<PrimeField>) -> Result<String> {
    match epw_sextic(a) {
        Ok(s) => {
            let r = stratum_census(a, Some(&s))?;
            Ok(format!("{} points, |k>=1| = {}", r.points, r.at_least(1)))
        }
        Err(EpwError::DegenerateSextic) => {
            let r = stratum_census(a, None)?;
            if r.at_least(1) != r.points {
                return Err(EpwError::CensusMismatch("degenerate sextic but some k = 0".into()));
            }
            Ok(format!("degenerate, k >= 1 at all {} points", r.points))
        }
        Err(e) => Err(e),
    }
}

fn criterion_census(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for p in cfg.census_primes(&[3, 5]) {
        let f = PrimeField::new(p).expect("prime");
        for i in 0..5 {
            let seed = cfg.seed + i;
            out.push(from_result(
                &format!("P^5(F_{p}) seed {seed}"),
                random_lagrangian(&f, seed).and_then(|a| census_agrees(&a)),
            ));
        }
    }
    out
}

fn theta_sizes(f: &PrimeField, seeds: impl Iterator<Item = u64>) -> Result<Vec<(u64, usize)>> {
    seeds
        .map(|s| Ok((s, theta_enumerate(&random_lagrangian(f, s)?)?.len())))
        .collect()
}

fn criterion_theta(cfg: &SuiteConfig) -> Vec<Check> {
    let f = PrimeField::new(3).expect("prime");
    let u = coordinate_subspace(&f, &[1, 2, 3]);
    let mut out = Vec::new();
    let a = match lagrangian_with_planes(&f, &[u.clone()], cfg.seed) {
        Ok(a) => a,
        Err(e) => return vec![check("plane Lagrangian", false, e.to_string())],
    };
    out.push(from_result(
        "theta_contains(<e1,e2,e3>)",
        theta_contains(&a, &u).and_then(|b| if b { Ok("true".into()) } else { Err(EpwError::NotInTheta) }),
    ));
    out.push(from_result(
        "s_A vanishes on x4 = x5 = x6 = 0",
        epw_sextic(&a).and_then(|s| {
            if s.poly().restrict_to_zero(&[3, 4, 5]).is_zero() {
                Ok("restriction is the zero polynomial".into())
            } else {
                Err(EpwError::Internal("restriction is nonzero".into()))
            }
        }),
    ));
    out.push(from_result(
        "theta_enumerate over P(A)(F_3) finds the plane",
        theta_enumerate(&a).and_then(|t| {
            let by_g = theta_by_grassmannian(&a);
            if !t.contains(&u) {
                Err(EpwError::Internal("plane missing".into()))
            } else if t != by_g {
                Err(EpwError::Internal("P(A) scan and G(3,6) scan disagree".into()))
            } else {
                Ok(format!("{} points of P(A), |Theta_A| = {}, matches G(3,6) scan", 29524, t.len()))
            }
        }),
    ));

    let mut batches = Vec::new();
    let mut generic_ok = false;
    for batch in 0..2u64 {
        let base = cfg.seed + batch * THETA_RESEED_OFFSET;
        match theta_sizes(&f, base..base + THETA_GENERIC_SEEDS) {
            Ok(sizes) => {
                let empty = sizes.iter().filter(|(_, n)| *n == 0).count();
                let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
                for (_, n) in &sizes {
                    *hist.entry(*n).or_default() += 1;
                }
                batches.push(format!("seeds {base}..{}: {empty}/20 empty, |Theta_A| histogram {hist:?}", base + THETA_GENERIC_SEEDS));
                if empty >= THETA_EMPTY_THRESHOLD {
                    generic_ok = true;
                    break;
                }
            }
            Err(e) => batches.push(e.to_string()),
        }
    }
    let mut generic = check(
        "Theta_A empty for >= 15 of 20 generic seeds (one re-seed)",
        generic_ok,
        batches.join("; "),
    );
    if !generic_ok {
        generic.unattainable = Some(THETA_THRESHOLD_NOTE.to_string());
    }
    out.push(generic);
    out
}

fn smooth_points_on_dual(a: &Lagrangian<PrimeField>, wanted: usize) -> Result<(usize, usize)> {
    let f = a.field();
    let s: EpwSextic<PrimeField> = epw_sextic(a)?;
    let sd = dual_sextic(a)?;
    let images: Vec<Option<Vec<u64>>> = ProjectiveSpace::new(f, 6).par_map(|_, v| {
        if s.vanishes_at(&v) {
            gradient_point(&s, &v).ok()
        } else {
            None
        }
    });
    let smooth: Vec<Vec<u64>> = images.into_iter().flatten().take(wanted).collect();
    let on_dual = smooth.iter().filter(|g| sd.vanishes_at(g)).count();
    Ok((smooth.len(), on_dual))
}

fn criterion_duality(cfg: &SuiteConfig) -> Vec<Check> {
    let f = PrimeField::new(7).expect("prime");
    let grad = random_lagrangian(&f, cfg.seed).and_then(|a| {
        let (n, hit) = smooth_points_on_dual(&a, 200)?;
        if n == 200 && hit == 200 {
            Ok("200 smooth points, all gradients on the dual sextic".into())
        } else {
            Err(EpwError::Internal(format!("{n} smooth points, {hit} gradients on the dual sextic")))
        }
    });
    let involution: Result<String> = (0..50u64)
        .map(|i| {
            let a = random_lagrangian(&f, cfg.seed + i)?;
            if dual_transport(&dual_transport(&a)?)? == a {
                Ok(())
            } else {
                Err(EpwError::Internal(format!("seed {} not fixed", cfg.seed + i)))
            }
        })
        .collect::<Result<Vec<()>>>()
        .map(|v| format!("{} Lagrangians", v.len()));
    vec![
        from_result("gradient images of smooth F_7-points lie on the dual sextic", grad),
        from_result("dual transport is an involution", involution),
    ]
}

/// The trivector with coefficient bits `bits` over `F_2`.
fn f2_trivector(bits: u32) -> KVector<u64> {
    KVector::from_coeffs(3, (0..20).map(|i| u64::from(bits >> i & 1)).collect())
}

fn criterion_trichotomy() -> Vec<Check> {
    let f = PrimeField::new(2).expect("prime");
    let dims: Vec<usize> = (1u32..1 << 20)
        .into_par_iter()
        .map(|bits| divisor_kernel_dim(&f, &f2_trivector(bits)).expect("nonzero"))
        .collect();
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for d in dims {
        *counts.entry(d).or_default() += 1;
    }
    let grass = counts.get(&3).copied().unwrap_or(0);
    vec![
        check(
            "kernel dimension in {0, 1, 3}",
            counts.keys().all(|d| [0, 1, 3].contains(d)),
            format!("{counts:?} over {} trivectors", (1u64 << 20) - 1),
        ),
        check(
            "Grassmannian census = 1395",
            grass == 1395 && grass == gaussian_binomial(6, 3, 2),
            format!("{grass}"),
        ),
    ]
}

fn random_kvector(f: &PrimeField, rng: &mut ChaCha8Rng, k: usize) -> KVector<u64> {
    KVector::from_coeffs(k, (0..slots_in_grade(k)).map(|_| rng.gen_range(0..f.p())).collect())
}

fn random_nonzero(f: &PrimeField, rng: &mut ChaCha8Rng, k: usize) -> KVector<u64> {
    loop {
        let v = random_kvector(f, rng, k);
        if !v.is_zero(f) {
            return v;
        }
    }
}

/// Random point of `O2 \ O3` as `a ^ b`.
fn random_pure(f: &PrimeField, rng: &mut ChaCha8Rng) -> KVector<u64> {
    loop {
        let w = wedge(f, &random_nonzero(f, rng, 1), &random_kvector(f, rng, 2));
        if !w.is_zero(f) && classify(f, &w).ok() == Some(OrbitLabel::PureO2) {
            return w;
        }
    }
}

/// `Q(w) = 0 <=> v(a) = 0 or a ^ b ^ b ^ g = 0` at every pure point;
/// returns (points, points with Q != 0).
fn fibration_union<F: Field>(f: &F, points: &[KVector<F::El>], v: &DualVector<F::El>, g: &KVector<F::El>) -> Result<(usize, usize)> {
    let mut nonzero = 0;
    let mut pure = 0;
    for w in points {
        let Ok(fac) = factor(f, w) else { continue };
        pure += 1;
        let q = quadric_q(f, v, g, w);
        let first = f.is_zero(&v.eval(f, &fac.vector));
        let second = f.is_zero(&wedge(f, &wedge(f, &wedge(f, &fac.vector, &fac.two_form), &fac.two_form), g).top(f));
        if f.is_zero(&q) != (first || second) {
            return Err(EpwError::Internal(format!("fibration-union mismatch at {:?}", w.coeffs())));
        }
        if !f.is_zero(&q) {
            nonzero += 1;
        }
    }
    Ok((pure, nonzero))
}

fn dual_from(f: &PrimeField, c: [i64; 6]) -> DualVector<u64> {
    DualVector::new(c.iter().map(|&x| f.from_i64(x)).collect())
}

fn vector_from(f: &PrimeField, c: [i64; 6]) -> KVector<u64> {
    KVector::vector(c.iter().map(|&x| f.from_i64(x)).collect())
}

/// Test pairs `(v, g)` for the quadric.
fn quadric_pairs(f: &PrimeField) -> Vec<(DualVector<u64>, KVector<u64>)> {
    vec![
        (dual_from(f, [1, 0, 0, 0, 0, 0]), vector_from(f, [0, 0, 0, 0, 0, 1])),
        (dual_from(f, [0, 1, 1, 0, 0, 0]), vector_from(f, [1, 0, 0, 1, 0, 1])),
        (dual_from(f, [1, 1, 0, 1, 1, 1]), vector_from(f, [0, 1, 0, 0, 1, 1])),
    ]
}

fn criterion_fibers(cfg: &SuiteConfig) -> Vec<Check> {
    let f = PrimeField::new(LARGE_PRIME).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();

    let fibers_ok = (0..1000).all(|_| {
        let fv = fiber_f(&f, &random_nonzero(&f, &mut rng, 1));
        fv.dim() == 10 && is_isotropic(&fv)
    });
    out.push(check("dim F_v = 10 and isotropic, 1000 random v", fibers_ok, "1000 samples"));

    let meet = fiber_f(&f, &KVector::basis(&f, &[1])).intersection_dim(&fiber_f_prime(&f, &DualVector::basis(&f, 6)));
    out.push(check("dim(F_e1 ∩ F'_e6*) = 6", meet == 6, format!("{meet}")));

    let samples: Vec<KVector<u64>> = (0..1000).map(|_| random_pure(&f, &mut rng)).collect();
    let tangent: Result<String> = samples
        .par_iter()
        .map(|p| -> Result<()> {
            let t = tangent_o2(&f, p)?;
            let sigma = sigma_hyperplane(&f, p)?;
            let meet = t.intersection(&sigma);
            let fibers = fiber_f(&f, &pi1(&f, p)?).sum(&fiber_f_prime(&f, &pi2(&f, p)?));
            if t.dim() != 15 || meet.dim() != 14 || meet != fibers {
                return Err(EpwError::Internal(format!(
                    "dim T = {}, dim(Sigma ∩ T) = {}, fibers span {}",
                    t.dim(),
                    meet.dim(),
                    fibers.dim()
                )));
            }
            Ok(())
        })
        .collect::<Result<Vec<()>>>()
        .map(|_| "1000 pure points".into());
    out.push(from_result("dim T_p O2 = 15, Sigma_p ∩ T_p = F + F' of dim 14", tangent));

    let factorization = (0..1000).all(|_| {
        let v = DualVector::new(random_kvector(&f, &mut rng, 1).into_coeffs());
        let g = random_kvector(&f, &mut rng, 1);
        let a = random_kvector(&f, &mut rng, 1);
        let b = random_kvector(&f, &mut rng, 2);
        let rhs = f.mul(&v.eval(&f, &a), &wedge(&f, &wedge(&f, &wedge(&f, &a, &b), &b), &g).top(&f));
        quadric_q(&f, &v, &g, &wedge(&f, &a, &b)) == rhs
    });
    out.push(check("Q(a ^ b) = v(a) [a ^ b ^ b ^ g], 1000 samples", factorization, "1000 samples"));

    let f2 = PrimeField::new(2).expect("prime");
    let all_f2: Vec<KVector<u64>> = (1u32..1 << 20).map(f2_trivector).collect();
    let f2_pure: Vec<KVector<u64>> = all_f2
        .into_par_iter()
        .filter(|w| classify(&f2, w).ok() == Some(OrbitLabel::PureO2))
        .collect();
    let f2_result: Result<String> = quadric_pairs(&f2)
        .iter()
        .map(|(v, g)| fibration_union(&f2, &f2_pure, v, g))
        .collect::<Result<Vec<_>>>()
        .map(|r| {
            let nonzero: usize = r.iter().map(|x| x.1).sum();
            format!(
                "{} pure points x {} (v, g) pairs; Q != 0 at {nonzero} of them (b ^ b = 0 in characteristic 2, so Q vanishes on O2 and the check is vacuous)",
                f2_pure.len(),
                r.len()
            )
        });
    out.push(from_result("fibration-union vanishing, all pure points of P(wedge^3 F_2^6)", f2_result));

    let f3 = PrimeField::new(3).expect("prime");
    let sub_masks: Vec<u8> = grade_masks(3).iter().copied().filter(|m| m & 0b100000 == 0).collect();
    let f3_pure: Vec<KVector<u64>> = ProjectiveSpace::new(&f3, sub_masks.len())
        .par_map(|_, c| {
            let mut coeffs = vec![0u64; 20];
            for (x, m) in c.iter().zip(&sub_masks) {
                coeffs[slot_of(*m)] = *x;
            }
            KVector::from_coeffs(3, coeffs)
        })
        .into_iter()
        .filter(|w| classify(&f3, w).ok() == Some(OrbitLabel::PureO2))
        .collect();
    let f3_result: Result<String> = quadric_pairs(&f3)
        .iter()
        .map(|(v, g)| fibration_union(&f3, &f3_pure, v, g))
        .collect::<Result<Vec<_>>>()
        .and_then(|r| {
            let nonzero: usize = r.iter().map(|x| x.1).sum();
            if nonzero == 0 {
                return Err(EpwError::Internal("Q vanished everywhere; check is vacuous".into()));
            }
            Ok(format!("{} pure points x {} pairs; Q != 0 at {nonzero}", f3_pure.len(), r.len()))
        });
    out.push(from_result("fibration-union vanishing, pure points of P(wedge^3 <e1..e5>) over F_3", f3_result));

    out.push(from_result("decomposables in F_e1 ∩ F'_e6* over F_3 form a rank-6 quadric", klein_quadric_count(&f3)));
    out
}

/// Counts decomposable points of `e1 ^ wedge^2 <e2..e5>` over `F_q` and
/// compares with the zero count of `x23 x45 - x24 x35 + x25 x34` and with the
/// closed form `(q^2 + 1)(q^2 + q + 1)` for a hyperbolic quadric in `P^5`.
pub fn klein_quadric_count(f: &PrimeField) -> Result<String> {
    let space = fiber_f(f, &KVector::basis(f, &[1])).intersection(&fiber_f_prime(f, &DualVector::basis(f, 6)));
    if space.dim() != 6 {
        return Err(EpwError::Internal(format!("dimension {}", space.dim())));
    }
    let pairs: [[u8; 2]; 6] = [[2, 3], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5]];
    let basis: Vec<KVector<u64>> = pairs.iter().map(|p| KVector::basis(f, &[1, p[0], p[1]])).collect();
    let pts = ProjectiveSpace::new(f, 6);
    let decomposable = pts
        .iter()
        .filter(|c| {
            let mut w = KVector::zero(f, 3);
            for (x, b) in c.iter().zip(&basis) {
                w = w.add(f, &b.scale(f, x));
            }
            classify(f, &w).ok() == Some(OrbitLabel::Grassmannian)
        })
        .count() as u64;
    let quadric = pts
        .iter()
        .filter(|x| {
            let t = f.sub(&f.mul(&x[0], &x[5]), &f.mul(&x[1], &x[4]));
            f.add(&t, &f.mul(&x[2], &x[3])) == 0
        })
        .count() as u64;
    let q = f.p();
    let closed = (q * q + 1) * (q * q + q + 1);
    if decomposable == quadric && quadric == closed {
        Ok(format!("{decomposable} points = (q^2+1)(q^2+q+1)"))
    } else {
        Err(EpwError::Internal(format!(
            "decomposable {decomposable}, quadric {quadric}, closed form {closed}"
        )))
    }
}

fn criterion_tangent_cone() -> Vec<Check> {
    let f = PrimeField::new(2).expect("prime");
    let u = coordinate_subspace(&f, &[1, 2, 3]);
    let t = match tangent_g(&f, &u) {
        Ok(t) => t,
        Err(e) => return vec![check("tangent space", false, e.to_string())],
    };
    let points = grassmannian_3_6(&f);
    let mut members = 0;
    let mismatches = points
        .iter()
        .filter(|rows| {
            let inside = t.contains(plucker(&f, &rows[..]).coeffs());
            members += usize::from(inside);
            inside != (u.intersection_dim(&Subspace::span(&f, 6, rows.to_vec())) >= 2)
        })
        .count();
    vec![check(
        "e_U' in T_U iff dim(U ∩ U') >= 2",
        mismatches == 0 && points.len() == 1395,
        format!("{} points, {members} in T_U, {mismatches} mismatches", points.len()),
    )]
}

fn criterion_classes() -> Vec<Check> {
    let ids = class_identities();
    let failed: Vec<&str> = ids.iter().filter(|i| !i.holds).map(|i| i.name.as_str()).collect();
    let ell = Functional { on_h: 2, on_t: 1 };
    let d = numerology::H.scale(3).add(numerology::T).sub(numerology::e());
    let h2 = numerology::h2();
    let target = DivisorClass::new(3, -7);
    vec![
        check(
            "all class identities",
            failed.is_empty(),
            if failed.is_empty() { format!("{} identities", ids.len()) } else { failed.join(", ") },
        ),
        check("l(3H + T - E) = -3", ell.apply(d) == -3, format!("{}", ell.apply(d))),
        check(
            "3H - 7T = -3H2 - T = T - 4H2 - H",
            h2.scale(-3).sub(numerology::T) == target && numerology::T.sub(h2.scale(4)).sub(numerology::H) == target,
            format!("{target}"),
        ),
    ]
}

fn criterion_strata(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for p in cfg.census_primes(&[3, 5]) {
        let f = PrimeField::new(p).expect("prime");
        for i in 0..2 {
            let seed = cfg.seed + i;
            let r = random_lagrangian(&f, seed).and_then(|a| stratum_census(&a, None));
            out.push(match r {
                Ok(r) => {
                    let (y1, y2, y3) = (r.at_least(1), r.at_least(2), r.at_least(3));
                    let p4 = (p.pow(5) - 1) / (p - 1);
                    check(
                        &format!("|Y1| > |Y2| >= |Y3| over F_{p}, seed {seed}"),
                        y1 > y2 && y2 >= y3,
                        format!("|Y1| = {y1}, |Y2| = {y2}, |Y3| = {y3}, |P^4(F_{p})| = {p4}"),
                    )
                }
                Err(e) => check(&format!("census over F_{p}, seed {seed}"), false, e.to_string()),
            });
        }
    }
    out
}

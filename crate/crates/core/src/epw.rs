//! The EPW sextic of a Lagrangian `A`, its rank stratification, the
//! decomposable locus `Theta_A`, the curves `C_{U,A}` and the dual sextic.
//!
//! For `v` in `W` the fiber `F_v = v ^ wedge^2 W` is Lagrangian, so the rank of
//! `F_v -> wedge^3 W / A` drops exactly when `A` meets `F_v`. Since `A` is its
//! own annihilator, `wedge^3 W / A` is identified with `A*` through the wedge
//! pairing: the map has matrix `sigma(a_i, v ^ e_jk)`.
//! All dimensions are linear: `k(v) = dim(A ∩ F_v)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::det::{bareiss_determinant, interpolated_determinant, modular_determinant};
use crate::error::{EpwError, Result};
use crate::exterior::{grade_masks, symplectic_form, wedge, KVector, DIM};
use crate::field::{Field, FieldDesc, PrimeField};
use crate::lagrangian::{dual_transport, is_isotropic, Lagrangian};
use crate::linalg::{normalize_projective, rank, Subspace};
use crate::orbits::{divisor_kernel, fiber_f, plucker};
use crate::poly::MultiPoly;
use crate::projective::{grassmannian_3_6, ProjectiveSpace};
use crate::store::lagrangian_hash;

/// Largest prime for the exhaustive `P^5` census.
pub const CENSUS_MAX_P: u64 = 7;
/// Largest prime for the exhaustive `P(A)` scan in `theta_enumerate`.
pub const THETA_MAX_P: u64 = 5;

/// Where a sextic came from. Not part of its content hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SexticProvenance {
    pub lagrangian_sha: String,
    /// 1-based charts whose determinants were computed and compared.
    pub charts: Vec<usize>,
}

/// A normalized, homogeneous sextic in `x1..x6`.
#[derive(Clone, Debug)]
pub struct EpwSextic<F: Field> {
    poly: MultiPoly<F>,
    provenance: SexticProvenance,
}

impl<F: Field> PartialEq for EpwSextic<F> {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl<F: Field> EpwSextic<F> {
    /// Validates degree, homogeneity and normal form.
    pub fn new(poly: MultiPoly<F>, provenance: SexticProvenance) -> Result<Self> {
        if poly.is_zero() {
            return Err(EpwError::Invalid("sextic is the zero polynomial".into()));
        }
        if !poly.is_homogeneous() || poly.total_degree() != Some(6) {
            return Err(EpwError::Invalid(format!(
                "sextic must be homogeneous of degree 6 (degree {:?}, homogeneous {})",
                poly.total_degree(),
                poly.is_homogeneous()
            )));
        }
        if poly.normalized() != poly {
            return Err(EpwError::Invalid("sextic is not normalized".into()));
        }
        Ok(EpwSextic { poly, provenance })
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.poly
    }

    pub fn provenance(&self) -> &SexticProvenance {
        &self.provenance
    }

    pub fn field(&self) -> &F {
        self.poly.field()
    }

    pub fn eval(&self, v: &[F::El]) -> F::El {
        self.poly.eval(v)
    }

    pub fn vanishes_at(&self, v: &[F::El]) -> bool {
        self.field().is_zero(&self.eval(v))
    }
}

/// Determinant route for the chart polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    /// Default over `F_p`; works over every field.
    Bareiss,
    /// Independent cross-check; needs characteristic 0 or > 10.
    Interpolation,
    /// Default over `Q`: Bareiss modulo word-sized primes plus CRT.
    Modular,
}

impl DetMethod {
    /// Fastest exact route for the field.
    pub fn default_for<F: Field>(f: &F) -> Self {
        if f.characteristic() == 0 {
            DetMethod::Modular
        } else {
            DetMethod::Bareiss
        }
    }
}

fn require_point<F: Field>(f: &F, v: &[F::El]) -> Result<()> {
    if v.len() != DIM {
        return Err(EpwError::WrongDimension {
            expected: DIM,
            found: v.len(),
        });
    }
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(EpwError::Invalid("the zero vector is not a point of P(W)".into()));
    }
    Ok(())
}

fn require_chart(c: usize) -> Result<()> {
    if (1..=DIM).contains(&c) {
        Ok(())
    } else {
        Err(EpwError::Invalid(format!("chart {c} is not in 1..6")))
    }
}

/// `A ∩ F_v`.
pub fn fiber_intersection<F: Field>(a: &Lagrangian<F>, v: &[F::El]) -> Result<Subspace<F>> {
    require_point(a.field(), v)?;
    Ok(a.space().intersection(&fiber_f(a.field(), &KVector::vector(v.to_vec()))))
}

/// `k(v) = dim(A ∩ F_v) = 20 - rank[A; F_v]`.
pub fn epw_rank_at<F: Field>(a: &Lagrangian<F>, v: &[F::El]) -> Result<usize> {
    let f = a.field();
    require_point(f, v)?;
    let fv = fiber_f(f, &KVector::vector(v.to_vec()));
    let rows: Vec<Vec<F::El>> = a.space().basis().iter().chain(fv.basis()).cloned().collect();
    let k = 20 - rank(f, rows);
    if cfg!(debug_assertions) && k > 0 {
        debug_assert!(is_isotropic(&fiber_intersection(a, v)?));
    }
    Ok(k)
}

/// The `10 x 10` matrix of affine-linear forms on the chart `x_c = 1`:
/// row `i`, column `(j,k)` is `sigma(a_i, v ^ e_jk)` with
/// `v = e_c + sum_{m != c} x_m e_m`, pairs `j < k` avoiding `c` in lex order.
pub fn epw_matrix<F: Field>(a: &Lagrangian<F>, chart: usize) -> Result<Vec<Vec<MultiPoly<F>>>> {
    require_chart(chart)?;
    let f = a.field();
    let c = chart - 1;
    let pairs: Vec<u8> = grade_masks(2).iter().copied().filter(|m| m >> c & 1 == 0).collect();
    let basis = a.basis();
    Ok(basis
        .iter()
        .map(|ai| {
            pairs
                .iter()
                .map(|&pair| {
                    let ejk = KVector::basis_mask(f, pair);
                    let mut entry = MultiPoly::zero(f);
                    for m in 0..DIM {
                        let col = wedge(f, &KVector::basis_mask(f, 1 << m), &ejk);
                        let s = symplectic_form(f, ai, &col);
                        if f.is_zero(&s) {
                            continue;
                        }
                        let term = if m == c {
                            MultiPoly::constant(f, s)
                        } else {
                            MultiPoly::var(f, m).scale(&s)
                        };
                        entry = entry.add(&term);
                    }
                    entry
                })
                .collect()
        })
        .collect())
}

fn chart_vars(chart: usize) -> Vec<usize> {
    (0..DIM).filter(|&m| m != chart - 1).collect()
}

/// Fixed verification points for the interpolation route.
fn verification_points<F: Field>(f: &F, chart: usize) -> Vec<Vec<F::El>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e71c + chart as u64);
    (0..4)
        .map(|_| {
            (0..DIM)
                .map(|m| {
                    if m == chart - 1 {
                        f.one()
                    } else {
                        f.from_i64(rng.gen_range(-97..=97))
                    }
                })
                .collect()
        })
        .collect()
}

/// `det(epw_matrix(A, c))` as a polynomial in the five chart variables.
pub fn chart_determinant<F: Field>(a: &Lagrangian<F>, chart: usize, method: DetMethod) -> Result<MultiPoly<F>> {
    let f = a.field();
    let m = epw_matrix(a, chart)?;
    let vars = chart_vars(chart);
    match method {
        DetMethod::Interpolation => interpolated_determinant(f, &m, &vars, &verification_points(f, chart)),
        DetMethod::Bareiss => bareiss_determinant(f, &m, &vars),
        DetMethod::Modular => modular_determinant(f, &m, &vars),
    }
}

/// Normalized sextic from one chart, or `None` when that chart's determinant
/// vanishes identically.
pub fn sextic_on_chart<F: Field>(a: &Lagrangian<F>, chart: usize, method: DetMethod) -> Result<Option<MultiPoly<F>>> {
    let d = chart_determinant(a, chart, method)?;
    if d.is_zero() {
        return Ok(None);
    }
    let var = chart - 1;
    let s = d
        .homogenize(var, 10)
        .and_then(|h| h.divide_by_var_power(var, 4))
        .ok_or(EpwError::DivisionFailure { chart })?;
    if !s.is_homogeneous() || s.total_degree() != Some(6) {
        return Err(EpwError::Internal(format!("chart {chart} quotient is not a sextic")));
    }
    Ok(Some(s.normalized()))
}

/// The EPW sextic from the first chart with a nonzero determinant.
pub fn epw_sextic<F: Field>(a: &Lagrangian<F>) -> Result<EpwSextic<F>> {
    epw_sextic_with(a, &[1], DetMethod::default_for(a.field()))
}

/// Computes the requested charts (concurrently) and requires them to agree;
/// if all of them vanish identically, falls back to the remaining charts.
pub fn epw_sextic_with<F: Field>(a: &Lagrangian<F>, charts: &[usize], method: DetMethod) -> Result<EpwSextic<F>> {
    for &c in charts {
        require_chart(c)?;
    }
    let attempt = |cs: &[usize]| -> Result<Vec<(usize, MultiPoly<F>)>> {
        let found: Vec<Result<Option<MultiPoly<F>>>> = cs.par_iter().map(|&c| sextic_on_chart(a, c, method)).collect();
        let mut out = Vec::new();
        for (&c, r) in cs.iter().zip(found) {
            if let Some(s) = r? {
                out.push((c, s));
            }
        }
        Ok(out)
    };
    let mut found = attempt(charts)?;
    if found.is_empty() {
        for c in (1..=DIM).filter(|c| !charts.contains(c)) {
            found = attempt(&[c])?;
            if !found.is_empty() {
                break;
            }
        }
    }
    let Some((_, first)) = found.first() else {
        return Err(EpwError::DegenerateSextic);
    };
    for (c, s) in &found[1..] {
        if s != first {
            return Err(EpwError::Internal(format!("chart {c} disagrees with chart {}", found[0].0)));
        }
    }
    let provenance = SexticProvenance {
        lagrangian_sha: lagrangian_hash(a),
        charts: found.iter().map(|(c, _)| *c).collect(),
    };
    EpwSextic::new(first.clone(), provenance)
}

/// Sextic of `dual_transport(A)` in the dual coordinates of `P(W*)`.
pub fn dual_sextic<F: Field>(a: &Lagrangian<F>) -> Result<EpwSextic<F>> {
    epw_sextic(&dual_transport(a)?)
}

/// Class of `grad s(v)` in `P(W*)`, first nonzero entry scaled to 1.
pub fn gradient_point<F: Field>(s: &EpwSextic<F>, v: &[F::El]) -> Result<Vec<F::El>> {
    let f = s.field();
    require_point(f, v)?;
    let mut g: Vec<F::El> = (0..DIM).map(|i| s.poly().derivative(i).eval(v)).collect();
    if g.iter().all(|x| f.is_zero(x)) {
        return Err(EpwError::SingularPoint);
    }
    normalize_projective(f, &mut g);
    Ok(g)
}

/// `e_U ∈ A`.
pub fn theta_contains<F: Field>(a: &Lagrangian<F>, u: &Subspace<F>) -> Result<bool> {
    if u.ambient() != DIM || u.dim() != 3 {
        return Err(EpwError::WrongDimension {
            expected: 3,
            found: u.dim(),
        });
    }
    Ok(a.contains(&plucker(a.field(), u.basis())))
}

/// Rank census over an enumerated point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    #[serde(flatten)]
    pub field: FieldDesc,
    pub points: u64,
    /// `k -> number of points with dim(A ∩ F_v) = k`.
    pub counts: BTreeMap<usize, u64>,
    /// Whether `{s_A = 0} = {k >= 1}` was checked at every point.
    pub sextic_checked: bool,
}

impl StratumReport {
    /// `|Y[k]| = #{v : dim(A ∩ F_v) >= k}`.
    pub fn at_least(&self, k: usize) -> u64 {
        self.counts.range(k..).map(|(_, n)| n).sum()
    }
}

fn require_small(f: &PrimeField, max: u64) -> Result<()> {
    if f.p() > max {
        return Err(EpwError::TooLarge(format!("p = {} exceeds {}", f.p(), max)));
    }
    Ok(())
}

fn format_point(f: &PrimeField, v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.format(x)).collect();
    format!("[{}]", parts.join(","))
}

/// Exhaustive rank census over `P^5(F_p)`. With a sextic, also checks
/// `s(v) = 0 <=> k(v) >= 1` at every point and fails on the first mismatch.
pub fn stratum_census(a: &Lagrangian<PrimeField>, sextic: Option<&EpwSextic<PrimeField>>) -> Result<StratumReport> {
    let f = a.field();
    require_small(f, CENSUS_MAX_P)?;
    let space = ProjectiveSpace::new(f, DIM);
    let results: Vec<Result<usize>> = space.par_map(|_, v| {
        let k = epw_rank_at(a, &v)?;
        if let Some(s) = sextic {
            if s.vanishes_at(&v) != (k >= 1) {
                return Err(EpwError::CensusMismatch(format!("{} (k = {k})", format_point(f, &v))));
            }
        }
        Ok(k)
    });
    let mut counts = BTreeMap::new();
    for r in results {
        *counts.entry(r?).or_insert(0) += 1;
    }
    Ok(StratumReport {
        field: FieldDesc::Fp { p: f.p() },
        points: space.len(),
        counts,
        sextic_checked: sextic.is_some(),
    })
}

/// Computes `s_A` and runs the checked census.
pub fn sextic_vanishing_census(a: &Lagrangian<PrimeField>) -> Result<StratumReport> {
    let s = epw_sextic(a)?;
    stratum_census(a, Some(&s))
}

fn sort_planes(mut planes: Vec<Subspace<PrimeField>>) -> Vec<Subspace<PrimeField>> {
    planes.sort_by(|x, y| x.basis().cmp(y.basis()));
    planes.dedup();
    planes
}

/// All points of `G(3,W) ∩ P(A)` over `F_p`, `p <= 5`, by scanning `P(A)`.
pub fn theta_enumerate(a: &Lagrangian<PrimeField>) -> Result<Vec<Subspace<PrimeField>>> {
    let f = a.field();
    require_small(f, THETA_MAX_P)?;
    let basis = a.basis();
    let found: Vec<Option<Subspace<PrimeField>>> = ProjectiveSpace::new(f, 10).par_map(|_, c| {
        let mut w = KVector::zero(f, 3);
        for (ci, bi) in c.iter().zip(&basis) {
            if *ci != 0 {
                w = w.add(f, &bi.scale(f, ci));
            }
        }
        divisor_kernel(f, &w).ok().filter(|k| k.dim() == 3)
    });
    Ok(sort_planes(found.into_iter().flatten().collect()))
}

/// Same set as [`theta_enumerate`], found by testing every point of `G(3,6)`.
pub fn theta_by_grassmannian(a: &Lagrangian<PrimeField>) -> Vec<Subspace<PrimeField>> {
    let f = a.field();
    let planes: Vec<Option<Subspace<PrimeField>>> = grassmannian_3_6(f)
        .into_par_iter()
        .map(|b| {
            if a.contains(&plucker(f, &b)) {
                Some(Subspace::span(f, DIM, b.to_vec()))
            } else {
                None
            }
        })
        .collect();
    sort_planes(planes.into_iter().flatten().collect())
}

/// Points of `P(U)` with rank data: `(v, k(v))` in enumeration order.
pub fn plane_ranks(a: &Lagrangian<PrimeField>, u: &Subspace<PrimeField>) -> Result<Vec<(Vec<u64>, usize)>> {
    if !theta_contains(a, u)? {
        return Err(EpwError::NotInTheta);
    }
    let f = a.field();
    ProjectiveSpace::new(f, 3)
        .par_map(|_, c| {
            let mut v = u.vector_from_coords(&c);
            normalize_projective(f, &mut v);
            let k = epw_rank_at(a, &v)?;
            Ok((v, k))
        })
        .into_iter()
        .collect()
}

/// `C_{U,A} = {v in P(U) : dim(A ∩ F_v) >= 2}` over `F_p`.
pub fn c_ua_points(a: &Lagrangian<PrimeField>, u: &Subspace<PrimeField>) -> Result<Vec<Vec<u64>>> {
    Ok(plane_ranks(a, u)?
        .into_iter()
        .filter(|(_, k)| *k >= 2)
        .map(|(v, _)| v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::lagrangian::{l0, l1, lagrangian_with_planes, random_lagrangian};
    use crate::linalg::determinant;
    use crate::orbits::{coordinate_subspace, fiber_f_prime};
    use crate::exterior::DualVector;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn e(i: usize) -> Vec<u64> {
        let mut v = vec![0; 6];
        v[i - 1] = 1;
        v
    }

    fn random_point(f: &PrimeField, rng: &mut ChaCha8Rng) -> Vec<u64> {
        loop {
            let v: Vec<u64> = (0..6).map(|_| rng.gen_range(0..f.p())).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    #[test]
    fn rank_on_coordinate_lagrangian() {
        let f = fp(7);
        assert_eq!(epw_rank_at(&l0(&f).unwrap(), &e(1)).unwrap(), 10);
        let q = Rationals;
        let v: Vec<_> = e(1).iter().map(|&x| q.from_i64(x as i64)).collect();
        assert_eq!(epw_rank_at(&l0(&q).unwrap(), &v).unwrap(), 10);
    }

    #[test]
    fn rank_on_plane_points() {
        let f = fp(7);
        let a = lagrangian_with_planes(&f, &[coordinate_subspace(&f, &[1, 2, 3])], 3).unwrap();
        for v in [vec![1, 0, 0, 0, 0, 0], vec![1, 2, 3, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]] {
            assert!(epw_rank_at(&a, &v).unwrap() >= 1);
        }
    }

    #[test]
    fn matrix_evaluates_to_pointwise_rank() {
        let f = fp(3);
        let a = random_lagrangian(&f, 11).unwrap();
        for chart in 1..=6 {
            let m = epw_matrix(&a, chart).unwrap();
            for v in ProjectiveSpace::new(&f, 6).iter() {
                if v[chart - 1] == 0 {
                    continue;
                }
                let mut w = v.clone();
                let inv = f.inv(&w[chart - 1]);
                for x in w.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                let numeric: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|p| p.eval(&w)).collect()).collect();
                let k = epw_rank_at(&a, &v).unwrap();
                assert_eq!(10 - rank(&f, numeric), k);
            }
        }
    }

    #[test]
    fn l1_constant_part_invertible() {
        let f = fp(10007);
        let m = epw_matrix(&l1(&f).unwrap(), 1).unwrap();
        let zero = vec![0u64; 6];
        let constant: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|p| p.eval(&zero)).collect()).collect();
        assert_ne!(determinant(&f, constant), 0);
    }

    #[test]
    fn coordinate_lagrangian_is_degenerate() {
        let f = fp(10007);
        assert!(matches!(epw_sextic(&l0(&f).unwrap()), Err(EpwError::DegenerateSextic)));
    }

    #[test]
    fn charts_agree_over_prime_field() {
        let f = fp(10007);
        for seed in 0..3 {
            let a = random_lagrangian(&f, seed).unwrap();
            let s = epw_sextic_with(&a, &[1, 2, 4, 6], DetMethod::Bareiss).unwrap();
            assert_eq!(s.provenance().charts, vec![1, 2, 4, 6]);
            assert_eq!(s.poly().total_degree(), Some(6));
            assert!(s.poly().is_homogeneous());
            assert_eq!(s.poly().leading().unwrap().1, &1);
        }
    }

    #[test]
    fn determinant_routes_agree() {
        let f = fp(10007);
        let a = random_lagrangian(&f, 5).unwrap();
        let b = chart_determinant(&a, 3, DetMethod::Bareiss).unwrap();
        let i = chart_determinant(&a, 3, DetMethod::Interpolation).unwrap();
        assert_eq!(b, i);
        assert!(b.total_degree().unwrap() <= 6);
    }

    #[test]
    fn rational_sextic_matches_reduction() {
        let q = Rationals;
        let a = random_lagrangian(&q, 1).unwrap();
        let s = epw_sextic_with(&a, &[1, 2], DetMethod::Modular).unwrap();
        assert!(s.poly().terms().all(|(_, c)| c.is_integer()));
        let by_bareiss = sextic_on_chart(&a, 1, DetMethod::Bareiss).unwrap().unwrap();
        assert_eq!(&by_bareiss, s.poly());
        let by_interpolation = sextic_on_chart(&a, 3, DetMethod::Interpolation).unwrap().unwrap();
        assert_eq!(&by_interpolation, s.poly());
        // reduce mod p and compare with the sextic of the reduced Lagrangian
        let f = fp(10007);
        let reduced_rows: Vec<Vec<u64>> = a
            .space()
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| crate::field::reduce_rational(&f, x).unwrap()).collect())
            .collect();
        let ap = Lagrangian::new(
            Subspace::span(&f, 20, reduced_rows),
            crate::lagrangian::Provenance::new("reduced", None, FieldDesc::Fp { p: 10007 }),
        )
        .unwrap();
        let sp = epw_sextic(&ap).unwrap();
        let reduced = s.poly().map_coefficients(&f, |c| crate::field::reduce_rational(&f, c).unwrap());
        assert!(reduced.is_proportional(sp.poly()));
    }

    #[test]
    fn plane_lies_on_sextic() {
        let f = fp(10007);
        let a = lagrangian_with_planes(&f, &[coordinate_subspace(&f, &[1, 2, 3])], 9).unwrap();
        let s = epw_sextic(&a).unwrap();
        assert!(s.poly().restrict_to_zero(&[3, 4, 5]).is_zero());
    }

    #[test]
    fn census_over_f3_and_f5() {
        for (p, seed) in [(3, 1), (5, 2)] {
            let f = fp(p);
            let a = random_lagrangian(&f, seed).unwrap();
            match epw_sextic(&a) {
                Ok(s) => {
                    let r = stratum_census(&a, Some(&s)).unwrap();
                    assert_eq!(r.points, ProjectiveSpace::new(&f, 6).len());
                    assert_eq!(r.counts.values().sum::<u64>(), r.points);
                    assert!(r.at_least(1) >= r.at_least(2) && r.at_least(2) >= r.at_least(3));
                }
                Err(EpwError::DegenerateSextic) => {}
                Err(other) => panic!("{other}"),
            }
        }
    }

    #[test]
    fn census_with_plane() {
        let f = fp(3);
        let a = lagrangian_with_planes(&f, &[coordinate_subspace(&f, &[1, 2, 3])], 4).unwrap();
        let r = sextic_vanishing_census(&a).unwrap();
        assert!(r.at_least(1) >= 13);
    }

    #[test]
    fn theta_finds_the_plane() {
        let f = fp(3);
        let u = coordinate_subspace(&f, &[1, 2, 3]);
        let a = lagrangian_with_planes(&f, &[u.clone()], 6).unwrap();
        assert!(theta_contains(&a, &u).unwrap());
        let theta = theta_enumerate(&a).unwrap();
        assert!(theta.contains(&u));
        assert_eq!(theta, theta_by_grassmannian(&a));
    }

    #[test]
    fn theta_of_coordinate_lagrangian() {
        let f = fp(3);
        let a = l0(&f).unwrap();
        let theta = theta_enumerate(&a).unwrap();
        for idx in crate::lagrangian::l0_masks() {
            let ids = crate::exterior::indices_of(idx);
            assert!(theta.contains(&coordinate_subspace(&f, &ids)));
        }
        // every 3-space through e1 is decomposable inside L0
        assert_eq!(theta.len() as u64, crate::projective::gaussian_binomial(5, 2, 3));
        assert_eq!(theta, theta_by_grassmannian(&a));
    }

    #[test]
    fn theta_membership_examples() {
        let f = fp(7);
        let u = coordinate_subspace(&f, &[1, 2, 3]);
        assert!(theta_contains(&l0(&f).unwrap(), &u).unwrap());
        assert!(!theta_contains(&l1(&f).unwrap(), &u).unwrap());
        assert!(theta_enumerate(&l0(&f).unwrap()).is_err());
    }

    #[test]
    fn cua_contains_intersection_point() {
        let f = fp(3);
        let u = coordinate_subspace(&f, &[1, 2, 3]);
        let u2 = coordinate_subspace(&f, &[1, 4, 5]);
        let a = lagrangian_with_planes(&f, &[u.clone(), u2], 2).unwrap();
        let ranks = plane_ranks(&a, &u).unwrap();
        assert_eq!(ranks.len(), 13);
        assert!(ranks.iter().all(|(_, k)| *k >= 1));
        let c = c_ua_points(&a, &u).unwrap();
        assert!(c.contains(&e(1)));
        assert!(c.len() <= 13);
        assert!(matches!(c_ua_points(&a, &coordinate_subspace(&f, &[4, 5, 6])), Err(EpwError::NotInTheta)));
    }

    #[test]
    fn dual_sextic_zero_locus() {
        let f = fp(7);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_lagrangian(&f, 3).unwrap();
        let sd = dual_sextic(&a).unwrap();
        for _ in 0..200 {
            let w = random_point(&f, &mut rng);
            let fw = fiber_f_prime(&f, &DualVector::new(w.clone()));
            let meets = a.space().intersection_dim(&fw) >= 1;
            assert_eq!(sd.vanishes_at(&w), meets);
        }
    }

    #[test]
    fn double_dual_reproduces_sextic() {
        let f = fp(10007);
        let a = random_lagrangian(&f, 4).unwrap();
        let back = dual_sextic(&dual_transport(&a).unwrap()).unwrap();
        assert_eq!(back, epw_sextic(&a).unwrap());
    }

    #[test]
    fn euler_relation_and_gradients() {
        let f = fp(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = epw_sextic(&random_lagrangian(&f, 7).unwrap()).unwrap();
        for _ in 0..100 {
            let v = random_point(&f, &mut rng);
            let mut acc = 0;
            for i in 0..6 {
                acc = f.add(&acc, &f.mul(&v[i], &s.poly().derivative(i).eval(&v)));
            }
            assert_eq!(acc, f.mul(&6, &s.eval(&v)));
        }
    }

    #[test]
    fn gradient_vanishes_on_rank_two_points() {
        let f = fp(7);
        let u = coordinate_subspace(&f, &[1, 2, 3]);
        let a = lagrangian_with_planes(&f, &[u.clone(), coordinate_subspace(&f, &[1, 4, 5])], 1).unwrap();
        let s = epw_sextic(&a).unwrap();
        assert!(epw_rank_at(&a, &e(1)).unwrap() >= 2);
        assert!(matches!(gradient_point(&s, &e(1)), Err(EpwError::SingularPoint)));
    }

    #[test]
    fn smooth_points_map_to_dual_sextic() {
        let f = fp(7);
        let a = random_lagrangian(&f, 12).unwrap();
        let s = epw_sextic(&a).unwrap();
        let sd = dual_sextic(&a).unwrap();
        let mut hits = 0;
        for v in ProjectiveSpace::new(&f, 6).iter() {
            if !s.vanishes_at(&v) {
                continue;
            }
            if let Ok(g) = gradient_point(&s, &v) {
                assert!(sd.vanishes_at(&g));
                hits += 1;
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn sextic_validation() {
        let f = fp(7);
        let x = MultiPoly::var(&f, 0);
        let prov = SexticProvenance {
            lagrangian_sha: String::new(),
            charts: vec![1],
        };
        assert!(EpwSextic::new(x.clone(), prov.clone()).is_err());
        let x6 = (0..5).fold(x.clone(), |acc, _| acc.mul(&x));
        assert!(EpwSextic::new(x6.clone(), prov.clone()).is_ok());
        assert!(EpwSextic::new(x6.scale(&3), prov).is_err());
    }
}

//! Isotropic and Lagrangian subspaces of `wedge^3 W` for the wedge pairing.
//!
//! The coordinate Lagrangians `L0 = span{e_I : 1 in I}` and
//! `L1 = span{e_I : 1 not in I}` are transverse, and the pairing between them
//! is the signed permutation `e_I -> sgn(I, I') e_{I'}`. Random Lagrangians
//! are graphs of maps `L0 -> L1` that are symmetric against that pairing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EpwError, Result};
use crate::exterior::{complement_sign, grade_masks, require_symplectic, slot_of, symplectic_form, volume_dual, KVector, FULL};
use crate::field::{Field, FieldDesc};
use crate::linalg::{kernel, Subspace};
use crate::orbits::plucker;

/// How a Lagrangian was built. Not part of its content hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub field: FieldDesc,
    /// Coordinate planes (1-based indices) for plane-containing constructions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planes: Option<Vec<Vec<u8>>>,
}

impl Provenance {
    pub fn new(method: &str, seed: Option<u64>, field: FieldDesc) -> Self {
        Provenance {
            method: method.to_string(),
            seed,
            field,
            planes: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Lagrangian<F: Field> {
    space: Subspace<F>,
    provenance: Provenance,
}

impl<F: Field> PartialEq for Lagrangian<F> {
    /// Equality of subspaces; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl<F: Field> Lagrangian<F> {
    /// Validates isotropy and maximality.
    pub fn new(space: Subspace<F>, provenance: Provenance) -> Result<Self> {
        require_symplectic(space.field())?;
        if space.ambient() != 20 {
            return Err(EpwError::WrongDimension {
                expected: 20,
                found: space.ambient(),
            });
        }
        if let Some((i, j)) = isotropy_witness(&space) {
            return Err(EpwError::NotIsotropic(i, j));
        }
        if space.dim() != 10 {
            return Err(EpwError::NotLagrangian(space.dim()));
        }
        Ok(Lagrangian { space, provenance })
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn field(&self) -> &F {
        self.space.field()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Basis trivectors in echelon order.
    pub fn basis(&self) -> Vec<KVector<F::El>> {
        self.space
            .basis()
            .iter()
            .map(|r| KVector::from_coeffs(3, r.clone()))
            .collect()
    }

    pub fn contains(&self, w: &KVector<F::El>) -> bool {
        self.space.contains(w.coeffs())
    }
}

/// First pair of basis indices with nonzero pairing, if any.
pub fn isotropy_witness<F: Field>(s: &Subspace<F>) -> Option<(usize, usize)> {
    let f = s.field();
    let b: Vec<KVector<F::El>> = s.basis().iter().map(|r| KVector::from_coeffs(3, r.clone())).collect();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !f.is_zero(&symplectic_form(f, &b[i], &b[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_isotropic<F: Field>(s: &Subspace<F>) -> bool {
    assert_eq!(s.ambient(), 20, "isotropy is defined on wedge^3 W");
    isotropy_witness(s).is_none()
}

/// Masks of `L0` (index 1 present), in slot order.
pub fn l0_masks() -> Vec<u8> {
    grade_masks(3).iter().copied().filter(|m| m & 1 == 1).collect()
}

fn coordinate_span<F: Field>(f: &F, masks: impl IntoIterator<Item = u8>) -> Subspace<F> {
    Subspace::span(
        f,
        20,
        masks.into_iter().map(|m| KVector::basis_mask(f, m).into_coeffs()).collect(),
    )
}

/// `L0 = span{e_I : 1 in I}` (equal to the fiber `F_{e1}`).
pub fn l0<F: Field>(f: &F) -> Result<Lagrangian<F>> {
    Lagrangian::new(coordinate_span(f, l0_masks()), Provenance::new("coordinate_l0", None, f.descriptor()))
}

/// `L1 = span{e_I : 1 not in I}`.
pub fn l1<F: Field>(f: &F) -> Result<Lagrangian<F>> {
    Lagrangian::new(
        coordinate_span(f, grade_masks(3).iter().copied().filter(|m| m & 1 == 0)),
        Provenance::new("coordinate_l1", None, f.descriptor()),
    )
}

/// Graph of the map `L0 -> L1` given by a 10x10 matrix `n` indexed by `L0`
/// masks: `e_{I_r} -> e_{I_r} + sum_s sgn(I_s, I_s') n[s][r] e_{I_s'}`.
/// Isotropic exactly when `n` is symmetric.
pub fn graph_subspace<F: Field>(f: &F, n: &[Vec<F::El>]) -> Subspace<F> {
    let masks = l0_masks();
    let rows = (0..10)
        .map(|r| {
            let mut v = vec![f.zero(); 20];
            v[slot_of(masks[r])] = f.one();
            for s in 0..10 {
                let c = &n[s][r];
                if f.is_zero(c) {
                    continue;
                }
                let slot = slot_of(FULL & !masks[s]);
                v[slot] = if complement_sign(masks[s]) > 0 { c.clone() } else { f.neg(c) };
            }
            v
        })
        .collect();
    Subspace::span(f, 20, rows)
}

/// Random symmetric 10x10 matrix: the upper triangle is drawn row by row and
/// reflected.
pub fn random_symmetric<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Vec<Vec<F::El>> {
    let mut n = vec![vec![f.zero(); 10]; 10];
    for i in 0..10 {
        for j in i..10 {
            let x = f.sample(rng);
            n[i][j] = x.clone();
            n[j][i] = x;
        }
    }
    n
}

/// Random Lagrangian from the graph construction, deterministic in `(seed, field)`.
pub fn random_lagrangian<F: Field>(f: &F, seed: u64) -> Result<Lagrangian<F>> {
    require_symplectic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = random_symmetric(f, &mut rng);
    Lagrangian::new(graph_subspace(f, &n), Provenance::new("random_graph", Some(seed), f.descriptor()))
}

/// `S^perp` for the wedge pairing.
pub fn symplectic_complement<F: Field>(s: &Subspace<F>) -> Subspace<F> {
    let f = s.field();
    let rows: Vec<Vec<F::El>> = s
        .basis()
        .iter()
        .map(|r| volume_dual(f, &KVector::from_coeffs(3, r.clone())).into_coeffs())
        .collect();
    if rows.is_empty() {
        return coordinate_span(f, grade_masks(3).iter().copied());
    }
    Subspace::span(f, 20, kernel(f, &rows, 20))
}

fn check_isotropic_input<F: Field>(s: &Subspace<F>) -> Result<()> {
    require_symplectic(s.field())?;
    if s.ambient() != 20 {
        return Err(EpwError::WrongDimension {
            expected: 20,
            found: s.ambient(),
        });
    }
    if let Some((i, j)) = isotropy_witness(s) {
        return Err(EpwError::NotIsotropic(i, j));
    }
    Ok(())
}

/// Deterministic completion: adjoin basis trivectors of `S^perp \ S` in
/// lexicographic order, then echelon vectors of `S^perp` until dimension 10.
pub fn complete_to_lagrangian<F: Field>(s: &Subspace<F>) -> Result<Lagrangian<F>> {
    check_isotropic_input(s)?;
    let f = s.field();
    let mut cur = s.clone();
    for &m in grade_masks(3) {
        if cur.dim() == 10 {
            break;
        }
        let e = KVector::basis_mask(f, m).into_coeffs();
        if symplectic_complement(&cur).contains(&e) && !cur.contains(&e) {
            cur = cur.sum(&Subspace::span(f, 20, vec![e]));
        }
    }
    while cur.dim() < 10 {
        let perp = symplectic_complement(&cur);
        let next = perp
            .basis()
            .iter()
            .find(|v| !cur.contains(v))
            .cloned()
            .ok_or_else(|| EpwError::Internal("S^perp equals S below dimension 10".into()))?;
        cur = cur.sum(&Subspace::span(f, 20, vec![next]));
    }
    Lagrangian::new(cur, Provenance::new("completion", None, f.descriptor()))
}

/// Completion by random vectors of `S^perp \ S`, deterministic in the seed.
pub fn complete_randomly<F: Field>(s: &Subspace<F>, seed: u64) -> Result<Lagrangian<F>> {
    check_isotropic_input(s)?;
    let f = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = s.clone();
    while cur.dim() < 10 {
        let perp = symplectic_complement(&cur);
        let coords: Vec<F::El> = (0..perp.dim()).map(|_| f.sample(&mut rng)).collect();
        let v = perp.vector_from_coords(&coords);
        if !cur.contains(&v) {
            cur = cur.sum(&Subspace::span(f, 20, vec![v]));
        }
    }
    Lagrangian::new(cur, Provenance::new("random_completion", Some(seed), f.descriptor()))
}

/// A Lagrangian containing `e_U` for every listed 3-space `U` of `W`; the
/// remaining directions are completed randomly from `seed`.
pub fn lagrangian_with_planes<F: Field>(f: &F, planes: &[Subspace<F>], seed: u64) -> Result<Lagrangian<F>> {
    require_symplectic(f)?;
    for u in planes {
        if u.ambient() != 6 || u.dim() != 3 {
            return Err(EpwError::WrongDimension {
                expected: 3,
                found: u.dim(),
            });
        }
    }
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            if planes[i].intersection_dim(&planes[j]) == 0 {
                return Err(EpwError::DisjointPlanes(i, j));
            }
        }
    }
    let s = Subspace::span(
        f,
        20,
        planes.iter().map(|u| plucker(f, u.basis()).into_coeffs()).collect(),
    );
    let a = complete_randomly(&s, seed)?;
    let mut prov = Provenance::new("planes", Some(seed), f.descriptor());
    prov.planes = coordinate_labels(planes);
    Lagrangian::new(a.space, prov)
}

/// 1-based index lists when every plane is a coordinate plane.
fn coordinate_labels<F: Field>(planes: &[Subspace<F>]) -> Option<Vec<Vec<u8>>> {
    planes
        .iter()
        .map(|u| {
            let f = u.field();
            let mut idx = Vec::new();
            for row in u.basis() {
                let nz: Vec<usize> = (0..6).filter(|&i| !f.is_zero(&row[i])).collect();
                if nz.len() != 1 {
                    return None;
                }
                idx.push(nz[0] as u8 + 1);
            }
            Some(idx)
        })
        .collect()
}

/// Image of `A` under `wedge^3 W -> wedge^3 W*`, `e_I -> sgn(I, I') e*_{I'}`.
/// Lagrangian for the dual pairing; applying it twice returns `A`.
pub fn dual_transport<F: Field>(a: &Lagrangian<F>) -> Result<Lagrangian<F>> {
    let f = a.field();
    let rows = a.basis().iter().map(|w| volume_dual(f, w).into_coeffs()).collect();
    let mut prov = a.provenance.clone();
    prov.method = format!("dual_transport({})", prov.method);
    Lagrangian::new(Subspace::span(f, 20, rows), prov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::orbits::{coordinate_subspace, fiber_f};
    use rand::Rng;

    fn e<F: Field>(f: &F, idx: &[u8]) -> Vec<F::El> {
        KVector::basis(f, idx).into_coeffs()
    }

    #[test]
    fn isotropy_examples() {
        let q = Rationals;
        assert!(is_isotropic(l0(&q).unwrap().space()));
        assert!(is_isotropic(&Subspace::span(&q, 20, vec![e(&q, &[1, 2, 3]), e(&q, &[1, 4, 5])])));
        assert!(!is_isotropic(&Subspace::span(&q, 20, vec![e(&q, &[1, 2, 3]), e(&q, &[4, 5, 6])])));
    }

    #[test]
    fn zero_matrix_gives_l0() {
        let q = Rationals;
        let zero = vec![vec![q.zero(); 10]; 10];
        assert_eq!(graph_subspace(&q, &zero), *l0(&q).unwrap().space());
    }

    #[test]
    fn random_lagrangians_are_lagrangian() {
        let f = PrimeField::new(7).unwrap();
        let mut distinct = std::collections::HashSet::new();
        for seed in 0..100 {
            let a = random_lagrangian(&f, seed).unwrap();
            assert!(is_isotropic(a.space()));
            assert_eq!(a.space().dim(), 10);
            distinct.insert(a.space().basis().to_vec());
        }
        assert!(distinct.len() > 95);
        assert_eq!(random_lagrangian(&f, 5).unwrap(), random_lagrangian(&f, 5).unwrap());
        assert!(random_lagrangian(&Rationals, 1).is_ok());
        assert!(matches!(
            random_lagrangian(&PrimeField::new(2).unwrap(), 1),
            Err(EpwError::CharacteristicTwo(2))
        ));
    }

    #[test]
    fn asymmetric_graph_breaks_isotropy() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let mut n = random_symmetric(&f, &mut rng);
            let i = rng.gen_range(0..10);
            let j = (i + rng.gen_range(1..10)) % 10;
            n[i][j] = f.add(&n[i][j], &1);
            assert!(!is_isotropic(&graph_subspace(&f, &n)));
        }
    }

    #[test]
    fn completion_examples() {
        let q = Rationals;
        let zero = Subspace::zero(&q, 20);
        assert_eq!(complete_to_lagrangian(&zero).unwrap(), l0(&q).unwrap());
        let s = Subspace::span(&q, 20, vec![e(&q, &[4, 5, 6])]);
        let a = complete_to_lagrangian(&s).unwrap();
        assert!(a.space().contains(&e(&q, &[4, 5, 6])));
        let l1 = l1(&q).unwrap();
        assert_eq!(complete_to_lagrangian(l1.space()).unwrap(), l1);
        let bad = Subspace::span(&q, 20, vec![e(&q, &[1, 2, 3]), e(&q, &[4, 5, 6])]);
        assert!(matches!(complete_to_lagrangian(&bad), Err(EpwError::NotIsotropic(0, 1))));
    }

    #[test]
    fn completion_of_random_isotropic_pieces() {
        let f = PrimeField::new(11).unwrap();
        for seed in 0..20 {
            let a = random_lagrangian(&f, seed).unwrap();
            let part = Subspace::span(&f, 20, a.space().basis()[..(seed as usize % 7)].to_vec());
            let c = complete_to_lagrangian(&part).unwrap();
            assert!(part.is_subspace_of(c.space()));
            let r = complete_randomly(&part, seed).unwrap();
            assert!(part.is_subspace_of(r.space()));
        }
    }

    #[test]
    fn planes_constructor() {
        let q = Rationals;
        let u = coordinate_subspace(&q, &[1, 2, 3]);
        let a = lagrangian_with_planes(&q, &[u.clone()], 1).unwrap();
        assert!(a.space().contains(&e(&q, &[1, 2, 3])));
        assert_eq!(a.provenance().planes, Some(vec![vec![1, 2, 3]]));
        let u2 = coordinate_subspace(&q, &[1, 4, 5]);
        let b = lagrangian_with_planes(&q, &[u.clone(), u2], 2).unwrap();
        assert!(b.space().contains(&e(&q, &[1, 2, 3])) && b.space().contains(&e(&q, &[1, 4, 5])));
        let u3 = coordinate_subspace(&q, &[4, 5, 6]);
        assert!(matches!(lagrangian_with_planes(&q, &[u, u3], 3), Err(EpwError::DisjointPlanes(0, 1))));
    }

    #[test]
    fn dual_transport_examples() {
        let q = Rationals;
        let d = dual_transport(&l0(&q).unwrap()).unwrap();
        assert_eq!(d, l1(&q).unwrap());
        let f = PrimeField::new(7).unwrap();
        for seed in 0..50 {
            let a = random_lagrangian(&f, seed).unwrap();
            let d = dual_transport(&a).unwrap();
            assert!(is_isotropic(d.space()));
            assert_eq!(dual_transport(&d).unwrap(), a);
        }
    }

    #[test]
    fn fiber_rank_is_upper_semicontinuous_in_pencils() {
        // dim(A_t cap F_v) along the pencil graph(N0 + t N1) exceeds its
        // generic value at no more than 10 parameters
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let n0 = random_symmetric(&f, &mut rng);
            let n1 = random_symmetric(&f, &mut rng);
            let v = KVector::vector((0..6).map(|_| rng.gen_range(0..101)).collect());
            let fv = fiber_f(&f, &v);
            let dims: Vec<usize> = f
                .elements()
                .map(|t| {
                    let n: Vec<Vec<u64>> = (0..10)
                        .map(|i| (0..10).map(|j| f.add(&n0[i][j], &f.mul(&t, &n1[i][j]))).collect())
                        .collect();
                    graph_subspace(&f, &n).intersection_dim(&fv)
                })
                .collect();
            let generic = *dims.iter().min().unwrap();
            assert!(dims.iter().filter(|&&d| d > generic).count() <= 10);
        }
    }
}

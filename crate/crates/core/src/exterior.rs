//! The exterior algebra of a fixed six-dimensional space `W` with basis
//! `e1..e6`.
//!
//! A basis k-vector `e_I` is identified by the bitmask of its index set `I`
//! (bit `i-1` for `e_i`). Coefficients of a [`KVector`] of grade `k` live in
//! `C(6,k)` slots, ordered lexicographically by the sorted index tuple, so
//! `slot 0 = e123`, `slot 1 = e124`, ..., `slot 19 = e456` in grade 3.
//! Every sign is the parity of a merge permutation, computed by counting
//! inversions between two index sets.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{EpwError, Result};
use crate::field::Field;

pub const DIM: usize = 6;
/// Bitmask of `e123456`.
pub const FULL: u8 = 0b11_1111;

/// Binomial coefficient `C(6, k)`.
pub const fn slots_in_grade(k: usize) -> usize {
    [1, 6, 15, 20, 15, 6, 1][k]
}

struct Tables {
    /// masks of each grade, lex order of sorted index tuples
    masks: [Vec<u8>; DIM + 1],
    /// position of a mask inside its grade
    slot: [usize; 64],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut masks: [Vec<u8>; DIM + 1] = Default::default();
        let mut slot = [0usize; 64];
        for (k, list) in masks.iter_mut().enumerate() {
            let mut all: Vec<Vec<u8>> = (0u8..64)
                .filter(|m| m.count_ones() as usize == k)
                .map(indices_of)
                .collect();
            all.sort();
            for (pos, idx) in all.iter().enumerate() {
                let m = mask_of(idx);
                slot[m as usize] = pos;
                list.push(m);
            }
        }
        Tables { masks, slot }
    })
}

/// 1-based sorted indices of a mask.
pub fn indices_of(mask: u8) -> Vec<u8> {
    (0..DIM as u8).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Mask of a list of 1-based indices (duplicates collapse).
pub fn mask_of(indices: &[u8]) -> u8 {
    indices.iter().fold(0u8, |m, &i| m | 1 << (i - 1))
}

/// Basis masks of a grade in slot order.
pub fn grade_masks(k: usize) -> &'static [u8] {
    &tables().masks[k]
}

pub fn slot_of(mask: u8) -> usize {
    tables().slot[mask as usize]
}

/// Sign of the permutation sorting the concatenation `I ++ J` (disjoint sets).
#[inline]
pub fn merge_sign(i: u8, j: u8) -> i64 {
    debug_assert_eq!(i & j, 0);
    // count pairs (a in I, b in J) with a > b
    let mut inv = 0u32;
    let mut rest = i;
    while rest != 0 {
        let a = rest.trailing_zeros();
        inv += (j & ((1u8 << a) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sgn(I, I-complement)`: the sign table shared by every identification
/// `wedge^k W -> wedge^(6-k) W*` used in the crate.
#[inline]
pub fn complement_sign(i: u8) -> i64 {
    merge_sign(i, FULL & !i)
}

/// An element of `wedge^k W` (or of `wedge^k W*`; coordinates are the same).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KVector<E> {
    grade: usize,
    coeffs: Vec<E>,
}

impl<E: Clone> KVector<E> {
    pub fn zero<F: Field<El = E>>(f: &F, grade: usize) -> Self {
        assert!(grade <= DIM, "grade {grade} exceeds 6");
        KVector {
            grade,
            coeffs: vec![f.zero(); slots_in_grade(grade)],
        }
    }

    /// Builds from a full coefficient array in slot order.
    pub fn from_coeffs(grade: usize, coeffs: Vec<E>) -> Self {
        assert!(grade <= DIM);
        assert_eq!(coeffs.len(), slots_in_grade(grade), "wrong coefficient count");
        KVector { grade, coeffs }
    }

    /// `e_{i1..ik}` from 1-based indices in any order; the sign of sorting is applied.
    pub fn basis<F: Field<El = E>>(f: &F, indices: &[u8]) -> Self {
        let mut v = KVector::zero(f, indices.len());
        let mask = mask_of(indices);
        if mask.count_ones() as usize != indices.len() {
            return v;
        }
        let mut sign = 1;
        for a in 0..indices.len() {
            for b in a + 1..indices.len() {
                if indices[a] > indices[b] {
                    sign = -sign;
                }
            }
        }
        v.coeffs[slot_of(mask)] = f.from_i64(sign);
        v
    }

    pub fn basis_mask<F: Field<El = E>>(f: &F, mask: u8) -> Self {
        let mut v = KVector::zero(f, mask.count_ones() as usize);
        v.coeffs[slot_of(mask)] = f.one();
        v
    }

    /// Vector of `W` from six coordinates.
    pub fn vector(coords: Vec<E>) -> Self {
        KVector::from_coeffs(1, coords)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff(&self, mask: u8) -> &E {
        debug_assert_eq!(mask.count_ones() as usize, self.grade);
        &self.coeffs[slot_of(mask)]
    }

    /// Nonzero terms as (mask, coefficient) in slot order.
    pub fn terms<'a, F: Field<El = E>>(&'a self, f: &'a F) -> impl Iterator<Item = (u8, &'a E)> + 'a {
        grade_masks(self.grade)
            .iter()
            .zip(&self.coeffs)
            .filter(move |(_, c)| !f.is_zero(c))
            .map(|(m, c)| (*m, c))
    }

    pub fn is_zero<F: Field<El = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    pub fn add<F: Field<El = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.grade, other.grade, "adding different grades");
        KVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<El = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.grade, other.grade, "subtracting different grades");
        KVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<El = E>>(&self, f: &F, s: &E) -> Self {
        KVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|c| f.mul(c, s)).collect(),
        }
    }

    /// Coefficient of `e123456` in a top-degree element.
    pub fn top<F: Field<El = E>>(&self, _f: &F) -> E {
        assert_eq!(self.grade, DIM, "not a top-degree form");
        self.coeffs[0].clone()
    }
}

/// Linear combination `sum c_i v_i` of same-grade vectors.
pub fn combine<F: Field>(f: &F, grade: usize, terms: &[(F::El, &KVector<F::El>)]) -> KVector<F::El> {
    let mut out = KVector::zero(f, grade);
    for (c, v) in terms {
        assert_eq!(v.grade, grade);
        for (o, x) in out.coeffs.iter_mut().zip(&v.coeffs) {
            f.mul_add_assign(o, c, x);
        }
    }
    out
}

/// `a ^ b`. Panics when the grades sum past 6.
pub fn wedge<F: Field>(f: &F, a: &KVector<F::El>, b: &KVector<F::El>) -> KVector<F::El> {
    let k = a.grade + b.grade;
    assert!(k <= DIM, "wedge grade overflow: {} + {}", a.grade, b.grade);
    let mut out = KVector::zero(f, k);
    for (ma, ca) in a.terms(f) {
        for (mb, cb) in b.terms(f) {
            if ma & mb != 0 {
                continue;
            }
            let prod = f.mul(ca, cb);
            let slot = slot_of(ma | mb);
            if merge_sign(ma, mb) > 0 {
                f.add_assign(&mut out.coeffs[slot], &prod);
            } else {
                f.sub_assign(&mut out.coeffs[slot], &prod);
            }
        }
    }
    out
}

/// A linear form on `W` in the dual basis `e1*..e6*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualVector<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> DualVector<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), DIM);
        DualVector { coeffs }
    }

    pub fn basis<F: Field<El = E>>(f: &F, i: usize) -> Self {
        let mut c = vec![f.zero(); DIM];
        c[i - 1] = f.one();
        DualVector { coeffs: c }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn eval<F: Field<El = E>>(&self, f: &F, v: &KVector<E>) -> E {
        assert_eq!(v.grade(), 1);
        let mut acc = f.zero();
        for (a, b) in self.coeffs.iter().zip(v.coeffs()) {
            f.mul_add_assign(&mut acc, a, b);
        }
        acc
    }

    pub fn is_zero<F: Field<El = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }
}

/// Interior product `iota_v(w)`. Panics on grade 0.
pub fn contract<F: Field>(f: &F, v: &DualVector<F::El>, w: &KVector<F::El>) -> KVector<F::El> {
    assert!(w.grade >= 1, "cannot contract a scalar");
    let mut out = KVector::zero(f, w.grade - 1);
    for (m, c) in w.terms(f) {
        let mut pos = 0;
        for i in 0..DIM {
            if m >> i & 1 == 0 {
                continue;
            }
            if !f.is_zero(&v.coeffs[i]) {
                let t = f.mul(&v.coeffs[i], c);
                let slot = slot_of(m & !(1 << i));
                if pos % 2 == 0 {
                    f.add_assign(&mut out.coeffs[slot], &t);
                } else {
                    f.sub_assign(&mut out.coeffs[slot], &t);
                }
            }
            pos += 1;
        }
    }
    out
}

/// The wedge pairing on `wedge^3 W`: coefficient of `e123456` in `a ^ b`.
pub fn symplectic_form<F: Field>(f: &F, a: &KVector<F::El>, b: &KVector<F::El>) -> F::El {
    assert!(a.grade == 3 && b.grade == 3, "symplectic form needs trivectors");
    let mut acc = f.zero();
    for (m, ca) in a.terms(f) {
        let comp = FULL & !m;
        let cb = &b.coeffs[slot_of(comp)];
        if f.is_zero(cb) {
            continue;
        }
        let t = f.mul(ca, cb);
        if complement_sign(m) > 0 {
            f.add_assign(&mut acc, &t);
        } else {
            f.sub_assign(&mut acc, &t);
        }
    }
    acc
}

/// Coordinatewise pairing `sum a_I b_I` between `wedge^k W*` and `wedge^k W`.
pub fn pairing<F: Field>(f: &F, a: &KVector<F::El>, b: &KVector<F::El>) -> F::El {
    assert_eq!(a.grade, b.grade);
    let mut acc = f.zero();
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        f.mul_add_assign(&mut acc, x, y);
    }
    acc
}

/// `wedge^k W -> wedge^(6-k) W*`, `e_I -> sgn(I, I') e*_{I'}`. On trivectors
/// this is the isomorphism `wedge^3 W = wedge^3 W*` induced by the wedge pairing:
/// `sigma(a, b) = pairing(volume_dual(a), b)`.
pub fn volume_dual<F: Field>(f: &F, w: &KVector<F::El>) -> KVector<F::El> {
    let mut out = KVector::zero(f, DIM - w.grade);
    for (m, c) in w.terms(f) {
        let slot = slot_of(FULL & !m);
        out.coeffs[slot] = if complement_sign(m) > 0 { c.clone() } else { f.neg(c) };
    }
    out
}

/// `wedge^5 W -> W*`: the functional `u -> [x ^ u]` (coefficient of the volume form).
pub fn five_form_to_dual<F: Field>(f: &F, x: &KVector<F::El>) -> DualVector<F::El> {
    assert_eq!(x.grade, 5, "expected a 5-form");
    let v = volume_dual(f, x);
    DualVector::new(v.coeffs)
}

/// `W* -> wedge^5 W`, inverse of [`five_form_to_dual`].
pub fn dual_to_five_form<F: Field>(f: &F, w: &DualVector<F::El>) -> KVector<F::El> {
    let mut out = KVector::zero(f, 5);
    for i in 0..DIM {
        let c = &w.coeffs[i];
        if f.is_zero(c) {
            continue;
        }
        let m = FULL & !(1u8 << i);
        out.coeffs[slot_of(m)] = if complement_sign(m) > 0 { c.clone() } else { f.neg(c) };
    }
    out
}

/// Requires odd characteristic or the rationals.
pub fn require_symplectic<F: Field>(f: &F) -> Result<()> {
    if f.characteristic() == 2 {
        Err(EpwError::CharacteristicTwo(2))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(f: &Rationals, idx: &[u8]) -> KVector<num_rational::BigRational> {
        KVector::basis(f, idx)
    }

    #[test]
    fn slot_layout() {
        assert_eq!(grade_masks(3).len(), 20);
        assert_eq!(grade_masks(2).len(), 15);
        assert_eq!(indices_of(grade_masks(3)[0]), vec![1, 2, 3]);
        assert_eq!(indices_of(grade_masks(3)[1]), vec![1, 2, 4]);
        assert_eq!(indices_of(grade_masks(3)[19]), vec![4, 5, 6]);
        assert_eq!(indices_of(grade_masks(2)[5]), vec![2, 3]);
    }

    #[test]
    fn wedge_examples() {
        let q = Rationals;
        assert_eq!(wedge(&q, &e(&q, &[1]), &e(&q, &[2, 3])), e(&q, &[1, 2, 3]));
        let neg = wedge(&q, &e(&q, &[2]), &e(&q, &[1, 3]));
        assert_eq!(neg, e(&q, &[1, 2, 3]).scale(&q, &q.from_i64(-1)));
        assert!(wedge(&q, &e(&q, &[1, 2]), &e(&q, &[1, 3])).is_zero(&q));
    }

    #[test]
    #[should_panic(expected = "grade overflow")]
    fn wedge_overflow_panics() {
        let q = Rationals;
        wedge(&q, &e(&q, &[1, 2, 3, 4]), &e(&q, &[5, 6, 1]));
    }

    #[test]
    fn contract_examples() {
        let q = Rationals;
        let v = DualVector::basis(&q, 1);
        assert_eq!(contract(&q, &v, &e(&q, &[1, 2, 3])), e(&q, &[2, 3]));
        assert!(contract(&q, &DualVector::basis(&q, 4), &e(&q, &[1, 2, 3])).is_zero(&q));
        let w = e(&q, &[1, 2, 3]).add(&q, &e(&q, &[1, 4, 5]));
        assert_eq!(contract(&q, &v, &w), e(&q, &[2, 3]).add(&q, &e(&q, &[4, 5])));
    }

    #[test]
    #[should_panic(expected = "cannot contract")]
    fn contract_scalar_panics() {
        let q = Rationals;
        contract(&q, &DualVector::basis(&q, 1), &KVector::basis_mask(&q, 0));
    }

    #[test]
    fn symplectic_examples() {
        let q = Rationals;
        let s = |a: &[u8], b: &[u8]| symplectic_form(&q, &e(&q, a), &e(&q, b));
        assert_eq!(s(&[1, 2, 3], &[4, 5, 6]), q.from_i64(1));
        assert_eq!(s(&[4, 5, 6], &[1, 2, 3]), q.from_i64(-1));
        assert_eq!(s(&[1, 2, 3], &[1, 4, 5]), q.zero());
    }

    #[test]
    fn volume_dual_examples() {
        let q = Rationals;
        assert_eq!(volume_dual(&q, &e(&q, &[1, 2, 3])), e(&q, &[4, 5, 6]));
        assert_eq!(
            volume_dual(&q, &e(&q, &[4, 5, 6])),
            e(&q, &[1, 2, 3]).scale(&q, &q.from_i64(-1))
        );
    }

    #[test]
    fn graded_anticommutativity_on_basis() {
        let f = PrimeField::new(7).unwrap();
        for j in 0..=DIM {
            for k in 0..=DIM - j {
                for &a in grade_masks(j) {
                    for &b in grade_masks(k) {
                        let x = KVector::basis_mask(&f, a);
                        let y = KVector::basis_mask(&f, b);
                        let lhs = wedge(&f, &x, &y);
                        let rhs = wedge(&f, &y, &x);
                        let sign = if (j * k) % 2 == 0 { 1 } else { -1 };
                        assert_eq!(lhs, rhs.scale(&f, &f.from_i64(sign)));
                    }
                }
            }
        }
    }

    #[test]
    fn symplectic_support_is_complementary_pairs() {
        let f = PrimeField::new(5).unwrap();
        for &a in grade_masks(3) {
            for &b in grade_masks(3) {
                let s = symplectic_form(&f, &KVector::basis_mask(&f, a), &KVector::basis_mask(&f, b));
                assert_eq!(s != 0, b == FULL & !a);
            }
        }
    }

    #[test]
    fn gram_matrix_nondegenerate() {
        for p in [3u64, 5, 7, 10007] {
            let f = PrimeField::new(p).unwrap();
            let rows: Vec<Vec<u64>> = grade_masks(3)
                .iter()
                .map(|&a| {
                    grade_masks(3)
                        .iter()
                        .map(|&b| symplectic_form(&f, &KVector::basis_mask(&f, a), &KVector::basis_mask(&f, b)))
                        .collect()
                })
                .collect();
            assert_eq!(crate::linalg::rank(&f, rows), 20);
        }
    }

    fn random_kvector(f: &PrimeField, rng: &mut ChaCha8Rng, k: usize) -> KVector<u64> {
        KVector::from_coeffs(k, (0..slots_in_grade(k)).map(|_| rng.gen_range(0..f.p())).collect())
    }

    #[test]
    fn random_algebra_laws() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_kvector(&f, &mut rng, 3);
            let b = random_kvector(&f, &mut rng, 3);
            // sigma matches the volume-dual pairing
            assert_eq!(symplectic_form(&f, &a, &b), pairing(&f, &volume_dual(&f, &a), &b));
            assert_eq!(symplectic_form(&f, &a, &b), f.neg(&symplectic_form(&f, &b, &a)));
            // associativity
            let x = random_kvector(&f, &mut rng, 1);
            let y = random_kvector(&f, &mut rng, 2);
            assert_eq!(wedge(&f, &wedge(&f, &x, &y), &a), wedge(&f, &x, &wedge(&f, &y, &a)));
            // graded Leibniz
            let v = DualVector::new((0..6).map(|_| rng.gen_range(0..f.p())).collect());
            let lhs = contract(&f, &v, &wedge(&f, &y, &a));
            let rhs = wedge(&f, &contract(&f, &v, &y), &a).add(&f, &wedge(&f, &y, &contract(&f, &v, &a)));
            assert_eq!(lhs, rhs);
            // volume_dual twice is -id on trivectors
            assert_eq!(volume_dual(&f, &volume_dual(&f, &a)), a.scale(&f, &f.from_i64(-1)));
        }
    }

    #[test]
    fn contraction_is_adjoint_to_wedge() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=DIM {
            for _ in 0..10 {
                let w = random_kvector(&f, &mut rng, k);
                let coords: Vec<u64> = (0..6).map(|_| rng.gen_range(0..f.p())).collect();
                let v = DualVector::new(coords.clone());
                let vv = KVector::vector(coords);
                let c = contract(&f, &v, &w);
                for &t in grade_masks(k - 1) {
                    let tau = KVector::basis_mask(&f, t);
                    assert_eq!(pairing(&f, &c, &tau), pairing(&f, &w, &wedge(&f, &vv, &tau)));
                }
            }
        }
    }

    #[test]
    fn five_forms_and_duals_roundtrip() {
        let f = PrimeField::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random_kvector(&f, &mut rng, 5);
            let w = five_form_to_dual(&f, &x);
            assert_eq!(dual_to_five_form(&f, &w), x);
            let u = random_kvector(&f, &mut rng, 1);
            assert_eq!(w.eval(&f, &u), wedge(&f, &x, &u).top(&f));
        }
    }
}

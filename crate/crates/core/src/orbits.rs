//! Orbit geometry of trivectors under `PGL(W)`.
//!
//! `O3 = G(3,W)` is the locus of decomposable trivectors and `O2` the locus of
//! trivectors divisible by a vector. Membership is decided by the dimension of
//! the divisor kernel `{v : v ^ w = 0}`, which is 3 on `O3`, 1 on `O2 \ O3`
//! and 0 elsewhere. On `O2 \ O3` the two fibrations are
//! `pi1: [a ^ b] -> [a]` and `pi2: [a ^ b] -> [a ^ b ^ b]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EpwError, Result};
use crate::exterior::{
    contract, five_form_to_dual, grade_masks, symplectic_form, wedge, DualVector, KVector, DIM,
};
use crate::field::Field;
use crate::linalg::{kernel, normalize_projective, rank, Subspace};

pub type Trivector<E> = KVector<E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    Grassmannian,
    PureO2,
    OutsideO2,
}

impl OrbitLabel {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitLabel::Grassmannian => "Grassmannian",
            OrbitLabel::PureO2 => "PureO2",
            OrbitLabel::OutsideO2 => "OutsideO2",
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rows `e_i ^ w` (15 coordinates each) of the map `W -> wedge^4 W`.
fn divisor_rows<F: Field>(f: &F, w: &Trivector<F::El>) -> Vec<Vec<F::El>> {
    (0..DIM)
        .map(|i| wedge(f, &KVector::basis_mask(f, 1 << i), w).into_coeffs())
        .collect()
}

fn check_trivector<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<()> {
    assert_eq!(w.grade(), 3, "expected a trivector");
    if w.is_zero(f) {
        Err(EpwError::ZeroTrivector)
    } else {
        Ok(())
    }
}

/// Kernel of `v -> v ^ w` as a subspace of `W`.
pub fn divisor_kernel<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<Subspace<F>> {
    check_trivector(f, w)?;
    let rows = divisor_rows(f, w);
    // columns of the 15x6 matrix are the rows above
    let system: Vec<Vec<F::El>> = (0..15)
        .map(|r| rows.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(Subspace::span(f, DIM, kernel(f, &system, DIM)))
}

/// Dimension of the divisor kernel, without building a basis.
pub fn divisor_kernel_dim<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<usize> {
    check_trivector(f, w)?;
    Ok(DIM - rank(f, divisor_rows(f, w)))
}

pub fn label_for_kernel_dim(dim: usize) -> Result<OrbitLabel> {
    match dim {
        3 => Ok(OrbitLabel::Grassmannian),
        1 => Ok(OrbitLabel::PureO2),
        0 => Ok(OrbitLabel::OutsideO2),
        d => Err(EpwError::Internal(format!(
            "divisor kernel of dimension {d} is impossible for a nonzero trivector"
        ))),
    }
}

pub fn classify<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<OrbitLabel> {
    label_for_kernel_dim(divisor_kernel_dim(f, w)?)
}

fn require_pure<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<Subspace<F>> {
    let ker = divisor_kernel(f, w)?;
    let label = label_for_kernel_dim(ker.dim())?;
    if label != OrbitLabel::PureO2 {
        return Err(EpwError::WrongStratum {
            expected: "PureO2",
            found: label.name(),
        });
    }
    Ok(ker)
}

/// A factorization `w = a ^ b` of a point of `O2 \ O3`, with `a` normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub vector: KVector<E>,
    pub two_form: KVector<E>,
}

/// Writes `w = a ^ b` with `a` spanning the divisor kernel. With `j` the first
/// nonzero coordinate of the normalized `a`, `b = iota_{e_j*} w` works because
/// `iota_{e_j*}(a ^ w) = w - a ^ iota_{e_j*} w` and `a ^ w = 0`.
pub fn factor<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<Factorization<F::El>> {
    let ker = require_pure(f, w)?;
    let mut a = ker.basis()[0].clone();
    normalize_projective(f, &mut a);
    let j = a.iter().position(|x| !f.is_zero(x)).expect("nonzero kernel vector");
    let b = contract(f, &DualVector::basis(f, j + 1), w);
    Ok(Factorization {
        vector: KVector::vector(a),
        two_form: b,
    })
}

/// `pi1`: the normalized generator of the divisor kernel.
pub fn pi1<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<KVector<F::El>> {
    Ok(factor(f, w)?.vector)
}

/// `[a ^ b ^ b]` read as a linear form through `u -> [a ^ b ^ b ^ u]`.
pub fn pi2_from_factors<F: Field>(f: &F, a: &KVector<F::El>, b: &KVector<F::El>) -> DualVector<F::El> {
    let five = wedge(f, &wedge(f, a, b), b);
    let mut coeffs = five_form_to_dual(f, &five).coeffs().to_vec();
    normalize_projective(f, &mut coeffs);
    DualVector::new(coeffs)
}

/// `pi2`. In characteristic 2 the square `b ^ b` vanishes, so the map is not
/// defined there.
pub fn pi2<F: Field>(f: &F, w: &Trivector<F::El>) -> Result<DualVector<F::El>> {
    crate::exterior::require_symplectic(f)?;
    let fac = factor(f, w)?;
    let out = pi2_from_factors(f, &fac.vector, &fac.two_form);
    if out.is_zero(f) {
        return Err(EpwError::Internal("a ^ b ^ b vanished on O2 \\ O3".into()));
    }
    Ok(out)
}

pub fn trivector_span<F: Field>(f: &F, vecs: impl IntoIterator<Item = KVector<F::El>>) -> Subspace<F> {
    Subspace::span(f, 20, vecs.into_iter().map(|v| v.into_coeffs()).collect())
}

/// `F_v = v ^ wedge^2 W`, a 10-dimensional isotropic subspace.
pub fn fiber_f<F: Field>(f: &F, v: &KVector<F::El>) -> Subspace<F> {
    assert_eq!(v.grade(), 1);
    assert!(!v.is_zero(f), "fiber over the zero vector");
    trivector_span(
        f,
        grade_masks(2).iter().map(|&m| wedge(f, v, &KVector::basis_mask(f, m))),
    )
}

/// Basis of `ker w` inside `W`.
pub fn dual_kernel<F: Field>(f: &F, w: &DualVector<F::El>) -> Vec<KVector<F::El>> {
    kernel(f, &[w.coeffs().to_vec()], DIM)
        .into_iter()
        .map(KVector::vector)
        .collect()
}

/// `F'_w = wedge^3 (ker w)`.
pub fn fiber_f_prime<F: Field>(f: &F, w: &DualVector<F::El>) -> Subspace<F> {
    assert!(!w.is_zero(f), "fiber over the zero form");
    let k = dual_kernel(f, w);
    let mut vecs = Vec::new();
    for a in 0..k.len() {
        for b in a + 1..k.len() {
            for c in b + 1..k.len() {
                vecs.push(wedge(f, &wedge(f, &k[a], &k[b]), &k[c]));
            }
        }
    }
    trivector_span(f, vecs)
}

/// `Pi = W ^ b` for `p = a ^ b`.
pub fn pi_space<F: Field>(f: &F, p: &Trivector<F::El>) -> Result<Subspace<F>> {
    let fac = factor(f, p)?;
    Ok(trivector_span(
        f,
        (0..DIM).map(|i| wedge(f, &KVector::basis_mask(f, 1 << i), &fac.two_form)),
    ))
}

/// Affine tangent space to `O2` at a point of `O2 \ O3`: the span of the two
/// fibers through `p` and of `Pi`.
pub fn tangent_o2<F: Field>(f: &F, p: &Trivector<F::El>) -> Result<Subspace<F>> {
    let a = pi1(f, p)?;
    let w = pi2(f, p)?;
    Ok(fiber_f(f, &a).sum(&fiber_f_prime(f, &w)).sum(&pi_space(f, p)?))
}

/// `Sigma_p = {h : sigma(h, p) = 0}`.
pub fn sigma_hyperplane<F: Field>(f: &F, p: &Trivector<F::El>) -> Result<Subspace<F>> {
    require_pure(f, p)?;
    let row: Vec<F::El> = grade_masks(3)
        .iter()
        .map(|&m| symplectic_form(f, &KVector::basis_mask(f, m), p))
        .collect();
    Ok(Subspace::span(f, 20, kernel(f, &[row], 20)))
}

/// The quadric `w -> [iota_v(w) ^ w ^ g]` on `wedge^3 W`.
pub fn quadric_q<F: Field>(f: &F, v: &DualVector<F::El>, g: &KVector<F::El>, w: &Trivector<F::El>) -> F::El {
    assert_eq!(g.grade(), 1);
    wedge(f, &wedge(f, &contract(f, v, w), w), g).top(f)
}

/// Affine tangent space `wedge^2 U ^ W` to `G(3,W)` at `[e_U]`.
pub fn tangent_g<F: Field>(f: &F, u: &Subspace<F>) -> Result<Subspace<F>> {
    if u.ambient() != DIM || u.dim() != 3 {
        return Err(EpwError::WrongDimension {
            expected: 3,
            found: u.dim(),
        });
    }
    let b: Vec<KVector<F::El>> = u.basis().iter().cloned().map(KVector::vector).collect();
    let mut vecs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let bij = wedge(f, &b[i], &b[j]);
            for k in 0..DIM {
                vecs.push(wedge(f, &bij, &KVector::basis_mask(f, 1 << k)));
            }
        }
    }
    Ok(trivector_span(f, vecs))
}

/// Plücker vector `u1 ^ u2 ^ u3` of a 3-space given by any basis.
pub fn plucker<F: Field>(f: &F, basis: &[Vec<F::El>]) -> KVector<F::El> {
    assert_eq!(basis.len(), 3);
    let v: Vec<KVector<F::El>> = basis.iter().cloned().map(KVector::vector).collect();
    wedge(f, &wedge(f, &v[0], &v[1]), &v[2])
}

/// Subspace of `W` spanned by 1-based coordinate indices, e.g. `<e1,e2,e3>`.
pub fn coordinate_subspace<F: Field>(f: &F, indices: &[u8]) -> Subspace<F> {
    Subspace::span(
        f,
        DIM,
        indices
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); DIM];
                v[i as usize - 1] = f.one();
                v
            })
            .collect(),
    )
}

//! Dense linear algebra over a [`Field`]: row reduction, rank, kernels and
//! subspaces in canonical reduced row-echelon form.

use crate::field::Field;

/// Reduces `rows` in place to reduced row-echelon form, drops zero rows and
/// returns the pivot columns.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::El>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r][c..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(p) {
                    let t = f.mul(&factor, p);
                    f.sub_assign(x, &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(f: &F, mut rows: Vec<Vec<F::El>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for (x, p) in row[c..].iter_mut().zip(&prow[c..]) {
                if !f.is_zero(p) {
                    let t = f.mul(&factor, p);
                    f.sub_assign(x, &t);
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::El>], ncols: usize) -> Vec<Vec<F::El>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = f.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(f: &F, mut m: Vec<Vec<F::El>>) -> F::El {
    let n = m.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
            return f.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[c][c]);
        let inv = f.inv(&m[c][c]);
        let (top, bottom) = m.split_at_mut(c + 1);
        let prow = &top[c];
        for row in bottom.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for (x, p) in row[c..].iter_mut().zip(&prow[c..]) {
                let t = f.mul(&factor, p);
                f.sub_assign(x, &t);
            }
        }
    }
    det
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize_projective<F: Field>(f: &F, v: &mut [F::El]) {
    if let Some(lead) = v.iter().find(|x| !f.is_zero(x)).cloned() {
        let inv = f.inv(&lead);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
    }
}

/// A linear subspace of `F^n`, stored as its reduced row-echelon basis.
/// Two subspaces are equal iff their echelon matrices agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::El>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(f: &F, ambient: usize, vectors: Vec<Vec<F::El>>) -> Self {
        let mut rows = vectors;
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length does not match ambient dimension");
        }
        let pivots = rref(f, &mut rows);
        Subspace {
            field: f.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(f: &F, ambient: usize) -> Self {
        Subspace::span(f, ambient, Vec::new())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis.
    pub fn basis(&self) -> &[Vec<F::El>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[F::El]) -> bool {
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&r[p]) {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                let t = f.mul(&c, y);
                f.sub_assign(x, &t);
            }
        }
        r.iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, v)
    }

    pub fn intersection_dim(&self, other: &Self) -> usize {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        self.dim() + other.dim() - rank(&self.field, v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let f = &self.field;
        // solve sum a_i u_i - sum b_j w_j = 0 over the columns (u_i | w_j)
        let k = self.dim();
        let cols: Vec<&Vec<F::El>> = self.rows.iter().chain(other.rows.iter()).collect();
        let system: Vec<Vec<F::El>> = (0..self.ambient)
            .map(|c| {
                cols.iter()
                    .enumerate()
                    .map(|(j, v)| if j < k { v[c].clone() } else { f.neg(&v[c]) })
                    .collect()
            })
            .collect();
        let ker = kernel(f, &system, cols.len());
        let vecs = ker
            .iter()
            .map(|coef| {
                let mut out = vec![f.zero(); self.ambient];
                for (a, u) in coef[..k].iter().zip(&self.rows) {
                    for (o, x) in out.iter_mut().zip(u) {
                        f.mul_add_assign(o, a, x);
                    }
                }
                out
            })
            .collect();
        Subspace::span(f, self.ambient, vecs)
    }

    /// Vector with the given coordinates against the echelon basis.
    pub fn vector_from_coords(&self, coords: &[F::El]) -> Vec<F::El> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (a, u) in coords.iter().zip(&self.rows) {
            if f.is_zero(a) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(u) {
                f.mul_add_assign(o, a, x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, m.clone()), 2);
        let ker = kernel(&f, &m, 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let s = row.iter().zip(&ker[0]).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn determinant_small() {
        let q = Rationals;
        let m: Vec<Vec<_>> = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        assert_eq!(determinant(&q, m), q.from_i64(18));
    }

    #[test]
    fn subspace_canonical_and_intersections() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::span(&f, 4, vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0]]);
        let b = Subspace::span(&f, 4, vec![vec![1, 0, 4, 0], vec![1, 2, 1, 0], vec![0, 0, 0, 0]]);
        assert_eq!(a, b);
        let c = Subspace::span(&f, 4, vec![vec![0, 1, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(a.intersection_dim(&c), 1);
        let i = a.intersection(&c);
        assert_eq!(i.dim(), 1);
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&c));
        assert_eq!(a.sum(&c).dim(), 3);
        assert!(a.contains(&[2, 3, 1, 0]));
        assert!(!a.contains(&[0, 0, 0, 1]));
    }
}

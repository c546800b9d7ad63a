//! Exhaustive enumeration of points of projective spaces and of the
//! Grassmannian `G(3,6)` over small prime fields.
//!
//! Points are addressed by a dense index so enumeration can be split across
//! workers and merged back in index order.

use rayon::prelude::*;

use crate::field::{Field, PrimeField};

/// `P^(n-1)(F_p)`: nonzero vectors of length `n` whose first nonzero
/// coordinate is 1.
#[derive(Clone, Copy, Debug)]
pub struct ProjectiveSpace {
    p: u64,
    n: usize,
}

impl ProjectiveSpace {
    pub fn new(f: &PrimeField, n: usize) -> Self {
        ProjectiveSpace { p: f.p(), n }
    }

    pub fn len(&self) -> u64 {
        (self.p.pow(self.n as u32) - 1) / (self.p - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Point number `idx`; points with the leading 1 further left come first,
    /// the tail runs through base-p counters with the last coordinate fastest.
    pub fn point(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for lead in 0..self.n {
            let block = self.p.pow((self.n - 1 - lead) as u32);
            if idx < block {
                v[lead] = 1;
                for j in (lead + 1..self.n).rev() {
                    v[j] = idx % self.p;
                    idx /= self.p;
                }
                return v;
            }
            idx -= block;
        }
        panic!("point index out of range");
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Parallel map over all points; results in index order.
    pub fn par_map<T, M>(&self, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(u64, Vec<u64>) -> T + Sync + Send,
    {
        (0..self.len())
            .into_par_iter()
            .map(|i| map(i, self.point(i)))
            .collect()
    }
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// All 3-dimensional subspaces of `F_q^6`, each given by the 3 rows of its
/// reduced echelon matrix. Ordered by pivot columns, then free entries.
pub fn grassmannian_3_6(f: &PrimeField) -> Vec<[Vec<u64>; 3]> {
    let q = f.p();
    let mut out = Vec::new();
    for c0 in 0..6 {
        for c1 in c0 + 1..6 {
            for c2 in c1 + 1..6 {
                let pivots = [c0, c1, c2];
                // free slots: (row, col) with col > pivot(row) and col not a pivot
                let free: Vec<(usize, usize)> = (0..3)
                    .flat_map(|r| {
                        (pivots[r] + 1..6)
                            .filter(|c| !pivots.contains(c))
                            .map(move |c| (r, c))
                    })
                    .collect();
                let total = q.pow(free.len() as u32);
                for mut code in 0..total {
                    let mut rows = [vec![0u64; 6], vec![0u64; 6], vec![0u64; 6]];
                    for (r, &c) in pivots.iter().enumerate() {
                        rows[r][c] = 1;
                    }
                    for &(r, c) in &free {
                        rows[r][c] = code % q;
                        code /= q;
                    }
                    out.push(rows);
                }
            }
        }
    }
    out
}

/// Iterates all coefficient vectors of `F_p^n` except zero, lexicographically.
pub fn nonzero_vectors(f: &PrimeField, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let p = f.p();
    let total = p.pow(n as u32);
    (1..total).map(move |mut code| {
        let mut v = vec![0u64; n];
        for j in (0..n).rev() {
            v[j] = code % p;
            code /= p;
        }
        v
    })
}

/// Projective normalization check helper.
pub fn is_normalized(f: &PrimeField, v: &[u64]) -> bool {
    v.iter().find(|x| !f.is_zero(x)) == Some(&1)
}

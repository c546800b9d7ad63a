//! Sparse polynomials in the six variables `x1..x6`.
//!
//! Terms are kept sorted by decreasing graded-lex order (higher total degree
//! first, ties broken lexicographically with `x1` most significant) with no
//! zero coefficients, so equal polynomials have identical term lists.

use std::collections::HashMap;

use crate::field::Field;

pub const NVARS: usize = 6;

pub type Exponent = [u8; NVARS];

/// Packs an exponent vector so that integer order is graded-lex order.
#[inline]
pub fn monomial_key(e: &Exponent) -> u64 {
    let deg: u64 = e.iter().map(|&x| x as u64).sum();
    let mut k = deg << 48;
    for (i, &x) in e.iter().enumerate() {
        k |= (x as u64) << (40 - 8 * i);
    }
    k
}

#[inline]
pub fn key_exponent(k: u64) -> Exponent {
    let mut e = [0u8; NVARS];
    for (i, x) in e.iter_mut().enumerate() {
        *x = (k >> (40 - 8 * i)) as u8;
    }
    e
}

pub fn degree_of(e: &Exponent) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<F: Field> {
    field: F,
    /// (key, coefficient), strictly decreasing keys, nonzero coefficients
    terms: Vec<(u64, F::El)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(f: &F) -> Self {
        MultiPoly {
            field: f.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(f: &F, c: F::El) -> Self {
        Self::from_terms(f, vec![([0; NVARS], c)])
    }

    /// `x_i` for a 0-based variable index.
    pub fn var(f: &F, i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::from_terms(f, vec![(e, f.one())])
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(f: &F, terms: impl IntoIterator<Item = (Exponent, F::El)>) -> Self {
        let mut map: HashMap<u64, F::El> = HashMap::new();
        for (e, c) in terms {
            let entry = map.entry(monomial_key(&e)).or_insert_with(|| f.zero());
            f.add_assign(entry, &c);
        }
        Self::from_map(f, map)
    }

    fn from_map(f: &F, map: HashMap<u64, F::El>) -> Self {
        let mut terms: Vec<(u64, F::El)> = map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { field: f.clone(), terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &F::El)> + '_ {
        self.terms.iter().map(|(k, c)| (key_exponent(*k), c))
    }

    pub fn leading(&self) -> Option<(Exponent, &F::El)> {
        self.terms.first().map(|(k, c)| (key_exponent(*k), c))
    }

    pub fn coeff(&self, e: &Exponent) -> F::El {
        let k = monomial_key(e);
        match self.terms.binary_search_by(|(x, _)| k.cmp(x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(k, _)| (k >> 48) as u32)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(k, _)| (k >> 48) as u32 == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j == other.terms.len() || (i < self.terms.len() && self.terms[i].0 > other.terms[j].0);
            let take_right = i == self.terms.len() || (j < other.terms.len() && other.terms[j].0 > self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                let c = f.add(&self.terms[i].1, &other.terms[j].1);
                if !f.is_zero(&c) {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly { field: f.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &F::El) -> Self {
        let f = &self.field;
        if f.is_zero(s) {
            return Self::zero(f);
        }
        MultiPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, f.mul(c, s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut map: HashMap<u64, F::El> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                // packed keys add componentwise, degree byte included
                let entry = map.entry(ka + kb).or_insert_with(|| f.zero());
                f.mul_add_assign(entry, ca, cb);
            }
        }
        Self::from_map(f, map)
    }

    pub fn eval(&self, point: &[F::El]) -> F::El {
        assert_eq!(point.len(), NVARS);
        let f = &self.field;
        // powers up to the largest exponent per variable
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<F::El>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(max_deg + 1);
                p.push(f.one());
                for d in 1..=max_deg {
                    let next = f.mul(&p[d - 1], x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = f.zero();
        for (k, c) in &self.terms {
            let e = key_exponent(*k);
            let mut t = c.clone();
            for v in 0..NVARS {
                if e[v] > 0 {
                    t = f.mul(&t, &powers[v][e[v] as usize]);
                }
            }
            f.add_assign(&mut acc, &t);
        }
        acc
    }

    /// `d/dx_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let f = &self.field;
        Self::from_terms(
            f,
            self.terms().filter(|(e, _)| e[i] > 0).map(|(mut e, c)| {
                let c = f.mul(c, &f.from_i64(e[i] as i64));
                e[i] -= 1;
                (e, c)
            }),
        )
    }

    /// Multiplies each term by `x_var^(degree - deg(term))`.
    pub fn homogenize(&self, var: usize, degree: u32) -> Option<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (mut e, c) in self.terms() {
            let d = degree_of(&e);
            if d > degree {
                return None;
            }
            e[var] += (degree - d) as u8;
            out.push((e, c.clone()));
        }
        Some(Self::from_terms(&self.field, out))
    }

    /// Exact division by `x_var^k`; `None` if some term has a smaller power.
    pub fn divide_by_var_power(&self, var: usize, k: u8) -> Option<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (mut e, c) in self.terms() {
            if e[var] < k {
                return None;
            }
            e[var] -= k;
            out.push((e, c.clone()));
        }
        Some(Self::from_terms(&self.field, out))
    }

    /// Sets the listed variables to zero.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Self {
        MultiPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| {
                    let e = key_exponent(*k);
                    vars.iter().all(|&v| e[v] == 0)
                })
                .cloned()
                .collect(),
        }
    }

    /// Substitutes `x_i -> sum_j m[i][j] y_j` (a linear change of variables).
    pub fn linear_substitution(&self, m: &[Vec<F::El>]) -> Self {
        let f = &self.field;
        let images: Vec<Self> = (0..NVARS)
            .map(|i| {
                Self::from_terms(
                    f,
                    (0..NVARS).map(|j| {
                        let mut e = [0; NVARS];
                        e[j] = 1;
                        (e, m[i][j].clone())
                    }),
                )
            })
            .collect();
        let mut acc = Self::zero(f);
        for (e, c) in self.terms() {
            let mut t = Self::constant(f, c.clone());
            for v in 0..NVARS {
                for _ in 0..e[v] {
                    t = t.mul(&images[v]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Scales to the canonical representative of the line through `self`
    /// (see [`Field::normalizer`]).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<F::El> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        let s = self.field.normalizer(&coeffs);
        self.scale(&s)
    }

    /// True if `self = c * other` for some nonzero scalar `c`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    pub fn map_coefficients<G: Field>(&self, g: &G, map: impl Fn(&F::El) -> G::El) -> MultiPoly<G> {
        MultiPoly::from_terms(g, self.terms().map(|(e, c)| (e, map(c))))
    }
}

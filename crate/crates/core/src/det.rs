//! Determinants of square matrices whose entries are affine-linear
//! polynomials in at most five variables.
//!
//! Two independent routes:
//!
//! * [`bareiss_determinant`]: fraction-free Bareiss elimination over the
//!   polynomial ring, with dense polynomials indexed by monomials of bounded
//!   degree. Works over every field.
//! * [`interpolated_determinant`]: evaluate the numeric determinant on the
//!   lattice simplex `{a in N^k : |a| <= n}`, recover Newton coefficients by
//!   forward differences and expand the binomial basis. Needs `char = 0` or
//!   `char > n`.
//! * [`modular_determinant`]: over `Q`, clear denominators row by row, run
//!   Bareiss modulo enough word-sized primes to exceed twice a coefficient
//!   bound, and recombine by the Chinese remainder theorem.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{EpwError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{common_denominator, is_prime, Field, PrimeField};
use crate::linalg::determinant;
use crate::poly::{Exponent, MultiPoly, NVARS};

const MAX_CHART_VARS: usize = 5;

/// Monomials in `nvars <= 5` variables of degree at most `max_deg`, indexed
/// in increasing graded-lex order so that polynomials of degree `<= d` fill
/// the prefix `0..len(d)`.
pub struct DenseSpace {
    nvars: usize,
    max_deg: usize,
    radix: usize,
    exps: Vec<[u8; MAX_CHART_VARS]>,
    codes: Vec<u32>,
    index_of_code: Vec<u32>,
    prefix: Vec<usize>,
}

impl DenseSpace {
    fn build(nvars: usize, max_deg: usize) -> Self {
        assert!(nvars <= MAX_CHART_VARS);
        let radix = max_deg + 1;
        let mut exps: Vec<[u8; MAX_CHART_VARS]> = Vec::new();
        let total = radix.pow(nvars as u32);
        for code in 0..total {
            let mut e = [0u8; MAX_CHART_VARS];
            let mut c = code;
            for x in e.iter_mut().take(nvars) {
                *x = (c % radix) as u8;
                c /= radix;
            }
            if e.iter().map(|&x| x as usize).sum::<usize>() <= max_deg {
                exps.push(e);
            }
        }
        // graded-lex ascending: degree, then exponent of variable 0, 1, ...
        exps.sort_by_key(|e| {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            (d, *e)
        });
        let code_of = |e: &[u8; MAX_CHART_VARS]| -> u32 {
            e.iter()
                .take(nvars)
                .rev()
                .fold(0usize, |acc, &x| acc * radix + x as usize) as u32
        };
        let codes: Vec<u32> = exps.iter().map(code_of).collect();
        let mut index_of_code = vec![u32::MAX; total];
        for (i, &c) in codes.iter().enumerate() {
            index_of_code[c as usize] = i as u32;
        }
        let mut prefix = vec![0usize; max_deg + 1];
        for (i, e) in exps.iter().enumerate() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            prefix[d] = i + 1;
        }
        DenseSpace {
            nvars,
            max_deg,
            radix,
            exps,
            codes,
            index_of_code,
            prefix,
        }
    }

    /// Shared instance for `(nvars, max_deg)`.
    pub fn get(nvars: usize, max_deg: usize) -> Arc<DenseSpace> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<DenseSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("dense space cache poisoned");
        guard
            .entry((nvars, max_deg))
            .or_insert_with(|| Arc::new(DenseSpace::build(nvars, max_deg)))
            .clone()
    }

    /// Number of monomials of degree `<= d`.
    pub fn len(&self, d: usize) -> usize {
        self.prefix[d.min(self.max_deg)]
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, idx: usize) -> &[u8] {
        &self.exps[idx][..self.nvars]
    }

    fn degree_at(&self, idx: usize) -> usize {
        self.exps[idx].iter().map(|&x| x as usize).sum()
    }

    #[inline]
    fn index(&self, code: u32) -> usize {
        self.index_of_code[code as usize] as usize
    }
}

/// Dense polynomial: coefficient of monomial `i` at position `i`; the vector
/// length is `space.len(deg)` for a degree bound `deg`.
#[derive(Clone, Debug)]
struct Dense<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Dense<E> {
    fn is_zero<F: Field<El = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    /// Drops trailing zero blocks so the length matches the true degree.
    fn trim<F: Field<El = E>>(&mut self, f: &F, s: &DenseSpace) {
        match self.coeffs.iter().rposition(|c| !f.is_zero(c)) {
            None => self.coeffs.clear(),
            Some(top) => self.coeffs.truncate(s.len(s.degree_at(top))),
        }
    }
}

fn dense_mul<F: Field>(f: &F, s: &DenseSpace, a: &Dense<F::El>, b: &Dense<F::El>) -> Dense<F::El> {
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return Dense { coeffs: Vec::new() };
    }
    let da = s.degree_at(a.coeffs.len() - 1);
    let db = s.degree_at(b.coeffs.len() - 1);
    let mut out = vec![f.zero(); s.len(da + db)];
    let bnz: Vec<(u32, &F::El)> = b
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(j, c)| (s.codes[j], c))
        .collect();
    for (i, ca) in a.coeffs.iter().enumerate() {
        if f.is_zero(ca) {
            continue;
        }
        let code_a = s.codes[i];
        for &(code_b, cb) in &bnz {
            let k = s.index(code_a + code_b);
            f.mul_add_assign(&mut out[k], ca, cb);
        }
    }
    Dense { coeffs: out }
}

fn dense_sub_assign<F: Field>(f: &F, a: &mut Dense<F::El>, b: &Dense<F::El>) {
    if a.coeffs.len() < b.coeffs.len() {
        a.coeffs.resize(b.coeffs.len(), f.zero());
    }
    for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
        if !f.is_zero(y) {
            f.sub_assign(x, y);
        }
    }
}

/// Exact division; `None` when the divisor does not divide.
fn dense_div_exact<F: Field>(f: &F, s: &DenseSpace, num: &Dense<F::El>, den: &Dense<F::El>) -> Option<Dense<F::El>> {
    let lt = den.coeffs.iter().rposition(|c| !f.is_zero(c))?;
    let lt_exp = s.exps[lt];
    let lt_code = s.codes[lt];
    let inv_lc = f.inv(&den.coeffs[lt]);
    let den_nz: Vec<(u32, &F::El)> = den.coeffs[..=lt]
        .iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(j, c)| (s.codes[j], c))
        .collect();
    let mut rem = num.coeffs.clone();
    let Some(top) = rem.iter().rposition(|c| !f.is_zero(c)) else {
        return Some(Dense { coeffs: Vec::new() });
    };
    let qdeg = s.degree_at(top).checked_sub(s.degree_at(lt))?;
    let mut quot = vec![f.zero(); s.len(qdeg)];
    for idx in (0..=top).rev() {
        if f.is_zero(&rem[idx]) {
            continue;
        }
        let e = s.exps[idx];
        if (0..s.nvars).any(|v| e[v] < lt_exp[v]) {
            return None;
        }
        let qcode = s.codes[idx] - lt_code;
        let qi = s.index(qcode);
        let c = f.mul(&rem[idx], &inv_lc);
        for &(code_d, cd) in &den_nz {
            let k = s.index(qcode + code_d);
            let t = f.mul(&c, cd);
            f.sub_assign(&mut rem[k], &t);
        }
        quot[qi] = c;
    }
    Some(Dense { coeffs: quot })
}

fn chart_positions(vars: &[usize]) -> [Option<usize>; NVARS] {
    let mut pos = [None; NVARS];
    for (i, &v) in vars.iter().enumerate() {
        pos[v] = Some(i);
    }
    pos
}

fn to_dense<F: Field>(f: &F, s: &DenseSpace, p: &MultiPoly<F>, vars: &[usize]) -> Result<Dense<F::El>> {
    let pos = chart_positions(vars);
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![f.zero(); if p.is_zero() { 0 } else { s.len(deg) }];
    for (e, c) in p.terms() {
        let mut code = 0usize;
        for v in (0..NVARS).rev() {
            if e[v] == 0 {
                continue;
            }
            let i = pos[v].ok_or_else(|| EpwError::Internal(format!("entry uses x{} outside the chart", v + 1)))?;
            code += e[v] as usize * s.radix.pow(i as u32);
        }
        coeffs[s.index(code as u32)] = c.clone();
    }
    Ok(Dense { coeffs })
}

fn from_dense<F: Field>(f: &F, s: &DenseSpace, d: &Dense<F::El>, vars: &[usize]) -> MultiPoly<F> {
    MultiPoly::from_terms(
        f,
        d.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                let mut e: Exponent = [0; NVARS];
                for (j, &v) in vars.iter().enumerate() {
                    e[v] = s.exps[i][j];
                }
                (e, c.clone())
            }),
    )
}

fn check_square<F: Field>(m: &[Vec<MultiPoly<F>>], vars: &[usize]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(EpwError::Internal("determinant of a non-square matrix".into()));
    }
    if vars.len() > MAX_CHART_VARS {
        return Err(EpwError::Internal("too many chart variables".into()));
    }
    for row in m {
        for p in row {
            if p.total_degree().unwrap_or(0) > 1 {
                return Err(EpwError::Internal("matrix entry is not affine-linear".into()));
            }
        }
    }
    Ok(n)
}

/// Fraction-free Bareiss elimination over `F[vars]`.
pub fn bareiss_determinant<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], vars: &[usize]) -> Result<MultiPoly<F>> {
    let n = check_square(m, vars)?;
    if n == 0 {
        return Ok(MultiPoly::constant(f, f.one()));
    }
    let s = DenseSpace::get(vars.len(), 2 * n.saturating_sub(1).max(1));
    let mut a: Vec<Vec<Dense<F::El>>> = m
        .iter()
        .map(|row| row.iter().map(|p| to_dense(f, &s, p, vars)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut negate = false;
    let mut prev = Dense { coeffs: vec![f.one()] };
    for k in 0..n - 1 {
        if a[k][k].is_zero(f) {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero(f)) else {
                return Ok(MultiPoly::zero(f));
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut num = dense_mul(f, &s, &a[k][k], &a[i][j]);
                let cross = dense_mul(f, &s, &a[i][k], &a[k][j]);
                dense_sub_assign(f, &mut num, &cross);
                let mut q = dense_div_exact(f, &s, &num, &prev)
                    .ok_or_else(|| EpwError::Internal("Bareiss division was not exact".into()))?;
                q.trim(f, &s);
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let det = from_dense(f, &s, &a[n - 1][n - 1], vars);
    Ok(if negate { det.neg() } else { det })
}

/// Numeric determinant of the matrix at a point given in chart coordinates.
pub fn eval_determinant<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], point: &[F::El]) -> F::El {
    let numeric: Vec<Vec<F::El>> = m.iter().map(|row| row.iter().map(|p| p.eval(point)).collect()).collect();
    determinant(f, numeric)
}

/// `C(x, a)` expanded in powers of `x`: `x (x-1) .. (x-a+1) / a!`.
fn binomial_basis<F: Field>(f: &F, a: usize) -> Vec<F::El> {
    let mut c = vec![f.one()];
    for i in 0..a {
        // multiply by (x - i)
        let mut next = vec![f.zero(); c.len() + 1];
        let mi = f.from_i64(-(i as i64));
        for (d, x) in c.iter().enumerate() {
            f.add_assign(&mut next[d + 1], x);
            f.mul_add_assign(&mut next[d], &mi, x);
        }
        c = next;
    }
    let fact = (1..=a as i64).fold(f.one(), |acc, i| f.mul(&acc, &f.from_i64(i)));
    let inv = f.inv(&fact);
    c.iter().map(|x| f.mul(x, &inv)).collect()
}

/// Determinant via values on the lattice simplex of side `n` plus Newton
/// interpolation. `verify_points` extra points (chart coordinates) are
/// checked against direct evaluation.
pub fn interpolated_determinant<F: Field>(
    f: &F,
    m: &[Vec<MultiPoly<F>>],
    vars: &[usize],
    verify_points: &[Vec<F::El>],
) -> Result<MultiPoly<F>> {
    let n = check_square(m, vars)?;
    let ch = f.characteristic();
    if ch != 0 && ch <= n as u64 {
        return Err(EpwError::Precondition(format!(
            "interpolation of a degree-{n} determinant needs characteristic 0 or > {n}"
        )));
    }
    let k = vars.len();
    let s = DenseSpace::get(k, n.max(1));
    let count = s.len(n);
    let to_point = |e: &[u8]| -> Vec<F::El> {
        let mut p = vec![f.zero(); NVARS];
        for (j, &v) in vars.iter().enumerate() {
            p[v] = f.from_i64(e[j] as i64);
        }
        p
    };
    let mut vals: Vec<F::El> = (0..count).map(|i| eval_determinant(f, m, &to_point(s.exponent(i)))).collect();

    // forward differences, one variable at a time
    for v in 0..k {
        let mut lines: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        for i in 0..count {
            let mut key = s.exponent(i).to_vec();
            key[v] = 0;
            lines.entry(key).or_default().push(i);
        }
        for (_, mut idx) in lines {
            idx.sort_by_key(|&i| s.exponent(i)[v]);
            for level in 1..idx.len() {
                for t in (level..idx.len()).rev() {
                    let d = f.sub(&vals[idx[t]], &vals[idx[t - 1]]);
                    vals[idx[t]] = d;
                }
            }
        }
    }

    // expand sum_a c_a prod_j C(x_j, a_j)
    let basis: Vec<Vec<F::El>> = (0..=n).map(|a| binomial_basis(f, a)).collect();
    let mut acc: HashMap<Vec<u8>, F::El> = HashMap::new();
    for (i, c) in vals.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let a = s.exponent(i);
        let mut partial: Vec<(Vec<u8>, F::El)> = vec![(Vec::new(), c.clone())];
        for &aj in a.iter() {
            let b = &basis[aj as usize];
            let mut next = Vec::with_capacity(partial.len() * b.len());
            for (e, x) in &partial {
                for (d, y) in b.iter().enumerate() {
                    if f.is_zero(y) {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2.push(d as u8);
                    next.push((e2, f.mul(x, y)));
                }
            }
            partial = next;
        }
        for (e, x) in partial {
            let slot = acc.entry(e).or_insert_with(|| f.zero());
            f.add_assign(slot, &x);
        }
    }
    let det = MultiPoly::from_terms(
        f,
        acc.into_iter().map(|(e, c)| {
            let mut full: Exponent = [0; NVARS];
            for (j, &v) in vars.iter().enumerate() {
                full[v] = e[j];
            }
            (full, c)
        }),
    );
    for p in verify_points {
        if det.eval(p) != eval_determinant(f, m, p) {
            return Err(EpwError::Internal("interpolated determinant failed verification".into()));
        }
    }
    Ok(det)
}

/// Largest primes below `2^31`, in descending order.
fn word_primes() -> impl Iterator<Item = u64> {
    (2..1u64 << 31).rev().filter(|&p| is_prime(p))
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// Multi-modular determinant over a field of characteristic 0.
///
/// Each coefficient of the determinant of the integer matrix is bounded in
/// absolute value by the product of the row sums of coefficient 1-norms, so
/// residues modulo primes whose product exceeds twice that bound determine
/// it exactly.
pub fn modular_determinant<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], vars: &[usize]) -> Result<MultiPoly<F>> {
    let n = check_square(m, vars)?;
    if f.characteristic() != 0 {
        return Err(EpwError::Precondition("the multi-modular route needs characteristic 0".into()));
    }
    let to_q = |c: &F::El| {
        f.to_rational(c)
            .ok_or_else(|| EpwError::Internal("characteristic-0 field without rational embedding".into()))
    };
    // integer rows, with the product of the row scalings
    let mut scale = BigInt::one();
    let mut bound = BigInt::one();
    let mut rows: Vec<Vec<Vec<(Exponent, BigInt)>>> = Vec::with_capacity(n);
    for row in m {
        let qrow: Vec<Vec<(Exponent, BigRational)>> = row
            .iter()
            .map(|p| p.terms().map(|(e, c)| Ok((e, to_q(c)?))).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let d = common_denominator(qrow.iter().flatten().map(|(_, c)| c));
        let irow: Vec<Vec<(Exponent, BigInt)>> = qrow
            .into_iter()
            .map(|p| p.into_iter().map(|(e, c)| (e, (c * &d).to_integer())).collect())
            .collect();
        bound *= irow.iter().flatten().map(|(_, c)| c.abs()).sum::<BigInt>();
        scale *= d;
        rows.push(irow);
    }
    if bound.is_zero() {
        return Ok(MultiPoly::zero(f));
    }
    let target = bound * 2u32;
    let mut modulus = BigInt::one();
    let mut residues: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    for p in word_primes() {
        if modulus > target {
            break;
        }
        let fp = PrimeField::new(p)?;
        let mp: Vec<Vec<MultiPoly<PrimeField>>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| MultiPoly::from_terms(&fp, t.iter().map(|(e, c)| (*e, reduce_mod(c, p)))))
                    .collect()
            })
            .collect();
        let det = bareiss_determinant(&fp, &mp, vars)?;
        for (e, _) in det.terms() {
            residues.entry(e).or_insert_with(BigInt::zero);
        }
        // Garner step: r += M * ((a - r) / M mod p)
        let bp = BigInt::from(p);
        let m_inv = fp.inv(&reduce_mod(&modulus, p));
        for (e, r) in residues.iter_mut() {
            let a = det.coeff(e);
            let diff = fp.sub(&a, &reduce_mod(r, p));
            let t = fp.mul(&diff, &m_inv);
            *r += &modulus * BigInt::from(t);
        }
        modulus *= bp;
    }
    let half = &modulus / 2u32;
    let terms: Vec<(Exponent, F::El)> = residues
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(e, r)| {
            let lifted = if r > half { r - &modulus } else { r };
            let q = BigRational::new(lifted, scale.clone());
            f.from_rational(&q)
                .map(|c| (e, c))
                .ok_or_else(|| EpwError::Internal("rational coefficient does not embed".into()))
        })
        .collect::<Result<_>>()?;
    Ok(MultiPoly::from_terms(f, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_affine_matrix(f: &PrimeField, rng: &mut ChaCha8Rng, n: usize, vars: &[usize]) -> Vec<Vec<MultiPoly<PrimeField>>> {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let mut p = MultiPoly::constant(f, rng.gen_range(0..f.p()));
                        for &v in vars {
                            p = p.add(&MultiPoly::var(f, v).scale(&rng.gen_range(0..f.p())));
                        }
                        p
                    })
                    .collect()
            })
            .collect()
    }

    /// Leibniz expansion over all permutations: the slow oracle.
    fn leibniz<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>]) -> MultiPoly<F> {
        fn rec<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], row: usize, used: &mut Vec<bool>, sign: bool, acc: MultiPoly<F>, out: &mut MultiPoly<F>) {
            let n = m.len();
            if row == n {
                *out = if sign { out.sub(&acc) } else { out.add(&acc) };
                return;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let inversions = used[c + 1..].iter().filter(|&&u| u).count();
                used[c] = true;
                rec(f, m, row + 1, used, sign ^ (inversions % 2 == 1), acc.mul(&m[row][c]), out);
                used[c] = false;
            }
        }
        let mut out = MultiPoly::zero(f);
        rec(f, m, 0, &mut vec![false; m.len()], false, MultiPoly::constant(f, f.one()), &mut out);
        out
    }

    #[test]
    fn dense_space_layout() {
        let s = DenseSpace::get(5, 10);
        assert_eq!(s.len(10), 3003);
        assert_eq!(s.len(6), 462);
        assert_eq!(s.len(0), 1);
        assert_eq!(s.exponent(0), &[0, 0, 0, 0, 0]);
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=5 {
            let vars = [0usize, 2, 3];
            let m = random_affine_matrix(&f, &mut rng, n, &vars);
            assert_eq!(bareiss_determinant(&f, &m, &vars).unwrap(), leibniz(&f, &m));
        }
    }

    #[test]
    fn bareiss_with_zero_pivots_over_small_field() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let vars = [1usize, 4];
            let m = random_affine_matrix(&f, &mut rng, 4, &vars);
            assert_eq!(bareiss_determinant(&f, &m, &vars).unwrap(), leibniz(&f, &m));
        }
    }

    #[test]
    fn interpolation_matches_bareiss() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vars = [1usize, 2, 3, 4, 5];
        let m = random_affine_matrix(&f, &mut rng, 6, &vars);
        let check: Vec<Vec<u64>> = (0..5).map(|_| (0..6).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        let a = bareiss_determinant(&f, &m, &vars).unwrap();
        let b = interpolated_determinant(&f, &m, &vars, &check).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn interpolation_over_rationals() {
        let q = Rationals;
        let x = |i| MultiPoly::var(&q, i);
        let c = |v| MultiPoly::constant(&q, q.from_i64(v));
        // [[x1, 1], [2, x2 + 3]] -> x1 x2 + 3 x1 - 2
        let m = vec![vec![x(0), c(1)], vec![c(2), x(1).add(&c(3))]];
        let d = interpolated_determinant(&q, &m, &[0, 1], &[]).unwrap();
        let expected = x(0).mul(&x(1)).add(&x(0).scale(&q.from_i64(3))).sub(&c(2));
        assert_eq!(d, expected);
        assert_eq!(bareiss_determinant(&q, &m, &[0, 1]).unwrap(), expected);
    }

    #[test]
    fn interpolation_rejects_small_characteristic() {
        let f = PrimeField::new(3).unwrap();
        let m = vec![vec![MultiPoly::var(&f, 0); 4]; 4];
        assert!(interpolated_determinant(&f, &m, &[0], &[]).is_err());
    }

    #[test]
    fn modular_matches_rational_routes() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let vars = [0usize, 3, 5];
        let mut r = || q.parse(&format!("{}/{}", rng.gen_range(-40i64..=40), rng.gen_range(1i64..=9))).unwrap();
        for n in 1..=5 {
            let m: Vec<Vec<MultiPoly<Rationals>>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            vars.iter()
                                .fold(MultiPoly::constant(&q, r()), |p, &v| p.add(&MultiPoly::var(&q, v).scale(&r())))
                        })
                        .collect()
                })
                .collect();
            let d = modular_determinant(&q, &m, &vars).unwrap();
            assert_eq!(d, leibniz(&q, &m), "n = {n}");
            assert_eq!(d, bareiss_determinant(&q, &m, &vars).unwrap());
        }
        let zero = vec![vec![MultiPoly::zero(&q); 3]; 3];
        assert!(modular_determinant(&q, &zero, &vars).unwrap().is_zero());
        let f = PrimeField::new(7).unwrap();
        assert!(modular_determinant(&f, &[vec![MultiPoly::var(&f, 0)]], &[0]).is_err());
    }
}

//! Exact integer and rational linear algebra: Smith normal form (dense, with
//! certificates, and a sparse fast path) and incremental rational echelon
//! forms.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Dense = Vec<Vec<BigInt>>;

pub fn dense_from_i64(rows: &[Vec<i64>]) -> Dense {
    rows.iter()
        .map(|r| r.iter().map(|v| BigInt::from(*v)).collect())
        .collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (t, bt) in b.iter().enumerate() {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bt[j].is_zero() {
                    out[i][j] += &a[i][t] * &bt[j];
                }
            }
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Dense) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form `D = U·M·V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub u: Dense,
    pub v: Dense,
    pub d: Dense,
}

impl Smith {
    /// Check `U·M·V = D`, `D` diagonal with the listed factors, and
    /// `det U = ±1 = det V`.
    pub fn verify(&self, m: &Dense) -> bool {
        let umv = mat_mul(&mat_mul(&self.u, m), &self.v);
        if umv != self.d {
            return false;
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < self.factors.len() {
                    self.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                if *x != expect {
                    return false;
                }
            }
        }
        if self.factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return false;
        }
        determinant(&self.u).abs().is_one() && determinant(&self.v).abs().is_one()
    }
}

/// Dense Smith normal form of an `r × c` matrix with transformation
/// certificates.
pub fn smith_normal_form(m: &Dense) -> Smith {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(r);
    let mut v = identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            // clear column t
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            // clear row t
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the rest of the block
            let mut fix = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !a[i][j].is_multiple_of(&a[t][t]) {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    // add row i to row t, then repeat
                    let one = -BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let factors = (0..r.min(c))
        .map(|i| a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    Smith {
        factors,
        u,
        v,
        d: a,
    }
}

// row[i] -= q * row[k]
fn row_axpy(a: &mut Dense, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *x -= q * s;
        }
    }
}

// col[j] -= q * col[k]
fn col_axpy(a: &mut Dense, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[k].is_zero() {
            let s = q * &row[k];
            row[j] -= s;
        }
    }
}

/// Invariant factors only, without certificates.
pub fn invariant_factors_dense(m: &Dense) -> Vec<BigInt> {
    // certificates are cheap at the sizes this path sees
    smith_normal_form(m).factors
}

/// Sparse integer matrix, one sorted row of `(column, value)` per entry.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, mut row: Vec<(usize, i64)>) {
        row.retain(|(_, v)| *v != 0);
        row.sort_unstable_by_key(|(c, _)| *c);
        self.rows.push(row);
    }

    pub fn to_dense(&self) -> Dense {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.ncols];
                for (c, v) in r {
                    d[*c] = BigInt::from(*v);
                }
                d
            })
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

fn combine(a: &[(usize, i64)], b: &[(usize, i64)], q: i64) -> Option<Vec<(usize, i64)>> {
    // a - q*b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, q.checked_mul(b[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(q.checked_mul(b[j].1)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Nonzero invariant factors of a sparse integer matrix. Unit pivots are
/// eliminated sparsely (cheapest fill first); the remainder goes through the
/// dense algorithm.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<Option<Vec<(usize, i64)>>> = m
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| Some(r.clone()))
        .collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.ncols];
    for (ri, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows[*c].insert(ri);
        }
    }
    let mut units = 0usize;
    loop {
        // cheapest unit pivot by Markowitz cost
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (c, v) in r {
                if v.abs() == 1 {
                    let cost = (r.len() - 1) * (col_rows[*c].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((ri, *c, cost));
                    }
                }
            }
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let prow = rows[pr].take().unwrap();
        let pv = prow.iter().find(|(c, _)| *c == pc).unwrap().1;
        for (c, _) in &prow {
            col_rows[*c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        let mut overflow = false;
        let mut updates = Vec::with_capacity(targets.len());
        for &ri in &targets {
            let r = rows[ri].as_ref().unwrap();
            let a = r.iter().find(|(c, _)| *c == pc).unwrap().1;
            match combine(r, &prow, a * pv) {
                Some(nr) => updates.push((ri, nr)),
                None => {
                    overflow = true;
                    break;
                }
            }
        }
        if overflow {
            // restore the pivot row and finish densely
            for (c, _) in &prow {
                col_rows[*c].insert(pr);
            }
            rows[pr] = Some(prow);
            break;
        }
        for (ri, nr) in updates {
            for (c, _) in rows[ri].as_ref().unwrap() {
                col_rows[*c].remove(&ri);
            }
            for (c, _) in &nr {
                col_rows[*c].insert(ri);
            }
            rows[ri] = if nr.is_empty() { None } else { Some(nr) };
        }
        units += 1;
    }
    // remainder
    let rest: Vec<Vec<(usize, i64)>> = rows.into_iter().flatten().collect();
    let mut cols: Vec<usize> = rest.iter().flatten().map(|(c, _)| *c).collect();
    cols.sort_unstable();
    cols.dedup();
    let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let dense: Dense = rest
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); cols.len()];
            for (c, v) in r {
                d[index[c]] = BigInt::from(*v);
            }
            d
        })
        .collect();
    let mut out = vec![BigInt::one(); units];
    out.extend(invariant_factors_dense(&dense));
    out
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

pub type RatVec = Vec<(usize, BigRational)>;

/// Incrementally built row echelon form over ℚ. Rows are kept with a unit
/// leading entry and indexed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, RatVec>,
}

fn rat_axpy(a: &RatVec, b: &RatVec, q: &BigRational) -> RatVec {
    // a - q*b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(q * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - q * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    /// Normal form of `v` modulo the row space: no pivot column survives.
    pub fn reduce(&self, v: &RatVec) -> RatVec {
        let mut v = v.clone();
        let mut k = 0;
        while k < v.len() {
            let c = v[k].0;
            if let Some(row) = self.rows.get(&c) {
                let q = v[k].1.clone();
                v = rat_axpy(&v, row, &q);
                // entries before position k are untouched
            } else {
                k += 1;
            }
        }
        v
    }

    /// Add a row; returns true when it enlarged the row space.
    pub fn insert(&mut self, v: &RatVec) -> bool {
        let r = self.reduce(v);
        let Some((c, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = BigRational::one() / lead;
        let r: RatVec = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows.insert(c, r);
        true
    }

    pub fn row(&self, pivot: usize) -> Option<&RatVec> {
        self.rows.get(&pivot)
    }
}

pub fn to_ratvec(v: &[(usize, i64)]) -> RatVec {
    v.iter()
        .map(|(c, x)| (*c, BigRational::from_integer(BigInt::from(*x))))
        .collect()
}

/// Basis of `{c : Σ c_k row_k = 0}` over ℚ for the given rows of length
/// `ncols`.
pub fn left_kernel(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let mut e = Echelon::new();
    for (k, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.push((ncols + k, BigRational::one()));
        e.insert(&v);
    }
    e.rows
        .range(ncols..)
        .map(|(_, r)| r.iter().map(|(c, x)| (c - ncols, x.clone())).collect())
        .collect()
}

/// Rank over ℚ of a set of rows.
pub fn rational_rank(rows: &[RatVec]) -> usize {
    let mut e = Echelon::new();
    rows.iter().filter(|r| e.insert(r)).count()
}

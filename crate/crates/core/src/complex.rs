//! Bigraded diagram complexes and their homology.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::b0::B0Quotient;
use crate::diagrams::{diff_monomial, enumerate_underlying, DiffPart, Variant};
use crate::free_superalgebra::{Element, Monomial, Parity};
use crate::linalg::{invariant_factors, Dense, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("basis override has {got} elements, the bidegree has dimension {want}")]
    BasisSize { got: usize, want: usize },
    #[error("basis override is not a basis over the integers")]
    NotUnimodular,
    #[error("basis override element is not in bidegree ({0}, {1})")]
    BasisBidegree(usize, usize),
    #[error("coefficient {0} does not fit a machine integer")]
    Overflow(BigInt),
}

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

/// Free rank and torsion coefficients of one homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank == 1 {
            parts.push("Z".into());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A diagram complex: one variant in one parity. `B0` bidegrees are built
/// lazily and cached.
#[derive(Debug)]
pub struct DiagramComplex {
    pub variant: Variant,
    pub parity: Parity,
    pub part: DiffPart,
    b0: Option<Arc<B0Quotient>>,
}

impl DiagramComplex {
    pub fn new(variant: Variant, parity: Parity) -> Self {
        Self::with_part(variant, parity, DiffPart::Full)
    }

    /// The complex with only part of the boundary (`∂̄` on `B*`).
    pub fn with_part(variant: Variant, parity: Parity, part: DiffPart) -> Self {
        let b0 = (variant == Variant::B0).then(|| Arc::new(B0Quotient::new(parity)));
        DiagramComplex {
            variant,
            parity,
            part,
            b0,
        }
    }

    pub fn quotient(&self) -> Option<&B0Quotient> {
        self.b0.as_deref()
    }

    /// Ordered basis of bidegree `(i, j)`.
    pub fn basis(&self, i: usize, j: usize) -> Vec<Monomial> {
        match &self.b0 {
            Some(q) => q.block(i, j).reps.clone(),
            None => enumerate_underlying(self.variant, i, j),
        }
    }

    pub fn dimension(&self, i: usize, j: usize) -> usize {
        match &self.b0 {
            Some(q) => q.block(i, j).reps.len(),
            None => enumerate_underlying(self.variant, i, j).len(),
        }
    }

    /// Largest `j` with a nonzero space at complexity `i` (generalized
    /// complexes are unbounded; the caller must cap them).
    pub fn j_max(&self, i: usize) -> Option<usize> {
        if self.variant.generalized() {
            None
        } else {
            Some(2 * i)
        }
    }

    /// Boundary of an element, written in the basis of the target bidegree.
    pub fn boundary(&self, e: &Element<BigInt>) -> Element<BigInt> {
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            for (mm, k) in diff_monomial(m, self.parity, self.variant, self.part) {
                out.add_term(mm, c.clone() * BigInt::from(k));
            }
        }
        match &self.b0 {
            Some(q) => q.project(&out),
            None => out,
        }
    }

    /// Boundary matrix from `(i, j)` to `(i, j+1)`, one row per source basis
    /// element.
    pub fn boundary_rows(&self, i: usize, j: usize) -> SparseMatrix {
        let src = self.basis(i, j);
        let tgt = self.basis(i, j + 1);
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut mat = SparseMatrix::new(tgt.len());
        for m in &src {
            let d = self.boundary(&Element::from_monomial(m.clone()));
            let row = d
                .iter()
                .map(|(mm, c)| (index[mm], c.to_i64().expect("boundary coefficient fits i64")))
                .collect();
            mat.push_row(row);
        }
        mat
    }

    /// Boundary matrix with rows indexed by the target basis and columns by
    /// the source basis.
    pub fn boundary_matrix(&self, i: usize, j: usize) -> Dense {
        let rows = self.boundary_rows(i, j);
        let n_src = rows.rows.len();
        let mut d = vec![vec![BigInt::zero(); n_src]; rows.ncols];
        for (s, r) in rows.rows.iter().enumerate() {
            for (t, v) in r {
                d[*t][s] = BigInt::from(*v);
            }
        }
        d
    }

    /// Coordinates of an element of bidegree `(i, j)` in the standard basis.
    pub fn coordinates(&self, e: &Element<BigInt>, i: usize, j: usize) -> Vec<BigInt> {
        let basis = self.basis(i, j);
        let mut v = vec![BigInt::zero(); basis.len()];
        match &self.b0 {
            Some(q) => {
                let part: Element<BigInt> = e.iter().filter(|(m, _)| m.stars() == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
                for (k, c) in q.block(i, j).reduce(&part) {
                    v[k] = c;
                }
            }
            None => {
                let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
                for (m, c) in e.iter() {
                    v[index[m]] = c.clone();
                }
            }
        }
        v
    }

    /// Boundary matrix (rows = target, columns = source) in caller supplied
    /// bases, each a list of elements forming a ℤ-basis of its bidegree.
    pub fn boundary_matrix_in(
        &self,
        i: usize,
        j: usize,
        source: &[Element<BigInt>],
        target: &[Element<BigInt>],
    ) -> Result<Dense, ComplexError> {
        self.change_of_basis(i, j, source)?;
        let t = self.change_of_basis(i, j + 1, target)?;
        let t_inv = integer_inverse(&t).ok_or(ComplexError::NotUnimodular)?;
        // column a of the result: coordinates of ∂(source[a]) in the target basis
        let mut out = vec![vec![BigInt::zero(); source.len()]; target.len()];
        for (a, e) in source.iter().enumerate() {
            let d = self.boundary(e);
            let coords = self.coordinates(&d, i, j + 1);
            for (b, row) in t_inv.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (l, x) in coords.iter().enumerate() {
                    acc += x * &row[l];
                }
                out[b][a] = acc;
            }
        }
        Ok(out)
    }

    fn change_of_basis(&self, i: usize, j: usize, elems: &[Element<BigInt>]) -> Result<Dense, ComplexError> {
        let n = self.dimension(i, j);
        if elems.len() != n {
            return Err(ComplexError::BasisSize {
                got: elems.len(),
                want: n,
            });
        }
        for e in elems {
            if e.iter().any(|(m, _)| crate::diagrams::bidegree(m) != (i, j)) {
                return Err(ComplexError::BasisBidegree(i, j));
            }
        }
        // columns are the coordinate vectors of the new basis
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (a, e) in elems.iter().enumerate() {
            for (k, c) in self.coordinates(e, i, j).into_iter().enumerate() {
                m[k][a] = c;
            }
        }
        if !crate::linalg::determinant(&m).abs().is_one() {
            return Err(ComplexError::NotUnimodular);
        }
        Ok(m)
    }

    /// Basis diagrams of `(i, j)` whose boundary is not a cycle.
    pub fn square_defects(&self, i: usize, j: usize) -> Vec<Monomial> {
        if self.b0.is_some() {
            return self
                .basis(i, j)
                .into_iter()
                .filter(|m| !self.boundary(&self.boundary(&Element::from_monomial(m.clone()))).is_zero())
                .collect();
        }
        // boundaries of the middle diagrams are shared between many sources
        let mut memo: HashMap<Monomial, Vec<(Monomial, i64)>> = HashMap::new();
        let mut out = Vec::new();
        for m in self.basis(i, j) {
            let mut acc: HashMap<Monomial, i64> = HashMap::new();
            for (mid, c) in diff_monomial(&m, self.parity, self.variant, self.part) {
                let d = memo
                    .entry(mid)
                    .or_insert_with_key(|mid| diff_monomial(mid, self.parity, self.variant, self.part));
                for (t, k) in d.iter() {
                    *acc.entry(t.clone()).or_insert(0) += c * k;
                }
            }
            if acc.values().any(|v| *v != 0) {
                out.push(m);
            }
        }
        out
    }

    /// Homology at `(i, j)`.
    pub fn homology(&self, i: usize, j: usize, coeffs: Coefficients) -> HomologyGroup {
        let dim = self.dimension(i, j);
        let out_f = invariant_factors(&self.boundary_rows(i, j));
        let in_f = if j == 0 {
            vec![]
        } else {
            invariant_factors(&self.boundary_rows(i, j - 1))
        };
        homology_from_factors(dim, &out_f, &in_f, coeffs)
    }
}

/// Homology of `C_j` from the invariant factors of the outgoing and incoming
/// boundaries.
pub fn homology_from_factors(dim: usize, out_f: &[BigInt], in_f: &[BigInt], coeffs: Coefficients) -> HomologyGroup {
    match coeffs {
        Coefficients::Integers => HomologyGroup {
            rank: dim - out_f.len() - in_f.len(),
            torsion: in_f.iter().filter(|f| !f.is_one()).cloned().collect(),
        },
        Coefficients::Rationals => HomologyGroup::free(dim - out_f.len() - in_f.len()),
        Coefficients::Prime(p) => {
            let p = BigInt::from(p);
            let r = |fs: &[BigInt]| fs.iter().filter(|f| !f.is_multiple_of(&p)).count();
            HomologyGroup::free(dim - r(out_f) - r(in_f))
        }
    }
}

/// Inverse of an integer matrix when it is again integral.
pub fn integer_inverse(m: &Dense) -> Option<Dense> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = BigRational::one() / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let q = a[r][c].clone();
                let src = a[c].clone();
                for (x, s) in a[r].iter_mut().zip(src.iter()) {
                    *x = &*x - &q * s;
                }
            }
        }
    }
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = &a[i][n + j];
            if !x.is_integer() {
                return None;
            }
            out[i][j] = x.to_integer();
        }
    }
    Some(out)
}

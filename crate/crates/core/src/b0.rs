//! The quotient of `B` by brackets of neighbouring points.
//!
//! The kernel in bidegree `(i, j)` is spanned by products in which one factor
//! is `[[[x_k, x_{k+1}], x_{a_1}], .., x_{a_n}]`. Representatives are the
//! basis diagrams that are not pivots of the kernel's echelon form, with
//! columns taken in reverse enumeration order so that early diagrams survive.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagrams::{enumerate_underlying, Variant};
use crate::free_superalgebra::{
    lie_canonical, sort_factors, Element, Gen, Grading, Monomial, Parity, Tree, Word,
};
use crate::linalg::{invariant_factors, Echelon, RatVec, SparseMatrix};

/// One bidegree of the quotient.
#[derive(Debug)]
pub struct B0Block {
    pub full_basis: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
    /// Representatives, in enumeration order.
    pub reps: Vec<Monomial>,
    rep_pos: HashMap<usize, usize>,
    kernel: Echelon,
    relations: SparseMatrix,
}

impl B0Block {
    fn build(parity: Parity, i: usize, j: usize) -> Self {
        let gr = Grading::of(parity);
        let full_basis = enumerate_underlying(Variant::B, i, j);
        let n = full_basis.len();
        let index: HashMap<Monomial, usize> = full_basis
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let mut kernel = Echelon::new();
        let mut relations = SparseMatrix::new(n);
        for m in &full_basis {
            for (f, w) in m.factors().iter().enumerate() {
                // one block structure per basis word family
                if !w[1..].windows(2).all(|p| p[0].point < p[1].point) {
                    continue;
                }
                let pts: Vec<u16> = w.iter().map(|g| g.point).collect();
                for &k in &pts {
                    if !pts.contains(&(k + 1)) {
                        continue;
                    }
                    let rest: Vec<u16> = pts.iter().copied().filter(|p| *p != k && *p != k + 1).collect();
                    for order in permutations(&rest) {
                        let mut t = Tree::node(Tree::Leaf(Gen::simple(k)), Tree::Leaf(Gen::simple(k + 1)));
                        for p in order {
                            t = Tree::node(t, Tree::Leaf(Gen::simple(p)));
                        }
                        let mut row: HashMap<usize, i64> = HashMap::new();
                        for (cw, c) in lie_canonical(&t, gr) {
                            let mut fs: Vec<Word> = m.factors().to_vec();
                            fs[f] = cw;
                            let (s, mm) = sort_factors(fs, gr);
                            *row.entry(n - 1 - index[&mm]).or_insert(0) += s * c;
                        }
                        let row: Vec<(usize, i64)> = row.into_iter().filter(|(_, v)| *v != 0).collect();
                        relations.push_row(row.clone());
                        kernel.insert(&crate::linalg::to_ratvec(&relations.rows[relations.rows.len() - 1]));
                    }
                }
            }
        }
        let mut reps = Vec::new();
        let mut rep_pos = HashMap::new();
        for (k, m) in full_basis.iter().enumerate() {
            if !kernel.is_pivot(n - 1 - k) {
                rep_pos.insert(k, reps.len());
                reps.push(m.clone());
            }
        }
        B0Block {
            full_basis,
            index,
            reps,
            rep_pos,
            kernel,
            relations,
        }
    }

    /// Coordinates of a `B` element over the representatives. Coefficients
    /// are exact rationals; see [`B0Block::integral`].
    pub fn reduce_rational(&self, e: &Element<BigInt>) -> Vec<(usize, num_rational::BigRational)> {
        let n = self.full_basis.len();
        let mut v: RatVec = e
            .iter()
            .filter_map(|(m, c)| {
                self.index
                    .get(m)
                    .map(|k| (n - 1 - k, num_rational::BigRational::from_integer(c.clone())))
            })
            .collect();
        v.sort_by_key(|(c, _)| *c);
        let r = self.kernel.reduce(&v);
        let mut out: Vec<(usize, num_rational::BigRational)> =
            r.into_iter().map(|(c, x)| (self.rep_pos[&(n - 1 - c)], x)).collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    /// Integer coordinates over the representatives; panics if the quotient
    /// map is not integral (checked by [`B0Block::integral`]).
    pub fn reduce(&self, e: &Element<BigInt>) -> Vec<(usize, BigInt)> {
        self.reduce_rational(e)
            .into_iter()
            .map(|(c, x)| {
                assert!(x.is_integer(), "non-integral quotient coordinate");
                (c, x.to_integer())
            })
            .collect()
    }

    /// Every basis diagram reduces to an integer combination of
    /// representatives.
    pub fn integral(&self) -> bool {
        self.full_basis.iter().all(|m| {
            let e = Element::from_monomial(m.clone());
            self.reduce_rational(&e).iter().all(|(_, x)| x.is_integer())
        })
    }

    /// The integer span of the relations is saturated, so the quotient over
    /// ℤ has no torsion.
    pub fn torsion_free(&self) -> bool {
        invariant_factors(&self.relations)
            .iter()
            .all(|f| f.is_one())
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel.rank()
    }

    /// Whether a `B` element vanishes in the quotient.
    pub fn is_zero(&self, e: &Element<BigInt>) -> bool {
        self.reduce_rational(e).iter().all(|(_, x)| x.is_zero())
    }
}

fn permutations(items: &[u16]) -> Vec<Vec<u16>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Lazily built quotient blocks for one parity.
#[derive(Debug)]
pub struct B0Quotient {
    parity: Parity,
    blocks: Mutex<HashMap<(usize, usize), Arc<B0Block>>>,
}

impl B0Quotient {
    pub fn new(parity: Parity) -> Self {
        B0Quotient {
            parity,
            blocks: Mutex::new(HashMap::new()),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn block(&self, i: usize, j: usize) -> Arc<B0Block> {
        if let Some(b) = self.blocks.lock().unwrap().get(&(i, j)) {
            return b.clone();
        }
        let b = Arc::new(B0Block::build(self.parity, i, j));
        self.blocks.lock().unwrap().insert((i, j), b.clone());
        b
    }

    /// Quotient map from `B` or `B*`: diagrams with asterisks go to zero, the
    /// rest to their coset, written back as an element over representatives.
    pub fn project(&self, e: &Element<BigInt>) -> Element<BigInt> {
        let mut by_deg: HashMap<(usize, usize), Element<BigInt>> = HashMap::new();
        for (m, c) in e.iter() {
            if m.stars() > 0 {
                continue;
            }
            by_deg
                .entry(crate::diagrams::bidegree(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        let mut out = Element::zero();
        for ((i, j), part) in by_deg {
            let b = self.block(i, j);
            for (k, c) in b.reduce(&part) {
                out.add_term(b.reps[k].clone(), c);
            }
        }
        out
    }
}

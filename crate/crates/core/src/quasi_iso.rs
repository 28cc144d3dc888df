//! Homology comparisons between diagram complexes: `B*` against `B0`,
//! generalized against plain diagrams, the kernel of the projection
//! `H(B) -> H(B0)` over ℚ, and the dimensions of `H(B*, ∂̄)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Coefficients, DiagramComplex, HomologyGroup};
use crate::diagrams::{bidegree, DiffPart, Variant};
use crate::free_superalgebra::{parse_element, Element, Monomial, Parity};
use crate::hopf::DiagramHopf;
use crate::linalg::{left_kernel, rational_rank, to_ratvec, Echelon, RatVec};

/// Homology of two complexes in one bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyComparison {
    pub i: usize,
    pub j: usize,
    pub left: HomologyGroup,
    pub right: HomologyGroup,
}

impl HomologyComparison {
    pub fn agrees(&self) -> bool {
        self.left == self.right
    }
}

/// Integral homology of both complexes for `i <= i_max`, `j <= 2i + j_extra`.
pub fn compare_homology(left: &DiagramComplex, right: &DiagramComplex, i_max: usize, j_extra: usize) -> Vec<HomologyComparison> {
    let mut out = Vec::new();
    for i in 0..=i_max {
        for j in 0..=2 * i + j_extra {
            out.push(HomologyComparison {
                i,
                j,
                left: left.homology(i, j, Coefficients::Integers),
                right: right.homology(i, j, Coefficients::Integers),
            });
        }
    }
    out
}

/// `H(B*)` against `H(B0)`.
pub fn star_vs_quotient(parity: Parity, i_max: usize) -> Vec<HomologyComparison> {
    compare_homology(
        &DiagramComplex::new(Variant::BStar, parity),
        &DiagramComplex::new(Variant::B0, parity),
        i_max,
        0,
    )
}

/// Generalized diagrams against their plain counterpart (`GenB` vs `B` or
/// `GenBStar` vs `BStar`). Generalized spaces are unbounded in `j`; two
/// bidegrees past the top of the plain complex are compared.
pub fn generalized_vs_plain(variant: Variant, parity: Parity, i_max: usize) -> Vec<HomologyComparison> {
    let plain = match variant {
        Variant::GenBStar => Variant::BStar,
        _ => Variant::B,
    };
    compare_homology(
        &DiagramComplex::new(variant, parity),
        &DiagramComplex::new(plain, parity),
        i_max,
        2,
    )
}

/// `y = [x1,x2]`, and for odd `d` also `z = [[x1,x3],x2]`.
pub fn ideal_generators(parity: Parity) -> Vec<Element<BigInt>> {
    let mut out = vec![parse_element("[1,2]", parity).unwrap()];
    if parity == Parity::Odd {
        out.push(parse_element("[[1,3],2]", parity).unwrap());
    }
    out
}

/// The projection `H(B) -> H(B0)` over ℚ in one bidegree, and the ideal
/// generated by [`ideal_generators`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionKernel {
    pub i: usize,
    pub j: usize,
    /// `dim H(B)`.
    pub source: usize,
    /// `dim H(B0)`.
    pub target: usize,
    pub image: usize,
    pub kernel: usize,
    /// Dimension of the ideal's image in `H(B)`.
    pub ideal: usize,
    /// Every product lies in the kernel.
    pub ideal_in_kernel: bool,
}

impl ProjectionKernel {
    /// Surjective with kernel equal to the ideal.
    pub fn holds(&self) -> bool {
        self.ideal_in_kernel && self.image == self.target && self.ideal == self.kernel
    }
}

struct Bidegree {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    cycles: Vec<RatVec>,
    boundaries: Vec<RatVec>,
}

fn combine(rows: &[RatVec], c: &RatVec) -> RatVec {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (k, x) in c {
        for (col, v) in &rows[*k] {
            *acc.entry(*col).or_insert_with(BigRational::zero) += x * v;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// The vector scaled to integers, as an element over `basis`.
fn integral_element(v: &RatVec, basis: &[Monomial]) -> Element<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.iter()
        .map(|(k, x)| (basis[*k].clone(), (x * BigRational::from_integer(den.clone())).to_integer()))
        .collect()
}

struct ProjectionData {
    complex: DiagramComplex,
    quotient: DiagramComplex,
    cache: HashMap<(usize, usize), Bidegree>,
}

impl ProjectionData {
    fn bidegree(&mut self, i: usize, j: usize) -> &Bidegree {
        if !self.cache.contains_key(&(i, j)) {
            let basis = self.complex.basis(i, j);
            let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            let out = self.complex.boundary_rows(i, j);
            let rows: Vec<RatVec> = out.rows.iter().map(|r| to_ratvec(r)).collect();
            let cycles = left_kernel(&rows, out.ncols);
            let boundaries = if j == 0 {
                vec![]
            } else {
                self.complex.boundary_rows(i, j - 1).rows.iter().map(|r| to_ratvec(r)).collect()
            };
            self.cache.insert(
                (i, j),
                Bidegree {
                    basis,
                    index,
                    cycles,
                    boundaries,
                },
            );
        }
        &self.cache[&(i, j)]
    }

    fn vector(&mut self, e: &Element<BigInt>, i: usize, j: usize) -> RatVec {
        let b = self.bidegree(i, j);
        let mut v: RatVec = e.iter().map(|(m, c)| (b.index[m], BigRational::from_integer(c.clone()))).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }
}

/// Kernel of `H(B) -> H(B0)` against the ideal, for `1 <= i <= i_max`.
pub fn projection_kernel(parity: Parity, i_max: usize) -> Vec<ProjectionKernel> {
    let mut data = ProjectionData {
        complex: DiagramComplex::new(Variant::B, parity),
        quotient: DiagramComplex::new(Variant::B0, parity),
        cache: HashMap::new(),
    };
    let hopf = DiagramHopf::new(Variant::B, parity);
    let generators: Vec<(Element<BigInt>, (usize, usize))> = ideal_generators(parity)
        .into_iter()
        .map(|g| {
            let d = bidegree(g.iter().next().unwrap().0);
            (g, d)
        })
        .collect();
    let mut out = Vec::new();
    for i in 1..=i_max {
        for j in 0..=2 * i {
            let block = data.quotient.quotient().unwrap().block(i, j);
            // image of each B basis diagram in B0, reduced modulo B0 boundaries
            let mut quotient_bd = Echelon::new();
            if j > 0 {
                for r in &data.quotient.boundary_rows(i, j - 1).rows {
                    quotient_bd.insert(&to_ratvec(r));
                }
            }
            let (projected, cycles, boundaries) = {
                let b = data.bidegree(i, j);
                let projected: Vec<RatVec> = b
                    .basis
                    .iter()
                    .map(|m| block.reduce_rational(&Element::from_monomial(m.clone())))
                    .collect();
                (projected, b.cycles.clone(), b.boundaries.clone())
            };
            let n0 = block.reps.len();
            let images: Vec<RatVec> = cycles.iter().map(|z| quotient_bd.reduce(&combine(&projected, z))).collect();
            let bd_rank = rational_rank(&boundaries);
            let image = rational_rank(&images);
            let kernel = left_kernel(&images, n0).len() - bd_rank;

            let mut products: Vec<Element<BigInt>> = Vec::new();
            for (g, (gi, gj)) in &generators {
                if *gi > i || *gj > j {
                    continue;
                }
                for i1 in 0..=i - gi {
                    for j1 in 0..=j - gj {
                        let (i2, j2) = (i - gi - i1, j - gj - j1);
                        let left: Vec<Element<BigInt>> = {
                            let b = data.bidegree(i1, j1);
                            b.cycles.iter().map(|z| integral_element(z, &b.basis)).collect()
                        };
                        let right: Vec<Element<BigInt>> = {
                            let b = data.bidegree(i2, j2);
                            b.cycles.iter().map(|z| integral_element(z, &b.basis)).collect()
                        };
                        for a in &left {
                            let ag = hopf.product(a, g);
                            for c in &right {
                                products.push(hopf.product(&ag, c));
                            }
                        }
                    }
                }
            }
            let mut ideal_in_kernel = true;
            let mut span = boundaries.clone();
            for p in &products {
                if !data.complex.boundary(p).is_zero() || !quotient_bd.reduce(&block.reduce_rational(p)).is_empty() {
                    ideal_in_kernel = false;
                }
                span.push(data.vector(p, i, j));
            }
            out.push(ProjectionKernel {
                i,
                j,
                source: cycles.len() - bd_rank,
                target: data.quotient.homology(i, j, Coefficients::Rationals).rank,
                image,
                kernel,
                ideal: rational_rank(&span) - bd_rank,
                ideal_in_kernel,
            });
        }
    }
    out
}

/// `dim H(B*, ∂̄)` against `Σ_k dim H(B)(i-k, j-k)`: the homology of `B` times
/// a free algebra on the lone asterisk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCheck {
    pub i: usize,
    pub j: usize,
    pub observed: usize,
    pub predicted: usize,
}

pub fn star_bar_factorization(parity: Parity, i_max: usize) -> Vec<FactorizationCheck> {
    let star = DiagramComplex::with_part(Variant::BStar, parity, DiffPart::Bar);
    let plain = DiagramComplex::new(Variant::B, parity);
    let mut plain_dims: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Vec::new();
    for i in 0..=i_max {
        for j in 0..=2 * i {
            let predicted = (0..=i.min(j))
                .map(|k| {
                    *plain_dims
                        .entry((i - k, j - k))
                        .or_insert_with(|| plain.homology(i - k, j - k, Coefficients::Rationals).rank)
                })
                .sum();
            out.push(FactorizationCheck {
                i,
                j,
                observed: star.homology(i, j, Coefficients::Rationals).rank,
                predicted,
            });
        }
    }
    out
}

//! Chord-diagram bialgebras: the top homology `H_{i,2i}` of the `B` complex,
//! i.e. products of chords modulo the four-term relations (the image of the
//! boundary from `(i, 2i-1)`), optionally modulo isolated chords as well.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::complex::DiagramComplex;
use crate::diagrams::Variant;
use crate::free_superalgebra::{Element, Grading, Monomial, Parity};
use crate::hopf::DiagramHopf;
use crate::linalg::{to_ratvec, Echelon, RatVec};

/// Sizes of one graded piece of a chord bialgebra over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDimensions {
    pub complexity: usize,
    /// Number of chord diagrams with `complexity` chords.
    pub diagrams: usize,
    /// Dimension of the quotient.
    pub dimension: usize,
    /// Dimension of its primitive part.
    pub primitive: usize,
}

/// Relations of one complexity: the four-term image plus, optionally, every
/// diagram containing a chord between neighbouring points.
pub struct ChordSpace {
    pub parity: Parity,
    pub complexity: usize,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Echelon,
}

impl ChordSpace {
    pub fn new(parity: Parity, complexity: usize, one_term: bool) -> Self {
        let i = complexity;
        let complex = DiagramComplex::new(Variant::B, parity);
        let basis = complex.basis(i, 2 * i);
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let mut relations = Echelon::new();
        if i > 0 {
            for row in &complex.boundary_rows(i, 2 * i - 1).rows {
                relations.insert(&to_ratvec(row));
            }
        }
        if one_term {
            for (k, m) in basis.iter().enumerate() {
                if has_isolated_chord(m) {
                    relations.insert(&vec![(k, BigRational::from_integer(1.into()))]);
                }
            }
        }
        ChordSpace {
            parity,
            complexity,
            basis,
            index,
            relations,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len() - self.relations.rank()
    }

    fn vector<C: Coeff>(&self, e: &Element<C>) -> RatVec {
        let mut v: RatVec = e.iter().map(|(m, c)| (self.index[m], c.to_rational())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Whether an element of `B_{i,2i}` vanishes in the quotient.
    pub fn is_zero(&self, e: &Element<BigInt>) -> bool {
        self.relations.reduce(&self.vector(e)).is_empty()
    }

    /// Dimension of the primitive part: rank of the primitive projection on
    /// the quotient.
    pub fn primitive_dimension(&self) -> usize {
        let hopf = DiagramHopf::new(Variant::B, self.parity);
        let mut span = self.relations.clone();
        let base = span.rank();
        for m in &self.basis {
            let p = hopf.primitive_projection(&Element::from_monomial(m.clone()));
            span.insert(&self.vector(&p));
        }
        span.rank() - base
    }
}

/// A factor `[x_k, x_{k+1}]`.
pub fn has_isolated_chord(m: &Monomial) -> bool {
    m.factors()
        .iter()
        .any(|w| w.len() == 2 && w[1].point == w[0].point + 1)
}

/// Dimensions and primitive dimensions for complexities `1..=i_max`.
pub fn chord_bialgebra(parity: Parity, one_term: bool, i_max: usize) -> Vec<ChordDimensions> {
    (1..=i_max)
        .map(|i| {
            let s = ChordSpace::new(parity, i, one_term);
            ChordDimensions {
                complexity: i,
                diagrams: s.basis.len(),
                dimension: s.dimension(),
                primitive: s.primitive_dimension(),
            }
        })
        .collect()
}

/// Move the first point to the end: `(t_1, .., t_{2n}) -> (t_2, .., t_{2n}, t_1)`.
pub fn rotate(m: &Monomial, parity: Parity) -> Vec<(Monomial, i64)> {
    let j = m.num_points() as u16;
    m.relabel(Grading::of(parity), |p| if p == 1 { j } else { p - 1 })
}

/// Diagrams whose rotation differs from them in the quotient.
pub fn circular_defects(space: &ChordSpace) -> Vec<Monomial> {
    space
        .basis
        .iter()
        .filter(|m| {
            let mut diff = Element::from_monomial((*m).clone());
            for (r, c) in rotate(m, space.parity) {
                diff.add_term(r, BigInt::from(-c));
            }
            !space.is_zero(&diff)
        })
        .cloned()
        .collect()
}

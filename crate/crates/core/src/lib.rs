//! Bracket diagrams, their complexes and Hopf algebras, the operads built on
//! the same free superalgebras, and exact homology over ℤ, ℚ and ℤ/p.

pub mod coeff;
pub mod free_superalgebra;
pub mod diagrams;
pub mod b0;
pub mod complex;
pub mod linalg;
pub mod hopf;
pub mod operations;
pub mod operad;
pub mod chord;
pub mod quasi_iso;
pub mod verify;

pub use chord::{chord_bialgebra, ChordDimensions, ChordSpace};
pub use complex::{Coefficients, ComplexError, DiagramComplex, HomologyGroup};
pub use diagrams::{DiagramError, DiffPart, Variant};
pub use free_superalgebra::{format_element, parse_element, AlgebraError, Element, Gen, Grading, Monomial, Parity, Word};
pub use hopf::{DiagramHopf, Tensor};
pub use linalg::{Dense, SparseMatrix};
pub use operad::{OpElement, Operad, OperadError, OperadKind, SignCertificate};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

//! Insertion sums `A ▷ B`, the asterisk maps `A*`, `A⁰`, `A^⋆`, and the
//! odd Kirillov bracket.

use num_bigint::BigInt;

use crate::diagrams::{bidegree, insert_monomial, DiagramError};
use crate::free_superalgebra::{delta_monomial, Element, Gen, Grading, Monomial, Parity};

/// Parity of the weight `p = i(d-1) - j`.
pub fn weight_parity(m: &Monomial, parity: Parity) -> u32 {
    let (i, j) = bidegree(m);
    match parity {
        Parity::Odd => (j % 2) as u32,
        Parity::Even => ((i + j) % 2) as u32,
    }
}

fn sign(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn lone_star() -> Monomial {
    Monomial::from_sorted(vec![vec![Gen::starred(1)]])
}

/// `A*`: put an asterisk on one simple point, summed over simple points.
pub fn star_map(a: &Element<BigInt>, parity: Parity) -> Result<Element<BigInt>, DiagramError> {
    let mut out = Element::zero();
    for (m, c) in a.iter() {
        let s = c * sign(weight_parity(m, parity) + 1);
        for g in m.letters().filter(|g| !g.star).collect::<Vec<_>>() {
            for (mm, k) in insert_monomial(m, g.point, &lone_star(), parity)? {
                out.add_term(mm, &s * BigInt::from(k));
            }
        }
    }
    Ok(out)
}

/// `A⁰ = (-1)^{p(A)-1} δ(A)` (exterior envelope only).
pub fn circle_map(a: &Element<BigInt>, parity: Parity) -> Result<Element<BigInt>, DiagramError> {
    if parity != Parity::Even {
        return Err(DiagramError::Variant(crate::diagrams::Variant::BStar));
    }
    let gr = Grading::of(parity);
    let mut out = Element::zero();
    for (m, c) in a.iter() {
        let s = c * sign(weight_parity(m, parity) + 1);
        for (mm, k) in delta_monomial(m, gr) {
            out.add_term(mm, &s * BigInt::from(k));
        }
    }
    Ok(out)
}

/// `A^⋆ = A* + A⁰`.
pub fn star_star(a: &Element<BigInt>, parity: Parity) -> Result<Element<BigInt>, DiagramError> {
    Ok(star_map(a, parity)? + circle_map(a, parity)?)
}

/// Which insertion sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    /// `A` at simple points, `A^⋆` at asterisks.
    Full,
    /// `A` at simple points, `A*` at asterisks.
    Bar,
    /// `A⁰` at asterisks only.
    BarBar,
}

/// `A ▷_j B`: insert at the `j`-th point of `B` (1-based); zero past the
/// last point.
pub fn triangle_j(a: &Element<BigInt>, b: &Element<BigInt>, j: u16, parity: Parity, kind: Triangle) -> Result<Element<BigInt>, DiagramError> {
    let mut out = Element::zero();
    let a_star = if parity == Parity::Even && kind != Triangle::BarBar {
        star_map(a, parity)?
    } else {
        Element::zero()
    };
    let a_circ = if parity == Parity::Even && kind != Triangle::Bar {
        circle_map(a, parity)?
    } else {
        Element::zero()
    };
    for (mb, cb) in b.iter() {
        if j as usize > mb.num_points() {
            continue;
        }
        let starred = mb.letters().any(|g| g.point == j && g.star);
        let value = match (starred, kind) {
            (false, Triangle::BarBar) => continue,
            (false, _) => a.clone(),
            (true, Triangle::Full) => a_star.clone() + a_circ.clone(),
            (true, Triangle::Bar) => a_star.clone(),
            (true, Triangle::BarBar) => a_circ.clone(),
        };
        for (ma, ca) in value.iter() {
            for (m, k) in insert_monomial(mb, j, ma, parity)? {
                out.add_term(m, cb * ca * BigInt::from(k));
            }
        }
    }
    Ok(out)
}

/// `A ▷ B = Σ_j A ▷_j B`.
pub fn triangle(a: &Element<BigInt>, b: &Element<BigInt>, parity: Parity, kind: Triangle) -> Result<Element<BigInt>, DiagramError> {
    let max = b.iter().map(|(m, _)| m.num_points()).max().unwrap_or(0);
    let mut out = Element::zero();
    for j in 1..=max as u16 {
        out.add_assign(&triangle_j(a, b, j, parity, kind)?);
    }
    Ok(out)
}

/// `{A, B} = A ▷ B - (-1)^{(p(A)-1)(p(B)-1)} B ▷ A`, bilinear.
pub fn kirillov_bracket(a: &Element<BigInt>, b: &Element<BigInt>, parity: Parity) -> Result<Element<BigInt>, DiagramError> {
    let mut out = Element::zero();
    for (ma, ca) in a.iter() {
        let ea = Element::term(ma.clone(), ca.clone());
        let pa = weight_parity(ma, parity);
        for (mb, cb) in b.iter() {
            let eb = Element::term(mb.clone(), cb.clone());
            let pb = weight_parity(mb, parity);
            out.add_assign(&triangle(&ea, &eb, parity, Triangle::Full)?);
            let s = sign((pa + 1) * (pb + 1));
            out.sub_assign(&triangle(&eb, &ea, parity, Triangle::Full)?.scaled(&s));
        }
    }
    Ok(out)
}

//! Hand computations in complexity 2 (`B`) and 3 (`B0`), reproduced exactly.

use bracketdiag::complex::{Coefficients, DiagramComplex, HomologyGroup};
use bracketdiag::hopf::DiagramHopf;
use bracketdiag::linalg::{dense_from_i64, invariant_factors_dense, smith_normal_form, Dense};
use bracketdiag::operations::kirillov_bracket;
use bracketdiag::{parse_element, Element, Parity, Variant};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn el(s: &str, parity: Parity) -> Element<BigInt> {
    parse_element(s, parity).unwrap()
}

fn els(items: &[&str], parity: Parity) -> Vec<Element<BigInt>> {
    items.iter().map(|s| el(s, parity)).collect()
}

fn comb(basis: &[Element<BigInt>], coeffs: &[i64]) -> Element<BigInt> {
    let mut out = Element::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        out.add_scaled(b, &BigInt::from(*c));
    }
    out
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det_i64(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as ratios of determinantal divisors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    let mut divisors = vec![1i64];
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&a| cols.iter().map(|&b| m[a][b]).collect()).collect();
                g = g.gcd(&det_i64(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Whether `v` is an integer combination of the columns of `m`.
fn in_column_lattice(m: &Dense, v: &[i64]) -> bool {
    let s = smith_normal_form(m);
    assert!(s.verify(m));
    let uv: Vec<BigInt> = s.u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * BigInt::from(*b)).sum()).collect();
    uv.iter().enumerate().all(|(k, x)| match s.factors.get(k) {
        Some(d) => x.is_multiple_of(d),
        None => x.is_zero(),
    })
}

fn to_dense(rows: &[Vec<i64>]) -> Dense {
    dense_from_i64(rows)
}

pub fn even_complexity_two() {
    let p = Parity::Even;
    let c = DiagramComplex::new(Variant::B, p);
    let a = els(&["[[1,2],3]", "[[1,3],2]"], p);
    let b = els(&["[1,4]^[2,3]", "[1,3]^[2,4]", "[1,2]^[3,4]"], p);
    assert_eq!(c.boundary(&a[0]), comb(&b, &[1, 0, 1]));
    assert_eq!(c.boundary(&a[1]), comb(&b, &[2, 0, 0]));
    assert!(c.homology(2, 3, Coefficients::Integers).is_zero());
    assert_eq!(
        c.homology(2, 4, Coefficients::Integers),
        HomologyGroup {
            rank: 1,
            torsion: vec![BigInt::from(2)]
        }
    );
    // y^2 = b3 has order two; the image has no b2 component, so the b2
    // coordinate maps H onto Z and sends u = b2 to 1
    let hopf = DiagramHopf::new(Variant::B, p);
    let y = el("[1,2]", p);
    assert_eq!(hopf.product(&y, &y), b[2]);
    let image = to_dense(&[vec![1, 2], vec![0, 0], vec![1, 0]]);
    assert!(!in_column_lattice(&image, &[0, 0, 1]));
    assert!(in_column_lattice(&image, &[0, 0, 2]));
    assert!(!in_column_lattice(&image, &[0, 1, 0]));
    assert_eq!(c.boundary_matrix_in(2, 3, &a, &b).unwrap(), image);
}

pub fn odd_complexity_two() {
    let p = Parity::Odd;
    let c = DiagramComplex::new(Variant::B, p);
    let a = els(&["[[1,2],3]", "[[1,3],2]"], p);
    let b = els(&["[1,4].[2,3]", "[1,3].[2,4]", "[1,2].[3,4]"], p);
    assert_eq!(c.boundary(&a[0]), comb(&b, &[1, 0, -1]));
    assert!(c.boundary(&a[1]).is_zero());
    assert_eq!(c.homology(2, 3, Coefficients::Integers), HomologyGroup::free(1));
    assert_eq!(c.homology(2, 4, Coefficients::Integers), HomologyGroup::free(2));

    let y = el("[1,2]", p);
    let z = a[1].clone();
    assert_eq!(kirillov_bracket(&y, &y, p).unwrap(), z.scaled(&BigInt::from(-2)));

    let hopf = DiagramHopf::new(Variant::B, p);
    assert_eq!(hopf.product(&y, &y), b[2]);
    let u = b[1].clone();
    let expect = (u.clone() - b[2].clone()).to_rational();
    let primitive = hopf.primitive_projection(&u);
    assert_eq!(primitive, expect);
    assert!(hopf.is_primitive(&primitive));
}

const B0_EVEN_B: [&str; 6] = [
    "[[2,4],5]^[1,3]",
    "[[2,5],3]^[1,4]",
    "[[1,3],5]^[2,4]",
    "[[1,5],3]^[2,4]",
    "[[1,3],4]^[2,5]",
    "[[1,4],2]^[3,5]",
];
const B0_EVEN_C: [&str; 5] = [
    "[1,6]^[2,4]^[3,5]",
    "[1,5]^[2,4]^[3,6]",
    "[1,4]^[2,6]^[3,5]",
    "[1,4]^[2,5]^[3,6]",
    "[1,3]^[2,5]^[4,6]",
];

fn odd_names(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.replace('^', ".")).collect()
}

struct B0Case {
    parity: Parity,
    a: Vec<Element<BigInt>>,
    b: Vec<Element<BigInt>>,
    c: Vec<Element<BigInt>>,
}

fn b0_case(parity: Parity) -> B0Case {
    let (bs, cs): (Vec<String>, Vec<String>) = match parity {
        Parity::Even => (B0_EVEN_B.iter().map(|s| s.to_string()).collect(), B0_EVEN_C.iter().map(|s| s.to_string()).collect()),
        Parity::Odd => (odd_names(&B0_EVEN_B), odd_names(&B0_EVEN_C)),
    };
    B0Case {
        parity,
        a: vec![el("[[1,3],[2,4]]", parity)],
        b: bs.iter().map(|s| el(s, parity)).collect(),
        c: cs.iter().map(|s| el(s, parity)).collect(),
    }
}

fn check_b0_matrices(case: &B0Case, a_col: &[i64], bc: &[Vec<i64>]) {
    let c = DiagramComplex::new(Variant::B0, case.parity);
    let column: Vec<Vec<i64>> = a_col.iter().map(|x| vec![*x]).collect();
    assert_eq!(c.boundary_matrix_in(3, 4, &case.a, &case.b).unwrap(), to_dense(&column));
    assert_eq!(c.boundary_matrix_in(3, 5, &case.b, &case.c).unwrap(), to_dense(bc));
    assert!(c.homology(3, 4, Coefficients::Integers).is_zero());
    assert_eq!(c.homology(3, 5, Coefficients::Integers), HomologyGroup::free(1));
    let computed: Vec<i64> = invariant_factors_dense(&to_dense(bc)).iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert_eq!(computed, determinantal_factors(bc));
}

/// `w` and `∂a1` span the integer cycles of `(3, 5)`: both are cycles and
/// their 2×2 minors are coprime.
fn check_generator(bc: &[Vec<i64>], a_col: &[i64], w: &[i64]) {
    for row in bc {
        assert_eq!(row.iter().zip(w).map(|(x, y)| x * y).sum::<i64>(), 0);
        assert_eq!(row.iter().zip(a_col).map(|(x, y)| x * y).sum::<i64>(), 0);
    }
    let mut g = 0i64;
    for p in 0..6 {
        for q in p + 1..6 {
            g = g.gcd(&(w[p] * a_col[q] - w[q] * a_col[p]));
        }
    }
    assert_eq!(g, 1);
    // kernel rank 6 - rank(bc) = 2
    assert_eq!(invariant_factors_dense(&to_dense(bc)).len(), 4);
}

pub fn even_quotient_complexity_three() {
    let case = b0_case(Parity::Even);
    let a_col = [1, 0, 0, -1, 0, 1];
    let bc = vec![
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 1, 0, 1, 1, 1],
        vec![1, 1, 1, 1, 1, 0],
        vec![1, -1, 1, 0, 1, -1],
        vec![-1, 0, -1, 0, 0, 1],
    ];
    check_b0_matrices(&case, &a_col, &bc);
    check_generator(&bc, &a_col, &[0, 1, 0, -2, 1, 0]);

    // c1 = c4 = 0, c2 = -c3 = -c5 in the cokernel
    let m = to_dense(&bc);
    for v in [[1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 1, 1, 0, 0], [0, 1, 0, 0, 1]] {
        assert!(in_column_lattice(&m, &v));
    }
    assert!(!in_column_lattice(&m, &[0, 1, 0, 0, 0]));

    // w' is a cycle of B and equals w in the quotient
    let p = Parity::Even;
    let w_prime = el("[[2,5],3]^[1,4]", p) - el("[[1,5],3]^[2,4]", p).scaled(&BigInt::from(2)) + el("[[1,4],3]^[2,5]", p);
    assert!(DiagramComplex::new(Variant::B, p).boundary(&w_prime).is_zero());
    let q = DiagramComplex::new(Variant::B0, p);
    let w = comb(&case.b, &[0, 1, 0, -2, 1, 0]);
    assert_eq!(q.quotient().unwrap().project(&w_prime), q.quotient().unwrap().project(&w));
}

pub fn odd_quotient_complexity_three() {
    let case = b0_case(Parity::Odd);
    let a_col = [-1, -2, 0, 1, 2, 1];
    let bc = vec![
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 1, 0, -1, 1, 1],
        vec![1, 1, -1, 1, 1, 0],
        vec![-1, -1, 1, 0, -1, -1],
        vec![1, 0, -1, 0, 0, 1],
    ];
    check_b0_matrices(&case, &a_col, &bc);
    check_generator(&bc, &a_col, &[0, 1, 0, 0, -1, 0]);

    // c1 = 0, c2 = c3 = c5, c4 = 2 c2
    let m = to_dense(&bc);
    for v in [[1, 0, 0, 0, 0], [0, 1, -1, 0, 0], [0, 1, 0, 0, -1], [0, -2, 0, 1, 0]] {
        assert!(in_column_lattice(&m, &v));
    }
    assert!(!in_column_lattice(&m, &[0, 1, 0, 0, 0]));

    let p = Parity::Odd;
    let plain = DiagramComplex::new(Variant::B, p);
    let quotient = DiagramComplex::new(Variant::B0, p);
    let project = |e: &Element<BigInt>| quotient.quotient().unwrap().project(e);
    let w = comb(&case.b, &[0, 1, 0, 0, -1, 0]);
    let w_prime = el("[[2,5],3].[1,4]", p) + el("[[1,4],3].[2,5]", p);
    assert!(plain.boundary(&w_prime).is_zero());
    assert_eq!(project(&w_prime), project(&w));

    // {y, u} written out, then in the quotient
    let y = el("[1,2]", p);
    let u = el("[1,3].[2,4]", p);
    let bracket = kirillov_bracket(&y, &u, p).unwrap();
    let written = el("[1,4].[[2,3],5]", p)
        - el("[1,3].[[2,5],4]", p)
        - el("[2,4].[[1,5],3]", p)
        - el("[3,5].[[1,4],2]", p)
        - el("[2,5].[1,[3,4]]", p);
    assert_eq!(bracket, written);
    let b1_b4_b6 = comb(&case.b, &[1, 0, 0, -1, 0, -1]);
    assert_eq!(project(&bracket), project(&b1_b4_b6));
    let da1 = quotient.boundary(&case.a[0]);
    assert_eq!(project(&b1_b4_b6), project(&(da1.negated() - w.scaled(&BigInt::from(2)))));

    // 2w' + {y, u} is a boundary of B over ℚ
    let target = plain.coordinates(&(w_prime.scaled(&BigInt::from(2)) + bracket), 3, 5);
    let image = plain.boundary_matrix(3, 4);
    let mut rows: Vec<Vec<BigInt>> = image.clone();
    for (r, x) in rows.iter_mut().zip(&target) {
        r.push(x.clone());
    }
    assert_eq!(
        invariant_factors_dense(&rows).len(),
        invariant_factors_dense(&image).len(),
        "2w' + {{y,u}} is not in the rational image"
    );
    assert!(target.iter().any(|x| x.is_positive() || x.is_negative()));
}

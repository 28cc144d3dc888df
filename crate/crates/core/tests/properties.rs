//! Randomized algebraic laws.

use std::sync::OnceLock;

use bracketdiag::free_superalgebra::{bracket, delta, format_element, parse_combination, parse_element, product, Grading};
use bracketdiag::linalg::{dense_from_i64, invariant_factors_dense, smith_normal_form};
use bracketdiag::operad::internal_degree;
use bracketdiag::verify::symmetric_algebra_dimensions;
use bracketdiag::{DiagramComplex, DiagramHopf, Element, Monomial, OpElement, Operad, OperadKind, Parity, Variant};
use num_bigint::BigInt;
use proptest::prelude::*;

const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];

/// Diagrams of `B*` with complexity at most two, per parity.
fn pool(parity: Parity) -> &'static [Monomial] {
    static POOLS: OnceLock<[Vec<Monomial>; 2]> = OnceLock::new();
    let pools = POOLS.get_or_init(|| {
        PARITIES.map(|p| {
            let c = DiagramComplex::new(Variant::BStar, p);
            let mut out = Vec::new();
            for i in 1..=2 {
                for j in 0..=2 * i {
                    out.extend(c.basis(i, j));
                }
            }
            out
        })
    });
    &pools[parity as usize]
}

fn parity_strategy() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

/// A diagram and a parity.
fn diagram() -> impl Strategy<Value = (Parity, Monomial)> {
    parity_strategy().prop_flat_map(|p| {
        let n = pool(p).len();
        (Just(p), 0..n).prop_map(|(p, k)| (p, pool(p)[k].clone()))
    })
}

/// Up to three diagrams with small coefficients.
fn combination(parity: Parity) -> impl Strategy<Value = Element<BigInt>> {
    prop::collection::vec((0..pool(parity).len(), -3i64..=3), 1..=3).prop_map(move |terms| {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_i64(pool(parity)[k].clone(), c);
        }
        e
    })
}

fn sign(e: u32) -> BigInt {
    BigInt::from(if e % 2 == 0 { 1 } else { -1 })
}

/// Degree of the bracket's arguments: the exchange degree, shifted by one in
/// the exterior envelope where the bracket is odd.
fn shifted(gr: Grading, m: &Monomial) -> u32 {
    gr.degree(m) + gr.exterior as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_is_identity(p in parity_strategy(), seed in 0usize..1000) {
        let pool = pool(p);
        let mut e: Element<BigInt> = Element::zero();
        e.add_i64(pool[seed % pool.len()].clone(), 2);
        e.add_i64(pool[(seed * 7 + 3) % pool.len()].clone(), -1);
        let text = format_element(&e, p);
        prop_assert_eq!(parse_combination::<BigInt>(&text, p).unwrap(), e.clone());
        for (m, _) in e.iter() {
            let single = format_element(&Element::<BigInt>::from_monomial(m.clone()), p);
            prop_assert_eq!(parse_element::<BigInt>(&single, p).unwrap(), Element::from_monomial(m.clone()));
        }
    }

    #[test]
    fn boundary_is_a_derivation((p, a) in diagram(), k in 0usize..1000) {
        let b = pool(p)[k % pool(p).len()].clone();
        for variant in [Variant::B, Variant::BStar] {
            if !bracketdiag::diagrams::belongs(&a, variant) || !bracketdiag::diagrams::belongs(&b, variant) {
                continue;
            }
            let c = DiagramComplex::new(variant, p);
            let h = DiagramHopf::new(variant, p);
            let (ea, eb) = (Element::from_monomial(a.clone()), Element::from_monomial(b.clone()));
            let lhs = c.boundary(&h.product(&ea, &eb));
            let rhs = h.product(&c.boundary(&ea), &eb) + h.product(&ea, &c.boundary(&eb)).scaled(&sign(h.degree(&a)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coproduct_is_multiplicative(p in parity_strategy(), x in 0usize..1000, y in 0usize..1000) {
        let h = DiagramHopf::new(Variant::BStar, p);
        let pool = pool(p);
        let a = Element::from_monomial(pool[x % pool.len()].clone());
        let b = Element::from_monomial(pool[y % pool.len()].clone());
        prop_assert_eq!(h.coproduct(&h.product(&a, &b)), h.tensor_product(&h.coproduct(&a), &h.coproduct(&b)));
    }

    #[test]
    fn antipode_is_an_involution(p in parity_strategy(), k in 0usize..1000, l in 0usize..1000) {
        let h = DiagramHopf::new(Variant::BStar, p);
        let pool = pool(p);
        let x = h.product(&Element::from_monomial(pool[k % pool.len()].clone()), &Element::from_monomial(pool[l % pool.len()].clone()));
        prop_assert_eq!(h.antipode(&h.antipode(&x)), x);
    }

    #[test]
    fn bracket_is_super_antisymmetric_and_satisfies_jacobi(
        (p, a) in diagram(), k in 0usize..1000, l in 0usize..1000
    ) {
        let gr = Grading::of(p);
        let pool = pool(p);
        let b = pool[k % pool.len()].shifted(10);
        let c = pool[l % pool.len()].shifted(20);
        let (sa, sb) = (shifted(gr, &a), shifted(gr, &b));
        let (ea, eb, ec) = (Element::from_monomial(a), Element::from_monomial(b), Element::from_monomial(c));
        let ab: Element<BigInt> = bracket(&ea, &eb, gr);
        prop_assert_eq!(ab.clone(), bracket(&eb, &ea, gr).scaled(&-sign(sa * sb)));
        let lhs = bracket(&ea, &bracket(&eb, &ec, gr), gr);
        let rhs = bracket(&ab, &ec, gr) + bracket(&eb, &bracket(&ea, &ec, gr), gr).scaled(&sign(sa * sb));
        prop_assert_eq!(lhs, rhs);
        // derivation of the product
        let lhs = bracket(&ea, &product(&eb, &ec, gr), gr);
        let rhs = product(&ab, &ec, gr) + product(&eb, &bracket(&ea, &ec, gr), gr).scaled(&sign(sa * gr.degree(eb.iter().next().unwrap().0)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chevalley_eilenberg_squares_to_zero(a in combination(Parity::Even), k in 0usize..1000) {
        let gr = Grading::of(Parity::Even);
        let b = Element::from_monomial(pool(Parity::Even)[k % pool(Parity::Even).len()].shifted(10));
        let x = product(&a, &b, gr);
        prop_assert!(delta(&delta(&x, gr).unwrap(), gr).unwrap().is_zero());
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(-6i64..=6, 16)
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 4..r * 4 + cols].to_vec()).collect();
        let dense = dense_from_i64(&m);
        let s = smith_normal_form(&dense);
        prop_assert!(s.verify(&dense));
        let want: Vec<BigInt> = determinantal_factors(&m).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(invariant_factors_dense(&dense), want);
    }

    #[test]
    fn symmetric_algebra_counts_multisets(p in prop::collection::vec(0usize..=3, 1..=6)) {
        let got = symmetric_algebra_dimensions(&p);
        for (n, g) in got.iter().enumerate() {
            prop_assert_eq!(*g, multisets(&p, n, 0));
        }
    }

    #[test]
    fn composition_is_associative(
        kind in prop_oneof![Just(OperadKind::Poisson), Just(OperadKind::Gerstenhaber), Just(OperadKind::Bv)],
        picks in prop::collection::vec(0usize..1000, 8),
    ) {
        let o = Operad::new(kind);
        let pick = |n: usize, k: usize| {
            let b = o.basis(n);
            OpElement::basis(n, b[picks[k] % b.len()].clone())
        };
        let x = pick(2, 0);
        let ys = [pick(1 + picks[1] % 2, 2), pick(picks[3] % 2, 4)];
        let zs: Vec<OpElement> = (0..ys[0].arity + ys[1].arity).map(|k| pick(picks[5 + k] % 2, 5 + k)).collect();
        let left = o.gamma(&o.gamma(&x, &ys).unwrap(), &zs).unwrap();
        let (za, zb) = zs.split_at(ys[0].arity);
        let right = o.gamma(&x, &[o.gamma(&ys[0], za).unwrap(), o.gamma(&ys[1], zb).unwrap()]).unwrap();
        let internal = |e: &OpElement| e.value.iter().next().map(|(m, _)| internal_degree(kind, m)).unwrap_or(0);
        let s = za.iter().map(internal).sum::<u32>() * internal(&ys[1]);
        prop_assert_eq!(left, right.scaled(if s % 2 == 0 { 1 } else { -1 }));
    }
}

/// Multisets of total weight `n` drawn from `p[k]` kinds of weight `k + 1`,
/// using kinds of weight at least `from + 1`.
fn multisets(p: &[usize], n: usize, from: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for k in from..p.len() {
        let w = k + 1;
        // take m >= 1 items of weight w: multisets of size m from p[k] kinds
        let mut m = 1;
        while m * w <= n {
            total += binomial(p[k] + m - 1, m) * multisets(p, n - m * w, k + 1);
            m += 1;
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero invariant factors as quotients of successive gcds of minors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    let mut prev = 1;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

use bracketdiag::hopf::connected_components;
use bracketdiag::{parse_element, DiagramHopf, Element, Parity, Tensor, Variant};
use num_bigint::BigInt;

fn el(s: &str, p: Parity) -> Element<BigInt> {
    parse_element(s, p).unwrap()
}

#[test]
fn chord_is_primitive_with_antipode_minus_one() {
    for p in [Parity::Even, Parity::Odd] {
        let h = DiagramHopf::new(Variant::B, p);
        let y = el("[1,2]", p);
        let mut expect = Tensor::zero();
        let m = y.iter().next().unwrap().0.clone();
        expect.add_term(m.clone(), bracketdiag::Monomial::unit(), BigInt::from(1));
        expect.add_term(bracketdiag::Monomial::unit(), m, BigInt::from(1));
        assert_eq!(h.coproduct(&y), expect);
        assert_eq!(h.antipode(&y), -y.clone());
        assert_eq!(h.counit(&y), BigInt::from(0));
        assert_eq!(h.counit(&Element::unit()), BigInt::from(1));
    }
}

#[test]
fn interlaced_chords_form_one_component() {
    let p = Parity::Odd;
    let crossing = el("[1,3].[2,4]", p);
    let nested = el("[1,4].[2,3]", p);
    let separate = el("[1,2].[3,4]", p);
    let count = |e: &Element<BigInt>| connected_components(e.iter().next().unwrap().0).len();
    assert_eq!(count(&crossing), 1);
    assert_eq!(count(&nested), 1);
    assert_eq!(count(&separate), 2);
}

#[test]
fn product_of_chords_places_them_side_by_side() {
    for p in [Parity::Even, Parity::Odd] {
        let h = DiagramHopf::new(Variant::B, p);
        let y = el("[1,2]", p);
        assert_eq!(h.product(&y, &y), el(if p == Parity::Even { "[1,2]^[3,4]" } else { "[1,2].[3,4]" }, p));
    }
}

/// For even `d` the chord is odd, so its square is half a super commutator
/// and stays primitive; for odd `d` the square is a genuine product.
#[test]
fn primitive_projection_of_a_square() {
    for p in [Parity::Even, Parity::Odd] {
        let h = DiagramHopf::new(Variant::B, p);
        let y = el("[1,2]", p);
        let yy = h.product(&y, &y);
        let projected = h.primitive_projection(&yy);
        match p {
            Parity::Even => assert_eq!(projected, yy.to_rational()),
            Parity::Odd => assert!(projected.is_zero()),
        }
        assert_eq!(h.primitive_projection(&y), y.to_rational());
    }
}

#[test]
fn star_diagrams_have_a_hopf_structure() {
    let p = Parity::Even;
    let h = DiagramHopf::new(Variant::BStar, p);
    let star = el("1*", p);
    assert_eq!(h.antipode(&star), -star.clone());
    let x = h.product(&star, &el("[1,2]", p));
    assert_eq!(h.antipode(&h.antipode(&x)), x);
}

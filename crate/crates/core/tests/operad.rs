use bracketdiag::{Coefficients, DiagramComplex, OpElement, Operad, OperadError, OperadKind};

fn all() -> impl Iterator<Item = Operad> {
    OperadKind::ALL.into_iter().map(Operad::new)
}

#[test]
fn multiplication_composes_to_zero() {
    for o in all() {
        let m2 = o.m2();
        assert!(o.circ(&m2, &m2).is_zero(), "{}", o.kind.name());
        // the identity is inserted into both slots of m2
        assert_eq!(o.hochschild_diff(&o.identity()), m2);
    }
}

#[test]
fn composition_checks_arity() {
    let o = Operad::new(OperadKind::Gerstenhaber);
    assert_eq!(o.gamma(&o.m2(), &[o.identity()]), Err(OperadError::Arity { expected: 2, got: 1 }));
    assert!(o.parse("1^2", 3).is_err());
}

#[test]
fn parse_and_format_agree() {
    for (kind, text, arity) in [
        (OperadKind::Poisson, "[1,2].3", 3),
        (OperadKind::Gerstenhaber, "[1,3]^2", 3),
        (OperadKind::Bv, "1*^[2,3]", 3),
        (OperadKind::Bv, "()", 0),
    ] {
        let o = Operad::new(kind);
        let x = o.parse(text, arity).unwrap();
        assert_eq!(o.parse(&o.format(&x), arity).unwrap(), x);
    }
}

/// Inputs where the brace sign without internal Koszul terms breaks the
/// brace identity.
#[test]
fn brace_identity_with_internal_degrees() {
    let g = Operad::new(OperadKind::Gerstenhaber);
    let (x, unit, y) = (g.parse("1^2", 2).unwrap(), g.parse("()", 0).unwrap(), g.parse("[1,2]", 2).unwrap());
    assert_eq!(g.brace(&g.brace(&x, &[unit.clone()]), &[y.clone()]), g.nested_brace(&x, &[unit], &[y]));

    let bv = Operad::new(OperadKind::Bv);
    let (x, star, y) = (bv.parse("1^2", 2).unwrap(), bv.parse("1*", 1).unwrap(), bv.parse("1^2", 2).unwrap());
    assert_eq!(bv.brace(&bv.brace(&x, &[star.clone()]), &[y.clone()]), bv.nested_brace(&x, &[star], &[y]));
}

#[test]
fn brace_with_one_argument_is_circle_product() {
    for o in all() {
        let x = o.m2();
        let y = OpElement::basis(2, o.basis(2)[0].clone());
        assert_eq!(o.brace(&x, &[y.clone()]), o.circ(&x, &y));
    }
}

#[test]
fn bv_operator_squares_to_zero() {
    let o = Operad::new(OperadKind::Bv);
    for n in 0..=3 {
        for m in o.basis(n) {
            let e = bracketdiag::Element::from_monomial(m);
            assert!(o.bv_delta(&o.bv_delta(&e)).is_zero());
        }
    }
}

#[test]
fn hochschild_differential_squares_to_zero() {
    for o in all() {
        for n in 0..=3 {
            for m in o.basis(n) {
                let x = OpElement::basis(n, m);
                assert!(o.hochschild_diff(&o.hochschild_diff(&x)).is_zero());
            }
        }
    }
}

#[test]
fn homology_matches_diagram_complex() {
    for o in all() {
        let c = DiagramComplex::new(o.kind.diagram_variant(), o.kind.diagram_parity());
        for i in 0..=3 {
            for n in 0..=4 {
                assert_eq!(
                    o.homology(i, n, Coefficients::Integers),
                    c.homology(i, n, Coefficients::Integers),
                    "{} ({i},{n})",
                    o.kind.name()
                );
            }
        }
        for i in 0..=6 {
            assert!(o.isomorphism_signs(i, 4).is_some(), "{} complexity {i}", o.kind.name());
        }
    }
}

#[test]
fn frozen_operad_homology() {
    let show = |kind: OperadKind| -> Vec<String> {
        let o = Operad::new(kind);
        let mut out = Vec::new();
        for i in 0..=3 {
            for n in 0..=5 {
                let h = o.homology(i, n, Coefficients::Integers);
                if !h.is_zero() {
                    out.push(format!("({i},{n}) {h}"));
                }
            }
        }
        out
    };
    assert_eq!(show(OperadKind::Poisson), ["(0,0) Z", "(1,2) Z", "(2,3) Z", "(2,4) Z^2", "(3,5) Z^2"]);
    assert_eq!(show(OperadKind::Gerstenhaber), ["(0,0) Z", "(1,2) Z", "(2,4) Z + Z/2", "(3,5) Z + Z/3"]);
    assert_eq!(show(OperadKind::Bv), ["(0,0) Z", "(2,4) Z", "(3,5) Z"]);
}

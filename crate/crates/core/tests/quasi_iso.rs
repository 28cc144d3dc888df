use bracketdiag::quasi_iso::{generalized_vs_plain, ideal_generators, projection_kernel, star_bar_factorization, star_vs_quotient};
use bracketdiag::{Parity, Variant};

#[test]
fn star_and_quotient_homology_agree() {
    for parity in [Parity::Even, Parity::Odd] {
        assert!(star_vs_quotient(parity, 3).iter().all(|r| r.agrees()));
    }
}

#[test]
fn generalized_diagrams_add_no_homology() {
    for parity in [Parity::Even, Parity::Odd] {
        for v in [Variant::GenB, Variant::GenBStar] {
            let rows = generalized_vs_plain(v, parity, 3);
            assert!(rows.iter().all(|r| r.agrees()), "{v} {parity}");
            assert_eq!(rows.last().map(|r| (r.i, r.j)), Some((3, 8)));
        }
    }
}

#[test]
fn projection_kernel_is_the_ideal() {
    for (parity, expected) in [
        (Parity::Even, vec![(1, 2, 1), (3, 6, 1)]),
        (Parity::Odd, vec![(1, 2, 1), (2, 3, 1), (2, 4, 1), (3, 5, 1), (3, 6, 2)]),
    ] {
        let rows = projection_kernel(parity, 3);
        assert!(rows.iter().all(|r| r.holds()), "{parity}");
        let kernels: Vec<(usize, usize, usize)> = rows.iter().filter(|r| r.kernel > 0).map(|r| (r.i, r.j, r.kernel)).collect();
        assert_eq!(kernels, expected);
    }
    assert_eq!(ideal_generators(Parity::Even).len(), 1);
    assert_eq!(ideal_generators(Parity::Odd).len(), 2);
}

#[test]
fn asterisk_preserving_homology_factorizes() {
    for parity in [Parity::Even, Parity::Odd] {
        for r in star_bar_factorization(parity, 3) {
            assert_eq!(r.observed, r.predicted, "{parity} ({},{})", r.i, r.j);
        }
    }
}

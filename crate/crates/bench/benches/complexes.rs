use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use bracketdiag::linalg::smith_normal_form;
use bracketdiag::{ChordSpace, Coefficients, DiagramComplex, DiagramHopf, Element, Operad, OperadKind, Parity, Variant};

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for (variant, parity) in [(Variant::B, Parity::Even), (Variant::BStar, Parity::Odd), (Variant::B0, Parity::Odd)] {
        g.bench_with_input(BenchmarkId::new(variant.name(), parity.name()), &(variant, parity), |b, &(v, p)| {
            b.iter(|| {
                // a fresh complex each time, so quotient blocks are rebuilt
                let c = DiagramComplex::new(v, p);
                (0..=8).map(|j| c.homology(4, j, Coefficients::Integers).rank).sum::<usize>()
            })
        });
    }
    g.finish();
}

fn smith(c: &mut Criterion) {
    let m = DiagramComplex::new(Variant::BStar, Parity::Even).boundary_matrix(3, 4);
    c.bench_function("smith bstar even (3,4)", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn square_zero(c: &mut Criterion) {
    let cx = DiagramComplex::new(Variant::GenBStar, Parity::Even);
    c.bench_function("square defects gen-bstar even (3,5)", |b| b.iter(|| cx.square_defects(3, 5).len()));
}

fn hopf(c: &mut Criterion) {
    let h = DiagramHopf::new(Variant::B, Parity::Odd);
    let cx = DiagramComplex::new(Variant::B, Parity::Odd);
    let basis: Vec<Element> = cx.basis(4, 8).into_iter().map(Element::from_monomial).collect();
    c.bench_function("antipode b odd (4,8)", |b| b.iter(|| basis.iter().map(|e| h.antipode(e).len()).sum::<usize>()));
    c.bench_function("primitive projection b odd (4,8)", |b| {
        b.iter(|| basis.iter().map(|e| h.primitive_projection(e).len()).sum::<usize>())
    });
}

fn operad(c: &mut Criterion) {
    let o = Operad::new(OperadKind::Bv);
    let x = o.parse("[1,2]^3", 3).unwrap();
    let y = o.parse("1*^2", 2).unwrap();
    c.bench_function("bv nested brace", |b| b.iter(|| o.nested_brace(&x, &[y.clone()], &[y.clone()]).value.len()));
    let mut g = c.benchmark_group("operad homology");
    g.sample_size(10);
    g.bench_function("bv arity 5", |b| b.iter(|| o.homology(3, 5, Coefficients::Integers).rank));
    g.finish();
}

fn chord(c: &mut Criterion) {
    let mut g = c.benchmark_group("chord");
    g.sample_size(10);
    g.bench_function("odd primitives, 5 chords", |b| b.iter(|| ChordSpace::new(Parity::Odd, 5, false).primitive_dimension()));
    g.finish();
}

criterion_group!(benches, homology, smith, square_zero, hopf, operad, chord);
criterion_main!(benches);

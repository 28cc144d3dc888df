//! Verification suites: exhaustive identity checks over small complexities,
//! reported as named pass/fail checks.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chord::{chord_bialgebra, circular_defects, ChordSpace};
use crate::complex::{Coefficients, DiagramComplex};
use crate::diagrams::{bidegree, complexity, DiffPart, Variant};
use crate::free_superalgebra::{format_element, Element, Monomial, Parity};
use crate::hopf::{connected_components, DiagramHopf, Tensor};
use crate::linalg::{left_kernel, smith_normal_form, to_ratvec, Echelon, RatVec, SparseMatrix};
use crate::operad::{OpElement, Operad, OperadKind};
use crate::operations::{kirillov_bracket, triangle, weight_parity, Triangle};
use crate::quasi_iso::{generalized_vs_plain, projection_kernel, star_bar_factorization, star_vs_quotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Complex,
    Hopf,
    Homotopy,
    Operad,
    QuasiIso,
    Chord,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Complex,
        Suite::Hopf,
        Suite::Homotopy,
        Suite::Operad,
        Suite::QuasiIso,
        Suite::Chord,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Complex => "complex",
            Suite::Hopf => "hopf",
            Suite::Homotopy => "homotopy",
            Suite::Operad => "operad",
            Suite::QuasiIso => "quasi-iso",
            Suite::Chord => "chord",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Bounds used when none are given.
    pub fn default_limits(self) -> Limits {
        let complexity = match self {
            Suite::Complex | Suite::Chord | Suite::Hopf | Suite::Homotopy => 4,
            _ => 3,
        };
        Limits {
            complexity,
            arity: 5,
            random_cases: 200,
            seed: 1,
        }
    }
}

/// Size bounds of a run. `complexity` caps `i` (for the chord suite, the
/// largest chord count is `complexity + 1`); `arity` caps the total arity of
/// operad inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub complexity: usize,
    pub arity: usize,
    pub random_cases: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, or a summary of the computed values.
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub limits: Limits,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run(suite: Suite, limits: Limits) -> SuiteReport {
    let checks = match suite {
        Suite::Complex => complex_suite(limits),
        Suite::Hopf => hopf_suite(limits),
        Suite::Homotopy => homotopy_suite(limits),
        Suite::Operad => operad_suite(limits),
        Suite::QuasiIso => quasi_iso_suite(limits),
        Suite::Chord => chord_suite(limits),
    };
    SuiteReport { suite, limits, checks }
}

/// Accumulates cases and keeps the first failure.
struct Tally {
    name: String,
    cases: usize,
    failures: usize,
    detail: String,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failures: 0,
            detail: String::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            if self.failures == 0 {
                self.detail = what();
            }
            self.failures += 1;
        }
    }

    fn done(self) -> Check {
        Check {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            detail: self.detail,
        }
    }

    fn with_detail(mut self, detail: String) -> Check {
        if self.failures == 0 {
            self.detail = detail;
        }
        self.done()
    }
}

const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];

fn fmt_monomial(m: &Monomial, parity: Parity) -> String {
    crate::free_superalgebra::format_monomial(m, parity)
}

// ---------------------------------------------------------------- complex

/// Highest `j` checked at complexity `i`: the top of the complex, or one
/// past it for generalized variants (which are unbounded in `j`).
pub fn j_bound(variant: Variant, i: usize) -> usize {
    if variant.generalized() {
        2 * i + 1
    } else {
        2 * i
    }
}

fn complex_suite(limits: Limits) -> Vec<Check> {
    let mut out = Vec::new();
    for parity in PARITIES {
        for variant in Variant::ALL {
            let c = DiagramComplex::new(variant, parity);
            let mut t = Tally::new(format!("square-zero {variant} {parity}"));
            for i in 0..=limits.complexity {
                for j in 0..=j_bound(variant, i) {
                    let bad = c.square_defects(i, j);
                    t.cases += c.dimension(i, j);
                    if let Some(m) = bad.first() {
                        if t.failures == 0 {
                            t.detail = format!("({i},{j}) {}", fmt_monomial(m, parity));
                        }
                        t.failures += bad.len();
                    }
                }
            }
            out.push(t.done());
        }
    }
    let small = limits.complexity.min(3);
    for parity in PARITIES {
        for variant in [Variant::B, Variant::BStar, Variant::B0] {
            let c = DiagramComplex::new(variant, parity);
            let mut snf = Tally::new(format!("smith-certificates {variant} {parity}"));
            let mut euler = Tally::new(format!("euler-characteristic {variant} {parity}"));
            let mut prime = Tally::new(format!("prime-field-ranks {variant} {parity}"));
            for i in 0..=small {
                let (mut chain, mut homology) = (0i64, 0i64);
                for j in 0..=2 * i {
                    let m = c.boundary_matrix(i, j);
                    snf.record(smith_normal_form(&m).verify(&m), || format!("({i},{j})"));
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    chain += s * c.dimension(i, j) as i64;
                    let h = c.homology(i, j, Coefficients::Integers);
                    homology += s * h.rank as i64;
                    for p in [2u64, 3] {
                        let expect = c.dimension(i, j)
                            - rank_mod_p(&c.boundary_rows(i, j), p)
                            - if j == 0 { 0 } else { rank_mod_p(&c.boundary_rows(i, j - 1), p) };
                        let got = c.homology(i, j, Coefficients::Prime(p)).rank;
                        prime.record(got == expect, || format!("({i},{j}) p={p}: {got} vs {expect}"));
                    }
                }
                euler.record(chain == homology, || format!("i={i}: {chain} vs {homology}"));
            }
            out.push(snf.done());
            out.push(euler.done());
            out.push(prime.done());
        }
    }
    out
}

/// Rank of an integer matrix over `ℤ/p` by plain elimination.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let p = p as i64;
    let mut rows: Vec<Vec<i64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut d = vec![0i64; m.ncols];
            for (c, v) in r {
                d[*c] = v.rem_euclid(p);
            }
            d
        })
        .collect();
    let inv = |a: i64| -> i64 {
        // a^(p-2) mod p
        let (mut r, mut b, mut e) = (1i64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..m.ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let f = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let q = rows[r][col];
                for c in 0..m.ncols {
                    rows[r][c] = (rows[r][c] - q * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------- hopf

fn basis_upto(c: &DiagramComplex, k: usize) -> Vec<Monomial> {
    (0..=k).flat_map(|i| (0..=2 * i).flat_map(move |j| c.basis(i, j))).collect()
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), BigInt>;

fn add_triple(t: &mut Triple, key: (Monomial, Monomial, Monomial), c: BigInt) {
    let v = t.remove(&key).unwrap_or_else(BigInt::zero) + c;
    if !v.is_zero() {
        t.insert(key, v);
    }
}

fn coassociativity_holds(h: &DiagramHopf, x: &Element<BigInt>) -> bool {
    let d = h.coproduct(x);
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c1) in h.coproduct(&Element::from_monomial(a.clone())).iter() {
            add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c2) in h.coproduct(&Element::from_monomial(b.clone())).iter() {
            add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    left == right
}

fn counit_holds(d: &Tensor<BigInt>, x: &Element<BigInt>) -> bool {
    let (mut left, mut right) = (Element::zero(), Element::zero());
    for ((a, b), c) in d.iter() {
        if a.is_unit() {
            left.add_term(b.clone(), c.clone());
        }
        if b.is_unit() {
            right.add_term(a.clone(), c.clone());
        }
    }
    left == *x && right == *x
}

fn sign_of(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(∂⊗1 + 1⊗∂)` applied to a tensor.
fn boundary_tensor(c: &DiagramComplex, h: &DiagramHopf, t: &Tensor<BigInt>) -> Tensor<BigInt> {
    let mut out = Tensor::zero();
    for ((a, b), k) in t.iter() {
        for (da, x) in c.boundary(&Element::from_monomial(a.clone())).iter() {
            out.add_term(da.clone(), b.clone(), k * x);
        }
        let s = sign_of(h.degree(a));
        for (db, x) in c.boundary(&Element::from_monomial(b.clone())).iter() {
            out.add_term(a.clone(), db.clone(), k * x * &s);
        }
    }
    out
}

fn integral_multiple(x: &Element<BigRational>) -> (BigInt, Element<BigInt>) {
    use num_integer::Integer;
    let d = x.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let e = x
        .iter()
        .map(|(m, c)| (m.clone(), (c * BigRational::from_integer(d.clone())).to_integer()))
        .collect();
    (d, e)
}

/// Diagrams with `i` = complexity and `j` points predicted by the free
/// algebra on diagrams with one connected component.
fn free_algebra_counts(c: &DiagramComplex, k: usize) -> HashMap<(usize, usize), usize> {
    let mut connected: HashMap<(usize, usize), usize> = HashMap::new();
    for i in 1..=k {
        for j in 0..=2 * i {
            let n = c.basis(i, j).iter().filter(|m| connected_components(m).len() == 1).count();
            connected.insert((i, j), n);
        }
    }
    let mut total: HashMap<(usize, usize), usize> = HashMap::new();
    total.insert((0, 0), 1);
    for i in 1..=k {
        for j in 0..=2 * i {
            let mut n = 0;
            for a in 1..=i {
                for b in 0..=j.min(2 * a) {
                    let rest = total.get(&(i - a, j - b)).copied().unwrap_or(0);
                    n += connected.get(&(a, b)).copied().unwrap_or(0) * rest;
                }
            }
            total.insert((i, j), n);
        }
    }
    total
}

fn hopf_suite(limits: Limits) -> Vec<Check> {
    let k = limits.complexity;
    let mut out = Vec::new();
    for parity in PARITIES {
        for variant in [Variant::B, Variant::BStar, Variant::B0] {
            let c = DiagramComplex::new(variant, parity);
            let h = DiagramHopf::new(variant, parity);
            let basis = basis_upto(&c, k);
            let el = |m: &Monomial| Element::from_monomial(m.clone());
            let tag = |name: &str| format!("{name} {variant} {parity}");
            let show = |m: &Monomial| fmt_monomial(m, parity);

            let mut assoc = Tally::new(tag("associativity"));
            let mut mult = Tally::new(tag("coproduct-multiplicative"));
            let mut leibniz = Tally::new(tag("leibniz"));
            for a in &basis {
                for b in &basis {
                    let ab_c = complexity(a) + complexity(b);
                    if ab_c > k {
                        continue;
                    }
                    let ab = h.product(&el(a), &el(b));
                    mult.record(h.coproduct(&ab) == h.tensor_product(&h.coproduct(&el(a)), &h.coproduct(&el(b))), || {
                        format!("{} * {}", show(a), show(b))
                    });
                    let rhs = h.product(&c.boundary(&el(a)), &el(b)) + h.product(&el(a), &c.boundary(&el(b))).scaled(&sign_of(h.degree(a)));
                    leibniz.record(c.boundary(&ab) == rhs, || format!("{} * {}", show(a), show(b)));
                    for d in &basis {
                        if ab_c + complexity(d) > k {
                            continue;
                        }
                        let l = h.product(&ab, &el(d));
                        let r = h.product(&el(a), &h.product(&el(b), &el(d)));
                        assoc.record(l == r, || format!("{} * {} * {}", show(a), show(b), show(d)));
                    }
                }
            }

            let mut unit = Tally::new(tag("unit-counit"));
            let mut coassoc = Tally::new(tag("coassociativity"));
            let mut cocomm = Tally::new(tag("cocommutativity"));
            let mut coleibniz = Tally::new(tag("coleibniz"));
            let mut antipode = Tally::new(tag("antipode"));
            let mut primitive = Tally::new(tag("primitive-projection"));
            for m in &basis {
                let x = el(m);
                let d = h.coproduct(&x);
                let unit_ok = h.product(&Element::unit(), &x) == x
                    && h.product(&x, &Element::unit()) == x
                    && counit_holds(&d, &x)
                    && h.counit(&x) == if m.is_unit() { BigInt::one() } else { BigInt::zero() };
                unit.record(unit_ok, || show(m));
                coassoc.record(coassociativity_holds(&h, &x), || show(m));
                cocomm.record(h.swap(&d) == d, || show(m));
                coleibniz.record(h.coproduct(&c.boundary(&x)) == boundary_tensor(&c, &h, &d), || show(m));
                let expect = if m.is_unit() { Element::unit() } else { Element::zero() };
                let s = |y: &Monomial| h.antipode(&el(y));
                let id = |y: &Monomial| el(y);
                antipode.record(h.convolve(&s, &id, &x) == expect && h.convolve(&id, &s, &x) == expect, || show(m));
                let p = h.primitive_projection(&x);
                let (den, pi) = integral_multiple(&p);
                let again = h.primitive_projection(&pi);
                let scaled: Element<BigRational> = p.scaled(&BigRational::from_integer(den));
                primitive.record(m.is_unit() || (h.is_primitive(&p) && again == scaled), || show(m));
            }
            out.extend([
                unit.done(),
                assoc.done(),
                coassoc.done(),
                mult.done(),
                cocomm.done(),
                leibniz.done(),
                coleibniz.done(),
                antipode.done(),
                primitive.done(),
            ]);

            if variant != Variant::B0 {
                let mut free = Tally::new(tag("free-generation"));
                let counts = free_algebra_counts(&c, k);
                for i in 0..=k {
                    for j in 0..=2 * i {
                        let (got, want) = (c.dimension(i, j), counts[&(i, j)]);
                        free.record(got == want, || format!("({i},{j}): {got} vs {want}"));
                    }
                }
                out.push(free.done());
            }
        }
    }
    out
}

// ---------------------------------------------------------------- homotopy

/// `∂(A▷B) = (∂A)▷B + (-1)^{p(A)-1} A▷(∂B) + (-1)^{p(A)-1}(A*B - (-1)^{p(A)p(B)} B*A)`
/// for every pair of diagrams of positive complexity with `i_A + i_B <= k`.
fn triangle_homotopy(name: String, variant: Variant, parity: Parity, part: DiffPart, kind: Triangle, k: usize) -> Check {
    let c = DiagramComplex::with_part(variant, parity, part);
    let h = DiagramHopf::new(variant, parity);
    let basis: Vec<Monomial> = basis_upto(&c, k).into_iter().filter(|m| complexity(m) > 0).collect();
    let tri = |a: &Element<BigInt>, b: &Element<BigInt>| triangle(a, b, parity, kind).expect("diagram insertion");
    let mut t = Tally::new(name);
    for a in &basis {
        for b in &basis {
            if complexity(a) + complexity(b) > k {
                continue;
            }
            let (ea, eb) = (Element::from_monomial(a.clone()), Element::from_monomial(b.clone()));
            let (pa, pb) = (weight_parity(a, parity), weight_parity(b, parity));
            let s = sign_of(pa + 1);
            let lhs = c.boundary(&tri(&ea, &eb));
            let commutator = h.product(&ea, &eb) - h.product(&eb, &ea).scaled(&sign_of(pa * pb));
            let rhs = tri(&c.boundary(&ea), &eb) + tri(&ea, &c.boundary(&eb)).scaled(&s) + commutator.scaled(&s);
            t.record(lhs == rhs, || format!("A = {}, B = {}", fmt_monomial(a, parity), fmt_monomial(b, parity)));
        }
    }
    t.done()
}

fn homotopy_suite(limits: Limits) -> Vec<Check> {
    let k = limits.complexity;
    let mut out = Vec::new();
    for parity in PARITIES {
        out.push(triangle_homotopy(format!("insertion-homotopy b {parity}"), Variant::B, parity, DiffPart::Full, Triangle::Full, k));
    }
    out.push(triangle_homotopy(
        "insertion-homotopy bstar even (asterisk-preserving part)".into(),
        Variant::BStar,
        Parity::Even,
        DiffPart::Bar,
        Triangle::Bar,
        k,
    ));
    out.push(triangle_homotopy(
        "insertion-homotopy bstar even".into(),
        Variant::BStar,
        Parity::Even,
        DiffPart::Full,
        Triangle::Full,
        k,
    ));
    for (variant, parity) in [(Variant::B, Parity::Even), (Variant::B, Parity::Odd), (Variant::BStar, Parity::Even)] {
        out.extend(kirillov_checks(variant, parity, k));
    }
    out
}

/// Integral cycles spanning the rational cycle space in one bidegree.
fn cycle_elements(c: &DiagramComplex, i: usize, j: usize) -> Vec<Element<BigInt>> {
    use num_integer::Integer;
    let basis = c.basis(i, j);
    let rows = c.boundary_rows(i, j);
    let rat: Vec<RatVec> = rows.rows.iter().map(|r| to_ratvec(r)).collect();
    left_kernel(&rat, rows.ncols)
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
            v.iter()
                .map(|(k, x)| (basis[*k].clone(), (x * BigRational::from_integer(den.clone())).to_integer()))
                .collect()
        })
        .collect()
}

/// Rational boundaries, per bidegree, built on demand.
struct Boundaries<'a> {
    complex: &'a DiagramComplex,
    spans: HashMap<(usize, usize), Echelon>,
}

impl Boundaries<'_> {
    fn contains(&mut self, e: &Element<BigInt>) -> bool {
        let Some((m, _)) = e.iter().next() else {
            return true;
        };
        let (i, j) = bidegree(m);
        let c = self.complex;
        let span = self.spans.entry((i, j)).or_insert_with(|| {
            let mut ech = Echelon::new();
            if j > 0 {
                for r in &c.boundary_rows(i, j - 1).rows {
                    ech.insert(&to_ratvec(r));
                }
            }
            ech
        });
        let v: RatVec = c
            .coordinates(e, i, j)
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, BigRational::from_integer(x)))
            .collect();
        span.reduce(&v).is_empty()
    }
}

/// The odd bracket `{A,B} = A▷B - (-1)^{(p(A)-1)(p(B)-1)} B▷A`: `∂` is a
/// derivation of it and it satisfies super-Jacobi on chains; on homology it
/// is compatible with the product, `{x,yz} = {x,y}z + (-1)^{(p(x)-1)p(y)} y{x,z}`.
fn kirillov_checks(variant: Variant, parity: Parity, k: usize) -> Vec<Check> {
    let c = DiagramComplex::new(variant, parity);
    let h = DiagramHopf::new(variant, parity);
    let br = |a: &Element<BigInt>, b: &Element<BigInt>| kirillov_bracket(a, b, parity).expect("diagram insertion");
    let basis: Vec<Monomial> = basis_upto(&c, k).into_iter().filter(|m| complexity(m) > 0).collect();
    let label = format!("{variant} {parity}");

    let mut derivation = Tally::new(format!("bracket-derivation {label}"));
    let mut jacobi = Tally::new(format!("bracket-jacobi {label}"));
    for a in &basis {
        for b in &basis {
            if complexity(a) + complexity(b) > k {
                continue;
            }
            let pa = weight_parity(a, parity);
            let pb = weight_parity(b, parity);
            let (ea, eb) = (Element::from_monomial(a.clone()), Element::from_monomial(b.clone()));
            let lhs = c.boundary(&br(&ea, &eb));
            let rhs = br(&c.boundary(&ea), &eb) + br(&ea, &c.boundary(&eb)).scaled(&sign_of(pa + 1));
            derivation.record(lhs == rhs, || format!("{} ; {}", fmt_monomial(a, parity), fmt_monomial(b, parity)));
            for m in &basis {
                if complexity(a) + complexity(b) + complexity(m) > k {
                    continue;
                }
                let em = Element::from_monomial(m.clone());
                let lhs = br(&ea, &br(&eb, &em));
                let rhs = br(&br(&ea, &eb), &em) + br(&eb, &br(&ea, &em)).scaled(&sign_of((pa + 1) * (pb + 1)));
                jacobi.record(lhs == rhs, || {
                    format!("{} ; {} ; {}", fmt_monomial(a, parity), fmt_monomial(b, parity), fmt_monomial(m, parity))
                });
            }
        }
    }

    let mut compat = Tally::new(format!("bracket-product-compatibility {label}"));
    let mut cycles: Vec<(Element<BigInt>, usize, u32)> = Vec::new();
    for i in 1..k {
        for j in 0..=j_bound(variant, i) {
            for z in cycle_elements(&c, i, j) {
                let p = weight_parity(z.iter().next().unwrap().0, parity);
                cycles.push((z, i, p));
            }
        }
    }
    let mut bd = Boundaries {
        complex: &c,
        spans: HashMap::new(),
    };
    for (x, ix, px) in &cycles {
        for (y, iy, py) in &cycles {
            for (z, iz, _) in &cycles {
                if ix + iy + iz > k {
                    continue;
                }
                let defect = br(x, &h.product(y, z)) - h.product(&br(x, y), z) - h.product(y, &br(x, z)).scaled(&sign_of((px + 1) * py));
                compat.record(bd.contains(&defect), || {
                    format!("{} ; {} ; {}", format_element(x, parity), format_element(y, parity), format_element(z, parity))
                });
            }
        }
    }
    vec![derivation.done(), jacobi.done(), compat.done()]
}

// ---------------------------------------------------------------- operad

fn sgn(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn operad_elements(o: &Operad, max_arity: usize) -> Vec<OpElement> {
    (0..=max_arity)
        .flat_map(|n| o.basis(n).into_iter().map(move |m| OpElement::basis(n, m)))
        .collect()
}

/// A random homogeneous combination of one to three basis elements.
fn random_element(o: &Operad, rng: &mut ChaCha8Rng, arity: usize) -> OpElement {
    let basis = o.basis(arity);
    let first = &basis[rng.gen_range(0..basis.len())];
    let degree = crate::operad::total_degree(o.kind, first);
    let same: Vec<&Monomial> = basis.iter().filter(|m| crate::operad::total_degree(o.kind, m) == degree).collect();
    let mut out = OpElement::basis(arity, first.clone()).scaled(rng.gen_range(1..=3));
    for _ in 0..rng.gen_range(0..=2) {
        let m = same[rng.gen_range(0..same.len())];
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        out = out.add(&OpElement::basis(arity, (*m).clone()).scaled(c));
    }
    out
}

/// Arities summing to at most `total`, the first at least `first_min`.
fn random_arities(rng: &mut ChaCha8Rng, count: usize, total: usize, first_min: usize) -> Option<Vec<usize>> {
    for _ in 0..50 {
        let a: Vec<usize> = (0..count).map(|_| rng.gen_range(0..=3)).collect();
        if a[0] >= first_min && a.iter().sum::<usize>() <= total {
            return Some(a);
        }
    }
    None
}

fn brace_identity_holds(o: &Operad, x: &OpElement, xs: &[OpElement], ys: &[OpElement]) -> bool {
    o.brace(&o.brace(x, xs), ys) == o.nested_brace(x, xs, ys)
}

fn commutation_homotopy_holds(o: &Operad, x: &OpElement, y: &OpElement) -> bool {
    let (Some(dx), Some(dy)) = (o.degree(x), o.degree(y)) else {
        return true;
    };
    let lhs = o.hochschild_product(x, y).sub(&o.hochschild_product(y, x).scaled(sgn((dx + 1) * (dy + 1))));
    let inner = o
        .hochschild_diff(&o.circ(x, y))
        .sub(&o.circ(&o.hochschild_diff(x), y))
        .sub(&o.circ(x, &o.hochschild_diff(y)).scaled(sgn(dx)));
    lhs == inner.scaled(sgn(dx))
}

fn compatibility_homotopy_holds(o: &Operad, x: &OpElement, y: &OpElement, z: &OpElement) -> bool {
    let (Some(dx), Some(dy)) = (o.degree(x), o.degree(y)) else {
        return true;
    };
    let lhs = o
        .lie_bracket(x, &o.hochschild_product(y, z))
        .sub(&o.hochschild_product(&o.lie_bracket(x, y), z))
        .sub(&o.hochschild_product(y, &o.lie_bracket(x, z)).scaled(sgn(dx * (dy + 1))));
    let yz = [y.clone(), z.clone()];
    let rhs = o
        .hochschild_diff(&o.brace(x, &yz))
        .sub(&o.brace(&o.hochschild_diff(x), &yz))
        .sub(&o.brace(x, &[o.hochschild_diff(y), z.clone()]).scaled(sgn(dx)))
        .sub(&o.brace(x, &[y.clone(), o.hochschild_diff(z)]).scaled(sgn(dx + dy)));
    lhs == rhs.scaled(sgn(dx + dy + 1))
}

fn show_op(o: &Operad, x: &OpElement) -> String {
    format!("{} (arity {})", crate::free_superalgebra::format_element(&x.value, o.kind.diagram_parity()), x.arity)
}

fn operad_suite(limits: Limits) -> Vec<Check> {
    let total = limits.arity;
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut out = Vec::new();
    for kind in OperadKind::ALL {
        let o = Operad::new(kind);
        let name = kind.name();
        let small = operad_elements(&o, 3.min(total));

        let mut m2 = Tally::new(format!("m2-associativity {name}"));
        m2.record(o.circ(&o.m2(), &o.m2()).is_zero(), || "m2 o m2 != 0".into());
        out.push(m2.done());

        let mut units = Tally::new(format!("units {name}"));
        let mut square = Tally::new(format!("hochschild-square-zero {name}"));
        for x in &small {
            let ids: Vec<OpElement> = (0..x.arity).map(|_| o.identity()).collect();
            let ok = o.gamma(x, &ids).map(|g| g == *x).unwrap_or(false)
                && o.gamma(&o.identity(), std::slice::from_ref(x)).map(|g| g == *x).unwrap_or(false);
            units.record(ok, || show_op(&o, x));
            if x.arity + 2 <= total {
                square.record(o.hochschild_diff(&o.hochschild_diff(x)).is_zero(), || show_op(&o, x));
            }
        }
        out.push(units.done());
        out.push(square.done());

        // exhaustive brace identity over basis elements
        let mut brace = Tally::new(format!("brace-identity {name}"));
        for (m, n) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
            let mut tuples: Vec<Vec<&OpElement>> = vec![vec![]];
            for _ in 0..1 + m + n {
                tuples = tuples
                    .iter()
                    .flat_map(|t| {
                        small.iter().map(move |e| {
                            let mut v = t.clone();
                            v.push(e);
                            v
                        })
                    })
                    .filter(|t| t.iter().map(|e| e.arity).sum::<usize>() <= total)
                    .collect();
            }
            for t in tuples.iter().filter(|t| t[0].arity >= m) {
                let xs: Vec<OpElement> = t[1..=m].iter().map(|e| (*e).clone()).collect();
                let ys: Vec<OpElement> = t[1 + m..].iter().map(|e| (*e).clone()).collect();
                brace.record(brace_identity_holds(&o, t[0], &xs, &ys), || format!("x = {}", show_op(&o, t[0])));
            }
        }
        out.push(brace.done());

        let mut brace_rand = Tally::new(format!("brace-identity-random {name}"));
        for _ in 0..limits.random_cases {
            let (m, n) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let Some(ar) = random_arities(&mut rng, 1 + m + n, total, m) else {
                continue;
            };
            let els: Vec<OpElement> = ar.iter().map(|&a| random_element(&o, &mut rng, a)).collect();
            brace_rand.record(brace_identity_holds(&o, &els[0], &els[1..=m], &els[1 + m..]), || {
                format!("x = {}", show_op(&o, &els[0]))
            });
        }
        out.push(brace_rand.done());

        let mut h5 = Tally::new(format!("product-commutation-homotopy {name}"));
        let mut h6 = Tally::new(format!("bracket-product-homotopy {name}"));
        let pairs = operad_elements(&o, 2.min(total));
        for x in &pairs {
            for y in &pairs {
                if x.arity + y.arity + 1 > total {
                    continue;
                }
                h5.record(commutation_homotopy_holds(&o, x, y), || format!("{} ; {}", show_op(&o, x), show_op(&o, y)));
                for z in &pairs {
                    if x.arity + y.arity + z.arity > total {
                        continue;
                    }
                    h6.record(compatibility_homotopy_holds(&o, x, y, z), || {
                        format!("{} ; {} ; {}", show_op(&o, x), show_op(&o, y), show_op(&o, z))
                    });
                }
            }
        }
        for _ in 0..limits.random_cases {
            if let Some(ar) = random_arities(&mut rng, 3, total, 0) {
                let e: Vec<OpElement> = ar.iter().map(|&a| random_element(&o, &mut rng, a)).collect();
                if e[0].arity + e[1].arity < total {
                    h5.record(commutation_homotopy_holds(&o, &e[0], &e[1]), || format!("{} ; {}", show_op(&o, &e[0]), show_op(&o, &e[1])));
                }
                h6.record(compatibility_homotopy_holds(&o, &e[0], &e[1], &e[2]), || {
                    format!("{} ; {} ; {}", show_op(&o, &e[0]), show_op(&o, &e[1]), show_op(&o, &e[2]))
                });
            }
        }
        out.push(h5.done());
        out.push(h6.done());

        if kind == OperadKind::Bv {
            out.push(bv_axioms(&o));
        }

        let mut iso = Tally::new(format!("diagram-isomorphism {name}"));
        let mut hom = Tally::new(format!("homology-matches-diagrams {name}"));
        let complex = DiagramComplex::new(kind.diagram_variant(), kind.diagram_parity());
        let mut nonzero = Vec::new();
        for i in 0..=2 * total + 2 {
            iso.record(o.isomorphism_signs(i, total).is_some(), || format!("complexity {i}"));
            for n in 0..=total {
                let h = o.homology(i, n, Coefficients::Integers);
                let d = complex.homology(i, n, Coefficients::Integers);
                if !h.is_zero() {
                    nonzero.push(format!("({i},{n}) {h}"));
                }
                hom.record(h == d, || format!("({i},{n}): {h} vs {d}"));
            }
        }
        out.push(iso.done());
        out.push(hom.with_detail(nonzero.join(", ")));
    }
    out
}

/// `Δ(ab) = Δa·b + (-1)^{|a|} a·Δb + (-1)^{|a|+1}[a,b]` and `Δ² = 0` on
/// products of basis elements of arity at most two.
fn bv_axioms(o: &Operad) -> Check {
    use crate::free_superalgebra::{bracket, product};
    let gr = o.kind.grading();
    let mut t = Tally::new("bv-axioms bv");
    for n in 1..=2 {
        for a in o.basis(n) {
            for k in 1..=2 {
                for b in o.basis(k) {
                    let b = b.shifted(n as u16);
                    let (ea, eb) = (Element::from_monomial(a.clone()), Element::from_monomial(b.clone()));
                    let da = gr.degree(&a);
                    let lhs = o.bv_delta(&product(&ea, &eb, gr));
                    let br: Element<BigInt> = bracket(&ea, &eb, gr);
                    let rhs = product(&o.bv_delta(&ea), &eb, gr)
                        + product(&ea, &o.bv_delta(&eb), gr).scaled(&BigInt::from(sgn(da)))
                        + br.scaled(&BigInt::from(sgn(da + 1)));
                    let ok = lhs == rhs && o.bv_delta(&lhs).iter().all(|_| true) && o.bv_delta(&o.bv_delta(&lhs)).is_zero();
                    t.record(ok, || format!("{} ; {}", fmt_monomial(&a, o.kind.diagram_parity()), fmt_monomial(&b, o.kind.diagram_parity())));
                }
            }
        }
    }
    t.done()
}

// ---------------------------------------------------------------- quasi-iso

fn comparison_check(name: String, rows: &[crate::quasi_iso::HomologyComparison]) -> Check {
    let mut t = Tally::new(name);
    let mut nonzero = Vec::new();
    for r in rows {
        t.record(r.agrees(), || format!("({},{}): {} vs {}", r.i, r.j, r.left, r.right));
        if !r.left.is_zero() {
            nonzero.push(format!("({},{}) {}", r.i, r.j, r.left));
        }
    }
    t.with_detail(nonzero.join(", "))
}

fn quasi_iso_suite(limits: Limits) -> Vec<Check> {
    let k = limits.complexity;
    let mut out = Vec::new();
    for parity in PARITIES {
        out.push(comparison_check(format!("bstar-vs-b0 {parity}"), &star_vs_quotient(parity, k)));
        for v in [Variant::GenB, Variant::GenBStar] {
            out.push(comparison_check(format!("generalized {v} {parity}"), &generalized_vs_plain(v, parity, k)));
        }
        let mut t = Tally::new(format!("projection-kernel-is-ideal {parity}"));
        let mut kernels = Vec::new();
        for r in projection_kernel(parity, k) {
            t.record(r.holds(), || format!("({},{}): {r:?}", r.i, r.j));
            if r.kernel > 0 {
                kernels.push(format!("({},{}) dim {}", r.i, r.j, r.kernel));
            }
        }
        out.push(t.with_detail(format!("kernel {}", kernels.join(", "))));
        let mut f = Tally::new(format!("star-bar-factorization {parity}"));
        for r in star_bar_factorization(parity, k) {
            f.record(r.observed == r.predicted, || format!("({},{}): {} vs {}", r.i, r.j, r.observed, r.predicted));
        }
        out.push(f.done());
    }
    out
}

// ---------------------------------------------------------------- chord

/// Primitive dimensions of the chord bialgebra for 1..=12 chords.
pub const PRIMITIVE_DIMENSIONS: [usize; 12] = [1, 1, 1, 2, 3, 5, 8, 12, 18, 27, 39, 55];

/// Dimensions of the symmetric algebra on primitives of the given
/// dimensions (all of even degree): coefficients of `Π (1 - t^k)^{-p_k}`.
pub fn symmetric_algebra_dimensions(primitive: &[usize]) -> Vec<usize> {
    let n = primitive.len();
    let mut h = vec![0usize; n + 1];
    h[0] = 1;
    for (k0, &p) in primitive.iter().enumerate() {
        let k = k0 + 1;
        for _ in 0..p {
            // multiply by 1/(1 - t^k)
            for i in k..=n {
                h[i] += h[i - k];
            }
        }
    }
    h
}

fn chord_suite(limits: Limits) -> Vec<Check> {
    let top = limits.complexity + 1;
    let mut out = Vec::new();
    let odd = chord_bialgebra(Parity::Odd, false, top);
    let prim: Vec<usize> = odd.iter().map(|d| d.primitive).collect();
    let dims: Vec<usize> = odd.iter().map(|d| d.dimension).collect();

    let mut t = Tally::new("primitive-dimensions odd");
    for (k, &p) in prim.iter().enumerate() {
        if let Some(&want) = PRIMITIVE_DIMENSIONS.get(k) {
            t.record(p == want, || format!("{} chords: {p} vs {want}", k + 1));
        }
    }
    out.push(t.with_detail(format!("{prim:?}")));

    let mut t = Tally::new("symmetric-on-primitives odd");
    let sym = symmetric_algebra_dimensions(&prim);
    for (k, &d) in dims.iter().enumerate() {
        t.record(d == sym[k + 1], || format!("{} chords: {d} vs {}", k + 1, sym[k + 1]));
    }
    out.push(t.with_detail(format!("{dims:?}")));

    let mut t = Tally::new("circular-invariance odd");
    for i in 1..=limits.complexity {
        let space = ChordSpace::new(Parity::Odd, i, false);
        let bad = circular_defects(&space);
        t.record(bad.is_empty(), || format!("{i} chords: {}", fmt_monomial(&bad[0], Parity::Odd)));
    }
    out.push(t.done());

    for parity in PARITIES {
        let mut t = Tally::new(format!("one-term-quotient-vs-b0 {parity}"));
        let quotient = DiagramComplex::new(Variant::B0, parity);
        let mut dims = Vec::new();
        for i in 1..=limits.complexity {
            let d = ChordSpace::new(parity, i, true).dimension();
            let h = quotient.homology(i, 2 * i, Coefficients::Rationals).rank;
            dims.push(d);
            t.record(d == h, || format!("{i} chords: {d} vs {h}"));
        }
        out.push(t.with_detail(format!("{dims:?}")));
    }
    out
}

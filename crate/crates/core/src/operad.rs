//! Poisson, Gerstenhaber and Batalin–Vilkovisky operads as linear graded
//! operads, their brace operations, and the Hochschild complex built from
//! the multiplication `m₂ = x₁·x₂`.
//!
//! An element of arity `n` is a combination of canonical products over the
//! labels `1..=n`; labels are fixed (no reparametrisation). `BV` elements may
//! contain starred letters `x_t* = Δ(x_t)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{enumerate_underlying, Variant};
use crate::free_superalgebra::{bracket, product, Element, Gen, Grading, Monomial, Parity, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("composition expects {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("element has terms of arity {0} and {1}")]
    MixedArity(usize, usize),
    #[error(transparent)]
    Algebra(#[from] crate::free_superalgebra::AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperadKind {
    Poisson,
    Gerstenhaber,
    Bv,
}

impl OperadKind {
    pub const ALL: [OperadKind; 3] = [OperadKind::Poisson, OperadKind::Gerstenhaber, OperadKind::Bv];

    pub fn name(self) -> &'static str {
        match self {
            OperadKind::Poisson => "poisson",
            OperadKind::Gerstenhaber => "gerstenhaber",
            OperadKind::Bv => "bv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Sign conventions of the free algebra: the diagram conventions with
    /// every generator parity reversed.
    pub fn grading(self) -> Grading {
        Grading::of(self.diagram_parity()).flipped()
    }

    /// Parity of the diagram complex this operad is matched with.
    pub fn diagram_parity(self) -> Parity {
        match self {
            OperadKind::Poisson => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn diagram_variant(self) -> Variant {
        match self {
            OperadKind::Bv => Variant::GenBStar,
            _ => Variant::GenB,
        }
    }

    /// Degree of the bracket as an operation.
    fn bracket_degree(self) -> u32 {
        match self {
            OperadKind::Poisson => 0,
            _ => 1,
        }
    }
}

/// Homogeneous-arity element of an operad.
#[derive(Clone, Debug)]
pub struct OpElement {
    pub arity: usize,
    pub value: Element<BigInt>,
}

// zero elements compare equal whatever their nominal arity
impl PartialEq for OpElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && (self.arity == other.arity || self.value.is_zero())
    }
}

impl Eq for OpElement {}

impl OpElement {
    pub fn new(arity: usize, value: Element<BigInt>) -> Result<Self, OperadError> {
        for (m, _) in value.iter() {
            if m.num_points() != arity {
                return Err(OperadError::MixedArity(arity, m.num_points()));
            }
        }
        Ok(OpElement { arity, value })
    }

    pub fn basis(arity: usize, m: Monomial) -> Self {
        OpElement {
            arity,
            value: Element::from_monomial(m),
        }
    }

    pub fn zero(arity: usize) -> Self {
        OpElement {
            arity,
            value: Element::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn scaled(&self, c: i64) -> Self {
        OpElement {
            arity: self.arity,
            value: self.value.scaled(&BigInt::from(c)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.is_zero() || other.is_zero() || self.arity == other.arity);
        let arity = if self.is_zero() { other.arity } else { self.arity };
        OpElement {
            arity,
            value: self.value.clone() + other.value.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1))
    }

    /// Split into homogeneous pieces by internal degree.
    fn pieces(&self, kind: OperadKind) -> Vec<(u32, OpElement)> {
        let mut out: Vec<(u32, OpElement)> = Vec::new();
        for d in 0..2 {
            let part: Element<BigInt> = self
                .value
                .iter()
                .filter(|(m, _)| internal_degree(kind, m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if !part.is_zero() {
                out.push((
                    d,
                    OpElement {
                        arity: self.arity,
                        value: part,
                    },
                ));
            }
        }
        out
    }
}

/// Internal parity of a basis element (odd brackets and `Δ` count).
pub fn internal_degree(kind: OperadKind, m: &Monomial) -> u32 {
    kind.grading().degree(m)
}

/// Total degree `|x| = x̃ + n - 1` modulo 2.
pub fn total_degree(kind: OperadKind, m: &Monomial) -> u32 {
    (internal_degree(kind, m) + m.num_points() as u32 + 1) % 2
}

fn sgn(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The operad, with its model-algebra operations.
#[derive(Clone, Copy, Debug)]
pub struct Operad {
    pub kind: OperadKind,
}

impl Operad {
    pub fn new(kind: OperadKind) -> Self {
        Operad { kind }
    }

    fn gr(&self) -> Grading {
        self.kind.grading()
    }

    /// Basis of arity `n`, in the order of the matching diagram space
    /// (all complexities).
    pub fn basis(&self, n: usize) -> Vec<Monomial> {
        let v = self.kind.diagram_variant();
        let max_i = if v.allows_stars() { 2 * n } else { n };
        (0..=max_i).flat_map(|i| enumerate_underlying(v, i, n)).collect()
    }

    /// Basis of arity `n` and complexity `i`.
    pub fn basis_at(&self, i: usize, n: usize) -> Vec<Monomial> {
        enumerate_underlying(self.kind.diagram_variant(), i, n)
    }

    /// Read an element of the given arity, written as a combination of
    /// products in the operad's own signs (`x1^x2`, `[1,2]`, `1*` for `Δx₁`).
    pub fn parse(&self, text: &str, arity: usize) -> Result<OpElement, OperadError> {
        let value = crate::free_superalgebra::parse_combination_in(text, self.kind.diagram_parity(), self.gr())?;
        OpElement::new(arity, value)
    }

    pub fn format(&self, x: &OpElement) -> String {
        crate::free_superalgebra::format_element(&x.value, self.kind.diagram_parity())
    }

    pub fn identity(&self) -> OpElement {
        OpElement::basis(1, Monomial::from_sorted(vec![vec![Gen::simple(1)]]))
    }

    /// `m₂ = x₁·x₂`.
    pub fn m2(&self) -> OpElement {
        OpElement::basis(
            2,
            Monomial::from_sorted(vec![vec![Gen::simple(1)], vec![Gen::simple(2)]]),
        )
    }

    /// Bracket as an operation: `(-1)^{|u|}` times the engine bracket,
    /// which makes it graded symmetric under the Koszul rule.
    fn op_bracket(&self, u: &Element<BigInt>, v: &Element<BigInt>) -> Element<BigInt> {
        let gr = self.gr();
        let mut out = Element::zero();
        for (m, c) in u.iter() {
            let s = sgn(self.kind.bracket_degree() * gr.degree(m));
            let um = Element::term(m.clone(), c * BigInt::from(s));
            out.add_assign(&bracket(&um, v, gr));
        }
        out
    }

    fn op_product(&self, u: &Element<BigInt>, v: &Element<BigInt>) -> Element<BigInt> {
        product(u, v, self.gr())
    }

    /// The BV operator on the free algebra. Its defining rules are written
    /// with the engine bracket.
    pub fn bv_delta(&self, u: &Element<BigInt>) -> Element<BigInt> {
        let mut out = Element::zero();
        for (m, c) in u.iter() {
            out.add_scaled(&self.bv_delta_monomial(m), c);
        }
        out
    }

    fn bv_delta_monomial(&self, m: &Monomial) -> Element<BigInt> {
        let gr = self.gr();
        let fs = m.factors();
        if fs.is_empty() {
            return Element::zero();
        }
        if fs.len() > 1 {
            // Δ(a·b) = Δa·b + (-1)^a a·Δb + (-1)^{a-1} [a,b]
            let a = Element::from_monomial(Monomial::from_sorted(vec![fs[0].clone()]));
            let b = Element::from_monomial(Monomial::from_sorted(fs[1..].to_vec()));
            let da = gr.exchange(&fs[0]);
            let mut out = self.op_product(&self.bv_delta(&a), &b);
            out.add_scaled(&self.op_product(&a, &self.bv_delta(&b)), &BigInt::from(sgn(da)));
            out.add_scaled(&bracket(&a, &b, gr), &BigInt::from(sgn(da + 1)));
            return out;
        }
        let w = &fs[0];
        if w.len() == 1 {
            return if w[0].star {
                Element::zero()
            } else {
                Element::generator(Gen::starred(w[0].point))
            };
        }
        // Δ[u, g] = [Δu, g] + (-1)^{|u|-1} [u, Δg]
        let u_word: Word = w[..w.len() - 1].to_vec();
        let du = gr.exchange(&u_word);
        let u = Element::from_monomial(Monomial::from_sorted(vec![u_word]));
        let g = Element::generator(w[w.len() - 1]);
        let mut out = bracket(&self.bv_delta(&u), &g, gr);
        out.add_scaled(&bracket(&u, &self.bv_delta(&g), gr), &BigInt::from(sgn(du + 1)));
        out
    }

    /// Evaluate the canonical writing of `e` with slot `t` filled by
    /// `fill[t-1]`, including the sign of moving the odd operation symbols
    /// and the fillings into place.
    fn evaluate(&self, e: &Monomial, fill: &[Monomial]) -> Element<BigInt> {
        let gr = self.gr();
        let deg: Vec<u32> = fill.iter().map(|f| gr.degree(f)).collect();
        let leaves: Vec<Gen> = e.letters().collect();
        let mut koszul = 0u32;
        // permutation of the fillings into leaf order
        for a in 0..leaves.len() {
            for b in a + 1..leaves.len() {
                if leaves[a].point > leaves[b].point {
                    koszul += deg[leaves[a].point as usize - 1] * deg[leaves[b].point as usize - 1];
                }
            }
        }
        // operation symbols moved to the front past earlier inputs
        let bdeg = self.kind.bracket_degree();
        let mut before = 0u32;
        for w in e.factors() {
            koszul += bdeg * (w.len() as u32 - 1) * before;
            for g in w {
                if g.star {
                    koszul += before;
                }
                before += deg[g.point as usize - 1];
            }
        }
        let slot = |g: Gen| -> Element<BigInt> {
            let f = Element::from_monomial(fill[g.point as usize - 1].clone());
            if g.star {
                self.bv_delta(&f)
            } else {
                f
            }
        };
        let mut total: Option<Element<BigInt>> = None;
        for w in e.factors() {
            let mut val = slot(w[0]);
            for g in &w[1..] {
                val = self.op_bracket(&val, &slot(*g));
            }
            total = Some(match total {
                None => val,
                Some(t) => self.op_product(&t, &val),
            });
        }
        total.unwrap_or_else(Element::unit).scaled(&BigInt::from(sgn(koszul)))
    }

    /// Sign `c` with `evaluate(e; x_1..x_n) = c·e`.
    fn normalisation(&self, e: &Monomial) -> BigInt {
        let ids: Vec<Monomial> = (1..=e.num_points() as u16)
            .map(|p| Monomial::from_sorted(vec![vec![Gen::simple(p)]]))
            .collect();
        let v = self.evaluate(e, &ids);
        let c = v.coeff(e);
        debug_assert_eq!(v.len(), 1);
        c
    }

    /// `γ(x; y_1, .., y_k)`.
    pub fn gamma(&self, x: &OpElement, ys: &[OpElement]) -> Result<OpElement, OperadError> {
        if ys.len() != x.arity {
            return Err(OperadError::Arity {
                expected: x.arity,
                got: ys.len(),
            });
        }
        let arity: usize = ys.iter().map(|y| y.arity).sum();
        let offsets: Vec<u16> = ys
            .iter()
            .scan(0u16, |acc, y| {
                let o = *acc;
                *acc += y.arity as u16;
                Some(o)
            })
            .collect();
        // expand multilinearly over the terms of each filling
        let mut combos: Vec<(Vec<Monomial>, BigInt)> = vec![(vec![], BigInt::from(1))];
        for (t, y) in ys.iter().enumerate() {
            let mut next = Vec::new();
            for (ms, c) in &combos {
                for (m, cy) in y.value.iter() {
                    let mut v = ms.clone();
                    v.push(m.shifted(offsets[t]));
                    next.push((v, c * cy));
                }
            }
            combos = next;
        }
        let mut out = Element::zero();
        for (mx, cx) in x.value.iter() {
            let norm = self.normalisation(mx);
            for (fill, c) in &combos {
                let v = self.evaluate(mx, fill);
                out.add_scaled(&v, &(cx * c * &norm));
            }
        }
        Ok(OpElement { arity, value: out })
    }

    /// Brace `x{x_1, .., x_n}`: all order-preserving placements into the
    /// slots of `x`, with sign `Σ_p |x_p|·i_p` (`i_p` inputs before `x_p`)
    /// corrected by the Koszul signs of internal degrees: `x̃_p` crossing the
    /// `i_p` inputs, and `|x_p|` crossing `x̃` and the earlier `x̃_q`.
    pub fn brace(&self, x: &OpElement, args: &[OpElement]) -> OpElement {
        let k = x.arity;
        let n = args.len();
        let arity = (k + args.iter().map(|a| a.arity).sum::<usize>()).saturating_sub(n);
        if n > k {
            return OpElement::zero(arity);
        }
        let mut out = OpElement::zero(arity);
        // homogeneous pieces of each argument, with (total, internal) degree
        let pieces: Vec<Vec<(u32, u32, OpElement)>> = args
            .iter()
            .map(|a| {
                a.pieces(self.kind)
                    .into_iter()
                    .map(|(d, p)| ((d + a.arity as u32 + 1) % 2, d, p))
                    .collect()
            })
            .collect();
        let mut selections: Vec<Vec<&(u32, u32, OpElement)>> = vec![vec![]];
        for p in &pieces {
            selections = selections
                .iter()
                .flat_map(|sel| {
                    p.iter().map(move |piece| {
                        let mut s = sel.clone();
                        s.push(piece);
                        s
                    })
                })
                .collect();
        }
        for (x_internal, xp) in x.pieces(self.kind) {
            for slots in increasing_tuples(k, n) {
                for sel in &selections {
                    let mut fills: Vec<OpElement> = Vec::with_capacity(k);
                    let mut eps = 0u32;
                    let mut crossed = x_internal;
                    let mut inputs_before = 0u32;
                    let mut next_arg = 0;
                    for s in 0..k {
                        if next_arg < n && slots[next_arg] == s {
                            let (total, internal, el) = sel[next_arg];
                            eps += (total + internal) * inputs_before + total * crossed;
                            crossed += internal;
                            inputs_before += el.arity as u32;
                            fills.push(el.clone());
                            next_arg += 1;
                        } else {
                            inputs_before += 1;
                            fills.push(self.identity());
                        }
                    }
                    let g = self.gamma(&xp, &fills).expect("arity matches");
                    out = out.add(&g.scaled(sgn(eps)));
                }
            }
        }
        out
    }

    /// Right side of the composition rule for `x{x_1..x_m}{y_1..y_n}`: each
    /// `x_p` takes a contiguous block of the `y`s, the rest go into `x`, with
    /// the sign of moving every `x_p` past the `y`s placed before it.
    pub fn nested_brace(&self, x: &OpElement, xs: &[OpElement], ys: &[OpElement]) -> OpElement {
        let xs: Vec<Vec<(u32, OpElement)>> = xs.iter().map(|a| self.total_pieces(a)).collect();
        let ys: Vec<Vec<(u32, OpElement)>> = ys.iter().map(|a| self.total_pieces(a)).collect();
        let mut out = OpElement::zero(0);
        for xsel in cartesian(&xs) {
            for ysel in cartesian(&ys) {
                out = out.add(&self.nested_brace_homogeneous(x, &xsel, &ysel));
            }
        }
        out
    }

    fn nested_brace_homogeneous(&self, x: &OpElement, xs: &[&(u32, OpElement)], ys: &[&(u32, OpElement)]) -> OpElement {
        let (m, n) = (xs.len(), ys.len());
        let mut out = OpElement::zero(0);
        for bounds in block_choices(m, n) {
            let mut args = Vec::with_capacity(n + m);
            let mut eps = 0u32;
            let mut next = 0;
            for (p, &(lo, hi)) in bounds.iter().enumerate() {
                args.extend(ys[next..lo].iter().map(|y| y.1.clone()));
                let before: u32 = ys[..lo].iter().map(|y| y.0).sum();
                eps += xs[p].0 * before;
                let inner: Vec<OpElement> = ys[lo..hi].iter().map(|y| y.1.clone()).collect();
                args.push(self.brace(&xs[p].1, &inner));
                next = hi;
            }
            args.extend(ys[next..].iter().map(|y| y.1.clone()));
            out = out.add(&self.brace(x, &args).scaled(sgn(eps)));
        }
        out
    }

    /// `x ∘ y = x{y}`.
    pub fn circ(&self, x: &OpElement, y: &OpElement) -> OpElement {
        self.brace(x, std::slice::from_ref(y))
    }

    /// `[x, y] = x∘y - (-1)^{|x||y|} y∘x`, bilinear over homogeneous parts.
    pub fn lie_bracket(&self, x: &OpElement, y: &OpElement) -> OpElement {
        let mut out = OpElement::zero(x.arity + y.arity - 1.min(x.arity + y.arity));
        for (dx, px) in self.total_pieces(x) {
            for (dy, py) in self.total_pieces(y) {
                let t = self.circ(&px, &py).sub(&self.circ(&py, &px).scaled(sgn(dx * dy)));
                out = out.add(&t);
            }
        }
        out
    }

    fn total_pieces(&self, x: &OpElement) -> Vec<(u32, OpElement)> {
        x.pieces(self.kind)
            .into_iter()
            .map(|(d, p)| ((d + p.arity as u32 + 1) % 2, p))
            .collect()
    }

    /// Hochschild differential `∂x = m₂∘x - (-1)^{|x|} x∘m₂`.
    pub fn hochschild_diff(&self, x: &OpElement) -> OpElement {
        let m2 = self.m2();
        let mut out = OpElement::zero(x.arity + 1);
        for (d, p) in self.total_pieces(x) {
            out = out
                .add(&self.circ(&m2, &p))
                .sub(&self.circ(&p, &m2).scaled(sgn(d)));
        }
        out
    }

    /// `x * y = (-1)^{|x|+1} m₂{x, y}`.
    pub fn hochschild_product(&self, x: &OpElement, y: &OpElement) -> OpElement {
        let m2 = self.m2();
        let mut out = OpElement::zero(x.arity + y.arity);
        for (d, p) in self.total_pieces(x) {
            out = out.add(&self.brace(&m2, &[p, y.clone()]).scaled(sgn(d + 1)));
        }
        out
    }

    /// Total degree of a homogeneous element (`None` if mixed or zero).
    pub fn degree(&self, x: &OpElement) -> Option<u32> {
        let p = self.total_pieces(x);
        (p.len() == 1).then(|| p[0].0)
    }

    /// Matrix of `∂` from arity `n` to `n+1` at complexity `i`, rows indexed
    /// by the source basis, as `(row, column, value)` triples.
    pub fn hochschild_rows(&self, i: usize, n: usize) -> crate::linalg::SparseMatrix {
        let src = self.basis_at(i, n);
        let tgt = self.basis_at(i, n + 1);
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut mat = crate::linalg::SparseMatrix::new(tgt.len());
        for m in &src {
            let d = self.hochschild_diff(&OpElement::basis(n, m.clone()));
            mat.push_row(
                d.value
                    .iter()
                    .map(|(mm, c)| (index[mm], i64::try_from(c).expect("small coefficient")))
                    .collect(),
            );
        }
        mat
    }
}

fn increasing_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for s in start..k {
            cur.push(s);
            go(s + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}

impl Operad {
    /// Homology of the Hochschild complex at arity `n`, complexity `i`.
    pub fn homology(&self, i: usize, n: usize, coeffs: crate::complex::Coefficients) -> crate::complex::HomologyGroup {
        use crate::linalg::invariant_factors;
        let dim = self.basis_at(i, n).len();
        let out_f = invariant_factors(&self.hochschild_rows(i, n));
        let in_f = if n == 0 {
            vec![]
        } else {
            invariant_factors(&self.hochschild_rows(i, n - 1))
        };
        crate::complex::homology_from_factors(dim, &out_f, &in_f, coeffs)
    }
}

fn cartesian<T>(choices: &[Vec<T>]) -> Vec<Vec<&T>> {
    let mut out: Vec<Vec<&T>> = vec![vec![]];
    for c in choices {
        out = out
            .iter()
            .flat_map(|prefix| {
                c.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// All `0 <= i_1 <= j_1 <= .. <= i_m <= j_m <= n`, as `(i_p, j_p)` pairs.
fn block_choices(m: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(m: usize, n: usize, start: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for lo in start..=n {
            for hi in lo..=n {
                acc.push((lo, hi));
                go(m, n, hi, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Diagonal sign change identifying the Hochschild complex with the matching
/// generalized diagram complex at one complexity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub kind: OperadKind,
    pub complexity: usize,
    /// `signs[n][k]` multiplies the `k`-th basis element of arity `n`.
    pub signs: Vec<Vec<i8>>,
}

impl Operad {
    /// Find signs `s` with `∂_diagram(s_e e) = Σ s_f h_ef f` for arities up to
    /// `max_arity` (boundaries from `max_arity` included). Returns `None` when
    /// supports or magnitudes disagree or the signs are inconsistent.
    pub fn isomorphism_signs(&self, i: usize, max_arity: usize) -> Option<SignCertificate> {
        let complex = crate::complex::DiagramComplex::new(self.kind.diagram_variant(), self.kind.diagram_parity());
        let sizes: Vec<usize> = (0..=max_arity + 1).map(|n| self.basis_at(i, n).len()).collect();
        let offset: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let total: usize = sizes.iter().sum();
        let mut uf = ParityUnionFind::new(total);
        let mut pairs = Vec::new();
        for n in 0..=max_arity {
            let h = self.hochschild_rows(i, n);
            let d = complex.boundary_rows(i, n);
            for (e, (hr, dr)) in h.rows.iter().zip(&d.rows).enumerate() {
                let mut hr = hr.clone();
                let mut dr = dr.clone();
                hr.sort_unstable();
                dr.sort_unstable();
                if hr.len() != dr.len() {
                    return None;
                }
                for (&(f, hv), &(f2, dv)) in hr.iter().zip(&dr) {
                    if f != f2 || hv.abs() != dv.abs() {
                        return None;
                    }
                    // s_e · h = d · s_f
                    let rel = u8::from((hv < 0) != (dv < 0));
                    if !uf.union(offset[n] + e, offset[n + 1] + f, rel) {
                        return None;
                    }
                    pairs.push((n, e, f, hv, dv));
                }
            }
        }
        let signs: Vec<Vec<i8>> = (0..=max_arity + 1)
            .map(|n| {
                (0..sizes[n])
                    .map(|k| if uf.parity(offset[n] + k) == 0 { 1 } else { -1 })
                    .collect()
            })
            .collect();
        let ok = pairs
            .iter()
            .all(|&(n, e, f, hv, dv)| i64::from(signs[n][e]) * hv == dv * i64::from(signs[n + 1][f]));
        ok.then(|| SignCertificate {
            kind: self.kind,
            complexity: i,
            signs,
        })
    }
}

/// Union-find keeping the parity of each element relative to its root.
struct ParityUnionFind {
    parent: Vec<usize>,
    rel: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            rel: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, r) = self.find(p);
        self.parent[x] = root;
        self.rel[x] ^= r;
        (root, self.rel[x])
    }

    fn parity(&mut self, x: usize) -> u8 {
        self.find(x).1
    }

    /// Require `parity(a) ^ parity(b) == rel`; false on contradiction.
    fn union(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[rb] = ra;
        self.rel[rb] = pa ^ pb ^ rel;
        true
    }
}

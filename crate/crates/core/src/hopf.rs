//! Hopf algebra structure on diagram spaces: concatenation product,
//! coproduct over minimal components, convolution, antipode and the
//! projection onto primitives.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::b0::B0Quotient;
use crate::coeff::Coeff;
use crate::diagrams::Variant;
use crate::free_superalgebra::{monomial_product, Element, Grading, Monomial, Parity, Word};

/// Formal sum of `a ⊗ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<C = BigInt> {
    terms: BTreeMap<(Monomial, Monomial), C>,
}

impl<C: Coeff> Default for Tensor<C> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> Tensor<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let v = self.terms.remove(&key).map_or(c.clone(), |x| x + c);
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Rename points to `1..=n` preserving order.
pub fn compress(factors: Vec<Word>) -> Monomial {
    let mut pts: Vec<u16> = factors.iter().flatten().map(|g| g.point).collect();
    pts.sort_unstable();
    let rank = |p: u16| pts.binary_search(&p).unwrap() as u16 + 1;
    let fs: Vec<Word> = factors
        .into_iter()
        .map(|w| {
            w.into_iter()
                .map(|mut g| {
                    g.point = rank(g.point);
                    g
                })
                .collect()
        })
        .collect();
    Monomial::from_sorted(fs)
}

/// Split at separating gaps: maximal runs of points not straddled by any
/// factor. The diagram is the product of its components.
pub fn connected_components(m: &Monomial) -> Vec<Monomial> {
    let j = m.num_points() as u16;
    let spans: Vec<(u16, u16)> = m
        .factors()
        .iter()
        .map(|w| {
            let lo = w.iter().map(|g| g.point).min().unwrap();
            let hi = w.iter().map(|g| g.point).max().unwrap();
            (lo, hi)
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<Word> = Vec::new();
    for c in 1..=j {
        for w in m.factors() {
            if w[0].point == c {
                current.push(w.clone());
            }
        }
        let separating = spans.iter().all(|&(lo, hi)| !(lo <= c && c < hi));
        if separating && !current.is_empty() {
            out.push(compress(std::mem::take(&mut current)));
        }
    }
    out
}

/// The Hopf algebra of one diagram variant (`B`, `B*` or `B0`).
#[derive(Clone, Debug)]
pub struct DiagramHopf {
    pub variant: Variant,
    pub parity: Parity,
    quotient: Option<Arc<B0Quotient>>,
}

impl DiagramHopf {
    pub fn new(variant: Variant, parity: Parity) -> Self {
        let quotient = (variant == Variant::B0).then(|| Arc::new(B0Quotient::new(parity)));
        DiagramHopf {
            variant,
            parity,
            quotient,
        }
    }

    pub fn grading(&self) -> Grading {
        Grading::of(self.parity)
    }

    /// Exchange degree of a diagram (parity used for Koszul signs).
    pub fn degree(&self, m: &Monomial) -> u32 {
        self.grading().degree(m)
    }

    fn normalize(&self, e: Element<BigInt>) -> Element<BigInt> {
        match &self.quotient {
            Some(q) => q.project(&e),
            None => e,
        }
    }

    /// Concatenation: the second diagram is placed to the right of the first.
    pub fn product_monomial(&self, a: &Monomial, b: &Monomial) -> (i64, Monomial) {
        monomial_product(a, &b.shifted(a.num_points() as u16), self.grading())
    }

    pub fn product(&self, a: &Element<BigInt>, b: &Element<BigInt>) -> Element<BigInt> {
        let mut out = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let (s, m) = self.product_monomial(ma, mb);
                out.add_term(m, ca * cb * BigInt::from(s));
            }
        }
        self.normalize(out)
    }

    /// Coproduct of one diagram: all splittings of its factors, with the sign
    /// of moving the second part to the right.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Vec<(Monomial, Monomial, i64)> {
        let gr = self.grading();
        let fs = m.factors();
        let e: Vec<u32> = fs.iter().map(|w| gr.exchange(w)).collect();
        let k = fs.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let mut sign = 0u32;
            for b in 0..k {
                if mask >> b & 1 == 1 {
                    for a in 0..b {
                        if mask >> a & 1 == 0 {
                            sign ^= e[a] & e[b];
                        }
                    }
                }
            }
            let left: Vec<Word> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| fs[b].clone()).collect();
            let right: Vec<Word> = (0..k).filter(|b| mask >> b & 1 == 0).map(|b| fs[b].clone()).collect();
            out.push((compress(left), compress(right), if sign == 0 { 1 } else { -1 }));
        }
        out
    }

    pub fn coproduct(&self, x: &Element<BigInt>) -> Tensor<BigInt> {
        let mut out = Tensor::zero();
        for (m, c) in x.iter() {
            for (a, b, s) in self.coproduct_monomial(m) {
                self.add_tensor_normalized(&mut out, a, b, c * BigInt::from(s));
            }
        }
        out
    }

    fn add_tensor_normalized(&self, t: &mut Tensor<BigInt>, a: Monomial, b: Monomial, c: BigInt) {
        match &self.quotient {
            None => t.add_term(a, b, c),
            Some(q) => {
                let pa = q.project(&Element::from_monomial(a));
                let pb = q.project(&Element::from_monomial(b));
                for (ma, ca) in pa.iter() {
                    for (mb, cb) in pb.iter() {
                        t.add_term(ma.clone(), mb.clone(), &c * ca * cb);
                    }
                }
            }
        }
    }

    pub fn counit(&self, x: &Element<BigInt>) -> BigInt {
        x.coeff(&Monomial::unit())
    }

    /// Multiply tensor factors: `μ(a ⊗ b)`.
    pub fn multiply_tensor(&self, t: &Tensor<BigInt>) -> Element<BigInt> {
        let mut out = Element::zero();
        for ((a, b), c) in t.iter() {
            let (s, m) = self.product_monomial(a, b);
            out.add_term(m, c * BigInt::from(s));
        }
        self.normalize(out)
    }

    /// Product in `H ⊗ H`: `(a⊗b)(c⊗d) = ± ac ⊗ bd`.
    pub fn tensor_product(&self, x: &Tensor<BigInt>, y: &Tensor<BigInt>) -> Tensor<BigInt> {
        let mut out = Tensor::zero();
        for ((a, b), c1) in x.iter() {
            for ((c, d), c2) in y.iter() {
                let koszul = self.degree(b) & self.degree(c);
                let (s1, ac) = self.product_monomial(a, c);
                let (s2, bd) = self.product_monomial(b, d);
                let s = s1 * s2 * if koszul == 1 { -1 } else { 1 };
                self.add_tensor_normalized(&mut out, ac, bd, c1 * c2 * BigInt::from(s));
            }
        }
        out
    }

    /// `τ(a⊗b) = ± b⊗a`.
    pub fn swap(&self, t: &Tensor<BigInt>) -> Tensor<BigInt> {
        let mut out = Tensor::zero();
        for ((a, b), c) in t.iter() {
            let s = if self.degree(a) & self.degree(b) == 1 { -1 } else { 1 };
            out.add_term(b.clone(), a.clone(), c * BigInt::from(s));
        }
        out
    }

    /// `(id - 1l)^{⋆k}` on one diagram: ordered splittings of its factors
    /// into `k` nonempty blocks, multiplied back together.
    pub fn reduced_power(&self, m: &Monomial, k: usize) -> Element<BigInt> {
        if k == 0 {
            return if m.is_unit() {
                Element::unit()
            } else {
                Element::zero()
            };
        }
        if m.is_unit() {
            return Element::zero();
        }
        self.normalize(self.reduced_power_raw(m, k))
    }

    fn reduced_power_raw(&self, m: &Monomial, k: usize) -> Element<BigInt> {
        if k == 1 {
            return Element::from_monomial(m.clone());
        }
        let mut out = Element::zero();
        for (a, b, s) in self.coproduct_monomial(m) {
            if a.is_unit() || b.is_unit() {
                continue;
            }
            for (mb, cb) in self.reduced_power_raw(&b, k - 1).iter() {
                let (s2, mm) = self.product_monomial(&a, mb);
                out.add_term(mm, cb * BigInt::from(s * s2));
            }
        }
        out
    }

    pub fn antipode(&self, x: &Element<BigInt>) -> Element<BigInt> {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            let n = m.factors().len();
            for k in 0..=n {
                let sign = if k % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_scaled(&self.reduced_power(m, k), &sign);
            }
        }
        out
    }

    /// `f ⋆ g` for even linear maps given on diagrams.
    pub fn convolve(
        &self,
        f: &dyn Fn(&Monomial) -> Element<BigInt>,
        g: &dyn Fn(&Monomial) -> Element<BigInt>,
        x: &Element<BigInt>,
    ) -> Element<BigInt> {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            for (a, b, s) in self.coproduct_monomial(m) {
                let fa = f(&a);
                let gb = g(&b);
                let k = c * BigInt::from(s);
                for (ma, ca) in fa.iter() {
                    for (mb, cb) in gb.iter() {
                        let (s2, mm) = self.product_monomial(ma, mb);
                        out.add_term(mm, &k * ca * cb * BigInt::from(s2));
                    }
                }
            }
        }
        self.normalize(out)
    }

    /// Projection onto primitives, `log_⋆(id)`, over ℚ.
    pub fn primitive_projection(&self, x: &Element<BigInt>) -> Element<BigRational> {
        let mut out: Element<BigRational> = Element::zero();
        for (m, c) in x.iter() {
            let n = m.factors().len();
            for k in 1..=n {
                let num = if k % 2 == 1 { 1 } else { -1 };
                let w = BigRational::new(c * BigInt::from(num), BigInt::from(k as i64));
                out.add_scaled(&self.reduced_power(m, k).to_rational(), &w);
            }
        }
        out
    }

    /// Rational version of [`DiagramHopf::coproduct`].
    pub fn coproduct_rational(&self, x: &Element<BigRational>) -> Tensor<BigRational> {
        let mut out = Tensor::zero();
        for (m, c) in x.iter() {
            let t = self.coproduct(&Element::from_monomial(m.clone()));
            for ((a, b), v) in t.iter() {
                out.add_term(a.clone(), b.clone(), c * BigRational::from_integer(v.clone()));
            }
        }
        out
    }

    pub fn is_primitive(&self, x: &Element<BigRational>) -> bool {
        let mut expect: Tensor<BigRational> = Tensor::zero();
        for (m, c) in x.iter() {
            expect.add_term(m.clone(), Monomial::unit(), c.clone());
            expect.add_term(Monomial::unit(), m.clone(), c.clone());
        }
        self.coproduct_rational(x) == expect
    }
}

//! Free Lie superalgebra on point-indexed generators, embedded in its
//! symmetric (odd `d`) or exterior (even `d`) envelope.
//!
//! Lie elements are kept in the left-normed basis `[[..[x_m, x_a], ..], x_z]`
//! with `m` the smallest point of the bracket. A product is an ordered list of
//! such words sorted by their first point; reordering signs go into the
//! coefficient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator {0} appears twice")]
    Multilinearity(u16),
    #[error("operands share point {0}")]
    Overlap(u16),
    #[error("operation needs the {0} envelope")]
    ModeMismatch(&'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Parity of the ambient dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }

    /// Product separator used in the text grammar.
    pub fn separator(self) -> char {
        match self {
            Parity::Odd => '.',
            Parity::Even => '^',
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator `x_t` or `x_t*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub point: u16,
    pub star: bool,
}

impl Gen {
    pub fn simple(point: u16) -> Self {
        Gen { point, star: false }
    }

    pub fn starred(point: u16) -> Self {
        Gen { point, star: true }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.point, if self.star { "*" } else { "" })
    }
}

/// Left-normed bracket monomial; the first letter carries the smallest point.
pub type Word = Vec<Gen>;

/// Sign conventions of an envelope.
///
/// `exterior` selects the exterior envelope, where a factor `A` exchanges with
/// parity `Ã+1`. `flip` reverses every generator parity; the operad instances
/// use it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub exterior: bool,
    pub flip: bool,
}

impl Grading {
    pub const fn of(parity: Parity) -> Self {
        Grading {
            exterior: matches!(parity, Parity::Even),
            flip: false,
        }
    }

    pub const fn flipped(self) -> Self {
        Grading {
            exterior: self.exterior,
            flip: !self.flip,
        }
    }

    pub fn letter(self, g: Gen) -> u32 {
        let base = if self.exterior { g.star as u32 } else { 1 };
        base ^ (self.flip as u32)
    }

    /// Parity of a bracket monomial (the bracket is even).
    pub fn word(self, w: &[Gen]) -> u32 {
        w.iter().fold(0, |a, g| a ^ self.letter(*g))
    }

    /// Parity with which a factor passes another factor of the product.
    pub fn exchange(self, w: &[Gen]) -> u32 {
        self.word(w) ^ (self.exterior as u32)
    }

    /// Sum of exchange parities of a product.
    pub fn degree(self, m: &Monomial) -> u32 {
        m.factors.iter().fold(0, |a, w| a ^ self.exchange(w))
    }

    /// Parity `Ã` of a product: the sum of factor parities, plus the number of
    /// wedge signs in the exterior case.
    pub fn tilde(self, m: &Monomial) -> u32 {
        self.degree(m) ^ (self.exterior as u32)
    }
}

/// Binary bracket tree over generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf(Gen),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(a: Tree, b: Tree) -> Tree {
        Tree::Node(Box::new(a), Box::new(b))
    }

    pub fn left_normed(w: &[Gen]) -> Tree {
        let mut t = Tree::Leaf(w[0]);
        for g in &w[1..] {
            t = Tree::node(t, Tree::Leaf(*g));
        }
        t
    }

    pub fn min_point(&self) -> u16 {
        match self {
            Tree::Leaf(g) => g.point,
            Tree::Node(a, b) => a.min_point().min(b.min_point()),
        }
    }

    pub fn parity(&self, gr: Grading) -> u32 {
        match self {
            Tree::Leaf(g) => gr.letter(*g),
            Tree::Node(a, b) => a.parity(gr) ^ b.parity(gr),
        }
    }

    pub fn leaves(&self, out: &mut Vec<Gen>) {
        match self {
            Tree::Leaf(g) => out.push(*g),
            Tree::Node(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    pub fn map_leaves(&self, f: &impl Fn(Gen) -> Gen) -> Tree {
        match self {
            Tree::Leaf(g) => Tree::Leaf(f(*g)),
            Tree::Node(a, b) => Tree::node(a.map_leaves(f), b.map_leaves(f)),
        }
    }
}

fn flip_sign(parity: u32) -> i64 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

// [[x, T1], T2, ...] with the pending trees on a stack (top applied first).
fn extend<'a>(
    word: &mut Word,
    pending: &mut Vec<&'a Tree>,
    coef: i64,
    gr: Grading,
    out: &mut HashMap<Word, i64>,
) {
    let Some(t) = pending.pop() else {
        *out.entry(word.clone()).or_insert(0) += coef;
        return;
    };
    match t {
        Tree::Leaf(g) => {
            word.push(*g);
            extend(word, pending, coef, gr, out);
            word.pop();
        }
        Tree::Node(y, z) => {
            // [x,[y,z]] = [[x,y],z] - (-1)^{|y||z|} [[x,z],y]
            pending.push(z);
            pending.push(y);
            extend(word, pending, coef, gr, out);
            pending.pop();
            pending.pop();
            let s = flip_sign(y.parity(gr) * z.parity(gr));
            pending.push(y);
            pending.push(z);
            extend(word, pending, -s * coef, gr, out);
            pending.pop();
            pending.pop();
        }
    }
    pending.push(t);
}

fn canon_into(t: &Tree, coef: i64, gr: Grading, out: &mut HashMap<Word, i64>) {
    match t {
        Tree::Leaf(g) => *out.entry(vec![*g]).or_insert(0) += coef,
        Tree::Node(a, b) => {
            let (first, second, c) = if a.min_point() < b.min_point() {
                (a, b, coef)
            } else {
                let s = flip_sign(a.parity(gr) * b.parity(gr));
                (b, a, -s * coef)
            };
            let mut inner = HashMap::new();
            canon_into(first, 1, gr, &mut inner);
            let mut pending = vec![&**second];
            for (mut w, cw) in inner {
                if cw != 0 {
                    extend(&mut w, &mut pending, c * cw, gr, out);
                }
            }
        }
    }
}

fn sorted_words(map: HashMap<Word, i64>) -> Vec<(Word, i64)> {
    let mut v: Vec<(Word, i64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// Expand a bracket tree in the left-normed basis.
pub fn lie_canonical(t: &Tree, gr: Grading) -> Vec<(Word, i64)> {
    let mut out = HashMap::new();
    canon_into(t, 1, gr, &mut out);
    sorted_words(out)
}

/// Bracket of two basis words, expanded in the basis.
pub fn lie_bracket(u: &[Gen], v: &[Gen], gr: Grading) -> Vec<(Word, i64)> {
    let mut out = HashMap::new();
    lie_bracket_into(u, v, 1, gr, &mut out);
    sorted_words(out)
}

fn lie_bracket_into(u: &[Gen], v: &[Gen], coef: i64, gr: Grading, out: &mut HashMap<Word, i64>) {
    let (first, second, c) = if u[0].point < v[0].point {
        (u, v, coef)
    } else {
        (v, u, -flip_sign(gr.word(u) * gr.word(v)) * coef)
    };
    let t = Tree::left_normed(second);
    let mut pending = vec![&t];
    let mut w = first.to_vec();
    extend(&mut w, &mut pending, c, gr, out);
}

/// Product of bracket monomials, factors sorted by their first point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    factors: Vec<Word>,
}

impl Monomial {
    /// The empty product (the trivial diagram).
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    /// Wrap factors that are already canonical and sorted.
    pub fn from_sorted(factors: Vec<Word>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0][0].point < w[1][0].point));
        Monomial { factors }
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        self.factors.iter().flat_map(|w| w.iter().copied())
    }

    pub fn num_points(&self) -> usize {
        self.factors.iter().map(|w| w.len()).sum()
    }

    pub fn max_point(&self) -> u16 {
        self.letters().map(|g| g.point).max().unwrap_or(0)
    }

    pub fn stars(&self) -> usize {
        self.letters().filter(|g| g.star).count()
    }

    /// Rename points by `f`, re-sorting factors and canonicalizing each word
    /// whose first letter is no longer minimal.
    pub fn relabel(&self, gr: Grading, f: impl Fn(u16) -> u16) -> Vec<(Monomial, i64)> {
        let mut acc: Vec<(Vec<Word>, i64)> = vec![(Vec::new(), 1)];
        for w in &self.factors {
            let renamed: Word = w
                .iter()
                .map(|g| Gen {
                    point: f(g.point),
                    star: g.star,
                })
                .collect();
            let first = renamed[0].point;
            let expansions = if renamed.iter().all(|g| g.point >= first) {
                vec![(renamed, 1)]
            } else {
                lie_canonical(&Tree::left_normed(&renamed), gr)
            };
            let mut next = Vec::with_capacity(acc.len() * expansions.len());
            for (fs, c) in &acc {
                for (w2, c2) in &expansions {
                    let mut v = fs.clone();
                    v.push(w2.clone());
                    next.push((v, c * c2));
                }
            }
            acc = next;
        }
        acc.into_iter()
            .map(|(fs, c)| {
                let (s, m) = sort_factors(fs, gr);
                (m, c * s)
            })
            .collect()
    }

    /// Shift every point by `k` (order preserving, so no re-sorting).
    pub fn shifted(&self, k: u16) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|g| Gen {
                            point: g.point + k,
                            star: g.star,
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Sort factors by first point; returns the Koszul sign and the product.
pub fn sort_factors(mut factors: Vec<Word>, gr: Grading) -> (i64, Monomial) {
    let mut sign = 1i64;
    for i in 1..factors.len() {
        let mut k = i;
        while k > 0 && factors[k - 1][0].point > factors[k][0].point {
            if gr.exchange(&factors[k - 1]) & gr.exchange(&factors[k]) == 1 {
                sign = -sign;
            }
            factors.swap(k - 1, k);
            k -= 1;
        }
    }
    (sign, Monomial { factors })
}

/// Formal combination of canonical products with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<C = BigInt> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for Element<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Element<C> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(g: Gen) -> Self {
        Self::from_monomial(Monomial {
            factors: vec![vec![g]],
        })
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_i64(&mut self, m: Monomial, c: i64) {
        self.add_term(m, C::from_i64(c));
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), -v.clone());
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut e = Self::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn negated(&self) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn retain(&mut self, f: impl Fn(&Monomial) -> bool) {
        self.terms.retain(|m, _| f(m));
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    pub fn to_rational(&self) -> Element<BigRational> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_rational());
        }
        out
    }
}

impl<C: Coeff> std::ops::Add for Element<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign(&rhs);
        self
    }
}

impl<C: Coeff> std::ops::Sub for Element<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign(&rhs);
        self
    }
}

impl<C: Coeff> std::ops::Neg for Element<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.negated()
    }
}

impl<C: Coeff> FromIterator<(Monomial, C)> for Element<C> {
    fn from_iter<I: IntoIterator<Item = (Monomial, C)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

/// Product of two monomials: the sign and the sorted product.
pub fn monomial_product(a: &Monomial, b: &Monomial, gr: Grading) -> (i64, Monomial) {
    let mut f = a.factors.clone();
    f.extend(b.factors.iter().cloned());
    sort_factors(f, gr)
}

pub fn product<C: Coeff>(a: &Element<C>, b: &Element<C>, gr: Grading) -> Element<C> {
    let mut out = Element::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            let (s, m) = monomial_product(ma, mb, gr);
            out.add_term(m, ca.clone() * cb.clone() * C::from_i64(s));
        }
    }
    out
}

/// Poisson (symmetric envelope) or Schouten (exterior envelope) bracket of two
/// products with disjoint points.
pub fn monomial_bracket(a: &Monomial, b: &Monomial, gr: Grading) -> Vec<(Monomial, i64)> {
    let ea: Vec<u32> = a.factors.iter().map(|w| gr.exchange(w)).collect();
    let eb: Vec<u32> = b.factors.iter().map(|w| gr.exchange(w)).collect();
    let mut acc: HashMap<Monomial, i64> = HashMap::new();
    for i in 0..a.factors.len() {
        let after: u32 = ea[i + 1..].iter().sum();
        for j in 0..b.factors.len() {
            let before: u32 = eb[..j].iter().sum();
            let lambda = ea[i] * after + eb[j] * before;
            let s = flip_sign(lambda);
            for (w, c) in lie_bracket(&a.factors[i], &b.factors[j], gr) {
                let mut f: Vec<Word> = Vec::with_capacity(a.factors.len() + b.factors.len() - 1);
                f.extend(
                    a.factors
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| *p != i)
                        .map(|(_, w)| w.clone()),
                );
                f.push(w);
                f.extend(
                    b.factors
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != j)
                        .map(|(_, w)| w.clone()),
                );
                let (s2, m) = sort_factors(f, gr);
                *acc.entry(m).or_insert(0) += s * s2 * c;
            }
        }
    }
    let mut v: Vec<(Monomial, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// Bilinear bracket without the disjointness check.
pub fn bracket<C: Coeff>(a: &Element<C>, b: &Element<C>, gr: Grading) -> Element<C> {
    let mut out = Element::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            let k = ca.clone() * cb.clone();
            for (m, c) in monomial_bracket(ma, mb, gr) {
                out.add_term(m, k.clone() * C::from_i64(c));
            }
        }
    }
    out
}

fn points_of<C: Coeff>(e: &Element<C>) -> std::collections::BTreeSet<u16> {
    e.iter()
        .flat_map(|(m, _)| m.letters().map(|g| g.point).collect::<Vec<_>>())
        .collect()
}

fn check_disjoint<C: Coeff>(a: &Element<C>, b: &Element<C>) -> Result<(), AlgebraError> {
    let pa = points_of(a);
    for p in points_of(b) {
        if pa.contains(&p) {
            return Err(AlgebraError::Overlap(p));
        }
    }
    Ok(())
}

/// Poisson bracket on the symmetric envelope (odd `d`).
pub fn poisson_bracket<C: Coeff>(a: &Element<C>, b: &Element<C>) -> Result<Element<C>, AlgebraError> {
    check_disjoint(a, b)?;
    Ok(bracket(a, b, Grading::of(Parity::Odd)))
}

/// Schouten bracket on the exterior envelope (even `d`).
pub fn schouten_bracket<C: Coeff>(a: &Element<C>, b: &Element<C>) -> Result<Element<C>, AlgebraError> {
    check_disjoint(a, b)?;
    Ok(bracket(a, b, Grading::of(Parity::Even)))
}

/// Chevalley–Eilenberg operator on the exterior envelope:
/// `δ(A_1∧..∧A_k) = Σ_{i<j} ± [A_i,A_j]∧A_1..Â_i..Â_j..A_k`.
pub fn delta_monomial(m: &Monomial, gr: Grading) -> Vec<(Monomial, i64)> {
    let e: Vec<u32> = m.factors.iter().map(|w| gr.exchange(w)).collect();
    let par: Vec<u32> = m.factors.iter().map(|w| gr.word(w)).collect();
    let mut acc: HashMap<Monomial, i64> = HashMap::new();
    let k = m.factors.len();
    for i in 0..k {
        let before_i: u32 = e[..i].iter().sum();
        for j in i + 1..k {
            let before_j: u32 = e[..j]
                .iter()
                .enumerate()
                .filter(|(q, _)| *q != i)
                .map(|(_, v)| *v)
                .sum();
            let lambda = e[i] * before_i + e[j] * before_j + par[i];
            let s = flip_sign(lambda);
            for (w, c) in lie_bracket(&m.factors[i], &m.factors[j], gr) {
                let mut f = vec![w];
                f.extend(
                    m.factors
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != i && *q != j)
                        .map(|(_, w)| w.clone()),
                );
                let (s2, mm) = sort_factors(f, gr);
                *acc.entry(mm).or_insert(0) += s * s2 * c;
            }
        }
    }
    let mut v: Vec<(Monomial, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

pub fn delta<C: Coeff>(a: &Element<C>, gr: Grading) -> Result<Element<C>, AlgebraError> {
    if !gr.exterior {
        return Err(AlgebraError::ModeMismatch("exterior"));
    }
    let mut out = Element::zero();
    for (m, c) in a.iter() {
        for (mm, k) in delta_monomial(m, gr) {
            out.add_term(mm, c.clone() * C::from_i64(k));
        }
    }
    Ok(out)
}

/// A product of bracket trees as written, before canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawProduct {
    pub factors: Vec<Tree>,
}

/// Rewrite a written product in the canonical basis.
pub fn canonicalize<C: Coeff>(raw: &RawProduct, gr: Grading) -> Result<Element<C>, AlgebraError> {
    let mut seen = std::collections::HashSet::new();
    for t in &raw.factors {
        let mut l = Vec::new();
        t.leaves(&mut l);
        for g in l {
            if !seen.insert(g.point) {
                return Err(AlgebraError::Multilinearity(g.point));
            }
        }
    }
    let mut acc: Vec<(Vec<Word>, i64)> = vec![(Vec::new(), 1)];
    for t in &raw.factors {
        let exp = lie_canonical(t, gr);
        let mut next = Vec::new();
        for (fs, c) in &acc {
            for (w, c2) in &exp {
                let mut v = fs.clone();
                v.push(w.clone());
                next.push((v, c * c2));
            }
        }
        acc = next;
    }
    let mut out = Element::zero();
    for (fs, c) in acc {
        let (s, m) = sort_factors(fs, gr);
        out.add_i64(m, s * c);
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgebraError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn factor(&mut self) -> Result<Tree, AlgebraError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.factor()?;
                self.expect(b',')?;
                let b = self.factor()?;
                self.expect(b']')?;
                Ok(Tree::node(a, b))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let point: u16 = match text.parse() {
                    Ok(p) if p >= 1 => p,
                    _ => return self.err("point must be a positive integer"),
                };
                let star = self.pos < self.s.len() && self.s[self.pos] == b'*';
                if star {
                    self.pos += 1;
                }
                Ok(Tree::Leaf(Gen { point, star }))
            }
            _ => self.err("expected '[' or a point"),
        }
    }
}

/// Parse `factor (sep factor)*`; `()` or an empty string is the trivial product.
pub fn parse_product(text: &str, parity: Parity) -> Result<RawProduct, AlgebraError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Ok(RawProduct { factors: vec![] });
    }
    if p.peek() == Some(b'(') {
        p.pos += 1;
        p.expect(b')')?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        return Ok(RawProduct { factors: vec![] });
    }
    let sep = parity.separator() as u8;
    let mut factors = vec![p.factor()?];
    loop {
        match p.peek() {
            None => break,
            Some(c) if c == sep => {
                p.pos += 1;
                factors.push(p.factor()?);
            }
            Some(_) => return p.err("unexpected character"),
        }
    }
    Ok(RawProduct { factors })
}

/// Parse and canonicalize.
pub fn parse_element<C: Coeff>(text: &str, parity: Parity) -> Result<Element<C>, AlgebraError> {
    canonicalize(&parse_product(text, parity)?, Grading::of(parity))
}

/// Parse a signed sum of products with integer coefficients, as written by
/// [`format_element`]: `[1,2]^[3,4] - 2 [1,3]^[2,4]`.
pub fn parse_combination<C: Coeff>(text: &str, parity: Parity) -> Result<Element<C>, AlgebraError> {
    parse_combination_in(text, parity, Grading::of(parity))
}

/// [`parse_combination`] with explicit sign conventions; `parity` only
/// selects the product separator.
pub fn parse_combination_in<C: Coeff>(text: &str, parity: Parity, gr: Grading) -> Result<Element<C>, AlgebraError> {
    let mut out = Element::zero();
    if text.trim() == "0" {
        return Ok(out);
    }
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut negative = false;
    let mut seen = false;
    let flush = |from: usize, to: usize, negative: bool, out: &mut Element<C>| -> Result<(), AlgebraError> {
        let term = text[from..to].trim();
        if term.is_empty() {
            return Err(AlgebraError::Parse {
                pos: from,
                msg: "empty term".into(),
            });
        }
        let digits = term.bytes().take_while(u8::is_ascii_digit).count();
        let rest = term[digits..].trim_start();
        let (coeff, product) = if digits > 0 && rest.len() < term.len() - digits && !rest.is_empty() {
            (term[..digits].parse::<i64>().unwrap_or(1), rest)
        } else {
            (1, term)
        };
        let e: Element<C> = canonicalize(&parse_product(product, parity)?, gr)?;
        let c = if negative { -coeff } else { coeff };
        out.add_scaled(&e, &C::from_i64(c));
        Ok(())
    };
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'[' => depth += 1,
            b']' => depth = depth.saturating_sub(1),
            b'+' | b'-' if depth == 0 => {
                if text[start..k].trim().is_empty() && !seen {
                    negative = b == b'-';
                } else {
                    flush(start, k, negative, &mut out)?;
                    negative = b == b'-';
                }
                seen = true;
                start = k + 1;
            }
            _ => {}
        }
    }
    flush(start, bytes.len(), negative, &mut out)?;
    Ok(out)
}

/// Parse a written product that is already canonical.
pub fn parse_monomial(text: &str, parity: Parity) -> Result<Monomial, AlgebraError> {
    let e: Element<BigInt> = parse_element(text, parity)?;
    let mut it = e.iter();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if c == &BigInt::from(1) || c == &BigInt::from(-1) => Ok(m.clone()),
        _ => Err(AlgebraError::Parse {
            pos: 0,
            msg: format!("'{text}' is not a single basis product up to sign"),
        }),
    }
}

pub fn format_word(w: &[Gen]) -> String {
    let mut s = w[0].to_string();
    for g in &w[1..] {
        s = format!("[{s},{g}]");
    }
    s
}

pub fn format_monomial(m: &Monomial, parity: Parity) -> String {
    if m.is_unit() {
        return "()".into();
    }
    let sep = parity.separator().to_string();
    m.factors
        .iter()
        .map(|w| format_word(w))
        .collect::<Vec<_>>()
        .join(&sep)
}

pub fn format_element<C: Coeff>(e: &Element<C>, parity: Parity) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in e.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&format!("{a} "));
        }
        s.push_str(&format_monomial(m, parity));
    }
    s
}

//! Bracket diagrams: enumeration by bidegree, insertion, and the boundary
//! operator.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coeff;
use crate::free_superalgebra::{
    monomial_bracket, monomial_product, sort_factors, Element, Gen, Grading, Monomial, Parity, Word,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("point {0} is not in the diagram")]
    MissingPoint(u16),
    #[error("point {0} carries an asterisk")]
    AsteriskPoint(u16),
    #[error("point {0} carries no asterisk")]
    SimplePoint(u16),
    #[error("element mixes bidegrees {0:?} and {1:?}")]
    MixedBidegree((usize, usize), (usize, usize)),
    #[error("operation is not defined for variant {0}")]
    Variant(Variant),
}

/// Which diagram space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// Bracket diagrams without asterisks.
    #[serde(rename = "b")]
    B,
    /// Diagrams with asterisks.
    #[serde(rename = "bstar")]
    BStar,
    /// Quotient of `B` by brackets of neighbouring points.
    #[serde(rename = "b0")]
    B0,
    /// `B` with isolated simple points allowed.
    #[serde(rename = "gen-b")]
    GenB,
    /// `BStar` with isolated simple points allowed.
    #[serde(rename = "gen-bstar")]
    GenBStar,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::B,
        Variant::BStar,
        Variant::B0,
        Variant::GenB,
        Variant::GenBStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::B => "b",
            Variant::BStar => "bstar",
            Variant::B0 => "b0",
            Variant::GenB => "gen-b",
            Variant::GenBStar => "gen-bstar",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn allows_stars(self) -> bool {
        matches!(self, Variant::BStar | Variant::GenBStar)
    }

    pub fn generalized(self) -> bool {
        matches!(self, Variant::GenB | Variant::GenBStar)
    }

    /// The space whose diagrams this variant is built from.
    pub fn underlying(self) -> Variant {
        match self {
            Variant::B0 => Variant::B,
            v => v,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Complexity of a diagram: for each factor, its size minus one plus its
/// number of asterisks.
pub fn complexity(m: &Monomial) -> usize {
    m.factors()
        .iter()
        .map(|w| w.len() - 1 + w.iter().filter(|g| g.star).count())
        .sum()
}

pub fn bidegree(m: &Monomial) -> (usize, usize) {
    (complexity(m), m.num_points())
}

fn has_isolated_simple(m: &Monomial) -> bool {
    m.factors().iter().any(|w| w.len() == 1 && !w[0].star)
}

/// Does the diagram belong to the (underlying) space of `variant`?
pub fn belongs(m: &Monomial, variant: Variant) -> bool {
    let v = variant.underlying();
    if !v.allows_stars() && m.stars() > 0 {
        return false;
    }
    v.generalized() || !has_isolated_simple(m)
}

fn set_partitions(j: usize, f: &mut impl FnMut(&[Vec<u16>])) {
    fn go(k: usize, j: usize, blocks: &mut Vec<Vec<u16>>, f: &mut impl FnMut(&[Vec<u16>])) {
        if k > j {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(k as u16);
            go(k + 1, j, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![k as u16]);
        go(k + 1, j, blocks, f);
        blocks.pop();
    }
    go(1, j, &mut Vec::new(), f);
}

fn permutations(items: &[u16]) -> Vec<Vec<u16>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Left-normed basis words on the given points with the given asterisks.
pub fn lie_basis(points: &[u16], starred: &[bool]) -> Vec<Word> {
    let star_of = |p: u16| starred[points.iter().position(|q| *q == p).unwrap()];
    let mut sorted = points.to_vec();
    sorted.sort();
    let first = sorted[0];
    permutations(&sorted[1..])
        .into_iter()
        .map(|rest| {
            std::iter::once(first)
                .chain(rest)
                .map(|p| Gen {
                    point: p,
                    star: star_of(p),
                })
                .collect()
        })
        .collect()
}

fn enumerate_raw(variant: Variant, i: usize, j: usize) -> Vec<(Vec<usize>, Vec<u16>, Monomial)> {
    let v = variant.underlying();
    let mut out = Vec::new();
    set_partitions(j, &mut |blocks| {
        let nb = blocks.len();
        if i + nb < j {
            return;
        }
        let stars = i + nb - j;
        if stars > 0 && !v.allows_stars() {
            return;
        }
        // singleton blocks without an asterisk are allowed only when generalized
        let forced: Vec<u16> = blocks
            .iter()
            .filter(|b| b.len() == 1)
            .map(|b| b[0])
            .collect();
        let points: Vec<u16> = (1..=j as u16).collect();
        let star_sets: Vec<Vec<u16>> = if v.generalized() {
            subsets(&points, stars)
        } else {
            if forced.len() > stars {
                return;
            }
            let free: Vec<u16> = points.iter().copied().filter(|p| !forced.contains(p)).collect();
            subsets(&free, stars - forced.len())
                .into_iter()
                .map(|mut s| {
                    s.extend(&forced);
                    s.sort();
                    s
                })
                .collect()
        };
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        sizes.sort_by(|a, b| b.cmp(a));
        for star_set in star_sets {
            let mut words: Vec<Vec<Word>> = vec![vec![]];
            for b in blocks {
                let flags: Vec<bool> = b.iter().map(|p| star_set.contains(p)).collect();
                let basis = lie_basis(b, &flags);
                let mut next = Vec::new();
                for prefix in &words {
                    for w in &basis {
                        let mut x = prefix.clone();
                        x.push(w.clone());
                        next.push(x);
                    }
                }
                words = next;
            }
            for fs in words {
                let (_, m) = sort_factors(fs, Grading::of(Parity::Odd));
                out.push((sizes.clone(), star_set.clone(), m));
            }
        }
    });
    out
}

fn subsets(items: &[u16], k: usize) -> Vec<Vec<u16>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for mut s in subsets(&items[1..], k - 1) {
        s.insert(0, items[0]);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// Deterministic basis of the underlying diagram space in bidegree `(i, j)`:
/// sorted by block sizes (largest first), then asterisk positions, then the
/// monomial.
///
/// For `B0` this is the full `B` basis; the quotient representatives come
/// from [`crate::b0::B0Quotient`].
pub fn enumerate_underlying(variant: Variant, i: usize, j: usize) -> Vec<Monomial> {
    let mut raw = enumerate_raw(variant, i, j);
    raw.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2)));
    raw.into_iter().map(|(_, _, m)| m).collect()
}

/// Reindex the points of `b` so that `t0` is replaced by a block of `ja`
/// consecutive points starting at `t0`.
fn open_gap(b: &Monomial, t0: u16, ja: u16) -> Monomial {
    let f = |p: u16| if p > t0 { p + ja - 1 } else { p };
    Monomial::from_sorted(
        b.factors()
            .iter()
            .map(|w| {
                w.iter()
                    .map(|g| Gen {
                        point: f(g.point),
                        star: g.star,
                    })
                    .collect()
            })
            .collect(),
    )
}

fn locate(b: &Monomial, t0: u16) -> Option<(usize, usize)> {
    for (fi, w) in b.factors().iter().enumerate() {
        if let Some(pos) = w.iter().position(|g| g.point == t0) {
            return Some((fi, pos));
        }
    }
    None
}

/// `B|_{x_{t0}=A}` for a single diagram `A` on points `1..=jA`; `A` is placed
/// on the points `t0..t0+jA-1` and the points of `B` above `t0` move up.
pub fn insert_monomial(b: &Monomial, t0: u16, a: &Monomial, parity: Parity) -> Result<Vec<(Monomial, i64)>, DiagramError> {
    let gr = Grading::of(parity);
    let (fi, pos) = locate(b, t0).ok_or(DiagramError::MissingPoint(t0))?;
    let ja = a.num_points() as u16;
    if ja == 0 {
        return Ok(vec![]);
    }
    let target = b.factors()[fi][pos];
    let gap = open_gap(b, t0, ja);
    let a = a.shifted(t0 - 1);

    let before: Vec<Gen> = b.factors()[..fi]
        .iter()
        .flatten()
        .chain(b.factors()[fi][..pos].iter())
        .copied()
        .collect();
    let sign_exp = match parity {
        Parity::Odd => ((gr.tilde(&a) + 1) * before.len() as u32) % 2,
        Parity::Even => {
            let n2 = before.iter().filter(|g| g.star).count() as u32;
            ((gr.tilde(&a) + target.star as u32) * (fi as u32 + n2)) % 2
        }
    };
    let sign = if sign_exp == 0 { 1 } else { -1 };

    // Evaluate the factor containing t0 with A substituted.
    let word = &gap.factors()[fi];
    let value_of = |k: usize| -> Monomial {
        if k == pos {
            a.clone()
        } else {
            Monomial::from_sorted(vec![vec![word[k]]])
        }
    };
    let mut acc: Vec<(Monomial, i64)> = vec![(value_of(0), 1)];
    for k in 1..word.len() {
        let v = value_of(k);
        let mut next: HashMap<Monomial, i64> = HashMap::new();
        for (m, c) in &acc {
            for (mm, c2) in monomial_bracket(m, &v, gr) {
                *next.entry(mm).or_insert(0) += c * c2;
            }
        }
        acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
    }

    let mut out: HashMap<Monomial, i64> = HashMap::new();
    for (val, c) in acc {
        let mut fs: Vec<Word> = gap.factors()[..fi].to_vec();
        fs.extend(val.factors().iter().cloned());
        fs.extend(gap.factors()[fi + 1..].iter().cloned());
        let (s, m) = sort_factors(fs, gr);
        *out.entry(m).or_insert(0) += sign * s * c;
    }
    let mut v: Vec<(Monomial, i64)> = out.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    Ok(v)
}

/// Linear extension of [`insert_monomial`] in both arguments.
pub fn insert<C: Coeff>(b: &Element<C>, t0: u16, a: &Element<C>, parity: Parity) -> Result<Element<C>, DiagramError> {
    let mut out = Element::zero();
    for (mb, cb) in b.iter() {
        for (ma, ca) in a.iter() {
            let k = cb.clone() * ca.clone();
            for (m, c) in insert_monomial(mb, t0, ma, parity)? {
                out.add_term(m, k.clone() * C::from_i64(c));
            }
        }
    }
    Ok(out)
}

fn two_points(parity: Parity, star: bool) -> Vec<(Monomial, i64)> {
    let g = |p, s| vec![Gen { point: p, star: s }];
    if !star {
        return vec![(Monomial::from_sorted(vec![g(1, false), g(2, false)]), 1)];
    }
    let s = match parity {
        Parity::Odd => 1,
        Parity::Even => -1,
    };
    vec![
        (Monomial::from_sorted(vec![g(1, false), g(2, true)]), 1),
        (Monomial::from_sorted(vec![g(1, true), g(2, false)]), s),
        (
            Monomial::from_sorted(vec![vec![Gen::simple(1), Gen::simple(2)]]),
            s,
        ),
    ]
}

/// Which terms of the boundary to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffPart {
    Full,
    /// Terms preserving the number of asterisks.
    Bar,
    /// The bracket term at asterisks, which removes one asterisk.
    BarBar,
}

/// The unprojected substitution at point `t`, restricted to `part`.
pub fn split_at(m: &Monomial, t: u16, parity: Parity, part: DiffPart) -> Result<Vec<(Monomial, i64)>, DiagramError> {
    let (fi, pos) = locate(m, t).ok_or(DiagramError::MissingPoint(t))?;
    let star = m.factors()[fi][pos].star;
    let mut out: HashMap<Monomial, i64> = HashMap::new();
    for (k, (a, c)) in two_points(parity, star).into_iter().enumerate() {
        let keep = match part {
            DiffPart::Full => true,
            DiffPart::Bar => !star || k < 2,
            DiffPart::BarBar => star && k == 2,
        };
        if !keep {
            continue;
        }
        for (mm, c2) in insert_monomial(m, t, &a, parity)? {
            *out.entry(mm).or_insert(0) += c * c2;
        }
    }
    let mut v: Vec<(Monomial, i64)> = out.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    Ok(v)
}

/// `∂_t` at a simple point.
pub fn diff_point<C: Coeff>(a: &Element<C>, t: u16, parity: Parity, variant: Variant) -> Result<Element<C>, DiagramError> {
    diff_at(a, t, parity, variant, Some(false))
}

/// `∂_t` at a point carrying an asterisk.
pub fn diff_asterisk<C: Coeff>(a: &Element<C>, t: u16, parity: Parity, variant: Variant) -> Result<Element<C>, DiagramError> {
    diff_at(a, t, parity, variant, Some(true))
}

fn diff_at<C: Coeff>(a: &Element<C>, t: u16, parity: Parity, variant: Variant, want_star: Option<bool>) -> Result<Element<C>, DiagramError> {
    let mut out = Element::zero();
    for (m, c) in a.iter() {
        let (fi, pos) = locate(m, t).ok_or(DiagramError::MissingPoint(t))?;
        let star = m.factors()[fi][pos].star;
        match want_star {
            Some(false) if star => return Err(DiagramError::AsteriskPoint(t)),
            Some(true) if !star => return Err(DiagramError::SimplePoint(t)),
            _ => {}
        }
        for (mm, k) in split_at(m, t, parity, DiffPart::Full)? {
            if variant.generalized() || !has_isolated_simple(&mm) {
                out.add_term(mm, c.clone() * C::from_i64(k));
            }
        }
    }
    Ok(out)
}

/// Boundary of one diagram of the underlying space of `variant` (for `B0`
/// this is the boundary in `B`; reduce it with the quotient map).
pub fn diff_monomial(m: &Monomial, parity: Parity, variant: Variant, part: DiffPart) -> Vec<(Monomial, i64)> {
    let gr = Grading::of(parity);
    let mut out: HashMap<Monomial, i64> = HashMap::new();
    let j = m.num_points() as u16;
    for t in 1..=j {
        for (mm, k) in split_at(m, t, parity, part).expect("point present") {
            if variant.generalized() || !has_isolated_simple(&mm) {
                *out.entry(mm).or_insert(0) += k;
            }
        }
    }
    if variant.generalized() && part != DiffPart::BarBar {
        // - x_{t-}·A + x_{t+}·A with t- below and t+ above every point
        let low = Monomial::from_sorted(vec![vec![Gen::simple(1)]]);
        let (s, mm) = monomial_product(&low, &m.shifted(1), gr);
        *out.entry(mm).or_insert(0) -= s;
        let high = Monomial::from_sorted(vec![vec![Gen::simple(j + 1)]]);
        let (s, mm) = monomial_product(&high, m, gr);
        *out.entry(mm).or_insert(0) += s;
    }
    let mut v: Vec<(Monomial, i64)> = out.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// Total boundary `∂`, or one of its asterisk-graded parts.
pub fn diff_part<C: Coeff>(a: &Element<C>, parity: Parity, variant: Variant, part: DiffPart) -> Result<Element<C>, DiagramError> {
    let mut deg = None;
    let mut out = Element::zero();
    for (m, c) in a.iter() {
        let bd = bidegree(m);
        match deg {
            None => deg = Some(bd),
            Some(d) if d != bd => return Err(DiagramError::MixedBidegree(d, bd)),
            _ => {}
        }
        for (mm, k) in diff_monomial(m, parity, variant, part) {
            out.add_term(mm, c.clone() * C::from_i64(k));
        }
    }
    Ok(out)
}

/// Total boundary `∂` on the underlying space of `variant`.
pub fn diff<C: Coeff>(a: &Element<C>, parity: Parity, variant: Variant) -> Result<Element<C>, DiagramError> {
    diff_part(a, parity, variant, DiffPart::Full)
}

/// Asterisk-preserving part of `∂` on `B*` diagrams.
pub fn diff_bar<C: Coeff>(a: &Element<C>, parity: Parity) -> Result<Element<C>, DiagramError> {
    diff_part(a, parity, Variant::BStar, DiffPart::Bar)
}

/// Asterisk-removing part of `∂` on `B*` diagrams.
pub fn diff_barbar<C: Coeff>(a: &Element<C>, parity: Parity) -> Result<Element<C>, DiagramError> {
    diff_part(a, parity, Variant::BStar, DiffPart::BarBar)
}

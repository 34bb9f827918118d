//! The Jones monoid `𝒥ₙ`, both as planar diagrams and as a presentation.
//!
//! A diagram of degree `n` has points `t1..tn` on top and `b1..bn` at the
//! bottom. Internally top point `i` is `i - 1` and bottom point `i` is
//! `n + i - 1`; a diagram stores the partner of every point.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::rewriting::RewriteSystem;
use crate::words::{Alphabet, GeneratorKind, Letter, Word};

/// Largest degree accepted by [`enumerate_jones`].
pub const MAX_ENUMERATION_DEGREE: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarDiagram {
    n: usize,
    partner: Vec<u8>,
}

impl PlanarDiagram {
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u8; 2 * n];
        for i in 0..n {
            partner[i] = (n + i) as u8;
            partner[n + i] = i as u8;
        }
        PlanarDiagram { n, partner }
    }

    /// Builds a diagram from its partner map, checking that it is a planar
    /// perfect matching.
    pub fn from_partners(n: usize, partner: Vec<u8>) -> Result<Self> {
        let d = PlanarDiagram { n, partner };
        d.validate()?;
        Ok(d)
    }

    /// Builds a diagram from point pairs `(p, q)` in the internal numbering.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![u8::MAX; 2 * n];
        for &(p, q) in pairs {
            if p >= 2 * n || q >= 2 * n || p == q || partner[p] != u8::MAX || partner[q] != u8::MAX {
                return Err(Error::InvalidDiagram(format!("bad pair ({p}, {q})")));
            }
            partner[p] = q as u8;
            partner[q] = p as u8;
        }
        PlanarDiagram::from_partners(n, partner)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    /// Pairs `(p, q)` with `p < q`, sorted by `p`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n).filter(|&p| p < self.partner(p)).map(|p| (p, self.partner(p))).collect()
    }

    fn validate(&self) -> Result<()> {
        let m = 2 * self.n;
        if self.partner.len() != m {
            return Err(Error::InvalidDiagram("wrong number of points".into()));
        }
        for p in 0..m {
            let q = self.partner[p] as usize;
            if q >= m || q == p || self.partner[q] as usize != p {
                return Err(Error::InvalidDiagram(format!("point {p} is not matched")));
            }
        }
        if !self.is_planar() {
            return Err(Error::InvalidDiagram("chords cross".into()));
        }
        Ok(())
    }

    /// Position on the boundary circle read as t1..tn, bn..b1.
    fn circle_position(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            3 * self.n - 1 - p
        }
    }

    /// Non-crossing test: the chords, read around the boundary, must nest
    /// like brackets.
    pub fn is_planar(&self) -> bool {
        let m = 2 * self.n;
        let mut at = vec![0usize; m];
        for p in 0..m {
            at[self.circle_position(p)] = p;
        }
        let mut stack = Vec::new();
        for (pos, &p) in at.iter().enumerate() {
            let other = self.circle_position(self.partner(p));
            if other > pos {
                stack.push(pos);
            } else if stack.pop() != Some(other) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Number of chords joining a top point to a bottom point.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&p| self.partner(p) >= self.n).count()
    }

    /// Stacks `self` above `other`, returning the product and the number of
    /// closed loops erased.
    pub fn compose_counting(&self, other: &PlanarDiagram) -> Result<(PlanarDiagram, usize)> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        // Fused points: 0..n top of self, n..2n the shared middle row,
        // 2n..3n bottom of other.
        let upper = |p: usize| p;
        let lower = |p: usize| p + n;
        let mut uf = UnionFind::new(3 * n);
        for (p, q) in self.pairs() {
            uf.union(upper(p), upper(q));
        }
        for (p, q) in other.pairs() {
            uf.union(lower(p), lower(q));
        }
        let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
        for p in (0..n).chain(2 * n..3 * n) {
            ends.entry(uf.find(p)).or_default().push(p);
        }
        let mut partner = vec![0u8; 2 * n];
        for pts in ends.values() {
            debug_assert_eq!(pts.len(), 2);
            let out = |p: usize| if p < n { p } else { p - n };
            let (a, b) = (out(pts[0]), out(pts[1]));
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let mut roots: Vec<usize> = (n..2 * n).map(|p| uf.find(p)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.iter().filter(|r| !ends.contains_key(r)).count();
        Ok((PlanarDiagram { n, partner }, loops))
    }

    pub fn compose(&self, other: &PlanarDiagram) -> Result<PlanarDiagram> {
        self.compose_counting(other).map(|(d, _)| d)
    }

    fn point_name(&self, p: usize) -> String {
        if p < self.n {
            format!("t{}", p + 1)
        } else {
            format!("b{}", p - self.n + 1)
        }
    }

    /// Parses the text form `[(t1,t2),(b1,b2),(t3,b3)]`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let body = text.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']'));
        let body = body.ok_or_else(|| Error::Parse("diagram must be enclosed in [ ]".into()))?;
        let point = |s: &str| -> Result<usize> {
            let s = s.trim();
            let (row, idx) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
            let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad point `{s}`")))?;
            if i < 1 || i > n {
                return Err(Error::Parse(format!("point `{s}` out of range")));
            }
            match row {
                "t" => Ok(i - 1),
                "b" => Ok(n + i - 1),
                _ => Err(Error::Parse(format!("bad point `{s}`"))),
            }
        };
        let mut pairs = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse("expected `(`".into()))?;
            let close = open.find(')').ok_or_else(|| Error::Parse("expected `)`".into()))?;
            let (p, q) = open[..close].split_once(',').ok_or_else(|| Error::Parse("expected `,`".into()))?;
            pairs.push((point(p)?, point(q)?));
            rest = open[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        PlanarDiagram::from_pairs(n, &pairs)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (p, q)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", self.point_name(p), self.point_name(q))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PlanarDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The diagram of `hᵢ`: cups at `i, i+1` on both rows, vertical strands
/// elsewhere.
pub fn jones_generator(n: usize, i: usize) -> Result<PlanarDiagram> {
    if i < 1 || i + 1 > n {
        return Err(Error::GeneratorIndex { generator: format!("h{i}"), n });
    }
    let mut d = PlanarDiagram::identity(n);
    let (t, u) = (i - 1, i);
    d.partner[t] = u as u8;
    d.partner[u] = t as u8;
    d.partner[n + t] = (n + u) as u8;
    d.partner[n + u] = (n + t) as u8;
    Ok(d)
}

/// `𝒥ₙ` enumerated from its diagrams, with each element labelled by its
/// shortlex-least word in the generators.
#[derive(Clone, Debug)]
pub struct JonesMonoid {
    pub n: usize,
    pub monoid: FiniteMonoid,
    pub diagrams: Vec<PlanarDiagram>,
    index: HashMap<PlanarDiagram, usize>,
}

impl JonesMonoid {
    pub fn index_of(&self, d: &PlanarDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    /// Evaluates a word in the `h` generators as a diagram.
    pub fn evaluate(&self, w: &[Letter]) -> Result<PlanarDiagram> {
        let mut d = PlanarDiagram::identity(self.n);
        for &l in w {
            d = d.compose(&jones_generator(self.n, l.code() + 1)?)?;
        }
        Ok(d)
    }
}

/// Closes `{1, h₁, …, hₙ₋₁}` under composition, breadth first.
pub fn enumerate_jones(n: usize) -> Result<JonesMonoid> {
    if !(1..=MAX_ENUMERATION_DEGREE).contains(&n) {
        return Err(Error::Degree { n, min: 1, max: MAX_ENUMERATION_DEGREE });
    }
    let alphabet = Alphabet::jones(n)?;
    let gens: Vec<PlanarDiagram> = (1..n).map(|i| jones_generator(n, i)).collect::<Result<_>>()?;
    let mut diagrams = vec![PlanarDiagram::identity(n)];
    let mut words = vec![Word::empty()];
    let mut index: HashMap<PlanarDiagram, usize> = HashMap::new();
    index.insert(diagrams[0].clone(), 0);
    let mut start = 0;
    // Each frontier is already in shortlex order, so the first word found
    // for a diagram is its least one.
    while start < diagrams.len() {
        let end = diagrams.len();
        for x in start..end {
            for (g, h) in gens.iter().enumerate() {
                let d = diagrams[x].compose(h)?;
                if !index.contains_key(&d) {
                    index.insert(d.clone(), diagrams.len());
                    let mut w = words[x].clone();
                    w.push(Letter(g as u8));
                    words.push(w);
                    diagrams.push(d);
                }
            }
        }
        start = end;
    }
    let k = gens.len();
    let mut right = Vec::with_capacity(diagrams.len() * k);
    let mut left = Vec::with_capacity(diagrams.len() * k);
    for d in &diagrams {
        for h in &gens {
            right.push(index[&d.compose(h)?] as u32);
        }
        for h in &gens {
            left.push(index[&h.compose(d)?] as u32);
        }
    }
    let monoid = FiniteMonoid::new(alphabet, words, 0, alphabet.letters().collect(), right, left, true);
    Ok(JonesMonoid { n, monoid, diagrams, index })
}

/// Relations (B), (C), (D) of `𝒥ₙ`.
pub fn jones_relations(n: usize) -> Result<Vec<(Word, Word)>> {
    let a = Alphabet::jones(n)?;
    let h = |i: usize| a.gen(GeneratorKind::Jones, i);
    let r = a.rank();
    let mut rels = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            if i.abs_diff(j) == 1 {
                rels.push((Word::from(vec![h(i), h(j), h(i)]), Word::from(vec![h(i)])));
            }
            if i.abs_diff(j) >= 2 && i < j {
                rels.push((Word::from(vec![h(i), h(j)]), Word::from(vec![h(j), h(i)])));
            }
        }
        rels.push((Word::from(vec![h(i), h(i)]), Word::from(vec![h(i)])));
    }
    Ok(rels)
}

pub fn jones_rewrite_system(n: usize) -> Result<RewriteSystem> {
    let a = Alphabet::jones(n)?;
    RewriteSystem::from_relations(a, a.default_order(), &jones_relations(n)?)
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

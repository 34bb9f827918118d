//! Green's relations of an enumerated finite monoid.
//!
//! `a ℛ b` iff `a` and `b` reach each other in the right Cayley graph, and
//! dually for `ℒ`. In a finite monoid `𝒟 = 𝒥`, so `𝒟`-classes are the
//! strongly connected components of the union of both Cayley graphs, and the
//! order `≤_𝒟` is reachability between those components.

use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::Result;
use crate::monoid::FiniteMonoid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    pub r_class_of: Vec<u32>,
    pub l_class_of: Vec<u32>,
    pub h_class_of: Vec<u32>,
    pub d_class_of: Vec<u32>,
    pub r_count: usize,
    pub l_count: usize,
    pub h_count: usize,
    pub d_count: usize,
    /// `below[d]` is the set of 𝒟-classes `e` with `e ≤ d`, as a bitset.
    below: Vec<Vec<u64>>,
}

impl GreenStructure {
    /// `a ≤_𝒟 b` for 𝒟-class ids.
    pub fn d_leq(&self, a: u32, b: u32) -> bool {
        self.below[b as usize][a as usize / 64] >> (a % 64) & 1 == 1
    }

    /// Elements of each 𝒟-class, in element order.
    pub fn d_classes(&self) -> Vec<Vec<usize>> {
        members(&self.d_class_of, self.d_count)
    }

    pub fn h_classes(&self) -> Vec<Vec<usize>> {
        members(&self.h_class_of, self.h_count)
    }

    pub fn max_h_size(&self) -> usize {
        self.h_classes().iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn members(class_of: &[u32], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (x, &c) in class_of.iter().enumerate() {
        out[c as usize].push(x);
    }
    out
}

/// Numbers classes by their least element, so ids follow element order.
fn relabel(raw: &[u32]) -> (Vec<u32>, usize) {
    let mut map = vec![u32::MAX; raw.len()];
    let mut next = 0u32;
    let mut out = Vec::with_capacity(raw.len());
    for &c in raw {
        let slot = &mut map[c as usize];
        if *slot == u32::MAX {
            *slot = next;
            next += 1;
        }
        out.push(*slot);
    }
    (out, next as usize)
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<u32> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        g.add_edge((a as u32).into(), (b as u32).into(), ());
    }
    let mut comp = vec![0u32; n];
    for (k, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for v in scc {
            comp[v.index()] = k as u32;
        }
    }
    comp
}

pub fn compute_green(m: &FiniteMonoid) -> Result<GreenStructure> {
    m.require_complete()?;
    let n = m.len();
    let right_edges = || (0..n).flat_map(move |x| m.right_edges(x).iter().map(move |&y| (x, y as usize)));
    let left_edges = || (0..n).flat_map(move |x| m.left_edges(x).iter().map(move |&y| (x, y as usize)));

    let (r_class_of, r_count) = relabel(&components(n, right_edges()));
    let (l_class_of, l_count) = relabel(&components(n, left_edges()));
    let (d_class_of, d_count) = relabel(&components(n, right_edges().chain(left_edges())));
    let pair: Vec<u32> = {
        let mut ids = std::collections::HashMap::new();
        (0..n)
            .map(|x| {
                let next = ids.len() as u32;
                *ids.entry((r_class_of[x], l_class_of[x])).or_insert(next)
            })
            .collect()
    };
    let (h_class_of, h_count) = relabel(&pair);

    // Reachability between 𝒟-classes in the condensed union graph.
    let words = d_count.div_ceil(64);
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); d_count];
    for (x, y) in right_edges().chain(left_edges()) {
        let (a, b) = (d_class_of[x], d_class_of[y]);
        if a != b {
            succ[a as usize].push(b);
        }
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
    }
    let mut below = vec![vec![0u64; words]; d_count];
    let mut done = vec![false; d_count];
    for start in 0..d_count {
        fill_below(start, &succ, &mut below, &mut done);
    }
    Ok(GreenStructure { r_class_of, l_class_of, h_class_of, d_class_of, r_count, l_count, h_count, d_count, below })
}

fn fill_below(start: usize, succ: &[Vec<u32>], below: &mut [Vec<u64>], done: &mut [bool]) {
    // Iterative post-order over the condensation, which is acyclic.
    let mut stack = vec![(start, 0usize)];
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if done[v] {
            stack.pop();
            continue;
        }
        if *i < succ[v].len() {
            let w = succ[v][*i] as usize;
            *i += 1;
            if !done[w] {
                stack.push((w, 0));
            }
            continue;
        }
        let mut acc = std::mem::take(&mut below[v]);
        acc[v / 64] |= 1 << (v % 64);
        for &w in &succ[v] {
            for (a, b) in acc.iter_mut().zip(&below[w as usize]) {
                *a |= b;
            }
        }
        below[v] = acc;
        done[v] = true;
        stack.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggBox {
    pub d_class: u32,
    /// ℛ-class ids, one per row.
    pub rows: Vec<u32>,
    /// ℒ-class ids, one per column.
    pub cols: Vec<u32>,
    /// Elements of each ℋ-class, indexed `[row][col]`.
    pub cells: Vec<Vec<Vec<usize>>>,
    pub idempotent: Vec<Vec<bool>>,
}

impl EggBox {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn size(&self) -> usize {
        self.cells.iter().flatten().map(Vec::len).sum()
    }
}

/// One egg box per 𝒟-class; rows and columns follow class ids.
pub fn egg_boxes(gs: &GreenStructure, m: &FiniteMonoid) -> Vec<EggBox> {
    let mut boxes: Vec<EggBox> = (0..gs.d_count)
        .map(|d| EggBox { d_class: d as u32, rows: Vec::new(), cols: Vec::new(), cells: Vec::new(), idempotent: Vec::new() })
        .collect();
    for x in 0..m.len() {
        let b = &mut boxes[gs.d_class_of[x] as usize];
        if !b.rows.contains(&gs.r_class_of[x]) {
            b.rows.push(gs.r_class_of[x]);
        }
        if !b.cols.contains(&gs.l_class_of[x]) {
            b.cols.push(gs.l_class_of[x]);
        }
    }
    for b in &mut boxes {
        b.rows.sort_unstable();
        b.cols.sort_unstable();
        b.cells = vec![vec![Vec::new(); b.cols.len()]; b.rows.len()];
        b.idempotent = vec![vec![false; b.cols.len()]; b.rows.len()];
    }
    for x in 0..m.len() {
        let b = &mut boxes[gs.d_class_of[x] as usize];
        let r = b.rows.binary_search(&gs.r_class_of[x]).unwrap();
        let c = b.cols.binary_search(&gs.l_class_of[x]).unwrap();
        b.cells[r][c].push(x);
        if m.is_idempotent(x) {
            b.idempotent[r][c] = true;
        }
    }
    boxes
}

/// Hasse diagram of `≤_𝒟` on 𝒟-classes. Edges point from the larger class
/// to the class it covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DLattice {
    pub classes: usize,
    pub edges: Vec<(u32, u32)>,
    /// The unique maximal class, when there is one.
    pub maximum: Option<u32>,
}

impl DLattice {
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("digraph dclasses {\n  rankdir=TB;\n  node [shape=box];\n");
        for d in 0..self.classes {
            let label = labels.get(d).map(String::as_str).unwrap_or("");
            let _ = writeln!(s, "  d{d} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  d{a} -> d{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn d_lattice(gs: &GreenStructure) -> DLattice {
    let k = gs.d_count;
    let strictly_below = |d: usize| -> Vec<u64> {
        let mut v = gs.below[d].clone();
        v[d / 64] &= !(1 << (d % 64));
        v
    };
    let mut edges = Vec::new();
    for a in 0..k {
        let strict = strictly_below(a);
        let mut covered = strict.clone();
        for c in 0..k {
            if strict[c / 64] >> (c % 64) & 1 == 1 {
                for (x, y) in covered.iter_mut().zip(strictly_below(c)) {
                    *x &= !y;
                }
            }
        }
        for b in 0..k {
            if covered[b / 64] >> (b % 64) & 1 == 1 {
                edges.push((a as u32, b as u32));
            }
        }
    }
    let maxima: Vec<u32> = (0..k as u32).filter(|&d| (0..k as u32).all(|e| gs.d_leq(e, d))).collect();
    DLattice { classes: k, edges, maximum: maxima.first().copied() }
}

/// JSON export of a Green analysis with elements rendered as words.
#[derive(Clone, Debug, Serialize)]
pub struct GreenReport {
    pub family: String,
    pub n: usize,
    pub order: usize,
    pub counts: ClassCounts,
    pub max_h_size: usize,
    pub egg_boxes: Vec<EggBoxExport>,
    pub lattice: DLattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCounts {
    pub r: usize,
    pub l: usize,
    pub h: usize,
    pub d: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EggBoxExport {
    pub d_class: u32,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Vec<Vec<String>>>,
    pub idempotent: Vec<Vec<bool>>,
}

impl GreenReport {
    pub fn new(m: &FiniteMonoid, gs: &GreenStructure) -> Self {
        let a = m.alphabet;
        let boxes = egg_boxes(gs, m);
        GreenReport {
            family: a.kind.to_string(),
            n: a.n,
            order: m.len(),
            counts: ClassCounts { r: gs.r_count, l: gs.l_count, h: gs.h_count, d: gs.d_count },
            max_h_size: gs.max_h_size(),
            egg_boxes: boxes
                .iter()
                .map(|b| EggBoxExport {
                    d_class: b.d_class,
                    rows: b.rows.len(),
                    cols: b.cols.len(),
                    cells: b
                        .cells
                        .iter()
                        .map(|row| row.iter().map(|cell| cell.iter().map(|&x| a.display(m.word(x))).collect()).collect())
                        .collect(),
                    idempotent: b.idempotent.clone(),
                })
                .collect(),
            lattice: d_lattice(gs),
        }
    }

    /// Node labels for the DOT export: least element and egg-box shape.
    pub fn dot_labels(&self) -> Vec<String> {
        self.egg_boxes
            .iter()
            .map(|b| format!("D{} {}x{}\\n{}", b.d_class, b.rows, b.cols, b.cells[0][0].first().cloned().unwrap_or_default()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        self.lattice.to_dot(&self.dot_labels())
    }
}

/// Green's relations straight from the definitions, comparing principal
/// ideals as sets. Quadratic in the order of the monoid; used to cross-check
/// the graph computation on small monoids.
pub mod reference {
    use crate::monoid::FiniteMonoid;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct IdealClasses {
        pub r_class_of: Vec<u32>,
        pub l_class_of: Vec<u32>,
        pub j_class_of: Vec<u32>,
        /// 𝒟 as `ℒ ∘ ℛ`: `a 𝒟 b` iff some `c` has `a ℒ c` and `c ℛ b`.
        pub d_class_of: Vec<u32>,
        pub h_class_of: Vec<u32>,
    }

    fn classes_by_key<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
        let mut seen: Vec<(K, u32)> = Vec::new();
        keys.iter()
            .map(|k| match seen.iter().find(|(s, _)| s == k) {
                Some((_, id)) => *id,
                None => {
                    let id = seen.len() as u32;
                    seen.push((k.clone(), id));
                    id
                }
            })
            .collect()
    }

    pub fn compute(m: &FiniteMonoid) -> IdealClasses {
        let n = m.len();
        let t = m.table();
        let mul = |x: usize, y: usize| t[x * n + y] as usize;
        let set = |f: &dyn Fn(usize) -> Vec<usize>| -> Vec<Vec<bool>> {
            (0..n)
                .map(|a| {
                    let mut s = vec![false; n];
                    for x in f(a) {
                        s[x] = true;
                    }
                    s
                })
                .collect()
        };
        let ma = set(&|a| (0..n).map(|x| mul(x, a)).collect());
        let am = set(&|a| (0..n).map(|x| mul(a, x)).collect());
        let mam = set(&|a| (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| mul(mul(x, a), y)).collect());
        let l_class_of = classes_by_key(&ma);
        let r_class_of = classes_by_key(&am);
        let j_class_of = classes_by_key(&mam);
        let h_class_of = classes_by_key(&(0..n).map(|x| (l_class_of[x], r_class_of[x])).collect::<Vec<_>>());
        let related = |a: usize, b: usize| (0..n).any(|c| l_class_of[a] == l_class_of[c] && r_class_of[c] == r_class_of[b]);
        let d_key: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| related(a, b)).collect()).collect();
        let d_class_of = classes_by_key(&d_key);
        IdealClasses { r_class_of, l_class_of, j_class_of, d_class_of, h_class_of }
    }

    /// `a ≤_𝒥 b` iff `a = x b y` for some `x`, `y`.
    pub fn j_leq(m: &FiniteMonoid, a: usize, b: usize) -> bool {
        let n = m.len();
        (0..n).any(|x| {
            let xb = m.multiply(x, b);
            (0..n).any(|y| m.multiply(xb, y) == a)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::enumerate_jones;
    use crate::words::Alphabet;

    #[test]
    fn trivial_monoid() {
        let m = FiniteMonoid::trivial(Alphabet::origami(2).unwrap());
        let gs = compute_green(&m).unwrap();
        assert_eq!((gs.r_count, gs.l_count, gs.h_count, gs.d_count), (1, 1, 1, 1));
        let boxes = egg_boxes(&gs, &m);
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].shape(), (1, 1));
        assert!(boxes[0].idempotent[0][0]);
        let lat = d_lattice(&gs);
        assert!(lat.edges.is_empty());
        assert_eq!(lat.maximum, Some(0));
    }

    #[test]
    fn jones3_egg_box() {
        let j = enumerate_jones(3).unwrap();
        let m = &j.monoid;
        let gs = compute_green(m).unwrap();
        assert_eq!(gs.d_count, 2);
        let boxes = egg_boxes(&gs, m);
        let a = m.alphabet;
        let b = &boxes[1];
        let cells: Vec<Vec<String>> =
            b.cells.iter().map(|row| row.iter().map(|c| a.display(m.word(c[0]))).collect()).collect();
        assert_eq!(cells, vec![vec!["h1", "h1 h2"], vec!["h2 h1", "h2"]]);
        // h1 h2 h1 h2 = h1 h2 by (B), so every cell holds an idempotent.
        assert_eq!(b.idempotent, vec![vec![true, true], vec![true, true]]);
        let lat = d_lattice(&gs);
        assert_eq!(lat.edges, vec![(0, 1)]);
        assert_eq!(lat.maximum, Some(0));
    }

    #[test]
    fn partial_monoid_rejected() {
        let mut m = FiniteMonoid::trivial(Alphabet::origami(2).unwrap());
        m.complete = false;
        assert!(compute_green(&m).is_err());
    }

    #[test]
    fn dot_is_well_formed() {
        let j = enumerate_jones(4).unwrap();
        let gs = compute_green(&j.monoid).unwrap();
        let dot = GreenReport::new(&j.monoid, &gs).to_dot();
        assert!(dot.starts_with("digraph dclasses {"));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches("->").count(), 2);
    }
}

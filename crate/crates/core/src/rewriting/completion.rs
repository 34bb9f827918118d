//! Shortlex Knuth–Bendix completion.
//!
//! Critical pairs wait in a priority queue ordered by the length of their
//! overlap word, so all superpositions of length `L` are resolved before any
//! of length `L + 1`. Rules whose left-hand side becomes reducible by a newer
//! rule are retired in interreduction sweeps and their equations re-enter
//! the system in reduced form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{reduce, RewriteSystem, Rule, Status, Trie, NONE};
use crate::error::{Error, Result};
use crate::words::{Letter, TermOrder, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionLimits {
    /// Cap on simultaneously active rules.
    pub max_rules: usize,
    /// Cap on interreduction sweeps.
    pub max_rounds: usize,
    /// Cap on the length of any left-hand side.
    pub max_word_length: usize,
    /// Per-word reduction budget.
    pub max_steps: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 10_000,
            max_rounds: 10_000,
            max_word_length: 256,
            max_steps: super::DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub system: RewriteSystem,
    /// Interreduction sweeps performed.
    pub rounds: usize,
    /// Rules created during completion, including ones later retired.
    pub added_rules: usize,
    /// Critical pairs examined.
    pub pairs_examined: usize,
    pub terminated: bool,
    pub limits_hit: Option<String>,
}

impl CompletionReport {
    pub fn resulting_rules(&self) -> &[Rule] {
        self.system.rules()
    }

    /// The completed system, or an error naming the limit that stopped it.
    pub fn into_confluent(self) -> Result<RewriteSystem> {
        if self.terminated {
            Ok(self.system)
        } else {
            Err(Error::CompletionLimit(self.limits_hit.unwrap_or_else(|| "unknown".into())))
        }
    }
}

/// Completes `rs` into a confluent system for the same congruence. When a
/// limit is reached the partial system is returned with `terminated == false`
/// and status `Oriented`.
pub fn knuth_bendix(rs: &RewriteSystem, limits: &CompletionLimits) -> Result<CompletionReport> {
    if rs.status() == Status::Raw {
        return Err(Error::InvalidRule);
    }
    let mut engine = Engine::new(rs.alphabet().size(), rs.order().clone(), limits.clone());
    let outcome = engine.run(rs.rules().iter().map(|r| (r.lhs.to_vec(), r.rhs.to_vec())).collect());
    let limits_hit = outcome.err().map(|e| match e {
        Error::CompletionLimit(s) => s,
        other => other.to_string(),
    });
    let terminated = limits_hit.is_none();
    let mut rules: Vec<Rule> = engine
        .rules
        .iter()
        .zip(&engine.active)
        .filter(|(_, &a)| a)
        .map(|(r, _)| r.clone())
        .collect();
    let order = rs.order().clone();
    rules.sort_by(|x, y| order.compare(&x.lhs, &y.lhs).then_with(|| order.compare(&x.rhs, &y.rhs)));
    let status = if terminated { Status::Confluent } else { Status::Oriented };
    let system = RewriteSystem::new(rs.alphabet(), order, rules, status)?.with_max_steps(limits.max_steps);
    Ok(CompletionReport {
        system,
        rounds: engine.rounds,
        added_rules: engine.added,
        pairs_examined: engine.examined,
        terminated,
        limits_hit,
    })
}

/// A pending superposition: rule `a`'s lhs overlaps rule `b`'s lhs in `k`
/// letters, giving an overlap word of length `len`.
type Pending = Reverse<(u32, u32, u32, u32)>;

struct Engine {
    order: TermOrder,
    limits: CompletionLimits,
    rules: Vec<Rule>,
    active: Vec<bool>,
    live: usize,
    /// Reversed lhs, for reduction and for "rules ending with" queries.
    suffixes: Trie,
    /// Forward lhs, for "rules starting with" queries.
    prefixes: Trie,
    queue: BinaryHeap<Pending>,
    rounds: usize,
    added: usize,
    examined: usize,
    added_since_sweep: usize,
    scratch: Vec<u32>,
}

impl Engine {
    fn new(width: usize, order: TermOrder, limits: CompletionLimits) -> Self {
        Engine {
            order,
            limits,
            rules: Vec::new(),
            active: Vec::new(),
            live: 0,
            suffixes: Trie::new(width),
            prefixes: Trie::new(width),
            queue: BinaryHeap::new(),
            rounds: 0,
            added: 0,
            examined: 0,
            added_since_sweep: 0,
            scratch: Vec::new(),
        }
    }

    fn reduce(&self, w: &[Letter]) -> Result<Vec<Letter>> {
        reduce(&self.suffixes, &self.rules, w, self.limits.max_steps).map(|(v, _)| v)
    }

    fn run(&mut self, equations: Vec<(Vec<Letter>, Vec<Letter>)>) -> Result<()> {
        for (u, v) in equations {
            self.add_equation(&u, &v)?;
        }
        loop {
            while let Some(Reverse((_, a, b, k))) = self.queue.pop() {
                if !(self.active[a as usize] && self.active[b as usize]) {
                    continue;
                }
                self.examined += 1;
                let (left, right) = self.superpose(a as usize, b as usize, k as usize);
                self.add_equation(&left, &right)?;
                if self.added_since_sweep > 512.max(self.live / 2) {
                    self.sweep()?;
                }
            }
            if !self.sweep()? {
                return Ok(());
            }
        }
    }

    fn superpose(&self, a: usize, b: usize, k: usize) -> (Vec<Letter>, Vec<Letter>) {
        let ra = &self.rules[a];
        let rb = &self.rules[b];
        let m = ra.lhs.len();
        let mut left = ra.rhs.to_vec();
        left.extend_from_slice(&rb.lhs[k..]);
        let mut right = ra.lhs[..m - k].to_vec();
        right.extend_from_slice(&rb.rhs);
        (left, right)
    }

    fn add_equation(&mut self, u: &[Letter], v: &[Letter]) -> Result<()> {
        let u = self.reduce(u)?;
        let v = self.reduce(v)?;
        let Some(rule) = Rule::oriented(Word::from(u), Word::from(v), &self.order) else {
            return Ok(());
        };
        if rule.lhs.len() > self.limits.max_word_length {
            return Err(Error::CompletionLimit(format!(
                "left-hand side of length {} exceeds {}",
                rule.lhs.len(),
                self.limits.max_word_length
            )));
        }
        if self.live >= self.limits.max_rules {
            return Err(Error::CompletionLimit(format!("more than {} rules", self.limits.max_rules)));
        }
        let id = self.rules.len() as u32;
        self.suffixes.insert(rule.lhs.iter().rev().copied(), id);
        self.prefixes.insert(rule.lhs.iter().copied(), id);
        self.rules.push(rule);
        self.active.push(true);
        self.live += 1;
        self.added += 1;
        self.added_since_sweep += 1;
        self.enqueue_overlaps(id);
        Ok(())
    }

    fn enqueue_overlaps(&mut self, x: u32) {
        let lhs = self.rules[x as usize].lhs.clone();
        let m = lhs.len();
        let mut found = std::mem::take(&mut self.scratch);
        for k in 1..m {
            // x then y: suffix of lhs(x) is a prefix of lhs(y).
            if let Some(node) = self.prefixes.descend(lhs[m - k..].iter().copied()) {
                found.clear();
                self.prefixes.terminals_below(node, &mut found);
                for &y in &found {
                    let len = (m + self.rules[y as usize].lhs.len() - k) as u32;
                    self.queue.push(Reverse((len, x, y, k as u32)));
                }
            }
            // y then x: prefix of lhs(x) is a suffix of lhs(y).
            if let Some(node) = self.suffixes.descend(lhs[..k].iter().rev().copied()) {
                found.clear();
                self.suffixes.terminals_below(node, &mut found);
                for &y in &found {
                    if y == x {
                        continue;
                    }
                    let len = (m + self.rules[y as usize].lhs.len() - k) as u32;
                    self.queue.push(Reverse((len, y, x, k as u32)));
                }
            }
        }
        self.scratch = found;
    }

    fn retire(&mut self, id: usize) {
        let rule = &self.rules[id];
        self.suffixes.remove(rule.lhs.iter().rev().copied(), id as u32);
        self.prefixes.remove(rule.lhs.iter().copied(), id as u32);
        self.active[id] = false;
        self.live -= 1;
    }

    /// Lhs of rule `id` contains the lhs of some other active rule.
    fn lhs_reducible_by_other(&self, id: usize) -> bool {
        let lhs = &self.rules[id].lhs;
        let m = lhs.len();
        for end in 0..m {
            let mut node = self.suffixes.root();
            for k in (0..=end).rev() {
                node = self.suffixes.child(node, lhs[k]);
                if node == NONE {
                    break;
                }
                let t = self.suffixes.terminal(node);
                if t != NONE && t as usize != id {
                    return true;
                }
            }
        }
        false
    }

    /// Retires rules with reducible left-hand sides, re-adding their
    /// equations, and normalises right-hand sides. Returns whether anything
    /// changed.
    fn sweep(&mut self) -> Result<bool> {
        self.rounds += 1;
        if self.rounds > self.limits.max_rounds {
            return Err(Error::CompletionLimit(format!("more than {} rounds", self.limits.max_rounds)));
        }
        self.added_since_sweep = 0;
        let mut changed = false;
        let mut requeue = Vec::new();
        for id in 0..self.rules.len() {
            if !self.active[id] {
                continue;
            }
            if self.lhs_reducible_by_other(id) {
                requeue.push(id);
            }
        }
        for &id in &requeue {
            self.retire(id);
            changed = true;
        }
        for id in 0..self.rules.len() {
            if !self.active[id] {
                continue;
            }
            let rhs = self.reduce(&self.rules[id].rhs)?;
            if rhs[..] != self.rules[id].rhs[..] {
                self.rules[id].rhs = Word::from(rhs);
            }
        }
        for id in requeue {
            let (l, r) = (self.rules[id].lhs.to_vec(), self.rules[id].rhs.to_vec());
            self.add_equation(&l, &r)?;
        }
        Ok(changed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Family};

    #[test]
    fn empty_system_completes_trivially() {
        let a = Alphabet::new(Family::Origami, 3).unwrap();
        let rs = RewriteSystem::from_relations(a, a.default_order(), &[]).unwrap();
        let rep = knuth_bendix(&rs, &CompletionLimits::default()).unwrap();
        assert!(rep.terminated);
        assert!(rep.resulting_rules().is_empty());
        assert!(rep.system.is_confluent());
    }

    #[test]
    fn completes_ab_ba() {
        // ab = a, ba = b forces aa = a and bb = b.
        let a = Alphabet::new(Family::Origami, 2).unwrap();
        let p = |s| a.parse(s).unwrap();
        let rels = vec![(p("a1 b1"), p("a1")), (p("b1 a1"), p("b1"))];
        let rs = RewriteSystem::from_relations(a, a.default_order(), &rels).unwrap();
        let rep = knuth_bendix(&rs, &CompletionLimits::default()).unwrap();
        assert!(rep.terminated);
        let sys = rep.system;
        assert!(sys.unresolved_pairs().unwrap().is_empty());
        assert_eq!(sys.normal_form(&p("a1 a1")).unwrap(), p("a1"));
        assert_eq!(sys.normal_form(&p("b1 b1 b1")).unwrap(), p("b1"));
        assert_eq!(sys.rules().len(), 4);
    }

    #[test]
    fn limits_are_reported() {
        let a = Alphabet::new(Family::Origami, 2).unwrap();
        let p = |s| a.parse(s).unwrap();
        let rels = vec![(p("a1 b1"), p("a1")), (p("b1 a1"), p("b1"))];
        let rs = RewriteSystem::from_relations(a, a.default_order(), &rels).unwrap();
        let limits = CompletionLimits { max_rules: 2, ..CompletionLimits::default() };
        let rep = knuth_bendix(&rs, &limits).unwrap();
        assert!(!rep.terminated);
        assert!(rep.limits_hit.as_deref().unwrap().contains("rules"));
        assert_eq!(rep.system.status(), Status::Oriented);
        assert!(rep.into_confluent().is_err());
    }
}

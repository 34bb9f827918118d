//! String rewriting: rules, reduction, critical pairs and completion.
//!
//! Reduction works left to right with a stack. Letters are shifted onto the
//! output one at a time and after each shift the suffixes of the output are
//! looked up in a trie of reversed left-hand sides. Because everything below
//! the top of the stack is already irreducible, only suffixes can match, and
//! a rewrite pushes the right-hand side back onto the unread input.

mod completion;
mod enumerate;
mod trie;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, TermOrder, Word};

pub use completion::{knuth_bendix, CompletionLimits, CompletionReport};
pub use enumerate::{enumerate_normal_forms, EnumerationOptions};
pub(crate) use trie::{Trie, NONE};

/// Default per-word reduction budget.
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs.is_empty() || lhs == rhs {
            return Err(Error::InvalidRule);
        }
        Ok(Rule { lhs, rhs })
    }

    /// Orients the equation `u = v` as `max(u, v) → min(u, v)`. Returns `None`
    /// when both sides coincide.
    pub fn oriented(u: Word, v: Word, order: &TermOrder) -> Option<Self> {
        match order.compare(&u, &v) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Rule { lhs: u, rhs: v }),
            Ordering::Less => Some(Rule { lhs: v, rhs: u }),
        }
    }

    pub fn is_decreasing(&self, order: &TermOrder) -> bool {
        order.compare(&self.lhs, &self.rhs) == Ordering::Greater
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Arbitrary rules; reduction may not terminate.
    Raw,
    /// Every rule is decreasing in the term order.
    Oriented,
    /// Oriented and all critical pairs resolve.
    Confluent,
}

/// One application of a rule inside a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub position: usize,
    pub result: Word,
}

/// A superposition of two rules together with the reduced forms of its two
/// one-step descendants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub rules: (usize, usize),
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
}

impl CriticalPair {
    pub fn resolves(&self) -> bool {
        self.left == self.right
    }
}

/// An immutable string rewriting system with its lookup indices.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    order: TermOrder,
    rules: Vec<Rule>,
    status: Status,
    max_steps: usize,
    /// Reversed left-hand sides; terminal holds the lowest rule index.
    suffixes: Trie,
    /// Forward left-hand sides; terminal holds an index into `groups`.
    prefixes: Trie,
    groups: Vec<Vec<u32>>,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, order: TermOrder, rules: Vec<Rule>, status: Status) -> Result<Self> {
        if order.size() != alphabet.size() {
            return Err(Error::AlphabetMismatch);
        }
        for r in &rules {
            if r.lhs.is_empty() || r.lhs == r.rhs {
                return Err(Error::InvalidRule);
            }
            alphabet.check(&r.lhs)?;
            alphabet.check(&r.rhs)?;
            if status != Status::Raw && !r.is_decreasing(&order) {
                return Err(Error::InvalidRule);
            }
        }
        let width = alphabet.size();
        let mut suffixes = Trie::new(width);
        let mut prefixes = Trie::new(width);
        let mut groups: Vec<Vec<u32>> = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            match prefixes.descend(r.lhs.iter().copied()).map(|n| prefixes.terminal(n)) {
                Some(g) if g != NONE => groups[g as usize].push(i as u32),
                _ => {
                    prefixes.insert(r.lhs.iter().copied(), groups.len() as u32);
                    groups.push(vec![i as u32]);
                    suffixes.insert(r.lhs.iter().rev().copied(), i as u32);
                }
            }
        }
        Ok(RewriteSystem {
            alphabet,
            order,
            rules,
            status,
            max_steps: DEFAULT_MAX_STEPS,
            suffixes,
            prefixes,
            groups,
        })
    }

    /// Orients each relation `u = v` into `max → min` under `order`, dropping
    /// trivial and duplicate relations.
    pub fn from_relations(alphabet: Alphabet, order: TermOrder, relations: &[(Word, Word)]) -> Result<Self> {
        let mut rules = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (u, v) in relations {
            alphabet.check(u)?;
            alphabet.check(v)?;
            if let Some(r) = Rule::oriented(u.clone(), v.clone(), &order) {
                if seen.insert(r.clone()) {
                    rules.push(r);
                }
            }
        }
        RewriteSystem::new(alphabet, order, rules, Status::Oriented)
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn is_confluent(&self) -> bool {
        self.status == Status::Confluent
    }

    /// Applies the rule at the leftmost position where any rule matches,
    /// choosing the lowest-index rule there.
    pub fn rewrite_step(&self, w: &Word) -> Option<Word> {
        self.step(w).map(|s| s.result)
    }

    pub fn step(&self, w: &Word) -> Option<Step> {
        for start in 0..w.len() {
            let mut node = self.prefixes.root();
            let mut best: Option<usize> = None;
            for (k, &l) in w[start..].iter().enumerate() {
                node = self.prefixes.child(node, l);
                if node == NONE {
                    break;
                }
                let g = self.prefixes.terminal(node);
                if g != NONE {
                    let i = self.groups[g as usize][0] as usize;
                    debug_assert_eq!(self.rules[i].lhs.len(), k + 1);
                    best = Some(best.map_or(i, |b| b.min(i)));
                }
            }
            if let Some(i) = best {
                let r = &self.rules[i];
                let mut out = Vec::with_capacity(w.len() - r.lhs.len() + r.rhs.len());
                out.extend_from_slice(&w[..start]);
                out.extend_from_slice(&r.rhs);
                out.extend_from_slice(&w[start + r.lhs.len()..]);
                return Some(Step { rule: i, position: start, result: Word::from(out) });
            }
        }
        None
    }

    /// Rewrites `w` one leftmost step at a time, recording every step.
    pub fn trace(&self, w: &Word) -> Result<Vec<Step>> {
        let mut steps = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = self.step(&cur) {
            if steps.len() >= self.max_steps {
                return Err(Error::StepBudget { limit: self.max_steps });
            }
            cur = s.result.clone();
            steps.push(s);
        }
        Ok(steps)
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        !has_match(&self.suffixes, w)
    }

    /// Reduces `w` to an irreducible word. On a confluent system this is the
    /// unique normal form of the class of `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        reduce(&self.suffixes, &self.rules, w, self.max_steps).map(|(v, _)| Word::from(v))
    }

    /// Like [`RewriteSystem::normal_form`] but also returns the step count.
    pub fn normal_form_counted(&self, w: &Word) -> Result<(Word, usize)> {
        reduce(&self.suffixes, &self.rules, w, self.max_steps).map(|(v, n)| (Word::from(v), n))
    }

    /// Every overlap and inclusion superposition of two rules, with both
    /// one-step results reduced.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair>> {
        let mut out = Vec::new();
        let mut found = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            let m = ra.lhs.len();
            // Overlaps: a proper suffix of lhs(a) is a proper prefix of lhs(b).
            for k in 1..m {
                let Some(node) = self.prefixes.descend(ra.lhs[m - k..].iter().copied()) else {
                    continue;
                };
                found.clear();
                self.prefixes.terminals_below(node, &mut found);
                for &g in &found {
                    for &b in &self.groups[g as usize] {
                        let rb = &self.rules[b as usize];
                        let left = ra.rhs.concat(&Word::from(&rb.lhs[k..]));
                        let right = Word::from(&ra.lhs[..m - k]).concat(&rb.rhs);
                        let overlap = ra.lhs.concat(&Word::from(&rb.lhs[k..]));
                        out.push(self.reduced_pair((a, b as usize), overlap, left, right)?);
                    }
                }
            }
            // Inclusions: lhs(b) occurs inside lhs(a).
            for start in 0..m {
                let mut node = self.prefixes.root();
                for end in start..m {
                    node = self.prefixes.child(node, ra.lhs[end]);
                    if node == NONE {
                        break;
                    }
                    let g = self.prefixes.terminal(node);
                    if g == NONE {
                        continue;
                    }
                    for &b in &self.groups[g as usize] {
                        let b = b as usize;
                        let whole = start == 0 && end + 1 == m;
                        if (whole && b <= a) || b == a {
                            continue;
                        }
                        let rb = &self.rules[b];
                        let left = ra.rhs.clone();
                        let right = Word::from(&ra.lhs[..start])
                            .concat(&rb.rhs)
                            .concat(&Word::from(&ra.lhs[end + 1..]));
                        out.push(self.reduced_pair((a, b), ra.lhs.clone(), left, right)?);
                    }
                }
            }
        }
        Ok(out)
    }

    fn reduced_pair(&self, rules: (usize, usize), overlap: Word, left: Word, right: Word) -> Result<CriticalPair> {
        Ok(CriticalPair { rules, overlap, left: self.normal_form(&left)?, right: self.normal_form(&right)? })
    }

    /// Critical pairs whose two sides reduce to different words.
    pub fn unresolved_pairs(&self) -> Result<Vec<CriticalPair>> {
        Ok(self.critical_pairs()?.into_iter().filter(|p| !p.resolves()).collect())
    }

    /// Checks local confluence directly and upgrades the status when it holds.
    pub fn certify(mut self) -> Result<Self> {
        if self.status == Status::Raw {
            return Err(Error::NotConfluent);
        }
        if self.unresolved_pairs()?.is_empty() {
            self.status = Status::Confluent;
            Ok(self)
        } else {
            Err(Error::NotConfluent)
        }
    }
}

/// Stack reduction against a trie of reversed left-hand sides.
pub(crate) fn reduce(index: &Trie, rules: &[Rule], w: &[Letter], budget: usize) -> Result<(Vec<Letter>, usize)> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
    let mut steps = 0usize;
    while let Some(x) = pending.pop() {
        out.push(x);
        let mut node = index.root();
        for k in (0..out.len()).rev() {
            node = index.child(node, out[k]);
            if node == NONE {
                break;
            }
            let t = index.terminal(node);
            if t != NONE {
                let r = &rules[t as usize];
                out.truncate(k);
                pending.extend(r.rhs.iter().rev());
                steps += 1;
                if steps > budget {
                    return Err(Error::StepBudget { limit: budget });
                }
                break;
            }
        }
    }
    Ok((out, steps))
}

pub(crate) fn has_match(index: &Trie, w: &[Letter]) -> bool {
    for end in 0..w.len() {
        let mut node = index.root();
        for k in (0..=end).rev() {
            node = index.child(node, w[k]);
            if node == NONE {
                break;
            }
            if index.terminal(node) != NONE {
                return true;
            }
        }
    }
    false
}

use std::collections::HashSet;

use rayon::prelude::*;

use super::RewriteSystem;
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MISSING};
use crate::words::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Stop after this many elements and flag the result incomplete.
    pub max_elements: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_elements: Some(1_000_000) }
    }
}

/// Enumerates the normal forms of a confluent system breadth first, then
/// records right and left Cayley edges.
///
/// Elements are numbered in shortlex order, so the identity is element 0.
pub fn enumerate_normal_forms(rs: &RewriteSystem, opts: EnumerationOptions) -> Result<FiniteMonoid> {
    if !rs.is_confluent() {
        return Err(Error::NotConfluent);
    }
    let alphabet = rs.alphabet();
    let letters: Vec<Letter> = alphabet.letters().collect();
    let cap = opts.max_elements.unwrap_or(usize::MAX);

    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(Word::empty());
    let mut frontier = vec![Word::empty()];
    let mut complete = true;
    'grow: while !frontier.is_empty() {
        let candidates: Vec<Result<Word>> = frontier
            .par_iter()
            .flat_map_iter(|x| {
                letters.iter().map(move |&l| {
                    let mut w = x.clone();
                    w.push(l);
                    rs.normal_form(&w)
                })
            })
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            let c = c?;
            if seen.contains(&c) {
                continue;
            }
            if seen.len() >= cap {
                complete = false;
                break 'grow;
            }
            seen.insert(c.clone());
            next.push(c);
        }
        frontier = next;
    }

    let order = rs.order();
    let mut elements: Vec<Word> = seen.into_iter().collect();
    elements.sort_by(|a, b| order.compare(a, b));
    let monoid = FiniteMonoid::new(alphabet, elements, 0, letters.clone(), Vec::new(), Vec::new(), complete);

    let edges = |left: bool| -> Result<Vec<u32>> {
        let rows: Vec<Result<Vec<u32>>> = monoid
            .elements
            .par_iter()
            .map(|x| {
                letters
                    .iter()
                    .map(|&l| {
                        let w = if left { Word::from(vec![l]).concat(x) } else {
                            let mut w = x.clone();
                            w.push(l);
                            w
                        };
                        let nf = rs.normal_form(&w)?;
                        Ok(monoid.index_of(&nf).map_or(MISSING, |i| i as u32))
                    })
                    .collect()
            })
            .collect();
        let mut flat = Vec::with_capacity(monoid.len() * letters.len());
        for r in rows {
            flat.extend(r?);
        }
        Ok(flat)
    };
    let right = edges(false)?;
    let left = edges(true)?;
    let FiniteMonoid { elements, .. } = monoid;
    Ok(FiniteMonoid::new(alphabet, elements, 0, letters, right, left, complete))
}

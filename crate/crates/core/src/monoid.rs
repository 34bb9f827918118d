//! Enumerated finite monoids with left and right Cayley graphs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Marker for a Cayley edge leaving a partial enumeration.
pub const MISSING: u32 = u32::MAX;

/// A finite monoid given by canonical words and Cayley graphs.
///
/// Element `i` is represented by `elements[i]`; `right[i * g + k]` is the
/// element `elements[i] · generator k` and `left` is the same for
/// multiplication on the left, with `g` the number of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub alphabet: Alphabet,
    pub elements: Vec<Word>,
    pub identity: usize,
    pub generators: Vec<Letter>,
    pub right: Vec<u32>,
    pub left: Vec<u32>,
    pub complete: bool,
    #[serde(skip)]
    index: HashMap<Word, u32>,
}

impl FiniteMonoid {
    pub fn new(
        alphabet: Alphabet,
        elements: Vec<Word>,
        identity: usize,
        generators: Vec<Letter>,
        right: Vec<u32>,
        left: Vec<u32>,
        complete: bool,
    ) -> Self {
        let index = elements.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        FiniteMonoid { alphabet, elements, identity, generators, right, left, complete, index }
    }

    /// Rebuilds the word index after deserialisation.
    pub fn reindex(&mut self) {
        self.index = self.elements.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn word(&self, x: usize) -> &Word {
        &self.elements[x]
    }

    #[inline]
    pub fn right_mul(&self, x: usize, g: usize) -> usize {
        self.right[x * self.generators.len() + g] as usize
    }

    #[inline]
    pub fn left_mul(&self, g: usize, x: usize) -> usize {
        self.left[x * self.generators.len() + g] as usize
    }

    pub fn right_edges(&self, x: usize) -> &[u32] {
        let g = self.generators.len();
        &self.right[x * g..(x + 1) * g]
    }

    pub fn left_edges(&self, x: usize) -> &[u32] {
        let g = self.generators.len();
        &self.left[x * g..(x + 1) * g]
    }

    fn generator_slot(&self, l: Letter) -> Option<usize> {
        self.generators.iter().position(|&x| x == l)
    }

    /// Evaluates a word over the generators, starting from the identity.
    pub fn evaluate(&self, w: &[Letter]) -> Result<usize> {
        self.act_right(self.identity, w)
    }

    /// `x · w` computed along right Cayley edges.
    pub fn act_right(&self, x: usize, w: &[Letter]) -> Result<usize> {
        let mut cur = x;
        for &l in w {
            let g = self.generator_slot(l).ok_or(Error::AlphabetMismatch)?;
            let next = self.right[cur * self.generators.len() + g];
            if next == MISSING {
                return Err(Error::Incomplete);
            }
            cur = next as usize;
        }
        Ok(cur)
    }

    /// Product of two elements.
    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.act_right(x, &self.elements[y]).expect("product outside enumerated monoid")
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.multiply(x, x) == x
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::Incomplete)
        }
    }

    /// Full multiplication table, row-major. Only sensible for small monoids.
    pub fn table(&self) -> Vec<u32> {
        let n = self.len();
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                t.push(self.multiply(x, y) as u32);
            }
        }
        t
    }

    /// The monoid on a single element.
    pub fn trivial(alphabet: Alphabet) -> Self {
        let g = alphabet.size();
        FiniteMonoid::new(
            alphabet,
            vec![Word::empty()],
            0,
            alphabet.letters().collect(),
            vec![0; g],
            vec![0; g],
            true,
        )
    }
}

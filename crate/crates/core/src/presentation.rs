//! JSON form of presentations and completed rewriting systems.
//!
//! ```json
//! { "alphabet": {"kind": "origami", "n": 3},
//!   "relations": [["a1 a1", "a1"], ...],
//!   "order": ["a1", "a2", "b1", "b2"] }
//! ```
//!
//! A completed system carries `status` and `rules` in addition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::{RewriteSystem, Rule, Status};
use crate::words::{Alphabet, Family, Letter, TermOrder, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetSpec {
    pub kind: Family,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub alphabet: AlphabetSpec,
    pub relations: Vec<[String; 2]>,
    pub order: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<[String; 2]>>,
}

impl Presentation {
    pub fn from_pairs(alphabet: Alphabet, relations: &[(Word, Word)], order: &TermOrder) -> Self {
        Presentation {
            alphabet: AlphabetSpec { kind: alphabet.kind, n: alphabet.n },
            relations: relations.iter().map(|(u, v)| [alphabet.format(u), alphabet.format(v)]).collect(),
            order: order.ranking().iter().map(|&l| alphabet.generator(l).to_string()).collect(),
            status: None,
            rules: None,
        }
    }

    /// Attaches the rules of a completed system.
    pub fn with_system(mut self, rs: &RewriteSystem) -> Self {
        let a = rs.alphabet();
        self.status = Some(rs.status());
        self.rules = Some(rs.rules().iter().map(|r| [a.format(&r.lhs), a.format(&r.rhs)]).collect());
        self
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.alphabet.kind, self.alphabet.n)
    }

    pub fn term_order(&self) -> Result<TermOrder> {
        let a = self.alphabet()?;
        if self.order.is_empty() {
            return Ok(a.default_order());
        }
        let ranking: Vec<Letter> = self
            .order
            .iter()
            .map(|t| {
                let w = a.parse(t)?;
                match w.letters() {
                    [l] => Ok(*l),
                    _ => Err(Error::Parse(format!("order entry `{t}` is not a single generator"))),
                }
            })
            .collect::<Result<_>>()?;
        if ranking.len() != a.size() {
            return Err(Error::Parse("order must list every generator exactly once".into()));
        }
        TermOrder::from_ranking(&ranking)
    }

    pub fn relation_pairs(&self) -> Result<Vec<(Word, Word)>> {
        let a = self.alphabet()?;
        self.relations.iter().map(|[u, v]| Ok((a.parse(u)?, a.parse(v)?))).collect()
    }

    /// The oriented system of the relations, or the stored rules when present.
    pub fn rewrite_system(&self) -> Result<RewriteSystem> {
        let a = self.alphabet()?;
        let order = self.term_order()?;
        match (&self.rules, self.status) {
            (Some(rules), Some(status)) => {
                let rules = rules
                    .iter()
                    .map(|[l, r]| Rule::new(a.parse(l)?, a.parse(r)?))
                    .collect::<Result<Vec<_>>>()?;
                RewriteSystem::new(a, order, rules, status)
            }
            _ => RewriteSystem::from_relations(a, order, &self.relation_pairs()?),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

//! The origami monoid `𝒪ₙ`: its presentation and the submonoids spanned by
//! `α`-letters, `β`-letters and mixed words.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::presentation::Presentation;
use crate::rewriting::{enumerate_normal_forms, knuth_bendix, CompletionLimits, CompletionReport, EnumerationOptions, RewriteSystem};
use crate::words::{Alphabet, GeneratorKind, Letter, Word};

/// Relation families of `𝒪ₙ`. The suffixed families substitute two- and
/// three-letter blocks for the generator in the corresponding base family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationFamily {
    #[serde(rename = "1")]
    Idempotent,
    #[serde(rename = "2")]
    LeftTl,
    #[serde(rename = "3")]
    RightTl,
    #[serde(rename = "4")]
    InterCommute,
    #[serde(rename = "5")]
    IntraCommute,
    #[serde(rename = "1a")]
    IdempotentPair,
    #[serde(rename = "2a")]
    LeftTlPair,
    #[serde(rename = "3a")]
    RightTlPair,
    #[serde(rename = "2b")]
    LeftTlTriple,
    #[serde(rename = "3b")]
    RightTlTriple,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 10] = [
        RelationFamily::Idempotent,
        RelationFamily::LeftTl,
        RelationFamily::RightTl,
        RelationFamily::InterCommute,
        RelationFamily::IntraCommute,
        RelationFamily::IdempotentPair,
        RelationFamily::LeftTlPair,
        RelationFamily::RightTlPair,
        RelationFamily::LeftTlTriple,
        RelationFamily::RightTlTriple,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RelationFamily::Idempotent => "1",
            RelationFamily::LeftTl => "2",
            RelationFamily::RightTl => "3",
            RelationFamily::InterCommute => "4",
            RelationFamily::IntraCommute => "5",
            RelationFamily::IdempotentPair => "1a",
            RelationFamily::LeftTlPair => "2a",
            RelationFamily::RightTlPair => "3a",
            RelationFamily::LeftTlTriple => "2b",
            RelationFamily::RightTlTriple => "3b",
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedRelation {
    pub family: RelationFamily,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug)]
pub struct OrigamiPresentation {
    pub n: usize,
    pub alphabet: Alphabet,
    pub relations: Vec<TaggedRelation>,
}

impl OrigamiPresentation {
    pub fn relations_of(&self, family: RelationFamily) -> impl Iterator<Item = &TaggedRelation> {
        self.relations.iter().filter(move |r| r.family == family)
    }

    pub fn pairs(&self) -> Vec<(Word, Word)> {
        self.relations.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect()
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation::from_pairs(self.alphabet, &self.pairs(), &self.alphabet.default_order())
    }

    pub fn rewrite_system(&self) -> Result<RewriteSystem> {
        RewriteSystem::from_relations(self.alphabet, self.alphabet.default_order(), &self.pairs())
    }
}

/// The defining relations of `𝒪ₙ`, instantiated for every valid index.
pub fn build_presentation(n: usize) -> Result<OrigamiPresentation> {
    if n < 2 {
        return Err(Error::Degree { n, min: 2, max: crate::words::MAX_DEGREE });
    }
    let alphabet = Alphabet::origami(n)?;
    let r = alphabet.rank();
    let alpha = |i: usize| alphabet.gen(GeneratorKind::Alpha, i);
    let beta = |i: usize| alphabet.gen(GeneratorKind::Beta, i);

    // A "block" maps an index to the word standing in for γᵢ.
    type Block<'a> = Box<dyn Fn(usize) -> Vec<Letter> + 'a>;
    let single: Vec<Block> = vec![Box::new(move |i| vec![alpha(i)]), Box::new(move |i| vec![beta(i)])];
    let pairs: Vec<Block> = vec![
        Box::new(move |i| vec![alpha(i), beta(i)]),
        Box::new(move |i| vec![beta(i), alpha(i)]),
    ];
    let triples: Vec<Block> = vec![
        Box::new(move |i| vec![alpha(i), beta(i), alpha(i)]),
        Box::new(move |i| vec![beta(i), alpha(i), beta(i)]),
    ];

    let mut out = Vec::new();
    let mut push = |family, lhs: Vec<Letter>, rhs: Vec<Letter>| {
        out.push(TaggedRelation { family, lhs: Word::from(lhs), rhs: Word::from(rhs) });
    };
    let cat = |parts: &[&[Letter]]| parts.concat();

    let tl_families = [
        (&single, RelationFamily::Idempotent, RelationFamily::LeftTl, RelationFamily::RightTl),
        (&pairs, RelationFamily::IdempotentPair, RelationFamily::LeftTlPair, RelationFamily::RightTlPair),
    ];
    for (blocks, idem, left, right) in tl_families {
        for g in blocks.iter() {
            for i in 1..=r {
                push(idem, cat(&[&g(i), &g(i)]), g(i));
            }
            for i in 1..r {
                push(left, cat(&[&g(i), &g(i + 1), &g(i)]), g(i));
            }
            for i in 2..=r {
                push(right, cat(&[&g(i), &g(i - 1), &g(i)]), g(i));
            }
        }
    }
    for g in triples.iter() {
        for i in 1..r {
            push(RelationFamily::LeftTlTriple, cat(&[&g(i), &g(i + 1), &g(i)]), g(i));
        }
        for i in 2..=r {
            push(RelationFamily::RightTlTriple, cat(&[&g(i), &g(i - 1), &g(i)]), g(i));
        }
    }
    // γᵢ γ̄ⱼ = γ̄ⱼ γᵢ for i ≠ j.
    for i in 1..=r {
        for j in 1..=r {
            if i != j {
                push(RelationFamily::InterCommute, vec![alpha(i), beta(j)], vec![beta(j), alpha(i)]);
                push(RelationFamily::InterCommute, vec![beta(i), alpha(j)], vec![alpha(j), beta(i)]);
            }
        }
    }
    // γᵢ γⱼ = γⱼ γᵢ for |i − j| ≥ 2.
    for g in single.iter() {
        for i in 1..=r {
            for j in 1..=r {
                if i.abs_diff(j) >= 2 {
                    push(RelationFamily::IntraCommute, cat(&[&g(i), &g(j)]), cat(&[&g(j), &g(i)]));
                }
            }
        }
    }

    // Each relation is an unordered pair of words.
    let mut seen = HashSet::new();
    let relations = out
        .into_iter()
        .filter(|rel| {
            let key = if rel.lhs <= rel.rhs { (rel.lhs.clone(), rel.rhs.clone()) } else { (rel.rhs.clone(), rel.lhs.clone()) };
            seen.insert(key)
        })
        .collect();
    Ok(OrigamiPresentation { n, alphabet, relations })
}

#[derive(Clone, Debug)]
pub struct OrigamiMonoid {
    pub presentation: OrigamiPresentation,
    pub completion: CompletionReport,
    pub monoid: FiniteMonoid,
}

impl OrigamiMonoid {
    pub fn system(&self) -> &RewriteSystem {
        &self.completion.system
    }
}

/// Default completion limits for `𝒪ₙ`, sized so that `n ≤ 6` completes.
pub fn default_limits() -> CompletionLimits {
    CompletionLimits::default()
}

/// Presentation, completion and enumeration of `𝒪ₙ`.
pub fn build_monoid(n: usize, limits: &CompletionLimits, opts: EnumerationOptions) -> Result<OrigamiMonoid> {
    let presentation = build_presentation(n)?;
    let rs = presentation.rewrite_system()?;
    let completion = knuth_bendix(&rs, limits)?;
    if !completion.terminated {
        return Err(Error::CompletionLimit(completion.limits_hit.clone().unwrap_or_default()));
    }
    let monoid = enumerate_normal_forms(&completion.system, opts)?;
    Ok(OrigamiMonoid { presentation, completion, monoid })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementClass {
    Identity,
    AlphaOnly,
    BetaOnly,
    Mixed,
}

/// Membership in `𝒪ᵅₙ`, `𝒪ᵝₙ` or `𝒪ᵅᵝₙ` by letter content.
pub fn classify_element(alphabet: &Alphabet, w: &Word) -> ElementClass {
    let r = alphabet.rank();
    let has_alpha = w.iter().any(|l| l.code() < r);
    let has_beta = w.iter().any(|l| l.code() >= r);
    match (has_alpha, has_beta) {
        (false, false) => ElementClass::Identity,
        (true, false) => ElementClass::AlphaOnly,
        (false, true) => ElementClass::BetaOnly,
        (true, true) => ElementClass::Mixed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(p: &OrigamiPresentation) -> Vec<(String, String)> {
        p.relations.iter().map(|r| (p.alphabet.format(&r.lhs), p.alphabet.format(&r.rhs))).collect()
    }

    fn o(n: usize) -> OrigamiMonoid {
        build_monoid(n, &default_limits(), EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn degree_two_relations() {
        let p = build_presentation(2).unwrap();
        let mut got = texts(&p);
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("a1 a1", "a1"),
            ("b1 b1", "b1"),
            ("a1 b1 a1 b1", "a1 b1"),
            ("b1 a1 b1 a1", "b1 a1"),
        ]
        .iter()
        .map(|(l, r)| (l.to_string(), r.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn commutations_present() {
        let t3 = texts(&build_presentation(3).unwrap());
        assert!(t3.contains(&("a1 b2".into(), "b2 a1".into())));
        assert!(t3.contains(&("b1 a2".into(), "a2 b1".into())));
        let t4 = texts(&build_presentation(4).unwrap());
        assert!(t4.iter().any(|(l, r)| (l == "a1 a3" && r == "a3 a1") || (l == "a3 a1" && r == "a1 a3")));
        assert!(!t4.iter().any(|(l, _)| l == "a1 a2"));
    }

    #[test]
    fn degree_one_rejected() {
        assert!(matches!(build_presentation(1), Err(Error::Degree { .. })));
    }

    #[test]
    fn presentation_closed_under_bar() {
        for n in 2..=5 {
            let p = build_presentation(n).unwrap();
            let a = p.alphabet;
            let key = |u: &Word, v: &Word| if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
            let set: HashSet<_> = p.relations.iter().map(|r| key(&r.lhs, &r.rhs)).collect();
            for r in &p.relations {
                assert!(set.contains(&key(&a.bar(&r.lhs).unwrap(), &a.bar(&r.rhs).unwrap())), "n={n} ({})", r.family);
            }
        }
    }

    #[test]
    fn classify() {
        let a = Alphabet::origami(3).unwrap();
        let c = |s: &str| classify_element(&a, &a.parse(s).unwrap());
        assert_eq!(c("1"), ElementClass::Identity);
        assert_eq!(c("a1 a2"), ElementClass::AlphaOnly);
        assert_eq!(c("b2"), ElementClass::BetaOnly);
        assert_eq!(c("a1 b2"), ElementClass::Mixed);
    }

    #[test]
    fn relations_agree_under_normal_forms() {
        for n in 2..=4 {
            let m = o(n);
            for r in &m.presentation.relations {
                assert_eq!(m.system().normal_form(&r.lhs).unwrap(), m.system().normal_form(&r.rhs).unwrap());
            }
        }
    }

    #[test]
    fn rewriting_preserves_letter_content() {
        // Every rule keeps the presence of α and of β.
        for n in 2..=5 {
            let m = o(n);
            let a = m.monoid.alphabet;
            for rule in m.system().rules() {
                assert_eq!(classify_element(&a, &rule.lhs), classify_element(&a, &rule.rhs));
            }
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(o(2).monoid.len(), 7);
        assert_eq!(o(3).monoid.len(), 45);
    }
}

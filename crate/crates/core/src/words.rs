//! Alphabets, words and the shortlex order.
//!
//! Every alphabet used in this crate is indexed: the origami alphabet of degree
//! `n` has letters `a1 .. a(n-1), b1 .. b(n-1)` and the Jones alphabet has
//! `h1 .. h(n-1)`. Internally a letter is its position in that default listing,
//! so comparing letter codes is comparing by the default generator ranking.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family of generator a letter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Staple cross-over `αᵢ`.
    Alpha,
    /// Scaffold cross-over `βᵢ`.
    Beta,
    /// Temperley–Lieb generator `hᵢ`.
    Jones,
}

impl GeneratorKind {
    fn prefix(self) -> char {
        match self {
            GeneratorKind::Alpha => 'a',
            GeneratorKind::Beta => 'b',
            GeneratorKind::Jones => 'h',
        }
    }
}

/// A named generator such as `α₃`. Indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: usize,
}

impl Generator {
    pub fn new(kind: GeneratorKind, index: usize) -> Self {
        Generator { kind, index }
    }

    pub fn alpha(index: usize) -> Self {
        Generator::new(GeneratorKind::Alpha, index)
    }

    pub fn beta(index: usize) -> Self {
        Generator::new(GeneratorKind::Beta, index)
    }

    pub fn jones(index: usize) -> Self {
        Generator::new(GeneratorKind::Jones, index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

/// The two alphabet families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Origami,
    Jones,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Origami => f.write_str("origami"),
            Family::Jones => f.write_str("jones"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "origami" => Ok(Family::Origami),
            "jones" => Ok(Family::Jones),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// A letter of some [`Alphabet`], stored as its default rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Letter(pub u8);

impl Letter {
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }
}

/// The alphabet `Σₙ` of the origami monoid or the generating set of `𝒥ₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub kind: Family,
    pub n: usize,
}

/// Letters are stored in a `u8`, which bounds the degree.
pub const MAX_DEGREE: usize = 64;

impl Alphabet {
    pub fn new(kind: Family, n: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::Degree { n, min: 1, max: MAX_DEGREE });
        }
        Ok(Alphabet { kind, n })
    }

    pub fn origami(n: usize) -> Result<Self> {
        Alphabet::new(Family::Origami, n)
    }

    pub fn jones(n: usize) -> Result<Self> {
        Alphabet::new(Family::Jones, n)
    }

    /// Number of distinct indices, `n - 1`.
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Number of letters.
    pub fn size(&self) -> usize {
        match self.kind {
            Family::Origami => 2 * self.rank(),
            Family::Jones => self.rank(),
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.size()).map(|c| Letter(c as u8))
    }

    pub fn generator(&self, letter: Letter) -> Generator {
        let c = letter.code();
        debug_assert!(c < self.size());
        match self.kind {
            Family::Jones => Generator::jones(c + 1),
            Family::Origami if c < self.rank() => Generator::alpha(c + 1),
            Family::Origami => Generator::beta(c - self.rank() + 1),
        }
    }

    pub fn letter(&self, g: Generator) -> Result<Letter> {
        if g.index < 1 || g.index > self.rank() {
            return Err(Error::GeneratorIndex { generator: g.to_string(), n: self.n });
        }
        let code = match (self.kind, g.kind) {
            (Family::Jones, GeneratorKind::Jones) => g.index - 1,
            (Family::Origami, GeneratorKind::Alpha) => g.index - 1,
            (Family::Origami, GeneratorKind::Beta) => self.rank() + g.index - 1,
            _ => {
                return Err(Error::GeneratorKind { generator: g.to_string(), family: self.kind })
            }
        };
        Ok(Letter(code as u8))
    }

    /// Letter for `αᵢ`, `βᵢ` or `hᵢ`; panics on an invalid generator.
    pub fn gen(&self, kind: GeneratorKind, index: usize) -> Letter {
        self.letter(Generator::new(kind, index)).expect("generator outside alphabet")
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|l| l.code() < self.size())
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| l.code() >= self.size()) {
            None => Ok(()),
            Some(l) => Err(Error::GeneratorIndex { generator: format!("#{}", l.0), n: self.n }),
        }
    }

    /// Parses whitespace separated tokens such as `a1 b2 a3`. Empty input and
    /// the token `1` denote the identity.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let mut chars = token.chars();
            let kind = match chars.next() {
                Some('a') => GeneratorKind::Alpha,
                Some('b') => GeneratorKind::Beta,
                Some('h') => GeneratorKind::Jones,
                _ => return Err(Error::Parse(format!("bad token `{token}`"))),
            };
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in `{token}`")))?;
            out.push(self.letter(Generator::new(kind, index))?);
        }
        Ok(Word::from(out))
    }

    /// Inverse of [`Alphabet::parse`]; the identity prints as the empty string.
    pub fn format(&self, w: &Word) -> String {
        let mut s = String::new();
        for (k, &l) in w.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push_str(&self.generator(l).to_string());
        }
        s
    }

    /// Like [`Alphabet::format`] but renders the identity as `1`.
    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            self.format(w)
        }
    }

    /// The letter swap `αᵢ ↔ βᵢ`, extended letterwise to words.
    pub fn bar(&self, w: &Word) -> Result<Word> {
        if self.kind != Family::Origami {
            return Err(Error::BarUndefined);
        }
        self.check(w)?;
        let r = self.rank();
        Ok(w.iter()
            .map(|l| {
                let c = l.code();
                Letter(if c < r { c + r } else { c - r } as u8)
            })
            .collect())
    }

    pub fn bar_letter(&self, l: Letter) -> Letter {
        debug_assert_eq!(self.kind, Family::Origami);
        let r = self.rank();
        let c = l.code();
        Letter(if c < r { c + r } else { c - r } as u8)
    }

    pub fn default_order(&self) -> TermOrder {
        TermOrder::identity(self.size())
    }
}

/// A word over some alphabet; the empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn into_inner(self) -> Vec<Letter> {
        self.0
    }

    /// Whether `self` occurs contiguously in `v`.
    pub fn is_factor_of(&self, v: &Word) -> bool {
        is_factor(self, v)
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.iter().map(|l| l.0).collect::<Vec<_>>())
    }
}

/// True iff `v = x u y` for some words `x`, `y`.
pub fn is_factor(u: &[Letter], v: &[Letter]) -> bool {
    u.is_empty() || v.windows(u.len()).any(|w| w == u)
}

/// Shortlex order determined by a ranking of the letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    /// `rank[code]` is the position of the letter in the ranking.
    rank: Vec<u8>,
}

impl TermOrder {
    /// The default ranking `a1 < .. < a(n-1) < b1 < .. < b(n-1)`.
    pub fn identity(size: usize) -> Self {
        TermOrder { rank: (0..size as u8).collect() }
    }

    /// Builds an order from letters listed from smallest to largest.
    pub fn from_ranking(ranking: &[Letter]) -> Result<Self> {
        let size = ranking.len();
        let mut rank = vec![u8::MAX; size];
        for (pos, l) in ranking.iter().enumerate() {
            if l.code() >= size || rank[l.code()] != u8::MAX {
                return Err(Error::Parse("ranking is not a permutation of the alphabet".into()));
            }
            rank[l.code()] = pos as u8;
        }
        Ok(TermOrder { rank })
    }

    /// Letters from smallest to largest.
    pub fn ranking(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = (0..self.rank.len() as u8).map(Letter).collect();
        v.sort_by_key(|l| self.rank[l.code()]);
        v
    }

    pub fn is_identity(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r as usize)
    }

    pub fn size(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn compare(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            for (a, b) in u.iter().zip(v) {
                match self.rank[a.code()].cmp(&self.rank[b.code()]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

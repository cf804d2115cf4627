use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::{Interval, IntervalSet};
use crate::rat::Rat;

use super::{MapError, PAMap, Space};

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Letter {
        Letter {
            generator: generator.into(),
            inverse,
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.inverse {
            return f.write_str(&self.generator);
        }
        match capitalized(&self.generator) {
            Some(cap) => f.write_str(&cap),
            None => write!(f, "{}^-1", self.generator),
        }
    }
}

fn capitalized(name: &str) -> Option<String> {
    let mut chars = name.chars();
    let first = chars.next()?;
    first
        .is_lowercase()
        .then(|| first.to_uppercase().chain(chars).collect())
}

/// A word over the generators, read with the convention that
/// `g₁g₂…gₖ` acts as `f_{g₁} ∘ f_{g₂} ∘ … ∘ f_{gₖ}`.
///
/// Words are not freely reduced: in a partial-map presentation `aA` is the
/// identity restricted to the range of `a`, which differs from the empty word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            out.extend(base.0.iter().cloned());
        }
        Word(out)
    }

    /// Parses words such as `ddd`, `dE`, `(de)^3`, `pi0^-1 a`.
    ///
    /// Generator names are matched greedily (longest first). An inverse is
    /// written with a capitalized name (`E` for `e⁻¹`) or a `^-1` suffix;
    /// `^k` applies to the preceding name or parenthesized group.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word, MapError> {
        let mut tokens: Vec<(String, Letter)> = Vec::new();
        for name in names {
            let name = name.as_ref();
            tokens.push((name.to_string(), Letter::new(name, false)));
            if let Some(cap) = capitalized(name) {
                if !names.iter().any(|n| n.as_ref() == cap) {
                    tokens.push((cap, Letter::new(name, true)));
                }
            }
        }
        tokens.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        let mut parser = WordParser {
            text,
            pos: 0,
            tokens: &tokens,
        };
        let word = parser.sequence()?;
        if parser.pos != text.len() {
            return Err(MapError::BadWord(text.to_string()));
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

struct WordParser<'a> {
    text: &'a str,
    pos: usize,
    tokens: &'a [(String, Letter)],
}

impl WordParser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sequence(&mut self) -> Result<Word, MapError> {
        let mut out = Word::identity();
        loop {
            self.skip_ws();
            if self.rest().is_empty() || self.rest().starts_with(')') {
                return Ok(out);
            }
            let mut atom = if self.eat('(') {
                let inner = self.sequence()?;
                if !self.eat(')') {
                    return Err(MapError::BadWord(self.text.to_string()));
                }
                inner
            } else {
                let rest = self.rest();
                let (tok, letter) = self
                    .tokens
                    .iter()
                    .find(|(t, _)| rest.starts_with(t.as_str()))
                    .ok_or_else(|| MapError::UnknownGenerator(self.text.to_string()))?;
                self.pos += tok.len();
                Word(vec![letter.clone()])
            };
            if self.eat('^') {
                atom = atom.pow(self.exponent()?);
            }
            out = out.concat(&atom);
        }
    }

    fn exponent(&mut self) -> Result<i64, MapError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let n = rest[..len]
            .parse()
            .map_err(|_| MapError::BadWord(self.text.to_string()))?;
        self.pos += len;
        Ok(n)
    }
}

/// A proof that a word acts nontrivially: `g(f(point)) ≠ f(point)` where `f`
/// is the conjugator, found while scanning words of length at most `depth`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub point: Rat,
    pub conjugator: Word,
    pub depth: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Witness(Witness),
    Unknown,
}

/// Named generators, all on one space, each a bijection onto its image.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, PAMap>", into = "BTreeMap<String, PAMap>")]
pub struct Presentation {
    space: Space,
    generators: BTreeMap<String, PAMap>,
    inverses: BTreeMap<String, PAMap>,
}

impl TryFrom<BTreeMap<String, PAMap>> for Presentation {
    type Error = MapError;
    fn try_from(generators: BTreeMap<String, PAMap>) -> Result<Presentation, MapError> {
        Presentation::new(generators)
    }
}

impl From<Presentation> for BTreeMap<String, PAMap> {
    fn from(p: Presentation) -> BTreeMap<String, PAMap> {
        p.generators
    }
}

impl Presentation {
    pub fn new(generators: BTreeMap<String, PAMap>) -> Result<Presentation, MapError> {
        let space = generators
            .values()
            .next()
            .ok_or(MapError::EmptyPresentation)?
            .space()
            .clone();
        let mut inverses = BTreeMap::new();
        for (name, f) in &generators {
            if f.space() != &space {
                return Err(MapError::SpaceMismatch);
            }
            let inv = f
                .invert()
                .map_err(|_| MapError::NotBijective(name.clone()))?;
            inverses.insert(name.clone(), inv);
        }
        Ok(Presentation {
            space,
            generators,
            inverses,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.keys().map(String::as_str).collect()
    }

    pub fn generators(&self) -> &BTreeMap<String, PAMap> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&PAMap> {
        self.generators.get(name)
    }

    /// Every generator followed by its inverse, in name order.
    pub fn letters(&self) -> Vec<Letter> {
        self.generators
            .keys()
            .flat_map(|n| {
                [
                    Letter::new(n.as_str(), false),
                    Letter::new(n.as_str(), true),
                ]
            })
            .collect()
    }

    pub fn letter_map(&self, letter: &Letter) -> Result<&PAMap, MapError> {
        let table = if letter.inverse {
            &self.inverses
        } else {
            &self.generators
        };
        table
            .get(&letter.generator)
            .ok_or_else(|| MapError::UnknownGenerator(letter.generator.clone()))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, MapError> {
        Word::parse(text, &self.names())
    }

    pub fn word_apply(&self, word: &Word) -> Result<PAMap, MapError> {
        let mut acc = PAMap::identity(&self.space);
        for letter in word.letters() {
            acc = acc.compose(self.letter_map(letter)?)?;
        }
        Ok(acc)
    }

    /// Word problem for presentations by total homeomorphisms.
    pub fn is_identity_word(&self, word: &Word) -> Result<bool, MapError> {
        Ok(self.word_apply(word)? == PAMap::identity(&self.space))
    }

    /// Whether every generator is a total bijection of the space, so that the
    /// common domain of all words is the whole space.
    pub fn is_total(&self) -> bool {
        self.generators.values().all(|f| {
            if self.space.is_circle() {
                f.is_circle_homeo()
            } else {
                f.is_total() && f.range().parts() == [self.space.whole()]
            }
        })
    }

    /// Distinct maps given by words of length `0..=depth`, grouped by the
    /// length of their shortest word, each tagged with that word.
    pub fn word_levels(&self, depth: usize) -> Result<Vec<Vec<(Word, PAMap)>>, MapError> {
        let letters = self.letters();
        let mut seen: HashSet<PAMap> = HashSet::new();
        let id = PAMap::identity(&self.space);
        seen.insert(id.clone());
        let mut levels = vec![vec![(Word::identity(), id)]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (w, m) in levels.last().expect("nonempty") {
                for l in &letters {
                    let composed = m.compose(self.letter_map(l)?)?;
                    if seen.insert(composed.clone()) {
                        next.push((w.concat(&Word(vec![l.clone()])), composed));
                    }
                }
            }
            levels.push(next);
        }
        Ok(levels)
    }

    /// Intersection of the domains of all words of length at most `depth`.
    /// This contains the common domain of every word, so it shrinks (weakly)
    /// as `depth` grows.
    pub fn common_domain(&self, depth: usize) -> Result<IntervalSet, MapError> {
        let mut dom = IntervalSet::from_intervals([self.space.whole()]);
        for level in self.word_levels(depth)? {
            for (_, m) in level {
                dom = dom.intersect(&m.domain());
            }
        }
        Ok(dom)
    }

    /// Semi-decides that `word` is not the identity of the generated group.
    ///
    /// For each depth `d ≤ budget`, candidate points of the depth-`d` common
    /// domain are tested against every word `f` of length at most `d`, looking
    /// for `g(f(t)) ≠ f(t)`. A hit is reported only once it is certified:
    /// either the presentation is total, or no point at all satisfies
    /// `g(f(t)) = f(t)` for every such `f` (so `g` cannot fix the common
    /// domain of a nontrivial group).
    pub fn nontriviality_witness(&self, word: &Word, budget: usize) -> Result<Verdict, MapError> {
        let g = self.word_apply(word)?;
        let total = self.is_total();
        let levels = self.word_levels(budget)?;
        let mut dom = IntervalSet::from_intervals([self.space.whole()]);
        let mut locus = self.seam_closed(g.fixed_points());
        let mut maps: Vec<&(Word, PAMap)> = Vec::new();
        for (depth, level) in levels.iter().enumerate() {
            for entry in level {
                dom = dom.intersect(&entry.1.domain());
                maps.push(entry);
            }
            let Some((point, conjugator)) = self.find_moved(&g, &dom, &maps) else {
                continue;
            };
            if !total {
                for (_, f) in level {
                    let conj = f.invert()?.compose(&g)?.compose(f)?;
                    locus = locus.intersect(&self.seam_closed(conj.fixed_points()));
                }
                if !locus.is_empty() {
                    continue;
                }
            }
            return Ok(Verdict::Witness(Witness {
                point,
                conjugator,
                depth,
            }));
        }
        Ok(Verdict::Unknown)
    }

    fn find_moved(
        &self,
        g: &PAMap,
        dom: &IntervalSet,
        maps: &[&(Word, PAMap)],
    ) -> Option<(Rat, Word)> {
        for t in candidate_points(dom) {
            for (w, f) in maps {
                let Ok(ft) = f.apply(&t) else { continue };
                let Ok(gft) = g.apply(&ft) else { continue };
                if !self.space.equiv(&gft, &ft) {
                    return Some((t, w.clone()));
                }
            }
        }
        None
    }

    /// On a circle, makes `0` and `length` both present or both absent.
    fn seam_closed(&self, set: IntervalSet) -> IntervalSet {
        let m = self.space.length();
        if self.space.is_circle() && (set.contains(&Rat::zero()) || set.contains(m)) {
            set.union(&IntervalSet::from_intervals([
                Interval::point(Rat::zero()),
                Interval::point(m.clone()),
            ]))
        } else {
            set
        }
    }
}

/// Endpoints first, then midpoints, then dyadic and triadic subdivisions.
fn candidate_points(dom: &IntervalSet) -> Vec<Rat> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |x: Rat| {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    };
    for x in dom.endpoints() {
        push(x.clone());
    }
    for p in dom.parts() {
        push(p.midpoint());
    }
    for level in 1..=3u32 {
        for base in [2i64, 3] {
            let parts = base.pow(level);
            for p in dom.parts().iter().filter(|p| !p.is_point()) {
                for j in 1..parts {
                    push(p.lo() + &(p.length() * Rat::new(j, parts)));
                }
            }
        }
    }
    out
}

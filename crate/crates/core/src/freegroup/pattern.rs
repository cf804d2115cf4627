use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FGWord, FreeGroupError};

/// Largest number of assignments an emptiness check will enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// A letter at each of finitely many group elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "PatternJson", into = "PatternJson")]
pub struct Pattern {
    cells: BTreeMap<FGWord, u32>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    word: FGWord,
    letter: u32,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    cells: Vec<CellJson>,
}

impl TryFrom<PatternJson> for Pattern {
    type Error = FreeGroupError;

    fn try_from(raw: PatternJson) -> Result<Pattern, FreeGroupError> {
        Pattern::new(raw.cells.into_iter().map(|c| (c.word, c.letter)))
    }
}

impl From<Pattern> for PatternJson {
    fn from(p: Pattern) -> PatternJson {
        PatternJson {
            cells: p
                .cells
                .into_iter()
                .map(|(word, letter)| CellJson { word, letter })
                .collect(),
        }
    }
}

impl Pattern {
    pub fn new(cells: impl IntoIterator<Item = (FGWord, u32)>) -> Result<Pattern, FreeGroupError> {
        let mut map = BTreeMap::new();
        for (w, l) in cells {
            if map.insert(w.clone(), l).is_some() {
                return Err(FreeGroupError::DuplicateCell(w.to_string()));
            }
        }
        Ok(Pattern { cells: map })
    }

    pub fn cells(&self) -> &BTreeMap<FGWord, u32> {
        &self.cells
    }

    pub fn support(&self) -> impl Iterator<Item = &FGWord> {
        self.cells.keys()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The pattern moved by left multiplication with `g`.
    pub fn translate(&self, g: &FGWord) -> Pattern {
        Pattern {
            cells: self.cells.iter().map(|(w, &l)| (g.mul(w), l)).collect(),
        }
    }
}

/// Forbidden patterns over an alphabet `0..alphabet`. The configurations
/// of interest are those that disagree with every pattern somewhere on its
/// support.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ProblemJson")]
pub struct PatternProblem {
    alphabet: u32,
    patterns: Vec<Pattern>,
}

#[derive(Deserialize)]
struct ProblemJson {
    alphabet: u32,
    patterns: Vec<Pattern>,
}

impl TryFrom<ProblemJson> for PatternProblem {
    type Error = FreeGroupError;

    fn try_from(raw: ProblemJson) -> Result<PatternProblem, FreeGroupError> {
        PatternProblem::new(raw.alphabet, raw.patterns)
    }
}

impl PatternProblem {
    pub fn new(alphabet: u32, patterns: Vec<Pattern>) -> Result<PatternProblem, FreeGroupError> {
        if alphabet == 0 {
            return Err(FreeGroupError::ZeroAlphabet);
        }
        for p in &patterns {
            check_letters(p, alphabet)?;
        }
        Ok(PatternProblem { alphabet, patterns })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Union of all supports.
    pub fn support(&self) -> BTreeSet<FGWord> {
        self.patterns
            .iter()
            .flat_map(|p| p.support().cloned())
            .collect()
    }

    pub fn with_patterns(
        &self,
        extra: impl IntoIterator<Item = Pattern>,
    ) -> Result<PatternProblem, FreeGroupError> {
        let mut patterns = self.patterns.clone();
        patterns.extend(extra);
        PatternProblem::new(self.alphabet, patterns)
    }
}

fn check_letters(p: &Pattern, alphabet: u32) -> Result<(), FreeGroupError> {
    match p.cells.values().find(|&&l| l >= alphabet) {
        Some(&letter) => Err(FreeGroupError::LetterOutOfRange { letter, alphabet }),
        None => Ok(()),
    }
}

/// Whether no configuration avoids every pattern, decided by trying all
/// assignments on the union of the supports: a configuration avoids the
/// patterns iff its restriction there does.
pub fn empty_finite(problem: &PatternProblem, budget: u128) -> Result<bool, FreeGroupError> {
    Ok(find_survivor(problem, budget)?.is_none())
}

/// An assignment on the union of the supports that disagrees with every
/// pattern, if one exists.
fn find_survivor(
    problem: &PatternProblem,
    budget: u128,
) -> Result<Option<Vec<u32>>, FreeGroupError> {
    let support: Vec<FGWord> = problem.support().into_iter().collect();
    let alphabet = problem.alphabet();
    let needed = u128::from(alphabet)
        .checked_pow(support.len().try_into().unwrap_or(u32::MAX))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(FreeGroupError::BudgetExceeded { needed, budget });
    }
    let index: BTreeMap<&FGWord, usize> = support.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let patterns: Vec<Vec<(usize, u32)>> = problem
        .patterns()
        .iter()
        .map(|p| p.cells.iter().map(|(w, &l)| (index[w], l)).collect())
        .collect();
    let mut values = vec![0u32; support.len()];
    loop {
        let agrees = |p: &Vec<(usize, u32)>| p.iter().all(|&(i, l)| values[i] == l);
        if !patterns.iter().any(agrees) {
            return Ok(Some(values));
        }
        // mixed-radix increment
        let mut pos = 0;
        loop {
            if pos == values.len() {
                return Ok(None);
            }
            values[pos] += 1;
            if values[pos] < alphabet {
                break;
            }
            values[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiVerdict {
    /// The first `k` patterns already leave no configuration.
    EmptyAtStage(usize),
    Unknown,
}

/// Semi-decides emptiness for an enumerated pattern family by deciding
/// growing prefixes. Gives up with `Unknown` after `stages` patterns, when
/// the enumeration ends, or when a prefix exceeds the assignment budget.
pub fn empty_semi(
    alphabet: u32,
    patterns: impl IntoIterator<Item = Pattern>,
    stages: usize,
    budget: u128,
) -> Result<SemiVerdict, FreeGroupError> {
    let mut prefix = PatternProblem::new(alphabet, Vec::new())?;
    for (k, p) in patterns.into_iter().take(stages).enumerate() {
        prefix = prefix.with_patterns([p])?;
        match empty_finite(&prefix, budget) {
            Ok(true) => return Ok(SemiVerdict::EmptyAtStage(k + 1)),
            Ok(false) => {}
            Err(FreeGroupError::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(SemiVerdict::Unknown)
}

/// Whether every configuration avoiding the problem's patterns also avoids
/// `w`: true iff adding every pattern on `supp(w)` other than `w` itself
/// leaves nothing.
pub fn in_language(
    w: &Pattern,
    problem: &PatternProblem,
    budget: u128,
) -> Result<bool, FreeGroupError> {
    check_letters(w, problem.alphabet())?;
    let cells: Vec<&FGWord> = w.support().collect();
    let alphabet = problem.alphabet();
    let count = u128::from(alphabet)
        .checked_pow(cells.len().try_into().unwrap_or(u32::MAX))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(FreeGroupError::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    let mut others = Vec::new();
    let mut values = vec![0u32; cells.len()];
    'assignments: loop {
        let other = Pattern {
            cells: cells
                .iter()
                .map(|w| (*w).clone())
                .zip(values.iter().copied())
                .collect(),
        };
        if &other != w {
            others.push(other);
        }
        let mut pos = 0;
        loop {
            if pos == values.len() {
                break 'assignments;
            }
            values[pos] += 1;
            if values[pos] < alphabet {
                break;
            }
            values[pos] = 0;
            pos += 1;
        }
    }
    empty_finite(&problem.with_patterns(others)?, budget)
}

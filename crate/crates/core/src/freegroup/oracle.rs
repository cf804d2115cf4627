use std::collections::BTreeMap;

use crate::pamaps::{Letter, PAMap, Presentation, Word};

use super::{FGWord, FreeGroupError};

/// A canonical form: two words name the same group element iff their keys
/// are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupKey {
    Word(FGWord),
    Exponents(Vec<i64>),
    Permutation(Vec<usize>),
    Trivial,
    Map(PAMap),
}

/// Solves the word problem of a group generated by `x1..x_rank`.
pub trait WordOracle {
    fn rank(&self) -> usize;

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError>;

    fn equal(&self, a: &FGWord, b: &FGWord) -> Result<bool, FreeGroupError> {
        Ok(self.key(a)? == self.key(b)?)
    }

    fn is_identity(&self, word: &FGWord) -> Result<bool, FreeGroupError> {
        self.equal(word, &FGWord::identity())
    }
}

fn check_rank(word: &FGWord, rank: usize) -> Result<(), FreeGroupError> {
    let used = word.rank();
    if used as usize > rank {
        return Err(FreeGroupError::GeneratorOutOfRange { index: used, rank });
    }
    Ok(())
}

/// The free group: reduced words are already canonical.
#[derive(Clone, Copy, Debug)]
pub struct FreeOracle {
    pub rank: usize,
}

impl WordOracle for FreeOracle {
    fn rank(&self) -> usize {
        self.rank
    }

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError> {
        check_rank(word, self.rank)?;
        Ok(GroupKey::Word(word.clone()))
    }
}

/// `Z^rank`: words are compared by exponent sums.
#[derive(Clone, Copy, Debug)]
pub struct AbelianOracle {
    pub rank: usize,
}

impl WordOracle for AbelianOracle {
    fn rank(&self) -> usize {
        self.rank
    }

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError> {
        check_rank(word, self.rank)?;
        let mut exps = vec![0i64; self.rank];
        for &l in word.letters() {
            exps[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        Ok(GroupKey::Exponents(exps))
    }
}

/// The trivial group.
#[derive(Clone, Copy, Debug)]
pub struct TrivialOracle {
    pub rank: usize,
}

impl WordOracle for TrivialOracle {
    fn rank(&self) -> usize {
        self.rank
    }

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError> {
        check_rank(word, self.rank)?;
        Ok(GroupKey::Trivial)
    }
}

/// A finite group given by one permutation of `0..degree` per generator.
/// A word acts on points by applying its letters from right to left.
#[derive(Clone, Debug)]
pub struct PermOracle {
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl PermOracle {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<PermOracle, FreeGroupError> {
        let degree = perms.first().map_or(0, Vec::len);
        let mut inverses = Vec::new();
        for p in &perms {
            let mut inv = vec![usize::MAX; degree];
            if p.len() != degree {
                return Err(FreeGroupError::BadPermutation(format!(
                    "{p:?} has the wrong degree"
                )));
            }
            for (i, &v) in p.iter().enumerate() {
                if v >= degree || inv[v] != usize::MAX {
                    return Err(FreeGroupError::BadPermutation(format!("{p:?}")));
                }
                inv[v] = i;
            }
            inverses.push(inv);
        }
        Ok(PermOracle { perms, inverses })
    }

    /// `Z/order` generated by a single rotation.
    pub fn cyclic(order: usize) -> PermOracle {
        PermOracle::new(vec![(0..order).map(|i| (i + 1) % order).collect()])
            .expect("rotation is a permutation")
    }
}

impl WordOracle for PermOracle {
    fn rank(&self) -> usize {
        self.perms.len()
    }

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError> {
        check_rank(word, self.rank())?;
        let degree = self.perms.first().map_or(0, Vec::len);
        let mut image: Vec<usize> = (0..degree).collect();
        for &l in word.letters().iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            let p = if l > 0 {
                &self.perms[i]
            } else {
                &self.inverses[i]
            };
            for v in &mut image {
                *v = p[*v];
            }
        }
        Ok(GroupKey::Permutation(image))
    }
}

/// A group of piecewise affine maps; `x_i` is the `i`-th generator in name
/// order.
#[derive(Clone, Debug)]
pub struct PaOracle {
    presentation: Presentation,
    names: Vec<String>,
}

impl PaOracle {
    pub fn new(presentation: Presentation) -> PaOracle {
        let names = presentation.names().iter().map(|s| s.to_string()).collect();
        PaOracle {
            presentation,
            names,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The same element as a word in generator names.
    pub fn to_named(&self, word: &FGWord) -> Word {
        Word::from_letters(
            word.letters()
                .iter()
                .map(|&l| Letter::new(self.names[l.unsigned_abs() as usize - 1].clone(), l < 0))
                .collect(),
        )
    }
}

impl WordOracle for PaOracle {
    fn rank(&self) -> usize {
        self.names.len()
    }

    fn key(&self, word: &FGWord) -> Result<GroupKey, FreeGroupError> {
        check_rank(word, self.rank())?;
        Ok(GroupKey::Map(
            self.presentation.word_apply(&self.to_named(word))?,
        ))
    }
}

/// Reduced words of length at most `radius`, in shortlex order, with their
/// keys.
pub fn ball(
    oracle: &dyn WordOracle,
    radius: usize,
) -> Result<Vec<(FGWord, GroupKey)>, FreeGroupError> {
    let rank = i32::try_from(oracle.rank()).expect("rank fits");
    let letters: Vec<i32> = (1..=rank).flat_map(|g| [g, -g]).collect();
    let mut words = vec![FGWord::identity()];
    let mut frontier = vec![FGWord::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.letters().last() == Some(&-l) {
                    continue;
                }
                next.push(FGWord::from_letters(w.letters().iter().copied().chain([l])));
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.sort();
    let mut memo: BTreeMap<FGWord, GroupKey> = BTreeMap::new();
    for w in words {
        let k = oracle.key(&w)?;
        memo.insert(w, k);
    }
    Ok(memo.into_iter().collect())
}

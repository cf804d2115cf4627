use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FreeGroupError;

/// A freely reduced word over `x1, x2, …` and their inverses `X1, X2, …`.
/// The identity is the empty word.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct FGWord(Vec<i32>);

impl FGWord {
    pub fn identity() -> FGWord {
        FGWord(Vec::new())
    }

    /// The generator `x_index` (1-based), inverted when `inverse`.
    pub fn generator(index: u32, inverse: bool) -> FGWord {
        let g = i32::try_from(index).expect("generator index fits");
        assert!(g > 0, "generators are numbered from 1");
        FGWord(vec![if inverse { -g } else { g }])
    }

    /// Reduces a sequence of signed generator indices.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> FGWord {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "generators are numbered from 1");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FGWord(out)
    }

    /// Signed generator indices: `i` for `xi`, `-i` for `Xi`.
    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FGWord) -> FGWord {
        FGWord::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> FGWord {
        FGWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Largest generator index used.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Length first, then letters, so that balls enumerate outwards.
impl Ord for FGWord {
    fn cmp(&self, other: &FGWord) -> std::cmp::Ordering {
        let key = |w: &FGWord| {
            w.0.iter()
                .map(|&l| (l.unsigned_abs(), l < 0))
                .collect::<Vec<_>>()
        };
        self.len()
            .cmp(&other.len())
            .then_with(|| key(self).cmp(&key(other)))
    }
}

impl PartialOrd for FGWord {
    fn partial_cmp(&self, other: &FGWord) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            let c = if l > 0 { 'x' } else { 'X' };
            write!(f, "{c}{}", l.unsigned_abs())?;
        }
        Ok(())
    }
}

impl FromStr for FGWord {
    type Err = FreeGroupError;

    fn from_str(text: &str) -> Result<FGWord, FreeGroupError> {
        let bad = || FreeGroupError::BadWord(text.to_string());
        let mut letters = Vec::new();
        let mut chars = text.trim().chars().peekable();
        while let Some(c) = chars.next() {
            let sign = match c {
                'x' => 1,
                'X' => -1,
                _ => return Err(bad()),
            };
            let mut digits = String::new();
            while let Some(d) = chars.next_if(char::is_ascii_digit) {
                digits.push(d);
            }
            let index: i32 = digits.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            letters.push(sign * index);
        }
        Ok(FGWord::from_letters(letters))
    }
}

impl Serialize for FGWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FGWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<FGWord, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

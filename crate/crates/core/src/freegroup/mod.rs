//! Pattern problems on free groups: emptiness of the configurations that
//! avoid a list of forbidden patterns, language membership, and the
//! forbidden-pattern families of group-derived subshifts.

mod families;
mod oracle;
mod pattern;
mod word;

pub use families::{perg_forbidden, simple_sft_check, xleq1_forbidden, SftVerdict};
pub use oracle::{
    ball, AbelianOracle, FreeOracle, GroupKey, PaOracle, PermOracle, TrivialOracle, WordOracle,
};
pub use pattern::{
    empty_finite, empty_semi, in_language, Pattern, PatternProblem, SemiVerdict, DEFAULT_BUDGET,
};
pub use word::FGWord;

use crate::pamaps::MapError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeGroupError {
    #[error("cannot parse free group word {0:?}")]
    BadWord(String),
    #[error("generator x{index} exceeds rank {rank}")]
    GeneratorOutOfRange { index: u32, rank: usize },
    #[error("alphabet must have at least one letter")]
    ZeroAlphabet,
    #[error("letter {letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
    #[error("cell {0} assigned twice")]
    DuplicateCell(String),
    #[error("{needed} assignments exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("the constraint word is trivial in the group")]
    TrivialConstraint,
    #[error(transparent)]
    Map(#[from] MapError),
}

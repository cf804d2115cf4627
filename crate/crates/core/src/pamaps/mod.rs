//! Exact piecewise affine maps on an interval or a circle, and the groups
//! they generate.

mod group;
mod map;
pub mod presets;

pub use group::{Letter, Presentation, Verdict, Witness, Word};
pub use map::{AffinePiece, PAMap, Space};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("{0} is outside the domain")]
    OutOfDomain(Rat),
    #[error("maps live on different spaces")]
    SpaceMismatch,
    #[error("map is not injective")]
    NotInjective,
    #[error("cannot invert a piece of slope zero")]
    ZeroSlope,
    #[error("pieces with different formulas overlap near {at}")]
    Overlap { at: Rat },
    #[error("values disagree at {at}")]
    Conflict { at: Rat },
    #[error("piece {0} leaves the space")]
    OutOfSpace(String),
    #[error("space length must be positive, got {0}")]
    BadSpace(Rat),
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("unknown generator in {0:?}")]
    UnknownGenerator(String),
    #[error("malformed word {0:?}")]
    BadWord(String),
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("generator {0} is not a bijection onto its image")]
    NotBijective(String),
}

//! Semantic checks on generated tile sets.

mod graph;
mod mutation;
mod patch;
mod scan;
mod witness;

pub use graph::{nonempty_rows, periodic_rows, PeriodicRow, TransitionGraph};
pub use mutation::{mutants, mutation_suite, Mutant, Mutation, MutationReport};
pub use patch::{default_orbit_start, orbit_patch, patch_check, Patch};
pub use scan::{
    oracle_expects, oracle_periodic_points, periodic_soundness, row_relation,
    stacked_periodic_scan, verify_tiles, OraclePoints, PeriodicFind, RowRelation, RowWords,
    SoundnessReport, VerifyReport, Violation, MAX_ROW_LEN,
};
pub use witness::{map_witness_row, witness_row};

use crate::karigen::TileError;
use crate::pamaps::MapError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("row period must be at least 1")]
    ZeroPeriod,
    #[error("row period {0} exceeds the supported maximum")]
    RowTooLong(usize),
    #[error("no valid row for input {0}")]
    WitnessFailure(String),
    #[error("words {0} and {1} name the same group element but carry different rows")]
    InconsistentPatch(String, String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Tile(#[from] TileError),
}

//! Compilation of affine and piecewise affine maps into Wang tile sets over
//! `Z`, and of generator families into tile sets over `Z × G`.

mod circuit;
mod family;
mod label;
mod tiles;

pub use circuit::{affine_witness, Circuit, WitnessRow};
pub use family::{
    family_circuit, family_tiles, pamap_circuit, pamap_tiles, GroupTileSet, TileOptions,
};
pub use label::HLabel;
pub use tiles::{
    affine_tiles, carry_set, compose_tiles, product_tiles, prune, union_tiles, ZTile, ZTileSet,
    DEFAULT_OUT, TILE_LIMIT,
};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TileError {
    #[error("no tile satisfies the relation")]
    EmptyTileSet,
    #[error("slope must be nonzero")]
    ZeroSlope,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("digit out of range in {0}")]
    DigitOutOfRange(String),
    #[error("product of no tile sets")]
    EmptyProduct,
    #[error("map is not a total homeomorphism of its space")]
    NotHomeo,
    #[error("construction would materialize {0} tiles")]
    TooLarge(u128),
    #[error("tile generation needs an integer space length, got {0}")]
    NonIntegerLength(Rat),
}

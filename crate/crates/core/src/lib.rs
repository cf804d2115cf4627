//! Exact compilation of piecewise affine maps into Wang tiles, with the
//! verification and free-group tooling around it.

pub mod encoding;
pub mod freegroup;
pub mod interval;
pub mod karigen;
pub mod pamaps;
pub mod rat;
pub mod verify;

pub use interval::{Interval, IntervalSet};
pub use rat::Rat;

/// The guide's listings, run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/tiles.md")]
    mod tiles {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/free-groups.md")]
    mod free_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

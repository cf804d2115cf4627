//! Balanced digit encodings of rationals and their window averages.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// Digits at positions `offset, offset + 1, …`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BitWindow {
    pub offset: i64,
    pub bits: Vec<u8>,
}

impl BitWindow {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// `⌊(n+1)y⌋ − ⌊ny⌋`. Panics if the digit does not fit in a `u8`.
pub fn digit(y: &Rat, n: i64) -> u8 {
    let hi = (y * Rat::from_int(n + 1)).floor_int();
    let lo = (y * Rat::from_int(n)).floor_int();
    (hi - lo)
        .to_u8()
        .expect("digit of a nonnegative rational below 256")
}

/// The balanced encoding of `y ≥ 0` on positions `from..=to`.
pub fn disc(y: &Rat, from: i64, to: i64) -> BitWindow {
    assert!(!y.is_negative(), "disc of a negative value");
    BitWindow {
        offset: from,
        bits: (from..=to).map(|n| digit(y, n)).collect(),
    }
}

/// Average digit over the window: a finite estimate of the density.
pub fn cont_window(window: &BitWindow) -> Rat {
    assert!(!window.is_empty(), "empty window");
    let sum: i64 = window.bits.iter().map(|&b| i64::from(b)).sum();
    Rat::new(sum, window.bits.len() as i64)
}

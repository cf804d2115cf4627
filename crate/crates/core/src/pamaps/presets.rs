//! Built-in presentations.

use std::collections::BTreeMap;

use crate::interval::Interval;
use crate::rat::Rat;

use super::{AffinePiece, PAMap, Presentation, Space};

pub const PRESET_NAMES: [&str; 4] = ["z-kari", "psl2z", "thompson-t", "thompson-v"];

pub fn by_name(name: &str) -> Option<Presentation> {
    match name {
        "z-kari" => Some(z_kari()),
        "psl2z" => Some(psl2z()),
        "thompson-t" => Some(thompson_t()),
        "thompson-v" => Some(thompson_v()),
        _ => None,
    }
}

fn q(s: &str) -> Rat {
    s.parse().expect("preset literal")
}

/// Pieces as `(lo, hi, slope, offset)` literals.
fn build(space: &Space, pieces: &[(&str, &str, &str, &str)]) -> PAMap {
    let pieces = pieces
        .iter()
        .map(|&(lo, hi, a, b)| {
            AffinePiece::new(
                Interval::new(q(lo), q(hi)).expect("preset domain"),
                q(a),
                q(b),
            )
        })
        .collect();
    PAMap::new(space.clone(), pieces).expect("preset map")
}

fn presentation(generators: Vec<(&str, PAMap)>) -> Presentation {
    let map: BTreeMap<String, PAMap> = generators
        .into_iter()
        .map(|(n, f)| (n.to_string(), f))
        .collect();
    Presentation::new(map).expect("preset presentation")
}

/// Kari's circle map: `(4x+1)/3` on `[0,1/2]`, `(2x-1)/3` on `[1/2,1]`.
pub fn kari_map() -> PAMap {
    build(
        &Space::unit_circle(),
        &[("0", "1/2", "4/3", "1/3"), ("1/2", "1", "2/3", "-1/3")],
    )
}

/// `Z` generated by Kari's map `f`.
pub fn z_kari() -> Presentation {
    presentation(vec![("f", kari_map())])
}

fn psl2z_space() -> Space {
    Space::new(Rat::from_int(2), true).expect("positive length")
}

/// `PSL₂(Z)` on the circle `[0,2]`, generated by `d` of order 3 and `e` of
/// order 2.
///
/// `d` is Thompson's `c` rescaled to `[0,2]`:
/// `x/2 + 3/2` on `[0,1]`, `2x - 2` on `[1,3/2]`, `x - 1/2` on `[3/2,2]`.
/// `e` swaps the two halves: `x + 1` on `[0,1]`, `x - 1` on `[1,2]`.
/// The rescaled Thompson `a` (see [`psl2z_rescaled_a`]) equals the word `eD`.
pub fn psl2z() -> Presentation {
    let space = psl2z_space();
    let d = build(
        &space,
        &[
            ("0", "1", "1/2", "3/2"),
            ("1", "3/2", "2", "-2"),
            ("3/2", "2", "1", "-1/2"),
        ],
    );
    let e = build(&space, &[("0", "1", "1", "1"), ("1", "2", "1", "-1")]);
    presentation(vec![("d", d), ("e", e)])
}

/// Thompson's `a` rescaled to `[0,2]`:
/// `x/2` on `[0,1]`, `x - 1/2` on `[1,3/2]`, `2x - 2` on `[3/2,2]`.
/// It has infinite order.
pub fn psl2z_rescaled_a() -> PAMap {
    build(
        &psl2z_space(),
        &[
            ("0", "1", "1/2", "0"),
            ("1", "3/2", "1", "-1/2"),
            ("3/2", "2", "2", "-2"),
        ],
    )
}

/// Thompson's group `T` on the unit circle.
pub fn thompson_t() -> Presentation {
    let space = Space::unit_circle();
    // a: x/2 | x - 1/4 | 2x - 1
    let a = build(
        &space,
        &[
            ("0", "1/2", "1/2", "0"),
            ("1/2", "3/4", "1", "-1/4"),
            ("3/4", "1", "2", "-1"),
        ],
    );
    // b: x | x/2 + 1/4 | x - 1/8 | 2x - 1
    let b = build(
        &space,
        &[
            ("0", "1/2", "1", "0"),
            ("1/2", "3/4", "1/2", "1/4"),
            ("3/4", "7/8", "1", "-1/8"),
            ("7/8", "1", "2", "-1"),
        ],
    );
    // c: x/2 + 3/4 | 2x - 1 | x - 1/4
    let c = build(
        &space,
        &[
            ("0", "1/2", "1/2", "3/4"),
            ("1/2", "3/4", "2", "-1"),
            ("3/4", "1", "1", "-1/4"),
        ],
    );
    presentation(vec![("a", a), ("b", b), ("c", c)])
}

/// Thompson's group `V` as partial maps of `[0,1]` that preserve the middle
/// thirds Cantor set.
pub fn thompson_v() -> Presentation {
    let space = Space::new(Rat::one(), false).expect("positive length");
    // a: x/3 | x - 4/9 | 3x - 2
    let a = build(
        &space,
        &[
            ("0", "1/3", "1/3", "0"),
            ("2/3", "7/9", "1", "-4/9"),
            ("8/9", "1", "3", "-2"),
        ],
    );
    // b: x | x/3 + 4/9 | x - 4/27 | 3x - 2
    let b = build(
        &space,
        &[
            ("0", "1/3", "1", "0"),
            ("2/3", "7/9", "1/3", "4/9"),
            ("8/9", "25/27", "1", "-4/27"),
            ("26/27", "1", "3", "-2"),
        ],
    );
    // c: x/3 + 8/9 | 3x - 2 | x - 2/9
    let c = build(
        &space,
        &[
            ("0", "1/3", "1/3", "8/9"),
            ("2/3", "7/9", "3", "-2"),
            ("8/9", "1", "1", "-2/9"),
        ],
    );
    // pi0: x/3 + 2/3 | 3x - 2 | x
    let pi0 = build(
        &space,
        &[
            ("0", "1/3", "1/3", "2/3"),
            ("2/3", "7/9", "3", "-2"),
            ("8/9", "1", "1", "0"),
        ],
    );
    presentation(vec![("a", a), ("b", b), ("c", c), ("pi0", pi0)])
}

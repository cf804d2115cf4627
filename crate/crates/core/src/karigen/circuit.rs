use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::rat::Rat;

use super::tiles::{affine_tiles, compose_tiles, product_tiles, prune, union_tiles, DEFAULT_OUT};
use super::{HLabel, TileError, ZTile, ZTileSet};

/// A recipe for a tile set, kept around so that witness rows can be produced
/// for any input value alongside the compiled tiles.
#[derive(Clone, Debug, PartialEq)]
pub enum Circuit {
    Affine {
        slope: Rat,
        offset: Rat,
        in_max: u8,
        out_max: u8,
    },
    /// Tagged disjoint union.
    Union(Box<Circuit>, Box<Circuit>),
    /// The first circuit feeds the second.
    Compose(Box<Circuit>, Box<Circuit>),
    /// Shared input, one named output per component.
    Product(Vec<(String, Circuit)>),
    Prune(Box<Circuit>),
}

/// A window of a row of tiles realizing one input value.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessRow {
    /// The value encoded by each output.
    pub outputs: BTreeMap<String, Rat>,
    /// Tiles at positions `-window..=window`.
    pub tiles: Vec<ZTile>,
}

impl WitnessRow {
    /// The value of the only output.
    pub fn output(&self) -> &Rat {
        self.outputs.values().next().expect("row has an output")
    }
}

impl Circuit {
    pub fn affine(slope: Rat, offset: Rat, in_max: u8, out_max: u8) -> Circuit {
        Circuit::Affine {
            slope,
            offset,
            in_max,
            out_max,
        }
    }

    /// Left-nested union of the parts.
    pub fn union_of(parts: Vec<Circuit>) -> Option<Circuit> {
        parts
            .into_iter()
            .reduce(|acc, c| Circuit::Union(Box::new(acc), Box::new(c)))
    }

    /// `self` followed by `next`, pruned.
    pub fn then(self, next: Circuit) -> Circuit {
        Circuit::Prune(Box::new(Circuit::Compose(Box::new(self), Box::new(next))))
    }

    pub fn compile(&self) -> Result<ZTileSet, TileError> {
        match self {
            Circuit::Affine {
                slope,
                offset,
                in_max,
                out_max,
            } => affine_tiles(slope, offset, *in_max, *out_max),
            Circuit::Union(a, b) => union_tiles(&a.compile()?, &b.compile()?),
            Circuit::Compose(a, b) => compose_tiles(&a.compile()?, &b.compile()?),
            Circuit::Product(parts) => {
                let sets = parts
                    .iter()
                    .map(|(n, c)| Ok((n.clone(), c.compile()?)))
                    .collect::<Result<Vec<_>, TileError>>()?;
                product_tiles(&sets)
            }
            Circuit::Prune(c) => Ok(prune(&c.compile()?)),
        }
    }

    /// Every row window the compiled set admits for input `x` along the
    /// construction: one per way the value can be routed through unions.
    pub fn witness(&self, x: &Rat, window: i64) -> Vec<WitnessRow> {
        match self {
            Circuit::Affine {
                slope,
                offset,
                in_max,
                out_max,
            } => affine_witness(slope, offset, *in_max, *out_max, x, window)
                .into_iter()
                .collect(),
            Circuit::Union(a, b) => {
                let left = a.witness(x, window).into_iter().map(|r| retag(r, "L"));
                let right = b.witness(x, window).into_iter().map(|r| retag(r, "R"));
                left.chain(right).collect()
            }
            Circuit::Compose(a, b) => {
                let mut out = Vec::new();
                for first in a.witness(x, window) {
                    for second in b.witness(first.output(), window) {
                        let tiles = first
                            .tiles
                            .iter()
                            .zip(&second.tiles)
                            .map(|(s, t)| ZTile {
                                top: s.top,
                                bottom: t.bottom.clone(),
                                left: HLabel::pair(s.left.clone(), t.left.clone()),
                                right: HLabel::pair(s.right.clone(), t.right.clone()),
                            })
                            .collect();
                        out.push(WitnessRow {
                            outputs: second.outputs.clone(),
                            tiles,
                        });
                    }
                }
                out
            }
            Circuit::Product(parts) => {
                let mut partial: Vec<Vec<(&str, WitnessRow)>> = vec![Vec::new()];
                for (name, c) in parts {
                    let options = c.witness(x, window);
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            options.iter().map(move |o| {
                                let mut p = prefix.clone();
                                p.push((name.as_str(), o.clone()));
                                p
                            })
                        })
                        .collect();
                }
                partial
                    .into_iter()
                    .map(|combo| product_row(&combo))
                    .collect()
            }
            Circuit::Prune(c) => c.witness(x, window),
        }
    }
}

fn retag(row: WitnessRow, tag: &str) -> WitnessRow {
    let tiles = row
        .tiles
        .into_iter()
        .map(|t| ZTile {
            top: t.top,
            bottom: t.bottom,
            left: HLabel::tagged(tag, t.left),
            right: HLabel::tagged(tag, t.right),
        })
        .collect();
    WitnessRow {
        outputs: row.outputs,
        tiles,
    }
}

fn product_row(combo: &[(&str, WitnessRow)]) -> WitnessRow {
    let len = combo.first().map_or(0, |(_, r)| r.tiles.len());
    let mut outputs = BTreeMap::new();
    for (name, row) in combo {
        outputs.insert(name.to_string(), row.output().clone());
    }
    let tiles = (0..len)
        .map(|i| ZTile {
            top: combo[0].1.tiles[i].top,
            bottom: combo
                .iter()
                .map(|(n, r)| (n.to_string(), r.tiles[i].out()))
                .collect(),
            left: HLabel::Tuple(combo.iter().map(|(_, r)| r.tiles[i].left.clone()).collect()),
            right: HLabel::Tuple(
                combo
                    .iter()
                    .map(|(_, r)| r.tiles[i].right.clone())
                    .collect(),
            ),
        })
        .collect();
    WitnessRow { outputs, tiles }
}

/// `⌊n·v⌋` for `n` in `from..=to`.
fn floors(v: &Rat, from: i64, to: i64) -> Vec<BigInt> {
    (from..=to)
        .map(|n| (v.numer() * n).div_floor(v.denom()))
        .collect()
}

/// The row encoding `x` on top and `slope·x + offset` at the bottom, or
/// `None` when either value is outside its digit range.
pub fn affine_witness(
    slope: &Rat,
    offset: &Rat,
    in_max: u8,
    out_max: u8,
    x: &Rat,
    window: i64,
) -> Option<WitnessRow> {
    let y = slope * x + offset;
    let in_range = |v: &Rat, max: u8| !v.is_negative() && v <= &Rat::from_int(max.into());
    if !in_range(x, in_max) || !in_range(&y, out_max) {
        return None;
    }
    let (fx, fy) = (
        floors(x, -window, window + 1),
        floors(&y, -window, window + 1),
    );
    // carry a⌊nx⌋ + nb − ⌊ny⌋ over the common denominator of a and b
    let (qa, qb) = (slope.denom(), offset.denom());
    let den = qa * qb;
    let (pa, pb) = (slope.numer() * qb, offset.numer() * qa);
    let carry = |i: usize| {
        let n = i as i64 - window;
        Rat::from_big(&pa * &fx[i] + &pb * n - &den * &fy[i], den.clone())
    };
    let digit = |f: &[BigInt], i: usize| {
        (&f[i + 1] - &f[i])
            .to_u8()
            .expect("digit of a value in range")
    };
    let len = (2 * window + 1) as usize;
    let mut tiles = Vec::with_capacity(len);
    let mut left = carry(0);
    for i in 0..len {
        let right = carry(i + 1);
        tiles.push(ZTile {
            top: digit(&fx, i),
            bottom: BTreeMap::from([(DEFAULT_OUT.to_string(), digit(&fy, i))]),
            left: HLabel::Atom(left),
            right: HLabel::Atom(right.clone()),
        });
        left = right;
    }
    Some(WitnessRow {
        outputs: BTreeMap::from([(DEFAULT_OUT.to_string(), y)]),
        tiles,
    })
}

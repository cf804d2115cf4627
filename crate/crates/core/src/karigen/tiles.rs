use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::rat::{lcm_denominators, Rat};

use super::{HLabel, TileError};

/// Name of the single output of a freshly generated affine tile set.
pub const DEFAULT_OUT: &str = "out";

/// A Wang tile over `Z`: an input digit on top, one output digit per named
/// output at the bottom, and horizontal labels on the left and right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ZTile {
    pub top: u8,
    pub bottom: BTreeMap<String, u8>,
    pub left: HLabel,
    pub right: HLabel,
}

impl ZTile {
    /// The output digit of a single-output tile.
    pub fn out(&self) -> u8 {
        *self.bottom.values().next().expect("tile has an output")
    }
}

/// A finite set of [`ZTile`]s with its digit alphabets.
///
/// Tiles are kept sorted and free of duplicates, so equal sets serialize to
/// identical JSON.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTileSet")]
pub struct ZTileSet {
    in_max: u8,
    outs: BTreeMap<String, u8>,
    tiles: Vec<ZTile>,
}

#[derive(Deserialize)]
struct RawTileSet {
    in_max: u8,
    outs: BTreeMap<String, u8>,
    tiles: Vec<ZTile>,
}

impl TryFrom<RawTileSet> for ZTileSet {
    type Error = TileError;
    fn try_from(raw: RawTileSet) -> Result<ZTileSet, TileError> {
        ZTileSet::new(raw.in_max, raw.outs, raw.tiles)
    }
}

impl ZTileSet {
    pub fn new(
        in_max: u8,
        outs: BTreeMap<String, u8>,
        mut tiles: Vec<ZTile>,
    ) -> Result<ZTileSet, TileError> {
        if outs.is_empty() {
            return Err(TileError::AlphabetMismatch("no outputs declared".into()));
        }
        for t in &tiles {
            if t.top > in_max {
                return Err(TileError::DigitOutOfRange(format!("{t:?}")));
            }
            if t.bottom.len() != outs.len() {
                return Err(TileError::AlphabetMismatch(format!("outputs of {t:?}")));
            }
            for (name, bit) in &t.bottom {
                match outs.get(name) {
                    Some(max) if bit <= max => {}
                    Some(_) => return Err(TileError::DigitOutOfRange(format!("{t:?}"))),
                    None => return Err(TileError::AlphabetMismatch(format!("output {name}"))),
                }
            }
        }
        tiles.sort();
        tiles.dedup();
        Ok(ZTileSet {
            in_max,
            outs,
            tiles,
        })
    }

    pub fn empty(in_max: u8, outs: BTreeMap<String, u8>) -> ZTileSet {
        ZTileSet {
            in_max,
            outs,
            tiles: Vec::new(),
        }
    }

    pub fn in_max(&self) -> u8 {
        self.in_max
    }

    pub fn outs(&self) -> &BTreeMap<String, u8> {
        &self.outs
    }

    pub fn tiles(&self) -> &[ZTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, tile: &ZTile) -> bool {
        self.tiles.binary_search(tile).is_ok()
    }

    /// The maximum digit of the only output.
    pub fn single_out(&self) -> Result<(&str, u8), TileError> {
        match self.outs.iter().next() {
            Some((name, max)) if self.outs.len() == 1 => Ok((name, *max)),
            _ => Err(TileError::AlphabetMismatch(
                "expected a single-output tile set".into(),
            )),
        }
    }

    /// Keeps only the named output; tiles that become equal are merged.
    pub fn project(&self, out: &str) -> Result<ZTileSet, TileError> {
        let max = *self
            .outs
            .get(out)
            .ok_or_else(|| TileError::AlphabetMismatch(format!("no output {out}")))?;
        let tiles = self
            .tiles
            .iter()
            .map(|t| ZTile {
                top: t.top,
                bottom: BTreeMap::from([(out.to_string(), t.bottom[out])]),
                left: t.left.clone(),
                right: t.right.clone(),
            })
            .collect();
        ZTileSet::new(self.in_max, BTreeMap::from([(out.to_string(), max)]), tiles)
    }

    /// Renames the only output.
    pub fn with_out_name(&self, name: &str) -> Result<ZTileSet, TileError> {
        let (old, max) = self.single_out()?;
        let old = old.to_string();
        let tiles = self
            .tiles
            .iter()
            .map(|t| ZTile {
                top: t.top,
                bottom: BTreeMap::from([(name.to_string(), t.bottom[&old])]),
                left: t.left.clone(),
                right: t.right.clone(),
            })
            .collect();
        ZTileSet::new(
            self.in_max,
            BTreeMap::from([(name.to_string(), max)]),
            tiles,
        )
    }

    /// Replaces one tile. Used to build corrupted copies for sensitivity tests.
    pub fn with_tile_replaced(&self, index: usize, tile: ZTile) -> Result<ZTileSet, TileError> {
        let mut tiles = self.tiles.clone();
        tiles[index] = tile;
        ZTileSet::new(self.in_max, self.outs.clone(), tiles)
    }

    /// Adds one tile.
    pub fn with_tile_added(&self, tile: ZTile) -> Result<ZTileSet, TileError> {
        let mut tiles = self.tiles.clone();
        tiles.push(tile);
        ZTileSet::new(self.in_max, self.outs.clone(), tiles)
    }

    /// Distinct horizontal labels, sorted.
    pub fn labels(&self) -> Vec<HLabel> {
        let mut out: Vec<HLabel> = self
            .tiles
            .iter()
            .flat_map(|t| [t.left.clone(), t.right.clone()])
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Possible carries of the row encoding `x ↦ slope·x + offset`.
///
/// Along a row the carry is `frac(n·y) − slope·frac(n·x)` with `y` the image
/// of `x`. It is a multiple of `1/D`, `D` the common denominator of slope and
/// offset, and lies in `(−slope, 1)` for positive slopes and in
/// `[0, 1 − slope)` otherwise (the carry at `n = 0` is exactly `0`).
pub fn carry_set(slope: &Rat, offset: &Rat) -> Vec<Rat> {
    let d = lcm_denominators([slope, offset]);
    let scale = Rat::from(d.clone());
    let (lo, hi): (BigInt, BigInt) = if slope.is_positive() {
        // k/D > −slope and k/D < 1
        ((-slope * &scale).floor_int() + 1, d.clone() - 1)
    } else {
        // 0 ≤ k/D < 1 − slope
        (
            BigInt::from(0),
            ((Rat::one() - slope) * &scale).ceil_int() - 1,
        )
    };
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        out.push(Rat::from_big(k.clone(), d.clone()));
        k += 1;
    }
    out
}

/// Tiles `(top, bottom, c, c')` with `bottom = slope·top + offset + c − c'`,
/// carries from [`carry_set`], left label `c`, right label `c'`.
pub fn affine_tiles(
    slope: &Rat,
    offset: &Rat,
    in_max: u8,
    out_max: u8,
) -> Result<ZTileSet, TileError> {
    if slope.is_zero() {
        return Err(TileError::ZeroSlope);
    }
    let carries = carry_set(slope, offset);
    let mut tiles = Vec::new();
    for top in 0..=in_max {
        let base = slope * Rat::from_int(top.into()) + offset;
        for c in &carries {
            for c2 in &carries {
                let value = &base + c - c2;
                let Some(bottom) = value.to_i64() else {
                    continue;
                };
                if bottom < 0 || bottom > out_max.into() {
                    continue;
                }
                tiles.push(ZTile {
                    top,
                    bottom: BTreeMap::from([(DEFAULT_OUT.to_string(), bottom as u8)]),
                    left: HLabel::Atom(c.clone()),
                    right: HLabel::Atom(c2.clone()),
                });
            }
        }
    }
    if tiles.is_empty() {
        return Err(TileError::EmptyTileSet);
    }
    ZTileSet::new(
        in_max,
        BTreeMap::from([(DEFAULT_OUT.to_string(), out_max)]),
        tiles,
    )
}

fn retag(t: &ZTile, tag: &str) -> ZTile {
    ZTile {
        top: t.top,
        bottom: t.bottom.clone(),
        left: HLabel::tagged(tag, t.left.clone()),
        right: HLabel::tagged(tag, t.right.clone()),
    }
}

/// Disjoint union: labels of `first` are tagged `L`, labels of `second` `R`,
/// so a row never mixes tiles of both.
pub fn union_tiles(first: &ZTileSet, second: &ZTileSet) -> Result<ZTileSet, TileError> {
    if first.in_max != second.in_max || first.outs != second.outs {
        return Err(TileError::AlphabetMismatch("union operands differ".into()));
    }
    let tiles = first
        .tiles
        .iter()
        .map(|t| retag(t, "L"))
        .chain(second.tiles.iter().map(|t| retag(t, "R")))
        .collect();
    ZTileSet::new(first.in_max, first.outs.clone(), tiles)
}

/// Stacks `first` above `second` in a single layer: the output digit of the
/// first tile must equal the input digit of the second. Realizes
/// `x ↦ second(first(x))`.
pub fn compose_tiles(first: &ZTileSet, second: &ZTileSet) -> Result<ZTileSet, TileError> {
    let (_, mid_max) = first.single_out()?;
    if mid_max != second.in_max {
        return Err(TileError::AlphabetMismatch(format!(
            "output digits 0..={mid_max} feed inputs 0..={}",
            second.in_max
        )));
    }
    let mut by_top: HashMap<u8, Vec<&ZTile>> = HashMap::new();
    for t in &second.tiles {
        by_top.entry(t.top).or_default().push(t);
    }
    let estimate: u128 = first
        .tiles
        .iter()
        .map(|a| by_top.get(&a.out()).map_or(0, Vec::len) as u128)
        .sum();
    if estimate > TILE_LIMIT {
        return Err(TileError::TooLarge(estimate));
    }
    let mut tiles = Vec::new();
    for a in &first.tiles {
        for b in by_top.get(&a.out()).into_iter().flatten() {
            tiles.push(ZTile {
                top: a.top,
                bottom: b.bottom.clone(),
                left: HLabel::pair(a.left.clone(), b.left.clone()),
                right: HLabel::pair(a.right.clone(), b.right.clone()),
            });
        }
    }
    ZTileSet::new(first.in_max, second.outs.clone(), tiles)
}

/// Upper bound on the number of tiles [`compose_tiles`] and
/// [`product_tiles`] will materialize before pruning.
pub const TILE_LIMIT: u128 = 1 << 20;

/// Outputs, left labels and right labels of a product tile under construction.
type PartialTile = (BTreeMap<String, u8>, Vec<HLabel>, Vec<HLabel>);

/// Tuples of tiles sharing their input digit. Horizontal labels are paired
/// componentwise and each component contributes one output named after it.
pub fn product_tiles(sets: &[(String, ZTileSet)]) -> Result<ZTileSet, TileError> {
    let Some((_, first)) = sets.first() else {
        return Err(TileError::EmptyProduct);
    };
    let in_max = first.in_max;
    let mut outs = BTreeMap::new();
    for (name, set) in sets {
        if set.in_max != in_max {
            return Err(TileError::AlphabetMismatch(format!(
                "input digits of {name}"
            )));
        }
        let (_, max) = set.single_out()?;
        if outs.insert(name.clone(), max).is_some() {
            return Err(TileError::AlphabetMismatch(format!(
                "duplicate output {name}"
            )));
        }
    }
    let estimate: u128 = (0..=in_max)
        .map(|top| {
            sets.iter()
                .map(|(_, s)| s.tiles.iter().filter(|t| t.top == top).count() as u128)
                .product::<u128>()
        })
        .sum();
    if estimate > TILE_LIMIT {
        return Err(TileError::TooLarge(estimate));
    }
    let mut tiles = Vec::new();
    for top in 0..=in_max {
        let mut partial: Vec<PartialTile> = vec![(BTreeMap::new(), Vec::new(), Vec::new())];
        for (name, set) in sets {
            let column: Vec<&ZTile> = set.tiles.iter().filter(|t| t.top == top).collect();
            let mut next = Vec::with_capacity(partial.len() * column.len());
            for (bottom, left, right) in &partial {
                for t in &column {
                    let mut bottom = bottom.clone();
                    bottom.insert(name.clone(), t.out());
                    let mut left = left.clone();
                    left.push(t.left.clone());
                    let mut right = right.clone();
                    right.push(t.right.clone());
                    next.push((bottom, left, right));
                }
            }
            partial = next;
        }
        tiles.extend(partial.into_iter().map(|(bottom, left, right)| ZTile {
            top,
            bottom,
            left: HLabel::Tuple(left),
            right: HLabel::Tuple(right),
        }));
    }
    ZTileSet::new(in_max, outs, tiles)
}

/// Drops tiles that cannot occur in a bi-infinite row: repeatedly removes
/// tiles with no possible left neighbour or no possible right neighbour.
pub fn prune(set: &ZTileSet) -> ZTileSet {
    let mut tiles = set.tiles.clone();
    loop {
        let lefts: HashSet<&HLabel> = tiles.iter().map(|t| &t.left).collect();
        let rights: HashSet<&HLabel> = tiles.iter().map(|t| &t.right).collect();
        let keep: Vec<bool> = tiles
            .iter()
            .map(|t| rights.contains(&t.left) && lefts.contains(&t.right))
            .collect();
        if keep.iter().all(|&k| k) {
            break;
        }
        let mut i = 0;
        tiles.retain(|_| {
            i += 1;
            keep[i - 1]
        });
    }
    ZTileSet {
        in_max: set.in_max,
        outs: set.outs.clone(),
        tiles,
    }
}

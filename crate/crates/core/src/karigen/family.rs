use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pamaps::{PAMap, Presentation};
use crate::rat::Rat;

use super::{Circuit, HLabel, TileError, ZTile, ZTileSet};

/// Switches for [`pamap_tiles`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TileOptions {
    /// Emit a bare affine tile set for pieces whose formula alone already
    /// confines the input to the piece.
    pub fast_path: bool,
}

impl Default for TileOptions {
    fn default() -> TileOptions {
        TileOptions { fast_path: true }
    }
}

/// Digit alphabet `0..=length` of the space of `f`.
fn digit_max(f: &PAMap) -> Result<u8, TileError> {
    let len = f.space().length();
    if !len.is_integer() {
        return Err(TileError::NonIntegerLength(len.clone()));
    }
    len.to_i64()
        .and_then(|m| u8::try_from(m).ok())
        .ok_or_else(|| TileError::NonIntegerLength(len.clone()))
}

/// The circuit realizing `f` as a union over its pieces.
///
/// A piece `[lo, hi] ∋ x ↦ ax + b` becomes, unless the fast path applies,
/// the chain
/// 1. on circles, `x`, `x − M`, `x + M` united (both names of the seam),
/// 2. `x ↦ hi − x` twice, keeping `x ≤ hi` (skipped when `hi = M`),
/// 3. `x ↦ x − lo` then `x ↦ x + lo`, keeping `x ≥ lo` (skipped when `lo = 0`),
/// 4. `x ↦ ax + b`,
/// 5. the seam union again on circles.
///
/// with dead tiles pruned after every step.
pub fn pamap_circuit(f: &PAMap, opts: TileOptions) -> Result<Circuit, TileError> {
    let space = f.space();
    let ok = if space.is_circle() {
        f.is_circle_homeo()
    } else {
        f.is_total()
    };
    if !ok {
        return Err(TileError::NotHomeo);
    }
    let m = digit_max(f)?;
    let big_m = space.length().clone();
    let whole = space.whole();
    let affine = |a: Rat, b: Rat| Circuit::affine(a, b, m, m);
    let seam = || {
        Circuit::union_of(vec![
            affine(Rat::one(), Rat::zero()),
            affine(Rat::one(), -big_m.clone()),
            affine(Rat::one(), big_m.clone()),
        ])
        .expect("three parts")
    };

    let mut pieces = Vec::new();
    for p in f.pieces().iter().filter(|p| !p.dom.is_point()) {
        let confined = whole
            .preimage(&p.slope, &p.offset)
            .intersect(&whole)
            .is_some_and(|d| d == p.dom);
        if opts.fast_path && confined {
            pieces.push(affine(p.slope.clone(), p.offset.clone()));
            continue;
        }
        let mut stages = Vec::new();
        if space.is_circle() {
            stages.push(seam());
        }
        if p.dom.hi() < &big_m {
            let hi = p.dom.hi().clone();
            stages.push(affine(-Rat::one(), hi.clone()));
            stages.push(affine(-Rat::one(), hi));
        }
        if p.dom.lo().is_positive() {
            let lo = p.dom.lo().clone();
            stages.push(affine(Rat::one(), -lo.clone()));
            stages.push(affine(Rat::one(), lo));
        }
        stages.push(affine(p.slope.clone(), p.offset.clone()));
        if space.is_circle() {
            stages.push(seam());
        }
        let chain = stages
            .into_iter()
            .reduce(Circuit::then)
            .expect("at least the affine stage");
        pieces.push(chain);
    }
    let union = Circuit::union_of(pieces).ok_or(TileError::EmptyTileSet)?;
    Ok(Circuit::Prune(Box::new(union)))
}

pub fn pamap_tiles(f: &PAMap, opts: TileOptions) -> Result<ZTileSet, TileError> {
    pamap_circuit(f, opts)?.compile()
}

/// The product circuit over all generators, pruned.
pub fn family_circuit(pres: &Presentation, opts: TileOptions) -> Result<Circuit, TileError> {
    let parts = pres
        .generators()
        .iter()
        .map(|(name, f)| Ok((name.clone(), pamap_circuit(f, opts)?)))
        .collect::<Result<Vec<_>, TileError>>()?;
    if parts.is_empty() {
        return Err(TileError::EmptyProduct);
    }
    Ok(Circuit::Prune(Box::new(Circuit::Product(parts))))
}

pub fn family_tiles(pres: &Presentation, opts: TileOptions) -> Result<GroupTileSet, TileError> {
    let tiles = family_circuit(pres, opts)?.compile()?;
    GroupTileSet::new(pres.names().iter().map(|s| s.to_string()).collect(), tiles)
}

/// Wang tiles over `Z × G`.
///
/// Along `Z` the tiles meet through their horizontal labels. Along a group
/// generator `h`, the tile at `(n, g)` shows its `h`-output digit and must
/// match the input digit of the tile at `(n, g·h⁻¹)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTileSet {
    generators: Vec<String>,
    tiles: ZTileSet,
}

impl GroupTileSet {
    pub fn new(mut generators: Vec<String>, tiles: ZTileSet) -> Result<GroupTileSet, TileError> {
        generators.sort();
        generators.dedup();
        let outs: Vec<&String> = tiles.outs().keys().collect();
        if outs != generators.iter().collect::<Vec<_>>() {
            return Err(TileError::AlphabetMismatch(
                "outputs must be named after the generators".into(),
            ));
        }
        Ok(GroupTileSet { generators, tiles })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn tile_set(&self) -> &ZTileSet {
        &self.tiles
    }

    pub fn tiles(&self) -> &[ZTile] {
        self.tiles.tiles()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Label on the `Z`-west side.
    pub fn zphi<'a>(&self, tile: &'a ZTile) -> &'a HLabel {
        &tile.left
    }

    /// Label on the `Z`-east side.
    pub fn zpsi<'a>(&self, tile: &'a ZTile) -> &'a HLabel {
        &tile.right
    }

    /// Digit shown towards `g·h`: the input digit, for every generator.
    pub fn psi(&self, tile: &ZTile, _generator: &str) -> u8 {
        tile.top
    }

    /// Digit shown towards `g·h⁻¹`: the output digit of generator `h`.
    pub fn phi(&self, tile: &ZTile, generator: &str) -> u8 {
        tile.bottom[generator]
    }
}

#[derive(Serialize)]
struct GroupTileOut<'a> {
    top: u8,
    bottom: &'a BTreeMap<String, u8>,
    left: &'a HLabel,
    right: &'a HLabel,
    phi: BTreeMap<&'a str, u8>,
    psi: BTreeMap<&'a str, u8>,
}

#[derive(Serialize)]
struct GroupOut<'a> {
    generators: &'a [String],
    in_max: u8,
    outs: &'a BTreeMap<String, u8>,
    tiles: Vec<GroupTileOut<'a>>,
}

impl Serialize for GroupTileSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tiles = self
            .tiles()
            .iter()
            .map(|t| GroupTileOut {
                top: t.top,
                bottom: &t.bottom,
                left: &t.left,
                right: &t.right,
                phi: self
                    .generators
                    .iter()
                    .map(|h| (h.as_str(), self.phi(t, h)))
                    .collect(),
                psi: self
                    .generators
                    .iter()
                    .map(|h| (h.as_str(), self.psi(t, h)))
                    .collect(),
            })
            .collect();
        GroupOut {
            generators: &self.generators,
            in_max: self.tiles.in_max(),
            outs: self.tiles.outs(),
            tiles,
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
struct GroupIn {
    generators: Vec<String>,
    #[serde(flatten)]
    tiles: ZTileSet,
}

impl<'de> Deserialize<'de> for GroupTileSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<GroupTileSet, D::Error> {
        let raw = GroupIn::deserialize(d)?;
        GroupTileSet::new(raw.generators, raw.tiles).map_err(serde::de::Error::custom)
    }
}

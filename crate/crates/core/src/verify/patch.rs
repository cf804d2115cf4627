use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::karigen::{Circuit, GroupTileSet, ZTile};
use crate::pamaps::{Letter, MapError, Presentation, Word};
use crate::rat::Rat;

use super::VerifyError;

/// Rows of tiles placed at group elements, each covering the same window of
/// `Z` positions.
pub type Patch = BTreeMap<Word, Vec<ZTile>>;

/// Whether `patch` is a valid finite piece of a configuration of `gts`.
///
/// `canon` maps a word to a key that is equal exactly for words naming the
/// same group element. Every tile must belong to the set, neighbours along
/// `Z` must agree on their labels, and for each generator `h` the output
/// digit at `g` must equal the input digit at `g·h⁻¹` wherever both are in
/// the patch.
pub fn patch_check<K, C>(gts: &GroupTileSet, patch: &Patch, canon: C) -> Result<bool, VerifyError>
where
    K: Eq + Hash,
    C: Fn(&Word) -> Result<K, MapError>,
{
    let mut by_key: HashMap<K, &Word> = HashMap::new();
    for (word, row) in patch {
        if let Some(prev) = by_key.insert(canon(word)?, word) {
            if &patch[prev] != row {
                return Err(VerifyError::InconsistentPatch(
                    prev.to_string(),
                    word.to_string(),
                ));
            }
        }
    }
    for row in patch.values() {
        if !row.iter().all(|t| gts.tile_set().contains(t)) {
            return Ok(false);
        }
        if row.windows(2).any(|p| gts.zpsi(&p[0]) != gts.zphi(&p[1])) {
            return Ok(false);
        }
    }
    for (word, row) in patch {
        for h in gts.generators() {
            let step = Word::from_letters(vec![Letter::new(h.clone(), true)]);
            let Some(other) = by_key.get(&canon(&word.concat(&step))?) else {
                continue;
            };
            let neighbour = &patch[*other];
            if neighbour.len() != row.len()
                || row
                    .iter()
                    .zip(neighbour)
                    .any(|(t, u)| gts.phi(t, h) != gts.psi(u, h))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The patch on the ball of the given radius whose row at `g` encodes
/// `z_g = f_{g⁻¹}(z0)`, so that generator `h` sends `z_g` to `z_{g·h⁻¹}`.
/// `circuit` must be the family circuit the set was compiled from.
pub fn orbit_patch(
    pres: &Presentation,
    circuit: &Circuit,
    z0: &Rat,
    radius: usize,
    window: i64,
) -> Result<Patch, VerifyError> {
    let space = pres.space();
    let mut patch = Patch::new();
    for level in pres.word_levels(radius)? {
        for (word, _) in level {
            let z = pres.word_apply(&word.inverse())?.apply(z0)?;
            let images = pres
                .generators()
                .iter()
                .map(|(h, f)| Ok((h.as_str(), f.apply(&z)?)))
                .collect::<Result<BTreeMap<&str, Rat>, MapError>>()?;
            let row = circuit
                .witness(&z, window)
                .into_iter()
                .find(|r| {
                    images
                        .iter()
                        .all(|(h, y)| r.outputs.get(*h).is_some_and(|o| &space.normalize(o) == y))
                })
                .ok_or_else(|| VerifyError::WitnessFailure(format!("{z} at {word}")))?;
            patch.insert(word, row.tiles);
        }
    }
    Ok(patch)
}

/// The first `p/q` with `q ≤ 50` whose orbit under the ball of the given
/// radius stays inside every generator domain.
pub fn default_orbit_start(pres: &Presentation, radius: usize) -> Result<Option<Rat>, MapError> {
    let maps: Vec<_> = pres
        .word_levels(radius + 1)?
        .into_iter()
        .flatten()
        .map(|(_, m)| m)
        .collect();
    let len = pres.space().length();
    for q in 2..=50i64 {
        let qr = Rat::from_int(q);
        let top = (len * &qr).floor_int().try_into().unwrap_or(i64::MAX);
        for p in 1..top {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let z = Rat::new(p, q);
            if maps.iter().all(|m| m.defined_at(&z)) {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

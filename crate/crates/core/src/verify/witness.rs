use crate::karigen::{affine_witness, Circuit, ZTile, ZTileSet};
use crate::pamaps::PAMap;
use crate::rat::Rat;

use super::VerifyError;

fn check_row(ts: &ZTileSet, tiles: &[ZTile], x: &Rat) -> Result<(), VerifyError> {
    if let Some(t) = tiles.iter().find(|t| !ts.contains(t)) {
        return Err(VerifyError::WitnessFailure(format!(
            "{x}: tile {:?} is not in the set",
            t
        )));
    }
    if tiles.windows(2).any(|p| p[0].right != p[1].left) {
        return Err(VerifyError::WitnessFailure(format!(
            "{x}: labels do not match"
        )));
    }
    Ok(())
}

/// The row of `ts = affine_tiles(slope, offset, ..)` at positions
/// `-window..=window` encoding `x` on top and `slope·x + offset` below,
/// checked against the set.
pub fn witness_row(
    ts: &ZTileSet,
    slope: &Rat,
    offset: &Rat,
    x: &Rat,
    window: i64,
) -> Result<Vec<ZTile>, VerifyError> {
    let (_, out_max) = ts.single_out()?;
    let row = affine_witness(slope, offset, ts.in_max(), out_max, x, window)
        .ok_or_else(|| VerifyError::WitnessFailure(format!("{x}: value out of range")))?;
    check_row(ts, &row.tiles, x)?;
    Ok(row.tiles)
}

/// A row of the compiled `circuit` encoding `x` above and `f(x)` below.
pub fn map_witness_row(
    circuit: &Circuit,
    ts: &ZTileSet,
    f: &PAMap,
    x: &Rat,
    window: i64,
) -> Result<Vec<ZTile>, VerifyError> {
    let space = f.space();
    let y = f.apply(x)?;
    let row = circuit
        .witness(x, window)
        .into_iter()
        .find(|r| space.normalize(r.output()) == y)
        .ok_or_else(|| VerifyError::WitnessFailure(format!("{x}: no route yields {y}")))?;
    check_row(ts, &row.tiles, x)?;
    Ok(row.tiles)
}

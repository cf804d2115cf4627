use serde::Serialize;

use crate::karigen::{HLabel, ZTile, ZTileSet};
use crate::pamaps::PAMap;

use super::graph::nonempty_rows;
use super::scan::{periodic_soundness, stacked_periodic_scan};
use super::VerifyError;

/// A single-tile corruption.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    Top { tile: usize, digit: u8 },
    Bottom { tile: usize, digit: u8 },
    Left { tile: usize, label: HLabel },
    Right { tile: usize, label: HLabel },
}

#[derive(Clone, Debug)]
pub struct Mutant {
    pub mutation: Mutation,
    pub tiles: ZTileSet,
}

/// The union branch a label belongs to: its chain of outer tags.
fn component(label: &HLabel) -> Vec<&str> {
    let mut tags = Vec::new();
    let mut cur = label;
    while let HLabel::Tagged { tag, label } = cur {
        tags.push(tag.as_str());
        cur = label;
    }
    tags
}

/// Every set obtained by changing one field of one tile of a single-output
/// set, keeping only changes that produce a tile not already in the set.
/// Labels are only swapped for labels of the same union branch; a label
/// from another branch yields a tile that lies on no row at all.
pub fn mutants(ts: &ZTileSet) -> Result<Vec<Mutant>, VerifyError> {
    let (_, out_max) = ts.single_out()?;
    let labels = ts.labels();
    let mut out = Vec::new();
    for (i, t) in ts.tiles().iter().enumerate() {
        let mut candidates: Vec<(Mutation, ZTile)> = Vec::new();
        for d in (0..=ts.in_max()).filter(|&d| d != t.top) {
            let mut m = t.clone();
            m.top = d;
            candidates.push((Mutation::Top { tile: i, digit: d }, m));
        }
        for d in (0..=out_max).filter(|&d| d != t.out()) {
            let mut m = t.clone();
            for v in m.bottom.values_mut() {
                *v = d;
            }
            candidates.push((Mutation::Bottom { tile: i, digit: d }, m));
        }
        let branch = |l: &HLabel, own: &HLabel| component(l) == component(own);
        for l in labels
            .iter()
            .filter(|&l| l != &t.left && branch(l, &t.left))
        {
            let mut m = t.clone();
            m.left = l.clone();
            candidates.push((
                Mutation::Left {
                    tile: i,
                    label: l.clone(),
                },
                m,
            ));
        }
        for l in labels
            .iter()
            .filter(|&l| l != &t.right && branch(l, &t.right))
        {
            let mut m = t.clone();
            m.right = l.clone();
            candidates.push((
                Mutation::Right {
                    tile: i,
                    label: l.clone(),
                },
                m,
            ));
        }
        for (mutation, tile) in candidates {
            if ts.contains(&tile) {
                continue;
            }
            out.push(Mutant {
                mutation,
                tiles: ts.with_tile_replaced(i, tile)?,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationReport {
    pub total: usize,
    pub detected: usize,
    pub undetected: Vec<Mutation>,
}

impl MutationReport {
    /// Detected fraction, `1` for an empty suite.
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.detected as f64 / self.total as f64
        }
    }
}

/// Whether the checks notice that `ts` is not a sound, aperiodic set for `f`.
fn detects(ts: &ZTileSet, f: &PAMap, n_max: usize, k_max: usize) -> Result<bool, VerifyError> {
    Ok(!nonempty_rows(ts)
        || !periodic_soundness(ts, f, n_max, true)?.is_sound()
        || !stacked_periodic_scan(ts, n_max, k_max)?.is_empty())
}

/// Runs every single-tile mutant of `ts` through emptiness, soundness and
/// periodicity checks bounded by `n_max` and `k_max`.
pub fn mutation_suite(
    ts: &ZTileSet,
    f: &PAMap,
    n_max: usize,
    k_max: usize,
) -> Result<MutationReport, VerifyError> {
    let all = mutants(ts)?;
    let mut report = MutationReport {
        total: all.len(),
        detected: 0,
        undetected: Vec::new(),
    };
    for m in all {
        if detects(&m.tiles, f, n_max, k_max)? {
            report.detected += 1;
        } else {
            report.undetected.push(m.mutation);
        }
    }
    Ok(report)
}

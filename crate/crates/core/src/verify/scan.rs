use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::interval::IntervalSet;
use crate::karigen::{HLabel, ZTileSet};
use crate::pamaps::{MapError, PAMap};
use crate::rat::Rat;

use super::graph::nonempty_rows;
use super::VerifyError;

/// Longest row period the word relation supports.
pub const MAX_ROW_LEN: usize = 16;

const DIGIT_BITS: usize = 4;

/// A digit word of length at most [`MAX_ROW_LEN`], four bits per digit.
type Packed = u64;

fn digit_at(w: Packed, i: usize) -> u8 {
    ((w >> (DIGIT_BITS * i)) & 0xf) as u8
}

fn unpack(w: Packed, n: usize) -> Vec<u8> {
    (0..n).map(|i| digit_at(w, i)).collect()
}

fn digit_sum(w: Packed, n: usize) -> i64 {
    (0..n).map(|i| i64::from(digit_at(w, i))).sum()
}

/// `w` read from position `shift` onwards, cyclically.
fn rotate(w: Packed, n: usize, shift: usize) -> Packed {
    if shift == 0 {
        return w;
    }
    let mask = if n * DIGIT_BITS == 64 {
        u64::MAX
    } else {
        (1u64 << (n * DIGIT_BITS)) - 1
    };
    ((w >> (DIGIT_BITS * shift)) | (w << (DIGIT_BITS * (n - shift)))) & mask
}

fn word_string(w: Packed, n: usize) -> String {
    unpack(w, n)
        .iter()
        .map(|d| char::from_digit(u32::from(*d), 16).expect("digit below 16"))
        .collect()
}

/// The `(top word, bottom word)` pairs of all `n`-periodic rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowRelation {
    n: usize,
    pairs: BTreeSet<(Packed, Packed)>,
}

impl RowRelation {
    pub fn period(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs as digit vectors, sorted.
    pub fn pairs(&self) -> Vec<(Vec<u8>, Vec<u8>)> {
        self.pairs
            .iter()
            .map(|&(t, b)| (unpack(t, self.period()), unpack(b, self.period())))
            .collect()
    }

    /// Top and bottom averages of each pair.
    pub fn averages(&self) -> impl Iterator<Item = (Rat, Rat, RowWords)> + '_ {
        let n = self.n as i64;
        self.pairs.iter().map(move |&(t, b)| {
            (
                Rat::new(digit_sum(t, self.n), n),
                Rat::new(digit_sum(b, self.n), n),
                RowWords::new(t, b, self.n),
            )
        })
    }
}

/// Word pairs of the `n`-periodic rows of a single-output set.
pub fn row_relation(ts: &ZTileSet, n: usize) -> Result<RowRelation, VerifyError> {
    if n == 0 {
        return Err(VerifyError::ZeroPeriod);
    }
    if n > MAX_ROW_LEN {
        return Err(VerifyError::RowTooLong(n));
    }
    ts.single_out()?;
    let mut ids: HashMap<&HLabel, usize> = HashMap::new();
    for t in ts.tiles() {
        for l in [&t.left, &t.right] {
            let next = ids.len();
            ids.entry(l).or_insert(next);
        }
    }
    let mut by_left: Vec<Vec<(usize, Packed, Packed)>> = vec![Vec::new(); ids.len()];
    for t in ts.tiles() {
        by_left[ids[&t.left]].push((ids[&t.right], t.top.into(), t.out().into()));
    }

    let mut pairs = BTreeSet::new();
    for start in 0..ids.len() {
        let mut layer: HashMap<usize, HashSet<(Packed, Packed)>> =
            HashMap::from([(start, HashSet::from([(0, 0)]))]);
        for i in 0..n {
            let shift = DIGIT_BITS * i;
            let mut next: HashMap<usize, HashSet<(Packed, Packed)>> = HashMap::new();
            for (label, words) in &layer {
                for &(right, top, bottom) in &by_left[*label] {
                    let entry = next.entry(right).or_default();
                    for &(t, b) in words {
                        entry.insert((t | top << shift, b | bottom << shift));
                    }
                }
            }
            layer = next;
        }
        if let Some(closed) = layer.remove(&start) {
            pairs.extend(closed);
        }
    }
    Ok(RowRelation { n, pairs })
}

/// One row of a periodic configuration, as digit strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowWords {
    pub top: String,
    pub bottom: String,
}

impl RowWords {
    fn new(top: Packed, bottom: Packed, n: usize) -> RowWords {
        RowWords {
            top: word_string(top, n),
            bottom: word_string(bottom, n),
        }
    }
}

/// A periodic row whose averages disagree with the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub row: RowWords,
    pub input: Rat,
    pub output: Rat,
    pub expected: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub rows_checked: usize,
    pub violations: Vec<Violation>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f(top average) ≡ bottom average` on every `n`-periodic row for
/// `n ≤ n_max`, skipping rows whose top average lies outside `dom(f)`.
/// With `stop_early`, returns at the first period that has a violation.
pub fn periodic_soundness(
    ts: &ZTileSet,
    f: &PAMap,
    n_max: usize,
    stop_early: bool,
) -> Result<SoundnessReport, VerifyError> {
    let space = f.space();
    let mut report = SoundnessReport {
        rows_checked: 0,
        violations: Vec::new(),
    };
    for n in 1..=n_max {
        let rel = row_relation(ts, n)?;
        for (x, y, row) in rel.averages() {
            report.rows_checked += 1;
            if !f.defined_at(&x) {
                continue;
            }
            let expected = f.apply(&x)?;
            if !space.equiv(&expected, &y) {
                report.violations.push(Violation {
                    n,
                    row,
                    input: x,
                    output: y,
                    expected,
                });
            }
        }
        if stop_early && !report.violations.is_empty() {
            break;
        }
    }
    Ok(report)
}

/// A horizontally `n`-periodic configuration whose row `k` is row `0`
/// shifted left by `shear`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicFind {
    pub n: usize,
    pub k: usize,
    pub shear: usize,
    pub rows: Vec<RowWords>,
}

/// For each `(n, k)` with `n ≤ n_max`, `k ≤ k_max`, the first stacked
/// configuration found (smallest starting word, then smallest shear).
pub fn stacked_periodic_scan(
    ts: &ZTileSet,
    n_max: usize,
    k_max: usize,
) -> Result<Vec<PeriodicFind>, VerifyError> {
    let mut finds = Vec::new();
    for n in 1..=n_max {
        let rel = row_relation(ts, n)?;
        finds.extend(scan_period(&rel, k_max));
    }
    Ok(finds)
}

fn scan_period(rel: &RowRelation, k_max: usize) -> Vec<PeriodicFind> {
    let n = rel.period();
    let mut succ: BTreeMap<Packed, Vec<Packed>> = BTreeMap::new();
    for &(t, b) in &rel.pairs {
        succ.entry(t).or_default().push(b);
    }
    let mut found: BTreeMap<usize, PeriodicFind> = BTreeMap::new();
    for &start in succ.keys() {
        if found.len() == k_max {
            break;
        }
        // levels[j] maps each word reachable in j rows to its predecessor
        let mut levels: Vec<HashMap<Packed, Packed>> = vec![HashMap::from([(start, start)])];
        for k in 1..=k_max {
            let mut next = HashMap::new();
            for &w in levels[k - 1].keys() {
                for &b in succ.get(&w).map_or(&[][..], Vec::as_slice) {
                    next.entry(b).or_insert(w);
                }
            }
            if next.is_empty() {
                break;
            }
            if let std::collections::btree_map::Entry::Vacant(e) = found.entry(k) {
                if let Some(shear) = (0..n).find(|&s| next.contains_key(&rotate(start, n, s))) {
                    let mut words = vec![rotate(start, n, shear)];
                    for j in (0..k).rev() {
                        let w = *words.last().expect("nonempty");
                        let prev = if j + 1 == k {
                            next[&w]
                        } else {
                            levels[j + 1][&w]
                        };
                        words.push(prev);
                    }
                    words.reverse();
                    let rows = words
                        .windows(2)
                        .map(|p| RowWords::new(p[0], p[1], n))
                        .collect();
                    e.insert(PeriodicFind { n, k, shear, rows });
                }
            }
            levels.push(next);
        }
    }
    found.into_values().collect()
}

/// Exact periodic points of `f` of period dividing `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OraclePoints {
    pub k: usize,
    pub points: IntervalSet,
}

pub fn oracle_periodic_points(f: &PAMap, k_max: usize) -> Result<Vec<OraclePoints>, MapError> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let points = f.periodic_points(k)?;
        if !points.parts().is_empty() {
            out.push(OraclePoints { k, points });
        }
    }
    Ok(out)
}

/// Whether an `(n, k)` stacked configuration must exist for a sound and
/// complete set of `f`: some `x ∈ (1/n)Z` with `f^k(x) ≡ x` whose whole
/// orbit stays in `(1/n)Z`. Decided by iterating `f` on every candidate.
pub fn oracle_expects(f: &PAMap, n: usize, k: usize) -> Result<bool, MapError> {
    let space = f.space();
    let step = Rat::new(1.into(), n as i64);
    let on_grid = |v: &Rat| (v * Rat::from_int(n as i64)).is_integer();
    let top = (space.length() * Rat::from_int(n as i64))
        .floor_int()
        .try_into()
        .unwrap_or(i64::MAX);
    'points: for j in 0..=top {
        let x = &step * Rat::from_int(j);
        let mut v = x.clone();
        for _ in 0..k {
            if !f.defined_at(&v) {
                continue 'points;
            }
            v = f.apply(&v)?;
            if !on_grid(&v) {
                continue 'points;
            }
        }
        if space.equiv(&v, &x) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Everything `verify` reports about a single-output set generated from `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub nonempty: bool,
    pub periodic: Vec<PeriodicFind>,
    pub oracle_periodic_points: Vec<OraclePoints>,
    pub soundness: SoundnessReport,
}

impl VerifyReport {
    /// Process exit status: 3 for unsound or empty sets, 2 when a periodic
    /// configuration was found, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.nonempty || !self.soundness.is_sound() {
            3
        } else if !self.periodic.is_empty() {
            2
        } else {
            0
        }
    }
}

pub fn verify_tiles(
    ts: &ZTileSet,
    f: &PAMap,
    n_max: usize,
    k_max: usize,
) -> Result<VerifyReport, VerifyError> {
    Ok(VerifyReport {
        nonempty: nonempty_rows(ts),
        periodic: stacked_periodic_scan(ts, n_max, k_max)?,
        oracle_periodic_points: oracle_periodic_points(f, k_max)?,
        soundness: periodic_soundness(ts, f, n_max, false)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::karigen::{affine_tiles, pamap_tiles, TileOptions};
    use crate::pamaps::{presets, Space};
    use crate::rat::rat;

    fn identity_set() -> ZTileSet {
        affine_tiles(&Rat::one(), &Rat::zero(), 1, 1).unwrap()
    }

    fn kari_set() -> ZTileSet {
        pamap_tiles(&presets::kari_map(), TileOptions::default()).unwrap()
    }

    #[test]
    fn rotation() {
        // digits 1,2,3 packed little-endian
        let w = 0x321;
        assert_eq!(rotate(w, 3, 1), 0x132);
        assert_eq!(rotate(w, 3, 0), w);
        assert_eq!(word_string(rotate(w, 3, 2), 3), "312");
    }

    #[test]
    fn identity_relation_is_diagonal() {
        let rel = row_relation(&identity_set(), 4).unwrap();
        assert_eq!(rel.len(), 16);
        assert!(rel.pairs().iter().all(|(t, b)| t == b));
        assert!(matches!(
            row_relation(&identity_set(), 17),
            Err(VerifyError::RowTooLong(17))
        ));
    }

    #[test]
    fn kari_rows_are_balanced() {
        let rel = row_relation(&kari_set(), 7).unwrap();
        for (x, y, _) in rel.averages() {
            assert!(presets::kari_map()
                .space()
                .equiv(&presets::kari_map().apply(&x).unwrap(), &y));
        }
        // 5/7 and its rotations appear on top
        let tops: BTreeSet<Vec<u8>> = rel.pairs().into_iter().map(|p| p.0).collect();
        assert!(tops.contains(&vec![0, 1, 1, 0, 1, 1, 1]));
    }

    #[test]
    fn soundness_of_generated_sets() {
        let id = PAMap::identity(&Space::unit_circle());
        assert!(periodic_soundness(&identity_set(), &id, 6, false)
            .unwrap()
            .is_sound());
        let report = periodic_soundness(&kari_set(), &presets::kari_map(), 8, false).unwrap();
        assert!(report.is_sound());
        assert!(report.rows_checked > 0);
    }

    #[test]
    fn soundness_flags_the_wrong_map() {
        let report = periodic_soundness(&identity_set(), &presets::kari_map(), 3, true).unwrap();
        assert!(!report.is_sound());
        assert_eq!(report.violations[0].n, 1);
    }

    #[test]
    fn identity_is_periodic_at_one_one() {
        let finds = stacked_periodic_scan(&identity_set(), 2, 2).unwrap();
        assert_eq!(finds.len(), 4);
        assert_eq!((finds[0].n, finds[0].k, finds[0].shear), (1, 1, 0));
        assert_eq!(
            finds[0].rows,
            [RowWords {
                top: "0".into(),
                bottom: "0".into()
            }]
        );
    }

    #[test]
    fn kari_has_no_small_periodic_configuration() {
        let ts = kari_set();
        assert!(stacked_periodic_scan(&ts, 6, 4).unwrap().is_empty());
        assert!(oracle_periodic_points(&presets::kari_map(), 4)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rotation_map_is_found_with_period_two() {
        // x + 1/2 on the circle: every point has period 2
        let f = PAMap::new(
            Space::unit_circle(),
            vec![
                crate::pamaps::AffinePiece::new(
                    crate::interval::Interval::new(Rat::zero(), rat(1, 2)).unwrap(),
                    Rat::one(),
                    rat(1, 2),
                ),
                crate::pamaps::AffinePiece::new(
                    crate::interval::Interval::new(rat(1, 2), Rat::one()).unwrap(),
                    Rat::one(),
                    rat(-1, 2),
                ),
            ],
        )
        .unwrap();
        let ts = pamap_tiles(&f, TileOptions::default()).unwrap();
        let finds = stacked_periodic_scan(&ts, 4, 3).unwrap();
        let keys: Vec<(usize, usize)> = finds.iter().map(|p| (p.n, p.k)).collect();
        for n in 1..=4 {
            for k in 1..=3 {
                assert_eq!(
                    keys.contains(&(n, k)),
                    oracle_expects(&f, n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
        assert!(keys.contains(&(2, 2)));
        assert!(!keys.contains(&(1, 1)));
    }

    #[test]
    fn report_exit_codes() {
        let id = PAMap::identity(&Space::unit_circle());
        let report = verify_tiles(&identity_set(), &id, 3, 2).unwrap();
        assert_eq!(report.exit_code(), 2);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"nonempty":true,"periodic":[{"n":1,"k":1,"shear":0"#));
        let kari = verify_tiles(&kari_set(), &presets::kari_map(), 4, 3).unwrap();
        assert_eq!(kari.exit_code(), 0);
    }
}

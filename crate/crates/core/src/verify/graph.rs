use std::collections::HashMap;

use crate::karigen::{HLabel, ZTileSet};

use super::VerifyError;

/// Tile adjacency along a row: `u → v` when the right label of `u` equals
/// the left label of `v`, so `v` may sit immediately right of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    succ: Vec<Vec<usize>>,
}

/// A cycle of tile indices; tile `i + 1` sits right of tile `i`, and the
/// first sits right of the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicRow {
    pub cycle: Vec<usize>,
}

impl TransitionGraph {
    pub fn new(ts: &ZTileSet) -> TransitionGraph {
        let mut by_left: HashMap<&HLabel, Vec<usize>> = HashMap::new();
        for (i, t) in ts.tiles().iter().enumerate() {
            by_left.entry(&t.left).or_default().push(i);
        }
        let succ = ts
            .tiles()
            .iter()
            .map(|t| by_left.get(&t.right).cloned().unwrap_or_default())
            .collect();
        TransitionGraph { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    /// Whether some cycle exists, i.e. whether a bi-infinite row exists.
    pub fn has_cycle(&self) -> bool {
        // Kahn: a graph is acyclic iff repeatedly removing sources empties it
        let mut indeg = vec![0usize; self.len()];
        for vs in &self.succ {
            for &v in vs {
                indeg[v] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..self.len()).filter(|&u| indeg[u] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop() {
            removed += 1;
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        removed < self.len()
    }
}

pub fn nonempty_rows(ts: &ZTileSet) -> bool {
    TransitionGraph::new(ts).has_cycle()
}

/// Every closed walk of exactly `n` tiles, once per starting tile.
pub fn periodic_rows(ts: &ZTileSet, n: usize) -> Result<Vec<PeriodicRow>, VerifyError> {
    if n == 0 {
        return Err(VerifyError::ZeroPeriod);
    }
    let g = TransitionGraph::new(ts);
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    for start in 0..g.len() {
        path.clear();
        path.push(start);
        extend(&g, start, n, &mut path, &mut out);
    }
    Ok(out)
}

fn extend(
    g: &TransitionGraph,
    start: usize,
    n: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<PeriodicRow>,
) {
    let last = *path.last().expect("nonempty path");
    if path.len() == n {
        if g.successors(last).contains(&start) {
            out.push(PeriodicRow {
                cycle: path.clone(),
            });
        }
        return;
    }
    for &v in g.successors(last) {
        path.push(v);
        extend(g, start, n, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::karigen::{affine_tiles, ZTile, DEFAULT_OUT};
    use crate::rat::{rat, Rat};
    use std::collections::BTreeMap;

    #[test]
    fn identity_rows() {
        let id = affine_tiles(&Rat::one(), &Rat::zero(), 1, 1).unwrap();
        assert!(nonempty_rows(&id));
        assert_eq!(periodic_rows(&id, 1).unwrap().len(), 2);
        assert_eq!(periodic_rows(&id, 3).unwrap().len(), 8);
        assert_eq!(periodic_rows(&id, 0), Err(VerifyError::ZeroPeriod));
    }

    #[test]
    fn single_mismatched_tile_has_no_row() {
        let t = ZTile {
            top: 0,
            bottom: BTreeMap::from([(DEFAULT_OUT.to_string(), 0)]),
            left: HLabel::Atom(Rat::zero()),
            right: HLabel::Atom(Rat::one()),
        };
        let ts = ZTileSet::new(1, BTreeMap::from([(DEFAULT_OUT.to_string(), 1)]), vec![t]).unwrap();
        assert!(!nonempty_rows(&ts));
    }

    #[test]
    fn kari_period_two_rows_are_sound() {
        let low = affine_tiles(&rat(2, 3), &rat(-1, 3), 1, 1).unwrap();
        for row in periodic_rows(&low, 2).unwrap() {
            let top: u32 = row
                .cycle
                .iter()
                .map(|&i| u32::from(low.tiles()[i].top))
                .sum();
            let bottom: u32 = row
                .cycle
                .iter()
                .map(|&i| u32::from(low.tiles()[i].out()))
                .sum();
            assert_eq!(
                rat(2, 3) * Rat::new(top.into(), 2) - rat(1, 3),
                Rat::new(bottom.into(), 2)
            );
            if top == 1 {
                assert_eq!(bottom, 0);
            }
        }
    }
}

use std::collections::HashMap;

use serde::Serialize;

use super::oracle::{ball, GroupKey, WordOracle};
use super::{FGWord, FreeGroupError, Pattern};

/// Patterns on `{g, h}` with different letters, for every pair of distinct
/// words `g < h` of the ball naming the same group element. Configurations
/// avoiding them are exactly those constant on cosets, up to the radius.
pub fn perg_forbidden(
    oracle: &dyn WordOracle,
    radius: usize,
    alphabet: u32,
) -> Result<Vec<Pattern>, FreeGroupError> {
    if alphabet == 0 {
        return Err(FreeGroupError::ZeroAlphabet);
    }
    let words = ball(oracle, radius)?;
    let mut classes: HashMap<&GroupKey, Vec<&FGWord>> = HashMap::new();
    for (w, k) in &words {
        classes.entry(k).or_default().push(w);
    }
    let mut out = Vec::new();
    for (g, kg) in &words {
        for h in classes[kg].iter().filter(|h| **h > g) {
            for a in 0..alphabet {
                for b in (0..alphabet).filter(|&b| b != a) {
                    out.push(Pattern::new([(g.clone(), a), ((*h).clone(), b)])?);
                }
            }
        }
    }
    Ok(out)
}

/// Patterns `{λ ↦ 1, g ↦ 1}` over `{0, 1}` for every ball word `g` that is
/// not the identity of the group: configurations with at most one `1`.
pub fn xleq1_forbidden(
    oracle: &dyn WordOracle,
    radius: usize,
) -> Result<Vec<Pattern>, FreeGroupError> {
    let identity = oracle.key(&FGWord::identity())?;
    ball(oracle, radius)?
        .into_iter()
        .filter(|(_, k)| *k != identity)
        .map(|(g, _)| Pattern::new([(FGWord::identity(), 1), (g, 1)]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SftVerdict {
    /// A colouring of the ball elements, one representative word each.
    Witness(Pattern),
    NoColoringInBall,
}

/// Colours the group elements of the ball with `{0, 1, 2}` so that `g` and
/// `g·a` always differ, greedily in shortlex order. Every element has at
/// most two constrained neighbours, so three colours always suffice.
pub fn simple_sft_check(
    oracle: &dyn WordOracle,
    radius: usize,
    a: &FGWord,
) -> Result<SftVerdict, FreeGroupError> {
    if oracle.is_identity(a)? {
        return Err(FreeGroupError::TrivialConstraint);
    }
    let mut reps: Vec<(FGWord, GroupKey)> = Vec::new();
    let mut index: HashMap<GroupKey, usize> = HashMap::new();
    for (w, k) in ball(oracle, radius)? {
        if !index.contains_key(&k) {
            index.insert(k.clone(), reps.len());
            reps.push((w, k));
        }
    }
    let a_inv = a.inverse();
    let mut colour: Vec<Option<u32>> = vec![None; reps.len()];
    for i in 0..reps.len() {
        let g = &reps[i].0;
        let mut used = [false; 3];
        for step in [a, &a_inv] {
            if let Some(&j) = index.get(&oracle.key(&g.mul(step))?) {
                if let Some(c) = colour[j] {
                    used[c as usize] = true;
                }
            }
        }
        match (0..3).find(|&c| !used[c as usize]) {
            Some(c) => colour[i] = Some(c),
            None => return Ok(SftVerdict::NoColoringInBall),
        }
    }
    let cells = reps
        .into_iter()
        .zip(colour)
        .map(|((w, _), c)| (w, c.expect("every element coloured")));
    Ok(SftVerdict::Witness(Pattern::new(cells)?))
}

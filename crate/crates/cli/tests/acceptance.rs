//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kariforge::encoding::{cont_window, disc};
use kariforge::freegroup::{
    ball, empty_finite, perg_forbidden, xleq1_forbidden, AbelianOracle, FGWord, FreeOracle,
    Pattern, PatternProblem, DEFAULT_BUDGET,
};
use kariforge::karigen::{
    family_circuit, family_tiles, pamap_circuit, pamap_tiles, HLabel, TileOptions, ZTileSet,
};
use kariforge::pamaps::{presets, Letter, PAMap, Presentation, Word};
use kariforge::verify::{
    map_witness_row, mutation_suite, orbit_patch, patch_check, periodic_soundness,
    stacked_periodic_scan,
};
use kariforge::{Interval, IntervalSet, Rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fallible<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// A uniformly drawn fraction `p/q` in `[0, 1]` with `q ≤ 1000`.
fn random_unit(rng: &mut StdRng) -> Rat {
    let q: i64 = rng.gen_range(1..=1000);
    let p: i64 = rng.gen_range(0..=q);
    Rat::new(p, q)
}

fn kari_set(fast_path: bool) -> Result<ZTileSet, String> {
    fallible(pamap_tiles(&presets::kari_map(), TileOptions { fast_path }))
}

fn tag(label: &HLabel) -> Option<&str> {
    match label {
        HLabel::Tagged { tag, .. } => Some(tag.as_str()),
        // product sets wrap the labels of each component
        HLabel::Tuple(parts) if parts.len() == 1 => tag(&parts[0]),
        _ => None,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let gts = fallible(family_tiles(&presets::z_kari(), TileOptions::default()))?;
    let elapsed = start.elapsed();
    let mut by_tag: BTreeMap<&str, usize> = BTreeMap::new();
    for t in gts.tiles() {
        if tag(&t.left) != tag(&t.right) {
            return Err(format!("tile {t:?} mixes pieces"));
        }
        *by_tag.entry(tag(&t.left).unwrap_or("?")).or_default() += 1;
    }
    // "L" is the piece 4x/3 + 1/3, "R" the piece 2x/3 - 1/3
    let out = Command::new(env!("CARGO_BIN_EXE_kariforge"))
        .args(["gen", "--preset", "z-kari", "--out"])
        .arg(std::env::temp_dir().join("kariforge-acceptance-kari.json"))
        .output()
        .map_err(|e| e.to_string())?;
    let printed = String::from_utf8_lossy(&out.stdout).trim().to_string();
    check(
        gts.len() == 22
            && by_tag.get("R") == Some(&8)
            && by_tag.get("L") == Some(&14)
            && elapsed < Duration::from_secs(1)
            && printed == "22 tiles",
        format!(
            "{} tiles, split {by_tag:?}, {elapsed:.2?}, cli printed {printed:?}",
            gts.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst = Rat::zero();
    for n in [8i64, 64, 512] {
        let bound = Rat::new(1, 2 * n + 1);
        for _ in 0..200 {
            let y = random_unit(&mut rng);
            let err = (cont_window(&disc(&y, -n, n)) - &y).abs();
            if err > bound {
                return Err(format!("y = {y}, N = {n}: error {err} > {bound}"));
            }
            worst = worst.max(err * Rat::from_int(2 * n + 1));
        }
    }
    Ok(format!("600 samples, largest error/bound ratio {worst}"))
}

fn criterion_3() -> Outcome {
    let f = presets::kari_map();
    let mut rng = StdRng::seed_from_u64(3);
    let xs: Vec<Rat> = (0..1000).map(|_| random_unit(&mut rng)).collect();
    let mut report = Vec::new();
    for fast_path in [true, false] {
        let circuit = fallible(pamap_circuit(&f, TileOptions { fast_path }))?;
        let ts = fallible(circuit.compile())?;
        for x in &xs {
            map_witness_row(&circuit, &ts, &f, x, 64)
                .map_err(|e| format!("fast path {fast_path}, x = {x}: {e}"))?;
        }
        report.push(format!("{} tiles", ts.len()));
    }
    Ok(format!(
        "1000 inputs at N = 64 on sets of {}",
        report.join(" and ")
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let ts = kari_set(true)?;
    let f = presets::kari_map();
    let sound = fallible(periodic_soundness(&ts, &f, 10, false))?;
    let mutants = fallible(mutation_suite(&ts, &f, 6, 4))?;
    let elapsed = start.elapsed();
    check(
        sound.is_sound() && mutants.rate() >= 0.95 && elapsed < Duration::from_secs(60),
        format!(
            "{} rows, {} violations; {}/{} mutants detected",
            sound.rows_checked,
            sound.violations.len(),
            mutants.detected,
            mutants.total
        ),
    )
}

fn criterion_5() -> Outcome {
    let ts = kari_set(true)?;
    let finds = fallible(stacked_periodic_scan(&ts, 8, 6))?;
    let f = presets::kari_map();
    let mut periodic = Vec::new();
    for k in 1..=6 {
        if !fallible(f.periodic_points(k))?.is_empty() {
            periodic.push(k);
        }
    }
    let id = fallible(pamap_tiles(
        &PAMap::identity(f.space()),
        TileOptions::default(),
    ))?;
    let id_finds = fallible(stacked_periodic_scan(&id, 1, 1))?;
    let flags = id_finds.iter().any(|p| p.n == 1 && p.k == 1);
    check(
        finds.is_empty() && periodic.is_empty() && flags,
        format!(
            "{} finds on the 22 tiles, periodic powers {periodic:?}, identity flagged at (1,1): {flags}",
            finds.len()
        ),
    )
}

/// Normal form in `Z/3 * Z/2`: alternating syllables with reduced exponents.
fn free_product_normal_form(word: &Word) -> Vec<(char, u8)> {
    let mut out: Vec<(char, u8)> = Vec::new();
    for l in word.letters() {
        let (g, order) = if l.generator == "d" {
            ('d', 3)
        } else {
            ('e', 2)
        };
        let step = if l.inverse { order - 1 } else { 1 };
        match out.last_mut() {
            Some((h, exp)) if *h == g => {
                *exp = (*exp + step) % order;
                if *exp == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, step)),
        }
    }
    out
}

fn words_with_maps(p: &Presentation, max_len: usize) -> Result<Vec<(Word, PAMap)>, String> {
    let letters = p.letters();
    let id = PAMap::identity(p.space());
    let mut all = vec![(Word::identity(), id.clone())];
    let mut frontier: Vec<(Vec<Letter>, PAMap)> = vec![(Vec::new(), id)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for l in &letters {
                let mut v = w.clone();
                v.push(l.clone());
                let composed = fallible(m.compose(fallible(p.letter_map(l))?))?;
                all.push((Word::from_letters(v.clone()), composed.clone()));
                next.push((v, composed));
            }
        }
        frontier = next;
    }
    Ok(all)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let p = presets::psl2z();
    let word = |s: &str| fallible(p.parse_word(s));
    let identity = |s: &str| fallible(p.is_identity_word(&word(s)?));
    if !identity("ddd")? || !identity("ee")? {
        return Err("d^3 or e^2 is not the identity".into());
    }
    for k in 1..=10 {
        if identity(&"de".repeat(k))? {
            return Err(format!("(de)^{k} is the identity"));
        }
    }
    let words = words_with_maps(&p, 6)?;
    let mut by_map: Vec<(PAMap, Vec<(char, u8)>)> = Vec::new();
    for (w, m) in &words {
        let nf = free_product_normal_form(w);
        match by_map.iter().find(|(other, _)| other == m) {
            Some((_, seen)) if seen != &nf => {
                return Err(format!(
                    "{w} shares its map with a word of another normal form"
                ))
            }
            Some(_) => {}
            None => {
                if by_map.iter().any(|(_, seen)| seen == &nf) {
                    return Err(format!("{w} has a known normal form but a new map"));
                }
                by_map.push((m.clone(), nf));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(10),
        format!(
            "{} words up to length 6 give {} elements, one per normal form",
            words.len(),
            by_map.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let pres = presets::psl2z();
    let gts = fallible(family_tiles(&pres, TileOptions::default()))?;
    let circuit = fallible(family_circuit(&pres, TileOptions::default()))?;
    let patch = fallible(orbit_patch(&pres, &circuit, &Rat::new(1, 5), 2, 16))?;
    let ok = fallible(patch_check(&gts, &patch, |w| pres.word_apply(w)))?;
    check(
        ok,
        format!(
            "{} group elements, rows of {} tiles from a set of {}",
            patch.len(),
            patch.values().next().map_or(0, Vec::len),
            gts.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let v = presets::thompson_v();
    let dom = fallible(v.common_domain(3))?;
    let q = |s: &str| s.parse::<Rat>().expect("literal");
    let bound = IntervalSet::from_intervals(
        [("0", "1/9"), ("2/9", "1/3"), ("2/3", "7/9"), ("8/9", "1")]
            .into_iter()
            .map(|(lo, hi)| Interval::new(q(lo), q(hi)).expect("literal interval")),
    );
    let inside = dom
        .parts()
        .iter()
        .all(|part| bound.parts().iter().any(|b| b.contains_interval(part)));
    let points = ["0", "2/3", "8/9", "1"].map(|s| dom.contains(&q(s)));
    check(
        inside && points.iter().all(|&b| b),
        format!(
            "{} intervals inside the four allowed intervals, contains 0, 2/3, 8/9, 1: {points:?}",
            dom.parts().len()
        ),
    )
}

fn brute_force_empty(problem: &PatternProblem) -> Result<bool, String> {
    let radius = problem.support().iter().map(FGWord::len).max().unwrap_or(0);
    let cells: Vec<FGWord> = fallible(ball(&FreeOracle { rank: 1 }, radius))?
        .into_iter()
        .map(|(w, _)| w)
        .collect();
    let a = problem.alphabet() as usize;
    Ok((0..a.pow(cells.len() as u32)).all(|code| {
        let value = |w: &FGWord| {
            let i = cells.iter().position(|c| c == w).expect("cell in ball");
            ((code / a.pow(i as u32)) % a) as u32
        };
        problem
            .patterns()
            .iter()
            .any(|p| p.cells().iter().all(|(w, &l)| value(w) == l))
    }))
}

fn pattern(cells: &[(&str, u32)]) -> Result<Pattern, String> {
    let cells: Vec<(FGWord, u32)> = cells
        .iter()
        .map(|&(w, l)| Ok((fallible(w.parse())?, l)))
        .collect::<Result<_, String>>()?;
    fallible(Pattern::new(cells))
}

fn criterion_9() -> Outcome {
    let families = [
        PatternProblem::new(
            3,
            (0..3)
                .map(|a| pattern(&[("", a)]))
                .collect::<Result<_, _>>()?,
        ),
        PatternProblem::new(2, vec![pattern(&[("", 0)])?]),
        PatternProblem::new(
            2,
            (0..2)
                .map(|a| pattern(&[("", a), ("x1", a)]))
                .collect::<Result<_, _>>()?,
        ),
    ];
    let mut verdicts = Vec::new();
    for problem in families {
        let problem = fallible(problem)?;
        let fast = fallible(empty_finite(&problem, DEFAULT_BUDGET))?;
        if fast != brute_force_empty(&problem)? {
            return Err(format!("disagreement with brute force on {problem:?}"));
        }
        verdicts.push(fast);
    }
    let xleq1 = fallible(PatternProblem::new(
        2,
        fallible(xleq1_forbidden(&FreeOracle { rank: 2 }, 2))?,
    ))?;
    let xleq1_empty = fallible(empty_finite(&xleq1, DEFAULT_BUDGET))?;
    let perg = fallible(perg_forbidden(&AbelianOracle { rank: 2 }, 2, 2))?;
    let commutators = [
        pattern(&[("x1x2", 0), ("x2x1", 1)])?,
        pattern(&[("x1x2", 1), ("x2x1", 0)])?,
    ];
    let has_commutators = commutators.iter().all(|c| perg.contains(c));
    check(
        !xleq1_empty && has_commutators,
        format!(
            "example verdicts {verdicts:?} match brute force; xleq1 on F2 radius 2 empty: {xleq1_empty}; \
             Z^2 perg has {} patterns with both commutator patterns: {has_commutators}",
            perg.len()
        ),
    )
}

fn main() -> ExitCode {
    // each criterion with its time limit in seconds
    let criteria: [(fn() -> Outcome, u64); 9] = [
        (criterion_1, 1),
        (criterion_2, 5),
        (criterion_3, 30),
        (criterion_4, 60),
        (criterion_5, 60),
        (criterion_6, 10),
        (criterion_7, 30),
        (criterion_8, 30),
        (criterion_9, 10),
    ];
    let mut failed = 0;
    for (i, (criterion, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({detail}; {elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

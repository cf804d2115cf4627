use std::collections::HashMap;

use kariforge::pamaps::{presets, AffinePiece, Letter, PAMap, Presentation, Space, Word};
use kariforge::{Interval, Rat};
use proptest::prelude::*;

/// Syllables `(generator, exponent)` of the reduced form in `Z/3 * Z/2`,
/// with `d` of order 3 and `e` of order 2.
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

/// Every word of length at most `max_len` with its map, each built from
/// its prefix by one composition.
fn all_words(p: &Presentation, max_len: usize) -> Vec<(Word, PAMap)> {
    let letters = [
        Letter::new("d", false),
        Letter::new("d", true),
        Letter::new("e", false),
        Letter::new("e", true),
    ];
    let id = PAMap::identity(p.space());
    let mut words = vec![(Word::identity(), id.clone())];
    let mut frontier = vec![(Vec::<Letter>::new(), id)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for l in &letters {
                let mut v = w.clone();
                v.push(l.clone());
                let composed = m.compose(p.letter_map(l).unwrap()).unwrap();
                words.push((Word::from_letters(v.clone()), composed.clone()));
                next.push((v, composed));
            }
        }
        frontier = next;
    }
    words
}

#[test]
fn psl2z_matches_free_product_up_to_length_six() {
    let p = presets::psl2z();
    let id = PAMap::identity(p.space());
    let mut by_map: HashMap<PAMap, Vec<(char, u8)>> = HashMap::new();
    let mut by_form: HashMap<Vec<(char, u8)>, PAMap> = HashMap::new();
    for (w, m) in all_words(&p, 6) {
        let nf = free_product_normal_form(&w);
        assert_eq!(m.equals(&id), nf.is_empty(), "{w}");
        if w.len() <= 3 {
            assert_eq!(p.word_apply(&w).unwrap(), m);
            assert_eq!(p.is_identity_word(&w).unwrap(), nf.is_empty(), "{w}");
        }
        assert_eq!(
            by_map.entry(m.clone()).or_insert_with(|| nf.clone()),
            &nf,
            "{w}"
        );
        assert_eq!(by_form.entry(nf).or_insert_with(|| m.clone()), &m, "{w}");
    }
}

#[test]
fn common_domain_shrinks() {
    for p in [presets::thompson_v(), presets::z_kari(), presets::psl2z()] {
        let doms: Vec<_> = (0..4).map(|d| p.common_domain(d).unwrap()).collect();
        for pair in doms.windows(2) {
            assert!(pair[1].is_subset(&pair[0]));
        }
    }
}

/// An increasing piecewise affine bijection between two subintervals of
/// `[0, 1]`, from sorted breakpoint fractions.
fn increasing_map(cuts: Vec<(i64, i64)>, lo: i64, hi: i64) -> PAMap {
    let space = Space::new(Rat::one(), false).unwrap();
    let span = Rat::new(hi - lo, 64);
    let start = Rat::new(lo, 64);
    let mut xs = vec![Rat::zero()];
    let mut ys = vec![Rat::zero()];
    for (x, y) in cuts {
        xs.push(Rat::new(x, 100));
        ys.push(Rat::new(y, 100));
    }
    xs.push(Rat::one());
    ys.push(Rat::one());
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let n = xs.len().min(ys.len());
    xs.truncate(n - 1);
    xs.push(Rat::one());
    ys.truncate(n - 1);
    ys.push(Rat::one());
    let pieces = (0..n - 1)
        .map(|i| {
            let (x0, x1) = (&xs[i] * &span + &start, &xs[i + 1] * &span + &start);
            let (y0, y1) = (ys[i].clone(), ys[i + 1].clone());
            let slope = (&y1 - &y0) / (&x1 - &x0);
            let offset = &y0 - &slope * &x0;
            AffinePiece::new(Interval::new(x0, x1).unwrap(), slope, offset)
        })
        .collect();
    PAMap::new(space, pieces).unwrap()
}

fn arb_map() -> impl Strategy<Value = PAMap> {
    (
        proptest::collection::vec((1i64..100, 1i64..100), 0..4),
        0i64..20,
        40i64..=64,
    )
        .prop_map(|(cuts, lo, hi)| increasing_map(cuts, lo, hi))
}

fn identity_on(f: &PAMap, parts: &[Interval]) -> PAMap {
    let pieces = parts
        .iter()
        .map(|i| AffinePiece::new(i.clone(), Rat::one(), Rat::zero()))
        .collect();
    PAMap::new(f.space().clone(), pieces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_with_inverse_is_identity_on_range(f in arb_map()) {
        let back = f.compose(&f.invert().unwrap()).unwrap();
        prop_assert!(back.equals(&identity_on(&f, f.range().parts())));
        let forth = f.invert().unwrap().compose(&f).unwrap();
        prop_assert!(forth.equals(&identity_on(&f, f.domain().parts())));
    }

    #[test]
    fn equality_is_a_congruence(f in arb_map(), h in arb_map()) {
        let g = f.compose(&f.invert().unwrap().compose(&f).unwrap()).unwrap();
        prop_assert!(f.equals(&g));
        prop_assert!(h.compose(&f).unwrap().equals(&h.compose(&g).unwrap()));
        prop_assert!(f.compose(&h).unwrap().equals(&g.compose(&h).unwrap()));
    }

    #[test]
    fn periodic_points_are_fixed_points_of_powers(f in arb_map(), k in 1usize..4) {
        prop_assert_eq!(
            f.periodic_points(k).unwrap().parts().is_empty(),
            f.power(k).unwrap().fixed_points().parts().is_empty()
        );
    }

    #[test]
    fn values_stay_canonical(f in arb_map(), num in 0i64..=64) {
        let x = Rat::new(num, 64);
        if let Ok(y) = f.apply(&x) {
            let reparsed: Rat = y.to_string().parse().unwrap();
            prop_assert_eq!(reparsed.to_string(), y.to_string());
            prop_assert!(f.invert().unwrap().apply(&y).unwrap() == x);
        }
    }
}

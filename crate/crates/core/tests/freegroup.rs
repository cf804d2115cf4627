use kariforge::freegroup::{
    ball, empty_finite, in_language, simple_sft_check, xleq1_forbidden, AbelianOracle, FGWord,
    FreeOracle, Pattern, PatternProblem, SftVerdict, DEFAULT_BUDGET,
};
use proptest::prelude::*;

/// Emptiness by trying every colouring of the whole ball that contains the
/// supports, instead of only the supports themselves.
fn brute_force_empty(problem: &PatternProblem, rank: usize) -> bool {
    let radius = problem.support().iter().map(FGWord::len).max().unwrap_or(0);
    let cells: Vec<FGWord> = ball(&FreeOracle { rank }, radius)
        .unwrap()
        .into_iter()
        .map(|(w, _)| w)
        .collect();
    let a = problem.alphabet() as usize;
    let total = a.pow(cells.len() as u32);
    (0..total).all(|code| {
        let value = |w: &FGWord| {
            let i = cells.iter().position(|c| c == w).unwrap();
            ((code / a.pow(i as u32)) % a) as u32
        };
        problem
            .patterns()
            .iter()
            .any(|p| p.cells().iter().all(|(w, &l)| value(w) == l))
    })
}

fn pattern(cells: &[(&str, u32)]) -> Pattern {
    Pattern::new(cells.iter().map(|&(w, l)| (w.parse().unwrap(), l))).unwrap()
}

fn example_families() -> Vec<(PatternProblem, bool)> {
    vec![
        (
            PatternProblem::new(3, (0..3).map(|a| pattern(&[("", a)])).collect()).unwrap(),
            true,
        ),
        (
            PatternProblem::new(2, vec![pattern(&[("", 0)])]).unwrap(),
            false,
        ),
        (
            PatternProblem::new(2, (0..2).map(|a| pattern(&[("", a), ("x1", a)])).collect())
                .unwrap(),
            false,
        ),
    ]
}

#[test]
fn example_families_match_brute_force() {
    for (problem, expected) in example_families() {
        let verdict = empty_finite(&problem, DEFAULT_BUDGET).unwrap();
        assert_eq!(verdict, expected);
        assert_eq!(verdict, brute_force_empty(&problem, 1));
    }
}

#[test]
fn xleq1_over_f2_is_nonempty() {
    let ps = xleq1_forbidden(&FreeOracle { rank: 2 }, 2).unwrap();
    assert_eq!(ps.len(), 16);
    let problem = PatternProblem::new(2, ps).unwrap();
    assert!(!empty_finite(&problem, DEFAULT_BUDGET).unwrap());
}

#[test]
fn z2_colouring_along_a_diagonal() {
    let oracle = AbelianOracle { rank: 2 };
    let a: FGWord = "x1x2".parse().unwrap();
    let SftVerdict::Witness(c) = simple_sft_check(&oracle, 3, &a).unwrap() else {
        panic!("no colouring");
    };
    // 25 elements of Z² lie within word length 3
    assert_eq!(c.len(), 25);
}

fn arb_word() -> impl Strategy<Value = FGWord> {
    proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..3)
        .prop_map(FGWord::from_letters)
}

fn arb_pattern(alphabet: u32) -> impl Strategy<Value = Pattern> {
    proptest::collection::btree_map(arb_word(), 0..alphabet, 1..3)
        .prop_map(|cells| Pattern::new(cells).unwrap())
}

fn arb_problem() -> impl Strategy<Value = PatternProblem> {
    (1u32..=3).prop_flat_map(|a| {
        proptest::collection::vec(arb_pattern(a), 0..5)
            .prop_map(move |ps| PatternProblem::new(a, ps).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_brute_force(problem in arb_problem()) {
        prop_assume!(problem.support().iter().all(|w| w.len() <= 1));
        prop_assert_eq!(
            empty_finite(&problem, DEFAULT_BUDGET).unwrap(),
            brute_force_empty(&problem, 2)
        );
    }

    #[test]
    fn adding_patterns_keeps_emptiness(problem in arb_problem(), extra in arb_pattern(1)) {
        if empty_finite(&problem, DEFAULT_BUDGET).unwrap() {
            let bigger = problem.with_patterns([extra]).unwrap();
            prop_assert!(empty_finite(&bigger, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn translation_invariance(problem in arb_problem(), g in arb_word()) {
        let moved = PatternProblem::new(
            problem.alphabet(),
            problem.patterns().iter().map(|p| p.translate(&g)).collect(),
        )
        .unwrap();
        prop_assert_eq!(
            empty_finite(&problem, DEFAULT_BUDGET).unwrap(),
            empty_finite(&moved, DEFAULT_BUDGET).unwrap()
        );
    }

    #[test]
    fn full_support_patterns_are_in_the_language(problem in arb_problem()) {
        let support = problem.support();
        for p in problem.patterns().iter().filter(|p| p.support().eq(support.iter())) {
            prop_assert!(in_language(p, &problem, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn all_zero_survives_xleq1(radius in 0usize..3, rank in 1usize..3) {
        let ps = xleq1_forbidden(&FreeOracle { rank }, radius).unwrap();
        prop_assert!(ps.iter().all(|p| p.cells().values().any(|&l| l != 0)));
    }
}

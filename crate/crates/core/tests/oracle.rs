mod common;

use alc::{Budget, Game, OracleError, Outcome, SearchMode, SharedSolveCache, Solver, Stone};
use common::{cells, game, Brute};
use proptest::prelude::*;

fn letter(o: Outcome) -> char {
    o.to_string().chars().next().unwrap()
}

#[test]
fn mover_examples() {
    let mut s = Solver::new();
    assert!(s.wins_moving_first(&game("ox"), Stone::Black).unwrap());
    assert!(!s.wins_moving_first(&game("oxoxox"), Stone::Black).unwrap());
    assert!(s.wins_moving_first(&game("oxox"), Stone::White).unwrap());
}

#[test]
fn outcome_examples() {
    let mut s = Solver::new();
    let mut brute = Brute::default();
    assert_eq!(s.outcome(&Game::empty()).unwrap(), Outcome::P);
    assert_eq!(s.outcome(&game("oo8")).unwrap(), Outcome::L);
    let q = s.outcome(&game("o5 + a2")).unwrap();
    assert_ne!(q, Outcome::L);
    assert_eq!(letter(q), brute.outcome("oxoxo-ox"));
    assert_eq!(q, Outcome::N);
}

#[test]
fn equivalence_examples() {
    let mut s = Solver::new();
    assert!(s.equivalent(&game("oxoo"), &game("xxo + xo")).unwrap());
    assert!(s.equivalent(&game("ooxoo"), &game("oox")).unwrap());
    assert!(s.equivalent(&game("ox"), &game("ox")).unwrap());
    assert!(!s.equivalent(&game("ox"), &Game::empty()).unwrap());
    let mut brute = Brute::default();
    assert!(brute.equivalent("oxoo", "xxo-xo"));
    assert!(brute.equivalent("ooxoo", "oox"));
}

#[test]
fn alternating_outcomes_agree_with_brute_force() {
    let mut s = Solver::new();
    let mut brute = Brute::default();
    for len in 1..=12 {
        let g = game(&format!("a{}", 2 * (len / 2).max(1)));
        assert_eq!(letter(s.outcome(&g).unwrap()), brute.outcome(&cells(&g)), "{g}");
    }
}

#[test]
fn budgets_are_enforced() {
    let err = Solver::new()
        .budget(Budget::stones(10))
        .outcome(&game("a12"))
        .unwrap_err();
    assert_eq!(err, OracleError::StoneBudget { stones: 12, limit: 10 });
    let capped = Budget {
        max_nodes: Some(5),
        ..Budget::stones(26)
    };
    let err = Solver::new().budget(capped).outcome(&game("a16")).unwrap_err();
    assert!(matches!(err, OracleError::NodeBudget { limit: 5 }));
}

#[test]
fn shared_cache_across_threads() {
    let cache = SharedSolveCache::new();
    let starts = ["a10", "a12", "o9 + a4", "oo8 + xxo"];
    let got: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .iter()
            .map(|s| {
                let cache = &cache;
                scope.spawn(move || Solver::with_memo(cache).outcome(&game(s)).unwrap())
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut fresh = Solver::new();
    for (s, o) in starts.iter().zip(got) {
        assert_eq!(fresh.outcome(&game(s)).unwrap(), o, "{s}");
    }
}

proptest! {
    #[test]
    fn outcomes_agree_with_brute_force(
        s in common::raw_position(13)
    ) {
        let g = game(&s);
        let mut brute = Brute::default();
        let mut counted = Solver::new();
        let mut fast = Solver::new().mode(SearchMode::Fast);
        let want = brute.outcome(&s);
        prop_assert_eq!(letter(counted.outcome(&g).unwrap()), want);
        prop_assert_eq!(letter(fast.outcome(&g).unwrap()), want);
    }
}

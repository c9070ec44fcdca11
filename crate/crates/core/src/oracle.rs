//! Exact outcome solver.
//!
//! Plain memoized minimax over whole games: no sum decomposition, no
//! rewriting, no game values. Everything else in the crate is checked
//! against it.

use std::fmt;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::game::Game;
use crate::part::Stone;

/// Normal-play outcome class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Whoever moves first loses.
    P,
    /// Whoever moves first wins.
    N,
    /// Left wins either way.
    L,
    /// Right wins either way.
    R,
}

impl Outcome {
    pub fn from_wins(left_first: bool, right_first: bool) -> Outcome {
        match (left_first, right_first) {
            (false, false) => Outcome::P,
            (true, true) => Outcome::N,
            (true, false) => Outcome::L,
            (false, true) => Outcome::R,
        }
    }

    /// The outcome of the negated game.
    pub fn swapped(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            other => other,
        }
    }

    pub fn left_wins_first(self) -> bool {
        matches!(self, Outcome::N | Outcome::L)
    }

    pub fn left_wins_second(self) -> bool {
        matches!(self, Outcome::P | Outcome::L)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::P => "P",
            Outcome::N => "N",
            Outcome::L => "L",
            Outcome::R => "R",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{stones} stones exceed the solver budget of {limit}")]
    StoneBudget { stones: usize, limit: usize },
    #[error("search exceeded the node budget of {limit}")]
    NodeBudget { limit: u64 },
}

/// Memo table from `(game, mover)` to "mover wins".
pub trait SolveMemo {
    fn lookup(&self, game: &Game, mover: Stone) -> Option<bool>;
    fn store(&mut self, game: Game, mover: Stone, wins: bool);
    fn entries(&self) -> usize;
}

fn slot(mover: Stone) -> usize {
    match mover {
        Stone::White => 0,
        Stone::Black => 1,
    }
}

/// Single-threaded memo table.
#[derive(Debug, Default, Clone)]
pub struct SolveCache {
    tables: [FxHashMap<Game, bool>; 2],
}

impl SolveCache {
    pub fn new() -> SolveCache {
        SolveCache::default()
    }
}

impl SolveMemo for SolveCache {
    fn lookup(&self, game: &Game, mover: Stone) -> Option<bool> {
        self.tables[slot(mover)].get(game).copied()
    }

    fn store(&mut self, game: Game, mover: Stone, wins: bool) {
        let prev = self.tables[slot(mover)].insert(game, wins);
        debug_assert!(prev.is_none_or(|p| p == wins));
    }

    fn entries(&self) -> usize {
        self.tables.iter().map(|t| t.len()).sum()
    }
}

/// Memo table shared between threads. Inserts are idempotent: a key only
/// ever maps to one value, so racing writers agree.
#[derive(Debug, Default)]
pub struct SharedSolveCache {
    tables: [DashMap<Game, bool, FxBuildHasher>; 2],
}

impl SharedSolveCache {
    pub fn new() -> SharedSolveCache {
        SharedSolveCache::default()
    }
}

impl SolveMemo for &SharedSolveCache {
    fn lookup(&self, game: &Game, mover: Stone) -> Option<bool> {
        self.tables[slot(mover)].get(game).map(|v| *v)
    }

    fn store(&mut self, game: Game, mover: Stone, wins: bool) {
        self.tables[slot(mover)].insert(game, wins);
    }

    fn entries(&self) -> usize {
        self.tables.iter().map(|t| t.len()).sum()
    }
}

/// Limits beyond which the solver refuses to work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_stones: usize,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub const DEFAULT_STONES: usize = 26;

    pub fn stones(max_stones: usize) -> Budget {
        Budget {
            max_stones,
            max_nodes: None,
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::stones(Budget::DEFAULT_STONES)
    }
}

/// How moves are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Game-core move order, nothing else.
    #[default]
    Counted,
    /// Children already in the memo are consulted first. Same answers,
    /// fewer expansions.
    Fast,
}

/// Memoized solver.
pub struct Solver<M: SolveMemo = SolveCache> {
    memo: M,
    budget: Budget,
    mode: SearchMode,
    expanded: u64,
}

impl Default for Solver<SolveCache> {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver<SolveCache> {
    pub fn new() -> Solver<SolveCache> {
        Solver::with_memo(SolveCache::new())
    }
}

impl<M: SolveMemo> Solver<M> {
    pub fn with_memo(memo: M) -> Solver<M> {
        Solver {
            memo,
            budget: Budget::default(),
            mode: SearchMode::default(),
            expanded: 0,
        }
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub fn memo(&self) -> &M {
        &self.memo
    }

    pub fn into_memo(self) -> M {
        self.memo
    }

    /// Positions expanded (memo misses) so far.
    pub fn expanded(&self) -> u64 {
        self.expanded
    }

    fn check_stones(&self, stones: usize) -> Result<(), OracleError> {
        if stones > self.budget.max_stones {
            Err(OracleError::StoneBudget {
                stones,
                limit: self.budget.max_stones,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `player`, moving first on `game`, has a winning strategy.
    pub fn wins_moving_first(&mut self, game: &Game, player: Stone) -> Result<bool, OracleError> {
        self.check_stones(game.stone_count())?;
        self.search(game, player)
    }

    fn search(&mut self, game: &Game, mover: Stone) -> Result<bool, OracleError> {
        if let Some(wins) = self.memo.lookup(game, mover) {
            return Ok(wins);
        }
        self.expanded += 1;
        if let Some(limit) = self.budget.max_nodes {
            if self.expanded > limit {
                return Err(OracleError::NodeBudget { limit });
            }
        }
        let opponent = mover.opponent();
        let children: Vec<Game> = game.children(mover).map(|(_, child)| child).collect();
        let mut wins = false;
        if self.mode == SearchMode::Fast {
            wins = children.iter().any(|c| self.memo.lookup(c, opponent) == Some(false));
        }
        if !wins {
            for child in &children {
                if !self.search(child, opponent)? {
                    wins = true;
                    break;
                }
            }
        }
        self.memo.store(game.clone(), mover, wins);
        Ok(wins)
    }

    pub fn outcome(&mut self, game: &Game) -> Result<Outcome, OracleError> {
        let left = self.wins_moving_first(game, Stone::LEFT)?;
        let right = self.wins_moving_first(game, Stone::RIGHT)?;
        Ok(Outcome::from_wins(left, right))
    }

    /// `g` and `h` are equivalent iff `g + (-h)` is a P-position.
    pub fn equivalent(&mut self, g: &Game, h: &Game) -> Result<bool, OracleError> {
        let diff = g.union(&h.negate());
        Ok(self.outcome(&diff)? == Outcome::P)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_position;
    use proptest::prelude::*;

    fn g(s: &str) -> Game {
        parse_position(s).unwrap()
    }

    /// Unmemoized minimax, used to cross-check the solver on small games.
    fn brute(game: &Game, mover: Stone) -> bool {
        game.children(mover).any(|(_, child)| !brute(&child, mover.opponent()))
    }

    #[test]
    fn wins_moving_first_examples() {
        let mut s = Solver::new();
        assert!(s.wins_moving_first(&g("ox"), Stone::Black).unwrap());
        assert!(!s.wins_moving_first(&g("oxoxox"), Stone::Black).unwrap());
        assert!(s.wins_moving_first(&g("oxox"), Stone::White).unwrap());
        assert!(brute(&g("oxox"), Stone::White));
    }

    #[test]
    fn outcome_examples() {
        let mut s = Solver::new();
        assert_eq!(s.outcome(&Game::empty()).unwrap(), Outcome::P);
        assert_eq!(s.outcome(&g("oo8")).unwrap(), Outcome::L);
        assert_eq!(s.outcome(&g("a6")).unwrap(), Outcome::P);
        // Regression: o5 + a2 is not a Left win moving second.
        let q = s.outcome(&g("o5 + a2")).unwrap();
        assert_ne!(q, Outcome::L);
        assert_eq!(q, Outcome::N);
    }

    #[test]
    fn equivalence_examples() {
        let mut s = Solver::new();
        assert!(s.equivalent(&g("oxoo"), &g("xxo + xo")).unwrap());
        assert!(s.equivalent(&g("ooxoo"), &g("oox")).unwrap());
        assert!(s.equivalent(&g("ox"), &g("ox")).unwrap());
        assert!(!s.equivalent(&g("ox"), &Game::empty()).unwrap());
    }

    #[test]
    fn stone_budget() {
        let mut s = Solver::new().budget(Budget::stones(10));
        assert_eq!(
            s.outcome(&g("a12")),
            Err(OracleError::StoneBudget { stones: 12, limit: 10 })
        );
        assert!(s.outcome(&g("a10")).is_ok());
    }

    #[test]
    fn node_budget() {
        let mut s = Solver::new().budget(Budget {
            max_stones: 26,
            max_nodes: Some(5),
        });
        assert_eq!(s.outcome(&g("a12")), Err(OracleError::NodeBudget { limit: 5 }));
    }

    #[test]
    fn shared_cache_matches_single_threaded() {
        let shared = SharedSolveCache::new();
        let games = ["a10", "o9", "oo8 + xxo", "a4 + oox + o5"].map(g);
        std::thread::scope(|scope| {
            for game in &games {
                let shared = &shared;
                scope.spawn(move || {
                    Solver::with_memo(shared).outcome(game).unwrap();
                });
            }
        });
        let mut reference = Solver::new();
        let mut warm = Solver::with_memo(&shared);
        for game in &games {
            assert_eq!(warm.outcome(game).unwrap(), reference.outcome(game).unwrap());
        }
    }

    fn arb_small_game(max_len: usize) -> impl Strategy<Value = Game> {
        prop::collection::vec(prop::collection::vec(any::<bool>(), 2..max_len), 0..3).prop_map(|parts| {
            Game::new(parts.into_iter().map(|bits| {
                let stones: Vec<Stone> = bits
                    .into_iter()
                    .map(|b| if b { Stone::Black } else { Stone::White })
                    .collect();
                crate::Part::from_stones(&stones).unwrap()
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn memo_agrees_with_brute_force(game in arb_small_game(6)) {
            let mut s = Solver::new();
            for mover in [Stone::Black, Stone::White] {
                prop_assert_eq!(s.wins_moving_first(&game, mover).unwrap(), brute(&game, mover));
            }
        }

        #[test]
        fn negation_swaps_outcome(game in arb_small_game(8)) {
            let mut s = Solver::new();
            prop_assert_eq!(s.outcome(&game.negate()).unwrap(), s.outcome(&game).unwrap().swapped());
        }

        #[test]
        fn game_plus_negative_is_p(game in arb_small_game(7)) {
            let mut s = Solver::new().budget(Budget::stones(40));
            prop_assert_eq!(s.outcome(&game.union(&game.negate())).unwrap(), Outcome::P);
        }

        #[test]
        fn adding_a6_changes_nothing(game in arb_small_game(6)) {
            let mut s = Solver::new().budget(Budget::stones(40));
            prop_assert!(s.equivalent(&game.union(&g("oxoxox")), &game).unwrap());
        }

        #[test]
        fn fast_mode_and_warm_cache_agree(game in arb_small_game(8)) {
            let mut cold = Solver::new();
            let mut fast = Solver::new().mode(SearchMode::Fast);
            let expected = cold.outcome(&game).unwrap();
            prop_assert_eq!(fast.outcome(&game).unwrap(), expected);
            prop_assert_eq!(fast.outcome(&game).unwrap(), expected);
            prop_assert_eq!(cold.outcome(&game).unwrap(), expected);
        }

        #[test]
        fn left_plus_left_or_next_stays_left_first(h in arb_small_game(7), k in arb_small_game(7)) {
            let mut s = Solver::new().budget(Budget::stones(40));
            let oh = s.outcome(&h).unwrap();
            let ok = s.outcome(&k).unwrap();
            if oh == Outcome::L && ok.left_wins_first() {
                prop_assert!(s.outcome(&h.union(&k)).unwrap().left_wins_first());
            }
        }
    }
}

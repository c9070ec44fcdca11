//! Exhaustive strategy verification and the bounded theorem checks.
//!
//! Left follows the rule cascade; Right tries every move. Both sides see
//! standard forms only: each move is followed by normalization.

use std::io::{self, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::asf::{normalize, rule_table, Lhs};
use crate::game::{Game, Move};
use crate::oracle::{Budget, OracleError, Outcome, Solver};
use crate::part::{Part, Stone};
use crate::strategy::{cascade, choose_left_move, Ruleset, StrategyError};
use crate::taxonomy::{enumerate_s_games, in_ll, in_u, ll_games, s_class_of, u_parts, Family};

/// Result of verifying one start `a(2n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyStats {
    pub n: usize,
    pub left_wins: bool,
    pub left_nodes: usize,
    pub right_nodes: usize,
    pub elapsed: Duration,
}

/// Memo key: up to eight interned part ids packed into one word, or the
/// game itself when it has more parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Packed(u128),
    Full(Box<Game>),
}

#[derive(Debug, Default)]
struct Interner {
    ids: FxHashMap<Part, u16>,
}

impl Interner {
    fn key(&mut self, g: &Game) -> Key {
        if g.num_parts() > 8 || self.ids.len() >= u16::MAX as usize - 1 {
            return Key::Full(Box::new(g.clone()));
        }
        let mut packed = 0u128;
        for p in g.parts() {
            let next = self.ids.len() as u16 + 1;
            let id = *self.ids.entry(*p).or_insert(next);
            packed = (packed << 16) | id as u128;
        }
        Key::Packed(packed)
    }
}

/// Memo tables of one verification run.
#[derive(Debug, Default)]
pub struct Verifier {
    ruleset: Ruleset,
    parts: Interner,
    left: FxHashMap<Key, bool>,
    right: FxHashMap<Key, bool>,
}

impl Verifier {
    pub fn new(ruleset: Ruleset) -> Verifier {
        Verifier {
            ruleset,
            ..Verifier::default()
        }
    }

    /// Distinct Left-to-move games solved so far.
    pub fn left_nodes(&self) -> usize {
        self.left.len()
    }

    pub fn right_nodes(&self) -> usize {
        self.right.len()
    }

    /// Whether Left, following the strategy, wins the normalized game
    /// `g` with `mover` to play.
    pub fn verify_game(&mut self, g: &Game, mover: Stone) -> Result<bool, StrategyError> {
        match mover {
            Stone::Black => self.left_to_move(g),
            Stone::White => self.right_to_move(g),
        }
    }

    fn left_to_move(&mut self, g: &Game) -> Result<bool, StrategyError> {
        let key = self.parts.key(g);
        if let Some(&won) = self.left.get(&key) {
            return Ok(won);
        }
        let won = if g.is_empty() {
            false
        } else {
            let m = cascade(g, self.ruleset)?;
            self.right_to_move(&m.result)?
        };
        self.left.insert(key, won);
        Ok(won)
    }

    fn right_to_move(&mut self, g: &Game) -> Result<bool, StrategyError> {
        let key = self.parts.key(g);
        if let Some(&won) = self.right.get(&key) {
            return Ok(won);
        }
        if ll_games().contains(g) {
            let won = ll_certified(g);
            self.right.insert(key, won);
            return Ok(won);
        }
        let mut won = true;
        for (_, child) in g.children(Stone::RIGHT) {
            if !self.left_to_move(&normalize(&child))? {
                won = false;
                break;
            }
        }
        self.right.insert(key, won);
        Ok(won)
    }
}

/// The LL games are leaves: the strategy has no rows for what Right can
/// reach from them, so each is settled once by the oracle instead.
fn ll_certified(g: &Game) -> bool {
    static VERDICTS: OnceLock<Vec<bool>> = OnceLock::new();
    let verdicts = VERDICTS.get_or_init(|| {
        let mut solver = Solver::new();
        ll_games().iter().map(|h| solver.outcome(h) == Ok(Outcome::L)).collect()
    });
    ll_games().iter().position(|h| h == g).is_some_and(|i| verdicts[i])
}

/// Verifies `a(2n)` (in standard form) with Left to move and fresh memo
/// tables.
pub fn verify_start(n: usize, ruleset: Ruleset) -> Result<VerifyStats, StrategyError> {
    let start =
        Game::new([Part::alternating(Stone::White, 2 * n).map_err(|_| StrategyError::NotInScope(Game::empty()))?]);
    let g = normalize(&start);
    if g.is_empty() {
        return Err(StrategyError::NotInScope(start));
    }
    let began = Instant::now();
    let mut v = Verifier::new(ruleset);
    let left_wins = v.verify_game(&g, Stone::LEFT)?;
    Ok(VerifyStats {
        n,
        left_wins,
        left_nodes: v.left_nodes(),
        right_nodes: v.right_nodes(),
        elapsed: began.elapsed(),
    })
}

/// Verifies every listed half-length, using up to `jobs` threads. Results
/// come back in input order.
pub fn verify_many(ns: &[usize], ruleset: Ruleset, jobs: usize) -> Vec<Result<VerifyStats, StrategyError>> {
    let slots: Vec<Mutex<Option<Result<VerifyStats, StrategyError>>>> = ns.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(ns.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = ns.get(i) else { break };
                let r = verify_start(n, ruleset);
                *slots[i].lock().expect("result slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().expect("result slot").expect("every start ran"))
        .collect()
}

pub const CSV_HEADER: &str = "n,runtime_seconds,left_nodes,right_nodes";

pub fn write_csv<W: Write>(mut out: W, rows: &[VerifyStats]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.2},{},{}",
            r.n,
            r.elapsed.as_secs_f64(),
            r.left_nodes,
            r.right_nodes
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    RightToS0,
    LeftFromS0,
    UClosure,
    AsfSoundness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub game: Game,
    pub mv: Option<Move>,
    pub result: Option<Game>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
}

impl TheoremReport {
    fn new(theorem: Theorem) -> TheoremReport {
        TheoremReport {
            theorem,
            instances_checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every Right move on every S1 or S2 game lands in S0.
pub fn check_theorem_right(max_stones: usize, max_parts: usize) -> TheoremReport {
    let mut report = TheoremReport::new(Theorem::RightToS0);
    for g in enumerate_s_games(max_stones, max_parts) {
        if !s_class_of(&g).is_target() {
            continue;
        }
        for (mv, child) in g.children(Stone::RIGHT) {
            report.instances_checked += 1;
            let h = normalize(&child);
            if !s_class_of(&h).in_s0() {
                report.failures.push(Failure {
                    game: g.clone(),
                    mv: Some(mv),
                    result: Some(h),
                    note: "Right leaves S0".into(),
                });
            }
        }
    }
    report
}

/// On every S0 game the strategy reaches S1, S2, LL or 0.
pub fn check_theorem_left(max_stones: usize, max_parts: usize, ruleset: Ruleset) -> TheoremReport {
    let mut report = TheoremReport::new(Theorem::LeftFromS0);
    for g in enumerate_s_games(max_stones, max_parts) {
        report.instances_checked += 1;
        match choose_left_move(&g, ruleset) {
            Ok(m) => {
                let h = &m.result;
                if !(h.is_empty() || s_class_of(h).is_target() || in_ll(h)) {
                    report.failures.push(Failure {
                        game: g.clone(),
                        mv: Some(m.mv),
                        result: Some(h.clone()),
                        note: format!("rule {} misses the target", m.rule),
                    });
                }
            }
            Err(e) => report.failures.push(Failure {
                game: g.clone(),
                mv: None,
                result: None,
                note: e.to_string(),
            }),
        }
    }
    report
}

/// Largest part used for instances of the pair-cancellation rule.
pub const BETA_INSTANCE_LEN: usize = 12;

/// Every instance of every rewrite rule is an equivalence, by oracle.
/// Pair cancellation is checked for every U part up to
/// [`BETA_INSTANCE_LEN`] stones and its negative.
pub fn check_asf_soundness(budget: Budget) -> Result<TheoremReport, OracleError> {
    let mut report = TheoremReport::new(Theorem::AsfSoundness);
    let mut solver = Solver::new().budget(budget);
    for rule in rule_table() {
        let instances: Vec<(Game, Game)> = match rule.lhs {
            Lhs::Parts(_) => rule.instances(),
            Lhs::NegativePair => u_parts(BETA_INSTANCE_LEN)
                .into_iter()
                .map(|p| {
                    let p = if rule.id.negative { p.negated() } else { p };
                    (Game::new([p, p.negated()]), Game::empty())
                })
                .collect(),
        };
        for (lhs, rhs) in instances {
            report.instances_checked += 1;
            if !solver.equivalent(&lhs, &rhs)? {
                report.failures.push(Failure {
                    game: lhs,
                    mv: None,
                    result: Some(rhs),
                    note: format!("rule {} is not an equivalence here", rule.id),
                });
            }
        }
    }
    Ok(report)
}

/// Parts reachable from an alternating part within two moves.
fn reachable_from_a(max_len: usize) -> FxHashSet<Part> {
    let mut seen = FxHashSet::default();
    let mut frontier: Vec<Part> = (1..=(max_len + 2) / 2)
        .filter_map(|k| Family::A.member(2 * k))
        .map(|p| p.canonical())
        .collect();
    seen.extend(frontier.iter().copied());
    for _ in 0..2 {
        let mut next = Vec::new();
        for p in &frontier {
            for player in [Stone::Black, Stone::White] {
                for (from, to) in p.moves(player) {
                    let (l, r) = p.clobber(from, to);
                    for f in l.into_iter().chain(r) {
                        let f = f.canonical();
                        if seen.insert(f) {
                            next.push(f);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Moves on U parts of at most `max_len` stones stay in U, and each U
/// part of at most `reach_len` stones arises from an alternating part
/// within two moves.
pub fn check_u_closure(max_len: usize, reach_len: usize) -> TheoremReport {
    let mut report = TheoremReport::new(Theorem::UClosure);
    for u in u_parts(max_len) {
        for player in [Stone::Black, Stone::White] {
            for (from, to) in u.moves(player) {
                report.instances_checked += 1;
                let (l, r) = u.clobber(from, to);
                for f in l.into_iter().chain(r) {
                    if !in_u(&f) {
                        report.failures.push(Failure {
                            game: Game::new([u]),
                            mv: Some(Move {
                                part: 0,
                                from: from + 1,
                                to: to + 1,
                            }),
                            result: Some(Game::new([f])),
                            note: format!("fragment {f} of {u} leaves U"),
                        });
                    }
                }
            }
        }
    }
    let reach = reachable_from_a(reach_len);
    for u in u_parts(reach_len) {
        report.instances_checked += 1;
        if !reach.contains(&u.canonical()) {
            report.failures.push(Failure {
                game: Game::new([u]),
                mv: None,
                result: None,
                note: format!("{u} is not two moves from an alternating part"),
            });
        }
    }
    report
}

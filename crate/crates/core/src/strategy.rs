//! Left's rule-based strategy on S0.
//!
//! Rule rows state results, not clobber cells. Each row names a target
//! part and the (standard form of the) fragments Left wants to leave on
//! it; the concrete move is the first Left move on that part producing
//! those fragments. Resolved moves are cached per `(part, fragments)`.

use std::sync::OnceLock;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;

use crate::asf::normalize;
use crate::game::{Game, Move};
use crate::notation::{expand_shorthand, parse_position};
use crate::oracle::{OracleError, Outcome, Solver};
use crate::part::{Part, Stone};
use crate::taxonomy::{classify_part, in_ll, s_class_of, Family, PartClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Ruleset {
    #[default]
    Basic,
    Improved,
}

impl std::str::FromStr for Ruleset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Ruleset::Basic),
            "improved" => Ok(Ruleset::Improved),
            other => Err(format!("unknown ruleset {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyMove {
    pub rule: &'static str,
    /// Indexes the parts of the game the move was chosen on.
    pub mv: Move,
    /// Standard form of the position after the move.
    pub result: Game,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("{0} is neither in S0 nor a whole-row opener")]
    NotInScope(Game),
    #[error("no rule gives Left a move on {0}")]
    StrategyGap(Game),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

enum Context {
    Whole(Game),
    Sub(Game),
    Any,
}

enum Target {
    /// A specific part and the fragments it should become.
    Fixed(Part, Game),
    /// Any part the function accepts, mapped to its fragments.
    Family(fn(&Part, PartClass) -> Option<Game>),
}

struct Row {
    id: &'static str,
    context: Context,
    target: Target,
}

fn tok(s: &str) -> Part {
    expand_shorthand(s).expect("built-in token").canonical()
}

fn pos(s: &str) -> Game {
    parse_position(s).expect("built-in position")
}

fn single(token: String) -> Game {
    pos(&token)
}

fn is(flags: PartClass, p: &Part) -> bool {
    classify_part(p).contains(flags)
}

fn family_1d(p: &Part, class: PartClass) -> Option<Game> {
    class
        .contains(PartClass::A_PRIME)
        .then(|| single(format!("o{}", p.len() - 3)))
}

fn family_2(p: &Part, class: PartClass) -> Option<Game> {
    class
        .contains(PartClass::OA_PRIME)
        .then(|| single(format!("oo{}", p.len() - 3)))
}

fn family_3e(p: &Part, class: PartClass) -> Option<Game> {
    (class.contains(PartClass::OOO) && p.len() >= 9).then(|| single(format!("oo{}", p.len() - 5)))
}

fn family_4i(p: &Part, class: PartClass) -> Option<Game> {
    (class.contains(PartClass::OO) && p.len() >= 22).then(|| single(format!("o{}", p.len() - 5)))
}

fn family_6a(p: &Part, class: PartClass) -> Option<Game> {
    (class.contains(PartClass::O) && p.len() >= 13).then(|| single(format!("o{}", p.len() - 2)))
}

fn build_rows() -> Vec<Row> {
    use Context::*;
    let fixed = |part: &str, becomes: &str| Target::Fixed(tok(part), pos(becomes));
    vec![
        Row {
            id: "1a",
            context: Whole(pos("a8 + a2")),
            target: fixed("a8", "xxo + a4"),
        },
        Row {
            id: "1b",
            context: Whole(pos("a10 + a4")),
            target: fixed("a10", "o5 + xxox"),
        },
        Row {
            id: "1c",
            context: Whole(pos("a18 + a4 + a2")),
            target: fixed("a18", "a14 + xxo"),
        },
        Row {
            id: "1d",
            context: Any,
            target: Target::Family(family_1d),
        },
        Row {
            id: "2",
            context: Any,
            target: Target::Family(family_2),
        },
        Row {
            id: "3a",
            context: Whole(pos("o5 + oox")),
            target: fixed("o5", "xxo"),
        },
        Row {
            id: "3b",
            context: Sub(pos("o5 + a4 + a2 + oox")),
            target: fixed("oox", "a2"),
        },
        Row {
            id: "3c",
            context: Sub(pos("a4 + oox")),
            target: fixed("a4", "xxo"),
        },
        Row {
            id: "3d",
            context: Any,
            target: fixed("oox", "a2"),
        },
        Row {
            id: "3e",
            context: Any,
            target: Target::Family(family_3e),
        },
        Row {
            id: "4a",
            context: Whole(pos("oo10 + a2")),
            target: fixed("oo10", "o7 + a2"),
        },
        Row {
            id: "4b",
            context: Whole(pos("oo12 + a4")),
            target: fixed("oo12", "oo8 + xxo"),
        },
        Row {
            id: "4c",
            context: Any,
            target: fixed("oo10", "o5"),
        },
        Row {
            id: "4d",
            context: Any,
            target: fixed("oo12", "o7"),
        },
        Row {
            id: "4e",
            context: Any,
            target: fixed("oo14", "o11 + a2"),
        },
        Row {
            id: "4f",
            context: Any,
            target: fixed("oo16", "o11"),
        },
        Row {
            id: "4g",
            context: Any,
            target: fixed("oo18", "o13"),
        },
        Row {
            id: "4h",
            context: Any,
            target: fixed("oo20", "o17 + a2"),
        },
        Row {
            id: "4i",
            context: Any,
            target: Target::Family(family_4i),
        },
        Row {
            id: "5a",
            context: Sub(pos("oo6 + oo6 + a4")),
            target: fixed("oo6", "xxo"),
        },
        Row {
            id: "5b",
            context: Sub(pos("oo6 + oo6 + a2")),
            target: fixed("oo6", "xxo"),
        },
        Row {
            id: "5c",
            context: Sub(pos("oo6 + oo6")),
            target: fixed("oo6", "ooxo"),
        },
        Row {
            id: "5d",
            context: Sub(pos("oo6 + a4 + a2")),
            target: fixed("oo6", "xxo"),
        },
        Row {
            id: "5e",
            context: Sub(pos("oo6 + a4")),
            target: fixed("oo6", "ooxo"),
        },
        Row {
            id: "5f",
            context: Sub(pos("oo6 + a2")),
            target: fixed("oo6", "ooxo"),
        },
        Row {
            id: "5g",
            context: Sub(pos("a4 + a2")),
            target: fixed("a4", "a2"),
        },
        Row {
            id: "5h",
            context: Any,
            target: fixed("oo6", "xxo"),
        },
        Row {
            id: "5i",
            context: Any,
            target: fixed("a4", "xxo"),
        },
        Row {
            id: "5j",
            context: Any,
            target: fixed("a2", "0"),
        },
        Row {
            id: "6a",
            context: Any,
            target: Target::Family(family_6a),
        },
        Row {
            id: "6b",
            context: Any,
            target: fixed("o11", "o7 + xxo"),
        },
        Row {
            id: "6c",
            context: Any,
            target: fixed("o7", "o5"),
        },
        Row {
            id: "6d",
            context: Any,
            target: fixed("o5", "xxo"),
        },
        Row {
            id: "7a",
            context: Any,
            target: fixed("oo8", "ooxo + xxo"),
        },
        Row {
            id: "7b",
            context: Any,
            target: fixed("xxo", "0"),
        },
    ]
}

fn rows() -> &'static [Row] {
    static ROWS: OnceLock<Vec<Row>> = OnceLock::new();
    ROWS.get_or_init(build_rows)
}

/// Ids of all rule rows in the order they are tried.
pub fn rule_ids() -> Vec<&'static str> {
    rows().iter().map(|r| r.id).collect()
}

/// Every (row id, part, stated fragments) pair the rows can ask for, with
/// family rows expanded over parts of at most `max_len` stones.
pub fn row_targets(max_len: usize) -> Vec<(&'static str, Part, Game)> {
    let mut out = Vec::new();
    for row in rows() {
        match &row.target {
            Target::Fixed(p, becomes) => out.push((row.id, *p, becomes.clone())),
            Target::Family(f) => {
                for fam in Family::ALL {
                    for len in 1..=max_len {
                        let Some(p) = fam.member(len) else { continue };
                        let p = p.canonical();
                        if let Some(becomes) = f(&p, classify_part(&p)) {
                            out.push((row.id, p, becomes));
                        }
                    }
                }
            }
        }
    }
    out
}

type MoveCache = DashMap<(Part, Game), Option<(usize, usize)>, FxBuildHasher>;

fn move_cache() -> &'static MoveCache {
    static CACHE: OnceLock<MoveCache> = OnceLock::new();
    CACHE.get_or_init(MoveCache::default)
}

fn fragments(part: &Part, from: usize, to: usize) -> Game {
    let (l, r) = part.clobber(from, to);
    Game::new(l.into_iter().chain(r))
}

/// First Left move on canonical `part` whose fragments normalize to
/// `want` (already normalized). 0-based cells.
pub(crate) fn resolve_on_part(part: &Part, want: &Game) -> Option<(usize, usize)> {
    let key = (*part, want.clone());
    if let Some(hit) = move_cache().get(&key) {
        return *hit;
    }
    let found = part
        .moves(Stone::LEFT)
        .find(|&(from, to)| normalize(&fragments(part, from, to)) == *want);
    move_cache().insert(key, found);
    found
}

/// Every Left move on `part` whose fragments normalize to `want`.
pub fn matching_moves(part: &Part, want: &Game) -> Vec<(usize, usize)> {
    let want = normalize(want);
    part.moves(Stone::LEFT)
        .filter(|&(from, to)| normalize(&fragments(part, from, to)) == want)
        .collect()
}

fn play(g: &Game, rule: &'static str, index: usize, (from, to): (usize, usize)) -> StrategyMove {
    let mv = Move {
        part: index,
        from: from + 1,
        to: to + 1,
    };
    StrategyMove {
        rule,
        mv,
        result: normalize(&g.apply_unchecked(&mv)),
    }
}

fn try_row(g: &Game, classes: &[PartClass], row: &Row) -> Option<StrategyMove> {
    match &row.context {
        Context::Whole(h) if g != h => return None,
        Context::Sub(h) if !g.contains_all(h) => return None,
        _ => {}
    }
    let (index, want) = match &row.target {
        Target::Fixed(p, becomes) => {
            let index = g.parts().binary_search(p).ok()?;
            (index, normalize(becomes))
        }
        Target::Family(f) => g
            .parts()
            .iter()
            .enumerate()
            .find_map(|(i, p)| f(p, classes[i]).map(|becomes| (i, normalize(&becomes))))?,
    };
    let cells = resolve_on_part(&g.parts()[index], &want)?;
    Some(play(g, row.id, index, cells))
}

fn lands_on_target(h: &Game) -> bool {
    h.is_empty() || s_class_of(h).is_target() || in_ll(h)
}

/// Rule 2 on a normalized game with exactly one oA' part: end-clobber to
/// oo(2t-2), or any Left move landing in S1, S2, LL or 0.
pub fn rule2_fallback(g: &Game) -> Result<StrategyMove, StrategyError> {
    let g = normalize(g);
    let row = rows().iter().find(|r| r.id == "2").expect("rule 2 row");
    let classes: Vec<PartClass> = g.parts().iter().map(classify_part).collect();
    if let Some(m) = try_row(&g, &classes, row) {
        if lands_on_target(&m.result) {
            return Ok(m);
        }
    }
    g.legal_moves(Stone::LEFT)
        .into_iter()
        .map(|mv| StrategyMove {
            rule: "2-fallback",
            mv,
            result: normalize(&g.apply_unchecked(&mv)),
        })
        .find(|m| lands_on_target(&m.result))
        .ok_or(StrategyError::StrategyGap(g))
}

/// The improved-ruleset collapse of `a(2j) + oo(2k)` into one odd
/// alternating part, when the collapse lands in S1 or S2.
pub fn improved_override(g: &Game) -> Option<StrategyMove> {
    spiral(g).or_else(|| {
        let n = normalize(g);
        (n != *g).then(|| spiral(&n)).flatten()
    })
}

fn spiral(g: &Game) -> Option<StrategyMove> {
    let [p, q] = g.parts() else {
        return None;
    };
    let (ai, a, oo) = if is(PartClass::A, p) && is(PartClass::OO, q) {
        (0, p, q)
    } else if is(PartClass::A, q) && is(PartClass::OO, p) {
        (1, q, p)
    } else {
        return None;
    };
    let (j, k) = (a.len() / 2, oo.len() / 2);
    if j < k + 3 {
        return None;
    }
    let residual = Part::alternating(Stone::White, 2 * (j - k) - 1).ok()?;
    let want = Game::new([residual, oo.negated()]);
    let cells = a
        .moves(Stone::LEFT)
        .find(|&(from, to)| fragments(a, from, to) == want)?;
    let m = play(g, "spiral", ai, cells);
    s_class_of(&m.result).is_target().then_some(m)
}

fn opener_move(mv: Move, child: &Game) -> StrategyMove {
    StrategyMove {
        rule: "opener-a12",
        mv,
        result: normalize(child),
    }
}

/// The whole-row openers for a single alternating part of any length,
/// which may not be in standard form.
fn opener(g: &Game) -> Result<Option<StrategyMove>, StrategyError> {
    let [p] = g.parts() else {
        return Ok(None);
    };
    if !is(PartClass::A, p) {
        return Ok(None);
    }
    match p.len() {
        // a6 has no winning move.
        6 => Ok(None),
        12 => {
            // No child is a P-position; fall back to one Left wins as
            // second player.
            let mut solver = Solver::new();
            let mut second_player_win = None;
            for mv in g.legal_moves(Stone::LEFT) {
                let child = g.apply_unchecked(&mv);
                match solver.outcome(&child)? {
                    Outcome::P => return Ok(Some(opener_move(mv, &child))),
                    Outcome::L if second_player_win.is_none() => second_player_win = Some((mv, child)),
                    _ => {}
                }
            }
            Ok(second_player_win.map(|(mv, child)| opener_move(mv, &child)))
        }
        len => {
            let rule = match len {
                2 => "opener-a2",
                4 => "opener-a4",
                _ => "opener",
            };
            let want = normalize(&match len {
                2 => Game::empty(),
                4 => pos("xxo"),
                _ => single(format!("o{}", len - 3)),
            });
            Ok(resolve_on_part(p, &want).map(|cells| play(g, rule, 0, cells)))
        }
    }
}

/// Left's move on `g` by the rule cascade.
///
/// A single alternating part is handled as an opener before anything is
/// rewritten. Otherwise `g` is normalized, must lie in S0, and the move
/// indexes the normalized game's parts.
pub fn choose_left_move(g: &Game, ruleset: Ruleset) -> Result<StrategyMove, StrategyError> {
    if let Some(m) = opener(g)? {
        return Ok(m);
    }
    let n = normalize(g);
    if !s_class_of(&n).in_s0() {
        return Err(StrategyError::NotInScope(n));
    }
    cascade(&n, ruleset)
}

/// The cascade without the S0 check, on an already normalized game.
pub fn cascade(g: &Game, ruleset: Ruleset) -> Result<StrategyMove, StrategyError> {
    if ruleset == Ruleset::Improved {
        if let Some(m) = spiral(g) {
            return Ok(m);
        }
    }
    let classes: Vec<PartClass> = g.parts().iter().map(classify_part).collect();
    for row in rows() {
        if let Some(m) = try_row(g, &classes, row) {
            if row.id == "2" && !lands_on_target(&m.result) {
                return rule2_fallback(g);
            }
            return Ok(m);
        }
    }
    Err(StrategyError::StrategyGap(g.clone()))
}

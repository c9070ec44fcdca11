//! The standard-form rewrite system.
//!
//! Fourteen rules in a fixed preference order. Each single-part rule
//! replaces one listed part by a fixed multiset; `β` deletes a part
//! together with a copy of its negative. Rules fire one at a time until
//! none applies.

use std::fmt;
use std::sync::OnceLock;

use crate::game::Game;
use crate::part::Part;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
    Zeta,
    Eta,
}

impl RuleKind {
    pub const ALL: [RuleKind; 7] = [
        RuleKind::Alpha,
        RuleKind::Beta,
        RuleKind::Gamma,
        RuleKind::Delta,
        RuleKind::Epsilon,
        RuleKind::Zeta,
        RuleKind::Eta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Alpha => "alpha",
            RuleKind::Beta => "beta",
            RuleKind::Gamma => "gamma",
            RuleKind::Delta => "delta",
            RuleKind::Epsilon => "epsilon",
            RuleKind::Zeta => "zeta",
            RuleKind::Eta => "eta",
        }
    }
}

/// A rule and its sign; `negative` means the color-flipped copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId {
    pub kind: RuleKind,
    pub negative: bool,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        f.write_str(self.kind.name())
    }
}

/// Left-hand side of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lhs {
    /// Any one of these parts (canonical orientation).
    Parts(Vec<Part>),
    /// A part together with its negative.
    NegativePair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: RuleId,
    pub lhs: Lhs,
    pub rhs: Game,
}

impl RewriteRule {
    /// Every concrete rewrite `(lhs game, rhs game)` of a part rule. Empty
    /// for `β`, whose instances are unbounded.
    pub fn instances(&self) -> Vec<(Game, Game)> {
        match &self.lhs {
            Lhs::Parts(parts) => parts.iter().map(|p| (Game::new([*p]), self.rhs.clone())).collect(),
            Lhs::NegativePair => Vec::new(),
        }
    }
}

// Positive rules; negatives are derived by color flip.
const POSITIVE: [(RuleKind, &[&str], &[&str]); 6] = [
    (RuleKind::Alpha, &["o", "oo", "ooo", "ooxx", "oxoxox"], &[]),
    (RuleKind::Gamma, &["oxo", "ooxox", "ooxoxoo", "xxoxoxx"], &["ox"]),
    (RuleKind::Delta, &["oxoxoxoxo"], &["ooxo"]),
    (RuleKind::Epsilon, &["ooxoxx", "oxoxoxoxoxox"], &["oxox", "ox"]),
    (RuleKind::Zeta, &["ooxoo"], &["oox"]),
    (RuleKind::Eta, &["ooxo"], &["xxo", "ox"]),
];

fn part(s: &str) -> Part {
    s.parse::<Part>().expect("rule table literal")
}

fn build_table() -> Vec<RewriteRule> {
    let mut rules = Vec::with_capacity(14);
    for (kind, lhs, rhs) in POSITIVE {
        let lhs: Vec<Part> = lhs.iter().map(|s| part(s).canonical()).collect();
        let rhs: Vec<Part> = rhs.iter().map(|s| part(s)).collect();
        let neg_lhs = lhs.iter().map(Part::negated_canonical).collect();
        let positive = RewriteRule {
            id: RuleId { kind, negative: false },
            lhs: Lhs::Parts(lhs),
            rhs: Game::new(rhs.iter().copied()),
        };
        let negative = RewriteRule {
            id: RuleId { kind, negative: true },
            lhs: Lhs::Parts(neg_lhs),
            rhs: Game::new(rhs.iter().map(Part::negated)),
        };
        rules.push(positive);
        rules.push(negative);
        if kind == RuleKind::Alpha {
            for negative in [false, true] {
                rules.push(RewriteRule {
                    id: RuleId {
                        kind: RuleKind::Beta,
                        negative,
                    },
                    lhs: Lhs::NegativePair,
                    rhs: Game::empty(),
                });
            }
        }
    }
    rules
}

/// The fourteen rules in preference order: α, −α, β, −β, …, η, −η.
pub fn rule_table() -> &'static [RewriteRule] {
    static TABLE: OnceLock<Vec<RewriteRule>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Longest single-part lhs in the table.
const MAX_LHS_LEN: usize = 12;
const NO_RULE: u8 = u8::MAX;
const BETA_RANK: u8 = 2;

/// Rank of the part rule matching each canonical part up to
/// `MAX_LHS_LEN` stones, indexed by `(1 << len) | bits`.
fn part_ranks() -> &'static [u8] {
    static RANKS: OnceLock<Vec<u8>> = OnceLock::new();
    RANKS.get_or_init(|| {
        let mut ranks = vec![NO_RULE; 2 << MAX_LHS_LEN];
        for (rank, rule) in rule_table().iter().enumerate() {
            if let Lhs::Parts(parts) = &rule.lhs {
                for p in parts {
                    debug_assert!(p.len() <= MAX_LHS_LEN);
                    let slot = &mut ranks[rank_index(p)];
                    if *slot == NO_RULE {
                        *slot = rank as u8;
                    }
                }
            }
        }
        ranks
    })
}

#[inline]
fn rank_index(p: &Part) -> usize {
    (1usize << p.len()) | p.bits() as usize
}

#[inline]
fn part_rank(p: &Part) -> u8 {
    if p.len() > MAX_LHS_LEN {
        NO_RULE
    } else {
        part_ranks()[rank_index(p)]
    }
}

/// Index of the first part (in key order) whose negative is also present.
fn beta_match(g: &Game) -> Option<(usize, usize)> {
    let parts = g.parts();
    for (i, p) in parts.iter().enumerate() {
        let q = p.negated_canonical();
        if q == *p {
            if parts.get(i + 1) == Some(p) {
                return Some((i, i + 1));
            }
        } else if let Ok(j) = parts.binary_search(&q) {
            return Some((i, j));
        }
    }
    None
}

/// Applies the most preferred applicable rule once, to the smallest
/// matching part.
pub fn apply_once(g: &Game) -> Option<(&'static RewriteRule, Game)> {
    let mut best: Option<(u8, usize)> = None;
    for (i, p) in g.parts().iter().enumerate() {
        let r = part_rank(p);
        if r != NO_RULE && best.is_none_or(|(b, _)| r < b) {
            best = Some((r, i));
        }
    }
    let table = rule_table();
    if best.is_none_or(|(r, _)| r > BETA_RANK) {
        if let Some((i, j)) = beta_match(g) {
            let mut parts = g.parts().to_vec();
            parts.remove(i.max(j));
            parts.remove(i.min(j));
            return Some((&table[BETA_RANK as usize], Game::from_sorted(parts)));
        }
    }
    let (rank, i) = best?;
    let rule = &table[rank as usize];
    Some((rule, g.replace_part(i, rule.rhs.parts().iter().copied())))
}

/// Rewrites to a fixpoint.
pub fn normalize(g: &Game) -> Game {
    let mut cur = g.clone();
    while let Some((_, next)) = apply_once(&cur) {
        debug_assert!(potential(&next) < potential(&cur));
        cur = next;
    }
    cur
}

/// Like [`normalize`], also returning each step.
pub fn normalize_with_trace(g: &Game) -> (Game, Vec<(RuleId, Game)>) {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    while let Some((rule, next)) = apply_once(&cur) {
        trace.push((rule.id, next.clone()));
        cur = next;
    }
    (cur, trace)
}

pub fn is_normalized(g: &Game) -> bool {
    apply_once(g).is_none()
}

/// Sum of squared part lengths; every rule strictly decreases it.
pub fn potential(g: &Game) -> u64 {
    g.parts().iter().map(|p| (p.len() * p.len()) as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_position;
    use proptest::prelude::*;

    fn g(s: &str) -> Game {
        parse_position(s).unwrap()
    }

    fn rule(kind: RuleKind, negative: bool) -> &'static RewriteRule {
        rule_table().iter().find(|r| r.id == RuleId { kind, negative }).unwrap()
    }

    #[test]
    fn preference_order() {
        let ids: Vec<String> = rule_table().iter().map(|r| r.id.to_string()).collect();
        assert_eq!(
            ids,
            [
                "alpha", "-alpha", "beta", "-beta", "gamma", "-gamma", "delta", "-delta", "epsilon", "-epsilon",
                "zeta", "-zeta", "eta", "-eta"
            ]
        );
    }

    #[test]
    fn table_contents() {
        assert_eq!(rule(RuleKind::Zeta, false).rhs, g("oox"));
        assert_eq!(rule(RuleKind::Eta, false).rhs, g("xxo + ox"));
        let neg_alpha = rule(RuleKind::Alpha, true);
        match &neg_alpha.lhs {
            Lhs::Parts(ps) => assert!(ps.contains(&"xoxoxo".parse::<Part>().unwrap().canonical())),
            Lhs::NegativePair => unreachable!(),
        }
        assert!(neg_alpha.rhs.is_empty());
    }

    #[test]
    fn apply_once_examples() {
        let (r, out) = apply_once(&g("ooxoo + ox")).unwrap();
        assert_eq!(r.id.kind, RuleKind::Zeta);
        assert_eq!(out, g("oox + ox"));
        let (r, out) = apply_once(&g("xxo + oox")).unwrap();
        assert_eq!(r.id.kind, RuleKind::Beta);
        assert!(out.is_empty());
        assert!(apply_once(&g("ox")).is_none());
        // ox is its own negative: two copies cancel, one does not.
        assert!(apply_once(&g("ox + ox")).unwrap().1.is_empty());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&g("oxoxoxoxoxox")), g("oxox + ox"));
        assert!(normalize(&g("oxoxox")).is_empty());
        assert_eq!(normalize(&g("oxoxoxoxo")), g("xxo + ox"));
    }

    #[test]
    fn gamma_beats_beta() {
        // beta outranks gamma, so the pair cancels first.
        let (r, _) = apply_once(&g("oxo + xox")).unwrap();
        assert_eq!(r.id.kind, RuleKind::Beta);
        // alpha outranks beta.
        let (r, _) = apply_once(&g("oxoxox + oox + xxo")).unwrap();
        assert_eq!(r.id.kind, RuleKind::Alpha);
    }

    #[test]
    fn trace_records_each_step() {
        let (out, trace) = normalize_with_trace(&g("o9"));
        assert_eq!(out, g("xxo + a2"));
        let ids: Vec<String> = trace.iter().map(|(r, _)| r.to_string()).collect();
        assert_eq!(ids, ["delta", "eta"]);
    }

    #[test]
    fn potentials() {
        assert_eq!(potential(&g("ooxo")), 16);
        assert_eq!(potential(&g("xxo + ox")), 13);
        assert_eq!(potential(&Game::empty()), 0);
    }

    fn arb_game() -> impl Strategy<Value = Game> {
        prop::collection::vec((1usize..16, any::<u128>()), 0..4).prop_map(|parts| {
            Game::new(
                parts
                    .into_iter()
                    .map(|(len, bits)| Part::from_raw(bits & ((1u128 << len) - 1), len)),
            )
        })
    }

    proptest! {
        #[test]
        fn every_step_lowers_potential(game in arb_game()) {
            let mut cur = game;
            while let Some((_, next)) = apply_once(&cur) {
                prop_assert!(potential(&next) < potential(&cur));
                cur = next;
            }
        }

        #[test]
        fn normalize_is_idempotent(game in arb_game()) {
            let once = normalize(&game);
            prop_assert!(is_normalized(&once));
            prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn normalize_commutes_with_negation(game in arb_game()) {
            // Single-part rules come in sign pairs, so flipping colors
            // before or after rewriting agrees up to the multiset.
            prop_assert_eq!(normalize(&game.negate()), normalize(&game).negate());
        }
    }
}

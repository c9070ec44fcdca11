//! Alternating linear clobber.
//!
//! Exact solving of linear clobber positions, rewriting into the ALC
//! standard form, part taxonomy and count vectors, Left's rule-based
//! strategy, and an exhaustive verifier that lets Right try every reply.

pub mod asf;
pub mod cli;
pub mod game;
pub mod notation;
pub mod oracle;
pub mod part;
pub mod strategy;
pub mod taxonomy;
pub mod verifier;

pub use asf::{
    apply_once, is_normalized, normalize, normalize_with_trace, potential, rule_table, Lhs, RewriteRule, RuleId,
    RuleKind,
};
pub use game::{Game, GameError, Move};
pub use notation::{expand_shorthand, format_game, parse_position, Format, NotationError};
pub use oracle::{Budget, OracleError, Outcome, SearchMode, SharedSolveCache, SolveCache, SolveMemo, Solver};
pub use part::{Part, PartError, Stone, MAX_PART_LEN};
pub use strategy::{
    cascade, choose_left_move, improved_override, matching_moves, row_targets, rule2_fallback, rule_ids, Ruleset,
    StrategyError, StrategyMove,
};
pub use taxonomy::{
    classify_part, count_vector, enumerate_s_games, in_ll, in_q, in_u, s_class, CountVector, PartClass, SClass,
    TaxonomyError,
};
pub use verifier::{
    check_asf_soundness, check_theorem_left, check_theorem_right, check_u_closure, verify_many, verify_start,
    write_csv, Failure, Theorem, TheoremReport, Verifier, VerifyStats, CSV_HEADER,
};

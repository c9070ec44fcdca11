//! Text notation for positions.
//!
//! Two input forms are accepted:
//!
//! * a stone string over `o`, `x` and `-`, e.g. `ox-oox`, whose maximal
//!   stone runs are the parts;
//! * a `+`-separated list of shorthand tokens, e.g. `o5 + a2`.
//!
//! Shorthand tokens:
//!
//! | token        | part                                                   |
//! |--------------|--------------------------------------------------------|
//! | `a<k>`       | `(ox)^(k/2)`, `k` even                                 |
//! | `o<k>`/`x<k>`| alternating, `k` odd, starts and ends with that color  |
//! | `oo<k>`      | doubled first stone, then alternation, `k` stones      |
//! | `oo<k>oo`    | doubled at both ends with alternation between          |
//! | `oo<k>xx`    | as above, ends differ                                  |
//!
//! with the `x`-first variants `xx<k>`, `xx<k>xx`, `xx<k>oo`, and a handful
//! of literal tokens (`o`, `oo`, `ooo`, `ox`, `oox`, `ooxo`, and their
//! negatives). Any other digit-free stone string is also accepted as a
//! token, so parts without a pattern survive a round trip. The empty game
//! is written `0`.

use std::fmt;

use crate::game::Game;
use crate::part::{Part, PartError, Stone};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotationError {
    #[error("empty position")]
    EmptyPosition,
    #[error("illegal character {ch:?} at offset {at}")]
    IllegalChar { ch: char, at: usize },
    #[error("malformed token {token:?}: {reason}")]
    BadToken { token: String, reason: String },
    #[error(transparent)]
    Part(#[from] PartError),
}

/// Literal tokens, accepted verbatim.
pub const LITERAL_TOKENS: [&str; 12] = [
    "o", "oo", "ooo", "x", "xx", "xxx", "xxo", "oox", "ox", "xo", "ooxo", "xxox",
];

/// Output style for positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// `-`-separated stone strings in key order.
    #[default]
    Stones,
    /// Shortest shorthand token per part, joined by ` + `.
    Short,
}

fn bad(token: &str, reason: impl Into<String>) -> NotationError {
    NotationError::BadToken {
        token: token.to_string(),
        reason: reason.into(),
    }
}

/// Parses either notation into a game.
pub fn parse_position(text: &str) -> Result<Game, NotationError> {
    let text = text.trim();
    if text == "0" {
        return Ok(Game::empty());
    }
    let shorthand = text.chars().any(|c| c == '+' || c == 'a' || c.is_ascii_digit());
    if shorthand {
        let parts = text
            .split('+')
            .map(|t| expand_shorthand(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Game::new(parts));
    }
    let mut parts = Vec::new();
    let mut run: Vec<Stone> = Vec::new();
    let mut saw_stone = false;
    for (at, ch) in text.chars().enumerate() {
        match ch {
            '-' => {
                if !run.is_empty() {
                    parts.push(Part::from_stones(&run)?);
                    run.clear();
                }
            }
            _ => {
                let s = Stone::from_symbol(ch).ok_or(NotationError::IllegalChar { ch, at })?;
                run.push(s);
                saw_stone = true;
            }
        }
    }
    if !run.is_empty() {
        parts.push(Part::from_stones(&run)?);
    }
    if !saw_stone {
        return Err(NotationError::EmptyPosition);
    }
    Ok(Game::new(parts))
}

/// Stones for `cc` followed by alternation: cell `i` (1-based, `i >= 2`)
/// holds `c` when `i` is even.
fn doubled_prefix(c: Stone, k: usize) -> Vec<Stone> {
    (1..=k)
        .map(|i| if i == 1 || i % 2 == 0 { c } else { c.opponent() })
        .collect()
}

/// Expands one shorthand token into a part, orientation as written.
pub fn expand_shorthand(token: &str) -> Result<Part, NotationError> {
    if token.is_empty() {
        return Err(NotationError::EmptyPosition);
    }
    if LITERAL_TOKENS.contains(&token) || token.chars().all(|c| c == 'o' || c == 'x') {
        return token.parse();
    }
    let digits_at = token
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| bad(token, "expected a stone count"))?;
    let (prefix, rest) = token.split_at(digits_at);
    let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let (digits, suffix) = rest.split_at(digits_end);
    let k: usize = digits.parse().map_err(|_| bad(token, "stone count out of range"))?;
    if k == 0 {
        return Err(bad(token, "stone count must be positive"));
    }
    let suffix_color = match suffix {
        "" => None,
        "oo" => Some(Stone::White),
        "xx" => Some(Stone::Black),
        _ => return Err(bad(token, format!("unknown suffix {suffix:?}"))),
    };
    match prefix {
        "a" => {
            if suffix_color.is_some() {
                return Err(bad(token, "`a` takes no suffix"));
            }
            if !k.is_multiple_of(2) {
                return Err(bad(token, "`a` needs an even stone count"));
            }
            Ok(Part::alternating(Stone::White, k)?)
        }
        "o" | "x" => {
            if suffix_color.is_some() {
                return Err(bad(token, "single-stone prefix takes no suffix"));
            }
            if k.is_multiple_of(2) {
                return Err(bad(token, "alternating odd part needs an odd stone count"));
            }
            let c = Stone::from_symbol(prefix.chars().next().unwrap()).unwrap();
            Ok(Part::alternating(c, k)?)
        }
        "oo" | "xx" => {
            let c = Stone::from_symbol(prefix.chars().next().unwrap()).unwrap();
            match suffix_color {
                None => {
                    if k < 2 {
                        return Err(bad(token, "doubled prefix needs at least 2 stones"));
                    }
                    Ok(Part::from_stones(&doubled_prefix(c, k))?)
                }
                Some(d) => {
                    if k < 4 {
                        return Err(bad(token, "doubled ends need at least 4 stones"));
                    }
                    let mut stones = doubled_prefix(c, k - 1);
                    if stones[k - 2] != d {
                        return Err(bad(token, "stone count parity does not match the ends"));
                    }
                    stones.push(d);
                    Ok(Part::from_stones(&stones)?)
                }
            }
        }
        _ => Err(bad(token, format!("unknown prefix {prefix:?}"))),
    }
}

/// Shorthand tokens describing `part` read in its given orientation,
/// in output-preference order.
fn tokens_for(part: &Part) -> Vec<String> {
    let s = part.to_string();
    let k = part.len();
    let mut out = Vec::new();
    let c0 = part.stone(0);
    let alternates_from = |start: usize, end: usize| (start + 1..end).all(|i| part.stone(i) != part.stone(i - 1));
    if alternates_from(0, k) {
        if k.is_multiple_of(2) && c0 == Stone::White {
            out.push(format!("a{k}"));
        }
        if k % 2 == 1 {
            out.push(format!("{}{k}", c0.symbol()));
        }
    }
    if LITERAL_TOKENS.contains(&s.as_str()) {
        // Literals outrank same-length patterns except `a2`.
        let at = if s == "ox" || s == "xo" { out.len() } else { 0 };
        out.insert(at, s.clone());
    }
    if k >= 2 && part.stone(1) == c0 {
        let c = c0.symbol();
        if alternates_from(1, k) {
            out.push(format!("{c}{c}{k}"));
        }
        if k >= 4 && part.stone(k - 1) == part.stone(k - 2) && alternates_from(1, k - 1) {
            let d = part.stone(k - 1).symbol();
            out.push(format!("{c}{c}{k}{d}{d}"));
        }
    }
    out
}

/// Shortest shorthand token for a part, trying both orientations, or the
/// raw stone string when no token applies.
pub fn short_token(part: &Part) -> String {
    let canonical = part.canonical();
    let mut best: Option<String> = None;
    for orient in [canonical, canonical.reversed()] {
        for t in tokens_for(&orient) {
            debug_assert_eq!(expand_shorthand(&t).map(|p| p.canonical()), Ok(canonical));
            if best.as_ref().is_none_or(|b| t.len() < b.len()) {
                best = Some(t);
            }
        }
    }
    best.unwrap_or_else(|| canonical.to_string())
}

/// Renders a game in the requested style. Both styles parse back to the
/// same game.
pub fn format_game(game: &Game, style: Format) -> String {
    match style {
        Format::Stones => game.to_string(),
        Format::Short => {
            if game.is_empty() {
                return "0".to_string();
            }
            game.parts().iter().map(short_token).collect::<Vec<_>>().join(" + ")
        }
    }
}

/// Display adapter selecting a [`Format`].
pub struct Formatted<'a>(pub &'a Game, pub Format);

impl fmt::Display for Formatted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_game(self.0, self.1))
    }
}

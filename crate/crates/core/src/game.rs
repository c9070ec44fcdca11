//! Games as multisets of parts, and clobber moves on them.

use std::fmt;

use crate::part::{Part, Stone};

/// A sum of parts, kept as a sorted list of canonical, non-monochromatic
/// parts. Two games are identical exactly when their part lists are equal,
/// so the list doubles as the memoization key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Game {
    parts: Vec<Part>,
}

/// A clobber on one part of a game.
///
/// `part` indexes [`Game::parts`]; `from` and `to` are 1-based cells of that
/// (canonically oriented) part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub part: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("illegal move {mv:?} on {game}")]
    IllegalMove { mv: Move, game: String },
}

impl Game {
    /// Builds a game from parts in any orientation; monochromatic parts are
    /// dropped.
    pub fn new<I: IntoIterator<Item = Part>>(parts: I) -> Game {
        let mut parts: Vec<Part> = parts
            .into_iter()
            .filter(|p| !p.is_monochromatic())
            .map(|p| p.canonical())
            .collect();
        parts.sort_unstable();
        Game { parts }
    }

    pub fn empty() -> Game {
        Game::default()
    }

    /// Builds from parts already canonical, non-monochromatic and sorted.
    pub(crate) fn from_sorted(parts: Vec<Part>) -> Game {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(parts.iter().all(|p| p.is_canonical() && !p.is_monochromatic()));
        Game { parts }
    }

    #[inline]
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn stone_count(&self) -> usize {
        self.parts.iter().map(Part::len).sum()
    }

    pub fn contains(&self, part: &Part) -> bool {
        self.parts.binary_search(&part.canonical()).is_ok()
    }

    /// Multiplicity of `part` (any orientation).
    pub fn count_of(&self, part: &Part) -> usize {
        let c = part.canonical();
        self.parts.iter().filter(|q| **q == c).count()
    }

    /// Multiset sum.
    pub fn union(&self, other: &Game) -> Game {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable();
        Game { parts }
    }

    /// Color-flipped game.
    pub fn negate(&self) -> Game {
        Game::new(self.parts.iter().map(Part::negated))
    }

    /// Whether `sub` is contained in `self` as a sub-multiset.
    pub fn contains_all(&self, sub: &Game) -> bool {
        let mut i = 0;
        for p in &sub.parts {
            while i < self.parts.len() && self.parts[i] < *p {
                i += 1;
            }
            if i == self.parts.len() || self.parts[i] != *p {
                return false;
            }
            i += 1;
        }
        true
    }

    /// The multiset with one copy of each part of `sub` removed, or `None`
    /// when `sub` is not contained.
    pub fn without(&self, sub: &Game) -> Option<Game> {
        let mut rest = self.parts.clone();
        for p in &sub.parts {
            let at = rest.binary_search(p).ok()?;
            rest.remove(at);
        }
        Some(Game { parts: rest })
    }

    /// Replaces the part at `index` by `fragments` (any orientation; empty
    /// and monochromatic fragments vanish).
    pub fn replace_part<I: IntoIterator<Item = Part>>(&self, index: usize, fragments: I) -> Game {
        let mut parts = self.parts.clone();
        parts.remove(index);
        for f in fragments {
            if f.is_monochromatic() {
                continue;
            }
            let c = f.canonical();
            let at = parts.partition_point(|q| *q <= c);
            parts.insert(at, c);
        }
        Game { parts }
    }

    /// All moves for `player`, by part index, then `from`, then `to`.
    pub fn legal_moves(&self, player: Stone) -> Vec<Move> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(k, p)| {
                p.moves(player).map(move |(from, to)| Move {
                    part: k,
                    from: from + 1,
                    to: to + 1,
                })
            })
            .collect()
    }

    pub fn is_legal(&self, mv: &Move) -> bool {
        let Some(p) = self.parts.get(mv.part) else {
            return false;
        };
        if mv.from == 0 || mv.to == 0 {
            return false;
        }
        let from = mv.from - 1;
        let to = mv.to - 1;
        from < p.len() && p.can_clobber(p.stone(from), from, to)
    }

    /// Plays `mv`; the vacated cell splits the part.
    pub fn apply_move(&self, mv: &Move) -> Result<Game, GameError> {
        if !self.is_legal(mv) {
            return Err(GameError::IllegalMove {
                mv: *mv,
                game: self.to_string(),
            });
        }
        Ok(self.apply_unchecked(mv))
    }

    pub(crate) fn apply_unchecked(&self, mv: &Move) -> Game {
        let (a, b) = self.parts[mv.part].clobber(mv.from - 1, mv.to - 1);
        self.replace_part(mv.part, a.into_iter().chain(b))
    }

    /// `(move, resulting game)` for every legal move of `player`.
    pub fn children(&self, player: Stone) -> impl Iterator<Item = (Move, Game)> + '_ {
        self.legal_moves(player)
            .into_iter()
            .map(move |mv| (mv, self.apply_unchecked(&mv)))
    }

    pub fn has_moves(&self) -> bool {
        !self.parts.is_empty()
    }
}

impl FromIterator<Part> for Game {
    fn from_iter<I: IntoIterator<Item = Part>>(iter: I) -> Game {
        Game::new(iter)
    }
}

impl std::ops::Neg for &Game {
    type Output = Game;

    fn neg(self) -> Game {
        self.negate()
    }
}

impl std::ops::Add for &Game {
    type Output = Game;

    fn add(self, rhs: &Game) -> Game {
        self.union(rhs)
    }
}

impl fmt::Display for Game {
    /// Stone-string form: parts in key order joined by `-`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Game({self})")
    }
}

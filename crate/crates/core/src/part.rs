//! Stones and parts: the connected stone paths a clobber position splits into.

use std::cmp::Ordering;
use std::fmt;

/// Longest part that fits the packed representation.
pub const MAX_PART_LEN: usize = 128;

/// A stone color. Black (`x`) belongs to Left, White (`o`) to Right.
///
/// The derived order puts White before Black, matching `o` < `x` in the
/// stone-string order used for canonical orientation and game keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stone {
    White,
    Black,
}

impl Stone {
    pub const LEFT: Stone = Stone::Black;
    pub const RIGHT: Stone = Stone::White;

    pub fn opponent(self) -> Stone {
        match self {
            Stone::White => Stone::Black,
            Stone::Black => Stone::White,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Stone::White => 'o',
            Stone::Black => 'x',
        }
    }

    pub fn from_symbol(c: char) -> Option<Stone> {
        match c {
            'o' => Some(Stone::White),
            'x' => Some(Stone::Black),
            _ => None,
        }
    }

    fn bit(self) -> u128 {
        match self {
            Stone::White => 0,
            Stone::Black => 1,
        }
    }
}

impl std::ops::Neg for Stone {
    type Output = Stone;

    fn neg(self) -> Stone {
        self.opponent()
    }
}

/// A nonempty path of stones with no gaps.
///
/// Stones are packed into a `u128`: bit `i` is set when cell `i` (0-based)
/// holds a black stone. A `Part` itself has an orientation; [`Game`]
/// stores only [`Part::canonical`] forms.
///
/// Ordering is the lexicographic order of stone strings with `o` < `x`
/// and a proper prefix sorting first.
///
/// [`Game`]: crate::Game
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Part {
    bits: u128,
    len: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartError {
    #[error("a part needs at least one stone")]
    Empty,
    #[error("part of {0} stones exceeds the {MAX_PART_LEN}-stone limit")]
    TooLong(usize),
}

#[inline]
fn mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl Part {
    pub fn from_stones(stones: &[Stone]) -> Result<Part, PartError> {
        if stones.is_empty() {
            return Err(PartError::Empty);
        }
        if stones.len() > MAX_PART_LEN {
            return Err(PartError::TooLong(stones.len()));
        }
        let bits = stones
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, s)| acc | (s.bit() << i));
        Ok(Part {
            bits,
            len: stones.len() as u8,
        })
    }

    /// Builds a part from packed bits; bits above `len` must be clear.
    pub(crate) fn from_raw(bits: u128, len: usize) -> Part {
        debug_assert!((1..=MAX_PART_LEN).contains(&len));
        debug_assert_eq!(bits & !mask(len), 0);
        Part { bits, len: len as u8 }
    }

    /// The alternating path of `len` stones starting with `first`.
    pub fn alternating(first: Stone, len: usize) -> Result<Part, PartError> {
        if len == 0 {
            return Err(PartError::Empty);
        }
        if len > MAX_PART_LEN {
            return Err(PartError::TooLong(len));
        }
        // 0b...1010 has black on odd cells: an o-first alternation.
        let odd_black = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_u128 & mask(len);
        let bits = match first {
            Stone::White => odd_black,
            Stone::Black => !odd_black & mask(len),
        };
        Ok(Part::from_raw(bits, len))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; parts are nonempty. Present for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }

    /// Stone at 0-based cell `i`.
    #[inline]
    pub fn stone(&self, i: usize) -> Stone {
        debug_assert!(i < self.len());
        if (self.bits >> i) & 1 == 1 {
            Stone::Black
        } else {
            Stone::White
        }
    }

    pub fn stones(&self) -> impl Iterator<Item = Stone> + '_ {
        (0..self.len()).map(move |i| self.stone(i))
    }

    pub fn count(&self, color: Stone) -> usize {
        let black = self.bits.count_ones() as usize;
        match color {
            Stone::Black => black,
            Stone::White => self.len() - black,
        }
    }

    /// True when every stone has the same color, so neither player can move.
    #[inline]
    pub fn is_monochromatic(&self) -> bool {
        self.bits == 0 || self.bits == mask(self.len())
    }

    #[inline]
    pub fn reversed(&self) -> Part {
        let len = self.len();
        Part {
            bits: self.bits.reverse_bits() >> (128 - len),
            len: self.len,
        }
    }

    #[inline]
    pub fn negated(&self) -> Part {
        Part {
            bits: self.bits ^ mask(self.len()),
            len: self.len,
        }
    }

    /// The smaller of the part and its reversal.
    #[inline]
    pub fn canonical(&self) -> Part {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            *self
        }
    }

    #[inline]
    pub fn is_canonical(&self) -> bool {
        self.reversed() >= *self
    }

    /// Canonical form of the negation.
    #[inline]
    pub fn negated_canonical(&self) -> Part {
        self.negated().canonical()
    }

    /// Whether `player` has a stone at `from` adjacent to an opponent stone
    /// at `to` (both 0-based).
    pub fn can_clobber(&self, player: Stone, from: usize, to: usize) -> bool {
        from < self.len()
            && to < self.len()
            && from.abs_diff(to) == 1
            && self.stone(from) == player
            && self.stone(to) != player
    }

    /// Result of the stone at `from` clobbering its neighbour at `to`
    /// (0-based): the cells left and right of the vacated cell, either of
    /// which may be absent. Monochromatic fragments are kept.
    pub fn clobber(&self, from: usize, to: usize) -> (Option<Part>, Option<Part>) {
        debug_assert!(from.abs_diff(to) == 1 && to < self.len() && from < self.len());
        let mover = (self.bits >> from) & 1;
        let bits = (self.bits & !(1u128 << to)) | (mover << to);
        let left = (from > 0).then(|| Part::from_raw(bits & mask(from), from));
        let right_len = self.len() - from - 1;
        let right = (right_len > 0).then(|| Part::from_raw(bits >> (from + 1), right_len));
        (left, right)
    }

    /// 0-based `(from, to)` pairs for `player`, ordered by `from` then `to`.
    pub fn moves(&self, player: Stone) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.len();
        (0..len).filter(move |&i| self.stone(i) == player).flat_map(move |i| {
            let down = (i > 0 && self.stone(i - 1) != player).then(|| (i, i - 1));
            let up = (i + 1 < len && self.stone(i + 1) != player).then(|| (i, i + 1));
            down.into_iter().chain(up)
        })
    }
}

impl Ord for Part {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len().min(other.len());
        let diff = (self.bits ^ other.bits) & mask(common);
        if diff != 0 {
            let i = diff.trailing_zeros();
            if (self.bits >> i) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else {
            self.len.cmp(&other.len)
        }
    }
}

impl PartialOrd for Part {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.stones() {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Part({self})")
    }
}

impl std::str::FromStr for Part {
    type Err = crate::NotationError;

    /// Parses a raw stone string such as `ooxox`; no shorthand.
    fn from_str(s: &str) -> Result<Part, Self::Err> {
        let stones = s
            .chars()
            .enumerate()
            .map(|(i, c)| Stone::from_symbol(c).ok_or(crate::NotationError::IllegalChar { ch: c, at: i }))
            .collect::<Result<Vec<_>, _>>()?;
        if stones.is_empty() {
            return Err(crate::NotationError::EmptyPosition);
        }
        Part::from_stones(&stones).map_err(crate::NotationError::from)
    }
}

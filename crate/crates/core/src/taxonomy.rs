//! Named part families, count vectors and the S-classes built on them.

use std::fmt;
use std::sync::OnceLock;

use bitflags::bitflags;

use crate::asf::{is_normalized, normalize};
use crate::game::Game;
use crate::notation::parse_position;
use crate::part::{Part, MAX_PART_LEN};

bitflags! {
    /// Every family a part belongs to.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct PartClass: u32 {
        const A = 1 << 0;
        const O = 1 << 1;
        const OA = 1 << 2;
        const OO = 1 << 3;
        const OOO = 1 << 4;
        const OAX = 1 << 5;
        const X = 1 << 6;
        const AX = 1 << 7;
        const XX = 1 << 8;
        const XXX = 1 << 9;
        const A_PRIME = 1 << 10;
        const O_PRIME = 1 << 11;
        const OO_PRIME = 1 << 12;
        const OA_PRIME = 1 << 13;
        const OOO_PRIME = 1 << 14;
        const I = 1 << 15;
        const XXO = 1 << 16;
        const OO8 = 1 << 17;

        const U = Self::A.bits() | Self::O.bits() | Self::OA.bits() | Self::OO.bits()
            | Self::OOO.bits() | Self::OAX.bits() | Self::X.bits() | Self::AX.bits()
            | Self::XX.bits() | Self::XXX.bits();
    }
}

const FLAG_NAMES: [(PartClass, &str); 18] = [
    (PartClass::A, "A"),
    (PartClass::O, "O"),
    (PartClass::OA, "oA"),
    (PartClass::OO, "oO"),
    (PartClass::OOO, "oOo"),
    (PartClass::OAX, "oAx"),
    (PartClass::X, "X"),
    (PartClass::AX, "Ax"),
    (PartClass::XX, "xX"),
    (PartClass::XXX, "xXx"),
    (PartClass::A_PRIME, "A'"),
    (PartClass::O_PRIME, "O'"),
    (PartClass::OO_PRIME, "oO'"),
    (PartClass::OA_PRIME, "oA'"),
    (PartClass::OOO_PRIME, "oOo'"),
    (PartClass::I, "I"),
    (PartClass::XXO, "xxo"),
    (PartClass::OO8, "oo8"),
];

impl fmt::Display for PartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = FLAG_NAMES
            .iter()
            .filter(|(flag, _)| self.contains(*flag))
            .map(|(_, name)| *name)
            .collect();
        if names.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

/// One of the ten basic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    O,
    OA,
    OO,
    OOO,
    OAX,
    X,
    AX,
    XX,
    XXX,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::O,
        Family::OA,
        Family::OO,
        Family::OOO,
        Family::OAX,
        Family::X,
        Family::AX,
        Family::XX,
        Family::XXX,
    ];

    pub fn flag(self) -> PartClass {
        match self {
            Family::A => PartClass::A,
            Family::O => PartClass::O,
            Family::OA => PartClass::OA,
            Family::OO => PartClass::OO,
            Family::OOO => PartClass::OOO,
            Family::OAX => PartClass::OAX,
            Family::X => PartClass::X,
            Family::AX => PartClass::AX,
            Family::XX => PartClass::XX,
            Family::XXX => PartClass::XXX,
        }
    }

    fn negative(self) -> Option<Family> {
        match self {
            Family::X => Some(Family::O),
            Family::AX => Some(Family::OA),
            Family::XX => Some(Family::OO),
            Family::XXX => Some(Family::OOO),
            _ => None,
        }
    }

    /// The member with `len` stones, if any (in shorthand orientation).
    pub fn member(self, len: usize) -> Option<Part> {
        if let Some(pos) = self.negative() {
            return pos.member(len).map(|p| p.negated());
        }
        if len == 0 || len > MAX_PART_LEN {
            return None;
        }
        let odd = len % 2 == 1;
        // x on odd cells: an alternation starting with o.
        let alt = |n: usize| ODD_BLACK & low_mask(n);
        let bits = match self {
            Family::A if !odd => alt(len),
            Family::O if odd => alt(len),
            Family::OA if odd => alt(len - 1) << 1,
            Family::OO if !odd => alt(len - 1) << 1,
            Family::OOO if len >= 3 && odd => alt(len - 2) << 1,
            Family::OAX if len >= 4 && !odd => (alt(len - 2) << 1) | (1 << (len - 1)),
            _ => return None,
        };
        Some(Part::from_raw(bits, len))
    }
}

const ODD_BLACK: u128 = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA;

fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn flags_of(p: &Part) -> PartClass {
    let c = p.canonical();
    let mut flags = PartClass::empty();
    for fam in Family::ALL {
        if fam.member(c.len()).is_some_and(|m| m.canonical() == c) {
            flags |= fam.flag();
        }
    }
    let len = c.len();
    let base = flags;
    let has = |f: PartClass| base.contains(f);
    if has(PartClass::A) && len >= 8 && len != 12 {
        flags |= PartClass::A_PRIME;
    }
    if has(PartClass::O) && len >= 5 && len != 9 {
        flags |= PartClass::O_PRIME;
    }
    if has(PartClass::OO) && len >= 10 {
        flags |= PartClass::OO_PRIME;
    }
    if has(PartClass::OA) && len >= 7 {
        flags |= PartClass::OA_PRIME;
    }
    if (has(PartClass::OA) && len == 3) || (has(PartClass::OOO) && len >= 9) {
        flags |= PartClass::OOO_PRIME;
    }
    if (has(PartClass::A) && (len == 2 || len == 4)) || (has(PartClass::OO) && len == 6) {
        flags |= PartClass::I;
    }
    if has(PartClass::AX) && len == 3 {
        flags |= PartClass::XXO;
    }
    if has(PartClass::OO) && len == 8 {
        flags |= PartClass::OO8;
    }
    flags
}

/// All families containing `p`, in either orientation.
pub fn classify_part(p: &Part) -> PartClass {
    flags_of(p)
}

pub fn in_u(p: &Part) -> bool {
    flags_of(p).intersects(PartClass::U)
}

/// A count-vector coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KSlot {
    A,
    B,
    C,
    D,
    E,
    F,
    Y,
    Z,
}

pub fn k_slot(p: &Part) -> Option<KSlot> {
    let flags = flags_of(p);
    [
        (PartClass::O_PRIME, KSlot::A),
        (PartClass::OO_PRIME, KSlot::B),
        (PartClass::OOO_PRIME, KSlot::C),
        (PartClass::I, KSlot::D),
        (PartClass::XXO, KSlot::E),
        (PartClass::OO8, KSlot::F),
        (PartClass::A_PRIME, KSlot::Y),
        (PartClass::OA_PRIME, KSlot::Z),
    ]
    .into_iter()
    .find(|(flag, _)| flags.contains(*flag))
    .map(|(_, slot)| slot)
}

pub fn in_k(p: &Part) -> bool {
    k_slot(p).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CountVector {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub f: u32,
    pub y: u32,
    pub z: u32,
}

impl CountVector {
    pub fn new(v: [u32; 8]) -> CountVector {
        let [a, b, c, d, e, f, y, z] = v;
        CountVector { a, b, c, d, e, f, y, z }
    }

    pub fn as_array(&self) -> [u32; 8] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.y, self.z]
    }

    pub fn total(&self) -> u32 {
        self.as_array().iter().sum()
    }

    fn bump(&mut self, slot: KSlot) {
        let field = match slot {
            KSlot::A => &mut self.a,
            KSlot::B => &mut self.b,
            KSlot::C => &mut self.c,
            KSlot::D => &mut self.d,
            KSlot::E => &mut self.e,
            KSlot::F => &mut self.f,
            KSlot::Y => &mut self.y,
            KSlot::Z => &mut self.z,
        };
        *field += 1;
    }

    /// Property 0, given at least one part.
    pub fn property0(&self) -> bool {
        let (a, c) = (self.a, self.c);
        match (self.y, self.z) {
            (1, 0) | (0, 0) => a >= c,
            (0, 1) => a > c,
            _ => false,
        }
    }

    /// Property 1 without the Q exclusion.
    pub fn property1(&self) -> bool {
        self.y == 0 && self.z == 0 && self.a > self.c
    }

    pub fn property2(&self) -> bool {
        self.y == 0
            && self.z == 0
            && self.a == 0
            && self.b == 0
            && self.c == 0
            && self.e >= 1
            && (self.d == 0 || self.d + self.e >= 3)
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.as_array().map(|n| n.to_string());
        write!(f, "({})", v.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaxonomyError {
    #[error("part {0} is not in K")]
    NotInK(Part),
}

fn normalized(g: &Game) -> std::borrow::Cow<'_, Game> {
    if is_normalized(g) {
        std::borrow::Cow::Borrowed(g)
    } else {
        std::borrow::Cow::Owned(normalize(g))
    }
}

/// Count vector of the standard form of `g`.
pub fn count_vector(g: &Game) -> Result<CountVector, TaxonomyError> {
    count_vector_of(&normalized(g))
}

fn count_vector_of(g: &Game) -> Result<CountVector, TaxonomyError> {
    let mut cv = CountVector::default();
    for p in g.parts() {
        cv.bump(k_slot(p).ok_or(TaxonomyError::NotInK(*p))?);
    }
    Ok(cv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SClass {
    S1,
    S2,
    S0Only,
    NotInS,
}

impl SClass {
    pub fn in_s0(self) -> bool {
        self != SClass::NotInS
    }

    /// In S1 or S2.
    pub fn is_target(self) -> bool {
        matches!(self, SClass::S1 | SClass::S2)
    }
}

impl fmt::Display for SClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SClass::S1 => "S1",
            SClass::S2 => "S2",
            SClass::S0Only => "S0",
            SClass::NotInS => "none",
        })
    }
}

/// S-class of the standard form of `g`.
pub fn s_class(g: &Game) -> SClass {
    s_class_of(&normalized(g))
}

/// S-class of `g`, which must already be normalized.
pub(crate) fn s_class_of(g: &Game) -> SClass {
    if g.is_empty() {
        return SClass::NotInS;
    }
    let Ok(cv) = count_vector_of(g) else {
        return SClass::NotInS;
    };
    if cv.property1() && !in_q_of(g) {
        SClass::S1
    } else if cv.property2() {
        SClass::S2
    } else if cv.property0() {
        SClass::S0Only
    } else {
        SClass::NotInS
    }
}

fn game_list(src: &[&str]) -> Vec<Game> {
    src.iter()
        .map(|s| parse_position(s).expect("built-in position"))
        .collect()
}

pub fn q_games() -> &'static [Game] {
    static Q: OnceLock<Vec<Game>> = OnceLock::new();
    Q.get_or_init(|| game_list(&["o5 + a2", "o7 + a4", "o15 + a4 + a2"]))
}

pub fn ll_games() -> &'static [Game] {
    static LL: OnceLock<Vec<Game>> = OnceLock::new();
    LL.get_or_init(|| game_list(&["oo8", "o5 + oox + a4 + a2", "a14 + xxo + a4 + a2"]))
}

fn in_q_of(g: &Game) -> bool {
    q_games().contains(g)
}

pub fn in_q(g: &Game) -> bool {
    in_q_of(&normalized(g))
}

pub fn in_ll(g: &Game) -> bool {
    ll_games().contains(&normalized(g))
}

/// Every canonical U part with 1 to `max_len` stones, by length then key.
pub fn u_parts(max_len: usize) -> Vec<Part> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut row: Vec<Part> = Family::ALL
            .iter()
            .filter_map(|f| f.member(len))
            .map(|p| p.canonical())
            .collect();
        row.sort_unstable();
        row.dedup();
        out.extend(row);
    }
    out
}

/// Every canonical K part with at most `max_len` stones, by length then key.
pub fn k_parts(max_len: usize) -> Vec<Part> {
    u_parts(max_len).into_iter().filter(in_k).collect()
}

/// Every normalized game of K parts in S0, with at most `max_stones`
/// stones and `max_parts` parts. Games come in lexicographic order of
/// their part lists, each exactly once.
pub fn enumerate_s_games(max_stones: usize, max_parts: usize) -> impl Iterator<Item = Game> {
    let mut parts = k_parts(max_stones);
    parts.sort_unstable();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    collect_multisets(&parts, 0, max_stones, max_parts, &mut stack, &mut out);
    out.into_iter()
}

fn collect_multisets(
    parts: &[Part],
    start: usize,
    room: usize,
    slots: usize,
    stack: &mut Vec<Part>,
    out: &mut Vec<Game>,
) {
    if !stack.is_empty() {
        let g = Game::from_sorted(stack.clone());
        if is_normalized(&g) && s_class_of(&g).in_s0() {
            out.push(g);
        }
    }
    if slots == 0 {
        return;
    }
    for (i, p) in parts.iter().enumerate().skip(start) {
        if p.len() <= room {
            stack.push(*p);
            collect_multisets(parts, i, room - p.len(), slots - 1, stack, out);
            stack.pop();
        }
    }
}

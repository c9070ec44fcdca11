//! Reference solver on raw cell strings. Shares no code with the library:
//! no parts, no canonical forms, just cells and plain minimax.

#![allow(dead_code)]

use std::collections::HashMap;

use alc::{parse_position, Game};

pub fn game(s: &str) -> Game {
    parse_position(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Every position reachable by one move of `me` (b'x' or b'o').
pub fn raw_children(cells: &[u8], me: u8) -> Vec<Vec<u8>> {
    let them = if me == b'x' { b'o' } else { b'x' };
    let mut out = Vec::new();
    for i in 0..cells.len() {
        if cells[i] != me {
            continue;
        }
        for j in [i.wrapping_sub(1), i + 1] {
            if j < cells.len() && cells[j] == them {
                let mut next = cells.to_vec();
                next[i] = b'-';
                next[j] = me;
                out.push(next);
            }
        }
    }
    out
}

#[derive(Default)]
pub struct Brute {
    memo: HashMap<(Vec<u8>, u8), bool>,
}

impl Brute {
    pub fn wins_first(&mut self, cells: &[u8], me: u8) -> bool {
        if let Some(&w) = self.memo.get(&(cells.to_vec(), me)) {
            return w;
        }
        let them = if me == b'x' { b'o' } else { b'x' };
        let w = raw_children(cells, me).iter().any(|c| !self.wins_first(c, them));
        self.memo.insert((cells.to_vec(), me), w);
        w
    }

    /// Outcome letter of a raw position.
    pub fn outcome(&mut self, cells: &str) -> char {
        let c = cells.as_bytes();
        match (self.wins_first(c, b'x'), self.wins_first(c, b'o')) {
            (false, false) => 'P',
            (true, true) => 'N',
            (true, false) => 'L',
            (false, true) => 'R',
        }
    }

    /// g and h are interchangeable iff g + (-h) is a second-player win.
    pub fn equivalent(&mut self, g: &str, h: &str) -> bool {
        let neg: String = h
            .chars()
            .map(|c| match c {
                'x' => 'o',
                'o' => 'x',
                other => other,
            })
            .collect();
        self.outcome(&format!("{g}-{neg}")) == 'P'
    }
}

/// Raw cell string of a library game; empty for the zero game.
pub fn cells(g: &Game) -> String {
    if g.is_empty() {
        String::new()
    } else {
        alc::format_game(g, alc::Format::Stones)
    }
}

/// Strings over `o`, `x`, `-` with at least one stone.
pub fn raw_position(max_len: usize) -> impl proptest::strategy::Strategy<Value = String> {
    use proptest::prelude::*;
    (
        prop_oneof![Just('o'), Just('x')],
        proptest::collection::vec(prop_oneof![Just('o'), Just('x'), Just('-')], 0..max_len),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(stone, mut rest, at)| {
            let i = at.index(rest.len() + 1);
            rest.insert(i, stone);
            rest.into_iter().collect()
        })
}

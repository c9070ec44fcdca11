mod common;

use alc::{expand_shorthand, parse_position, Game, Move, Stone};
use common::{game, raw_children};
use proptest::prelude::*;

fn raw_position() -> impl Strategy<Value = String> {
    common::raw_position(14)
}

#[test]
fn parse_examples() {
    assert_eq!(game("ox-oox").num_parts(), 2);
    assert_eq!(
        game("ox-oox"),
        Game::new([expand_shorthand("ox").unwrap(), expand_shorthand("oox").unwrap()])
    );
    assert!(game("ooo").is_empty());
    assert_eq!(game("o5 + a2"), game("oxoxo-ox"));
    assert_eq!(expand_shorthand("oo7").unwrap().to_string(), "ooxoxox");
    assert_eq!(expand_shorthand("oo7oo").unwrap().to_string(), "ooxoxoo");
    assert_eq!(expand_shorthand("a2").unwrap().to_string(), "ox");
    assert!(parse_position("").is_err());
    assert!(parse_position("oxq").is_err());
    assert!(parse_position("oo6oo").is_err());
}

#[test]
fn move_examples() {
    assert_eq!(game("oxoo").legal_moves(Stone::Black).len(), 2);
    assert_eq!(game("oxox").legal_moves(Stone::Black).len(), 3);
    assert!(Game::empty().legal_moves(Stone::White).is_empty());
    let after = game("oxox")
        .apply_move(&Move {
            part: 0,
            from: 4,
            to: 3,
        })
        .unwrap();
    assert_eq!(after, game("xxo"));
    let after = game("ooxoxoxox")
        .apply_move(&Move {
            part: 0,
            from: 7,
            to: 8,
        })
        .unwrap();
    assert_eq!(after, game("ooxoxo"));
}

#[test]
fn negation_examples() {
    assert_eq!(game("xoxx").negate(), game("oxoo"));
    assert_eq!(game("ox").negate(), game("ox"));
    assert_eq!(Game::empty().negate(), Game::empty());
}

proptest! {
    #[test]
    fn children_match_raw_enumeration(s in raw_position()) {
        let g = game(&s);
        for (player, sym) in [(Stone::Black, b'x'), (Stone::White, b'o')] {
            let mut ours: Vec<Game> = g.children(player).map(|(_, c)| c).collect();
            let mut raw: Vec<Game> = raw_children(s.as_bytes(), sym)
                .into_iter()
                .map(|c| game(std::str::from_utf8(&c).unwrap()))
                .collect();
            ours.sort();
            raw.sort();
            prop_assert_eq!(ours, raw);
        }
    }

    #[test]
    fn each_move_removes_one_stone(s in raw_position()) {
        let g = game(&s);
        for player in [Stone::Black, Stone::White] {
            for (_, child) in g.children(player) {
                // Dropped monochromatic parts only shrink the count further.
                prop_assert!(child.stone_count() < g.stone_count());
            }
        }
    }

    #[test]
    fn negation_swaps_players(s in raw_position()) {
        let g = game(&s);
        prop_assert_eq!(g.negate().negate(), g.clone());
        let mut left: Vec<Game> = g.negate().children(Stone::Black).map(|(_, c)| c.negate()).collect();
        let mut right: Vec<Game> = g.children(Stone::White).map(|(_, c)| c).collect();
        left.sort();
        right.sort();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reversal_is_the_same_game(s in raw_position()) {
        let rev: String = s.chars().rev().collect();
        prop_assert_eq!(game(&s), game(&rev));
    }
}

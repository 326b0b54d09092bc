//! The bundled example games and structures.

use crate::epistemic::TypeStructure;
use crate::format::{parse_game, parse_state_space_spec, parse_type_structure, state_space_from_spec};
use crate::game::{DynamicGame, GameSpec};
use crate::separating::StateSpace;

pub const CENTIPEDE: &str = include_str!("../../../fixtures/centipede.game.json");
pub const BROKEN_RECALL: &str = include_str!("../../../fixtures/broken_recall.game.json");
pub const STATIC3X3: &str = include_str!("../../../fixtures/static3x3.game.json");
pub const TABLE1: &str = include_str!("../../../fixtures/table1.ts.json");
pub const TABLE2_SS: &str = include_str!("../../../fixtures/table2.ss.json");
pub const TABLE3: &str = include_str!("../../../fixtures/table3.ts.json");
pub const TABLE3_SS: &str = include_str!("../../../fixtures/table3.ss.json");
pub const STATIC3X3_TS: &str = include_str!("../../../fixtures/static3x3.ts.json");
pub const STATIC3X3_SS: &str = include_str!("../../../fixtures/static3x3.ss.json");

/// The common-interest centipede: Out, then Stop/Go, then Down/Across.
pub fn centipede() -> DynamicGame {
    parse_game(CENTIPEDE).expect("bundled fixture")
}

pub fn static3x3() -> DynamicGame {
    parse_game(STATIC3X3).expect("bundled fixture")
}

/// The centipede with both of Ann's nodes in one information set.
pub fn broken_recall_spec() -> GameSpec {
    serde_json::from_str(BROKEN_RECALL).expect("bundled fixture")
}

pub fn table1(game: &DynamicGame) -> TypeStructure {
    parse_type_structure(game, TABLE1).expect("bundled fixture")
}

pub fn table3(game: &DynamicGame) -> TypeStructure {
    parse_type_structure(game, TABLE3).expect("bundled fixture")
}

pub fn static_structure(game: &DynamicGame) -> TypeStructure {
    parse_type_structure(game, STATIC3X3_TS).expect("bundled fixture")
}

fn state_space(game: &DynamicGame, host: &TypeStructure, text: &str) -> StateSpace {
    let spec = parse_state_space_spec(text).expect("bundled fixture");
    state_space_from_spec(game, host, &spec).expect("bundled fixture")
}

/// Real types `{t_a} × {t_b}` in the Table-1 host.
pub fn table2_state_space(game: &DynamicGame, host: &TypeStructure) -> StateSpace {
    state_space(game, host, TABLE2_SS)
}

pub fn table3_state_space(game: &DynamicGame, host: &TypeStructure) -> StateSpace {
    state_space(game, host, TABLE3_SS)
}

pub fn static_state_space(game: &DynamicGame, host: &TypeStructure) -> StateSpace {
    state_space(game, host, STATIC3X3_SS)
}

//! Seeded generators for randomized property runs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::beliefs::{lps_to_cps, Lps, Measure};
use crate::epistemic::TypeStructure;
use crate::game::DynamicGame;
use crate::separating::StateSpace;

/// A structure with `1..=max_types` types per player. Each belief comes from a random
/// ordered partition of the joint space whose levels are uniform on their blocks, so every
/// conditional is Dirac or uniform on a block.
pub fn random_structure(game: &DynamicGame, rng: &mut impl Rng, max_types: usize) -> TypeStructure {
    let counts: Vec<usize> = game.players().map(|_| rng.gen_range(1..=max_types)).collect();
    let types: Vec<Vec<String>> = game
        .players()
        .map(|i| (0..counts[i.0]).map(|t| format!("t{t}_{}", game.player_name(i))).collect())
        .collect();
    let mut ts = TypeStructure::new_unchecked(types.clone(), vec![Vec::new(); game.num_players()]);
    let beliefs = game
        .players()
        .map(|i| {
            let size = ts.joint_size(game, i);
            let family = ts.joint_family(game, i);
            (0..counts[i.0])
                .map(|_| lps_to_cps(&random_lps(rng, size), size, &family))
                .collect()
        })
        .collect();
    ts = TypeStructure::new(game, types, beliefs).expect("LPS-induced beliefs satisfy the axioms");
    ts
}

fn random_lps(rng: &mut impl Rng, size: usize) -> Lps {
    let mut atoms: Vec<usize> = (0..size).collect();
    atoms.shuffle(rng);
    let mut levels = Vec::new();
    let mut rest = atoms.as_slice();
    while !rest.is_empty() {
        // Favour small blocks so Dirac levels are common.
        let len = if rng.gen_bool(0.6) { 1 } else { rng.gen_range(1..=rest.len()) };
        let (block, tail) = rest.split_at(len);
        levels.push(Measure::uniform(&block.iter().copied().collect()));
        rest = tail;
    }
    Lps { levels }
}

/// Nonempty random real-type sets.
pub fn random_state_space(game: &DynamicGame, host: &TypeStructure, rng: &mut impl Rng) -> StateSpace {
    let real = game
        .players()
        .map(|i| {
            let n = host.num_types(i);
            loop {
                let set: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if !set.is_empty() {
                    break set;
                }
            }
        })
        .collect();
    StateSpace { real }
}

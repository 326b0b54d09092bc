//! Shared inputs for the solver benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcsbr_core::fixtures;
use rcsbr_core::random::random_structure;
use rcsbr_core::{DynamicGame, TypeStructure};

/// The fixture games, by name.
pub fn games() -> Vec<(&'static str, DynamicGame)> {
    vec![("centipede", fixtures::centipede()), ("static3x3", fixtures::static3x3())]
}

/// `n` reproducible random structures with at most three types per player.
pub fn structures(game: &DynamicGame, n: usize, seed: u64) -> Vec<TypeStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_structure(game, &mut rng, 3)).collect()
}

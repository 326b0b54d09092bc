//! Exact-arithmetic analysis of finite dynamic games under rationality and common strong
//! belief in rationality.
//!
//! The crate is organised bottom-up:
//!
//! * [`game`] validates extensive forms and enumerates (reduced) strategies;
//! * [`beliefs`] implements conditional probability systems, strong belief, sequential best
//!   replies and the complete search for justifying beliefs;
//! * [`solution`] computes Strong Rationalizability, full strong best-reply sets, their
//!   misaligned variant and the static degenerations;
//! * [`epistemic`] evaluates belief operators on finite type structures;
//! * [`separating`] handles state spaces, player-specific closures and real/imaginary types.
//!
//! All arithmetic is exact ([`Rational`]); no tolerance is used anywhere.

use std::collections::BTreeSet;

pub mod beliefs;
pub mod epistemic;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod lp;
pub mod random;
pub mod rational;
pub mod separating;
pub mod sets;
pub mod solution;

/// A finite set of atoms, identified by index into some declared domain.
pub type AtomSet = BTreeSet<usize>;

pub use beliefs::{Cps, CpsError, Lps, Measure};
pub use epistemic::{EventProfile, StateSet, TypeStructure};
pub use game::{validate_game, DynamicGame, GameError, GameSpec, InfoSetRef, PlayerId};
pub use rational::Rational;
pub use separating::{Closure, SeparatingStructure, StateSpace, Taxonomy};
pub use sets::{FamilyKind, PlayerSetFamily, ProductSet, SetFamily};

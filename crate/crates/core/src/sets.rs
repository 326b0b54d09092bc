//! Product sets of strategies and families of them.

use std::collections::BTreeSet;
use std::fmt;

use crate::game::{DynamicGame, PlayerId};
use crate::AtomSet;

/// `∏_j F_j`, stored per player. A product with an empty component is the empty set of
/// profiles and is normalised so that every component is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSet {
    components: Vec<BTreeSet<usize>>,
}

impl ProductSet {
    pub fn new(components: Vec<BTreeSet<usize>>) -> Self {
        if components.iter().any(BTreeSet::is_empty) {
            Self::empty(components.len())
        } else {
            Self { components }
        }
    }

    pub fn empty(players: usize) -> Self {
        Self {
            components: vec![BTreeSet::new(); players],
        }
    }

    /// The full strategy space `S`.
    pub fn full(game: &DynamicGame) -> Self {
        Self::new(
            game.players()
                .map(|i| (0..game.num_strategies(i)).collect())
                .collect(),
        )
    }

    /// Build from strategy labels, one list per player.
    pub fn from_labels(game: &DynamicGame, labels: &[Vec<String>]) -> Result<Self, String> {
        if labels.len() != game.num_players() {
            return Err(format!(
                "expected {} components, found {}",
                game.num_players(),
                labels.len()
            ));
        }
        let components = game
            .players()
            .zip(labels)
            .map(|(i, ls)| {
                ls.iter()
                    .map(|l| {
                        game.strategy_by_label(i, l).ok_or_else(|| {
                            format!("player `{}` has no strategy `{l}`", game.player_name(i))
                        })
                    })
                    .collect::<Result<BTreeSet<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(components))
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().any(BTreeSet::is_empty)
    }

    pub fn components(&self) -> &[BTreeSet<usize>] {
        &self.components
    }

    pub fn component(&self, i: PlayerId) -> &BTreeSet<usize> {
        &self.components[i.0]
    }

    pub fn contains(&self, profile: &[usize]) -> bool {
        self.components.iter().zip(profile).all(|(c, s)| c.contains(s))
    }

    /// Componentwise inclusion (the empty product is below everything).
    pub fn is_subset(&self, other: &Self) -> bool {
        self.is_empty()
            || self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.is_subset(b))
    }

    /// `F_{-i}` as a set of opponent profile indices.
    pub fn opponent_event(&self, game: &DynamicGame, i: PlayerId) -> AtomSet {
        let radix = game.opponent_profiles(i);
        (0..radix.len())
            .filter(|&y| {
                radix
                    .decode(y)
                    .iter()
                    .zip(game.opponents(i))
                    .all(|(s, j)| self.components[j.0].contains(s))
            })
            .collect()
    }

    pub fn labels(&self, game: &DynamicGame) -> Vec<Vec<String>> {
        game.players()
            .map(|i| game.set_labels(i, &self.components[i.0]))
            .collect()
    }

    /// `{Out} × {Stop, Go}`, or `∅`.
    pub fn render(&self, game: &DynamicGame) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.labels(game)
            .iter()
            .map(|ls| format!("{{{}}}", ls.join(", ")))
            .collect::<Vec<_>>()
            .join(" × ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    SrSequence,
    Fsbrs,
    FsbrsPlayer,
    Mfsbrs,
    MfsbrsPlayer,
    Fbrs,
    PInfinity,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::SrSequence => "SR",
            FamilyKind::Fsbrs => "𝔉",
            FamilyKind::FsbrsPlayer => "𝔉_i",
            FamilyKind::Mfsbrs => "𝕄",
            FamilyKind::MfsbrsPlayer => "𝕄_i",
            FamilyKind::Fbrs => "FBRS",
            FamilyKind::PInfinity => "P∞",
        })
    }
}

/// A deduplicated, sorted family of product sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub kind: FamilyKind,
    members: Vec<ProductSet>,
}

impl SetFamily {
    pub fn new(kind: FamilyKind, members: impl IntoIterator<Item = ProductSet>) -> Self {
        let members: BTreeSet<ProductSet> = members.into_iter().collect();
        Self {
            kind,
            members: members.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &[ProductSet] {
        &self.members
    }

    pub fn contains(&self, p: &ProductSet) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `𝔉_i`-style projection onto one player.
    pub fn project(&self, i: PlayerId) -> PlayerSetFamily {
        let kind = match self.kind {
            FamilyKind::Mfsbrs | FamilyKind::MfsbrsPlayer => FamilyKind::MfsbrsPlayer,
            _ => FamilyKind::FsbrsPlayer,
        };
        PlayerSetFamily::new(kind, i, self.members.iter().map(|m| m.component(i).clone()))
    }

    /// Is every component of `p` a member of the corresponding projection?
    pub fn contains_in_product_of_projections(&self, p: &ProductSet) -> bool {
        (0..p.components().len()).all(|i| self.project(PlayerId(i)).contains(p.component(PlayerId(i))))
    }
}

/// A family of subsets of one player's strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerSetFamily {
    pub kind: FamilyKind,
    pub player: PlayerId,
    members: Vec<BTreeSet<usize>>,
}

impl PlayerSetFamily {
    pub fn new(kind: FamilyKind, player: PlayerId, members: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let members: BTreeSet<BTreeSet<usize>> = members.into_iter().collect();
        Self {
            kind,
            player,
            members: members.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &[BTreeSet<usize>] {
        &self.members
    }

    pub fn contains(&self, s: &BTreeSet<usize>) -> bool {
        self.members.contains(s)
    }

    pub fn labels(&self, game: &DynamicGame) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|m| game.set_labels(self.player, m))
            .collect()
    }
}

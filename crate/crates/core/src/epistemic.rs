//! Finite type structures and the belief operators evaluated on them.
//!
//! Player `i`'s beliefs live on the joint space `S_{-i} × T_{-i}`. A point `(y, τ)` is encoded
//! as `y·|T_{-i}| + τ`, where `y` indexes [`DynamicGame::opponent_profiles`] and `τ` indexes
//! opponent type profiles in mixed radix (opponents in player order).

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::beliefs::{family_events, sequential_best_replies, validate_cps, Cps, CpsError, Measure};
use crate::game::{DynamicGame, InfoSetRef, MixedRadix, PlayerId};
use crate::sets::ProductSet;
use crate::solution::{is_fsbrs, Certificate};
use crate::AtomSet;

/// Pairs `(strategy, type)` of one player.
pub type StateSet = BTreeSet<(usize, usize)>;

/// One [`StateSet`] per player.
pub type EventProfile = Vec<StateSet>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeStructureError {
    #[error("structure has {found} players, the game has {expected}")]
    PlayerCount { expected: usize, found: usize },
    #[error("player `{0}` has no types")]
    NoTypes(String),
    #[error("player `{player}` lists type `{label}` twice")]
    DuplicateType { player: String, label: String },
    #[error("type `{label}` of player `{player}` is not indexed by the player's conditioning family")]
    WrongFamily { player: String, label: String },
    #[error("type `{label}` of player `{player}`: {source}")]
    Axiom {
        player: String,
        label: String,
        #[source]
        source: Box<CpsError>,
    },
}

/// A finite type structure over a fixed game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeStructure {
    types: Vec<Vec<String>>,
    beliefs: Vec<Vec<Cps>>,
}

impl TypeStructure {
    /// Build and validate.
    pub fn new(game: &DynamicGame, types: Vec<Vec<String>>, beliefs: Vec<Vec<Cps>>) -> Result<Self, TypeStructureError> {
        let ts = Self { types, beliefs };
        validate_type_structure(game, &ts)?;
        Ok(ts)
    }

    pub(crate) fn new_unchecked(types: Vec<Vec<String>>, beliefs: Vec<Vec<Cps>>) -> Self {
        Self { types, beliefs }
    }

    pub fn num_types(&self, i: PlayerId) -> usize {
        self.types[i.0].len()
    }

    pub fn types(&self, i: PlayerId) -> &[String] {
        &self.types[i.0]
    }

    pub fn type_label(&self, i: PlayerId, t: usize) -> &str {
        &self.types[i.0][t]
    }

    pub fn type_by_label(&self, i: PlayerId, label: &str) -> Option<usize> {
        self.types[i.0].iter().position(|t| t == label)
    }

    /// `β_i(t)`, a CPS on the joint space of player `i`.
    pub fn belief(&self, i: PlayerId, t: usize) -> &Cps {
        &self.beliefs[i.0][t]
    }

    /// Mixed radix over opponent type profiles.
    pub fn type_radix(&self, game: &DynamicGame, i: PlayerId) -> MixedRadix {
        MixedRadix::new(game.opponents(i).map(|j| self.types[j.0].len()).collect())
    }

    pub fn joint_size(&self, game: &DynamicGame, i: PlayerId) -> usize {
        game.opponent_profiles(i).len() * self.type_radix(game, i).len()
    }

    pub fn encode_joint(&self, game: &DynamicGame, i: PlayerId, y: usize, tau: &[usize]) -> usize {
        let radix = self.type_radix(game, i);
        y * radix.len() + radix.encode(tau)
    }

    /// `(opponent profile, opponent type digits)`.
    pub fn decode_joint(&self, game: &DynamicGame, i: PlayerId, idx: usize) -> (usize, Vec<usize>) {
        let radix = self.type_radix(game, i);
        (idx / radix.len(), radix.decode(idx % radix.len()))
    }

    /// `{ S_{-i}(h) × T_{-i} }`, in the order of the game's conditioning family.
    pub fn joint_family(&self, game: &DynamicGame, i: PlayerId) -> Vec<AtomSet> {
        let nt = self.type_radix(game, i).len();
        family_events(game, i)
            .iter()
            .map(|c| c.iter().flat_map(|&y| (0..nt).map(move |t| y * nt + t)).collect())
            .collect()
    }

    /// Restrict to the given types (sorted indices per player). `None` when some kept type
    /// puts mass on a dropped one.
    pub fn restrict(&self, game: &DynamicGame, keep: &[Vec<usize>]) -> Option<Self> {
        let small = Self {
            types: keep
                .iter()
                .enumerate()
                .map(|(j, ks)| ks.iter().map(|&t| self.types[j][t].clone()).collect())
                .collect(),
            beliefs: vec![Vec::new(); keep.len()],
        };
        let mut beliefs = Vec::with_capacity(keep.len());
        for i in game.players() {
            let family = small.joint_family(game, i);
            let size = small.joint_size(game, i);
            let mut per_type = Vec::new();
            for &t in &keep[i.0] {
                let mut conditionals = Vec::new();
                for m in self.beliefs[i.0][t].conditionals() {
                    let mut pairs = Vec::new();
                    for (idx, p) in m.iter() {
                        let (y, tau) = self.decode_joint(game, i, idx);
                        let local = game
                            .opponents(i)
                            .zip(&tau)
                            .map(|(j, &tj)| keep[j.0].iter().position(|&k| k == tj))
                            .collect::<Option<Vec<_>>>()?;
                        pairs.push((small.encode_joint(game, i, y, &local), p.clone()));
                    }
                    conditionals.push(Measure::from_pairs(pairs));
                }
                per_type.push(Cps::new_unchecked(size, family.clone(), conditionals));
            }
            beliefs.push(per_type);
        }
        Some(Self {
            types: small.types,
            beliefs,
        })
    }

    /// Disjoint union of structures over the same game; `label(k, l)` renames type `l` of
    /// part `k`. Types of a part only ever believe in types of the same part.
    pub fn disjoint_union(game: &DynamicGame, parts: &[TypeStructure], label: impl Fn(usize, &str) -> String) -> Self {
        let n = game.num_players();
        let mut offsets = vec![vec![0usize; n]; parts.len()];
        let mut types = vec![Vec::new(); n];
        for (k, part) in parts.iter().enumerate() {
            for j in 0..n {
                offsets[k][j] = types[j].len();
                types[j].extend(part.types[j].iter().map(|l| label(k, l)));
            }
        }
        let mut union = Self {
            types,
            beliefs: vec![Vec::new(); n],
        };
        let mut beliefs = vec![Vec::new(); n];
        for i in game.players() {
            let family = union.joint_family(game, i);
            let size = union.joint_size(game, i);
            for (k, part) in parts.iter().enumerate() {
                for cps in &part.beliefs[i.0] {
                    let mapped = cps.push_forward(size, family.clone(), |idx| {
                        let (y, tau) = part.decode_joint(game, i, idx);
                        let shifted: Vec<usize> = game
                            .opponents(i)
                            .zip(&tau)
                            .map(|(j, &t)| offsets[k][j.0] + t)
                            .collect();
                        union.encode_joint(game, i, y, &shifted)
                    });
                    beliefs[i.0].push(mapped);
                }
            }
        }
        union.beliefs = beliefs;
        union
    }
}

/// Check type labels and the CPS axioms of every type. Returns warnings for types of the
/// same player that hold identical beliefs (redundant types are accepted).
pub fn validate_type_structure(game: &DynamicGame, ts: &TypeStructure) -> Result<Vec<String>, TypeStructureError> {
    if ts.types.len() != game.num_players() || ts.beliefs.len() != game.num_players() {
        return Err(TypeStructureError::PlayerCount {
            expected: game.num_players(),
            found: ts.types.len(),
        });
    }
    let mut warnings = Vec::new();
    for i in game.players() {
        let player = game.player_name(i).to_string();
        if ts.types[i.0].is_empty() {
            return Err(TypeStructureError::NoTypes(player));
        }
        let mut seen = BTreeSet::new();
        for l in &ts.types[i.0] {
            if !seen.insert(l) {
                return Err(TypeStructureError::DuplicateType {
                    player,
                    label: l.clone(),
                });
            }
        }
        let family = ts.joint_family(game, i);
        let size = ts.joint_size(game, i);
        for (t, cps) in ts.beliefs[i.0].iter().enumerate() {
            let label = ts.types[i.0][t].clone();
            if cps.family() != family.as_slice() || cps.domain() != size {
                return Err(TypeStructureError::WrongFamily { player, label });
            }
            validate_cps(cps).map_err(|source| TypeStructureError::Axiom {
                player: player.clone(),
                label,
                source: Box::new(source),
            })?;
        }
        if ts.beliefs[i.0].len() != ts.types[i.0].len() {
            return Err(TypeStructureError::WrongFamily {
                player,
                label: "<missing beliefs>".into(),
            });
        }
        for t in 0..ts.types[i.0].len() {
            for u in t + 1..ts.types[i.0].len() {
                if ts.beliefs[i.0][t] == ts.beliefs[i.0][u] {
                    warnings.push(format!(
                        "player `{player}`: types `{}` and `{}` hold identical beliefs",
                        ts.types[i.0][t], ts.types[i.0][u]
                    ));
                }
            }
        }
    }
    Ok(warnings)
}

/// `marg_{S_{-i}} β_i(t)`.
pub fn first_order_cps(game: &DynamicGame, ts: &TypeStructure, i: PlayerId, t: usize) -> Cps {
    let nt = ts.type_radix(game, i).len();
    ts.belief(i, t)
        .push_forward(game.opponent_profiles(i).len(), family_events(game, i), |idx| idx / nt)
}

fn all_strategies_with(game: &DynamicGame, i: PlayerId, types: impl Iterator<Item = usize>) -> StateSet {
    types
        .flat_map(|t| (0..game.num_strategies(i)).map(move |s| (s, t)))
        .collect()
}

/// `E_{-i} = ∏_{j≠i} E_j` on player `i`'s joint space.
pub fn opponent_product(game: &DynamicGame, ts: &TypeStructure, i: PlayerId, e: &EventProfile) -> AtomSet {
    (0..ts.joint_size(game, i))
        .filter(|&idx| {
            let (y, tau) = ts.decode_joint(game, i, idx);
            game.opponent_profiles(i)
                .decode(y)
                .into_iter()
                .zip(tau)
                .zip(game.opponents(i))
                .all(|((s, t), j)| e[j.0].contains(&(s, t)))
        })
        .collect()
}

/// `Bel_{i,h}(E_{-i})`.
pub fn bel(game: &DynamicGame, ts: &TypeStructure, i: PlayerId, h: InfoSetRef, e: &AtomSet) -> StateSet {
    let k = game
        .event_index_of(i, h)
        .expect("h must be the root or an information set of player i");
    all_strategies_with(
        game,
        i,
        (0..ts.num_types(i)).filter(|&t| ts.belief(i, t).conditional(k).mass_of(e).is_one()),
    )
}

/// `SB_i(E_{-i})`, with `SB_i(∅) = ∅`.
pub fn sb(game: &DynamicGame, ts: &TypeStructure, i: PlayerId, e: &AtomSet) -> StateSet {
    if e.is_empty() {
        return StateSet::new();
    }
    let family = ts.joint_family(game, i);
    all_strategies_with(
        game,
        i,
        (0..ts.num_types(i)).filter(|&t| {
            family
                .iter()
                .zip(ts.belief(i, t).conditionals())
                .all(|(c, m)| c.is_disjoint(e) || m.mass_of(e).is_one())
        }),
    )
}

/// `Rat_i` for every player.
pub fn rat(game: &DynamicGame, ts: &TypeStructure) -> EventProfile {
    game.players()
        .map(|i| {
            (0..ts.num_types(i))
                .flat_map(|t| {
                    sequential_best_replies(game, i, &first_order_cps(game, ts, i, t))
                        .into_iter()
                        .map(move |s| (s, t))
                })
                .collect()
        })
        .collect()
}

fn intersect(a: &EventProfile, b: &EventProfile) -> EventProfile {
    a.iter().zip(b).map(|(x, y)| x.intersection(y).cloned().collect()).collect()
}

/// The decreasing sequence `CSB^0(Rat) = Rat, CSB^1(Rat), …` up to its fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub levels: Vec<EventProfile>,
}

impl Trace {
    pub fn fixpoint(&self) -> &EventProfile {
        self.levels.last().expect("a trace starts with Rat")
    }
}

fn iterate(game: &DynamicGame, ts: &TypeStructure, op: impl Fn(PlayerId, &AtomSet) -> StateSet, limit: Option<usize>) -> Trace {
    let rat = rat(game, ts);
    let mut levels = vec![rat.clone()];
    let mut believed: Vec<EventProfile> = Vec::new();
    loop {
        if limit.is_some_and(|m| levels.len() > m) {
            break;
        }
        let last = levels.last().unwrap().clone();
        let step: EventProfile = game
            .players()
            .map(|i| op(i, &opponent_product(game, ts, i, &last)))
            .collect();
        believed.push(step);
        // Rat ∩ ⋂_{k<m} Op(E^k), literally.
        let next = believed.iter().fold(rat.clone(), |acc, b| intersect(&acc, b));
        if next == last {
            break;
        }
        levels.push(next);
    }
    Trace { levels }
}

/// `CSB^m(Rat)`.
pub fn csb(game: &DynamicGame, ts: &TypeStructure, m: usize) -> EventProfile {
    let trace = iterate(game, ts, |i, e| sb(game, ts, i, e), Some(m));
    trace.levels.get(m).unwrap_or_else(|| trace.fixpoint()).clone()
}

/// Rationality and common strong belief in rationality, with its full trace.
pub fn rcsbr(game: &DynamicGame, ts: &TypeStructure) -> Trace {
    iterate(game, ts, |i, e| sb(game, ts, i, e), None)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("the game is not static: some information set lies below the root")]
pub struct NotStatic;

/// Rationality and common belief in rationality on a one-shot game.
pub fn rcbr(game: &DynamicGame, ts: &TypeStructure) -> Result<Trace, NotStatic> {
    if !game.is_static() {
        return Err(NotStatic);
    }
    Ok(iterate(game, ts, |i, e| bel(game, ts, i, InfoSetRef::Root, e), None))
}

/// Strategy projection of an event profile.
pub fn project(event: &EventProfile) -> ProductSet {
    ProductSet::new(event.iter().map(|e| e.iter().map(|&(s, _)| s).collect()).collect())
}

/// Outcome of checking that the RCSBR projection is a full strong best-reply set.
#[derive(Debug, Clone)]
pub struct BfReport {
    pub projection: ProductSet,
    pub certificate: Option<Certificate>,
}

impl BfReport {
    pub fn passes(&self) -> bool {
        self.certificate.is_some()
    }
}

pub fn check_theorem_bf(game: &DynamicGame, ts: &TypeStructure) -> BfReport {
    let projection = project(rcsbr(game, ts).fixpoint());
    let certificate = is_fsbrs(game, &projection);
    BfReport {
        projection,
        certificate,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("the target set is not a full strong best-reply set")]
    NotAnFsbrs,
    #[error("the target set is empty")]
    EmptyTarget,
}

/// One type per listed certificate; `assign[j][s]` is the type that opponents attach to
/// strategy `s` of player `j`.
pub(crate) fn assemble(
    game: &DynamicGame,
    labels: Vec<Vec<String>>,
    first_order: Vec<Vec<Cps>>,
    assign: &[Vec<usize>],
) -> TypeStructure {
    let mut ts = TypeStructure::new_unchecked(labels, vec![Vec::new(); game.num_players()]);
    let mut beliefs = Vec::new();
    for i in game.players() {
        let family = ts.joint_family(game, i);
        let size = ts.joint_size(game, i);
        let radix = game.opponent_profiles(i).clone();
        beliefs.push(
            first_order[i.0]
                .iter()
                .map(|cps| {
                    cps.push_forward(size, family.clone(), |y| {
                        let tau: Vec<usize> = radix
                            .decode(y)
                            .into_iter()
                            .zip(game.opponents(i))
                            .map(|(s, j)| assign[j.0][s])
                            .collect();
                        ts.encode_joint(game, i, y, &tau)
                    })
                })
                .collect(),
        );
    }
    ts.beliefs = beliefs;
    ts
}

/// Type label used by the constructors: `t[<strategy>]_<player>`.
pub(crate) fn strategy_type_label(game: &DynamicGame, i: PlayerId, s: usize, prefix: &str) -> String {
    format!("{prefix}[{}]_{}", game.strategy_label(i, s), game.player_name(i))
}

/// A structure whose RCSBR projects exactly onto the given full strong best-reply set:
/// one type per strategy in `F_i`, holding that strategy's certificate as first-order belief.
pub fn construct_structure_for_fsbrs(game: &DynamicGame, f: &ProductSet) -> Result<TypeStructure, ConstructError> {
    if f.is_empty() {
        return Err(ConstructError::EmptyTarget);
    }
    let cert = is_fsbrs(game, f).ok_or(ConstructError::NotAnFsbrs)?;
    let mut labels = Vec::new();
    let mut first_order = Vec::new();
    let mut assign = Vec::new();
    for i in game.players() {
        let members: Vec<usize> = f.component(i).iter().copied().collect();
        labels.push(members.iter().map(|&s| strategy_type_label(game, i, s, "t")).collect());
        first_order.push(members.iter().map(|&s| cert.get(i, s).unwrap().clone()).collect());
        assign.push(
            (0..game.num_strategies(i))
                .map(|s| members.iter().position(|&m| m == s).unwrap_or(0))
                .collect(),
        );
    }
    let ts = assemble(game, labels, first_order, &assign);
    debug_assert!(validate_type_structure(game, &ts).is_ok());
    Ok(ts)
}

//! State spaces, player-specific closures and separating type structures.
//!
//! A finite host [`TypeStructure`] plays the part of the ambient space of belief hierarchies.
//! A state space picks the *real* types `T̃_i` of every player; a closure for player `i`
//! enlarges it to a belief-closed set, and the own types it adds are *imaginary*.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::epistemic::{
    assemble, project, rcsbr, strategy_type_label, EventProfile, StateSet, Trace, TypeStructure,
};
use crate::game::{DynamicGame, InfoSetRef, PlayerId};
use crate::sets::ProductSet;
use crate::solution::{is_fsbrs, mfsbrs_witnesses, Families};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparatingError {
    #[error("player `{player}` has no type `{label}` in the host")]
    UnknownType { player: String, label: String },
    #[error("the state space needs at least one real type for player `{0}`")]
    EmptyRealTypes(String),
    #[error("the closure for `{owner}` does not contain all of that player's real types")]
    ClosureMissesRealTypes { owner: String },
    #[error("the closure for `{owner}` is not belief-closed: type `{label}` of `{player}` looks outside it")]
    ClosureNotClosed {
        owner: String,
        player: String,
        label: String,
    },
    #[error("the separating structures are not built on the same state space")]
    MismatchedStateSpace,
}

/// Real types per player (host type indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    pub real: Vec<BTreeSet<usize>>,
}

impl StateSpace {
    pub fn new(host: &TypeStructure, game: &DynamicGame, real: Vec<BTreeSet<usize>>) -> Result<Self, SeparatingError> {
        for i in game.players() {
            let set = &real[i.0];
            if set.is_empty() {
                return Err(SeparatingError::EmptyRealTypes(game.player_name(i).to_string()));
            }
            if let Some(&t) = set.iter().find(|&&t| t >= host.num_types(i)) {
                return Err(SeparatingError::UnknownType {
                    player: game.player_name(i).to_string(),
                    label: t.to_string(),
                });
            }
        }
        Ok(Self { real })
    }

    pub fn from_labels(host: &TypeStructure, game: &DynamicGame, labels: &[Vec<String>]) -> Result<Self, SeparatingError> {
        let real = game
            .players()
            .map(|i| {
                labels[i.0]
                    .iter()
                    .map(|l| {
                        host.type_by_label(i, l).ok_or_else(|| SeparatingError::UnknownType {
                            player: game.player_name(i).to_string(),
                            label: l.clone(),
                        })
                    })
                    .collect::<Result<BTreeSet<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(host, game, real)
    }
}

/// `𝕋^i_j` for every `j`, owned by player `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub owner: PlayerId,
    pub types: Vec<BTreeSet<usize>>,
}

/// Types of other players that some type in `sets` puts positive mass on at some event.
fn supports(game: &DynamicGame, host: &TypeStructure, i: PlayerId, t: usize) -> Vec<(PlayerId, usize, InfoSetRef)> {
    let mut out = Vec::new();
    for (k, m) in host.belief(i, t).conditionals().iter().enumerate() {
        let h = game.conditioning_family(i)[k].sources[0];
        for (idx, _) in m.iter() {
            let (_, tau) = host.decode_joint(game, i, idx);
            for (j, tj) in game.opponents(i).zip(tau) {
                out.push((j, tj, h));
            }
        }
    }
    out
}

/// A type whose beliefs leave `sets`: `(player, event source, type)`.
pub fn non_belief_closed_witness(
    game: &DynamicGame,
    host: &TypeStructure,
    sets: &[BTreeSet<usize>],
) -> Option<(PlayerId, InfoSetRef, usize)> {
    for i in game.players() {
        for &t in &sets[i.0] {
            if let Some((_, _, h)) = supports(game, host, i, t)
                .into_iter()
                .find(|(j, tj, _)| !sets[j.0].contains(tj))
            {
                return Some((i, h, t));
            }
        }
    }
    None
}

pub fn is_belief_closed(game: &DynamicGame, host: &TypeStructure, sets: &[BTreeSet<usize>]) -> bool {
    non_belief_closed_witness(game, host, sets).is_none()
}

/// The least closure for `i`: `T̃_i` plus everything reachable through belief supports.
pub fn minimal_closure(game: &DynamicGame, host: &TypeStructure, ss: &StateSpace, i: PlayerId) -> Closure {
    let mut types = vec![BTreeSet::new(); game.num_players()];
    let mut stack: Vec<(PlayerId, usize)> = ss.real[i.0].iter().map(|&t| (i, t)).collect();
    while let Some((j, t)) = stack.pop() {
        if !types[j.0].insert(t) {
            continue;
        }
        for (k, u, _) in supports(game, host, j, t) {
            if !types[k.0].contains(&u) {
                stack.push((k, u));
            }
        }
    }
    Closure { owner: i, types }
}

/// Check the closure definition for a user-supplied closure.
pub fn validate_closure(game: &DynamicGame, host: &TypeStructure, ss: &StateSpace, cl: &Closure) -> Result<(), SeparatingError> {
    let owner = game.player_name(cl.owner).to_string();
    if !ss.real[cl.owner.0].is_subset(&cl.types[cl.owner.0]) {
        return Err(SeparatingError::ClosureMissesRealTypes { owner });
    }
    for i in game.players() {
        if let Some(&t) = cl.types[i.0].iter().find(|&&t| t >= host.num_types(i)) {
            return Err(SeparatingError::UnknownType {
                player: game.player_name(i).to_string(),
                label: t.to_string(),
            });
        }
    }
    match non_belief_closed_witness(game, host, &cl.types) {
        None => Ok(()),
        Some((j, _, t)) => Err(SeparatingError::ClosureNotClosed {
            owner,
            player: game.player_name(j).to_string(),
            label: host.type_label(j, t).to_string(),
        }),
    }
}

/// The structure a closure induces, with host-inherited beliefs.
#[derive(Debug, Clone)]
pub struct SeparatingStructure {
    pub closure: Closure,
    /// Real types of the owner (host indices).
    pub real: BTreeSet<usize>,
    pub structure: TypeStructure,
    /// Local type index → host type index, per player.
    pub host_index: Vec<Vec<usize>>,
}

impl SeparatingStructure {
    pub fn owner(&self) -> PlayerId {
        self.closure.owner
    }

    /// `𝕋^♠_i = 𝕋^i_i \ T̃_i`.
    pub fn imaginary(&self) -> BTreeSet<usize> {
        self.closure.types[self.owner().0]
            .difference(&self.real)
            .copied()
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.imaginary().is_empty()
    }

    fn to_host(&self, event: &EventProfile) -> EventProfile {
        event
            .iter()
            .enumerate()
            .map(|(j, e)| e.iter().map(|&(s, t)| (s, self.host_index[j][t])).collect())
            .collect()
    }
}

pub fn induce_separating_structure(
    game: &DynamicGame,
    host: &TypeStructure,
    ss: &StateSpace,
    cl: &Closure,
) -> Result<SeparatingStructure, SeparatingError> {
    validate_closure(game, host, ss, cl)?;
    let host_index: Vec<Vec<usize>> = cl.types.iter().map(|s| s.iter().copied().collect()).collect();
    let structure = host
        .restrict(game, &host_index)
        .expect("a validated closure is belief-closed");
    Ok(SeparatingStructure {
        closure: cl.clone(),
        real: ss.real[cl.owner.0].clone(),
        structure,
        host_index,
    })
}

/// The four cells of the degenerate/common classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    /// Characterised by `𝔉`.
    CommonDegenerate,
    /// Characterised by `∏_j 𝔉_j`.
    NonCommonDegenerate,
    /// Characterised by `𝕄`.
    CommonNonDegenerate,
    /// Characterised by `∏_j 𝕄_j`.
    NonCommonNonDegenerate,
}

impl Quadrant {
    pub fn new(common: bool, degenerate: bool) -> Self {
        match (common, degenerate) {
            (true, true) => Quadrant::CommonDegenerate,
            (false, true) => Quadrant::NonCommonDegenerate,
            (true, false) => Quadrant::CommonNonDegenerate,
            (false, false) => Quadrant::NonCommonNonDegenerate,
        }
    }

    pub fn is_common(self) -> bool {
        matches!(self, Quadrant::CommonDegenerate | Quadrant::CommonNonDegenerate)
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Quadrant::CommonDegenerate | Quadrant::NonCommonDegenerate)
    }

    pub fn family_name(self) -> &'static str {
        match self {
            Quadrant::CommonDegenerate => "𝔉",
            Quadrant::NonCommonDegenerate => "∏𝔉_j",
            Quadrant::CommonNonDegenerate => "𝕄",
            Quadrant::NonCommonNonDegenerate => "∏𝕄_j",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "common-degenerate" => Some(Quadrant::CommonDegenerate),
            "noncommon-degenerate" => Some(Quadrant::NonCommonDegenerate),
            "common-nondegenerate" => Some(Quadrant::CommonNonDegenerate),
            "noncommon-nondegenerate" => Some(Quadrant::NonCommonNonDegenerate),
            _ => None,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Quadrant::CommonDegenerate => "common-degenerate",
            Quadrant::NonCommonDegenerate => "noncommon-degenerate",
            Quadrant::CommonNonDegenerate => "common-nondegenerate",
            Quadrant::NonCommonNonDegenerate => "noncommon-nondegenerate",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_common() { "common" } else { "non-common" };
        let d = if self.is_degenerate() { "degenerate" } else { "non-degenerate" };
        write!(f, "{d} & {c}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    pub degenerate: Vec<bool>,
    pub common: bool,
}

impl Taxonomy {
    pub fn quadrant(&self) -> Quadrant {
        Quadrant::new(self.common, self.degenerate.iter().all(|&d| d))
    }
}

/// Degenerate per player; common when all closures coincide.
pub fn classify(profile: &[SeparatingStructure]) -> Result<Taxonomy, SeparatingError> {
    let first = profile.first().ok_or(SeparatingError::MismatchedStateSpace)?;
    let n = first.closure.types.len();
    // Every structure must carry the real types of its owner; owners cover all players.
    let owners: BTreeSet<usize> = profile.iter().map(|s| s.owner().0).collect();
    if profile.len() != n || owners.len() != n || profile.iter().any(|s| s.closure.types.len() != n) {
        return Err(SeparatingError::MismatchedStateSpace);
    }
    let mut ordered: Vec<&SeparatingStructure> = profile.iter().collect();
    ordered.sort_by_key(|s| s.owner().0);
    Ok(Taxonomy {
        degenerate: ordered.iter().map(|s| s.is_degenerate()).collect(),
        common: ordered.iter().all(|s| s.closure.types == first.closure.types),
    })
}

/// `CSB^{♥,m}_i` (host type indices).
pub fn real_csb_i(game: &DynamicGame, st: &SeparatingStructure, m: usize) -> StateSet {
    let trace = rcsbr(game, &st.structure);
    let level = trace.levels.get(m).unwrap_or_else(|| trace.fixpoint());
    real_part(st, level)
}

fn real_part(st: &SeparatingStructure, level: &EventProfile) -> StateSet {
    let i = st.owner().0;
    st.to_host(level)[i]
        .iter()
        .filter(|(_, t)| st.real.contains(t))
        .copied()
        .collect()
}

/// `RCSBR^♥_i`, computed inside the player's own structure (host type indices).
pub fn real_rcsbr_i(game: &DynamicGame, st: &SeparatingStructure) -> StateSet {
    real_part(st, rcsbr(game, &st.structure).fixpoint())
}

/// The full RCSBR trace of a player's structure, mapped to host type indices.
pub fn rcsbr_trace_in_host(game: &DynamicGame, st: &SeparatingStructure) -> Trace {
    Trace {
        levels: rcsbr(game, &st.structure).levels.iter().map(|l| st.to_host(l)).collect(),
    }
}

/// `RCSBR^♥ = ∏_j RCSBR^♥_j` and its strategy projection.
pub fn real_rcsbr_profile(game: &DynamicGame, profile: &[SeparatingStructure]) -> (EventProfile, ProductSet) {
    let mut event = vec![StateSet::new(); game.num_players()];
    for st in profile {
        event[st.owner().0] = real_rcsbr_i(game, st);
    }
    let projection = project(&event);
    (event, projection)
}

/// Minimal closures for every player, induced.
pub fn minimal_profile(game: &DynamicGame, host: &TypeStructure, ss: &StateSpace) -> Vec<SeparatingStructure> {
    game.players()
        .map(|i| {
            induce_separating_structure(game, host, ss, &minimal_closure(game, host, ss, i))
                .expect("minimal closures are valid")
        })
        .collect()
}

/// One checked statement of the characterisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Check {
    pub part: u8,
    pub family: &'static str,
    pub holds: bool,
    /// A member of the family witnessing the claim, when it holds.
    pub witness: Option<ProductSet>,
}

#[derive(Debug, Clone)]
pub struct Prop1Report {
    pub projection: ProductSet,
    pub taxonomy: Taxonomy,
    pub checks: Vec<Prop1Check>,
    /// Informational: membership in the two product-free families.
    pub in_fsbrs: bool,
    pub in_mfsbrs: bool,
}

impl Prop1Report {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Check every part of the characterisation whose hypotheses the profile meets.
pub fn verify_prop1(game: &DynamicGame, profile: &[SeparatingStructure], families: &Families) -> Result<Prop1Report, SeparatingError> {
    let taxonomy = classify(profile)?;
    let (_, projection) = real_rcsbr_profile(game, profile);
    let degenerate = taxonomy.degenerate.iter().all(|&d| d);
    let in_product = |fam: &crate::sets::SetFamily| fam.contains_in_product_of_projections(&projection);
    let member = |fam: &crate::sets::SetFamily| fam.contains(&projection).then(|| projection.clone());
    let mut checks = vec![Prop1Check {
        part: 1,
        family: "∏𝕄_j",
        holds: in_product(&families.mfsbrs),
        witness: in_product(&families.mfsbrs).then(|| projection.clone()),
    }];
    if taxonomy.common {
        let w = member(&families.mfsbrs);
        checks.push(Prop1Check { part: 2, family: "𝕄", holds: w.is_some(), witness: w });
    }
    if degenerate {
        checks.push(Prop1Check {
            part: 3,
            family: "∏𝔉_j",
            holds: in_product(&families.fsbrs),
            witness: in_product(&families.fsbrs).then(|| projection.clone()),
        });
    }
    if taxonomy.common && degenerate {
        let w = member(&families.fsbrs);
        checks.push(Prop1Check { part: 4, family: "𝔉", holds: w.is_some(), witness: w });
    }
    Ok(Prop1Report {
        in_fsbrs: families.fsbrs.contains(&projection),
        in_mfsbrs: families.mfsbrs.contains(&projection),
        projection,
        taxonomy,
        checks,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Prop2Error {
    #[error("the target is empty")]
    EmptyTarget,
    #[error("the target is not in {0}")]
    TargetNotInFamily(&'static str),
    #[error("round trip failed: the constructed profile yields {0}")]
    RoundTrip(String),
}

/// Output of the constructor: a host, real types and one closure per player.
#[derive(Debug, Clone)]
pub struct Prop2Construction {
    pub host: TypeStructure,
    pub state_space: StateSpace,
    pub closures: Vec<Closure>,
}

impl Prop2Construction {
    pub fn profile(&self, game: &DynamicGame) -> Result<Vec<SeparatingStructure>, SeparatingError> {
        self.closures
            .iter()
            .map(|cl| induce_separating_structure(game, &self.host, &self.state_space, cl))
            .collect()
    }
}

/// One host component realising `M` through witness `F`: types `r[s]` for `s ∈ M_i` (real)
/// and `i[s]` for `s ∈ F_i \ M_i` (imaginary), plus an optional duplicate imaginary type for
/// player 0. Returns the structure and the real type indices.
fn component(
    game: &DynamicGame,
    m: &ProductSet,
    f: &ProductSet,
    duplicate: bool,
) -> Option<(TypeStructure, Vec<BTreeSet<usize>>)> {
    let m_cert = mfsbrs_certificate(game, m, f)?;
    let f_cert = is_fsbrs(game, f)?;
    let mut labels = Vec::new();
    let mut first_order = Vec::new();
    let mut assign = Vec::new();
    let mut real = Vec::new();
    for i in game.players() {
        let mut l = Vec::new();
        let mut fo = Vec::new();
        let mut a = vec![0usize; game.num_strategies(i)];
        for &s in m.component(i) {
            a[s] = l.len();
            l.push(strategy_type_label(game, i, s, "r"));
            fo.push(m_cert.get(i, s)?.clone());
        }
        real.push((0..l.len()).collect());
        for &s in f.component(i).difference(m.component(i)) {
            a[s] = l.len();
            l.push(strategy_type_label(game, i, s, "i"));
            fo.push(f_cert.get(i, s)?.clone());
        }
        if duplicate && i.0 == 0 {
            l.push(format!("{}'", l[0]));
            fo.push(fo[0].clone());
        }
        labels.push(l);
        first_order.push(fo);
        assign.push(a);
    }
    Some((assemble(game, labels, first_order, &assign), real))
}

fn mfsbrs_certificate(game: &DynamicGame, m: &ProductSet, f: &ProductSet) -> Option<crate::solution::Certificate> {
    let fam = crate::sets::SetFamily::new(crate::sets::FamilyKind::Fsbrs, [f.clone()]);
    mfsbrs_witnesses(game, m, &fam).into_iter().next().map(|w| w.certificate)
}

/// A witness `F` for `M`, preferring one strictly larger than `M` in some component.
fn pick_witness(game: &DynamicGame, m: &ProductSet, families: &Families, prefer_larger: bool) -> Option<ProductSet> {
    let ws: Vec<ProductSet> = mfsbrs_witnesses(game, m, &families.fsbrs)
        .into_iter()
        .map(|w| w.witness)
        .collect();
    if prefer_larger {
        if let Some(f) = ws.iter().find(|f| *f != m) {
            return Some(f.clone());
        }
    }
    ws.into_iter().next()
}

/// Build a host, state space and closures in the requested quadrant whose real RCSBR
/// projects onto `target`. The result is verified by recomputing it.
pub fn construct_prop2(
    game: &DynamicGame,
    target: &ProductSet,
    quadrant: Quadrant,
    families: &Families,
) -> Result<Prop2Construction, Prop2Error> {
    if target.is_empty() {
        return Err(Prop2Error::EmptyTarget);
    }
    let in_family = match quadrant {
        Quadrant::CommonDegenerate => families.fsbrs.contains(target),
        Quadrant::NonCommonDegenerate => families.fsbrs.contains_in_product_of_projections(target),
        Quadrant::CommonNonDegenerate => families.mfsbrs.contains(target),
        Quadrant::NonCommonNonDegenerate => families.mfsbrs.contains_in_product_of_projections(target),
    };
    if !in_family {
        return Err(Prop2Error::TargetNotInFamily(quadrant.family_name()));
    }
    let degenerate = quadrant.is_degenerate();
    let n = game.num_players();

    let construction = if quadrant.is_common() {
        let (m, f, dup) = if degenerate {
            (target.clone(), target.clone(), false)
        } else {
            let f = pick_witness(game, target, families, true).expect("member of 𝕄 has a witness");
            let dup = &f == target;
            (target.clone(), f, dup)
        };
        let (host, real) = component(game, &m, &f, dup).expect("certificates exist for members");
        let all: Vec<BTreeSet<usize>> = game.players().map(|i| (0..host.num_types(i)).collect()).collect();
        let closures = game
            .players()
            .map(|i| Closure { owner: i, types: all.clone() })
            .collect();
        Prop2Construction {
            state_space: StateSpace { real },
            host,
            closures,
        }
    } else {
        // One disjoint component per player, built around a family member with the right
        // projection.
        let source = if degenerate { &families.fsbrs } else { &families.mfsbrs };
        let mut parts = Vec::new();
        let mut reals = Vec::new();
        let mut need_imaginary = !degenerate;
        for i in game.players() {
            let m = source
                .members()
                .iter()
                .find(|mm| !mm.is_empty() && mm.component(i) == target.component(i))
                .expect("projection membership was checked")
                .clone();
            let f = if degenerate {
                m.clone()
            } else {
                pick_witness(game, &m, families, true).expect("member of 𝕄 has a witness")
            };
            if need_imaginary && f.component(i) != m.component(i) {
                need_imaginary = false;
            }
            let (ts, real) = component(game, &m, &f, false).expect("certificates exist for members");
            parts.push((ts, real, m, f));
        }
        if need_imaginary {
            // No component offers a strictly larger witness for its owner: add a redundant
            // imaginary type for player 0 in component 0.
            let (_, _, m, f) = &parts[0];
            let (ts, real) = component(game, m, f, true).expect("certificates exist for members");
            parts[0].0 = ts;
            parts[0].1 = real;
        }
        let structures: Vec<TypeStructure> = parts.iter().map(|p| p.0.clone()).collect();
        let host = TypeStructure::disjoint_union(game, &structures, |k, l| format!("{l}#{}", game.player_name(PlayerId(k))));
        let mut offsets = vec![vec![0usize; n]; parts.len()];
        for k in 1..parts.len() {
            for j in 0..n {
                offsets[k][j] = offsets[k - 1][j] + structures[k - 1].num_types(PlayerId(j));
            }
        }
        for (i, part) in parts.iter().enumerate() {
            reals.push(part.1[i].iter().map(|&t| offsets[i][i] + t).collect());
        }
        let closures = (0..n)
            .map(|i| Closure {
                owner: PlayerId(i),
                types: (0..n)
                    .map(|j| (0..structures[i].num_types(PlayerId(j))).map(|t| offsets[i][j] + t).collect())
                    .collect(),
            })
            .collect();
        Prop2Construction {
            host,
            state_space: StateSpace { real: reals },
            closures,
        }
    };

    // Round trip.
    let profile = construction
        .profile(game)
        .map_err(|e| Prop2Error::RoundTrip(e.to_string()))?;
    let taxonomy = classify(&profile).map_err(|e| Prop2Error::RoundTrip(e.to_string()))?;
    let (_, projection) = real_rcsbr_profile(game, &profile);
    if taxonomy.quadrant() != quadrant || &projection != target {
        return Err(Prop2Error::RoundTrip(format!(
            "{} in quadrant {}",
            projection.render(game),
            taxonomy.quadrant()
        )));
    }
    Ok(construction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ps(game: &DynamicGame, a: &[&str], b: &[&str]) -> ProductSet {
        ProductSet::from_labels(
            game,
            &[a.iter().map(|s| s.to_string()).collect(), b.iter().map(|s| s.to_string()).collect()],
        )
        .unwrap()
    }

    fn labels(host: &TypeStructure, i: PlayerId, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&t| host.type_label(i, t).to_string()).collect()
    }

    #[test]
    fn table1_closedness() {
        let g = fixtures::centipede();
        let host = fixtures::table1(&g);
        let all = vec![[0, 1].into(), [0, 1].into()];
        assert!(is_belief_closed(&g, &host, &all));
        let ss = fixtures::table2_state_space(&g, &host);
        let (i, _, t) = non_belief_closed_witness(&g, &host, &ss.real).unwrap();
        assert_eq!((i, host.type_label(i, t)), (PlayerId(0), "t_a"));
    }

    #[test]
    fn open_only_below_the_root() {
        use crate::beliefs::{Cps, Measure};
        let g = fixtures::centipede();
        let host = fixtures::table1(&g);
        let (a, b) = (PlayerId(0), PlayerId(1));
        // Add t''_b: root (Out, t'_a), ⟨In⟩ (In-Across, t_a).
        let mut types = vec![host.types(a).to_vec(), host.types(b).to_vec()];
        types[1].push("t''_b".into());
        let probe = TypeStructure::new_unchecked(types.clone(), vec![Vec::new(), Vec::new()]);
        let out = g.strategy_by_label(a, "Out").unwrap();
        let ia = g.strategy_by_label(a, "In-Across").unwrap();
        let t_a = host.type_by_label(a, "t_a").unwrap();
        let tp_a = host.type_by_label(a, "t'_a").unwrap();
        let ann: Vec<Cps> = (0..2)
            .map(|t| {
                host.belief(a, t).push_forward(probe.joint_size(&g, a), probe.joint_family(&g, a), |idx| {
                    let (y, tau) = host.decode_joint(&g, a, idx);
                    probe.encode_joint(&g, a, y, &tau)
                })
            })
            .collect();
        let mut bob: Vec<Cps> = (0..2).map(|t| host.belief(b, t).clone()).collect();
        bob.push(
            Cps::new(
                probe.joint_size(&g, b),
                probe.joint_family(&g, b),
                vec![
                    Measure::dirac(probe.encode_joint(&g, b, out, &[tp_a])),
                    Measure::dirac(probe.encode_joint(&g, b, ia, &[t_a])),
                ],
            )
            .unwrap(),
        );
        let ts = TypeStructure::new(&g, types, vec![ann, bob]).unwrap();
        let t_b = ts.type_by_label(b, "t_b").unwrap();
        let sets = vec![[tp_a].into(), [t_b, 2].into()];
        let (i, h, t) = non_belief_closed_witness(&g, &ts, &sets).unwrap();
        assert_eq!((i, t), (b, 2));
        assert_eq!(g.infoset_ref_id(h), "b1");
    }

    #[test]
    fn table2_minimal_closures() {
        let g = fixtures::centipede();
        let host = fixtures::table1(&g);
        let ss = fixtures::table2_state_space(&g, &host);
        let (a, b) = (PlayerId(0), PlayerId(1));
        let ca = minimal_closure(&g, &host, &ss, a);
        assert_eq!(labels(&host, a, &ca.types[0]), vec!["t_a"]);
        assert_eq!(labels(&host, b, &ca.types[1]), vec!["t'_b"]);
        let cb = minimal_closure(&g, &host, &ss, b);
        assert_eq!(labels(&host, a, &cb.types[0]), vec!["t'_a"]);
        assert_eq!(labels(&host, b, &cb.types[1]), vec!["t_b"]);
        let profile = minimal_profile(&g, &host, &ss);
        let tax = classify(&profile).unwrap();
        assert_eq!(tax.quadrant(), Quadrant::NonCommonDegenerate);
        let (_, proj) = real_rcsbr_profile(&g, &profile);
        assert_eq!(proj, ps(&g, &["In-Across"], &["Stop"]));
        assert_eq!(real_rcsbr_i(&g, &profile[0]), [(g.strategy_by_label(a, "In-Across").unwrap(), 0)].into());
        // The full host is another valid closure.
        let full = Closure { owner: a, types: vec![[0, 1].into(), [0, 1].into()] };
        assert!(validate_closure(&g, &host, &ss, &full).is_ok());
        let bad = Closure { owner: a, types: vec![[0].into(), [0].into()] };
        assert!(validate_closure(&g, &host, &ss, &bad).is_err());
    }

    #[test]
    fn table3_common_nondegenerate() {
        let g = fixtures::centipede();
        let host = fixtures::table3(&g);
        let ss = fixtures::table3_state_space(&g, &host);
        let profile = minimal_profile(&g, &host, &ss);
        assert_eq!(classify(&profile).unwrap().quadrant(), Quadrant::CommonNonDegenerate);
        let (_, proj) = real_rcsbr_profile(&g, &profile);
        assert_eq!(proj, ps(&g, &["Out"], &["Go"]));
        let fam = Families::compute(&g).unwrap();
        let report = verify_prop1(&g, &profile, &fam).unwrap();
        assert!(report.all_hold());
        assert!(report.in_mfsbrs && !report.in_fsbrs);
        assert_eq!(real_csb_i(&g, &profile[0], 0), real_rcsbr_i(&g, &profile[0]));
    }

    #[test]
    fn constructor_quadrants() {
        let g = fixtures::centipede();
        let fam = Families::compute(&g).unwrap();
        let out_go = ps(&g, &["Out"], &["Go"]);
        assert!(construct_prop2(&g, &out_go, Quadrant::CommonNonDegenerate, &fam).is_ok());
        let ia_stop = ps(&g, &["In-Across"], &["Stop"]);
        assert!(construct_prop2(&g, &ia_stop, Quadrant::NonCommonDegenerate, &fam).is_ok());
        assert_eq!(
            construct_prop2(&g, &ia_stop, Quadrant::CommonDegenerate, &fam).unwrap_err(),
            Prop2Error::TargetNotInFamily("𝔉")
        );
        assert_eq!(
            construct_prop2(&g, &ProductSet::empty(2), Quadrant::CommonDegenerate, &fam).unwrap_err(),
            Prop2Error::EmptyTarget
        );
        let ia_go = ps(&g, &["In-Across"], &["Go"]);
        for q in [
            Quadrant::CommonDegenerate,
            Quadrant::NonCommonDegenerate,
            Quadrant::CommonNonDegenerate,
            Quadrant::NonCommonNonDegenerate,
        ] {
            assert!(construct_prop2(&g, &ia_go, q, &fam).is_ok(), "{q}");
        }
    }
}

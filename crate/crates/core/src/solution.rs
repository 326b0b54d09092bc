//! Strong Rationalizability, full strong best-reply sets and their relatives.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::beliefs::{find_justifying_cps, Cps};
use crate::game::{DynamicGame, PlayerId};
use crate::lp::{find_feasible, Constraint, Relation};
use crate::rational::Rational;
use crate::sets::{FamilyKind, PlayerSetFamily, ProductSet, SetFamily};

/// Largest strategy set per player that brute-force enumeration accepts.
pub const MAX_ENUMERATION: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("the game is not static: some information set lies below the root")]
    NotStatic,
    #[error("player `{player}` has {size} strategies; enumeration is limited to {MAX_ENUMERATION}")]
    EnumerationTooLarge { player: String, size: usize },
}

/// Justifying CPSs, one per (player, strategy) of a set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    entries: Vec<Vec<(usize, Cps)>>,
}

impl Certificate {
    pub fn new(players: usize) -> Self {
        Self {
            entries: vec![Vec::new(); players],
        }
    }

    pub fn insert(&mut self, i: PlayerId, s: usize, cps: Cps) {
        self.entries[i.0].push((s, cps));
    }

    pub fn get(&self, i: PlayerId, s: usize) -> Option<&Cps> {
        self.entries[i.0].iter().find(|(t, _)| *t == s).map(|(_, c)| c)
    }

    pub fn player(&self, i: PlayerId) -> &[(usize, Cps)] {
        &self.entries[i.0]
    }
}

/// `SR^0 ⊇ SR^1 ⊇ …`, ending at the fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrSequence {
    pub steps: Vec<ProductSet>,
}

impl SrSequence {
    pub fn fixpoint(&self) -> &ProductSet {
        self.steps.last().expect("SR^0 is always present")
    }
}

/// Iterated elimination of strategies that no CPS strongly believing the survivors justifies.
pub fn strong_rationalizability(game: &DynamicGame) -> SrSequence {
    let mut steps = vec![ProductSet::full(game)];
    loop {
        let cur = steps.last().unwrap();
        let next = ProductSet::new(
            game.players()
                .map(|i| {
                    let opp = cur.opponent_event(game, i);
                    cur.component(i)
                        .iter()
                        .copied()
                        .filter(|&s| find_justifying_cps(game, i, s, &opp, None).is_some())
                        .collect()
                })
                .collect(),
        );
        if &next == cur {
            return SrSequence { steps };
        }
        steps.push(next);
    }
}

/// A certificate when `F` is a full strong best-reply set, `None` otherwise.
pub fn is_fsbrs(game: &DynamicGame, f: &ProductSet) -> Option<Certificate> {
    justify_within(game, f, f)
}

/// For every `s ∈ M_i`: a CPS strongly believing `F_{-i}` with `s ∈ ρ ⊆ M_i`.
fn justify_within(game: &DynamicGame, m: &ProductSet, f: &ProductSet) -> Option<Certificate> {
    let mut cert = Certificate::new(game.num_players());
    if m.is_empty() {
        return Some(cert);
    }
    for i in game.players() {
        let opp = f.opponent_event(game, i);
        for &s in m.component(i) {
            let cps = find_justifying_cps(game, i, s, &opp, Some(m.component(i)))?;
            cert.insert(i, s, cps);
        }
    }
    Some(cert)
}

fn check_size(game: &DynamicGame) -> Result<(), SolveError> {
    for i in game.players() {
        let size = game.num_strategies(i);
        if size > MAX_ENUMERATION {
            return Err(SolveError::EnumerationTooLarge {
                player: game.player_name(i).to_string(),
                size,
            });
        }
    }
    Ok(())
}

/// `∅` followed by every product of nonempty subsets, in canonical order.
pub fn candidates(game: &DynamicGame) -> Vec<ProductSet> {
    let mut out = vec![ProductSet::empty(game.num_players())];
    let sizes: Vec<usize> = game.players().map(|i| game.num_strategies(i)).collect();
    let radix = crate::game::MixedRadix::new(sizes.iter().map(|&n| (1usize << n) - 1).collect());
    for idx in 0..radix.len() {
        let comps = radix
            .decode(idx)
            .into_iter()
            .map(|mask| {
                let mask = mask + 1;
                (0..usize::BITS as usize).filter(|b| mask >> b & 1 == 1).collect::<BTreeSet<_>>()
            })
            .collect();
        out.push(ProductSet::new(comps));
    }
    out
}

/// `𝔉`: every full strong best-reply set.
pub fn enumerate_fsbrs(game: &DynamicGame) -> Result<SetFamily, SolveError> {
    check_size(game)?;
    Ok(SetFamily::new(
        FamilyKind::Fsbrs,
        candidates(game).into_iter().filter(|f| is_fsbrs(game, f).is_some()),
    ))
}

/// `𝔉_i` (or `𝕄_i`): projections of a family onto one player.
pub fn player_specific(family: &SetFamily, i: PlayerId) -> PlayerSetFamily {
    family.project(i)
}

/// Witness of membership in `𝕄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisalignedCertificate {
    pub witness: ProductSet,
    pub certificate: Certificate,
}

/// `M` is misaligned when some `F ∈ 𝔉` contains it and every `s ∈ M_i` has a CPS justifying
/// it within `F` whose best replies stay in `M_i`.
pub fn is_mfsbrs(game: &DynamicGame, m: &ProductSet, fsbrs: &SetFamily) -> Option<MisalignedCertificate> {
    mfsbrs_witnesses(game, m, fsbrs).into_iter().next()
}

/// Every witness `F ∈ 𝔉` for `M`, in the family's order.
pub fn mfsbrs_witnesses(game: &DynamicGame, m: &ProductSet, fsbrs: &SetFamily) -> Vec<MisalignedCertificate> {
    fsbrs
        .members()
        .iter()
        .filter(|f| m.is_subset(f) && (m.is_empty() || !f.is_empty()))
        .filter_map(|f| {
            justify_within(game, m, f).map(|certificate| MisalignedCertificate {
                witness: f.clone(),
                certificate,
            })
        })
        .collect()
}

/// `𝕄`, given `𝔉`.
pub fn enumerate_mfsbrs(game: &DynamicGame, fsbrs: &SetFamily) -> Result<SetFamily, SolveError> {
    check_size(game)?;
    Ok(SetFamily::new(
        FamilyKind::Mfsbrs,
        candidates(game)
            .into_iter()
            .filter(|m| is_mfsbrs(game, m, fsbrs).is_some()),
    ))
}

/// Both families of a game, with their projections.
#[derive(Debug, Clone)]
pub struct Families {
    pub fsbrs: SetFamily,
    pub mfsbrs: SetFamily,
}

impl Families {
    pub fn compute(game: &DynamicGame) -> Result<Self, SolveError> {
        let fsbrs = enumerate_fsbrs(game)?;
        let mfsbrs = enumerate_mfsbrs(game, &fsbrs)?;
        Ok(Self { fsbrs, mfsbrs })
    }

    pub fn fsbrs_player(&self, i: PlayerId) -> PlayerSetFamily {
        self.fsbrs.project(i)
    }

    pub fn mfsbrs_player(&self, i: PlayerId) -> PlayerSetFamily {
        self.mfsbrs.project(i)
    }
}

/// Is `s` a best reply (among all of `S_i`) to some belief on the opponent profiles `support`?
fn best_reply_to_some_belief(game: &DynamicGame, i: PlayerId, s: usize, support: &[usize]) -> bool {
    let n = support.len();
    let mut cons: Vec<Constraint> = (0..game.num_strategies(i))
        .filter(|&t| t != s)
        .map(|t| {
            let coeffs = support
                .iter()
                .map(|&y| game.utility(i, s, y) - game.utility(i, t, y))
                .collect();
            Constraint::new(coeffs, Relation::Ge, Rational::from_integer(0.into()))
        })
        .collect();
    cons.push(Constraint::new(
        vec![Rational::from_integer(1.into()); n],
        Relation::Eq,
        Rational::from_integer(1.into()),
    ));
    find_feasible(n, &cons).is_some()
}

/// `P^∞` and its elimination rounds, on a one-shot game.
pub fn correlated_rationalizability(game: &DynamicGame) -> Result<Vec<ProductSet>, SolveError> {
    if !game.is_static() {
        return Err(SolveError::NotStatic);
    }
    let mut rounds = vec![ProductSet::full(game)];
    loop {
        let cur = rounds.last().unwrap();
        let next = ProductSet::new(
            game.players()
                .map(|i| {
                    let support: Vec<usize> = cur.opponent_event(game, i).into_iter().collect();
                    cur.component(i)
                        .iter()
                        .copied()
                        .filter(|&s| best_reply_to_some_belief(game, i, s, &support))
                        .collect()
                })
                .collect(),
        );
        if &next == cur {
            return Ok(rounds);
        }
        rounds.push(next);
    }
}

/// Full best-reply sets of a one-shot game: the dynamic notion with root belief only.
pub fn is_fbrs(game: &DynamicGame, f: &ProductSet) -> Result<Option<Certificate>, SolveError> {
    if !game.is_static() {
        return Err(SolveError::NotStatic);
    }
    Ok(is_fsbrs(game, f))
}

pub fn enumerate_fbrs(game: &DynamicGame) -> Result<SetFamily, SolveError> {
    if !game.is_static() {
        return Err(SolveError::NotStatic);
    }
    let f = enumerate_fsbrs(game)?;
    Ok(SetFamily::new(FamilyKind::Fbrs, f.members().iter().cloned()))
}

//! Conditional probability systems, strong belief and sequential best replies.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::game::{DynamicGame, PlayerId};
use crate::lp::{find_feasible, Constraint, Relation};
use crate::rational::Rational;
use crate::AtomSet;

/// A probability measure on a finite domain, stored by its support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Measure {
    mass: BTreeMap<usize, Rational>,
}

impl Measure {
    /// Build from (atom, mass) pairs; zero entries are dropped and repeated atoms add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut mass: BTreeMap<usize, Rational> = BTreeMap::new();
        for (a, p) in pairs {
            *mass.entry(a).or_insert_with(Rational::zero) += p;
        }
        mass.retain(|_, p| !p.is_zero());
        Self { mass }
    }

    pub fn dirac(atom: usize) -> Self {
        Self::from_pairs([(atom, Rational::one())])
    }

    /// Uniform over a nonempty set.
    pub fn uniform(atoms: &AtomSet) -> Self {
        let p = Rational::new(1.into(), atoms.len().into());
        Self::from_pairs(atoms.iter().map(|&a| (a, p.clone())))
    }

    pub fn prob(&self, atom: usize) -> Rational {
        self.mass.get(&atom).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mass_of(&self, event: &AtomSet) -> Rational {
        self.mass
            .iter()
            .filter(|(a, _)| event.contains(a))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn total(&self) -> Rational {
        self.mass.values().sum()
    }

    pub fn support(&self) -> AtomSet {
        self.mass.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.mass.iter().map(|(&a, p)| (a, p))
    }

    /// Image measure under an atom map.
    pub fn push_forward(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.mass.iter().map(|(&a, p)| (f(a), p.clone())))
    }

    /// Restriction to `event`, renormalised; `None` when the event has no mass.
    pub fn condition(&self, event: &AtomSet) -> Option<Self> {
        let m = self.mass_of(event);
        if m.is_zero() {
            return None;
        }
        Some(Self::from_pairs(
            self.iter()
                .filter(|(a, _)| event.contains(a))
                .map(|(a, p)| (a, p / &m)),
        ))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpsError {
    #[error("the conditional given event {event:?} is not a probability measure")]
    NotNormalized { event: AtomSet },
    #[error("the conditional given event {event:?} does not put mass one on the event")]
    SelfMassNotOne { event: AtomSet },
    #[error("chain rule fails for A={a:?} ⊆ B={b:?} ⊆ C={c:?}")]
    ChainRuleViolation { a: AtomSet, b: AtomSet, c: AtomSet },
    #[error("the family must contain the whole domain")]
    MissingDomain,
    #[error("family and conditionals have different lengths or repeated events")]
    MalformedFamily,
    #[error("event {0:?} is not a conditioning event")]
    UnknownConditioningEvent(AtomSet),
}

/// A conditional probability system on `0..domain` indexed by a family of events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cps {
    domain: usize,
    family: Vec<AtomSet>,
    conditionals: Vec<Measure>,
}

impl Cps {
    /// Validated constructor.
    pub fn new(domain: usize, family: Vec<AtomSet>, conditionals: Vec<Measure>) -> Result<Self, CpsError> {
        let cps = Self::new_unchecked(domain, family, conditionals);
        validate_cps(&cps)?;
        Ok(cps)
    }

    /// Constructor that skips the axioms; pair with [`validate_cps`].
    pub fn new_unchecked(domain: usize, family: Vec<AtomSet>, conditionals: Vec<Measure>) -> Self {
        Self {
            domain,
            family,
            conditionals,
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn family(&self) -> &[AtomSet] {
        &self.family
    }

    pub fn conditionals(&self) -> &[Measure] {
        &self.conditionals
    }

    pub fn conditional(&self, k: usize) -> &Measure {
        &self.conditionals[k]
    }

    pub fn conditional_on(&self, event: &AtomSet) -> Option<&Measure> {
        self.family
            .iter()
            .position(|c| c == event)
            .map(|k| &self.conditionals[k])
    }

    /// Image CPS under an atom map; `family` is the family on the target domain, listed in
    /// the same order as this CPS's family.
    pub fn push_forward(&self, domain: usize, family: Vec<AtomSet>, f: impl Fn(usize) -> usize) -> Self {
        let conditionals = self.conditionals.iter().map(|m| m.push_forward(&f)).collect();
        Self::new_unchecked(domain, family, conditionals)
    }
}

/// Check axioms A2, A1 and the chain rule A3, in that order, reporting the first violation.
pub fn validate_cps(cps: &Cps) -> Result<(), CpsError> {
    let full: AtomSet = (0..cps.domain).collect();
    if cps.family.len() != cps.conditionals.len() {
        return Err(CpsError::MalformedFamily);
    }
    if !cps.family.contains(&full) {
        return Err(CpsError::MissingDomain);
    }
    let distinct: HashSet<&AtomSet> = cps.family.iter().collect();
    if distinct.len() != cps.family.len() {
        return Err(CpsError::MalformedFamily);
    }
    for (c, m) in cps.family.iter().zip(&cps.conditionals) {
        let in_domain = m.iter().all(|(a, p)| a < cps.domain && p.is_positive());
        if !in_domain || !m.total().is_one() {
            return Err(CpsError::NotNormalized { event: c.clone() });
        }
    }
    for (c, m) in cps.family.iter().zip(&cps.conditionals) {
        if !m.mass_of(c).is_one() {
            return Err(CpsError::SelfMassNotOne { event: c.clone() });
        }
    }
    // By additivity it suffices to check singletons A = {a} with a ∈ B.
    for (b, mb) in cps.family.iter().zip(&cps.conditionals) {
        for (c, mc) in cps.family.iter().zip(&cps.conditionals) {
            if b == c || !b.is_subset(c) {
                continue;
            }
            let b_given_c = mc.mass_of(b);
            for &a in b {
                if mc.prob(a) != mb.prob(a) * &b_given_c {
                    return Err(CpsError::ChainRuleViolation {
                        a: [a].into(),
                        b: b.clone(),
                        c: c.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A lexicographic probability system whose levels have disjoint supports covering the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lps {
    pub levels: Vec<Measure>,
}

impl Lps {
    pub fn is_valid(&self, domain: usize) -> bool {
        let mut seen = AtomSet::new();
        for level in &self.levels {
            if !level.total().is_one() || level.iter().any(|(_, p)| !p.is_positive()) {
                return false;
            }
            for a in level.support() {
                if a >= domain || !seen.insert(a) {
                    return false;
                }
            }
        }
        seen.len() == domain
    }
}

/// The CPS whose conditional on `C` renormalises the first level giving `C` positive mass.
pub fn lps_to_cps(lps: &Lps, domain: usize, family: &[AtomSet]) -> Cps {
    let conditionals = family
        .iter()
        .map(|c| {
            lps.levels
                .iter()
                .find_map(|level| level.condition(c))
                .expect("a full-coverage LPS gives every nonempty event positive mass")
        })
        .collect();
    Cps::new_unchecked(domain, family.to_vec(), conditionals)
}

/// `ν(E|C) = 1`.
pub fn conditionally_believes(cps: &Cps, c: &AtomSet, e: &AtomSet) -> Result<bool, CpsError> {
    cps.conditional_on(c)
        .map(|m| m.mass_of(e).is_one())
        .ok_or_else(|| CpsError::UnknownConditioningEvent(c.clone()))
}

/// `ν(E|C) = 1` for every conditioning event meeting `E`.
pub fn strongly_believes(cps: &Cps, e: &AtomSet) -> bool {
    cps.family
        .iter()
        .zip(&cps.conditionals)
        .all(|(c, m)| c.is_disjoint(e) || m.mass_of(e).is_one())
}

/// Expected payoff of `s_i` against a measure on opponent profiles.
pub fn expected_payoff(game: &DynamicGame, i: PlayerId, s_i: usize, m: &Measure) -> Rational {
    m.iter().map(|(y, p)| game.utility(i, s_i, y) * p).sum()
}

/// Own strategies allowing the own information set with the given local index.
pub(crate) fn own_allowing(game: &DynamicGame, i: PlayerId, local: usize) -> Vec<usize> {
    (0..game.num_strategies(i))
        .filter(|&s| game.strategies(i)[s].plan[local].is_some())
        .collect()
}

/// `ρ_i(μ)`: strategies maximising conditional expected payoff at every own information set
/// they allow. The CPS must be indexed by [`DynamicGame::conditioning_family`].
pub fn sequential_best_replies(game: &DynamicGame, i: PlayerId, cps: &Cps) -> BTreeSet<usize> {
    let n_local = game.player_infosets(i).len();
    // Value of each strategy at each own information set it allows.
    let values: Vec<Vec<Option<Rational>>> = (0..n_local)
        .map(|h| {
            let m = cps.conditional(game.own_event_index(i, h));
            (0..game.num_strategies(i))
                .map(|s| game.strategies(i)[s].plan[h].map(|_| expected_payoff(game, i, s, m)))
                .collect()
        })
        .collect();
    (0..game.num_strategies(i))
        .filter(|&s| {
            game.own_allowed(i, s).all(|h| {
                let v = values[h][s].as_ref().unwrap();
                values[h].iter().flatten().all(|w| v >= w)
            })
        })
        .collect()
}

/// The constraint data shared by every candidate ordering of `S_{-i}`.
struct Problem<'a> {
    game: &'a DynamicGame,
    i: PlayerId,
    family: Vec<AtomSet>,
    /// (family index, own strategies allowing it) per own information set.
    own: Vec<(usize, Vec<usize>)>,
}

impl<'a> Problem<'a> {
    fn new(game: &'a DynamicGame, i: PlayerId) -> Self {
        let family = game
            .conditioning_family(i)
            .iter()
            .map(|c| c.event.clone())
            .collect();
        let own = (0..game.player_infosets(i).len())
            .map(|h| (game.own_event_index(i, h), own_allowing(game, i, h)))
            .collect();
        Self { game, i, family, own }
    }

    /// `(u(a,·) − u(b,·))` restricted to `active`, over the opponent profile domain.
    fn diff(&self, a: usize, b: usize, active: &AtomSet) -> Vec<Rational> {
        let n = self.game.opponent_profiles(self.i).len();
        (0..n)
            .map(|y| {
                if active.contains(&y) {
                    self.game.utility(self.i, a, y) - self.game.utility(self.i, b, y)
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }
}

/// Signature of an ordered partition: the first level meeting each conditioning event,
/// intersected with it.
fn actives(levels: &[usize], family: &[AtomSet]) -> Vec<AtomSet> {
    family
        .iter()
        .map(|c| {
            let first = c.iter().map(|&y| levels[y]).min().expect("nonempty event");
            c.iter().copied().filter(|&y| levels[y] == first).collect()
        })
        .collect()
}

/// All maps `0..n → 0..k` onto, for `k = 1..=n`, in lexicographic order per `k`.
pub(crate) fn ordered_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut cur = vec![0; n];
        'next: loop {
            let mut used = vec![false; k];
            cur.iter().for_each(|&l| used[l] = true);
            if used.iter().all(|&u| u) {
                out.push(cur.clone());
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'next;
                }
                pos -= 1;
                if cur[pos] + 1 < k {
                    cur[pos] += 1;
                    cur[pos + 1..].iter_mut().for_each(|v| *v = 0);
                    break;
                }
            }
        }
    }
    out
}

/// Search for a CPS `μ` on `S_{-i}` such that `s* ∈ ρ_i(μ)`, `μ` strongly believes
/// `f_opp` (a set of opponent profiles), and, when `fullness` is given, `ρ_i(μ) ⊆ fullness`.
///
/// The search is exhaustive over orderings of `S_{-i}` and returns the first hit.
pub fn find_justifying_cps(
    game: &DynamicGame,
    i: PlayerId,
    s_star: usize,
    f_opp: &AtomSet,
    fullness: Option<&BTreeSet<usize>>,
) -> Option<Cps> {
    search(game, i, s_star, f_opp, fullness, true).into_iter().next()
}

/// Every distinct certificate the search produces, in canonical order.
pub fn all_justifying_cps(
    game: &DynamicGame,
    i: PlayerId,
    s_star: usize,
    f_opp: &AtomSet,
    fullness: Option<&BTreeSet<usize>>,
) -> Vec<Cps> {
    search(game, i, s_star, f_opp, fullness, false)
}

fn search(
    game: &DynamicGame,
    i: PlayerId,
    s_star: usize,
    f_opp: &AtomSet,
    fullness: Option<&BTreeSet<usize>>,
    first_only: bool,
) -> Vec<Cps> {
    if fullness.is_some_and(|f| !f.contains(&s_star)) {
        return Vec::new();
    }
    let problem = Problem::new(game, i);
    let n = game.opponent_profiles(i).len();
    let mut seen: HashSet<Vec<AtomSet>> = HashSet::new();
    let mut found: Vec<Cps> = Vec::new();
    for levels in ordered_partitions(n) {
        let act = actives(&levels, &problem.family);
        if !seen.insert(act.clone()) {
            continue;
        }
        // Strong belief in f_opp is a condition on the active sets alone.
        let sb_ok = problem
            .family
            .iter()
            .zip(&act)
            .all(|(c, a)| c.is_disjoint(f_opp) || a.is_subset(f_opp));
        if !sb_ok {
            continue;
        }
        for w in solve_partition(&problem, s_star, &act, fullness, first_only) {
            let cps = build_cps(&problem, n, &levels, &w);
            if !found.contains(&cps) {
                found.push(cps);
            }
            if first_only {
                return found;
            }
        }
    }
    found
}

/// Feasible weight vectors for one partition signature (one per witness choice when
/// `first_only` is false).
fn solve_partition(
    p: &Problem<'_>,
    s_star: usize,
    act: &[AtomSet],
    fullness: Option<&BTreeSet<usize>>,
    first_only: bool,
) -> Vec<Vec<Rational>> {
    let n = p.game.opponent_profiles(p.i).len();
    let weak: Vec<Vec<Rational>> = p
        .game
        .own_allowed(p.i, s_star)
        .flat_map(|h| {
            let (e, allowing) = &p.own[h];
            allowing
                .iter()
                .filter(|&&s| s != s_star)
                .map(|&s| p.diff(s_star, s, &act[*e]))
                .collect::<Vec<_>>()
        })
        .collect();

    // For each strategy outside the fullness set: the ways it can be beaten strictly.
    let mut witness_options: Vec<Vec<Vec<Rational>>> = Vec::new();
    if let Some(full) = fullness {
        for s in (0..p.game.num_strategies(p.i)).filter(|s| !full.contains(s)) {
            let mut opts: Vec<Vec<Rational>> = Vec::new();
            for h in p.game.own_allowed(p.i, s) {
                let (e, allowing) = &p.own[h];
                for &t in allowing.iter().filter(|&&t| t != s) {
                    let d = p.diff(t, s, &act[*e]);
                    if d.iter().any(|v| v.is_positive()) && !opts.contains(&d) {
                        opts.push(d);
                    }
                }
            }
            if opts.is_empty() {
                return Vec::new();
            }
            witness_options.push(opts);
        }
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; witness_options.len()];
    loop {
        // Variables v_y = w_y − 1 ≥ 0, i.e. w_y ≥ 1; strict constraints are scaled to ≥ 1.
        let shifted = |coeffs: &Vec<Rational>, rhs: Rational| {
            let sum: Rational = coeffs.iter().sum();
            Constraint::new(coeffs.clone(), Relation::Ge, rhs - sum)
        };
        let mut cons: Vec<Constraint> = weak.iter().map(|d| shifted(d, Rational::zero())).collect();
        for (opts, &k) in witness_options.iter().zip(&choice) {
            cons.push(shifted(&opts[k], Rational::one()));
        }
        if let Some(v) = find_feasible(n, &cons) {
            out.push(v.into_iter().map(|x| x + Rational::one()).collect());
            if first_only {
                return out;
            }
        }
        // Advance the witness choice (odometer).
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < witness_options[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn build_cps(p: &Problem<'_>, n: usize, levels: &[usize], w: &[Rational]) -> Cps {
    let depth = levels.iter().max().map_or(0, |&m| m + 1);
    let lps = Lps {
        levels: (0..depth)
            .map(|l| {
                let atoms: Vec<usize> = (0..n).filter(|&y| levels[y] == l).collect();
                let total: Rational = atoms.iter().map(|&y| &w[y]).sum();
                Measure::from_pairs(atoms.into_iter().map(|y| (y, &w[y] / &total)))
            })
            .collect(),
    };
    lps_to_cps(&lps, n, &p.family)
}

/// Conditioning family of player `i` as plain events.
pub fn family_events(game: &DynamicGame, i: PlayerId) -> Vec<AtomSet> {
    game.conditioning_family(i)
        .iter()
        .map(|c| c.event.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    fn opp(game: &DynamicGame, i: PlayerId, labels: &[&str]) -> AtomSet {
        labels
            .iter()
            .map(|l| {
                game.opponent_profile_by_labels(i, &[l.to_string()])
                    .unwrap_or_else(|| panic!("unknown label {l}"))
            })
            .collect()
    }

    /// Bob's running-example belief: root δ_Out, ⟨In⟩-conditional δ_In-Down.
    fn mu_b(g: &DynamicGame) -> Cps {
        let b = PlayerId(1);
        let fam = family_events(g, b);
        let out = opp(g, b, &["Out"]);
        let down = opp(g, b, &["In-Down"]);
        Cps::new(
            g.opponent_profiles(b).len(),
            fam,
            vec![Measure::dirac(*out.first().unwrap()), Measure::dirac(*down.first().unwrap())],
        )
        .unwrap()
    }

    #[test]
    fn running_example_is_valid() {
        let g = fixtures::centipede();
        let mu = mu_b(&g);
        assert!(validate_cps(&mu).is_ok());
        assert!(strongly_believes(&mu, &opp(&g, PlayerId(1), &["Out"])));
        assert!(!strongly_believes(&mu, &opp(&g, PlayerId(1), &["Out", "In-Across"])));
        assert!(conditionally_believes(&mu, &mu.family()[0].clone(), &opp(&g, PlayerId(1), &["Out"])).unwrap());
        assert!(!conditionally_believes(&mu, &mu.family()[1].clone(), &opp(&g, PlayerId(1), &["Out", "In-Across"])).unwrap());
        assert!(strongly_believes(&mu, &AtomSet::new()));
    }

    #[test]
    fn chain_rule_violation() {
        let g = fixtures::centipede();
        let b = PlayerId(1);
        let out = *opp(&g, b, &["Out"]).first().unwrap();
        let ia = *opp(&g, b, &["In-Across"]).first().unwrap();
        let id = *opp(&g, b, &["In-Down"]).first().unwrap();
        let cps = Cps::new_unchecked(
            3,
            family_events(&g, b),
            vec![
                Measure::from_pairs([(out, ratio(1, 2)), (ia, ratio(1, 2))]),
                Measure::dirac(id),
            ],
        );
        assert!(matches!(validate_cps(&cps), Err(CpsError::ChainRuleViolation { .. })));
    }

    #[test]
    fn self_mass_violation() {
        let g = fixtures::centipede();
        let a = PlayerId(0);
        let stop = *opp(&g, a, &["Stop"]).first().unwrap();
        let cps = Cps::new_unchecked(2, family_events(&g, a), vec![Measure::dirac(stop), Measure::dirac(stop)]);
        assert!(matches!(validate_cps(&cps), Err(CpsError::SelfMassNotOne { .. })));
        let bad = Cps::new_unchecked(2, family_events(&g, a), vec![Measure::from_pairs([(stop, ratio(1, 2))]), Measure::dirac(1 - stop)]);
        assert!(matches!(validate_cps(&bad), Err(CpsError::NotNormalized { .. })));
    }

    #[test]
    fn lps_conversion() {
        let g = fixtures::centipede();
        let b = PlayerId(1);
        let at = |l: &str| *opp(&g, b, &[l]).first().unwrap();
        let lps = Lps {
            levels: vec![Measure::dirac(at("Out")), Measure::dirac(at("In-Down")), Measure::dirac(at("In-Across"))],
        };
        assert!(lps.is_valid(3));
        let cps = lps_to_cps(&lps, 3, &family_events(&g, b));
        assert_eq!(cps, mu_b(&g));
        let single = Lps { levels: vec![Measure::uniform(&(0..3).collect())] };
        let cps = lps_to_cps(&single, 3, &family_events(&g, b));
        assert!(validate_cps(&cps).is_ok());
        assert_eq!(cps.conditional(1).prob(at("In-Down")), ratio(1, 2));
    }

    #[test]
    fn payoffs_and_best_replies() {
        let g = fixtures::centipede();
        let (a, b) = (PlayerId(0), PlayerId(1));
        let sa = |l| g.strategy_by_label(a, l).unwrap();
        let sb = |l| g.strategy_by_label(b, l).unwrap();
        let go = *opp(&g, a, &["Go"]).first().unwrap();
        let stop = *opp(&g, a, &["Stop"]).first().unwrap();
        assert_eq!(expected_payoff(&g, a, sa("In-Across"), &Measure::dirac(go)), int(3));
        assert_eq!(expected_payoff(&g, a, sa("Out"), &Measure::uniform(&[go, stop].into())), int(2));
        let down = *opp(&g, b, &["In-Down"]).first().unwrap();
        assert_eq!(expected_payoff(&g, b, sb("Go"), &Measure::dirac(down)), int(0));

        assert_eq!(sequential_best_replies(&g, b, &mu_b(&g)), [sb("Stop")].into());
        let fam = family_events(&g, a);
        let go_go = Cps::new(2, fam.clone(), vec![Measure::dirac(go), Measure::dirac(go)]).unwrap();
        assert_eq!(sequential_best_replies(&g, a, &go_go), [sa("In-Across")].into());
        let stop_go = Cps::new(2, fam, vec![Measure::dirac(stop), Measure::dirac(go)]).unwrap();
        assert_eq!(sequential_best_replies(&g, a, &stop_go), [sa("Out")].into());
    }

    #[test]
    fn justifying_search_examples() {
        let g = fixtures::centipede();
        let (a, b) = (PlayerId(0), PlayerId(1));
        let out = g.strategy_by_label(a, "Out").unwrap();
        let all_b = opp(&g, a, &["Stop", "Go"]);
        let cps = find_justifying_cps(&g, a, out, &all_b, Some(&[out].into())).unwrap();
        assert!(validate_cps(&cps).is_ok());
        assert_eq!(sequential_best_replies(&g, a, &cps), [out].into());

        let stop = g.strategy_by_label(b, "Stop").unwrap();
        assert!(find_justifying_cps(&g, b, stop, &opp(&g, b, &["In-Across"]), None).is_none());

        let s = fixtures::static3x3();
        let u = s.strategy_by_label(a, "U").unwrap();
        assert!(find_justifying_cps(&s, a, u, &opp(&s, a, &["R"]), None).is_none());
        assert!(find_justifying_cps(&s, a, u, &opp(&s, a, &["C"]), None).is_some());
    }

    #[test]
    fn all_certificates_are_sound() {
        let g = fixtures::centipede();
        let b = PlayerId(1);
        let stop = g.strategy_by_label(b, "Stop").unwrap();
        let all = all_justifying_cps(&g, b, stop, &(0..3).collect(), None);
        assert!(all.len() > 1);
        for cps in all {
            assert!(validate_cps(&cps).is_ok());
            assert!(sequential_best_replies(&g, b, &cps).contains(&stop));
        }
    }

    #[test]
    fn ordered_partition_counts() {
        // Ordered Bell (Fubini) numbers.
        let counts: Vec<usize> = (1..=4).map(|n| ordered_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75]);
    }
}

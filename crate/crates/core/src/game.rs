//! Finite dynamic games with simultaneous moves, information sets and perfect recall.
//!
//! A game is read from an unvalidated [`GameSpec`] and turned into a [`DynamicGame`] by
//! [`validate_game`]. Validation precomputes everything the solvers need: reduced strategies,
//! the payoff of every strategy profile, the profiles reaching each information set, and the
//! conditioning family of every player.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, Rational};
use crate::AtomSet;

/// Action label given to players that are not listed at a decision node.
pub const PASS: &str = "pass";

/// Index of a player in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlayerId(pub usize);

impl PlayerId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Either the initial history or an information set (by global index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfoSetRef {
    Root,
    Set(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("a game needs at least two players")]
    TooFewPlayers,
    #[error("duplicate player name `{0}`")]
    DuplicatePlayer(String),
    #[error("node `{node}` refers to unknown player `{player}`")]
    UnknownPlayer { node: String, player: String },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("node `{node}` has a child `{child}` that does not exist")]
    DanglingChild { node: String, child: String },
    #[error("node `{node}` has no child for action profile `{profile}`")]
    MissingChild { node: String, profile: String },
    #[error("node `{node}` lists child key `{key}` that is not an action profile")]
    UnknownActionProfile { node: String, key: String },
    #[error("player `{player}` has an empty action set at node `{node}`")]
    EmptyActionSet { node: String, player: String },
    #[error("player `{player}` lists action `{action}` twice at node `{node}`")]
    DuplicateAction {
        node: String,
        player: String,
        action: String,
    },
    #[error("terminal node `{node}` has {found} payoffs, expected {expected}")]
    BadPayoffArity {
        node: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid rational `{0}` (expected \"p/q\" or an integer)")]
    BadRational(String),
    #[error("malformed node `{0}`: a node has either payoffs or actions with children")]
    MalformedNode(String),
    #[error("information set coverage: {0}")]
    InfoSetCoverage(String),
    #[error("information set `{infoset}` mixes histories with different action sets")]
    InfoSetActionMismatch { infoset: String },
    #[error("information set `{infoset}` violates perfect recall for player `{player}`")]
    PerfectRecallViolation { infoset: String, player: String },
}

// ---------------------------------------------------------------------------
// Unvalidated description (the JSON game file)
// ---------------------------------------------------------------------------

/// Unvalidated game description as found in a game file.
///
/// Decision nodes list the action set of every *listed* player; players that are not listed
/// get the single action [`PASS`]. Children are keyed by the actions of the listed players, in
/// player declaration order, joined with `,` (so a node with one mover is keyed by its action).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GameSpec {
    pub players: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    pub nodes: IndexMap<String, NodeSpec>,
    pub infosets: Vec<InfoSetSpec>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct NodeSpec {
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub actions: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub children: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InfoSetSpec {
    pub id: String,
    pub player: String,
    pub nodes: Vec<String>,
}

// ---------------------------------------------------------------------------
// Validated game
// ---------------------------------------------------------------------------

/// Mixed-radix indexing of tuples; the first digit varies slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRadix {
    radices: Vec<usize>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        Self { radices }
    }

    pub fn len(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.radices.len());
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.radices.len()];
        for (slot, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        digits
    }
}

#[derive(Debug, Clone)]
pub enum NodeKind {
    Terminal(Vec<Rational>),
    Decision {
        /// Per player action labels; inactive players have a single action.
        actions: Vec<Vec<String>>,
        /// One child per action profile, indexed by [`MixedRadix`] over `actions`.
        children: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct Node {
    pub label: String,
    pub parent: Option<usize>,
    pub kind: NodeKind,
}

#[derive(Debug, Clone)]
pub struct InfoSet {
    pub id: String,
    pub player: PlayerId,
    pub nodes: Vec<usize>,
    pub actions: Vec<String>,
}

/// A total map from the owner's information sets to actions (indices into `InfoSet::actions`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardStrategy {
    pub owner: PlayerId,
    pub choice: Vec<usize>,
}

/// A reduced strategy: the actions taken at the own information sets the plan allows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strategy {
    pub owner: PlayerId,
    /// Indexed like the owner's information sets; `None` on precluded ones.
    pub plan: Vec<Option<usize>>,
    pub label: String,
}

/// A conditioning event `S_{-i}(h)` with the information sets generating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditioningEvent {
    /// Opponent profile indices (see [`DynamicGame::opponent_profiles`]).
    pub event: AtomSet,
    pub sources: Vec<InfoSetRef>,
}

/// A validated finite dynamic game with perfect recall.
#[derive(Debug, Clone)]
pub struct DynamicGame {
    players: Vec<String>,
    nodes: Vec<Node>,
    root: usize,
    infosets: Vec<InfoSet>,
    player_infosets: Vec<Vec<usize>>,
    /// Per node, per player: the information set of that player at the node.
    node_infoset: Vec<Vec<Option<usize>>>,
    strategies: Vec<Vec<Strategy>>,
    profiles: MixedRadix,
    opponents: Vec<MixedRadix>,
    payoffs: Vec<Vec<Rational>>,
    reach: Vec<BTreeSet<usize>>,
    families: Vec<Vec<ConditioningEvent>>,
    /// Per player, per own information set (local index): index into the family.
    own_event: Vec<Vec<usize>>,
}

/// Validate a raw game description.
pub fn validate_game(spec: &GameSpec) -> Result<DynamicGame, GameError> {
    let n = spec.players.len();
    if n < 2 {
        return Err(GameError::TooFewPlayers);
    }
    let mut player_index = HashMap::new();
    for (i, p) in spec.players.iter().enumerate() {
        if player_index.insert(p.as_str(), i).is_some() {
            return Err(GameError::DuplicatePlayer(p.clone()));
        }
    }

    let node_index: HashMap<&str, usize> = spec
        .nodes
        .keys()
        .enumerate()
        .map(|(k, id)| (id.as_str(), k))
        .collect();

    let mut nodes: Vec<Node> = Vec::with_capacity(spec.nodes.len());
    for (id, ns) in &spec.nodes {
        let kind = match (&ns.payoffs, ns.actions.is_empty() && ns.children.is_empty()) {
            (Some(pays), true) => {
                if pays.len() != n {
                    return Err(GameError::BadPayoffArity {
                        node: id.clone(),
                        expected: n,
                        found: pays.len(),
                    });
                }
                let values = pays
                    .iter()
                    .map(|p| parse_rational(p).ok_or_else(|| GameError::BadRational(p.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                NodeKind::Terminal(values)
            }
            (None, false) => decision_node(id, ns, &spec.players, &player_index, &node_index)?,
            _ => return Err(GameError::MalformedNode(id.clone())),
        };
        nodes.push(Node {
            label: id.clone(),
            parent: None,
            kind,
        });
    }

    // Parent links: every node has at most one parent and one incoming edge.
    let mut parents: Vec<Option<usize>> = vec![None; nodes.len()];
    for (k, node) in nodes.iter().enumerate() {
        if let NodeKind::Decision { children, .. } = &node.kind {
            for &c in children {
                if parents[c].is_some() {
                    return Err(GameError::NotATree(format!(
                        "node `{}` has more than one incoming edge",
                        nodes[c].label
                    )));
                }
                parents[c] = Some(k);
            }
        }
    }
    for (node, parent) in nodes.iter_mut().zip(&parents) {
        node.parent = *parent;
    }
    let roots: Vec<usize> = (0..nodes.len()).filter(|&k| parents[k].is_none()).collect();
    let root = match &spec.root {
        Some(r) => {
            let k = *node_index
                .get(r.as_str())
                .ok_or_else(|| GameError::NotATree(format!("root `{r}` does not exist")))?;
            if parents[k].is_some() {
                return Err(GameError::NotATree(format!("root `{r}` has a parent")));
            }
            k
        }
        None => match roots.as_slice() {
            [r] => *r,
            [] => return Err(GameError::NotATree("no root (cycle)".into())),
            _ => {
                return Err(GameError::NotATree(format!(
                    "{} nodes without a parent",
                    roots.len()
                )))
            }
        },
    };
    // Reachability from the root (also rules out cycles, since every node has one parent).
    let mut seen = vec![false; nodes.len()];
    let mut stack = vec![root];
    while let Some(k) = stack.pop() {
        if std::mem::replace(&mut seen[k], true) {
            continue;
        }
        if let NodeKind::Decision { children, .. } = &nodes[k].kind {
            stack.extend(children.iter().copied());
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(GameError::NotATree(format!(
            "node `{}` is unreachable from the root",
            nodes[k].label
        )));
    }
    if nodes[root].kind.is_terminal() {
        return Err(GameError::NotATree("the root is terminal".into()));
    }

    // Information sets.
    let mut infosets = Vec::with_capacity(spec.infosets.len());
    let mut player_infosets = vec![Vec::new(); n];
    let mut node_infoset = vec![vec![None; n]; nodes.len()];
    for (h, is) in spec.infosets.iter().enumerate() {
        let p = *player_index
            .get(is.player.as_str())
            .ok_or_else(|| GameError::UnknownPlayer {
                node: is.id.clone(),
                player: is.player.clone(),
            })?;
        if is.nodes.is_empty() {
            return Err(GameError::InfoSetCoverage(format!(
                "information set `{}` is empty",
                is.id
            )));
        }
        let mut members = Vec::new();
        for label in &is.nodes {
            let k = *node_index.get(label.as_str()).ok_or_else(|| {
                GameError::InfoSetCoverage(format!(
                    "information set `{}` lists unknown node `{label}`",
                    is.id
                ))
            })?;
            if !nodes[k].is_active(p) {
                return Err(GameError::InfoSetCoverage(format!(
                    "player `{}` is not active at node `{label}` (information set `{}`)",
                    is.player, is.id
                )));
            }
            if node_infoset[k][p].replace(h).is_some() {
                return Err(GameError::InfoSetCoverage(format!(
                    "node `{label}` belongs to two information sets of player `{}`",
                    is.player
                )));
            }
            members.push(k);
        }
        player_infosets[p].push(h);
        infosets.push(InfoSet {
            id: is.id.clone(),
            player: PlayerId(p),
            nodes: members,
            actions: Vec::new(),
        });
    }
    if let Some(dup) = duplicate(spec.infosets.iter().map(|s| s.id.as_str())) {
        return Err(GameError::InfoSetCoverage(format!(
            "duplicate information set id `{dup}`"
        )));
    }
    for (k, node) in nodes.iter().enumerate() {
        for p in 0..n {
            if node.is_active(p) && node_infoset[k][p].is_none() {
                return Err(GameError::InfoSetCoverage(format!(
                    "player `{}` is active at node `{}` but it is in no information set",
                    spec.players[p], node.label
                )));
            }
        }
    }

    // Perfect recall: all histories of a cell share the same own experience.
    for is in &infosets {
        let p = is.player.0;
        let mut reference: Option<Vec<(usize, String)>> = None;
        for &k in &is.nodes {
            let exp = experience(&nodes, &node_infoset, k, p);
            match &reference {
                None => reference = Some(exp),
                Some(r) if *r != exp => {
                    return Err(GameError::PerfectRecallViolation {
                        infoset: is.id.clone(),
                        player: spec.players[p].clone(),
                    })
                }
                _ => {}
            }
        }
    }
    for is in &mut infosets {
        let p = is.player.0;
        let first = nodes[is.nodes[0]].actions(p).to_vec();
        if is.nodes.iter().any(|&k| nodes[k].actions(p) != first.as_slice()) {
            return Err(GameError::InfoSetActionMismatch {
                infoset: is.id.clone(),
            });
        }
        is.actions = first;
    }

    let mut game = DynamicGame {
        players: spec.players.clone(),
        nodes,
        root,
        infosets,
        player_infosets,
        node_infoset,
        strategies: Vec::new(),
        profiles: MixedRadix::new(Vec::new()),
        opponents: Vec::new(),
        payoffs: Vec::new(),
        reach: Vec::new(),
        families: Vec::new(),
        own_event: Vec::new(),
    };
    game.precompute();
    Ok(game)
}

fn duplicate<'a>(mut it: impl Iterator<Item = &'a str>) -> Option<&'a str> {
    let mut seen = BTreeSet::new();
    it.find(|s| !seen.insert(*s))
}

fn decision_node(
    id: &str,
    ns: &NodeSpec,
    players: &[String],
    player_index: &HashMap<&str, usize>,
    node_index: &HashMap<&str, usize>,
) -> Result<NodeKind, GameError> {
    let n = players.len();
    let mut actions = vec![vec![PASS.to_string()]; n];
    let mut listed = vec![false; n];
    for (player, list) in &ns.actions {
        let p = *player_index
            .get(player.as_str())
            .ok_or_else(|| GameError::UnknownPlayer {
                node: id.to_string(),
                player: player.clone(),
            })?;
        if list.is_empty() {
            return Err(GameError::EmptyActionSet {
                node: id.to_string(),
                player: player.clone(),
            });
        }
        if let Some(a) = duplicate(list.iter().map(String::as_str)) {
            return Err(GameError::DuplicateAction {
                node: id.to_string(),
                player: player.clone(),
                action: a.to_string(),
            });
        }
        actions[p] = list.clone();
        listed[p] = true;
    }
    if ns.children.is_empty() {
        return Err(GameError::MalformedNode(id.to_string()));
    }
    let radix = MixedRadix::new(actions.iter().map(Vec::len).collect());
    let key_of = |digits: &[usize]| -> String {
        (0..n)
            .filter(|&p| listed[p])
            .map(|p| actions[p][digits[p]].as_str())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut by_key = HashMap::new();
    for idx in 0..radix.len() {
        by_key.insert(key_of(&radix.decode(idx)), idx);
    }
    let mut children = vec![usize::MAX; radix.len()];
    for (key, child) in &ns.children {
        let idx = *by_key
            .get(key.as_str())
            .ok_or_else(|| GameError::UnknownActionProfile {
                node: id.to_string(),
                key: key.clone(),
            })?;
        let c = *node_index
            .get(child.as_str())
            .ok_or_else(|| GameError::DanglingChild {
                node: id.to_string(),
                child: child.clone(),
            })?;
        children[idx] = c;
    }
    if let Some(idx) = children.iter().position(|&c| c == usize::MAX) {
        return Err(GameError::MissingChild {
            node: id.to_string(),
            profile: key_of(&radix.decode(idx)),
        });
    }
    Ok(NodeKind::Decision { actions, children })
}

/// Sequence of (own information set, own action) along the path to `k`.
fn experience(
    nodes: &[Node],
    node_infoset: &[Vec<Option<usize>>],
    k: usize,
    p: usize,
) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut child = k;
    while let Some(parent) = nodes[child].parent {
        if let NodeKind::Decision { actions, children } = &nodes[parent].kind {
            if let Some(h) = node_infoset[parent][p] {
                let pos = children.iter().position(|&c| c == child).unwrap();
                let digits = MixedRadix::new(actions.iter().map(Vec::len).collect()).decode(pos);
                out.push((h, actions[p][digits[p]].clone()));
            }
        }
        child = parent;
    }
    out.reverse();
    out
}

impl Node {
    pub fn is_terminal(&self) -> bool {
        self.kind.is_terminal()
    }

    pub fn is_active(&self, p: usize) -> bool {
        self.actions(p).len() >= 2
    }

    pub fn actions(&self, p: usize) -> &[String] {
        match &self.kind {
            NodeKind::Decision { actions, .. } => &actions[p],
            NodeKind::Terminal(_) => &[],
        }
    }
}

impl NodeKind {
    pub fn is_terminal(&self) -> bool {
        matches!(self, NodeKind::Terminal(_))
    }
}

impl DynamicGame {
    fn precompute(&mut self) {
        let n = self.players.len();
        self.strategies = (0..n).map(|i| self.compute_reduced(PlayerId(i))).collect();
        self.profiles = MixedRadix::new(self.strategies.iter().map(Vec::len).collect());
        self.opponents = (0..n)
            .map(|i| {
                MixedRadix::new(
                    (0..n)
                        .filter(|&j| j != i)
                        .map(|j| self.strategies[j].len())
                        .collect(),
                )
            })
            .collect();
        let mut reach = vec![BTreeSet::new(); self.infosets.len()];
        let mut payoffs = Vec::with_capacity(self.profiles.len());
        for idx in 0..self.profiles.len() {
            let profile = self.profiles.decode(idx);
            let mut k = self.root;
            loop {
                match &self.nodes[k].kind {
                    NodeKind::Terminal(u) => {
                        payoffs.push(u.clone());
                        break;
                    }
                    NodeKind::Decision { actions, children } => {
                        let digits: Vec<usize> = (0..n)
                            .map(|p| match self.node_infoset[k][p] {
                                Some(h) => {
                                    reach[h].insert(idx);
                                    let local = self.local_index(h);
                                    self.strategies[p][profile[p]].plan[local]
                                        .expect("a profile only reaches allowed information sets")
                                }
                                None => 0,
                            })
                            .collect();
                        k = children
                            [MixedRadix::new(actions.iter().map(Vec::len).collect()).encode(&digits)];
                    }
                }
            }
        }
        self.reach = reach;
        self.payoffs = payoffs;

        let mut families = Vec::with_capacity(n);
        let mut own_event = Vec::with_capacity(n);
        for i in 0..n {
            let mut family: Vec<ConditioningEvent> = vec![ConditioningEvent {
                event: (0..self.opponents[i].len()).collect(),
                sources: vec![InfoSetRef::Root],
            }];
            let mut own = Vec::new();
            for &h in &self.player_infosets[i] {
                let event = self.opponent_event(PlayerId(i), InfoSetRef::Set(h));
                let pos = match family.iter().position(|c| c.event == event) {
                    Some(pos) => {
                        family[pos].sources.push(InfoSetRef::Set(h));
                        pos
                    }
                    None => {
                        family.push(ConditioningEvent {
                            event,
                            sources: vec![InfoSetRef::Set(h)],
                        });
                        family.len() - 1
                    }
                };
                own.push(pos);
            }
            families.push(family);
            own_event.push(own);
        }
        self.families = families;
        self.own_event = own_event;
    }

    fn local_index(&self, h: usize) -> usize {
        let p = self.infosets[h].player.0;
        self.player_infosets[p].iter().position(|&x| x == h).unwrap()
    }

    /// Own information sets reachable under a standard strategy (local indices).
    fn own_reachable(&self, i: PlayerId, choice: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(k) = stack.pop() {
            if let NodeKind::Decision { actions, children } = &self.nodes[k].kind {
                let radix = MixedRadix::new(actions.iter().map(Vec::len).collect());
                let fixed = self.node_infoset[k][i.0].map(|h| {
                    let local = self.local_index(h);
                    out.insert(local);
                    choice[local]
                });
                for (idx, &c) in children.iter().enumerate() {
                    if fixed.map_or(true, |a| radix.decode(idx)[i.0] == a) {
                        stack.push(c);
                    }
                }
            }
        }
        out
    }

    fn compute_reduced(&self, i: PlayerId) -> Vec<Strategy> {
        let mut out: Vec<Strategy> = Vec::new();
        for s in self.enumerate_standard_strategies(i) {
            let reachable = self.own_reachable(i, &s.choice);
            let plan: Vec<Option<usize>> = (0..s.choice.len())
                .map(|h| reachable.contains(&h).then_some(s.choice[h]))
                .collect();
            if out.iter().any(|r| r.plan == plan) {
                continue;
            }
            let parts: Vec<&str> = plan
                .iter()
                .enumerate()
                .filter_map(|(h, a)| {
                    a.map(|a| self.infosets[self.player_infosets[i.0][h]].actions[a].as_str())
                })
                .collect();
            let label = if parts.is_empty() {
                PASS.to_string()
            } else {
                parts.join("-")
            };
            out.push(Strategy {
                owner: i,
                plan,
                label,
            });
        }
        out
    }

    /// All standard strategies of `i`, first information set varying slowest.
    pub fn enumerate_standard_strategies(&self, i: PlayerId) -> Vec<StandardStrategy> {
        let radix = MixedRadix::new(
            self.player_infosets[i.0]
                .iter()
                .map(|&h| self.infosets[h].actions.len())
                .collect(),
        );
        (0..radix.len())
            .map(|idx| StandardStrategy {
                owner: i,
                choice: radix.decode(idx),
            })
            .collect()
    }

    /// The reduced strategy a standard strategy belongs to.
    pub fn reduce(&self, s: &StandardStrategy) -> usize {
        let reachable = self.own_reachable(s.owner, &s.choice);
        self.strategies[s.owner.0]
            .iter()
            .position(|r| {
                r.plan
                    .iter()
                    .enumerate()
                    .all(|(h, a)| *a == reachable.contains(&h).then_some(s.choice[h]))
            })
            .expect("every standard strategy has a reduced class")
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.players.len()).map(PlayerId)
    }

    pub fn player_name(&self, i: PlayerId) -> &str {
        &self.players[i.0]
    }

    pub fn player_names(&self) -> &[String] {
        &self.players
    }

    pub fn player_by_name(&self, name: &str) -> Option<PlayerId> {
        self.players.iter().position(|p| p == name).map(PlayerId)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn infosets(&self) -> &[InfoSet] {
        &self.infosets
    }

    pub fn infoset(&self, h: usize) -> &InfoSet {
        &self.infosets[h]
    }

    pub fn infoset_by_id(&self, id: &str) -> Option<usize> {
        self.infosets.iter().position(|h| h.id == id)
    }

    /// `H_i` in declaration order (global indices).
    pub fn player_infosets(&self, i: PlayerId) -> &[usize] {
        &self.player_infosets[i.0]
    }

    /// `S_i`: the reduced strategies of `i`.
    pub fn strategies(&self, i: PlayerId) -> &[Strategy] {
        &self.strategies[i.0]
    }

    pub fn num_strategies(&self, i: PlayerId) -> usize {
        self.strategies[i.0].len()
    }

    pub fn strategy_label(&self, i: PlayerId, s: usize) -> &str {
        &self.strategies[i.0][s].label
    }

    pub fn strategy_by_label(&self, i: PlayerId, label: &str) -> Option<usize> {
        self.strategies[i.0].iter().position(|s| s.label == label)
    }

    /// Indexing of full strategy profiles.
    pub fn profiles(&self) -> &MixedRadix {
        &self.profiles
    }

    /// Indexing of opponent profiles `S_{-i}` (opponents in player order).
    pub fn opponent_profiles(&self, i: PlayerId) -> &MixedRadix {
        &self.opponents[i.0]
    }

    pub fn opponents(&self, i: PlayerId) -> impl Iterator<Item = PlayerId> {
        (0..self.players.len()).filter(move |&j| j != i.0).map(PlayerId)
    }

    /// Full profile index from an own strategy and an opponent profile index.
    pub fn join(&self, i: PlayerId, s_i: usize, opp: usize) -> usize {
        let mut digits = self.opponents[i.0].decode(opp);
        digits.insert(i.0, s_i);
        self.profiles.encode(&digits)
    }

    /// Split a full profile index into (own strategy, opponent profile index).
    pub fn split(&self, i: PlayerId, profile: usize) -> (usize, usize) {
        let mut digits = self.profiles.decode(profile);
        let own = digits.remove(i.0);
        (own, self.opponents[i.0].encode(&digits))
    }

    /// Labels of the opponents' strategies in an opponent profile.
    pub fn opponent_labels(&self, i: PlayerId, opp: usize) -> Vec<&str> {
        self.opponents[i.0]
            .decode(opp)
            .into_iter()
            .zip(self.opponents(i))
            .map(|(s, j)| self.strategy_label(j, s))
            .collect()
    }

    pub fn opponent_profile_by_labels(&self, i: PlayerId, labels: &[String]) -> Option<usize> {
        if labels.len() + 1 != self.num_players() {
            return None;
        }
        let digits = self
            .opponents(i)
            .zip(labels)
            .map(|(j, l)| self.strategy_by_label(j, l))
            .collect::<Option<Vec<_>>>()?;
        Some(self.opponents[i.0].encode(&digits))
    }

    /// Payoff vector of a full profile index.
    pub fn profile_payoffs(&self, profile: usize) -> &[Rational] {
        &self.payoffs[profile]
    }

    /// `u_i(s_i, s_{-i})`.
    pub fn utility(&self, i: PlayerId, s_i: usize, opp: usize) -> &Rational {
        &self.payoffs[self.join(i, s_i, opp)][i.0]
    }

    /// Profiles (full indices) whose path passes through the information set.
    pub fn reaching_profiles(&self, h: InfoSetRef) -> BTreeSet<usize> {
        match h {
            InfoSetRef::Root => (0..self.profiles.len()).collect(),
            InfoSetRef::Set(h) => self.reach[h].clone(),
        }
    }

    /// `S_{-i}(h)` as a set of opponent profile indices.
    pub fn opponent_event(&self, i: PlayerId, h: InfoSetRef) -> AtomSet {
        self.reaching_profiles(h)
            .into_iter()
            .map(|p| self.split(i, p).1)
            .collect()
    }

    /// `𝓗_i` with duplicates merged; the root event comes first.
    pub fn conditioning_family(&self, i: PlayerId) -> &[ConditioningEvent] {
        &self.families[i.0]
    }

    /// Family index of `S_{-i}(h)` for an own information set given by its local index.
    pub fn own_event_index(&self, i: PlayerId, local: usize) -> usize {
        self.own_event[i.0][local]
    }

    /// Own information sets allowed by a strategy, as local indices.
    pub fn own_allowed(&self, i: PlayerId, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.strategies[i.0][s]
            .plan
            .iter()
            .enumerate()
            .filter_map(|(h, a)| a.map(|_| h))
    }

    /// True when every information set of every player is at the root.
    pub fn is_static(&self) -> bool {
        self.infosets
            .iter()
            .all(|h| h.nodes.iter().all(|&k| k == self.root))
    }

    pub fn infoset_ref_id(&self, h: InfoSetRef) -> &str {
        match h {
            InfoSetRef::Root => "root",
            InfoSetRef::Set(h) => &self.infosets[h].id,
        }
    }

    /// Resolve `"root"` or an information set id.
    pub fn infoset_ref_by_id(&self, id: &str) -> Option<InfoSetRef> {
        if id == "root" {
            Some(InfoSetRef::Root)
        } else {
            self.infoset_by_id(id).map(InfoSetRef::Set)
        }
    }

    /// `H_i^∅`: the root followed by the player's information sets.
    pub fn conditioning_infosets(&self, i: PlayerId) -> Vec<InfoSetRef> {
        std::iter::once(InfoSetRef::Root)
            .chain(self.player_infosets[i.0].iter().map(|&h| InfoSetRef::Set(h)))
            .collect()
    }

    /// Family index of the conditioning event generated by `h ∈ H_i^∅`.
    pub fn event_index_of(&self, i: PlayerId, h: InfoSetRef) -> Option<usize> {
        self.families[i.0].iter().position(|c| c.sources.contains(&h))
    }

    /// Labels used in reports: "{Out} × {Stop, Go}" style components.
    pub fn set_labels(&self, i: PlayerId, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter()
            .map(|&s| self.strategy_label(i, s).to_string())
            .collect()
    }
}

/// `S_i(h)`: strategies of `i` allowing `h`.
pub fn strategies_allowing(game: &DynamicGame, i: PlayerId, h: InfoSetRef) -> BTreeSet<usize> {
    game.reaching_profiles(h)
        .into_iter()
        .map(|p| game.split(i, p).0)
        .collect()
}

/// `H(s_i)`: information sets (of all players) not precluded by `s_i`.
pub fn reachable_infosets(game: &DynamicGame, i: PlayerId, s: usize) -> BTreeSet<usize> {
    (0..game.infosets().len())
        .filter(|&h| {
            game.reach[h]
                .iter()
                .any(|&p| game.split(i, p).0 == s)
        })
        .collect()
}

/// Payoff vector of a profile given as one strategy per player.
pub fn payoff(game: &DynamicGame, profile: &[usize]) -> Vec<Rational> {
    game.profile_payoffs(game.profiles().encode(profile)).to_vec()
}

/// Helper for building games in code; keeps insertion order.
#[derive(Debug, Default)]
pub struct GameBuilder {
    players: Vec<String>,
    nodes: IndexMap<String, NodeSpec>,
    infosets: Vec<InfoSetSpec>,
}

impl GameBuilder {
    pub fn new(players: &[&str]) -> Self {
        Self {
            players: players.iter().map(|p| p.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn decision(mut self, id: &str, actions: &[(&str, &[&str])], children: &[(&str, &str)]) -> Self {
        let node = NodeSpec {
            actions: actions
                .iter()
                .map(|(p, a)| (p.to_string(), a.iter().map(|x| x.to_string()).collect()))
                .collect(),
            children: children
                .iter()
                .map(|(k, c)| (k.to_string(), c.to_string()))
                .collect(),
            payoffs: None,
        };
        self.nodes.insert(id.to_string(), node);
        self
    }

    pub fn terminal(mut self, id: &str, payoffs: &[&str]) -> Self {
        self.nodes.insert(
            id.to_string(),
            NodeSpec {
                payoffs: Some(payoffs.iter().map(|p| p.to_string()).collect()),
                ..NodeSpec::default()
            },
        );
        self
    }

    pub fn infoset(mut self, id: &str, player: &str, nodes: &[&str]) -> Self {
        self.infosets.push(InfoSetSpec {
            id: id.to_string(),
            player: player.to_string(),
            nodes: nodes.iter().map(|n| n.to_string()).collect(),
        });
        self
    }

    pub fn spec(self) -> GameSpec {
        GameSpec {
            players: self.players,
            root: None,
            nodes: self.nodes,
            infosets: self.infosets,
        }
    }
}

/// Strategy sets by label, for assertions and reports.
pub fn label_map(game: &DynamicGame) -> BTreeMap<String, Vec<String>> {
    game.players()
        .map(|i| {
            (
                game.player_name(i).to_string(),
                game.strategies(i).iter().map(|s| s.label.clone()).collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(game: &DynamicGame, i: PlayerId, set: &BTreeSet<usize>) -> BTreeSet<String> {
        game.set_labels(i, set).into_iter().collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn centipede_validates() {
        let g = fixtures::centipede();
        assert_eq!(g.player_infosets(PlayerId(0)).len(), 2);
        assert_eq!(g.player_infosets(PlayerId(1)).len(), 1);
        assert!(!g.is_static());
    }

    #[test]
    fn static_game_has_only_root_infosets() {
        let g = fixtures::static3x3();
        assert!(g.is_static());
        for i in g.players() {
            assert_eq!(g.conditioning_family(i).len(), 1);
            assert_eq!(g.conditioning_infosets(i).len(), 2);
        }
    }

    #[test]
    fn merged_centipede_infoset_breaks_recall() {
        let spec = fixtures::broken_recall_spec();
        assert!(matches!(
            validate_game(&spec),
            Err(GameError::PerfectRecallViolation { .. })
        ));
    }

    #[test]
    fn standard_strategy_counts() {
        let c = fixtures::centipede();
        assert_eq!(c.enumerate_standard_strategies(PlayerId(0)).len(), 4);
        assert_eq!(c.enumerate_standard_strategies(PlayerId(1)).len(), 2);
        let s = fixtures::static3x3();
        assert_eq!(s.enumerate_standard_strategies(PlayerId(0)).len(), 3);
    }

    #[test]
    fn reduced_strategies() {
        let c = fixtures::centipede();
        let a: BTreeSet<String> = c.strategies(PlayerId(0)).iter().map(|s| s.label.clone()).collect();
        assert_eq!(a, set(&["Out", "In-Across", "In-Down"]));
        let b: BTreeSet<String> = c.strategies(PlayerId(1)).iter().map(|s| s.label.clone()).collect();
        assert_eq!(b, set(&["Stop", "Go"]));
        // The two Out.* standard strategies merge.
        let std = c.enumerate_standard_strategies(PlayerId(0));
        let classes: Vec<usize> = std.iter().map(|s| c.reduce(s)).collect();
        assert_eq!(classes[0], classes[1]);
        assert_ne!(classes[2], classes[3]);
        let s = fixtures::static3x3();
        assert_eq!(s.num_strategies(PlayerId(0)), 3);
        assert_eq!(s.num_strategies(PlayerId(1)), 3);
    }

    #[test]
    fn allowing_sets() {
        let c = fixtures::centipede();
        let a = PlayerId(0);
        let b = PlayerId(1);
        let ingo = InfoSetRef::Set(c.infoset_by_id("a2").unwrap());
        assert_eq!(labels(&c, a, &strategies_allowing(&c, a, ingo)), set(&["In-Down", "In-Across"]));
        assert_eq!(labels(&c, b, &strategies_allowing(&c, b, ingo)), set(&["Go"]));
        assert_eq!(strategies_allowing(&c, a, InfoSetRef::Root).len(), 3);
    }

    #[test]
    fn conditioning_families() {
        let c = fixtures::centipede();
        let fa = c.conditioning_family(PlayerId(0));
        assert_eq!(fa.len(), 2);
        let go: AtomSet = [c.strategy_by_label(PlayerId(1), "Go").unwrap()].into();
        assert_eq!(fa[1].event, go);
        let fb = c.conditioning_family(PlayerId(1));
        assert_eq!(fb.len(), 2);
        assert_eq!(
            labels(&c, PlayerId(0), &fb[1].event),
            set(&["In-Down", "In-Across"])
        );
        // Ann's root information set and the root share one event.
        assert_eq!(fa[0].sources.len(), 2);
    }

    #[test]
    fn reachable_sets() {
        let c = fixtures::centipede();
        let a = PlayerId(0);
        let ids = |set: BTreeSet<usize>| -> BTreeSet<String> {
            set.into_iter().map(|h| c.infoset(h).id.clone()).collect()
        };
        let out = c.strategy_by_label(a, "Out").unwrap();
        let ia = c.strategy_by_label(a, "In-Across").unwrap();
        let stop = c.strategy_by_label(PlayerId(1), "Stop").unwrap();
        let own_a = |set: BTreeSet<usize>| -> BTreeSet<usize> {
            set.into_iter().filter(|&h| c.infoset(h).player == a).collect()
        };
        assert_eq!(ids(own_a(reachable_infosets(&c, a, out))), set(&["a1"]));
        assert_eq!(ids(own_a(reachable_infosets(&c, a, ia))), set(&["a1", "a2"]));
        assert_eq!(ids(reachable_infosets(&c, PlayerId(1), stop)), set(&["a1", "b1"]));
    }

    #[test]
    fn payoffs() {
        let c = fixtures::centipede();
        let a = PlayerId(0);
        let b = PlayerId(1);
        let p = |x: &str, y: &str| {
            payoff(&c, &[c.strategy_by_label(a, x).unwrap(), c.strategy_by_label(b, y).unwrap()])
        };
        let r = |v: i64| Rational::from_integer(v.into());
        assert_eq!(p("Out", "Stop"), vec![r(2), r(2)]);
        assert_eq!(p("In-Across", "Go"), vec![r(3), r(3)]);
        let s = fixtures::static3x3();
        let u = payoff(
            &s,
            &[s.strategy_by_label(a, "U").unwrap(), s.strategy_by_label(b, "C").unwrap()],
        );
        assert_eq!(u, vec![r(2), r(1)]);
    }

    #[test]
    fn product_identity_on_fixtures() {
        for g in [fixtures::centipede(), fixtures::static3x3()] {
            for h in (0..g.infosets().len()).map(InfoSetRef::Set).chain([InfoSetRef::Root]) {
                let reach = g.reaching_profiles(h);
                for i in g.players() {
                    let own = strategies_allowing(&g, i, h);
                    let opp = g.opponent_event(i, h);
                    let product: BTreeSet<usize> = own
                        .iter()
                        .flat_map(|&s| opp.iter().map(move |&y| (s, y)))
                        .map(|(s, y)| g.join(i, s, y))
                        .collect();
                    assert_eq!(product, reach);
                }
            }
        }
    }

    #[test]
    fn payoff_is_invariant_across_representatives() {
        let g = fixtures::centipede();
        let a = g.enumerate_standard_strategies(PlayerId(0));
        let b = g.enumerate_standard_strategies(PlayerId(1));
        for sa in &a {
            for sb in &b {
                // Play the standard profile directly through the tree.
                let mut k = g.root();
                let u = loop {
                    match &g.nodes()[k].kind {
                        NodeKind::Terminal(u) => break u.clone(),
                        NodeKind::Decision { actions, children } => {
                            let digits: Vec<usize> = (0..2)
                                .map(|p| match g.node_infoset[k][p] {
                                    Some(h) => {
                                        let local = g.local_index(h);
                                        if p == 0 { sa.choice[local] } else { sb.choice[local] }
                                    }
                                    None => 0,
                                })
                                .collect();
                            k = children[MixedRadix::new(actions.iter().map(Vec::len).collect())
                                .encode(&digits)];
                        }
                    }
                };
                assert_eq!(u, payoff(&g, &[g.reduce(sa), g.reduce(sb)]));
            }
        }
    }

    #[test]
    fn error_paths() {
        let base = || {
            GameBuilder::new(&["a", "b"])
                .decision("r", &[("a", &["L", "R"])], &[("L", "x"), ("R", "y")])
                .terminal("x", &["1", "0"])
                .terminal("y", &["0", "1"])
                .infoset("a1", "a", &["r"])
        };
        assert!(validate_game(&base().spec()).is_ok());

        let mut s = base().spec();
        s.nodes.get_mut("x").unwrap().payoffs = Some(vec!["1".into()]);
        assert!(matches!(validate_game(&s), Err(GameError::BadPayoffArity { .. })));

        let mut s = base().spec();
        s.nodes.get_mut("r").unwrap().children.insert("R".into(), "nope".into());
        assert!(matches!(validate_game(&s), Err(GameError::DanglingChild { .. })));

        let mut s = base().spec();
        s.nodes.get_mut("r").unwrap().actions.insert("b".into(), vec![]);
        assert!(matches!(validate_game(&s), Err(GameError::EmptyActionSet { .. })));

        let mut s = base().spec();
        s.nodes.get_mut("r").unwrap().children.insert("R".into(), "x".into());
        assert!(matches!(validate_game(&s), Err(GameError::NotATree(_))));

        let s = GameBuilder::new(&["a", "b"])
            .decision("r", &[("a", &["L", "R"])], &[("L", "m1"), ("R", "m2")])
            .decision("m1", &[("b", &["l", "r"])], &[("l", "x1"), ("r", "x2")])
            .decision("m2", &[("b", &["l", "c"])], &[("l", "x3"), ("c", "x4")])
            .terminal("x1", &["0", "0"])
            .terminal("x2", &["0", "0"])
            .terminal("x3", &["0", "0"])
            .terminal("x4", &["0", "0"])
            .infoset("a1", "a", &["r"])
            .infoset("b1", "b", &["m1", "m2"])
            .spec();
        assert!(matches!(validate_game(&s), Err(GameError::InfoSetActionMismatch { .. })));
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let r = MixedRadix::new(vec![3, 1, 4]);
        for idx in 0..r.len() {
            assert_eq!(r.encode(&r.decode(idx)), idx);
        }
        assert_eq!(r.decode(5), vec![1, 0, 1]);
    }
}

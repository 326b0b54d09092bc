//! JSON file formats: games, type structures, state spaces, closures, CPSs and families.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::beliefs::{Cps, Measure};
use crate::epistemic::{TypeStructure, TypeStructureError};
use crate::game::{validate_game, DynamicGame, GameError, GameSpec, PlayerId};
use crate::rational::{format_rational, parse_rational};
use crate::separating::{Closure, SeparatingError, StateSpace};
use crate::sets::{PlayerSetFamily, ProductSet, SetFamily};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    TypeStructure(#[from] TypeStructureError),
    #[error(transparent)]
    Separating(#[from] SeparatingError),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("missing entry for player `{0}`")]
    MissingPlayer(String),
    #[error("player `{player}` has no strategy `{label}`")]
    UnknownStrategy { player: String, label: String },
    #[error("player `{player}` has no type `{label}`")]
    UnknownType { player: String, label: String },
    #[error("`{key}` is neither `root` nor an information set of player `{player}`")]
    UnknownInfoSet { player: String, key: String },
    #[error("type `{label}` of `{player}`: an atom lists {found} labels, expected {expected}")]
    AtomArity {
        player: String,
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("type `{label}` of `{player}` has no belief for the event of `{event}`")]
    MissingConditional {
        player: String,
        label: String,
        event: String,
    },
    #[error("type `{label}` of `{player}` lists different beliefs for one event (`{event}`)")]
    ConflictingConditionals {
        player: String,
        label: String,
        event: String,
    },
    #[error("type `{label}` of `{player}` has no beliefs")]
    MissingBeliefs { player: String, label: String },
}

pub fn parse_game(text: &str) -> Result<DynamicGame, FormatError> {
    let spec: GameSpec = serde_json::from_str(text)?;
    Ok(validate_game(&spec)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomSpec {
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub p: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlayerTypesSpec {
    pub types: Vec<String>,
    pub beliefs: IndexMap<String, IndexMap<String, Vec<AtomSpec>>>,
}

pub type TypeStructureSpec = IndexMap<String, PlayerTypesSpec>;

fn player_entry<'a, T>(game: &DynamicGame, map: &'a IndexMap<String, T>) -> Result<Vec<&'a T>, FormatError> {
    if let Some(k) = map.keys().find(|k| game.player_by_name(k).is_none()) {
        return Err(FormatError::UnknownPlayer(k.clone()));
    }
    game.player_names()
        .iter()
        .map(|p| map.get(p).ok_or_else(|| FormatError::MissingPlayer(p.clone())))
        .collect()
}

pub fn parse_type_structure(game: &DynamicGame, text: &str) -> Result<TypeStructure, FormatError> {
    let spec: TypeStructureSpec = serde_json::from_str(text)?;
    type_structure_from_spec(game, &spec)
}

pub fn type_structure_from_spec(game: &DynamicGame, spec: &TypeStructureSpec) -> Result<TypeStructure, FormatError> {
    let entries = player_entry(game, spec)?;
    let types: Vec<Vec<String>> = entries.iter().map(|e| e.types.clone()).collect();
    let probe = TypeStructure::new_unchecked(types.clone(), vec![Vec::new(); game.num_players()]);
    let mut beliefs = Vec::new();
    for i in game.players() {
        let player = game.player_name(i).to_string();
        let family = probe.joint_family(game, i);
        let size = probe.joint_size(game, i);
        let mut per_type = Vec::new();
        for label in &types[i.0] {
            let by_key = entries[i.0].beliefs.get(label).ok_or_else(|| FormatError::MissingBeliefs {
                player: player.clone(),
                label: label.clone(),
            })?;
            let mut conditionals: Vec<Option<Measure>> = vec![None; family.len()];
            for (key, atoms) in by_key {
                let k = game
                    .infoset_ref_by_id(key)
                    .and_then(|h| game.event_index_of(i, h))
                    .ok_or_else(|| FormatError::UnknownInfoSet {
                        player: player.clone(),
                        key: key.clone(),
                    })?;
                let m = measure_from_atoms(game, &probe, i, label, atoms)?;
                match &conditionals[k] {
                    Some(old) if *old != m => {
                        return Err(FormatError::ConflictingConditionals {
                            player,
                            label: label.clone(),
                            event: key.clone(),
                        })
                    }
                    _ => conditionals[k] = Some(m),
                }
            }
            let conditionals = conditionals
                .into_iter()
                .enumerate()
                .map(|(k, m)| {
                    m.ok_or_else(|| FormatError::MissingConditional {
                        player: player.clone(),
                        label: label.clone(),
                        event: game.infoset_ref_id(game.conditioning_family(i)[k].sources[0]).to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            per_type.push(Cps::new_unchecked(size, family.clone(), conditionals));
        }
        beliefs.push(per_type);
    }
    Ok(TypeStructure::new(game, types, beliefs)?)
}

fn measure_from_atoms(
    game: &DynamicGame,
    ts: &TypeStructure,
    i: PlayerId,
    label: &str,
    atoms: &[AtomSpec],
) -> Result<Measure, FormatError> {
    let player = game.player_name(i).to_string();
    let arity = game.num_players() - 1;
    let mut pairs = Vec::new();
    for atom in atoms {
        for found in [atom.s.len(), atom.t.len()] {
            if found != arity {
                return Err(FormatError::AtomArity {
                    player: player.clone(),
                    label: label.to_string(),
                    expected: arity,
                    found,
                });
            }
        }
        let mut digits = Vec::new();
        let mut tau = Vec::new();
        for ((j, s), t) in game.opponents(i).zip(&atom.s).zip(&atom.t) {
            digits.push(game.strategy_by_label(j, s).ok_or_else(|| FormatError::UnknownStrategy {
                player: game.player_name(j).to_string(),
                label: s.clone(),
            })?);
            tau.push(ts.type_by_label(j, t).ok_or_else(|| FormatError::UnknownType {
                player: game.player_name(j).to_string(),
                label: t.clone(),
            })?);
        }
        let y = game.opponent_profiles(i).encode(&digits);
        let p = parse_rational(&atom.p).ok_or_else(|| FormatError::BadRational(atom.p.clone()))?;
        pairs.push((ts.encode_joint(game, i, y, &tau), p));
    }
    Ok(Measure::from_pairs(pairs))
}

/// The file form of a type structure; every event is keyed by its first generating
/// information set (`root` for the root event).
pub fn type_structure_to_json(game: &DynamicGame, ts: &TypeStructure) -> Value {
    let mut out = serde_json::Map::new();
    for i in game.players() {
        let mut beliefs = serde_json::Map::new();
        for t in 0..ts.num_types(i) {
            let mut by_key = serde_json::Map::new();
            for (k, m) in ts.belief(i, t).conditionals().iter().enumerate() {
                let key = game.infoset_ref_id(game.conditioning_family(i)[k].sources[0]).to_string();
                let atoms: Vec<Value> = m
                    .iter()
                    .map(|(idx, p)| {
                        let (y, tau) = ts.decode_joint(game, i, idx);
                        let s: Vec<&str> = game.opponent_labels(i, y);
                        let t: Vec<&str> = game.opponents(i).zip(&tau).map(|(j, &tj)| ts.type_label(j, tj)).collect();
                        json!({ "s": s, "t": t, "p": format_rational(p) })
                    })
                    .collect();
                by_key.insert(key, Value::Array(atoms));
            }
            beliefs.insert(ts.type_label(i, t).to_string(), Value::Object(by_key));
        }
        out.insert(
            game.player_name(i).to_string(),
            json!({ "types": ts.types(i), "beliefs": beliefs }),
        );
    }
    Value::Object(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSpaceSpec {
    pub host: String,
    pub real_types: IndexMap<String, Vec<String>>,
}

pub fn parse_state_space_spec(text: &str) -> Result<StateSpaceSpec, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn state_space_from_spec(game: &DynamicGame, host: &TypeStructure, spec: &StateSpaceSpec) -> Result<StateSpace, FormatError> {
    let labels: Vec<Vec<String>> = player_entry(game, &spec.real_types)?.into_iter().cloned().collect();
    Ok(StateSpace::from_labels(host, game, &labels)?)
}

pub fn state_space_to_json(game: &DynamicGame, host: &TypeStructure, host_path: &str, ss: &StateSpace) -> Value {
    let real: serde_json::Map<String, Value> = game
        .players()
        .map(|i| (game.player_name(i).to_string(), json!(type_labels(host, i, &ss.real[i.0]))))
        .collect();
    json!({ "host": host_path, "real_types": real })
}

fn type_labels(host: &TypeStructure, i: PlayerId, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&t| host.type_label(i, t).to_string()).collect()
}

/// `{owner: {player: [types]}}`; owners missing from the file are returned as `None`.
pub fn parse_closures(game: &DynamicGame, host: &TypeStructure, text: &str) -> Result<Vec<Option<Closure>>, FormatError> {
    let spec: IndexMap<String, IndexMap<String, Vec<String>>> = serde_json::from_str(text)?;
    let mut out = vec![None; game.num_players()];
    for (owner, sets) in &spec {
        let o = game.player_by_name(owner).ok_or_else(|| FormatError::UnknownPlayer(owner.clone()))?;
        let entries = player_entry(game, sets)?;
        let types = game
            .players()
            .map(|j| {
                entries[j.0]
                    .iter()
                    .map(|l| {
                        host.type_by_label(j, l).ok_or_else(|| FormatError::UnknownType {
                            player: game.player_name(j).to_string(),
                            label: l.clone(),
                        })
                    })
                    .collect::<Result<BTreeSet<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        out[o.0] = Some(Closure { owner: o, types });
    }
    Ok(out)
}

pub fn closures_to_json(game: &DynamicGame, host: &TypeStructure, closures: &[Closure]) -> Value {
    let map: serde_json::Map<String, Value> = closures
        .iter()
        .map(|cl| {
            let inner: serde_json::Map<String, Value> = game
                .players()
                .map(|j| (game.player_name(j).to_string(), json!(type_labels(host, j, &cl.types[j.0]))))
                .collect();
            (game.player_name(cl.owner).to_string(), Value::Object(inner))
        })
        .collect();
    Value::Object(map)
}

/// `{"a": ["Out"], "b": ["Go"]}`.
pub fn parse_product_set(game: &DynamicGame, text: &str) -> Result<ProductSet, FormatError> {
    let spec: IndexMap<String, Vec<String>> = serde_json::from_str(text)?;
    let labels: Vec<Vec<String>> = player_entry(game, &spec)?.into_iter().cloned().collect();
    ProductSet::from_labels(game, &labels).map_err(|e| FormatError::UnknownStrategy {
        player: String::new(),
        label: e,
    })
}

pub fn product_set_to_json(game: &DynamicGame, p: &ProductSet) -> Value {
    json!(p.labels(game))
}

pub fn family_to_json(game: &DynamicGame, family: &SetFamily) -> Value {
    let mut members: Vec<Vec<Vec<String>>> = family.members().iter().map(|m| m.labels(game)).collect();
    members.sort();
    json!(members)
}

pub fn player_family_to_json(game: &DynamicGame, family: &PlayerSetFamily) -> Value {
    let mut members = family.labels(game);
    members.sort();
    json!(members)
}

/// `{"family": [ids], "conditionals": {id: {atom: "p/q"}}}` for a first-order CPS of `i`.
pub fn cps_to_json(game: &DynamicGame, i: PlayerId, cps: &Cps) -> Value {
    let ids: Vec<String> = game
        .conditioning_family(i)
        .iter()
        .map(|c| game.infoset_ref_id(c.sources[0]).to_string())
        .collect();
    let conditionals: serde_json::Map<String, Value> = ids
        .iter()
        .zip(cps.conditionals())
        .map(|(id, m)| {
            let atoms: serde_json::Map<String, Value> = m
                .iter()
                .map(|(y, p)| (game.opponent_labels(i, y).join(","), json!(format_rational(p))))
                .collect();
            (id.clone(), Value::Object(atoms))
        })
        .collect();
    json!({ "family": ids, "conditionals": conditionals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn type_structure_round_trip() {
        let g = fixtures::centipede();
        let ts = fixtures::table1(&g);
        let text = serde_json::to_string(&type_structure_to_json(&g, &ts)).unwrap();
        assert_eq!(parse_type_structure(&g, &text).unwrap(), ts);
    }

    #[test]
    fn type_structure_errors() {
        let g = fixtures::centipede();
        let missing = r#"{"a":{"types":["x"],"beliefs":{"x":{"root":[{"s":["Go"],"t":["y"],"p":"1"}]}}},
                         "b":{"types":["y"],"beliefs":{"y":{"root":[{"s":["Out"],"t":["x"],"p":"1"}],"b1":[{"s":["In-Down"],"t":["x"],"p":"1"}]}}}}"#;
        assert!(matches!(parse_type_structure(&g, missing), Err(FormatError::MissingConditional { .. })));
        let a1_violation = r#"{"a":{"types":["x"],"beliefs":{"x":{"root":[{"s":["Go"],"t":["y"],"p":"1"}],"a2":[{"s":["Stop"],"t":["y"],"p":"1"}]}}},
                         "b":{"types":["y"],"beliefs":{"y":{"root":[{"s":["Out"],"t":["x"],"p":"1"}],"b1":[{"s":["In-Down"],"t":["x"],"p":"1"}]}}}}"#;
        assert!(matches!(
            parse_type_structure(&g, a1_violation),
            Err(FormatError::TypeStructure(TypeStructureError::Axiom { .. }))
        ));
        let conflict = r#"{"a":{"types":["x"],"beliefs":{"x":{"root":[{"s":["Go"],"t":["y"],"p":"1"}],"a1":[{"s":["Stop"],"t":["y"],"p":"1"}],"a2":[{"s":["Go"],"t":["y"],"p":"1"}]}}},
                         "b":{"types":["y"],"beliefs":{"y":{"root":[{"s":["Out"],"t":["x"],"p":"1"}],"b1":[{"s":["In-Down"],"t":["x"],"p":"1"}]}}}}"#;
        assert!(matches!(parse_type_structure(&g, conflict), Err(FormatError::ConflictingConditionals { .. })));
        let singleton = r#"{"a":{"types":["x"],"beliefs":{"x":{"root":[{"s":["Go"],"t":["y"],"p":"1"}],"a2":[{"s":["Go"],"t":["y"],"p":"1"}]}}},
                         "b":{"types":["y"],"beliefs":{"y":{"root":[{"s":["In-Across"],"t":["x"],"p":"1"}],"b1":[{"s":["In-Across"],"t":["x"],"p":"1"}]}}}}"#;
        assert!(parse_type_structure(&g, singleton).is_ok());
    }

    #[test]
    fn product_sets_and_families() {
        let g = fixtures::centipede();
        let p = parse_product_set(&g, r#"{"a":["Out"],"b":["Stop","Go"]}"#).unwrap();
        assert_eq!(product_set_to_json(&g, &p), json!([["Out"], ["Stop", "Go"]]));
        assert!(parse_product_set(&g, r#"{"a":["Nope"],"b":["Go"]}"#).is_err());
        assert!(parse_product_set(&g, r#"{"a":["Out"]}"#).is_err());
    }

    #[test]
    fn cps_json() {
        let g = fixtures::centipede();
        let ts = fixtures::table1(&g);
        let cps = crate::epistemic::first_order_cps(&g, &ts, PlayerId(1), 0);
        let v = cps_to_json(&g, PlayerId(1), &cps);
        assert_eq!(v["family"], json!(["root", "b1"]));
        assert_eq!(v["conditionals"]["b1"]["In-Down"], json!("1"));
    }
}

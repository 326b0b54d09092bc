//! Test-only reference implementations, written without the library's search or LP code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rcsbr_core::beliefs::{
    family_events, lps_to_cps, sequential_best_replies, strongly_believes, validate_cps, Cps, Lps, Measure,
};
use rcsbr_core::game::{DynamicGame, PlayerId};
use rcsbr_core::{AtomSet, ProductSet, Rational};

pub fn ps(game: &DynamicGame, parts: &[&[&str]]) -> ProductSet {
    let labels: Vec<Vec<String>> = parts.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect();
    ProductSet::from_labels(game, &labels).unwrap()
}

pub fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `a·x ≥ b`.
#[derive(Clone, Debug)]
pub struct Ineq {
    pub a: Vec<Rational>,
    pub b: Rational,
}

/// Solve a square system by Gauss–Jordan elimination; `None` if singular.
fn solve_square(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for k in 0..n {
                    let d = &f * &m[col][k];
                    m[row][k] = &m[row][k] - d;
                }
                rhs[row] = &rhs[row] - &f * &rhs[col];
            }
        }
    }
    Some(rhs)
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// A vertex of `{x : a·x ≥ b for all rows}`, assuming the rows make the set pointed.
pub fn vertex_point(n: usize, rows: &[Ineq]) -> Option<Vec<Rational>> {
    let holds = |x: &[Rational]| {
        rows.iter().all(|row| {
            let lhs: Rational = row.a.iter().zip(x).map(|(a, v)| a * v).sum();
            lhs >= row.b
        })
    };
    for pick in subsets(rows.len(), n) {
        let m: Vec<Vec<Rational>> = pick.iter().map(|&k| rows[k].a.clone()).collect();
        let rhs: Vec<Rational> = pick.iter().map(|&k| rows[k].b.clone()).collect();
        if let Some(x) = solve_square(m, rhs) {
            if holds(&x) {
                return Some(x);
            }
        }
    }
    None
}

/// Every ordered partition of `atoms`, built level by level.
pub fn ordered_set_partitions(atoms: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if atoms.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << atoms.len()) {
        let first: Vec<usize> = (0..atoms.len()).filter(|b| mask >> b & 1 == 1).map(|b| atoms[b]).collect();
        let rest: Vec<usize> = (0..atoms.len()).filter(|b| mask >> b & 1 == 0).map(|b| atoms[b]).collect();
        for mut tail in ordered_set_partitions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn own_infosets_allowed(game: &DynamicGame, i: PlayerId, s: usize) -> Vec<usize> {
    (0..game.player_infosets(i).len())
        .filter(|&h| game.strategies(i)[s].plan[h].is_some())
        .collect()
}

fn allowing(game: &DynamicGame, i: PlayerId, h: usize) -> Vec<usize> {
    (0..game.num_strategies(i))
        .filter(|&s| game.strategies(i)[s].plan[h].is_some())
        .collect()
}

/// Conditional weight vector `Σ_{y∈act} (u(a,y) − u(b,y)) w_y`.
fn row(game: &DynamicGame, i: PlayerId, a: usize, b: usize, act: &BTreeSet<usize>, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|y| {
            if act.contains(&y) {
                game.utility(i, a, y) - game.utility(i, b, y)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn cartesian(options: &[Vec<Vec<Rational>>]) -> Vec<Vec<Vec<Rational>>> {
    let mut out: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::new();
        for prefix in &out {
            for o in opts {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Brute-force answer to "is there a CPS with s* ∈ ρ, strong belief in `e`, ρ ⊆ fullness?".
/// Every point it finds is re-checked through the public belief functions.
pub fn oracle_justify(
    game: &DynamicGame,
    i: PlayerId,
    s_star: usize,
    e: &AtomSet,
    fullness: Option<&BTreeSet<usize>>,
) -> Option<Cps> {
    let n = game.opponent_profiles(i).len();
    let family = family_events(game, i);
    let atoms: Vec<usize> = (0..n).collect();
    for partition in ordered_set_partitions(&atoms) {
        let level_of = |y: usize| partition.iter().position(|l| l.contains(&y)).unwrap();
        let active: Vec<BTreeSet<usize>> = family
            .iter()
            .map(|c| {
                let first = c.iter().map(|&y| level_of(y)).min().unwrap();
                c.iter().copied().filter(|&y| level_of(y) == first).collect()
            })
            .collect();
        if family.iter().zip(&active).any(|(c, a)| !c.is_disjoint(e) && !a.is_subset(e)) {
            continue;
        }
        let event_of = |h: usize| {
            let ev = game.opponent_event(i, rcsbr_core::InfoSetRef::Set(game.player_infosets(i)[h]));
            family.iter().position(|c| *c == ev).unwrap()
        };
        let mut base: Vec<Ineq> = (0..n)
            .map(|y| Ineq {
                a: (0..n).map(|k| if k == y { r(1) } else { r(0) }).collect(),
                b: r(1),
            })
            .collect();
        for h in own_infosets_allowed(game, i, s_star) {
            for s in allowing(game, i, h) {
                base.push(Ineq { a: row(game, i, s_star, s, &active[event_of(h)], n), b: r(0) });
            }
        }
        let mut options = Vec::new();
        if let Some(full) = fullness {
            if !full.contains(&s_star) {
                return None;
            }
            for s in (0..game.num_strategies(i)).filter(|s| !full.contains(s)) {
                let mut opts = Vec::new();
                for h in own_infosets_allowed(game, i, s) {
                    for t in allowing(game, i, h) {
                        opts.push(row(game, i, t, s, &active[event_of(h)], n));
                    }
                }
                options.push(opts);
            }
        }
        for choice in cartesian(&options) {
            let mut rows = base.clone();
            rows.extend(choice.into_iter().map(|a| Ineq { a, b: r(1) }));
            if let Some(w) = vertex_point(n, &rows) {
                let lps = Lps {
                    levels: partition
                        .iter()
                        .map(|l| {
                            let total: Rational = l.iter().map(|&y| &w[y]).sum();
                            Measure::from_pairs(l.iter().map(|&y| (y, &w[y] / &total)))
                        })
                        .collect(),
                };
                let cps = lps_to_cps(&lps, n, &family);
                assert!(justifies(game, i, s_star, e, fullness, &cps), "oracle point fails the semantic check");
                return Some(cps);
            }
        }
    }
    None
}

/// Semantic check of a certificate.
pub fn justifies(
    game: &DynamicGame,
    i: PlayerId,
    s_star: usize,
    e: &AtomSet,
    fullness: Option<&BTreeSet<usize>>,
    cps: &Cps,
) -> bool {
    let rho = sequential_best_replies(game, i, cps);
    validate_cps(cps).is_ok()
        && rho.contains(&s_star)
        && strongly_believes(cps, e)
        && fullness.map_or(true, |f| rho.is_subset(f))
}

/// All subsets of `0..n`.
pub fn power_set(n: usize) -> Vec<BTreeSet<usize>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|b| mask >> b & 1 == 1).collect())
        .collect()
}

/// Iterated removal of never-best replies to correlated beliefs, decided by vertex
/// enumeration over the belief simplex.
pub fn oracle_p_infinity(game: &DynamicGame) -> ProductSet {
    let mut cur = ProductSet::full(game);
    loop {
        let next = ProductSet::new(
            game.players()
                .map(|i| {
                    let support: Vec<usize> = cur.opponent_event(game, i).into_iter().collect();
                    let k = support.len();
                    cur.component(i)
                        .iter()
                        .copied()
                        .filter(|&s| {
                            let mut rows: Vec<Ineq> = (0..k)
                                .map(|y| Ineq { a: (0..k).map(|z| if z == y { r(1) } else { r(0) }).collect(), b: r(0) })
                                .collect();
                            rows.push(Ineq { a: vec![r(1); k], b: r(1) });
                            rows.push(Ineq { a: vec![r(-1); k], b: r(-1) });
                            for t in 0..game.num_strategies(i) {
                                rows.push(Ineq {
                                    a: support.iter().map(|&y| game.utility(i, s, y) - game.utility(i, t, y)).collect(),
                                    b: r(0),
                                });
                            }
                            vertex_point(k, &rows).is_some()
                        })
                        .collect()
                })
                .collect(),
        );
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn is_one(x: &Rational) -> bool {
    x.is_one()
}

pub fn nonneg(x: &Rational) -> bool {
    !x.is_negative()
}

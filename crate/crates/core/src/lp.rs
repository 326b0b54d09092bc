//! Exact linear feasibility over the nonnegative orthant.
//!
//! A dense phase-one simplex with Bland's rule on [`Rational`] entries. The systems solved in
//! this crate have a handful of variables, so clarity wins over sparse bookkeeping.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

/// `Σ coeffs[j]·x_j  (relation)  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A point `x ≥ 0` satisfying every constraint, or `None` when the system is infeasible.
///
/// The returned point is a basic feasible solution, so it is deterministic for a given input.
pub fn find_feasible(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rational::zero(); num_vars]);
    }

    // Normalise to nonnegative right-hand sides.
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = constraints
        .iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.resize(num_vars, Rational::zero());
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Ge => Relation::Le,
                    Relation::Le => Relation::Ge,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs.into_iter().map(|a| -a).collect(), flipped, -c.rhs.clone())
            } else {
                (coeffs, c.relation, c.rhs.clone())
            }
        })
        .collect();

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = num_vars + slack_count;
    let width = art_start + art_count;

    // Tableau rows: coefficients then right-hand side.
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut slack, mut art) = (num_vars, art_start);
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(width + 1, Rational::zero());
        row[width] = rhs;
        match rel {
            Relation::Le => {
                row[slack] = Rational::one();
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
                row[art] = Rational::one();
                basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                row[art] = Rational::one();
                basis.push(art);
                art += 1;
            }
        }
        tab.push(row);
    }

    // Reduced costs of the phase-one objective (minimise the sum of artificials).
    let mut cost = vec![Rational::zero(); width + 1];
    for j in art_start..width {
        cost[j] = Rational::one();
    }
    for (r, &b) in basis.iter().enumerate() {
        if b >= art_start {
            for j in 0..=width {
                cost[j] = &cost[j] - &tab[r][j];
            }
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][width] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    // The objective row's constant holds minus the optimal sum of artificials.
    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); num_vars];
    for (r, &b) in basis.iter().enumerate() {
        if b < num_vars {
            x[b] = tab[r][width].clone();
        }
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v = &*v / &p;
    }
    let prow = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r != pr && !row[pc].is_zero() {
            let f = row[pc].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = &*v - &f * pv;
            }
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v = &*v - &f * pv;
        }
    }
}

//! Exact rational linear programming and the admissible-coefficient search.
//!
//! [`feasible_lambda`] asks whether the divisor coefficients can be chosen
//! to satisfy the barrier criterion at all: find `lambda > 0` with
//! `sum(lambda_i) = 2(n+1)` and `sum(lambda_i, i in support(v)) <= 2 codim(v)`
//! for every flat `v`. Positivity is made decidable by maximizing the
//! minimum coordinate and demanding a strictly positive optimum, so the
//! answer is exact: a returned vector satisfies every constraint in
//! rational arithmetic, and `None` certifies that no positive choice
//! exists.
//!
//! The solver is a dense two-phase primal simplex over big rationals with
//! Bland's rule, which cannot cycle; determinism follows from the fixed
//! pivot rule.

use num_traits::{One, Signed, Zero};

use crate::lattice::IntersectionLattice;
use crate::{Int, Rat};

/// `a . x (op) b` with `x >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

/// Maximize `objective . x` over `x >= 0` subject to the constraints.
pub fn maximize(objective: &[Rat], constraints: &[Constraint]) -> LpOutcome {
    Tableau::new(objective.len(), constraints).solve(objective)
}

struct Tableau {
    // rows: one per constraint, columns: structural + slack + artificial + rhs
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    n_structural: usize,
    n_slack: usize,
    n_artificial: usize,
}

impl Tableau {
    fn new(n: usize, constraints: &[Constraint]) -> Tableau {
        let m = constraints.len();
        let n_slack = constraints
            .iter()
            .filter(|c| c.relation == Relation::LessEq)
            .count();
        // one artificial per row keeps phase one uniform regardless of the
        // rhs signs and relation kinds
        let n_artificial = m;
        let width = n + n_slack + n_artificial + 1;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack_at = 0;
        for (i, c) in constraints.iter().enumerate() {
            assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
            let mut row = vec![Rat::zero(); width];
            row[..n].clone_from_slice(&c.coeffs);
            row[width - 1] = c.rhs.clone();
            if c.relation == Relation::LessEq {
                row[n + slack_at] = Rat::one();
                slack_at += 1;
            }
            // normalize to nonnegative rhs so artificials start feasible
            if row[width - 1].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[n + n_slack + i] = Rat::one();
            basis.push(n + n_slack + i);
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            n_structural: n,
            n_slack,
            n_artificial,
        }
    }

    fn width(&self) -> usize {
        self.n_structural + self.n_slack + self.n_artificial + 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rat::one() / self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for c in 0..self.width() {
                let upd = self.rows[r][c].clone() - factor.clone() * self.rows[row][c].clone();
                self.rows[r][c] = upd;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced cost row for maximizing `obj . x` given the current basis.
    fn reduced_costs(&self, obj: &[Rat]) -> Vec<Rat> {
        let width = self.width();
        let mut costs = Vec::with_capacity(width - 1);
        for c in 0..width - 1 {
            let mut z = Rat::zero();
            for (r, &b) in self.basis.iter().enumerate() {
                if b < obj.len() && !obj[b].is_zero() {
                    z += obj[b].clone() * self.rows[r][c].clone();
                }
            }
            let direct = if c < obj.len() {
                obj[c].clone()
            } else {
                Rat::zero()
            };
            costs.push(direct - z);
        }
        costs
    }

    fn objective_value(&self, obj: &[Rat]) -> Rat {
        let width = self.width();
        let mut z = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if b < obj.len() {
                z += obj[b].clone() * self.rows[r][width - 1].clone();
            }
        }
        z
    }

    /// Bland's rule iteration until optimal or unbounded. Columns in
    /// `banned` never enter (used to freeze artificials in phase two).
    fn run(&mut self, obj: &[Rat], banned_from: usize) -> bool {
        loop {
            let costs = self.reduced_costs(obj);
            let entering = (0..banned_from).find(|&c| costs[c].is_positive());
            let Some(col) = entering else { return true };
            let width = self.width();
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][col].is_positive() {
                    continue;
                }
                let ratio = self.rows[r][width - 1].clone() / self.rows[r][col].clone();
                let better = match &leave {
                    None => true,
                    // Bland: smallest ratio, ties to the smallest basis index
                    Some((br, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else { return false };
            self.pivot(row, col);
        }
    }

    fn solve(&mut self, objective: &[Rat]) -> LpOutcome {
        // phase one: minimize the artificial total, i.e. maximize its negative
        let width = self.width();
        let mut phase1 = vec![Rat::zero(); width - 1];
        for slot in phase1.iter_mut().skip(self.n_structural + self.n_slack) {
            *slot = -Rat::one();
        }
        let finished = self.run(&phase1, width - 1);
        debug_assert!(finished, "phase one is bounded by zero");
        if self.objective_value(&phase1).is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive degenerate artificials out of the basis where possible; an
        // artificial stuck on an all-zero row marks a redundant constraint
        // and stays at level zero for the rest of the run.
        for r in 0..self.rows.len() {
            if self.basis[r] >= self.n_structural + self.n_slack {
                if let Some(col) =
                    (0..self.n_structural + self.n_slack).find(|&c| !self.rows[r][c].is_zero())
                {
                    self.pivot(r, col);
                }
            }
        }
        // phase two: artificials are banned from entering
        let mut phase2 = vec![Rat::zero(); width - 1];
        phase2[..objective.len()].clone_from_slice(objective);
        if !self.run(&phase2, self.n_structural + self.n_slack) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rat::zero(); self.n_structural];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n_structural {
                x[b] = self.rows[r][width - 1].clone();
            }
        }
        let objective = self.objective_value(&phase2);
        LpOutcome::Optimal { x, objective }
    }
}

/// Search for a strictly positive `lambda` certificate; see module docs.
pub fn feasible_lambda(lat: &IntersectionLattice, n: usize) -> Option<Vec<Rat>> {
    let l = lat.top().len();
    // variables: lambda_1..lambda_l, t; maximize t
    let mut constraints = Vec::new();
    for f in &lat.flats {
        let mut coeffs = vec![Rat::zero(); l + 1];
        for &i in &f.support {
            coeffs[i] = Rat::one();
        }
        constraints.push(Constraint {
            coeffs,
            relation: Relation::LessEq,
            rhs: Rat::from_integer(Int::from(2 * f.codim as i64)),
        });
    }
    let mut total = vec![Rat::one(); l + 1];
    total[l] = Rat::zero();
    constraints.push(Constraint {
        coeffs: total,
        relation: Relation::Eq,
        rhs: Rat::from_integer(Int::from(2 * (n as i64 + 1))),
    });
    for i in 0..l {
        let mut coeffs = vec![Rat::zero(); l + 1];
        coeffs[i] = -Rat::one();
        coeffs[l] = Rat::one();
        constraints.push(Constraint {
            coeffs,
            relation: Relation::LessEq,
            rhs: Rat::zero(),
        });
    }
    let mut objective = vec![Rat::zero(); l + 1];
    objective[l] = Rat::one();
    match maximize(&objective, &constraints) {
        LpOutcome::Optimal { x, objective } if objective.is_positive() => Some(x[..l].to_vec()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::named;
    use crate::rational::rat;

    #[test]
    fn simplex_small_max() {
        // max x + y st x + 2y <= 4, 3x + y <= 6 -> x = 8/5, y = 6/5
        let out = maximize(
            &[rat(1, 1), rat(1, 1)],
            &[
                Constraint {
                    coeffs: vec![rat(1, 1), rat(2, 1)],
                    relation: Relation::LessEq,
                    rhs: rat(4, 1),
                },
                Constraint {
                    coeffs: vec![rat(3, 1), rat(1, 1)],
                    relation: Relation::LessEq,
                    rhs: rat(6, 1),
                },
            ],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![rat(8, 5), rat(6, 5)],
                objective: rat(14, 5)
            }
        );
    }

    #[test]
    fn simplex_detects_infeasible_and_unbounded() {
        let infeasible = maximize(
            &[rat(1, 1)],
            &[
                Constraint {
                    coeffs: vec![rat(1, 1)],
                    relation: Relation::LessEq,
                    rhs: rat(1, 1),
                },
                Constraint {
                    coeffs: vec![rat(1, 1)],
                    relation: Relation::Eq,
                    rhs: rat(2, 1),
                },
            ],
        );
        assert_eq!(infeasible, LpOutcome::Infeasible);
        let unbounded = maximize(
            &[rat(1, 1)],
            &[Constraint {
                coeffs: vec![rat(-1, 1)],
                relation: Relation::LessEq,
                rhs: rat(1, 1),
            }],
        );
        assert_eq!(unbounded, LpOutcome::Unbounded);
    }

    #[test]
    fn figure1a_certificate() {
        // the three concurrent lines are listed first and get 4/3 each
        let lat = build_lattice(&named::figure1a());
        let lambda = feasible_lambda(&lat, 2).unwrap();
        assert_eq!(lambda, vec![rat(4, 3), rat(4, 3), rat(4, 3), rat(2, 1)]);
    }

    #[test]
    fn two_lines_have_no_certificate() {
        let lat = build_lattice(&named::generic(2, 2));
        assert_eq!(feasible_lambda(&lat, 2), None);
    }

    #[test]
    fn coordinate_certificate_is_tight() {
        let lat = build_lattice(&named::coordinate(2));
        assert_eq!(
            feasible_lambda(&lat, 2).unwrap(),
            vec![rat(2, 1), rat(2, 1), rat(2, 1)]
        );
    }
}

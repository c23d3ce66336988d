//! Dense two-phase simplex over exact rationals.
//!
//! Problems are stated as: maximize `c·x` subject to `eq` rows (`a·x = b`),
//! `le` rows (`a·x <= b`) and `x >= 0`. Bland's rule makes the pivot
//! sequence, and therefore the reported optimum, deterministic.

use num_traits::{One, Signed, Zero};

use crate::arith::Q;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Q>,
    pub eq: Vec<(Vec<Q>, Q)>,
    pub le: Vec<(Vec<Q>, Q)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

/// Nonnegative multipliers on a family of strict inequalities `r_i·λ > 0`
/// whose weighted sum is the zero functional, so no λ can satisfy them all.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub labels: Vec<String>,
    pub multipliers: Vec<Q>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Q::zero(); num_vars],
            eq: Vec::new(),
            le: Vec::new(),
        }
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>, // each row: coefficients, then rhs
    basis: Vec<usize>,
    n_struct: usize,
    n_total: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let n_slack = lp.le.len();
        let m = lp.eq.len() + n_slack;
        let first_artificial = n + n_slack;
        let n_total = first_artificial + m;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let all = lp
            .eq
            .iter()
            .map(|r| (r, None))
            .chain(lp.le.iter().enumerate().map(|(i, r)| (r, Some(i))));
        for (i, ((a, b), slack)) in all.enumerate() {
            let mut row = vec![Q::zero(); n_total + 1];
            row[..n].clone_from_slice(a);
            if let Some(s) = slack {
                row[n + s] = Q::one();
            }
            row[n_total] = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[first_artificial + i] = Q::one();
            rows.push(row);
            basis.push(first_artificial + i);
        }
        Tableau {
            rows,
            basis,
            n_struct: n,
            n_total,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for the given cost vector over all
    /// columns, restricted to `allowed` columns.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let rhs = self.n_total;
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }

    fn run(mut self, objective: &[Q]) -> LpOutcome {
        let rhs = self.n_total;
        // Phase 1: maximize -(sum of artificials).
        let mut cost1 = vec![Q::zero(); self.n_total];
        for c in cost1[self.first_artificial..].iter_mut() {
            *c = -Q::one();
        }
        self.optimize(&cost1, self.n_total);
        let infeas: Q = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.first_artificial)
            .map(|(row, _)| row[rhs].clone())
            .sum();
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        let mut cost2 = vec![Q::zero(); self.n_total];
        cost2[..self.n_struct].clone_from_slice(objective);
        if !self.optimize(&cost2, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); self.n_struct];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_struct {
                x[b] = row[rhs].clone();
            }
        }
        let value = x
            .iter()
            .zip(objective)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b);
        LpOutcome::Optimal { x, value }
    }
}

/// Searches for a nonnegative combination of `rows` summing to zero with
/// multipliers summing to one. Returns `None` when the rows admit a common
/// strictly positive direction (Gordan's alternative).
pub fn farkas_zero_combination(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    let m = rows.len();
    if m == 0 {
        return None;
    }
    let dim = rows[0].len();
    let mut lp = LinearProgram::new(m);
    for j in 0..dim {
        let a: Vec<Q> = rows.iter().map(|r| r[j].clone()).collect();
        lp.eq.push((a, Q::zero()));
    }
    lp.eq.push((vec![Q::one(); m], Q::one()));
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

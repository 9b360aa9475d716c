//! Exact rational linear programming: two-phase dense tableau simplex with
//! Bland's anti-cycling rule. All variables are non-negative; callers shift
//! or split variables to express other bounds.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

/// `minimize objective . x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram {
            objective: vec![Q::zero(); nvars],
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.nvars());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    /// rows x (cols + 1); the last column is the right-hand side
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    nstruct: usize,
    ncols: usize,
    artificial: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.nvars();
        let m = lp.constraints.len();
        // columns: structural | one slack per inequality | one artificial per row needing it
        let mut slack_of = vec![None; m];
        let mut ncols = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            if c.relation != Relation::Eq {
                slack_of[i] = Some(ncols);
                ncols += 1;
            }
        }
        let mut rows = Vec::with_capacity(m);
        let mut needs_art = vec![false; m];
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Q::zero(); ncols];
            row[..n].clone_from_slice(&c.coeffs);
            let mut rhs = c.rhs.clone();
            if let Some(s) = slack_of[i] {
                row[s] = match c.relation {
                    Relation::Le => Q::one(),
                    Relation::Ge => -Q::one(),
                    Relation::Eq => unreachable!(),
                };
            }
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                rhs = -rhs;
            }
            // a slack with +1 coefficient can start basic
            needs_art[i] = match slack_of[i] {
                Some(s) => !row[s].is_one(),
                None => true,
            };
            row.push(rhs);
            rows.push(row);
        }
        let nart = needs_art.iter().filter(|&&b| b).count();
        let total = ncols + nart;
        let mut basis = vec![0; m];
        let mut artificial = vec![false; total];
        let mut next_art = ncols;
        for i in 0..m {
            let rhs = rows[i].pop().unwrap();
            rows[i].resize(total, Q::zero());
            if needs_art[i] {
                rows[i][next_art] = Q::one();
                artificial[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            } else {
                basis[i] = slack_of[i].unwrap();
            }
            rows[i].push(rhs);
        }
        Tableau {
            rows,
            basis,
            nstruct: n,
            ncols: total,
            artificial,
        }
    }

    fn reduced_costs(&self, cost: &[Q]) -> Vec<Q> {
        let mut rc: Vec<Q> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[i][j].is_zero() {
                    rc[j] -= cb * &self.rows[i][j];
                }
            }
        }
        rc
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        let prow = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in self.rows[i].iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimises `cost`; `allowed` masks entering columns.
    fn optimise(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            // Bland: smallest index with negative reduced cost
            let Some(enter) = (0..self.ncols).find(|&j| allowed[j] && rc[j].is_negative()) else {
                return true;
            };
            let rhs_col = self.ncols;
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rows[i][rhs_col] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn run(mut self, objective: &[Q]) -> LpOutcome {
        let rhs_col = self.ncols;
        if self.artificial.iter().any(|&a| a) {
            let phase1: Vec<Q> = self
                .artificial
                .iter()
                .map(|&a| if a { Q::one() } else { Q::zero() })
                .collect();
            let all = vec![true; self.ncols];
            self.optimise(&phase1, &all);
            let infeas: Q = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| self.artificial[b])
                .map(|(i, _)| self.rows[i][rhs_col].clone())
                .sum();
            if infeas.is_positive() {
                return LpOutcome::Infeasible;
            }
            // drive remaining (zero-valued) artificials out of the basis
            for i in 0..self.rows.len() {
                if self.artificial[self.basis[i]] {
                    if let Some(j) = (0..self.ncols).find(|&j| !self.artificial[j] && !self.rows[i][j].is_zero()) {
                        self.pivot(i, j);
                    }
                }
            }
        }
        let mut cost = vec![Q::zero(); self.ncols];
        cost[..self.nstruct].clone_from_slice(objective);
        let allowed: Vec<bool> = self.artificial.iter().map(|&a| !a).collect();
        if !self.optimise(&cost, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); self.nstruct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nstruct {
                x[b] = self.rows[i][rhs_col].clone();
            }
        }
        let value = x.iter().zip(objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}

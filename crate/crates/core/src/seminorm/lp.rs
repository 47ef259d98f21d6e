//! Exact rational linear programming.
//!
//! Two-phase tableau simplex with Bland's rule. Every outcome carries a
//! certificate that [`Certificate::verify`] checks against the problem
//! without looking at the solver state.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::{Error, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    NonNeg,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Q)>,
    pub relation: Relation,
    pub rhs: Q,
}

/// `minimize objective · x` subject to the constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub vars: Vec<VarKind>,
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `x` is feasible, `y` is dual feasible and `c·x = b·y = value`.
    Optimal { x: Vec<Q>, y: Vec<Q>, value: Q },
    /// Farkas witness: `b·y > 0` while `y` is a dual ray.
    Infeasible { y: Vec<Q> },
    /// `x` is feasible and `ray` is a recession direction with `c·ray < 0`.
    Unbounded { x: Vec<Q>, ray: Vec<Q> },
}

impl Certificate {
    pub fn value(&self) -> Option<&Q> {
        match self {
            Certificate::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn primal(&self) -> Option<&[Q]> {
        match self {
            Certificate::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn dual(&self) -> Option<&[Q]> {
        match self {
            Certificate::Optimal { y, .. } => Some(y),
            _ => None,
        }
    }

    pub fn verify(&self, p: &LpProblem) -> bool {
        if p.validate().is_err() {
            return false;
        }
        match self {
            Certificate::Optimal { x, y, value } => {
                x.len() == p.vars.len()
                    && y.len() == p.constraints.len()
                    && p.is_feasible(x)
                    && p.is_dual_feasible(y)
                    && &dot(&p.objective, x) == value
                    && &p.dual_objective(y) == value
            }
            Certificate::Infeasible { y } => {
                y.len() == p.constraints.len()
                    && p.dual_signs_ok(y)
                    && p.transpose_apply(y)
                        .iter()
                        .zip(&p.vars)
                        .all(|(a, k)| match k {
                            VarKind::NonNeg => !a.is_positive(),
                            VarKind::Free => a.is_zero(),
                        })
                    && p.dual_objective(y).is_positive()
            }
            Certificate::Unbounded { x, ray } => {
                x.len() == p.vars.len()
                    && ray.len() == p.vars.len()
                    && p.is_feasible(x)
                    && dot(&p.objective, ray).is_negative()
                    && ray
                        .iter()
                        .zip(&p.vars)
                        .all(|(r, k)| *k == VarKind::Free || !r.is_negative())
                    && p.constraints.iter().all(|c| {
                        let a = row_dot(&c.coeffs, ray);
                        match c.relation {
                            Relation::Le => !a.is_positive(),
                            Relation::Ge => !a.is_negative(),
                            Relation::Eq => a.is_zero(),
                        }
                    })
            }
        }
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn row_dot(row: &[(usize, Q)], x: &[Q]) -> Q {
    row.iter()
        .filter(|(j, _)| !x[*j].is_zero())
        .map(|(j, a)| a * &x[*j])
        .sum()
}

impl LpProblem {
    pub fn new(vars: Vec<VarKind>) -> LpProblem {
        let n = vars.len();
        LpProblem {
            vars,
            objective: vec![Q::zero(); n],
            constraints: Vec::new(),
        }
    }

    pub fn add_var(&mut self, kind: VarKind, cost: Q) -> usize {
        self.vars.push(kind);
        self.objective.push(cost);
        self.vars.len() - 1
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Q)>, relation: Relation, rhs: Q) {
        let coeffs = coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    fn validate(&self) -> Result<()> {
        if self.objective.len() != self.vars.len() {
            return Err(Error::MalformedProblem(format!(
                "{} objective coefficients for {} variables",
                self.objective.len(),
                self.vars.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if let Some((j, _)) = c.coeffs.iter().find(|(j, _)| *j >= self.vars.len()) {
                return Err(Error::MalformedProblem(format!(
                    "constraint {i} uses variable {j}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_feasible(&self, x: &[Q]) -> bool {
        x.iter()
            .zip(&self.vars)
            .all(|(v, k)| *k == VarKind::Free || !v.is_negative())
            && self.constraints.iter().all(|c| {
                let a = row_dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => a <= c.rhs,
                    Relation::Ge => a >= c.rhs,
                    Relation::Eq => a == c.rhs,
                }
            })
    }

    fn dual_signs_ok(&self, y: &[Q]) -> bool {
        self.constraints
            .iter()
            .zip(y)
            .all(|(c, y)| match c.relation {
                Relation::Le => !y.is_positive(),
                Relation::Ge => !y.is_negative(),
                Relation::Eq => true,
            })
    }

    fn transpose_apply(&self, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.vars.len()];
        for (c, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &c.coeffs {
                out[*j] += a * yi;
            }
        }
        out
    }

    pub fn is_dual_feasible(&self, y: &[Q]) -> bool {
        self.dual_signs_ok(y)
            && self
                .transpose_apply(y)
                .iter()
                .zip(&self.objective)
                .zip(&self.vars)
                .all(|((a, c), k)| match k {
                    VarKind::NonNeg => a <= c,
                    VarKind::Free => a == c,
                })
    }

    pub fn dual_objective(&self, y: &[Q]) -> Q {
        self.constraints
            .iter()
            .zip(y)
            .map(|(c, y)| &c.rhs * y)
            .sum()
    }

    pub fn objective_at(&self, x: &[Q]) -> Q {
        dot(&self.objective, x)
    }
}

struct Tableau {
    /// `m` constraint rows followed by the reduced-cost row; the last column
    /// is the right-hand side (minus the objective value in the cost row).
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Columns `artificial..` are artificial variables.
    artificial: usize,
}

impl Tableau {
    fn m(&self) -> usize {
        self.basis.len()
    }

    fn rhs(&self) -> usize {
        self.t[0].len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        let nz: Vec<usize> = (0..self.t[r].len())
            .filter(|&j| !self.t[r][j].is_zero())
            .collect();
        for &j in &nz {
            let x = &self.t[r][j] * &inv;
            self.t[r][j] = x;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let x = &row[j] - &f * &prow[j];
                row[j] = x;
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule on columns `< limit`. Returns the unbounded column
    /// if the objective is unbounded below.
    fn optimize(&mut self, limit: usize) -> Option<usize> {
        let m = self.m();
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..limit).find(|&j| self.t[m][j].is_negative()) else {
                return None;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..m {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.t[i][rhs] / &self.t[i][c];
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    fn set_costs(&mut self, costs: &[Q]) {
        let m = self.m();
        let width = self.t[0].len();
        let mut row: Vec<Q> = (0..width)
            .map(|j| costs.get(j).cloned().unwrap_or_else(Q::zero))
            .collect();
        for i in 0..m {
            let cb = costs.get(self.basis[i]).cloned().unwrap_or_else(Q::zero);
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.t[i][j].is_zero() {
                    let x = &row[j] - &cb * &self.t[i][j];
                    row[j] = x;
                }
            }
        }
        self.t[m] = row;
    }

    /// `y = c_B B⁻¹`, read off the artificial columns: their reduced cost
    /// is `c_art − y`.
    fn duals(&self, art_cost: &Q) -> Vec<Q> {
        let m = self.m();
        (0..m)
            .map(|i| art_cost - &self.t[m][self.artificial + i])
            .collect()
    }

    fn values(&self, n: usize) -> Vec<Q> {
        let rhs = self.rhs();
        let mut x = vec![Q::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.t[i][rhs].clone();
            }
        }
        x
    }
}

/// Solves the problem exactly. The returned certificate always verifies.
pub fn solve(p: &LpProblem) -> Result<Certificate> {
    p.validate()?;
    let m = p.constraints.len();
    // Standard form columns: each variable (free ones split in two), then
    // one slack per inequality.
    let mut col_of = Vec::with_capacity(p.vars.len());
    let mut n = 0;
    for k in &p.vars {
        col_of.push(n);
        n += if *k == VarKind::Free { 2 } else { 1 };
    }
    let mut slack_of = vec![None; m];
    for (i, c) in p.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            slack_of[i] = Some(n);
            n += 1;
        }
    }
    let width = n + m + 1;
    let mut t = vec![vec![Q::zero(); width]; m + 1];
    let mut sign = vec![Q::one(); m];
    for (i, c) in p.constraints.iter().enumerate() {
        let row = &mut t[i];
        for (j, a) in &c.coeffs {
            row[col_of[*j]] += a;
            if p.vars[*j] == VarKind::Free {
                row[col_of[*j] + 1] -= a;
            }
        }
        match (c.relation, slack_of[i]) {
            (Relation::Le, Some(s)) => row[s] = Q::one(),
            (Relation::Ge, Some(s)) => row[s] = -Q::one(),
            _ => {}
        }
        row[width - 1] = c.rhs.clone();
        if c.rhs.is_negative() {
            sign[i] = -Q::one();
            for x in row.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        row[n + i] = Q::one();
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        artificial: n,
    };

    let phase1: Vec<Q> = (0..n + m)
        .map(|j| if j >= n { Q::one() } else { Q::zero() })
        .collect();
    tab.set_costs(&phase1);
    tab.optimize(n + m);
    if !tab.t[m][width - 1].is_zero() {
        let y = tab
            .duals(&Q::one())
            .into_iter()
            .zip(&sign)
            .map(|(y, s)| y * s)
            .collect();
        return Ok(Certificate::Infeasible { y });
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut costs = vec![Q::zero(); n];
    for (j, k) in p.vars.iter().enumerate() {
        costs[col_of[j]] = p.objective[j].clone();
        if *k == VarKind::Free {
            costs[col_of[j] + 1] = -p.objective[j].clone();
        }
    }
    tab.set_costs(&costs);
    let unbounded = tab.optimize(n);
    let std_x = tab.values(n);
    let x = collapse(p, &col_of, &std_x);
    if let Some(c) = unbounded {
        let mut d = vec![Q::zero(); n];
        d[c] = Q::one();
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                d[b] = -tab.t[i][c].clone();
            }
        }
        let ray = collapse(p, &col_of, &d);
        return Ok(Certificate::Unbounded { x, ray });
    }
    let y = tab
        .duals(&Q::zero())
        .into_iter()
        .zip(&sign)
        .map(|(y, s)| y * s)
        .collect();
    let value = p.objective_at(&x);
    Ok(Certificate::Optimal { x, y, value })
}

fn collapse(p: &LpProblem, col_of: &[usize], std: &[Q]) -> Vec<Q> {
    p.vars
        .iter()
        .enumerate()
        .map(|(j, k)| match k {
            VarKind::NonNeg => std[col_of[j]].clone(),
            VarKind::Free => &std[col_of[j]] - &std[col_of[j] + 1],
        })
        .collect()
}

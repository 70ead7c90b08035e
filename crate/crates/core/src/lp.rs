//! Dense two-phase primal simplex.
//!
//! Problems are stated as *maximize* `c·x` subject to rows `a·x {≤,=,≥} b`
//! and per-variable bounds `lower ≤ x ≤ upper` (either side may be
//! infinite). Internally every variable is shifted/split onto `[0, ∞)`,
//! finite upper bounds become extra `≤` rows, and the resulting standard
//! form is solved on a dense tableau.
//!
//! Entering variables are chosen by largest reduced cost until the solver
//! stalls on degenerate pivots, after which Bland's rule (lowest index for
//! both entering and leaving choices) takes over for the rest of the phase.

use std::fmt::{self, Write as _};

/// Relation of a constraint row to its right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bound {
    pub lower: f64,
    pub upper: f64,
}

impl Bound {
    pub const NONNEG: Bound = Bound {
        lower: 0.0,
        upper: f64::INFINITY,
    };
    pub const FREE: Bound = Bound {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
    };

    pub fn new(lower: f64, upper: f64) -> Self {
        Bound { lower, upper }
    }
}

impl Default for Bound {
    fn default() -> Self {
        Bound::NONNEG
    }
}

/// A linear program in maximization form.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
    /// Optional variable names used by [`LpProblem::listing`].
    pub names: Vec<String>,
}

impl LpProblem {
    /// `n_vars` variables, zero objective, default bounds `[0, ∞)`.
    pub fn new(n_vars: usize) -> Self {
        LpProblem {
            objective: vec![0.0; n_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::NONNEG; n_vars],
            names: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_objective(mut self, objective: Vec<f64>) -> Self {
        assert_eq!(objective.len(), self.n_vars());
        self.objective = objective;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.n_vars(), "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn constrain(mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.add_constraint(coeffs, relation, rhs);
        self
    }

    pub fn set_bound(&mut self, var: usize, lower: f64, upper: f64) {
        self.bounds[var] = Bound::new(lower, upper);
    }

    fn name(&self, j: usize) -> String {
        self.names
            .get(j)
            .cloned()
            .unwrap_or_else(|| format!("x{}", j + 1))
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0_f64;
        for row in &self.constraints {
            let lhs: f64 = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let viol = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        for (b, &v) in self.bounds.iter().zip(x) {
            worst = worst.max(b.lower - v).max(v - b.upper);
        }
        worst
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Plain-text listing in an LP-file-like layout.
    pub fn listing(&self) -> String {
        let mut out = String::from("Maximize\n obj:");
        write_linear(&mut out, &self.objective, |j| self.name(j));
        out.push_str("\nSubject To\n");
        for (i, row) in self.constraints.iter().enumerate() {
            let _ = write!(out, " c{}:", i + 1);
            write_linear(&mut out, &row.coeffs, |j| self.name(j));
            let _ = writeln!(out, " {} {}", row.relation, row.rhs);
        }
        out.push_str("Bounds\n");
        for (j, b) in self.bounds.iter().enumerate() {
            let _ = writeln!(out, " {} <= {} <= {}", b.lower, self.name(j), b.upper);
        }
        out.push_str("End\n");
        out
    }
}

fn write_linear(out: &mut String, coeffs: &[f64], name: impl Fn(usize) -> String) {
    let mut any = false;
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let sign = if a < 0.0 { '-' } else { '+' };
        let _ = write!(out, " {} {} {}", sign, a.abs(), name(j));
        any = true;
    }
    if !any {
        out.push_str(" 0");
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point; empty unless `status == Optimal`.
    pub x: Vec<f64>,
    /// Objective value; NaN unless `status == Optimal`.
    pub objective_value: f64,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// The solver gave up before reaching a verdict.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("simplex stopped after {iterations} pivots without a verdict ({reason})")]
pub struct NumericalFailure {
    pub iterations: usize,
    pub reason: &'static str,
    /// Tableau snapshot at the point of failure.
    pub dump: String,
}

/// Tolerances and limits for [`Simplex`].
#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    /// Smallest magnitude accepted as a pivot element.
    pub pivot_tol: f64,
    /// Reduced-cost threshold for optimality.
    pub cost_tol: f64,
    /// Phase-1 infeasibility threshold.
    pub feas_tol: f64,
    /// Multiplier `k` in the iteration cap `k · (n_vars + n_constraints)`.
    pub iteration_factor: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub stall_limit: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            pivot_tol: 1e-9,
            cost_tol: 1e-9,
            feas_tol: 1e-7,
            iteration_factor: 50,
            stall_limit: 8,
        }
    }
}

/// Solve with default options.
pub fn lp_solve(prob: &LpProblem) -> Result<LpSolution, NumericalFailure> {
    Simplex::new(SimplexOptions::default()).solve(prob)
}

/// Reusable solver; holds only per-solve scratch state.
#[derive(Debug)]
pub struct Simplex {
    opts: SimplexOptions,
}

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy, Debug)]
enum VarMap {
    /// x = offset + col
    Shift { col: usize, offset: f64 },
    /// x = offset - col
    Mirror { col: usize, offset: f64 },
    /// x = pos - neg
    Split { pos: usize, neg: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Tableau {
    /// rows × (n_cols + 1); the last column is the rhs.
    a: Vec<Vec<f64>>,
    /// Objective row (reduced costs, maximize convention: positive = improving).
    cost: Vec<f64>,
    cost_rhs: f64,
    basis: Vec<usize>,
    n_cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.a[i][self.n_cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= piv;
        }
        self.a[r][c] = 1.0;
        let prow = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for (v, p) in self.cost.iter_mut().zip(&prow) {
                *v -= f * p;
            }
            self.cost_rhs -= f * prow[self.n_cols];
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "basis: {:?}", self.basis);
        let _ = write!(out, "cost:");
        for v in &self.cost {
            let _ = write!(out, " {v:.6e}");
        }
        let _ = writeln!(out, " | {:.6e}", self.cost_rhs);
        for row in &self.a {
            for v in row {
                let _ = write!(out, " {v:.6e}");
            }
            out.push('\n');
        }
        out
    }
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

impl Simplex {
    pub fn new(opts: SimplexOptions) -> Self {
        Simplex { opts }
    }

    pub fn solve(&mut self, prob: &LpProblem) -> Result<LpSolution, NumericalFailure> {
        let n = prob.n_vars();
        assert_eq!(prob.bounds.len(), n, "bounds width");

        // Trivially infeasible bounds.
        if prob.bounds.iter().any(|b| b.lower > b.upper + self.opts.feas_tol) {
            return Ok(infeasible(0));
        }

        // Column mapping.
        let mut maps = Vec::with_capacity(n);
        let mut n_struct = 0usize;
        let mut upper_rows: Vec<(usize, f64)> = Vec::new();
        for b in &prob.bounds {
            let m = match (b.lower.is_finite(), b.upper.is_finite()) {
                (true, _) => {
                    let col = n_struct;
                    n_struct += 1;
                    if b.upper.is_finite() {
                        upper_rows.push((col, b.upper - b.lower));
                    }
                    VarMap::Shift {
                        col,
                        offset: b.lower,
                    }
                }
                (false, true) => {
                    let col = n_struct;
                    n_struct += 1;
                    VarMap::Mirror {
                        col,
                        offset: b.upper,
                    }
                }
                (false, false) => {
                    let pos = n_struct;
                    n_struct += 2;
                    VarMap::Split { pos, neg: pos + 1 }
                }
            };
            maps.push(m);
        }

        // Standard-form rows over structural columns.
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
        for c in &prob.constraints {
            assert_eq!(c.coeffs.len(), n, "constraint width");
            let mut coeffs = vec![0.0; n_struct];
            let mut rhs = c.rhs;
            for (j, &aj) in c.coeffs.iter().enumerate() {
                if aj == 0.0 {
                    continue;
                }
                match maps[j] {
                    VarMap::Shift { col, offset } => {
                        coeffs[col] += aj;
                        rhs -= aj * offset;
                    }
                    VarMap::Mirror { col, offset } => {
                        coeffs[col] -= aj;
                        rhs -= aj * offset;
                    }
                    VarMap::Split { pos, neg } => {
                        coeffs[pos] += aj;
                        coeffs[neg] -= aj;
                    }
                }
            }
            rows.push((coeffs, c.relation, rhs));
        }
        for &(col, ub) in &upper_rows {
            let mut coeffs = vec![0.0; n_struct];
            coeffs[col] = 1.0;
            rows.push((coeffs, Relation::Le, ub));
        }
        // Non-negative right-hand sides.
        for (coeffs, rel, rhs) in rows.iter_mut() {
            if *rhs < 0.0 {
                for v in coeffs.iter_mut() {
                    *v = -*v;
                }
                *rhs = -*rhs;
                *rel = match *rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }

        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_slack = n_struct;
        let first_artificial = n_struct + n_slack;
        let n_cols = first_artificial + n_art;

        let mut a = vec![vec![0.0; n_cols + 1]; m];
        let mut basis = vec![0usize; m];
        let mut next_slack = first_slack;
        let mut next_art = first_artificial;
        for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            a[i][..n_struct].copy_from_slice(coeffs);
            a[i][n_cols] = *rhs;
            match rel {
                Relation::Le => {
                    a[i][next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    a[i][next_slack] = -1.0;
                    next_slack += 1;
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }

        let mut tab = Tableau {
            a,
            cost: vec![0.0; n_cols],
            cost_rhs: 0.0,
            basis,
            n_cols,
            first_artificial,
        };
        let cap = self.opts.iteration_factor * (n + prob.constraints.len()).max(1);
        let mut iterations = 0usize;

        // Phase 1: maximize -Σ artificials. In canonical form the cost row
        // holds Σ of the rows that carry an artificial.
        if n_art > 0 {
            for i in 0..m {
                if tab.basis[i] >= first_artificial {
                    for j in 0..first_artificial {
                        tab.cost[j] += tab.a[i][j];
                    }
                    tab.cost_rhs += tab.a[i][n_cols];
                }
            }
            match self.run_phase(&mut tab, Phase::One, cap, &mut iterations)? {
                PhaseOutcome::Optimal => {}
                PhaseOutcome::Unbounded => {
                    return Err(NumericalFailure {
                        iterations,
                        reason: "phase 1 reported an unbounded ray",
                        dump: tab.dump(),
                    })
                }
            }
            // cost_rhs tracks the negated phase objective, i.e. Σ artificials.
            let residual = tab.cost_rhs;
            if residual > self.opts.feas_tol * (1.0 + max_abs_rhs(&rows)) {
                return Ok(infeasible(iterations));
            }
            self.evict_artificials(&mut tab);
        }

        // Phase 2.
        let mut struct_cost = vec![0.0; n_struct];
        let mut const_obj = 0.0;
        for (j, &cj) in prob.objective.iter().enumerate() {
            match maps[j] {
                VarMap::Shift { col, offset } => {
                    struct_cost[col] += cj;
                    const_obj += cj * offset;
                }
                VarMap::Mirror { col, offset } => {
                    struct_cost[col] -= cj;
                    const_obj += cj * offset;
                }
                VarMap::Split { pos, neg } => {
                    struct_cost[pos] += cj;
                    struct_cost[neg] -= cj;
                }
            }
        }
        tab.cost = vec![0.0; n_cols];
        tab.cost[..n_struct].copy_from_slice(&struct_cost);
        tab.cost_rhs = 0.0;
        for i in 0..tab.a.len() {
            let b = tab.basis[i];
            let cb = tab.cost[b];
            if cb != 0.0 {
                for j in 0..n_cols {
                    tab.cost[j] -= cb * tab.a[i][j];
                }
                tab.cost_rhs -= cb * tab.a[i][n_cols];
            }
        }
        match self.run_phase(&mut tab, Phase::Two, cap, &mut iterations)? {
            PhaseOutcome::Unbounded => Ok(LpSolution {
                status: LpStatus::Unbounded,
                x: Vec::new(),
                objective_value: f64::NAN,
                iterations,
            }),
            PhaseOutcome::Optimal => {
                let mut col_val = vec![0.0; n_cols];
                for (i, &b) in tab.basis.iter().enumerate() {
                    col_val[b] = tab.rhs(i);
                }
                let x: Vec<f64> = maps
                    .iter()
                    .map(|m| match *m {
                        VarMap::Shift { col, offset } => offset + col_val[col],
                        VarMap::Mirror { col, offset } => offset - col_val[col],
                        VarMap::Split { pos, neg } => col_val[pos] - col_val[neg],
                    })
                    .collect();
                let objective_value = -tab.cost_rhs + const_obj;
                Ok(LpSolution {
                    status: LpStatus::Optimal,
                    x,
                    objective_value,
                    iterations,
                })
            }
        }
    }

    fn run_phase(
        &self,
        tab: &mut Tableau,
        phase: Phase,
        cap: usize,
        iterations: &mut usize,
    ) -> Result<PhaseOutcome, NumericalFailure> {
        let allowed = match phase {
            Phase::One => tab.n_cols,
            Phase::Two => tab.first_artificial,
        };
        let mut bland = false;
        let mut stalled = 0usize;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| tab.cost[j] > self.opts.cost_tol)
            } else {
                let mut best = None;
                let mut best_val = self.opts.cost_tol;
                for j in 0..allowed {
                    if tab.cost[j] > best_val {
                        best_val = tab.cost[j];
                        best = Some(j);
                    }
                }
                best
            };
            let Some(c) = entering else {
                return Ok(PhaseOutcome::Optimal);
            };

            // Ratio test; ties go to the lowest basic index.
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..tab.a.len() {
                let aic = tab.a[i][c];
                if aic > self.opts.pivot_tol {
                    let ratio = tab.rhs(i).max(0.0) / aic;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            let tie = (ratio - best_ratio).abs() <= 1e-12 * (1.0 + best_ratio);
                            ratio < best_ratio && !tie || tie && tab.basis[i] < tab.basis[l]
                        }
                    };
                    if better {
                        best_ratio = ratio;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else {
                return Ok(PhaseOutcome::Unbounded);
            };

            if *iterations >= cap {
                return Err(NumericalFailure {
                    iterations: *iterations,
                    reason: "iteration cap reached",
                    dump: tab.dump(),
                });
            }
            *iterations += 1;
            if best_ratio <= 1e-12 {
                stalled += 1;
                if stalled >= self.opts.stall_limit {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
            tab.pivot(r, c);
            if !tab.cost_rhs.is_finite() {
                return Err(NumericalFailure {
                    iterations: *iterations,
                    reason: "non-finite objective after pivot",
                    dump: tab.dump(),
                });
            }
        }
    }

    /// Pivot zero-valued artificials out of the basis; drop redundant rows.
    fn evict_artificials(&self, tab: &mut Tableau) {
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= tab.first_artificial {
                let col = (0..tab.first_artificial)
                    .filter(|&j| tab.a[i][j].abs() > self.opts.pivot_tol)
                    .max_by(|&x, &y| tab.a[i][x].abs().total_cmp(&tab.a[i][y].abs()));
                match col {
                    Some(c) => tab.pivot(i, c),
                    None => {
                        tab.a.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

fn max_abs_rhs(rows: &[(Vec<f64>, Relation, f64)]) -> f64 {
    rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max)
}

fn infeasible(iterations: usize) -> LpSolution {
    LpSolution {
        status: LpStatus::Infeasible,
        x: Vec::new(),
        objective_value: f64::NAN,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn simple_box() {
        let p = LpProblem::new(2)
            .with_objective(vec![1.0, 1.0])
            .constrain(vec![1.0, 1.0], Relation::Le, 1.0);
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_abs_diff_eq!(s.objective_value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let p = LpProblem::new(1)
            .with_objective(vec![1.0])
            .constrain(vec![1.0], Relation::Ge, 2.0)
            .constrain(vec![1.0], Relation::Le, 1.0);
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn open_ray_is_unbounded() {
        let p = LpProblem::new(1)
            .with_objective(vec![1.0])
            .constrain(vec![1.0], Relation::Ge, 0.0);
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // max x - y, x + y = 4, x - y <= 2, y free, x in [0, 10]
        let mut p = LpProblem::new(2)
            .with_objective(vec![1.0, -1.0])
            .constrain(vec![1.0, 1.0], Relation::Eq, 4.0)
            .constrain(vec![1.0, -1.0], Relation::Le, 2.0);
        p.set_bound(0, 0.0, 10.0);
        p.set_bound(1, f64::NEG_INFINITY, f64::INFINITY);
        let s = lp_solve(&p).unwrap();
        assert_abs_diff_eq!(s.objective_value, 2.0, epsilon = 1e-9);
        assert!(p.max_violation(&s.x) < 1e-9);
    }

    #[test]
    fn upper_only_bound_mirrors() {
        // max -x with x <= -3 and no lower bound: unbounded below, so optimum
        // of -x is +inf; flip to min x → max -x is unbounded.
        let mut p = LpProblem::new(1).with_objective(vec![-1.0]);
        p.set_bound(0, f64::NEG_INFINITY, -3.0);
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);

        let mut q = LpProblem::new(1).with_objective(vec![1.0]);
        q.set_bound(0, f64::NEG_INFINITY, -3.0);
        let s = lp_solve(&q).unwrap();
        assert_abs_diff_eq!(s.x[0], -3.0, epsilon = 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let p = LpProblem::new(2)
            .with_objective(vec![1.0, 2.0])
            .constrain(vec![1.0, 1.0], Relation::Eq, 3.0)
            .constrain(vec![2.0, 2.0], Relation::Eq, 6.0)
            .constrain(vec![0.0, 1.0], Relation::Le, 2.0);
        let s = lp_solve(&p).unwrap();
        assert_abs_diff_eq!(s.objective_value, 5.0, epsilon = 1e-9);
    }

    #[test]
    fn negative_rhs_ge_row() {
        // max -x1 - x2, x1 + x2 >= -1 (slack at 0), x >= 0 → 0
        let p = LpProblem::new(2)
            .with_objective(vec![-1.0, -1.0])
            .constrain(vec![1.0, 1.0], Relation::Ge, -1.0);
        let s = lp_solve(&p).unwrap();
        assert_abs_diff_eq!(s.objective_value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn iteration_cap_is_a_numerical_failure() {
        let p = LpProblem::new(3)
            .with_objective(vec![1.0, 1.0, 1.0])
            .constrain(vec![1.0, 2.0, 3.0], Relation::Le, 6.0)
            .constrain(vec![3.0, 2.0, 1.0], Relation::Le, 6.0);
        let mut s = Simplex::new(SimplexOptions {
            iteration_factor: 0,
            ..Default::default()
        });
        let err = s.solve(&p).unwrap_err();
        assert_eq!(err.reason, "iteration cap reached");
        assert!(err.dump.contains("basis"));
    }

    #[test]
    fn listing_mentions_every_row() {
        let mut p = LpProblem::new(2)
            .with_objective(vec![3.0, -1.0])
            .constrain(vec![1.0, 0.0], Relation::Le, 4.0)
            .constrain(vec![0.0, 1.0], Relation::Ge, 1.0);
        p.names = vec!["v1".into(), "v2".into()];
        let l = p.listing();
        assert!(l.contains("obj: + 3 v1 - 1 v2"));
        assert!(l.contains("c2: + 1 v2 >= 1"));
    }
}

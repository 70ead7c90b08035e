//! Brute-force LP reference: enumerate every basic solution of the problem
//! boxed into `[-M, M]^n` and keep the best feasible one. A box-dependent
//! optimum means the original problem is unbounded.

use lotflow_core::lp::{LpProblem, LpStatus, Relation};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reference {
    pub status: LpStatus,
    pub objective: f64,
}

/// A half-space or hyperplane `a·x (rel) b`.
#[derive(Clone, Debug)]
struct Row {
    a: Vec<f64>,
    rel: Relation,
    b: f64,
}

fn rows(prob: &LpProblem, m: f64) -> Vec<Row> {
    let n = prob.n_vars();
    let mut out: Vec<Row> = prob
        .constraints
        .iter()
        .map(|c| Row {
            a: c.coeffs.clone(),
            rel: c.relation,
            b: c.rhs,
        })
        .collect();
    for (j, bd) in prob.bounds.iter().enumerate() {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let lo = if bd.lower.is_finite() { bd.lower } else { -m };
        let hi = if bd.upper.is_finite() { bd.upper } else { m };
        out.push(Row { a: e.clone(), rel: Relation::Ge, b: lo });
        out.push(Row { a: e, rel: Relation::Le, b: hi });
    }
    out
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn satisfies(rows: &[Row], x: &[f64]) -> bool {
    rows.iter().all(|r| {
        let lhs: f64 = r.a.iter().zip(x).map(|(a, v)| a * v).sum();
        let tol = 1e-7 * (1.0 + r.b.abs());
        match r.rel {
            Relation::Le => lhs <= r.b + tol,
            Relation::Ge => lhs >= r.b - tol,
            Relation::Eq => (lhs - r.b).abs() <= tol,
        }
    })
}

fn combinations(pool: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..pool {
        cur.push(i);
        combinations(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

fn best_vertex(prob: &LpProblem, m: f64) -> Option<f64> {
    let n = prob.n_vars();
    let all = rows(prob, m);
    let eq: Vec<usize> = (0..all.len()).filter(|&i| all[i].rel == Relation::Eq).collect();
    let ineq: Vec<usize> = (0..all.len()).filter(|&i| all[i].rel != Relation::Eq).collect();
    if eq.len() > n {
        // Only possible with redundant equalities; the generator avoids it.
        return None;
    }
    let mut picks = Vec::new();
    combinations(ineq.len(), n - eq.len(), 0, &mut Vec::new(), &mut picks);
    let mut best: Option<f64> = None;
    for pick in picks {
        let active: Vec<&Row> = eq.iter().chain(pick.iter().map(|&i| &ineq[i])).map(|&i| &all[i]).collect();
        let a = active.iter().map(|r| r.a.clone()).collect();
        let b = active.iter().map(|r| r.b).collect();
        if let Some(x) = solve_square(a, b) {
            if satisfies(&all, &x) {
                let z = prob.objective_at(&x);
                best = Some(best.map_or(z, |v: f64| v.max(z)));
            }
        }
    }
    best
}

/// Optimum by vertex enumeration. Vertex coordinates of the generated
/// problems stay far below the box, so only unbounded directions reach it.
pub fn reference(prob: &LpProblem) -> Reference {
    const M: f64 = 1e6;
    match (best_vertex(prob, M), best_vertex(prob, 2.0 * M)) {
        (None, _) | (_, None) => Reference {
            status: LpStatus::Infeasible,
            objective: f64::NAN,
        },
        (Some(a), Some(b)) if (b - a).abs() > 1e-6 * (1.0 + a.abs()) => Reference {
            status: LpStatus::Unbounded,
            objective: f64::NAN,
        },
        (Some(a), _) => Reference {
            status: LpStatus::Optimal,
            objective: a,
        },
    }
}

/// Small integer LP with up to four variables and four rows.
pub fn random_lp<R: Rng>(rng: &mut R) -> LpProblem {
    let n = rng.random_range(1..=4usize);
    let m = rng.random_range(1..=4usize);
    let objective = (0..n).map(|_| rng.random_range(-5..=5) as f64).collect();
    let mut prob = LpProblem::new(n).with_objective(objective);
    let mut n_eq = 0;
    for _ in 0..m {
        let mut coeffs: Vec<f64> = vec![0.0; n];
        while coeffs.iter().all(|&a| a == 0.0) {
            coeffs = (0..n).map(|_| rng.random_range(-3..=3) as f64).collect();
        }
        let rel = match rng.random_range(0..10) {
            0..=4 => Relation::Le,
            5..=7 => Relation::Ge,
            _ if n_eq + 1 < n => {
                n_eq += 1;
                Relation::Eq
            }
            _ => Relation::Le,
        };
        let rhs = rng.random_range(-4..=10) as f64;
        prob.add_constraint(coeffs, rel, rhs);
    }
    for j in 0..n {
        match rng.random_range(0..8) {
            0 => prob.set_bound(j, f64::NEG_INFINITY, f64::INFINITY),
            1 => prob.set_bound(j, 0.0, rng.random_range(1..=6) as f64),
            2 => prob.set_bound(j, -(rng.random_range(1..=4) as f64), f64::INFINITY),
            _ => {}
        }
    }
    prob
}

/// Compare the solver with the reference; `Err` describes the mismatch.
pub fn check(prob: &LpProblem) -> Result<(), String> {
    let want = reference(prob);
    let got = lotflow_core::lp::lp_solve(prob).map_err(|e| format!("solver failure: {e}"))?;
    if got.status != want.status {
        return Err(format!("status {:?}, reference {:?}\n{}", got.status, want.status, prob.listing()));
    }
    if want.status == LpStatus::Optimal {
        let scale = 1.0 + want.objective.abs();
        if (got.objective_value - want.objective).abs() > 1e-6 * scale {
            return Err(format!(
                "objective {} vs reference {}\n{}",
                got.objective_value,
                want.objective,
                prob.listing()
            ));
        }
        if prob.max_violation(&got.x) > 1e-6 * scale {
            return Err(format!("solver point violates rows by {}", prob.max_violation(&got.x)));
        }
    }
    Ok(())
}

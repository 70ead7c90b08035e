//! Exact solution by enumerating the binary setup and demand-regime vectors.
//!
//! For fixed setups `x` and regimes `δ` (whether effective demand is the
//! shrunk demand or zero) the model is an LP in `(y, v, w, Ed, I, B)`. All
//! admissible combinations are solved in parallel and the best kept; equal
//! optima go to the lexicographically smallest `(x, δ)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frh::{solve_frh, Solution};
use crate::lp::{LpProblem, LpStatus, Relation, Simplex, SimplexOptions};
use crate::model::{evaluate_plan, Instance, Plan};

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest horizon accepted (work grows like `4^T`).
    pub max_t: usize,
    pub simplex: SimplexOptions,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_t: 8,
            simplex: SimplexOptions::default(),
        }
    }
}

/// Result of the enumeration together with the maximizing combination.
#[derive(Clone, Debug)]
pub struct ExactSearch {
    pub solution: Solution,
    /// `(x, δ)` of the optimum; `None` when every combination is infeasible.
    pub argmax: Option<(Vec<bool>, Vec<bool>)>,
    pub combinations: usize,
}

const Y: usize = 0;
const V: usize = 1;
const W: usize = 2;
const ED: usize = 3;
const INV: usize = 4;
const CAP: usize = 5;
const WIDTH: usize = 6;

fn var(t: usize, k: usize) -> usize {
    WIDTH * t + k
}

/// The LP of one `(x, δ)` combination (0-based periods). With
/// `zero_inventory_ordering`, inventory entering every launch period is
/// forced to zero.
pub fn combination_lp(inst: &Instance, setups: &[bool], regimes: &[bool], zero_inventory_ordering: bool) -> LpProblem {
    let t_max = inst.horizon;
    let n = WIDTH * t_max;
    let beta = inst.goodwill_loss;
    let b0 = inst.initial_capital();
    let mut lp = LpProblem::new(n);
    lp.names = (0..t_max)
        .flat_map(|t| ["y", "v", "w", "Ed", "I", "B"].map(|s| format!("{s}{}", t + 1)))
        .collect();
    let row = |entries: &[(usize, f64)]| {
        let mut r = vec![0.0; n];
        for &(j, a) in entries {
            r[j] += a;
        }
        r
    };
    for t in 0..t_max {
        let (d, p, c, h) = (inst.demand[t], inst.price[t], inst.unit_cost[t], inst.holding_cost[t]);
        let setup = if setups[t] { inst.setup_cost[t] } else { 0.0 };
        if !setups[t] {
            lp.set_bound(var(t, Y), 0.0, 0.0);
        }
        // Effective demand regime.
        if regimes[t] {
            if t == 0 {
                lp.add_constraint(row(&[(var(t, ED), 1.0)]), Relation::Eq, d);
            } else {
                lp.add_constraint(row(&[(var(t, ED), 1.0), (var(t - 1, W), beta)]), Relation::Eq, d);
                lp.add_constraint(row(&[(var(t - 1, W), beta)]), Relation::Le, d);
            }
        } else {
            lp.set_bound(var(t, ED), 0.0, 0.0);
            if t == 0 {
                // d_1 ≤ β·w_0 = 0
                lp.add_constraint(row(&[]), Relation::Ge, d);
            } else {
                lp.add_constraint(row(&[(var(t - 1, W), beta)]), Relation::Ge, d);
            }
        }
        // v + w = Ed
        lp.add_constraint(
            row(&[(var(t, V), 1.0), (var(t, W), 1.0), (var(t, ED), -1.0)]),
            Relation::Eq,
            0.0,
        );
        // I_t − I_{t−1} − y_t + v_t = 0
        let mut inv = vec![(var(t, INV), 1.0), (var(t, Y), -1.0), (var(t, V), 1.0)];
        if t > 0 {
            inv.push((var(t - 1, INV), -1.0));
        }
        lp.add_constraint(row(&inv), Relation::Eq, 0.0);
        // B_t − B_{t−1} − p v + h I + c y = −s x − repayment
        let mut bal = vec![(var(t, CAP), 1.0), (var(t, V), -p), (var(t, INV), h), (var(t, Y), c)];
        let mut rhs = -setup - inst.repayment_at(t + 1);
        if t > 0 {
            bal.push((var(t - 1, CAP), -1.0));
        } else {
            rhs += b0;
        }
        lp.add_constraint(row(&bal), Relation::Eq, rhs);
        // s x + c y ≤ B_{t−1}
        if t > 0 {
            lp.add_constraint(row(&[(var(t, Y), c), (var(t - 1, CAP), -1.0)]), Relation::Le, -setup);
        } else {
            lp.add_constraint(row(&[(var(t, Y), c)]), Relation::Le, b0 - setup);
        }
        if zero_inventory_ordering && setups[t] && t > 0 {
            lp.set_bound(var(t - 1, INV), 0.0, 0.0);
        }
    }
    lp.objective[var(t_max - 1, CAP)] = 1.0;
    lp
}

/// Regime vectors worth enumerating. `δ_t` can only be zero when
/// `d_t ≤ β·w_{t−1}` is attainable: that needs `β > 0`, `d_t ≤ β·d_{t−1}`
/// (since `w_{t−1} ≤ d_{t−1}`) and positive effective demand in `t − 1`.
pub fn admissible_regimes(inst: &Instance) -> Vec<Vec<bool>> {
    let beta = inst.goodwill_loss;
    let d = &inst.demand;
    let mut out: Vec<Vec<bool>> = vec![vec![true]];
    for t in 1..inst.horizon {
        let mut next = Vec::with_capacity(out.len() * 2);
        for prefix in out {
            let prev = prefix[t - 1];
            let may_vanish = beta > 0.0 && d[t] <= beta * d[t - 1] && (prev || d[t] == 0.0);
            if may_vanish {
                let mut zero = prefix.clone();
                zero.push(false);
                next.push(zero);
            }
            let mut one = prefix;
            one.push(true);
            next.push(one);
        }
        out = next;
    }
    out
}

fn plan_from(inst: &Instance, x: &[f64]) -> Plan {
    Plan {
        production: (0..inst.horizon).map(|t| x[var(t, Y)].max(0.0)).collect(),
        sales: (0..inst.horizon).map(|t| x[var(t, V)].max(0.0)).collect(),
    }
}

/// Solve one combination; `None` when it is infeasible.
pub fn solve_combination(
    inst: &Instance,
    setups: &[bool],
    regimes: &[bool],
    zero_inventory_ordering: bool,
    opts: &SimplexOptions,
) -> Result<Option<(Plan, f64)>> {
    let lp = combination_lp(inst, setups, regimes, zero_inventory_ordering);
    let sol = Simplex::new(*opts).solve(&lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => Some((plan_from(inst, &sol.x), sol.objective_value - inst.initial_capital())),
        LpStatus::Infeasible | LpStatus::Unbounded => None,
    })
}

pub fn exact_search(inst: &Instance, cfg: &OracleConfig) -> Result<ExactSearch> {
    inst.validate()?;
    let t_max = inst.horizon;
    if t_max > cfg.max_t {
        return Err(Error::Guard {
            t: t_max,
            max_t: cfg.max_t,
        });
    }
    let regimes = admissible_regimes(inst);
    let setups: Vec<Vec<bool>> = (0..1usize << t_max)
        .map(|bits| (0..t_max).map(|t| bits >> (t_max - 1 - t) & 1 == 1).collect())
        .collect();
    // Lexicographic order: x first, then δ; `false` sorts before `true`.
    let mut regimes_sorted = regimes;
    regimes_sorted.sort();
    let combos: Vec<(usize, usize)> = (0..setups.len())
        .flat_map(|i| (0..regimes_sorted.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Option<(Plan, f64)>> = combos
        .par_iter()
        .map(|&(i, j)| solve_combination(inst, &setups[i], &regimes_sorted[j], false, &cfg.simplex))
        .collect::<Result<_>>()?;

    let mut best: Option<(usize, f64)> = None;
    for (k, r) in results.iter().enumerate() {
        if let Some((_, value)) = r {
            let improves = match best {
                None => true,
                Some((_, b)) => *value > b + 1e-9 * (1.0 + b.abs()),
            };
            if improves {
                best = Some((k, *value));
            }
        }
    }
    let n_combos = combos.len();
    Ok(match best {
        Some((k, _)) => {
            let (plan, _) = results.into_iter().nth(k).flatten().expect("best index holds a plan");
            let traj = evaluate_plan(inst, &plan)?;
            let (i, j) = combos[k];
            ExactSearch {
                solution: Solution::new(traj, n_combos, Vec::new(), false),
                argmax: Some((setups[i].clone(), regimes_sorted[j].clone())),
                combinations: n_combos,
            }
        }
        None => ExactSearch {
            solution: Solution::new(evaluate_plan(inst, &Plan::idle(t_max))?, n_combos, Vec::new(), true),
            argmax: None,
            combinations: n_combos,
        },
    })
}

/// Optimal plan of the full model; `lp_count` holds the number of combinations solved.
pub fn solve_exact(inst: &Instance, cfg: &OracleConfig) -> Result<Solution> {
    Ok(exact_search(inst, cfg)?.solution)
}

/// Gaps up to this size are treated as zero.
pub const DEVIATION_FLOOR: f64 = 1e-6;

/// `(oracle − heuristic) / |oracle|`, zero when the gap is within
/// [`DEVIATION_FLOOR`] (absolute) or negative.
pub fn relative_deviation(oracle: f64, heuristic: f64) -> f64 {
    let gap = oracle - heuristic;
    if gap <= DEVIATION_FLOOR {
        0.0
    } else {
        gap / oracle.abs().max(f64::MIN_POSITIVE)
    }
}

/// Relative shortfall of the heuristic against the exact optimum.
pub fn deviation(inst: &Instance, cfg: &OracleConfig) -> Result<f64> {
    let exact = solve_exact(inst, cfg)?;
    let heuristic = solve_frh(inst)?;
    Ok(relative_deviation(exact.objective, heuristic.objective))
}

//! Production-round sub-problems.
//!
//! A round spans periods `m..=n`, starts and ends with zero inventory and
//! contains one or more production cycles. With the launch periods fixed,
//! the realized sales `v_m..v_n` are the only decisions: production in a
//! cycle equals the sales it serves, inventory is a suffix sum of sales and
//! capital is affine in `v`. Three LP variants differ in how effective
//! demand is modelled:
//!
//! * Sub1 assumes demand never vanishes (`Ed_t = d_t − β·w_{t−1}` for all `t`).
//! * Sub2 drops the goodwill recursion and bounds `v_t ≤ d_t`.
//! * Sub3 reinstates the recursion with the vanishing pattern inferred from
//!   a Sub2 optimum.

use serde::{Deserialize, Serialize};

use crate::lp::{lp_solve, LpProblem, LpStatus, Relation};
use crate::model::{effective_demand, Instance};
use crate::tol;
use crate::Result;

/// Launch pattern and entry state of one production round (1-based periods).
#[derive(Clone, Debug, PartialEq)]
pub struct RoundSpec {
    pub m: usize,
    pub n: usize,
    /// Launch periods, strictly increasing, first one equal to `m`.
    pub cycle_starts: Vec<usize>,
    /// Capital `B_{m−1}` entering the round.
    pub capital_in: f64,
    /// Lost sales `w_{m−1}` entering the round.
    pub lost_in: f64,
    /// Optional cap `w_n ≤ cap` used by plan adjustments (ignored by Sub2).
    pub lost_cap: Option<f64>,
}

impl RoundSpec {
    pub fn new(m: usize, n: usize, cycle_starts: Vec<usize>, capital_in: f64, lost_in: f64) -> Self {
        debug_assert!(m <= n && cycle_starts.first() == Some(&m));
        debug_assert!(cycle_starts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cycle_starts.last().is_some_and(|&s| s <= n));
        RoundSpec {
            m,
            n,
            cycle_starts,
            capital_in,
            lost_in,
            lost_cap: None,
        }
    }

    pub fn with_lost_cap(mut self, cap: f64) -> Self {
        self.lost_cap = Some(cap);
        self
    }

    pub fn len(&self) -> usize {
        self.n - self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Last period of cycle `i`.
    fn cycle_end(&self, i: usize) -> usize {
        self.cycle_starts
            .get(i + 1)
            .map_or(self.n, |&next| next - 1)
    }

    fn cycle_of(&self, t: usize) -> usize {
        self.cycle_starts.iter().rposition(|&s| s <= t).unwrap_or(0)
    }

    fn col(&self, t: usize) -> usize {
        t - self.m
    }
}

/// Which sub-model produced a round value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubModel {
    Sub1,
    Sub2Sub3,
    None,
}

/// How the three sub-models are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cascade {
    /// Sub1; only if infeasible, Sub2 followed by Sub3.
    Fallback,
    /// Solve Sub1 and Sub2→Sub3 and keep the larger value.
    BestOf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundSolution {
    pub feasible: bool,
    /// Capital increment `B_n − B_{m−1}`.
    pub value: f64,
    /// Realized sales `v_m..v_n`.
    pub sales: Vec<f64>,
    /// Production `y_m..y_n` (cycle totals at launch periods).
    pub production: Vec<f64>,
    pub lost_out: f64,
    pub capital_out: f64,
    pub model: SubModel,
    pub lp_solves: usize,
}

impl RoundSolution {
    fn infeasible(spec: &RoundSpec, lp_solves: usize) -> Self {
        RoundSolution {
            feasible: false,
            value: f64::NEG_INFINITY,
            sales: vec![0.0; spec.len()],
            production: vec![0.0; spec.len()],
            lost_out: 0.0,
            capital_out: spec.capital_in,
            model: SubModel::None,
            lp_solves,
        }
    }
}

/// A round LP and the constant that turns its objective into `B_n − B_{m−1}`.
#[derive(Clone, Debug)]
pub struct RoundLp {
    pub lp: LpProblem,
    pub offset: f64,
}

impl RoundLp {
    pub fn value_at(&self, v: &[f64]) -> f64 {
        self.lp.objective_at(v) + self.offset
    }
}

#[derive(Clone, Debug)]
struct Affine {
    coef: Vec<f64>,
    constant: f64,
}

impl Affine {
    fn constant(k: usize, c: f64) -> Self {
        Affine {
            coef: vec![0.0; k],
            constant: c,
        }
    }
}

enum Variant<'a> {
    Sub1,
    Sub2,
    Sub3(&'a [bool]),
}

fn build(inst: &Instance, spec: &RoundSpec, variant: Variant<'_>) -> RoundLp {
    let k = spec.len();
    let beta = inst.goodwill_loss;
    let mut lp = LpProblem::new(k);
    lp.names = (spec.m..=spec.n).map(|t| format!("v{t}")).collect();

    // Effective demand, affine in v (None where Sub2 leaves it unmodelled).
    let mut ed: Vec<Option<Affine>> = Vec::with_capacity(k);
    ed.push(Some(Affine::constant(
        k,
        effective_demand(inst.demand[spec.m - 1], spec.lost_in, beta),
    )));
    for t in spec.m + 1..=spec.n {
        let prev = match (&variant, ed.last().unwrap()) {
            (Variant::Sub2, _) | (_, None) => {
                ed.push(None);
                continue;
            }
            (_, Some(prev)) => prev,
        };
        // d_t − β (Ed_{t−1} − v_{t−1})
        let mut raw = Affine {
            coef: prev.coef.iter().map(|a| -beta * a).collect(),
            constant: inst.demand[t - 1] - beta * prev.constant,
        };
        raw.coef[spec.col(t - 1)] += beta;
        let vanishes = matches!(variant, Variant::Sub3(delta) if !delta[spec.col(t)]);
        if vanishes {
            lp.add_constraint(raw.coef.clone(), Relation::Le, -tol::STRICT - raw.constant);
            ed.push(Some(Affine::constant(k, 0.0)));
        } else {
            ed.push(Some(raw));
        }
    }

    for t in spec.m..=spec.n {
        let j = spec.col(t);
        match &ed[j] {
            Some(e) => {
                // v_t ≤ Ed_t
                let mut row: Vec<f64> = e.coef.iter().map(|a| -a).collect();
                row[j] += 1.0;
                lp.add_constraint(row, Relation::Le, e.constant);
            }
            None => lp.set_bound(j, 0.0, inst.demand[t - 1]),
        }
    }

    // Capital, chained forward from B_{m−1}.
    let mut cap = Affine::constant(k, spec.capital_in);
    for t in spec.m..=spec.n {
        let i = spec.cycle_of(t);
        let end = spec.cycle_end(i);
        let mut next = cap.clone();
        if spec.cycle_starts[i] == t {
            // s_t + c_t Y_i ≤ B_{t−1}
            let mut row: Vec<f64> = cap.coef.iter().map(|a| -a).collect();
            for col in &mut row[spec.col(t)..=spec.col(end)] {
                *col += inst.unit_cost[t - 1];
            }
            lp.add_constraint(row, Relation::Le, cap.constant - inst.setup_cost[t - 1]);
            for col in &mut next.coef[spec.col(t)..=spec.col(end)] {
                *col -= inst.unit_cost[t - 1];
            }
            next.constant -= inst.setup_cost[t - 1];
        }
        next.coef[spec.col(t)] += inst.price[t - 1];
        // Holding cost on I_t = Σ_{j=t+1}^{end} v_j.
        for col in &mut next.coef[spec.col(t) + 1..=spec.col(end)] {
            *col -= inst.holding_cost[t - 1];
        }
        next.constant -= inst.repayment_at(t);
        // B_t ≥ 0
        lp.add_constraint(
            next.coef.iter().map(|a| -a).collect(),
            Relation::Le,
            next.constant,
        );
        cap = next;
    }

    if let (Some(limit), Some(Some(e))) = (spec.lost_cap, ed.last()) {
        // w_n = Ed_n − v_n ≤ limit
        let mut row = e.coef.clone();
        row[k - 1] -= 1.0;
        lp.add_constraint(row, Relation::Le, limit - e.constant);
    }

    lp.objective = cap.coef;
    RoundLp {
        lp,
        offset: cap.constant - spec.capital_in,
    }
}

/// Sub1: goodwill recursion with demand assumed never to vanish.
pub fn build_psub1(inst: &Instance, spec: &RoundSpec) -> RoundLp {
    build(inst, spec, Variant::Sub1)
}

/// Sub2: recursion dropped, `0 ≤ v_t ≤ d_t` beyond the first period.
pub fn build_psub2(inst: &Instance, spec: &RoundSpec) -> RoundLp {
    build(inst, spec, Variant::Sub2)
}

/// Sub3: recursion with `Ed_t = 0` wherever `delta[t − m]` is false.
pub fn build_psub3(inst: &Instance, spec: &RoundSpec, delta: &[bool]) -> RoundLp {
    assert_eq!(delta.len(), spec.len(), "one flag per round period");
    build(inst, spec, Variant::Sub3(delta))
}

/// Roll lost sales forward under `v`; `δ_t` is false iff `d_t − β·w_{t−1} < 0`.
pub fn infer_deltas(inst: &Instance, spec: &RoundSpec, v: &[f64]) -> Vec<bool> {
    let beta = inst.goodwill_loss;
    let mut w = spec.lost_in;
    (spec.m..=spec.n)
        .map(|t| {
            let raw = inst.demand[t - 1] - beta * w;
            w = raw.max(0.0) - v[spec.col(t)];
            raw >= 0.0
        })
        .collect()
}

/// Production per period: each launch produces what its cycle sells.
pub fn production_from_sales(spec: &RoundSpec, v: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; spec.len()];
    for (i, &s) in spec.cycle_starts.iter().enumerate() {
        let end = spec.cycle_end(i);
        y[spec.col(s)] = v[spec.col(s)..=spec.col(end)].iter().sum();
    }
    y
}

/// Solve one LP; `None` when it is infeasible (or unbounded, which a round LP never is).
fn solve_lp(round: &RoundLp, count: &mut usize) -> Result<Option<(Vec<f64>, f64)>> {
    *count += 1;
    let sol = lp_solve(&round.lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => {
            let v: Vec<f64> = sol.x.iter().map(|&x| x.max(0.0)).collect();
            let value = sol.objective_value + round.offset;
            Some((v, value))
        }
        LpStatus::Infeasible | LpStatus::Unbounded => None,
    })
}

fn finish(inst: &Instance, spec: &RoundSpec, v: Vec<f64>, value: f64, model: SubModel, lp_solves: usize) -> RoundSolution {
    let production = production_from_sales(spec, &v);
    // A cycle that sells nothing is never launched, so its setup is not paid.
    let refund: f64 = spec
        .cycle_starts
        .iter()
        .filter(|&&s| production[spec.col(s)] <= tol::ZERO)
        .map(|&s| inst.setup_cost[s - 1])
        .sum();
    let value = value + refund;
    let mut w = spec.lost_in;
    for t in spec.m..=spec.n {
        w = effective_demand(inst.demand[t - 1], w, inst.goodwill_loss) - v[spec.col(t)];
    }
    RoundSolution {
        feasible: true,
        value,
        capital_out: spec.capital_in + value,
        lost_out: w,
        sales: v,
        production,
        model,
        lp_solves,
    }
}

/// `BB(m, n)` via the sub-model cascade.
///
/// With `β = 0` the three models coincide and only Sub1 is solved.
pub fn solve_round(inst: &Instance, spec: &RoundSpec, cascade: Cascade) -> Result<RoundSolution> {
    let mut count = 0;
    let first = solve_lp(&build_psub1(inst, spec), &mut count)?;
    if inst.goodwill_loss == 0.0 || (first.is_some() && cascade == Cascade::Fallback) {
        return Ok(match first {
            Some((v, value)) => finish(inst, spec, v, value, SubModel::Sub1, count),
            None => RoundSolution::infeasible(spec, count),
        });
    }
    let relaxed = solve_lp(&build_psub2(inst, spec), &mut count)?;
    let third = match relaxed {
        Some((v2, _)) => {
            let delta = infer_deltas(inst, spec, &v2);
            solve_lp(&build_psub3(inst, spec, &delta), &mut count)?
        }
        None => None,
    };
    Ok(match (first, third) {
        (Some((_, b1)), Some((v3, b3))) if b3 > b1 => finish(inst, spec, v3, b3, SubModel::Sub2Sub3, count),
        (Some((v1, b1)), _) => finish(inst, spec, v1, b1, SubModel::Sub1, count),
        (None, Some((v3, b3))) => finish(inst, spec, v3, b3, SubModel::Sub2Sub3, count),
        (None, None) => RoundSolution::infeasible(spec, count),
    })
}

/// Round shapes for a new launch at `start` ending at `n`.
///
/// Without goodwill loss every round is a single cycle. Otherwise the
/// nearest earlier launch (if any) is re-optimized together with the new
/// cycle as a two-cycle round. Entry state is read from the committed
/// trajectory: `capital[i] = B_i`, `lost[i] = w_i` with `lost[0] = 0`.
pub fn enumerate_round_specs(
    inst: &Instance,
    start: usize,
    n: usize,
    prev_cycle: Option<usize>,
    capital: &[f64],
    lost: &[f64],
) -> Vec<RoundSpec> {
    debug_assert!(start <= n);
    let starts = match prev_cycle {
        Some(p) if inst.goodwill_loss > 0.0 && p < start => vec![p, start],
        _ => vec![start],
    };
    let m = starts[0];
    vec![RoundSpec::new(m, n, starts, capital[m - 1], lost[m - 1])]
}

//! Forward recursive heuristic.
//!
//! `B*_n = max(B*_{n−1} with period n idle, max_m B*_{m−1} + BB(m, n))`,
//! where each candidate round is solved as an LP over realized sales. Every
//! stage stores the full plan prefix attaining `B*_n`, so later rounds can
//! re-optimize the nearest earlier cycle together with a new one. After each
//! stage, when goodwill loss is present, three plan adjustments are tried;
//! at the end, production is shifted to cheaper earlier cycles where spare
//! capital allows.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::model::{check_feasibility, simulate, Instance, Plan, Trajectory};
use crate::rounds::{enumerate_round_specs, solve_round, Cascade, RoundSpec};
use crate::tol;
use crate::Result;

/// Capital values closer than this are treated as equal when ranking plans.
const RANK_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrhConfig {
    pub cascade: Cascade,
    /// Adjustment (a) additionally tries dropping the later launch of a
    /// two-cycle round while splitting the first.
    pub launch_shift: bool,
    /// Run the per-stage plan adjustments (only effective with `β > 0`).
    pub adjust: bool,
    /// Run the production-shift post-pass.
    pub postpass: bool,
}

impl Default for FrhConfig {
    fn default() -> Self {
        FrhConfig {
            cascade: Cascade::BestOf,
            launch_shift: true,
            adjust: true,
            postpass: true,
        }
    }
}

impl FrhConfig {
    /// The unmodified procedure: fallback cascade, no launch shift.
    pub fn plain() -> Self {
        FrhConfig {
            cascade: Cascade::Fallback,
            launch_shift: false,
            ..FrhConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjustmentKind {
    /// Split the first cycle of the last round.
    Adj1,
    /// Add a cycle before a lone first launch.
    Adj2,
    /// Delay a launch in period 1.
    Adj3,
    /// Move production to an earlier, cheaper cycle.
    Cor2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adjustment {
    pub kind: AdjustmentKind,
    /// Stage at which it was applied (0 for the post-pass).
    pub stage: usize,
    /// Launch periods of the adjusted plan, or the two cycles for `Cor2`.
    pub periods: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub trajectory: Trajectory,
    pub objective: f64,
    pub lp_count: usize,
    pub adjustments: Vec<Adjustment>,
    /// No feasible plan exists; the trajectory is the null plan.
    pub degenerate: bool,
}

impl Solution {
    pub(crate) fn new(trajectory: Trajectory, lp_count: usize, adjustments: Vec<Adjustment>, degenerate: bool) -> Self {
        Solution {
            objective: trajectory.objective,
            trajectory,
            lp_count,
            adjustments,
            degenerate,
        }
    }

    /// `{"objective", "lp_count", "adjustments", "degenerate"}`.
    pub fn diagnostics(&self) -> serde_json::Value {
        json!({
            "objective": self.objective,
            "lp_count": self.lp_count,
            "adjustments": self.adjustments,
            "degenerate": self.degenerate,
        })
    }
}

/// Outcome of the recursion before the post-pass.
#[derive(Clone, Debug)]
pub struct RecursionState {
    /// `B*_0..=B*_T`.
    pub best_capital: Vec<f64>,
    pub trajectory: Trajectory,
    /// Launch periods of the final plan as committed by the recursion.
    pub launches: Vec<usize>,
    /// `round_values[t−1][n−1]`: capital increment of the round with its
    /// new launch at `t` ending at `n`, when feasible.
    pub round_values: Vec<Vec<Option<f64>>>,
    pub lp_count: usize,
    pub adjustments: Vec<Adjustment>,
    pub degenerate: bool,
}

/// Largest number of round LPs the recursion may solve.
pub fn lp_budget(inst: &Instance) -> usize {
    let t = inst.horizon;
    let rounds = t * (t + 1) / 2;
    if inst.goodwill_loss == 0.0 {
        rounds
    } else {
        9 * rounds
    }
}

#[derive(Clone, Debug)]
struct Prefix {
    traj: Trajectory,
    starts: Vec<usize>,
}

impl Prefix {
    fn new(inst: &Instance, plan: &Plan, starts: Vec<usize>) -> Self {
        Prefix {
            traj: simulate(inst, plan),
            starts,
        }
    }

    fn capital(&self) -> f64 {
        self.traj.final_capital()
    }

    fn lost(&self) -> f64 {
        self.traj.final_lost_sales()
    }

    fn lost_path(&self) -> Vec<f64> {
        std::iter::once(0.0)
            .chain(self.traj.lost_sales.iter().copied())
            .collect()
    }

    fn feasible(&self, inst: &Instance) -> bool {
        check_feasibility(inst, &self.traj).feasible
    }
}

fn rank(p: &Prefix) -> f64 {
    (p.capital() / RANK_TOL).round()
}

/// Best candidate by end capital; ties go to the larger tag.
fn pick(options: &[(usize, Prefix)]) -> Option<&Prefix> {
    options
        .iter()
        .max_by(|a, b| rank(&a.1).total_cmp(&rank(&b.1)).then(a.0.cmp(&b.0)))
        .map(|o| &o.1)
}

struct Engine<'a> {
    inst: &'a Instance,
    cfg: FrhConfig,
    lp_count: usize,
    limit: usize,
    /// LPs still owed to the mandatory round evaluations.
    reserve: usize,
    per_round: usize,
    adjustments: Vec<Adjustment>,
}

impl<'a> Engine<'a> {
    fn new(inst: &'a Instance, cfg: FrhConfig) -> Self {
        let t = inst.horizon;
        let per_round = if inst.goodwill_loss == 0.0 { 1 } else { 3 };
        Engine {
            inst,
            cfg,
            lp_count: 0,
            limit: lp_budget(inst),
            reserve: per_round * t * (t + 1) / 2,
            per_round,
            adjustments: Vec::new(),
        }
    }

    fn affordable(&self) -> bool {
        self.lp_count + self.per_round + self.reserve <= self.limit
    }

    /// Replace everything from `m` on with the round `m..=n` launched at
    /// `starts`, keeping the first `m − 1` periods of `pref`.
    fn try_round(
        &mut self,
        pref: &Prefix,
        m: usize,
        n: usize,
        starts: &[usize],
        lost_cap: Option<f64>,
        mandatory: bool,
    ) -> Result<Option<Prefix>> {
        if mandatory {
            self.reserve = self.reserve.saturating_sub(self.per_round);
        } else if !self.affordable() {
            return Ok(None);
        }
        let inst = self.inst;
        let mut spec = RoundSpec::new(
            m,
            n,
            starts.to_vec(),
            pref.traj.capital[m - 1],
            if m == 1 { 0.0 } else { pref.traj.lost_sales[m - 2] },
        );
        spec.lost_cap = lost_cap;
        let round = solve_round(inst, &spec, self.cfg.cascade)?;
        self.lp_count += round.lp_solves;
        if !round.feasible {
            return Ok(None);
        }
        let mut plan = Plan {
            production: pref.traj.plan.production[..m - 1].to_vec(),
            sales: pref.traj.plan.sales[..m - 1].to_vec(),
        };
        plan.production.extend_from_slice(&round.production);
        plan.sales.extend_from_slice(&round.sales);
        let mut all_starts: Vec<usize> = pref.starts.iter().copied().filter(|&s| s < m).collect();
        all_starts.extend_from_slice(starts);
        let out = Prefix::new(inst, &plan, all_starts);
        Ok(out.feasible(inst).then_some(out))
    }

    fn idle_prefix(&self, len: usize) -> Prefix {
        Prefix::new(self.inst, &Plan::idle(len), Vec::new())
    }

    /// The three adjustment families applied to the round ending at `n`.
    /// Returns `None` when no variant improves on `pr`.
    fn adjust_plan(&mut self, pr: &Prefix, n: usize) -> Result<Option<Prefix>> {
        let Some(&last) = pr.starts.last() else {
            return Ok(None);
        };
        let m = if pr.starts.len() >= 2 { pr.starts[pr.starts.len() - 2] } else { last };
        let mut cur = pr.clone();
        let mut changed = false;
        let better = |c: &Prefix, cur: &Prefix| {
            let (b, w) = (c.capital(), c.lost());
            b > cur.capital() + RANK_TOL
                || ((b - cur.capital()).abs() <= RANK_TOL && w < cur.lost() - RANK_TOL)
        };

        // (a) split the first cycle of the round.
        let rs: Vec<usize> = cur.starts.iter().copied().filter(|&s| s >= m).collect();
        let first_end = if rs.len() > 1 { rs[1] - 1 } else { n };
        let mut found: Option<Prefix> = None;
        for tp in m + 1..=first_end {
            let mut variants = vec![[vec![m, tp], rs[1..].to_vec()].concat()];
            if self.cfg.launch_shift && rs.len() == 2 {
                variants.push(vec![m, tp]);
            }
            for starts in variants {
                if let Some(c) = self.try_round(&cur, m, n, &starts, Some(cur.lost()), false)? {
                    if better(&c, &cur) && found.as_ref().is_none_or(|f| c.capital() > f.capital()) {
                        found = Some(c);
                    }
                }
            }
        }
        if let Some(c) = found.take() {
            self.note(AdjustmentKind::Adj1, n, &c);
            cur = c;
            changed = true;
        }

        // (b) add a cycle before a lone launch.
        if cur.starts.len() == 1 {
            let lone = cur.starts[0];
            for mp in 1..lone {
                if let Some(c) = self.try_round(&cur, mp, n, &[mp, lone], Some(cur.lost()), false)? {
                    if better(&c, &cur) && found.as_ref().is_none_or(|f| c.capital() > f.capital()) {
                        found = Some(c);
                    }
                }
            }
            if let Some(c) = found.take() {
                self.note(AdjustmentKind::Adj2, n, &c);
                cur = c;
                changed = true;
            }
        }

        // (c) delay a launch in period 1.
        if cur.starts.first() == Some(&1) {
            let last = *cur.starts.last().unwrap();
            for mp in 2..last {
                let head = self.idle_prefix(mp - 1);
                if let Some(c) = self.try_round(&head, mp, n, &[mp, last], Some(cur.lost()), false)? {
                    if better(&c, &cur) && found.as_ref().is_none_or(|f| c.capital() > f.capital()) {
                        found = Some(c);
                    }
                }
            }
            if let Some(c) = found.take() {
                self.note(AdjustmentKind::Adj3, n, &c);
                cur = c;
                changed = true;
            }
        }
        Ok(changed.then_some(cur))
    }

    fn note(&mut self, kind: AdjustmentKind, stage: usize, c: &Prefix) {
        self.adjustments.push(Adjustment {
            kind,
            stage,
            periods: c.traj.plan.launches(),
        });
    }

    fn run(&mut self) -> Result<RecursionState> {
        let inst = self.inst;
        let t_max = inst.horizon;
        let beta = inst.goodwill_loss;
        let mut best = vec![self.idle_prefix(0)];
        let mut candidates: Vec<Vec<(usize, Prefix)>> = vec![Vec::new(); t_max + 1];
        let mut round_values = vec![vec![None; t_max]; t_max];
        let mut degenerate = false;

        for t in 1..=t_max {
            let entry = best[t - 1].clone();
            let capital = &entry.traj.capital;
            let lost = entry.lost_path();
            for n in t..=t_max {
                for spec in enumerate_round_specs(inst, t, n, entry.starts.last().copied(), capital, &lost) {
                    if let Some(pr) = self.try_round(&entry, spec.m, n, &spec.cycle_starts, None, true)? {
                        round_values[t - 1][n - 1] = Some(pr.capital() - spec.capital_in);
                        candidates[n].push((t, pr));
                    }
                }
            }

            let mut idle_plan = entry.traj.plan.clone();
            idle_plan.production.push(0.0);
            idle_plan.sales.push(0.0);
            let idle = Prefix::new(inst, &idle_plan, entry.starts.clone());
            let mut options: Vec<(usize, Prefix)> = Vec::new();
            let idle_ok = idle.feasible(inst);
            if idle_ok {
                options.push((t + 1, idle.clone()));
            }
            options.extend(candidates[t].iter().cloned());
            let mut chosen = match pick(&options) {
                Some(p) => p.clone(),
                None => {
                    degenerate = true;
                    idle
                }
            };

            if self.cfg.adjust && beta > 0.0 && !degenerate {
                let base = if chosen.starts.is_empty() && !candidates[t].is_empty() {
                    pick(&candidates[t]).unwrap().clone()
                } else {
                    chosen.clone()
                };
                let marks = self.adjustments.len();
                match self.adjust_plan(&base, t)? {
                    Some(adj) if adj.capital() >= chosen.capital() - RANK_TOL => {
                        // Re-evaluate rounds that extend the adjusted last cycle.
                        if let Some(&last) = adj.starts.last() {
                            let prev = adj.starts.iter().copied().rfind(|&s| s < last);
                            let starts = match prev {
                                Some(p) => vec![p, last],
                                None => vec![last],
                            };
                            for (n2, slot) in candidates.iter_mut().enumerate().take(t_max + 1).skip(t + 1) {
                                if let Some(pr) = self.try_round(&adj, starts[0], n2, &starts, None, false)? {
                                    slot.push((last, pr));
                                }
                            }
                        }
                        chosen = adj;
                    }
                    _ => self.adjustments.truncate(marks),
                }
            }
            best.push(chosen);
        }

        let last = best.pop().expect("stage T exists");
        let mut best_capital: Vec<f64> = best.iter().map(Prefix::capital).collect();
        best_capital.push(last.capital());
        Ok(RecursionState {
            best_capital,
            launches: last.starts,
            trajectory: last.traj,
            round_values,
            lp_count: self.lp_count,
            adjustments: std::mem::take(&mut self.adjustments),
            degenerate,
        })
    }
}

/// Forward recursion with per-stage adjustments (no post-pass).
pub fn recurse(inst: &Instance, cfg: &FrhConfig) -> Result<RecursionState> {
    inst.validate()?;
    Engine::new(inst, *cfg).run()
}

/// Shift production from a later cycle to an earlier one whose unit cost
/// plus holding is lower, as far as spare capital at the earlier launch and
/// nonnegative capital in between allow. Pairs of consecutive cycles are
/// scanned from the end of the horizon; repeats until nothing moves.
pub fn corollary2_postpass(inst: &Instance, sol: &Solution) -> Solution {
    let mut plan = sol.trajectory.plan.clone();
    let mut traj = sol.trajectory.clone();
    let mut adjustments = sol.adjustments.clone();
    let (c, h) = (&inst.unit_cost, &inst.holding_cost);
    for _ in 0..100 {
        let launches = plan.launches();
        let mut moved = false;
        for pair in launches.windows(2).rev() {
            let (a, b) = (pair[0], pair[1]);
            let y = &plan.production;
            let slack = traj.capital[a - 1] - inst.setup_cost[a - 1] - c[a - 1] * y[a - 1];
            let carry: f64 = h[a - 1..b - 1].iter().sum();
            if slack <= tol::STRICT || c[a - 1] + carry >= c[b - 1] {
                continue;
            }
            let mut dy = (slack / c[a - 1]).min(y[b - 1]);
            // Capital between the two launches drops by (c_a + Σ h)·Δy.
            let mut rate = c[a - 1];
            for tt in a..b {
                rate += h[tt - 1];
                dy = dy.min(traj.capital[tt] / rate);
            }
            if dy <= tol::STRICT {
                continue;
            }
            let mut next = plan.clone();
            next.production[a - 1] += dy;
            next.production[b - 1] -= dy;
            if next.production[b - 1] <= tol::ZERO {
                next.production[b - 1] = 0.0;
            }
            let cand = simulate(inst, &next);
            if check_feasibility(inst, &cand).feasible && cand.objective > traj.objective {
                plan = next;
                traj = cand;
                adjustments.push(Adjustment {
                    kind: AdjustmentKind::Cor2,
                    stage: 0,
                    periods: vec![a, b],
                });
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    Solution::new(traj, sol.lp_count, adjustments, sol.degenerate)
}

pub fn solve_frh(inst: &Instance) -> Result<Solution> {
    solve_frh_with(inst, &FrhConfig::default())
}

pub fn solve_frh_with(inst: &Instance, cfg: &FrhConfig) -> Result<Solution> {
    let state = recurse(inst, cfg)?;
    let sol = Solution::new(state.trajectory, state.lp_count, state.adjustments, state.degenerate);
    Ok(if cfg.postpass && !sol.degenerate {
        corollary2_postpass(inst, &sol)
    } else {
        sol
    })
}

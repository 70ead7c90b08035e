//! Problem data, plan evaluation and constraint checking.
//!
//! A plan fixes production `y_t` and realized sales `v_t`. Everything else
//! (setups, effective demand, lost sales, inventory, capital) follows by
//! forward simulation from `I_0 = 0`, `w_0 = 0`, `B_0 = B_c + B_L`.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Exogenous data of one lot-sizing instance.
///
/// Serialized with the short field names used by instance files
/// (`T`, `d`, `p`, `c`, `h`, `s`, `Bc`, `BL`, `TL`, `r`, `beta`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "T")]
    pub horizon: usize,
    #[serde(rename = "d")]
    pub demand: Vec<f64>,
    #[serde(rename = "p")]
    pub price: Vec<f64>,
    #[serde(rename = "c")]
    pub unit_cost: Vec<f64>,
    #[serde(rename = "h")]
    pub holding_cost: Vec<f64>,
    #[serde(rename = "s")]
    pub setup_cost: Vec<f64>,
    /// Self-owned capital at the start of period 1.
    #[serde(rename = "Bc")]
    pub own_capital: f64,
    /// Loan principal received at the start of period 1.
    #[serde(rename = "BL")]
    pub loan: f64,
    /// Period at whose end the loan is repaid.
    #[serde(rename = "TL")]
    pub loan_periods: usize,
    #[serde(rename = "r")]
    pub interest_rate: f64,
    /// Fraction of last period's lost sales that leaves the market.
    #[serde(rename = "beta")]
    pub goodwill_loss: f64,
}

impl Instance {
    /// Check every structural invariant; returns the instance unchanged.
    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.horizon;
        if t == 0 {
            return Err(Error::Input("horizon T must be at least 1".into()));
        }
        let vectors = [
            ("d", &self.demand),
            ("p", &self.price),
            ("c", &self.unit_cost),
            ("h", &self.holding_cost),
            ("s", &self.setup_cost),
        ];
        for (name, v) in vectors {
            if v.len() != t {
                return Err(Error::Input(format!(
                    "vector {name} has {} entries, expected T = {t}",
                    v.len()
                )));
            }
            if let Some(bad) = v.iter().position(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::Input(format!(
                    "{name}[{}] = {} is not a finite nonnegative number",
                    bad + 1,
                    v[bad]
                )));
            }
        }
        if let Some(bad) = self.unit_cost.iter().position(|&c| c <= 0.0) {
            return Err(Error::Input(format!("c[{}] must be positive", bad + 1)));
        }
        for (name, x) in [
            ("Bc", self.own_capital),
            ("BL", self.loan),
            ("r", self.interest_rate),
        ] {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::Input(format!("{name} = {x} must be finite and nonnegative")));
            }
        }
        if !(0.0..=1.0).contains(&self.goodwill_loss) {
            return Err(Error::Input(format!(
                "beta = {} must lie in [0, 1]",
                self.goodwill_loss
            )));
        }
        if self.loan > 0.0 && !(1..=t).contains(&self.loan_periods) {
            return Err(Error::Input(format!(
                "loan length TL = {} must lie in [1, T] when BL > 0",
                self.loan_periods
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<Instance>(text)?.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// `B_0 = B_c + B_L`.
    pub fn initial_capital(&self) -> f64 {
        self.own_capital + self.loan
    }

    /// Lump sum `B_L (1 + r)^{T_L}` paid at the end of period `T_L`; zero without a loan.
    pub fn repayment(&self) -> f64 {
        if self.loan > 0.0 {
            self.loan * (1.0 + self.interest_rate).powi(self.loan_periods as i32)
        } else {
            0.0
        }
    }

    /// Repayment due at the end of 1-based period `t`.
    pub fn repayment_at(&self, t: usize) -> f64 {
        if self.loan > 0.0 && t == self.loan_periods {
            self.repayment()
        } else {
            0.0
        }
    }

    /// Null-plan objective: nothing produced, only the loan repaid.
    pub fn idle_objective(&self) -> f64 {
        -self.repayment()
    }

    /// Same data with a different loan; used by parameter sweeps.
    pub fn with_capital(mut self, own_capital: f64, loan: f64, loan_periods: usize, rate: f64) -> Self {
        self.own_capital = own_capital;
        self.loan = loan;
        self.loan_periods = loan_periods;
        self.interest_rate = rate;
        self
    }

    /// Whether every unit production cost equals the first one.
    pub fn has_constant_unit_cost(&self) -> bool {
        self.unit_cost.iter().all(|&c| c == self.unit_cost[0])
    }
}

/// Production quantities and realized sales, one entry per period.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    pub production: Vec<f64>,
    pub sales: Vec<f64>,
}

impl Plan {
    pub fn idle(horizon: usize) -> Self {
        Plan {
            production: vec![0.0; horizon],
            sales: vec![0.0; horizon],
        }
    }

    pub fn len(&self) -> usize {
        self.production.len()
    }

    pub fn is_empty(&self) -> bool {
        self.production.is_empty()
    }

    /// Whether a setup happens in 0-based period `i`.
    pub fn setup(&self, i: usize) -> bool {
        self.production[i] > tol::ZERO
    }

    /// 1-based periods with a production launch.
    pub fn launches(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.setup(i))
            .map(|i| i + 1)
            .collect()
    }
}

/// Remnant demand after the goodwill shrink: `max(0, d_t − β·w_{t−1})`.
pub fn effective_demand(demand: f64, prev_lost: f64, goodwill_loss: f64) -> f64 {
    (demand - goodwill_loss * prev_lost).max(0.0)
}

/// Largest affordable production quantity `max(0, (B_{t−1} − s_t)/c_t)`.
pub fn production_upper_bound(prev_capital: f64, setup: f64, unit_cost: f64) -> Result<f64> {
    if unit_cost.is_nan() || unit_cost <= 0.0 {
        return Err(Error::Input(format!("unit cost {unit_cost} must be positive")));
    }
    Ok(((prev_capital - setup) / unit_cost).max(0.0))
}

/// A plan together with every state variable it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub plan: Plan,
    pub setups: Vec<bool>,
    pub effective_demand: Vec<f64>,
    pub lost_sales: Vec<f64>,
    /// `I[0..=n]`, `I[0] = 0`.
    pub inventory: Vec<f64>,
    /// `B[0..=n]`, `B[0] = B_c + B_L`.
    pub capital: Vec<f64>,
    /// `B[n] − B_c − B_L`.
    pub objective: f64,
}

impl Trajectory {
    pub fn periods(&self) -> usize {
        self.plan.len()
    }

    pub fn final_capital(&self) -> f64 {
        *self.capital.last().expect("B_0 always present")
    }

    /// Lost sales at the end of the simulated horizon (`w_0 = 0` when empty).
    pub fn final_lost_sales(&self) -> f64 {
        self.lost_sales.last().copied().unwrap_or(0.0)
    }

    /// CSV with header `t,x,y,v,Ed,w,I,B` and a trailing `objective,<value>` line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,x,y,v,Ed,w,I,B")?;
        for i in 0..self.periods() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                i + 1,
                u8::from(self.setups[i]),
                self.plan.production[i],
                self.plan.sales[i],
                self.effective_demand[i],
                self.lost_sales[i],
                self.inventory[i + 1],
                self.capital[i + 1],
            )?;
        }
        writeln!(out, "objective,{}", self.objective)
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Simulate the first `plan.len() ≤ T` periods.
pub(crate) fn simulate(inst: &Instance, plan: &Plan) -> Trajectory {
    let n = plan.len();
    debug_assert!(n <= inst.horizon);
    let mut setups = Vec::with_capacity(n);
    let mut ed = Vec::with_capacity(n);
    let mut lost = Vec::with_capacity(n);
    let mut inv = Vec::with_capacity(n + 1);
    let mut cap = Vec::with_capacity(n + 1);
    inv.push(0.0);
    cap.push(inst.initial_capital());
    let mut prev_lost = 0.0;
    for i in 0..n {
        let y = plan.production[i];
        let v = plan.sales[i];
        let x = plan.setup(i);
        let e = effective_demand(inst.demand[i], prev_lost, inst.goodwill_loss);
        let w = e - v;
        let stock = inv[i] + y - v;
        let setup_cost = if x { inst.setup_cost[i] } else { 0.0 };
        let b = cap[i] + inst.price[i] * v
            - inst.holding_cost[i] * stock
            - setup_cost
            - inst.unit_cost[i] * y
            - inst.repayment_at(i + 1);
        setups.push(x);
        ed.push(e);
        lost.push(w);
        inv.push(stock);
        cap.push(b);
        prev_lost = w;
    }
    let objective = cap[n] - inst.initial_capital();
    Trajectory {
        plan: plan.clone(),
        setups,
        effective_demand: ed,
        lost_sales: lost,
        inventory: inv,
        capital: cap,
        objective,
    }
}

/// Forward-evaluate a full-horizon plan.
///
/// Sales above effective demand are not clamped; the trajectory is still
/// produced and [`check_feasibility`] reports the excess.
pub fn evaluate_plan(inst: &Instance, plan: &Plan) -> Result<Trajectory> {
    let t = inst.horizon;
    if plan.production.len() != t || plan.sales.len() != t {
        return Err(Error::Input(format!(
            "plan has {} production and {} sales entries, expected T = {t}",
            plan.production.len(),
            plan.sales.len()
        )));
    }
    Ok(simulate(inst, plan))
}

/// Constraint labels of the mixed-integer model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintId {
    /// Production only with a setup.
    C3,
    /// Setup plus variable cost covered by opening capital.
    C4,
    /// Lost sales bounded by effective demand.
    C5,
    /// Inventory balance.
    C6,
    /// Initial capital.
    C7,
    /// Capital balance, including the loan repayment.
    C8,
    /// Effective demand follows the goodwill recursion (positive branch).
    C11,
    /// Effective demand vanishes when the shrink exceeds demand.
    C13,
    /// Zero initial inventory and no backorders.
    C14,
    /// Nonnegativity of Ed, y and v.
    C15,
    /// End-of-period capital stays nonnegative.
    EndCapital,
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: ConstraintId,
    /// 1-based period (0 for initial conditions).
    pub period: usize,
    pub magnitude: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn has(&self, id: ConstraintId) -> bool {
        self.violations.iter().any(|v| v.constraint == id)
    }

    pub fn magnitude(&self, id: ConstraintId, period: usize) -> Option<f64> {
        self.violations
            .iter()
            .find(|v| v.constraint == id && v.period == period)
            .map(|v| v.magnitude)
    }
}

/// Check a trajectory against every constraint at tolerance `tol::FEAS`.
pub fn check_feasibility(inst: &Instance, traj: &Trajectory) -> FeasibilityReport {
    check_feasibility_with(inst, traj, tol::FEAS)
}

pub fn check_feasibility_with(inst: &Instance, traj: &Trajectory, tol: f64) -> FeasibilityReport {
    let mut out = Vec::new();
    let mut flag = |constraint, period, magnitude: f64| {
        if magnitude > tol {
            out.push(Violation {
                constraint,
                period,
                magnitude,
            });
        }
    };
    let n = traj.periods();
    flag(ConstraintId::C7, 0, (traj.capital[0] - inst.initial_capital()).abs());
    flag(ConstraintId::C14, 0, traj.inventory[0].abs());
    let mut prev_lost = 0.0;
    for i in 0..n {
        let t = i + 1;
        let y = traj.plan.production[i];
        let v = traj.plan.sales[i];
        let x = traj.setups[i];
        let ed = traj.effective_demand[i];
        let w = traj.lost_sales[i];

        if !x {
            flag(ConstraintId::C3, t, y);
        }
        let spend = if x { inst.setup_cost[i] } else { 0.0 } + inst.unit_cost[i] * y;
        flag(ConstraintId::C4, t, spend - traj.capital[i]);
        // 0 ≤ w ≤ Ed with w = Ed − v.
        flag(ConstraintId::C5, t, (w - ed).max(-w).max((ed - w - v).abs()));
        flag(
            ConstraintId::C6,
            t,
            (traj.inventory[t] - (traj.inventory[i] + y - v)).abs(),
        );
        let expected = traj.capital[i] + inst.price[i] * v
            - inst.holding_cost[i] * traj.inventory[t]
            - if x { inst.setup_cost[i] } else { 0.0 }
            - inst.unit_cost[i] * y
            - inst.repayment_at(t);
        flag(ConstraintId::C8, t, (traj.capital[t] - expected).abs());

        let raw = inst.demand[i] - inst.goodwill_loss * prev_lost;
        if raw > 0.0 {
            flag(ConstraintId::C11, t, (ed - raw).abs());
        } else {
            flag(ConstraintId::C13, t, ed.abs());
        }
        flag(ConstraintId::C14, t, -traj.inventory[t]);
        flag(ConstraintId::C15, t, (-ed).max(-y).max(-v));
        flag(ConstraintId::EndCapital, t, -traj.capital[t]);
        prev_lost = w;
    }
    FeasibilityReport {
        feasible: out.is_empty(),
        violations: out,
    }
}

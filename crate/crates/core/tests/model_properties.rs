use lotflow_core::gen::{gen_table2, sampled_table2};
use lotflow_core::model::{effective_demand, ConstraintId};
use lotflow_core::{check_feasibility, evaluate_plan, Instance, Plan};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, horizon: usize, beta: f64) -> Instance {
    gen_table2(&sampled_table2(seed, horizon, beta)).unwrap()
}

/// Random plan near the feasibility boundary: production is sized from the
/// running capital and sales from stock on hand, then perturbed.
fn random_plan(inst: &Instance, rng: &mut ChaCha8Rng) -> Plan {
    let t = inst.horizon;
    let mut plan = Plan::idle(t);
    let (mut cap, mut inv, mut lost) = (inst.initial_capital(), 0.0, 0.0);
    for i in 0..t {
        let ed = effective_demand(inst.demand[i], lost, inst.goodwill_loss);
        if rng.random_bool(0.4) && cap > inst.setup_cost[i] {
            let ahead = rng.random_range(1..=3).min(t - i);
            let need: f64 = inst.demand[i..i + ahead].iter().sum();
            let afford = (cap - inst.setup_cost[i]) / inst.unit_cost[i];
            plan.production[i] = need.min(afford) * rng.random_range(0.5..1.0);
        }
        plan.sales[i] = ed.min(inv + plan.production[i]) * rng.random_range(0.8..1.0);
        if rng.random_bool(0.05) {
            plan.sales[i] = ed * rng.random_range(-0.05..1.2);
        }
        if rng.random_bool(0.05) {
            plan.production[i] *= rng.random_range(1.0..3.0);
        }
        let x = plan.production[i] > 1e-7;
        inv += plan.production[i] - plan.sales[i];
        cap += inst.price[i] * plan.sales[i]
            - inst.holding_cost[i] * inv
            - if x { inst.setup_cost[i] } else { 0.0 }
            - inst.unit_cost[i] * plan.production[i]
            - inst.repayment_at(i + 1);
        lost = ed - plan.sales[i];
    }
    plan
}

/// Feasibility computed from scratch, without the trajectory.
fn independent_verdict(inst: &Instance, plan: &Plan) -> bool {
    let tol = 1e-6;
    let mut inv = 0.0;
    let mut cap = inst.own_capital + inst.loan;
    let mut lost = 0.0;
    for i in 0..inst.horizon {
        let (y, v) = (plan.production[i], plan.sales[i]);
        let ed = (inst.demand[i] - inst.goodwill_loss * lost).max(0.0);
        let setup = if y > 1e-7 { inst.setup_cost[i] } else { 0.0 };
        if y < -tol || v < -tol || v > ed + tol {
            return false;
        }
        if setup + inst.unit_cost[i] * y > cap + tol {
            return false;
        }
        inv += y - v;
        if inv < -tol {
            return false;
        }
        cap += inst.price[i] * v - inst.holding_cost[i] * inv - setup - inst.unit_cost[i] * y;
        if i + 1 == inst.loan_periods && inst.loan > 0.0 {
            cap -= inst.loan * (1.0 + inst.interest_rate).powi(inst.loan_periods as i32);
        }
        if cap < -tol {
            return false;
        }
        lost = ed - v;
    }
    true
}

#[test]
fn checker_agrees_with_independent_harness() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut feasible = 0;
    for k in 0..1000u64 {
        let beta = [0.0, 0.1, 0.5][k as usize % 3];
        let inst = instance(k, rng.random_range(3..=12), beta);
        let plan = random_plan(&inst, &mut rng);
        let traj = evaluate_plan(&inst, &plan).unwrap();
        let want = independent_verdict(&inst, &plan);
        let report = check_feasibility(&inst, &traj);
        assert_eq!(report.feasible, want, "pair {k}: {:?}", report.violations);
        feasible += want as usize;
    }
    assert!(feasible > 50 && feasible < 950, "only {feasible} feasible pairs");
}

#[test]
fn negative_capital_is_reported_per_period() {
    let inst = instance(3, 6, 0.0);
    let mut plan = Plan::idle(6);
    plan.production[0] = 1e6;
    let report = check_feasibility(&inst, &evaluate_plan(&inst, &plan).unwrap());
    assert!(report.has(ConstraintId::C4));
    assert!(report.magnitude(ConstraintId::EndCapital, 1).unwrap() > 0.0);
}

proptest! {
    #[test]
    fn objective_is_the_sum_of_period_cash_flows(seed in any::<u64>(), t in 3usize..=24, b in 0usize..3) {
        let inst = instance(seed, t, [0.0, 0.1, 0.5][b]);
        let plan = random_plan(&inst, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let traj = evaluate_plan(&inst, &plan).unwrap();
        let mut flow = -inst.repayment();
        let mut scale = inst.repayment().abs();
        for i in 0..t {
            let setup = if traj.setups[i] { inst.setup_cost[i] } else { 0.0 };
            let terms = [
                inst.price[i] * plan.sales[i],
                -inst.holding_cost[i] * traj.inventory[i + 1],
                -setup,
                -inst.unit_cost[i] * plan.production[i],
            ];
            flow += terms.iter().sum::<f64>();
            scale += terms.iter().map(|x| x.abs()).sum::<f64>();
        }
        prop_assert!((traj.objective - flow).abs() <= 1e-9 * (1.0 + scale));
        prop_assert_eq!(traj.objective, traj.capital[t] - inst.initial_capital());
    }

    #[test]
    fn effective_demand_is_clamped_and_monotone(
        d in 0.0f64..500.0,
        w1 in 0.0f64..500.0,
        w2 in 0.0f64..500.0,
        beta in 0.0f64..=1.0,
    ) {
        let (lo, hi) = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        let a = effective_demand(d, lo, beta);
        let b = effective_demand(d, hi, beta);
        prop_assert!(a >= 0.0 && b >= 0.0);
        prop_assert!(a <= d && b <= a);
        prop_assert_eq!(effective_demand(d, hi, 0.0), d);
    }

    #[test]
    fn idle_plan_is_feasible_without_loan(seed in any::<u64>(), t in 3usize..=12) {
        let mut inst = instance(seed, t, 0.1);
        inst.loan = 0.0;
        let traj = evaluate_plan(&inst, &Plan::idle(t)).unwrap();
        prop_assert!(check_feasibility(&inst, &traj).feasible);
        prop_assert_eq!(traj.objective, 0.0);
        prop_assert_eq!(traj.objective, inst.idle_objective());
    }
}

#[test]
fn wrong_plan_length_is_rejected() {
    let inst = instance(1, 4, 0.0);
    assert!(evaluate_plan(&inst, &Plan::idle(3)).is_err());
}

#[test]
fn csv_layout() {
    let inst = instance(1, 3, 0.0);
    let csv = evaluate_plan(&inst, &Plan::idle(3)).unwrap().to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,x,y,v,Ed,w,I,B");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("objective,"));
}

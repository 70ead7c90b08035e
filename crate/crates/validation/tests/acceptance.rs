//! One line per acceptance criterion; the test fails if any criterion does.

#[path = "../../core/tests/common/cases.rs"]
#[allow(dead_code)]
mod cases;
#[path = "../../core/tests/common/vertex.rs"]
mod vertex;

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use lotflow_cli::{cmd_gen, sweep, Scheme, SweepKind};
use lotflow_core::frh::lp_budget;
use lotflow_core::oracle::relative_deviation;
use lotflow_core::{check_feasibility, solve_exact, solve_frh, Instance, OracleConfig, Solution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    id: usize,
    pass: bool,
    detail: String,
}

/// Shared bookkeeping for the feasibility, inventory and LP-count criteria.
#[derive(Default)]
struct Ledger {
    solutions: usize,
    infeasible: Vec<String>,
    frh_solves: usize,
    over_budget: Vec<String>,
    zio_checked: usize,
    zio_breaks: Vec<String>,
}

impl Ledger {
    fn feasible(&mut self, label: &str, inst: &Instance, sol: &Solution) {
        self.solutions += 1;
        let report = check_feasibility(inst, &sol.trajectory);
        if !report.feasible {
            self.infeasible.push(format!("{label}: {:?}", report.violations));
        }
    }

    fn frh(&mut self, label: &str, inst: &Instance, sol: &Solution) {
        self.feasible(label, inst, sol);
        self.frh_solves += 1;
        let t = inst.horizon;
        let cap = if inst.goodwill_loss == 0.0 { t * (t + 1) / 2 } else { 9 * t * (t + 1) / 2 };
        assert_eq!(cap, lp_budget(inst));
        if sol.lp_count > cap {
            self.over_budget.push(format!("{label}: {} > {cap}", sol.lp_count));
        }
    }

    fn zero_inventory(&mut self, label: &str, sol: &Solution) {
        self.zio_checked += 1;
        let traj = &sol.trajectory;
        for t in 1..traj.periods() {
            let product = traj.inventory[t] * traj.plan.production[t];
            if product > 1e-7 {
                self.zio_breaks.push(format!("{label}: I_{t}·y_{} = {product:.3e}", t + 1));
            }
        }
    }
}

fn within(values: &[f64], expected: &[f64], tol: f64) -> Vec<String> {
    values
        .iter()
        .zip(expected)
        .enumerate()
        .filter(|(_, (v, e))| (*v - *e).abs() > tol)
        .map(|(i, (v, e))| format!("#{i}: {v:.3} vs {e}"))
        .collect()
}

fn fig7a(ledger: &mut Ledger) -> Verdict {
    let start = Instant::now();
    let s = sweep(SweepKind::Capital).unwrap();
    let elapsed = start.elapsed();
    for p in &s.points {
        let inst = lotflow_core::gen::gen_table1(p.x, 0.0, 0, 0.0);
        let sol = solve_frh(&inst).unwrap();
        assert_eq!(sol.objective, p.objective);
        ledger.frh(&format!("capital {}", p.x), &inst, &sol);
    }
    let got: Vec<f64> = s.points.iter().map(|p| p.objective).collect();
    let misses = within(&got, &[0.0, 70.0, 1891.0, 2300.0, 2360.0, 2360.0, 2360.0], 1.0);
    Verdict {
        id: 1,
        pass: misses.is_empty() && elapsed < Duration::from_secs(10),
        detail: format!("capital sweep {got:.3?} in {elapsed:.2?}; off by more than 1: {misses:?}"),
    }
}

fn fig7b(ledger: &mut Ledger) -> Verdict {
    let s = sweep(SweepKind::Interest).unwrap();
    for p in &s.points {
        let inst = lotflow_core::gen::gen_table1(200.0, 300.0, 3, p.x);
        let sol = solve_frh(&inst).unwrap();
        assert_eq!(sol.objective, p.objective);
        ledger.frh(&format!("rate {}", p.x), &inst, &sol);
    }
    let got: Vec<f64> = s.points.iter().map(|p| p.objective).collect();
    let misses = within(&got, &[2060.0, 2023.0, 1971.0, 1913.0, 1851.0, 1784.0, 1710.0], 1.0);
    let reference = s.no_loan_objective.unwrap();
    let decreasing = got.windows(2).all(|w| w[1] < w[0]);
    Verdict {
        id: 2,
        pass: misses.is_empty() && (reference - 1891.0).abs() <= 1.0 && decreasing,
        detail: format!(
            "interest sweep {got:.3?}, no-loan {reference:.3}, strictly decreasing {decreasing}; misses {misses:?}"
        ),
    }
}

fn theorem1(ledger: &mut Ledger) -> Verdict {
    let cfg = OracleConfig::default();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for seed in 0..200 {
        let inst = cases::constant_cost(seed);
        assert!(inst.has_constant_unit_cost() && inst.goodwill_loss == 0.0);
        let frh = solve_frh(&inst).unwrap();
        let exact = solve_exact(&inst, &cfg).unwrap();
        let label = format!("constant-cost seed {seed}");
        ledger.frh(&label, &inst, &frh);
        ledger.feasible(&label, &inst, &exact);
        ledger.zero_inventory(&format!("{label} frh"), &frh);
        ledger.zero_inventory(&format!("{label} oracle"), &exact);
        if (frh.objective - exact.objective).abs() > 1e-6 * exact.objective.abs().max(1.0) {
            mismatches.push(format!("seed {seed}: {} vs {}", frh.objective, exact.objective));
        }
    }
    let elapsed = start.elapsed();
    Verdict {
        id: 3,
        pass: mismatches.is_empty() && elapsed < Duration::from_secs(300),
        detail: format!("200 constant-cost instances in {elapsed:.2?}; mismatches {mismatches:?}"),
    }
}

fn dominance(ledger: &mut Ledger) -> Verdict {
    let cfg = OracleConfig::default();
    let mut above = Vec::new();
    let mut devs = Vec::new();
    for i in 0..300u64 {
        let inst = cases::small(1000 + i, cases::BETAS[i as usize % 3]);
        let frh = solve_frh(&inst).unwrap();
        let exact = solve_exact(&inst, &cfg).unwrap();
        let label = format!("random seed {}", 1000 + i);
        ledger.frh(&label, &inst, &frh);
        ledger.feasible(&label, &inst, &exact);
        if frh.objective > exact.objective + 1e-6 {
            above.push(label);
        }
        devs.push(relative_deviation(exact.objective, frh.objective));
    }
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    let max = devs.iter().copied().fold(0.0, f64::max);
    let non_optimal = devs.iter().filter(|&&d| d > 0.0).count();
    Verdict {
        id: 4,
        pass: above.is_empty() && mean <= 0.01 && max <= 0.08,
        detail: format!(
            "300 instances: mean deviation {:.4}%, max {:.4}%, {non_optimal} non-optimal, heuristic above oracle {above:?}",
            mean * 100.0,
            max * 100.0
        ),
    }
}

fn lp_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut counts = [0usize; 3];
    for i in 0..500 {
        let prob = vertex::random_lp(&mut rng);
        counts[vertex::reference(&prob).status as usize] += 1;
        if let Err(msg) = vertex::check(&prob) {
            failures.push(format!("lp {i}: {msg}"));
        }
    }
    Verdict {
        id: 8,
        pass: failures.is_empty(),
        detail: format!(
            "500 LPs (optimal/infeasible/unbounded {counts:?}) against vertex enumeration; failures {failures:?}"
        ),
    }
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn grids() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let mut pass = true;
    for (scheme, want) in [(Scheme::Table2, 864), (Scheme::Table5, 1280)] {
        let a = tmp.path().join(format!("{}-a", scheme.name()));
        let b = tmp.path().join(format!("{}-b", scheme.name()));
        cmd_gen(scheme, true, 0, 1, &a).unwrap();
        cmd_gen(scheme, true, 0, 1, &b).unwrap();
        let (fa, fb) = (read_all(&a), read_all(&b));
        let identical = fa == fb;
        pass &= fa.len() == want && identical;
        notes.push(format!("{} {} files, identical rerun {identical}", scheme.name(), fa.len()));
    }
    Verdict {
        id: 9,
        pass,
        detail: notes.join("; "),
    }
}

#[test]
fn acceptance_criteria() {
    let mut ledger = Ledger::default();
    let mut verdicts = vec![
        fig7a(&mut ledger),
        fig7b(&mut ledger),
        theorem1(&mut ledger),
        dominance(&mut ledger),
    ];
    verdicts.push(Verdict {
        id: 5,
        pass: ledger.infeasible.is_empty(),
        detail: format!("{} solutions checked; infeasible {:?}", ledger.solutions, ledger.infeasible),
    });
    verdicts.push(Verdict {
        id: 6,
        pass: ledger.zio_breaks.is_empty(),
        detail: format!("{} constant-cost plans; inventory at launch {:?}", ledger.zio_checked, ledger.zio_breaks),
    });
    verdicts.push(Verdict {
        id: 7,
        pass: ledger.over_budget.is_empty(),
        detail: format!("{} heuristic solves; over budget {:?}", ledger.frh_solves, ledger.over_budget),
    });
    verdicts.push(lp_equivalence());
    verdicts.push(grids());
    verdicts.sort_by_key(|v| v.id);

    for v in &verdicts {
        println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.id, v.detail);
    }
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Front-end operations behind the `lotflow` binary.

pub mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use lotflow_core::gen::{
    gen_table1, gen_table2, gen_table5, instance_file_name, table2_grid, table5_grid, Table2Config, Table5Config,
};
use lotflow_core::oracle::relative_deviation;
use lotflow_core::{check_feasibility, solve_exact, solve_frh, Error, Instance, OracleConfig, Result, Solution};

use report::{pivot, Row, RunReport};

/// Process exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Json(_) | Error::Input(_) | Error::Config(_) => 2,
        Error::Guard { .. } => 3,
        Error::Numerical(_) => 4,
        Error::Io(_) => 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Frh,
    Oracle,
}

/// Solve with the chosen engine.
pub fn solve(inst: &Instance, engine: Engine, max_t: usize) -> Result<Solution> {
    match engine {
        Engine::Frh => solve_frh(inst),
        Engine::Oracle => solve_exact(
            inst,
            &OracleConfig {
                max_t,
                ..OracleConfig::default()
            },
        ),
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    Instance::from_json(&fs::read_to_string(path)?)
}

/// Writes `trajectory.csv` and `diagnostics.json` into `out`.
pub fn write_solution(inst: &Instance, sol: &Solution, engine: Engine, out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join("trajectory.csv"), sol.trajectory.to_csv())?;
    let mut diag = sol.diagnostics();
    diag["engine"] = serde_json::to_value(engine)?;
    diag["feasible"] = check_feasibility(inst, &sol.trajectory).feasible.into();
    fs::write(out.join("diagnostics.json"), serde_json::to_string_pretty(&diag)?)?;
    Ok(())
}

pub fn cmd_solve(input: &Path, engine: Engine, out: &Path, max_t: usize) -> Result<Solution> {
    let inst = read_instance(input)?;
    let sol = solve(&inst, engine, max_t)?;
    write_solution(&inst, &sol, engine, out)?;
    Ok(sol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Capital,
    Interest,
}

pub const CAPITAL_POINTS: [f64; 7] = [50.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0];
pub const RATE_POINTS: [f64; 7] = [0.01, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30];
/// Own capital, loan and loan length of the interest sweep.
pub const INTEREST_BASE: (f64, f64, usize) = (200.0, 300.0, 3);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub x: f64,
    pub objective: f64,
    pub lp_count: usize,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
    /// Interest sweep only: the same capital without a loan.
    pub no_loan_objective: Option<f64>,
}

fn sweep_point(x: f64, inst: &Instance) -> Result<SweepPoint> {
    let sol = solve_frh(inst)?;
    Ok(SweepPoint {
        x,
        objective: sol.objective,
        lp_count: sol.lp_count,
        feasible: check_feasibility(inst, &sol.trajectory).feasible,
    })
}

/// Heuristic objective across own capital (no loan) or across interest rates
/// on the twelve-period illustration.
pub fn sweep(kind: SweepKind) -> Result<Sweep> {
    match kind {
        SweepKind::Capital => Ok(Sweep {
            points: CAPITAL_POINTS
                .iter()
                .map(|&bc| sweep_point(bc, &gen_table1(bc, 0.0, 0, 0.0)))
                .collect::<Result<_>>()?,
            no_loan_objective: None,
        }),
        SweepKind::Interest => {
            let (bc, bl, tl) = INTEREST_BASE;
            let points = RATE_POINTS
                .iter()
                .map(|&r| sweep_point(r, &gen_table1(bc, bl, tl, r)))
                .collect::<Result<_>>()?;
            let reference = solve_frh(&gen_table1(bc, 0.0, 0, 0.0))?.objective;
            Ok(Sweep {
                points,
                no_loan_objective: Some(reference),
            })
        }
    }
}

/// CSV with columns `x,objective` (plus `no_loan_objective` for the interest sweep).
pub fn sweep_csv(s: &Sweep) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io(e.into());
    match s.no_loan_objective {
        None => w.write_record(["x", "objective"]).map_err(err)?,
        Some(_) => w.write_record(["x", "objective", "no_loan_objective"]).map_err(err)?,
    }
    for p in &s.points {
        let mut rec = vec![p.x.to_string(), p.objective.to_string()];
        if let Some(r) = s.no_loan_objective {
            rec.push(r.to_string());
        }
        w.write_record(&rec).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Table1,
    Table2,
    Table5,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Table1 => "table1",
            Scheme::Table2 => "table2",
            Scheme::Table5 => "table5",
        }
    }
}

/// One grid entry: its file stem, pivot factors and generated instance.
pub struct GridEntry {
    pub id: usize,
    pub name: String,
    pub factors: BTreeMap<String, String>,
    pub instance: Result<Instance>,
}

fn table2_factors(c: &Table2Config) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("T".into(), c.horizon.to_string()),
        ("demand".into(), format!("{:?}", c.demand)),
        ("cost".into(), format!("{:?}", c.cost)),
        ("price".into(), format!("{:?}", c.price)),
        ("capital".into(), format!("{:?}", c.capital)),
        ("loan".into(), format!("{:?}", c.loan)),
        ("beta".into(), c.beta.to_string()),
    ])
}

fn table5_factors(c: &Table5Config) -> BTreeMap<String, String> {
    c.levels()
        .iter()
        .map(|(k, l)| (k.to_string(), format!("{l:?}")))
        .collect()
}

/// Pivot factors reported per scheme.
pub fn pivot_factors(scheme: Scheme) -> &'static [&'static str] {
    match scheme {
        Scheme::Table1 => &[],
        Scheme::Table2 => &["T", "beta", "demand", "cost", "price", "capital", "loan"],
        Scheme::Table5 => &["demand", "unit_cost", "holding", "price", "capital", "rate", "beta"],
    }
}

/// The full grid of a scheme. The illustration "grid" is its single instance
/// with own capital 200 and no loan.
pub fn grid(scheme: Scheme, seed: u64) -> Vec<GridEntry> {
    match scheme {
        Scheme::Table1 => vec![GridEntry {
            id: 0,
            name: instance_file_name("table1", 0, seed),
            factors: BTreeMap::new(),
            instance: Ok(gen_table1(200.0, 0.0, 0, 0.0)),
        }],
        Scheme::Table2 => table2_grid(seed)
            .iter()
            .enumerate()
            .map(|(id, c)| GridEntry {
                id,
                name: instance_file_name("table2", id, c.seed),
                factors: table2_factors(c),
                instance: gen_table2(c),
            })
            .collect(),
        Scheme::Table5 => table5_grid(seed)
            .iter()
            .enumerate()
            .map(|(id, c)| GridEntry {
                id: id / lotflow_core::gen::TABLE5_REPLICATES as usize,
                name: instance_file_name("table5", id / lotflow_core::gen::TABLE5_REPLICATES as usize, c.seed),
                factors: table5_factors(c),
                instance: gen_table5(c),
            })
            .collect(),
    }
}

/// Write instance files; `index` picks a single grid entry when `all` is false.
pub fn cmd_gen(scheme: Scheme, all: bool, index: usize, seed: u64, out: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out)?;
    let entries = grid(scheme, seed);
    let chosen: Vec<&GridEntry> = if all {
        entries.iter().collect()
    } else {
        let pos = if scheme == Scheme::Table5 {
            index * lotflow_core::gen::TABLE5_REPLICATES as usize
        } else {
            index
        };
        vec![entries
            .get(pos)
            .ok_or_else(|| Error::Config(format!("grid index {index} out of range")))?]
    };
    let mut paths = Vec::with_capacity(chosen.len());
    for e in chosen {
        let inst = e.instance.as_ref().map_err(|err| Error::Config(err.to_string()))?;
        let path = out.join(&e.name);
        fs::write(&path, inst.to_json())?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub seed: u64,
    pub oracle: bool,
    pub oracle_max_t: usize,
    /// Run only the first `limit` grid entries.
    pub limit: Option<usize>,
}

fn bench_row(e: &GridEntry, opts: &BenchOptions) -> Row {
    let mut row = Row {
        id: e.id,
        instance: e.name.trim_end_matches(".json").to_string(),
        horizon: 0,
        beta: 0.0,
        factors: e.factors.clone(),
        frh_objective: None,
        oracle_objective: None,
        deviation: None,
        lp_count: None,
        frh_ms: 0.0,
        oracle_ms: None,
        error: None,
    };
    let inst = match &e.instance {
        Ok(i) => i,
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.horizon = inst.horizon;
    row.beta = inst.goodwill_loss;
    let start = Instant::now();
    let frh = solve_frh(inst);
    row.frh_ms = start.elapsed().as_secs_f64() * 1e3;
    let frh = match frh {
        Ok(s) => s,
        Err(err) => {
            row.error = Some(format!("frh: {err}"));
            return row;
        }
    };
    row.frh_objective = Some(frh.objective);
    row.lp_count = Some(frh.lp_count);
    if opts.oracle && inst.horizon <= opts.oracle_max_t {
        let cfg = OracleConfig {
            max_t: opts.oracle_max_t,
            ..OracleConfig::default()
        };
        let start = Instant::now();
        let exact = solve_exact(inst, &cfg);
        row.oracle_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        match exact {
            Ok(s) => {
                row.oracle_objective = Some(s.objective);
                row.deviation = Some(relative_deviation(s.objective, frh.objective));
            }
            Err(err) => row.error = Some(format!("oracle: {err}")),
        }
    }
    row
}

/// Run the heuristic (and optionally the oracle) over a scheme's grid.
/// Rows keep grid order whatever the completion order.
pub fn cmd_bench(scheme: Scheme, opts: &BenchOptions) -> RunReport {
    let entries = grid(scheme, opts.seed);
    let grid_size = entries.len();
    let take = opts.limit.unwrap_or(grid_size).min(grid_size);
    let rows: Vec<Row> = entries[..take].par_iter().map(|e| bench_row(e, opts)).collect();
    let pivots = pivot(&rows, pivot_factors(scheme));
    RunReport {
        scheme: scheme.name().to_string(),
        seed: opts.seed,
        grid_size,
        oracle_max_t: opts.oracle.then_some(opts.oracle_max_t),
        rows,
        pivots,
    }
}

/// Size the global worker pool from `LOTFLOW_THREADS` when set.
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("LOTFLOW_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // Fails only if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

//! Seeded instance generators: the fixed twelve-period illustration and the
//! two randomized factorial schemes.
//!
//! Every random field draws from its own ChaCha8 stream of the same seed, so
//! two configurations that differ in one factor share all other draws.
//! Drawn values are rounded to cents.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Instance;

const DEMAND_STREAM: u64 = 1;
const PRICE_STREAM: u64 = 2;
const COST_STREAM: u64 = 3;
const HOLDING_STREAM: u64 = 4;
const FACTOR_STREAM: u64 = 5;

/// Setup cost used by both random schemes.
pub const SETUP_COST: f64 = 1000.0;
/// Loan terms of the random schemes.
pub const LOAN: f64 = 2000.0;
pub const LOAN_PERIODS: usize = 6;

/// The twelve-period illustration with `β = 0.5`; capital terms supplied by the caller.
pub fn gen_table1(own_capital: f64, loan: f64, loan_periods: usize, rate: f64) -> Instance {
    Instance {
        horizon: 12,
        demand: vec![30., 45., 50., 55., 45., 55., 90., 80., 90., 65., 80., 70.],
        price: vec![21., 22., 20., 15., 10., 8., 5., 10., 18., 10., 14., 18.],
        unit_cost: vec![5., 13., 10., 10., 10., 10., 10., 10., 10., 10., 10., 10.],
        holding_cost: vec![10., 5., 5., 5., 5., 5., 5., 5., 5., 5., 5., 5.],
        setup_cost: vec![100.0; 12],
        own_capital,
        loan,
        loan_periods,
        interest_rate: rate,
        goodwill_loss: 0.5,
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn cents(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn season(t: usize) -> f64 {
    (2.0 * PI * t as f64 / 12.0).sin()
}

/// Normal draws rounded to cents; negative draws (and zero ones unless
/// `allow_zero`) are resampled.
fn truncated_normal(rng: &mut ChaCha8Rng, mean: f64, sd: f64, allow_zero: bool, count: usize) -> Vec<f64> {
    let dist = Normal::new(mean, sd).expect("finite positive standard deviation");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = cents(dist.sample(rng));
        if x > 0.0 || (allow_zero && x == 0.0) {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DemandMode {
    /// Mean 150.
    Exponential,
    /// Mean 150, variance 1600.
    Normal,
    /// Uniform on {30, 40, …, 270}.
    DiscreteUniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CostMode {
    /// `c = 13`, `h = 1`.
    Constant,
    /// `c_t = 13 + 3 sin(2πt/12)`, `h_t = 1 + 0.5 sin(2πt/12)`.
    Seasonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PriceMode {
    /// Uniform on {15, 20, 25}.
    DiscreteUniform,
    /// `p_t = 20 + 5 sin(2πt/12)`.
    Seasonal,
}

/// Own capital covers the first two or three periods of demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CapitalMode {
    TwoPeriods,
    ThreePeriods,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoanMode {
    None,
    /// `B_L = 2000`, `r = 0.05`, repaid after six periods (or at the horizon if shorter).
    Loan,
}

pub const TABLE2_HORIZONS: [usize; 6] = [12, 24, 36, 48, 60, 72];
pub const TABLE2_BETAS: [f64; 3] = [0.0, 0.1, 0.5];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Config {
    pub horizon: usize,
    pub demand: DemandMode,
    pub cost: CostMode,
    pub price: PriceMode,
    pub capital: CapitalMode,
    pub loan: LoanMode,
    pub beta: f64,
    pub seed: u64,
}

impl Table2Config {
    /// Horizons off the grid are accepted as long as the capital rule has
    /// enough periods; the loan is then repaid at `min(6, T)`.
    pub fn validate(&self) -> Result<()> {
        let needed = match self.capital {
            CapitalMode::TwoPeriods => 2,
            CapitalMode::ThreePeriods => 3,
        };
        if self.horizon < needed {
            return Err(Error::Config(format!(
                "capital rule {:?} needs T ≥ {needed}, got {}",
                self.capital, self.horizon
            )));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Config(format!("beta = {} outside [0, 1]", self.beta)));
        }
        Ok(())
    }
}

pub fn gen_table2(cfg: &Table2Config) -> Result<Instance> {
    cfg.validate()?;
    let t = cfg.horizon;
    let mut rng = rng_for(cfg.seed, DEMAND_STREAM);
    let demand: Vec<f64> = match cfg.demand {
        DemandMode::Exponential => {
            let dist = Exp::new(1.0 / 150.0).expect("positive rate");
            (0..t).map(|_| cents(dist.sample(&mut rng))).collect()
        }
        DemandMode::Normal => truncated_normal(&mut rng, 150.0, 40.0, true, t),
        DemandMode::DiscreteUniform => (0..t)
            .map(|_| 30.0 + 10.0 * rng.random_range(0..25u32) as f64)
            .collect(),
    };
    let (unit_cost, holding_cost) = match cfg.cost {
        CostMode::Constant => (vec![13.0; t], vec![1.0; t]),
        CostMode::Seasonal => (
            (1..=t).map(|i| cents(13.0 + 3.0 * season(i))).collect(),
            (1..=t).map(|i| cents(1.0 + 0.5 * season(i))).collect(),
        ),
    };
    let price: Vec<f64> = match cfg.price {
        PriceMode::DiscreteUniform => {
            let mut rng = rng_for(cfg.seed, PRICE_STREAM);
            (0..t)
                .map(|_| [15.0, 20.0, 25.0][rng.random_range(0..3usize)])
                .collect()
        }
        PriceMode::Seasonal => (1..=t).map(|i| cents(20.0 + 5.0 * season(i))).collect(),
    };
    let setup_cost = vec![SETUP_COST; t];
    let own_capital = match cfg.capital {
        CapitalMode::TwoPeriods => setup_cost[0] + unit_cost[0] * (demand[0] + demand[1]),
        CapitalMode::ThreePeriods => {
            setup_cost[0] + unit_cost[0] * (demand[0] + demand[1] + demand[2])
        }
    };
    let (loan, loan_periods, interest_rate) = match cfg.loan {
        LoanMode::None => (0.0, 0, 0.0),
        LoanMode::Loan => (LOAN, LOAN_PERIODS.min(t), 0.05),
    };
    Instance {
        horizon: t,
        demand,
        price,
        unit_cost,
        holding_cost,
        setup_cost,
        own_capital,
        loan,
        loan_periods,
        interest_rate,
        goodwill_loss: cfg.beta,
    }
    .validated()
}

/// A configuration with every categorical factor drawn uniformly from the
/// factor stream of `seed`; used for small-horizon randomized checks.
pub fn sampled_table2(seed: u64, horizon: usize, beta: f64) -> Table2Config {
    let mut rng = rng_for(seed, FACTOR_STREAM);
    Table2Config {
        horizon,
        demand: [DemandMode::Exponential, DemandMode::Normal, DemandMode::DiscreteUniform][rng.random_range(0..3usize)],
        cost: if rng.random_bool(0.5) { CostMode::Seasonal } else { CostMode::Constant },
        price: if rng.random_bool(0.5) { PriceMode::Seasonal } else { PriceMode::DiscreteUniform },
        capital: if rng.random_bool(0.5) { CapitalMode::ThreePeriods } else { CapitalMode::TwoPeriods },
        loan: if rng.random_bool(0.5) { LoanMode::Loan } else { LoanMode::None },
        beta,
        seed,
    }
}

/// Full factorial in the order T, demand, cost, price, capital, loan, β
/// (last factor varies fastest); 864 configurations.
pub fn table2_grid(seed: u64) -> Vec<Table2Config> {
    let mut out = Vec::with_capacity(864);
    for &horizon in &TABLE2_HORIZONS {
        for demand in [DemandMode::Exponential, DemandMode::Normal, DemandMode::DiscreteUniform] {
            for cost in [CostMode::Constant, CostMode::Seasonal] {
                for price in [PriceMode::DiscreteUniform, PriceMode::Seasonal] {
                    for capital in [CapitalMode::TwoPeriods, CapitalMode::ThreePeriods] {
                        for loan in [LoanMode::None, LoanMode::Loan] {
                            for &beta in &TABLE2_BETAS {
                                out.push(Table2Config {
                                    horizon,
                                    demand,
                                    cost,
                                    price,
                                    capital,
                                    loan,
                                    beta,
                                    seed,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Low,
    High,
}

impl Level {
    fn pick<T>(self, low: T, high: T) -> T {
        match self {
            Level::Low => low,
            Level::High => high,
        }
    }
}

/// Two-level factors of the second experiment; `T = 12`, `B_L = 2000`,
/// `T_L = 6`, `s = 1000` throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table5Config {
    /// Demand standard deviation 10 / 50 around 150.
    pub demand: Level,
    /// Unit cost standard deviation 1 / 5 around 13.
    pub unit_cost: Level,
    /// Holding cost standard deviation 0.5 / 2.5 around 5.
    pub holding: Level,
    /// Price standard deviation 1 / 5 around 20.
    pub price: Level,
    /// Own capital covering two / five periods of demand.
    pub capital: Level,
    /// Interest rate 0.02 / 0.05.
    pub rate: Level,
    /// Goodwill loss 0.10 / 0.50.
    pub beta: Level,
    pub seed: u64,
}

impl Table5Config {
    /// The seven factors in grid order.
    pub fn levels(&self) -> [(&'static str, Level); 7] {
        [
            ("demand", self.demand),
            ("unit_cost", self.unit_cost),
            ("holding", self.holding),
            ("price", self.price),
            ("capital", self.capital),
            ("rate", self.rate),
            ("beta", self.beta),
        ]
    }
}

pub const TABLE5_HORIZON: usize = 12;
pub const TABLE5_REPLICATES: u64 = 10;

pub fn gen_table5(cfg: &Table5Config) -> Result<Instance> {
    let t = TABLE5_HORIZON;
    let demand = truncated_normal(
        &mut rng_for(cfg.seed, DEMAND_STREAM),
        150.0,
        cfg.demand.pick(10.0, 50.0),
        true,
        t,
    );
    // Unit cost must stay strictly positive.
    let unit_cost = truncated_normal(
        &mut rng_for(cfg.seed, COST_STREAM),
        13.0,
        cfg.unit_cost.pick(1.0, 5.0),
        false,
        t,
    );
    let holding_cost = truncated_normal(
        &mut rng_for(cfg.seed, HOLDING_STREAM),
        5.0,
        cfg.holding.pick(0.5, 2.5),
        true,
        t,
    );
    let price = truncated_normal(
        &mut rng_for(cfg.seed, PRICE_STREAM),
        20.0,
        cfg.price.pick(1.0, 5.0),
        true,
        t,
    );
    let setup_cost = vec![SETUP_COST; t];
    let covered = cfg.capital.pick(2, 5);
    let own_capital = setup_cost[0] + unit_cost[0] * demand[..covered].iter().sum::<f64>();
    Instance {
        horizon: t,
        demand,
        price,
        unit_cost,
        holding_cost,
        setup_cost,
        own_capital,
        loan: LOAN,
        loan_periods: LOAN_PERIODS,
        interest_rate: cfg.rate.pick(0.02, 0.05),
        goodwill_loss: cfg.beta.pick(0.10, 0.50),
    }
    .validated()
}

/// 2^7 level combinations (binary counting, demand most significant, β
/// least), each with replicate seeds `seed, seed + 1, …, seed + 9`;
/// configurations vary slowest. 1280 entries.
pub fn table5_grid(seed: u64) -> Vec<Table5Config> {
    let lvl = |bits: u32, k: u32| if bits >> (6 - k) & 1 == 1 { Level::High } else { Level::Low };
    let mut out = Vec::with_capacity(1280);
    for bits in 0..128u32 {
        for rep in 0..TABLE5_REPLICATES {
            out.push(Table5Config {
                demand: lvl(bits, 0),
                unit_cost: lvl(bits, 1),
                holding: lvl(bits, 2),
                price: lvl(bits, 3),
                capital: lvl(bits, 4),
                rate: lvl(bits, 5),
                beta: lvl(bits, 6),
                seed: seed.wrapping_add(rep),
            });
        }
    }
    out
}

/// `<scheme>-<grid-index>-<seed>.json`
pub fn instance_file_name(scheme: &str, index: usize, seed: u64) -> String {
    format!("{scheme}-{index}-{seed}.json")
}

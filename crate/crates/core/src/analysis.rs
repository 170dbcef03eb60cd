//! One full solve: series, resummation, diagnostics and optional oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::Result;
use crate::leading::QuantumState;
use crate::numeric::{Precision, Real};
use crate::oracle::{auto_grid, oracle_eigenvalue, OracleResult};
use crate::potential::PotentialExpr;
use crate::resum::{pade_staircase, stabilization, PadeStaircase, StabilizationReport};
use crate::series::{energy_series, optimal_truncation, EnergySeries, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub order: usize,
    pub prec: Precision,
    pub digits: usize,
    pub oracle: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            order: crate::series::DEFAULT_ORDER,
            prec: Precision::default(),
            digits: crate::resum::DEFAULT_DIGITS,
            oracle: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis<T> {
    pub potential: PotentialExpr,
    pub state: QuantumState,
    pub series: EnergySeries<T>,
    pub staircase: PadeStaircase<T>,
    pub series_stab: StabilizationReport<T>,
    pub truncation: Truncation<T>,
    pub oracle: Option<OracleResult>,
    pub timings_ms: BTreeMap<String, f64>,
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn analyze<T: Real>(pot: &PotentialExpr, state: &QuantumState, opts: &SolveOptions) -> Result<Analysis<T>> {
    let mut timings_ms = BTreeMap::new();

    let t = Instant::now();
    let series: EnergySeries<T> = energy_series(pot, state, opts.order, opts.prec)?;
    timings_ms.insert("series".to_string(), elapsed_ms(t));

    let t = Instant::now();
    let staircase = pade_staircase(&series, opts.digits);
    let series_stab = stabilization(&series.partials, opts.digits, opts.prec);
    let truncation = optimal_truncation(&series);
    timings_ms.insert("resummation".to_string(), elapsed_ms(t));

    let oracle = if opts.oracle {
        let t = Instant::now();
        let grid = auto_grid(pot, state)?;
        let result = oracle_eigenvalue(pot, state, &grid)?;
        timings_ms.insert("oracle".to_string(), elapsed_ms(t));
        Some(result)
    } else {
        None
    };

    Ok(Analysis {
        potential: pot.clone(),
        state: state.clone(),
        series,
        staircase,
        series_stab,
        truncation,
        oracle,
        timings_ms,
    })
}

//! Simulation of the reflected process: an exact sampler for the straddling
//! excursion, reflected Euler paths with local-time and excursion bookkeeping,
//! and Williams-pair excursions built from the upward-conditioned process.
//!
//! Work is split into fixed-size chunks, each drawing from its own
//! [`RandomStream`] id, so results do not depend on the number of threads.

mod euler;
mod exact;
mod stats;
mod williams;

pub use euler::{
    count_excursion_maxima, estimate_local_time, excursion_max_rate, run_reflected_euler, sample_straddle_euler,
    simulate_reflected_euler, EulerStep, Excursion, MaxRateEstimate, PathRecord, MAX_STORED_STEPS,
};
pub use exact::{sample_straddle_exact, straddle_exact_one};
pub use stats::{chi_square_pvalue, ks_statistic, ks_two_sample, mean_and_stderr};
pub use williams::{mean_upward_hitting_time, sample_williams_pair, williams_durations, WilliamsPath};

use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::Model;
use crate::error::{Error, Result};
use crate::numerics::RandomStream;

/// Samples of the straddling excursion at an independent `T ~ Exp(α)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McBatch {
    pub alpha: f64,
    pub gamma: f64,
    pub seed: u64,
    pub g: Vec<f64>,
    pub t_minus_g: Vec<f64>,
    pub d_minus_t: Vec<f64>,
    pub delta: Vec<f64>,
}

impl McBatch {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    fn from_rows(alpha: f64, gamma: f64, seed: u64, rows: Vec<[f64; 3]>) -> Self {
        let n = rows.len();
        let mut batch = McBatch {
            alpha,
            gamma,
            seed,
            g: Vec::with_capacity(n),
            t_minus_g: Vec::with_capacity(n),
            d_minus_t: Vec::with_capacity(n),
            delta: Vec::with_capacity(n),
        };
        for [g, tg, dt] in rows {
            batch.g.push(g);
            batch.t_minus_g.push(tg);
            batch.d_minus_t.push(dt);
            batch.delta.push(tg + dt);
        }
        batch
    }
}

/// Model with drift rate `gamma`, where `gamma = 0` is reflected Brownian motion.
pub fn model_for_gamma(gamma: f64) -> Result<Model> {
    if gamma == 0.0 {
        Ok(Model::bm())
    } else {
        Model::ou(gamma)
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("gamma must be finite and >= 0, got {gamma}")))
    }
}

/// Runs `n` draws split into chunks of `chunk` draws, chunk `k` on stream `k`.
pub(crate) fn chunked<T, F>(n: usize, chunk: usize, seed: u64, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RandomStream) -> Result<T> + Sync,
{
    let chunks = n.div_ceil(chunk);
    let parts: Vec<Result<Vec<T>>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = RandomStream::new(seed, k as u64);
            let len = chunk.min(n - k * chunk);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

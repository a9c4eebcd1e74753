use rayon::prelude::*;
use serde::Serialize;

use super::{check_gamma, chunked, model_for_gamma, McBatch};
use crate::diffusion::Diffusion;
use crate::error::{require_positive, Error, Result};
use crate::numerics::RandomStream;

/// Largest path length kept in memory by [`simulate_reflected_euler`].
pub const MAX_STORED_STEPS: u64 = 10_000_000;

/// Per-sample step budget of the Euler straddle route.
const STRADDLE_STEP_BUDGET: u64 = 500_000_000;

const STRADDLE_CHUNK: usize = 128;

/// Reflected Euler step `x ↦ |x − γx dt + √dt Z|`.
#[derive(Debug, Clone, Copy)]
pub struct EulerStep {
    pub gamma: f64,
    pub dt: f64,
    contraction: f64,
    sqrt_dt: f64,
}

impl EulerStep {
    pub fn new(gamma: f64, dt: f64) -> Result<Self> {
        check_gamma(gamma)?;
        require_positive("EulerStep", "dt", dt)?;
        if dt > 1e-3 {
            return Err(Error::Parameter(format!("dt must be <= 1e-3, got {dt}")));
        }
        Ok(Self {
            gamma,
            dt,
            contraction: 1.0 - gamma * dt,
            sqrt_dt: dt.sqrt(),
        })
    }

    #[inline]
    pub fn step(&self, x: f64, z: f64) -> f64 {
        (x * self.contraction + self.sqrt_dt * z).abs()
    }

    /// Zero-detection band `2√dt`.
    pub fn zero_band(&self) -> f64 {
        2.0 * self.sqrt_dt
    }
}

/// Runs a reflected Euler path from 0 over `[0, horizon]`, calling
/// `observe(k, x_k)` for every step `k ≥ 1`. Returns the number of steps.
pub fn run_reflected_euler<F: FnMut(u64, f64)>(
    scheme: &EulerStep,
    horizon: f64,
    rng: &mut RandomStream,
    mut observe: F,
) -> Result<u64> {
    require_positive("run_reflected_euler", "horizon", horizon)?;
    let steps = (horizon / scheme.dt).round() as u64;
    let mut x = 0.0;
    for k in 1..=steps {
        x = scheme.step(x, rng.draw_normal());
        observe(k, x);
    }
    Ok(steps)
}

/// A completed excursion away from the zero band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Excursion {
    pub start: f64,
    pub end: f64,
    pub max: f64,
}

/// Tracks excursions away from `[0, ε)` along a discretized path.
#[derive(Debug, Clone)]
struct BandTracker {
    eps: f64,
    last_band_time: f64,
    open: bool,
    max: f64,
}

impl BandTracker {
    fn new(eps: f64) -> Self {
        Self {
            eps,
            last_band_time: 0.0,
            open: false,
            max: 0.0,
        }
    }

    #[inline]
    fn update(&mut self, t: f64, x: f64) -> Option<Excursion> {
        if x < self.eps {
            let done = self.open.then_some(Excursion {
                start: self.last_band_time,
                end: t,
                max: self.max,
            });
            self.open = false;
            self.last_band_time = t;
            done
        } else {
            if !self.open {
                self.open = true;
                self.max = x;
            } else if x > self.max {
                self.max = x;
            }
            None
        }
    }
}

/// Discretized reflected path with its excursions and a local-time estimate.
#[derive(Debug, Clone, Serialize)]
pub struct PathRecord {
    pub gamma: f64,
    pub dt: f64,
    pub horizon: f64,
    /// Positions at times `k·dt`, `k = 0, 1, …`.
    pub x: Vec<f64>,
    /// Local time at 0 estimated with the default band.
    pub local_time: Vec<f64>,
    pub excursions: Vec<Excursion>,
}

/// Default occupation band for local-time estimates.
fn default_band(dt: f64) -> f64 {
    (2.0 * dt.sqrt()).clamp(0.05, 0.1)
}

/// Simulates and stores a reflected Euler path (`gamma = 0` for Brownian motion).
pub fn simulate_reflected_euler(gamma: f64, dt: f64, horizon: f64, seed: u64) -> Result<PathRecord> {
    let scheme = EulerStep::new(gamma, dt)?;
    require_positive("simulate_reflected_euler", "horizon", horizon)?;
    let steps = (horizon / dt).round() as u64;
    if steps > MAX_STORED_STEPS {
        return Err(Error::Budget {
            op: "simulate_reflected_euler",
            budget: MAX_STORED_STEPS,
        });
    }
    let mut rng = RandomStream::new(seed, 0);
    let mut x = Vec::with_capacity(steps as usize + 1);
    x.push(0.0);
    let mut tracker = BandTracker::new(scheme.zero_band());
    let mut excursions = Vec::new();
    run_reflected_euler(&scheme, horizon, &mut rng, |k, v| {
        x.push(v);
        if let Some(e) = tracker.update(k as f64 * dt, v) {
            excursions.push(e);
        }
    })?;
    let mut path = PathRecord {
        gamma,
        dt,
        horizon,
        x,
        local_time: Vec::new(),
        excursions,
    };
    path.local_time = estimate_local_time(&path, default_band(dt))?;
    Ok(path)
}

/// `L̂_t = m((0, δ))⁻¹ Σ dt·1{x < δ}` at every grid time.
pub fn estimate_local_time(path: &PathRecord, delta_band: f64) -> Result<Vec<f64>> {
    let lo = 2.0 * path.dt.sqrt();
    if !(delta_band >= lo * (1.0 - 1e-12) && delta_band <= 0.1) {
        return Err(Error::Parameter(format!(
            "delta_band must lie in [{lo}, 0.1] for dt = {}, got {delta_band}",
            path.dt
        )));
    }
    let weight = path.dt / model_for_gamma(path.gamma)?.speed_mass_below(delta_band);
    let mut acc = 0.0;
    Ok(path
        .x
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            if k > 0 && x < delta_band {
                acc += weight;
            }
            acc
        })
        .collect())
}

/// Completed excursions with maximum at least `a`, per unit of local time.
pub fn count_excursion_maxima(path: &PathRecord, a: f64, local_time: f64) -> Result<f64> {
    require_positive("count_excursion_maxima", "a", a)?;
    if !(local_time > 0.0) {
        return Err(Error::Parameter("local time must be > 0".into()));
    }
    let n = path.excursions.iter().filter(|e| e.max >= a).count();
    Ok(n as f64 / local_time)
}

/// Pooled excursion counts and local time from streaming Euler paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxRateEstimate {
    pub levels: Vec<f64>,
    pub counts: Vec<u64>,
    pub local_time: f64,
    pub paths: usize,
    pub steps: u64,
}

impl MaxRateEstimate {
    /// Estimates of `n(M ≥ a)` for each level.
    pub fn rates(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.local_time).collect()
    }
}

/// Estimates `n(M ≥ a) = 1/S(a)` from `n_paths` independent Euler paths of
/// length `horizon` without storing them. Path `i` uses stream `i`.
pub fn excursion_max_rate(
    gamma: f64,
    dt: f64,
    horizon: f64,
    levels: &[f64],
    delta_band: f64,
    seed: u64,
    n_paths: usize,
) -> Result<MaxRateEstimate> {
    let scheme = EulerStep::new(gamma, dt)?;
    for &a in levels {
        require_positive("excursion_max_rate", "level", a)?;
    }
    if n_paths == 0 {
        return Err(Error::Parameter("n_paths must be >= 1".into()));
    }
    if !(delta_band >= scheme.zero_band() * (1.0 - 1e-12) && delta_band <= 0.1) {
        return Err(Error::Parameter(format!("delta_band {delta_band} outside [2√dt, 0.1]")));
    }
    let weight = dt / model_for_gamma(gamma)?.speed_mass_below(delta_band);
    let per_path: Vec<Result<(Vec<u64>, f64, u64)>> = (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomStream::new(seed, i as u64);
            let mut tracker = BandTracker::new(scheme.zero_band());
            let mut counts = vec![0u64; levels.len()];
            let mut occupation = 0u64;
            let steps = run_reflected_euler(&scheme, horizon, &mut rng, |k, x| {
                if x < delta_band {
                    occupation += 1;
                }
                if let Some(e) = tracker.update(k as f64 * dt, x) {
                    for (c, &a) in counts.iter_mut().zip(levels) {
                        if e.max >= a {
                            *c += 1;
                        }
                    }
                }
            })?;
            Ok((counts, occupation as f64 * weight, steps))
        })
        .collect();
    let mut out = MaxRateEstimate {
        levels: levels.to_vec(),
        counts: vec![0; levels.len()],
        local_time: 0.0,
        paths: n_paths,
        steps: 0,
    };
    for r in per_path {
        let (counts, lt, steps) = r?;
        for (acc, c) in out.counts.iter_mut().zip(counts) {
            *acc += c;
        }
        out.local_time += lt;
        out.steps += steps;
    }
    if !(out.local_time > 0.0) {
        return Err(Error::Parameter("no local time accumulated; horizon too short".into()));
    }
    Ok(out)
}

/// Straddling excursion read off reflected Euler paths: `G_T` is the last grid
/// time in the zero band at or before `T`, `D_T` the first one after `T`.
pub fn sample_straddle_euler(gamma: f64, alpha: f64, n: usize, dt: f64, seed: u64) -> Result<McBatch> {
    let scheme = EulerStep::new(gamma, dt)?;
    require_positive("sample_straddle_euler", "alpha", alpha)?;
    if n == 0 {
        return Err(Error::Parameter("sample count must be >= 1".into()));
    }
    let eps = scheme.zero_band();
    let rows = chunked(n, STRADDLE_CHUNK, seed, |rng| {
        let t = rng.draw_exponential(alpha);
        let mut x = 0.0;
        let mut k = 0u64;
        let mut last_zero = 0.0;
        loop {
            let tk = (k + 1) as f64 * dt;
            if tk > t {
                break;
            }
            k += 1;
            x = scheme.step(x, rng.draw_normal());
            if x < eps {
                last_zero = tk;
            }
        }
        loop {
            k += 1;
            if k > STRADDLE_STEP_BUDGET {
                return Err(Error::Budget {
                    op: "sample_straddle_euler",
                    budget: STRADDLE_STEP_BUDGET,
                });
            }
            x = scheme.step(x, rng.draw_normal());
            if x < eps {
                break;
            }
        }
        let d = k as f64 * dt;
        Ok([last_zero, t - last_zero, d - t])
    })?;
    Ok(McBatch::from_rows(alpha, gamma, seed, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_validation() {
        assert!(EulerStep::new(1.0, 1e-2).is_err());
        assert!(EulerStep::new(-1.0, 1e-4).is_err());
        assert!(EulerStep::new(1.0, 0.0).is_err());
        let s = EulerStep::new(1.0, 1e-4).unwrap();
        assert!((s.zero_band() - 0.02).abs() < 1e-15);
        assert_eq!(s.step(0.0, -1.0), 0.01);
    }

    #[test]
    fn stored_path_invariants() {
        let p = simulate_reflected_euler(1.0, 1e-3, 50.0, 1).unwrap();
        assert_eq!(p.x.len(), 50_001);
        assert!(p.x.iter().all(|&x| x >= 0.0));
        assert!(p.local_time.windows(2).all(|w| w[1] >= w[0]));
        for w in p.excursions.windows(2) {
            assert!(w[0].end <= w[1].start);
        }
        assert!(p.excursions.iter().all(|e| e.max > 0.0 && e.end > e.start));
        let q = simulate_reflected_euler(1.0, 1e-3, 50.0, 1).unwrap();
        assert_eq!(p.x, q.x);
        assert!(matches!(
            simulate_reflected_euler(1.0, 1e-4, 2000.0, 1),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn local_time_band_validation() {
        let p = simulate_reflected_euler(1.0, 1e-4, 1.0, 2).unwrap();
        assert!(estimate_local_time(&p, 0.001).is_err());
        assert!(estimate_local_time(&p, 0.2).is_err());
        assert!(estimate_local_time(&p, 0.05).is_ok());
        assert!(count_excursion_maxima(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn euler_straddle_ordering() {
        let b = sample_straddle_euler(1.0, 1.0, 50, 1e-3, 4).unwrap();
        for i in 0..b.len() {
            assert!(b.g[i] >= 0.0 && b.t_minus_g[i] >= 0.0 && b.d_minus_t[i] > 0.0);
        }
        assert_eq!(b, sample_straddle_euler(1.0, 1.0, 50, 1e-3, 4).unwrap());
    }

    #[test]
    fn max_rate_is_monotone_in_level() {
        let est = excursion_max_rate(1.0, 1e-3, 200.0, &[0.5, 1.0, 2.0], 0.07, 9, 2).unwrap();
        assert!(est.counts[0] >= est.counts[1] && est.counts[1] >= est.counts[2]);
        assert!(est.local_time > 0.0);
        assert!(excursion_max_rate(1.0, 1e-3, 10.0, &[1.0], 0.2, 9, 1).is_err());
    }
}

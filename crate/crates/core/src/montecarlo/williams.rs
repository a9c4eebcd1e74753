use serde::Serialize;

use super::{check_gamma, chunked, model_for_gamma};
use crate::diffusion::{Diffusion, Model};
use crate::error::{require_positive, Error, Result};
use crate::numerics::{Quadrature, RandomStream};

/// Step budget for a single upward-conditioned leg.
const LEG_STEP_BUDGET: u64 = 100_000_000;

const CHUNK: usize = 64;

/// Excursion-shaped path built from two upward-conditioned legs put back to back.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilliamsPath {
    pub gamma: f64,
    pub level: f64,
    pub dt: f64,
    /// Positions on the grid `k·dt`; the first and last entries are 0.
    pub x: Vec<f64>,
    /// Hitting times of `level` by the rising and the reversed leg.
    pub legs: [f64; 2],
}

impl WilliamsPath {
    pub fn duration(&self) -> f64 {
        self.legs[0] + self.legs[1]
    }

    pub fn max(&self) -> f64 {
        self.x.iter().copied().fold(0.0, f64::max)
    }
}

struct UpwardStep {
    model: Model,
    dt: f64,
    sqrt_dt: f64,
}

impl UpwardStep {
    fn new(gamma: f64, dt: f64) -> Result<Self> {
        check_gamma(gamma)?;
        require_positive("sample_williams_pair", "dt", dt)?;
        if dt > 1e-3 {
            return Err(Error::Parameter(format!("dt must be <= 1e-3, got {dt}")));
        }
        Ok(Self {
            model: model_for_gamma(gamma)?,
            dt,
            sqrt_dt: dt.sqrt(),
        })
    }

    /// The `1/x` pole is taken implicitly (`y = c + dt/y`), the smooth remainder
    /// of the drift explicitly, so the iterate stays positive.
    fn step(&self, x: f64, z: f64) -> Result<f64> {
        let smooth = self.model.upward_drift(x)? - 1.0 / x;
        let c = x + self.sqrt_dt * z + self.dt * smooth;
        Ok(0.5 * (c + (c * c + 4.0 * self.dt).sqrt()))
    }

    /// Path from `x0` until the first grid point at or above `a`, which is set to `a`.
    fn leg(&self, a: f64, x0: f64, rng: &mut RandomStream, keep: bool) -> Result<(Vec<f64>, f64)> {
        let mut x = x0;
        let mut path = if keep { vec![x0] } else { Vec::new() };
        let mut k = 0u64;
        while x < a {
            k += 1;
            if k > LEG_STEP_BUDGET {
                return Err(Error::Budget {
                    op: "sample_williams_pair",
                    budget: LEG_STEP_BUDGET,
                });
            }
            x = self.step(x, rng.draw_normal())?;
            if keep {
                path.push(x.min(a));
            }
        }
        Ok((path, k as f64 * self.dt))
    }
}

fn check_levels(a: f64, x0: f64) -> Result<()> {
    require_positive("sample_williams_pair", "x0_start", x0)?;
    if !(a > x0) || !a.is_finite() {
        return Err(Error::Parameter(format!("need a > x0_start > 0, got a = {a}, x0_start = {x0}")));
    }
    Ok(())
}

/// Two independent upward-conditioned paths from `x0_start` run until they hit
/// `a`; the second is reversed and appended to the first.
pub fn sample_williams_pair(gamma: f64, a: f64, x0_start: f64, dt: f64, seed: u64) -> Result<WilliamsPath> {
    let stepper = UpwardStep::new(gamma, dt)?;
    check_levels(a, x0_start)?;
    let mut rng = RandomStream::new(seed, 0);
    let (mut up, h1) = stepper.leg(a, x0_start, &mut rng, true)?;
    let (down, h2) = stepper.leg(a, x0_start, &mut rng, true)?;
    let mut x = Vec::with_capacity(up.len() + down.len() + 1);
    x.push(0.0);
    x.append(&mut up);
    x.extend(down.iter().rev().skip(1));
    x.push(0.0);
    Ok(WilliamsPath {
        gamma,
        level: a,
        dt,
        x,
        legs: [h1, h2],
    })
}

/// Durations of `n` independent Williams pairs at level `a`.
pub fn williams_durations(gamma: f64, a: f64, x0_start: f64, dt: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    let stepper = UpwardStep::new(gamma, dt)?;
    check_levels(a, x0_start)?;
    if n == 0 {
        return Err(Error::Parameter("sample count must be >= 1".into()));
    }
    chunked(n, CHUNK, seed, |rng| {
        let (_, h1) = stepper.leg(a, x0_start, rng, false)?;
        let (_, h2) = stepper.leg(a, x0_start, rng, false)?;
        Ok(h1 + h2)
    })
}

/// `E↑₀[H_a] = ∫₀^a S(y)(1 − S(y)/S(a)) m(dy)`, the mean hitting time of `a` by
/// the upward-conditioned process started at 0.
pub fn mean_upward_hitting_time(model: &Model, a: f64) -> Result<f64> {
    require_positive("mean_upward_hitting_time", "a", a)?;
    let sa = model.scale(a)?;
    Quadrature::new(1e-13).rel_tol(1e-12).integrate(
        |y| {
            let s = model.scale(y).unwrap_or(f64::NAN);
            s * (1.0 - s / sa) * model.speed_density(y)
        },
        0.0,
        a,
    )
    .into_result("mean_upward_hitting_time")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::mean_and_stderr;

    #[test]
    fn pair_shape() {
        let p = sample_williams_pair(1.0, 1.0, 1e-4, 1e-4, 3).unwrap();
        assert_eq!(p.x[0], 0.0);
        assert_eq!(*p.x.last().unwrap(), 0.0);
        assert_eq!(p.x[1], 1e-4);
        assert_eq!(p.x[p.x.len() - 2], 1e-4);
        assert_eq!(p.max(), 1.0);
        assert!(p.x.iter().all(|&x| x >= 0.0));
        let steps = (p.x.len() - 3) as f64;
        assert!((steps * p.dt - p.duration()).abs() < 1e-9);
        assert_eq!(p, sample_williams_pair(1.0, 1.0, 1e-4, 1e-4, 3).unwrap());
    }

    #[test]
    fn argument_checks() {
        assert!(sample_williams_pair(1.0, 1e-4, 1e-4, 1e-4, 1).is_err());
        assert!(sample_williams_pair(1.0, 1.0, 0.0, 1e-4, 1).is_err());
        assert!(sample_williams_pair(1.0, 1.0, 1e-4, 1e-2, 1).is_err());
        assert!(williams_durations(1.0, 1.0, 1e-4, 1e-4, 0, 1).is_err());
    }

    #[test]
    fn hitting_time_oracle() {
        let bm = Model::bm();
        for a in [0.5f64, 1.0, 2.0] {
            let v = mean_upward_hitting_time(&bm, a).unwrap();
            assert!((v - a * a / 3.0).abs() < 1e-12, "{a}: {v}");
        }
        let ou = Model::ou(1.0).unwrap();
        let v = mean_upward_hitting_time(&ou, 1.0).unwrap();
        assert!((v - 0.350_403_689_139_691_4).abs() < 1e-12, "{v}");
    }

    #[test]
    fn mean_duration_matches_oracle() {
        for (gamma, model) in [(0.0, Model::bm()), (1.0, Model::ou(1.0).unwrap())] {
            let d = williams_durations(gamma, 1.0, 1e-4, 1e-4, 2000, 17).unwrap();
            let (m, se) = mean_and_stderr(&d);
            let want = 2.0 * mean_upward_hitting_time(&model, 1.0).unwrap();
            assert!((m - want).abs() < 4.0 * se + 0.01 * want, "gamma {gamma}: {m} vs {want} (se {se})");
        }
    }
}

//! Reflected diffusions on `[0, ∞)`: scale, speed, transition and hitting densities.
//!
//! Densities are taken with respect to the speed measure `m(dy) = m′(y) dy`,
//! which makes the transition density symmetric in `(x, y)`.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_positive, Error, Result};
use crate::numerics::{binom_half, dawson, LaguerreHalf};

/// Analytic description of a diffusion reflected at 0.
pub trait Diffusion: Send + Sync {
    fn name(&self) -> String;

    /// Scale function with `S(0) = 0`.
    fn scale(&self, x: f64) -> Result<f64>;

    /// Density `m′(x)` of the speed measure with respect to Lebesgue measure.
    fn speed_density(&self, x: f64) -> f64;

    /// Total mass `m([0, ∞))`, or `None` when it is infinite.
    fn speed_total(&self) -> Option<f64>;

    fn drift(&self, x: f64) -> f64;

    /// `p(t; 0, 0)`, density with respect to `m`.
    fn p00(&self, t: f64) -> Result<f64>;

    /// Transition density of the reflected process (no killing).
    fn transition_density(&self, t: f64, x: f64, y: f64) -> Result<f64>;

    /// Transition density of the process killed at its first hitting time of 0.
    fn phat(&self, t: f64, x: f64, y: f64) -> Result<f64>;

    /// Density in `t` of the first hitting time of 0 from `x`.
    fn f_hit(&self, x: f64, t: f64) -> Result<f64>;

    /// Drift of the process conditioned never to hit 0 (h-transform with `h = S`).
    fn upward_drift(&self, x: f64) -> Result<f64>;

    /// Speed mass of `(0, δ)`.
    fn speed_mass_below(&self, delta: f64) -> f64;

    /// Joint density of an excursion at times `t₁ < … < tₙ` in positions `x₁, …, xₙ`,
    /// with respect to `Π m(dxᵢ)`.
    fn excursion_fdd_density(&self, times: &[f64], points: &[f64]) -> Result<f64> {
        const OP: &str = "excursion_fdd_density";
        if times.is_empty() || times.len() != points.len() {
            return Err(domain(OP, "times and points must be non-empty and of equal length"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain(OP, "times must be strictly increasing"));
        }
        let mut density = self.f_hit(points[0], times[0])?;
        for i in 1..times.len() {
            density *= self.phat(times[i] - times[i - 1], points[i - 1], points[i])?;
        }
        Ok(density)
    }
}

fn check_args(op: &'static str, args: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in args {
        require_positive(op, name, v)?;
    }
    Ok(())
}

/// `ln(1 + e^{-2w})` or `ln(1 - e^{-2w})` for `w ≥ 0`.
#[inline]
fn log_image_factor(w: f64, subtract: bool) -> f64 {
    let e = (-2.0 * w).exp();
    if subtract {
        (-e).ln_1p()
    } else {
        e.ln_1p()
    }
}

/// Ornstein–Uhlenbeck process `dU = dB − γU dt` reflected at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrnsteinUhlenbeck {
    gamma: f64,
}

impl OrnsteinUhlenbeck {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Parameter(format!("gamma must be finite and > 0, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(q, 1 − q)` with `q = e^{−2γt}`.
    #[inline]
    fn q(&self, t: f64) -> (f64, f64) {
        let z = -2.0 * self.gamma * t;
        (z.exp(), -z.exp_m1())
    }

    fn log_images(&self, t: f64, x: f64, y: f64, subtract: bool) -> f64 {
        let g = self.gamma;
        let (q, omq) = self.q(t);
        let rq = q.sqrt();
        let w = 2.0 * g * x * y * rq / omq;
        // -γq(x² + y²)/(1-q) + w, rearranged to avoid cancellation
        0.5 * (g / (PI * omq)).ln() - g * q * (x - y) * (x - y) / omq + 2.0 * g * x * y * rq / (1.0 + rq)
            - std::f64::consts::LN_2
            + log_image_factor(w, subtract)
    }

    /// Hitting-time density from the eigenfunction expansion (γ = 1 series, rescaled).
    pub fn f_hit_spectral(&self, x: f64, t: f64, n_terms: usize) -> Result<SpectralSum> {
        check_args("f_hit_spectral", &[("t", t)])?;
        if !(x.is_finite() && x >= 0.0) {
            return Err(domain("f_hit_spectral", format!("x must be >= 0, got {x}")));
        }
        let g = self.gamma;
        let (xs, ts) = (x * g.sqrt(), t * g);
        let mut lag = LaguerreHalf::new(xs * xs);
        let mut sum = 0.0;
        for n in 0..n_terms {
            let l = lag.next().unwrap_or(0.0);
            sum += (-(2.0 * n as f64 + 1.0) * ts).exp() * l;
        }
        let scale = g * FRAC_2_SQRT_PI * xs;
        let bound = scale * (0.5 * xs * xs).exp() * laguerre_tail(n_terms, ts);
        Ok(SpectralSum::new(scale * sum, n_terms, bound))
    }

    /// Killed transition density from the eigenfunction expansion.
    pub fn phat_spectral(&self, t: f64, x: f64, y: f64, n_terms: usize) -> Result<SpectralSum> {
        check_args("phat_spectral", &[("t", t), ("x", x), ("y", y)])?;
        let g = self.gamma;
        let rg = g.sqrt();
        let (xs, ys, ts) = (x * rg, y * rg, t * g);
        let mut lx = LaguerreHalf::new(xs * xs);
        let mut ly = LaguerreHalf::new(ys * ys);
        let mut sum = 0.0;
        let mut c = 1.0;
        for n in 0..n_terms {
            if n > 0 {
                c *= (n as f64 + 0.5) / n as f64;
            }
            let (a, b) = (lx.next().unwrap_or(0.0), ly.next().unwrap_or(0.0));
            // 1/w_n = 2/(√π C_n)
            sum += FRAC_2_SQRT_PI / c * (-(2.0 * n as f64 + 1.0) * ts).exp() * a * b;
        }
        let scale = rg * xs * ys;
        let bound = scale * FRAC_2_SQRT_PI * (0.5 * (xs * xs + ys * ys)).exp() * laguerre_tail(n_terms, ts);
        Ok(SpectralSum::new(scale * sum, n_terms, bound))
    }
}

/// Bound on `Σ_{n ≥ N} C(n+1/2, n) e^{−(2n+1)t}`, using `|L_n^{(1/2)}(x)| ≤ C(n+1/2, n) e^{x/2}`
/// for the Laguerre factors handled by the caller.
pub(crate) fn laguerre_tail(n: usize, t: f64) -> f64 {
    let q = (-2.0 * t).exp();
    let ratio = q * (n as f64 + 1.5) / (n as f64 + 1.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    binom_half(n) * (-(2.0 * n as f64 + 1.0) * t).exp() / (1.0 - ratio)
}

/// Truncated eigenfunction series with a rigorous bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSum {
    pub value: f64,
    pub truncation: SpectralTruncation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralTruncation {
    pub n_terms: usize,
    pub tail_bound: f64,
}

impl SpectralSum {
    fn new(value: f64, n_terms: usize, tail_bound: f64) -> Self {
        Self {
            value,
            truncation: SpectralTruncation { n_terms, tail_bound },
        }
    }

    /// The value, or a non-convergence error if the tail bound exceeds `tol`.
    pub fn within(self, op: &'static str, tol: f64) -> Result<f64> {
        if self.truncation.tail_bound <= tol {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                op,
                estimate: self.value,
                error: self.truncation.tail_bound,
            })
        }
    }
}

impl Diffusion for OrnsteinUhlenbeck {
    fn name(&self) -> String {
        format!("ou(gamma={})", self.gamma)
    }

    fn scale(&self, x: f64) -> Result<f64> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(domain("scale", format!("x must be >= 0, got {x}")));
        }
        let rg = self.gamma.sqrt();
        // ∫_0^x e^{γy²} dy = e^{γx²} F(√γ x) / √γ
        Ok((self.gamma * x * x).exp() * dawson(rg * x) / rg)
    }

    fn speed_density(&self, x: f64) -> f64 {
        2.0 * (-self.gamma * x * x).exp()
    }

    fn speed_total(&self) -> Option<f64> {
        Some((PI / self.gamma).sqrt())
    }

    fn drift(&self, x: f64) -> f64 {
        -self.gamma * x
    }

    fn p00(&self, t: f64) -> Result<f64> {
        check_args("p00", &[("t", t)])?;
        let (_, omq) = self.q(t);
        Ok((self.gamma / (PI * omq)).sqrt())
    }

    fn transition_density(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        check_args("transition_density", &[("t", t)])?;
        if !(x >= 0.0 && y >= 0.0 && x.is_finite() && y.is_finite()) {
            return Err(domain("transition_density", "x and y must be finite and >= 0"));
        }
        Ok(self.log_images(t, x, y, false).exp())
    }

    fn phat(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        check_args("phat", &[("t", t), ("x", x), ("y", y)])?;
        Ok(self.log_images(t, x, y, true).exp())
    }

    fn f_hit(&self, x: f64, t: f64) -> Result<f64> {
        check_args("f_hit", &[("x", x), ("t", t)])?;
        let g = self.gamma;
        let (q, omq) = self.q(t);
        let ln = (FRAC_2_SQRT_PI * g.powf(1.5) * x).ln() - g * t - 1.5 * omq.ln() - g * x * x * q / omq;
        Ok(ln.exp())
    }

    fn upward_drift(&self, x: f64) -> Result<f64> {
        check_args("upward_drift", &[("x", x)])?;
        let rg = self.gamma.sqrt();
        Ok(-self.gamma * x + rg / dawson(rg * x))
    }

    fn speed_mass_below(&self, delta: f64) -> f64 {
        // ∫_0^δ 2e^{-γx²} dx = √(π/γ) erf(√γ δ)
        (PI / self.gamma).sqrt() * statrs::function::erf::erf(self.gamma.sqrt() * delta)
    }
}

/// Brownian motion reflected at 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReflectedBrownian;

impl Diffusion for ReflectedBrownian {
    fn name(&self) -> String {
        "bm".to_string()
    }

    fn scale(&self, x: f64) -> Result<f64> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(domain("scale", format!("x must be >= 0, got {x}")));
        }
        Ok(x)
    }

    fn speed_density(&self, _x: f64) -> f64 {
        2.0
    }

    fn speed_total(&self) -> Option<f64> {
        None
    }

    fn drift(&self, _x: f64) -> f64 {
        0.0
    }

    fn p00(&self, t: f64) -> Result<f64> {
        check_args("p00", &[("t", t)])?;
        Ok(1.0 / (2.0 * PI * t).sqrt())
    }

    fn transition_density(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        check_args("transition_density", &[("t", t)])?;
        if !(x >= 0.0 && y >= 0.0 && x.is_finite() && y.is_finite()) {
            return Err(domain("transition_density", "x and y must be finite and >= 0"));
        }
        let w = x * y / t;
        let ln = -(x - y) * (x - y) / (2.0 * t) - std::f64::consts::LN_2 + log_image_factor(w, false);
        Ok(ln.exp() / (2.0 * PI * t).sqrt())
    }

    fn phat(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        check_args("phat", &[("t", t), ("x", x), ("y", y)])?;
        let w = x * y / t;
        let ln = -(x - y) * (x - y) / (2.0 * t) - std::f64::consts::LN_2 + log_image_factor(w, true);
        Ok(ln.exp() / (2.0 * PI * t).sqrt())
    }

    fn f_hit(&self, x: f64, t: f64) -> Result<f64> {
        check_args("f_hit", &[("x", x), ("t", t)])?;
        Ok(x * (-x * x / (2.0 * t)).exp() / (2.0 * PI * t * t * t).sqrt())
    }

    fn upward_drift(&self, x: f64) -> Result<f64> {
        check_args("upward_drift", &[("x", x)])?;
        Ok(1.0 / x)
    }

    fn speed_mass_below(&self, delta: f64) -> f64 {
        2.0 * delta
    }
}

/// The two concrete models behind one type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Model {
    Ou(OrnsteinUhlenbeck),
    Bm(ReflectedBrownian),
}

impl Model {
    pub fn ou(gamma: f64) -> Result<Self> {
        Ok(Model::Ou(OrnsteinUhlenbeck::new(gamma)?))
    }

    pub fn bm() -> Self {
        Model::Bm(ReflectedBrownian)
    }

    /// Drift rate γ; 0 for Brownian motion.
    pub fn gamma(&self) -> f64 {
        match self {
            Model::Ou(m) => m.gamma(),
            Model::Bm(_) => 0.0,
        }
    }

    pub fn as_ou(&self, op: &'static str) -> Result<&OrnsteinUhlenbeck> {
        match self {
            Model::Ou(m) => Ok(m),
            Model::Bm(m) => Err(Error::Unsupported {
                op,
                model: m.name(),
            }),
        }
    }

    pub(crate) fn inner(&self) -> &dyn crate::localtime::InverseLocalTime {
        match self {
            Model::Ou(m) => m,
            Model::Bm(m) => m,
        }
    }
}

impl Diffusion for Model {
    fn name(&self) -> String {
        self.inner().name()
    }
    fn scale(&self, x: f64) -> Result<f64> {
        self.inner().scale(x)
    }
    fn speed_density(&self, x: f64) -> f64 {
        self.inner().speed_density(x)
    }
    fn speed_total(&self) -> Option<f64> {
        self.inner().speed_total()
    }
    fn drift(&self, x: f64) -> f64 {
        self.inner().drift(x)
    }
    fn p00(&self, t: f64) -> Result<f64> {
        self.inner().p00(t)
    }
    fn transition_density(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        self.inner().transition_density(t, x, y)
    }
    fn phat(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        self.inner().phat(t, x, y)
    }
    fn f_hit(&self, x: f64, t: f64) -> Result<f64> {
        self.inner().f_hit(x, t)
    }
    fn upward_drift(&self, x: f64) -> Result<f64> {
        self.inner().upward_drift(x)
    }
    fn speed_mass_below(&self, delta: f64) -> f64 {
        self.inner().speed_mass_below(delta)
    }
}

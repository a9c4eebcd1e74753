//! Cross-formula identity battery.
//!
//! Every check compares two independently computed numbers and passes when
//! `|lhs − rhs| ≤ tolerance · max(1, |rhs|)`. A quadrature that fails to
//! converge is reported as such and never counts as a pass.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{Diffusion, Model};
use crate::error::{Error, Result};
use crate::localtime::{green_quadrature, levy_khintchine, InverseLocalTime, MixingMeasure, DEFAULT_ATOMS};
use crate::numerics::{gauss_legendre, QuadOutcome, Quadrature};
use crate::straddle::{
    bismut_length_functional, splitting_identity, stationary_delta_density, straddle_alpha_limit, StraddleLaw,
};

/// Rate used for the small-α stationary limits.
pub const STATIONARY_ALPHA: f64 = 1e-4;

const QUAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    NonConverged,
    /// The check does not apply to the model (e.g. stationary laws when `m(ℝ₊) = ∞`).
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub model: String,
    pub inputs: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(
        check_id: &str,
        model: &str,
        inputs: &[(&str, f64)],
        tolerance: f64,
        outcome: Result<(f64, f64)>,
    ) -> Self {
        let mut report = CheckReport {
            check_id: check_id.to_string(),
            model: model.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            tolerance,
            passed: false,
            status: CheckStatus::Failed,
            detail: None,
        };
        match outcome {
            Ok((lhs, rhs)) => {
                report.lhs = lhs;
                report.rhs = rhs;
                report.grade();
            }
            Err(e) => {
                report.status = match e {
                    Error::NonConvergence { .. } => CheckStatus::NonConverged,
                    Error::Unavailable { .. } | Error::Unsupported { .. } => CheckStatus::Unavailable,
                    _ => CheckStatus::Failed,
                };
                report.detail = Some(e.to_string());
            }
        }
        report
    }

    /// `|lhs − rhs| / max(1, |rhs|)`.
    pub fn deviation(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(1.0)
    }

    fn grade(&mut self) {
        self.passed = self.deviation() <= self.tolerance;
        self.status = if self.passed {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        };
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail.get_or_insert(detail);
        self
    }

    /// Re-grades the report with its tolerance multiplied by `scale`.
    pub fn rescaled(mut self, scale: f64) -> Self {
        if matches!(self.status, CheckStatus::Passed | CheckStatus::Failed) {
            self.tolerance *= scale;
            self.grade();
        }
        self
    }
}

fn quad(out: QuadOutcome, op: &'static str) -> Result<f64> {
    out.into_result(op)
}

/// `∫_0^t p₀₀(u) n(ζ > t − u) du = 1`: the last zero before `t` exists a.s.
pub fn check_renewal_identity<M: InverseLocalTime + ?Sized>(model: &M, t: f64) -> CheckReport {
    let outcome = (|| {
        crate::error::require_positive("check_renewal_identity", "t", t)?;
        let out = Quadrature::new(QUAD_TOL)
            .rel_tol(QUAD_TOL)
            .singular_left()
            .singular_right()
            .integrate(
                |u| {
                    if u <= 0.0 || u >= t {
                        return 0.0;
                    }
                    model.p00(u).unwrap_or(f64::NAN) * model.nu_tail(t - u).unwrap_or(f64::NAN)
                },
                0.0,
                t,
            );
        Ok((quad(out, "check_renewal_identity")?, 1.0))
    })();
    CheckReport::new("renewal_identity", &model.name(), &[("t", t)], 1e-6, outcome)
}

/// `∫ e^{−αu} p₀₀(u) du · ∫ (1 − e^{−αv}) ν(v) dv = 1`, both factors by quadrature.
pub fn check_last_exit_mass<M: InverseLocalTime + ?Sized>(model: &M, alpha: f64) -> CheckReport {
    let outcome = (|| {
        let green = quad(green_quadrature(model, alpha, QUAD_TOL)?, "green_quadrature")?;
        let lk = quad(levy_khintchine(model, alpha, QUAD_TOL)?, "levy_khintchine")?;
        Ok((green * lk, 1.0))
    })();
    CheckReport::new("last_exit_mass", &model.name(), &[("alpha", alpha)], 1e-6, outcome)
}

/// `Φ(α) R_α(0, 0) = 1` with the resolvent from quadrature of `p₀₀`.
pub fn check_bernstein<M: InverseLocalTime + ?Sized>(model: &M, alpha: f64) -> CheckReport {
    let outcome = (|| {
        let green = quad(green_quadrature(model, alpha, 1e-13)?, "green_quadrature")?;
        Ok((model.phi(alpha)? * green, 1.0))
    })();
    CheckReport::new("bernstein", &model.name(), &[("alpha", alpha)], 1e-8, outcome)
}

const SPLIT_GRID: [f64; 3] = [0.25, 0.5, 1.0];

/// Splitting of the Lévy density at an intermediate time,
/// `∫ m(dy) f_{y0}(u) f_{y0}(v) / ν(u + v) = 1`, on a 3×3 grid, followed by the
/// independence of the split point: for `b ∈ {0.1a, 0.9a}` the integral at
/// `(b, a − b)` matches the one at `(a/2, a/2)`, and its average over `b ∈ (0, a)`
/// matches `ν(a)`.
pub fn check_splitting_grid<M: InverseLocalTime + ?Sized>(model: &M) -> Vec<CheckReport> {
    let name = model.name();
    let split = |u: f64, v: f64| splitting_identity(model, u, v).map(|(_, rhs)| rhs);
    let mut out = Vec::new();
    for u in SPLIT_GRID {
        for v in SPLIT_GRID {
            let outcome = splitting_identity(model, u, v).map(|(nu, rhs)| (rhs / nu, 1.0));
            out.push(CheckReport::new("splitting", &name, &[("u", u), ("v", v)], 1e-6, outcome));
        }
    }
    for a in [0.5, 1.0, 2.0] {
        let mid = split(0.5 * a, 0.5 * a);
        for frac in [0.1, 0.9] {
            let b = frac * a;
            let outcome = mid
                .clone()
                .and_then(|m| Ok((split(b, a - b)? / m, 1.0)));
            out.push(CheckReport::new("splitting_point_independence", &name, &[("a", a), ("b", b)], 1e-6, outcome));
        }
        let outcome = (|| {
            let (x, w) = gauss_legendre(8);
            let mut avg = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                let b = 0.5 * a * (xi + 1.0);
                avg += 0.5 * wi * split(b, a - b)?;
            }
            let nu = model.nu(a)?;
            Ok((avg / nu, 1.0))
        })();
        out.push(CheckReport::new("splitting_point_average", &name, &[("a", a)], 1e-6, outcome));
    }
    out
}

/// Krein representation: `∫ e^{−tz} M(dz) = ν(t)` at `t ∈ {0.5, 1, 2}`, and
/// `∫ M(dz)/(z(z + α)) = Φ(α)/α` at `α ∈ {0.5, 1, 2}`.
pub fn check_krein<M: InverseLocalTime + ?Sized>(model: &M) -> Vec<CheckReport> {
    let name = model.name();
    let measure = match model.krein_measure() {
        Ok(m) => m,
        Err(e) => return vec![CheckReport::new("krein", &name, &[], 0.0, Err(e))],
    };
    // atoms carry a summed-series tail; a density is integrated in closed form
    let mass_tol = match measure {
        MixingMeasure::Lattice { .. } => 1e-3,
        MixingMeasure::Power { .. } => 1e-10,
    };
    let mut out = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        let outcome = (|| Ok((quad(measure.laplace(t, DEFAULT_ATOMS, QUAD_TOL)?, "krein_laplace")?, model.nu(t)?)))();
        out.push(CheckReport::new("krein_reconstruction", &name, &[("t", t)], 1e-8, outcome));
    }
    for alpha in [0.5, 1.0, 2.0] {
        let outcome = (|| {
            let mass = measure.reweighted(alpha, 1.0)?.total_mass(DEFAULT_ATOMS, QUAD_TOL);
            Ok((quad(mass, "krein_mass")?, model.phi(alpha)? / alpha))
        })();
        out.push(CheckReport::new("krein_mass", &name, &[("alpha", alpha)], mass_tol, outcome));
    }
    out
}

/// Number of series terms in the spectral comparisons.
pub const SPECTRAL_TERMS: usize = 100;

const SPECTRAL_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

fn spectral_times() -> impl Iterator<Item = f64> {
    (0..=5).map(|i| 0.5 + 0.5 * i as f64)
}

/// Closed forms against their eigenfunction series for `t ∈ [0.5, 3]`.
pub fn check_spectral(model: &Model) -> Vec<CheckReport> {
    let name = model.name();
    let ou = match model.as_ou("check_spectral") {
        Ok(m) => m,
        Err(e) => return vec![CheckReport::new("spectral", &name, &[], 0.0, Err(e))],
    };
    let tail_note = |bound: f64| format!("series tail bound {bound:.3e}");
    let mut out = Vec::new();
    for t in spectral_times() {
        for x in SPECTRAL_POINTS {
            let r = ou.f_hit_spectral(x, t, SPECTRAL_TERMS).and_then(|s| Ok((s, ou.f_hit(x, t)?)));
            let (outcome, note) = match r {
                Ok((s, c)) => (Ok((s.value, c)), Some(tail_note(s.truncation.tail_bound))),
                Err(e) => (Err(e), None),
            };
            let rep = CheckReport::new("spectral_f_hit", &name, &[("t", t), ("x", x)], 1e-8, outcome);
            out.push(match note {
                Some(n) => rep.with_detail(n),
                None => rep,
            });
            for y in SPECTRAL_POINTS {
                let r = ou.phat_spectral(t, x, y, SPECTRAL_TERMS).and_then(|s| Ok((s, ou.phat(t, x, y)?)));
                let (outcome, note) = match r {
                    Ok((s, c)) => (Ok((s.value, c)), Some(tail_note(s.truncation.tail_bound))),
                    Err(e) => (Err(e), None),
                };
                let rep = CheckReport::new("spectral_phat", &name, &[("t", t), ("x", x), ("y", y)], 1e-8, outcome);
                out.push(match note {
                    Some(n) => rep.with_detail(n),
                    None => rep,
                });
            }
        }
        let r = ou.nu_spectral(t, SPECTRAL_TERMS).and_then(|s| Ok((s, ou.nu(t)?)));
        let (outcome, note) = match r {
            Ok((s, c)) => (Ok((s.value, c)), Some(tail_note(s.truncation.tail_bound))),
            Err(e) => (Err(e), None),
        };
        let rep = CheckReport::new("spectral_nu", &name, &[("t", t)], 1e-8, outcome);
        out.push(match note {
            Some(n) => rep.with_detail(n),
            None => rep,
        });
    }
    out
}

/// Straddling-excursion laws at rate `alpha` against their mixture and
/// transform representations.
pub fn check_straddle_consistency<M: InverseLocalTime + Clone>(model: &M, alpha: f64) -> Vec<CheckReport> {
    let name = model.name();
    let law = match StraddleLaw::new(model.clone(), alpha) {
        Ok(l) => l,
        Err(e) => return vec![CheckReport::new("straddle", &name, &[("alpha", alpha)], 0.0, Err(e))],
    };
    let mut out = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        let outcome = (|| Ok((law.mixture_gamma2(a)?, law.density_delta(a)?)))();
        out.push(CheckReport::new("delta_gamma2_mixture", &name, &[("alpha", alpha), ("a", a)], 1e-6, outcome));
        let outcome = (|| Ok((law.t_minus_g_from_mixture(a)?, law.density_t_minus_g(a)?)))();
        out.push(CheckReport::new("age_exponential_mixture", &name, &[("alpha", alpha), ("u", a)], 1e-6, outcome));
    }
    let mixture_tol = match model.krein_measure() {
        Ok(MixingMeasure::Power { .. }) => 1e-10,
        _ => 1e-3,
    };
    let outcome = (|| {
        let mass = law.mixture_exponential()?.total_mass(DEFAULT_ATOMS, QUAD_TOL);
        Ok((quad(mass, "mixture_mass")?, 1.0))
    })();
    out.push(CheckReport::new("mixture_mass", &name, &[("alpha", alpha)], mixture_tol, outcome));

    for g in [0.5, 1.0, 2.0] {
        let outcome = (|| {
            let q = Quadrature::new(QUAD_TOL)
                .rel_tol(QUAD_TOL)
                .singular_left()
                .algebraic_tail()
                .integrate(
                    |a| {
                        if a == 0.0 {
                            0.0
                        } else {
                            (-g * a).exp() * law.density_delta(a).unwrap_or(f64::NAN)
                        }
                    },
                    0.0,
                    f64::INFINITY,
                );
            Ok((quad(q, "laplace_delta_quadrature")?, law.laplace_delta(g)?))
        })();
        out.push(CheckReport::new("laplace_delta", &name, &[("alpha", alpha), ("g", g)], 1e-6, outcome));
    }
    let grid = [0.25, 0.5, 1.0, 2.0, 4.0];
    for g1 in grid {
        for g2 in grid {
            let outcome = (|| Ok((law.laplace_gd(g1, g2)?, law.laplace_gd(g1 + g2, 0.0)? * law.laplace_delta(g2)?)))();
            out.push(CheckReport::new(
                "laplace_factorization",
                &name,
                &[("alpha", alpha), ("g1", g1), ("g2", g2)],
                1e-12,
                outcome,
            ));
        }
    }
    for (id, cdf) in [
        ("delta_mass", law.cdf_delta(f64::INFINITY)),
        ("age_mass", law.cdf_t_minus_g(f64::INFINITY)),
        ("last_zero_mass", law.cdf_g(f64::INFINITY)),
    ] {
        out.push(CheckReport::new(id, &name, &[("alpha", alpha)], 1e-6, cdf.map(|p| (p, 1.0))));
    }
    out
}

/// Small-α limits towards the stationary laws, which require `m(ℝ₊) < ∞`.
pub fn check_stationary<M: InverseLocalTime + Clone>(model: &M) -> Vec<CheckReport> {
    let name = model.name();
    let alpha = STATIONARY_ALPHA;
    let mut out = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        let outcome = (|| Ok((straddle_alpha_limit(model, a, alpha)?, stationary_delta_density(model, a)?)))();
        out.push(CheckReport::new("stationary_delta", &name, &[("alpha", alpha), ("a", a)], 1e-3, outcome));
    }
    let law = StraddleLaw::new(model.clone(), alpha);
    for a in [0.5, 1.0, 2.0] {
        for frac in [0.25, 0.75] {
            let u = frac * a;
            let outcome = match &law {
                Ok(l) => l.cond_tg_given_delta(u, a).map(|c| (c, 1.0 / a)),
                Err(e) => Err(e.clone()),
            };
            out.push(CheckReport::new(
                "stationary_conditional_uniform",
                &name,
                &[("alpha", alpha), ("a", a), ("u", u)],
                1e-3,
                outcome,
            ));
        }
    }
    let outcome = (|| {
        let total = model.speed_total().ok_or_else(|| Error::Unavailable {
            op: "stationary_green_limit",
            model: model.name(),
        })?;
        Ok((alpha * model.r00(alpha)?, 1.0 / total))
    })();
    out.push(CheckReport::new("stationary_green_limit", &name, &[("alpha", alpha)], 1e-3, outcome));
    // f(a) = 1 − e^{−a} keeps both sides finite
    let outcome = bismut_length_functional(model, |a: f64| -(-a).exp_m1());
    out.push(CheckReport::new("stationary_length_functional", &name, &[], 1e-6, outcome));
    out
}

/// Wrapper multiplying `ν`, its tail and `Φ` by a constant factor, for
/// checking that the battery notices a wrong Lévy density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbed<M> {
    pub inner: M,
    pub nu_factor: f64,
}

impl<M: Diffusion> Diffusion for Perturbed<M> {
    fn name(&self) -> String {
        format!("{} (nu x {})", self.inner.name(), self.nu_factor)
    }
    fn scale(&self, x: f64) -> Result<f64> {
        self.inner.scale(x)
    }
    fn speed_density(&self, x: f64) -> f64 {
        self.inner.speed_density(x)
    }
    fn speed_total(&self) -> Option<f64> {
        self.inner.speed_total()
    }
    fn drift(&self, x: f64) -> f64 {
        self.inner.drift(x)
    }
    fn p00(&self, t: f64) -> Result<f64> {
        self.inner.p00(t)
    }
    fn transition_density(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        self.inner.transition_density(t, x, y)
    }
    fn phat(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        self.inner.phat(t, x, y)
    }
    fn f_hit(&self, x: f64, t: f64) -> Result<f64> {
        self.inner.f_hit(x, t)
    }
    fn upward_drift(&self, x: f64) -> Result<f64> {
        self.inner.upward_drift(x)
    }
    fn speed_mass_below(&self, delta: f64) -> f64 {
        self.inner.speed_mass_below(delta)
    }
}

impl<M: InverseLocalTime> InverseLocalTime for Perturbed<M> {
    fn nu(&self, t: f64) -> Result<f64> {
        Ok(self.nu_factor * self.inner.nu(t)?)
    }
    fn nu_tail(&self, u: f64) -> Result<f64> {
        Ok(self.nu_factor * self.inner.nu_tail(u)?)
    }
    fn phi(&self, lambda: f64) -> Result<f64> {
        Ok(self.nu_factor * self.inner.phi(lambda)?)
    }
    fn krein_measure(&self) -> Result<MixingMeasure> {
        self.inner.krein_measure()
    }
}

/// Suite knobs used by tests and hidden CLI hooks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteOptions {
    /// Multiplies `ν`, `ν̄` and `Φ` in every check except the spectral ones.
    pub nu_factor: f64,
    /// Multiplies every tolerance; a negative value forces failures.
    pub tolerance_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            nu_factor: 1.0,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub passed: usize,
    pub failed: usize,
    pub non_converged: usize,
    pub unavailable: usize,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    fn from_reports(reports: Vec<CheckReport>) -> Self {
        let count = |s: CheckStatus| reports.iter().filter(|r| r.status == s).count();
        SuiteReport {
            passed: count(CheckStatus::Passed),
            failed: count(CheckStatus::Failed),
            non_converged: count(CheckStatus::NonConverged),
            unavailable: count(CheckStatus::Unavailable),
            reports,
        }
    }

    /// True when no check failed or failed to converge.
    pub fn success(&self) -> bool {
        self.failed == 0 && self.non_converged == 0
    }
}

fn model_checks<M: InverseLocalTime + Clone>(model: &M, alphas: &[f64], part: usize) -> Vec<CheckReport> {
    match part {
        0 => [0.3, 1.0, 3.0].iter().map(|&t| check_renewal_identity(model, t)).collect(),
        1 => alphas
            .iter()
            .flat_map(|&a| [check_last_exit_mass(model, a), check_bernstein(model, a)])
            .collect(),
        2 => check_splitting_grid(model),
        3 => check_krein(model),
        4 => alphas.iter().flat_map(|&a| check_straddle_consistency(model, a)).collect(),
        5 => check_stationary(model),
        _ => Vec::new(),
    }
}

const PARTS: usize = 7;

/// Runs every check for every model and rate. Reports come back in a fixed
/// order regardless of scheduling.
pub fn run_all(models: &[Model], alphas: &[f64], options: SuiteOptions) -> SuiteReport {
    let jobs: Vec<(usize, usize)> = (0..models.len())
        .flat_map(|m| (0..PARTS).map(move |p| (m, p)))
        .collect();
    let parts: Vec<Vec<CheckReport>> = jobs
        .par_iter()
        .map(|&(m, part)| {
            let model = models[m];
            if part == PARTS - 1 {
                return if matches!(model, Model::Ou(_)) {
                    check_spectral(&model)
                } else {
                    Vec::new()
                };
            }
            if options.nu_factor == 1.0 {
                model_checks(&model, alphas, part)
            } else {
                let p = Perturbed {
                    inner: model,
                    nu_factor: options.nu_factor,
                };
                model_checks(&p, alphas, part)
            }
        })
        .collect();
    let reports = parts
        .into_iter()
        .flatten()
        .map(|r| r.rescaled(options.tolerance_scale))
        .collect();
    SuiteReport::from_reports(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ou() -> Model {
        Model::ou(1.0).unwrap()
    }

    #[test]
    fn report_grading() {
        let r = CheckReport::new("x", "m", &[], 1e-6, Ok((1.0 + 5e-7, 1.0)));
        assert!(r.passed && r.status == CheckStatus::Passed);
        let r = CheckReport::new("x", "m", &[], 1e-6, Ok((0.0, 1e-9)));
        assert!(r.passed, "anchored at 1 near zero");
        let r = CheckReport::new("x", "m", &[], 1e-6, Ok((f64::NAN, 1.0)));
        assert!(!r.passed);
        let r = CheckReport::new(
            "x",
            "m",
            &[],
            1e-6,
            Err(Error::NonConvergence {
                op: "q",
                estimate: 1.0,
                error: 1.0,
            }),
        );
        assert_eq!(r.status, CheckStatus::NonConverged);
        assert!(!r.passed);
        let r = CheckReport::new("x", "m", &[], 1e-6, Ok((1.0, 1.0))).rescaled(-1.0);
        assert_eq!(r.status, CheckStatus::Failed);
    }

    #[test]
    fn renewal_and_bernstein() {
        for m in [ou(), Model::ou(2.0).unwrap(), Model::bm()] {
            for t in [0.3, 1.0, 3.0] {
                let r = check_renewal_identity(&m, t);
                assert!(r.passed, "{r:?}");
            }
            for a in [0.5, 1.0, 2.0, 5.0] {
                assert!(check_bernstein(&m, a).passed, "{:?}", check_bernstein(&m, a));
                assert!(check_last_exit_mass(&m, a).passed);
            }
        }
    }

    #[test]
    fn splitting_and_perturbation() {
        for m in [ou(), Model::bm()] {
            let reps = check_splitting_grid(&m);
            assert_eq!(reps.len(), 9 + 9);
            assert!(reps.iter().all(|r| r.passed), "{reps:?}");
            let p = Perturbed {
                inner: m,
                nu_factor: 1.01,
            };
            let failed = check_splitting_grid(&p)
                .iter()
                .take(9)
                .filter(|r| r.status == CheckStatus::Failed)
                .count();
            assert!(failed >= 8);
        }
    }

    #[test]
    fn krein_and_spectral() {
        for m in [ou(), Model::bm()] {
            let reps = check_krein(&m);
            assert!(reps.iter().all(|r| r.passed), "{reps:?}");
        }
        let reps = check_spectral(&ou());
        assert_eq!(reps.len(), 6 * (3 + 9 + 1));
        assert!(reps.iter().all(|r| r.passed), "{:?}", reps.iter().find(|r| !r.passed));
        assert_eq!(check_spectral(&Model::bm())[0].status, CheckStatus::Unavailable);
    }

    #[test]
    fn stationary_is_unavailable_for_brownian_motion() {
        let reps = check_stationary(&Model::bm());
        let unavailable = reps.iter().filter(|r| r.status == CheckStatus::Unavailable).count();
        assert_eq!(unavailable, 5);
        assert!(reps
            .iter()
            .all(|r| r.status != CheckStatus::Failed && r.status != CheckStatus::NonConverged));
        let reps = check_stationary(&ou());
        assert!(reps.iter().all(|r| r.passed), "{reps:?}");
    }

    #[test]
    fn empty_suite_succeeds() {
        let s = run_all(&[], &[1.0], SuiteOptions::default());
        assert!(s.reports.is_empty() && s.success());
    }

    #[test]
    fn full_suite() {
        let s = run_all(&[ou(), Model::bm()], &[1.0], SuiteOptions::default());
        let bad: Vec<_> = s.reports.iter().filter(|r| !r.passed && r.status != CheckStatus::Unavailable).collect();
        assert!(s.success(), "{bad:#?}");
        assert_eq!(s.unavailable, 5);
        let corrupted = run_all(
            &[ou()],
            &[1.0],
            SuiteOptions {
                tolerance_scale: -1.0,
                ..Default::default()
            },
        );
        assert!(!corrupted.success() && corrupted.passed == 0);
    }
}

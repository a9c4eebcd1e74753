//! Inverse local time at 0: Lévy density, Bernstein function and Krein measure.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use serde::Serialize;

use crate::diffusion::{laguerre_tail, Diffusion, Model, OrnsteinUhlenbeck, ReflectedBrownian, SpectralSum};
use crate::error::{require_nonnegative, require_positive, Error, Result};
use crate::numerics::{binom_half, gamma_half_ratio, gamma_ln, QuadOutcome, Quadrature};

/// Number of lattice atoms summed explicitly before the tail integral takes over.
pub const DEFAULT_ATOMS: usize = 10_000;

/// Characteristics of the inverse local time subordinator `τ_ℓ`.
///
/// `ν` is always the Lévy density with respect to Lebesgue measure.
pub trait InverseLocalTime: Diffusion {
    fn nu(&self, t: f64) -> Result<f64>;

    /// `∫_u^∞ ν(t) dt`, the excursion-measure tail `n(ζ > u)`.
    fn nu_tail(&self, u: f64) -> Result<f64>;

    /// Laplace exponent `Φ(λ) = ∫ (1 − e^{−λt}) ν(t) dt` for `λ > 0`.
    fn phi(&self, lambda: f64) -> Result<f64>;

    fn krein_measure(&self) -> Result<MixingMeasure>;

    /// Green value `R_λ(0, 0) = 1/Φ(λ)`.
    fn r00(&self, lambda: f64) -> Result<f64> {
        Ok(1.0 / self.phi(lambda)?)
    }

    /// `E[e^{−λ τ_ℓ}] = e^{−ℓ Φ(λ)}`.
    fn subordinator_laplace(&self, ell: f64, lambda: f64) -> Result<f64> {
        require_nonnegative("subordinator_laplace", "ell", ell)?;
        Ok((-ell * self.phi(lambda)?).exp())
    }
}

/// `Φ` extended by `Φ(0) = 0`.
pub(crate) fn phi_or_zero<M: InverseLocalTime + ?Sized>(model: &M, lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        Ok(0.0)
    } else {
        model.phi(lambda)
    }
}

/// `∫_0^∞ (1 − e^{−λv}) ν(v) dv` by quadrature.
pub fn levy_khintchine<M: InverseLocalTime + ?Sized>(model: &M, lambda: f64, tol: f64) -> Result<QuadOutcome> {
    require_positive("levy_khintchine", "lambda", lambda)?;
    Ok(Quadrature::new(tol)
        .singular_left()
        .algebraic_tail()
        .integrate(
            |v| {
                if v == 0.0 {
                    0.0
                } else {
                    -(-lambda * v).exp_m1() * model.nu(v).unwrap_or(f64::NAN)
                }
            },
            0.0,
            f64::INFINITY,
        ))
}

/// `∫_0^∞ e^{−λt} p(t; 0, 0) dt` by quadrature.
pub fn green_quadrature<M: Diffusion + ?Sized>(model: &M, lambda: f64, tol: f64) -> Result<QuadOutcome> {
    require_positive("green_quadrature", "lambda", lambda)?;
    Ok(Quadrature::new(tol)
        .singular_left()
        .integrate(
            |t| {
                if t == 0.0 {
                    0.0
                } else {
                    (-lambda * t).exp() * model.p00(t).unwrap_or(f64::NAN)
                }
            },
            0.0,
            f64::INFINITY,
        ))
}

/// `factor · M(dz) / (z (α + z))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reweight {
    pub alpha: f64,
    pub factor: f64,
}

impl Reweight {
    #[inline]
    fn at(&self, z: f64) -> f64 {
        self.factor / (z * (self.alpha + z))
    }
}

/// A measure on `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MixingMeasure {
    /// Atoms at `γ(2n+1)` with weights `(2γ^{3/2}/√π) C(n+1/2, n)`, `n ≥ 0`.
    Lattice { gamma: f64, reweight: Option<Reweight> },
    /// Density `coeff · z^exponent`.
    Power {
        coeff: f64,
        exponent: f64,
        reweight: Option<Reweight>,
    },
}

impl MixingMeasure {
    pub fn reweighted(self, alpha: f64, factor: f64) -> Result<Self> {
        require_positive("reweighted", "alpha", alpha)?;
        let r = Some(Reweight { alpha, factor });
        match self {
            MixingMeasure::Lattice { gamma, reweight: None } => Ok(MixingMeasure::Lattice { gamma, reweight: r }),
            MixingMeasure::Power {
                coeff,
                exponent,
                reweight: None,
            } => Ok(MixingMeasure::Power {
                coeff,
                exponent,
                reweight: r,
            }),
            _ => Err(Error::Parameter("measure is already reweighted".into())),
        }
    }

    fn reweight(&self) -> Option<Reweight> {
        match *self {
            MixingMeasure::Lattice { reweight, .. } | MixingMeasure::Power { reweight, .. } => reweight,
        }
    }

    fn factor_at(&self, z: f64) -> f64 {
        self.reweight().map_or(1.0, |r| r.at(z))
    }

    /// Location and weight of atom `n`, with the weight extended to real `n`
    /// through the Gamma function.
    fn lattice_atom(gamma: f64, n: f64) -> (f64, f64) {
        let c = FRAC_2_SQRT_PI * gamma.powf(1.5);
        // C(n+1/2, n) = Γ(n+3/2) / (Γ(n+1) Γ(3/2))
        let w = if n.fract() == 0.0 && n < 1e6 {
            binom_half(n as usize)
        } else {
            gamma_half_ratio(n + 1.0) * 2.0 / PI.sqrt()
        };
        (gamma * (2.0 * n + 1.0), c * w)
    }

    /// First `count` atoms as `(location, weight)`.
    pub fn atoms(&self, count: usize) -> Result<Vec<(f64, f64)>> {
        match *self {
            MixingMeasure::Lattice { gamma, .. } => Ok((0..count)
                .map(|n| {
                    let (z, w) = Self::lattice_atom(gamma, n as f64);
                    (z, w * self.factor_at(z))
                })
                .collect()),
            MixingMeasure::Power { .. } => Err(Error::Unsupported {
                op: "atoms",
                model: "absolutely continuous measure".into(),
            }),
        }
    }

    /// Density with respect to Lebesgue measure.
    pub fn density(&self, z: f64) -> Result<f64> {
        match *self {
            MixingMeasure::Power { coeff, exponent, .. } => {
                require_positive("density", "z", z)?;
                Ok(coeff * z.powf(exponent) * self.factor_at(z))
            }
            MixingMeasure::Lattice { .. } => Err(Error::Unsupported {
                op: "density",
                model: "atomic measure".into(),
            }),
        }
    }

    /// `∫ g(z) M(dz)`.
    ///
    /// Lattice measures sum `n_atoms` atoms and replace the rest by
    /// `∫_{N−1/2}^∞ h(x) dx + h′(N−1/2)/24`, with `h` the Gamma-continued
    /// summand (midpoint-rule Euler–Maclaurin).
    pub fn integrate(&self, g: &dyn Fn(f64) -> f64, n_atoms: usize, tol: f64) -> QuadOutcome {
        match *self {
            MixingMeasure::Lattice { gamma, .. } => {
                let term = |x: f64| {
                    let (z, w) = Self::lattice_atom(gamma, x);
                    g(z) * w * self.factor_at(z)
                };
                let head: f64 = (0..n_atoms).map(|n| term(n as f64)).sum();
                let start = n_atoms as f64 - 0.5;
                let tail = Quadrature::new(tol).algebraic_tail().integrate(term, start.max(0.0), f64::INFINITY);
                // Σ_{n≥N} h(n) = ∫_{N−1/2}^∞ h + h′(N−1/2)/24 − …
                let h = 1e-3 * start.max(1.0);
                let slope = (term(start + h) - term((start - h).max(0.0))) / (2.0 * h);
                let correction = slope / 24.0;
                let residual = correction.abs() / (start.max(1.0) * start.max(1.0));
                QuadOutcome {
                    value: head + tail.value + correction,
                    abs_error_estimate: tail.abs_error_estimate + residual,
                    converged: tail.converged && residual <= tol,
                }
            }
            MixingMeasure::Power { coeff, exponent, .. } => Quadrature::new(tol)
                .rel_tol(tol)
                .singular_left()
                .algebraic_tail()
                .integrate(
                    |z| {
                        if z == 0.0 {
                            0.0
                        } else {
                            g(z) * coeff * z.powf(exponent) * self.factor_at(z)
                        }
                    },
                    0.0,
                    f64::INFINITY,
                ),
        }
    }

    /// Laplace transform `∫ e^{−tz} M(dz)`.
    pub fn laplace(&self, t: f64, n_atoms: usize, tol: f64) -> Result<QuadOutcome> {
        require_positive("laplace", "t", t)?;
        Ok(self.integrate(&|z| (-t * z).exp(), n_atoms, tol))
    }

    /// Total mass; analytic for reweighted power densities.
    pub fn total_mass(&self, n_atoms: usize, tol: f64) -> QuadOutcome {
        if let MixingMeasure::Power {
            coeff,
            exponent,
            reweight: Some(r),
        } = *self
        {
            // ∫_0^∞ z^{e−1}/(z + α) dz = α^{e−1} π / sin(πe), 0 < e < 1
            if exponent > 0.0 && exponent < 1.0 {
                return QuadOutcome {
                    value: r.factor * coeff * r.alpha.powf(exponent - 1.0) * PI / (PI * exponent).sin(),
                    abs_error_estimate: 0.0,
                    converged: true,
                };
            }
        }
        if self.reweight().is_none() {
            return QuadOutcome {
                value: f64::INFINITY,
                abs_error_estimate: 0.0,
                converged: true,
            };
        }
        self.integrate(&|_| 1.0, n_atoms, tol)
    }
}

impl InverseLocalTime for OrnsteinUhlenbeck {
    fn nu(&self, t: f64) -> Result<f64> {
        require_positive("nu", "t", t)?;
        let g = self.gamma();
        let omq = -(-2.0 * g * t).exp_m1();
        Ok(((FRAC_2_SQRT_PI * g.powf(1.5)).ln() - g * t - 1.5 * omq.ln()).exp())
    }

    fn nu_tail(&self, u: f64) -> Result<f64> {
        require_positive("nu_tail", "u", u)?;
        let g = self.gamma();
        let omq = -(-2.0 * g * u).exp_m1();
        Ok(((FRAC_2_SQRT_PI * g.sqrt()).ln() - g * u - 0.5 * omq.ln()).exp())
    }

    fn phi(&self, lambda: f64) -> Result<f64> {
        require_positive("phi", "lambda", lambda)?;
        let g = self.gamma();
        let ln = gamma_ln((lambda + g) / (2.0 * g))? - gamma_ln(lambda / (2.0 * g))?;
        Ok(2.0 * g.sqrt() * ln.exp())
    }

    fn krein_measure(&self) -> Result<MixingMeasure> {
        Ok(MixingMeasure::Lattice {
            gamma: self.gamma(),
            reweight: None,
        })
    }
}

impl OrnsteinUhlenbeck {
    /// Lévy density from its exponential series.
    pub fn nu_spectral(&self, t: f64, n_terms: usize) -> Result<SpectralSum> {
        require_positive("nu_spectral", "t", t)?;
        let g = self.gamma();
        let ts = g * t;
        let mut c = 1.0;
        let mut sum = 0.0;
        for n in 0..n_terms {
            if n > 0 {
                c *= (n as f64 + 0.5) / n as f64;
            }
            sum += c * (-(2.0 * n as f64 + 1.0) * ts).exp();
        }
        let scale = FRAC_2_SQRT_PI * g.powf(1.5);
        Ok(SpectralSum {
            value: scale * sum,
            truncation: crate::diffusion::SpectralTruncation {
                n_terms,
                tail_bound: scale * laguerre_tail(n_terms, ts),
            },
        })
    }
}

impl InverseLocalTime for ReflectedBrownian {
    fn nu(&self, t: f64) -> Result<f64> {
        require_positive("nu", "t", t)?;
        Ok(1.0 / (2.0 * PI * t * t * t).sqrt())
    }

    fn nu_tail(&self, u: f64) -> Result<f64> {
        require_positive("nu_tail", "u", u)?;
        Ok((2.0 / (PI * u)).sqrt())
    }

    fn phi(&self, lambda: f64) -> Result<f64> {
        require_positive("phi", "lambda", lambda)?;
        Ok((2.0 * lambda).sqrt())
    }

    fn krein_measure(&self) -> Result<MixingMeasure> {
        Ok(MixingMeasure::Power {
            coeff: std::f64::consts::SQRT_2 / PI,
            exponent: 0.5,
            reweight: None,
        })
    }
}

impl InverseLocalTime for Model {
    fn nu(&self, t: f64) -> Result<f64> {
        self.inner().nu(t)
    }
    fn nu_tail(&self, u: f64) -> Result<f64> {
        self.inner().nu_tail(u)
    }
    fn phi(&self, lambda: f64) -> Result<f64> {
        self.inner().phi(lambda)
    }
    fn krein_measure(&self) -> Result<MixingMeasure> {
        self.inner().krein_measure()
    }
}

//! Laws of the excursion `(G_T, D_T)` straddling an independent `T ~ Exp(α)`,
//! their small-α (stationary) limits, and the mixture representations of `Δ_T`.

use crate::diffusion::Diffusion;
use crate::error::{domain, require_nonnegative, require_positive, Error, Result};
use crate::localtime::{phi_or_zero, InverseLocalTime, MixingMeasure, DEFAULT_ATOMS};
use crate::numerics::{QuadOutcome, Quadrature, DEFAULT_TOL};

/// Straddling-excursion laws at rate `α`, with `Φ(α)` precomputed.
#[derive(Debug, Clone)]
pub struct StraddleLaw<M> {
    model: M,
    alpha: f64,
    phi_alpha: f64,
}

fn quad_value(out: QuadOutcome, op: &'static str) -> Result<f64> {
    out.into_result(op)
}

impl<M: InverseLocalTime> StraddleLaw<M> {
    pub fn new(model: M, alpha: f64) -> Result<Self> {
        require_positive("StraddleLaw::new", "alpha", alpha)?;
        let phi_alpha = model.phi(alpha)?;
        Ok(Self {
            model,
            alpha,
            phi_alpha,
        })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi_alpha(&self) -> f64 {
        self.phi_alpha
    }

    /// Density of the straddling length `Δ_T = D_T − G_T`.
    pub fn density_delta(&self, a: f64) -> Result<f64> {
        require_positive("density_delta", "a", a)?;
        Ok(-(-self.alpha * a).exp_m1() * self.model.nu(a)? / self.phi_alpha)
    }

    /// Density of the age `T − G_T`.
    pub fn density_t_minus_g(&self, u: f64) -> Result<f64> {
        require_positive("density_t_minus_g", "u", u)?;
        Ok(self.alpha / self.phi_alpha * (-self.alpha * u).exp() * self.model.nu_tail(u)?)
    }

    /// Density of the residual life `D_T − T`.
    pub fn density_d_minus_t(&self, v: f64) -> Result<f64> {
        require_positive("density_d_minus_t", "v", v)?;
        // ∫_v^∞ e^{−α(z−v)} ν(z) dz with z = v + w
        let out = Quadrature::new(DEFAULT_TOL * 1e-2)
            .rel_tol(1e-13)
            .algebraic_tail()
            .integrate(
                |w| (-self.alpha * w).exp() * self.model.nu(v + w).unwrap_or(f64::NAN),
                0.0,
                f64::INFINITY,
            );
        Ok(self.alpha / self.phi_alpha * quad_value(out, "density_d_minus_t")?)
    }

    /// Joint density of `(T − G_T, D_T − T)`.
    pub fn joint_tg_dt(&self, u: f64, v: f64) -> Result<f64> {
        require_positive("joint_tg_dt", "u", u)?;
        require_positive("joint_tg_dt", "v", v)?;
        Ok(self.alpha * (-self.alpha * u).exp() * self.model.nu(u + v)? / self.phi_alpha)
    }

    /// Density of the last zero `G_T` before `T`.
    pub fn density_g(&self, u: f64) -> Result<f64> {
        require_positive("density_g", "u", u)?;
        Ok(self.phi_alpha * (-self.alpha * u).exp() * self.model.p00(u)?)
    }

    /// Joint density of `(T − G_T, Δ_T)`; zero outside `0 < u ≤ a`.
    pub fn joint_tg_delta(&self, u: f64, a: f64) -> Result<f64> {
        require_positive("joint_tg_delta", "u", u)?;
        require_positive("joint_tg_delta", "a", a)?;
        if u > a {
            return Ok(0.0);
        }
        Ok(self.alpha / self.phi_alpha * (-self.alpha * u).exp() * self.model.nu(a)?)
    }

    /// Density of `T − G_T` given `Δ_T = a`: exponential truncated to `(0, a]`.
    pub fn cond_tg_given_delta(&self, u: f64, a: f64) -> Result<f64> {
        require_positive("cond_tg_given_delta", "u", u)?;
        require_positive("cond_tg_given_delta", "a", a)?;
        if u > a {
            return Ok(0.0);
        }
        Ok(self.alpha * (-self.alpha * u).exp() / -(-self.alpha * a).exp_m1())
    }

    /// `E[e^{−g₁ G_T − g₂ D_T}]`.
    pub fn laplace_gd(&self, g1: f64, g2: f64) -> Result<f64> {
        require_nonnegative("laplace_gd", "g1", g1)?;
        require_nonnegative("laplace_gd", "g2", g2)?;
        let m = &self.model;
        Ok((m.phi(g2 + self.alpha)? - phi_or_zero(m, g2)?) / m.phi(g1 + g2 + self.alpha)?)
    }

    /// `E[e^{−g Δ_T}]`.
    pub fn laplace_delta(&self, g: f64) -> Result<f64> {
        require_nonnegative("laplace_delta", "g", g)?;
        let m = &self.model;
        Ok((m.phi(g + self.alpha)? - phi_or_zero(m, g)?) / self.phi_alpha)
    }

    /// `P(Δ_T ≤ a)`.
    pub fn cdf_delta(&self, a: f64) -> Result<f64> {
        self.cdf("cdf_delta", a, |s| self.density_delta(s))
    }

    /// `P(T − G_T ≤ u)`.
    pub fn cdf_t_minus_g(&self, u: f64) -> Result<f64> {
        self.cdf("cdf_t_minus_g", u, |s| self.density_t_minus_g(s))
    }

    /// `P(G_T ≤ u)`.
    pub fn cdf_g(&self, u: f64) -> Result<f64> {
        self.cdf("cdf_g", u, |s| self.density_g(s))
    }

    /// `P(D_T − T ≤ v)` through the survival `(α/Φ(α)) ∫_0^∞ e^{−αw} ν̄(v + w) dw`.
    pub fn cdf_d_minus_t(&self, v: f64) -> Result<f64> {
        require_nonnegative("cdf_d_minus_t", "v", v)?;
        if v == 0.0 {
            return Ok(0.0);
        }
        let out = Quadrature::new(DEFAULT_TOL)
            .algebraic_tail()
            .integrate(
                |w| (-self.alpha * w).exp() * self.model.nu_tail(v + w).unwrap_or(f64::NAN),
                0.0,
                f64::INFINITY,
            );
        Ok(1.0 - self.alpha / self.phi_alpha * quad_value(out, "cdf_d_minus_t")?)
    }

    fn cdf<F: Fn(f64) -> Result<f64>>(&self, op: &'static str, x: f64, density: F) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(domain(op, format!("argument must be >= 0, got {x}")));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let f = |s: f64| if s == 0.0 { 0.0 } else { density(s).unwrap_or(f64::NAN) };
        let out = Quadrature::new(DEFAULT_TOL)
            .singular_left()
            .algebraic_tail()
            .integrate(f, 0.0, x);
        quad_value(out, op).map(|p| p.min(1.0))
    }

    /// Exponential-mixture measure `M̂_α(dz) = (α/Φ(α)) M(dz) / (z(α + z))` of `T − G_T`.
    pub fn mixture_exponential(&self) -> Result<MixingMeasure> {
        self.model
            .krein_measure()?
            .reweighted(self.alpha, self.alpha / self.phi_alpha)
    }

    /// `T − G_T` density rebuilt as `∫ (α + z) e^{−(α+z)u} M̂_α(dz)`.
    pub fn t_minus_g_from_mixture(&self, u: f64) -> Result<f64> {
        require_positive("t_minus_g_from_mixture", "u", u)?;
        let alpha = self.alpha;
        let out = self
            .mixture_exponential()?
            .integrate(&|z| (alpha + z) * (-(alpha + z) * u).exp(), DEFAULT_ATOMS, 1e-12);
        quad_value(out, "t_minus_g_from_mixture")
    }

    /// `Δ_T` density as a mixture of Gamma(2) laws:
    /// `∫ M̂_α(dz) ∫ x² a e^{−xa} Π_{z,α}(dx)` with `Π_{z,α}(dx) = (z(α+z)/α) x^{−2} dx` on `(z, z+α)`.
    pub fn mixture_gamma2(&self, a: f64) -> Result<f64> {
        require_positive("mixture_gamma2", "a", a)?;
        let alpha = self.alpha;
        let out = self
            .mixture_exponential()?
            .integrate(&|z| gamma2_kernel(a, z, alpha), DEFAULT_ATOMS, 1e-12);
        quad_value(out, "mixture_gamma2")
    }
}

/// Density at `a` of `T₁ + T₂` with `T₁ ~ Exp(z)`, `T₂ ~ Exp(z + α)`, written
/// as `∫_z^{z+α} x² a e^{−xa} (z(α+z)/α) x^{−2} dx` and evaluated by quadrature.
pub fn gamma2_kernel(a: f64, z: f64, alpha: f64) -> f64 {
    if z * a > 745.0 {
        return 0.0;
    }
    let inner = Quadrature::new(0.0)
        .rel_tol(1e-14)
        .max_segments(50)
        .integrate(|x| a * (-x * a).exp(), z, z + alpha);
    z * (alpha + z) / alpha * inner.value
}

fn finite_speed<M: Diffusion + ?Sized>(model: &M, op: &'static str) -> Result<f64> {
    model.speed_total().ok_or_else(|| Error::Unavailable {
        op,
        model: model.name(),
    })
}

/// Stationary density of the length of the excursion straddling a fixed time, `aν(a)/m(ℝ₊)`.
pub fn stationary_delta_density<M: InverseLocalTime + ?Sized>(model: &M, a: f64) -> Result<f64> {
    let total = finite_speed(model, "stationary_delta_density")?;
    require_positive("stationary_delta_density", "a", a)?;
    Ok(a * model.nu(a)? / total)
}

/// Stationary density of the age `t − g_t`, `ν̄(u)/m(ℝ₊)`.
pub fn stationary_g_density<M: InverseLocalTime + ?Sized>(model: &M, u: f64) -> Result<f64> {
    let total = finite_speed(model, "stationary_g_density")?;
    require_positive("stationary_g_density", "u", u)?;
    Ok(model.nu_tail(u)? / total)
}

/// Stationary joint density of age and residual life, `ν(u + v)/m(ℝ₊)`.
pub fn stationary_joint<M: InverseLocalTime + ?Sized>(model: &M, u: f64, v: f64) -> Result<f64> {
    let total = finite_speed(model, "stationary_joint")?;
    require_positive("stationary_joint", "u", u)?;
    require_positive("stationary_joint", "v", v)?;
    Ok(model.nu(u + v)? / total)
}

/// `Δ_T` density at a small rate, which tends to the stationary density as `α → 0`.
pub fn straddle_alpha_limit<M: InverseLocalTime + Clone>(model: &M, a: f64, alpha_small: f64) -> Result<f64> {
    finite_speed(model, "straddle_alpha_limit")?;
    if !(alpha_small > 0.0 && alpha_small <= 0.01) {
        return Err(domain("straddle_alpha_limit", format!("alpha must lie in (0, 0.01], got {alpha_small}")));
    }
    StraddleLaw::new(model.clone(), alpha_small)?.density_delta(a)
}

/// Both sides of `∫ f(a) ν(a) da = m(ℝ₊) E[f(Δ)/Δ]` with `Δ` stationary.
pub fn bismut_length_functional<M, F>(model: &M, f: F) -> Result<(f64, f64)>
where
    M: InverseLocalTime + ?Sized,
    F: Fn(f64) -> f64,
{
    let total = finite_speed(model, "bismut_length_functional")?;
    let q = Quadrature::new(1e-12).rel_tol(1e-12).singular_left().algebraic_tail();
    let lhs = q.integrate(
        |a| if a == 0.0 { 0.0 } else { f(a) * model.nu(a).unwrap_or(f64::NAN) },
        0.0,
        f64::INFINITY,
    );
    let rhs = q.integrate(
        |a| {
            if a == 0.0 {
                0.0
            } else {
                f(a) / a * stationary_delta_density(model, a).unwrap_or(f64::NAN)
            }
        },
        0.0,
        f64::INFINITY,
    );
    Ok((
        quad_value(lhs, "bismut_length_functional")?,
        total * quad_value(rhs, "bismut_length_functional")?,
    ))
}

/// Both sides of `ν(u + v) = ∫ m(dy) f_{y0}(u) f_{y0}(v)`.
pub fn splitting_identity<M: InverseLocalTime + ?Sized>(model: &M, u: f64, v: f64) -> Result<(f64, f64)> {
    require_positive("splitting_identity", "u", u)?;
    require_positive("splitting_identity", "v", v)?;
    let lhs = model.nu(u + v)?;
    let out = Quadrature::new(0.0).rel_tol(1e-12).integrate(
        |y| {
            if y == 0.0 {
                return 0.0;
            }
            let a = model.f_hit(y, u).unwrap_or(f64::NAN);
            let b = model.f_hit(y, v).unwrap_or(f64::NAN);
            model.speed_density(y) * a * b
        },
        0.0,
        f64::INFINITY,
    );
    Ok((lhs, quad_value(out, "splitting_identity")?))
}

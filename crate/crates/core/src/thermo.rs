//! Relative Dedekind eta function, partition function, vacuum energy and
//! Casimir force.
//!
//! With `τ` identified with the inverse temperature `β`, the regularized
//! partition function assembles from the Laurent data `(R₁, R₀)` of the
//! zeta function at `s = −1/2` and the eta function:
//!
//! ```text
//! log Z    = β (log 2ℓ − 1) R₁ − (β/2) R₀ − log η(β),
//! E_vacuum = −(log 2ℓ − 1) R₁ + R₀/2,
//! ```
//!
//! so that `log Z = −E_vacuum β − log η(β)` and the eta term dies off at low
//! temperature. The Casimir force is `F = −∂E_vacuum/∂a`; a negative force
//! is attractive.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::models::{OnePointModel, SpectralMeasure, TwoPointModel};
use crate::quad::{integrate_finite, integrate_to_infinity, QuadratureSpec};
use crate::specfun::{exp_integral_e1, stirling_remainder};
use crate::zetareg::{
    finite_range_points, interaction_finite_part, two_point_laurent_parts, LaurentData,
};

/// Inverse temperature and renormalization scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    beta: f64,
    ell: f64,
}

impl ThermalState {
    pub fn new(beta: f64, ell: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid("beta", beta, "must be positive and finite"));
        }
        if !(ell > 0.0 && ell.is_finite()) {
            return Err(Error::invalid("ell", ell, "must be positive and finite"));
        }
        Ok(Self { beta, ell })
    }

    /// `ℓ = 1`.
    pub fn at_beta(beta: f64) -> Result<Self> {
        Self::new(beta, 1.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// Radius of the thermal circle, `β/2π`.
    pub fn radius(&self) -> f64 {
        self.beta / (2.0 * PI)
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(beta, self.ell)
    }

    /// `log 2ℓ − 1`, the coefficient of `R₁` in the vacuum energy.
    fn scale_factor(&self) -> f64 {
        (2.0 * self.ell).ln() - 1.0
    }
}

/// Everything that goes into `log Z` for one model and temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub log_z: f64,
    pub vacuum_energy: f64,
    pub eta_log: f64,
    pub laurent: LaurentData,
    pub model: String,
}

/// `log(1 − e^{−x})` for `x > 0` without cancellation at either end.
fn log1mexp(x: f64) -> f64 {
    if x < std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// `∫₀^∞ g(v) e(v) dv` for a kernel with at most a logarithmic singularity
/// at 0 that decays like `e^{−rate·v}`. The panel `(0, 1/rate)` is mapped by
/// `v = e^{−x}/rate`, which turns the singularity into `x e^{−x}`.
fn kernel_integral<G>(e: &SpectralMeasure, g: G, rate: f64, spec: &QuadratureSpec, what: &str) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let v1 = 1.0 / rate;
    let cutoff = 45.0 / rate;
    let near = |x: f64| {
        // far out the mapped integrand behaves like x e^{−x}
        if x > 700.0 {
            return 0.0;
        }
        let v = v1 * (-x).exp();
        g(v) * e.eval(v) * v
    };
    let head = integrate_to_infinity(near, 0.0, &spec.clone().with_split_points(Vec::new()))?
        .require(what)?;
    let points: Vec<f64> = finite_range_points(e, &[2.0 * v1, 5.0 * v1, 12.0 * v1], cutoff)
        .into_iter()
        .filter(|&p| p > v1)
        .collect();
    let body = integrate_finite(|v| g(v) * e.eval(v), v1, cutoff, &spec.clone().with_split_points(points))?
        .require(what)?;
    Ok(head + body)
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("tau", tau, "must be positive and finite"))
    }
}

/// `log η(τ) = ∫₀^∞ log(1 − e^{−τv}) e(v) dv`.
pub fn log_eta(e: &SpectralMeasure, tau: f64) -> Result<f64> {
    log_eta_with(e, tau, &QuadratureSpec::tight())
}

pub fn log_eta_with(e: &SpectralMeasure, tau: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_tau(tau)?;
    if e.is_zero() {
        return Ok(0.0);
    }
    kernel_integral(e, |v| log1mexp(tau * v), tau, spec, "log eta")
}

/// Closed form of the one-point eta function, `log η(τ) = −μ(2ατ)` with
/// Binet's remainder `μ(x) = log Γ(x) + (1/2) log x − x(log x − 1) − (1/2) log 2π`.
pub fn one_point_log_eta_closed(m: &OnePointModel, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    if m.alpha() == 0.0 {
        return Ok(0.0);
    }
    Ok(-stirling_remainder(2.0 * m.alpha() * tau)?)
}

/// `φ(n) = (1/n) ∫₀^∞ e^{−nτv} e(v) dv` and `∫₀^∞ v e^{−nτv} e(v) dv`.
fn laplace_moments(e: &SpectralMeasure, rate: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let cutoff = 45.0 / rate;
    let points = finite_range_points(e, &[1.0 / rate, 4.0 / rate], cutoff);
    let spec = spec.clone().with_split_points(points);
    let m0 = integrate_finite(|v| (-rate * v).exp() * e.eval(v), 0.0, cutoff, &spec)?.require("eta series term")?;
    let m1 = integrate_finite(|v| v * (-rate * v).exp() * e.eval(v), 0.0, cutoff, &spec)?
        .require("eta series term")?;
    Ok((m0, m1))
}

/// Partial sum `−Σ_{n=1}^{N} (1/n) ∫₀^∞ e^{−nτv} e(v) dv` of the expanded
/// logarithm. The terms are all positive, so the partial sums decrease
/// monotonically towards `log η`.
pub fn eta_series_partial(e: &SpectralMeasure, tau: f64, n_max: usize) -> Result<f64> {
    check_tau(tau)?;
    if n_max == 0 {
        return Err(Error::invalid("n_max", 0.0, "must be at least 1"));
    }
    if e.is_zero() {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::tight();
    let mut sum = 0.0;
    for n in (1..=n_max).rev() {
        let (m0, _) = laplace_moments(e, n as f64 * tau, &spec)?;
        sum += m0 / n as f64;
    }
    Ok(-sum)
}

/// The expanded series with its tail beyond `n_max` summed by
/// Euler–Maclaurin:
///
/// ```text
/// Σ_{n>N} φ(n) ≈ ∫₀^∞ E₁(Nτv) e(v) dv − φ(N)/2 − φ′(N)/12.
/// ```
///
/// The bare partial sum converges only like `1/N`; with the tail the
/// result agrees with [`log_eta`] to better than 1e-10 from `N ≈ 20` on.
pub fn eta_series_check(e: &SpectralMeasure, tau: f64, n_max: usize) -> Result<f64> {
    let partial = eta_series_partial(e, tau, n_max)?;
    if e.is_zero() {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::tight();
    let n = n_max as f64;
    let rate = n * tau;
    let integral = kernel_integral(e, |v| exp_integral_e1(rate * v).unwrap_or(0.0), rate, &spec, "eta series tail")?;
    let (m0, m1) = laplace_moments(e, rate, &spec)?;
    let phi = m0 / n;
    let dphi = -phi / n - tau * m1 / n;
    let tail = integral - 0.5 * phi - dphi / 12.0;
    Ok(partial - tail)
}

/// `−(log 2ℓ − 1) R₁ + R₀/2`.
pub fn vacuum_energy(laurent: &LaurentData, th: &ThermalState) -> f64 {
    -th.scale_factor() * laurent.residue + 0.5 * laurent.finite_part
}

/// Assemble `log Z` from Laurent data and the eta function at `τ = β`.
pub fn relative_partition(e: &SpectralMeasure, laurent: &LaurentData, th: &ThermalState) -> Result<PartitionReport> {
    let eta_log = log_eta(e, th.beta)?;
    let beta = th.beta;
    let log_z = beta * th.scale_factor() * laurent.residue - 0.5 * beta * laurent.finite_part - eta_log;
    Ok(PartitionReport {
        log_z,
        vacuum_energy: vacuum_energy(laurent, th),
        eta_log,
        laurent: *laurent,
        model: e.source().to_string(),
    })
}

/// Explicit one-point partition function, with `x = 2αβ`:
/// `log Z = x (log 8παℓ − 1) + μ(x)`.
pub fn one_point_log_z_explicit(m: &OnePointModel, th: &ThermalState) -> Result<f64> {
    let alpha = m.alpha();
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let x = 2.0 * alpha * th.beta;
    Ok(x * ((8.0 * PI * alpha * th.ell).ln() - 1.0) + stirling_remainder(x)?)
}

/// The five terms of the two-point `log Z`:
/// `−(β/2) z_A + 2(α₀+α₁)(log 2ℓ − 1)β − Ci(2a)β/(πa) − (β/2) ζ₀ − log η(β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointPartitionTerms {
    pub z_a: f64,
    pub residue: f64,
    pub cosine_integral: f64,
    pub zeta0: f64,
    pub eta: f64,
}

impl TwoPointPartitionTerms {
    pub fn log_z(&self) -> f64 {
        self.z_a + self.residue + self.cosine_integral + self.zeta0 + self.eta
    }
}

pub fn two_point_partition_terms(m: &TwoPointModel, th: &ThermalState) -> Result<TwoPointPartitionTerms> {
    let parts = two_point_laurent_parts(m, &QuadratureSpec::tight())?;
    let beta = th.beta;
    let a = m.separation();
    let ci = crate::specfun::cosine_integral(2.0 * a)?;
    Ok(TwoPointPartitionTerms {
        z_a: -0.5 * beta * parts.z_a,
        residue: 2.0 * (m.alpha0() + m.alpha1()) * th.scale_factor() * beta,
        cosine_integral: -ci * beta / (PI * a),
        zeta0: -0.5 * beta * parts.zeta0,
        eta: -log_eta(&SpectralMeasure::from(m), beta)?,
    })
}

/// [`relative_partition`] for the two-point measure and its Laurent data.
pub fn two_point_partition(m: &TwoPointModel, th: &ThermalState) -> Result<PartitionReport> {
    let laurent = two_point_laurent_parts(m, &QuadratureSpec::tight())?.laurent();
    relative_partition(&SpectralMeasure::from(m), &laurent, th)
}

/// Casimir force with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirForce {
    /// `−∂E_vacuum/∂a`; negative values pull the centres together.
    pub force: f64,
    pub error_estimate: f64,
    /// Relative step used for the coarse stencil.
    pub step: f64,
}

/// Default relative step for [`casimir_force`].
pub const DEFAULT_FORCE_STEP: f64 = 1e-4;

/// `F = −∂E_vacuum/∂a` by central differences with steps `h·a` and `h·a/2`
/// and one Richardson step.
///
/// Only the separation-dependent share of `E_vacuum` is differenced: the
/// residue `2(α₀+α₁)` and the self-energies of the two centres do not depend
/// on `a`, so their stencil differences vanish identically and the force does
/// not depend on `ℓ`. The interaction share is evaluated on the imaginary
/// axis, where it is a smooth, exponentially convergent integral; this keeps
/// the differences accurate even when the force is many orders of magnitude
/// below the vacuum energy itself.
pub fn casimir_force(m: &TwoPointModel, th: &ThermalState, h: f64) -> Result<CasimirForce> {
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::invalid("h", h, "relative step must lie in (0, 1/2)"));
    }
    let a = m.separation();
    let stencil = |step: f64| -> Result<(TwoPointModel, TwoPointModel)> {
        let plus = m
            .with_separation(a * (1.0 + step))
            .map_err(|_| Error::StepTooLarge { a, h })?;
        let minus = m
            .with_separation(a * (1.0 - step))
            .map_err(|_| Error::StepTooLarge { a, h })?;
        Ok((plus, minus))
    };
    let spec = QuadratureSpec::tight().with_tolerances(f64::MIN_POSITIVE, 1e-13);
    let mut noise = 0.0f64;
    let mut derivative = |step: f64| -> Result<f64> {
        let (plus, minus) = stencil(step)?;
        let residue = |m: &TwoPointModel| 2.0 * (m.alpha0() + m.alpha1());
        let (ip, im) = (
            interaction_finite_part(&plus, &spec)?,
            interaction_finite_part(&minus, &spec)?,
        );
        noise = noise.max(1e-13 * ip.abs().max(im.abs()) / (a * step));
        let delta = -th.scale_factor() * (residue(&plus) - residue(&minus)) + 0.5 * (ip - im);
        Ok(delta / (2.0 * a * step))
    };
    let coarse = derivative(h)?;
    let fine = derivative(0.5 * h)?;
    let refined = (4.0 * fine - coarse) / 3.0;
    Ok(CasimirForce {
        force: -refined,
        error_estimate: (coarse - fine).abs() + noise,
        step: h,
    })
}

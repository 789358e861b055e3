//! Relative heat traces, relative zeta functions and their Laurent data at
//! `s = −1/2`.
//!
//! For a spectral measure `e(v)` the two basic transforms are
//!
//! ```text
//! K(t)  = ∫₀^∞ e^{−v²t} e(v) dv,
//! ζ(s)  = ∫₀^∞ v^{−2s}  e(v) dv,      −1/2 < Re s < 1/2.
//! ```
//!
//! Continuation to the left of the strip subtracts the large-v profile
//! `(smooth + osc·cos ωv)/v²` on `[1, ∞)`:
//!
//! ```text
//! ζ(s) = ∫₀¹ v^{−2s} e + ∫₁^∞ v^{−2s}(e − profile) + smooth/(2s+1)
//!        + osc ∫₁^∞ v^{−2s−2} cos ωv dv,
//! ```
//!
//! which is valid for `−1 < Re s < 1/2` and exposes the simple pole at
//! `s = −1/2` with residue `smooth/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::{LargeVProfile, MeasureSource, OnePointModel, SpectralMeasure, TwoPointModel};
use crate::quad::{integrate_finite, integrate_to_infinity, QuadratureSpec};
use crate::specfun::{cosine_integral, erfc_scaled, log_gamma};

/// Residue and finite part of `ζ(s)` at `s = −1/2`:
/// `ζ(s) = residue/(s + 1/2) + finite_part + O(s + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LaurentData {
    pub residue: f64,
    pub finite_part: f64,
}

/// Open strip `lo < Re s < hi` where the defining integral of `ζ` converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaStrip {
    pub lo: f64,
    pub hi: f64,
}

impl ZetaStrip {
    /// Strip of a measure that tends to a constant at 0 and decays like
    /// `v^{−2}` at infinity: `(−1/2, 1/2)` for every model here.
    pub fn of(e: &SpectralMeasure) -> Self {
        let small = e.small_v().exponent;
        let decay = 2.0;
        Self {
            lo: 0.5 * (1.0 - decay),
            hi: 0.5 * (small + 1.0),
        }
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.lo && s.re < self.hi
    }
}

/// Characteristic inverse lengths of a measure, used as quadrature breakpoints.
fn scales(e: &SpectralMeasure) -> Vec<f64> {
    match e.source() {
        MeasureSource::Zero => vec![],
        MeasureSource::OnePoint(m) => vec![m.inverse_length()],
        MeasureSource::TwoPoint(m) => vec![
            4.0 * PI * m.alpha0(),
            4.0 * PI * m.alpha1(),
            1.0 / m.separation(),
        ],
    }
}

/// Sorted, deduplicated breakpoints strictly inside `(lo, hi)`.
pub(crate) fn breakpoints(mut points: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    points.retain(|p| p.is_finite() && *p > lo && *p < hi);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    points
}

/// Breakpoints for `[0, cutoff]`: the model scales, the caller's scales, and
/// every period of the oscillating part while that stays affordable.
pub(crate) fn finite_range_points(e: &SpectralMeasure, extra: &[f64], cutoff: f64) -> Vec<f64> {
    let mut points = scales(e);
    points.extend_from_slice(extra);
    if let Some(period) = e.large_v().period() {
        let n = (cutoff / period).ceil();
        if n <= 100_000.0 {
            points.extend((1..n as usize).map(|k| k as f64 * period));
        }
    }
    breakpoints(points, 0.0, cutoff)
}

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, x, "must be positive and finite"))
    }
}

/// `Tr(e^{−tL} − e^{−tL₀}) = ∫₀^∞ e^{−v²t} e(v) dv`.
pub fn relative_heat_trace(e: &SpectralMeasure, t: f64) -> Result<f64> {
    relative_heat_trace_with(e, t, &QuadratureSpec::tight())
}

pub fn relative_heat_trace_with(e: &SpectralMeasure, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("t", t)?;
    if e.is_zero() {
        return Ok(0.0);
    }
    // beyond v²t = 45 the Gaussian factor is below 3e-20
    let cutoff = (45.0 / t).sqrt();
    let w = 1.0 / t.sqrt();
    let points = finite_range_points(e, &[0.25 * w, w, 2.0 * w, 4.0 * w], cutoff);
    let spec = spec.clone().with_split_points(points);
    integrate_finite(|v| (-v * v * t).exp() * e.eval(v), 0.0, cutoff, &spec)?.require("heat trace")
}

/// `(1/2) e^{c²t} erfc(c√t)` with `c = 4πα`.
pub fn one_point_heat_trace_closed(m: &OnePointModel, t: f64) -> Result<f64> {
    check_positive("t", t)?;
    Ok(0.5 * erfc_scaled(m.inverse_length() * t.sqrt())?)
}

/// `ζ(s) = ∫₀^∞ v^{−2s} e(v) dv` for `s` inside the convergence strip.
pub fn relative_zeta_in_strip(e: &SpectralMeasure, s: Complex64) -> Result<Complex64> {
    relative_zeta_in_strip_with(e, s, &QuadratureSpec::tight())
}

pub fn relative_zeta_in_strip_with(e: &SpectralMeasure, s: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let strip = ZetaStrip::of(e);
    if !strip.contains(s) {
        return Err(Error::ContinuationRequired {
            s,
            lo: strip.lo,
            hi: strip.hi,
        });
    }
    if e.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    continued_zeta(e, &e.large_v(), s, spec)
}

/// Assemble a complex integral from its real part and, for non-real `s`,
/// its imaginary part.
fn split_complex<F>(s: Complex64, mut integrate: F) -> Result<Complex64>
where
    F: FnMut(bool) -> Result<f64>,
{
    let re = integrate(false)?;
    let im = if s.im == 0.0 { 0.0 } else { integrate(true)? };
    Ok(Complex64::new(re, im))
}

/// `v^{−2s}` for real `v > 0`.
fn power(v: f64, s: Complex64) -> Complex64 {
    (-2.0 * s * v.ln()).exp()
}

fn part(z: Complex64, imaginary: bool) -> f64 {
    if imaginary {
        z.im
    } else {
        z.re
    }
}

/// Continued zeta function for `−1 < Re s < 1/2`, `s ≠ −1/2`.
fn continued_zeta(
    e: &SpectralMeasure,
    profile: &LargeVProfile,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if (s + 0.5).norm() < 1e-14 {
        return Err(Error::Pole {
            s,
            nearest: -0.5,
        });
    }
    // ∫₀¹ v^{−2s} e(v) dv with v = e^{−x}: ∫₀^∞ e^{−(1−2s)x} e(e^{−x}) dx
    let head = split_complex(s, |im| {
        let f = |x: f64| part((-(1.0 - 2.0 * s) * x).exp(), im) * e.eval((-x).exp());
        integrate_to_infinity(f, 0.0, spec)?.require("zeta, v < 1")
    })?;

    // ∫₁^∞ v^{−2s} (e − profile) dv
    let residual = |v: f64| e.eval(v) - profile.eval(v);
    let body = split_complex(s, |im| {
        let f = |v: f64| part(power(v, s), im) * residual(v);
        let r = match profile.period() {
            Some(p) => integrate_to_infinity(
                f,
                1.0,
                &spec.clone().with_oscillation(p).with_tail_exponent(2.0 * s.re + 3.0),
            )?,
            None => integrate_to_infinity(f, 1.0, spec)?,
        };
        r.require("zeta, profile remainder")
    })?;

    let pole = profile.smooth / (2.0 * s + 1.0);

    let oscillating = match profile.period() {
        Some(p) => {
            let w = profile.frequency;
            let integral = split_complex(s, |im| {
                let f = |v: f64| part(power(v, s + 1.0), im) * (w * v).cos();
                integrate_to_infinity(
                    f,
                    1.0,
                    &spec.clone().with_oscillation(p).with_tail_exponent(2.0 * s.re + 2.0),
                )?
                .require("zeta, oscillating profile")
            })?;
            profile.oscillatory * integral
        }
        None => Complex64::new(0.0, 0.0),
    };
    let total = head + body + pole + oscillating;
    Ok(if s.im == 0.0 {
        Complex64::new(total.re, 0.0)
    } else {
        total
    })
}

/// Nearest pole of `1/cos πs` if `s` sits on one.
fn half_integer_pole(s: Complex64) -> Option<f64> {
    let nearest = (s.re - 0.5).round() + 0.5;
    ((s.re - nearest).abs() < 1e-12 && s.im.abs() < 1e-12).then_some(nearest)
}

/// `(1/2)(4πα)^{−2s} / cos πs`.
pub fn one_point_zeta_closed(m: &OnePointModel, s: Complex64) -> Result<Complex64> {
    if let Some(nearest) = half_integer_pole(s) {
        return Err(Error::Pole { s, nearest });
    }
    if m.alpha() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let c = m.inverse_length();
    Ok(0.5 * (-2.0 * s * c.ln()).exp() / (PI * s).cos())
}

/// Residue `2α` and finite part `−4α log 4πα`.
pub fn one_point_laurent(m: &OnePointModel) -> LaurentData {
    let alpha = m.alpha();
    if alpha == 0.0 {
        log::info!("α = 0: the interaction is absent and the Laurent data vanish");
        return LaurentData::default();
    }
    LaurentData {
        residue: 2.0 * alpha,
        finite_part: -4.0 * alpha * m.inverse_length().ln(),
    }
}

/// The three pieces of the two-point continuation, split at `v = 1`:
///
/// * `zeta0 = ∫₀¹ v e(v) dv`,
/// * `z_a = ∫₁^∞ v (e(v) − profile(v)) dv`,
/// * `z_b`, the finite part of `∫₁^∞ v^{−2s} profile(v) dv`, which is
///   `(2/(πa)) Ci(2a)`; its pole carries the whole residue `2(α₀+α₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointLaurentParts {
    pub residue: f64,
    pub zeta0: f64,
    pub z_a: f64,
    pub z_b: f64,
}

impl TwoPointLaurentParts {
    pub fn finite_part(&self) -> f64 {
        self.zeta0 + self.z_a + self.z_b
    }

    pub fn laurent(&self) -> LaurentData {
        LaurentData {
            residue: self.residue,
            finite_part: self.finite_part(),
        }
    }
}

/// Laurent data of the two-point zeta function at `s = −1/2`.
pub fn two_point_laurent(m: &TwoPointModel) -> Result<LaurentData> {
    Ok(two_point_laurent_parts(m, &QuadratureSpec::tight())?.laurent())
}

pub fn two_point_laurent_with(m: &TwoPointModel, spec: &QuadratureSpec) -> Result<LaurentData> {
    Ok(two_point_laurent_parts(m, spec)?.laurent())
}

pub fn two_point_laurent_parts(m: &TwoPointModel, spec: &QuadratureSpec) -> Result<TwoPointLaurentParts> {
    let e = SpectralMeasure::from(m);
    let profile = e.large_v();
    let residue = 2.0 * (m.alpha0() + m.alpha1());

    let head_spec = spec
        .clone()
        .with_split_points(breakpoints(scales(&e), 0.0, 1.0));
    let zeta0 = integrate_finite(|v| v * e.eval(v), 0.0, 1.0, &head_spec)?.require("zeta0")?;

    // e − profile = Σ_j (e₁(α_j) − 4α_j/v²) + (e_int − osc·cos(2av)/v²);
    // the one-point shares integrate in closed form to −2α log(1 + (4πα)²),
    // and ∫₁^∞ osc·cos(2av)/v dv = −osc·Ci(2a).
    let closed: f64 = [m.alpha0(), m.alpha1()]
        .iter()
        .map(|&alpha| {
            let c = 4.0 * PI * alpha;
            -2.0 * alpha * (c * c).ln_1p()
        })
        .sum();
    let osc = profile.oscillatory;
    let w = profile.frequency;
    let ci = cosine_integral(w)?;
    let z_a = closed + interaction_tail(m, spec)? + osc * ci;
    let z_b = -osc * ci;
    Ok(TwoPointLaurentParts {
        residue,
        zeta0,
        z_a,
        z_b,
    })
}

/// `∫₁^∞ v e_int(v) dv`, rotated onto the line `v = 1 + iy`: the
/// continued interaction density is holomorphic in the upper half plane and
/// decays like `e^{−2ay}`, so
/// `∫₁^∞ v e_int dv = Re( i ∫₀^∞ (1+iy) g(1+iy) dy )`.
fn interaction_tail(m: &TwoPointModel, spec: &QuadratureSpec) -> Result<f64> {
    let l = 0.5 / m.separation();
    let f = |y: f64| {
        let v = Complex64::new(1.0, y);
        (Complex64::new(0.0, 1.0) * v * m.interaction_density_continued(v)).re
    };
    let spec = spec
        .clone()
        .with_split_points(breakpoints(vec![l, 4.0 * l, 16.0 * l], 0.0, f64::INFINITY));
    integrate_to_infinity(f, 0.0, &spec)?.require("z_A interaction share")
}

/// Laurent data of the two-point model from the rotated contour `k = iκ`:
///
/// ```text
/// finite part = −4α₀ log 4πα₀ − 4α₁ log 4πα₁
///               + (1/π) ∫₀^∞ log(1 − e^{−2aκ} / (a²(4πα₀+κ)(4πα₁+κ))) dκ.
/// ```
///
/// The integrand is smooth and decays like `e^{−2aκ}`, so the separation
/// dependence is resolved to full relative precision even when it is tiny.
pub fn two_point_laurent_imaginary_axis(m: &TwoPointModel) -> Result<LaurentData> {
    Ok(LaurentData {
        residue: 2.0 * (m.alpha0() + m.alpha1()),
        finite_part: self_energy(m) + interaction_finite_part(m, &QuadratureSpec::tight())?,
    })
}

pub(crate) fn self_energy(m: &TwoPointModel) -> f64 {
    [m.alpha0(), m.alpha1()]
        .iter()
        .map(|&alpha| -4.0 * alpha * (4.0 * PI * alpha).ln())
        .sum()
}

/// The separation-dependent share of the finite part, `(1/π) ∫₀^∞ log(1 − x(κ)) dκ`.
pub fn interaction_finite_part(m: &TwoPointModel, spec: &QuadratureSpec) -> Result<f64> {
    let a = m.separation();
    let (c0, c1) = (4.0 * PI * m.alpha0(), 4.0 * PI * m.alpha1());
    let f = |kappa: f64| {
        let x = (-2.0 * a * kappa).exp() / (a * a * (c0 + kappa) * (c1 + kappa));
        (-x).ln_1p()
    };
    let l = 0.5 / a;
    let spec = spec
        .clone()
        .with_split_points(breakpoints(vec![l, 4.0 * l, 16.0 * l, 64.0 * l], 0.0, f64::INFINITY));
    // the value itself can be far below 1; relative accuracy is what matters
    let spec = QuadratureSpec {
        abs_tol: f64::MIN_POSITIVE,
        ..spec
    };
    Ok(integrate_to_infinity(f, 0.0, &spec)?.require("interaction energy")? / PI)
}

/// Recover Laurent data at `s = −1/2` numerically: evaluate the continued
/// zeta function at `s = −1/2 ± δ` for `δ = 0.04, 0.02, 0.01` and
/// extrapolate `δ → 0` with Richardson steps in `δ²`.
pub fn numeric_laurent_probe(e: &SpectralMeasure, profile: &LargeVProfile) -> Result<LaurentData> {
    numeric_laurent_probe_with(e, profile, &QuadratureSpec::tight())
}

pub fn numeric_laurent_probe_with(
    e: &SpectralMeasure,
    profile: &LargeVProfile,
    spec: &QuadratureSpec,
) -> Result<LaurentData> {
    if e.is_zero() {
        return Ok(LaurentData::default());
    }
    const DELTAS: [f64; 3] = [0.04, 0.02, 0.01];
    let mut residues = [0.0; 3];
    let mut finites = [0.0; 3];
    for (i, d) in DELTAS.iter().enumerate() {
        let up = continued_zeta(e, profile, Complex64::new(-0.5 + d, 0.0), spec)?.re;
        let down = continued_zeta(e, profile, Complex64::new(-0.5 - d, 0.0), spec)?.re;
        residues[i] = 0.5 * d * (up - down);
        finites[i] = 0.5 * (up + down);
    }
    let residue = richardson_checked("residue", residues)?;
    let finite_part = richardson_checked("finite part", finites)?;
    Ok(LaurentData {
        residue,
        finite_part,
    })
}

/// Two Richardson levels in `δ²` for halving `δ`; the first- and second-level
/// estimates must agree.
fn richardson_checked(what: &'static str, x: [f64; 3]) -> Result<f64> {
    let r01 = (4.0 * x[1] - x[0]) / 3.0;
    let r12 = (4.0 * x[2] - x[1]) / 3.0;
    let second = (16.0 * r12 - r01) / 15.0;
    if (second - r12).abs() > 1e-4 * second.abs().max(1.0) {
        return Err(Error::Extrapolation {
            what,
            first: r12,
            second,
        });
    }
    Ok(second)
}

/// Zeta function from the heat trace by a Mellin transform,
/// `ζ(s) = (1/Γ(s)) ∫₀^∞ t^{s−1} K(t) dt`, for `0 < s < 1/2`.
///
/// With `t = e^x`, the limits `K(0⁺) = ∫e` and `K(t) ≈ e(0)√π/(2√t)` are
/// subtracted on `x < 0` and `x > 0` respectively and added back in closed form.
///
/// Below `t₀ = 1e-8` the heat trace of an oscillating measure would need
/// millions of periods, so there `K(t) − K(0⁺)` is replaced by its
/// expansion `−√π S √t + C t` (`S` the smooth large-`v` coefficient, `C`
/// matched at `t₀`) and integrated in closed form. The neglected
/// `O(t^{3/2})` term contributes about `c³ t₀^{3/2}` with `c = 4πα`.
pub fn relative_zeta_mellin(e: &SpectralMeasure, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::invalid("s", s, "the Mellin route needs 0 < s < 1/2"));
    }
    if e.is_zero() {
        return Ok(0.0);
    }
    let inner = QuadratureSpec::tight();
    let mass = relative_zeta_in_strip_with(e, Complex64::new(0.0, 0.0), &inner)?.re;
    let k_inf = e.small_v().constant * PI.sqrt() / 2.0;
    let heat = |t: f64| relative_heat_trace_with(e, t, &inner);

    // quadrature closures cannot return errors; remember the first one
    let failure = std::cell::RefCell::new(None);
    let guarded = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(err) => {
            failure.borrow_mut().get_or_insert(err);
            0.0
        }
    };
    let outer = QuadratureSpec::default().with_tolerances(1e-11, 1e-10);
    const T0: f64 = 1e-8;
    let x0 = -T0.ln();
    let sqrt_coeff = -PI.sqrt() * e.large_v().smooth;
    let lin_coeff = (heat(T0)? - mass - sqrt_coeff * T0.sqrt()) / T0;
    let below_t0 = sqrt_coeff * T0.powf(s + 0.5) / (s + 0.5) + lin_coeff * T0.powf(s + 1.0) / (s + 1.0);

    // x < 0, written as x → −x
    let small_t = |x: f64| {
        let t = (-x).exp();
        (-s * x).exp() * (guarded(heat(t)) - mass)
    };
    // beyond x = 600 the integrand is below e^{−60}
    let large_t = |x: f64| {
        if x > 600.0 {
            return 0.0;
        }
        let t = x.exp();
        (s * x).exp() * (guarded(heat(t)) - k_inf / t.sqrt())
    };
    let left = integrate_finite(small_t, 0.0, x0, &outer)?;
    let right = integrate_to_infinity(large_t, 0.0, &outer)?;
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let integral = left.require("Mellin transform, t < 1")?
        + below_t0
        + right.require("Mellin transform, t > 1")?
        + mass / s
        + k_inf / (0.5 - s);
    Ok(integral / log_gamma(s)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{one_point_spectral_measure, two_point_spectral_measure};

    fn one(alpha: f64) -> (OnePointModel, SpectralMeasure) {
        let m = OnePointModel::new(alpha).unwrap();
        (m, one_point_spectral_measure(&m))
    }

    fn unit_two_point() -> (TwoPointModel, SpectralMeasure) {
        let m = TwoPointModel::new(1.0, 1.0, 1.0).unwrap();
        (m, two_point_spectral_measure(&m))
    }

    #[test]
    fn strip_is_symmetric_half_interval() {
        let (_, e) = one(1.0);
        assert_eq!(ZetaStrip::of(&e), ZetaStrip { lo: -0.5, hi: 0.5 });
        assert!(!ZetaStrip::of(&e).contains(Complex64::new(0.5, 0.0)));
        let err = relative_zeta_in_strip(&e, Complex64::new(-0.7, 0.0)).unwrap_err();
        assert!(matches!(err, Error::ContinuationRequired { .. }));
    }

    #[test]
    fn heat_trace_matches_closed_form() {
        let (m, e) = one(0.25);
        for t in [0.01, 0.1, 1.0, 10.0] {
            let q = relative_heat_trace(&e, t).unwrap();
            let c = one_point_heat_trace_closed(&m, t).unwrap();
            assert!((q - c).abs() < 1e-10, "t={t}: {q} vs {c}");
        }
    }

    #[test]
    fn heat_trace_limits() {
        let (m, e) = one(1.0 / (4.0 * PI));
        // (1/2) e erfc(1)
        let want = 0.5 * 0.427_583_576_155_807_00;
        assert!((one_point_heat_trace_closed(&m, 1.0).unwrap() - want).abs() < 1e-15);
        assert!((relative_heat_trace(&e, 1e-8).unwrap() - 0.5).abs() < 1e-3);
        let (m0, e0) = one(0.0);
        assert_eq!(one_point_heat_trace_closed(&m0, 3.0).unwrap(), 0.5);
        assert_eq!(relative_heat_trace(&e0, 3.0).unwrap(), 0.0);
        // large-t asymptote 1/(8πα√(πt)) at 4πα√t = 50
        let (m, _) = one(1.0);
        let t = (50.0 / m.inverse_length()).powi(2);
        let asymptote = 1.0 / (8.0 * PI * m.alpha() * (PI * t).sqrt());
        let closed = one_point_heat_trace_closed(&m, t).unwrap();
        assert!(((closed - asymptote) / asymptote).abs() < 1e-3);
        assert!(relative_heat_trace(&e, 0.0).is_err());
    }

    #[test]
    fn one_point_zeta_closed_values() {
        let (m, _) = one(0.25);
        let z0 = one_point_zeta_closed(&m, Complex64::new(0.0, 0.0)).unwrap();
        assert!((z0.re - 0.5).abs() < 1e-15);
        let unit = OnePointModel::new(1.0 / (4.0 * PI)).unwrap();
        let z = one_point_zeta_closed(&unit, Complex64::new(0.25, 0.0)).unwrap();
        assert!((z.re - 0.5 / (PI / 4.0).cos()).abs() < 1e-14);
        let err = one_point_zeta_closed(&m, Complex64::new(-0.5, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Pole { nearest, .. } if nearest == -0.5));
        assert!(matches!(
            one_point_zeta_closed(&m, Complex64::new(1.5, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn zeta_in_strip_matches_closed_form() {
        for alpha in [0.1, 0.25, 1.0] {
            let (m, e) = one(alpha);
            for s in [-0.45, -0.2, 0.0, 0.25, 0.45] {
                let s = Complex64::new(s, 0.0);
                let q = relative_zeta_in_strip(&e, s).unwrap();
                let c = one_point_zeta_closed(&m, s).unwrap();
                assert!((q - c).norm() < 1e-9, "α={alpha}, s={s}: {q} vs {c}");
                assert_eq!(q.im, 0.0);
            }
        }
    }

    #[test]
    fn zeta_in_strip_complex_argument() {
        let (m, e) = one(0.25);
        let s = Complex64::new(0.1, 0.3);
        let q = relative_zeta_in_strip(&e, s).unwrap();
        let c = one_point_zeta_closed(&m, s).unwrap();
        assert!((q - c).norm() < 1e-9, "{q} vs {c}");
    }

    #[test]
    fn one_point_laurent_values() {
        let (m, _) = one(0.25);
        assert_eq!(one_point_laurent(&m).residue, 0.5);
        let unit = OnePointModel::new(1.0 / (4.0 * PI)).unwrap();
        assert_eq!(one_point_laurent(&unit).finite_part, 0.0);
        let (m, _) = one(1.0);
        // −4 log 4π
        assert!((one_point_laurent(&m).finite_part + 10.124_096_987_877_163).abs() < 1e-12);
        assert_eq!(one_point_laurent(&OnePointModel::new(0.0).unwrap()), LaurentData::default());
    }

    #[test]
    fn probe_recovers_one_point_laurent_data() {
        let (m, e) = one(0.25);
        let p = numeric_laurent_probe(&e, &e.large_v()).unwrap();
        let exact = one_point_laurent(&m);
        assert!((p.residue - exact.residue).abs() < 1e-5, "{p:?}");
        assert!((p.finite_part - exact.finite_part).abs() < 1e-5, "{p:?}");
        let (_, e) = one(1.0 / (4.0 * PI));
        let p = numeric_laurent_probe(&e, &e.large_v()).unwrap();
        assert!(p.finite_part.abs() < 1e-5);
    }

    #[test]
    fn two_point_laurent_pieces() {
        let (m, _) = unit_two_point();
        let parts = two_point_laurent_parts(&m, &QuadratureSpec::tight()).unwrap();
        assert_eq!(parts.residue, 4.0);
        assert!((parts.zeta0 - 0.025_461_325_917_743_234).abs() < 1e-13);
        assert!((parts.z_a + 20.543_870_698_172_467).abs() < 1e-9, "{}", parts.z_a);
        assert!((parts.finite_part() + 20.249_131_413_324_218).abs() < 1e-9);
    }

    #[test]
    fn rotated_tail_matches_panel_summation() {
        for a in [0.5, 1.0, 2.0] {
            let m = TwoPointModel::new(1.0, 0.7, a).unwrap();
            let rotated = interaction_tail(&m, &QuadratureSpec::tight()).unwrap();
            let spec = QuadratureSpec::tight()
                .with_oscillation(PI / a)
                .with_tail_exponent(1.0);
            let panels = integrate_to_infinity(|v| v * m.interaction_density(v), 1.0, &spec).unwrap();
            assert!(panels.converged);
            assert!((rotated - panels.value).abs() < 1e-10, "a={a}: {rotated} vs {}", panels.value);
        }
    }

    #[test]
    fn two_point_finite_part_agrees_across_routes() {
        for (a0, a1, a, want) in [
            (1.0, 1.0, 1.0, -20.249_131_413_324_218),
            (0.5, 2.0, 1.0, -29.470_048_263_472_216),
            (1.0, 1.0, 3.0, -20.248_230_357_594_082),
        ] {
            let m = TwoPointModel::new(a0, a1, a).unwrap();
            let split = two_point_laurent(&m).unwrap().finite_part;
            let rotated = two_point_laurent_imaginary_axis(&m).unwrap().finite_part;
            assert!((rotated - want).abs() < 1e-12, "{rotated} vs {want}");
            assert!((split - want).abs() < 1e-9, "{split} vs {want}");
        }
    }

    #[test]
    fn probe_recovers_two_point_laurent_data() {
        let (m, e) = unit_two_point();
        let p = numeric_laurent_probe(&e, &e.large_v()).unwrap();
        let exact = two_point_laurent(&m).unwrap();
        assert!((p.residue - 4.0).abs() < 1e-4, "{p:?}");
        assert!((p.finite_part - exact.finite_part).abs() < 1e-4, "{p:?} vs {exact:?}");
    }

    #[test]
    fn two_point_zeta_at_zero_is_total_mass() {
        let (_, e) = unit_two_point();
        let z = relative_zeta_in_strip(&e, Complex64::new(0.0, 0.0)).unwrap().re;
        let spec = QuadratureSpec::tight().with_oscillation(PI).with_tail_exponent(1.0);
        let direct = integrate_to_infinity(|v| e.eval(v), 0.0, &spec).unwrap().value;
        assert!((z - direct).abs() < 1e-9, "{z} vs {direct}");
    }

    #[test]
    fn mellin_route_matches_strip() {
        let (m, e) = one(0.25);
        let s = 0.25;
        let mellin = relative_zeta_mellin(&e, s).unwrap();
        let closed = one_point_zeta_closed(&m, Complex64::new(s, 0.0)).unwrap().re;
        assert!((mellin - closed).abs() < 1e-7, "{mellin} vs {closed}");
    }

    #[test]
    fn mellin_route_handles_oscillating_measures() {
        let (_, e) = unit_two_point();
        for s in [0.1, 0.4] {
            let mellin = relative_zeta_mellin(&e, s).unwrap();
            let direct = relative_zeta_in_strip(&e, Complex64::new(s, 0.0)).unwrap().re;
            assert!((mellin - direct).abs() < 1e-7, "s={s}: {mellin} vs {direct}");
        }
    }

    #[test]
    fn degeneracy_of_the_finite_part() {
        // finite part minus the divergent α₁ share approaches the one-point value
        let alpha0 = 0.25;
        let target = one_point_laurent(&OnePointModel::new(alpha0).unwrap()).finite_part;
        let mut previous = f64::INFINITY;
        for alpha1 in [1e2, 1e3, 1e4] {
            let m = TwoPointModel::new(alpha0, alpha1, 1.0).unwrap();
            let l = two_point_laurent(&m).unwrap();
            let share = -4.0 * alpha1 * (4.0 * PI * alpha1).ln();
            let gap = (l.finite_part - share - target).abs();
            assert!(gap < previous, "α₁={alpha1}: {gap}");
            previous = gap;
        }
    }
}

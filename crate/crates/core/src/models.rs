//! Delta-interaction models: resolvent-trace differences and relative
//! spectral measures.
//!
//! The spectral measure is the jump of the relative resolvent trace across
//! the positive real axis,
//!
//! ```text
//! e(v) = (v / πi) · lim_{ε→0⁺} [ r(v² e^{2πi − iε}) − r(v² e^{iε}) ],
//! ```
//!
//! with `r(λ)` evaluated at `k = √λ`, `0 < arg k < π`. The lower rim maps to
//! `k = −v` and the upper rim to `k = +v`. For both models `r(−v) = conj r(v)`,
//! so the limit is taken analytically:
//!
//! ```text
//! e(v) = −(2v/π) · Im r(v).
//! ```
//!
//! [`spectral_density_from_rims`] keeps the finite-ε two-rim formula around
//! for cross-checks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The pair `(−Δ_α, −Δ)`: a single point interaction of strength `α ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnePointModel {
    alpha: f64,
}

impl OnePointModel {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                alpha,
                "must be finite and non-negative (negative values carry a bound state)",
            ));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `4πα`, the inverse scattering length.
    pub fn inverse_length(&self) -> f64 {
        4.0 * PI * self.alpha
    }
}

/// The pair `(−Δ_{α,a}, −Δ)`: two point interactions a distance `a` apart.
///
/// Construction enforces `α₀, α₁ > 0` and `4π²α₀α₁a² ≥ 1`, which keeps the
/// spectrum purely absolutely continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointModel {
    alpha0: f64,
    alpha1: f64,
    a: f64,
}

impl TwoPointModel {
    pub fn new(alpha0: f64, alpha1: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::invalid("a", a, "separation must be positive and finite"));
        }
        if !(alpha0.is_finite() && alpha1.is_finite()) {
            return Err(Error::invalid("alpha", alpha0 + alpha1, "couplings must be finite"));
        }
        let product = 4.0 * PI * PI * alpha0 * alpha1 * a * a;
        if !(alpha0 > 0.0 && alpha1 > 0.0) || product < 1.0 {
            return Err(Error::BoundStateRegime { product });
        }
        if product < 1.0 + 1e-12 {
            log::warn!(
                "4π²α₀α₁a² = {product} sits on the boundary of the admissible range; \
                 a zero-energy resonance is not excluded"
            );
        }
        Ok(Self { alpha0, alpha1, a })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn separation(&self) -> f64 {
        self.a
    }

    /// `4π²α₀α₁a²`; at least 1 for every constructed model.
    pub fn binding_product(&self) -> f64 {
        4.0 * PI * PI * self.alpha0 * self.alpha1 * self.a * self.a
    }

    /// Same couplings, different separation.
    pub fn with_separation(&self, a: f64) -> Result<Self> {
        Self::new(self.alpha0, self.alpha1, a)
    }

    /// Same model with the two couplings exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha0: self.alpha1,
            alpha1: self.alpha0,
            a: self.a,
        }
    }

    /// Interaction share of the spectral measure: `e(v)` minus the one-point
    /// measures of the two centres taken separately. Computed from the
    /// identity `N/D − Σ 1/(2(A_j − iw)) = E(P + N₀)/(P·D)` so that no
    /// cancellation occurs, with `P = (A − iw)(B − iw)` and `N₀ = (A+B)/2 − iw`.
    pub fn interaction_density(&self, v: f64) -> f64 {
        self.interaction_density_continued(Complex64::new(v, 0.0)).re
    }

    /// The analytic function whose real part on the real axis is
    /// [`interaction_density`](Self::interaction_density). It is holomorphic
    /// in the upper half plane and decays there like `e^{−2a Im v}`, which
    /// allows oscillatory integrals of it to be rotated onto `Re v = const`.
    pub fn interaction_density_continued(&self, v: Complex64) -> Complex64 {
        let a = self.a;
        let iw = I * v * a;
        let phase = (2.0 * iw).exp();
        let (ca, cb) = (4.0 * PI * self.alpha0 * a, 4.0 * PI * self.alpha1 * a);
        let p = (ca - iw) * (cb - iw);
        let n0 = 0.5 * (ca + cb) - iw;
        let d = p - phase;
        2.0 * a / PI * phase * (p + n0) / (p * d)
    }

    /// Numerator and denominator of the traced resolvent difference,
    /// `N = 2π(α₀+α₁)a − ika + e^{2ika}` and
    /// `D = (4πα₀a − ika)(4πα₁a − ika) − e^{2ika}`.
    fn numerator_denominator(&self, k: Complex64) -> (Complex64, Complex64) {
        let a = self.a;
        let ika = I * k * a;
        let phase = (2.0 * ika).exp();
        let n = 2.0 * PI * (self.alpha0 + self.alpha1) * a - ika + phase;
        let d = (4.0 * PI * self.alpha0 * a - ika) * (4.0 * PI * self.alpha1 * a - ika) - phase;
        (n, d)
    }
}

/// A traced resolvent difference evaluated at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventPoint {
    /// Wavenumber `k = √λ` on the physical sheet, `Im k > 0`.
    pub k: Complex64,
    /// `Tr(R(k², L) − R(k², L₀))`.
    pub value: Complex64,
}

/// Operator pairs with a closed-form relative resolvent trace.
pub trait RelativeResolvent {
    /// `Tr(R(k², L) − R(k², L₀))` for `Im k > 0`.
    fn resolvent_trace(&self, k: Complex64) -> Result<Complex64>;

    fn resolvent_point(&self, k: Complex64) -> Result<ResolventPoint> {
        Ok(ResolventPoint {
            k,
            value: self.resolvent_trace(k)?,
        })
    }
}

fn check_sheet(k: Complex64) -> Result<()> {
    if k.im > 0.0 && k.re.is_finite() && k.im.is_finite() {
        Ok(())
    } else {
        Err(Error::WrongSheet { k })
    }
}

/// `1 / (2ik (4πα − ik))`.
pub fn one_point_resolvent_trace(m: &OnePointModel, k: Complex64) -> Result<Complex64> {
    check_sheet(k)?;
    Ok(1.0 / (2.0 * I * k * (m.inverse_length() - I * k)))
}

/// `(a²/(ika)) · N / D` with `N`, `D` as in the two-point resolvent.
pub fn two_point_resolvent_trace(m: &TwoPointModel, k: Complex64) -> Result<Complex64> {
    check_sheet(k)?;
    let (n, d) = m.numerator_denominator(k);
    if d.norm() <= 1e-300 {
        return Err(Error::SingularPoint { k });
    }
    Ok(m.a / (I * k) * n / d)
}

impl RelativeResolvent for OnePointModel {
    fn resolvent_trace(&self, k: Complex64) -> Result<Complex64> {
        one_point_resolvent_trace(self, k)
    }
}

impl RelativeResolvent for TwoPointModel {
    fn resolvent_trace(&self, k: Complex64) -> Result<Complex64> {
        two_point_resolvent_trace(self, k)
    }
}

/// The two-rim formula at finite `ε`:
/// `(v/πi)(r(v² e^{2πi−iε}) − r(v² e^{iε}))`. Tends to `e(v)` as `ε → 0⁺`,
/// with an error linear in `ε`.
pub fn spectral_density_from_rims<M: RelativeResolvent>(m: &M, v: f64, eps: f64) -> Result<Complex64> {
    if !(v > 0.0 && eps > 0.0 && eps < PI) {
        return Err(Error::invalid("rim offset", eps, "need v > 0 and 0 < ε < π"));
    }
    let upper = Complex64::from_polar(v, 0.5 * eps);
    let lower = Complex64::from_polar(v, PI - 0.5 * eps);
    let jump = m.resolvent_trace(lower)? - m.resolvent_trace(upper)?;
    Ok(v / (PI * I) * jump)
}

/// Leading behaviour `e(v) ≈ constant · v^exponent` as `v → 0⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallVProfile {
    pub constant: f64,
    pub exponent: f64,
}

/// Leading behaviour `e(v) ≈ (smooth + oscillatory · cos(frequency · v)) / v²`
/// as `v → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeVProfile {
    pub smooth: f64,
    pub oscillatory: f64,
    pub frequency: f64,
}

impl LargeVProfile {
    pub fn eval(&self, v: f64) -> f64 {
        let osc = if self.oscillatory == 0.0 {
            0.0
        } else {
            self.oscillatory * (self.frequency * v).cos()
        };
        (self.smooth + osc) / (v * v)
    }

    /// Period of the oscillating term, if there is one.
    pub fn period(&self) -> Option<f64> {
        (self.oscillatory != 0.0 && self.frequency > 0.0).then(|| 2.0 * PI / self.frequency)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureSource {
    /// `α = 0`: the interaction is absent and the measure vanishes.
    Zero,
    OnePoint(OnePointModel),
    TwoPoint(TwoPointModel),
}

impl std::fmt::Display for MeasureSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeasureSource::Zero => write!(f, "zero"),
            MeasureSource::OnePoint(m) => write!(f, "one-point(alpha={})", m.alpha),
            MeasureSource::TwoPoint(m) => write!(
                f,
                "two-point(alpha0={}, alpha1={}, a={})",
                m.alpha0, m.alpha1, m.a
            ),
        }
    }
}

/// The relative spectral measure `v ↦ e(v; L, L₀)` of one model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMeasure {
    source: MeasureSource,
}

impl SpectralMeasure {
    pub fn source(&self) -> MeasureSource {
        self.source
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.source, MeasureSource::Zero)
    }

    /// Whether the large-v profile carries an oscillating term.
    pub fn is_oscillatory(&self) -> bool {
        self.large_v().period().is_some()
    }

    /// `e(v)` for `v ≥ 0`; at `v = 0` this is the continuous limit.
    pub fn eval(&self, v: f64) -> f64 {
        match self.source {
            MeasureSource::Zero => 0.0,
            MeasureSource::OnePoint(m) => {
                let c = m.inverse_length();
                4.0 * m.alpha / (c * c + v * v)
            }
            MeasureSource::TwoPoint(m) => {
                // e(v) = −(2v/π) Im r(v) with r(v) = (a/(iv)) N/D
                let (n, d) = m.numerator_denominator(Complex64::new(v, 0.0));
                2.0 * m.a / PI * (n / d).re
            }
        }
    }

    pub fn small_v(&self) -> SmallVProfile {
        let constant = match self.source {
            MeasureSource::Zero => 0.0,
            MeasureSource::OnePoint(m) => 1.0 / (4.0 * PI * PI * m.alpha),
            MeasureSource::TwoPoint(m) => {
                let a = m.a;
                a / PI * (4.0 * PI * (m.alpha0 + m.alpha1) * a + 2.0)
                    / (16.0 * PI * PI * m.alpha0 * m.alpha1 * a * a - 1.0)
            }
        };
        SmallVProfile {
            constant,
            exponent: 0.0,
        }
    }

    pub fn large_v(&self) -> LargeVProfile {
        match self.source {
            MeasureSource::Zero => LargeVProfile {
                smooth: 0.0,
                oscillatory: 0.0,
                frequency: 0.0,
            },
            MeasureSource::OnePoint(m) => LargeVProfile {
                smooth: 4.0 * m.alpha,
                oscillatory: 0.0,
                frequency: 0.0,
            },
            MeasureSource::TwoPoint(m) => LargeVProfile {
                // (4π(α₀+α₁)a − 2cos(2av)) / (πav²)
                smooth: 4.0 * (m.alpha0 + m.alpha1),
                oscillatory: -2.0 / (PI * m.a),
                frequency: 2.0 * m.a,
            },
        }
    }
}

/// `e(v) = 4α / ((4πα)² + v²)`; the zero measure when `α = 0`.
pub fn one_point_spectral_measure(m: &OnePointModel) -> SpectralMeasure {
    let source = if m.alpha == 0.0 {
        MeasureSource::Zero
    } else {
        MeasureSource::OnePoint(*m)
    };
    SpectralMeasure { source }
}

/// Spectral measure of the two-point model, `e(v) = (2a/π) Re(N(v)/D(v))`.
pub fn two_point_spectral_measure(m: &TwoPointModel) -> SpectralMeasure {
    SpectralMeasure {
        source: MeasureSource::TwoPoint(*m),
    }
}

impl From<&OnePointModel> for SpectralMeasure {
    fn from(m: &OnePointModel) -> Self {
        one_point_spectral_measure(m)
    }
}

impl From<&TwoPointModel> for SpectralMeasure {
    fn from(m: &TwoPointModel) -> Self {
        two_point_spectral_measure(m)
    }
}

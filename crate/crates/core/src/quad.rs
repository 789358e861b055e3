//! Adaptive Gauss–Kronrod quadrature over finite and semi-infinite ranges.
//!
//! Three strategies live here:
//!
//! * finite ranges: global adaptive bisection with the 21-point Kronrod rule,
//!   always splitting the segment with the largest error estimate;
//! * semi-infinite ranges without oscillation: the tail `(s, ∞)` is mapped to
//!   `(0, 1)` by `v = s + u/(1-u)` and handed to the finite engine;
//! * semi-infinite ranges with an `oscillation_period`: the tail is cut into
//!   half-period panels, the running sum is sampled at whole-period
//!   boundaries `V = s + nP` for `n = 8, 16, 32, ...`, and the samples are
//!   extrapolated to `V = ∞`.
//!
//! At whole-period boundaries every periodic factor of the integrand has the
//! same phase, so the truncated tail behaves like `Σ_k c_k V^{-(q+k)}` with
//! `q` the [`QuadratureSpec::tail_exponent`]. The extrapolation fits exactly
//! that model. This handles integrands that mix a non-oscillating algebraic
//! tail with oscillating terms, where alternating-series accelerators stall.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Periods in the first extrapolation sample of the oscillatory tail.
const FIRST_SAMPLE_PERIODS: usize = 8;
/// Maximum number of correction terms in the tail model.
const MAX_TAIL_TERMS: usize = 6;

/// Tolerances and hints for one quadrature call.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Budget of bisections for the adaptive engine (per panel in oscillatory mode).
    pub max_subdivisions: usize,
    /// Interior breakpoints; points outside the integration range are ignored.
    pub split_points: Vec<f64>,
    /// Period of the oscillating factors; switches the tail to panel summation.
    pub oscillation_period: Option<f64>,
    /// Leading decay exponent `q` of the truncated tail, `∫_V^∞ f ~ V^{-q}`.
    pub tail_exponent: f64,
    /// Cap on the number of whole periods summed in oscillatory mode.
    pub max_periods: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            split_points: Vec::new(),
            oscillation_period: None,
            tail_exponent: 1.0,
            max_periods: 1 << 21,
        }
    }
}

impl QuadratureSpec {
    /// Tolerances tight enough for values that are later differenced or
    /// compared against closed forms at the 1e-8 level.
    pub fn tight() -> Self {
        Self::default().with_tolerances(1e-13, 1e-12)
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_split_points(mut self, points: impl Into<Vec<f64>>) -> Self {
        self.split_points = points.into();
        self
    }

    pub fn with_oscillation(mut self, period: f64) -> Self {
        self.oscillation_period = Some(period);
        self
    }

    pub fn with_tail_exponent(mut self, q: f64) -> Self {
        self.tail_exponent = q;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol", self.abs_tol, "must be positive"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", self.rel_tol, "must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", 0.0, "must be at least 1"));
        }
        for w in self.split_points.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::invalid(
                    "split_points",
                    w[1],
                    "must be strictly increasing",
                ));
            }
        }
        if let Some(&p) = self.split_points.iter().find(|p| !p.is_finite()) {
            return Err(Error::invalid("split_points", p, "must be finite"));
        }
        if let Some(p) = self.oscillation_period {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::invalid("oscillation_period", p, "must be positive"));
            }
        }
        if !(self.tail_exponent > 0.0) {
            return Err(Error::invalid(
                "tail_exponent",
                self.tail_exponent,
                "must be positive for a convergent tail",
            ));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of a quadrature call. Non-convergence is reported through
/// `converged = false` with the best partial value, not as an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// The value, or [`Error::NotConverged`] naming `what` failed.
    pub fn require(self, what: &str) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged {
                what: what.to_string(),
                value: self.value,
                error: self.error_estimate,
            })
        }
    }

    fn combine(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };
    let fc = eval(center)?;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let y1 = eval(center - dx)?;
        let y2 = eval(center + dx)?;
        fv1[jtw] = y1;
        fv2[jtw] = y2;
        res_g += WG[j] * (y1 + y2);
        res_k += WGK[jtw] * (y1 + y2);
        res_abs += WGK[jtw] * (y1.abs() + y2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let y1 = eval(center - dx)?;
        let y2 = eval(center + dx)?;
        fv1[jtwm1] = y1;
        fv2[jtwm1] = y2;
        res_k += WGK[jtwm1] * (y1 + y2);
        res_abs += WGK[jtwm1] * (y1.abs() + y2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let abs_half = half.abs();
    Ok((
        res_k * half,
        rescale_error(err, res_abs * abs_half, res_asc * abs_half),
    ))
}

/// Global adaptive bisection over a list of contiguous intervals.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    intervals: &[(f64, f64)],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult> {
    let mut heap = BinaryHeap::with_capacity(intervals.len() + 2 * max_subdivisions);
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0;
    let mut value = 0.0;
    let mut error = 0.0;
    for &(a, b) in intervals {
        let (v, e) = gk21(f, a, b)?;
        evaluations += 21;
        value += v;
        error += e;
        heap.push(Segment {
            a,
            b,
            value: v,
            error: e,
        });
    }
    let mut subdivisions = 0;
    let target = |v: f64| abs_tol.max(rel_tol * v.abs());
    while error > target(value) && subdivisions < max_subdivisions {
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        let scale = seg.a.abs().max(seg.b.abs()).max(f64::MIN_POSITIVE);
        if (seg.b - seg.a) <= 1e3 * f64::EPSILON * scale || mid <= seg.a || mid >= seg.b {
            // cannot be refined any further
            frozen.push(seg);
            continue;
        }
        let (v1, e1) = gk21(f, seg.a, mid)?;
        let (v2, e2) = gk21(f, mid, seg.b)?;
        evaluations += 42;
        subdivisions += 1;
        value += v1 + v2 - seg.value;
        error += e1 + e2 - seg.error;
        heap.push(Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
        });
    }
    // resum to remove drift from the incremental updates
    let mut v_sum = CompensatedSum::default();
    let mut e_sum = 0.0;
    for seg in heap.iter().chain(frozen.iter()) {
        v_sum.add(seg.value);
        e_sum += seg.error;
    }
    let value = v_sum.value();
    Ok(QuadratureResult {
        value,
        error_estimate: e_sum,
        evaluations,
        converged: e_sum <= target(value),
    })
}

fn breakpoints(lo: f64, hi: f64, splits: &[f64]) -> Vec<(f64, f64)> {
    let mut pts = vec![lo];
    pts.extend(splits.iter().copied().filter(|&p| p > lo && p < hi));
    pts.push(hi);
    pts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Integrate `f` over `[lo, hi]`.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid("integration range", hi - lo, "need finite lo < hi"));
    }
    adaptive(
        &f,
        &breakpoints(lo, hi, &spec.split_points),
        spec.abs_tol,
        spec.rel_tol,
        spec.max_subdivisions,
    )
}

/// Integrate `f` over `[lo, ∞)`.
pub fn integrate_to_infinity<F>(f: F, lo: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !lo.is_finite() {
        return Err(Error::invalid("lower limit", lo, "must be finite"));
    }
    let tail_start = spec
        .split_points
        .iter()
        .copied()
        .filter(|&p| p > lo)
        .fold(lo, f64::max);
    match spec.oscillation_period {
        None => {
            // the tail occupies [tail_start, tail_start + 1) in the combined variable
            let h = |x: f64| {
                if x < tail_start {
                    f(x)
                } else {
                    let u = x - tail_start;
                    let w = 1.0 - u;
                    f(tail_start + u / w) / (w * w)
                }
            };
            let mut pieces = breakpoints(lo, tail_start, &spec.split_points);
            if tail_start == lo {
                pieces.clear();
            }
            pieces.push((tail_start, tail_start + 1.0));
            adaptive(
                &h,
                &pieces,
                spec.abs_tol,
                spec.rel_tol,
                spec.max_subdivisions,
            )
        }
        Some(period) => {
            let head = if tail_start > lo {
                Some(adaptive(
                    &f,
                    &breakpoints(lo, tail_start, &spec.split_points),
                    spec.abs_tol * 0.1,
                    spec.rel_tol * 0.1,
                    spec.max_subdivisions,
                )?)
            } else {
                None
            };
            let tail = oscillatory_tail(&f, tail_start, period, spec)?;
            let total = match head {
                Some(h) => h.combine(tail),
                None => tail,
            };
            Ok(QuadratureResult {
                converged: total.error_estimate <= spec.target(total.value),
                ..total
            })
        }
    }
}

fn oscillatory_tail<F: Fn(f64) -> f64>(
    f: &F,
    start: f64,
    period: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let half = 0.5 * period;
    let panel_abs = spec.abs_tol * 1e-3;
    let panel_rel = 1e-13;
    let mut sum = CompensatedSum::default();
    let mut panel_error = 0.0;
    let mut evaluations = 0;
    let mut done = 0usize; // half panels integrated so far

    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut last_change = f64::INFINITY;
    let mut periods = FIRST_SAMPLE_PERIODS;
    loop {
        while done < 2 * periods {
            let a = start + done as f64 * half;
            let b = start + (done + 1) as f64 * half;
            let r = adaptive(f, &[(a, b)], panel_abs, panel_rel, spec.max_subdivisions)?;
            sum.add(r.value);
            // a panel that misses its (very strict) target is acceptable as
            // long as the accumulated panel error stays within the total budget
            panel_error += r.error_estimate;
            evaluations += r.evaluations;
            done += 1;
        }
        let edge = start + periods as f64 * period;
        samples.push((edge, sum.value()));
        let terms = (samples.len() - 1).min(MAX_TAIL_TERMS);
        let estimate = extrapolate_tail(&samples[samples.len() - 1 - terms..], spec.tail_exponent);
        if let Some(&prev) = estimates.last() {
            let change = (estimate - prev).abs();
            let tol = spec.target(estimate);
            // two consecutive small changes guard against an accidental agreement
            if samples.len() >= 4 && change <= tol && last_change <= 10.0 * tol {
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate: change + panel_error,
                    evaluations,
                    converged: panel_error <= tol,
                });
            }
            last_change = change;
        }
        estimates.push(estimate);
        if periods * 2 > spec.max_periods {
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: last_change + panel_error,
                evaluations,
                converged: false,
            });
        }
        periods *= 2;
    }
}

/// Fit `S(V) = R + Σ_{k<m} c_k V^{-(q+k)}` through `m + 1` samples and return `R`.
fn extrapolate_tail(samples: &[(f64, f64)], q: f64) -> f64 {
    let n = samples.len();
    if n == 1 {
        return samples[0].1;
    }
    let v_min = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let mut a = vec![vec![0.0; n + 1]; n];
    for (row, &(v, s)) in a.iter_mut().zip(samples) {
        let t = v_min / v;
        row[0] = 1.0;
        let mut p = t.powf(q);
        for entry in row.iter_mut().take(n).skip(1) {
            *entry = p;
            p *= t;
        }
        row[n] = s;
    }
    solve_first(&mut a)
}

/// Gaussian elimination with partial pivoting on an augmented matrix;
/// returns the first component of the solution.
fn solve_first(a: &mut [Vec<f64>]) -> f64 {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, pivot);
        let p = a[col][col];
        if p == 0.0 {
            continue;
        }
        for row in col + 1..n {
            let factor = a[row][col] / p;
            if factor != 0.0 {
                for k in col..=n {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x[0]
}

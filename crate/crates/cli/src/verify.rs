//! The built-in consistency suite behind `relspec verify`.

use std::io::{self, Write};

use anyhow::Result;
use clap::Args;
use relspec::models::{one_point_spectral_measure, two_point_spectral_measure, OnePointModel, TwoPointModel};
use relspec::quad::{integrate_to_infinity, QuadratureSpec};
use relspec::specfun::jacobi_theta_sum;
use relspec::thermo::{log_eta, one_point_log_eta_closed, one_point_log_z_explicit, relative_partition, ThermalState};
use relspec::zetareg::{
    numeric_laurent_probe, one_point_heat_trace_closed, one_point_laurent, one_point_zeta_closed,
    relative_heat_trace, relative_zeta_in_strip, two_point_laurent, two_point_laurent_imaginary_axis,
};
use relspec::Complex64;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::output::{emit, Cell, Table};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Multiply every tolerance by this factor (test hook).
    #[arg(long, default_value_t = 1.0, hide = true)]
    pub tolerance_scale: f64,
}

/// One comparison of a computed value against its reference.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            reference,
            tolerance,
        }
    }

    pub fn error(&self) -> f64 {
        (self.value - self.reference).abs()
    }

    pub fn passed(&self) -> bool {
        // NaN compares false, so a NaN value fails
        self.error() <= self.tolerance
    }
}

fn sum_rule(alpha: f64) -> relspec::Result<f64> {
    let e = one_point_spectral_measure(&OnePointModel::new(alpha)?);
    integrate_to_infinity(|v| e.eval(v), 0.0, &QuadratureSpec::tight())?.require("sum rule")
}

/// Run every check. Numerical failures abort the suite; disagreements are
/// reported as failed checks.
pub fn checks(scale: f64) -> relspec::Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut push = |name: String, value: f64, reference: f64, tol: f64| {
        out.push(Check::new(name, value, reference, tol * scale));
    };

    for alpha in [0.1, 1.0, 10.0] {
        push(format!("sum-rule alpha={alpha}"), sum_rule(alpha)?, 0.5, 1e-8);
    }

    let m = OnePointModel::new(0.25)?;
    let e = one_point_spectral_measure(&m);
    for s in [-0.3, 0.0, 0.3] {
        let z = Complex64::new(s, 0.0);
        push(
            format!("one-point zeta s={s}"),
            relative_zeta_in_strip(&e, z)?.re,
            one_point_zeta_closed(&m, z)?.re,
            1e-7,
        );
    }
    for t in [1e-3, 1.0, 10.0] {
        push(
            format!("one-point heat trace t={t}"),
            relative_heat_trace(&e, t)?,
            one_point_heat_trace_closed(&m, t)?,
            1e-8,
        );
    }
    for tau in [0.1, 1.0, 2.0] {
        push(
            format!("one-point eta tau={tau}"),
            log_eta(&e, tau)?,
            one_point_log_eta_closed(&m, tau)?,
            1e-8,
        );
    }
    let th = ThermalState::new(5.0, 2.0)?;
    push(
        "one-point explicit log Z".into(),
        relative_partition(&e, &one_point_laurent(&m), &th)?.log_z,
        one_point_log_z_explicit(&m, &th)?,
        1e-8,
    );

    let exact = one_point_laurent(&m);
    let probe = numeric_laurent_probe(&e, &e.large_v())?;
    push("one-point probe residue".into(), probe.residue, exact.residue, 1e-4);
    push("one-point probe finite part".into(), probe.finite_part, exact.finite_part, 1e-4);

    let two = TwoPointModel::new(1.0, 1.0, 1.0)?;
    let e2 = two_point_spectral_measure(&two);
    let l2 = two_point_laurent(&two)?;
    push("two-point residue".into(), l2.residue, 4.0, 0.0);
    let probe2 = numeric_laurent_probe(&e2, &e2.large_v())?;
    push("two-point probe residue".into(), probe2.residue, l2.residue, 1e-4);
    push("two-point probe finite part".into(), probe2.finite_part, l2.finite_part, 1e-4);
    push(
        "two-point finite part, imaginary axis".into(),
        l2.finite_part,
        two_point_laurent_imaginary_axis(&two)?.finite_part,
        1e-8,
    );

    let heavy = two_point_spectral_measure(&TwoPointModel::new(1.0, 1e4, 1.0)?);
    let light = one_point_spectral_measure(&OnePointModel::new(1.0)?);
    for v in [0.1, 1.0, 10.0] {
        push(format!("degeneracy v={v}"), heavy.eval(v), light.eval(v), 1e-3);
    }

    for t in [0.5, 1.0, 3.0] {
        let lhs = jacobi_theta_sum(t)?;
        let rhs = (std::f64::consts::PI / t).sqrt() * jacobi_theta_sum(std::f64::consts::PI.powi(2) / t)?;
        push(format!("theta modular identity t={t}"), lhs, rhs, 1e-12);
    }
    Ok(out)
}

fn report_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["check", "value", "reference", "error", "tolerance", "status"]);
    for c in checks {
        t.push(vec![
            c.name.clone().into(),
            c.value.into(),
            c.reference.into(),
            c.error().into(),
            c.tolerance.into(),
            Cell::from(if c.passed() { "pass" } else { "fail" }),
        ]);
    }
    t
}

fn write_text(checks: &[Check], sum_rule: f64, w: &mut dyn Write) -> io::Result<()> {
    for c in checks {
        writeln!(
            w,
            "{} {}: value={:.16e} reference={:.16e} error={:.3e} tolerance={:.3e}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.reference,
            c.error(),
            c.tolerance
        )?;
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let summary = json!({
        "passed": passed,
        "failed": checks.len() - passed,
        "sum_rule": sum_rule,
    });
    writeln!(w, "{summary}")
}

/// Print the report; `Ok(false)` when any check failed.
pub fn execute(args: &VerifyArgs, cfg: &RunConfig) -> Result<bool> {
    if args.tolerance_scale.is_nan() || args.tolerance_scale < 0.0 {
        return Err(crate::config::usage("--tolerance-scale must be non-negative"));
    }
    let checks = checks(args.tolerance_scale)?;
    let all = checks.iter().all(Check::passed);
    let sum = checks[0].value;
    emit(cfg.out.as_deref(), |w| match cfg.format {
        Format::Csv => write_text(&checks, sum, w),
        Format::Json => {
            let mut v = report_table(&checks).to_json();
            let passed = checks.iter().filter(|c| c.passed()).count();
            v["summary"] = json!({ "passed": passed, "failed": checks.len() - passed, "sum_rule": sum });
            serde_json::to_writer_pretty(&mut *w, &v)?;
            writeln!(w)
        }
    })?;
    Ok(all)
}

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use relspec::models::{one_point_spectral_measure, two_point_spectral_measure, OnePointModel, TwoPointModel};
use relspec::quad::{integrate_to_infinity, QuadratureSpec};
use relspec::thermo::{
    casimir_force, eta_series_check, log_eta, one_point_log_eta_closed, one_point_log_z_explicit,
    relative_partition, two_point_partition, ThermalState, DEFAULT_FORCE_STEP,
};
use relspec::zetareg::{
    numeric_laurent_probe, one_point_heat_trace_closed, one_point_laurent, one_point_zeta_closed,
    relative_heat_trace, relative_zeta_in_strip, relative_zeta_mellin, two_point_laurent,
};
use relspec::{Complex64, SpectralMeasure};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

fn err(e: relspec::Error) -> String {
    e.to_string()
}

/// Fail unless `worst <= tol`; NaN fails.
fn within(worst: f64, tol: f64, what: &str) -> Outcome {
    if worst <= tol {
        Ok(format!("{what}: max error {worst:.3e} <= {tol:.0e}"))
    } else {
        Err(format!("{what}: max error {worst:.3e} > {tol:.0e}"))
    }
}

const ALPHAS: [f64; 3] = [0.1, 0.25, 1.0];

fn zeta_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in ALPHAS {
        let m = OnePointModel::new(alpha).map_err(err)?;
        let e = one_point_spectral_measure(&m);
        for s in linspace(-0.45, 0.45, 20) {
            let s = Complex64::new(s, 0.0);
            let z = relative_zeta_in_strip(&e, s).map_err(err)?;
            worst = worst.max((z - one_point_zeta_closed(&m, s).map_err(err)?).norm());
        }
    }
    within(worst, 1e-7, "60 points")
}

fn one_point_probe() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in ALPHAS {
        let m = OnePointModel::new(alpha).map_err(err)?;
        let e = one_point_spectral_measure(&m);
        let p = numeric_laurent_probe(&e, &e.large_v()).map_err(err)?;
        let residue = 2.0 * alpha;
        let finite = -4.0 * alpha * (4.0 * PI * alpha).ln();
        worst = worst.max((p.residue - residue).abs()).max((p.finite_part - finite).abs());
    }
    within(worst, 1e-4, "residue 2α and finite part −4α log 4πα")
}

fn heat_trace() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in ALPHAS {
        let m = OnePointModel::new(alpha).map_err(err)?;
        let e = one_point_spectral_measure(&m);
        for t in logspace(1e-3, 10.0, 25) {
            let k = relative_heat_trace(&e, t).map_err(err)?;
            worst = worst.max((k - one_point_heat_trace_closed(&m, t).map_err(err)?).abs());
        }
    }
    within(worst, 1e-8, "25-point log grid, three couplings")
}

fn eta() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in linspace(0.1, 2.0, 5) {
        let m = OnePointModel::new(alpha).map_err(err)?;
        let e = one_point_spectral_measure(&m);
        for tau in linspace(0.1, 2.0, 5) {
            let q = log_eta(&e, tau).map_err(err)?;
            worst = worst.max((q - one_point_log_eta_closed(&m, tau).map_err(err)?).abs());
        }
    }
    let mut series = 0.0f64;
    let measures: [SpectralMeasure; 2] = [
        one_point_spectral_measure(&OnePointModel::new(0.25).map_err(err)?),
        two_point_spectral_measure(&TwoPointModel::new(1.0, 1.0, 1.0).map_err(err)?),
    ];
    for e in &measures {
        for tau in [0.5, 1.0] {
            let direct = log_eta(e, tau).map_err(err)?;
            series = series.max((eta_series_check(e, tau, 50).map_err(err)? - direct).abs());
        }
    }
    within(worst, 1e-8, "5×5 closed-form grid")?;
    within(series, 1e-8, "series at n_max = 50")?;
    Ok(format!("closed form {worst:.3e}, series {series:.3e} (tol 1e-8)"))
}

fn explicit_log_z() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.25, 1.0] {
        let m = OnePointModel::new(alpha).map_err(err)?;
        let e = one_point_spectral_measure(&m);
        let l = one_point_laurent(&m);
        for beta in [1.0, 5.0, 30.0] {
            for ell in [1.0, 2.0] {
                let th = ThermalState::new(beta, ell).map_err(err)?;
                let z = relative_partition(&e, &l, &th).map_err(err)?.log_z;
                worst = worst.max((z - one_point_log_z_explicit(&m, &th).map_err(err)?).abs());
            }
        }
    }
    within(worst, 1e-8, "12 (α, β, ℓ) points")
}

fn low_temperature() -> Outcome {
    let h = 0.5;
    let one = OnePointModel::new(0.25).map_err(err)?;
    let e1 = one_point_spectral_measure(&one);
    let l1 = one_point_laurent(&one);
    let z1 = |b: f64| -> Result<f64, String> {
        let th = ThermalState::new(b, 1.0).map_err(err)?;
        Ok(relative_partition(&e1, &l1, &th).map_err(err)?.log_z)
    };
    let two = TwoPointModel::new(1.0, 1.0, 1.0).map_err(err)?;
    let z2 = |b: f64| -> Result<(f64, f64), String> {
        let th = ThermalState::new(b, 1.0).map_err(err)?;
        let r = two_point_partition(&two, &th).map_err(err)?;
        Ok((r.log_z, r.vacuum_energy))
    };
    let ev1 = relative_partition(&e1, &l1, &ThermalState::new(30.0, 1.0).map_err(err)?)
        .map_err(err)?
        .vacuum_energy;
    let s1 = (z1(30.0 + h)? - z1(30.0 - h)?) / (2.0 * h);
    let ((p2, _), (m2, _), (_, ev2)) = (z2(30.0 + h)?, z2(30.0 - h)?, z2(30.0)?);
    let s2 = (p2 - m2) / (2.0 * h);
    let worst = (s1 + ev1).abs().max((s2 + ev2).abs());
    within(worst, 1e-3, "slope + E_vacuum at β = 30, both models")
}

fn two_point_residue() -> Outcome {
    let m = TwoPointModel::new(1.0, 1.0, 1.0).map_err(err)?;
    let l = two_point_laurent(&m).map_err(err)?;
    if l.residue != 4.0 {
        return Err(format!("residue {} != 4", l.residue));
    }
    let e = two_point_spectral_measure(&m);
    let p = numeric_laurent_probe(&e, &e.large_v()).map_err(err)?;
    let worst = (p.residue - l.residue).abs().max((p.finite_part - l.finite_part).abs());
    within(worst, 1e-4, "residue exactly 4; probe")
}

fn degeneracy() -> Outcome {
    let one = one_point_spectral_measure(&OnePointModel::new(1.0).map_err(err)?);
    let vs = [0.1, 1.0, 10.0];
    let mut previous = [f64::INFINITY; 3];
    let mut last = 0.0f64;
    for alpha1 in [1e2, 1e3, 1e4] {
        let two = two_point_spectral_measure(&TwoPointModel::new(1.0, alpha1, 1.0).map_err(err)?);
        for (i, v) in vs.iter().enumerate() {
            let d = (two.eval(*v) - one.eval(*v)).abs();
            if d >= previous[i] {
                return Err(format!("no improvement at v = {v}, α₁ = {alpha1}: {d:.3e}"));
            }
            previous[i] = d;
        }
        last = previous.iter().cloned().fold(0.0, f64::max);
    }
    within(last, 1e-3, "α₁ = 1e4, monotone over 1e2..1e4")
}

fn sum_rule() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.1, 1.0, 10.0] {
        let e = one_point_spectral_measure(&OnePointModel::new(alpha).map_err(err)?);
        let total = integrate_to_infinity(|v| e.eval(v), 0.0, &QuadratureSpec::tight())
            .and_then(|r| r.require("sum rule"))
            .map_err(err)?;
        worst = worst.max((total - 0.5).abs());
    }
    within(worst, 1e-8, "∫e = 1/2")
}

fn mellin() -> Outcome {
    let mut worst = 0.0f64;
    let measures = [
        one_point_spectral_measure(&OnePointModel::new(0.25).map_err(err)?),
        two_point_spectral_measure(&TwoPointModel::new(1.0, 1.0, 1.0).map_err(err)?),
    ];
    for e in &measures {
        for s in [0.1, 0.25, 0.4] {
            let direct = relative_zeta_in_strip(e, Complex64::new(s, 0.0)).map_err(err)?.re;
            worst = worst.max((relative_zeta_mellin(e, s).map_err(err)? - direct).abs());
        }
    }
    within(worst, 1e-6, "both models")
}

fn casimir() -> Outcome {
    let base = TwoPointModel::new(1.0, 1.0, 1.0).map_err(err)?;
    let mut spread = 0.0f64;
    for a in [1.0, 3.0, 10.0] {
        let m = base.with_separation(a).map_err(err)?;
        let forces = [0.5, 1.0, 2.0]
            .iter()
            .map(|&ell| {
                let th = ThermalState::new(1.0, ell).map_err(err)?;
                Ok(casimir_force(&m, &th, DEFAULT_FORCE_STEP).map_err(err)?.force)
            })
            .collect::<Result<Vec<f64>, String>>()?;
        spread = spread.max((forces[0] - forces[1]).abs()).max((forces[2] - forces[1]).abs());
    }
    within(spread, 1e-10, "ℓ ∈ {0.5, 1, 2}")?;
    let th = ThermalState::at_beta(1.0).map_err(err)?;
    let mut prev = f64::INFINITY;
    for a in linspace(1.0, 50.0, 50) {
        let f = casimir_force(&base.with_separation(a).map_err(err)?, &th, DEFAULT_FORCE_STEP)
            .map_err(err)?
            .force;
        if f.is_nan() || f.abs() >= prev {
            return Err(format!("|force| not decreasing at a = {a}: {f:.3e}"));
        }
        prev = f.abs();
    }
    Ok(format!("ℓ spread {spread:.3e} <= 1e-10; |force| decreasing on 50 points in [1, 50]"))
}

fn cli() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_relspec"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let sweep = ["casimir", "--a-min", "1", "--a-max", "20", "--samples", "8"];
    let a = run(&[&sweep[..], &["--jobs", "1"]].concat())?;
    let b = run(&[&sweep[..], &["--jobs", "4"]].concat())?;
    if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("casimir sweep output differs between --jobs 1 and --jobs 4".into());
    }
    let cases: [(&[&str], i32); 5] = [
        (&["partition"], 0),
        (&["partition", "--alpha", "-1"], 2),
        (&["zeta", "--s", "-0.5"], 2),
        (&["heat-trace", "--abs-tol", "1e-300", "--rel-tol", "1e-300", "--samples", "2"], 3),
        (&["verify"], 0),
    ];
    for (args, code) in cases {
        let got = run(args)?.status.code();
        if got != Some(code) {
            return Err(format!("relspec {} exited with {got:?}, expected {code}", args.join(" ")));
        }
    }
    if run(&["verify", "--tolerance-scale", "0"])?.status.success() {
        return Err("verify with injected tolerance succeeded".into());
    }
    Ok("deterministic sweep, exit codes 0/2/3, verify green, injected failure detected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("one-point zeta closed form", zeta_closed_form),
        ("one-point Laurent probe", one_point_probe),
        ("heat-trace equality", heat_trace),
        ("eta equality", eta),
        ("explicit one-point log Z", explicit_log_z),
        ("low-temperature law", low_temperature),
        ("two-point residue", two_point_residue),
        ("degeneracy", degeneracy),
        ("sum rule", sum_rule),
        ("Mellin consistency", mellin),
        ("Casimir invariance", casimir),
        ("CLI contract", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! One function per subcommand; each returns the table to print.

use anyhow::Result;
use clap::{Args, Subcommand};
use rayon::prelude::*;
use relspec::thermo::{
    casimir_force, eta_series_check, log_eta_with, one_point_log_eta_closed, one_point_log_z_explicit,
    relative_partition, vacuum_energy, DEFAULT_FORCE_STEP,
};
use relspec::zetareg::{
    numeric_laurent_probe_with, one_point_heat_trace_closed, one_point_laurent, one_point_zeta_closed,
    relative_heat_trace_with, relative_zeta_in_strip_with, two_point_laurent_with,
};
use relspec::{Complex64, Error, LaurentData, TwoPointModel};

use crate::config::{usage, Model, ModelKind, RunConfig};
use crate::output::{Cell, Table};
use crate::verify::VerifyArgs;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the relative spectral measure e(v)
    SpectralMeasure(MeasureArgs),
    /// Relative heat trace on a logarithmic t grid
    HeatTrace(HeatArgs),
    /// Relative zeta function in its strip, or Laurent data at s = -1/2
    Zeta(ZetaArgs),
    /// Logarithm of the relative eta function
    Eta(EtaArgs),
    /// Zeta-regularized partition function and vacuum energy
    Partition,
    /// Casimir force between the two centres over a separation sweep
    Casimir(CasimirArgs),
    /// Run the built-in consistency checks
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, default_value_t = 0.0)]
    pub v_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub v_max: f64,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub t_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Explicit s values (comma separated); overrides the grid
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Vec<f64>,
    #[arg(long, default_value_t = -0.45, allow_hyphen_values = true)]
    pub s_min: f64,
    #[arg(long, default_value_t = 0.45, allow_hyphen_values = true)]
    pub s_max: f64,
    #[arg(long, default_value_t = 19)]
    pub samples: usize,
    /// Print residue and finite part at s = -1/2 instead of a table
    #[arg(long)]
    pub laurent: bool,
    /// With --laurent: use the numerical continuation probe
    #[arg(long, requires = "laurent")]
    pub probe: bool,
}

#[derive(Debug, Args)]
pub struct EtaArgs {
    /// tau values (comma separated); defaults to --beta
    #[arg(long, value_delimiter = ',')]
    pub tau: Vec<f64>,
    /// Also evaluate the expanded series with this many terms
    #[arg(long)]
    pub series_terms: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CasimirArgs {
    #[arg(long, default_value_t = 1.0)]
    pub a_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub a_max: f64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Relative finite-difference step
    #[arg(long, default_value_t = DEFAULT_FORCE_STEP)]
    pub step: f64,
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Table> {
    match cmd {
        Command::SpectralMeasure(args) => spectral_measure(args, cfg),
        Command::HeatTrace(args) => heat_trace(args, cfg),
        Command::Zeta(args) if args.laurent => laurent(args, cfg),
        Command::Zeta(args) => zeta(args, cfg),
        Command::Eta(args) => eta(args, cfg),
        Command::Partition => partition(cfg),
        Command::Casimir(args) => casimir(args, cfg),
        Command::Verify(_) => unreachable!("verify writes its own report"),
    }
}

fn linear_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, n)?;
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, n)?;
    if lo <= 0.0 {
        return Err(usage(format!("logarithmic grid needs a positive lower end, got {lo}")));
    }
    let (a, b) = (lo.ln(), hi.ln());
    if n == 1 {
        return Ok(vec![lo]);
    }
    let mut grid: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    // keep the end points exact
    grid[0] = lo;
    grid[n - 1] = hi;
    Ok(grid)
}

fn check_grid(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(usage(format!("bad grid [{lo}, {hi}] with {n} samples")));
    }
    Ok(())
}

/// Evaluate `f` over `xs` on `jobs` threads; results keep the input order.
pub fn sweep<T, F>(jobs: usize, xs: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| xs.par_iter().map(|&x| f(x)).collect())
}

fn spectral_measure(args: &MeasureArgs, cfg: &RunConfig) -> Result<Table> {
    if !(args.v_min >= 0.0 && args.v_min < args.v_max && args.samples >= 2) {
        return Err(usage("need 0 <= --v-min < --v-max and --samples >= 2"));
    }
    let e = cfg.model()?.measure();
    let vs = linear_grid(args.v_min, args.v_max, args.samples)?;
    let mut table = Table::new(&["v", "e"]);
    for v in vs {
        table.push(vec![v.into(), e.eval(v).into()]);
    }
    Ok(table)
}

fn heat_trace(args: &HeatArgs, cfg: &RunConfig) -> Result<Table> {
    let model = cfg.model()?;
    let e = model.measure();
    let ts = log_grid(args.t_min, args.t_max, args.samples)?;
    let rows = sweep(cfg.jobs, &ts, |t| {
        let k = relative_heat_trace_with(&e, t, &cfg.spec)?;
        let mut row: Vec<Cell> = vec![t.into(), k.into()];
        if let Model::One(m) = &model {
            let closed = one_point_heat_trace_closed(m, t)?;
            row.push(closed.into());
            row.push((k - closed).into());
        }
        Ok(row)
    })?;
    let mut table = match model {
        Model::One(_) => Table::new(&["t", "heat_trace", "closed_form", "difference"]),
        Model::Two(_) => Table::new(&["t", "heat_trace"]),
    };
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn zeta(args: &ZetaArgs, cfg: &RunConfig) -> Result<Table> {
    let model = cfg.model()?;
    let e = model.measure();
    let ss = if args.s.is_empty() {
        linear_grid(args.s_min, args.s_max, args.samples)?
    } else {
        args.s.clone()
    };
    let rows = sweep(cfg.jobs, &ss, |s| {
        let z = relative_zeta_in_strip_with(&e, Complex64::new(s, 0.0), &cfg.spec)?;
        let mut row: Vec<Cell> = vec![s.into(), z.re.into()];
        if let Model::One(m) = &model {
            row.push(one_point_zeta_closed(m, Complex64::new(s, 0.0))?.re.into());
        }
        Ok(row)
    })?;
    let mut table = match model {
        Model::One(_) => Table::new(&["s", "zeta", "closed_form"]),
        Model::Two(_) => Table::new(&["s", "zeta"]),
    };
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn model_laurent(model: &Model, cfg: &RunConfig) -> Result<LaurentData> {
    Ok(match model {
        Model::One(m) => one_point_laurent(m),
        Model::Two(m) => two_point_laurent_with(m, &cfg.spec)?,
    })
}

fn laurent(args: &ZetaArgs, cfg: &RunConfig) -> Result<Table> {
    let model = cfg.model()?;
    let (method, l) = if args.probe {
        let e = model.measure();
        ("probe", numeric_laurent_probe_with(&e, &e.large_v(), &cfg.spec)?)
    } else {
        ("analytic", model_laurent(&model, cfg)?)
    };
    let mut table = Table::new(&["model", "method", "residue", "finite_part"]);
    table.push(vec![model.name().into(), method.into(), l.residue.into(), l.finite_part.into()]);
    Ok(table.note("zeta(-1/2 + d) = residue/d + finite_part + O(d)"))
}

fn eta(args: &EtaArgs, cfg: &RunConfig) -> Result<Table> {
    let model = cfg.model()?;
    let e = model.measure();
    let taus = if args.tau.is_empty() {
        vec![cfg.thermal.beta()]
    } else {
        args.tau.clone()
    };
    if let Some(0) = args.series_terms {
        return Err(usage("--series-terms must be at least 1"));
    }
    let rows = sweep(cfg.jobs, &taus, |tau| {
        let mut row: Vec<Cell> = vec![tau.into(), log_eta_with(&e, tau, &cfg.spec)?.into()];
        if let Model::One(m) = &model {
            row.push(one_point_log_eta_closed(m, tau)?.into());
        }
        if let Some(n) = args.series_terms {
            row.push(eta_series_check(&e, tau, n)?.into());
        }
        Ok(row)
    })?;
    let mut cols = vec!["tau", "log_eta"];
    if matches!(model, Model::One(_)) {
        cols.push("closed_form");
    }
    if args.series_terms.is_some() {
        cols.push("series");
    }
    let mut table = Table::new(&cols);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

/// Temperature and tolerance of the low-temperature slope check.
const SLOPE_BETA: f64 = 30.0;
const SLOPE_TOL: f64 = 1e-3;

fn partition(cfg: &RunConfig) -> Result<Table> {
    let model = cfg.model()?;
    let th = &cfg.thermal;
    let e = model.measure();
    let l = model_laurent(&model, cfg)?;
    let report = relative_partition(&e, &l, th)?;
    // d log Z / dβ at β = 30 should equal −E_vacuum
    let at = |beta: f64| -> Result<f64> { Ok(relative_partition(&e, &l, &th.with_beta(beta)?)?.log_z) };
    let slope = at(SLOPE_BETA + 0.5)? - at(SLOPE_BETA - 0.5)?;
    let slope_ok = (slope + report.vacuum_energy).abs() <= SLOPE_TOL;

    let mut cols = vec![
        "model",
        "beta",
        "ell",
        "log_z",
        "vacuum_energy",
        "log_eta",
        "residue",
        "finite_part",
        "slope_beta30",
        "slope_check",
    ];
    let mut row: Vec<Cell> = vec![
        report.model.clone().into(),
        th.beta().into(),
        th.ell().into(),
        report.log_z.into(),
        report.vacuum_energy.into(),
        report.eta_log.into(),
        l.residue.into(),
        l.finite_part.into(),
        slope.into(),
        pass_fail(slope_ok),
    ];
    if let Model::One(m) = &model {
        let explicit = one_point_log_z_explicit(m, th)?;
        cols.extend(["log_z_explicit", "explicit_check"]);
        row.push(explicit.into());
        row.push(pass_fail((explicit - report.log_z).abs() <= 1e-8));
    }
    let mut table = Table::new(&cols);
    table.push(row);
    Ok(table.note("slope_beta30 = log Z(30.5) - log Z(29.5); slope_check compares it with -vacuum_energy to 1e-3"))
}

fn pass_fail(ok: bool) -> Cell {
    Cell::from(if ok { "pass" } else { "fail" })
}

fn casimir(args: &CasimirArgs, cfg: &RunConfig) -> Result<Table> {
    let p = cfg.params;
    if p.explicit && p.kind == ModelKind::OnePoint {
        return Err(usage("casimir needs the two-point model"));
    }
    for (name, x) in [("alpha0", p.alpha0), ("alpha1", p.alpha1)] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(usage(format!("--{name} must be positive and finite, got {x}")));
        }
    }
    let xs = linear_grid(args.a_min, args.a_max, args.samples)?;
    let rows = sweep(cfg.jobs, &xs, |a| {
        let m = match TwoPointModel::new(p.alpha0, p.alpha1, a) {
            Ok(m) => m,
            Err(err @ Error::BoundStateRegime { .. }) => {
                log::warn!("skipping a = {a}: {err}");
                return Ok(None);
            }
            Err(err) => return Err(err.into()),
        };
        let f = match casimir_force(&m, &cfg.thermal, args.step) {
            Ok(f) => f,
            Err(err @ Error::StepTooLarge { .. }) => {
                log::warn!("skipping a = {a}: {err}");
                return Ok(None);
            }
            Err(err) => return Err(err.into()),
        };
        let e_vac = vacuum_energy(&two_point_laurent_with(&m, &cfg.spec)?, &cfg.thermal);
        Ok(Some(vec![a.into(), e_vac.into(), f.force.into(), f.error_estimate.into()]))
    })?;
    let mut table = Table::new(&["a", "vacuum_energy", "force", "force_error"])
        .note("force = -dE_vacuum/da; negative values are attractive");
    rows.into_iter().flatten().for_each(|r| table.push(r));
    Ok(table)
}

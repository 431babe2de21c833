//! Parameter sweeps, grid evaluation, and the CSV/JSON emitters behind the
//! command-line interface.
//!
//! Grid points are evaluated concurrently on a local thread pool; output
//! rows are collected in sweep order regardless of completion order, so a
//! fixed specification always produces byte-identical output.

use std::io::Write;

use rayon::prelude::*;
use serde_json::json;

use crate::dynamics::{self, SteadyState};
use crate::model::ModelParams;
use crate::quantumness::{self, Order, Regime};
use crate::tol;
use crate::{Error, Result};

/// Version string recorded in every emitted file.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which parameter a sweep varies. `P` locks p1 = p2 to the swept value;
/// `Mu` locks p2 = μ·p1 with p1 taken from the fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    G,
    T1,
    T2,
    P1,
    P2,
    P,
    Mu,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::G => "g",
            Axis::T1 => "t1",
            Axis::T2 => "t2",
            Axis::P1 => "p1",
            Axis::P2 => "p2",
            Axis::P => "p",
            Axis::Mu => "mu",
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(Axis::G),
            "t1" => Ok(Axis::T1),
            "t2" => Ok(Axis::T2),
            "p1" => Ok(Axis::P1),
            "p2" => Ok(Axis::P2),
            "p" => Ok(Axis::P),
            "mu" => Ok(Axis::Mu),
            other => Err(Error::InvalidSweep(format!(
                "unknown axis `{other}` (expected g, t1, t2, p1, p2, p, or mu)"
            ))),
        }
    }
}

/// Grid spacing of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// A one-dimensional parameter sweep over a fixed base parameter set.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: Scale,
    pub fixed: ModelParams,
}

impl SweepSpec {
    /// Parse the CLI syntax `axis:min:max:steps[:log]`.
    pub fn parse(text: &str, fixed: ModelParams) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 && parts.len() != 5 {
            return Err(Error::InvalidSweep(format!(
                "expected axis:min:max:steps[:log], got `{text}`"
            )));
        }
        let axis: Axis = parts[0].parse()?;
        let min: f64 = parts[1]
            .parse()
            .map_err(|_| Error::InvalidSweep(format!("bad min `{}`", parts[1])))?;
        let max: f64 = parts[2]
            .parse()
            .map_err(|_| Error::InvalidSweep(format!("bad max `{}`", parts[2])))?;
        let steps: usize = parts[3]
            .parse()
            .map_err(|_| Error::InvalidSweep(format!("bad steps `{}`", parts[3])))?;
        let scale = match parts.get(4) {
            None => Scale::Linear,
            Some(&"log") => Scale::Log,
            Some(other) => {
                return Err(Error::InvalidSweep(format!(
                    "unknown scale `{other}` (expected log)"
                )))
            }
        };
        let spec = Self {
            axis,
            min,
            max,
            steps,
            scale,
            fixed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Error::InvalidSweep(format!(
                "min must be below max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(Error::InvalidSweep(format!(
                "log scale requires min > 0, got {}",
                self.min
            )));
        }
        Ok(())
    }

    /// The grid values, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * frac,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * frac).exp(),
                }
            })
            .collect()
    }

    /// Base parameters with the swept value substituted in.
    pub fn params_at(&self, value: f64) -> Result<ModelParams> {
        let mut p = self.fixed;
        match self.axis {
            Axis::G => p.g = value,
            Axis::T1 => p.t1 = value,
            Axis::T2 => p.t2 = value,
            Axis::P1 => p.p1 = value,
            Axis::P2 => p.p2 = value,
            Axis::P => {
                p.p1 = value;
                p.p2 = value;
            }
            Axis::Mu => p.p2 = value * p.p1,
        }
        p.validate()?;
        Ok(p)
    }
}

/// One sweep grid point: exact and perturbative coherence, the three bound
/// sums both ways, the octahedron verdict, and any validity warnings.
#[derive(Debug, Clone)]
pub struct OutputRow {
    pub value: f64,
    pub coherence_exact: f64,
    pub coherence_perturbative: f64,
    pub sums_exact: [f64; 3],
    pub sums_perturbative: [f64; 3],
    pub max_sum: f64,
    pub has_magic: bool,
    pub warnings: String,
}

/// Evaluate everything an [`OutputRow`] carries at one parameter point.
pub fn evaluate_point(params: &ModelParams, value: f64) -> Result<OutputRow> {
    let ss = dynamics::steady_state(params)?;
    let report = quantumness::magic_report(&ss.bloch1, tol::MAGIC);
    let row = OutputRow {
        value,
        coherence_exact: ss.rho1.l1_coherence(),
        coherence_perturbative: quantumness::coherence_perturbative(params)?,
        sums_exact: quantumness::bloch_sums_exact(&ss.bloch1),
        sums_perturbative: quantumness::bloch_sums_perturbative(params, Order::Second)?,
        max_sum: report.max_sum,
        has_magic: report.has_magic,
        warnings: params.validity_warnings().join("; "),
    };
    for v in row.numeric_cells() {
        if !v.is_finite() {
            return Err(Error::InvalidSweep(format!(
                "non-finite cell at {} = {value}",
                "swept value"
            )));
        }
    }
    Ok(row)
}

impl OutputRow {
    fn numeric_cells(&self) -> Vec<f64> {
        let mut cells = vec![
            self.value,
            self.coherence_exact,
            self.coherence_perturbative,
        ];
        cells.extend_from_slice(&self.sums_exact);
        cells.extend_from_slice(&self.sums_perturbative);
        cells.push(self.max_sum);
        cells
    }
}

/// Run a thread-pool closure with the requested worker count (0 = library
/// default, i.e. the number of processors).
fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSweep(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Evaluate a sweep; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<Vec<OutputRow>> {
    spec.validate()?;
    let values = spec.values();
    with_pool(workers, || {
        values
            .par_iter()
            .map(|&v| evaluate_point(&spec.params_at(v)?, v))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Format a float with 17 significant digits, enough for exact f64
/// round-trips.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_param_block(out: &mut dyn Write, p: &ModelParams) -> Result<()> {
    writeln!(
        out,
        "# params: omega = {}, g = {}, t1 = {}, t2 = {}, p1 = {}, p2 = {}",
        fmt_f64(p.omega),
        fmt_f64(p.g),
        fmt_f64(p.t1),
        fmt_f64(p.t2),
        fmt_f64(p.p1),
        fmt_f64(p.p2)
    )?;
    Ok(())
}

/// Write a sweep as CSV with a self-describing `#` comment block.
pub fn write_sweep_csv(out: &mut dyn Write, spec: &SweepSpec, rows: &[OutputRow]) -> Result<()> {
    writeln!(out, "# spinbath {TOOL_VERSION} sweep")?;
    writeln!(
        out,
        "# axis = {}, min = {}, max = {}, steps = {}, scale = {}",
        spec.axis.name(),
        fmt_f64(spec.min),
        fmt_f64(spec.max),
        spec.steps,
        match spec.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    )?;
    write_param_block(out, &spec.fixed)?;
    writeln!(
        out,
        "# sums 1..3 are the bound octahedron faces -rx-ry+rz, -rx+ry+rz, rx-ry+rz"
    )?;
    writeln!(
        out,
        "{},coherence_exact,coherence_pert,sum1_exact,sum2_exact,sum3_exact,\
         sum1_pert,sum2_pert,sum3_pert,max_sum,has_magic,warnings",
        spec.axis.name()
    )?;
    for r in rows {
        let cells: Vec<String> = r.numeric_cells().iter().map(|v| fmt_f64(*v)).collect();
        writeln!(out, "{},{},{}", cells.join(","), r.has_magic, r.warnings)?;
    }
    Ok(())
}

/// Which parameter a critical-temperature table varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CritAxis {
    /// Symmetric rates p1 = p2 = value.
    P,
    /// Fixed p taken from [`CritSpec::p`], p2 = value · p.
    Mu,
}

/// One row of a critical-temperature table.
#[derive(Debug, Clone)]
pub struct CritRow {
    pub value: f64,
    pub t_crit_1: f64,
    pub t_crit_2: f64,
    pub t_crit_3: f64,
    pub t_crit: f64,
    /// Per-condition allowed-g intervals at the requested t1.
    pub windows: [Option<(f64, f64)>; 3],
    pub union_width: f64,
    /// Bisected exact boundary at the condition-1 window center, when
    /// requested and when a crossing exists in the bracket.
    pub exact_boundary: Option<f64>,
}

/// Specification of a critical-temperature table.
#[derive(Debug, Clone)]
pub struct CritSpec {
    pub regime: Regime,
    pub axis: CritAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// Fixed p for μ sweeps.
    pub p: f64,
    /// Heat-bath temperature at which the allowed-g windows are reported.
    pub t1: f64,
    /// Spin-bath temperature: the closed forms use it in the high-T2 regime
    /// and the exact solver always uses it (low-regime default 0.01).
    pub t2: f64,
    /// Bisect the exact boundary per row.
    pub exact_boundary: bool,
}

fn crit_row(spec: &CritSpec, value: f64) -> Result<CritRow> {
    let (p, mu) = match spec.axis {
        CritAxis::P => (value, 1.0),
        CritAxis::Mu => (spec.p, value),
    };
    let t2_closed = matches!(spec.regime, Regime::HighT2).then_some(spec.t2);
    let coeffs = quantumness::asymmetric_coefficients(p, mu, spec.regime, t2_closed)?;
    let crit = quantumness::critical_temperature_asymmetric(p, mu, spec.regime, t2_closed)?;
    let window = quantumness::g_window_with(&coeffs, spec.t1)?;

    let exact_boundary = if spec.exact_boundary {
        // probe at the condition-1 window center, which is independent of t1
        let center = coeffs.full_linear()[0] / (2.0 * coeffs.full_quadratic());
        if center > 0.0 {
            let base = ModelParams::new(1.0, center, 1.0, spec.t2, p, mu * p)?;
            let bracket = (crit.t_crit / 3.0, 3.0 * crit.t_crit);
            quantumness::magic_boundary_exact(&base, bracket).ok()
        } else {
            None
        }
    } else {
        None
    };

    Ok(CritRow {
        value,
        t_crit_1: crit.t_crit_1,
        t_crit_2: crit.t_crit_2,
        t_crit_3: crit.t_crit_3,
        t_crit: crit.t_crit,
        windows: window.conditions.map(|c| c.map(|iv| (iv.lo, iv.hi))),
        union_width: window.union_width(),
        exact_boundary,
    })
}

/// Evaluate a critical-temperature table; rows in grid order.
pub fn run_crit(spec: &CritSpec, workers: usize) -> Result<Vec<CritRow>> {
    if !(spec.min.is_finite() && spec.max.is_finite()) || spec.min >= spec.max || spec.steps < 2 {
        return Err(Error::InvalidSweep(format!(
            "bad range [{}, {}] x {}",
            spec.min, spec.max, spec.steps
        )));
    }
    let values: Vec<f64> = (0..spec.steps)
        .map(|i| spec.min + (spec.max - spec.min) * i as f64 / (spec.steps - 1) as f64)
        .collect();
    with_pool(workers, || {
        values
            .par_iter()
            .map(|&v| crit_row(spec, v))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Write a critical-temperature table as CSV.
pub fn write_crit_csv(out: &mut dyn Write, spec: &CritSpec, rows: &[CritRow]) -> Result<()> {
    writeln!(out, "# spinbath {TOOL_VERSION} crit")?;
    writeln!(
        out,
        "# regime = {}, axis = {}, min = {}, max = {}, steps = {}, p = {}, t1 = {}, t2 = {}",
        spec.regime,
        match spec.axis {
            CritAxis::P => "p",
            CritAxis::Mu => "mu",
        },
        fmt_f64(spec.min),
        fmt_f64(spec.max),
        spec.steps,
        match spec.axis {
            CritAxis::P => "swept".to_string(),
            CritAxis::Mu => fmt_f64(spec.p),
        },
        fmt_f64(spec.t1),
        fmt_f64(spec.t2)
    )?;
    writeln!(
        out,
        "# closed-form temperatures are perturbative estimates; exact_boundary is the bisected ground truth"
    )?;
    writeln!(
        out,
        "{},t_crit_1,t_crit_2,t_crit_3,t_crit,g_lo_1,g_hi_1,g_lo_2,g_hi_2,g_lo_3,g_hi_3,union_width,exact_boundary",
        match spec.axis {
            CritAxis::P => "p",
            CritAxis::Mu => "mu",
        }
    )?;
    for r in rows {
        let mut cells = vec![
            fmt_f64(r.value),
            fmt_f64(r.t_crit_1),
            fmt_f64(r.t_crit_2),
            fmt_f64(r.t_crit_3),
            fmt_f64(r.t_crit),
        ];
        for w in &r.windows {
            match w {
                Some((lo, hi)) => {
                    cells.push(fmt_f64(*lo));
                    cells.push(fmt_f64(*hi));
                }
                None => {
                    cells.push(String::new());
                    cells.push(String::new());
                }
            }
        }
        cells.push(fmt_f64(r.union_width));
        cells.push(r.exact_boundary.map(fmt_f64).unwrap_or_default());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// One sampled time of a transient run.
#[derive(Debug, Clone)]
pub struct TransientRow {
    pub t: f64,
    pub coherence: f64,
    pub max_sum: f64,
    /// Trace distance to the exact steady state.
    pub distance: f64,
}

/// A transient integration together with its steady-state comparison.
#[derive(Debug, Clone)]
pub struct TransientRun {
    pub rows: Vec<TransientRow>,
    pub steady_coherence: f64,
    pub transient_max_coherence: f64,
    /// Whether the transient coherence strictly exceeded the steady value
    /// anywhere along the trajectory.
    pub exceeds_steady: bool,
}

/// Integrate from τ1 ⊗ τ2 and tabulate coherence, max_sum, and the distance
/// to the steady state every `stride` steps.
pub fn run_transient(
    params: &ModelParams,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<TransientRun> {
    let stride = stride.max(1);
    let rho0 = dynamics::product_initial_state(params)?;
    let traj = dynamics::evolve(params, &rho0, t_end, dt)?;
    let ss = dynamics::steady_state(params)?;
    let steady_coherence = ss.rho1.l1_coherence();

    let mut rows = Vec::new();
    let mut transient_max: f64 = 0.0;
    for (i, (t, state)) in traj.times.iter().zip(&traj.states).enumerate() {
        let rho1 = state.partial_trace(crate::linalg::Slot::One)?;
        let coherence = rho1.l1_coherence();
        transient_max = transient_max.max(coherence);
        if i % stride == 0 || i == traj.times.len() - 1 {
            rows.push(TransientRow {
                t: *t,
                coherence,
                max_sum: quantumness::magic_report(&rho1.bloch()?, tol::MAGIC).max_sum,
                distance: state.trace_distance(&ss.rho12)?,
            });
        }
    }
    Ok(TransientRun {
        rows,
        steady_coherence,
        transient_max_coherence: transient_max,
        exceeds_steady: transient_max > steady_coherence,
    })
}

/// Write a transient run as CSV.
pub fn write_transient_csv(
    out: &mut dyn Write,
    params: &ModelParams,
    run: &TransientRun,
) -> Result<()> {
    writeln!(out, "# spinbath {TOOL_VERSION} transient")?;
    write_param_block(out, params)?;
    writeln!(
        out,
        "# steady_coherence = {}, transient_max_coherence = {}, exceeds_steady = {}",
        fmt_f64(run.steady_coherence),
        fmt_f64(run.transient_max_coherence),
        run.exceeds_steady
    )?;
    writeln!(out, "t,coherence,max_sum,trace_distance")?;
    for r in &run.rows {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(r.t),
            fmt_f64(r.coherence),
            fmt_f64(r.max_sum),
            fmt_f64(r.distance)
        )?;
    }
    Ok(())
}

/// Full single-point report as versioned JSON.
pub fn point_report_json(params: &ModelParams, ss: &SteadyState) -> Result<serde_json::Value> {
    let report = quantumness::magic_report(&ss.bloch1, tol::MAGIC);
    Ok(json!({
        "schema": "spinbath.point/1",
        "tool_version": TOOL_VERSION,
        "params": params,
        "warnings": params.validity_warnings(),
        "steady_state": ss.to_json(),
        "coherence_exact": ss.rho1.l1_coherence(),
        "coherence_perturbative": quantumness::coherence_perturbative(params)?,
        "bloch_sums_exact": quantumness::bloch_sums_exact(&ss.bloch1),
        "bloch_sums_perturbative": quantumness::bloch_sums_perturbative(params, Order::Second)?,
        "magic": report,
    }))
}

/// Render the human-readable single-point report.
pub fn point_report_text(params: &ModelParams, ss: &SteadyState) -> Result<String> {
    use std::fmt::Write as _;
    let mut out = String::new();
    let report = quantumness::magic_report(&ss.bloch1, tol::MAGIC);
    writeln!(&mut out, "steady state (residual {:.3e})", ss.residual).unwrap();
    writeln!(
        &mut out,
        "  bloch1 = ({:+.6}, {:+.6}, {:+.6})",
        ss.bloch1.x, ss.bloch1.y, ss.bloch1.z
    )
    .unwrap();
    writeln!(
        &mut out,
        "  bloch2 = ({:+.6}, {:+.6}, {:+.6})",
        ss.bloch2.x, ss.bloch2.y, ss.bloch2.z
    )
    .unwrap();
    writeln!(
        &mut out,
        "coherence: exact = {:.9e}, leading order = {:.9e}",
        ss.rho1.l1_coherence(),
        quantumness::coherence_perturbative(params)?
    )
    .unwrap();
    let sums = quantumness::bloch_sums_exact(&ss.bloch1);
    let pert = quantumness::bloch_sums_perturbative(params, Order::Second)?;
    for i in 0..3 {
        writeln!(
            &mut out,
            "sum{}: exact = {:+.9}, order-2 = {:+.9}",
            i + 1,
            sums[i],
            pert[i]
        )
        .unwrap();
    }
    writeln!(
        &mut out,
        "max_sum = {:.9}, has_magic = {}",
        report.max_sum, report.has_magic
    )
    .unwrap();
    for w in params.validity_warnings() {
        writeln!(&mut out, "warning: {w}").unwrap();
    }
    Ok(out)
}

//! Command-line front end: single-point evaluation, parameter sweeps,
//! critical-temperature tables, and transient runs, emitting CSV or JSON.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinbath::dynamics;
use spinbath::model::ModelParams;
use spinbath::quantumness::Regime;
use spinbath::sweep::{self, CritAxis, CritSpec, SweepSpec};
use spinbath::Error;

#[derive(Parser)]
#[command(
    name = "spinbath",
    version,
    about = "Steady-state coherence and magic of a two-qubit reset machine \
             coupled to a heat bath and a spin bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Level splitting omega (the machine is resonant; closed-form
    /// perturbative output requires omega = 1)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Inter-qubit coupling strength g >= 0
    #[arg(long)]
    g: f64,
    /// Heat-bath temperature T1 > 0
    #[arg(long)]
    t1: f64,
    /// Spin-bath temperature T2 > 0
    #[arg(long)]
    t2: f64,
    /// Reset rate of the heat-bath qubit
    #[arg(long)]
    p1: f64,
    /// Reset rate of the spin-bath qubit
    #[arg(long, conflicts_with = "mu")]
    p2: Option<f64>,
    /// Rate asymmetry: lock p2 = mu * p1 instead of giving --p2
    #[arg(long)]
    mu: Option<f64>,
}

impl ParamArgs {
    fn build(&self) -> Result<ModelParams, Error> {
        let p2 = match (self.p2, self.mu) {
            (Some(v), None) => v,
            (None, Some(m)) => m * self.p1,
            _ => {
                return Err(Error::InvalidParams(
                    "give the spin-bath reset rate as --p2 or as --mu (p2 = mu * p1)".into(),
                ))
            }
        };
        ModelParams::new(self.omega, self.g, self.t1, self.t2, self.p1, p2)
    }

    fn build_resonant(&self) -> Result<ModelParams, Error> {
        if (self.omega - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "this command prints perturbative formulas, which are derived \
                 at omega = 1; got omega = {}",
                self.omega
            )));
        }
        self.build()
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegimeArg {
    Low,
    High,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Regime {
        match r {
            RegimeArg::Low => Regime::LowT2,
            RegimeArg::High => Regime::HighT2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one parameter point: steady state, coherence, magic report
    Point {
        #[command(flatten)]
        params: ParamArgs,
        /// Emit the full report as JSON instead of text
        #[arg(long)]
        json: bool,
        /// Also write the 16x16 Liouvillian matrix as JSON to this path
        #[arg(long, value_name = "PATH")]
        dump_liouvillian: Option<PathBuf>,
    },
    /// Sweep one parameter and write a CSV table
    Sweep {
        /// Sweep specification axis:min:max:steps[:log]; axes: g, t1, t2,
        /// p1, p2, p (locks p1 = p2), mu (locks p2 = mu * p1). The swept
        /// parameter's fixed flag value is ignored.
        #[arg(long)]
        sweep: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Output CSV path ("-" for stdout)
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = number of processors)
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Tabulate closed-form critical temperatures and allowed-g windows
    Crit {
        /// Spin-bath temperature limit used by the closed forms
        #[arg(long, value_enum)]
        regime: RegimeArg,
        /// Range specification p:min:max:steps or mu:min:max:steps
        #[arg(long)]
        sweep: String,
        /// Fixed p for mu sweeps
        #[arg(long)]
        p1: Option<f64>,
        /// Heat-bath temperature at which the allowed-g windows are reported
        #[arg(long)]
        t1: f64,
        /// Spin-bath temperature: required in the high regime; in the low
        /// regime it only feeds the exact solver (default 0.01)
        #[arg(long)]
        t2: Option<f64>,
        /// Bisect the exact magic boundary per row (slower)
        #[arg(long)]
        exact_boundary: bool,
        /// Output CSV path ("-" for stdout)
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = number of processors)
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Integrate from tau1 x tau2 and write the transient time series
    Transient {
        #[command(flatten)]
        params: ParamArgs,
        /// Integration end time
        #[arg(long = "t-end")]
        t_end: f64,
        /// Integration step (default keeps the stability guard satisfied)
        #[arg(long)]
        dt: Option<f64>,
        /// Write every n-th step
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn open_out(path: &PathBuf) -> Result<Box<dyn Write>, Error> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(io::stdout())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Point {
            params,
            json,
            dump_liouvillian,
        } => {
            let p = params.build_resonant()?;
            let ss = dynamics::steady_state(&p)?;
            if let Some(path) = dump_liouvillian {
                let l = dynamics::build_liouvillian(&p)?;
                let mut out = open_out(&path)?;
                serde_json::to_writer_pretty(&mut out, &l.to_json())
                    .map_err(|e| Error::Io(e.to_string()))?;
                out.write_all(b"\n")?;
            }
            if json {
                let report = sweep::point_report_json(&p, &ss)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?
                );
            } else {
                print!("{}", sweep::point_report_text(&p, &ss)?);
            }
        }
        Command::Sweep {
            sweep: spec_text,
            params,
            out,
            workers,
        } => {
            let fixed = params.build_resonant()?;
            let spec = SweepSpec::parse(&spec_text, fixed)?;
            let rows = sweep::run_sweep(&spec, workers)?;
            let mut w = open_out(&out)?;
            sweep::write_sweep_csv(&mut w, &spec, &rows)?;
        }
        Command::Crit {
            regime,
            sweep: spec_text,
            p1,
            t1,
            t2,
            exact_boundary,
            out,
            workers,
        } => {
            let regime: Regime = regime.into();
            let parts: Vec<&str> = spec_text.split(':').collect();
            if parts.len() != 4 {
                return Err(Error::InvalidSweep(format!(
                    "expected p:min:max:steps or mu:min:max:steps, got `{spec_text}`"
                )));
            }
            let axis = match parts[0] {
                "p" => CritAxis::P,
                "mu" => CritAxis::Mu,
                other => {
                    return Err(Error::InvalidSweep(format!(
                        "unknown crit axis `{other}` (expected p or mu)"
                    )))
                }
            };
            let parse = |s: &str| -> Result<f64, Error> {
                s.parse()
                    .map_err(|_| Error::InvalidSweep(format!("bad number `{s}`")))
            };
            let min = parse(parts[1])?;
            let max = parse(parts[2])?;
            let steps: usize = parts[3]
                .parse()
                .map_err(|_| Error::InvalidSweep(format!("bad steps `{}`", parts[3])))?;
            let p = match axis {
                CritAxis::P => p1.unwrap_or(f64::NAN),
                CritAxis::Mu => p1.ok_or_else(|| {
                    Error::InvalidSweep("mu sweeps need --p1 for the fixed rate".into())
                })?,
            };
            let t2 = match (regime, t2) {
                (Regime::HighT2, None) => {
                    return Err(Error::InvalidSweep(
                        "the high regime needs an explicit --t2".into(),
                    ))
                }
                (Regime::HighT2, Some(v)) => v,
                (Regime::LowT2, v) => v.unwrap_or(0.01),
            };
            let spec = CritSpec {
                regime,
                axis,
                min,
                max,
                steps,
                p,
                t1,
                t2,
                exact_boundary,
            };
            let rows = sweep::run_crit(&spec, workers)?;
            let mut w = open_out(&out)?;
            sweep::write_crit_csv(&mut w, &spec, &rows)?;
        }
        Command::Transient {
            params,
            t_end,
            dt,
            stride,
            out,
        } => {
            let p = params.build()?;
            let dt = dt.unwrap_or_else(|| dynamics::default_dt(&p));
            let run = sweep::run_transient(&p, t_end, dt, stride)?;
            match out {
                Some(path) => {
                    let mut w = open_out(&path)?;
                    sweep::write_transient_csv(&mut w, &p, &run)?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = BufWriter::new(stdout.lock());
                    sweep::write_transient_csv(&mut w, &p, &run)?;
                }
            }
        }
    }
    Ok(())
}

/// 0 = success, 2 = usage error, 3 = numerical failure, 1 = I/O failure.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::InvalidParams(_)
        | Error::InvalidSweep(_)
        | Error::DimensionMismatch { .. }
        | Error::BlochOutOfBall { .. } => 2,
        Error::Io(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::output;
use crate::phase::{phase_on_axis_numeric, thickness_sweep};
use crate::quantities::{Length, Measured, Unit};
use crate::scenario::{load_scenario_with, Scenario};
use crate::table1::reproduce_table1;
use crate::temporal::{temporal_response, Convention, TemporalOptions};
use crate::transmittance::{efficiency_map, gate_efficiency, linear_axis, optimal_waists, DiameterBounds, OptimizerOptions, SweepSetup};

/// Environment variable holding the default worker count for `map`.
pub const THREADS_ENV: &str = "KERR_SHUTTER_THREADS";

#[derive(Debug, Parser)]
#[command(name = "kerr-shutter", version, about = "Optical Kerr shutter gate simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// On-axis phase shift with and without dispersion
    Phase {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Thickness sweep `start:stop:count`, e.g. `0:5mm:51` (inclusive)
        #[arg(long, value_name = "RANGE")]
        sweep_thickness: Option<String>,
        /// CSV destination for the sweep (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Probe-averaged gate efficiency
    Efficiency {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Efficiency map over pump and probe beam diameters
    Map {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Pump diameter axis `start:stop:count`
        #[arg(long, value_name = "RANGE", default_value = "5um:60um:64")]
        pump: String,
        /// Probe diameter axis `start:stop:count`
        #[arg(long, value_name = "RANGE", default_value = "5um:60um:64")]
        probe: String,
        /// Worker threads (default: all available)
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
        /// CSV destination (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transmittance versus probe delay and its FWHM
    Temporal {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Overrides the scenario's convention
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
        /// Overrides the scenario's sample count
        #[arg(long)]
        samples: Option<usize>,
        /// CSV destination (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pump/probe diameters maximizing the efficiency
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Pump diameter bounds `lo:hi`
        #[arg(long, value_name = "BOUNDS", default_value = "5um:60um")]
        pump_bounds: String,
        /// Probe diameter bounds `lo:hi`
        #[arg(long, value_name = "BOUNDS", default_value = "5um:60um")]
        probe_bounds: String,
        /// Points per axis of the initial scan
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Recompute the three reference rows next to the published values
    Table1 {
        #[arg(long, value_enum, default_value = "paper-constant-intensity")]
        convention: ConventionArg,
        /// CSV destination (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario config file
    pub scenario: PathBuf,
    /// Override a config value after parsing, e.g. `--set pulse.duration="60 fs"`
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<Scenario> {
        load_scenario_with(&self.scenario, &self.overrides)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    PaperConstantIntensity,
    ZResolved,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::PaperConstantIntensity => Convention::PaperConstantIntensity,
            ConventionArg::ZResolved => Convention::ZResolved,
        }
    }
}

/// Process exit status for a result.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_configuration() => 1,
        Err(_) => 2,
    }
}

fn parse_value(text: &str, fallback: Option<Unit>) -> Result<Measured> {
    let text = text.trim();
    let split = text
        .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
        .unwrap_or(text.len());
    let (num, unit) = text.split_at(split);
    let value: f64 = num
        .parse()
        .map_err(|_| Error::config(format!("`{text}` does not start with a number")))?;
    let unit = match unit.trim() {
        "" => fallback.ok_or_else(|| Error::config(format!("`{text}` needs a unit")))?,
        u => u.parse()?,
    };
    Ok(Measured { value, unit })
}

/// Parses `start:stop[:count]` where either endpoint may omit the unit of the other.
fn parse_range(text: &str, with_count: bool) -> Result<(Length, Length, usize)> {
    let parts: Vec<&str> = text.split(':').collect();
    let expected = if with_count { 3 } else { 2 };
    if parts.len() != expected {
        let shape = if with_count { "start:stop:count" } else { "lo:hi" };
        return Err(Error::config(format!("range `{text}` is not `{shape}`")));
    }
    let stop = parse_value(parts[1], None).or_else(|_| {
        let start = parse_value(parts[0], None)?;
        parse_value(parts[1], Some(start.unit))
    })?;
    let start = parse_value(parts[0], Some(stop.unit))?;
    let count = if with_count {
        let c: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("`{}` is not a count", parts[2])))?;
        if c == 0 {
            return Err(Error::config("range count must be positive"));
        }
        c
    } else {
        2
    };
    Ok((Length::try_from(start)?, Length::try_from(stop)?, count))
}

fn emit<F>(path: Option<&Path>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => output::write_file(p, |w| f(w)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Phase { scenario, sweep_thickness, output } => {
            let s = scenario.load()?;
            match sweep_thickness {
                None => {
                    let off = phase_on_axis_numeric(&s.medium, &s.geometry, &s.pulse, false)?;
                    let on = phase_on_axis_numeric(&s.medium, &s.geometry, &s.pulse, true)?;
                    println!("phase_rad_no_dispersion = {}", off.delta_phi);
                    println!("phase_rad_dispersion = {}", on.delta_phi);
                    Ok(())
                }
                Some(range) => {
                    let (a, b, n) = parse_range(&range, true)?;
                    if a.si() < 0.0 || b < a {
                        return Err(Error::config("thickness range must satisfy 0 <= start <= stop"));
                    }
                    let sweep = thickness_sweep(&s.medium, &s.geometry, &s.pulse, &linear_axis(a, b, n))?;
                    emit(output.as_deref(), |w| output::write_phase_sweep(w, &sweep, &s.provenance()))
                }
            }
        }
        Command::Efficiency { scenario } => {
            let s = scenario.load()?;
            let r = gate_efficiency(&s.medium, &s.geometry, &s.pulse, s.dispersion)?;
            println!("efficiency = {}", r.transmittance);
            println!("on_axis_phase_rad = {}", r.on_axis_phase);
            Ok(())
        }
        Command::Map { scenario, pump, probe, threads, output } => {
            let s = scenario.load()?;
            let (p0, p1, pn) = parse_range(&pump, true)?;
            let (q0, q1, qn) = parse_range(&probe, true)?;
            let setup = SweepSetup::from_geometry(s.medium, &s.geometry, s.pulse, s.dispersion);
            let pool = match threads {
                Some(0) => return Err(Error::config("--threads must be positive")),
                Some(n) => Some(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build()
                        .map_err(|e| Error::config(format!("cannot start {n} threads: {e}")))?,
                ),
                None => None,
            };
            let grid = efficiency_map(&setup, &linear_axis(p0, p1, pn), &linear_axis(q0, q1, qn), pool.as_ref())?;
            if grid.failures() > 0 {
                eprintln!("warning: {} map cells failed to converge", grid.failures());
            }
            emit(output.as_deref(), |w| output::write_sweep(w, &grid, &s.provenance()))
        }
        Command::Temporal { scenario, convention, samples, output } => {
            let s = scenario.load()?;
            let opts = TemporalOptions {
                convention: convention.map_or(s.convention, Into::into),
                samples: samples.unwrap_or(s.samples),
                window: None,
            };
            let r = temporal_response(&s.medium, &s.geometry, &s.pulse, s.dispersion, opts)?;
            emit(output.as_deref(), |w| output::write_temporal(w, &r, &s.provenance()))
        }
        Command::Optimize { scenario, pump_bounds, probe_bounds, grid } => {
            let s = scenario.load()?;
            let (a, b, _) = parse_range(&pump_bounds, false)?;
            let (c, d, _) = parse_range(&probe_bounds, false)?;
            let setup = SweepSetup::from_geometry(s.medium, &s.geometry, s.pulse, s.dispersion);
            let bounds = DiameterBounds { pump: (a, b), probe: (c, d) };
            let opts = OptimizerOptions { grid, ..Default::default() };
            let o = optimal_waists(&setup, bounds, opts)?;
            println!("pump_diameter_um = {}", o.pump_diameter().as_um());
            println!("probe_diameter_um = {}", o.probe_diameter().as_um());
            println!("efficiency = {}", o.result.transmittance);
            Ok(())
        }
        Command::Table1 { convention, output } => {
            let convention: Convention = convention.into();
            let rows = reproduce_table1(convention)?;
            let provenance = vec![
                format!("average_power = {} W", crate::table1::AVERAGE_POWER_W),
                format!("wavelength = {} nm", crate::table1::WAVELENGTH_NM),
                "dispersion = true".to_string(),
                format!("convention = {convention}"),
            ];
            emit(output.as_deref(), |w| output::write_table1(w, &rows, &provenance))
        }
    }
}

//! Scenario execution and artifact writing.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cmspin::analysis::{
    convergence_study, default_test_functions, error_norm_sweep, viscosity_sweep, weak_residual,
    ConvergenceSpec, Reference, RunSpec, WeakResidualReport,
};
use cmspin::lattice::spectrum_rational;
use cmspin::{integrate, spectrum, Execution, LatticeGeometry, Method, Trajectory};
use serde::Serialize;
use serde_json::json;

use crate::config::{ConfigError, Format, Scenario, ScenarioConfig};

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Core(cmspin::Error),
    Io(std::io::Error),
}

impl RunError {
    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Core(_) => "runtime",
            RunError::Io(_) => "io",
        }
    }

    /// Process exit code: 2 for bad input, 1 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<cmspin::Error> for RunError {
    fn from(e: cmspin::Error) -> Self {
        RunError::Core(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

struct Writer<'a> {
    config: &'a ScenarioConfig,
    hash: String,
    written: Vec<PathBuf>,
}

impl Writer<'_> {
    fn header(&self) -> String {
        format!("# cmspin {} config_hash={}\n", cmspin::VERSION, self.hash)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.config.output.dir.join(name)
    }

    fn csv(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
    ) -> Result<(), RunError> {
        let mut buf = self.header().into_bytes();
        body(&mut buf)?;
        let path = self.path(name);
        fs::write(&path, buf)?;
        self.written.push(path);
        Ok(())
    }

    fn json(&mut self, name: &str, result: impl Serialize) -> Result<(), RunError> {
        let doc = json!({
            "generator": format!("cmspin {}", cmspin::VERSION),
            "config_hash": self.hash,
            "scenario": self.config.scenario.to_string(),
            "result": result,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        let path = self.path(name);
        fs::write(&path, text)?;
        self.written.push(path);
        Ok(())
    }

    fn emit<T: Serialize>(
        &mut self,
        stem: &str,
        value: &T,
        csv: impl FnOnce(&T, &mut Vec<u8>) -> std::io::Result<()>,
    ) -> Result<(), RunError> {
        match self.config.output.format {
            Format::Csv => self.csv(&format!("{stem}.csv"), |w| csv(value, w)),
            Format::Json => self.json(&format!("{stem}.json"), value),
        }
    }
}

fn run_spec(config: &ScenarioConfig) -> RunSpec {
    let a = &config.analysis;
    RunSpec {
        t_end: a.t_end.unwrap_or(a.t_max),
        snapshots: a.snapshots,
        cfl: a.cfl,
        method: Method::Rk4,
    }
}

fn trajectory(config: &ScenarioConfig, n: usize) -> Result<Trajectory, RunError> {
    let g = LatticeGeometry::new(n)?;
    let s0 = config.data.sample(&g)?;
    Ok(integrate(&s0, &config.flow)?)
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    mu: Vec<f64>,
    rational: Vec<(u64, u64)>,
}

fn write_diagnostics_csv(t: &Trajectory, w: &mut Vec<u8>) -> std::io::Result<()> {
    writeln!(
        w,
        "# schema=cmspin-diagnostics v{}",
        cmspin::dynamics::TRAJECTORY_SCHEMA_VERSION
    )?;
    writeln!(w, "t,hamiltonian,l2,hhalf,h52,sphere_deviation,mx,my,mz")?;
    for d in &t.diagnostics {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            d.t,
            d.hamiltonian,
            d.l2,
            d.hhalf,
            d.h52,
            d.sphere_deviation,
            d.total_spin[0],
            d.total_spin[1],
            d.total_spin[2]
        )?;
    }
    Ok(())
}

/// Runs a validated scenario and returns the files written.
pub fn run(config: &ScenarioConfig, exec: Execution) -> Result<Vec<PathBuf>, RunError> {
    config.validate()?;
    fs::create_dir_all(&config.output.dir)?;
    let mut out = Writer {
        config,
        hash: config.content_hash(),
        written: Vec::new(),
    };
    let sizes = config.n.to_vec();
    match config.scenario {
        Scenario::Spectrum => {
            let rows = sizes
                .iter()
                .map(|&n| {
                    Ok(SpectrumRow {
                        n,
                        mu: spectrum(n)?,
                        rational: spectrum_rational(n)?,
                    })
                })
                .collect::<Result<Vec<_>, cmspin::Error>>()?;
            out.emit("spectrum", &rows, |rows, w| {
                writeln!(w, "n,k,mu,mu_num,mu_den")?;
                for r in rows {
                    for (k, (mu, (num, den))) in r.mu.iter().zip(&r.rational).enumerate() {
                        writeln!(w, "{},{k},{mu},{num},{den}", r.n)?;
                    }
                }
                Ok(())
            })?;
        }
        Scenario::Simulate => {
            let t = trajectory(config, sizes[0])?;
            out.csv("trajectory.csv", |w| t.write_csv(w))?;
            match config.output.format {
                Format::Csv => out.csv("diagnostics.csv", |w| write_diagnostics_csv(&t, w))?,
                Format::Json => out.json("diagnostics.json", t.diagnostics_json())?,
            }
        }
        Scenario::Converge => {
            let a = &config.analysis;
            let spec = ConvergenceSpec {
                sizes,
                reference: Reference::HighN(a.n_ref),
                t_end: a.t_end,
                t_max: a.t_max,
                snapshots: a.snapshots,
                cfl: a.cfl,
            };
            let table = convergence_study(&config.data, &spec, exec)?;
            out.emit("convergence", &table, |t, w| t.write_csv(w))?;
        }
        Scenario::Viscosity => {
            let sweep = viscosity_sweep(
                &config.data,
                sizes[0],
                &config.analysis.epsilons,
                &run_spec(config),
                exec,
            )?;
            out.emit("viscosity", &sweep, |s, w| s.write_csv(w))?;
        }
        Scenario::Errorsweep => {
            let sweep = error_norm_sweep(
                &config.data,
                &sizes,
                &run_spec(config),
                config.analysis.error_eps,
                exec,
            )?;
            out.emit("errorsweep", &sweep, |s, w| s.write_csv(w))?;
            if config.output.format == Format::Csv {
                out.csv("tails.csv", |w| sweep.write_tails_csv(w))?;
            }
        }
        Scenario::Weaktest => {
            let phis = default_test_functions();
            let reports =
                cmspin::par::try_map(exec, &sizes, |&n| -> Result<WeakResidualReport, RunError> {
                    Ok(weak_residual(&trajectory(config, n)?, &phis)?)
                })?;
            out.emit("weak", &reports, |reports, w| {
                for (i, r) in reports.iter().enumerate() {
                    let mut part = Vec::new();
                    r.write_csv(&mut part)?;
                    // keep one schema and column line
                    let text = String::from_utf8(part).expect("utf8");
                    let skip = if i == 0 { 0 } else { 2 };
                    for line in text.lines().skip(skip) {
                        writeln!(w, "{line}")?;
                    }
                }
                Ok(())
            })?;
        }
    }
    Ok(out.written)
}

/// Reads a config file.
pub fn load(path: &Path) -> Result<ScenarioConfig, RunError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    Ok(ScenarioConfig::parse(&text)?)
}

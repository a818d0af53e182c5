//! JSON-driven sweep scenarios and their CSV output.
//!
//! A scenario names a metal, grids over separation and temperature, the
//! n = 0 parameterization, an engine, and tolerances. Each grid point is
//! evaluated independently (in parallel) and emitted as one CSV row in grid
//! order, so identical configurations produce byte-identical output files.
//!
//! Config keys (SI units throughout):
//!
//! ```json
//! {
//!   "metal": {
//!     "omega_p": 1.37e16,
//!     "v_f": 1.4e6,
//!     "relaxation": { "power_law": { "omega_tau0": 1e13, "t_ref": 300.0, "exponent": 5.0 } },
//!     "response": "anomalous_limit"
//!   },
//!   "separation_m": 2e-7,
//!   "temperature_k": { "start": 1e-3, "stop": 0.3, "points": 13, "scale": "log" },
//!   "alpha_s": 0.0,
//!   "alpha_p": "computed",
//!   "engine": "abel_plana",
//!   "tolerances": { "rel_tol": 1e-9, "abs_tol": 1e-12, "max_subdivisions": 400 },
//!   "output": { "dir": "out" }
//! }
//! ```

use crate::constants::classical_prefactor;
use crate::error::{Error, Result};
use crate::impedance::regime_report;
use crate::lifshitz::{
    delta_f_abel_plana, delta_f_direct, entropy, entropy_finite_difference, AlphaP,
    AlphaParameterization, EntropyMethod, ExactImpedanceSurface, NonlocalSurface, Reflectivity,
};
use crate::material::{MetalModel, ResponseKind};
use crate::quadrature::{zeta3, QuadratureSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// A scalar value or a sweep over a grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Single(f64),
    Sweep {
        start: f64,
        stop: f64,
        points: usize,
        scale: GridScale,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridScale {
    Linear,
    Log,
}

impl GridSpec {
    fn expand(&self, key: &str) -> Result<Vec<f64>> {
        match *self {
            GridSpec::Single(v) => {
                if !(v > 0.0) {
                    return Err(Error::Config(format!("{key}: value must be > 0, got {v}")));
                }
                Ok(vec![v])
            }
            GridSpec::Sweep {
                start,
                stop,
                points,
                scale,
            } => {
                if points == 0 {
                    return Err(Error::Config(format!("{key}.points: grid must be nonempty")));
                }
                if !(start > 0.0) || !(stop > start) {
                    return Err(Error::Config(format!(
                        "{key}: need 0 < start < stop, got [{start}, {stop}]"
                    )));
                }
                if points == 1 {
                    return Ok(vec![start]);
                }
                let n = points as f64 - 1.0;
                Ok((0..points)
                    .map(|i| {
                        let f = i as f64 / n;
                        match scale {
                            GridScale::Linear => start + (stop - start) * f,
                            GridScale::Log => start * (stop / start).powf(f),
                        }
                    })
                    .collect())
            }
        }
    }
}

/// "computed" or a fixed numeric α_p.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaPConfig {
    Fixed(f64),
    Mode(AlphaPMode),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaPMode {
    Computed,
}

impl From<AlphaPConfig> for AlphaP {
    fn from(c: AlphaPConfig) -> AlphaP {
        match c {
            AlphaPConfig::Fixed(v) => AlphaP::Fixed(v),
            AlphaPConfig::Mode(AlphaPMode::Computed) => AlphaP::Computed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    /// Direct Matsubara summation (cell-subtracted ΔF).
    Matsubara,
    /// Abel-Plana split (low-temperature branch, τ < 0.3).
    AbelPlana,
    /// Small-A closed form below A = 0.3, large-A above A = 3, Abel-Plana
    /// in between.
    AsymptoticAuto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub metal: MetalModel,
    pub separation_m: GridSpec,
    pub temperature_k: GridSpec,
    pub alpha_s: f64,
    pub alpha_p: AlphaPConfig,
    pub engine: EngineKind,
    #[serde(default)]
    pub tolerances: QuadratureSpec,
    #[serde(default)]
    pub output: OutputConfig,
}

impl Scenario {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let scenario: Scenario = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.metal
            .validate()
            .map_err(|e| Error::Config(format!("metal: {e}")))?;
        if !(0.0..=0.5).contains(&self.alpha_s) {
            return Err(Error::Config(format!(
                "alpha_s: must lie in [0, 0.5], got {}",
                self.alpha_s
            )));
        }
        self.tolerances
            .validate()
            .map_err(|e| Error::Config(format!("tolerances: {e}")))?;
        self.separation_m.expand("separation_m")?;
        self.temperature_k.expand("temperature_k")?;
        Ok(())
    }

    fn alpha(&self) -> AlphaParameterization {
        AlphaParameterization {
            alpha_s: self.alpha_s,
            alpha_p: self.alpha_p.into(),
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub temperature_k: f64,
    pub separation_m: f64,
    pub tau: f64,
    pub a_crossover: f64,
    pub b: f64,
    pub v_min: f64,
    pub anomalous_valid: bool,
    pub leontovich_valid: bool,
    pub engine: &'static str,
    pub status: String,
    pub f0_j_m2: f64,
    pub delta_f_j_m2: Option<f64>,
    pub entropy_j_k_m2: Option<f64>,
    pub entropy_fd_j_k_m2: Option<f64>,
    pub bracket_s: Option<f64>,
    pub bracket_p: Option<f64>,
}

/// Column order of the CSV output; append-only by policy.
pub const CSV_HEADER: &str = "temperature_k,separation_m,tau,a_crossover,b,v_min,anomalous_valid,leontovich_valid,engine,status,f0_j_m2,delta_f_j_m2,entropy_j_k_m2,entropy_fd_j_k_m2,bracket_s,bracket_p";

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.17e}"),
        None => String::new(),
    }
}

impl Row {
    fn to_csv(&self) -> String {
        format!(
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{},{},{},{},{:.17e},{},{},{},{},{}",
            self.temperature_k,
            self.separation_m,
            self.tau,
            self.a_crossover,
            self.b,
            self.v_min,
            self.anomalous_valid,
            self.leontovich_valid,
            self.engine,
            self.status,
            self.f0_j_m2,
            fmt_opt(self.delta_f_j_m2),
            fmt_opt(self.entropy_j_k_m2),
            fmt_opt(self.entropy_fd_j_k_m2),
            fmt_opt(self.bracket_s),
            fmt_opt(self.bracket_p),
        )
    }
}

fn reflectivity_for(
    scenario: &Scenario,
    separation: f64,
    temperature: f64,
) -> Result<Box<dyn Reflectivity>> {
    Ok(match scenario.metal.response {
        ResponseKind::AnomalousLimit => {
            Box::new(NonlocalSurface::new(&scenario.metal, separation)?)
        }
        _ => Box::new(ExactImpedanceSurface::new(
            scenario.metal,
            separation,
            temperature,
            scenario.tolerances.tightened(10.0),
        )?),
    })
}

fn engine_label(kind: EngineKind, a_crossover: f64) -> &'static str {
    match kind {
        EngineKind::Matsubara => "matsubara",
        EngineKind::AbelPlana => "abel_plana",
        EngineKind::AsymptoticAuto => {
            if a_crossover < 0.3 {
                "asymptotic_small_a"
            } else if a_crossover > 3.0 {
                "asymptotic_large_a"
            } else {
                "abel_plana"
            }
        }
    }
}

fn evaluate_row(scenario: &Scenario, separation: f64, temperature: f64) -> Row {
    let spec = &scenario.tolerances;
    let report = regime_report(&scenario.metal, separation, temperature)
        .expect("grid values validated positive");
    let alpha = scenario.alpha();
    let pref = classical_prefactor(separation, temperature);
    let label = engine_label(scenario.engine, report.a_crossover);

    let mut row = Row {
        temperature_k: temperature,
        separation_m: separation,
        tau: report.tau,
        a_crossover: report.a_crossover,
        b: report.b,
        v_min: report.v_min,
        anomalous_valid: report.anomalous_valid,
        leontovich_valid: report.leontovich_valid,
        engine: label,
        status: "ok".into(),
        f0_j_m2: f64::NAN,
        delta_f_j_m2: None,
        entropy_j_k_m2: None,
        entropy_fd_j_k_m2: None,
        bracket_s: None,
        bracket_p: None,
    };

    let mut run = || -> Result<()> {
        let alpha_total = alpha.total(&scenario.metal, separation)?;
        row.f0_j_m2 = -alpha_total * pref * zeta3();
        let refl = reflectivity_for(scenario, separation, temperature)?;

        let delta_f = match label {
            "matsubara" => delta_f_direct(refl.as_ref(), separation, temperature, alpha_total, spec)?
                .delta_f,
            "abel_plana" => {
                let b = delta_f_abel_plana(refl.as_ref(), separation, temperature, alpha_total, spec)?;
                row.bracket_s = Some(b.s.bracket());
                row.bracket_p = Some(b.p.bracket());
                b.delta_f
            }
            "asymptotic_small_a" => {
                crate::asymptotics::delta_f_small_a(&scenario.metal, separation, temperature, &alpha)?
            }
            _ => crate::asymptotics::delta_f_large_a(&scenario.metal, separation, temperature, &alpha)?,
        };
        row.delta_f_j_m2 = Some(delta_f);

        let fd = entropy_finite_difference(refl.as_ref(), separation, temperature, alpha_total, spec)?;
        row.entropy_fd_j_k_m2 = Some(fd.entropy);

        let method = match label {
            "asymptotic_small_a" => EntropyMethod::AsymptoticSmallA,
            "asymptotic_large_a" => EntropyMethod::AsymptoticLargeA,
            _ => EntropyMethod::FiniteDifference,
        };
        row.entropy_j_k_m2 = Some(match method {
            EntropyMethod::FiniteDifference => fd.entropy,
            _ => {
                entropy(
                    refl.as_ref(),
                    &scenario.metal,
                    separation,
                    temperature,
                    &alpha,
                    method,
                    spec,
                )?
                .entropy
            }
        });
        Ok(())
    };

    if let Err(e) = run() {
        row.status = match e {
            Error::Regime(_) => format!("regime_error: {e}"),
            other => format!("error: {other}"),
        };
    }
    row
}

/// Result of one scenario run.
#[derive(Debug)]
pub struct RunSummary {
    pub rows: Vec<Row>,
    pub output_path: PathBuf,
}

/// Expand the grids, evaluate every (T, a) point, and write the CSV.
/// Rows are computed in parallel but always emitted in grid order
/// (temperature outer, separation inner).
pub fn run_scenario(config_path: &Path, out_override: Option<&Path>) -> Result<RunSummary> {
    let scenario = Scenario::from_path(config_path)?;
    let temperatures = scenario.temperature_k.expand("temperature_k")?;
    let separations = scenario.separation_m.expand("separation_m")?;

    let points: Vec<(f64, f64)> = temperatures
        .iter()
        .flat_map(|&t| separations.iter().map(move |&a| (t, a)))
        .collect();

    let rows: Vec<Row> = points
        .par_iter()
        .map(|&(t, a)| evaluate_row(&scenario, a, t))
        .collect();

    let out_dir = out_override
        .map(Path::to_path_buf)
        .unwrap_or_else(|| scenario.output.dir.clone());
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let output_path = out_dir.join("results.csv");
    let mut file = std::fs::File::create(&output_path)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", output_path.display())))?;
    writeln!(file, "{CSV_HEADER}").map_err(|e| Error::Config(e.to_string()))?;
    for row in &rows {
        writeln!(file, "{}", row.to_csv()).map_err(|e| Error::Config(e.to_string()))?;
    }

    Ok(RunSummary { rows, output_path })
}

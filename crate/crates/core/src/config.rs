//! Run configuration, validation and experiment presets.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::driver::{Boundary, Grid, InitialCondition, ReferenceSpec};
use crate::error::{Error, Result};
use crate::models::{Advection, Burgers, Euler, Model, DEFAULT_GAMMA};
use crate::scalar::Real;
use crate::schemes::{SchemeConfig, SchemeKind};

fn default_gamma() -> f64 {
    DEFAULT_GAMMA
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum ModelConfig {
    Advection { speed: f64 },
    Burgers,
    Euler {
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
}

impl ModelConfig {
    pub fn build<T: Real>(&self) -> Model<T> {
        match *self {
            ModelConfig::Advection { speed } => Model::Advection(Advection { speed: T::lit(speed) }),
            ModelConfig::Burgers => Model::Burgers(Burgers),
            ModelConfig::Euler { gamma } => Model::Euler(Euler { gamma: T::lit(gamma) }),
        }
    }

    pub fn components(&self) -> usize {
        match self {
            ModelConfig::Euler { .. } => 3,
            _ => 1,
        }
    }

    /// Ratio of specific heats; the default for scalar models, where it is unused.
    pub fn gamma(&self) -> f64 {
        match *self {
            ModelConfig::Euler { gamma } => gamma,
            _ => DEFAULT_GAMMA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    pub initial_condition: InitialCondition,
    pub boundary: Boundary,
    pub t_end: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Extra snapshot times before `t_end`; the final state is always written.
    pub times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: Grid,
    pub model: ModelConfig,
    pub scheme: SchemeConfig,
    pub run: RunParams,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.scheme.validate()?;
        if !(self.run.t_end >= 0.0 && self.run.t_end.is_finite()) {
            return Err(Error::config(format!("t_end must be non-negative, got {}", self.run.t_end)));
        }
        match self.model {
            ModelConfig::Advection { speed } if !speed.is_finite() => {
                return Err(Error::config("advection speed must be finite"));
            }
            ModelConfig::Euler { gamma } if !(gamma > 1.0) => {
                return Err(Error::config(format!("gamma must exceed 1, got {gamma}")));
            }
            _ => {}
        }
        if self.scheme.scheme == SchemeKind::Lw && !matches!(self.model, ModelConfig::Advection { .. }) {
            return Err(Error::config("scheme lw is only defined for linear advection"));
        }
        let ic = self.run.initial_condition;
        if ic.components() != self.model.components() {
            return Err(Error::config(format!(
                "initial condition {ic} has {} components but the model has {}",
                ic.components(),
                self.model.components()
            )));
        }
        let euler_riemann = matches!(ic, InitialCondition::Sod | InitialCondition::ShuOsher);
        let expected = if euler_riemann { Boundary::Outflow } else { Boundary::Periodic };
        if self.run.boundary != expected {
            return Err(Error::config(format!(
                "initial condition {ic} is defined with {expected:?} boundaries, got {:?}",
                self.run.boundary
            )));
        }
        if let Some(t) = self.output.times.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::config(format!("output times must be positive, got {t}")));
        }
        if self.output.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("output times must be increasing"));
        }
        Ok(())
    }

    pub fn with_scheme(&self, scheme: SchemeConfig) -> Self {
        RunConfig { scheme, ..self.clone() }
    }

    pub fn with_n(&self, n: usize) -> Self {
        let mut c = self.clone();
        c.grid.n = n;
        c
    }
}

/// Parse and validate a configuration from JSON text.
pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = serde_json::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

/// A preset name or a path to a JSON configuration file.
pub fn parse_config(source: &str) -> Result<RunConfig> {
    if let Some(p) = preset(source) {
        return Ok(p.base);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), source: e })?;
    parse_config_str(&text)
}

pub fn emit_config(cfg: &RunConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("configuration serializes")
}

/// A published experiment: one setup, several schemes, optional mesh study.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPreset {
    pub name: &'static str,
    pub description: &'static str,
    /// Setup with the first variant's scheme.
    pub base: RunConfig,
    pub variants: Vec<SchemeConfig>,
    /// Mesh sequence for convergence studies; empty when not applicable.
    pub meshes: Vec<usize>,
    pub reference: Option<ReferenceSpec>,
}

impl ExperimentPreset {
    pub fn configs(&self) -> Vec<RunConfig> {
        self.variants.iter().map(|s| self.base.with_scheme(*s)).collect()
    }
}

/// `19 * 2^k`, `k = 0..6`, the mesh sequence whose spacing on `[0, 2]` is `0.1053, 0.0526, ...`.
pub fn table_meshes() -> Vec<usize> {
    (0..6).map(|k| 19usize << k).collect()
}

pub const PRESET_NAMES: [&str; 11] = [
    "fig2_square_lw",
    "fig3_square_compare",
    "table3_advection_convergence",
    "table4_weno_convergence",
    "fig4_burgers_square_cat",
    "fig5_burgers_square_compare",
    "fig6_burgers_square_cfl09",
    "table7_burgers_convergence",
    "table8_euler_convergence",
    "sod_450",
    "shu_osher_450",
];

fn cfg(
    n: usize,
    x: (f64, f64),
    model: ModelConfig,
    ic: InitialCondition,
    boundary: Boundary,
    t_end: f64,
    scheme: SchemeConfig,
) -> RunConfig {
    RunConfig {
        grid: Grid { n, x_lo: x.0, x_hi: x.1 },
        model,
        scheme,
        run: RunParams { initial_condition: ic, boundary, t_end },
        output: OutputConfig::default(),
    }
}

pub fn preset(name: &str) -> Option<ExperimentPreset> {
    use InitialCondition::*;
    use SchemeKind::*;
    let s = SchemeConfig::new;
    let adv = ModelConfig::Advection { speed: 1.0 };
    let euler = ModelConfig::Euler { gamma: DEFAULT_GAMMA };
    let periodic = Boundary::Periodic;
    let compare = |cfl| vec![s(Cat, 2, cfl), s(FlCat, 2, cfl), s(WenoCat, 2, cfl), s(WenoRk3, 2, cfl)];
    let cat_orders = |cfl| (1..=3).map(|p| s(Cat, p, cfl)).collect::<Vec<_>>();

    let (description, variants, base, meshes, reference) = match name {
        "fig2_square_lw" => (
            "advection of a square step, N = 80, CFL 0.9, t = 1, LW of orders 2..10",
            (1..=5).map(|p| s(Lw, p, 0.9)).collect(),
            cfg(80, (0.0, 1.0), adv, SquareStep, periodic, 1.0, s(Lw, 1, 0.9)),
            vec![],
            None,
        ),
        "fig3_square_compare" => (
            "advection of a square step, N = 80, CFL 0.5, t = 1, CAT4 variants and WENO5-RK3",
            compare(0.5),
            cfg(80, (0.0, 1.0), adv, SquareStep, periodic, 1.0, s(Cat, 2, 0.5)),
            vec![],
            None,
        ),
        "table3_advection_convergence" => (
            "advection of 0.25 sin(pi x) on [0, 2], CFL 0.5, t = 1, LW-CAT2/4/6 against the exact solution",
            cat_orders(0.5),
            cfg(19, (0.0, 2.0), adv, QuarterSine, periodic, 1.0, s(Cat, 1, 0.5)),
            table_meshes(),
            Some(ReferenceSpec::Exact),
        ),
        "table4_weno_convergence" => (
            "advection of 0.25 sin(pi x) on [0, 2], CFL 0.5, t = 1, WENO5-RK3 against the exact solution",
            vec![s(WenoRk3, 2, 0.5)],
            cfg(19, (0.0, 2.0), adv, QuarterSine, periodic, 1.0, s(WenoRk3, 2, 0.5)),
            table_meshes(),
            Some(ReferenceSpec::Exact),
        ),
        "fig4_burgers_square_cat" => (
            "Burgers square step, N = 80, t = 2, LW-CAT2/4/6/8 at CFL 0.8/0.4/0.2/0.1",
            vec![s(Cat, 1, 0.8), s(Cat, 2, 0.4), s(Cat, 3, 0.2), s(Cat, 4, 0.1)],
            cfg(80, (0.0, 1.0), ModelConfig::Burgers, SquareStep, periodic, 2.0, s(Cat, 1, 0.8)),
            vec![],
            None,
        ),
        "fig5_burgers_square_compare" => (
            "Burgers square step, N = 80, CFL 0.5, t = 2, CAT4 variants and WENO5-RK3",
            compare(0.5),
            cfg(80, (0.0, 1.0), ModelConfig::Burgers, SquareStep, periodic, 2.0, s(Cat, 2, 0.5)),
            vec![],
            None,
        ),
        "fig6_burgers_square_cfl09" => (
            "Burgers square step, N = 80, CFL 0.9, t = 2, CAT4 variants and WENO5-RK3",
            compare(0.9),
            cfg(80, (0.0, 1.0), ModelConfig::Burgers, SquareStep, periodic, 2.0, s(Cat, 2, 0.9)),
            vec![],
            None,
        ),
        "table7_burgers_convergence" => (
            "Burgers with 0.25 sin(pi x) on [0, 2], CFL 0.5, t = 0.5, LW-CAT2/4/6 against a fine WENO5-RK3 run",
            cat_orders(0.5),
            cfg(19, (0.0, 2.0), ModelConfig::Burgers, QuarterSine, periodic, 0.5, s(Cat, 1, 0.5)),
            table_meshes(),
            Some(ReferenceSpec::Fine { n: 19 << 7, scheme: s(WenoRk3, 2, 0.05) }),
        ),
        "table8_euler_convergence" => (
            "Euler with sine data on [0, 2], CFL 0.5, t = 0.5, LW-CAT2/4/6 against a fine LW-CAT8 run",
            cat_orders(0.5),
            cfg(19, (0.0, 2.0), euler, EulerSine, periodic, 0.5, s(Cat, 1, 0.5)),
            table_meshes(),
            Some(ReferenceSpec::Fine { n: 19 << 6, scheme: s(Cat, 4, 0.5) }),
        ),
        "sod_450" => (
            "Sod shock tube on [-5, 5], N = 450, CFL 0.5, t = 1",
            vec![s(FlCat, 2, 0.5), s(WenoCat, 2, 0.5), s(WenoRk3, 2, 0.5)],
            cfg(450, (-5.0, 5.0), euler, Sod, Boundary::Outflow, 1.0, s(FlCat, 2, 0.5)),
            vec![],
            Some(ReferenceSpec::Fine { n: 1350, scheme: s(WenoRk3, 2, 0.5) }),
        ),
        "shu_osher_450" => (
            "Shu-Osher shock/entropy interaction on [-5, 5], N = 450, CFL 0.5, t = 1",
            vec![s(FlCat, 2, 0.5), s(WenoCat, 2, 0.5), s(WenoRk3, 2, 0.5)],
            cfg(450, (-5.0, 5.0), euler, ShuOsher, Boundary::Outflow, 1.0, s(FlCat, 2, 0.5)),
            vec![],
            Some(ReferenceSpec::Fine { n: 1350, scheme: s(WenoRk3, 2, 0.5) }),
        ),
        _ => return None,
    };
    Some(ExperimentPreset { name: PRESET_NAMES.iter().find(|n| **n == name)?, description, base, variants, meshes, reference })
}

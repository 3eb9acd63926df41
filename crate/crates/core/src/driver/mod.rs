//! Time stepping, initial data, errors and convergence studies.

pub mod grid;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use grid::{Boundary, Grid, State};

use crate::config::{ModelConfig, RunConfig};
use crate::error::{Error, Location, Result};
use crate::models::{primitive_to_conservative, FluxModel, Model};
use crate::scalar::Real;
use crate::schemes::{SchemeConfig, Stepper};

/// Relative slack below which a step is stretched to land on a target time.
const LANDING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// `1` on `[0, 1/2)`, `2` on `[1/2, 1)`, repeated with period 1.
    SquareStep,
    /// `0.25 sin(πx)`.
    QuarterSine,
    /// Conservative `(ρ, ρu, E) = (0.75, 0.25, 0.75) + 0.5 sin(πx)`.
    EulerSine,
    /// Primitive `(1, 0, 1)` for `x < 0`, `(0.125, 0, 0.1)` otherwise.
    Sod,
    /// Primitive `(3.8571, 2.6293, 10.3333)` for `x < -4`,
    /// `(1 + 0.2 sin 5x, 0, 1)` otherwise.
    ShuOsher,
}

impl InitialCondition {
    pub const ALL: [InitialCondition; 5] = [
        InitialCondition::SquareStep,
        InitialCondition::QuarterSine,
        InitialCondition::EulerSine,
        InitialCondition::Sod,
        InitialCondition::ShuOsher,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InitialCondition::SquareStep => "square_step",
            InitialCondition::QuarterSine => "quarter_sine",
            InitialCondition::EulerSine => "euler_sine",
            InitialCondition::Sod => "sod",
            InitialCondition::ShuOsher => "shu_osher",
        }
    }

    pub fn components(self) -> usize {
        match self {
            InitialCondition::SquareStep | InitialCondition::QuarterSine => 1,
            _ => 3,
        }
    }

    /// Scalar profile value at `x`.
    pub fn scalar(self, x: f64) -> Option<f64> {
        match self {
            InitialCondition::SquareStep => Some(if x.rem_euclid(1.0) < 0.5 { 1.0 } else { 2.0 }),
            InitialCondition::QuarterSine => Some(0.25 * (PI * x).sin()),
            _ => None,
        }
    }

    /// Primitive `(ρ, u, p)` for the Riemann-type Euler problems.
    pub fn primitive(self, x: f64) -> Option<[f64; 3]> {
        match self {
            InitialCondition::Sod => Some(if x < 0.0 { [1.0, 0.0, 1.0] } else { [0.125, 0.0, 0.1] }),
            InitialCondition::ShuOsher => Some(if x < -4.0 {
                [3.8571, 2.6293, 10.3333]
            } else {
                [1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0]
            }),
            _ => None,
        }
    }

    /// State at `x` in conservative variables.
    pub fn evaluate(self, x: f64, gamma: f64) -> Result<Vec<f64>> {
        if let Some(v) = self.scalar(x) {
            return Ok(vec![v]);
        }
        if let Some([rho, u, p]) = self.primitive(x) {
            return Ok(primitive_to_conservative(rho, u, p, gamma)?.to_array().to_vec());
        }
        let s = 0.5 * (PI * x).sin();
        Ok(vec![0.75 + s, 0.25 + s, 0.75 + s])
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InitialCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitialCondition::ALL
            .into_iter()
            .find(|ic| ic.as_str() == s.trim())
            .ok_or_else(|| Error::config(format!("unknown initial condition '{s}'")))
    }
}

/// Node values of `ic` on `grid`, cell-major.
pub fn initial_condition<T: Real>(ic: InitialCondition, grid: &Grid, gamma: f64) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(grid.n * ic.components());
    for x in grid.nodes() {
        out.extend(ic.evaluate(x, gamma)?.into_iter().map(T::lit));
    }
    Ok(out)
}

/// `cfl dx / max_i s(u_i)` over the interior of `state`.
pub fn compute_dt<T: Real, M: FluxModel<T> + ?Sized>(state: &State<T>, model: &M, cfl: T, dx: T) -> Result<T> {
    if state.n() == 0 {
        return Err(Error::config("cannot compute a time step on an empty row"));
    }
    let mut smax = T::zero();
    for i in 0..state.n() as isize {
        let s = model
            .max_wave_speed(state.cell(i))
            .map_err(|f| Error::state(Location::Cell(i), f))?;
        smax = smax.max(s);
    }
    if smax <= T::zero() {
        return Err(Error::config(format!(
            "maximum wave speed is zero for model {}; no CFL time step exists",
            model.name()
        )));
    }
    Ok(cfl * dx / smax)
}

/// A state row advancing under one scheme.
#[derive(Debug, Clone)]
pub struct Simulation<T> {
    model: Model<T>,
    stepper: Stepper<T>,
    state: State<T>,
    boundary: Boundary,
    grid: Grid,
    /// Elapsed time as a compensated sum `time + carry`, so that clipping the
    /// final step lands on the target to working precision.
    time: f64,
    carry: f64,
    steps: usize,
    step_seconds: f64,
}

impl<T: Real> Simulation<T> {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        let init = initial_condition::<T>(cfg.run.initial_condition, &cfg.grid, cfg.model.gamma())?;
        Self::from_parts(cfg.grid, cfg.model.build(), cfg.scheme, cfg.run.boundary, &init)
    }

    /// Simulation from explicit initial values (cell-major, `grid.n * m` long).
    pub fn from_parts(
        grid: Grid,
        model: Model<T>,
        scheme: SchemeConfig,
        boundary: Boundary,
        initial: &[T],
    ) -> Result<Self> {
        grid.validate()?;
        let m = model.components();
        if initial.len() != grid.n * m {
            return Err(Error::config(format!(
                "initial data has {} values, expected {} x {m}",
                initial.len(),
                grid.n
            )));
        }
        let stepper = Stepper::new(scheme)?;
        let mut state = State::from_interior(initial, m, stepper.ghost_width());
        state.apply_boundary(boundary);
        Ok(Simulation { model, stepper, state, boundary, grid, time: 0.0, carry: 0.0, steps: 0, step_seconds: 0.0 })
    }

    pub fn state(&self) -> &State<T> {
        &self.state
    }

    pub fn interior(&self) -> &[T] {
        self.state.interior()
    }

    pub fn model(&self) -> &Model<T> {
        &self.model
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time + self.carry
    }

    fn add_time(&mut self, dt: f64) {
        let t = self.time + dt;
        if self.time.abs() >= dt.abs() {
            self.carry += (self.time - t) + dt;
        } else {
            self.carry += (dt - t) + self.time;
        }
        self.time = t;
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Wall time spent inside [`Simulation::step_with`], excluding setup.
    pub fn step_seconds(&self) -> f64 {
        self.step_seconds
    }

    pub fn dx(&self) -> T {
        T::lit(self.grid.dx())
    }

    /// CFL-limited step for the current state.
    pub fn stable_dt(&self) -> Result<T> {
        compute_dt(&self.state, &self.model, T::lit(self.stepper.config().cfl), self.dx())
    }

    /// Advance by exactly `dt`.
    pub fn step_with(&mut self, dt: T) -> Result<()> {
        let start = Instant::now();
        let dx = self.dx();
        let r = self.stepper.step(&mut self.state, &self.model, self.boundary, dt, dx);
        self.step_seconds += start.elapsed().as_secs_f64();
        r.map_err(|e| Error::Step { step: self.steps + 1, time: self.time(), source: Box::new(e) })?;
        self.steps += 1;
        self.add_time(dt.to_f64_lossy());
        Ok(())
    }

    /// Advance until `t_end`, clipping the final step to land on it.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        let slack = LANDING_TOL * t_end.abs().max(1.0);
        loop {
            let remaining = (t_end - self.time) - self.carry;
            if remaining <= slack {
                break;
            }
            let dt = self
                .stable_dt()
                .map_err(|e| Error::Step { step: self.steps + 1, time: self.time(), source: Box::new(e) })?
                .to_f64_lossy();
            if dt >= remaining - slack {
                self.step_with(T::lit(remaining))?;
                self.time = t_end;
                self.carry = 0.0;
            } else {
                self.step_with(T::lit(dt))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot<T> {
    pub time: f64,
    pub step: usize,
    /// Interior values, cell-major.
    pub data: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RunMetrics {
    pub steps: usize,
    pub wall_seconds: f64,
    pub step_seconds: f64,
    pub seconds_per_step: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub grid: Grid,
    pub label: String,
    pub component_names: Vec<String>,
    pub snapshots: Vec<Snapshot<T>>,
    pub metrics: RunMetrics,
}

impl<T> Trajectory<T> {
    pub fn last(&self) -> &Snapshot<T> {
        self.snapshots.last().expect("trajectory always holds the final state")
    }
}

/// Run `cfg` to its end time, recording the requested output times and the final state.
pub fn run<T: Real>(cfg: &RunConfig) -> Result<Trajectory<T>> {
    let start = Instant::now();
    let mut sim = Simulation::<T>::new(cfg)?;
    let mut targets: Vec<f64> = cfg.output.times.iter().copied().filter(|&t| t < cfg.run.t_end).collect();
    targets.push(cfg.run.t_end);
    let mut snapshots = Vec::with_capacity(targets.len());
    for t in targets {
        sim.advance_to(t)?;
        snapshots.push(Snapshot { time: sim.time(), step: sim.steps(), data: sim.interior().to_vec() });
    }
    let steps = sim.steps();
    let metrics = RunMetrics {
        steps,
        wall_seconds: start.elapsed().as_secs_f64(),
        step_seconds: sim.step_seconds(),
        seconds_per_step: if steps > 0 { sim.step_seconds() / steps as f64 } else { 0.0 },
    };
    Ok(Trajectory {
        grid: cfg.grid,
        label: cfg.scheme.label(),
        component_names: sim.model().component_names().iter().map(|s| s.to_string()).collect(),
        snapshots,
        metrics,
    })
}

/// `dx Σ_i Σ_c |u_ic - ref_ic|`.
pub fn l1_error<T: Real>(row: &[T], reference: &[T], dx: f64) -> Result<f64> {
    if row.len() != reference.len() {
        return Err(Error::Domain(format!(
            "grid mismatch: row has {} values, reference has {}",
            row.len(),
            reference.len()
        )));
    }
    let sum: f64 = row
        .iter()
        .zip(reference)
        .map(|(a, b)| (a.to_f64_lossy() - b.to_f64_lossy()).abs())
        .sum();
    Ok(dx * sum)
}

/// Coarse-node values of a fine row whose nodes nest the coarse ones.
pub fn restrict<T: Copy>(fine: &[T], fine_n: usize, coarse_n: usize, m: usize) -> Result<Vec<T>> {
    if fine.len() != fine_n * m {
        return Err(Error::Domain(format!("fine row has {} values, expected {}", fine.len(), fine_n * m)));
    }
    if coarse_n == 0 || fine_n % coarse_n != 0 {
        return Err(Error::Domain(format!(
            "reference grid of {fine_n} nodes does not nest a grid of {coarse_n} nodes"
        )));
    }
    let ratio = fine_n / coarse_n;
    Ok((0..coarse_n)
        .flat_map(|i| fine[i * ratio * m..(i * ratio + 1) * m].iter().copied())
        .collect())
}

/// Exact periodic solution of linear advection at time `t`.
pub fn exact_advection(ic: InitialCondition, grid: &Grid, speed: f64, t: f64, gamma: f64) -> Result<Vec<f64>> {
    let len = grid.x_hi - grid.x_lo;
    let mut out = Vec::with_capacity(grid.n * ic.components());
    for x in grid.nodes() {
        let xs = grid.x_lo + (x - speed * t - grid.x_lo).rem_euclid(len);
        out.extend(ic.evaluate(xs, gamma)?);
    }
    Ok(out)
}

/// How errors in a convergence study are measured.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum ReferenceSpec {
    /// Exact solution of periodic linear advection.
    Exact,
    /// Numerical solution on a finer nesting grid.
    Fine { n: usize, scheme: SchemeConfig },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    pub n: usize,
    pub dx: f64,
    pub error: f64,
    /// `log(e_prev / e) / log(dx_prev / dx)`; `None` on the first row or
    /// when an error is zero.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub label: String,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn from_errors(label: impl Into<String>, points: &[(usize, f64, f64)]) -> Self {
        let mut rows: Vec<ErrorRow> = Vec::with_capacity(points.len());
        for &(n, dx, error) in points {
            let order = rows.last().and_then(|prev| {
                let ok = prev.error > 0.0 && error > 0.0 && prev.error.is_finite() && error.is_finite();
                ok.then(|| (prev.error / error).ln() / (prev.dx / dx).ln())
            });
            rows.push(ErrorRow { n, dx, error, order });
        }
        ErrorReport { label: label.into(), rows }
    }

    pub fn orders(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.order).collect()
    }
}

/// Solution of `cfg` at its end time, interior values as `f64`.
pub fn final_state<T: Real>(cfg: &RunConfig) -> Result<Vec<f64>> {
    let mut sim = Simulation::<T>::new(cfg)?;
    sim.advance_to(cfg.run.t_end)?;
    Ok(sim.interior().iter().map(|v| v.to_f64_lossy()).collect())
}

/// L¹ errors of `base` (all fields except `grid.n`) on each mesh.
pub fn convergence_study<T: Real>(base: &RunConfig, meshes: &[usize], reference: &ReferenceSpec) -> Result<ErrorReport> {
    if meshes.is_empty() {
        return Err(Error::config("convergence study needs at least one mesh"));
    }
    if meshes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config(format!("mesh list must strictly refine, got {meshes:?}")));
    }
    let m = base.run.initial_condition.components();
    enum Resolved {
        Exact(f64),
        Fine(Vec<f64>, usize),
    }
    let resolved = match reference {
        ReferenceSpec::Exact => {
            let ModelConfig::Advection { speed } = base.model else {
                return Err(Error::config("exact reference is only available for linear advection"));
            };
            if base.run.boundary != Boundary::Periodic {
                return Err(Error::config("exact reference requires periodic boundaries"));
            }
            Resolved::Exact(speed)
        }
        ReferenceSpec::Fine { n, scheme } => {
            if let Some(bad) = meshes.iter().find(|&&c| n % c != 0) {
                return Err(Error::Domain(format!("reference grid of {n} nodes does not nest a grid of {bad} nodes")));
            }
            let mut cfg = base.clone();
            cfg.grid.n = *n;
            cfg.scheme = *scheme;
            Resolved::Fine(final_state::<f64>(&cfg)?, *n)
        }
    };
    let mut points = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let mut cfg = base.clone();
        cfg.grid.n = n;
        let got = final_state::<T>(&cfg)?;
        let reference = match &resolved {
            Resolved::Exact(speed) => exact_advection(
                base.run.initial_condition,
                &cfg.grid,
                *speed,
                cfg.run.t_end,
                base.model.gamma(),
            )?,
            Resolved::Fine(row, fine_n) => restrict(row, *fine_n, n, m)?,
        };
        points.push((n, cfg.grid.dx(), l1_error(&got, &reference, cfg.grid.dx())?));
    }
    Ok(ErrorReport::from_errors(base.scheme.label(), &points))
}

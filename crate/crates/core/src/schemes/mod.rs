//! Interface-flux builders and single-step updates.

pub mod at;
pub mod cat;
pub mod fl;
pub mod lw;
pub mod weno_cat;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::driver::grid::{Boundary, State};
use crate::error::{Error, Location, Result};
use crate::fd_coeffs::CoefficientTable;
use crate::models::FluxModel;
use crate::scalar::Real;
use crate::weno::{WenoConfig, WENO_REACH};

pub use at::{at_ghost_width, shrunk_half_width, AtWorkspace};
pub use cat::{cat_flux, LocalTaylorWorkspace};
pub use fl::{blend, limiter_value, van_albada, Limiter};
pub use lw::{lw_flux_weights, lw_linear_flux, lw_nonconservative_update};
pub use weno_cat::{Rk3Buffers, WenoCatBuffers};

/// Largest supported half-width.
pub const MAX_P: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    /// Linear high-order Lax-Wendroff (advection only).
    Lw,
    /// Approximate Taylor with global derivative estimates.
    At,
    /// Compact approximate Taylor.
    Cat,
    /// CAT blended with a first-order flux through a limiter.
    FlCat,
    /// CAT with the first time derivative from WENO5 flux differences.
    WenoCat,
    /// WENO5 in space, TVD-RK3 in time.
    WenoRk3,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 6] = [
        SchemeKind::Lw,
        SchemeKind::At,
        SchemeKind::Cat,
        SchemeKind::FlCat,
        SchemeKind::WenoCat,
        SchemeKind::WenoRk3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Lw => "lw",
            SchemeKind::At => "at",
            SchemeKind::Cat => "cat",
            SchemeKind::FlCat => "fl_cat",
            SchemeKind::WenoCat => "weno_cat",
            SchemeKind::WenoRk3 => "weno_rk3",
        }
    }

    /// Whether the half-width `p` is meaningful.
    pub fn uses_p(self) -> bool {
        self != SchemeKind::WenoRk3
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.as_str() == key)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown scheme '{s}' (expected one of lw, at, cat, fl_cat, weno_cat, weno_rk3)"
                ))
            })
    }
}

fn default_p() -> usize {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub scheme: SchemeKind,
    /// Half-width; the scheme has order `2p`.
    #[serde(default = "default_p")]
    pub p: usize,
    pub cfl: f64,
    #[serde(default)]
    pub limiter: Limiter,
    #[serde(default)]
    pub weno: WenoConfig,
}

impl SchemeConfig {
    pub fn new(scheme: SchemeKind, p: usize, cfl: f64) -> Self {
        SchemeConfig { scheme, p, cfl, limiter: Limiter::default(), weno: WenoConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scheme.uses_p() && !(1..=MAX_P).contains(&self.p) {
            return Err(Error::config(format!("p must lie in 1..={MAX_P}, got {}", self.p)));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::config(format!("cfl must be positive, got {}", self.cfl)));
        }
        self.weno.validate()
    }

    /// Ghost cells per side the scheme reads.
    pub fn ghost_width(&self) -> usize {
        let p = self.p;
        match self.scheme {
            SchemeKind::Lw | SchemeKind::Cat => p,
            SchemeKind::FlCat => p.max(2),
            SchemeKind::At => at_ghost_width(p),
            SchemeKind::WenoCat => p + WENO_REACH,
            SchemeKind::WenoRk3 => WENO_REACH,
        }
    }

    /// Label in the style `CAT4`, `WENO5-RK3`.
    pub fn label(&self) -> String {
        let q = 2 * self.p;
        match self.scheme {
            SchemeKind::Lw => format!("LW{q}"),
            SchemeKind::At => format!("AT{q}"),
            SchemeKind::Cat => format!("LW-CAT{q}"),
            SchemeKind::FlCat => format!("FL-CAT{q}"),
            SchemeKind::WenoCat => format!("WENO5-CAT{q}"),
            SchemeKind::WenoRk3 => "WENO5-RK3".to_string(),
        }
    }
}

/// Time stepper for one scheme, owning its coefficient table and scratch space.
#[derive(Debug, Clone)]
pub struct Stepper<T> {
    cfg: SchemeConfig,
    table: CoefficientTable<T>,
    local: Option<LocalTaylorWorkspace<T>>,
    at: AtWorkspace<T>,
    weno_cat: WenoCatBuffers<T>,
    rk3: Rk3Buffers<T>,
    fluxes: Vec<T>,
    increments: Vec<T>,
    cell_flux: Vec<T>,
    low: Vec<T>,
    high: Vec<T>,
}

impl<T: Real> Stepper<T> {
    pub fn new(cfg: SchemeConfig) -> Result<Self> {
        cfg.validate()?;
        let table = CoefficientTable::new(if cfg.scheme.uses_p() { cfg.p } else { 1 })?;
        Ok(Stepper {
            cfg,
            table,
            local: None,
            at: AtWorkspace::new(),
            weno_cat: WenoCatBuffers::new(),
            rk3: Rk3Buffers::new(),
            fluxes: Vec::new(),
            increments: Vec::new(),
            cell_flux: Vec::new(),
            low: Vec::new(),
            high: Vec::new(),
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.cfg
    }

    pub fn table(&self) -> &CoefficientTable<T> {
        &self.table
    }

    pub fn ghost_width(&self) -> usize {
        self.cfg.ghost_width()
    }

    fn local(&mut self, m: usize) -> &mut LocalTaylorWorkspace<T> {
        let p = self.cfg.p;
        let stale = !matches!(&self.local, Some(ws) if ws.p() == p && ws.f_tilde(0, 0).len() == m);
        if stale {
            self.local = Some(LocalTaylorWorkspace::new(&self.table, p, m));
        }
        self.local.as_mut().expect("workspace initialized")
    }

    fn check_ghost(&self, state: &State<T>) -> Result<()> {
        let need = self.ghost_width();
        if state.ghost() < need {
            return Err(Error::config(format!(
                "{} needs {need} ghost cells, state has {}",
                self.cfg.label(),
                state.ghost()
            )));
        }
        Ok(())
    }

    /// Fluxes at interfaces `-1/2, 1/2, ..., N-1/2` from a state whose ghosts
    /// are filled, cell-major, `(N+1) * m` values.
    pub fn interface_fluxes<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &State<T>,
        model: &M,
        dt: T,
        dx: T,
    ) -> Result<&[T]> {
        self.check_ghost(state)?;
        let m = model.components();
        let n = state.n();
        let p = self.cfg.p;
        let len = (n + 1) * m;
        let mut fluxes = std::mem::take(&mut self.fluxes);
        fluxes.resize(len, T::zero());
        let result = self.fill_fluxes(state, model, dt, dx, p, &mut fluxes);
        self.fluxes = fluxes;
        result?;
        Ok(&self.fluxes[..len])
    }

    fn fill_fluxes<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &State<T>,
        model: &M,
        dt: T,
        dx: T,
        p: usize,
        out: &mut [T],
    ) -> Result<()> {
        let m = model.components();
        let n = state.n() as isize;
        match self.cfg.scheme {
            SchemeKind::Lw => {
                let a = model.linear_speed().ok_or_else(|| {
                    Error::config(format!("lw requires linear advection, model is {}", model.name()))
                })?;
                let w = lw_flux_weights(&self.table, p, a, a * dt / dx);
                for (s, i) in (-1..n).enumerate() {
                    let window = state.cells(i - p as isize + 1, 2 * p);
                    for c in 0..m {
                        out[s * m + c] = w
                            .iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (l, wj)| acc + *wj * window[l * m + c]);
                    }
                }
                Ok(())
            }
            SchemeKind::Cat => {
                let ws = self.local(m);
                for (s, i) in (-1..n).enumerate() {
                    let window = state.cells(i - p as isize + 1, 2 * p);
                    ws.flux(window, model, dt, dx, &mut out[s * m..(s + 1) * m])
                        .map_err(|f| Error::state(Location::Interface(i), f))?;
                }
                Ok(())
            }
            SchemeKind::At => self.at.fluxes(&self.table, state, model, dt, dx, p, out),
            SchemeKind::FlCat => {
                let limiter = self.cfg.limiter;
                self.low.resize(m, T::zero());
                self.high.resize(m, T::zero());
                let mut low = std::mem::take(&mut self.low);
                let mut high = std::mem::take(&mut self.high);
                let ws = self.local(m);
                let dx_over_dt = dx / dt;
                let mut result = Ok(());
                for (s, i) in (-1..n).enumerate() {
                    let window = state.cells(i - p as isize + 1, 2 * p);
                    let (ul, ur) = (state.cell(i), state.cell(i + 1));
                    let step = ws
                        .flux(window, model, dt, dx, &mut high)
                        .and_then(|_| model.low_order_flux(ul, ur, dx_over_dt, &mut low))
                        .and_then(|_| model.interface_speed(ul, ur));
                    let a = match step {
                        Ok(a) => a,
                        Err(f) => {
                            result = Err(Error::state(Location::Interface(i), f));
                            break;
                        }
                    };
                    let (um, up2) = (state.cell(i - 1), state.cell(i + 2));
                    for c in 0..m {
                        let phi = limiter_value(limiter, [um[c], ul[c], ur[c], up2[c]], a);
                        out[s * m + c] = blend(phi, low[c], high[c]);
                    }
                }
                self.low = low;
                self.high = high;
                result
            }
            SchemeKind::WenoCat => {
                let weno = self.cfg.weno;
                let mut ws = self.local.take();
                let ws_ref = match &mut ws {
                    Some(w) if w.p() == p && w.f_tilde(0, 0).len() == m => w,
                    _ => {
                        ws = Some(LocalTaylorWorkspace::new(&self.table, p, m));
                        ws.as_mut().expect("just set")
                    }
                };
                let r = self.weno_cat.fluxes(ws_ref, state, model, dt, dx, &weno, out);
                self.local = ws;
                r
            }
            SchemeKind::WenoRk3 => Err(Error::config("weno_rk3 is not a single-flux scheme; use step")),
        }
    }

    /// Fill ghosts and advance `state` by one step of size `dt`.
    pub fn step<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &mut State<T>,
        model: &M,
        boundary: Boundary,
        dt: T,
        dx: T,
    ) -> Result<()> {
        self.check_ghost(state)?;
        if self.cfg.scheme == SchemeKind::WenoRk3 {
            let weno = self.cfg.weno;
            return self.rk3.step(state, model, boundary, dt, dx, &weno);
        }
        state.apply_boundary(boundary);
        let m = model.components();
        self.fill_increments(state, model, dt, dx)?;
        increment_update(state, &self.increments, &self.cell_flux, dt / dx, m);
        Ok(())
    }

    /// `D_{i+1/2} = F_{i+1/2} - f(u_i)` for `i = -1..N-1`, and `f(u_i)` itself.
    ///
    /// Only differences of fluxes enter the update, so carrying the small
    /// increments instead of the fluxes keeps roundoff proportional to the
    /// local variation. For LW and CAT the increments are formed directly.
    fn fill_increments<M: FluxModel<T> + ?Sized>(&mut self, state: &State<T>, model: &M, dt: T, dx: T) -> Result<()> {
        let m = model.components();
        let n = state.n() as isize;
        let len = (n as usize + 1) * m;
        self.cell_flux.resize(len, T::zero());
        for (s, i) in (-1..n).enumerate() {
            model
                .flux(state.cell(i), &mut self.cell_flux[s * m..(s + 1) * m])
                .map_err(|f| Error::state(Location::Cell(i), f))?;
        }
        let mut incr = std::mem::take(&mut self.increments);
        incr.resize(len, T::zero());
        let p = self.cfg.p;
        let result = match self.cfg.scheme {
            SchemeKind::Lw => {
                let a = model.linear_speed().ok_or_else(|| {
                    Error::config(format!("lw requires linear advection, model is {}", model.name()))
                })?;
                let w = lw_flux_weights(&self.table, p, a, a * dt / dx);
                for (s, i) in (-1..n).enumerate() {
                    let window = state.cells(i - p as isize + 1, 2 * p);
                    for c in 0..m {
                        let centre = window[(p - 1) * m + c];
                        incr[s * m + c] = w
                            .iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (l, wj)| acc + *wj * (window[l * m + c] - centre));
                    }
                }
                Ok(())
            }
            SchemeKind::Cat => {
                let ws = self.local(m);
                let mut r = Ok(());
                for (s, i) in (-1..n).enumerate() {
                    let window = state.cells(i - p as isize + 1, 2 * p);
                    if let Err(f) = ws.compute(window, model, dt, dx, None) {
                        r = Err(Error::state(Location::Interface(i), f));
                        break;
                    }
                    ws.increment(dt, &mut incr[s * m..(s + 1) * m]);
                }
                r
            }
            _ => {
                let r = self.interface_fluxes(state, model, dt, dx).map(|_| ());
                for (d, (fi, fc)) in incr.iter_mut().zip(self.fluxes.iter().zip(&self.cell_flux)) {
                    *d = *fi - *fc;
                }
                r
            }
        };
        self.increments = incr;
        result
    }
}

/// `u_i -= λ (D_{i+1/2} - D_{i-1/2} + f(u_i) - f(u_{i-1}))`, arrays indexed from `i = -1`.
pub fn increment_update<T: Real>(state: &mut State<T>, increments: &[T], cell_flux: &[T], lambda: T, m: usize) {
    for (idx, v) in state.interior_mut().iter_mut().enumerate() {
        let (i, c) = (idx / m, idx % m);
        let (hi, lo) = ((i + 1) * m + c, i * m + c);
        let diff = (increments[hi] - increments[lo]) + (cell_flux[hi] - cell_flux[lo]);
        *v = *v - lambda * diff;
    }
}

/// `u_i -= λ (F_{i+1/2} - F_{i-1/2})` with fluxes indexed from `-1/2`.
pub fn conservative_update<T: Real>(state: &mut State<T>, fluxes: &[T], lambda: T, m: usize) {
    for (idx, v) in state.interior_mut().iter_mut().enumerate() {
        let (i, c) = (idx / m, idx % m);
        *v = *v - lambda * (fluxes[(i + 1) * m + c] - fluxes[i * m + c]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Advection, Burgers, Euler};

    #[test]
    fn parse_scheme_names() {
        assert_eq!("FL-CAT".parse::<SchemeKind>().unwrap(), SchemeKind::FlCat);
        assert_eq!("weno_rk3".parse::<SchemeKind>().unwrap(), SchemeKind::WenoRk3);
        assert!("rk4".parse::<SchemeKind>().is_err());
    }

    #[test]
    fn ghost_widths() {
        let g = |s, p| SchemeConfig::new(s, p, 0.5).ghost_width();
        assert_eq!(g(SchemeKind::Cat, 3), 3);
        assert_eq!(g(SchemeKind::FlCat, 1), 2);
        assert_eq!(g(SchemeKind::At, 2), 6);
        assert_eq!(g(SchemeKind::WenoCat, 2), 5);
        assert_eq!(g(SchemeKind::WenoRk3, 4), 3);
    }

    #[test]
    fn invalid_configs() {
        assert!(SchemeConfig::new(SchemeKind::Cat, 0, 0.5).validate().is_err());
        assert!(SchemeConfig::new(SchemeKind::Cat, 2, 0.0).validate().is_err());
        assert!(SchemeConfig::new(SchemeKind::WenoRk3, 0, 0.5).validate().is_ok());
    }

    #[test]
    fn constant_state_fluxes() {
        for kind in SchemeKind::ALL {
            if kind == SchemeKind::WenoRk3 {
                continue;
            }
            let cfg = SchemeConfig::new(kind, 2, 0.5);
            let mut st = Stepper::<f64>::new(cfg).unwrap();
            let mut s = State::from_interior(&[0.4; 20], 1, cfg.ghost_width());
            s.apply_boundary(Boundary::Periodic);
            let f = st.interface_fluxes(&s, &Advection { speed: 1.0 }, 0.01, 0.05).unwrap();
            assert!(f.iter().all(|v| (v - 0.4).abs() < 1e-13), "{kind}");
        }
    }

    #[test]
    fn lw_rejects_nonlinear_model() {
        let mut st = Stepper::<f64>::new(SchemeConfig::new(SchemeKind::Lw, 1, 0.5)).unwrap();
        let mut s = State::from_interior(&[0.4; 8], 1, 1);
        assert!(st.step(&mut s, &Burgers, Boundary::Periodic, 0.01, 0.1).is_err());
    }

    #[test]
    fn euler_constant_state_is_steady() {
        let w = [1.0, 0.3, 2.0];
        let row: Vec<f64> = w.iter().cycle().take(30).copied().collect();
        for kind in SchemeKind::ALL {
            if kind == SchemeKind::Lw {
                continue;
            }
            let cfg = SchemeConfig::new(kind, 2, 0.5);
            let mut st = Stepper::<f64>::new(cfg).unwrap();
            let mut s = State::from_interior(&row, 3, cfg.ghost_width());
            st.step(&mut s, &Euler::default(), Boundary::Outflow, 0.01, 0.1).unwrap();
            for (a, b) in s.interior().iter().zip(&row) {
                assert!((a - b).abs() < 1e-13, "{kind}");
            }
        }
    }

    #[test]
    fn narrow_ghost_is_configuration_error() {
        let mut st = Stepper::<f64>::new(SchemeConfig::new(SchemeKind::Cat, 3, 0.5)).unwrap();
        let mut s = State::from_interior(&[0.4; 8], 1, 2);
        let r = st.step(&mut s, &Advection { speed: 1.0 }, Boundary::Periodic, 0.01, 0.1);
        assert!(matches!(r, Err(Error::Config(_))));
    }
}

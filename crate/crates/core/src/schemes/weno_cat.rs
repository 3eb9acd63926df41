//! CAT fluxes whose first time derivative comes from WENO flux differences,
//! and the WENO5 + TVD-RK3 baseline.

use crate::driver::grid::{Boundary, State};
use crate::error::{Error, Location, Result};
use crate::models::FluxModel;
use crate::scalar::Real;
use crate::schemes::cat::LocalTaylorWorkspace;
use crate::weno::{global_wave_speed, WenoConfig, WenoWorkspace, WENO_REACH};

/// Reusable buffers for the WENO-CAT flux sweep.
#[derive(Debug, Clone, Default)]
pub struct WenoCatBuffers<T> {
    weno: WenoWorkspace<T>,
    h: Vec<T>,
    deriv: Vec<T>,
}

impl<T: Real> WenoCatBuffers<T> {
    pub fn new() -> Self {
        WenoCatBuffers { weno: WenoWorkspace::new(), h: Vec::new(), deriv: Vec::new() }
    }

    /// Fluxes at interfaces `-1/2..=N-1/2` into `out`.
    #[allow(clippy::too_many_arguments)]
    pub fn fluxes<M: FluxModel<T> + ?Sized>(
        &mut self,
        ws: &mut LocalTaylorWorkspace<T>,
        state: &State<T>,
        model: &M,
        dt: T,
        dx: T,
        weno: &WenoConfig,
        out: &mut [T],
    ) -> Result<()> {
        let p = ws.p();
        let need = p + WENO_REACH;
        if state.ghost() < need {
            return Err(Error::config(format!(
                "WENO-CAT p = {p} needs {need} ghost cells, state has {}",
                state.ghost()
            )));
        }
        let m = model.components();
        let n = state.n();
        let alpha = global_wave_speed(state, model)?;

        // ĥ at interfaces -p-1 ..= N+p-1, then ∂_t u on cells -p ..= N+p-1.
        let count = n + 2 * p + 1;
        self.h.resize(count * m, T::zero());
        self.weno
            .interface_fluxes(state, model, alpha, -(p as isize) - 1, count, weno, &mut self.h)?;
        let cells = n + 2 * p;
        self.deriv.resize(cells * m, T::zero());
        for c in 0..cells {
            for k in 0..m {
                self.deriv[c * m + k] = -(self.h[(c + 1) * m + k] - self.h[c * m + k]) / dx;
            }
        }

        for (s, i) in (-1..n as isize).enumerate() {
            let window = state.cells(i - p as isize + 1, 2 * p);
            let d0 = (s) * m;
            let derivative = &self.deriv[d0..d0 + 2 * p * m];
            ws.compute(window, model, dt, dx, Some(derivative))
                .map_err(|f| Error::state(Location::Interface(i), f))?;
            let o = &mut out[s * m..(s + 1) * m];
            ws.flux_from(2, dt, o);
            for k in 0..m {
                o[k] = o[k] + self.h[(s + p) * m + k];
            }
        }
        Ok(())
    }
}

/// Buffers for the three-stage TVD Runge-Kutta update.
#[derive(Debug, Clone, Default)]
pub struct Rk3Buffers<T> {
    weno: WenoWorkspace<T>,
    h: Vec<T>,
    stage: Option<State<T>>,
}

impl<T: Real> Rk3Buffers<T> {
    pub fn new() -> Self {
        Rk3Buffers { weno: WenoWorkspace::new(), h: Vec::new(), stage: None }
    }

    fn residual<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &State<T>,
        model: &M,
        alpha: T,
        weno: &WenoConfig,
    ) -> Result<()> {
        let m = model.components();
        let n = state.n();
        self.h.resize((n + 1) * m, T::zero());
        self.weno.interface_fluxes(state, model, alpha, -1, n + 1, weno, &mut self.h)
    }

    /// Advance `state` by `dt`. Ghosts are refilled before every stage.
    #[allow(clippy::too_many_arguments)]
    pub fn step<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &mut State<T>,
        model: &M,
        boundary: Boundary,
        dt: T,
        dx: T,
        weno: &WenoConfig,
    ) -> Result<()> {
        if state.ghost() < WENO_REACH {
            return Err(Error::config(format!(
                "WENO-RK3 needs {WENO_REACH} ghost cells, state has {}",
                state.ghost()
            )));
        }
        state.apply_boundary(boundary);
        let alpha = global_wave_speed(state, model)?;
        let m = model.components();
        let n = state.n();
        let lam = dt / dx;
        let mut stage = match self.stage.take() {
            Some(s) if s.n() == n && s.ghost() == state.ghost() && s.components() == m => s,
            _ => State::new(n, m, state.ghost()),
        };

        // (weight on u^n, weight on the Euler-stepped stage)
        let c = T::lit;
        let stages = [(c(0.0), c(1.0)), (c(0.75), c(0.25)), (c(1.0) / c(3.0), c(2.0) / c(3.0))];
        stage.interior_mut().copy_from_slice(state.interior());
        for (a, b) in stages {
            stage.apply_boundary(boundary);
            self.residual(&stage, model, alpha, weno)?;
            let un = state.interior();
            let h = &self.h;
            for (idx, v) in stage.interior_mut().iter_mut().enumerate() {
                let (i, k) = (idx / m, idx % m);
                let euler = *v - lam * (h[(i + 1) * m + k] - h[i * m + k]);
                *v = a * un[idx] + b * euler;
            }
        }
        state.interior_mut().copy_from_slice(stage.interior());
        self.stage = Some(stage);
        Ok(())
    }
}

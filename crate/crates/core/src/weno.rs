//! Fifth-order WENO (Jiang-Shu) reconstruction of split fluxes.
//!
//! Fluxes are split with global Lax-Friedrichs, `f± = (f(u) ± α u) / 2`,
//! and each component is reconstructed independently.

use serde::{Deserialize, Serialize};

use crate::driver::grid::State;
use crate::error::{Error, Location, Result};
use crate::models::FluxModel;
use crate::scalar::Real;

/// Cells the reconstruction reaches beyond the interface on each side.
pub const WENO_REACH: usize = 3;

const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WenoConfig {
    /// Smoothness regularization, added to each indicator.
    pub eps: f64,
    /// Exponent of the nonlinear weights.
    pub power: i32,
}

impl Default for WenoConfig {
    fn default() -> Self {
        WenoConfig { eps: 1e-6, power: 2 }
    }
}

impl WenoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::config(format!("weno eps must be positive, got {}", self.eps)));
        }
        if self.power < 1 {
            return Err(Error::config(format!("weno power must be >= 1, got {}", self.power)));
        }
        Ok(())
    }
}

/// Value at `i+1/2` reconstructed from `v = (v_{i-2}, ..., v_{i+2})`,
/// together with the nonlinear weights used.
pub fn weno5_reconstruct<T: Real>(v: [T; 5], cfg: &WenoConfig) -> (T, [T; 3]) {
    let c = T::lit;
    let [a, b, m, d, e] = v;
    let q0 = (c(2.0) * a - c(7.0) * b + c(11.0) * m) / c(6.0);
    let q1 = (-b + c(5.0) * m + c(2.0) * d) / c(6.0);
    let q2 = (c(2.0) * m + c(5.0) * d - e) / c(6.0);

    let k13 = c(13.0 / 12.0);
    let quarter = c(0.25);
    let sq = |x: T| x * x;
    let beta0 = k13 * sq(a - c(2.0) * b + m) + quarter * sq(a - c(4.0) * b + c(3.0) * m);
    let beta1 = k13 * sq(b - c(2.0) * m + d) + quarter * sq(b - d);
    let beta2 = k13 * sq(m - c(2.0) * d + e) + quarter * sq(c(3.0) * m - c(4.0) * d + e);

    let eps = c(cfg.eps);
    let alpha = |beta: T, w: f64| c(w) / (eps + beta).powi(cfg.power);
    let a0 = alpha(beta0, LINEAR_WEIGHTS[0]);
    let a1 = alpha(beta1, LINEAR_WEIGHTS[1]);
    let a2 = alpha(beta2, LINEAR_WEIGHTS[2]);
    let sum = a0 + a1 + a2;
    let w = [a0 / sum, a1 / sum, a2 / sum];
    (w[0] * q0 + w[1] * q1 + w[2] * q2, w)
}

/// Linear-weight (fifth-order upwind) value at `i+1/2`.
pub fn upwind5_linear<T: Real>(v: [T; 5]) -> T {
    let c = T::lit;
    (c(2.0) * v[0] - c(13.0) * v[1] + c(47.0) * v[2] + c(27.0) * v[3] - c(3.0) * v[4]) / c(60.0)
}

/// Split interface flux at `i+1/2`.
///
/// `f_plus` holds `f+` on cells `i-2..=i+2`, `f_minus` holds `f-` on cells
/// `i-1..=i+3`, both in increasing cell order.
pub fn weno5_interface_flux<T: Real>(f_plus: [T; 5], f_minus: [T; 5], cfg: &WenoConfig) -> T {
    let (hp, _) = weno5_reconstruct(f_plus, cfg);
    let [a, b, c, d, e] = f_minus;
    let (hm, _) = weno5_reconstruct([e, d, c, b, a], cfg);
    hp + hm
}

/// Largest wave speed over the interior cells, scanned left to right.
pub fn global_wave_speed<T: Real, M: FluxModel<T> + ?Sized>(state: &State<T>, model: &M) -> Result<T> {
    let mut alpha = T::zero();
    for i in 0..state.n() as isize {
        let s = model
            .max_wave_speed(state.cell(i))
            .map_err(|f| Error::state(Location::Cell(i), f))?;
        alpha = alpha.max(s);
    }
    Ok(alpha)
}

/// Reusable buffers for split-flux reconstruction over a row.
#[derive(Debug, Clone, Default)]
pub struct WenoWorkspace<T> {
    plus: Vec<T>,
    minus: Vec<T>,
    scratch: Vec<T>,
}

impl<T: Real> WenoWorkspace<T> {
    pub fn new() -> Self {
        WenoWorkspace { plus: Vec::new(), minus: Vec::new(), scratch: Vec::new() }
    }

    /// Interface fluxes `ĥ_{i+1/2}` for `first <= i < first + count`,
    /// written to `out[(i - first) * m + c]`.
    ///
    /// Needs valid cells `first - 2 ..= first + count + 2`.
    #[allow(clippy::too_many_arguments)]
    pub fn interface_fluxes<M: FluxModel<T> + ?Sized>(
        &mut self,
        state: &State<T>,
        model: &M,
        alpha: T,
        first: isize,
        count: usize,
        cfg: &WenoConfig,
        out: &mut [T],
    ) -> Result<()> {
        let m = model.components();
        let lo = first - 2;
        let cells = count + 5;
        self.plus.resize(cells * m, T::zero());
        self.minus.resize(cells * m, T::zero());
        self.scratch.resize(m, T::zero());
        let half = T::lit(0.5);
        for l in 0..cells {
            let i = lo + l as isize;
            let u = state.cell(i);
            model
                .flux(u, &mut self.scratch)
                .map_err(|f| Error::state(Location::Cell(i), f))?;
            for c in 0..m {
                self.plus[l * m + c] = half * (self.scratch[c] + alpha * u[c]);
                self.minus[l * m + c] = half * (self.scratch[c] - alpha * u[c]);
            }
        }
        for s in 0..count {
            for c in 0..m {
                let pick = |buf: &[T], from: usize| {
                    [
                        buf[from * m + c],
                        buf[(from + 1) * m + c],
                        buf[(from + 2) * m + c],
                        buf[(from + 3) * m + c],
                        buf[(from + 4) * m + c],
                    ]
                };
                // interface first+s: f+ on cells (first+s-2)..=(first+s+2) => local s..s+4
                out[s * m + c] = weno5_interface_flux(pick(&self.plus, s), pick(&self.minus, s + 1), cfg);
            }
        }
        Ok(())
    }
}

/// `-(ĥ_{i+1/2} - ĥ_{i-1/2}) / dx` on every interior cell, cell-major.
pub fn weno_first_derivative<T: Real, M: FluxModel<T> + ?Sized>(
    state: &State<T>,
    model: &M,
    alpha: T,
    dx: T,
    cfg: &WenoConfig,
) -> Result<Vec<T>> {
    if state.ghost() < WENO_REACH {
        return Err(Error::config(format!(
            "WENO derivative needs {WENO_REACH} ghost cells, state has {}",
            state.ghost()
        )));
    }
    let m = model.components();
    let n = state.n();
    let mut h = vec![T::zero(); (n + 1) * m];
    WenoWorkspace::new().interface_fluxes(state, model, alpha, -1, n + 1, cfg, &mut h)?;
    let mut out = vec![T::zero(); n * m];
    for i in 0..n {
        for c in 0..m {
            out[i * m + c] = -(h[(i + 1) * m + c] - h[i * m + c]) / dx;
        }
    }
    Ok(out)
}

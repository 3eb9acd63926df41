//! Approximate Taylor fluxes with global derivative estimates.
//!
//! Unlike the compact variant, each time derivative is stored once per cell
//! and the stencil half-width of the `k`-th level shrinks to `p_k`.

use crate::driver::grid::State;
use crate::error::{Error, Location, Result};
use crate::fd_coeffs::CoefficientTable;
use crate::models::FluxModel;
use crate::scalar::Real;

/// `p_k = ceil(p - k/2)`.
pub fn shrunk_half_width(p: usize, k: usize) -> usize {
    (2 * p).saturating_sub(k).div_ceil(2)
}

/// Ghost cells needed per side to produce fluxes at interfaces `-1/2..=N-1/2`.
pub fn at_ghost_width(p: usize) -> usize {
    (0..2 * p).map(|m| shrunk_half_width(p, m)).sum()
}

/// Reusable per-cell buffers.
#[derive(Debug, Clone, Default)]
pub struct AtWorkspace<T> {
    f_tilde: Vec<Vec<T>>,
    u_tilde: Vec<Vec<T>>,
    taylor: Vec<T>,
    flux: Vec<T>,
    acc: Vec<T>,
}

impl<T: Real> AtWorkspace<T> {
    pub fn new() -> Self {
        AtWorkspace { f_tilde: Vec::new(), u_tilde: Vec::new(), taylor: Vec::new(), flux: Vec::new(), acc: Vec::new() }
    }

    /// Fluxes at interfaces `i+1/2`, `i = -1..N-1`, written `(N+1) * m` long.
    #[allow(clippy::too_many_arguments)]
    pub fn fluxes<M: FluxModel<T> + ?Sized>(
        &mut self,
        table: &CoefficientTable<T>,
        state: &State<T>,
        model: &M,
        dt: T,
        dx: T,
        p: usize,
        out: &mut [T],
    ) -> Result<()> {
        let need = at_ghost_width(p);
        if state.ghost() < need {
            return Err(Error::config(format!(
                "approximate Taylor p = {p} needs {need} ghost cells, state has {}",
                state.ghost()
            )));
        }
        let m = model.components();
        let n = state.n() as isize;
        let g = state.ghost() as isize;
        let cells = (n + 2 * g) as usize;
        let levels = 2 * p;
        let idx = |i: isize| (i + g) as usize * m;
        self.f_tilde.resize(levels, Vec::new());
        self.u_tilde.resize(levels, Vec::new());
        for v in self.f_tilde.iter_mut().chain(self.u_tilde.iter_mut()) {
            v.clear();
            v.resize(cells * m, T::zero());
        }
        self.taylor.resize(m, T::zero());
        self.flux.resize(m, T::zero());
        self.acc.resize(m, T::zero());

        let (mut lo, mut hi) = (-g, n + g - 1);
        for i in lo..=hi {
            model
                .flux(state.cell(i), &mut self.f_tilde[0][idx(i)..idx(i) + m])
                .map_err(|f| Error::state(Location::Cell(i), f))?;
        }

        let inv_dx = T::one() / dx;
        let time = table.centered(p, 0).len();
        debug_assert_eq!(time, 2 * p + 1);
        let mut dt_k = T::one();
        for k in 1..levels {
            dt_k = dt_k * dt;
            let pk = shrunk_half_width(p, k - 1);
            let d1 = table.centered(pk, 1);
            lo += pk as isize;
            hi -= pk as isize;
            for i in lo..=hi {
                for c in 0..m {
                    let mut s = T::zero();
                    for (jj, w) in d1.iter().enumerate() {
                        let j = jj as isize - pk as isize;
                        s = s + *w * self.f_tilde[k - 1][idx(i + j) + c];
                    }
                    self.u_tilde[k][idx(i) + c] = -s * inv_dx;
                }
            }
            let dk = table.centered(p, k);
            for i in lo..=hi {
                self.acc.iter_mut().for_each(|a| *a = T::zero());
                for (t, w) in dk.iter().enumerate() {
                    let r = t as i64 - p as i64;
                    if r == 0 {
                        for c in 0..m {
                            self.acc[c] = self.acc[c] + *w * self.f_tilde[0][idx(i) + c];
                        }
                        continue;
                    }
                    let rdt = T::from_int(r) * dt;
                    let u = state.cell(i);
                    for c in 0..m {
                        let mut v = u[c];
                        let mut coef = T::one();
                        for l in 1..=k {
                            coef = coef * rdt / T::from_int(l as i64);
                            v = v + coef * self.u_tilde[l][idx(i) + c];
                        }
                        self.taylor[c] = v;
                    }
                    model
                        .taylor_flux(&self.taylor, &mut self.flux)
                        .map_err(|f| Error::state(Location::Cell(i), f))?;
                    for c in 0..m {
                        self.acc[c] = self.acc[c] + *w * self.flux[c];
                    }
                }
                for c in 0..m {
                    self.f_tilde[k][idx(i) + c] = self.acc[c] / dt_k;
                }
            }
        }

        out[..(n as usize + 1) * m].iter_mut().for_each(|v| *v = T::zero());
        let mut factor = T::one();
        for k in 1..=levels {
            factor = factor / T::from_int(k as i64);
            let pk = shrunk_half_width(p, k - 1);
            let g0 = table.interface(pk, 0);
            for (s, i) in (-1..n).enumerate() {
                for c in 0..m {
                    let mut acc = T::zero();
                    for (jj, w) in g0.iter().enumerate() {
                        let j = jj as isize - pk as isize + 1;
                        acc = acc + *w * self.f_tilde[k - 1][idx(i + j) + c];
                    }
                    out[s * m + c] = out[s * m + c] + factor * acc;
                }
            }
            factor = factor * dt;
        }
        Ok(())
    }
}

//! Compact approximate Taylor flux at a single interface.
//!
//! All time derivatives are rebuilt locally on the `2p` nodes around the
//! interface, so neighbouring interfaces never share intermediate values.

use crate::error::StateFault;
use crate::fd_coeffs::CoefficientTable;
use crate::models::FluxModel;
use crate::scalar::Real;

/// Local Taylor data for one interface `i+1/2`.
///
/// Node `j = -p+1..=p` is stored at `l = j + p - 1`. `f_tilde(k, l)` holds the
/// approximation of `∂_t^k f(u)` at `x_{i+j}` for `k < 2p`; `u_tilde(k, l)`
/// the matching `∂_t^k u` for `1 <= k < 2p`.
#[derive(Debug, Clone)]
pub struct LocalTaylorWorkspace<T> {
    p: usize,
    m: usize,
    /// `γ^{1,j}_{p,·}` rows, `[l][s]`.
    space: Vec<Vec<T>>,
    /// `γ^{k,0}_{p,·}` rows, `[k][t]`, `k >= 1`.
    time: Vec<Vec<T>>,
    /// `γ^{0,1/2}_{p,·}`.
    interface: Vec<T>,
    f_tilde: Vec<T>,
    u_tilde: Vec<T>,
    kappa: Vec<T>,
    taylor: Vec<T>,
    flux: Vec<T>,
    acc: Vec<T>,
    powers: Vec<T>,
}

impl<T: Real> LocalTaylorWorkspace<T> {
    pub fn new(table: &CoefficientTable<T>, p: usize, m: usize) -> Self {
        let nodes = 2 * p;
        let space = (0..nodes)
            .map(|l| table.at_node(p, 1, l as i32 - p as i32 + 1).to_vec())
            .collect();
        let time = (0..nodes).map(|k| table.at_node(p, k, 0).to_vec()).collect();
        LocalTaylorWorkspace {
            p,
            m,
            space,
            time,
            interface: table.interface(p, 0).to_vec(),
            f_tilde: vec![T::zero(); nodes * nodes * m],
            u_tilde: vec![T::zero(); nodes * nodes * m],
            kappa: vec![T::zero(); nodes * m],
            taylor: vec![T::zero(); m],
            flux: vec![T::zero(); m],
            acc: vec![T::zero(); m],
            powers: vec![T::zero(); nodes * nodes],
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    fn at(&self, k: usize, l: usize) -> usize {
        (k * 2 * self.p + l) * self.m
    }

    pub fn f_tilde(&self, k: usize, l: usize) -> &[T] {
        let o = self.at(k, l);
        &self.f_tilde[o..o + self.m]
    }

    pub fn u_tilde(&self, k: usize, l: usize) -> &[T] {
        let o = self.at(k, l);
        &self.u_tilde[o..o + self.m]
    }

    /// `κ_k = Σ_j γ^{0,1/2}_{p,j} f̃^{(k-1)}_j`, `1 <= k <= 2p`.
    pub fn kappa(&self, k: usize) -> &[T] {
        let o = (k - 1) * self.m;
        &self.kappa[o..o + self.m]
    }

    /// Run the local recursion on `window` (`2p` cells, cell-major).
    ///
    /// `first_derivative` replaces the compact estimate of `∂_t u` on the
    /// window nodes when given (same layout as `window`).
    pub fn compute<M: FluxModel<T> + ?Sized>(
        &mut self,
        window: &[T],
        model: &M,
        dt: T,
        dx: T,
        first_derivative: Option<&[T]>,
    ) -> Result<(), StateFault> {
        let (p, m) = (self.p, self.m);
        let nodes = 2 * p;
        assert_eq!(window.len(), nodes * m, "window must hold 2p cells");

        // powers[t * nodes + l] = (r dt)^l / l!, r = t - p + 1
        for t in 0..nodes {
            let r = T::from_int(t as i64 - p as i64 + 1) * dt;
            let mut v = T::one();
            self.powers[t * nodes] = v;
            for l in 1..nodes {
                v = v * r / T::from_int(l as i64);
                self.powers[t * nodes + l] = v;
            }
        }

        for l in 0..nodes {
            let o = self.at(0, l);
            model.flux(&window[l * m..(l + 1) * m], &mut self.f_tilde[o..o + m])?;
        }

        let inv_dx = T::one() / dx;
        let mut dt_k = T::one();
        for k in 1..nodes {
            dt_k = dt_k * dt;
            for l in 0..nodes {
                let out = self.at(k, l);
                match first_derivative {
                    Some(d) if k == 1 => self.u_tilde[out..out + m].copy_from_slice(&d[l * m..(l + 1) * m]),
                    _ => {
                        for c in 0..m {
                            let mut s = T::zero();
                            for (sidx, w) in self.space[l].iter().enumerate() {
                                s = s + *w * self.f_tilde[self.at(k - 1, sidx) + c];
                            }
                            self.u_tilde[out + c] = -s * inv_dx;
                        }
                    }
                }
            }
            for l in 0..nodes {
                self.acc.iter_mut().for_each(|a| *a = T::zero());
                for t in 0..nodes {
                    let w = self.time[k][t];
                    if t + 1 == p {
                        // r = 0: the Taylor state is the cell value itself
                        let o = self.at(0, l);
                        for c in 0..m {
                            self.acc[c] = self.acc[c] + w * self.f_tilde[o + c];
                        }
                        continue;
                    }
                    for c in 0..m {
                        let mut v = window[l * m + c];
                        for n in 1..=k {
                            v = v + self.powers[t * nodes + n] * self.u_tilde[self.at(n, l) + c];
                        }
                        self.taylor[c] = v;
                    }
                    model.taylor_flux(&self.taylor, &mut self.flux)?;
                    for c in 0..m {
                        self.acc[c] = self.acc[c] + w * self.flux[c];
                    }
                }
                let o = self.at(k, l);
                for c in 0..m {
                    self.f_tilde[o + c] = self.acc[c] / dt_k;
                }
            }
        }

        for k in 1..=nodes {
            for c in 0..m {
                let mut s = T::zero();
                for (l, g) in self.interface.iter().enumerate() {
                    s = s + *g * self.f_tilde[self.at(k - 1, l) + c];
                }
                self.kappa[(k - 1) * m + c] = s;
            }
        }
        Ok(())
    }

    /// `Σ_{k=first}^{2p} dt^{k-1} / k! κ_k` into `out`.
    pub fn flux_from(&self, first: usize, dt: T, out: &mut [T]) {
        let m = self.m;
        out[..m].iter_mut().for_each(|v| *v = T::zero());
        let mut factor = T::one();
        for k in 1..=2 * self.p {
            factor = factor / T::from_int(k as i64);
            if k >= first {
                for c in 0..m {
                    out[c] = out[c] + factor * self.kappa[(k - 1) * m + c];
                }
            }
            factor = factor * dt;
        }
    }

    /// `F - f(u_i)` into `out`, where `u_i` is the window node `j = 0` and
    /// the leading term is formed from flux differences to limit roundoff.
    pub fn increment(&self, dt: T, out: &mut [T]) {
        let m = self.m;
        self.flux_from(2, dt, out);
        let centre = self.at(0, self.p - 1);
        for c in 0..m {
            let mut s = T::zero();
            for (l, g) in self.interface.iter().enumerate() {
                s = s + *g * (self.f_tilde[self.at(0, l) + c] - self.f_tilde[centre + c]);
            }
            out[c] = out[c] + s;
        }
    }

    /// Compute the recursion and the full flux.
    pub fn flux<M: FluxModel<T> + ?Sized>(
        &mut self,
        window: &[T],
        model: &M,
        dt: T,
        dx: T,
        out: &mut [T],
    ) -> Result<(), StateFault> {
        self.compute(window, model, dt, dx, None)?;
        self.flux_from(1, dt, out);
        Ok(())
    }
}

/// One-shot CAT flux at an interface; builds its own workspace.
pub fn cat_flux<T: Real, M: FluxModel<T> + ?Sized>(
    table: &CoefficientTable<T>,
    window: &[T],
    model: &M,
    dt: T,
    dx: T,
    p: usize,
) -> Result<Vec<T>, StateFault> {
    let m = model.components();
    let mut ws = LocalTaylorWorkspace::new(table, p, m);
    let mut out = vec![T::zero(); m];
    ws.flux(window, model, dt, dx, &mut out)?;
    Ok(out)
}

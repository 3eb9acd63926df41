//! High-order Lax-Wendroff for linear advection, in flux form.

use crate::fd_coeffs::CoefficientTable;
use crate::scalar::Real;

/// Stencil weights `w_j` with `F_{i+1/2} = Σ_j w_j u_{i+j}`, `j = -p+1..=p`,
/// for speed `a` and Courant number `c = a dt / dx`.
///
/// `w_j = a Σ_{k=1}^{2p} (-c)^{k-1} / k! γ^{k-1,1/2}_{p,j}`.
pub fn lw_flux_weights<T: Real>(table: &CoefficientTable<T>, p: usize, a: T, c: T) -> Vec<T> {
    let mut w = vec![T::zero(); 2 * p];
    let mut factor = a;
    for k in 1..=2 * p {
        factor = factor / T::from_int(k as i64);
        for (wj, g) in w.iter_mut().zip(table.interface(p, k - 1)) {
            *wj = *wj + factor * *g;
        }
        factor = -factor * c;
    }
    w
}

/// Interface flux from the window `u_{i-p+1}, ..., u_{i+p}`.
pub fn lw_linear_flux<T: Real>(table: &CoefficientTable<T>, window: &[T], a: T, dt: T, dx: T, p: usize) -> T {
    assert_eq!(window.len(), 2 * p, "window must hold 2p values");
    let w = lw_flux_weights(table, p, a, a * dt / dx);
    w.iter().zip(window).fold(T::zero(), |acc, (wj, u)| acc + *wj * *u)
}

/// Non-conservative update `u_i + Σ_{k=1}^{2p} (-c)^k / k! Σ_j δ^k_{p,j} u_{i+j}`
/// at the centre of a `2p+1` window. Reference form for tests.
pub fn lw_nonconservative_update<T: Real>(table: &CoefficientTable<T>, window: &[T], c: T, p: usize) -> T {
    assert_eq!(window.len(), 2 * p + 1, "window must hold 2p+1 values");
    let mut out = window[p];
    let mut factor = T::one();
    for k in 1..=2 * p {
        factor = -factor * c / T::from_int(k as i64);
        let d = table
            .centered(p, k)
            .iter()
            .zip(window)
            .fold(T::zero(), |acc, (dj, u)| acc + *dj * *u);
        out = out + factor * d;
    }
    out
}

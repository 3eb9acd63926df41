//! Conservation laws `u_t + f(u)_x = 0` and first-order interface fluxes.

use crate::error::{Error, Result, StateFault};
use crate::scalar::Real;

/// Ratio of specific heats used unless a configuration overrides it.
pub const DEFAULT_GAMMA: f64 = 1.4;

/// A conservation law with `m` components.
///
/// All state slices have length [`FluxModel::components`].
pub trait FluxModel<T: Real>: Send + Sync {
    fn components(&self) -> usize;

    fn name(&self) -> &'static str;

    fn component_names(&self) -> &'static [&'static str];

    fn flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault>;

    /// Flux of an intermediate Taylor state. Such states are only formal
    /// approximations, so a model may accept more than [`FluxModel::flux`] does.
    fn taylor_flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        self.flux(u, out)
    }

    /// Upper bound on the spectral radius of `f'(u)`.
    fn max_wave_speed(&self, u: &[T]) -> Result<T, StateFault>;

    /// Robust first-order flux blended in by the flux limiter.
    fn low_order_flux(&self, ul: &[T], ur: &[T], dx_over_dt: T, out: &mut [T]) -> Result<(), StateFault>;

    /// Signed wave-speed estimate at the interface between `ul` and `ur`.
    fn interface_speed(&self, ul: &[T], ur: &[T]) -> Result<T, StateFault>;

    /// `Some(a)` when the flux is `f(u) = a u`.
    fn linear_speed(&self) -> Option<T> {
        None
    }
}

pub fn advection_flux<T: Real>(u: T, a: T) -> T {
    a * u
}

pub fn burgers_flux<T: Real>(u: T) -> T {
    T::lit(0.5) * u * u
}

fn finite<T: Real>(u: &[T]) -> Result<(), StateFault> {
    if u.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StateFault::NonFinite)
    }
}

/// `1/2 (f(uL) + f(uR)) - 1/2 alpha (uR - uL)`.
pub fn lax_friedrichs_flux<T: Real, M: FluxModel<T> + ?Sized>(
    model: &M,
    ul: &[T],
    ur: &[T],
    alpha: T,
    out: &mut [T],
) -> Result<(), StateFault> {
    let m = model.components();
    let mut fr = [T::zero(); 8];
    model.flux(ul, out)?;
    model.flux(ur, &mut fr[..m])?;
    let half = T::lit(0.5);
    for c in 0..m {
        out[c] = half * (out[c] + fr[c]) - half * alpha * (ur[c] - ul[c]);
    }
    Ok(())
}

/// Linear transport `f(u) = a u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advection<T> {
    pub speed: T,
}

impl<T: Real> FluxModel<T> for Advection<T> {
    fn components(&self) -> usize {
        1
    }
    fn name(&self) -> &'static str {
        "advection"
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        out[0] = advection_flux(u[0], self.speed);
        Ok(())
    }
    fn max_wave_speed(&self, u: &[T]) -> Result<T, StateFault> {
        finite(u)?;
        Ok(self.speed.abs())
    }
    fn low_order_flux(&self, ul: &[T], ur: &[T], dx_over_dt: T, out: &mut [T]) -> Result<(), StateFault> {
        lax_friedrichs_flux(self, ul, ur, dx_over_dt, out)
    }
    fn interface_speed(&self, _ul: &[T], _ur: &[T]) -> Result<T, StateFault> {
        Ok(self.speed)
    }
    fn linear_speed(&self) -> Option<T> {
        Some(self.speed)
    }
}

/// Inviscid Burgers `f(u) = u^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Burgers;

/// Below this jump the Roe speed falls back to `f'(uL)`.
const ROE_JUMP_TOL: f64 = 1e-12;

impl<T: Real> FluxModel<T> for Burgers {
    fn components(&self) -> usize {
        1
    }
    fn name(&self) -> &'static str {
        "burgers"
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        out[0] = burgers_flux(u[0]);
        Ok(())
    }
    fn max_wave_speed(&self, u: &[T]) -> Result<T, StateFault> {
        finite(u)?;
        Ok(u[0].abs())
    }
    fn low_order_flux(&self, ul: &[T], ur: &[T], dx_over_dt: T, out: &mut [T]) -> Result<(), StateFault> {
        lax_friedrichs_flux(self, ul, ur, dx_over_dt, out)
    }
    fn interface_speed(&self, ul: &[T], ur: &[T]) -> Result<T, StateFault> {
        let jump = ur[0] - ul[0];
        if jump.abs() < T::lit(ROE_JUMP_TOL) {
            Ok(ul[0])
        } else {
            Ok((burgers_flux(ur[0]) - burgers_flux(ul[0])) / jump)
        }
    }
}

/// Conservative Euler state `(rho, rho u, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerState<T> {
    pub rho: T,
    pub mom: T,
    pub energy: T,
}

impl<T: Real> EulerState<T> {
    pub fn from_slice(u: &[T]) -> Self {
        EulerState { rho: u[0], mom: u[1], energy: u[2] }
    }

    pub fn to_array(self) -> [T; 3] {
        [self.rho, self.mom, self.energy]
    }

    pub fn velocity(&self) -> T {
        self.mom / self.rho
    }

    /// `p = (gamma - 1) rho e` with `E = rho (e + u^2 / 2)`.
    pub fn pressure(&self, gamma: T) -> T {
        (gamma - T::one()) * (self.energy - T::lit(0.5) * self.mom * self.mom / self.rho)
    }

    /// Validated `(u, p, c)`.
    pub fn primitives(&self, gamma: T) -> Result<(T, T, T), StateFault> {
        if !(self.rho.is_finite() && self.mom.is_finite() && self.energy.is_finite()) {
            return Err(StateFault::NonFinite);
        }
        if self.rho <= T::zero() {
            return Err(StateFault::NonPositiveDensity);
        }
        let p = self.pressure(gamma);
        if !(p > T::zero()) {
            return Err(StateFault::NonPositivePressure);
        }
        Ok((self.velocity(), p, (gamma * p / self.rho).sqrt()))
    }
}

/// `(rho, u, p)` to conservative variables.
pub fn primitive_to_conservative<T: Real>(rho: T, u: T, p: T, gamma: T) -> Result<EulerState<T>> {
    if !(rho > T::zero()) {
        return Err(Error::Domain(format!("density {rho} must be positive")));
    }
    if !(p > T::zero()) {
        return Err(Error::Domain(format!("pressure {p} must be positive")));
    }
    let energy = p / (gamma - T::one()) + T::lit(0.5) * rho * u * u;
    Ok(EulerState { rho, mom: rho * u, energy })
}

/// Conservative variables to `(rho, u, p)`.
pub fn conservative_to_primitive<T: Real>(w: EulerState<T>, gamma: T) -> Result<(T, T, T), StateFault> {
    let (u, p, _) = w.primitives(gamma)?;
    Ok((w.rho, u, p))
}

/// One-dimensional compressible Euler equations for an ideal gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler<T> {
    pub gamma: T,
}

impl<T: Real> Default for Euler<T> {
    fn default() -> Self {
        Euler { gamma: T::lit(DEFAULT_GAMMA) }
    }
}

impl<T: Real> Euler<T> {
    pub fn euler_flux(&self, w: EulerState<T>) -> Result<[T; 3], StateFault> {
        let (u, p, _) = w.primitives(self.gamma)?;
        Ok([w.mom, p + w.mom * u, u * (w.energy + p)])
    }

    /// The flux formula without the positivity checks; only needs `rho != 0`.
    pub fn formal_flux(&self, w: EulerState<T>) -> Result<[T; 3], StateFault> {
        if w.rho == T::zero() {
            return Err(StateFault::NonPositiveDensity);
        }
        let (u, p) = (w.velocity(), w.pressure(self.gamma));
        let f = [w.mom, p + w.mom * u, u * (w.energy + p)];
        if f.iter().all(|v| v.is_finite()) {
            Ok(f)
        } else {
            Err(StateFault::NonFinite)
        }
    }

    /// Davis wave-speed bounds `(S_L, S_R)`.
    pub fn davis_speeds(&self, wl: EulerState<T>, wr: EulerState<T>) -> Result<(T, T), StateFault> {
        let (ul, _, cl) = wl.primitives(self.gamma)?;
        let (ur, _, cr) = wr.primitives(self.gamma)?;
        Ok(((ul - cl).min(ur - cr), (ul + cl).max(ur + cr)))
    }

    pub fn hll_flux(&self, wl: EulerState<T>, wr: EulerState<T>) -> Result<[T; 3], StateFault> {
        let (sl, sr) = self.davis_speeds(wl, wr)?;
        let fl = self.euler_flux(wl)?;
        if sl >= T::zero() {
            return Ok(fl);
        }
        let fr = self.euler_flux(wr)?;
        if sr <= T::zero() {
            return Ok(fr);
        }
        let ul = wl.to_array();
        let ur = wr.to_array();
        let mut out = [T::zero(); 3];
        for c in 0..3 {
            out[c] = (sr * fl[c] - sl * fr[c] + sl * sr * (ur[c] - ul[c])) / (sr - sl);
        }
        Ok(out)
    }
}

impl<T: Real> FluxModel<T> for Euler<T> {
    fn components(&self) -> usize {
        3
    }
    fn name(&self) -> &'static str {
        "euler"
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["rho", "mom", "energy"]
    }
    fn flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        out.copy_from_slice(&self.euler_flux(EulerState::from_slice(u))?);
        Ok(())
    }
    fn taylor_flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        out.copy_from_slice(&self.formal_flux(EulerState::from_slice(u))?);
        Ok(())
    }
    fn max_wave_speed(&self, u: &[T]) -> Result<T, StateFault> {
        let (v, _, c) = EulerState::from_slice(u).primitives(self.gamma)?;
        Ok(v.abs() + c)
    }
    fn low_order_flux(&self, ul: &[T], ur: &[T], _dx_over_dt: T, out: &mut [T]) -> Result<(), StateFault> {
        out.copy_from_slice(&self.hll_flux(EulerState::from_slice(ul), EulerState::from_slice(ur))?);
        Ok(())
    }
    fn interface_speed(&self, ul: &[T], ur: &[T]) -> Result<T, StateFault> {
        let (sl, sr) = self.davis_speeds(EulerState::from_slice(ul), EulerState::from_slice(ur))?;
        Ok(T::lit(0.5) * (sl + sr))
    }
}

/// Any of the supported models, chosen at run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model<T> {
    Advection(Advection<T>),
    Burgers(Burgers),
    Euler(Euler<T>),
}

macro_rules! delegate {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            Model::Advection($m) => $e,
            Model::Burgers($m) => $e,
            Model::Euler($m) => $e,
        }
    };
}

impl<T: Real> FluxModel<T> for Model<T> {
    fn components(&self) -> usize {
        delegate!(self, m => FluxModel::<T>::components(m))
    }
    fn name(&self) -> &'static str {
        delegate!(self, m => FluxModel::<T>::name(m))
    }
    fn component_names(&self) -> &'static [&'static str] {
        delegate!(self, m => FluxModel::<T>::component_names(m))
    }
    fn flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        delegate!(self, m => m.flux(u, out))
    }
    fn taylor_flux(&self, u: &[T], out: &mut [T]) -> Result<(), StateFault> {
        delegate!(self, m => m.taylor_flux(u, out))
    }
    fn max_wave_speed(&self, u: &[T]) -> Result<T, StateFault> {
        delegate!(self, m => m.max_wave_speed(u))
    }
    fn low_order_flux(&self, ul: &[T], ur: &[T], dx_over_dt: T, out: &mut [T]) -> Result<(), StateFault> {
        delegate!(self, m => m.low_order_flux(ul, ur, dx_over_dt, out))
    }
    fn interface_speed(&self, ul: &[T], ur: &[T]) -> Result<T, StateFault> {
        delegate!(self, m => m.interface_speed(ul, ur))
    }
    fn linear_speed(&self) -> Option<T> {
        delegate!(self, m => m.linear_speed())
    }
}

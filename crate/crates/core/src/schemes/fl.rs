//! Flux-limited blend of a robust first-order flux and the CAT flux.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Below this magnitude a difference is treated as zero by the limiter.
pub const FLAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limiter {
    /// `φ(r) = max(0, 2r / (1 + r²))`.
    #[default]
    VanAlbada2,
}

impl Limiter {
    pub fn phi<T: Real>(self, r: T) -> T {
        match self {
            Limiter::VanAlbada2 => van_albada(r),
        }
    }
}

pub fn van_albada<T: Real>(r: T) -> T {
    let two = T::lit(2.0);
    (two * r / (T::one() + r * r)).max(T::zero())
}

/// Limiter value at `i+1/2` from `u_{i-1}, u_i, u_{i+1}, u_{i+2}` and the
/// wave-speed estimate `a`.
///
/// The upwind difference is taken from the left when `a >= 0`.
pub fn limiter_value<T: Real>(limiter: Limiter, u: [T; 4], a: T) -> T {
    let local = u[2] - u[1];
    let upwind = if a >= T::zero() { u[1] - u[0] } else { u[3] - u[2] };
    let tol = T::lit(FLAT_TOL);
    if local.abs() < tol {
        return if upwind.abs() < tol { T::one() } else { T::zero() };
    }
    limiter.phi(upwind / local)
}

/// `(1 - φ) F_low + φ F_high`.
pub fn blend<T: Real>(phi: T, low: T, high: T) -> T {
    (T::one() - phi) * low + phi * high
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn van_albada_values() {
        assert_eq!(van_albada(1.0), 1.0);
        assert_eq!(van_albada(0.0), 0.0);
        assert_eq!(van_albada(-3.0), 0.0);
        assert!((van_albada(2.0f64) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn ratio_uses_upwind_side() {
        let u = [0.0, 1.0, 2.0, 10.0];
        assert_eq!(limiter_value(Limiter::VanAlbada2, u, 1.0), 1.0);
        assert!(limiter_value(Limiter::VanAlbada2, u, -1.0) < 0.3);
    }

    #[test]
    fn degenerate_denominators() {
        assert_eq!(limiter_value(Limiter::VanAlbada2, [1.0; 4], 1.0), 1.0);
        assert_eq!(limiter_value(Limiter::VanAlbada2, [0.0, 1.0, 1.0, 1.0], 1.0), 0.0);
    }

    #[test]
    fn blend_endpoints() {
        assert_eq!(blend(0.0, 1.0, 5.0), 1.0);
        assert_eq!(blend(1.0, 1.0, 5.0), 5.0);
    }
}

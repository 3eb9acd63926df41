//! Modified-equation polynomials of the linear high-order Lax-Wendroff scheme.
//!
//! `q` and `r` interpolate `j^(2p+1)` and `j^(2p+2)` on the nodes
//! `j = -p..=p`. The leading dispersive and dissipative error coefficients
//! are proportional to `h1(c) = q(c) - c^(2p+1)` and
//! `h2(c) = r(c) - c^(2p+2)`, and the scheme is expected to be stable where
//! `(-1)^p h2(c) <= 0`.

use crate::scalar::Real;

/// Absolute slack on the sign test, absorbing roundoff at the roots of `h2`.
pub const SIGN_TOL: f64 = 1e-9;

/// Barycentric interpolant on the integer nodes `-p..=p`.
#[derive(Debug, Clone)]
pub struct IntegerNodeInterpolant<T> {
    p: usize,
    bary: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> IntegerNodeInterpolant<T> {
    pub fn new(p: usize, f: impl Fn(i64) -> T) -> Self {
        let n = 2 * p + 1;
        let node = |i: usize| i as i64 - p as i64;
        let bary = (0..n)
            .map(|i| {
                let prod = (0..n)
                    .filter(|&m| m != i)
                    .fold(T::one(), |acc, m| acc * T::from_int(node(i) - node(m)));
                T::one() / prod
            })
            .collect();
        let values = (0..n).map(|i| f(node(i))).collect();
        IntegerNodeInterpolant { p, bary, values }
    }

    pub fn eval(&self, c: T) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for (i, (w, y)) in self.bary.iter().zip(&self.values).enumerate() {
            let d = c - T::from_int(i as i64 - self.p as i64);
            if d == T::zero() {
                return *y;
            }
            let t = *w / d;
            num = num + t * *y;
            den = den + t;
        }
        num / den
    }
}

/// The pair of interpolants behind `h1` and `h2` for one `p`.
#[derive(Debug, Clone)]
pub struct StabilityPolynomials<T> {
    pub p: usize,
    q_poly: IntegerNodeInterpolant<T>,
    r_poly: IntegerNodeInterpolant<T>,
}

impl<T: Real> StabilityPolynomials<T> {
    pub fn new(p: usize) -> Self {
        assert!(p >= 1, "p must be >= 1");
        let odd = 2 * p as i32 + 1;
        let even = 2 * p as i32 + 2;
        StabilityPolynomials {
            p,
            q_poly: IntegerNodeInterpolant::new(p, |j| T::from_int(j).powi(odd)),
            r_poly: IntegerNodeInterpolant::new(p, |j| T::from_int(j).powi(even)),
        }
    }

    pub fn q(&self, c: T) -> T {
        self.q_poly.eval(c)
    }

    pub fn r(&self, c: T) -> T {
        self.r_poly.eval(c)
    }

    pub fn h1(&self, c: T) -> T {
        self.q(c) - c.powi(2 * self.p as i32 + 1)
    }

    pub fn h2(&self, c: T) -> T {
        self.r(c) - c.powi(2 * self.p as i32 + 2)
    }

    pub fn linearly_stable(&self, c: T) -> bool {
        let sign = if self.p % 2 == 0 { T::one() } else { -T::one() };
        sign * self.h2(c) <= T::lit(SIGN_TOL)
    }

    /// Dispersion and dissipation coefficients `(mu1, mu2)` of the modified equation.
    pub fn modified_coefficients(&self, c: T, dx: T, dt: T) -> (T, T) {
        let n1 = 2 * self.p as i32 + 1;
        let mu1 = self.h1(c) * dx.powi(n1) / (factorial::<T>(n1 as u32) * dt);
        let mu2 = self.h2(c) * dx.powi(n1 + 1) / (factorial::<T>(n1 as u32 + 1) * dt);
        (mu1, mu2)
    }
}

fn factorial<T: Real>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_int(i as i64))
}

pub fn h1<T: Real>(p: usize, c: T) -> T {
    StabilityPolynomials::new(p).h1(c)
}

pub fn h2<T: Real>(p: usize, c: T) -> T {
    StabilityPolynomials::new(p).h2(c)
}

pub fn linearly_stable<T: Real>(p: usize, c: T) -> bool {
    StabilityPolynomials::new(p).linearly_stable(c)
}

/// `(c, h2_1(c), ..., h2_pmax(c))` rows on `samples` equispaced Courant numbers.
pub fn h2_samples(pmax: usize, c_min: f64, c_max: f64, samples: usize) -> Vec<Vec<f64>> {
    let polys: Vec<_> = (1..=pmax).map(StabilityPolynomials::<f64>::new).collect();
    (0..samples)
        .map(|i| {
            let c = if samples > 1 {
                c_min + (c_max - c_min) * i as f64 / (samples - 1) as f64
            } else {
                c_min
            };
            std::iter::once(c).chain(polys.iter().map(|s| s.h2(c))).collect()
        })
        .collect()
}

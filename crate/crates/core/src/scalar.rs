//! Scalar abstractions.
//!
//! Coefficient generation only needs field arithmetic, so it runs over
//! [`Field`] and can be instantiated with exact rationals. Solvers need
//! transcendental functions and comparisons and run over [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Exact rational scalar used for coefficient tables and test oracles.
pub type Rational = BigRational;

/// Field arithmetic: everything the coefficient recursions touch.
pub trait Field: Clone + Debug + Num + Neg<Output = Self> {
    fn from_int(v: i64) -> Self;

    /// Ratio of two integers, exact for rationals.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Field for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Field for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
}

impl Field for Rational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Floating point scalar the solvers are generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Field + Default + Display + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal or configuration value.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    /// Nearest value of an exact rational.
    fn from_rational(r: &Rational) -> Self {
        let v = r
            .to_f64()
            .unwrap_or_else(|| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap());
        Self::lit(v)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}

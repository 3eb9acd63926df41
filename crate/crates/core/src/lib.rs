//! Compact approximate Taylor schemes for one-dimensional conservation laws.
//!
//! The numerical core is generic over the scalar type: coefficient tables
//! over any [`scalar::Field`] (including exact rationals), solvers over any
//! [`scalar::Real`]. The aliases below fix `f64` for everyday use.
//!
//! ```
//! use catlaw::config::preset;
//! let cfg = preset("table3_advection_convergence").unwrap().base.with_n(38);
//! let traj = catlaw::run(&cfg).unwrap();
//! assert_eq!(traj.last().data.len(), 38);
//! ```

pub mod config;
pub mod driver;
pub mod error;
pub mod fd_coeffs;
pub mod models;
pub mod output;
pub mod scalar;
pub mod schemes;
pub mod stability;
pub mod weno;

pub use config::{parse_config, ExperimentPreset, ModelConfig, RunConfig};
pub use driver::{convergence_study, l1_error, Boundary, ErrorReport, Grid, InitialCondition, ReferenceSpec};
pub use error::{Error, Result};
pub use fd_coeffs::{centered_coeffs, offgrid_coeffs, Offset};
pub use models::FluxModel;
pub use scalar::{Field, Rational, Real};
pub use schemes::{SchemeConfig, SchemeKind};

pub type CoefficientTable = fd_coeffs::CoefficientTable<f64>;
pub type ExactTable = fd_coeffs::CoefficientTable<Rational>;
pub type State = driver::State<f64>;
pub type Simulation = driver::Simulation<f64>;
pub type Trajectory = driver::Trajectory<f64>;
pub type Stepper = schemes::Stepper<f64>;
pub type Model = models::Model<f64>;
pub type Euler = models::Euler<f64>;
pub type Advection = models::Advection<f64>;
pub use models::Burgers;

/// [`driver::run`] in double precision.
pub fn run(cfg: &RunConfig) -> Result<Trajectory> {
    driver::run::<f64>(cfg)
}

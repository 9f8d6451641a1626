//! Simulation of chordal SLE_κ (κ ≤ 4) through its Loewner chain, rough-path
//! functionals of the simulated traces, and the quantities they are tested
//! against: the left-passage law, the third-level expected signature
//! coefficient, annulus-crossing decay and fractal dimension.

pub mod driving;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod loewner;
pub mod montecarlo;
pub mod params;
pub mod path;
pub mod predicates;
pub mod rng;
pub mod roughpath;

pub use driving::{sample_driving, sample_driving_on, CapacityGrid, DrivingFunction};
pub use error::{Error, Result};
pub use loewner::{
    compute_trace, compute_trace_until, elementary_inverse_map, left_passage_side, to_small_disk, to_unit_disk,
    Side,
};
pub use params::KappaParams;
pub use path::{Domain, PlanarPath};

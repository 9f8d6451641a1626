//! Rough-path quantities of polylines in the plane.

mod pvariation;
mod shuffle;
mod signature;
mod simple;
mod young;

pub use pvariation::p_variation;
pub use shuffle::{shuffle_product, Shuffle};
pub use signature::{chen_concat, segment_signature, signature_of_polyline, TensorSeries, Word};
pub use simple::{is_simple, simple_approximation};
pub use young::{young_integral, young_integral_sampled, Partition, SampledFunction, YoungIntegral};

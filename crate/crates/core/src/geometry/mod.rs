//! Annulus crossings, decay fits and dimension estimators for polylines.

mod catalan;
mod crossing;
mod decay;
mod dimension;

pub use catalan::{catalan_number, is_dyck_path};
pub use crossing::{crossing_times, Annulus, CrossingRecord, Label};
pub use decay::{bound_slope, fit_decay, wilson_interval, CrossingEstimate, DecayFit, WILSON_Z95};
pub use dimension::{box_count, fit_log_slope, scale_ladder, tortuosity_segments, LogLogFit};

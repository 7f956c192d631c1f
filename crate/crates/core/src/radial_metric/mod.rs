//! Radially symmetric conformal metrics `h(|z|^2) |dz|` and their geodesic
//! polar coordinates.

pub mod geodesic;
mod metric;
pub mod profile;

pub use metric::{CurvatureSign, MetricKind, RadialMetric, TDomain};
pub use profile::{profile, GeodesicProfile, ProfileBase, ProfileOptions};

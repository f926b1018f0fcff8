//! Shared fixtures for the pipeline benchmarks.

use reflexo::catalog::by_name;
use reflexo::Polygon;

/// One representative per mutation class, smallest first.
pub const REPRESENTATIVES: [&str; 8] = ["3", "4a", "4b", "5a", "6a", "7a", "8a", "9"];

pub fn polygon(name: &str) -> Polygon {
    by_name(name).expect("catalog polygon")
}

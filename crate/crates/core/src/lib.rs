//! Exact-geometry and numerical-optimization engine for the continuous
//! peaceable queens problem.

pub mod discrete;
pub mod families;
pub mod geometry;
pub mod optimize;
pub mod rational;
pub mod report;
pub mod render;
pub mod rng;

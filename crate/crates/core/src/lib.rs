//! Complex volumes of boundary-parabolic representations from shadow-colored
//! link diagrams.
//!
//! Given an oriented link diagram (PD code) and an arc-coloring by parabolic
//! PSL(2,ℂ) elements, this crate builds the optimistic-limit potential
//! function W of the colored Jones polynomial, the explicit solution
//! w⁰_k = det(p, s_k) of its hyperbolicity equations, and evaluates the
//! complex volume vol(ρ) + i·cs(ρ) from W₀, with every step cross-checked
//! (residuals, shape-parameter cross-ratios, non-degeneracy).

pub mod coloring;
pub mod diagram;
pub mod golden;
pub mod job;
pub mod potential;
pub mod quandle;
pub mod volume;

pub use coloring::ShadowColoring;
pub use diagram::{parse_diagram, LinkDiagram};
pub use job::{run_job, JobInput, JobReport};
pub use potential::{build_potential, dilog, PotentialFunction};
pub use quandle::Parabolic;
pub use volume::{complex_volume, VolumeReport};

//! Bootstrap percolation on Gilbert random geometric graphs.
//!
//! The library covers the full pipeline for threshold bootstrap percolation on
//! the circle and the 2-D torus: geometric kernels (lens/lune/cap areas),
//! Poisson point process sampling with infection marks, grid-indexed graph
//! construction, the percolation dynamics themselves, tile colourings used as
//! spread diagnostics, the closed-form 1-D threshold exponents and phase
//! diagram, and the discretized variational programs behind the 2-D local
//! growth and island thresholds.
//!
//! Simulation sweeps and grid scans are data-parallel via rayon when the
//! default `parallel` feature is enabled; disabling it yields a fully
//! sequential build with the same results (seeding is per-task, so output is
//! identical regardless of worker count).

pub mod curves;
pub mod engine;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod optim;
pub mod quad;
pub mod rgg;
pub mod sampler;
pub mod sweep;
pub mod thresholds1d;
pub mod tiling;
pub mod variational;

pub use error::{Error, Result};

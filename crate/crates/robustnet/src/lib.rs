//! Topological robustness of stochastic-block-model network ensembles.
//!
//! The crate models infinite random networks whose large-scale structure is
//! given by a stochastic block model with per-block zero-truncated Poisson
//! degree distributions. On top of that it provides:
//!
//! - [`percolation`]: giant-component curves under random and blockwise
//!   targeted node removal, and the scalar robustness measures derived from
//!   them;
//! - [`moo`]: a steady-state hypervolume-selection evolutionary optimizer
//!   tracing the Pareto front between the two robustness measures;
//! - [`entropy`]: ensemble-entropy based reduction of optimized models to
//!   their minimal block structure;
//! - [`oracle`]: finite-network Monte-Carlo sampling used to validate the
//!   analytic machinery;
//! - [`cli`]: the command implementations behind the `robustnet` binary.

pub mod blockmodel;
pub mod cli;
pub mod entropy;
pub mod moo;
pub mod oracle;
pub mod percolation;

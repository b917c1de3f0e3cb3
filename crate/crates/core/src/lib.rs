//! Exact computations for enumerative invariants of real del Pezzo surfaces
//! of degree at most 3.

pub mod apps;
pub mod curves;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod output;
pub mod quadratic;
pub mod real;
pub mod series;

pub use apps::SplitReport;
pub use curves::LayerSet;
pub use error::{Error, Result};
pub use invariants::{InvariantTable, SeedConstants};
pub use lattice::{DelPezzoLattice, DivisorClass, Root};
pub use output::OutputEnvelope;
pub use quadratic::QuadraticFunction;
pub use real::{RealStructure, WRealSet};
pub use series::FormalSeries;

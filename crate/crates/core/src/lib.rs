//! Exact computations for the Donaldson–Thomas and stable-pairs topological
//! vertices, and the Gopakumar–Vafa calculus for stable-pairs partition
//! functions.
//!
//! All arithmetic is exact. Series carry explicit truncation windows; any
//! operation that would need coefficients outside a window fails with
//! [`Error::InsufficientWindow`] instead of padding with zeros.

pub mod dtvertex;
pub mod error;
pub mod gv;
pub mod localcurve;
pub mod partitions;
pub mod ptvertex;
pub mod qseries;

pub use error::{Error, Result};
pub use partitions::{LegTriple, Partition2D};
pub use qseries::{
    ClassLattice, ClassVector, GaussianRational, HalfLaurentSeries, MultiClassSeries, Rational,
    RationalFunction, UPowerSeries,
};

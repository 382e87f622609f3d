//! Exact-arithmetic incidence geometry for finite point sets in RP^d.
//!
//! The crate enumerates the flats spanned by a point set with exact rational
//! arithmetic, counts spanned hyperplanes, detects rich/saturated/degenerate
//! structure, extracts flat clusters via repeated descent, and constructs
//! nice sequences of hyperplanes over good flat collections. A CLI wraps the
//! library for generating configurations and checking counting bounds.

pub mod census;
pub mod cli;
pub mod error;
pub mod flat;
pub mod generate;
mod linalg;
pub mod nice;
pub mod point;
pub mod pointfile;
pub mod report;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use flat::{flat_relation, join_all, project_through, Flat, FlatRelation};
pub use point::{PointSet, ProjPoint};
pub use scalar::Scalar;

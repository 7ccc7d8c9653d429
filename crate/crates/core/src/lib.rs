//! Exact computations with holomorphic foliations of the complex projective
//! plane: singular loci, Milnor numbers, quadratic birational maps and the
//! reduction of a foliation to one with at most one singular point.

pub mod algebra;
pub mod birational;
pub mod error;
pub mod foliation;
pub mod geometry;
pub mod io;
pub mod reducer;
pub mod singular;
pub mod worked_example;

pub use error::{Error, ErrorKind, Result};
pub use foliation::{AffineChartForm, FoliationForm, LineRestriction};
pub use geometry::{ProjectiveLine, ProjectivePoint};

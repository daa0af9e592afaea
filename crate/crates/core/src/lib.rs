//! Oriented cohomology of complete flag varieties for arbitrary
//! one-dimensional commutative formal group laws.
//!
//! The pipeline: a [`fgl::FormalGroupLaw`] and a [`rootdata::RootDatum`]
//! define a [`fgring::FormalGroupRing`]; the Demazure and push-pull operators
//! on it produce the characteristic-map coordinates from which
//! [`flagring`] assembles bases, multiplication tables, Bott–Samelson
//! presentations and Landweber–Novikov operations.

pub mod checks;
pub mod coeffring;
pub mod error;
pub mod fgl;
pub mod fgring;
pub mod flagring;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod rootdata;
pub mod tseries;

pub use error::{Error, Result};

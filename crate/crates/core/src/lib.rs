//! Exact combinatorics of quasi-BPS categories, window zonotopes and
//! semiorthogonal decompositions for local surfaces.

pub mod eps;
pub mod error;
pub mod extquiver;
mod lp;
pub mod polytopes;
pub mod quasibps;
pub mod series;
pub mod sod;
pub mod weights;

pub use eps::EpsRational;
pub use error::{Error, Result};

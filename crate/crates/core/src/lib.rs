//! Exact parameter-side computations for metaplectic and odd orthogonal groups.

pub mod correspondence;
pub mod descent;
pub mod endoscopy;
pub mod error;
pub mod enumerate;
pub mod factors;
pub mod group;
pub mod levi;
pub mod params;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};

//! Silting pairs over bound quiver algebras: homotopy categories of projectives,
//! mutation, the pairs poset with its order-complex homology, and the
//! stability-space embedding.

pub mod algebra;
pub mod arcoords;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod pairsposet;
pub mod poly;
pub mod silting;
pub mod stability;
pub mod topology;

pub use error::{Result, SiltError};

/// Version tag carried by every JSON artifact.
pub const SCHEMA: &str = "siltlab/1";

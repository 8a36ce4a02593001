pub mod classify;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod nash;
pub mod polyhedral;
pub mod surface;

pub use error::{Error, Result};

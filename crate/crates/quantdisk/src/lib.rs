pub mod algebra;
pub mod disk;
pub mod error;
pub mod exact;
pub mod io;
pub mod seminorm;
pub mod symmetry;
pub mod zoo;

pub use error::{Error, Result};

pub mod det;
pub mod epw;
pub mod error;
pub mod exterior;
pub mod field;
pub mod lagrangian;
pub mod linalg;
pub mod numerology;
pub mod orbits;
pub mod poly;
pub mod projective;
pub mod store;
pub mod verify;

pub use error::{EpwError, Result};

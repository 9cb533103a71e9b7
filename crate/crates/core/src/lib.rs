//! Exact symbolic computations for fake linear cycles on Fermat varieties.

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod fake_cycles;
pub mod linalg;
pub mod periods;
pub mod polyring;
pub mod qform;
pub mod report;
pub mod serial;
pub mod tangent;

pub use error::{Error, Result};

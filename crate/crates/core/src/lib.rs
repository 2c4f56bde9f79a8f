#[cfg(feature = "cli")]
pub mod cli;
pub mod diagram;
pub mod error;
pub mod jones_wenzl;
pub mod morphism;
pub mod repn;
pub mod scalar;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

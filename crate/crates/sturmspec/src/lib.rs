//! Spectra of Sturmian Hamiltonians and their periodic approximants.

pub mod bandscan;
pub mod bandtype;
pub mod contfrac;
pub mod error;
pub mod export;
pub mod ids;
pub mod interlace;
pub mod linalg;
pub mod poly;
pub mod spectree;
pub mod tracepoly;
pub mod verify;

pub use error::{Error, Result};

//! Squared-distance statistics over `Z_n^d`: distance profiles and incidence
//! energy, CRT splitting into prime-power components, coset and isotropy
//! certificates, vanishing polynomials, and generators for the standard
//! examples.

pub mod cli;
pub mod constructions;
pub mod crt;
pub mod energy;
pub mod error;
pub mod format;
pub mod poly;
pub mod report;
pub mod ring;
pub mod structure;
pub mod verify;

pub use energy::PointSet;
pub use error::{Error, Result};
pub use ring::{factorize, Modulus, Vector};

//! Exact q-tangent and q-secant families from geometric up-down words.

pub mod closedform;
pub mod contfrac;
pub mod divisibility;
pub mod error;
pub mod oracle;
pub mod qalg;
pub mod updown;

pub use error::{Error, Result};

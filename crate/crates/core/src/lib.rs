pub mod artifact;
pub mod error;
pub mod fidelity;
pub mod fingerprint;
pub mod generation;
pub mod hash;
pub mod http;
pub mod label;
pub mod limit;
pub mod readability;
pub mod rules;
pub mod sampler;
pub mod text;
pub mod validation;

pub use error::{Error, Result};

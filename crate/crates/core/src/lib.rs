//! Exact normal forms for nonlinear Lie algebra representations by formal
//! vector fields that are regular on an abelian ideal.

pub mod cli;
pub mod document;
pub mod error;
pub mod formal;
pub mod lie;
pub mod linalg;
pub mod normal_form;
pub mod resonance;
pub mod scalar;
pub mod straighten;

pub use error::{Error, Result};
pub use scalar::GaussianRational;

//! Numerical ranges of KMS matrices.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod kippenhahn;
pub mod linalg;
pub mod models;
pub mod numrange;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

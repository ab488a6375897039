//! Exact arithmetic for transferring conjugacy classes and spectral data
//! between GL_n over a field and GL over a quaternion division algebra.

pub mod adele;
pub mod arith;
pub mod localpoly;
pub mod matrix;
pub mod error;
pub mod finitetf;
pub mod padic;
pub mod place;
pub mod poly;
pub mod quatcsa;
pub mod satake;
pub mod transfer;
pub mod wire;

pub use error::{Error, Result};
pub use place::Place;

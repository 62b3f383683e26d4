//! Exact coefficient tables for 2D and 3D Zernike functions.
//!
//! Coefficients live in [`exact::SurdSum`] (rational combinations of square
//! roots of squarefree integers) and [`exact::ComplexSurd`]. Every table is
//! generated in exact arithmetic; [`numeric`] holds floating-point oracles
//! used to cross-check them.

pub mod combinat;
pub mod error;
pub mod exact;
pub mod expr;
pub mod fixture;
pub mod numeric;
pub mod par;
pub mod poly;
pub mod table;
pub mod verify;
pub mod zernike2d;
pub mod zernike3d;

pub use error::{Result, ZernikeError};
pub use exact::{ComplexSurd, Rational, SurdSum};
pub use par::Exec;

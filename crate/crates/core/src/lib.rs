//! Exact computations with opers on jet disks, Takiff algebras and Wakimoto
//! modules at the critical level.

pub mod affine;
pub mod error;
pub mod freefield;
pub mod json;
pub mod liealg;
pub mod miura;
pub mod linalg;
pub mod opers;
pub mod pbw;
pub mod random;
pub mod rational;
pub mod series;
pub mod takiff;

pub use error::{Error, Result};
pub use rational::Q;

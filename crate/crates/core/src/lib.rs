//! Lucas, Lehmer and power-difference sequences over `K[x]` (`K = Q` or
//! `F_p`), with executable checks of strong divisibility and of primitive
//! prime divisors.

pub mod coeff;
pub mod cyclokit;
pub mod divisibility;
pub mod error;
pub mod factorization;
pub mod polyring;
pub mod sequences;
pub mod verifier;

pub use coeff::{FieldDesc, FieldElem};
pub use error::{Error, Result};
pub use polyring::{MonicIdeal, Poly};

//! Exact list-size bounds for rank-metric (Gabidulin) codes, a constructive
//! witness that attains the lower bound, and a brute-force oracle for small
//! parameters.

pub mod error;
mod modp;

pub mod accept;
pub mod bounds;
pub mod decimal;
pub mod ffield;
pub mod fqlinalg;
pub mod gabidulin;
pub mod linpoly;
pub mod oracle;
pub mod witness;

pub use error::{Error, Result};

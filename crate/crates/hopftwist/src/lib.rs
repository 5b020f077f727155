//! Exact symbolic toolkit for Hopf 2-cocycle twists of unipotent group
//! coordinate algebras.

pub mod check;
pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod format;
pub mod groebner;
pub mod hopf;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod strata;
pub mod tensor;
pub mod twist;

pub use error::{Error, Result};

//! High-precision evaluation of log-sine integrals, multiple polylogarithms
//! and multiple Mahler measures, plus integer-relation detection (PSLQ).
//!
//! The crate is organised around a [`mpcore::Context`] that fixes the target
//! accuracy; every public routine returns values trustworthy to the context's
//! target digits unless its documentation states a weaker certification.

pub mod asym;
pub mod error;
pub mod mahler;
pub mod mpcore;
pub mod logsine;
pub mod multilog;
pub mod pslq;
pub mod relations;
pub mod rho;
pub mod polylog;
pub mod quad;
pub mod series;

pub use error::{Error, Result};
pub use mpcore::Context;

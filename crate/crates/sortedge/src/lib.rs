//! Edge statistics of uniformly random sorting networks.
//!
//! The crate samples sorting networks through the Edelman–Greene bijection,
//! measures first-swap times and swap spacings near the edge, and compares
//! them with the anti-symmetric GUE corners process through exact kernels and
//! finite-rank Fredholm determinants.

pub mod ague;
pub mod dd;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod fredholm;
pub mod kernels;
pub mod quad;
pub mod sorting_network;
pub mod spacings;
pub mod stats;
pub mod tableaux;

pub use error::{Error, Result};
pub use exec::{Exec, Rng};

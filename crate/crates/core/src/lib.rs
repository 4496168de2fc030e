//! Exact integer linear algebra and Smith normal form computations for
//! matrices built from a weighted directed acyclic graph.

pub mod dag;
pub mod decimal;
pub mod error;
pub mod ghs;
pub mod linalg;
pub mod sweep;
pub mod verify;

pub use dag::{Dag, Family};
pub use error::{Error, Result};
pub use ghs::GhsInstance;
pub use linalg::{snf, IntMatrix, SnfResult};
pub use num_bigint::{BigInt, BigUint};
pub use verify::{ConjectureCase, Verdict, VerificationReport};

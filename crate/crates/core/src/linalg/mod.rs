//! Exact integer matrix arithmetic: determinants, determinantal divisors,
//! Smith normal form with transforms, the Hermite normal form test and rank
//! over a prime field.

mod det;
mod hnf;
mod matrix;
mod minors;
mod modp;
mod snf;

pub use det::det;
pub use hnf::is_hnf;
pub use matrix::{parse_matrix_json, IntMatrix};
pub use minors::{minor_gcd, minor_gcd_profile, MinorGcdProfile};
pub use modp::{is_prime, rank_mod_p};
pub use snf::{snf, SnfResult};

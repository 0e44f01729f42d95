//! Exact truncated q-series engine and congruence verifier for restricted
//! two-color partitions.
//!
//! The crate is organized bottom-up:
//!
//! - [`series`]: dense truncated power series over [`Ring`] (exact integers or `Z/2^w`)
//! - [`qproducts`]: q-Pochhammer products, Euler functions and eta quotients
//! - [`mock_theta`]: `ω(q)`, `B(q)` and the third-order `f(q)`
//! - [`oracle`]: brute-force enumeration of the counted partitions
//! - [`engine`]: `C(q)`, `C_k(q)` and progression / relation / identity checks
//! - [`catalogue`]: the fixed table of identities and congruences and the suite runner
//! - [`expr`]: a small expression language over all of the above
//! - [`cli`]: the `qcong` command-line front end

pub mod catalogue;
pub mod cli;
pub mod engine;
pub mod error;
pub mod expr;
pub mod mock_theta;
pub mod oracle;
pub mod qproducts;
pub mod ring;
pub mod series;

pub use error::{CheckError, SeriesError};
pub use ring::Ring;
pub use series::{Direction, Series, SeriesDump};

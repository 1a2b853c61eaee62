//! Exact verification of covering-degree bounds on the Boolean cube.
//!
//! A polynomial over a field that vanishes on every vertex of `{0,1}^n` of
//! weight greater than `r`, but on none of weight at most `r`, has degree at
//! least `n - r`, and `prod_{s=r+1}^{n} (x_1 + ... + x_n - s)` shows this is
//! sharp. This crate checks every ingredient of that statement with exact
//! arithmetic:
//!
//! * [`matrix`] builds the subset-indexed matrix of the coefficient argument
//!   and verifies it is an involution (or, for `r >= n/2`, nonsingular with
//!   the expected block structure);
//! * [`sums`] evaluates the two binomial sums behind the involution and
//!   replays their recurrence certificates;
//! * [`oracle`] computes the minimal covering degree by brute force, with a
//!   witness polynomial and a blocker certificate for every smaller degree;
//! * [`poly`] and [`lattice`] supply multilinear polynomials and the
//!   zeta/Möbius transforms on the subset lattice.
//!
//! ```
//! use cube_cover::{matrix, report::Status};
//!
//! let report = matrix::verify_involution(6, 2).unwrap();
//! assert_eq!(report.status, Status::Pass);
//! ```

pub mod error;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod sums;

pub use error::{Error, Result};
pub use lattice::{LatticeTable, RankOrder, SubsetMask};
pub use matrix::{MatrixRegime, SubsetMatrix};
pub use oracle::{CoverInstance, DegreeCertificate};
pub use poly::{Degree, MultilinearPoly, WeightProfile};
pub use report::{Detail, Report, Status};
pub use scalar::{FieldKind, Integer, PrimeField, Rational, Scalar};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/subset-lattice.md")]
    mod subset_lattice {}
    #[doc = include_str!("../../../book/src/cube-polynomials.md")]
    mod cube_polynomials {}
    #[doc = include_str!("../../../book/src/the-matrix.md")]
    mod the_matrix {}
    #[doc = include_str!("../../../book/src/sums-and-recurrences.md")]
    mod sums_and_recurrences {}
    #[doc = include_str!("../../../book/src/covering-oracle.md")]
    mod covering_oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Exact construction and verification of affine Hopf fibrations: fibrations
//! of `R^n` by pairwise skew affine `p`-dimensional subspaces.
//!
//! - [`hrcore`]: the Hurwitz–Radon function, the existence criterion
//!   `p <= rho(n - p) - 1`, dominance, and admissibility tables.
//! - [`hrmat`]: Hurwitz–Radon matrix families, square identities and the
//!   dual `B`-matrix form.
//! - [`fibration`]: the fibration of `R^(N + r - 1)` built from a normalized
//!   dual family, exact skewness certificates and the bundle projection.
//! - [`hopf`]: central projection of the complex and quaternionic Hopf
//!   fibrations into an affine chart.
//! - [`series`]: truncated rational power series and the integrality test
//!   for complex skew fibrations.
//! - [`cli`]: the `ahf` command-line front end.
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fibration;
pub mod hopf;
pub mod hrcore;
pub mod hrmat;
pub mod linalg;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
pub use fibration::{AffineSubspace, SkewFibration};
pub use hrcore::{DimensionPair, TableFormat};
pub use hrmat::{DualFamily, HrFamily};
pub use linalg::{IntMatrix, RationalMatrix, RationalVector};
pub use series::TruncatedRationalSeries;

//! Exact computer algebra for Chern characters of Schur powers and for
//! Donaldson-Futaki invariants of test configurations on flag bundles.
//!
//! Everything is computed over exact rationals:
//!
//! - [`algebra`]: truncated graded polynomials, exponentials, determinants
//!   and the symmetric-function to Chern-class conversion.
//! - [`partitions`]: partition combinatorics, Schur ranks, Littlewood-Richardson
//!   coefficients and the Borel-Bott-Weil index translation.
//! - [`chern`]: Chern characters of symmetric and Schur powers, the
//!   `G`-polynomials and the `H`-polynomial conjecture check.
//! - [`geometry`]: numerical intersection models and Hilbert-polynomial
//!   coefficients on a base and on its product with the projective line.
//! - [`futaki`]: Donaldson-Futaki invariants, the instability constants and
//!   the weight decomposition check.
//! - [`combinat`]: the binomial-sum identities behind the symmetric-power
//!   Chern character.

pub mod algebra;
pub mod chern;
pub mod combinat;
mod error;
pub mod futaki;
pub mod geometry;
pub mod partitions;
pub mod serde_rational;

pub use algebra::{GradedPoly, Rational, Ring};
pub use error::{Error, Result};
pub use partitions::{FlagType, Partition};

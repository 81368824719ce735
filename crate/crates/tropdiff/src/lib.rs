//! Tropical (min-plus) linear differential equations: exact minimal
//! solutions, holonomicity and regularity classification, solutions at
//! infinity, circuit matroids, extremal instance generators, and
//! inversions of permutation families.
//!
//! Everything is exact integer arithmetic. A support tuple S solves an
//! equation when the minimum of a_{i,j} + val_{S_j}(i) is attained at
//! least twice; the crate enumerates the subset-minimal such tuples as a
//! finite part plus shift-ray families, and cross-checks every structural
//! result against a brute-force oracle.

pub mod budget;
pub mod generators;
pub mod inversions;
pub mod io;
pub mod multi_unknown;
pub mod oracle;
pub mod semiring;
pub mod single_eq;
pub mod solution;
pub mod support;
pub mod systems;
pub mod tlde;

pub use budget::{Budget, Truncated};
pub use semiring::{vanishes, vanishes_weakly, ExtInt};
pub use solution::{ShiftRay, SolutionSet};
pub use support::{MultiSupport, Support};
pub use tlde::{ModelError, Tlde, TldeSystem};

//! Exact computations in affine Weyl groups: conjugacy classes of elements
//! of order dividing 2, centralizer orbits on alcoves, and radius-filtered
//! orbit censuses with deterministic JSON and SVG output.
//!
//! All group arithmetic is over machine integers (matrices on coroot
//! coordinates), all lattice arithmetic over `BigInt`, and all geometry over
//! `BigRational`. Nothing in the crate goes through floating point except
//! the final SVG coordinate embedding.

pub mod affine;
pub mod cartan;
mod error;
pub mod involutions;
pub mod matrix;
pub mod orbits;
pub mod report;
pub mod svg;
pub(crate) mod unionfind;
pub mod weyl;
pub mod zlattice;

pub use error::{Error, Result};

/// Enumeration limits. Every operation that materializes a group, ball, or
/// orbit structure checks these before growing past them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest accepted rank of a root system.
    pub max_rank: usize,
    /// Cap on the number of finite Weyl group elements enumerated.
    pub max_group_elements: usize,
    /// Cap on the number of alcoves (affine elements) in a ball enumeration.
    pub max_ball_elements: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_rank: 8,
            max_group_elements: 1_000_000,
            max_ball_elements: 10_000_000,
        }
    }
}

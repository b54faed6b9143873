//! Boundary labeling with grouping and ordering constraints.
//!
//! This crate places labels along the sides of a rectangular boundary and
//! connects them to feature points (*sites*) inside the box with L-shaped
//! *po-leaders*, while
//!
//! * no two labels overlap and no leader crosses a leader or a site,
//! * the labels of each *group* appear consecutively on one side, and
//! * a partial *order* over the sites is respected on each side,
//!
//! minimizing either the total leader length or the number of bends.
//!
//! The main entry points are:
//!
//! * [`solver::solve_fixed`] — exact optimum for one-sided instances with a
//!   finite candidate set, via a dynamic program over sub-instances guided by
//!   a PQ-tree with embedded ordering arcs ([`pqtree`]).
//! * [`sliding::solve_sliding`] — uniform-height labels on a sliding side,
//!   reduced to the fixed-candidate solver through a canonical candidate
//!   discretization.
//! * [`verify::verify`] — polynomial admissibility check for arbitrary one-
//!   or two-sided labelings, with an itemized violation report.
//! * [`oracle`] — exhaustive reference solvers used as ground truth in tests
//!   and for small two-sided instances.
//! * [`reductions`] — generators for the hardness families (number
//!   partitioning and positive 1-in-3 SAT) used as correctness fixtures.
//!
//! All arithmetic is exact rational arithmetic; see [`rational`]. The guide
//! under `book/` walks through the concepts with runnable examples.

pub mod fixtures;
pub mod format;
pub mod model;
pub mod oracle;
pub mod pqtree;
pub mod rational;
pub mod reductions;
pub mod render;
pub mod sliding;
pub mod solver;
pub mod verify;

#[cfg(doctest)]
mod book;

pub use model::{
    Boundary, CandId, Candidate, CandidateSource, Constraints, Instance, Leader, Objective, Side,
    Site, SiteId,
};
pub use rational::Rational;

use thiserror::Error as ThisError;

/// Errors for malformed inputs and exceeded limits. Infeasibility and
/// inconsistency are *answers*, not errors, and are reported through
/// dedicated result types instead.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("sites {a} and {b} share the same {axis}-coordinate; the instance is not in general position")]
    GeneralPosition { axis: char, a: SiteId, b: SiteId },

    #[error("{0}")]
    Malformed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance exceeds the oracle limits ({0})")]
    LimitExceeded(String),

    #[error("sliding instances require uniform label heights")]
    NonUniformHeights,

    #[error("some vertical site distance is an exact multiple of the label height; offset gap is zero — perturb the input")]
    ZeroGap,

    #[error("length objective on sliding candidates requires a minimum separation (vmin)")]
    MissingVmin,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

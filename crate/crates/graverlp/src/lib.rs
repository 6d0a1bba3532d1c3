//! Exact-arithmetic Graver bases, circuits, and augmentation solvers for
//! bounded standard-form programs `min { c^T x : Ax = b, 0 <= x <= u }` over
//! the integers or the rationals.
//!
//! The crate computes test sets (Graver bases and circuit sets), runs the
//! deepest-, Dantzig-, and steepest-descent augmentation rules with maximal
//! steps, builds and solves N-fold programs via an auxiliary phase-I system,
//! and checks the augmentation-count bounds those rules satisfy. All
//! arithmetic is arbitrary-precision integer/rational; enumerations are
//! guarded by explicit desk-scale caps.

pub mod arith;
pub mod engine;
pub mod error;
pub mod instance;
pub mod json;
pub mod lab;
pub mod matrix;
pub mod nfold;
pub mod testset;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{Instance, VarDomain};
pub use matrix::IntegerMatrix;
pub use testset::{TestSet, TestSetKind};

/// Caps that keep the exhaustive desk-scale enumerations honest.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Max `min(d, n)` for subdeterminant and total-unimodularity enumeration.
    pub enumeration_dim: usize,
    /// Max number of elements a completion may accumulate.
    pub testset_elements: usize,
    /// Max lattice points enumerated by box oracles (ILP brute force,
    /// Graver box oracle, overall-steepest certification).
    pub lattice_points: u64,
    /// Max tight-pattern systems solved by LP vertex enumeration.
    pub vertex_patterns: u64,
    /// Max number of bricks N in an N-fold pipeline.
    pub nfold_bricks: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_dim: 8,
            testset_elements: 200_000,
            lattice_points: 8_000_000,
            vertex_patterns: 2_000_000,
            nfold_bricks: 4,
        }
    }
}

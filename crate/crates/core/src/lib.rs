//! Low-rank solvers for large Lyapunov equations `AX + XAᵀ = −y₀y₀ᵀ` with a
//! sparse stable `A`, together with the dense and sparse kernels they need,
//! model problem generators and brute-force reference solvers for testing.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the common `f64` instantiation.

pub mod dense;
pub mod error;
pub mod galerkin;
pub mod oracle;
pub mod problems;
pub mod scalar;
pub mod solvers;
pub mod sparse;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use solvers::{solve, Method, SolverConfig, SolverStatus};

pub type DenseMatrix64 = dense::DenseMatrix<f64>;
pub type DenseMatrix32 = dense::DenseMatrix<f32>;
pub type CsrMatrix64 = sparse::CsrMatrix<f64>;
pub type CsrMatrix32 = sparse::CsrMatrix<f32>;
pub type ShiftedFactorCache64<'a> = sparse::ShiftedFactorCache<'a, f64>;
pub type ProjectionState64 = galerkin::ProjectionState<f64>;
pub type LowRankSolution64 = solvers::LowRankSolution<f64>;
pub type SolveOutput64 = solvers::SolveOutput<f64>;

//! Small dense linear algebra used on projected systems.

mod lu;
mod lyapunov;
mod matrix;
mod orth;
mod schur;
mod svd;

pub use lu::DenseLu;
pub use lyapunov::{solve_small_lyapunov, solve_small_lyapunov_unchecked_with, solve_small_lyapunov_with, solve_small_sylvester};
pub use matrix::DenseMatrix;
pub use orth::{gram_schmidt_extend, orthonormalize_into, DEFAULT_DROP_TOL};
pub use schur::{real_schur, SchurBlock, SchurForm};
pub use svd::singular_values;

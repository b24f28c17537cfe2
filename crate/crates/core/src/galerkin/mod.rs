//! Galerkin projection bookkeeping and the diagnostics built on it: residual
//! identities, the Gramian trace functional, its gradient and error bounds.

mod bound;
mod functional;
mod residual;
mod state;
mod sylvester;

pub use bound::{bound_constant, BoundConstant, BOUND_MAX_DIM};
pub use functional::{
    functional_gradient, functional_value, gradient_for_basis, FunctionalValue, ProjectedSystem,
};
pub use residual::residual_norm;
pub use state::ProjectionState;
pub use sylvester::{solve_projected_sylvester, solve_projected_sylvester_with};

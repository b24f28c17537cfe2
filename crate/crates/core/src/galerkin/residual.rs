use crate::error::Result;
use crate::galerkin::ProjectionState;
use crate::scalar::Scalar;

/// `√2·‖(AU − UB)Z‖_F`, which equals the Lyapunov residual
/// `‖AX̃ + X̃Aᵀ + y₀y₀ᵀ‖_F` of `X̃ = UZUᵀ` whenever `y₀ ∈ span(U)`.
///
/// Costs `O(n r²)` using the stored `A·U`; no `n×n` matrix is formed.
pub fn residual_norm<T: Scalar>(state: &ProjectionState<T>) -> Result<T> {
    let z = state.require_z()?;
    let rz = state.residual_factor().matmul(z)?;
    Ok(T::lit(2.0).sqrt() * rz.frobenius_norm())
}

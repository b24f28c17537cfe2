//! Sparse operator storage and shifted direct solves.

mod band_lu;
mod cache;
mod csr;
pub mod io;
mod ordering;

pub use band_lu::BandLu;
pub use cache::{CacheStats, ShiftedFactor, ShiftedFactorCache, SINGULAR_PIVOT_RTOL};
pub use csr::CsrMatrix;
pub use ordering::{reverse_cuthill_mckee, BandOrdering};

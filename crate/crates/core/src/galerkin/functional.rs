use crate::dense::{solve_small_lyapunov, DenseMatrix};
use crate::error::{Error, Result};
use crate::galerkin::sylvester::solve_projected_sylvester;
use crate::galerkin::ProjectionState;
use crate::scalar::{dot, Scalar};
use crate::sparse::{CsrMatrix, ShiftedFactorCache};

/// Projected quantities for an arbitrary basis matrix `U` (columns need not
/// be orthonormal): `A·U`, `B = UᵀAU`, `c₀ = Uᵀy₀`.
///
/// The functional and gradient formulas are evaluated on this form, which
/// lets finite-difference checks perturb `U` freely.
#[derive(Clone, Debug)]
pub struct ProjectedSystem<T: Scalar> {
    pub u: DenseMatrix<T>,
    pub au: DenseMatrix<T>,
    pub b: DenseMatrix<T>,
    pub c0: Vec<T>,
    pub y0: Vec<T>,
}

impl<T: Scalar> ProjectedSystem<T> {
    pub fn from_basis(a: &CsrMatrix<T>, y0: &[T], u: &DenseMatrix<T>) -> Result<Self> {
        if u.rows() != a.dim() || y0.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                context: "ProjectedSystem::from_basis",
                expected: a.dim(),
                found: u.rows(),
            });
        }
        let mut au = DenseMatrix::zeros(u.rows(), u.cols());
        for j in 0..u.cols() {
            au.set_column(j, &a.matvec(&u.column(j))?);
        }
        let b = u.tr_matmul(&au)?;
        let c0 = u.tr_matmul(&DenseMatrix::column_vector(y0))?.column(0);
        Ok(Self {
            u: u.clone(),
            au,
            b,
            c0,
            y0: y0.to_vec(),
        })
    }

    pub fn from_state(state: &ProjectionState<T>) -> Self {
        Self {
            u: state.basis(),
            au: state.au(),
            b: state.b().clone(),
            c0: state.c0().to_vec(),
            y0: state.y0().to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.u.cols()
    }

    /// Solves `BZ + ZBᵀ = −c₀c₀ᵀ`.
    pub fn gramian(&self) -> Result<DenseMatrix<T>> {
        let c = DenseMatrix::column_vector(&self.c0);
        solve_small_lyapunov(&self.b, &c.matmul(&c.transpose())?)
    }

    /// Solves `A P + P Bᵀ = −y₀c₀ᵀ`.
    pub fn cross_gramian(&self, cache: &mut ShiftedFactorCache<'_, T>) -> Result<DenseMatrix<T>> {
        let g = DenseMatrix::column_vector(&self.y0).matmul(&DenseMatrix::column_vector(&self.c0).transpose())?;
        solve_projected_sylvester(cache, &self.b, &g, false)
    }

    /// `tr Z − 2 tr UᵀP`, the part of `F(U)` that does not involve `X`.
    pub fn reduced_functional(&self, cache: &mut ShiftedFactorCache<'_, T>) -> Result<T> {
        let z = self.gramian()?;
        let p = self.cross_gramian(cache)?;
        Ok(z.trace() - T::lit(2.0) * column_dots(&self.u, &p))
    }
}

/// `tr(XᵀY)` as a sum of column dot products.
pub(crate) fn column_dots<T: Scalar>(x: &DenseMatrix<T>, y: &DenseMatrix<T>) -> T {
    (0..x.cols()).map(|j| dot(&x.column(j), &y.column(j))).sum()
}

/// Values of the functional split `F = F₁ − 2F₂`.
#[derive(Clone, Debug)]
pub struct FunctionalValue<T: Scalar> {
    /// `F₁ = tr X − tr Z`, present only when `tr X` was supplied.
    pub f1: Option<T>,
    /// `F₂ = tr Uᵀ(P − UZ)`.
    pub f2: T,
    /// `tr Z − 2 tr UᵀP`, so that `F = tr X + reduced`.
    pub reduced: T,
    /// Solution of `A P + P Bᵀ = −y₀c₀ᵀ`.
    pub p: DenseMatrix<T>,
}

impl<T: Scalar> FunctionalValue<T> {
    /// `F(U)`, available when `tr X` was supplied.
    pub fn total(&self) -> Option<T> {
        self.f1.map(|f1| f1 - T::lit(2.0) * self.f2)
    }
}

/// Evaluates the functional for a state whose Gramian has been solved.
pub fn functional_value<T: Scalar>(
    state: &ProjectionState<T>,
    cache: &mut ShiftedFactorCache<'_, T>,
    trace_x: Option<T>,
) -> Result<FunctionalValue<T>> {
    let z = state.require_z()?;
    let g = DenseMatrix::column_vector(state.y0()).matmul(&DenseMatrix::column_vector(state.c0()).transpose())?;
    let p = solve_projected_sylvester(cache, state.b(), &g, false)?;
    let tr_utp: T = state
        .basis_columns()
        .iter()
        .enumerate()
        .map(|(j, u)| dot(u, &p.column(j)))
        .sum();
    let tr_z = z.trace();
    let f2 = tr_utp - tr_z;
    Ok(FunctionalValue {
        f1: trace_x.map(|tx| tx - tr_z),
        f2,
        reduced: tr_z - T::lit(2.0) * tr_utp,
        p,
    })
}

/// Euclidean gradient of `F` with respect to `U`:
///
/// `−2P + 2y₀(c₀ᵀZ_I − y₀ᵀP_U) + 2AU(Z Z_I − PᵀP_U) + 2AᵀU(Z_I Z − P_UᵀP)`
///
/// with `AᵀP_U + P_U B = −U` and `BᵀZ_I + Z_I B = −I`.
pub fn functional_gradient<T: Scalar>(
    state: &ProjectionState<T>,
    cache: &mut ShiftedFactorCache<'_, T>,
) -> Result<DenseMatrix<T>> {
    gradient_for_basis(&ProjectedSystem::from_state(state), cache)
}

/// Gradient formula evaluated for an arbitrary basis.
pub fn gradient_for_basis<T: Scalar>(
    sys: &ProjectedSystem<T>,
    cache: &mut ShiftedFactorCache<'_, T>,
) -> Result<DenseMatrix<T>> {
    let a = cache.base();
    let (n, r) = (sys.u.rows(), sys.rank());
    let two = T::lit(2.0);

    let z = sys.gramian()?;
    let p = sys.cross_gramian(cache)?;
    let bt = sys.b.transpose();
    let z_i = solve_small_lyapunov(&bt, &DenseMatrix::identity(r))?;
    let p_u = solve_projected_sylvester(cache, &bt, &sys.u, true)?;

    let mut atu = DenseMatrix::zeros(n, r);
    for j in 0..r {
        atu.set_column(j, &a.matvec_transpose(&sys.u.column(j))?);
    }

    let y0 = DenseMatrix::column_vector(&sys.y0);
    let c0 = DenseMatrix::column_vector(&sys.c0);
    // row vector c₀ᵀZ_I − y₀ᵀP_U
    let row = c0.tr_matmul(&z_i)?.sub(&y0.tr_matmul(&p_u)?)?;
    let m1 = z.matmul(&z_i)?.sub(&p.tr_matmul(&p_u)?)?;
    let m2 = z_i.matmul(&z)?.sub(&p_u.tr_matmul(&p)?)?;

    let grad = p
        .scaled(-two)
        .add(&y0.matmul(&row)?.scaled(two))?
        .add(&sys.au.matmul(&m1)?.scaled(two))?
        .add(&atu.matmul(&m2)?.scaled(two))?;
    Ok(grad)
}

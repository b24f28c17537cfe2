//! Finite-difference model operators on the unit square/cube with homogeneous
//! Dirichlet boundary conditions.
//!
//! Grids have `nx` interior points per dimension, spacing `h = 1/(nx+1)` and
//! nodes at `(i+1)·h`. Unknowns are numbered with `x` varying fastest.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::io::{read_matrix_market, read_vector};
use crate::sparse::CsrMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Laplace2d,
    Laplace3d,
    ConvDiff2d,
    ConvDiff3d,
    External,
}

impl ProblemKind {
    pub const GENERATED: [ProblemKind; 4] = [
        ProblemKind::Laplace2d,
        ProblemKind::Laplace3d,
        ProblemKind::ConvDiff2d,
        ProblemKind::ConvDiff3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Laplace2d => "laplace2d",
            ProblemKind::Laplace3d => "laplace3d",
            ProblemKind::ConvDiff2d => "convdiff2d",
            ProblemKind::ConvDiff3d => "convdiff3d",
            ProblemKind::External => "external",
        }
    }

    /// Spatial dimension of a generated problem (`None` for external ones).
    pub fn spatial_dim(self) -> Option<u32> {
        match self {
            ProblemKind::Laplace2d | ProblemKind::ConvDiff2d => Some(2),
            ProblemKind::Laplace3d | ProblemKind::ConvDiff3d => Some(3),
            ProblemKind::External => None,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace2d" => Ok(ProblemKind::Laplace2d),
            "laplace3d" => Ok(ProblemKind::Laplace3d),
            "convdiff2d" => Ok(ProblemKind::ConvDiff2d),
            "convdiff3d" => Ok(ProblemKind::ConvDiff3d),
            "external" => Ok(ProblemKind::External),
            other => Err(Error::InvalidProblem(format!("unknown problem '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhsKind {
    Ones,
    Gaussian2d,
    File,
}

impl RhsKind {
    pub fn name(self) -> &'static str {
        match self {
            RhsKind::Ones => "ones",
            RhsKind::Gaussian2d => "gaussian2d",
            RhsKind::File => "file",
        }
    }
}

impl fmt::Display for RhsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RhsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ones" => Ok(RhsKind::Ones),
            "gaussian2d" => Ok(RhsKind::Gaussian2d),
            "file" => Ok(RhsKind::File),
            other => Err(Error::InvalidProblem(format!("unknown rhs kind '{other}'"))),
        }
    }
}

/// A generated model problem: operator kind, grid size and right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    kind: ProblemKind,
    grid: usize,
    rhs: RhsKind,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind, grid: usize, rhs: RhsKind) -> Result<Self> {
        if grid == 0 {
            return Err(Error::InvalidProblem("grid must have at least one point per dimension".into()));
        }
        match (kind, rhs) {
            (ProblemKind::External, RhsKind::File) => {}
            (ProblemKind::External, _) => {
                return Err(Error::InvalidProblem("external problems take their rhs from a file".into()))
            }
            (_, RhsKind::File) => {
                return Err(Error::InvalidProblem("file rhs requires an external problem".into()))
            }
            (ProblemKind::Laplace2d, RhsKind::Gaussian2d) | (_, RhsKind::Ones) => {}
            (k, RhsKind::Gaussian2d) => {
                return Err(Error::InvalidProblem(format!("gaussian2d rhs is only defined for laplace2d, not {k}")))
            }
        }
        Ok(Self { kind, grid, rhs })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn rhs(&self) -> RhsKind {
        self.rhs
    }

    /// Number of unknowns, `grid^d`.
    pub fn dim(&self) -> usize {
        match self.kind.spatial_dim() {
            Some(d) => self.grid.pow(d),
            None => self.grid,
        }
    }

    /// Label such as `64x64` or `10x10x10`.
    pub fn grid_label(&self) -> String {
        match self.kind.spatial_dim() {
            Some(d) => vec![self.grid.to_string(); d as usize].join("x"),
            None => self.grid.to_string(),
        }
    }

    pub fn operator<T: Scalar>(&self) -> Result<CsrMatrix<T>> {
        let nx = self.grid;
        match self.kind {
            ProblemKind::Laplace2d => Ok(laplace2d(nx)),
            ProblemKind::Laplace3d => Ok(laplace3d(nx)),
            ProblemKind::ConvDiff2d => Ok(convdiff2d(nx)),
            ProblemKind::ConvDiff3d => Ok(convdiff3d(nx)),
            ProblemKind::External => Err(Error::InvalidProblem(
                "external operators are loaded with load_external".into(),
            )),
        }
    }
}

/// Convection coefficients of `L u = Δu − cx·x·u_x − cy·y·u_y − cz·u_z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Convection {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl Convection {
    /// Coefficients of the convection-diffusion model problems.
    pub const MODEL: Convection = Convection {
        cx: 10.0,
        cy: 1000.0,
        cz: 1.0,
    };

    pub const NONE: Convection = Convection {
        cx: 0.0,
        cy: 0.0,
        cz: 0.0,
    };
}

impl Default for Convection {
    fn default() -> Self {
        Self::MODEL
    }
}

/// 5-point Laplacian, `nx²` unknowns.
pub fn laplace2d<T: Scalar>(nx: usize) -> CsrMatrix<T> {
    stencil(nx, 2, &Convection::NONE)
}

/// 7-point Laplacian, `nx³` unknowns.
pub fn laplace3d<T: Scalar>(nx: usize) -> CsrMatrix<T> {
    stencil(nx, 3, &Convection::NONE)
}

pub fn convdiff2d<T: Scalar>(nx: usize) -> CsrMatrix<T> {
    stencil(nx, 2, &Convection::MODEL)
}

pub fn convdiff3d<T: Scalar>(nx: usize) -> CsrMatrix<T> {
    stencil(nx, 3, &Convection::MODEL)
}

pub fn convdiff2d_with<T: Scalar>(nx: usize, conv: &Convection) -> CsrMatrix<T> {
    stencil(nx, 2, conv)
}

pub fn convdiff3d_with<T: Scalar>(nx: usize, conv: &Convection) -> CsrMatrix<T> {
    stencil(nx, 3, conv)
}

fn stencil<T: Scalar>(nx: usize, dim: u32, conv: &Convection) -> CsrMatrix<T> {
    assert!(nx >= 1, "grid must have at least one point");
    let h = 1.0 / (nx as f64 + 1.0);
    let inv_h2 = 1.0 / (h * h);
    let n = nx.pow(dim);
    let strides = [1, nx, nx * nx];
    let mut trip = Vec::with_capacity(n * (2 * dim as usize + 1));
    for idx in 0..n {
        let mut coord = [0usize; 3];
        let mut rest = idx;
        for c in coord.iter_mut().take(dim as usize) {
            *c = rest % nx;
            rest /= nx;
        }
        trip.push((idx, idx, T::lit(-2.0 * dim as f64 * inv_h2)));
        for axis in 0..dim as usize {
            let pos = (coord[axis] as f64 + 1.0) * h;
            // velocity b of the convection term −b·∂u
            let b = match axis {
                0 => conv.cx * pos,
                1 => conv.cy * pos,
                _ => conv.cz,
            };
            let half = b / (2.0 * h);
            if coord[axis] > 0 {
                trip.push((idx, idx - strides[axis], T::lit(inv_h2 + half)));
            }
            if coord[axis] + 1 < nx {
                trip.push((idx, idx + strides[axis], T::lit(inv_h2 - half)));
            }
        }
    }
    CsrMatrix::from_triplets(n, &trip).expect("stencil indices are in range")
}

/// Right-hand side `y₀` for a generated problem.
pub fn make_rhs<T: Scalar>(spec: &ProblemSpec) -> Result<Vec<T>> {
    match spec.rhs {
        RhsKind::Ones => Ok(vec![T::one(); spec.dim()]),
        RhsKind::Gaussian2d => {
            if spec.kind != ProblemKind::Laplace2d {
                return Err(Error::InvalidProblem("gaussian2d rhs requires laplace2d".into()));
            }
            let nx = spec.grid;
            let h = 1.0 / (nx as f64 + 1.0);
            let mut v = Vec::with_capacity(nx * nx);
            for j in 0..nx {
                let y = (j as f64 + 1.0) * h;
                for i in 0..nx {
                    let x = (i as f64 + 1.0) * h;
                    v.push(T::lit(gaussian(x, y)));
                }
            }
            Ok(v)
        }
        RhsKind::File => Err(Error::InvalidProblem(
            "file right-hand sides are loaded with load_external".into(),
        )),
    }
}

fn gaussian(x: f64, y: f64) -> f64 {
    (-(x - 0.5).powi(2) - 1.5 * (y - 0.7).powi(2)).exp()
}

/// Loads an operator from a Matrix Market file and `y₀` from a vector file.
pub fn load_external<T: Scalar>(matrix: &Path, rhs: &Path) -> Result<(CsrMatrix<T>, Vec<T>)> {
    let a: CsrMatrix<T> = read_matrix_market(BufReader::new(File::open(matrix)?))?;
    let y0: Vec<T> = read_vector(BufReader::new(File::open(rhs)?))?;
    if y0.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            context: "load_external rhs",
            expected: a.dim(),
            found: y0.len(),
        });
    }
    Ok((a, y0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_operators() {
        assert_eq!(laplace2d::<f64>(1).to_dense().as_slice(), &[-16.0]);
        assert_eq!(laplace3d::<f64>(1).to_dense().as_slice(), &[-24.0]);
        assert_eq!(convdiff2d::<f64>(1).to_dense().as_slice(), &[-16.0]);
        assert_eq!(convdiff3d::<f64>(1).to_dense().as_slice(), &[-24.0]);
    }

    #[test]
    fn laplace2d_two_by_two() {
        let a = laplace2d::<f64>(2);
        let expect = [
            [-36.0, 9.0, 9.0, 0.0],
            [9.0, -36.0, 0.0, 9.0],
            [9.0, 0.0, -36.0, 9.0],
            [0.0, 9.0, 9.0, -36.0],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!((a.get(i, j) - v).abs() < 1e-12, "({i},{j})");
            }
        }
        assert_eq!(a.matvec(&[1.0; 4]).unwrap(), vec![-18.0; 4]);
    }

    #[test]
    fn convection_entries() {
        let a = convdiff2d::<f64>(2);
        // node (1,1) is index 0, its east neighbor (2,1) is index 1
        assert!((a.get(0, 1) - 4.0).abs() < 1e-12);
        let b = convdiff3d::<f64>(2);
        // +z neighbor of node (1,1,1)
        assert!((b.get(0, 4) - 7.5).abs() < 1e-12);
        assert!((b.get(0, 0) + 54.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_single_node() {
        let spec = ProblemSpec::new(ProblemKind::Laplace2d, 1, RhsKind::Gaussian2d).unwrap();
        let v: Vec<f64> = make_rhs(&spec).unwrap();
        assert!((v[0] - (-0.06f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::new(ProblemKind::Laplace3d, 4, RhsKind::Gaussian2d).is_err());
        assert!(ProblemSpec::new(ProblemKind::Laplace2d, 0, RhsKind::Ones).is_err());
        assert!(ProblemSpec::new(ProblemKind::Laplace2d, 3, RhsKind::File).is_err());
        let s = ProblemSpec::new(ProblemKind::ConvDiff3d, 10, RhsKind::Ones).unwrap();
        assert_eq!(s.grid_label(), "10x10x10");
        assert_eq!(s.dim(), 1000);
    }
}

//! Grids of component operators with per-row and per-column dimensions.
//!
//! A [`BlockOperator`] holds the 2×2 operator-valued Hamiltonians, the
//! (n+1)×1 Veronese columns, and everything assembled from them. Component
//! dimensions may differ (the pseudo-Hermitian model mixes an n-dimensional
//! and an (n+1)-dimensional component), so blocks are plain rectangular
//! matrices.

use crate::error::{Error, Result};
use crate::fock::FockOperator;
use crate::linalg::{self, CMat};
use num_complex::Complex64 as C64;

/// Number of trailing basis indices per component excluded from comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityBand(pub usize);

#[derive(Debug, Clone)]
pub struct BlockOperator {
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
    blocks: Vec<CMat>, // row-major
    valid_band: usize,
}

impl BlockOperator {
    /// Build from a row-major grid of rectangular blocks.
    pub fn from_blocks(grid: Vec<Vec<CMat>>) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return Err(Error::ShapeMismatch("empty block grid".into()));
        }
        let row_dims: Vec<usize> = grid.iter().map(|row| row[0].nrows()).collect();
        let col_dims: Vec<usize> = grid[0].iter().map(|b| b.ncols()).collect();
        let mut blocks = Vec::with_capacity(row_dims.len() * col_dims.len());
        for (i, row) in grid.iter().enumerate() {
            if row.len() != col_dims.len() {
                return Err(Error::ShapeMismatch("ragged block grid".into()));
            }
            for (j, b) in row.iter().enumerate() {
                if b.nrows() != row_dims[i] || b.ncols() != col_dims[j] {
                    return Err(Error::ShapeMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.nrows(),
                        b.ncols(),
                        row_dims[i],
                        col_dims[j]
                    )));
                }
            }
        }
        for row in grid {
            blocks.extend(row);
        }
        Ok(Self {
            row_dims,
            col_dims,
            blocks,
            valid_band: 0,
        })
    }

    /// 2×2 grid of same-space Fock operators.
    pub fn from_fock_2x2(
        a: &FockOperator,
        b: &FockOperator,
        c: &FockOperator,
        d: &FockOperator,
    ) -> Self {
        Self::from_blocks(vec![
            vec![a.matrix().clone(), b.matrix().clone()],
            vec![c.matrix().clone(), d.matrix().clone()],
        ])
        .expect("2x2 fock grid is always consistent")
    }

    /// Column of same-space Fock operators.
    pub fn column_of(entries: &[FockOperator]) -> Self {
        Self::from_blocks(entries.iter().map(|e| vec![e.matrix().clone()]).collect())
            .expect("column grid is always consistent")
    }

    /// Block-diagonal operator; off-diagonal blocks are zero.
    pub fn block_diagonal(diag: &[CMat]) -> Self {
        let n = diag.len();
        let mut grid = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                if i == j {
                    row.push(diag[i].clone());
                } else {
                    row.push(CMat::zeros(diag[i].nrows(), diag[j].ncols()));
                }
            }
            grid.push(row);
        }
        Self::from_blocks(grid).expect("block diagonal grid is consistent")
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self::block_diagonal(
            &dims
                .iter()
                .map(|&d| CMat::identity(d, d))
                .collect::<Vec<_>>(),
        )
    }

    pub fn zeros(row_dims: &[usize], col_dims: &[usize]) -> Self {
        let grid = row_dims
            .iter()
            .map(|&r| col_dims.iter().map(|&c| CMat::zeros(r, c)).collect())
            .collect();
        Self::from_blocks(grid).expect("zero grid is consistent")
    }

    pub fn row_dims(&self) -> &[usize] {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    pub fn block(&self, i: usize, j: usize) -> &CMat {
        &self.blocks[i * self.col_dims.len() + j]
    }

    pub fn block_mut(&mut self, i: usize, j: usize) -> &mut CMat {
        &mut self.blocks[i * self.col_dims.len() + j]
    }

    pub fn valid_band(&self) -> usize {
        self.valid_band
    }

    pub fn with_band(mut self, band: usize) -> Self {
        self.valid_band = band;
        self
    }

    pub fn total_rows(&self) -> usize {
        self.row_dims.iter().sum()
    }

    pub fn total_cols(&self) -> usize {
        self.col_dims.iter().sum()
    }

    /// Assemble into one dense matrix, components concatenated in order.
    pub fn to_dense(&self) -> CMat {
        let mut out = CMat::zeros(self.total_rows(), self.total_cols());
        let mut r0 = 0;
        for i in 0..self.row_dims.len() {
            let mut c0 = 0;
            for j in 0..self.col_dims.len() {
                let b = self.block(i, j);
                out.view_mut((r0, c0), (b.nrows(), b.ncols())).copy_from(b);
                c0 += self.col_dims[j];
            }
            r0 += self.row_dims[i];
        }
        out
    }

    /// Split a dense matrix back into blocks along the given dimensions.
    pub fn from_dense(dense: &CMat, row_dims: &[usize], col_dims: &[usize]) -> Result<Self> {
        let (rt, ct): (usize, usize) = (row_dims.iter().sum(), col_dims.iter().sum());
        if dense.nrows() != rt || dense.ncols() != ct {
            return Err(Error::ShapeMismatch(format!(
                "dense matrix is {}x{}, dims sum to {}x{}",
                dense.nrows(),
                dense.ncols(),
                rt,
                ct
            )));
        }
        let mut grid = Vec::with_capacity(row_dims.len());
        let mut r0 = 0;
        for &rd in row_dims {
            let mut row = Vec::with_capacity(col_dims.len());
            let mut c0 = 0;
            for &cd in col_dims {
                row.push(dense.view((r0, c0), (rd, cd)).into_owned());
                c0 += cd;
            }
            r0 += rd;
            grid.push(row);
        }
        Self::from_blocks(grid)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.col_dims != other.row_dims {
            return Err(Error::ShapeMismatch(format!(
                "block product: col dims {:?} vs row dims {:?}",
                self.col_dims, other.row_dims
            )));
        }
        let mut grid = Vec::with_capacity(self.row_dims.len());
        for i in 0..self.row_dims.len() {
            let mut row = Vec::with_capacity(other.col_dims.len());
            for j in 0..other.col_dims.len() {
                let mut acc = CMat::zeros(self.row_dims[i], other.col_dims[j]);
                for k in 0..self.col_dims.len() {
                    acc += self.block(i, k) * other.block(k, j);
                }
                row.push(acc);
            }
            grid.push(row);
        }
        let band = self.valid_band.max(other.valid_band);
        Ok(Self::from_blocks(grid)?.with_band(band))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        if self.row_dims != other.row_dims || self.col_dims != other.col_dims {
            return Err(Error::ShapeMismatch(format!(
                "block shapes differ: {:?}x{:?} vs {:?}x{:?}",
                self.row_dims, self.col_dims, other.row_dims, other.col_dims
            )));
        }
        let grid = (0..self.row_dims.len())
            .map(|i| {
                (0..self.col_dims.len())
                    .map(|j| f(self.block(i, j), other.block(i, j)))
                    .collect()
            })
            .collect();
        let band = self.valid_band.max(other.valid_band);
        Ok(Self::from_blocks(grid)?.with_band(band))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn adjoint(&self) -> Self {
        let grid = (0..self.col_dims.len())
            .map(|j| {
                (0..self.row_dims.len())
                    .map(|i| self.block(i, j).adjoint())
                    .collect()
            })
            .collect();
        Self::from_blocks(grid)
            .expect("adjoint grid is consistent")
            .with_band(self.valid_band)
    }

    pub fn scale(&self, factor: C64) -> Self {
        let grid = (0..self.row_dims.len())
            .map(|i| {
                (0..self.col_dims.len())
                    .map(|j| self.block(i, j).map(|v| v * factor))
                    .collect()
            })
            .collect();
        Self::from_blocks(grid)
            .expect("scaled grid is consistent")
            .with_band(self.valid_band)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    /// Max |lhs−rhs| with block (i,j) restricted to
    /// rows in `row_window(i)` and columns in `col_window(j)`.
    pub fn residual_windowed(
        &self,
        other: &Self,
        row_window: impl Fn(usize) -> (usize, usize),
        col_window: impl Fn(usize) -> (usize, usize),
    ) -> Result<f64> {
        if self.row_dims != other.row_dims || self.col_dims != other.col_dims {
            return Err(Error::ShapeMismatch(
                "windowed residual shapes differ".into(),
            ));
        }
        let mut worst = 0.0f64;
        for i in 0..self.row_dims.len() {
            let (rlo, rhi) = row_window(i);
            for j in 0..self.col_dims.len() {
                let (clo, chi) = col_window(j);
                let (a, b) = (self.block(i, j), other.block(i, j));
                for r in rlo..rhi.min(a.nrows()) {
                    for c in clo..chi.min(a.ncols()) {
                        worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Interior residual: trailing `band` indices of every component are
    /// excluded from the comparison.
    pub fn interior_residual(&self, other: &Self, band: usize) -> Result<f64> {
        for &d in self.row_dims.iter().chain(self.col_dims.iter()) {
            if band >= d {
                return Err(Error::BandTooLarge { band, dim: d });
            }
        }
        self.residual_windowed(
            other,
            |i| (0, self.row_dims[i] - band),
            |j| (0, self.col_dims[j] - band),
        )
    }
}

/// Band-restricted comparison. Returns the interior residual and whether it
/// beats the tolerance.
pub fn interior_equal(
    lhs: &BlockOperator,
    rhs: &BlockOperator,
    band: ValidityBand,
    tol: f64,
) -> Result<(f64, bool)> {
    let residual = lhs.interior_residual(rhs, band.0)?;
    Ok((residual, residual < tol))
}

/// e^{−itH}, computed by spectral factorization when `hermitian` is asserted
/// (and verified), by Padé scaling-and-squaring of the series otherwise.
pub fn reference_exponential(h: &BlockOperator, t: f64, hermitian: bool) -> Result<BlockOperator> {
    if h.row_dims() != h.col_dims() {
        return Err(Error::ShapeMismatch(
            "exponential needs a square block operator".into(),
        ));
    }
    let dense = h.to_dense();
    let exp = if hermitian {
        let defect = linalg::hermiticity_defect(&dense);
        if defect > 1e-10 {
            return Err(Error::NotHermitian(defect));
        }
        linalg::expm_hermitian(&dense, C64::new(0.0, -t))
    } else {
        linalg::expm_pade(&dense.map(|v| v * C64::new(0.0, -t)))
    };
    BlockOperator::from_dense(&exp, h.row_dims(), h.col_dims())
}

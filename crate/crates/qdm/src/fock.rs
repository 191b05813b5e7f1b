//! Truncated Fock space and single-mode operators with validity tracking.
//!
//! All operators are dense complex matrices over the first `dim` number
//! states. Truncating the creation operator corrupts the top of the spectrum,
//! and partially-defined diagonal functions (negative radicands) corrupt
//! individual entries; both kinds of damage are recorded in a per-operator
//! trusted index range instead of being padded or raised as errors, so that
//! identities can be checked exactly where they hold.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use num_complex::Complex64 as C64;

/// Truncated Fock space spanned by |0⟩ … |dim−1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "Fock cutoff must be at least 2, got {dim}"
            )));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Default truncation cutoff. The Jaynes-Cummings Hamiltonian mixes |n⟩ only
/// with |n±1⟩, so a handful of guard indices at the top is enough for every
/// composite expression that appears here.
pub const DEFAULT_CUTOFF: usize = 64;

/// Default trailing band excluded from comparisons.
pub const DEFAULT_BAND: usize = 2;

/// Default comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Contiguous range of trusted basis indices, `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidRange {
    pub lo: usize,
    pub hi: usize,
}

impl ValidRange {
    pub fn full(dim: usize) -> Self {
        Self { lo: 0, hi: dim }
    }

    pub fn intersect(self, other: Self) -> Self {
        Self {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

/// A dense operator on a truncated Fock space.
#[derive(Debug, Clone)]
pub struct FockOperator {
    space: FockSpace,
    mat: CMat,
    valid: ValidRange,
    truncated: bool,
}

impl FockOperator {
    pub fn from_matrix(space: FockSpace, mat: CMat) -> Result<Self> {
        if mat.nrows() != space.dim() || mat.ncols() != space.dim() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, space dimension is {}",
                mat.nrows(),
                mat.ncols(),
                space.dim()
            )));
        }
        Ok(Self {
            space,
            mat,
            valid: ValidRange::full(space.dim()),
            truncated: false,
        })
    }

    pub fn zeros(space: FockSpace) -> Self {
        Self {
            space,
            mat: CMat::zeros(space.dim(), space.dim()),
            valid: ValidRange::full(space.dim()),
            truncated: false,
        }
    }

    pub fn identity(space: FockSpace) -> Self {
        Self {
            space,
            mat: CMat::identity(space.dim(), space.dim()),
            valid: ValidRange::full(space.dim()),
            truncated: false,
        }
    }

    /// Diagonal operator from an arbitrary complex-valued entry function.
    /// The caller is responsible for finiteness; use [`diag_fn`] for
    /// partially-defined real functions with clamping.
    pub fn from_diagonal_with(space: FockSpace, f: impl Fn(usize) -> C64) -> Self {
        let mut mat = CMat::zeros(space.dim(), space.dim());
        for m in 0..space.dim() {
            mat[(m, m)] = f(m);
        }
        Self {
            space,
            mat,
            valid: ValidRange::full(space.dim()),
            truncated: false,
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn valid(&self) -> ValidRange {
        self.valid
    }

    /// First untrusted row index when the trusted range starts at 0.
    pub fn valid_rows(&self) -> usize {
        if self.valid.lo == 0 {
            self.valid.hi
        } else {
            0
        }
    }

    /// Whether the operator lost amplitude to the hard cutoff (e.g. the
    /// creation operator's action on the top state).
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    /// Apply to the basis state |n⟩, returning the image column.
    pub fn apply_basis(&self, n: usize) -> nalgebra::DVector<C64> {
        assert!(n < self.dim(), "basis index out of range");
        self.mat.column(n).into_owned()
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch(format!(
                "operators live on different spaces ({} vs {})",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            space: self.space,
            mat: &self.mat * &other.mat,
            valid: self.valid.intersect(other.valid),
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            space: self.space,
            mat: &self.mat + &other.mat,
            valid: self.valid.intersect(other.valid),
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            space: self.space,
            mat: &self.mat - &other.mat,
            valid: self.valid.intersect(other.valid),
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            mat: self.mat.adjoint(),
            valid: self.valid,
            truncated: self.truncated,
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            space: self.space,
            mat: self.mat.map(|v| v * factor),
            valid: self.valid,
            truncated: self.truncated,
        }
    }

    /// Entrywise real power of a positive diagonal operator. Entries outside
    /// the trusted range are left clamped at zero (negative powers would blow
    /// them up), shrinking validity accordingly.
    pub fn diag_pow(&self, exponent: f64) -> Self {
        let mut mat = CMat::zeros(self.dim(), self.dim());
        let mut valid = self.valid;
        for m in 0..self.dim() {
            let v = self.mat[(m, m)].re;
            let inside = m >= self.valid.lo && m < self.valid.hi;
            if inside && v > 0.0 {
                mat[(m, m)] = C64::new(v.powf(exponent), 0.0);
            } else if inside {
                // non-positive entry: clamp, and drop it from the trusted
                // range when a negative power would blow it up
                if exponent <= 0.0 {
                    valid = valid.intersect(clamp_around(m, self.dim()));
                }
            }
        }
        Self {
            space: self.space,
            mat,
            valid,
            truncated: self.truncated,
        }
    }

    pub fn max_abs(&self) -> f64 {
        crate::linalg::max_abs(&self.mat)
    }

    /// Max |self − other| over rows in `rows` and columns in `cols`.
    pub fn residual_in(&self, other: &Self, rows: ValidRange, cols: ValidRange) -> f64 {
        let mut worst = 0.0f64;
        for r in rows.lo..rows.hi.min(self.dim()) {
            for c in cols.lo..cols.hi.min(self.dim()) {
                worst = worst.max((self.mat[(r, c)] - other.mat[(r, c)]).norm());
            }
        }
        worst
    }
}

impl std::ops::Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        self.checked_mul(rhs).expect("operator spaces must match")
    }
}

impl std::ops::Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        self.checked_add(rhs).expect("operator spaces must match")
    }
}

impl std::ops::Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        self.checked_sub(rhs).expect("operator spaces must match")
    }
}

/// Shrink a valid range so it excludes index `m`: keeps whichever side of `m`
/// is larger.
fn clamp_around(m: usize, dim: usize) -> ValidRange {
    if m >= dim / 2 {
        ValidRange { lo: 0, hi: m }
    } else {
        ValidRange { lo: m + 1, hi: dim }
    }
}

/// a |n⟩ = √n |n−1⟩.
pub fn annihilation(space: FockSpace) -> FockOperator {
    let dim = space.dim();
    let mut mat = CMat::zeros(dim, dim);
    for n in 1..dim {
        mat[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    FockOperator {
        space,
        mat,
        valid: ValidRange::full(dim),
        truncated: false,
    }
}

/// a† |n⟩ = √(n+1) |n+1⟩, with the action on the top state cut to zero and
/// flagged.
pub fn creation(space: FockSpace) -> FockOperator {
    annihilation(space).adjoint().with_truncated(true)
}

/// N = a† a, exactly diagonal with entries 0..dim−1.
pub fn number(space: FockSpace) -> FockOperator {
    FockOperator::from_diagonal_with(space, |m| C64::new(m as f64, 0.0))
}

/// Diagonal operator with entry `f(m + shift)` at index `m`.
///
/// Entries where `f` is undefined (NaN or infinite, e.g. a negative radicand)
/// are clamped to zero and excluded from the trusted range; the trusted range
/// is the longest contiguous run of defined entries.
pub fn diag_fn(space: FockSpace, f: impl Fn(f64) -> f64, shift: i64) -> FockOperator {
    let dim = space.dim();
    let mut mat = CMat::zeros(dim, dim);
    let mut defined = vec![false; dim];
    for m in 0..dim {
        let v = f((m as i64 + shift) as f64);
        if v.is_finite() {
            mat[(m, m)] = C64::new(v, 0.0);
            defined[m] = true;
        }
    }
    FockOperator {
        space,
        mat,
        valid: longest_run(&defined),
        truncated: false,
    }
}

fn longest_run(defined: &[bool]) -> ValidRange {
    let mut best = ValidRange { lo: 0, hi: 0 };
    let mut start = None;
    for (i, &d) in defined.iter().enumerate() {
        match (d, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if i - s > best.hi - best.lo {
                    best = ValidRange { lo: s, hi: i };
                }
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        if defined.len() - s > best.hi - best.lo {
            best = ValidRange {
                lo: s,
                hi: defined.len(),
            };
        }
    }
    best
}

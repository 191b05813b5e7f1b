//! Spin representations: classical SU(2) matrices of arbitrary spin, the
//! operator-valued degree-2 and degree-3 unitaries built from the chart
//! entries, SU(1,1) representation columns on truncated sequence space, the
//! Clebsch-Gordan tensor decompositions with their non-commutative
//! obstruction, and the inner-product quadratures backing the basis
//! normalizations.

use crate::block::BlockOperator;
use crate::classical::M2;
use crate::error::{Error, Result};
use crate::fock::FockOperator;
use crate::jc::DetunedModel;
use crate::linalg::CMat;
use crate::quad::{self, QuadratureConfig};
use crate::veronese::{binomial, x_op, y_op};
use num_complex::Complex64 as C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Twice the spin; the SU(2) representation space has dimension 2j+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinLabel {
    pub two_j: u32,
}

impl SpinLabel {
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidParameter("spin must be positive".into()));
        }
        Ok(Self { two_j })
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }
}

fn su2_defect(a: &M2) -> f64 {
    let unitarity = crate::classical::max_abs2(&(a.adjoint() * a - M2::identity()));
    let det = (a.determinant() - c(1.0, 0.0)).norm();
    unitarity.max(det)
}

fn su11_defect(b: &M2) -> f64 {
    let (_, _, j, _, _) = crate::classical::su11_generators();
    let rel = crate::classical::max_abs2(&(b.adjoint() * j * b - j));
    let det = (b.determinant() - c(1.0, 0.0)).norm();
    rel.max(det)
}

/// Multiply two polynomials in their monomial coefficient vectors.
fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![c(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of (p + q z)^n.
fn binomial_poly(p: C64, q: C64, n: usize) -> Vec<C64> {
    (0..=n)
        .map(|i| c(binomial(n, i), 0.0) * p.powu((n - i) as u32) * q.powu(i as u32))
        .collect()
}

/// Spin-j matrix of an SU(2) element in the orthonormal basis
/// {√C(2j,k) z^k}: column k is the expansion of
/// (α+βz)^{2j−k} (−β̄+ᾱz)^k rescaled by the basis weights.
pub fn spin_rep_su2(label: SpinLabel, a: &M2) -> Result<CMat> {
    let defect = su2_defect(a);
    if defect > 1e-10 {
        return Err(Error::NotInGroup(defect));
    }
    let two_j = label.two_j as usize;
    let dim = label.dim();
    let (alpha, beta) = (a.m11, a.m21);
    let mut out = CMat::zeros(dim, dim);
    for k in 0..dim {
        let left = binomial_poly(alpha, beta, two_j - k);
        let right = binomial_poly(-beta.conj(), alpha.conj(), k);
        let coeffs = poly_mul(&left, &right);
        let col_weight = binomial(two_j, k).sqrt();
        for (m, &coeff) in coeffs.iter().enumerate() {
            out[(m, k)] = coeff * c(col_weight / binomial(two_j, m).sqrt(), 0.0);
        }
    }
    Ok(out)
}

/// Operator analogue of the spin-1 matrix, assembled from the chart entries;
/// unitary on the interior and carrying the degree-2 column as its first
/// column.
pub fn nc_phi_one(model: &DetunedModel) -> BlockOperator {
    let x0 = x_op(model, 0);
    let x1 = x_op(model, 1);
    let x2 = x_op(model, 2);
    let y0 = y_op(model, 0);
    let y1 = y_op(model, 1);
    let rt2 = c(2f64.sqrt(), 0.0);

    let m = |f: &FockOperator| f.matrix().clone();
    let y1d_y1 = y1.adjoint().checked_mul(&y1).unwrap();

    BlockOperator::from_blocks(vec![
        vec![
            m(&(&x0 * &x0)),
            (x0.matrix() * y0.adjoint().matrix()).map(|v| -rt2 * v),
            m(&(&y0.adjoint() * &y1.adjoint())),
        ],
        vec![
            (y0.matrix() * x0.matrix()).map(|v| rt2 * v),
            m(&(&(&x1 * &x1) - &y1d_y1)),
            (x1.matrix() * y1.adjoint().matrix()).map(|v| -rt2 * v),
        ],
        vec![
            m(&(&y1 * &y0)),
            (y1.matrix() * x1.matrix()).map(|v| rt2 * v),
            m(&(&x2 * &x2)),
        ],
    ])
    .expect("3x3 grid is consistent")
}

/// Operator analogue of the spin-3/2 matrix.
pub fn nc_phi_three_half(model: &DetunedModel) -> BlockOperator {
    let x0 = x_op(model, 0);
    let x1 = x_op(model, 1);
    let x2 = x_op(model, 2);
    let x3 = x_op(model, 3);
    let y0 = y_op(model, 0);
    let y1 = y_op(model, 1);
    let y2 = y_op(model, 2);
    let rt3 = c(3f64.sqrt(), 0.0);

    let x1sq = &x1 * &x1;
    let x2sq = &x2 * &x2;
    let y1d_y1 = &y1.adjoint() * &y1;
    let y2d_y2 = &y2.adjoint() * &y2;
    let two = c(2.0, 0.0);

    // row 0
    let e00 = (&(&x0 * &x0) * &x0).matrix().clone();
    let e01 = (x0.matrix() * x0.matrix() * y0.adjoint().matrix()).map(|v| -rt3 * v);
    let e02 = (x0.matrix() * y0.adjoint().matrix() * y1.adjoint().matrix()).map(|v| rt3 * v);
    let e03 = (y0.adjoint().matrix() * y1.adjoint().matrix() * y2.adjoint().matrix()).map(|v| -v);
    // row 1
    let e10 = (y0.matrix() * x0.matrix() * x0.matrix()).map(|v| rt3 * v);
    let inner11 = x1sq.checked_sub(&y1d_y1.scale(two)).unwrap();
    let e11 = x1.matrix() * inner11.matrix();
    let inner12 = x1sq.scale(two).checked_sub(&y1d_y1).unwrap();
    let e12 = (inner12.matrix() * y1.adjoint().matrix()).map(|v| -v);
    let e13 = (x1.matrix() * y1.adjoint().matrix() * y2.adjoint().matrix()).map(|v| rt3 * v);
    // row 2
    let e20 = (y1.matrix() * y0.matrix() * x0.matrix()).map(|v| rt3 * v);
    let e21 = y1.matrix() * inner12.matrix();
    let inner22 = x2sq.checked_sub(&y2d_y2.scale(two)).unwrap();
    let e22 = x2.matrix() * inner22.matrix();
    let e23 = (x2.matrix() * x2.matrix() * y2.adjoint().matrix()).map(|v| -rt3 * v);
    // row 3
    let e30 = (&y2 * &(&y1 * &y0)).matrix().clone();
    let e31 = (y2.matrix() * y1.matrix() * x1.matrix()).map(|v| rt3 * v);
    let e32 = (y2.matrix() * x2.matrix() * x2.matrix()).map(|v| rt3 * v);
    let e33 = (&(&x3 * &x3) * &x3).matrix().clone();

    BlockOperator::from_blocks(vec![
        vec![e00, e01, e02, e03],
        vec![e10, e11, e12, e13],
        vec![e20, e21, e22, e23],
        vec![e30, e31, e32, e33],
    ])
    .expect("4x4 grid is consistent")
}

/// Spin-j SU(1,1) representation matrix on the truncated sequence space in
/// the orthonormal basis {√((2j)ₙ/n!) zⁿ}: column k expands
/// √((2j)ₖ/k!) (β̄+ᾱz)^k (α+βz)^{−(2j+k)} through `cutoff` rows.
pub fn su11_rep(two_j: u32, b: &M2, cutoff: usize) -> Result<CMat> {
    if two_j == 0 {
        return Err(Error::InvalidParameter("spin must be positive".into()));
    }
    let defect = su11_defect(b);
    if defect > 1e-10 {
        return Err(Error::NotInGroup(defect));
    }
    let (alpha, beta) = (b.m11, -b.m21);
    let ratio = beta / alpha;
    debug_assert!(ratio.norm() < 1.0);

    let two_j_f = two_j as f64;
    // orthonormal-basis weights w_n = (2j)_n/n!
    let mut weights = Vec::with_capacity(cutoff);
    let mut w = 1.0f64;
    for n in 0..cutoff {
        weights.push(w);
        w *= (two_j_f + n as f64) / (n as f64 + 1.0);
    }

    let mut out = CMat::zeros(cutoff, cutoff);
    for k in 0..cutoff {
        // finite part (β̄+ᾱz)^k
        let finite = binomial_poly(beta.conj(), alpha.conj(), k);
        // series of (α+βz)^{−(2j+k)}: α^{-(2j+k)} Σ (−1)ⁿ ((2j+k)ₙ/n!) ratioⁿ zⁿ
        let q = two_j_f + k as f64;
        let lead = alpha.powi(-(two_j as i32 + k as i32));
        let mut series = Vec::with_capacity(cutoff);
        let mut term = lead;
        for n in 0..cutoff {
            series.push(term);
            term = term * c(-(q + n as f64) / (n as f64 + 1.0), 0.0) * ratio;
        }
        let coeffs = poly_mul(&finite, &series);
        let col_weight = weights[k].sqrt();
        for m in 0..cutoff {
            out[(m, k)] = coeffs[m] * c(col_weight / weights[m].sqrt(), 0.0);
        }
    }
    Ok(out)
}

/// Smallest power-of-two cutoff (from 64, up to `budget`) at which the
/// column-0 norm defect of the representation matrix drops below `target`.
pub fn su11_auto_cutoff(two_j: u32, b: &M2, target: f64, budget: usize) -> Result<usize> {
    let mut cutoff = 64;
    loop {
        let rep = su11_rep(two_j, b, cutoff)?;
        let norm_sq: f64 = (0..cutoff).map(|m| rep[(m, 0)].norm_sqr()).sum();
        if (norm_sq - 1.0).abs() < target {
            return Ok(cutoff);
        }
        cutoff *= 2;
        if cutoff > budget {
            return Err(Error::QuadratureBudgetExceeded { tol: target });
        }
    }
}

/// Tensor-product fold of the Clebsch-Gordan decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fold {
    Two,
    Three,
}

/// Orthogonal basis-change matrix of the spin-½ tensor decompositions:
/// ½⊗½ = 0⊕1 (4×4) and ½⊗½⊗½ = ½⊕½⊕3/2 (8×8).
pub fn clebsch_t(fold: Fold) -> CMat {
    let h = 0.5f64.sqrt();
    match fold {
        Fold::Two => {
            let rows: [[f64; 4]; 4] = [
                [0.0, 1.0, 0.0, 0.0],
                [h, 0.0, h, 0.0],
                [-h, 0.0, h, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ];
            CMat::from_fn(4, 4, |i, j| c(rows[i][j], 0.0))
        }
        Fold::Three => {
            let s6 = 1.0 / 6f64.sqrt();
            let s3 = 1.0 / 3f64.sqrt();
            let s23 = 2f64.sqrt() / 3f64.sqrt();
            let rows: [[f64; 8]; 8] = [
                [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
                [h, 0.0, s6, 0.0, 0.0, s3, 0.0, 0.0],
                [-h, 0.0, s6, 0.0, 0.0, s3, 0.0, 0.0],
                [0.0, 0.0, 0.0, s23, 0.0, 0.0, s3, 0.0],
                [0.0, 0.0, -s23, 0.0, 0.0, s3, 0.0, 0.0],
                [0.0, h, 0.0, -s6, 0.0, 0.0, s3, 0.0],
                [0.0, -h, 0.0, -s6, 0.0, 0.0, s3, 0.0],
                [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
            ];
            CMat::from_fn(8, 8, |i, j| c(rows[i][j], 0.0))
        }
    }
}

fn m2_to_dense(a: &M2) -> CMat {
    CMat::from_row_slice(2, 2, &[a.m11, a.m12, a.m21, a.m22])
}

/// Residual of the classical tensor decomposition: T†(A⊗A)T against
/// diag(1, φ₁(A)) for the two-fold, T†(A⊗A⊗A)T against
/// diag(φ_½, φ_½, φ_3/2) for the three-fold.
pub fn tensor_decomposition_su2(a: &M2, fold: Fold) -> Result<f64> {
    let defect = su2_defect(a);
    if defect > 1e-10 {
        return Err(Error::NotInGroup(defect));
    }
    let dense = m2_to_dense(a);
    let t = clebsch_t(fold);
    match fold {
        Fold::Two => {
            let kron = dense.kronecker(&dense);
            let lhs = t.adjoint() * kron * &t;
            let phi1 = spin_rep_su2(SpinLabel::new(2)?, a)?;
            let mut rhs = CMat::zeros(4, 4);
            rhs[(0, 0)] = c(1.0, 0.0);
            rhs.view_mut((1, 1), (3, 3)).copy_from(&phi1);
            Ok(crate::linalg::max_abs_diff(&lhs, &rhs))
        }
        Fold::Three => {
            let kron = dense.kronecker(&dense).kronecker(&dense);
            let lhs = t.adjoint() * kron * &t;
            let phi32 = spin_rep_su2(SpinLabel::new(3)?, a)?;
            let mut rhs = CMat::zeros(8, 8);
            rhs.view_mut((0, 0), (2, 2)).copy_from(&dense);
            rhs.view_mut((2, 2), (2, 2)).copy_from(&dense);
            rhs.view_mut((4, 4), (4, 4)).copy_from(&phi32);
            Ok(crate::linalg::max_abs_diff(&lhs, &rhs))
        }
    }
}

/// Band-restricted residual of T†(V⊗V)T − diag(1, Φ₁(V)) where V⊗V is the
/// blockwise tensor square of the chart entries (X₀, −Y₀†, Y₀, X₋₁). The
/// classical decomposition identity fails here: the residual is genuinely
/// bounded away from zero, quantifying the non-commutative obstruction.
pub fn nc_tensor_obstruction(model: &DetunedModel, band: usize) -> f64 {
    let x0 = x_op(model, 0);
    let x1 = x_op(model, 1);
    let y0 = y_op(model, 0);
    let entries: [[CMat; 2]; 2] = [
        [x0.matrix().clone(), y0.adjoint().matrix().map(|v| -v)],
        [y0.matrix().clone(), x1.matrix().clone()],
    ];
    let dim = model.dim();

    // blockwise Kronecker square: block ((i,k),(j,l)) = V[i][j]·V[k][l]
    let mut grid: Vec<Vec<CMat>> = Vec::with_capacity(4);
    for i in 0..2 {
        for k in 0..2 {
            let mut row = Vec::with_capacity(4);
            for j in 0..2 {
                for l in 0..2 {
                    row.push(&entries[i][j] * &entries[k][l]);
                }
            }
            grid.push(row);
        }
    }
    let w = BlockOperator::from_blocks(grid).expect("4x4 grid is consistent");

    // scalar congruence by the real basis-change matrix
    let t = clebsch_t(Fold::Two);
    let mut out_grid: Vec<Vec<CMat>> = vec![vec![CMat::zeros(dim, dim); 4]; 4];
    for r in 0..4 {
        for cc in 0..4 {
            let mut acc = CMat::zeros(dim, dim);
            for p in 0..4 {
                for q in 0..4 {
                    let weight = (t[(p, r)].conj() * t[(q, cc)]).re;
                    if weight != 0.0 {
                        acc += w.block(p, q).map(|v| v * c(weight, 0.0));
                    }
                }
            }
            out_grid[r][cc] = acc;
        }
    }
    let transformed = BlockOperator::from_blocks(out_grid).expect("4x4 grid");

    let phi1 = nc_phi_one(model);
    let mut target_grid: Vec<Vec<CMat>> = vec![vec![CMat::zeros(dim, dim); 4]; 4];
    target_grid[0][0] = CMat::identity(dim, dim);
    for i in 0..3 {
        for j in 0..3 {
            target_grid[i + 1][j + 1] = phi1.block(i, j).clone();
        }
    }
    let target = BlockOperator::from_blocks(target_grid).expect("4x4 grid");

    transformed
        .residual_windowed(&target, |_| (2, dim - band), |_| (2, dim - band))
        .unwrap()
}

/// Weighted-moment integral of the compact inner product:
/// (2(2j+1)/2π) ∫ z^k z̄^l (1+|z|²)^{−(2j+2)} d²z = δ_{kl}/C(2j,k).
/// The angular integral vanishes identically for k ≠ l; only the radial
/// part is quadratured.
pub fn compact_moment(two_j: u32, k: usize, l: usize, config: &QuadratureConfig) -> Result<C64> {
    if k != l {
        return Ok(c(0.0, 0.0));
    }
    if k > two_j as usize {
        return Err(Error::DegreeTooHigh { deg: k, two_j });
    }
    let exponent = two_j as i32 + 2;
    let value = quad::integrate_half_line(|r| r.powi(k as i32) / (1.0 + r).powi(exponent), config)?;
    Ok(c((two_j as f64 + 1.0) * value, 0.0))
}

/// Weighted-moment integral of the non-compact inner product:
/// (2(2j−1)/2π) ∫_D (1−|z|²)^{2j−2} z^k z̄^l d²z = δ_{kl}·k!/(2j)ₖ.
pub fn noncompact_moment(two_j: u32, k: usize, l: usize, config: &QuadratureConfig) -> Result<C64> {
    if two_j < 2 {
        return Err(Error::InvalidParameter(
            "non-compact moments need spin at least 1".into(),
        ));
    }
    if k != l {
        return Ok(c(0.0, 0.0));
    }
    let p = two_j as f64 - 2.0;
    let value = quad::integrate(|r| (1.0 - r).powf(p) * r.powi(k as i32), 0.0, 1.0, config)?;
    Ok(c((two_j as f64 - 1.0) * value, 0.0))
}

/// Coefficient vector of a polynomial; the basis convention depends on the
/// inner-product kind (orthonormal √C basis for compact, monomials for
/// non-compact).
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    pub coeffs: Vec<C64>,
}

impl PolynomialCoeffs {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerProductKind {
    Compact,
    Noncompact,
}

/// Weighted coefficient inner product ⟨f|g⟩: Σ aₖ b̄ₖ in the compact
/// orthonormal basis, Σ n!/(2j)ₙ aₙ b̄ₙ on non-compact monomials.
pub fn inner_product(
    f: &PolynomialCoeffs,
    g: &PolynomialCoeffs,
    two_j: u32,
    kind: InnerProductKind,
) -> Result<C64> {
    match kind {
        InnerProductKind::Compact => {
            let deg = f.degree().max(g.degree());
            if deg > two_j as usize {
                return Err(Error::DegreeTooHigh { deg, two_j });
            }
            let mut acc = c(0.0, 0.0);
            for (a, b) in f.coeffs.iter().zip(g.coeffs.iter()) {
                acc += a * b.conj();
            }
            Ok(acc)
        }
        InnerProductKind::Noncompact => {
            if two_j < 2 {
                return Err(Error::InvalidParameter(
                    "non-compact inner product needs spin at least 1".into(),
                ));
            }
            let two_j_f = two_j as f64;
            let mut weight = 1.0f64; // n!/(2j)_n
            let mut acc = c(0.0, 0.0);
            for (n, (a, b)) in f.coeffs.iter().zip(g.coeffs.iter()).enumerate() {
                acc += a * b.conj() * c(weight, 0.0);
                weight *= (n as f64 + 1.0) / (two_j_f + n as f64);
            }
            Ok(acc)
        }
    }
}

/// Same weighted sum, cross-checked against the quadrature moments; returns
/// (value, |sum − quadrature| residual).
pub fn inner_product_checked(
    f: &PolynomialCoeffs,
    g: &PolynomialCoeffs,
    two_j: u32,
    kind: InnerProductKind,
    config: &QuadratureConfig,
) -> Result<(C64, f64)> {
    let sum = inner_product(f, g, two_j, kind)?;
    let mut quad_value = c(0.0, 0.0);
    for (k, a) in f.coeffs.iter().enumerate() {
        for (l, b) in g.coeffs.iter().enumerate() {
            if k != l {
                continue; // moments vanish off the diagonal
            }
            let moment = match kind {
                InnerProductKind::Compact => {
                    // convert from the orthonormal basis to monomials
                    let wk = binomial(two_j as usize, k);
                    compact_moment(two_j, k, l, config)? * c(wk, 0.0)
                }
                InnerProductKind::Noncompact => noncompact_moment(two_j, k, l, config)?,
            };
            quad_value += a * b.conj() * moment;
        }
    }
    Ok((sum, (sum - quad_value).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{group_exponential, Algebra};
    use crate::fock::FockSpace;
    use crate::linalg::max_abs_diff;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model(theta: f64, dim: usize) -> DetunedModel {
        DetunedModel::new(theta, FockSpace::new(dim).unwrap()).unwrap()
    }

    fn random_su2(rng: &mut ChaCha8Rng) -> M2 {
        group_exponential(
            [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ],
            Algebra::Su2,
        )
    }

    /// Closed-form spin-1 matrix used as an independent oracle.
    fn phi1_closed(a: &M2) -> CMat {
        let (al, be) = (a.m11, a.m21);
        let s2 = c(2f64.sqrt(), 0.0);
        let d = al.norm_sqr() - be.norm_sqr();
        CMat::from_row_slice(
            3,
            3,
            &[
                al * al,
                -s2 * al * be.conj(),
                be.conj() * be.conj(),
                s2 * al * be,
                c(d, 0.0),
                -s2 * al.conj() * be.conj(),
                be * be,
                s2 * al.conj() * be,
                al.conj() * al.conj(),
            ],
        )
    }

    /// Closed-form spin-3/2 matrix used as an independent oracle.
    fn phi32_closed(a: &M2) -> CMat {
        let (al, be) = (a.m11, a.m21);
        let s3 = c(3f64.sqrt(), 0.0);
        let (aa, bb) = (al.norm_sqr(), be.norm_sqr());
        let (alc, bec) = (al.conj(), be.conj());
        CMat::from_row_slice(
            4,
            4,
            &[
                al * al * al,
                -s3 * al * al * bec,
                s3 * al * bec * bec,
                -bec * bec * bec,
                s3 * al * al * be,
                al * c(aa - 2.0 * bb, 0.0),
                -bec * c(2.0 * aa - bb, 0.0),
                s3 * alc * bec * bec,
                s3 * al * be * be,
                be * c(2.0 * aa - bb, 0.0),
                alc * c(aa - 2.0 * bb, 0.0),
                -s3 * alc * alc * bec,
                be * be * be,
                s3 * alc * be * be,
                s3 * alc * alc * be,
                alc * alc * alc,
            ],
        )
    }

    #[test]
    fn spin_half_is_the_element_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_su2(&mut rng);
            let rep = spin_rep_su2(SpinLabel::new(1).unwrap(), &a).unwrap();
            assert!(max_abs_diff(&rep, &m2_to_dense(&a)) < 1e-13);
        }
    }

    #[test]
    fn spin_one_and_three_half_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_su2(&mut rng);
            let rep1 = spin_rep_su2(SpinLabel::new(2).unwrap(), &a).unwrap();
            assert!(max_abs_diff(&rep1, &phi1_closed(&a)) < 1e-12);
            let rep32 = spin_rep_su2(SpinLabel::new(3).unwrap(), &a).unwrap();
            assert!(max_abs_diff(&rep32, &phi32_closed(&a)) < 1e-12);
        }
    }

    #[test]
    fn spin_rep_homomorphism_unitarity_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for two_j in [1u32, 2, 3, 4, 5] {
            let label = SpinLabel::new(two_j).unwrap();
            for _ in 0..20 {
                let a = random_su2(&mut rng);
                let b = random_su2(&mut rng);
                let ra = spin_rep_su2(label, &a).unwrap();
                let rb = spin_rep_su2(label, &b).unwrap();
                let rab = spin_rep_su2(label, &(a * b)).unwrap();
                assert!(max_abs_diff(&rab, &(&ra * &rb)) < 1e-10);

                let dim = label.dim();
                let gram = ra.adjoint() * &ra;
                assert!(max_abs_diff(&gram, &CMat::identity(dim, dim)) < 1e-10);
                assert!((ra.determinant() - c(1.0, 0.0)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn spin_rep_rejects_non_group_input() {
        let bad = M2::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!(matches!(
            spin_rep_su2(SpinLabel::new(2).unwrap(), &bad),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn nc_phi_one_unitary_and_first_column() {
        for theta in [1.0, 2.0] {
            let m = model(theta, 48);
            let phi = nc_phi_one(&m);
            let gram = phi.adjoint().checked_mul(&phi).unwrap();
            let id = BlockOperator::identity(&[48, 48, 48]);
            let res = gram
                .residual_windowed(&id, |_| (2, 46), |_| (2, 46))
                .unwrap();
            assert!(res < 1e-9, "theta {theta}: unitarity residual {res}");

            let col = crate::veronese::veronese_column(&m, 2).unwrap();
            for k in 0..3 {
                let r = crate::linalg::max_abs_diff(phi.block(k, 0), col.entry(k).matrix());
                assert!(r < 1e-12, "entry {k}: {r}");
            }
        }
    }

    #[test]
    fn nc_phi_one_projector_identity() {
        let m = model(1.0, 48);
        let phi = nc_phi_one(&m);
        let sel = BlockOperator::block_diagonal(&[
            CMat::identity(48, 48),
            CMat::zeros(48, 48),
            CMat::zeros(48, 48),
        ]);
        let conj = phi
            .checked_mul(&sel)
            .unwrap()
            .checked_mul(&phi.adjoint())
            .unwrap();
        let p2 = crate::veronese::veronese_projector(&m, 2).unwrap();
        let res = conj
            .residual_windowed(&p2, |_| (2, 46), |_| (2, 46))
            .unwrap();
        assert!(res < 1e-9, "residual {res}");
    }

    #[test]
    fn nc_phi_three_half_unitary_and_first_column() {
        for theta in [1.0, 2.0] {
            let m = model(theta, 64);
            let phi = nc_phi_three_half(&m);
            let gram = phi.adjoint().checked_mul(&phi).unwrap();
            let id = BlockOperator::identity(&[64, 64, 64, 64]);
            let res = gram
                .residual_windowed(&id, |_| (3, 61), |_| (3, 61))
                .unwrap();
            assert!(res < 1e-9, "theta {theta}: unitarity residual {res}");

            let col = crate::veronese::veronese_column(&m, 3).unwrap();
            for k in 0..4 {
                let r = crate::linalg::max_abs_diff(phi.block(k, 0), col.entry(k).matrix());
                assert!(r < 1e-12, "entry {k}: {r}");
            }

            let sel = BlockOperator::block_diagonal(&[
                CMat::identity(64, 64),
                CMat::zeros(64, 64),
                CMat::zeros(64, 64),
                CMat::zeros(64, 64),
            ]);
            let conj = phi
                .checked_mul(&sel)
                .unwrap()
                .checked_mul(&phi.adjoint())
                .unwrap();
            let p3 = crate::veronese::veronese_projector(&m, 3).unwrap();
            let res = conj
                .residual_windowed(&p3, |_| (3, 61), |_| (3, 61))
                .unwrap();
            assert!(res < 1e-9, "projector residual {res}");
        }
    }

    #[test]
    fn su11_identity_and_first_column() {
        let rep = su11_rep(2, &M2::identity(), 16).unwrap();
        assert!(max_abs_diff(&rep, &CMat::identity(16, 16)) < 1e-13);

        // column 0 against the explicit coefficient sequence
        let b = group_exponential([0.4, -0.3, 0.2], Algebra::Su11);
        let two_j = 2u32;
        let rep = su11_rep(two_j, &b, 32).unwrap();
        let (alpha, beta) = (b.m11, -b.m21);
        let mut weight = 1.0f64;
        for n in 0..32usize {
            let expected = c((-1.0f64).powi(n as i32) * weight.sqrt(), 0.0)
                * beta.powu(n as u32)
                * alpha.powf(-(two_j as f64 + n as f64));
            assert!(
                (rep[(n, 0)] - expected).norm() < 1e-12,
                "row {n}: {} vs {expected}",
                rep[(n, 0)]
            );
            weight *= (two_j as f64 + n as f64) / (n as f64 + 1.0);
        }
    }

    #[test]
    fn su11_column_norms_converge() {
        // hyperbolic rotation with |β/α| = tanh(r)
        let r = 0.5f64;
        let b = M2::new(
            c(r.cosh(), 0.0),
            c(-r.sinh(), 0.0),
            c(-r.sinh(), 0.0),
            c(r.cosh(), 0.0),
        );
        let rep = su11_rep(2, &b, 60).unwrap();
        let norm0: f64 = (0..60).map(|m| rep[(m, 0)].norm_sqr()).sum();
        assert!((norm0 - 1.0).abs() < 1e-8, "norm {norm0}");

        // doubling the cutoff shrinks the defect at the geometric rate
        let defect = |cutoff: usize, k: usize| -> f64 {
            let rep = su11_rep(2, &b, cutoff).unwrap();
            let n: f64 = (0..cutoff).map(|m| rep[(m, k)].norm_sqr()).sum();
            (n - 1.0).abs()
        };
        // doubling the cutoff at least squares the defect (modulo fp floor)
        for k in [0usize, 2, 5] {
            let d1 = defect(8, k);
            let d2 = defect(16, k);
            assert!(
                d2 <= (d1 * d1).max(1e-14),
                "k {k}: defect {d1} -> {d2} not fast enough"
            );
        }

        assert_eq!(su11_auto_cutoff(2, &b, 1e-8, 4096).unwrap(), 64);
    }

    #[test]
    fn su11_rejects_non_group_input() {
        let bad = M2::new(c(1.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0));
        assert!(matches!(su11_rep(2, &bad, 16), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn su11_columns_orthonormal_in_weighted_product() {
        let b = group_exponential([0.2, 0.5, -0.1], Algebra::Su11);
        let cutoff = 96;
        let rep = su11_rep(2, &b, cutoff).unwrap();
        for k in 0..4usize {
            for l in 0..4usize {
                let ip: C64 = (0..cutoff).map(|m| rep[(m, k)] * rep[(m, l)].conj()).sum();
                let target = if k == l { 1.0 } else { 0.0 };
                assert!((ip - c(target, 0.0)).norm() < 1e-8, "({k},{l}): {ip}");
            }
        }
    }

    #[test]
    fn clebsch_matrices_are_orthogonal() {
        for fold in [Fold::Two, Fold::Three] {
            let t = clebsch_t(fold);
            let dim = t.nrows();
            let gram = t.adjoint() * &t;
            assert!(max_abs_diff(&gram, &CMat::identity(dim, dim)) < 1e-14);
        }
        let t = clebsch_t(Fold::Two);
        let h = 0.5f64.sqrt();
        for (j, expect) in [(0usize, h), (1, 0.0), (2, h), (3, 0.0)] {
            assert!((t[(1, j)].re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn tensor_decomposition_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        assert!(tensor_decomposition_su2(&M2::identity(), Fold::Two).unwrap() < 1e-14);
        for _ in 0..10 {
            let a = random_su2(&mut rng);
            assert!(tensor_decomposition_su2(&a, Fold::Two).unwrap() < 1e-12);
            assert!(tensor_decomposition_su2(&a, Fold::Three).unwrap() < 1e-12);
        }
    }

    #[test]
    fn obstruction_is_nonzero_but_classical_limit_vanishes() {
        let m = model(1.0, 32);
        let res = nc_tensor_obstruction(&m, 2);
        assert!(res > 1e-6, "obstruction residual {res} unexpectedly small");

        // near-classical detuning shrinks but does not remove it
        let m10 = model(10.0, 32);
        let res10 = nc_tensor_obstruction(&m10, 2);
        assert!(res10 > 1e-6);
        assert!(res10 < res);

        // with commuting scalar entries the identity is restored
        let p = crate::classical::BerryPoint::new(0.7, -0.3, 1.1).unwrap();
        let a = crate::classical::berry_diagonalizer(p, crate::classical::Chart::I).unwrap();
        assert!(tensor_decomposition_su2(&a, Fold::Two).unwrap() < 1e-12);
    }

    #[test]
    fn obstruction_stable_under_cutoff_doubling() {
        let r32 = nc_tensor_obstruction(&model(1.0, 32), 2);
        let r64 = nc_tensor_obstruction(&model(1.0, 64), 2);
        assert!(
            (r32 - r64).abs() < 0.1 * r32,
            "obstruction not stable: {r32} vs {r64}"
        );
    }

    #[test]
    fn compact_moments() {
        let config = QuadratureConfig::with_tol(1e-10);
        // j=1/2, k=l=0: normalization
        let m = compact_moment(1, 0, 0, &config).unwrap();
        assert!((m.re - 1.0).abs() < 1e-8);
        // j=1, k=l=1 → 1/C(2,1) = 1/2
        let m = compact_moment(2, 1, 1, &config).unwrap();
        assert!((m.re - 0.5).abs() < 1e-8);
        // off-diagonal vanishes identically
        let m = compact_moment(2, 1, 0, &config).unwrap();
        assert_eq!(m, c(0.0, 0.0));
        // full table
        for two_j in [2u32, 4, 6] {
            for k in 0..=(two_j as usize).min(6) {
                let m = compact_moment(two_j, k, k, &config).unwrap();
                let expect = 1.0 / binomial(two_j as usize, k);
                assert!((m.re - expect).abs() < 1e-6, "2j={two_j} k={k}: {}", m.re);
            }
        }
    }

    #[test]
    fn noncompact_moments() {
        let config = QuadratureConfig::with_tol(1e-10);
        let m = noncompact_moment(2, 0, 0, &config).unwrap();
        assert!((m.re - 1.0).abs() < 1e-8);
        // j=1, k=l=2 → 2!/((2)(3)) = 1/3
        let m = noncompact_moment(2, 2, 2, &config).unwrap();
        assert!((m.re - 1.0 / 3.0).abs() < 1e-8);
        // j=3/2, k=l=1 → 1/3
        let m = noncompact_moment(3, 1, 1, &config).unwrap();
        assert!((m.re - 1.0 / 3.0).abs() < 1e-8);
        // full table: k!/(2j)_k
        for two_j in [2u32, 3, 5, 6] {
            for k in 0..=6usize {
                let m = noncompact_moment(two_j, k, k, &config).unwrap();
                let mut expect = 1.0;
                for i in 0..k {
                    expect *= (i as f64 + 1.0) / (two_j as f64 + i as f64);
                }
                assert!(
                    (m.re - expect).abs() < 1e-6,
                    "2j={two_j} k={k}: {} vs {expect}",
                    m.re
                );
            }
        }
    }

    #[test]
    fn inner_product_values() {
        let config = QuadratureConfig::with_tol(1e-10);
        let one = PolynomialCoeffs::new(vec![c(1.0, 0.0)]);
        for kind in [InnerProductKind::Compact, InnerProductKind::Noncompact] {
            let (v, xres) = inner_product_checked(&one, &one, 2, kind, &config).unwrap();
            assert!((v.re - 1.0).abs() < 1e-10, "{kind:?}");
            assert!(xres < 1e-6, "{kind:?}: cross-check {xres}");
        }

        // compact, j=1: f = √2 z is the orthonormal basis vector e₁
        let e1 = PolynomialCoeffs::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let (v, xres) =
            inner_product_checked(&e1, &e1, 2, InnerProductKind::Compact, &config).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
        assert!(xres < 1e-6);

        // noncompact, j=1: monomial z has norm² = 1!/(2)₁ = 1/2
        let z = PolynomialCoeffs::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let (v, xres) =
            inner_product_checked(&z, &z, 2, InnerProductKind::Noncompact, &config).unwrap();
        assert!((v.re - 0.5).abs() < 1e-10);
        assert!(xres < 1e-6);

        // degree guard
        let cubic = PolynomialCoeffs::new(vec![c(0.0, 0.0); 4]);
        assert!(matches!(
            inner_product(&cubic, &cubic, 2, InnerProductKind::Compact),
            Err(Error::DegreeTooHigh { .. })
        ));
    }
}

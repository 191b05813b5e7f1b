//! Dense complex kernels: matrix exponentials and eigenvalue helpers.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub type CMat = DMatrix<C64>;

/// Max absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Max absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Hermiticity defect ‖M − M†‖_max.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

fn one_norm(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Padé(13) coefficients from Higham's scaling-and-squaring method.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// exp(M) by scaling-and-squaring with a Padé(13) approximant.
///
/// Makes no structural assumption on `M`; this is the series route used for
/// the non-Hermitian evolution oracles.
pub fn expm_pade(m: &CMat) -> CMat {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "expm_pade requires a square matrix");
    let theta13 = 5.371920351148152;
    let norm = one_norm(m);
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil() as u32
    } else {
        0
    };
    let a = m.map(|v| v / C64::new(2f64.powi(s as i32), 0.0));

    let id = CMat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let c = |k: usize| C64::new(PADE13[k], 0.0);

    let u_inner = &a6 * (&a6 * c(13) + &a4 * c(11) + &a2 * c(9))
        + &a6 * c(7)
        + &a4 * c(5)
        + &a2 * c(3)
        + &id * c(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * c(12) + &a4 * c(10) + &a2 * c(8))
        + &a6 * c(6)
        + &a4 * c(4)
        + &a2 * c(2)
        + &id * c(0);

    let denom = &v - &u;
    let numer = &v + &u;
    let mut r = denom
        .lu()
        .solve(&numer)
        .expect("Pade denominator is singular");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending with
/// matching orthonormal eigenvector columns.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vecs.set_column(c, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// exp(factor · M) for Hermitian `M` via spectral factorization.
pub fn expm_hermitian(m: &CMat, factor: C64) -> CMat {
    let (vals, vecs) = eigh(m);
    let phases = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| (factor * l).exp()),
    ));
    &vecs * phases * vecs.adjoint()
}

/// All eigenvalues of a general complex matrix (Schur route).
pub fn eigvals(m: &CMat) -> Vec<C64> {
    m.clone()
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .cloned()
        .collect()
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    let mut vals: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = CMat::zeros(3, 3);
        assert!(max_abs_diff(&expm_pade(&z), &CMat::identity(3, 3)) < 1e-15);
    }

    #[test]
    fn expm_matches_2x2_closed_form() {
        // exp(i t sigma_1) = cos t + i sin t sigma_1
        let t = 1.3;
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, t), c(0.0, t), c(0.0, 0.0)]);
        let expected = CMat::from_row_slice(
            2,
            2,
            &[
                c(t.cos(), 0.0),
                c(0.0, t.sin()),
                c(0.0, t.sin()),
                c(t.cos(), 0.0),
            ],
        );
        assert!(max_abs_diff(&expm_pade(&m), &expected) < 1e-14);
    }

    #[test]
    fn hermitian_and_pade_routes_agree() {
        let m = CMat::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(0.5, 0.2),
                c(0.0, -0.7),
                c(0.5, -0.2),
                c(-2.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.7),
                c(1.0, 0.0),
                c(0.3, 0.0),
            ],
        );
        assert!(hermiticity_defect(&m) < 1e-15);
        let a = expm_hermitian(&m, c(0.0, -2.1));
        let b = expm_pade(&m.map(|v| v * c(0.0, -2.1)));
        assert!(max_abs_diff(&a, &b) < 1e-12);
    }

    #[test]
    fn eigvals_of_rotation_generator() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0), c(-1.0, 0.0)],
        );
        let mut im: Vec<f64> = eigvals(&m).iter().map(|v| v.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 3f64.sqrt()).abs() < 1e-12);
        assert!((im[1] - 3f64.sqrt()).abs() < 1e-12);
    }
}

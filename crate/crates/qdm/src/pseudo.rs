//! The pseudo-Hermitian SU(1,1) quantum model on its admissible subspace.
//!
//! S(N+1) = √(θ² − N − 1) is real only on 𝓕_n = span{|0⟩ … |n−1⟩} with
//! n < θ² ≤ n+1, so the model lives on 𝓕_n ⊕ 𝓕_{n+1} with rectangular
//! ladder blocks. The block structure closes exactly: a maps 𝓕_{n+1} into
//! 𝓕_n and a† maps 𝓕_n into 𝓕_{n+1} with nothing cut off, so every
//! identity in this module holds on the full finite space without a
//! validity band.

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::fock::{FockOperator, FockSpace};
use crate::jc::JCParams;
use crate::linalg::CMat;
use num_complex::Complex64 as C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The unique n ≥ 1 with n < θ² ≤ n+1.
pub fn admissible_level(theta: f64) -> Result<usize> {
    if theta <= 0.0 || theta * theta <= 1.0 {
        return Err(Error::NoSubspace);
    }
    let t2 = theta * theta;
    // the boundary θ² = n+1 is admitted, so ceil(θ²) − 1 covers both cases
    let n = t2.ceil() as usize - 1;
    debug_assert!((n as f64) < t2 && t2 <= (n + 1) as f64);
    Ok(n)
}

/// Detuning with θ² > 1 plus the derived admissible level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoModel {
    theta: f64,
    level: usize,
}

impl PseudoModel {
    pub fn new(theta: f64) -> Result<Self> {
        let level = admissible_level(theta)?;
        Ok(Self { theta, level })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Component dimensions (dim 𝓕_n, dim 𝓕_{n+1}).
    pub fn dims(&self) -> (usize, usize) {
        (self.level, self.level + 1)
    }
}

/// S(u) = √(θ² − u), with the u = 0 value taken as θ exactly.
pub(crate) fn s_val(theta: f64, u: f64) -> f64 {
    if u == 0.0 {
        theta
    } else {
        (theta * theta - u).sqrt()
    }
}

/// Diagonal matrix with entries S(m + shift) on `dim` indices.
pub(crate) fn s_diag(theta: f64, shift: i64, dim: usize) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    for k in 0..dim {
        m[(k, k)] = c(s_val(theta, (k as i64 + shift) as f64), 0.0);
    }
    m
}

/// Rectangular ladder pair: a maps 𝓕_{n+1} → 𝓕_n, a† maps 𝓕_n → 𝓕_{n+1}.
pub(crate) fn ladder_rect(n: usize) -> (CMat, CMat) {
    let mut a = CMat::zeros(n, n + 1);
    for k in 1..=n {
        a[(k - 1, k)] = c((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    (a, ad)
}

/// Diagonal S(N + shift) as a Fock operator on a given component dimension.
/// All entries are strictly positive on the admissible components, so no
/// clamping occurs there.
pub fn s_op(model: &PseudoModel, shift: i64, component_dim: usize) -> Result<FockOperator> {
    let (n, np1) = model.dims();
    if component_dim != n && component_dim != np1 {
        return Err(Error::InvalidParameter(format!(
            "component dim {component_dim} not in {{{n}, {np1}}}"
        )));
    }
    let space = FockSpace::new(component_dim)?;
    let theta = model.theta;
    Ok(crate::fock::diag_fn(space, move |u| s_val(theta, u), shift))
}

/// Blockwise signature 𝐉 = diag(1, −1) on the admissible dims.
pub fn signature_j(model: &PseudoModel) -> BlockOperator {
    let (n, np1) = model.dims();
    BlockOperator::block_diagonal(&[CMat::identity(n, n), CMat::identity(np1, np1).map(|v| -v)])
}

/// H_pJC = [[θ, a], [−a†, −θ]] on 𝓕_n ⊕ 𝓕_{n+1}; pseudo-Hermitian:
/// 𝐉 H 𝐉 = H†.
pub fn h_pjc(model: &PseudoModel) -> BlockOperator {
    let (n, np1) = model.dims();
    let (a, ad) = ladder_rect(n);
    let th = model.theta;
    BlockOperator::from_blocks(vec![
        vec![CMat::identity(n, n).map(|v| v * c(th, 0.0)), a],
        vec![
            ad.map(|v| -v),
            CMat::identity(np1, np1).map(|v| v * c(-th, 0.0)),
        ],
    ])
    .expect("pseudo grid is consistent")
}

fn v_normalizer(model: &PseudoModel, shift: i64, dim: usize) -> CMat {
    let th = model.theta;
    let mut m = CMat::zeros(dim, dim);
    for k in 0..dim {
        let s = s_val(th, (k as i64 + shift) as f64);
        m[(k, k)] = c(1.0 / (2.0 * s * (s + th)).sqrt(), 0.0);
    }
    m
}

fn v_core(model: &PseudoModel) -> BlockOperator {
    let (n, np1) = model.dims();
    let (a, ad) = ladder_rect(n);
    let th = c(model.theta, 0.0);
    let s1 = s_diag(model.theta, 1, n) + CMat::identity(n, n) * th;
    let s0 = s_diag(model.theta, 0, np1) + CMat::identity(np1, np1) * th;
    BlockOperator::from_blocks(vec![vec![s1, a.map(|v| -v)], vec![ad.map(|v| -v), s0]])
        .expect("pseudo grid is consistent")
}

/// Pseudo-unitary diagonalizer V with V† 𝐉 V = 𝐉, hence V⁻¹ = 𝐉 V† 𝐉.
pub fn v_operator(model: &PseudoModel) -> BlockOperator {
    let (n, np1) = model.dims();
    let d =
        BlockOperator::block_diagonal(&[v_normalizer(model, 1, n), v_normalizer(model, 0, np1)]);
    d.checked_mul(&v_core(model)).unwrap()
}

/// Max difference between the two factor orderings of V.
pub fn v_ordering_residual(model: &PseudoModel) -> f64 {
    let (n, np1) = model.dims();
    let left = v_operator(model);
    // the same normalizer functions reappear on the right by the shift rule
    let d_right =
        BlockOperator::block_diagonal(&[v_normalizer(model, 1, n), v_normalizer(model, 0, np1)]);
    let right = v_core(model).checked_mul(&d_right).unwrap();
    left.interior_residual(&right, 0).unwrap()
}

/// V⁻¹ computed from the pseudo-unitarity relation.
pub fn v_inverse(model: &PseudoModel) -> BlockOperator {
    let j = signature_j(model);
    let v = v_operator(model);
    j.checked_mul(&v.adjoint())
        .unwrap()
        .checked_mul(&j)
        .unwrap()
}

/// Residual of H_pJC − V diag(S(N+1), −S(N)) V⁻¹ on the full finite space.
pub fn pseudo_factorization(model: &PseudoModel) -> f64 {
    let (n, np1) = model.dims();
    let d = BlockOperator::block_diagonal(&[
        s_diag(model.theta, 1, n),
        s_diag(model.theta, 0, np1).map(|v| -v),
    ]);
    let recon = v_operator(model)
        .checked_mul(&d)
        .unwrap()
        .checked_mul(&v_inverse(model))
        .unwrap();
    recon.interior_residual(&h_pjc(model), 0).unwrap()
}

/// Q_pJC = V diag(1, 0) V⁻¹ in closed form:
/// diag(1/2S(N+1), 1/2S(N)) · [[S(N+1)+θ, a], [−a†, S(N)−θ]].
pub fn projector_q_pjc(model: &PseudoModel) -> BlockOperator {
    let (n, np1) = model.dims();
    let (a, ad) = ladder_rect(n);
    let th = c(model.theta, 0.0);
    let mut d1 = CMat::zeros(n, n);
    for k in 0..n {
        d1[(k, k)] = c(0.5 / s_val(model.theta, k as f64 + 1.0), 0.0);
    }
    let mut d0 = CMat::zeros(np1, np1);
    for k in 0..np1 {
        d0[(k, k)] = c(0.5 / s_val(model.theta, k as f64), 0.0);
    }
    let d = BlockOperator::block_diagonal(&[d1, d0]);
    let k_mat = BlockOperator::from_blocks(vec![
        vec![s_diag(model.theta, 1, n) + CMat::identity(n, n) * th, a],
        vec![
            ad.map(|v| -v),
            s_diag(model.theta, 0, np1) - CMat::identity(np1, np1) * th,
        ],
    ])
    .expect("pseudo grid is consistent");
    d.checked_mul(&k_mat).unwrap()
}

/// Residual of the pseudo spectral decomposition
/// H_pJC = diag(S(N+1), S(N)) Q − diag(S(N+1), S(N)) (1 − Q).
pub fn spectral_residual_pseudo(model: &PseudoModel) -> f64 {
    let (n, np1) = model.dims();
    let d =
        BlockOperator::block_diagonal(&[s_diag(model.theta, 1, n), s_diag(model.theta, 0, np1)]);
    let q = projector_q_pjc(model);
    let id = BlockOperator::identity(&[n, np1]);
    let assembled = d
        .checked_mul(&q)
        .unwrap()
        .checked_sub(&d.checked_mul(&id.checked_sub(&q).unwrap()).unwrap())
        .unwrap();
    assembled.interior_residual(&h_pjc(model), 0).unwrap()
}

/// Closed-form pseudo evolution e^{−i gt H_pJC}; not unitary, but
/// E† 𝐉 E = 𝐉.
pub fn evolution_closed_pseudo(model: &PseudoModel, gt: f64) -> BlockOperator {
    let (n, np1) = model.dims();
    let th = model.theta;
    let (a, ad) = ladder_rect(n);

    let mut upper = CMat::zeros(n, n);
    let mut sin1 = CMat::zeros(n, n);
    for k in 0..n {
        let s = s_val(th, k as f64 + 1.0);
        upper[(k, k)] = c((gt * s).cos(), -th * (gt * s).sin() / s);
        sin1[(k, k)] = c(0.0, -(gt * s).sin() / s);
    }
    let mut lower = CMat::zeros(np1, np1);
    let mut sin0 = CMat::zeros(np1, np1);
    for k in 0..np1 {
        let s = s_val(th, k as f64);
        lower[(k, k)] = c((gt * s).cos(), th * (gt * s).sin() / s);
        sin0[(k, k)] = c(0.0, (gt * s).sin() / s);
    }
    BlockOperator::from_blocks(vec![vec![upper, sin1 * a], vec![sin0 * ad, lower]])
        .expect("pseudo grid is consistent")
}

/// Constructor for the full pseudo Hamiltonian
/// ω 1⊗a†a + (Δ/2) τ₃⊗1 + g(τ₊⊗a + τ₋⊗a†) on a square truncated space.
/// Only the construction and its pseudo-Hermiticity are claimed here.
pub fn pseudo_full_hamiltonian(params: &JCParams, space: FockSpace) -> BlockOperator {
    let n = crate::fock::number(space);
    let id = FockOperator::identity(space);
    let (a, ad) = (
        crate::fock::annihilation(space),
        crate::fock::creation(space),
    );
    let (w, d, g) = (params.omega, params.delta, params.g);
    BlockOperator::from_fock_2x2(
        &n.scale(c(w, 0.0))
            .checked_add(&id.scale(c(d / 2.0, 0.0)))
            .unwrap(),
        &a.scale(c(g, 0.0)),
        &ad.scale(c(-g, 0.0)),
        &n.scale(c(w, 0.0))
            .checked_sub(&id.scale(c(d / 2.0, 0.0)))
            .unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::reference_exponential;
    use crate::linalg::{eigvals, max_abs, max_abs_diff};

    #[test]
    fn admissible_level_examples() {
        assert_eq!(admissible_level(1.5).unwrap(), 2);
        assert!(matches!(admissible_level(1.0), Err(Error::NoSubspace)));
        assert!(matches!(admissible_level(0.5), Err(Error::NoSubspace)));
        assert!(matches!(admissible_level(-2.0), Err(Error::NoSubspace)));
        // boundary θ² = 3 (as computed in floating point)
        assert_eq!(admissible_level(3f64.sqrt()).unwrap(), 2);
        // exact integer boundary
        assert_eq!(admissible_level(2.0).unwrap(), 3);
    }

    #[test]
    fn admissible_level_monotone_with_unit_jumps() {
        let mut prev = admissible_level(1.05).unwrap();
        let mut theta = 1.05;
        while theta < 6.0 {
            theta += 0.01;
            let n = admissible_level(theta).unwrap();
            assert!(n >= prev);
            assert!(n - prev <= 1, "jump larger than 1 at theta {theta}");
            prev = n;
        }
    }

    #[test]
    fn s_op_entries() {
        let m = PseudoModel::new(1.5).unwrap();
        assert_eq!(m.dims(), (2, 3));
        let s = s_op(&m, 1, 2).unwrap();
        assert!((s.matrix()[(0, 0)].re - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((s.matrix()[(1, 1)].re - 0.25f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.valid_rows(), 2);

        let m2 = PseudoModel::new(2.0).unwrap();
        let s = s_op(&m2, 0, 3).unwrap();
        assert!((s.matrix()[(0, 0)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_blocks_close_exactly() {
        // every column of the rectangular ladder pair carries its full weight
        for n in [1usize, 2, 5, 20] {
            let (a, ad) = ladder_rect(n);
            for col in 0..=n {
                let got: f64 = (0..n).map(|r| a[(r, col)].norm_sqr()).sum();
                assert!((got - col as f64).abs() < 1e-13);
            }
            for col in 0..n {
                let got: f64 = (0..=n).map(|r| ad[(r, col)].norm_sqr()).sum();
                assert!((got - (col as f64 + 1.0)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn h_pjc_dims_and_pseudo_hermiticity() {
        let m = PseudoModel::new(1.5).unwrap();
        let h = h_pjc(&m);
        assert_eq!(h.total_rows(), 5);
        let j = signature_j(&m).to_dense();
        let dense = h.to_dense();
        let defect = max_abs_diff(&(&j * &dense * &j), &dense.adjoint());
        assert!(defect < 1e-14);
    }

    #[test]
    fn h_pjc_spectrum() {
        // ± pairs sqrt(θ²−m−1) plus the unpaired −θ, all real
        let m = PseudoModel::new(2.2).unwrap();
        let th = 2.2;
        let n = m.level();
        let vals = eigvals(&h_pjc(&m).to_dense());
        assert!(vals.iter().all(|v| v.im.abs() < 1e-10));
        let mut re: Vec<f64> = vals.iter().map(|v| v.re).collect();
        re.sort_by(f64::total_cmp);
        let mut expected: Vec<f64> = Vec::new();
        for k in 0..n {
            let e = (th * th - (k + 1) as f64).sqrt();
            expected.push(e);
            expected.push(-e);
        }
        expected.push(-th);
        expected.sort_by(f64::total_cmp);
        assert_eq!(re.len(), expected.len());
        for (v, e) in re.iter().zip(expected.iter()) {
            assert!((v - e).abs() < 1e-10, "{v} vs {e}");
        }
    }

    #[test]
    fn v_pseudo_unitarity() {
        for theta in [1.5, 3.0, 9.5] {
            let m = PseudoModel::new(theta).unwrap();
            let v = v_operator(&m);
            let j = signature_j(&m);
            let rel = v
                .adjoint()
                .checked_mul(&j)
                .unwrap()
                .checked_mul(&v)
                .unwrap();
            let res = rel.interior_residual(&j, 0).unwrap();
            assert!(res < 1e-12, "theta {theta}: residual {res}");

            // V⁻¹ = 𝐉V†𝐉 really inverts V
            let (n, np1) = m.dims();
            let prod = v.checked_mul(&v_inverse(&m)).unwrap();
            let id = BlockOperator::identity(&[n, np1]);
            assert!(prod.interior_residual(&id, 0).unwrap() < 1e-12);
            assert!(v_ordering_residual(&m) < 1e-13);
        }
        // θ = 3 has level 8
        assert_eq!(PseudoModel::new(3.0).unwrap().level(), 8);
    }

    #[test]
    fn factorization_residuals() {
        assert!(pseudo_factorization(&PseudoModel::new(1.5).unwrap()) < 1e-12);
        assert!(pseudo_factorization(&PseudoModel::new(2.2).unwrap()) < 1e-12);
        // conditioning degrades mildly with dimension
        assert!(pseudo_factorization(&PseudoModel::new(9.5).unwrap()) < 1e-11);
    }

    #[test]
    fn projector_relations() {
        for theta in [1.5, 2.2] {
            let m = PseudoModel::new(theta).unwrap();
            let q = projector_q_pjc(&m);
            let qsq = q.checked_mul(&q).unwrap();
            assert!(qsq.interior_residual(&q, 0).unwrap() < 1e-12);

            let j = signature_j(&m).to_dense();
            let dense = q.to_dense();
            assert!(max_abs_diff(&(&j * &dense * &j), &dense.adjoint()) < 1e-12);

            // Q = V diag(1,0) V⁻¹
            let (n, np1) = m.dims();
            let sel = BlockOperator::block_diagonal(&[CMat::identity(n, n), CMat::zeros(np1, np1)]);
            let conj = v_operator(&m)
                .checked_mul(&sel)
                .unwrap()
                .checked_mul(&v_inverse(&m))
                .unwrap();
            assert!(conj.interior_residual(&q, 0).unwrap() < 1e-12);

            assert!(spectral_residual_pseudo(&m) < 1e-12);
        }
    }

    #[test]
    fn evolution_identity_and_oracle() {
        let m = PseudoModel::new(1.5).unwrap();
        let (n, np1) = m.dims();
        let e0 = evolution_closed_pseudo(&m, 0.0);
        let id = BlockOperator::identity(&[n, np1]);
        assert!(e0.interior_residual(&id, 0).unwrap() < 1e-15);

        for gt in [3.7, -1.2, 20.0] {
            let closed = evolution_closed_pseudo(&m, gt);
            let oracle = reference_exponential(&h_pjc(&m), gt, false).unwrap();
            let res = closed.interior_residual(&oracle, 0).unwrap();
            assert!(res < 1e-10, "gt {gt}: residual {res}");
        }
    }

    #[test]
    fn evolution_pseudo_unitary() {
        let m = PseudoModel::new(2.2).unwrap();
        let j = signature_j(&m);
        for gt in [0.5, 5.0, 20.0] {
            let e = evolution_closed_pseudo(&m, gt);
            let rel = e
                .adjoint()
                .checked_mul(&j)
                .unwrap()
                .checked_mul(&e)
                .unwrap();
            let res = rel.interior_residual(&j, 0).unwrap();
            assert!(res < 1e-10, "gt {gt}: residual {res}");
        }
        // pseudo-norm of a state is conserved
        let (n, np1) = m.dims();
        let dim = n + np1;
        let mut v = nalgebra::DVector::<C64>::zeros(dim);
        v[0] = c(0.6, 0.1);
        v[n] = c(0.3, -0.2);
        v[n + 1] = c(0.5, 0.0);
        let jd = j.to_dense();
        let pseudo_norm = |w: &nalgebra::DVector<C64>| (w.adjoint() * &jd * w)[(0, 0)].re;
        let initial = pseudo_norm(&v);
        for gt in [1.0, 4.0, 17.3] {
            let evolved = evolution_closed_pseudo(&m, gt).to_dense() * &v;
            assert!((pseudo_norm(&evolved) - initial).abs() < 1e-9, "gt {gt}");
        }
    }

    #[test]
    fn evolution_group_law() {
        let m = PseudoModel::new(3.1).unwrap();
        for (a, b) in [(0.7, 2.2), (-4.0, 9.0)] {
            let lhs = evolution_closed_pseudo(&m, a)
                .checked_mul(&evolution_closed_pseudo(&m, b))
                .unwrap();
            let rhs = evolution_closed_pseudo(&m, a + b);
            assert!(lhs.interior_residual(&rhs, 0).unwrap() < 1e-9);
        }
    }

    #[test]
    fn full_pseudo_hamiltonian_coupling_free_limit() {
        // as g → 0 only the Hermitian diagonal part survives
        let sp = FockSpace::new(8).unwrap();
        let params = JCParams::new(1.0, 1.2, 1e-12).unwrap();
        let h = pseudo_full_hamiltonian(&params, sp);
        assert!(max_abs(h.block(0, 1)) < 1e-11);
        assert!(max_abs(h.block(1, 0)) < 1e-11);
        for i in 0..2 {
            let b = h.block(i, i);
            assert!(crate::linalg::hermiticity_defect(b) < 1e-14);
            for r in 0..8 {
                for c_ in 0..8 {
                    if r != c_ {
                        assert_eq!(b[(r, c_)], c(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn full_pseudo_hamiltonian_construction() {
        let sp = FockSpace::new(16).unwrap();
        let params = JCParams::new(1.0, 1.2, 0.1).unwrap();
        let h = pseudo_full_hamiltonian(&params, sp);
        let j = BlockOperator::block_diagonal(&[
            CMat::identity(16, 16),
            CMat::identity(16, 16).map(|v| -v),
        ])
        .to_dense();
        let dense = h.to_dense();
        assert!(max_abs_diff(&(&j * &dense * &j), &dense.adjoint()) < 1e-14);

        // difference from the standard model is exactly −2g σ₋ ⊗ a†
        let (std_h, _, _) = crate::jc::full_jc_hamiltonian(&params, sp);
        let diff = h.checked_sub(&std_h).unwrap();
        assert!(max_abs(diff.block(0, 0)) < 1e-15);
        assert!(max_abs(diff.block(0, 1)) < 1e-15);
        assert!(max_abs(diff.block(1, 1)) < 1e-15);
        let expected = crate::fock::creation(sp).scale(c(-2.0 * params.g, 0.0));
        assert!(max_abs_diff(diff.block(1, 0), expected.matrix()) < 1e-15);
    }
}

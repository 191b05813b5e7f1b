//! Classical projective geometry: projector charts on CPⁿ and its
//! pseudo counterpart, the canonical line-bundle connection, its pullback
//! under the degree-n local Veronese map, and the first Chern number.
//!
//! The 2-form normalization is fixed once: (1/2πi) dz̄∧dz = (1/π) dx dy,
//! which reduces every Chern integral to a radial one in u = |z|²; the
//! degree-1 case is the unit integral ∫₀^∞ du/(1+u)² = 1.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::quad::{self, QuadratureConfig};
use crate::veronese::binomial;
use num_complex::Complex64 as C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Chart coordinate on the affine patch of CP¹.
pub type LocalPoint = C64;

/// Rank-one projector of a homogeneous vector: P = |ζ⟩⟨ζ| / ⟨ζ|ζ⟩.
/// Scale invariant: P(λζ) = P(ζ) for λ ≠ 0.
pub fn cp_projector(zeta: &[C64]) -> Result<CMat> {
    let norm_sq: f64 = zeta.iter().map(|v| v.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let n = zeta.len();
    Ok(CMat::from_fn(n, n, |i, j| {
        zeta[i] * zeta[j].conj() / c(norm_sq, 0.0)
    }))
}

/// Signature diag(1, −1, …, (−1)ⁿ) on n+1 scalar entries.
pub fn j_signature(n: usize) -> CMat {
    CMat::from_fn(n + 1, n + 1, |i, j| {
        if i == j {
            c(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Pseudo projector Q = v v† Jₙ of a pseudo-normalized vector
/// (v† Jₙ v = 1): satisfies Q² = Q, Jₙ Q Jₙ = Q†, tr Q = 1.
pub fn cq_projector(v: &[C64]) -> Result<CMat> {
    let n = v.len() - 1;
    let pseudo_norm: f64 = v
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if i % 2 == 0 {
                x.norm_sqr()
            } else {
                -x.norm_sqr()
            }
        })
        .sum();
    if (pseudo_norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotPseudoNormalized(pseudo_norm));
    }
    let col = CMat::from_fn(n + 1, 1, |i, _| v[i]);
    Ok(&col * col.adjoint() * j_signature(n))
}

/// Local Veronese map ψ(z) with entries √C(n,j) z^j for j = 1..n, together
/// with its exact derivative; satisfies 1 + ψ†ψ = (1+|z|²)ⁿ.
pub fn veronese_local(z: LocalPoint, n: usize) -> (Vec<C64>, Vec<C64>) {
    let psi = (1..=n)
        .map(|j| c(binomial(n, j).sqrt(), 0.0) * z.powu(j as u32))
        .collect();
    let dpsi = (1..=n)
        .map(|j| c(j as f64 * binomial(n, j).sqrt(), 0.0) * z.powu(j as u32 - 1))
        .collect();
    (psi, dpsi)
}

/// dz-coefficient of the canonical connection: z̄/(1+|z|²).
pub fn connection_coefficient(z: LocalPoint) -> C64 {
    z.conj() / c(1.0 + z.norm_sqr(), 0.0)
}

/// dz-coefficient of the pulled-back connection
/// (1+ψ†ψ)⁻¹ ψ†(dψ/dz); equals n times the canonical one.
pub fn pullback_connection_coefficient(z: LocalPoint, n: usize) -> C64 {
    let (psi, dpsi) = veronese_local(z, n);
    let gram: f64 = 1.0 + psi.iter().map(|v| v.norm_sqr()).sum::<f64>();
    let overlap: C64 = psi
        .iter()
        .zip(dpsi.iter())
        .map(|(p, dp)| p.conj() * dp)
        .sum();
    overlap / c(gram, 0.0)
}

/// Curvature density of the degree-n bundle against (1/π) dx dy:
/// n/(1+|z|²)².
pub fn curvature_density(z: LocalPoint, n: usize) -> f64 {
    let d = 1.0 + z.norm_sqr();
    n as f64 / (d * d)
}

/// First Chern number (1/2πi) ∫ ℱₙ over the plane, reduced to the radial
/// integral n ∫₀^∞ du/(1+u)²; exact value n.
pub fn chern_number(n: usize, config: &QuadratureConfig) -> Result<f64> {
    let radial = quad::integrate_half_line(|u| 1.0 / ((1.0 + u) * (1.0 + u)), config)?;
    Ok(n as f64 * radial)
}

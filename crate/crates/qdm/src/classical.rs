//! Commutative layer: su(2)/su(1,1) generators, the Berry and pseudo-Berry
//! spin models, chart-wise diagonalizers with Dirac-string enforcement,
//! transition functions and projectors.

use crate::error::{Error, Result};
use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

pub type M2 = Matrix2<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Relative fence around the removed half-lines. The chart domains are open
/// sets; points this close to a string are rejected to avoid catastrophic
/// cancellation in the normalizers.
pub const STRING_FENCE: f64 = 1e-13;

/// Real parameter triple (x, y, z) of the spin models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerryPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BerryPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidParameter("non-finite Berry point".into()));
        }
        Ok(Self { x, y, z })
    }

    pub fn radius(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// z² − x² − y², the squared eigenvalue of the pseudo model (may be ≤ 0).
    pub fn pseudo_radius_sq(&self) -> f64 {
        self.z * self.z - self.x * self.x - self.y * self.y
    }
}

/// Diagonalization chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    I,
    II,
}

/// Pauli matrices (σ₁, σ₂, σ₃, σ₊, σ₋).
pub fn su2_generators() -> (M2, M2, M2, M2, M2) {
    let s1 = M2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    let s2 = M2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0));
    let s3 = M2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
    let sp = M2::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let sm = M2::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    (s1, s2, s3, sp, sm)
}

/// su(1,1) generators (τ₁, τ₂, τ₃, τ₊, τ₋); τ₃ coincides with σ₃.
pub fn su11_generators() -> (M2, M2, M2, M2, M2) {
    let t1 = M2::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
    let t2 = M2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0));
    let t3 = M2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
    let tp = M2::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let tm = M2::new(c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
    (t1, t2, t3, tp, tm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    Su2,
    Su11,
}

/// exp(i Σ xⱼ Gⱼ) for the chosen generator triple.
///
/// K = Σ xⱼ Gⱼ squares to a scalar in both algebras, so the exponential has
/// the closed form cos(w)·1 + i sin(w)/w · K with w² = x₁²+x₂²+x₃² (su(2))
/// or x₃²−x₁²−x₂² (su(1,1), where w may be imaginary).
pub fn group_exponential(coeffs: [f64; 3], algebra: Algebra) -> M2 {
    let [x1, x2, x3] = coeffs;
    let (g1, g2, g3) = match algebra {
        Algebra::Su2 => {
            let (s1, s2, s3, _, _) = su2_generators();
            (s1, s2, s3)
        }
        Algebra::Su11 => {
            let (t1, t2, t3, _, _) = su11_generators();
            (t1, t2, t3)
        }
    };
    let k = g1 * c(x1, 0.0) + g2 * c(x2, 0.0) + g3 * c(x3, 0.0);
    let w_sq = match algebra {
        Algebra::Su2 => x1 * x1 + x2 * x2 + x3 * x3,
        Algebra::Su11 => x3 * x3 - x1 * x1 - x2 * x2,
    };
    let w = c(w_sq, 0.0).sqrt();
    if w.norm() < 1e-300 {
        return M2::identity() + k * c(0.0, 1.0);
    }
    // cos(w) and sin(w)/w are entire, so the branch of the root is irrelevant
    M2::identity() * w.cos() + k * (c(0.0, 1.0) * w.sin() / w)
}

/// H_B = x σ₁ + y σ₂ + z σ₃.
pub fn berry_hamiltonian(p: BerryPoint) -> M2 {
    M2::new(c(p.z, 0.0), c(p.x, -p.y), c(p.x, p.y), c(-p.z, 0.0))
}

/// Chart-wise unitary diagonalizer of the Berry Hamiltonian,
/// H_B = A diag(r, −r) A†.
///
/// Chart I is undefined on the closed lower z-axis (the lower Dirac string),
/// chart II on the closed upper one.
pub fn berry_diagonalizer(p: BerryPoint, chart: Chart) -> Result<M2> {
    let r = p.radius();
    if r == 0.0 {
        return Err(Error::DegeneratePoint);
    }
    match chart {
        Chart::I => {
            if r + p.z <= STRING_FENCE * r {
                return Err(Error::DiracString("lower"));
            }
            let norm = c(1.0 / (2.0 * r * (r + p.z)).sqrt(), 0.0);
            Ok(M2::new(c(r + p.z, 0.0), c(-p.x, p.y), c(p.x, p.y), c(r + p.z, 0.0)) * norm)
        }
        Chart::II => {
            if r - p.z <= STRING_FENCE * r {
                return Err(Error::DiracString("upper"));
            }
            let norm = c(1.0 / (2.0 * r * (r - p.z)).sqrt(), 0.0);
            Ok(M2::new(c(p.x, -p.y), c(-r + p.z, 0.0), c(r - p.z, 0.0), c(p.x, p.y)) * norm)
        }
    }
}

/// Transition function Φ with A_II = A_I Φ; undefined on the whole z-axis.
pub fn berry_transition(p: BerryPoint) -> Result<M2> {
    let rho_sq = p.x * p.x + p.y * p.y;
    if rho_sq == 0.0 {
        return Err(Error::OnAxis);
    }
    let norm = c(1.0 / rho_sq.sqrt(), 0.0);
    Ok(M2::new(
        c(p.x, -p.y) * norm,
        c(0.0, 0.0),
        c(0.0, 0.0),
        c(p.x, p.y) * norm,
    ))
}

/// Globally defined rank-one projector of the Hopf bundle,
/// P = (1/2r) (r + x σ₁ + y σ₂ + z σ₃); no Dirac strings appear here.
pub fn berry_projector(p: BerryPoint) -> Result<M2> {
    let r = p.radius();
    if r == 0.0 {
        return Err(Error::DegeneratePoint);
    }
    let norm = c(1.0 / (2.0 * r), 0.0);
    Ok(M2::new(c(r + p.z, 0.0), c(p.x, -p.y), c(p.x, p.y), c(r - p.z, 0.0)) * norm)
}

/// H_pB = x τ₁ + y τ₂ + z τ₃; not Hermitian, but J H J = H† with J = σ₃.
pub fn pseudo_berry_hamiltonian(p: BerryPoint) -> M2 {
    M2::new(c(p.z, 0.0), c(p.x, -p.y), c(-p.x, -p.y), c(-p.z, 0.0))
}

/// Connected component of the pseudo model's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoDomain {
    Dplus,
    Dminus,
    /// Complement, including the degenerate cone z² = x² + y².
    Outside,
}

pub fn pseudo_domain(p: BerryPoint) -> PseudoDomain {
    if p.pseudo_radius_sq() > 0.0 {
        if p.z > 0.0 {
            PseudoDomain::Dplus
        } else {
            PseudoDomain::Dminus
        }
    } else {
        PseudoDomain::Outside
    }
}

/// SU(1,1) diagonalizer of the pseudo Berry Hamiltonian on D₊,
/// H_pB = B diag(s, −s) B⁻¹.
///
/// Chart I covers all of D₊; chart II is undefined on the axis piece of D₊
/// (the upper Dirac string).
pub fn pseudo_diagonalizer(p: BerryPoint, chart: Chart) -> Result<M2> {
    if pseudo_domain(p) != PseudoDomain::Dplus {
        return Err(Error::OutsideDomain);
    }
    let s = p.pseudo_radius_sq().sqrt();
    match chart {
        Chart::I => {
            let norm = c(1.0 / (2.0 * s * (s + p.z)).sqrt(), 0.0);
            Ok(M2::new(
                c(s + p.z, 0.0),
                c(-p.x, p.y),
                c(-p.x, -p.y),
                c(s + p.z, 0.0),
            ) * norm)
        }
        Chart::II => {
            if p.z - s <= STRING_FENCE * p.z {
                return Err(Error::DiracString("upper"));
            }
            let norm = c(1.0 / (2.0 * s * (p.z - s)).sqrt(), 0.0);
            Ok(M2::new(
                c(-p.x, p.y),
                c(p.z - s, 0.0),
                c(p.z - s, 0.0),
                c(-p.x, -p.y),
            ) * norm)
        }
    }
}

/// Transition function removing the chart-II string: B_I = B_II Φ.
pub fn pseudo_transition(p: BerryPoint) -> Result<M2> {
    let rho_sq = p.x * p.x + p.y * p.y;
    if rho_sq == 0.0 {
        return Err(Error::OnAxis);
    }
    let norm = c(1.0 / rho_sq.sqrt(), 0.0);
    Ok(M2::new(
        c(-p.x, -p.y) * norm,
        c(0.0, 0.0),
        c(0.0, 0.0),
        c(-p.x, p.y) * norm,
    ))
}

/// Projector of the pseudo Hopf bundle on D₊: Q² = Q, J Q J = Q†, tr Q = 1.
pub fn pseudo_projector(p: BerryPoint) -> Result<M2> {
    if pseudo_domain(p) != PseudoDomain::Dplus {
        return Err(Error::OutsideDomain);
    }
    let s = p.pseudo_radius_sq().sqrt();
    let norm = c(1.0 / (2.0 * s), 0.0);
    Ok(M2::new(
        c(p.z + s, 0.0),
        c(p.x, -p.y),
        c(-p.x, -p.y),
        c(-p.z + s, 0.0),
    ) * norm)
}

/// Inverse of an SU(1,1) element via B⁻¹ = J B† J.
pub fn su11_inverse(b: &M2) -> M2 {
    let (_, _, j, _, _) = su11_generators();
    j * b.adjoint() * j
}

pub fn max_abs2(m: &M2) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

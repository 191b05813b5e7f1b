//! Operator-valued Veronese mappings on the sphere and hyperboloid sides.
//!
//! The diagonal X/Γ families and the raising Y/Ω/Z/W families generalize the
//! homogeneous monomials of the classical degree-n embedding; ordered products
//! of them form normalized operator columns whose outer products are the
//! degree-n projectors. Entries where a radicand goes negative are clamped to
//! zero and excluded from the trusted index range, so every identity is
//! checked exactly where its operators are defined.

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::fock::{creation, diag_fn, FockOperator, FockSpace, ValidRange};
use crate::jc::DetunedModel;
use crate::linalg::CMat;
use crate::pseudo::PseudoModel;
use num_complex::Complex64 as C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Binomial coefficient as a float (exact for the small orders used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Column of operators sharing one truncated space.
#[derive(Debug, Clone)]
pub struct OperatorColumn {
    entries: Vec<FockOperator>,
    space: FockSpace,
    valid_band: usize,
}

impl OperatorColumn {
    pub fn new(entries: Vec<FockOperator>) -> Result<Self> {
        let space = entries
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty operator column".into()))?
            .space();
        if entries.iter().any(|e| e.space() != space) {
            return Err(Error::ShapeMismatch(
                "column entries live on different spaces".into(),
            ));
        }
        Ok(Self {
            entries,
            space,
            valid_band: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, k: usize) -> &FockOperator {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[FockOperator] {
        &self.entries
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn valid_band(&self) -> usize {
        self.valid_band
    }

    pub fn as_block(&self) -> BlockOperator {
        BlockOperator::column_of(&self.entries)
    }

    /// Σ entryₖ† entryₖ.
    pub fn gram(&self) -> FockOperator {
        let mut acc = FockOperator::zeros(self.space);
        for e in &self.entries {
            acc = acc
                .checked_add(&e.adjoint().checked_mul(e).unwrap())
                .unwrap();
        }
        acc
    }

    /// Σ signₖ entryₖ† entryₖ with the alternating signature (−1)ᵏ.
    pub fn gram_signed(&self) -> FockOperator {
        let mut acc = FockOperator::zeros(self.space);
        for (k, e) in self.entries.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = e.adjoint().checked_mul(e).unwrap().scale(c(sign, 0.0));
            acc = acc.checked_add(&term).unwrap();
        }
        acc
    }

    /// Outer product column·column† as an (n+1)×(n+1) block operator.
    pub fn projector(&self) -> BlockOperator {
        let grid = self
            .entries
            .iter()
            .map(|ei| {
                self.entries
                    .iter()
                    .map(|ej| ei.matrix() * ej.matrix().adjoint())
                    .collect()
            })
            .collect();
        BlockOperator::from_blocks(grid).expect("outer product grid is consistent")
    }

    /// column·column†·𝐉 with the alternating block signature.
    pub fn projector_signed(&self) -> BlockOperator {
        let grid = self
            .entries
            .iter()
            .map(|ei| {
                self.entries
                    .iter()
                    .enumerate()
                    .map(|(j, ej)| {
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        (ei.matrix() * ej.matrix().adjoint()).map(|v| v * c(sign, 0.0))
                    })
                    .collect()
            })
            .collect();
        BlockOperator::from_blocks(grid).expect("outer product grid is consistent")
    }
}

/// Alternating signs (−1)ᵏ of the signature operator 𝐉_n.
pub fn signature_signs(n: usize) -> Vec<i8> {
    (0..=n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect()
}

/// 𝐉_n = diag(1, −1, …, (−1)ⁿ) blockwise over `dim`-dimensional components.
pub fn signature_block(n: usize, dim: usize) -> BlockOperator {
    let blocks: Vec<CMat> = signature_signs(n)
        .iter()
        .map(|&s| CMat::identity(dim, dim).map(|v| v * c(s as f64, 0.0)))
        .collect();
    BlockOperator::block_diagonal(&blocks)
}

fn r_val(theta: f64, w: f64) -> f64 {
    if w == 0.0 {
        theta.abs()
    } else {
        (w + theta * theta).sqrt()
    }
}

/// X_{−j} = (R(N+1−j)+θ)/√(2R(N+1−j)(R(N+1−j)+θ)), diagonal.
pub fn x_op(model: &DetunedModel, j: usize) -> FockOperator {
    let theta = model.theta();
    assert!(theta > 0.0, "x_op requires theta > 0");
    diag_fn(
        model.space(),
        move |w| {
            let r = r_val(theta, w);
            (r + theta) / (2.0 * r * (r + theta)).sqrt()
        },
        1 - j as i64,
    )
}

/// Ratio factor √((m−j)/m); the j = 0 case is the identity (value 1 at the
/// ground index), for j ≥ 1 entries below index j are undefined.
fn ratio_val(m: f64, j: usize) -> f64 {
    if j == 0 {
        1.0
    } else {
        ((m - j as f64) / m).sqrt()
    }
}

/// Y_{−j} = √((N−j)/N) (2R(N−j)(R(N−j)+θ))^{−1/2} a†; trusted from index j.
pub fn y_op(model: &DetunedModel, j: usize) -> FockOperator {
    let theta = model.theta();
    assert!(theta > 0.0, "y_op requires theta > 0");
    let d = diag_fn(
        model.space(),
        move |m| {
            let r = r_val(theta, m - j as f64);
            ratio_val(m, j) / (2.0 * r * (r + theta)).sqrt()
        },
        0,
    );
    d.checked_mul(&creation(model.space())).unwrap()
}

/// Z_{−j} = Y_{−j} X_{−j}^{−1} = √((N−j)/N) (R(N−j)+θ)^{−1} a†.
pub fn z_op(model: &DetunedModel, j: usize) -> FockOperator {
    let theta = model.theta();
    assert!(theta > 0.0, "z_op requires theta > 0");
    let d = diag_fn(
        model.space(),
        move |m| {
            let r = r_val(theta, m - j as f64);
            ratio_val(m, j) / (r + theta)
        },
        0,
    );
    d.checked_mul(&creation(model.space())).unwrap()
}

/// The equivalent right-ordered form a† (R(N+1)+θ)^{−1} of the local
/// coordinate Z₀.
pub fn z0_right_form(model: &DetunedModel) -> FockOperator {
    let theta = model.theta();
    let d = diag_fn(model.space(), move |w| 1.0 / (r_val(theta, w) + theta), 1);
    creation(model.space()).checked_mul(&d).unwrap()
}

/// Scalar symbol of Z₀ under a† → x+iy, N → x²+y², θ → z.
pub fn z0_classical_symbol(x: f64, y: f64, z: f64) -> C64 {
    let n_symbol = x * x + y * y;
    let r = (n_symbol + z * z).sqrt();
    c(x, y) / c(r + z, 0.0)
}

/// The normalized column (X₀, Y₀)ᵀ with 𝒜†𝒜 = 1.
pub fn sphere_column(model: &DetunedModel) -> OperatorColumn {
    OperatorColumn::new(vec![x_op(model, 0), y_op(model, 0)]).expect("two entries, same space")
}

/// Degree-n operator Veronese column with entries
/// √C(n,k) Y_{−(k−1)}···Y₀ X₀^{n−k}.
pub fn veronese_column(model: &DetunedModel, n: usize) -> Result<OperatorColumn> {
    if n < 1 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if model.dim() <= n + 1 {
        return Err(Error::InvalidParameter(format!(
            "cutoff {} too small for degree {n}",
            model.dim()
        )));
    }
    let x0 = x_op(model, 0);
    let mut entries = Vec::with_capacity(n + 1);
    let mut ychain = FockOperator::identity(model.space());
    for k in 0..=n {
        let coef = c(binomial(n, k).sqrt(), 0.0);
        let entry = ychain
            .checked_mul(&x0.diag_pow((n - k) as f64))
            .unwrap()
            .scale(coef);
        entries.push(entry);
        if k < n {
            ychain = y_op(model, k).checked_mul(&ychain).unwrap();
        }
    }
    OperatorColumn::new(entries)
}

/// 𝒫_n = 𝒜_n 𝒜_n†.
pub fn veronese_projector(model: &DetunedModel, n: usize) -> Result<BlockOperator> {
    Ok(veronese_column(model, n)?.projector())
}

/// Local-coordinate column 𝒵_n with entries √C(n,j) Z_{−(j−1)}···Z₀,
/// j = 1..n.
pub fn local_column(model: &DetunedModel, n: usize) -> Result<OperatorColumn> {
    if n < 1 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let mut entries = Vec::with_capacity(n);
    let mut zchain = z_op(model, 0);
    for j in 1..=n {
        entries.push(zchain.scale(c(binomial(n, j).sqrt(), 0.0)));
        if j < n {
            zchain = z_op(model, j).checked_mul(&zchain).unwrap();
        }
    }
    OperatorColumn::new(entries)
}

/// Rank-one projector in local-coordinate form:
/// [[G⁻¹, G⁻¹Z†], [ZG⁻¹, ZG⁻¹Z†]] with G = 1 + Z†Z.
pub fn oike_projector(z: &FockOperator) -> Result<BlockOperator> {
    let dim = z.dim();
    let id = CMat::identity(dim, dim);
    let gram = &id + z.matrix().adjoint() * z.matrix();
    // G is Hermitian with spectrum ≥ 1 for any genuine coordinate operator;
    // reject numerically singular input rather than inverting noise
    let eigs = crate::linalg::eigvalsh(&gram);
    let (min, max) = (eigs[0].abs(), eigs[eigs.len() - 1].abs().max(1.0));
    if min < 1e-12 * max {
        return Err(Error::SingularGram);
    }
    let ginv = gram.clone().lu().try_inverse().ok_or(Error::SingularGram)?;
    let upper_right = &ginv * z.matrix().adjoint();
    let lower_left = z.matrix() * &ginv;
    let lower_right = z.matrix() * &ginv * z.matrix().adjoint();
    BlockOperator::from_blocks(vec![vec![ginv, upper_right], vec![lower_left, lower_right]])
}

/// Classical degree-n Veronese image of a normalized pair.
pub fn classical_veronese(v: (C64, C64), n: usize) -> Vec<C64> {
    let norm = v.0.norm_sqr() + v.1.norm_sqr();
    assert!((norm - 1.0).abs() < 1e-10, "input must be normalized");
    (0..=n)
        .map(|j| c(binomial(n, j).sqrt(), 0.0) * v.0.powu((n - j) as u32) * v.1.powu(j as u32))
        .collect()
}

/// Classical pseudo Veronese image of a pair with v†J₁v = 1; the image
/// satisfies vₙ†Jₙvₙ = 1.
pub fn classical_pseudo_veronese(v: (C64, C64), n: usize) -> Vec<C64> {
    let pseudo_norm = v.0.norm_sqr() - v.1.norm_sqr();
    assert!(
        (pseudo_norm - 1.0).abs() < 1e-10,
        "input must be pseudo-normalized"
    );
    (0..=n)
        .map(|j| c(binomial(n, j).sqrt(), 0.0) * v.0.powu((n - j) as u32) * v.1.powu(j as u32))
        .collect()
}

/// Local coordinate of a pseudo-normalized pair: the ratio of the second to
/// the first component, which lies in the open unit disk because
/// |v₀|² − |v₁|² = 1 forces |v₁| < |v₀|.
pub fn pseudo_local_coordinate(v: (C64, C64)) -> C64 {
    v.1 / v.0
}

fn s_val(theta: f64, w: f64) -> f64 {
    if w == 0.0 {
        theta
    } else {
        (theta * theta - w).sqrt()
    }
}

fn pseudo_space(model: &PseudoModel) -> FockSpace {
    FockSpace::new(model.level() + 1).expect("level >= 1 gives dim >= 2")
}

/// Γ_{−j} = (S(N+1−j)+θ)/√(2S(N+1−j)(S(N+1−j)+θ)), diagonal on the
/// admissible space; trusted where θ² − (m+1−j) > 0.
pub fn gamma_op(model: &PseudoModel, j: usize) -> FockOperator {
    let theta = model.theta();
    diag_fn(
        pseudo_space(model),
        move |w| {
            let s = s_val(theta, w);
            (s + theta) / (2.0 * s * (s + theta)).sqrt()
        },
        1 - j as i64,
    )
}

/// Ω_{−j} = −√((N−j)/N) (2S(N−j)(S(N−j)+θ))^{−1/2} a†.
pub fn omega_op(model: &PseudoModel, j: usize) -> FockOperator {
    let theta = model.theta();
    let space = pseudo_space(model);
    let d = diag_fn(
        space,
        move |m| {
            let s = s_val(theta, m - j as f64);
            -ratio_val(m, j) / (2.0 * s * (s + theta)).sqrt()
        },
        0,
    );
    d.checked_mul(&creation(space)).unwrap()
}

/// W = Ω₀ Γ₀⁻¹ = −(S(N)+θ)⁻¹ a†, the hyperboloid local coordinate.
pub fn w_op(model: &PseudoModel) -> FockOperator {
    let theta = model.theta();
    let space = pseudo_space(model);
    let d = diag_fn(space, move |m| -1.0 / (s_val(theta, m) + theta), 0);
    d.checked_mul(&creation(space)).unwrap()
}

/// Trusted diagonal window for degree-n pseudo columns: products of n
/// raisings stay inside the admissible space for indices below
/// level + 1 − n.
pub fn pseudo_gram_window(model: &PseudoModel, n: usize) -> ValidRange {
    ValidRange {
        lo: 0,
        hi: model.level() + 1 - n,
    }
}

/// Degree-n pseudo Veronese column with entries
/// √C(n,k) Ω_{−(k−1)}···Ω₀ Γ₀^{n−k}; requires depth headroom in the
/// admissible space.
pub fn pseudo_veronese_column(model: &PseudoModel, n: usize) -> Result<OperatorColumn> {
    if n < 1 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if model.level() <= n {
        return Err(Error::DepthExceedsDomain {
            depth: n,
            level: model.level(),
        });
    }
    let gamma0 = gamma_op(model, 0);
    let mut entries = Vec::with_capacity(n + 1);
    let mut chain = FockOperator::identity(pseudo_space(model));
    for k in 0..=n {
        let coef = c(binomial(n, k).sqrt(), 0.0);
        let entry = chain
            .checked_mul(&gamma0.diag_pow((n - k) as f64))
            .unwrap()
            .scale(coef);
        entries.push(entry);
        if k < n {
            chain = omega_op(model, k).checked_mul(&chain).unwrap();
        }
    }
    OperatorColumn::new(entries)
}

/// 𝒬_n = ℬ_n ℬ_n† 𝐉_n.
pub fn pseudo_veronese_projector(model: &PseudoModel, n: usize) -> Result<BlockOperator> {
    Ok(pseudo_veronese_column(model, n)?.projector_signed())
}

/// First column of the would-be spin-j representation of V: entries
/// √((2j)ₙ/n!) Ω_{−(n−1)}···Ω₀ Γ₀^{−(2j+n)} for n = 0..depth.
pub fn bhat_column(model: &PseudoModel, two_j: u32, depth: usize) -> Result<OperatorColumn> {
    if two_j == 0 {
        return Err(Error::InvalidParameter("spin must be positive".into()));
    }
    if depth >= model.level() {
        return Err(Error::DepthExceedsDomain {
            depth,
            level: model.level(),
        });
    }
    let two_j_f = two_j as f64;
    let gamma0 = gamma_op(model, 0);
    let mut entries = Vec::with_capacity(depth + 1);
    let mut chain = FockOperator::identity(pseudo_space(model));
    let mut pochhammer_over_fact = 1.0f64; // (2j)_n / n!
    for n in 0..=depth {
        let coef = c(pochhammer_over_fact.sqrt(), 0.0);
        let entry = chain
            .checked_mul(&gamma0.diag_pow(-(two_j_f + n as f64)))
            .unwrap()
            .scale(coef);
        entries.push(entry);
        pochhammer_over_fact *= (two_j_f + n as f64) / (n as f64 + 1.0);
        if n < depth {
            chain = omega_op(model, n).checked_mul(&chain).unwrap();
        }
    }
    OperatorColumn::new(entries)
}

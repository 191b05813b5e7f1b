//! The Jaynes-Cummings Hamiltonian and its quantum diagonalization.
//!
//! The detuned interaction part H_JC = [[θ, a], [a†, −θ]] factors through a
//! classical 2×2 diagonalization sandwiched between ladder factors. The
//! resulting chart operators U_I/U_II carry ground-state singularities (the
//! non-commutative remnant of the Dirac strings): the chart-I normalizer
//! contains R(N)+θ, which vanishes on the lower-component ground state
//! exactly when θ < 0; chart II symmetrically for θ > 0. Excited states are
//! singularity-free for every θ ≠ 0.

use crate::block::BlockOperator;
use crate::classical::Chart;
use crate::error::{Error, Result};
use crate::fock::{annihilation, creation, diag_fn, FockOperator, FockSpace};
use num_complex::Complex64 as C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Physical Jaynes-Cummings parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCParams {
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
}

impl JCParams {
    pub fn new(omega: f64, delta: f64, g: f64) -> Result<Self> {
        if !(omega > 0.0 && g > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need omega > 0, g > 0, finite delta; got ({omega}, {delta}, {g})"
            )));
        }
        Ok(Self { omega, delta, g })
    }

    /// Detuning θ = (Δ−ω)/2g.
    pub fn theta(&self) -> f64 {
        (self.delta - self.omega) / (2.0 * self.g)
    }
}

/// Detuning plus truncation; fixes every operator of this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetunedModel {
    theta: f64,
    space: FockSpace,
}

impl DetunedModel {
    pub fn new(theta: f64, space: FockSpace) -> Result<Self> {
        if theta == 0.0 || !theta.is_finite() {
            return Err(Error::ThetaZero);
        }
        Ok(Self { theta, space })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Component of the two-level tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    Upper,
    Lower,
}

/// R(N+shift) = √(N + shift + θ²); fully defined for shift ≥ 0.
///
/// The ground entry of R(N) is computed as |θ| exactly, so the singular
/// combinations R(N) ± θ vanish symbolically rather than to rounding noise.
pub fn r_op(model: &DetunedModel, shift: i64) -> FockOperator {
    let th2 = model.theta * model.theta;
    let th_abs = model.theta.abs();
    diag_fn(
        model.space,
        move |u| if u == 0.0 { th_abs } else { (u + th2).sqrt() },
        shift,
    )
}

/// Full Hamiltonian ω 1⊗a†a + (Δ/2) σ₃⊗1 + g(σ₊⊗a + σ₋⊗a†) together with
/// the commuting split H = H₁ + H₂.
pub fn full_jc_hamiltonian(
    params: &JCParams,
    space: FockSpace,
) -> (BlockOperator, BlockOperator, BlockOperator) {
    let n = crate::fock::number(space);
    let id = FockOperator::identity(space);
    let zero = FockOperator::zeros(space);
    let (a, ad) = (annihilation(space), creation(space));
    let (w, d, g) = (params.omega, params.delta, params.g);

    let h1 = BlockOperator::from_fock_2x2(
        &n.scale(c(w, 0.0))
            .checked_add(&id.scale(c(w / 2.0, 0.0)))
            .unwrap(),
        &zero,
        &zero,
        &n.scale(c(w, 0.0))
            .checked_sub(&id.scale(c(w / 2.0, 0.0)))
            .unwrap(),
    );
    let detune = (d - w) / 2.0;
    let h2 = BlockOperator::from_fock_2x2(
        &id.scale(c(detune, 0.0)),
        &a.scale(c(g, 0.0)),
        &ad.scale(c(g, 0.0)),
        &id.scale(c(-detune, 0.0)),
    );
    let h = h1.checked_add(&h2).unwrap();
    (h, h1, h2)
}

/// H_JC = [[θ, a], [a†, −θ]] over the truncated space.
pub fn h_jc(model: &DetunedModel) -> BlockOperator {
    let id = FockOperator::identity(model.space);
    BlockOperator::from_fock_2x2(
        &id.scale(c(model.theta, 0.0)),
        &annihilation(model.space),
        &creation(model.space),
        &id.scale(c(-model.theta, 0.0)),
    )
}

/// Ladder-factor sandwich around a middle matrix that is diagonal in N and
/// can be diagonalized classically.
///
/// The product reproduces H_JC everywhere except the lower-component ground
/// state: the right factor's co-isometry kills |0⟩, so
/// left·middle·right = H_JC + θ·|lower,0⟩⟨lower,0| exactly. The chart
/// diagonalization recovered from this factorization does hold on the
/// ground state.
pub fn qdm_factorization(model: &DetunedModel) -> (BlockOperator, BlockOperator, BlockOperator) {
    let sp = model.space;
    let id = FockOperator::identity(sp);
    let zero = FockOperator::zeros(sp);
    let (a, ad) = (annihilation(sp), creation(sp));
    let inv_sqrt_np1 = diag_fn(sp, |u| 1.0 / (u + 1.0).sqrt(), 0);
    let sqrt_np1 = diag_fn(sp, |u| (u + 1.0).sqrt(), 0);

    let left = BlockOperator::from_fock_2x2(&id, &zero, &zero, &(&ad * &inv_sqrt_np1));
    let middle = BlockOperator::from_fock_2x2(
        &id.scale(c(model.theta, 0.0)),
        &sqrt_np1,
        &sqrt_np1,
        &id.scale(c(-model.theta, 0.0)),
    );
    let right = BlockOperator::from_fock_2x2(&id, &zero, &zero, &(&inv_sqrt_np1 * &a));
    (left, middle, right)
}

/// 1/√(2 R(N+shift)(R(N+shift) ± θ)) with the chart's sign.
fn normalizer_diag(model: &DetunedModel, chart: Chart, shift: i64) -> FockOperator {
    let th = model.theta;
    let sign = match chart {
        Chart::I => 1.0,
        Chart::II => -1.0,
    };
    let th2 = th * th;
    let th_abs = th.abs();
    diag_fn(
        model.space,
        move |u| {
            let rv = if u == 0.0 { th_abs } else { (u + th2).sqrt() };
            1.0 / (2.0 * rv * (rv + sign * th)).sqrt()
        },
        shift,
    )
}

/// Whether the chart normalizer vanishes on the lower-component ground state
/// for this θ (the symbolic zero |θ| ± θ).
pub fn chart_ground_singular(theta: f64, chart: Chart) -> bool {
    match chart {
        Chart::I => theta.abs() + theta == 0.0,
        Chart::II => theta.abs() - theta == 0.0,
    }
}

/// Chart operator with any ground singularity clamped to zero and excluded
/// from the lower component's validity instead of raised as an error. Off the
/// singular set this is identical to [`u_chart`].
pub fn u_chart_flagged(model: &DetunedModel, chart: Chart) -> BlockOperator {
    let d = block_diag2(
        &normalizer_diag(model, chart, 1),
        &normalizer_diag(model, chart, 0),
    );
    let k = chart_core(model, chart);
    d.checked_mul(&k).unwrap()
}

fn chart_core(model: &DetunedModel, chart: Chart) -> BlockOperator {
    let sp = model.space;
    let (a, ad) = (annihilation(sp), creation(sp));
    let r1 = r_op(model, 1);
    let r0 = r_op(model, 0);
    let id = FockOperator::identity(sp);
    let th = c(model.theta, 0.0);
    match chart {
        Chart::I => BlockOperator::from_fock_2x2(
            &r1.checked_add(&id.scale(th)).unwrap(),
            &a.scale(c(-1.0, 0.0)),
            &ad,
            &r0.checked_add(&id.scale(th)).unwrap(),
        ),
        Chart::II => BlockOperator::from_fock_2x2(
            &a,
            &r1.scale(c(-1.0, 0.0)).checked_add(&id.scale(th)).unwrap(),
            &r0.checked_sub(&id.scale(th)).unwrap(),
            &ad,
        ),
    }
}

fn block_diag2(upper: &FockOperator, lower: &FockOperator) -> BlockOperator {
    BlockOperator::block_diagonal(&[upper.matrix().clone(), lower.matrix().clone()])
}

/// The chart operator U_I (eq. form D·K) or U_II; errors when the chart's
/// normalizer vanishes on the ground state.
pub fn u_chart(model: &DetunedModel, chart: Chart) -> Result<BlockOperator> {
    if chart_ground_singular(model.theta, chart) {
        return Err(Error::GroundSingularity { theta: model.theta });
    }
    Ok(u_chart_flagged(model, chart))
}

/// Max difference between the two factor orderings D·K and K·D′ of the chart
/// operator. The diagonal normalizer commutes through the ladder entries by
/// the shift rule, so this is a pure rounding check.
pub fn u_chart_ordering_residual(model: &DetunedModel, chart: Chart) -> f64 {
    let left = u_chart_flagged(model, chart);
    // chart I keeps the same diagonal on the right; chart II swaps the two
    // normalizer shifts
    let d_right = match chart {
        Chart::I => block_diag2(
            &normalizer_diag(model, chart, 1),
            &normalizer_diag(model, chart, 0),
        ),
        Chart::II => block_diag2(
            &normalizer_diag(model, chart, 0),
            &normalizer_diag(model, chart, 1),
        ),
    };
    let right = chart_core(model, chart).checked_mul(&d_right).unwrap();
    left.interior_residual(&right, 0).unwrap()
}

/// Transition operator Φ_JC = diag((N+1)^{−1/2} a, a† (N+1)^{−1/2}).
///
/// This is the globally defined form; the equivalent 1/√N form exists only
/// off the ground state and is compared against it in tests.
pub fn transition_phi_jc(space: FockSpace) -> BlockOperator {
    let (a, ad) = (annihilation(space), creation(space));
    let inv_sqrt_np1 = diag_fn(space, |u| 1.0 / (u + 1.0).sqrt(), 0);
    let upper = &inv_sqrt_np1 * &a;
    let lower = &ad * &inv_sqrt_np1;
    block_diag2(&upper, &lower)
}

/// Projector P_JC = U diag(1, 0) U† in its chart-free closed form
/// diag(1/2R(N+1), 1/2R(N)) · [[R(N+1)+θ, a], [a†, R(N)−θ]].
pub fn projector_p_jc(model: &DetunedModel) -> BlockOperator {
    let sp = model.space;
    let th = c(model.theta, 0.0);
    let id = FockOperator::identity(sp);
    let r1 = r_op(model, 1);
    let r0 = r_op(model, 0);
    let d = block_diag2(
        &r1.diag_pow(-1.0).scale(c(0.5, 0.0)),
        &r0.diag_pow(-1.0).scale(c(0.5, 0.0)),
    );
    let k = BlockOperator::from_fock_2x2(
        &r1.checked_add(&id.scale(th)).unwrap(),
        &annihilation(sp),
        &creation(sp),
        &r0.checked_sub(&id.scale(th)).unwrap(),
    );
    d.checked_mul(&k).unwrap()
}

/// Max difference between the two orderings of the projector factors.
pub fn projector_ordering_residual(model: &DetunedModel) -> f64 {
    let sp = model.space;
    let th = c(model.theta, 0.0);
    let id = FockOperator::identity(sp);
    let r1 = r_op(model, 1);
    let r0 = r_op(model, 0);
    let d = block_diag2(
        &r1.diag_pow(-1.0).scale(c(0.5, 0.0)),
        &r0.diag_pow(-1.0).scale(c(0.5, 0.0)),
    );
    let k = BlockOperator::from_fock_2x2(
        &r1.checked_add(&id.scale(th)).unwrap(),
        &annihilation(sp),
        &creation(sp),
        &r0.checked_sub(&id.scale(th)).unwrap(),
    );
    let left = d.checked_mul(&k).unwrap();
    let right = k.checked_mul(&d).unwrap();
    left.interior_residual(&right, 0).unwrap()
}

/// Residual of the quantum spectral decomposition
/// H_JC = diag(R(N+1), R(N)) P_JC − diag(R(N+1), R(N)) (1 − P_JC)
/// restricted to the interior band.
pub fn spectral_residual(model: &DetunedModel, band: usize) -> Result<f64> {
    let d = block_diag2(&r_op(model, 1), &r_op(model, 0));
    let p = projector_p_jc(model);
    let id = BlockOperator::identity(&[model.dim(), model.dim()]);
    let complement = id.checked_sub(&p)?;
    let assembled = d
        .checked_mul(&p)?
        .checked_sub(&d.checked_mul(&complement)?)?;
    assembled.interior_residual(&h_jc(model), band)
}

/// Closed-form evolution operator e^{−i gt H_JC}.
pub fn evolution_closed(model: &DetunedModel, gt: f64) -> BlockOperator {
    let sp = model.space;
    let th = model.theta;
    let th2 = th * th;
    let th_abs = th.abs();
    let r = move |u: f64| if u == 0.0 { th_abs } else { (u + th2).sqrt() };

    let upper_diag = FockOperator::from_diagonal_with(sp, |m| {
        let rv = r(m as f64 + 1.0);
        c((gt * rv).cos(), -th * (gt * rv).sin() / rv)
    });
    let lower_diag = FockOperator::from_diagonal_with(sp, |m| {
        let rv = r(m as f64);
        c((gt * rv).cos(), th * (gt * rv).sin() / rv)
    });
    let sin_over_r1 = FockOperator::from_diagonal_with(sp, |m| {
        let rv = r(m as f64 + 1.0);
        c(0.0, -(gt * rv).sin() / rv)
    });
    let sin_over_r0 = FockOperator::from_diagonal_with(sp, |m| {
        let rv = r(m as f64);
        c(0.0, -(gt * rv).sin() / rv)
    });
    let upper_right = &sin_over_r1 * &annihilation(sp);
    let lower_left = &sin_over_r0 * &creation(sp);
    BlockOperator::from_fock_2x2(&upper_diag, &upper_right, &lower_left, &lower_diag)
}

/// Singular basis states of a chart's normalizer at one θ.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracScanEntry {
    pub theta: f64,
    pub chart: Chart,
    /// (component, Fock index) pairs where the normalizer vanishes exactly.
    pub singular: Vec<(Component, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracScanReport {
    pub entries: Vec<DiracScanEntry>,
    /// True when every singular state is the lower-component ground state
    /// with the chart's sign condition, and no excited state is singular.
    pub ground_only: bool,
}

/// Scan the chart normalizers for exact zeros over a θ grid.
///
/// Zeros are decided symbolically: on the ground state the lower normalizer
/// argument is |θ| ± θ; every excited entry √(m+θ²) ± θ is strictly positive.
pub fn dirac_string_scan(thetas: &[f64], space: FockSpace) -> Result<DiracScanReport> {
    let mut entries = Vec::new();
    let mut ground_only = true;
    for &theta in thetas {
        if theta == 0.0 {
            return Err(Error::ThetaZero);
        }
        for chart in [Chart::I, Chart::II] {
            let sign = match chart {
                Chart::I => 1.0,
                Chart::II => -1.0,
            };
            let mut singular = Vec::new();
            for m in 0..space.dim() {
                // upper component normalizer argument: R(m+1) ± θ, never zero
                let upper = (m as f64 + 1.0 + theta * theta).sqrt() + sign * theta;
                if upper == 0.0 {
                    singular.push((Component::Upper, m));
                    ground_only = false;
                }
                // lower component: R(m) ± θ
                let lower = if m == 0 {
                    theta.abs() + sign * theta
                } else {
                    (m as f64 + theta * theta).sqrt() + sign * theta
                };
                if lower == 0.0 {
                    singular.push((Component::Lower, m));
                    if m != 0 {
                        ground_only = false;
                    }
                }
            }
            let expected: Vec<(Component, usize)> = if chart_ground_singular(theta, chart) {
                vec![(Component::Lower, 0)]
            } else {
                Vec::new()
            };
            if singular != expected {
                ground_only = false;
            }
            entries.push(DiracScanEntry {
                theta,
                chart,
                singular,
            });
        }
    }
    Ok(DiracScanReport {
        entries,
        ground_only,
    })
}

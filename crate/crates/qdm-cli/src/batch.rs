//! Batch computations behind the evolve, dirac-scan, veronese and chern
//! subcommands.

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::collections::BTreeMap;

use qdm::error::Error;
use qdm::fock::FockSpace;
use qdm::jc::{dirac_string_scan, evolution_closed, Component, DetunedModel};
use qdm::pseudo::{evolution_closed_pseudo, PseudoModel};
use qdm::quad::QuadratureConfig;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateComponent {
    Up,
    Down,
}

/// Initial state of an evolution run: a bare number state or a coherent
/// amplitude in one component.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Number(StateComponent, usize),
    Coherent(StateComponent, f64),
}

impl InitialState {
    /// Parse "up:0", "down:3", "up:coherent:1.5".
    pub fn parse(spec: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = spec.split(':').collect();
        let component = match parts.first() {
            Some(&"up") => StateComponent::Up,
            Some(&"down") => StateComponent::Down,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "initial state must start with up: or down:, got {spec}"
                )))
            }
        };
        match parts.as_slice() {
            [_, idx] => idx
                .parse::<usize>()
                .map(|n| InitialState::Number(component, n))
                .map_err(|_| Error::InvalidParameter(format!("bad Fock index in {spec}"))),
            [_, "coherent", amp] => amp
                .parse::<f64>()
                .map(|a| InitialState::Coherent(component, a))
                .map_err(|_| Error::InvalidParameter(format!("bad amplitude in {spec}"))),
            _ => Err(Error::InvalidParameter(format!(
                "initial state spec {spec} not understood"
            ))),
        }
    }

    fn build(&self, dims: (usize, usize)) -> Result<DVector<C64>, Error> {
        let (up_dim, down_dim) = dims;
        let total = up_dim + down_dim;
        let mut v = DVector::<C64>::zeros(total);
        match *self {
            InitialState::Number(comp, k) => {
                let (offset, limit) = match comp {
                    StateComponent::Up => (0, up_dim),
                    StateComponent::Down => (up_dim, down_dim),
                };
                if k >= limit {
                    return Err(Error::InvalidParameter(format!(
                        "Fock index {k} outside component dimension {limit}"
                    )));
                }
                v[offset + k] = c(1.0, 0.0);
            }
            InitialState::Coherent(comp, alpha) => {
                let (offset, limit) = match comp {
                    StateComponent::Up => (0, up_dim),
                    StateComponent::Down => (up_dim, down_dim),
                };
                let mut term = (-alpha * alpha / 2.0).exp();
                for k in 0..limit {
                    v[offset + k] = c(term, 0.0);
                    term *= alpha / ((k + 1) as f64).sqrt();
                }
                // renormalize the truncated tail
                let norm = v.norm();
                if norm == 0.0 {
                    return Err(Error::InvalidParameter(
                        "coherent amplitude underflowed".into(),
                    ));
                }
                v /= c(norm, 0.0);
            }
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Jc,
    Pseudo,
}

/// Populations, inversion and (pseudo-)norm of a two-component state.
fn observables(v: &DVector<C64>, up_dim: usize, pseudo: bool) -> (f64, f64, f64, f64) {
    let p_up: f64 = v.iter().take(up_dim).map(|x| x.norm_sqr()).sum();
    let p_dn: f64 = v.iter().skip(up_dim).map(|x| x.norm_sqr()).sum();
    let norm = if pseudo { p_up - p_dn } else { p_up + p_dn };
    (p_up, p_dn, p_up - p_dn, norm)
}

/// CSV with columns gt, p_upper, p_lower, inversion, norm (pseudo-norm for
/// the pseudo kind), full double precision.
pub fn evolve_csv(
    kind: ModelKind,
    theta: f64,
    cutoff: usize,
    initial: &InitialState,
    gt_max: f64,
    gt_points: usize,
) -> Result<String, Error> {
    if gt_points == 0 {
        return Err(Error::InvalidParameter("gt grid must be non-empty".into()));
    }
    let norm_label = match kind {
        ModelKind::Jc => "norm",
        ModelKind::Pseudo => "pseudo_norm",
    };
    let mut out = format!("gt,p_upper,p_lower,inversion,{norm_label}\n");
    let step = if gt_points == 1 {
        0.0
    } else {
        gt_max / (gt_points - 1) as f64
    };

    match kind {
        ModelKind::Jc => {
            let model = DetunedModel::new(theta, FockSpace::new(cutoff)?)?;
            let v0 = initial.build((cutoff, cutoff))?;
            for i in 0..gt_points {
                let gt = step * i as f64;
                let evolved = evolution_closed(&model, gt).to_dense() * &v0;
                let (pu, pd, inv, norm) = observables(&evolved, cutoff, false);
                out.push_str(&format!(
                    "{gt:.16e},{pu:.16e},{pd:.16e},{inv:.16e},{norm:.16e}\n"
                ));
            }
        }
        ModelKind::Pseudo => {
            let model = PseudoModel::new(theta)?;
            let dims = model.dims();
            let v0 = initial.build(dims)?;
            for i in 0..gt_points {
                let gt = step * i as f64;
                let evolved = evolution_closed_pseudo(&model, gt).to_dense() * &v0;
                let (pu, pd, inv, norm) = observables(&evolved, dims.0, true);
                out.push_str(&format!(
                    "{gt:.16e},{pu:.16e},{pd:.16e},{inv:.16e},{norm:.16e}\n"
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct DiracScanJson {
    pub version: String,
    pub cutoff: usize,
    pub ground_only: bool,
    pub entries: Vec<DiracScanEntryJson>,
}

#[derive(Debug, Serialize)]
pub struct DiracScanEntryJson {
    pub theta: f64,
    pub chart: String,
    pub singular: Vec<SingularStateJson>,
}

#[derive(Debug, Serialize)]
pub struct SingularStateJson {
    pub component: String,
    pub index: usize,
}

/// JSON singular-set report over a θ grid; asserts the ground-only pattern.
pub fn dirac_scan_json(thetas: &[f64], cutoff: usize) -> Result<String, Error> {
    if thetas.is_empty() {
        return Err(Error::InvalidParameter(
            "theta grid must be non-empty".into(),
        ));
    }
    if thetas.contains(&0.0) {
        return Err(Error::ThetaZero);
    }
    let report = dirac_string_scan(thetas, FockSpace::new(cutoff)?)?;
    let doc = DiracScanJson {
        version: crate::report::REPORT_VERSION.to_string(),
        cutoff,
        ground_only: report.ground_only,
        entries: report
            .entries
            .iter()
            .map(|e| DiracScanEntryJson {
                theta: e.theta,
                chart: format!("{:?}", e.chart),
                singular: e
                    .singular
                    .iter()
                    .map(|(comp, idx)| SingularStateJson {
                        component: match comp {
                            Component::Upper => "upper".to_string(),
                            Component::Lower => "lower".to_string(),
                        },
                        index: *idx,
                    })
                    .collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("scan serializes"))
}

#[derive(Debug, Serialize)]
pub struct VeroneseTableJson {
    pub version: String,
    pub cutoff: usize,
    pub rows: Vec<VeroneseRowJson>,
}

#[derive(Debug, Serialize)]
pub struct VeroneseRowJson {
    pub theta: f64,
    pub degree: usize,
    pub normalization_residual: f64,
    pub idempotence_residual: f64,
}

/// Residual table of column normalization and projector idempotence across
/// (θ, degree).
pub fn veronese_table_json(
    thetas: &[f64],
    max_degree: usize,
    cutoff: usize,
) -> Result<String, Error> {
    use qdm::fock::{FockOperator, ValidRange};
    if thetas.iter().any(|t| *t <= 0.0) {
        return Err(Error::InvalidParameter(
            "veronese table needs positive detunings".into(),
        ));
    }
    if max_degree + 1 >= cutoff {
        return Err(Error::InvalidParameter(format!(
            "cutoff {cutoff} too small for degree {max_degree}"
        )));
    }
    let mut rows = Vec::new();
    for &theta in thetas {
        let model = DetunedModel::new(theta, FockSpace::new(cutoff)?)?;
        let id = FockOperator::identity(model.space());
        for degree in 1..=max_degree {
            let col = qdm::veronese::veronese_column(&model, degree)?;
            let win = ValidRange {
                lo: degree,
                hi: cutoff - degree,
            };
            let norm_res = col.gram().residual_in(&id, win, win);
            let p = qdm::veronese::veronese_projector(&model, degree)?;
            let psq = p.checked_mul(&p)?;
            let idem_res = psq
                .residual_windowed(
                    &p,
                    |_| (degree, cutoff - degree),
                    |_| (degree, cutoff - degree),
                )
                .unwrap();
            rows.push(VeroneseRowJson {
                theta,
                degree,
                normalization_residual: norm_res,
                idempotence_residual: idem_res,
            });
        }
    }
    let doc = VeroneseTableJson {
        version: crate::report::REPORT_VERSION.to_string(),
        cutoff,
        rows,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("table serializes"))
}

#[derive(Debug, Serialize)]
pub struct ChernJson {
    pub degree: usize,
    pub integral: f64,
    pub exact: f64,
    pub error: f64,
}

pub fn chern_json(degree: usize, tol: f64) -> Result<String, Error> {
    let config = QuadratureConfig::with_tol(tol.max(1e-12));
    let integral = qdm::chern::chern_number(degree, &config)?;
    let doc = ChernJson {
        degree,
        integral,
        exact: degree as f64,
        error: (integral - degree as f64).abs(),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("chern serializes"))
}

/// Parse a comma-separated θ grid.
pub fn parse_theta_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            continue;
        }
        out.push(
            trimmed
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad theta value {trimmed}")))?,
        );
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("empty theta grid".into()));
    }
    Ok(out)
}

/// Shared config echo for report documents.
pub fn config_map(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

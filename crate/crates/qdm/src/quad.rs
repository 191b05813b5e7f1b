//! Adaptive one-dimensional quadrature for the radial integrals.
//!
//! All the integrals needed here reduce to one radial dimension after the
//! angular part is done analytically, so a plain adaptive Simpson rule with
//! an exact finite-interval transform for the half line is enough.

use crate::error::{Error, Result};

/// How the half line [0, ∞) is mapped onto a finite interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialTransform {
    /// u = t/(1−t)
    Rational,
    /// u = tan(πt/2)
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub max_subdivisions: u32,
    pub target_tol: f64,
    pub radial_transform: RadialTransform,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            max_subdivisions: 48,
            target_tol: 1e-10,
            radial_transform: RadialTransform::Rational,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(tol: f64) -> Self {
        assert!(
            tol >= 1e-12,
            "target tolerance below 1e-12 is not honest in f64"
        );
        Self {
            target_tol: tol,
            ..Self::default()
        }
    }
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

// the recursion threads cached endpoint/midpoint evaluations through
#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    m: f64,
    fm: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let (left, lm, flm) = simpson(f, a, fa, m, fm);
    let (right, rm, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureBudgetExceeded { tol });
    }
    let l = adaptive_step(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)?;
    let r = adaptive_step(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// ∫ₐᵇ f dx by adaptive Simpson subdivision.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, config: &QuadratureConfig) -> Result<f64> {
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(&f, a, fa, b, fb);
    adaptive_step(
        &f,
        a,
        fa,
        b,
        fb,
        whole,
        m,
        fm,
        config.target_tol,
        config.max_subdivisions,
    )
}

/// ∫₀^∞ f du via the configured finite-interval substitution. The integrand
/// must decay at least like 1/u² for the endpoint to be tame; the top end is
/// inset by 1e−12 so the transform never evaluates f at u = ∞.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, config: &QuadratureConfig) -> Result<f64> {
    match config.radial_transform {
        RadialTransform::Rational => integrate(
            |t| {
                let denom = 1.0 - t;
                f(t / denom) / (denom * denom)
            },
            0.0,
            1.0 - 1e-12,
            config,
        ),
        RadialTransform::Tangent => {
            let half_pi = std::f64::consts::FRAC_PI_2;
            integrate(
                |t| {
                    let arg = half_pi * t;
                    let cos = arg.cos();
                    f(arg.tan()) * half_pi / (cos * cos)
                },
                0.0,
                1.0 - 1e-12,
                config,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let config = QuadratureConfig::default();
        let got = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &config).unwrap();
        assert!((got - (4.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn half_line_unit_normalization() {
        // ∫₀^∞ du/(1+u)² = 1: the normalization every Chern integral rests on
        for transform in [RadialTransform::Rational, RadialTransform::Tangent] {
            let config = QuadratureConfig {
                radial_transform: transform,
                ..Default::default()
            };
            let got = integrate_half_line(|u| 1.0 / ((1.0 + u) * (1.0 + u)), &config).unwrap();
            assert!((got - 1.0).abs() < 1e-10, "{transform:?}: {got}");
        }
    }

    #[test]
    fn budget_error_on_impossible_request() {
        let config = QuadratureConfig {
            max_subdivisions: 2,
            target_tol: 1e-12,
            radial_transform: RadialTransform::Rational,
        };
        // highly oscillatory on a wide interval with depth 2 cannot converge
        let result = integrate(|x| (40.0 * x).sin() / (1.0 + x * x), 0.0, 30.0, &config);
        assert!(matches!(
            result,
            Err(Error::QuadratureBudgetExceeded { .. })
        ));
    }
}

//! Property tests for the structural invariants of the operator algebra.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qdm::block::{reference_exponential, BlockOperator};
use qdm::classical::{berry_projector, BerryPoint};
use qdm::fock::{creation, diag_fn, FockSpace};
use qdm::linalg::max_abs_diff;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn space(dim: usize) -> FockSpace {
    FockSpace::new(dim).unwrap()
}

/// Every value type is immutable after construction; parameter sweeps may
/// share them across threads freely.
#[test]
fn value_types_are_send_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<qdm::FockOperator>();
    assert_send_sync::<qdm::BlockOperator>();
    assert_send_sync::<qdm::jc::DetunedModel>();
    assert_send_sync::<qdm::pseudo::PseudoModel>();
    assert_send_sync::<qdm::veronese::OperatorColumn>();
    assert_send_sync::<qdm::classical::BerryPoint>();
    assert_send_sync::<qdm::quad::QuadratureConfig>();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// f(N) a† = a† f(N+1) for smooth f: the shift rule behind every
    /// chart identity.
    #[test]
    fn diag_shift_rule(a in -3.0f64..3.0, b in 0.1f64..4.0, dim in 4usize..24) {
        let sp = space(dim);
        let f = move |u: f64| (u * a).sin() + (u + b).sqrt();
        let lhs = diag_fn(sp, f, 0).checked_mul(&creation(sp)).unwrap();
        let rhs = creation(sp).checked_mul(&diag_fn(sp, f, 1)).unwrap();
        prop_assert!(max_abs_diff(lhs.matrix(), rhs.matrix()) < 1e-13);
    }

    /// Interior comparison is symmetric and never grows when the band widens.
    #[test]
    fn interior_residual_band_monotone(
        seed in any::<u64>(),
        dim in 4usize..16,
    ) {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let m1 = DMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
        let m2 = DMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
        let a = BlockOperator::from_blocks(vec![vec![m1]]).unwrap();
        let b = BlockOperator::from_blocks(vec![vec![m2]]).unwrap();
        let mut prev = f64::INFINITY;
        for band in 0..dim {
            let r_ab = a.interior_residual(&b, band).unwrap();
            let r_ba = b.interior_residual(&a, band).unwrap();
            prop_assert_eq!(r_ab, r_ba);
            prop_assert!(r_ab <= prev);
            prev = r_ab;
        }
    }

    /// One-parameter group law of the Hermitian reference exponential.
    #[test]
    fn exponential_group_law(
        s in -5.0f64..5.0,
        t in -5.0f64..5.0,
        w in 0.2f64..2.0,
        dim in 3usize..10,
    ) {
        let sp = space(dim);
        let h = BlockOperator::from_fock_2x2(
            &qdm::fock::number(sp).scale(c(w, 0.0)),
            &qdm::fock::annihilation(sp),
            &creation(sp),
            &qdm::fock::number(sp).scale(c(-w, 0.0)),
        );
        let lhs = reference_exponential(&h, s, true)
            .unwrap()
            .checked_mul(&reference_exponential(&h, t, true).unwrap())
            .unwrap();
        let rhs = reference_exponential(&h, s + t, true).unwrap();
        prop_assert!(lhs.interior_residual(&rhs, 0).unwrap() < 1e-10);
    }

    /// The Hopf projector depends only on the direction of the parameter
    /// point: P(λp) = P(p) for λ > 0.
    #[test]
    fn projector_scale_covariance(
        x in -3.0f64..3.0,
        y in -3.0f64..3.0,
        z in -3.0f64..3.0,
        lambda in 0.01f64..100.0,
    ) {
        let p = BerryPoint::new(x, y, z).unwrap();
        prop_assume!(p.radius() > 1e-6);
        let scaled = BerryPoint::new(lambda * x, lambda * y, lambda * z).unwrap();
        let a = berry_projector(p).unwrap();
        let b = berry_projector(scaled).unwrap();
        let diff = qdm::classical::max_abs2(&(a - b));
        prop_assert!(diff < 1e-12, "diff {}", diff);
    }

    /// Every chart diagonalizer passes its group-membership test.
    #[test]
    fn diagonalizers_are_group_elements(
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
        z in -2.0f64..2.0,
    ) {
        use qdm::classical::{
            berry_diagonalizer, pseudo_diagonalizer, pseudo_domain, su11_generators, Chart,
            PseudoDomain,
        };
        let p = BerryPoint::new(x, y, z).unwrap();
        prop_assume!(p.radius() > 1e-3);
        let id = nalgebra::Matrix2::identity();
        for chart in [Chart::I, Chart::II] {
            if let Ok(a) = berry_diagonalizer(p, chart) {
                let defect = qdm::classical::max_abs2(&(a.adjoint() * a - id));
                prop_assert!(defect < 1e-12);
                prop_assert!((a.determinant() - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
        if pseudo_domain(p) == PseudoDomain::Dplus {
            let (_, _, j, _, _) = su11_generators();
            for chart in [Chart::I, Chart::II] {
                if let Ok(b) = pseudo_diagonalizer(p, chart) {
                    let defect = qdm::classical::max_abs2(&(b.adjoint() * j * b - j));
                    prop_assert!(defect < 1e-11);
                    prop_assert!((b.determinant() - c(1.0, 0.0)).norm() < 1e-11);
                }
            }
        }
    }

    /// Admissible level is the inverse of the defining inequality.
    #[test]
    fn admissible_level_window(theta in 1.0001f64..40.0) {
        let n = qdm::pseudo::admissible_level(theta).unwrap();
        let t2 = theta * theta;
        prop_assert!((n as f64) < t2 && t2 <= (n + 1) as f64);
        prop_assert!(n >= 1);
    }
}

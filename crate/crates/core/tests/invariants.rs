use ddr_core::analysis::profile_metrics;
use ddr_core::atomic::{chi41_with_fallback, zeroth_order_populations};
use ddr_core::propagator::{diffraction_step, propagate};
use ddr_core::{
    integrated_transmission, sample_control_profile, susceptibility_map, AtomicParams, Boundary, Complex64,
    ComplexField2D, ControlProfile, Cut, DriveConfig, GaussianPeak, PropagationConfig, TransverseGrid,
};
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn two_gaussians(n: usize, shift: isize, a: f64, sep: usize, w: f64) -> Vec<f64> {
    let centre = (n / 2) as isize + shift;
    (0..n)
        .map(|i| {
            let u = (i as isize - centre) as f64;
            let s = sep as f64 / 2.0;
            (-((u - s) / w).powi(2)).exp() + a * (-((u + s) / w).powi(2)).exp()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metrics_ignore_intensity_scale(scale in 1e-6f64..1e6, a in 0.5f64..1.0, sep in 20usize..60, w in 5.0f64..12.0) {
        let xs: Vec<f64> = (0..400).map(|i| i as f64 * 1e-4).collect();
        let base = two_gaussians(400, 0, a, sep, w);
        let scaled: Vec<f64> = base.iter().map(|v| v * scale).collect();
        let m0 = profile_metrics(&xs, &base, 0.01).unwrap();
        let m1 = profile_metrics(&xs, &scaled, 0.01).unwrap();
        prop_assert_eq!(m0.peaks.len(), m1.peaks.len());
        for (p, q) in m0.peaks.iter().zip(&m1.peaks) {
            prop_assert!((p.position - q.position).abs() < 1e-12);
            prop_assert!((q.height / p.height / scale - 1.0).abs() < 1e-9);
        }
        for (f, g) in m0.fwhm.iter().zip(&m1.fwhm) {
            prop_assert!((f - g).abs() <= 1e-9 * f);
        }
        prop_assert_eq!(m0.finesse.is_some(), m1.finesse.is_some());
        if let (Some(x), Some(y)) = (m0.central_min_ratio, m1.central_min_ratio) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn metrics_follow_whole_sample_shifts(shift in -40isize..40, a in 0.5f64..1.0, sep in 20usize..60) {
        let dx = 1e-4;
        let xs: Vec<f64> = (0..400).map(|i| i as f64 * dx).collect();
        let m0 = profile_metrics(&xs, &two_gaussians(400, 0, a, sep, 8.0), 0.01).unwrap();
        let m1 = profile_metrics(&xs, &two_gaussians(400, shift, a, sep, 8.0), 0.01).unwrap();
        prop_assert_eq!(m0.peaks.len(), m1.peaks.len());
        for (p, q) in m0.peaks.iter().zip(&m1.peaks) {
            prop_assert!((q.position - p.position - shift as f64 * dx).abs() < 1e-9);
        }
        for (f, g) in m0.fwhm.iter().zip(&m1.fwhm) {
            prop_assert!((f - g).abs() < 1e-9);
        }
    }

    #[test]
    fn transmission_composes(s1 in 0.01f64..10.0, s2 in 0.01f64..10.0) {
        let grid = TransverseGrid::new_1d(128, 0.06);
        let a = ComplexField2D::from_fn(grid, |x, _| c((-(x / 0.01).powi(2)).exp()));
        let b = a.scaled(c(s1.sqrt()));
        let d = b.scaled(Complex64::new(0.0, s2.sqrt()));
        let t_ab = integrated_transmission(&a, &b).unwrap();
        let t_bd = integrated_transmission(&b, &d).unwrap();
        let t_ad = integrated_transmission(&a, &d).unwrap();
        prop_assert!((t_ab * t_bd / t_ad - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diffraction_is_unitary_and_additive(h1 in 0.0f64..0.5, h2 in 0.0f64..0.5, w in 0.003f64..0.02, tilt in -300.0f64..300.0) {
        let grid = TransverseGrid::new_2d(64, 32, 0.06, 0.04);
        let k = AtomicParams::default().k_probe();
        let f = ComplexField2D::from_fn(grid, |x, y| {
            Complex64::from_polar((-(x * x + y * y) / (w * w)).exp(), tilt * x)
        });
        let two = diffraction_step(&diffraction_step(&f, k, h1).unwrap(), k, h2).unwrap();
        let one = diffraction_step(&f, k, h1 + h2).unwrap();
        prop_assert!((two.power() / f.power() - 1.0).abs() < 1e-12);
        let err = two.values.iter().zip(&one.values).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-12 * f.max_norm());
    }

    #[test]
    fn populations_are_normalized_and_nonnegative(
        pump in 0.0f64..1e-3,
        g in 0.1f64..2.0,
        omega in 0.0f64..0.05,
        d2 in -2.0f64..2.0,
        d3 in -2.0f64..2.0,
    ) {
        let params = AtomicParams { pump_rate: pump, ..AtomicParams::default() };
        let drive = DriveConfig { control: c(g), microwave: c(omega), delta_control: d2, delta_microwave: d3, ..DriveConfig::default() };
        let p = zeroth_order_populations(&params, &drive).unwrap();
        prop_assert!((p.sum() - 1.0).abs() < 1e-10);
        for v in [p.rho11, p.rho22, p.rho33, p.rho44] {
            prop_assert!(v > -1e-12);
        }
    }
}

#[test]
fn susceptibility_map_matches_pointwise_evaluation() {
    let grid = TransverseGrid::new_2d(24, 16, 0.06, 0.04);
    let profile = ControlProfile::new(vec![
        GaussianPeak::new(1.0, -0.01, 0.0, 100e-4),
        GaussianPeak::new(0.7, 0.012, 0.004, 80e-4),
    ]);
    let control = sample_control_profile(&profile, &grid);
    let params = AtomicParams {
        pump_rate: 5e-4,
        ..AtomicParams::default()
    };
    let drive = DriveConfig {
        microwave: c(0.015),
        delta_probe: 1e-3,
        ..DriveConfig::default()
    };
    let map = susceptibility_map(&control, &params, &drive).unwrap();
    for (g, chi) in control.values.iter().zip(&map.values) {
        let direct = chi41_with_fallback(&params, &drive.with_control(*g)).unwrap().chi;
        assert_eq!(*chi, direct);
    }
}

#[test]
fn mirrored_doublet_propagates_mirrored() {
    let grid = TransverseGrid::new_1d(256, 0.06);
    let control = sample_control_profile(&ControlProfile::row(1.0, 100e-4, &[-0.01, 0.01]), &grid);
    let probe = sample_control_profile(
        &ControlProfile::new(vec![GaussianPeak::new(0.01, 0.0, 0.0, 250e-4)]),
        &grid,
    );
    let params = AtomicParams {
        pump_rate: 5e-4,
        ..AtomicParams::default()
    };
    let drive = DriveConfig {
        microwave: c(0.015),
        delta_probe: 1e-3,
        ..DriveConfig::default()
    };
    let config = PropagationConfig {
        length: 0.5,
        dz: 5e-3,
        boundary: Boundary::absorbing(),
        ..PropagationConfig::default()
    };
    let rec = propagate(&probe, &control, &params, &drive, &config, &[0.5]).unwrap();
    let (_, out) = rec.last().probe.intensity_cut(Cut::AlongX { y: 0.0 });
    let n = out.len();
    let peak = out.iter().copied().fold(0.0, f64::max);
    // x(i) = (i - n/2) dx, so i and n - i are mirror images
    for i in 1..n / 2 {
        assert!((out[i] - out[n - i]).abs() <= 1e-9 * peak, "asymmetry at sample {i}");
    }
}

mod common;

use std::f64::consts::PI;

use common::{c, fit_scale, phase_grid};
use noon::fock::{coincidence_probability, FockState, ModeLabel};
use noon::optics::*;
use noon::projection::SuperpositionCoeffs;
use num_complex::Complex64;

fn noon_input(n: usize, phi: f64) -> FockState {
    SuperpositionCoeffs::noon(n, phi).unwrap().to_state()
}

#[test]
fn elements_are_unitary() {
    for r in [0.0, 0.1, 1.0 / 3.0, 0.5, 0.9, 1.0] {
        assert!(beam_splitter(r).unwrap().unitarity_error() < 1e-12);
    }
    for d in [0.0, 0.7, PI, 5.0] {
        assert!(phase_delay(d).unitarity_error() < 1e-12);
    }
    for t in [half_wave_plate_22_5(), quarter_wave_plate(), polarizer_45()] {
        assert!(t.unitarity_error() < 1e-12);
    }
}

#[test]
fn network_bookkeeping() {
    for n in 2..=8 {
        let net = build_noon_network(n).unwrap();
        assert_eq!(net.reflectivities.len(), n - 1);
        assert_eq!(net.phase_delays.len(), n);
        assert_eq!(net.detector_modes.len(), n);
        assert!(net.transform.unitarity_error() < 1e-12, "N={n}");
        let cascade = build_cascade_network(n).unwrap();
        for (k, r) in cascade.reflectivities.iter().enumerate() {
            assert_eq!(*r, 1.0 / (n - k) as f64);
        }
        for (k, d) in cascade.phase_delays.iter().enumerate() {
            assert!((d - 2.0 * k as f64 * PI / n as f64).abs() < 1e-15);
        }
    }
    assert!(build_cascade_network(1).is_err());
}

#[test]
fn detector_ratios_are_shifted_roots_of_unity() {
    for n in 2..=8 {
        for net in [build_noon_network(n).unwrap(), build_cascade_network(n).unwrap()] {
            let dets = detector_operators(&net);
            let h0 = dets[0].coeff_h.norm();
            let mut product = c(1.0, 0.0);
            for (k, d) in dets.iter().enumerate() {
                let target = -Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
                assert!((d.ratio() - target).norm() < 1e-12, "N={n} detector {k}");
                assert!((d.coeff_h.norm() - h0).abs() < 1e-12);
                assert!(d.weight() <= 1.0 + 1e-12);
                product *= d.ratio();
            }
            assert!((product + 1.0).norm() < 1e-12, "N={n}: product {product}");
        }
    }
}

#[test]
fn cascade_coefficients() {
    for n in 2..=6 {
        let dets = detector_operators(&build_cascade_network(n).unwrap());
        for d in &dets {
            assert!((d.coeff_h - c(1.0 / (2.0 * n as f64).sqrt(), 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn polarizing_pair_coefficients() {
    let dets = detector_operators(&build_noon_network(4).unwrap());
    let v = [c(-1.0, 0.0), c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0)];
    for (d, v) in dets.iter().zip(v) {
        assert!((d.coeff_h - c(0.5, 0.0)).norm() < 1e-12);
        assert!((d.coeff_v - v * 0.5).norm() < 1e-12);
    }
}

#[test]
fn noon_fringes() {
    for n in 2..=6 {
        let net = build_noon_network(n).unwrap();
        let phis = phase_grid(64, 2.0 * PI);
        let data: Vec<f64> = phis
            .iter()
            .map(|&p| net.simulate_coincidence(&noon_input(n, p)).unwrap())
            .collect();
        let model: Vec<f64> = phis.iter().map(|&p| 1.0 - (n as f64 * p).cos()).collect();
        let (scale, residual) = fit_scale(&data, &model);
        assert!(scale > 0.0);
        assert!(residual < 1e-9, "N={n}: residual {residual:e}");
    }
}

#[test]
fn detector_rows_reproduce_the_network() {
    // operator path on the input modes versus full transform of the state
    for n in 2..=6 {
        let net = build_noon_network(n).unwrap();
        let dets = detector_operators(&net);
        for phi in [0.0, 0.4, 1.3] {
            let coeffs: Vec<Complex64> = (0..=n).map(|k| c(1.0 + 0.3 * k as f64, 0.2 * k as f64 - 0.5)).collect();
            let s = SuperpositionCoeffs::new(coeffs, phi).unwrap().to_state();
            let via_net = net.simulate_coincidence(&s).unwrap();
            let embedded = s.embed(net.transform.modes()).unwrap();
            let via_ops = coincidence_probability(&embedded, &dets).unwrap();
            assert!((via_net - via_ops).abs() < 1e-10 * via_net.max(1e-6), "N={n}");
        }
    }
}

#[test]
fn double_pair_is_dark_on_polarizing_pair() {
    let net = build_noon_network(4).unwrap();
    for phi in phase_grid(64, 2.0 * PI) {
        let s = FockState::basis(&[ModeLabel::h(0), ModeLabel::v(0)], 4, &[(ModeLabel::h(0), 2), (ModeLabel::v(0), 2)])
            .unwrap();
        let phased = s.scaled(Complex64::from_polar(1.0, 2.0 * phi));
        assert!(net.simulate_coincidence(&phased).unwrap() < 1e-12);
    }
}

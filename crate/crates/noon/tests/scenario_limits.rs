mod common;

use std::f64::consts::PI;

use common::phase_grid;
use noon::scenarios::*;
use noon::spectral::{gaussian_jsa, p4_delay, type_one_b_integrals, type_one_fringe, type_one_fringe_from_integrals, OverlapSet};
use proptest::prelude::*;

fn unit_mean(curve: Vec<f64>) -> Vec<f64> {
    let mean = curve.iter().sum::<f64>() / curve.len() as f64;
    curve.into_iter().map(|x| x / mean).collect()
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn separated_pairs_match_the_delay_plateau_ratio() {
    let separate = OverlapSet::from_values(1.0, 0.0).unwrap();
    let spectral = separate.p4_zero_delay() / separate.p4_long_delay();
    let simple = g4_type_two(PairTimingCase::TwoByTwo) / g4_type_two(PairTimingCase::OneByFour);
    assert!((spectral - simple).abs() < 1e-4);
    assert!((simple - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn overlapping_pairs_match_the_dip_null() {
    let j = gaussian_jsa(1.0, 1.0, 0.0).unwrap();
    let long = p4_delay(&j, 10.0 * j.coherence_time()).unwrap();
    let ratio = p4_delay(&j, 0.0).unwrap() / long;
    assert!(ratio < 1e-4);
    assert!(g4_type_two(PairTimingCase::FourByOne) < 1e-12);
}

#[test]
fn epr_fringes_match_type_one_limits() {
    let phis = phase_grid(64, 2.0 * PI);
    for (case, e) in [(PairTimingCase::TwoByTwo, 0.0), (PairTimingCase::FourByOne, 1.0)] {
        let o = OverlapSet::from_values(1.0, e).unwrap();
        let simple = unit_mean(phis.iter().map(|&p| g4_epr_fringe(case, p).unwrap()).collect());
        let spectral = unit_mean(phis.iter().map(|&p| type_one_fringe(&o, p).unwrap()).collect());
        assert!(max_gap(&simple, &spectral) < 1e-6, "{case:?}");
    }
}

#[test]
fn coherent_fringe_matches_factorizable_time_integrals() {
    let phis = phase_grid(64, 2.0 * PI);
    let b = type_one_b_integrals(&gaussian_jsa(1.0, 1.0, 0.0).unwrap()).unwrap();
    let simple = unit_mean(phis.iter().map(|&p| g4_epr_fringe(PairTimingCase::FourByOne, p).unwrap()).collect());
    let spectral = unit_mean(phis.iter().map(|&p| type_one_fringe_from_integrals(&b, p)).collect());
    assert!(max_gap(&simple, &spectral) < 1e-6);
}

#[test]
fn closed_form_fringes() {
    for phi in phase_grid(64, 2.0 * PI) {
        let c4 = (4.0 * phi).cos();
        let two = g4_epr_fringe(PairTimingCase::TwoByTwo, phi).unwrap();
        let four = g4_epr_fringe(PairTimingCase::FourByOne, phi).unwrap();
        assert!((two - 14.0 * (1.0 - 3.0 / 7.0 * c4)).abs() < 1e-12);
        assert!((four - 18.0 * (1.0 - c4)).abs() < 1e-12);
    }
}

#[test]
fn fringe_visibilities() {
    let phis = phase_grid(64, 2.0 * PI);
    let curve = |case| -> Vec<f64> { phis.iter().map(|&p| g4_epr_fringe(case, p).unwrap()).collect() };
    let two = fringe_visibility(&curve(PairTimingCase::TwoByTwo)).unwrap();
    let four = fringe_visibility(&curve(PairTimingCase::FourByOne)).unwrap();
    assert!((two - 3.0 / 7.0).abs() < 1e-12);
    assert!((four - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn fringes_are_non_negative(phi in -20.0f64..20.0) {
        for case in [PairTimingCase::TwoByTwo, PairTimingCase::FourByOne] {
            prop_assert!(g4_epr_fringe(case, phi).unwrap() >= 0.0);
        }
    }
}

//! Single-mode pictures of two emitted pairs seen by four polarization-analyzing
//! detectors, with amplitudes evaluated exactly.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTimingCase {
    /// Pairs emitted far apart: the pairings are distinguishable.
    TwoByTwo,
    /// Pairs emitted together: all four photons are indistinguishable.
    FourByOne,
    /// All four photons distinguishable.
    OneByFour,
}

const R: f64 = FRAC_1_SQRT_2;

/// `(H, V)` coefficients of the four detectors: ±45° and the two circular analyzers.
pub const DETECTORS: [[Complex64; 2]; 4] = [
    [Complex64::new(R, 0.0), Complex64::new(R, 0.0)],
    [Complex64::new(R, 0.0), Complex64::new(-R, 0.0)],
    [Complex64::new(R, 0.0), Complex64::new(0.0, R)],
    [Complex64::new(R, 0.0), Complex64::new(0.0, -R)],
];

/// Detectors that catch the pair emitted first and the pair emitted second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairing {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// The six ways four detectors can split between two pairs: (i) {1,2}{3,4},
/// (ii) {1,3}{2,4}, (iii) {1,4}{2,3}, each in both emission orders.
pub const PAIRINGS: [Pairing; 6] = [
    Pairing { first: (0, 1), second: (2, 3) },
    Pairing { first: (2, 3), second: (0, 1) },
    Pairing { first: (0, 2), second: (1, 3) },
    Pairing { first: (1, 3), second: (0, 2) },
    Pairing { first: (0, 3), second: (1, 2) },
    Pairing { first: (1, 2), second: (0, 3) },
];

/// `⟨0| E_a E_b a_H† a_V† |0⟩` for one orthogonally polarized pair.
fn orthogonal_pair(a: usize, b: usize) -> Complex64 {
    let (ca, cb) = (DETECTORS[a], DETECTORS[b]);
    ca[0] * cb[1] + ca[1] * cb[0]
}

/// `⟨0| E_a E_b (a_H†² + e^{2iφ} a_V†²) |0⟩ / 2`, one parallel-polarized pair.
fn parallel_pair(a: usize, b: usize, phi: f64) -> Complex64 {
    let (ca, cb) = (DETECTORS[a], DETECTORS[b]);
    2.0 * (ca[0] * cb[0] + Complex64::from_polar(1.0, 2.0 * phi) * ca[1] * cb[1])
}

/// Amplitude of one pairing for two `|H V⟩` pairs.
pub fn type_two_amplitude(p: &Pairing) -> Complex64 {
    orthogonal_pair(p.first.0, p.first.1) * orthogonal_pair(p.second.0, p.second.1)
}

/// Amplitude of one pairing for two `|HH⟩ + e^{2iφ}|VV⟩` pairs, scaled so that
/// detectors {1,2} on one pair give `1 − e^{2iφ}`.
pub fn epr_amplitude(p: &Pairing, phi: f64) -> Complex64 {
    parallel_pair(p.first.0, p.first.1, phi) * parallel_pair(p.second.0, p.second.1, phi)
}

/// Four-fold correlation for two orthogonally polarized pairs.
pub fn g4_type_two(case: PairTimingCase) -> f64 {
    match case {
        PairTimingCase::TwoByTwo => PAIRINGS.iter().map(|p| type_two_amplitude(p).norm_sqr()).sum(),
        PairTimingCase::FourByOne => PAIRINGS
            .iter()
            .map(type_two_amplitude)
            .sum::<Complex64>()
            .norm_sqr(),
        PairTimingCase::OneByFour => {
            // photons H, V, H, V each reach a distinct detector
            let polarization = [0usize, 1, 0, 1];
            permutations4()
                .iter()
                .map(|perm| {
                    (0..4)
                        .map(|d| DETECTORS[d][polarization[perm[d]]])
                        .product::<Complex64>()
                        .norm_sqr()
                })
                .sum()
        }
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Four-fold correlation for two parallel-polarized pairs at pair phase φ.
///
/// The two emission orders of a pairing carry equal amplitudes here, so one order
/// of each of the three pairings is kept, matching the normalization of
/// `14(1 − (3/7)cos 4φ)` and `18(1 − cos 4φ)`.
pub fn g4_epr_fringe(case: PairTimingCase, phi: f64) -> Result<f64> {
    let amps = PAIRINGS.iter().step_by(2).map(|p| epr_amplitude(p, phi));
    match case {
        PairTimingCase::TwoByTwo => Ok(amps.map(|a| a.norm_sqr()).sum()),
        PairTimingCase::FourByOne => Ok(amps.sum::<Complex64>().norm_sqr()),
        PairTimingCase::OneByFour => Err(Error::UnsupportedCase(
            "no fringe is defined for four separated photons".into(),
        )),
    }
}

/// `(max − min)/(max + min)` of a sampled curve.
pub fn fringe_visibility(curve: &[f64]) -> Result<f64> {
    let max = curve.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = curve.iter().copied().fold(f64::INFINITY, f64::min);
    if curve.is_empty() || max + min == 0.0 {
        return Err(Error::FlatCurve);
    }
    Ok((max - min) / (max + min))
}

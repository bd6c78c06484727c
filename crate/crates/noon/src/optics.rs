//! Optical elements and the NOON-projection networks built from them.
//!
//! Beam splitters use real positive transmission and reflection phase `i`. Wave
//! plates, phase delays and polarizers act on the two polarization modes of port 0;
//! use [`ModeTransform::relabel`] to move them.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
pub use crate::fock::DetectorOperator;
use crate::fock::{port_modes, FockState, ModeLabel, ModeTransform};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn port0() -> Vec<ModeLabel> {
    port_modes(1)
}

fn on_port(t: ModeTransform, port: u8) -> Result<ModeTransform> {
    t.relabel(|m| ModeLabel::new(port, m.polarization))
}

/// Polarization-independent splitter between ports 0 and 1, with `|r|² = reflectivity`.
pub fn beam_splitter(reflectivity: f64) -> Result<ModeTransform> {
    if !(0.0..=1.0).contains(&reflectivity) {
        return Err(Error::OutOfRange(format!(
            "reflectivity {reflectivity} not in [0, 1]"
        )));
    }
    let t = re((1.0 - reflectivity).sqrt());
    let r = I * reflectivity.sqrt();
    let z = Complex64::default();
    // canonical order: 0H, 0V, 1H, 1V
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        t, z, r, z,
        z, t, z, r,
        r, z, t, z,
        z, r, z, t,
    ]);
    ModeTransform::new(&port_modes(2), m)
}

/// Delays V relative to H by `delta` radians.
pub fn phase_delay(delta: f64) -> ModeTransform {
    let m = DMatrix::from_diagonal(&nalgebra::dvector![re(1.0), Complex64::from_polar(1.0, delta)]);
    ModeTransform::new(&port0(), m).expect("diagonal phase matrix is unitary")
}

fn hadamard() -> DMatrix<Complex64> {
    let s = re(FRAC_1_SQRT_2);
    DMatrix::from_row_slice(2, 2, &[s, s, s, -s])
}

/// Half-wave plate with its axis at 22.5°: rotates H to +45°.
pub fn half_wave_plate_22_5() -> ModeTransform {
    ModeTransform::new(&port0(), hadamard()).expect("hadamard is unitary")
}

/// Quarter-wave plate on the H/V axes: phase `i` on V.
pub fn quarter_wave_plate() -> ModeTransform {
    let m = DMatrix::from_diagonal(&nalgebra::dvector![re(1.0), I]);
    ModeTransform::new(&port0(), m).expect("diagonal phase matrix is unitary")
}

/// Polarizer at 45°: the +45° component leaves in the H slot and is detected; the
/// −45° component leaves in the V slot, which is treated as a loss port.
pub fn polarizer_45() -> ModeTransform {
    ModeTransform::new(&port0(), hadamard()).expect("hadamard is unitary")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkLayout {
    /// Splitter cascade with one polarizer per arm, usable for any N.
    Cascade,
    /// Four-detector layout: one 50:50 splitter, wave plates and polarizing splitters.
    PolarizingPair,
}

/// A projection network together with the bookkeeping used to build it.
///
/// Detectors are listed by increasing phase delay, so detector `n` has
/// `coeff_v / coeff_h = −e^{2πin/N}`.
#[derive(Debug, Clone)]
pub struct ProjectionNetwork {
    pub n: usize,
    pub layout: NetworkLayout,
    /// Nominal split ratio at each branching of the detector tree.
    pub reflectivities: Vec<f64>,
    /// Effective H–V phase delay seen by each detector.
    pub phase_delays: Vec<f64>,
    /// Extra V phase inserted in each arm on top of its delay.
    pub compensation_phases: Vec<f64>,
    pub transform: ModeTransform,
    /// Output mode watched by each detector.
    pub detector_modes: Vec<ModeLabel>,
}

/// The N-fold projection network onto NOON states. N = 4 uses the polarizing-pair
/// layout; other N use the splitter cascade.
pub fn build_noon_network(n: usize) -> Result<ProjectionNetwork> {
    if n == 4 {
        build_polarizing_pair_network()
    } else {
        build_cascade_network(n)
    }
}

fn check_order(n: usize) -> Result<()> {
    if !(2..=8).contains(&n) {
        return Err(Error::OutOfRange(format!("network order {n} not in 2..=8")));
    }
    Ok(())
}

/// Cascade of splitters with reflectivities 1/N, 1/(N−1), …, 1/2 tapping the signal
/// on port 0 into ports 1…N−1; the last arm is port 0 itself.
pub fn build_cascade_network(n: usize) -> Result<ProjectionNetwork> {
    check_order(n)?;
    let modes = port_modes(n as u8);
    let mut total = ModeTransform::identity(&modes)?;
    let mut reflectivities = Vec::with_capacity(n - 1);
    for k in 1..n {
        let r = 1.0 / (n - k + 1) as f64;
        reflectivities.push(r);
        let bs = beam_splitter(r)?
            .relabel(|m| ModeLabel::new(if m.port == 0 { 0 } else { k as u8 }, m.polarization))?
            .embed(&modes)?;
        total = total.then(&bs)?;
    }
    let mut phase_delays = Vec::with_capacity(n);
    let mut detector_modes = Vec::with_capacity(n);
    for k in 1..=n {
        let port = if k < n { k as u8 } else { 0 };
        let delta = 2.0 * (k - 1) as f64 * PI / n as f64;
        let arm = phase_delay(delta + PI).then(&polarizer_45())?;
        total = total.then(&on_port(arm, port)?.embed(&modes)?)?;
        phase_delays.push(delta);
        detector_modes.push(ModeLabel::h(port));
    }
    Ok(ProjectionNetwork {
        n,
        layout: NetworkLayout::Cascade,
        reflectivities,
        phase_delays,
        compensation_phases: vec![PI; n],
        transform: total,
        detector_modes,
    })
}

/// N = 4 network: a 50:50 splitter, a half-wave plate in one arm, quarter- then
/// half-wave plates in the other, and a polarizing splitter on each arm.
pub fn build_polarizing_pair_network() -> Result<ProjectionNetwork> {
    let modes = port_modes(2);
    let arm_b = quarter_wave_plate().then(&half_wave_plate_22_5())?;
    let total = beam_splitter(0.5)?
        .then(&half_wave_plate_22_5().embed(&modes)?)?
        .then(&on_port(arm_b, 1)?.embed(&modes)?)?;
    let mut net = ProjectionNetwork {
        n: 4,
        layout: NetworkLayout::PolarizingPair,
        reflectivities: vec![0.5; 3],
        phase_delays: Vec::new(),
        compensation_phases: vec![0.0; 4],
        transform: total,
        detector_modes: modes,
    };
    net.sort_detectors_by_delay()?;
    Ok(net)
}

impl ProjectionNetwork {
    fn detector_row(&self, mode: ModeLabel) -> Result<DetectorOperator> {
        let modes = self.transform.modes();
        let row = modes
            .binary_search(&mode)
            .map_err(|_| Error::DimensionMismatch(format!("detector mode {mode} missing")))?;
        let u = self.transform.matrix();
        let ih = modes.binary_search(&ModeLabel::h(0)).unwrap();
        let iv = modes.binary_search(&ModeLabel::v(0)).unwrap();
        let h = u[(row, ih)];
        let phase = if h.norm() > 0.0 { h.conj() / h.norm() } else { re(1.0) };
        let loss = (0..modes.len())
            .filter(|&j| j != ih && j != iv)
            .map(|j| u[(row, j)] * phase)
            .collect();
        Ok(DetectorOperator::with_loss(h * phase, u[(row, iv)] * phase, loss))
    }

    /// Orders detectors by the index n of their ratio `−e^{2πin/N}`.
    fn sort_detectors_by_delay(&mut self) -> Result<()> {
        let mut indexed = Vec::with_capacity(self.n);
        for &m in &self.detector_modes {
            let d = self.detector_row(m)?;
            indexed.push((delay_index(d.ratio(), self.n), m));
        }
        indexed.sort();
        self.detector_modes = indexed.iter().map(|&(_, m)| m).collect();
        self.phase_delays = indexed
            .iter()
            .map(|&(k, _)| 2.0 * k as f64 * PI / self.n as f64)
            .collect();
        Ok(())
    }

    /// Runs `input` (on the port-0 signal modes) through the network and returns the
    /// rate of joint clicks on every detector mode.
    pub fn simulate_coincidence(&self, input: &FockState) -> Result<f64> {
        let out = input
            .embed(self.transform.modes())?
            .apply_transform(&self.transform)?;
        let mut s = out;
        for &m in &self.detector_modes {
            s = s.annihilate(m)?;
        }
        Ok(s.norm_sqr())
    }
}

fn delay_index(ratio: Complex64, n: usize) -> usize {
    let angle = (-ratio).arg().rem_euclid(2.0 * PI);
    ((angle * n as f64 / (2.0 * PI)).round() as usize) % n
}

/// Detector operators of a network, expressed on its input modes.
pub fn detector_operators(net: &ProjectionNetwork) -> Vec<DetectorOperator> {
    net.detector_modes
        .iter()
        .map(|&m| net.detector_row(m).expect("detector modes belong to the network"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn splitter_limits() {
        let id = beam_splitter(0.0).unwrap();
        assert_eq!(id.matrix(), &DMatrix::identity(4, 4));
        let swap = beam_splitter(1.0).unwrap();
        assert_eq!(swap.matrix()[(2, 0)], I);
        assert_eq!(swap.matrix()[(0, 0)], re(0.0));
        assert!(matches!(beam_splitter(1.5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn phase_delay_examples() {
        let s = FockState::basis(&port0(), 1, &[(ModeLabel::v(0), 1)]).unwrap();
        let out = s.apply_transform(&phase_delay(PI)).unwrap();
        assert!(close(out.amplitude(&[(ModeLabel::v(0), 1)]).unwrap(), re(-1.0), 1e-15));
        let twice = phase_delay(PI / 2.0).then(&phase_delay(PI / 2.0)).unwrap();
        for (a, b) in twice.matrix().iter().zip(phase_delay(PI).matrix().iter()) {
            assert!(close(*a, *b, 1e-15));
        }
        assert_eq!(phase_delay(0.0).matrix(), &DMatrix::identity(2, 2));
    }

    #[test]
    fn wave_plates() {
        let s = FockState::basis(&port0(), 1, &[(ModeLabel::h(0), 1)]).unwrap();
        let out = s.apply_transform(&half_wave_plate_22_5()).unwrap();
        assert_abs_diff_eq!(out.amplitude(&[(ModeLabel::h(0), 1)]).unwrap().re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(out.amplitude(&[(ModeLabel::v(0), 1)]).unwrap().re, FRAC_1_SQRT_2, epsilon = 1e-15);
        let q = quarter_wave_plate();
        assert_eq!(q.matrix()[(1, 1)], I);
        assert_eq!(q.matrix()[(0, 0)], re(1.0));
        assert!(half_wave_plate_22_5().unitarity_error() < 1e-15);
        assert!(q.unitarity_error() < 1e-15);
    }

    #[test]
    fn order_outside_range_is_rejected() {
        assert!(matches!(build_noon_network(1), Err(Error::OutOfRange(_))));
        assert!(matches!(build_noon_network(9), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn two_photon_network_coefficients() {
        let net = build_noon_network(2).unwrap();
        let d = detector_operators(&net);
        assert!(close(d[0].coeff_h, re(0.5), 1e-14));
        assert!(close(d[0].coeff_v, re(-0.5), 1e-14));
        assert!(close(d[1].coeff_h, re(0.5), 1e-14));
        assert!(close(d[1].coeff_v, re(0.5), 1e-14));
    }

    #[test]
    fn four_photon_network_matches_polarizing_layout() {
        let net = build_noon_network(4).unwrap();
        assert_eq!(net.layout, NetworkLayout::PolarizingPair);
        assert_eq!(net.reflectivities.len(), 3);
        assert_eq!(net.phase_delays.len(), 4);
        let expected = [re(-1.0), -I, re(1.0), I];
        for (d, v) in detector_operators(&net).iter().zip(expected) {
            assert!(close(d.coeff_h, re(0.5), 1e-14));
            assert!(close(d.coeff_v, v * 0.5, 1e-14));
        }
    }

    #[test]
    fn three_photon_ratios() {
        let net = build_noon_network(3).unwrap();
        let ds = detector_operators(&net);
        for (n, d) in ds.iter().enumerate() {
            let want = -Complex64::from_polar(1.0, 2.0 * PI * n as f64 / 3.0);
            assert!(close(d.ratio(), want, 1e-12));
            assert_abs_diff_eq!(d.coeff_h.norm(), ds[0].coeff_h.norm(), epsilon = 1e-14);
        }
    }
}

//! Visibility loss from a tilted pair of interfering beams on a finite detector.

use std::f64::consts::PI;

use super::overlaps::OverlapSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    TypeTwo,
    TypeOne,
}

/// Detector of width `detector_size` behind a fringe pattern of period
/// `fringe_spacing = wavelength / tilt` (metres, radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisalignmentGeometry {
    pub detector_size: f64,
    pub fringe_spacing: f64,
    pub wavelength: Option<f64>,
    pub tilt: Option<f64>,
}

impl MisalignmentGeometry {
    pub fn from_fringe_spacing(detector_size: f64, fringe_spacing: f64) -> Self {
        Self {
            detector_size,
            fringe_spacing,
            wavelength: None,
            tilt: None,
        }
    }

    pub fn from_tilt(detector_size: f64, wavelength: f64, tilt: f64) -> Self {
        Self {
            detector_size,
            fringe_spacing: wavelength / tilt,
            wavelength: Some(wavelength),
            tilt: Some(tilt),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.fringe_spacing > 0.0 && self.fringe_spacing.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "fringe spacing {} must be positive",
                self.fringe_spacing
            )));
        }
        if !(self.detector_size >= 0.0 && self.detector_size.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "detector size {} must be non-negative",
                self.detector_size
            )));
        }
        Ok(())
    }

    /// Single-photon visibility `sinc(πΔx/L)`.
    pub fn v(&self) -> Result<f64> {
        self.validate()?;
        let x = PI * self.detector_size / self.fringe_spacing;
        Ok(if x == 0.0 { 1.0 } else { x.sin() / x })
    }

    /// Two-photon visibility `v²`.
    pub fn v2(&self) -> Result<f64> {
        Ok(self.v()?.powi(2))
    }
}

pub fn v2_from_geometry(geom: &MisalignmentGeometry) -> Result<f64> {
    geom.v2()
}

/// Four-photon visibility when each two-photon interference has visibility `v2`.
pub fn misaligned_visibility(o: &OverlapSet, v2: f64, scheme: Scheme) -> Result<f64> {
    if !(0.0..=1.0).contains(&v2) {
        return Err(Error::OutOfRange(format!("v2 = {v2} not in [0, 1]")));
    }
    if !(o.a > 0.0) {
        return Err(Error::DegenerateJsa("𝒜 = 0".into()));
    }
    let (a, e) = (o.a, o.e.re);
    Ok(match scheme {
        Scheme::TypeTwo => (2.0 * v2 * (a + 3.0 * e) - v2 * v2 * (a + e)) / (3.0 * (a + e)),
        Scheme::TypeOne => {
            3.0 * (a + 2.0 * e) * v2 * v2 / ((6.0 + v2 * v2) * a + 2.0 * e * (3.0 - 2.0 * v2))
        }
    })
}

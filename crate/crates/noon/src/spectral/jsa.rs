//! Joint spectral amplitudes and their sampling on quadrature grids.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::quadrature::{gauss_legendre, trapezoid};
use crate::error::{Error, Result};

/// Half-width of the Gaussian frequency box, in units of `√((σ₊²+σ₋²)/2)`.
pub const BOX_HALF_WIDTH: f64 = 6.5;
/// Fewest Gauss–Legendre nodes per frequency axis.
pub const DEFAULT_NODES: usize = 64;
/// Most nodes per axis a Gaussian form is refined to before giving up.
pub const MAX_NODES: usize = 1024;
/// Largest edge value of a sampled grid, relative to its peak magnitude.
pub const EDGE_TOLERANCE: f64 = 1e-8;
/// Nodes per axis for each narrowest-bandwidth unit of the box half-width, so
/// that a thin ridge along either diagonal stays resolved.
const NODES_PER_WIDTH: f64 = 4.0;
const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum JsaForm {
    /// `exp(−(ν₁+ν₂)²/4σ₊² − (ν₁−ν₂)²/4σ₋²)` in detunings `ν = ω − ω₀`.
    Gaussian { sigma_plus: f64, sigma_minus: f64 },
    /// Samples `values[(i, j)] = Φ(ω₀+ν_i, ω₀+ν_j)` on a uniform detuning grid.
    Grid { detunings: Vec<f64>, values: DMatrix<Complex64> },
}

/// A two-photon spectrum, scaled so that `∫|Φ|² dω₁dω₂ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralAmplitude {
    form: JsaForm,
    center: f64,
    symmetric: bool,
    norm: f64,
}

/// Gaussian spectrum with sum-frequency width `sigma_plus` and difference width
/// `sigma_minus` (rad/s) around the degenerate frequency `center`.
pub fn gaussian_jsa(sigma_plus: f64, sigma_minus: f64, center: f64) -> Result<JointSpectralAmplitude> {
    for (name, s) in [("sigma_plus", sigma_plus), ("sigma_minus", sigma_minus)] {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::OutOfRange(format!("{name} = {s} must be positive")));
        }
    }
    if !center.is_finite() {
        return Err(Error::OutOfRange("center frequency must be finite".into()));
    }
    Ok(JointSpectralAmplitude {
        form: JsaForm::Gaussian {
            sigma_plus,
            sigma_minus,
        },
        center,
        symmetric: true,
        norm: 1.0 / (PI * sigma_plus * sigma_minus).sqrt(),
    })
}

/// A spectrum tabulated on a uniform detuning grid (rad/s) around `center`.
pub fn grid_jsa(
    center: f64,
    detunings: Vec<f64>,
    values: DMatrix<Complex64>,
) -> Result<JointSpectralAmplitude> {
    let n = detunings.len();
    if n < 3 || values.nrows() != n || values.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} samples on {n} detunings",
            values.nrows(),
            values.ncols()
        )));
    }
    let h = detunings[1] - detunings[0];
    let uniform = h > 0.0
        && detunings
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
    if !uniform {
        return Err(Error::GridInadequate("detunings must be uniform and increasing".into()));
    }
    let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::DegenerateJsa("samples are zero or non-finite".into()));
    }
    let edge = (0..n)
        .flat_map(|k| [(0, k), (n - 1, k), (k, 0), (k, n - 1)])
        .map(|ij| values[ij].norm())
        .fold(0.0, f64::max);
    if edge > EDGE_TOLERANCE * peak {
        return Err(Error::GridInadequate(format!(
            "edge magnitude {:.2e} of peak exceeds {EDGE_TOLERANCE:e}",
            edge / peak
        )));
    }
    let asym = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (values[(i, j)] - values[(j, i)]).norm())
        .fold(0.0, f64::max);
    let rule = trapezoid(&detunings);
    let mut mass = 0.0;
    for i in 0..n {
        for j in 0..n {
            mass += rule.weights[i] * rule.weights[j] * values[(i, j)].norm_sqr();
        }
    }
    Ok(JointSpectralAmplitude {
        form: JsaForm::Grid { detunings, values },
        center,
        symmetric: asym <= SYMMETRY_TOLERANCE * peak,
        norm: 1.0 / mass.sqrt(),
    })
}

/// A spectrum sampled on a product quadrature grid, `values` already normalized.
#[derive(Debug, Clone)]
pub struct SpectralGrid {
    pub detunings: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: DMatrix<Complex64>,
    /// Largest `|t| + |t′|` (or delay) the grid resolves, in seconds.
    pub window: f64,
}

impl JointSpectralAmplitude {
    pub fn form(&self) -> &JsaForm {
        &self.form
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Normalized `Φ` at detunings `(ν₁, ν₂)`; grid forms return `None` off-grid.
    pub fn value(&self, nu1: f64, nu2: f64) -> Option<Complex64> {
        match &self.form {
            JsaForm::Gaussian {
                sigma_plus,
                sigma_minus,
            } => {
                let s = nu1 + nu2;
                let d = nu1 - nu2;
                let e = -s * s / (4.0 * sigma_plus * sigma_plus) - d * d / (4.0 * sigma_minus * sigma_minus);
                Some(Complex64::new(self.norm * e.exp(), 0.0))
            }
            JsaForm::Grid { detunings, values } => {
                let i = detunings.iter().position(|&x| x == nu1)?;
                let j = detunings.iter().position(|&x| x == nu2)?;
                Some(values[(i, j)] * self.norm)
            }
        }
    }

    /// RMS widths of `|Φ|²` in `ν₁+ν₂` and `ν₁−ν₂`.
    pub fn bandwidths(&self) -> (f64, f64) {
        match &self.form {
            JsaForm::Gaussian {
                sigma_plus,
                sigma_minus,
            } => (*sigma_plus, *sigma_minus),
            JsaForm::Grid { detunings, values } => {
                let rule = trapezoid(detunings);
                let mut m = [0.0f64; 5];
                for (i, &x) in detunings.iter().enumerate() {
                    for (j, &y) in detunings.iter().enumerate() {
                        let p = rule.weights[i] * rule.weights[j] * values[(i, j)].norm_sqr();
                        m[0] += p;
                        m[1] += p * (x + y);
                        m[2] += p * (x + y) * (x + y);
                        m[3] += p * (x - y);
                        m[4] += p * (x - y) * (x - y);
                    }
                }
                let var = |a: f64, b: f64| (b / m[0] - (a / m[0]).powi(2)).max(0.0).sqrt();
                (var(m[1], m[2]), var(m[3], m[4]))
            }
        }
    }

    /// `1/(2 min(σ₊, σ₋))`. Delay-dependent overlaps decay on the scale of the
    /// narrowest bandwidth; for anticorrelated spectra that is σ₊, not σ₋.
    pub fn coherence_time(&self) -> f64 {
        let (bp, bm) = self.bandwidths();
        0.5 / bp.min(bm)
    }

    /// Samples the spectrum on a grid that resolves times up to `max_time`.
    pub fn sample(&self, max_time: f64) -> Result<SpectralGrid> {
        match &self.form {
            JsaForm::Gaussian {
                sigma_plus,
                sigma_minus,
            } => {
                let half = BOX_HALF_WIDTH * ((sigma_plus.powi(2) + sigma_minus.powi(2)) / 2.0).sqrt();
                let resolve = (NODES_PER_WIDTH * half / sigma_plus.min(*sigma_minus)).ceil() as usize;
                let needed = (half * max_time.abs()).ceil() as usize;
                let n = needed.max(resolve).max(DEFAULT_NODES).next_multiple_of(8);
                if n > MAX_NODES {
                    return Err(Error::WindowExceeded {
                        time: max_time,
                        window: MAX_NODES as f64 / half,
                    });
                }
                let rule = gauss_legendre(n, half);
                let values = DMatrix::from_fn(n, n, |i, j| {
                    self.value(rule.nodes[i], rule.nodes[j]).unwrap()
                });
                Ok(SpectralGrid {
                    window: n as f64 / half,
                    detunings: rule.nodes,
                    weights: rule.weights,
                    values,
                })
            }
            JsaForm::Grid { detunings, values } => {
                let h = detunings[1] - detunings[0];
                let window = PI / h;
                if max_time.abs() > window {
                    return Err(Error::WindowExceeded {
                        time: max_time,
                        window,
                    });
                }
                let rule = trapezoid(detunings);
                Ok(SpectralGrid {
                    detunings: rule.nodes,
                    weights: rule.weights,
                    values: values * Complex64::new(self.norm, 0.0),
                    window,
                })
            }
        }
    }
}

impl SpectralGrid {
    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    /// `∫ Φ(ν₁,ν₂) e^{−iν₁t − iν₂t′}` for every pair of `times`, as a matrix.
    pub fn kernel_matrix(&self, times: &[f64]) -> DMatrix<Complex64> {
        let f = DMatrix::from_fn(times.len(), self.len(), |i, k| {
            Complex64::from_polar(self.weights[k], -self.detunings[k] * times[i])
        });
        &f * &self.values * f.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_widths() {
        assert!(matches!(gaussian_jsa(0.0, 1.0, 0.0), Err(Error::OutOfRange(_))));
        assert!(matches!(gaussian_jsa(1.0, -1.0, 0.0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn gaussian_is_symmetric_and_normalized() {
        let j = gaussian_jsa(0.5, 2.0, 10.0).unwrap();
        let g = j.sample(0.0).unwrap();
        let mut asym = 0.0f64;
        let mut mass = 0.0;
        for i in 0..g.len() {
            for k in 0..g.len() {
                asym = asym.max((g.values[(i, k)] - g.values[(k, i)]).norm());
                mass += g.weights[i] * g.weights[k] * g.values[(i, k)].norm_sqr();
            }
        }
        assert!(asym < 1e-12);
        assert!((mass - 1.0).abs() < 1e-9, "{mass}");
    }

    #[test]
    fn box_edges_are_negligible() {
        for (sp, sm) in [(1.0, 1.0), (1.0, 4.0), (4.0, 1.0)] {
            let j = gaussian_jsa(sp, sm, 0.0).unwrap();
            let g = j.sample(0.0).unwrap();
            let n = g.len();
            let peak = g.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let edge = (0..n)
                .flat_map(|k| [(0, k), (n - 1, k), (k, 0), (k, n - 1)])
                .map(|ij| g.values[ij].norm())
                .fold(0.0, f64::max);
            assert!(edge < EDGE_TOLERANCE * peak, "{sp} {sm}: {}", edge / peak);
        }
    }

    #[test]
    fn grid_checks_edges_and_recovers_bandwidths() {
        let nu: Vec<f64> = (0..121).map(|k| -12.0 + 0.2 * k as f64).collect();
        let j = gaussian_jsa(1.5, 0.8, 0.0).unwrap();
        let vals = DMatrix::from_fn(121, 121, |a, b| j.value(nu[a], nu[b]).unwrap() * 3.0);
        let g = grid_jsa(0.0, nu.clone(), vals).unwrap();
        assert!(g.is_symmetric());
        let (bp, bm) = g.bandwidths();
        assert!((bp - 1.5).abs() < 1e-9 && (bm - 0.8).abs() < 1e-9, "{bp} {bm}");
        let wide = DMatrix::from_element(121, 121, Complex64::new(1.0, 0.0));
        assert!(matches!(grid_jsa(0.0, nu, wide), Err(Error::GridInadequate(_))));
    }

    #[test]
    fn refinement_is_capped() {
        let j = gaussian_jsa(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(j.sample(1e6), Err(Error::WindowExceeded { .. })));
    }
}

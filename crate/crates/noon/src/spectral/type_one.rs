//! Type-I pair sources: time-domain integrals of the four-detector amplitudes and
//! the resulting fringe.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::contraction::{contract, Factor};
use super::jsa::JointSpectralAmplitude;
use super::overlaps::OverlapSet;
use super::quadrature::gauss_legendre;
use crate::error::{Error, Result};

/// `∫|b₁|²`, `∫|b₂|²` and `∫b₁b₂*` over all four detection times, divided by `(2π)⁴`
/// so they compare directly with the frequency-domain overlaps, where
/// `b₁ = g₁₂g₃₄ + g₁₃g₂₄ + g₁₄g₃₂` and `b₂ = g₁₃g₂₄ − g₁₄g₂₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeOneIntegrals {
    pub b1: f64,
    pub b2: f64,
    pub b12: Complex64,
}

type Term = (f64, [(usize, usize); 2]);

const B1_TERMS: [Term; 3] = [
    (1.0, [(0, 1), (2, 3)]),
    (1.0, [(0, 2), (1, 3)]),
    (1.0, [(0, 3), (2, 1)]),
];
const B2_TERMS: [Term; 2] = [(1.0, [(0, 2), (1, 3)]), (-1.0, [(0, 3), (1, 2)])];

/// Half-width of the time box in units of `√(1/σ₊² + 1/σ₋²)`.
const TIME_BOX: f64 = 4.0;
/// Time nodes per unit of `box half-width × largest bandwidth`.
const TIME_NODE_DENSITY: f64 = 10.0;
const MIN_TIME_NODES: usize = 96;

/// Time-domain quadrature of the type-I integrals with `g` sampled from the spectrum.
pub fn type_one_b_integrals(jsa: &JointSpectralAmplitude) -> Result<TypeOneIntegrals> {
    let (bp, bm) = jsa.bandwidths();
    if !(bp > 0.0 && bm > 0.0) {
        return Err(Error::DegenerateJsa("zero bandwidth".into()));
    }
    let half = TIME_BOX * (1.0 / (bp * bp) + 1.0 / (bm * bm)).sqrt();
    let nodes = ((TIME_NODE_DENSITY * half * bp.max(bm)).ceil() as usize)
        .max(MIN_TIME_NODES)
        .next_multiple_of(8);
    let rule = gauss_legendre(nodes, half);
    let grid = jsa.sample(2.0 * half).map_err(|e| match e {
        Error::WindowExceeded { time, window } => Error::GridInadequate(format!(
            "time span {time:e} s exceeds the resolvable window {window:e} s"
        )),
        other => other,
    })?;
    let g = grid.kernel_matrix(&rule.nodes);
    let w: [Vec<Complex64>; 4] =
        std::array::from_fn(|_| rule.weights.iter().map(|&x| Complex64::new(x, 0.0)).collect());
    let cross = |a: &[Term], b: &[Term]| -> Complex64 {
        let mut acc = Complex64::default();
        for (ca, sa) in a {
            for (cb, sb) in b {
                let u = [Factor::new(&g, sa[0].0, sa[0].1), Factor::new(&g, sa[1].0, sa[1].1)];
                let v = [Factor::new(&g, sb[0].0, sb[0].1), Factor::new(&g, sb[1].0, sb[1].1)];
                acc += ca * cb * contract(u, v, &w);
            }
        }
        acc / (2.0 * PI).powi(4)
    };
    Ok(TypeOneIntegrals {
        b1: cross(&B1_TERMS, &B1_TERMS).re,
        b2: cross(&B2_TERMS, &B2_TERMS).re,
        b12: cross(&B1_TERMS, &B2_TERMS),
    })
}

fn check(o: &OverlapSet) -> Result<()> {
    if !(o.a > 0.0) {
        return Err(Error::DegenerateJsa("𝒜 = 0".into()));
    }
    Ok(())
}

/// `3(𝒜+2ℰ)/(7𝒜+2ℰ)`, the visibility of the type-I four-photon fringe.
pub fn type_one_visibility(o: &OverlapSet) -> Result<f64> {
    check(o)?;
    let e = o.e.re;
    Ok(3.0 * (o.a + 2.0 * e) / (7.0 * o.a + 2.0 * e))
}

/// `64(ℰ + 7𝒜/2)(1 − 𝒱 cos 4φ)`, the type-I rate at pair phase φ.
pub fn type_one_fringe(o: &OverlapSet, phi: f64) -> Result<f64> {
    let v = type_one_visibility(o)?;
    Ok(64.0 * (o.e.re + 3.5 * o.a) * (1.0 - v * (4.0 * phi).cos()))
}

/// `64(B₂ + B₁ sin²2φ − 2 Re B₁₂ sin 2φ)`, the same rate from the time integrals.
pub fn type_one_fringe_from_integrals(b: &TypeOneIntegrals, phi: f64) -> f64 {
    let s = (2.0 * phi).sin();
    64.0 * (b.b2 + b.b1 * s * s - 2.0 * b.b12.re * s)
}

//! Fourth-order spectral overlaps and the delay-dependent four-photon rate.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::contraction::{contract, Factor};
use super::jsa::{JointSpectralAmplitude, SpectralGrid};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// The overlap integrals of a spectrum, with delay-resolved curves on `tau`.
///
/// Frequency slots are `(ω₁, ω₂, ω₁′, ω₂′)`. Curves:
/// * `a1 = A(τ)A(0)`, `a2 = A(τ)²` with `A(τ) = ∫|Φ(ω₁,ω₂)|² e^{i(ω₂−ω₁)τ}`
/// * `e1 = ∫Φ(ω₁,ω₂)Φ(ω₁′,ω₂′)Φ*(ω₁,ω₂′)Φ*(ω₁′,ω₂) e^{i(ω₂−ω₁)τ}`
/// * `e2 = ∫Φ*(ω₁,ω₂)Φ*(ω₁′,ω₂′)Φ(ω₁,ω₂′)Φ(ω₁′,ω₂) e^{i(ω₂−ω₁)τ}`
/// * `e3 = ∫Φ(ω₁,ω₂)Φ(ω₁′,ω₂′)Φ*(ω₁,ω₁′)Φ*(ω₂,ω₂′) e^{i(ω₂′−ω₁)τ}`
/// * `e2sup = ∫Φ(ω₁,ω₂)Φ(ω₁′,ω₂′)Φ*(ω₁,ω₂′)Φ*(ω₁′,ω₂) e^{i(ω₂−ω₁+ω₂′−ω₁′)τ}`
///
/// Amounts are in arbitrary units fixed by `∫|Φ|² = 1`, so `a` is 1 for
/// spectra built by this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSet {
    pub a: f64,
    pub e: Complex64,
    pub tau: Vec<f64>,
    pub a1: Vec<Complex64>,
    pub a2: Vec<Complex64>,
    pub e1: Vec<Complex64>,
    pub e2: Vec<Complex64>,
    pub e3: Vec<Complex64>,
    pub e2sup: Vec<Complex64>,
}

impl OverlapSet {
    /// Only the two scalar overlaps, without delay curves.
    pub fn from_values(a: f64, e: f64) -> Result<Self> {
        if !(a >= 0.0) || !e.is_finite() || e.abs() > a {
            return Err(Error::OutOfRange(format!("overlaps need |e| <= a, got a={a}, e={e}")));
        }
        Ok(Self {
            a,
            e: Complex64::new(e, 0.0),
            tau: Vec::new(),
            a1: Vec::new(),
            a2: Vec::new(),
            e1: Vec::new(),
            e2: Vec::new(),
            e3: Vec::new(),
            e2sup: Vec::new(),
        })
    }

    /// `ℰ/𝒜`.
    pub fn ratio(&self) -> f64 {
        self.e.re / self.a
    }

    /// Four-photon rate at `tau[index]`, in the units of `a`:
    /// `4[12(𝒜+ℰ) + 4ℰ⁽²⁾ − 8ℰ₁ − 8ℰ₂ − 8ℰ₃ + 4𝒜⁽²⁾ − 8𝒜⁽¹⁾]`.
    pub fn p4(&self, index: usize) -> f64 {
        let v = 12.0 * (self.a + self.e) + 4.0 * self.e2sup[index]
            - 8.0 * (self.e1[index] + self.e2[index] + self.e3[index])
            + 4.0 * self.a2[index]
            - 8.0 * self.a1[index];
        (4.0 * v.re).max(0.0)
    }

    /// `32(𝒜−ℰ)`, the rate at zero delay.
    pub fn p4_zero_delay(&self) -> f64 {
        32.0 * (self.a - self.e.re)
    }

    /// `48(𝒜+ℰ)`, the rate once the pairs no longer overlap.
    pub fn p4_long_delay(&self) -> f64 {
        48.0 * (self.a + self.e.re)
    }
}

fn slot_weights(grid: &SpectralGrid, phases: [i32; 4], tau: f64) -> [Vec<Complex64>; 4] {
    std::array::from_fn(|s| {
        grid.detunings
            .iter()
            .zip(&grid.weights)
            .map(|(&nu, &w)| Complex64::from_polar(w, phases[s] as f64 * nu * tau))
            .collect()
    })
}

type Slots = [(usize, usize); 2];

fn four_point(grid: &SpectralGrid, u: Slots, v: Slots, phases: [i32; 4], tau: f64) -> Complex64 {
    let m = &grid.values;
    contract(
        [Factor::new(m, u[0].0, u[0].1), Factor::new(m, u[1].0, u[1].1)],
        [Factor::new(m, v[0].0, v[0].1), Factor::new(m, v[1].0, v[1].1)],
        &slot_weights(grid, phases, tau),
    )
}

fn delay_two_point(grid: &SpectralGrid, tau: f64) -> Complex64 {
    let n = grid.len();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            let w = grid.weights[i] * grid.weights[j] * grid.values[(i, j)].norm_sqr();
            acc += Complex64::from_polar(w, (grid.detunings[j] - grid.detunings[i]) * tau);
        }
    }
    acc
}

const PAIRED: Slots = [(0, 1), (2, 3)];
const CROSSED: Slots = [(0, 3), (2, 1)];
const EXCHANGED: Slots = [(0, 2), (1, 3)];

/// Evaluates every overlap on a grid fine enough for the largest `|τ|`.
pub fn overlaps(jsa: &JointSpectralAmplitude, tau: &[f64]) -> Result<OverlapSet> {
    let max_tau = tau.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let grid = jsa.sample(max_tau).map_err(|e| match e {
        Error::WindowExceeded { time, window } => Error::GridInadequate(format!(
            "delay {time:e} s exceeds the resolvable window {window:e} s"
        )),
        other => other,
    })?;
    overlaps_on(&grid, tau)
}

pub(crate) fn overlaps_on(grid: &SpectralGrid, tau: &[f64]) -> Result<OverlapSet> {
    let mass = delay_two_point(grid, 0.0).re;
    let a = mass * mass;
    let e = four_point(grid, PAIRED, EXCHANGED, [0; 4], 0.0);
    if !(a > 0.0) {
        return Err(Error::DegenerateJsa("∫|Φ|² vanishes on the grid".into()));
    }
    let mut set = OverlapSet {
        a,
        e,
        tau: tau.to_vec(),
        a1: Vec::with_capacity(tau.len()),
        a2: Vec::with_capacity(tau.len()),
        e1: Vec::with_capacity(tau.len()),
        e2: Vec::with_capacity(tau.len()),
        e3: Vec::with_capacity(tau.len()),
        e2sup: Vec::with_capacity(tau.len()),
    };
    for &t in tau {
        let at = delay_two_point(grid, t);
        set.a1.push(at * mass);
        set.a2.push(at * at);
        set.e1.push(four_point(grid, PAIRED, CROSSED, [-1, 1, 0, 0], t));
        set.e2.push(four_point(grid, CROSSED, PAIRED, [-1, 1, 0, 0], t));
        set.e3.push(four_point(grid, PAIRED, EXCHANGED, [-1, 0, 0, 1], t));
        set.e2sup.push(four_point(grid, PAIRED, CROSSED, [-1, 1, -1, 1], t));
    }
    Ok(set)
}

/// Four-photon rate at H–V delay `delta_t` (s), from the overlap formula.
pub fn p4_delay(jsa: &JointSpectralAmplitude, delta_t: f64) -> Result<f64> {
    let grid = jsa.sample(delta_t.abs())?;
    Ok(overlaps_on(&grid, &[delta_t])?.p4(0))
}

/// The twelve products `g(t_a, t_b − ΔT) g(t_c, t_d − ΔT)` in the four-detector
/// amplitude, with the H-time slot listed first in each factor.
const AMPLITUDE_TERMS: [(Complex64, Slots); 12] = [
    // HHVV
    (ONE, [(0, 2), (1, 3)]),
    (ONE, [(0, 3), (1, 2)]),
    // −VVHH
    (Complex64::new(-1.0, 0.0), [(2, 0), (3, 1)]),
    (Complex64::new(-1.0, 0.0), [(2, 1), (3, 0)]),
    // +i HVHV
    (I, [(0, 1), (2, 3)]),
    (I, [(0, 3), (2, 1)]),
    // +i VHVH
    (I, [(1, 0), (3, 2)]),
    (I, [(1, 2), (3, 0)]),
    // −i HVVH
    (Complex64::new(0.0, -1.0), [(0, 1), (3, 2)]),
    (Complex64::new(0.0, -1.0), [(0, 2), (3, 1)]),
    // −i VHHV
    (Complex64::new(0.0, -1.0), [(1, 0), (2, 3)]),
    (Complex64::new(0.0, -1.0), [(1, 3), (2, 0)]),
];

/// Four-photon rate at delay `delta_t`, integrating the squared amplitude term by
/// term instead of going through the overlap formula. Same units as [`p4_delay`].
pub fn p4_delay_direct(jsa: &JointSpectralAmplitude, delta_t: f64) -> Result<f64> {
    let grid = jsa.sample(delta_t.abs())?;
    let n = grid.len();
    let delayed = DMatrix::from_fn(n, n, |i, j| {
        grid.values[(i, j)] * Complex64::from_polar(1.0, grid.detunings[j] * delta_t)
    });
    let weights = slot_weights(&grid, [0; 4], 0.0);
    let mut total = ZERO;
    for (ck, sk) in AMPLITUDE_TERMS.iter() {
        for (cl, sl) in AMPLITUDE_TERMS.iter() {
            let u = [Factor::new(&delayed, sk[0].0, sk[0].1), Factor::new(&delayed, sk[1].0, sk[1].1)];
            let v = [Factor::new(&delayed, sl[0].0, sl[0].1), Factor::new(&delayed, sl[1].0, sl[1].1)];
            total += ck * cl.conj() * contract(u, v, &weights);
        }
    }
    Ok(4.0 * total.re)
}

/// `(𝒜+5ℰ)/(3(𝒜+ℰ))`, the visibility of the four-photon dip.
pub fn hom_visibility(o: &OverlapSet) -> Result<f64> {
    if !(o.a > 0.0) {
        return Err(Error::DegenerateJsa("𝒜 = 0".into()));
    }
    let e = o.e.re;
    Ok((o.a + 5.0 * e) / (3.0 * (o.a + e)))
}

/// `g(t, t′) = ∫ Φ(ω₁,ω₂) e^{−iω₁t − iω₂t′}`, with `t, t′` in seconds.
pub fn kernel_g(jsa: &JointSpectralAmplitude, t: f64, t_prime: f64) -> Result<Complex64> {
    let grid = jsa.sample(t.abs() + t_prime.abs())?;
    let k = grid.kernel_matrix(&[t, t_prime]);
    let carrier = Complex64::from_polar(1.0, -jsa.center() * (t + t_prime));
    Ok(k[(0, 1)] * carrier)
}

//! Closed-form NOON projection rates and projections onto arbitrary two-mode
//! N-photon superpositions by factoring their polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{factorial, DetectorOperator, FockState, ModeLabel};
use crate::roots::polynomial_roots;

/// Coefficients with magnitude at or below this fraction of the largest are zero.
const ZERO_COEFF: f64 = 1e-14;
/// Rates below this are reported as a null projection.
pub const NULL_THRESHOLD: f64 = 1e-10;

/// Amplitudes `c_n` of `|N−n, n⟩` (n photons in V) plus the H–V phase φ, which adds
/// `e^{inφ}` to term n.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionCoeffs {
    c: Vec<Complex64>,
    phase: f64,
}

impl SuperpositionCoeffs {
    pub fn new(c: Vec<Complex64>, phase: f64) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::OutOfRange("at least one photon is required".into()));
        }
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || !phase.is_finite() {
            return Err(Error::OutOfRange("non-finite coefficient or phase".into()));
        }
        Ok(Self { c, phase })
    }

    /// `(|N,0⟩ + |0,N⟩)/√2` with phase φ.
    pub fn noon(n: usize, phase: f64) -> Result<Self> {
        let mut c = vec![Complex64::default(); n + 1];
        c[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        c[n] = c[0];
        Self::new(c, phase)
    }

    pub fn n(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn with_phase(&self, phase: f64) -> Self {
        Self {
            c: self.c.clone(),
            phase,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().fold(0.0, |acc, z| acc + z.norm_sqr())
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroPolynomial);
        }
        Self::new(self.c.iter().map(|z| z / norm).collect(), self.phase)
    }

    /// Amplitudes including the phase factor `e^{inφ}`.
    pub fn phased(&self) -> Vec<Complex64> {
        self.c
            .iter()
            .enumerate()
            .map(|(n, z)| z * Complex64::from_polar(1.0, n as f64 * self.phase))
            .collect()
    }

    /// The state `Σ c_n e^{inφ} |N−n, n⟩` on the port-0 polarization modes.
    pub fn to_state(&self) -> FockState {
        let n = self.n();
        let modes = [ModeLabel::h(0), ModeLabel::v(0)];
        let terms = self
            .phased()
            .into_iter()
            .enumerate()
            .map(|(k, a)| (vec![(n - k) as u8, k as u8], a));
        FockState::from_terms(&modes, n, terms).expect("terms fit the photon cap")
    }
}

/// `|c₀ − c_N e^{iNφ}|²`: the N-fold rate behind an ideal NOON projector, up to a
/// constant fixed by N.
pub fn noon_projection(c: &SuperpositionCoeffs) -> f64 {
    let n = c.n();
    let last = c.c[n] * Complex64::from_polar(1.0, n as f64 * c.phase);
    (c.c[0] - last).norm_sqr()
}

/// Factorization `Σ c_n x^{N−n} y^n = scale · y^infinite · Π (x − r_k y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Number of roots at infinity (leading coefficients that vanish).
    pub infinite: usize,
    pub scale: Complex64,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.roots.len() + self.infinite
    }

    /// Coefficients `c_0 … c_N` of the factored polynomial.
    pub fn expand(&self) -> Vec<Complex64> {
        // coefficient of x^{m−j} y^j in Π (x − r y), m finite roots
        let mut poly = vec![self.scale];
        for r in &self.roots {
            let mut next = vec![Complex64::default(); poly.len() + 1];
            for (j, p) in poly.iter().enumerate() {
                next[j] += p;
                next[j + 1] -= p * r;
            }
            poly = next;
        }
        let mut out = vec![Complex64::default(); self.infinite];
        out.extend(poly);
        out
    }
}

/// Roots of `Σ c_n z^{N−n}` with `z = x/y`, sorted by argument then modulus.
pub fn factor_superposition(c: &SuperpositionCoeffs) -> Result<RootSet> {
    factor_coefficients(&c.c)
}

pub(crate) fn factor_coefficients(c: &[Complex64]) -> Result<RootSet> {
    let largest = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let infinite = c
        .iter()
        .position(|z| z.norm() > ZERO_COEFF * largest)
        .expect("nonzero coefficient exists");
    let scale = c[infinite];
    // ascending powers of z: c_N is the constant term
    let ascending: Vec<Complex64> = c[infinite..].iter().rev().copied().collect();
    let mut roots = polynomial_roots(&ascending)?;
    roots.sort_by(|a, b| {
        let key = |z: &Complex64| (z.arg().rem_euclid(std::f64::consts::TAU), z.norm());
        key(a).partial_cmp(&key(b)).unwrap()
    });
    Ok(RootSet {
        roots,
        infinite,
        scale,
    })
}

fn detector_for_root(r: Complex64, n: usize) -> DetectorOperator {
    let norm = (n as f64 * (1.0 + r.norm_sqr())).sqrt();
    DetectorOperator::new(Complex64::new(1.0 / norm, 0.0), -r / norm)
}

/// One detector per root with `coeff_v / coeff_h = −r_k` and weight `1/N`.
pub fn projector_operators(r: &RootSet) -> Result<Vec<DetectorOperator>> {
    if r.infinite > 0 {
        return Err(Error::InfiniteRoot { count: r.infinite });
    }
    let n = r.degree();
    Ok(r.roots.iter().map(|&z| detector_for_root(z, n)).collect())
}

/// Polynomial whose factor detectors measure the overlap with `target`:
/// `m_n = conj(t_n) / √((N−n)! n!)` for phased target amplitudes `t_n`.
pub fn measurement_polynomial(target: &SuperpositionCoeffs) -> Vec<Complex64> {
    let n = target.n();
    target
        .phased()
        .iter()
        .enumerate()
        .map(|(k, t)| t.conj() / (factorial(n - k) * factorial(k)).sqrt())
        .collect()
}

/// Detectors whose joint click rate on an N-photon state is proportional to
/// `|⟨target|ψ⟩|²`. Roots at infinity become pure-V detectors.
pub fn overlap_detectors(target: &SuperpositionCoeffs) -> Result<Vec<DetectorOperator>> {
    let roots = factor_coefficients(&measurement_polynomial(target))?;
    let n = roots.degree();
    let pure_v = DetectorOperator::new(
        Complex64::default(),
        Complex64::new(1.0 / (n as f64).sqrt(), 0.0),
    );
    let mut detectors: Vec<DetectorOperator> =
        roots.roots.iter().map(|&z| detector_for_root(z, n)).collect();
    detectors.extend(std::iter::repeat_n(pure_v, roots.infinite));
    Ok(detectors)
}

/// True when the projection onto `target` registers no N-fold clicks for `test`.
pub fn is_orthogonal_projection_null(
    target: &SuperpositionCoeffs,
    test: &FockState,
) -> Result<bool> {
    let n = target.n();
    let ih = test.mode_index(ModeLabel::h(0))?;
    let iv = test.mode_index(ModeLabel::v(0))?;
    for (occ, _) in test.terms() {
        let total: usize = occ.iter().map(|&k| k as usize).sum();
        let signal = occ[ih] as usize + occ[iv] as usize;
        if signal != n || total != n {
            return Err(Error::PhotonNumberMismatch {
                expected: n,
                found: if signal != n { signal } else { total },
            });
        }
    }
    let rate = crate::fock::coincidence_probability(test, &overlap_detectors(target)?)?;
    Ok(rate < NULL_THRESHOLD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn noon_fringe() {
        for phi in [0.0, 0.3, 1.0, 2.5] {
            let s = SuperpositionCoeffs::noon(4, phi).unwrap();
            assert!((noon_projection(&s) - (1.0 - (4.0 * phi).cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn balanced_four_photon_state_is_dark() {
        let s = SuperpositionCoeffs::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 0.7).unwrap();
        assert_eq!(noon_projection(&s), 0.0);
    }

    #[test]
    fn splitter_output_fringe() {
        let a = (3.0f64 / 8.0).sqrt();
        let s = SuperpositionCoeffs::new(vec![c(a, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(a, 0.0)], 0.0).unwrap();
        for phi in [0.0, 0.2, 0.9] {
            let v = noon_projection(&s.with_phase(phi));
            assert!((v - 0.75 * (1.0 - (4.0 * phi).cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn noon_target_roots_are_roots_of_unity() {
        for n in 2..=6 {
            let mut cs = vec![c(0.0, 0.0); n + 1];
            cs[0] = c(FRAC_1_SQRT_2, 0.0);
            cs[n] = c(-FRAC_1_SQRT_2, 0.0);
            let r = factor_superposition(&SuperpositionCoeffs::new(cs, 0.0).unwrap()).unwrap();
            for (k, z) in r.roots.iter().enumerate() {
                let want = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
                assert!((z - want).norm() < 1e-12, "n={n} k={k} {z}");
            }
        }
    }

    #[test]
    fn double_root() {
        let s6 = 6f64.sqrt();
        let s = SuperpositionCoeffs::new(vec![c(1.0 / s6, 0.0), c(-2.0 / s6, 0.0), c(1.0 / s6, 0.0)], 0.0).unwrap();
        let r = factor_superposition(&s).unwrap();
        for z in &r.roots {
            assert!((z - c(1.0, 0.0)).norm() < 1e-7);
        }
        let d = projector_operators(&r).unwrap();
        assert_eq!(d.len(), 2);
        assert!((d[0].coeff_h - d[1].coeff_h).norm() < 1e-7);
        assert!((d[0].ratio() - c(-1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn leading_zero_gives_infinite_root() {
        let s = SuperpositionCoeffs::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 0.0).unwrap();
        let r = factor_superposition(&s).unwrap();
        assert_eq!(r.infinite, 1);
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0] - c(-2.0, 0.0)).norm() < 1e-14);
        assert_eq!(projector_operators(&r), Err(Error::InfiniteRoot { count: 1 }));
        let e = r.expand();
        assert!((e[1] - c(1.0, 0.0)).norm() < 1e-14 && (e[2] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn all_zero_is_rejected() {
        let s = SuperpositionCoeffs::new(vec![c(0.0, 0.0); 3], 0.0).unwrap();
        assert_eq!(factor_superposition(&s), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn noon_targets_null_on_balanced_state() {
        let target = SuperpositionCoeffs::noon(4, 0.0).unwrap();
        let modes = [ModeLabel::h(0), ModeLabel::v(0)];
        let dark = FockState::basis(&modes, 4, &[(ModeLabel::h(0), 2), (ModeLabel::v(0), 2)]).unwrap();
        assert!(is_orthogonal_projection_null(&target, &dark).unwrap());
        let bright = FockState::basis(&modes, 4, &[(ModeLabel::h(0), 4)]).unwrap();
        assert!(!is_orthogonal_projection_null(&target, &bright).unwrap());
        let wrong = FockState::basis(&modes, 4, &[(ModeLabel::h(0), 3)]).unwrap();
        assert!(matches!(
            is_orthogonal_projection_null(&target, &wrong),
            Err(Error::PhotonNumberMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn pure_v_target_uses_infinite_roots() {
        let target = SuperpositionCoeffs::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 0.0).unwrap();
        let modes = [ModeLabel::h(0), ModeLabel::v(0)];
        let other = FockState::basis(&modes, 2, &[(ModeLabel::h(0), 1), (ModeLabel::v(0), 1)]).unwrap();
        assert!(is_orthogonal_projection_null(&target, &other).unwrap());
        assert!(!is_orthogonal_projection_null(&target, &target.to_state()).unwrap());
    }
}

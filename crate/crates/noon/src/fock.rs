//! Exact state vectors for a few photons spread over labeled bosonic modes.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes below this magnitude are dropped from a state.
pub const PRUNE_TOLERANCE: f64 = 1e-14;
/// Maximum entry of `U†U − I` accepted for a mode transform.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    H,
    V,
}

/// A spatial port plus a polarization. Ordering is port-major, H before V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub port: u8,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub const fn new(port: u8, polarization: Polarization) -> Self {
        Self { port, polarization }
    }

    pub const fn h(port: u8) -> Self {
        Self::new(port, Polarization::H)
    }

    pub const fn v(port: u8) -> Self {
        Self::new(port, Polarization::V)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.polarization {
            Polarization::H => 'H',
            Polarization::V => 'V',
        };
        write!(f, "{}{}", self.port, p)
    }
}

/// Both polarization modes of ports `0..ports`, in canonical order.
pub fn port_modes(ports: u8) -> Vec<ModeLabel> {
    (0..ports)
        .flat_map(|p| [ModeLabel::h(p), ModeLabel::v(p)])
        .collect()
}

fn canonical(modes: &[ModeLabel]) -> Result<Vec<ModeLabel>> {
    let mut sorted = modes.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != modes.len() {
        return Err(Error::DimensionMismatch("duplicate mode labels".into()));
    }
    Ok(sorted)
}

/// Occupation number per mode, aligned with the owning state's mode list.
pub type Occupation = Vec<u8>;

/// A pure state as a sparse map from occupation vectors to amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    modes: Vec<ModeLabel>,
    photon_cap: usize,
    terms: BTreeMap<Occupation, Complex64>,
}

impl FockState {
    pub fn vacuum(modes: &[ModeLabel], photon_cap: usize) -> Result<Self> {
        let modes = canonical(modes)?;
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; modes.len()], Complex64::new(1.0, 0.0));
        Ok(Self {
            modes,
            photon_cap,
            terms,
        })
    }

    pub fn zero(modes: &[ModeLabel], photon_cap: usize) -> Result<Self> {
        Ok(Self {
            modes: canonical(modes)?,
            photon_cap,
            terms: BTreeMap::new(),
        })
    }

    /// Basis state with the listed occupations; unlisted modes are empty.
    pub fn basis(
        modes: &[ModeLabel],
        photon_cap: usize,
        occupied: &[(ModeLabel, u8)],
    ) -> Result<Self> {
        let mut s = Self::zero(modes, photon_cap)?;
        let occ = s.occupation_of(occupied)?;
        s.insert(occ, Complex64::new(1.0, 0.0))?;
        Ok(s)
    }

    /// `Σ amplitude · |occupation⟩` with occupations in canonical mode order.
    pub fn from_terms<I>(modes: &[ModeLabel], photon_cap: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Complex64)>,
    {
        let mut s = Self::zero(modes, photon_cap)?;
        for (occ, amp) in terms {
            if occ.len() != s.modes.len() {
                return Err(Error::DimensionMismatch(format!(
                    "occupation of length {} for {} modes",
                    occ.len(),
                    s.modes.len()
                )));
            }
            s.insert(occ, amp)?;
        }
        s.prune();
        Ok(s)
    }

    fn insert(&mut self, occ: Occupation, amp: Complex64) -> Result<()> {
        let total: usize = occ.iter().map(|&n| n as usize).sum();
        if total > self.photon_cap {
            return Err(Error::CapExceeded {
                cap: self.photon_cap,
            });
        }
        *self.terms.entry(occ).or_default() += amp;
        Ok(())
    }

    fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm() >= PRUNE_TOLERANCE);
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn photon_cap(&self) -> usize {
        self.photon_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mode_index(&self, mode: ModeLabel) -> Result<usize> {
        self.modes
            .binary_search(&mode)
            .map_err(|_| Error::DimensionMismatch(format!("mode {mode} not in state")))
    }

    /// Occupation vector for a sparse list of occupied modes.
    pub fn occupation_of(&self, occupied: &[(ModeLabel, u8)]) -> Result<Occupation> {
        let mut occ = vec![0u8; self.modes.len()];
        for &(m, n) in occupied {
            occ[self.mode_index(m)?] += n;
        }
        Ok(occ)
    }

    pub fn amplitude(&self, occupied: &[(ModeLabel, u8)]) -> Result<Complex64> {
        let occ = self.occupation_of(occupied)?;
        Ok(self.terms.get(&occ).copied().unwrap_or_default())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, a| acc + a.norm_sqr())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.terms.values_mut() {
            *a *= factor;
        }
        out.prune();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (occ, a) in &other.terms {
            *out.terms.entry(occ.clone()).or_default() += a;
        }
        out.prune();
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modes != other.modes || self.photon_cap != other.photon_cap {
            return Err(Error::DimensionMismatch(
                "states differ in mode set or photon cap".into(),
            ));
        }
        Ok(())
    }

    /// The same state over a larger mode set; added modes are empty.
    pub fn embed(&self, modes: &[ModeLabel]) -> Result<Self> {
        let mut target = Self::zero(modes, self.photon_cap)?;
        let positions = self
            .modes
            .iter()
            .map(|&m| target.mode_index(m))
            .collect::<Result<Vec<_>>>()?;
        for (occ, a) in &self.terms {
            let mut wide = vec![0u8; target.modes.len()];
            for (i, &p) in positions.iter().enumerate() {
                wide[p] = occ[i];
            }
            target.terms.insert(wide, *a);
        }
        Ok(target)
    }

    pub fn create(&self, mode: ModeLabel) -> Result<Self> {
        let k = self.mode_index(mode)?;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (occ, a) in &self.terms {
            let mut next = occ.clone();
            next[k] += 1;
            let factor = (next[k] as f64).sqrt();
            out.insert(next, a * factor)?;
        }
        out.prune();
        Ok(out)
    }

    pub fn annihilate(&self, mode: ModeLabel) -> Result<Self> {
        let k = self.mode_index(mode)?;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (occ, a) in &self.terms {
            if occ[k] == 0 {
                continue;
            }
            let factor = (occ[k] as f64).sqrt();
            let mut next = occ.clone();
            next[k] -= 1;
            *out.terms.entry(next).or_default() += a * factor;
        }
        out.prune();
        Ok(out)
    }

    /// `Σ_m coeffs[m] â_m` applied to the state, coefficients in canonical mode order.
    pub fn lower(&self, coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.len() != self.modes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} lowering coefficients for {} modes",
                coeffs.len(),
                self.modes.len()
            )));
        }
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (occ, a) in &self.terms {
            for (k, c) in coeffs.iter().enumerate() {
                if occ[k] == 0 || *c == Complex64::default() {
                    continue;
                }
                let mut next = occ.clone();
                next[k] -= 1;
                *out.terms.entry(next).or_default() += a * c * (occ[k] as f64).sqrt();
            }
        }
        out.prune();
        Ok(out)
    }

    /// Substitutes `â_j† → Σ_k U_kj â_k†` in every term.
    pub fn apply_transform(&self, transform: &ModeTransform) -> Result<Self> {
        if transform.modes != self.modes {
            return Err(Error::DimensionMismatch(format!(
                "transform on {} modes, state on {} modes",
                transform.modes.len(),
                self.modes.len()
            )));
        }
        let u = &transform.matrix;
        let dim = self.modes.len();
        let mut out: BTreeMap<Occupation, Complex64> = BTreeMap::new();
        for (occ, amp) in &self.terms {
            let norm: f64 = occ.iter().map(|&n| factorial(n as usize)).product();
            let mut partial: BTreeMap<Occupation, Complex64> = BTreeMap::new();
            partial.insert(vec![0; dim], amp / norm.sqrt());
            for (j, &n) in occ.iter().enumerate() {
                for _ in 0..n {
                    let mut next: BTreeMap<Occupation, Complex64> = BTreeMap::new();
                    for (o, a) in &partial {
                        for k in 0..dim {
                            let ukj = u[(k, j)];
                            if ukj == Complex64::default() {
                                continue;
                            }
                            let mut o2 = o.clone();
                            o2[k] += 1;
                            let f = (o2[k] as f64).sqrt();
                            *next.entry(o2).or_default() += a * ukj * f;
                        }
                    }
                    partial = next;
                }
            }
            for (o, a) in partial {
                *out.entry(o).or_default() += a;
            }
        }
        let mut state = Self {
            modes: self.modes.clone(),
            photon_cap: self.photon_cap,
            terms: out,
        };
        state.prune();
        Ok(state)
    }
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner_product(a: &FockState, b: &FockState) -> Result<Complex64> {
    a.check_compatible(b)?;
    let (small, large, conj_small) = if a.terms.len() <= b.terms.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    let mut acc = Complex64::default();
    for (occ, x) in &small.terms {
        if let Some(y) = large.terms.get(occ) {
            acc += if conj_small { x.conj() * y } else { y.conj() * x };
        }
    }
    Ok(acc)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Unitary action on creation operators, indexed by a canonical list of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTransform {
    modes: Vec<ModeLabel>,
    matrix: DMatrix<Complex64>,
}

impl ModeTransform {
    pub fn new(modes: &[ModeLabel], matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = modes.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {n} modes",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let t = Self::unchecked(modes, matrix)?;
        let dev = t.unitarity_error();
        if dev >= UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary(dev));
        }
        Ok(t)
    }

    /// Reorders rows and columns so that the mode list is canonical.
    fn unchecked(modes: &[ModeLabel], matrix: DMatrix<Complex64>) -> Result<Self> {
        let sorted = canonical(modes)?;
        let perm: Vec<usize> = sorted
            .iter()
            .map(|m| modes.iter().position(|x| x == m).unwrap())
            .collect();
        let n = modes.len();
        let matrix = DMatrix::from_fn(n, n, |r, c| matrix[(perm[r], perm[c])]);
        Ok(Self {
            modes: sorted,
            matrix,
        })
    }

    pub fn identity(modes: &[ModeLabel]) -> Result<Self> {
        let n = modes.len();
        Ok(Self {
            modes: canonical(modes)?,
            matrix: DMatrix::identity(n, n),
        })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.modes.len()
    }

    pub fn unitarity_error(&self) -> f64 {
        let n = self.modes.len();
        let prod = self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(n, n);
        prod.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Renames every mode through `f`; the image must stay free of collisions.
    pub fn relabel(&self, f: impl Fn(ModeLabel) -> ModeLabel) -> Result<Self> {
        let renamed: Vec<ModeLabel> = self.modes.iter().map(|&m| f(m)).collect();
        Self::unchecked(&renamed, self.matrix.clone())
    }

    /// Extends to a superset of modes, acting as the identity on the added ones.
    pub fn embed(&self, modes: &[ModeLabel]) -> Result<Self> {
        let mut wide = Self::identity(modes)?;
        let pos = self
            .modes
            .iter()
            .map(|m| {
                wide.modes.binary_search(m).map_err(|_| {
                    Error::DimensionMismatch(format!("mode {m} missing from embedding"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for (r, &pr) in pos.iter().enumerate() {
            for (c, &pc) in pos.iter().enumerate() {
                wide.matrix[(pr, pc)] = self.matrix[(r, c)];
            }
        }
        Ok(wide)
    }

    /// The transform that applies `self` first and `next` afterwards.
    pub fn then(&self, next: &ModeTransform) -> Result<Self> {
        if self.modes != next.modes {
            return Err(Error::DimensionMismatch(
                "composed transforms act on different modes".into(),
            ));
        }
        Ok(Self {
            modes: self.modes.clone(),
            matrix: &next.matrix * &self.matrix,
        })
    }
}

/// A detector annihilation operator `b = h·â_H + v·â_V + Σ loss_k â_k`.
///
/// `h` and `v` act on the signal modes `(0,H)` and `(0,V)`. `loss_coeffs` act on
/// the remaining modes of a state, in canonical order; missing entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorOperator {
    pub coeff_h: Complex64,
    pub coeff_v: Complex64,
    pub loss_coeffs: Vec<Complex64>,
}

impl DetectorOperator {
    pub fn new(coeff_h: Complex64, coeff_v: Complex64) -> Self {
        Self {
            coeff_h,
            coeff_v,
            loss_coeffs: Vec::new(),
        }
    }

    pub fn with_loss(coeff_h: Complex64, coeff_v: Complex64, loss_coeffs: Vec<Complex64>) -> Self {
        Self {
            coeff_h,
            coeff_v,
            loss_coeffs,
        }
    }

    /// `coeff_v / coeff_h`.
    pub fn ratio(&self) -> Complex64 {
        self.coeff_v / self.coeff_h
    }

    pub fn weight(&self) -> f64 {
        self.coeff_h.norm_sqr()
            + self.coeff_v.norm_sqr()
            + self.loss_coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    fn lowering_coeffs(&self, state: &FockState) -> Result<Vec<Complex64>> {
        let ih = state.mode_index(ModeLabel::h(0))?;
        let iv = state.mode_index(ModeLabel::v(0))?;
        let rest = state.modes().len() - 2;
        if self.loss_coeffs.len() > rest {
            return Err(Error::DimensionMismatch(format!(
                "{} loss coefficients for {rest} non-signal modes",
                self.loss_coeffs.len()
            )));
        }
        let mut coeffs = vec![Complex64::default(); state.modes().len()];
        coeffs[ih] = self.coeff_h;
        coeffs[iv] = self.coeff_v;
        let others = (0..coeffs.len()).filter(|&k| k != ih && k != iv);
        for (k, c) in others.zip(&self.loss_coeffs) {
            coeffs[k] = *c;
        }
        Ok(coeffs)
    }

    pub fn apply(&self, state: &FockState) -> Result<FockState> {
        state.lower(&self.lowering_coeffs(state)?)
    }
}

/// `‖b₀ b₁ … |ψ⟩‖²`, the unnormalized joint detection rate.
pub fn coincidence_probability(state: &FockState, detectors: &[DetectorOperator]) -> Result<f64> {
    let mut s = state.clone();
    for d in detectors {
        s = d.apply(&s)?;
    }
    Ok(s.norm_sqr())
}

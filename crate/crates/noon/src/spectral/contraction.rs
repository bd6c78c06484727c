//! Four-point contractions `Σ Π_s w_s(x_s) u₀ u₁ conj(v₀) conj(v₁)` over four
//! slots, where each slot appears once in the u pair and once in the v pair.
//!
//! Every such sum either splits into two two-slot sums or closes into a single
//! four-cycle, so it costs O(n³) rather than O(n⁴).

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A kernel matrix whose row index is bound to slot `row` and column index to `col`.
#[derive(Clone, Copy)]
pub(crate) struct Factor<'a> {
    pub matrix: &'a DMatrix<Complex64>,
    pub row: usize,
    pub col: usize,
}

impl<'a> Factor<'a> {
    pub fn new(matrix: &'a DMatrix<Complex64>, row: usize, col: usize) -> Self {
        Self { matrix, row, col }
    }

    fn has(&self, slot: usize) -> bool {
        self.row == slot || self.col == slot
    }

    fn other(&self, slot: usize) -> usize {
        if self.row == slot {
            self.col
        } else {
            self.row
        }
    }

    /// Matrix with rows bound to `first`.
    fn oriented(&self, first: usize) -> DMatrix<Complex64> {
        if self.row == first {
            self.matrix.clone()
        } else {
            self.matrix.transpose()
        }
    }
}

fn weighted(f: &Factor, slot_weights: &[Vec<Complex64>; 4]) -> DMatrix<Complex64> {
    let (rw, cw) = (&slot_weights[f.row], &slot_weights[f.col]);
    DMatrix::from_fn(f.matrix.nrows(), f.matrix.ncols(), |i, j| {
        f.matrix[(i, j)] * rw[i] * cw[j]
    })
}

fn pair_sum(a: &DMatrix<Complex64>, a_row: usize, b: &Factor) -> Complex64 {
    let b = b.oriented(a_row);
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub(crate) fn contract(u: [Factor; 2], v: [Factor; 2], slot_weights: &[Vec<Complex64>; 4]) -> Complex64 {
    debug_assert!((0..4).all(|s| u.iter().filter(|f| f.has(s)).count() == 1
        && v.iter().filter(|f| f.has(s)).count() == 1));
    let u0 = weighted(&u[0], slot_weights);
    let u1 = weighted(&u[1], slot_weights);
    for k in 0..2 {
        let vk = &v[k];
        if vk.has(u[0].row) && vk.has(u[0].col) {
            return pair_sum(&u0, u[0].row, vk) * pair_sum(&u1, u[1].row, &v[1 - k]);
        }
    }
    let (p, q) = (u[0].row, u[0].col);
    let vp = if v[0].has(p) { &v[0] } else { &v[1] };
    let vq = if v[0].has(p) { &v[1] } else { &v[0] };
    let x = vp.other(p);
    let y = vq.other(q);
    let b = if u[1].row == x { u1 } else { u1.transpose() };
    debug_assert!(u[1].has(x) && u[1].has(y));
    let c = vp.oriented(p).map(|z| z.conj());
    let d = vq.oriented(q).map(|z| z.conj());
    let inner = c * b * d.transpose();
    u0.iter().zip(inner.iter()).map(|(a, b)| a * b).sum()
}

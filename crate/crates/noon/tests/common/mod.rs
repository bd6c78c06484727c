#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Unitary Q factor of a complex matrix built from `2·dim²` reals.
pub fn unitary_from(entries: &[f64], dim: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        let k = 2 * (i * dim + j);
        c(entries[k], entries[k + 1])
    });
    m.qr().q()
}

pub fn unitary(dim: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim)
        .prop_filter("well conditioned", move |v| {
            let m = DMatrix::from_fn(dim, dim, |i, j| c(v[2 * (i * dim + j)], v[2 * (i * dim + j) + 1]));
            m.determinant().norm() > 1e-3
        })
        .prop_map(move |v| unitary_from(&v, dim))
}

pub fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
}

/// Least-squares scale `s` minimizing `‖data − s·model‖` and the largest residual
/// relative to the largest model value.
pub fn fit_scale(data: &[f64], model: &[f64]) -> (f64, f64) {
    let num: f64 = data.iter().zip(model).map(|(d, m)| d * m).sum();
    let den: f64 = model.iter().map(|m| m * m).sum();
    let s = num / den;
    let peak = model.iter().fold(0.0f64, |a, m| a.max(m.abs())) * s.abs();
    let worst = data
        .iter()
        .zip(model)
        .map(|(d, m)| (d - s * m).abs())
        .fold(0.0f64, f64::max);
    (s, worst / peak)
}

/// `k·2π/points` for `k = 0..points`.
pub fn phase_grid(points: usize, period: f64) -> Vec<f64> {
    (0..points).map(|k| period * k as f64 / points as f64).collect()
}

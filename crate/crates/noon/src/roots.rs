//! Polynomial roots from companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Roots of `Σ a_k z^k` given monic-normalizable coefficients `a` in ascending order.
/// The leading coefficient must be nonzero.
pub fn polynomial_roots(ascending: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = ascending.len().saturating_sub(1);
    let lead = ascending[degree];
    if lead == Complex64::default() {
        return Err(Error::ZeroPolynomial);
    }
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-ascending[0] / lead]),
        _ => {}
    }
    let mut companion = DMatrix::<Complex64>::zeros(degree, degree);
    for j in 0..degree {
        companion[(0, j)] = -ascending[degree - 1 - j] / lead;
    }
    for i in 1..degree {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    balance(&mut companion);
    let eigen = triangular_eigenvalues(&companion)?;
    Ok(eigen.into_iter().map(|z| polish(ascending, z)).collect())
}

/// Diagonal of the complex Schur form. Unshifted QR stalls on cyclic permutation
/// companions such as that of `z^N − 1`, so failures are retried on `A + sI`.
fn triangular_eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    for shift in [Complex64::default(), Complex64::new(0.37, 0.21) * scale] {
        let shifted = a + DMatrix::<Complex64>::identity(n, n) * shift;
        if let Some(schur) = nalgebra::linalg::Schur::try_new(shifted, f64::EPSILON, 2_000) {
            let (_, t) = schur.unpack();
            return Ok((0..n).map(|i| t[(i, i)] - shift).collect());
        }
    }
    Err(Error::NoConvergence)
}

/// Diagonal similarity scaling by powers of two that evens out row and column norms.
fn balance(m: &mut DMatrix<Complex64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].l1_norm();
                    row += m[(i, j)].l1_norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let sum = col + row;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while col < g {
                f *= RADIX;
                col *= RADIX * RADIX;
            }
            g = row * RADIX;
            while col > g {
                f /= RADIX;
                col /= RADIX * RADIX;
            }
            if (col + row) / f < 0.95 * sum {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

fn eval(ascending: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::default();
    let mut dp = Complex64::default();
    for &a in ascending.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// A few Newton steps, kept only while they shrink the residual.
fn polish(ascending: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut p, mut dp) = eval(ascending, z);
    for _ in 0..4 {
        if dp == Complex64::default() {
            break;
        }
        let candidate = z - p / dp;
        let (pc, dpc) = eval(ascending, candidate);
        if !(pc.norm() < p.norm()) {
            break;
        }
        z = candidate;
        p = pc;
        dp = dpc;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_roots() {
        // (z − 2)(z + 3i) = z² + (3i − 2) z − 6i
        let mut r = polynomial_roots(&[c(0.0, -6.0), c(-2.0, 3.0), c(1.0, 0.0)]).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(0.0, -3.0)).norm() < 1e-13);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn widely_spread_roots() {
        // (z − 1e3)(z − 1e-3)(z + 1)
        let a = [c(1.0, 0.0), c(-999.001, 0.0), c(-999.001, 0.0), c(1.0, 0.0)];
        let mut roots = polynomial_roots(&a).unwrap();
        roots.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (z, want) in roots.iter().zip([-1.0, 1e-3, 1e3]) {
            assert!((z - c(want, 0.0)).norm() < 1e-12 * want.abs(), "{z} vs {want}");
        }
    }
}

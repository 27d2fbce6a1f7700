//! Matrix exponential.
//!
//! Hermitian and skew-Hermitian inputs go through a unitary eigendecomposition.
//! Everything else uses scaling and squaring with the `[13/13]` Padé approximant.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

// Numerator coefficients of the [13/13] Padé approximant to exp.
const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which the unscaled [13/13] approximant is accurate to
// double precision.
const THETA_13: f64 = 5.371_920_351_148_152;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Structure {
    Hermitian,
    SkewHermitian,
    General,
}

fn classify(a: &DMatrix<Complex64>) -> Structure {
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let slack = 4.0 * f64::EPSILON * scale;
    let n = a.nrows();
    let mut herm = 0.0;
    let mut skew = 0.0;
    for r in 0..n {
        for c in 0..n {
            let x = a[(r, c)];
            let y = a[(c, r)].conj();
            herm += (x - y).norm_sqr();
            skew += (x + y).norm_sqr();
        }
    }
    if herm.sqrt() <= slack {
        Structure::Hermitian
    } else if skew.sqrt() <= slack {
        Structure::SkewHermitian
    } else {
        Structure::General
    }
}

/// `e^A` for a square matrix `A`.
pub fn matrix_exponential(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_square("matrix exponential")?;
    let inner = a.as_dmatrix();
    if inner.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return Ok(ComplexMatrix::identity(a.rows()));
    }
    let result = match classify(inner) {
        Structure::Hermitian => exp_via_eigen(inner, false)?,
        Structure::SkewHermitian => exp_via_eigen(inner, true)?,
        Structure::General => exp_pade(inner)?,
    };
    ComplexMatrix::from_dmatrix(result)
        .map_err(|_| Error::Domain("matrix exponential overflowed".into()))
}

/// Scaling and squaring with the [13/13] Padé approximant, skipping the
/// structure detection. Exposed so both routes can be compared.
pub fn matrix_exponential_pade(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_square("matrix exponential")?;
    ComplexMatrix::from_dmatrix(exp_pade(a.as_dmatrix())?)
        .map_err(|_| Error::Domain("matrix exponential overflowed".into()))
}

fn exp_via_eigen(a: &DMatrix<Complex64>, skew: bool) -> Result<DMatrix<Complex64>> {
    let i = Complex64::new(0.0, 1.0);
    // Hermitian generator: K = A for Hermitian input, K = -iA for skew-Hermitian.
    let generator = if skew {
        (a - a.adjoint()).map(|z| z * (-i) * 0.5)
    } else {
        (a + a.adjoint()).map(|z| z * 0.5)
    };
    let n = a.nrows();
    let eigen = SymmetricEigen::try_new(generator, f64::EPSILON, 1000 * n.max(1))
        .ok_or_else(|| Error::Domain("Hermitian eigendecomposition did not converge".into()))?;
    let phases = eigen.eigenvalues.map(|lambda| {
        if skew {
            Complex64::new(0.0, lambda).exp()
        } else {
            Complex64::new(lambda, 0.0).exp()
        }
    });
    let v = &eigen.eigenvectors;
    let mut scaled = v.clone();
    for (mut col, &p) in scaled.column_iter_mut().zip(phases.iter()) {
        col *= p;
    }
    Ok(scaled * v.adjoint())
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn exp_pade(a: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a * Complex64::new(0.5f64.powi(squarings), 0.0);

    let b = |k: usize| Complex64::new(PADE_13[k], 0.0);
    let id = DMatrix::<Complex64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let numerator = &v + &u;
    let denominator = &v - &u;
    let mut r = denominator
        .lu()
        .solve(&numerator)
        .ok_or_else(|| Error::Domain("Padé denominator is singular".into()))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Truncated Taylor series with many terms; reference for small-norm inputs.
    fn taylor(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
        let n = a.rows();
        let mut sum = ComplexMatrix::identity(n);
        let mut term = ComplexMatrix::identity(n);
        for k in 1..terms {
            term = (&term * a).scale(c(1.0 / k as f64, 0.0));
            sum = &sum + &term;
        }
        sum
    }

    fn general_matrix() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.3, -0.2), c(1.1, 0.4), c(-0.5, 0.0)],
            vec![c(0.0, 0.7), c(-0.8, 0.1), c(0.2, 0.2)],
            vec![c(0.6, 0.0), c(0.1, -0.9), c(0.4, 0.3)],
        ])
        .unwrap()
    }

    #[test]
    fn zero_gives_identity() {
        let e = matrix_exponential(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(3));
    }

    #[test]
    fn diagonal_phase() {
        let a = ComplexMatrix::from_diagonal(&[c(0.0, PI), c(0.0, 0.0)]).unwrap();
        let e = matrix_exponential(&a).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(e.distance(&expected) < 1e-14);
    }

    #[test]
    fn general_matches_taylor() {
        let a = general_matrix();
        let e = matrix_exponential(&a).unwrap();
        let reference = taylor(&a, 60);
        assert!(e.distance(&reference) / reference.frobenius_norm() < 1e-13);
    }

    #[test]
    fn scaling_path_matches_taylor() {
        // 1-norm well above theta_13 so squaring kicks in
        let a = general_matrix().scale(c(4.0, 0.0));
        let e = matrix_exponential(&a).unwrap();
        let reference = taylor(&a, 150);
        assert!(e.distance(&reference) / reference.frobenius_norm() < 1e-12);
    }

    #[test]
    fn eigen_route_agrees_with_pade() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(1.0, -2.0), c(0.3, 0.1)],
            vec![c(1.0, 2.0), c(-1.5, 0.0), c(0.0, 0.4)],
            vec![c(0.3, -0.1), c(0.0, -0.4), c(2.5, 0.0)],
        ])
        .unwrap();
        let skew = h.scale(c(0.0, 1.0));
        let fast = matrix_exponential(&skew).unwrap();
        let pade = matrix_exponential_pade(&skew).unwrap();
        assert!(fast.distance(&pade) < 1e-12);
        assert!(is_unitary(&fast, 1e-12).unwrap());

        let fast = matrix_exponential(&h).unwrap();
        let pade = matrix_exponential_pade(&h).unwrap();
        assert!(fast.distance(&pade) / pade.frobenius_norm() < 1e-12);
    }

    #[test]
    fn rejects_non_square() {
        assert!(matrix_exponential(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::matrix::{unitarity_residual, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenphases this close to `-pi` are placed on `+pi`, so an eigenvalue of
/// `-1` with a rounding-level negative imaginary part still lands on the
/// principal branch `(-pi, pi]`.
const BRANCH_CUT_SLACK: f64 = 1e-12;

/// Principal eigenphase of a unit-modulus eigenvalue, in `(-pi, pi]`.
pub fn principal_phase(z: Complex64) -> f64 {
    let theta = z.arg();
    if theta <= -PI + BRANCH_CUT_SLACK {
        PI
    } else {
        theta
    }
}

/// Hermitian `H` with `e^{iH} = Q` for a unitary `Q`, eigenphases on the
/// principal branch.
///
/// `Q` is normal, so its complex Schur form is diagonal and `Q = Z D Z^dagger`
/// with unitary `Z`. The logarithm is `Z diag(theta_k) Z^dagger`; degenerate
/// eigenphases need no special care since any orthonormal basis of the
/// eigenspace gives the same matrix.
pub fn unitary_logarithm(q: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    q.require_square("unitary logarithm")?;
    let residual = unitarity_residual(q)?;
    if residual > tol {
        return Err(Error::Domain(format!(
            "matrix is not unitary: ||Q^dagger Q - I||_F = {residual:.3e} exceeds {tol:.3e}"
        )));
    }

    let n = q.rows();
    let schur = Schur::try_new(q.as_dmatrix().clone(), f64::EPSILON, 1000 * n.max(1))
        .ok_or_else(|| Error::Domain("Schur decomposition did not converge".into()))?;
    let (z, t) = schur.unpack();

    let mut scaled: DMatrix<Complex64> = z.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= Complex64::new(principal_phase(t[(k, k)]), 0.0);
    }
    let h = scaled * z.adjoint();
    // Drop the rounding-level anti-Hermitian part.
    let h = (&h + h.adjoint()).map(|x| x * 0.5);
    ComplexMatrix::from_dmatrix(h)
}

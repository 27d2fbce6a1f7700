use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest matrix size accepted by [`permanent`].
pub const MAX_PERMANENT_SIZE: usize = 30;

/// Permanent of a square matrix by Ryser's inclusion-exclusion formula,
/// visiting column subsets in Gray-code order so each step updates the row
/// sums with a single column. `O(2^k k)` time, `O(k)` memory.
pub fn permanent(a: &ComplexMatrix) -> Result<Complex64> {
    a.require_square("permanent")?;
    let k = a.rows();
    if k > MAX_PERMANENT_SIZE {
        return Err(Error::Size(format!(
            "permanent of a {k}x{k} matrix exceeds the limit of {MAX_PERMANENT_SIZE}"
        )));
    }
    let m = a.as_dmatrix();

    let zero = Complex64::new(0.0, 0.0);
    let mut row_sums = vec![zero; k];
    let mut total = zero;
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << k) {
        let col = step.trailing_zeros() as usize;
        gray ^= 1 << col;
        if gray & (1 << col) != 0 {
            row_sums
                .iter_mut()
                .enumerate()
                .for_each(|(r, s)| *s += m[(r, col)]);
        } else {
            row_sums
                .iter_mut()
                .enumerate()
                .for_each(|(r, s)| *s -= m[(r, col)]);
        }
        let product: Complex64 = row_sums.iter().product();
        if gray.count_ones().is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(if k.is_multiple_of(2) { total } else { -total })
}

//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use multiphoton::fock_basis::{apply_annihilation, apply_creation};
use multiphoton::{Complex64, ComplexMatrix, OccupationState};

/// Permanent straight from the definition: sum over all k! permutations.
pub fn permanent_by_definition(a: &ComplexMatrix) -> Complex64 {
    fn rec(a: &ComplexMatrix, row: usize, used: &mut Vec<bool>, acc: Complex64) -> Complex64 {
        let k = a.rows();
        if row == k {
            return acc;
        }
        let mut total = Complex64::new(0.0, 0.0);
        for col in 0..k {
            if !used[col] {
                used[col] = true;
                total += rec(a, row + 1, used, acc * a.get(row, col));
                used[col] = false;
            }
        }
        total
    }
    rec(a, 0, &mut vec![false; a.rows()], Complex64::new(1.0, 0.0))
}

/// `<p| a_j^dagger a_l |q>` evaluated with the ladder operators.
pub fn hop_amplitude(p: &OccupationState, q: &OccupationState, j: usize, l: usize) -> f64 {
    let lowered = apply_annihilation(q, l).unwrap();
    let Some(mid) = lowered.state else {
        return 0.0;
    };
    let raised = apply_creation(&mid, j).unwrap();
    if raised.state.as_ref() == Some(p) {
        lowered.coefficient * raised.coefficient
    } else {
        0.0
    }
}

/// Dense `sum_{j,l} H_jl <p|a_j^dagger a_l|q>` built from [`hop_amplitude`] over every pair.
pub fn second_quantized(h: &ComplexMatrix, states: &[OccupationState]) -> ComplexMatrix {
    let m = h.rows();
    let size = states.len();
    let mut entries = Vec::with_capacity(size * size);
    for p in states {
        for q in states {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..m {
                for l in 0..m {
                    sum += h.get(j, l) * hop_amplitude(p, q, j, l);
                }
            }
            entries.push(sum);
        }
    }
    ComplexMatrix::from_row_major(size, size, entries).unwrap()
}

/// Two-photon, two-mode unitary in the order |20>, |02>, |11>, written out
/// entry by entry.
pub fn two_photon_unitary_closed_form(s: &ComplexMatrix) -> ComplexMatrix {
    let (s11, s12, s21, s22) = (s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1));
    let r2 = Complex64::new(2f64.sqrt(), 0.0);
    ComplexMatrix::from_rows(&[
        vec![s11 * s11, s12 * s12, r2 * s11 * s12],
        vec![s21 * s21, s22 * s22, r2 * s21 * s22],
        vec![r2 * s11 * s21, r2 * s12 * s22, s11 * s22 + s12 * s21],
    ])
    .unwrap()
}

/// Two-photon, two-mode Hamiltonian in the order |20>, |02>, |11>.
pub fn two_photon_hamiltonian_closed_form(h: &ComplexMatrix) -> ComplexMatrix {
    let (h11, h12, h21, h22) = (h.get(0, 0), h.get(0, 1), h.get(1, 0), h.get(1, 1));
    let r2 = Complex64::new(2f64.sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    ComplexMatrix::from_rows(&[
        vec![two * h11, zero, r2 * h12],
        vec![zero, two * h22, r2 * h21],
        vec![r2 * h21, r2 * h12, h11 + h22],
    ])
    .unwrap()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_entry_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.row_major()
        .iter()
        .zip(b.row_major())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn real(rows: &[[f64; 3]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}

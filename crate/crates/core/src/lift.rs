//! Lifting single-photon descriptions to `n` photons.
//!
//! Matrix elements follow `U_pq = <p|U|q>`: column `q` of a lifted matrix is the
//! image of basis state `q`, and `|U_pq|^2` is the probability of going from
//! `q` to `p`. Rows and columns are in the canonical order of [`FockBasis`].

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock_basis::{
    enumerate_basis, photon_move_relation, FockBasis, MoveRelation, OccupationState,
};
use crate::linalg::{hermiticity_residual, permanent, ComplexMatrix, MAX_PERMANENT_SIZE};

/// Default tolerance for accepting a single-photon Hamiltonian as Hermitian.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-9;

/// `phi(S)`: the `n`-photon unitary induced by a single-photon scattering matrix.
#[derive(Debug, Clone)]
pub struct LiftedUnitary {
    pub basis: FockBasis,
    pub matrix: ComplexMatrix,
}

/// `dphi(H_S)`: the `n`-photon effective Hamiltonian.
#[derive(Debug, Clone)]
pub struct LiftedHamiltonian {
    pub basis: FockBasis,
    pub matrix: ComplexMatrix,
}

fn require_single_photon_matrix(s: &ComplexMatrix, what: &str) -> Result<()> {
    if !s.is_square() {
        return Err(Error::InvalidArgument(format!(
            "{what} must be square, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    Ok(())
}

/// Basis of every photon number `0..=photons`, and where each creation operator
/// sends each state: `steps[t][state][j]` is the index in level `t + 1` of
/// `state` with one more photon in mode `j`.
struct CreationTable {
    levels: Vec<FockBasis>,
    steps: Vec<Vec<Vec<usize>>>,
}

impl CreationTable {
    fn new(modes: usize, photons: usize) -> Result<Self> {
        let levels = (0..=photons)
            .map(|t| enumerate_basis(modes, t))
            .collect::<Result<Vec<_>>>()?;
        let mut scratch = vec![0usize; modes];
        let steps = levels
            .windows(2)
            .map(|pair| {
                let (level, next) = (&pair[0], &pair[1]);
                level
                    .iter()
                    .map(|state| {
                        scratch.copy_from_slice(state.occupations());
                        (0..modes)
                            .map(|j| {
                                scratch[j] += 1;
                                let target = next.rank(&scratch);
                                scratch[j] -= 1;
                                target
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { levels, steps })
    }
}

/// Build `phi(S)` by expanding `prod_k (sum_j S_jk a_j^dagger)^{n_k} / sqrt(n_k!)`
/// applied to the vacuum, one creation-operator factor at a time.
///
/// The expansion tracks the coefficient `c_p` of each monomial
/// `prod_j (a_j^dagger)^{p_j}`; since that monomial acting on the vacuum is
/// `sqrt(p!) |p>`, the matrix element is `U_pq = c_p sqrt(p! / q!)`. Collecting
/// the ladder factors into one square root at the end keeps `phi(I) = I` exact.
pub fn lift_unitary_expansion(s: &ComplexMatrix, photons: usize) -> Result<LiftedUnitary> {
    require_single_photon_matrix(s, "scattering matrix")?;
    let modes = s.rows();
    let table = CreationTable::new(modes, photons)?;
    let basis = table.levels[photons].clone();
    let size = basis.len();
    let zero = Complex64::new(0.0, 0.0);
    let factorials: Vec<f64> = basis
        .iter()
        .map(OccupationState::factorial_product)
        .collect();

    let mut out = DMatrix::<Complex64>::zeros(size, size);
    for (col, input) in basis.iter().enumerate() {
        let mut coefficients = vec![Complex64::new(1.0, 0.0)];
        let mut level = 0;
        for (k, &count) in input.occupations().iter().enumerate() {
            for _ in 0..count {
                let mut next = vec![zero; table.levels[level + 1].len()];
                for (state, &coefficient) in coefficients.iter().enumerate() {
                    if coefficient == zero {
                        continue;
                    }
                    for (j, &target) in table.steps[level][state].iter().enumerate() {
                        next[target] += coefficient * s.get(j, k);
                    }
                }
                coefficients = next;
                level += 1;
            }
        }
        for (row, coefficient) in coefficients.into_iter().enumerate() {
            out[(row, col)] = coefficient * (factorials[row] / factorials[col]).sqrt();
        }
    }

    Ok(LiftedUnitary {
        basis,
        matrix: ComplexMatrix::from_dmatrix(out)?,
    })
}

/// Mode labels repeated by occupation: `(2, 0, 1)` becomes `[0, 0, 2]`.
fn repeated_modes(state: &OccupationState) -> Vec<usize> {
    state
        .occupations()
        .iter()
        .enumerate()
        .flat_map(|(mode, &count)| std::iter::repeat_n(mode, count))
        .collect()
}

/// Build `phi(S)` entry by entry from permanents:
/// `U_pq = per(S[p|q]) / sqrt(prod p_k! prod q_k!)`, where `S[p|q]` repeats row
/// `j` of `S` `p_j` times and column `l` `q_l` times.
pub fn lift_unitary_permanent(s: &ComplexMatrix, photons: usize) -> Result<LiftedUnitary> {
    require_single_photon_matrix(s, "scattering matrix")?;
    if photons > MAX_PERMANENT_SIZE {
        return Err(Error::Size(format!(
            "{photons} photons exceeds the permanent size limit of {MAX_PERMANENT_SIZE}"
        )));
    }
    let basis = enumerate_basis(s.rows(), photons)?;
    let size = basis.len();
    if photons == 0 {
        return Ok(LiftedUnitary {
            basis,
            matrix: ComplexMatrix::identity(1),
        });
    }

    let rows: Vec<Vec<usize>> = basis.iter().map(repeated_modes).collect();
    let norms: Vec<f64> = basis
        .iter()
        .map(OccupationState::factorial_product)
        .collect();
    let mut out = DMatrix::<Complex64>::zeros(size, size);
    for (q, cols) in rows.iter().enumerate() {
        for (p, picked) in rows.iter().enumerate() {
            let entries = picked
                .iter()
                .flat_map(|&j| cols.iter().map(move |&l| s.get(j, l)))
                .collect();
            let sub = ComplexMatrix::from_row_major(photons, photons, entries)?;
            out[(p, q)] = permanent(&sub)? / (norms[p] * norms[q]).sqrt();
        }
    }

    Ok(LiftedUnitary {
        basis,
        matrix: ComplexMatrix::from_dmatrix(out)?,
    })
}

/// `<p| sum_{j,l} X_jl a_j^dagger a_l |q>` for an arbitrary `m x m` matrix `X`.
///
/// This is the complex-linear extension of `dphi` to all of `gl(m)`; it is what
/// the Lie-bracket checks need, since commutators of Hermitian matrices are
/// anti-Hermitian. Only `(state, l)` pairs with `q_l > 0` are visited.
pub fn lift_generator(x: &ComplexMatrix, photons: usize) -> Result<LiftedHamiltonian> {
    require_single_photon_matrix(x, "generator")?;
    lift_with(x.rows(), photons, |j, l| x.get(j, l))
}

fn lift_with<F>(modes: usize, photons: usize, entry: F) -> Result<LiftedHamiltonian>
where
    F: Fn(usize, usize) -> Complex64,
{
    let basis = enumerate_basis(modes, photons)?;
    let size = basis.len();
    let mut out = DMatrix::<Complex64>::zeros(size, size);
    let mut scratch = vec![0usize; modes];
    for (col, q) in basis.iter().enumerate() {
        let occ = q.occupations();
        let mut diagonal = Complex64::new(0.0, 0.0);
        for l in (0..modes).filter(|&l| occ[l] > 0) {
            diagonal += entry(l, l) * occ[l] as f64;
            scratch.copy_from_slice(occ);
            scratch[l] -= 1;
            for j in (0..modes).filter(|&j| j != l) {
                scratch[j] += 1;
                let row = basis.rank(&scratch);
                scratch[j] -= 1;
                let weight = (((occ[j] + 1) * occ[l]) as f64).sqrt();
                out[(row, col)] = entry(j, l) * weight;
            }
        }
        out[(col, col)] = diagonal;
    }
    Ok(LiftedHamiltonian {
        basis,
        matrix: ComplexMatrix::from_dmatrix(out)?,
    })
}

/// Hermitian part of entry `(j, l)`, i.e. of `(H + H^dagger) / 2`.
fn hermitian_entry(h: &ComplexMatrix, j: usize, l: usize) -> Complex64 {
    (h.get(j, l) + h.get(l, j).conj()) * 0.5
}

fn require_hermitian(h: &ComplexMatrix, tol: f64) -> Result<()> {
    require_single_photon_matrix(h, "Hamiltonian")?;
    let residual = hermiticity_residual(h)?;
    if residual > tol {
        return Err(Error::Domain(format!(
            "Hamiltonian is not Hermitian: ||H - H^dagger||_F = {residual:.3e} exceeds {tol:.3e}"
        )));
    }
    Ok(())
}

/// `H_U = dphi(H_S)` with the default Hermiticity tolerance.
pub fn lift_hamiltonian(h: &ComplexMatrix, photons: usize) -> Result<LiftedHamiltonian> {
    lift_hamiltonian_with_tol(h, photons, DEFAULT_HERMITIAN_TOL)
}

/// `H_U = dphi(H_S)`.
///
/// Diagonal entries are `sum_l q_l H_S[l][l]`; an entry whose row state is
/// the column state with one photon moved from mode `l` to mode `j` is
/// `sqrt((q_j + 1) q_l) H_S[j][l]`; all other entries are zero. The input is
/// replaced by its Hermitian part first, so the output is exactly Hermitian.
pub fn lift_hamiltonian_with_tol(
    h: &ComplexMatrix,
    photons: usize,
    tol: f64,
) -> Result<LiftedHamiltonian> {
    require_hermitian(h, tol)?;
    lift_with(h.rows(), photons, |j, l| hermitian_entry(h, j, l))
}

/// A single entry `<p|H_U|q>` without building the matrix.
pub fn hamiltonian_element(
    h: &ComplexMatrix,
    p: &OccupationState,
    q: &OccupationState,
) -> Result<Complex64> {
    require_hermitian(h, DEFAULT_HERMITIAN_TOL)?;
    if q.modes() != h.rows() {
        return Err(Error::InvalidArgument(format!(
            "state has {} modes but the Hamiltonian is {}x{}",
            q.modes(),
            h.rows(),
            h.cols()
        )));
    }
    Ok(match photon_move_relation(p, q)? {
        MoveRelation::Identical => q
            .occupations()
            .iter()
            .enumerate()
            .filter(|(_, &count)| count > 0)
            .map(|(l, &count)| hermitian_entry(h, l, l) * count as f64)
            .sum(),
        MoveRelation::OneMove { to, from } => {
            let occ = q.occupations();
            hermitian_entry(h, to, from) * (((occ[to] + 1) * occ[from]) as f64).sqrt()
        }
        MoveRelation::Far => Complex64::new(0.0, 0.0),
    })
}

/// Phase picked up by the `n`-photon unitary when `S` carries a global phase
/// `e^{i phi}`: `phi(e^{i phi} S) = e^{i n phi} phi(S)`. Reduced to `(-pi, pi]`.
pub fn global_phase_lift(phase: f64, photons: usize) -> f64 {
    let total = phase * photons as f64;
    let reduced = (total + PI).rem_euclid(2.0 * PI) - PI;
    if reduced <= -PI {
        PI
    } else {
        reduced
    }
}

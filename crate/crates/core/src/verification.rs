//! Runnable checks of the structural properties of the lift.
//!
//! Every check returns a report whose `Display` form is a single line of
//! `key=value` pairs. Random inputs come from a seeded ChaCha generator, so a
//! run is fully determined by its seed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fock_basis::{photon_move_relation, MoveRelation, OccupationState};
use crate::lift::{global_phase_lift, lift_hamiltonian_with_tol, lift_unitary_expansion};
use crate::linalg::{hermiticity_residual, matrix_exponential, unitarity_residual, ComplexMatrix};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

/// Default tolerance for the commutative-diagram check.
pub const DEFAULT_DIAGRAM_TOL: f64 = 1e-8;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Deterministic random generator for test inputs.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hermitian matrix `(A + A^dagger) / 2` where `A` has real and imaginary
/// parts uniform in `[-1, 1)`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, size: usize) -> ComplexMatrix {
    let entries = (0..size * size)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let a = ComplexMatrix::from_row_major(size, size, entries).expect("finite entries");
    (&a + &a.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// `exp(i H)` for a random Hermitian `H`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, size: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, size);
    matrix_exponential(&h.scale(I)).expect("exponential of a bounded matrix")
}

/// Both paths around `phi(exp(i H_S)) = exp(i dphi(H_S))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramReport {
    pub m: usize,
    pub n: usize,
    /// `||phi(exp(i H_S)) - exp(i dphi(H_S))||_F`.
    pub residual_diagram: f64,
    /// `||U^dagger U - I||_F` for `U = phi(exp(i H_S))`.
    pub residual_unitarity: f64,
    /// `||H_U - H_U^dagger||_F`.
    pub residual_hermiticity: f64,
    /// Entries of `H_U` that are nonzero although the states are more than
    /// one photon hop apart.
    pub sparsity_violations: usize,
    pub passed: bool,
    pub tolerance: f64,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check=diagram m={} n={} residual_diagram={:e} residual_unitarity={:e} \
             residual_hermiticity={:e} sparsity_violations={} tolerance={:e} passed={}",
            self.m,
            self.n,
            self.residual_diagram,
            self.residual_unitarity,
            self.residual_hermiticity,
            self.sparsity_violations,
            self.tolerance,
            self.passed
        )
    }
}

/// Which single-residual property a [`CheckReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Homomorphism,
    GlobalPhase,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Homomorphism => "homomorphism",
            CheckKind::GlobalPhase => "global_phase",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub m: usize,
    pub n: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} m={} n={} residual={:e} tolerance={:e} passed={}",
            self.kind, self.m, self.n, self.residual, self.tolerance, self.passed
        )
    }
}

fn require_unitary(s: &ComplexMatrix, tol: f64, what: &str) -> Result<()> {
    let residual = unitarity_residual(s)?;
    if residual > tol {
        return Err(Error::Domain(format!(
            "{what} is not unitary: ||S^dagger S - I||_F = {residual:.3e} exceeds {tol:.3e}"
        )));
    }
    Ok(())
}

/// Compare `phi(exp(i H_S))` against `exp(i dphi(H_S))`.
pub fn check_diagram(h: &ComplexMatrix, photons: usize, tol: f64) -> Result<DiagramReport> {
    let lifted_h = lift_hamiltonian_with_tol(h, photons, tol)?;
    let hermitian = (h + &h.adjoint()).scale(Complex64::new(0.5, 0.0));

    let s = matrix_exponential(&hermitian.scale(I))?;
    let group_path = lift_unitary_expansion(&s, photons)?.matrix;
    let algebra_path = matrix_exponential(&lifted_h.matrix.scale(I))?;

    let basis = &lifted_h.basis;
    let mut sparsity_violations = 0;
    for (r, p) in basis.iter().enumerate() {
        for (c, q) in basis.iter().enumerate() {
            if photon_move_relation(p, q)? == MoveRelation::Far
                && lifted_h.matrix.get(r, c) != Complex64::new(0.0, 0.0)
            {
                sparsity_violations += 1;
            }
        }
    }

    let residual_diagram = group_path.distance(&algebra_path);
    let residual_unitarity = unitarity_residual(&group_path)?;
    let residual_hermiticity = hermiticity_residual(&lifted_h.matrix)?;
    let passed = residual_diagram <= tol
        && residual_unitarity <= tol
        && residual_hermiticity <= tol
        && sparsity_violations == 0;

    Ok(DiagramReport {
        m: h.rows(),
        n: photons,
        residual_diagram,
        residual_unitarity,
        residual_hermiticity,
        sparsity_violations,
        passed,
        tolerance: tol,
    })
}

/// `||phi(S2 S1) - phi(S2) phi(S1)||_F`.
pub fn check_homomorphism(
    s1: &ComplexMatrix,
    s2: &ComplexMatrix,
    photons: usize,
    tol: f64,
) -> Result<CheckReport> {
    if !s1.is_square() || s1.rows() != s2.rows() || s1.cols() != s2.cols() {
        return Err(Error::InvalidArgument(format!(
            "scattering matrices must be square and equally sized, got {}x{} and {}x{}",
            s1.rows(),
            s1.cols(),
            s2.rows(),
            s2.cols()
        )));
    }
    require_unitary(s1, tol, "first scattering matrix")?;
    require_unitary(s2, tol, "second scattering matrix")?;

    let composite = lift_unitary_expansion(&(s2 * s1), photons)?.matrix;
    let u1 = lift_unitary_expansion(s1, photons)?.matrix;
    let u2 = lift_unitary_expansion(s2, photons)?.matrix;
    let residual = composite.distance(&(&u2 * &u1));
    Ok(CheckReport {
        kind: CheckKind::Homomorphism,
        m: s1.rows(),
        n: photons,
        residual,
        tolerance: tol,
        passed: residual <= tol,
    })
}

/// `||phi(e^{i phase} S) - e^{i n phase} phi(S)||_F`.
pub fn check_global_phase(
    s: &ComplexMatrix,
    phase: f64,
    photons: usize,
    tol: f64,
) -> Result<CheckReport> {
    require_unitary(s, tol, "scattering matrix")?;
    let shifted = lift_unitary_expansion(&s.scale(Complex64::from_polar(1.0, phase)), photons)?;
    let lifted = lift_unitary_expansion(s, photons)?;
    let expected = lifted.matrix.scale(Complex64::from_polar(
        1.0,
        global_phase_lift(phase, photons),
    ));
    let residual = shifted.matrix.distance(&expected);
    Ok(CheckReport {
        kind: CheckKind::GlobalPhase,
        m: s.rows(),
        n: photons,
        residual,
        tolerance: tol,
        passed: residual <= tol,
    })
}

/// Central finite difference of `t -> phi(exp(i t H_S))` at `t = 0`, compared
/// against `i dphi(H_S)`. Returns the Frobenius residual, which scales as `step^2`.
pub fn check_derivative_oracle(h: &ComplexMatrix, photons: usize, step: f64) -> Result<f64> {
    if !(step > 0.0 && step <= 1e-3) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must lie in (0, 1e-3], got {step}"
        )));
    }
    let lifted_h = lift_hamiltonian_with_tol(h, photons, crate::lift::DEFAULT_HERMITIAN_TOL)?;
    let hermitian = (h + &h.adjoint()).scale(Complex64::new(0.5, 0.0));

    let forward = matrix_exponential(&hermitian.scale(Complex64::new(0.0, step)))?;
    let backward = matrix_exponential(&hermitian.scale(Complex64::new(0.0, -step)))?;
    let forward = lift_unitary_expansion(&forward, photons)?.matrix;
    let backward = lift_unitary_expansion(&backward, photons)?.matrix;
    let derivative = (&forward - &backward).scale(Complex64::new(0.5 / step, 0.0));
    Ok(derivative.distance(&lifted_h.matrix.scale(I)))
}

/// Settings for a seeded random sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub modes: usize,
    pub photons: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Results of [`run_sweep`], in trial order.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub diagrams: Vec<DiagramReport>,
    pub homomorphisms: Vec<CheckReport>,
    pub global_phases: Vec<CheckReport>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.diagrams.iter().all(|r| r.passed)
            && self.homomorphisms.iter().all(|r| r.passed)
            && self.global_phases.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> usize {
        self.diagrams.iter().filter(|r| !r.passed).count()
            + self.homomorphisms.iter().filter(|r| !r.passed).count()
            + self.global_phases.iter().filter(|r| !r.passed).count()
    }
}

/// Per trial: one diagram check on a random Hermitian, one homomorphism check
/// on a random unitary pair, and one global-phase check on a random unitary.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.modes == 0 {
        return Err(Error::InvalidArgument(
            "mode count must be at least 1".into(),
        ));
    }
    let mut rng = seeded_rng(config.seed);
    let mut report = SweepReport::default();
    for _ in 0..config.trials {
        let h = random_hermitian(&mut rng, config.modes);
        let s1 = random_unitary(&mut rng, config.modes);
        let s2 = random_unitary(&mut rng, config.modes);
        let phase = rng.random_range(-PI..PI);

        report
            .diagrams
            .push(check_diagram(&h, config.photons, config.tol)?);
        report
            .homomorphisms
            .push(check_homomorphism(&s1, &s2, config.photons, config.tol)?);
        report
            .global_phases
            .push(check_global_phase(&s1, phase, config.photons, config.tol)?);
    }
    Ok(report)
}

/// The 50:50 beam splitter `(1/sqrt 2) [[1, 1], [1, -1]]`.
pub fn balanced_beam_splitter() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[[h, h], [h, -h]]).expect("finite entries")
}

/// Probability of each output basis state for a given input state.
pub fn output_distribution(
    s: &ComplexMatrix,
    input: &OccupationState,
) -> Result<Vec<(OccupationState, f64)>> {
    let lifted = lift_unitary_expansion(s, input.photons())?;
    let col = lifted.basis.index(input).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "input state {input} does not match a {}-mode network",
            s.rows()
        ))
    })?;
    Ok(lifted
        .basis
        .iter()
        .enumerate()
        .map(|(row, state)| (state.clone(), lifted.matrix.get(row, col).norm_sqr()))
        .collect())
}

/// Output distribution of `|11>` through `s`; for the balanced beam splitter
/// the coincidence probability vanishes.
pub fn hong_ou_mandel(s: &ComplexMatrix) -> Result<Vec<(OccupationState, f64)>> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(Error::InvalidArgument(
            "a two-mode network is required".into(),
        ));
    }
    output_distribution(s, &OccupationState::new(vec![1, 1]))
}

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use multiphoton::fock_basis::{enumerate_basis, FockBasis, TWO_BY_TWO_LISTING};
use multiphoton::io::{read_matrix, write_matrix_file, MatrixFile};
use multiphoton::lift::{
    lift_hamiltonian_with_tol, lift_unitary_expansion, lift_unitary_permanent,
};
use multiphoton::linalg::{unitarity_residual, unitary_logarithm, ComplexMatrix};
use multiphoton::verification::{
    balanced_beam_splitter, check_diagram, hong_ou_mandel, run_sweep, SweepConfig,
};
use multiphoton::{Error, OccupationState};

use crate::Method;

/// Exit 1 for rejected input or failed checks, exit 2 for I/O and parse problems.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Validation(_) => ExitCode::from(1),
            Failure::Io(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(msg) | Failure::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Io { .. } | Error::Parse { .. } => Failure::Io(err.to_string()),
            _ => Failure::Validation(err.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

/// Ordering of the written matrix relative to the canonical basis.
fn listing(basis: &FockBasis, bunched_first: bool) -> Result<Vec<usize>, Failure> {
    if !bunched_first {
        return Ok((0..basis.len()).collect());
    }
    if basis.modes() != 2 || basis.photons() != 2 {
        return Err(Failure::Validation(format!(
            "--bunched-first needs two modes and two photons, got m={} n={}",
            basis.modes(),
            basis.photons()
        )));
    }
    Ok(TWO_BY_TWO_LISTING.to_vec())
}

fn print_basis(basis: &FockBasis, order: &[usize], bunched_first: bool) {
    println!(
        "basis m={} n={} size={} order={}",
        basis.modes(),
        basis.photons(),
        basis.len(),
        if bunched_first {
            "bunched-first"
        } else {
            "canonical"
        }
    );
    for (k, &pos) in order.iter().enumerate() {
        println!("index={k} state={}", basis.states()[pos]);
    }
}

fn write_lifted(
    matrix: &ComplexMatrix,
    basis: &FockBasis,
    order: &[usize],
    bunched_first: bool,
    output: &Path,
) -> Result<(), Failure> {
    let states: Vec<String> = order
        .iter()
        .map(|&k| basis.states()[k].to_string())
        .collect();
    let file = MatrixFile::from_matrix(&matrix.permuted(order))
        .with_metadata("modes", basis.modes().to_string())
        .with_metadata("photons", basis.photons().to_string())
        .with_metadata(
            "order",
            if bunched_first {
                "bunched-first"
            } else {
                "canonical"
            },
        )
        .with_metadata("basis", states.join(" "));
    write_matrix_file(&file, output)?;
    Ok(())
}

pub fn lift_u(
    photons: usize,
    input: &Path,
    output: &Path,
    method: Method,
    tol: f64,
    bunched_first: bool,
) -> CmdResult {
    let s = read_matrix(input)?;
    if !s.is_square() {
        return Err(Failure::Validation(format!(
            "scattering matrix must be square, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let residual = unitarity_residual(&s)?;
    if residual > tol {
        return Err(Failure::Validation(format!(
            "input is not unitary: ||S^dagger S - I||_F = {residual:.3e} exceeds --tol {tol:.3e}"
        )));
    }
    let lifted = match method {
        Method::Expansion => lift_unitary_expansion(&s, photons)?,
        Method::Permanent => lift_unitary_permanent(&s, photons)?,
    };
    let order = listing(&lifted.basis, bunched_first)?;
    write_lifted(&lifted.matrix, &lifted.basis, &order, bunched_first, output)?;
    print_basis(&lifted.basis, &order, bunched_first);
    Ok(ExitCode::SUCCESS)
}

pub fn lift_h(
    photons: usize,
    input: &Path,
    output: &Path,
    tol: f64,
    bunched_first: bool,
) -> CmdResult {
    let h = read_matrix(input)?;
    let lifted = lift_hamiltonian_with_tol(&h, photons, tol)?;
    let order = listing(&lifted.basis, bunched_first)?;
    write_lifted(&lifted.matrix, &lifted.basis, &order, bunched_first, output)?;
    print_basis(&lifted.basis, &order, bunched_first);
    Ok(ExitCode::SUCCESS)
}

pub fn log(input: &Path, output: &Path, tol: f64) -> CmdResult {
    let q = read_matrix(input)?;
    let h = unitary_logarithm(&q, tol)?;
    write_matrix_file(
        &MatrixFile::from_matrix(&h).with_metadata("branch", "(-pi, pi]"),
        output,
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(
    input: Option<&Path>,
    photons: usize,
    modes: usize,
    seed: u64,
    trials: usize,
    tol: f64,
) -> CmdResult {
    if let Some(path) = input {
        let h = read_matrix(path)?;
        let report = check_diagram(&h, photons, tol)?;
        println!("{report}");
        return Ok(if report.passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let config = SweepConfig {
        modes,
        photons,
        trials,
        seed,
        tol,
    };
    let report = run_sweep(&config)?;
    for line in report
        .diagrams
        .iter()
        .map(ToString::to_string)
        .chain(report.homomorphisms.iter().map(ToString::to_string))
        .chain(report.global_phases.iter().map(ToString::to_string))
    {
        println!("{line}");
    }
    let total = report.diagrams.len() + report.homomorphisms.len() + report.global_phases.len();
    println!(
        "summary m={modes} n={photons} seed={seed} trials={trials} checks={total} failures={} passed={}",
        report.failures(),
        report.all_passed()
    );
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn demo_hom() -> CmdResult {
    let distribution = hong_ou_mandel(&balanced_beam_splitter())?;
    let input = OccupationState::new(vec![1, 1]);
    println!("network=balanced_beam_splitter input={input}");
    let mut total = 0.0;
    for (state, probability) in &distribution {
        // clamp rounding noise on the vanishing coincidence amplitude
        let shown = if *probability < 1e-15 {
            0.0
        } else {
            *probability
        };
        println!("output={state} probability={shown}");
        total += probability;
    }
    println!("total_probability={total}");
    Ok(ExitCode::SUCCESS)
}

pub fn basis(modes: usize, photons: usize) -> CmdResult {
    let basis = enumerate_basis(modes, photons)?;
    let order: Vec<usize> = (0..basis.len()).collect();
    print_basis(&basis, &order, false);
    Ok(ExitCode::SUCCESS)
}

//! Occupation-number (Fock) basis for `n` photons in `m` modes.
//!
//! States are ordered reverse-lexicographically: `(n, 0, .., 0)` comes first and
//! `(0, .., 0, n)` last. Positions are computed by combinatorial ranking, so
//! looking up a state is `O(m)` and needs no hashing.
//!
//! Mode indices are zero-based throughout the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Photon counts per mode, `|n_1 n_2 ... n_m>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationState(Vec<usize>);

impl OccupationState {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    /// The state with no photons in any of `modes` modes.
    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, mode: usize) -> Option<usize> {
        self.0.get(mode).copied()
    }

    /// Product of `n_k!` over all modes, as a float.
    pub fn factorial_product(&self) -> f64 {
        self.0
            .iter()
            .map(|&count| (1..=count).map(|v| v as f64).product::<f64>())
            .product()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes() {
            return Err(Error::InvalidArgument(format!(
                "mode index {mode} out of range for {} modes",
                self.modes()
            )));
        }
        Ok(())
    }
}

impl From<Vec<usize>> for OccupationState {
    fn from(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, count) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{count}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a ladder operator acting on a basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderResult {
    pub coefficient: f64,
    /// `None` when the annihilated mode was empty.
    pub state: Option<OccupationState>,
}

/// `a_j^dagger |state>`.
pub fn apply_creation(state: &OccupationState, mode: usize) -> Result<LadderResult> {
    state.check_mode(mode)?;
    let mut raised = state.clone();
    raised.0[mode] += 1;
    Ok(LadderResult {
        coefficient: (raised.0[mode] as f64).sqrt(),
        state: Some(raised),
    })
}

/// `a_l |state>`. Annihilating an empty mode gives a zero amplitude and no state.
pub fn apply_annihilation(state: &OccupationState, mode: usize) -> Result<LadderResult> {
    state.check_mode(mode)?;
    let count = state.0[mode];
    if count == 0 {
        return Ok(LadderResult {
            coefficient: 0.0,
            state: None,
        });
    }
    let mut lowered = state.clone();
    lowered.0[mode] -= 1;
    Ok(LadderResult {
        coefficient: (count as f64).sqrt(),
        state: Some(lowered),
    })
}

/// How two states with equal mode count and photon number are connected by
/// single-photon hops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveRelation {
    Identical,
    /// `p` is `q` with one photon moved from mode `from` into mode `to`.
    OneMove {
        to: usize,
        from: usize,
    },
    Far,
}

/// Classify `p` relative to `q`.
pub fn photon_move_relation(p: &OccupationState, q: &OccupationState) -> Result<MoveRelation> {
    if p.modes() != q.modes() {
        return Err(Error::InvalidArgument(format!(
            "states have different mode counts ({} vs {})",
            p.modes(),
            q.modes()
        )));
    }
    if p.photons() != q.photons() {
        return Err(Error::InvalidArgument(format!(
            "states have different photon numbers ({} vs {})",
            p.photons(),
            q.photons()
        )));
    }

    let mut gained = None;
    let mut lost = None;
    for (mode, (&a, &b)) in p.0.iter().zip(&q.0).enumerate() {
        if a == b {
            continue;
        }
        let slot = if a > b { &mut gained } else { &mut lost };
        if a.abs_diff(b) > 1 || slot.is_some() {
            return Ok(MoveRelation::Far);
        }
        *slot = Some(mode);
    }

    Ok(match (gained, lost) {
        (None, None) => MoveRelation::Identical,
        (Some(to), Some(from)) => MoveRelation::OneMove { to, from },
        // unreachable with equal photon numbers
        _ => MoveRelation::Far,
    })
}

/// Exact binomial coefficient, `None` on overflow.
fn binomial(top: u128, bottom: u128) -> Option<u128> {
    if bottom > top {
        return Some(0);
    }
    let bottom = bottom.min(top - bottom);
    let mut acc: u128 = 1;
    for i in 1..=bottom {
        // acc * (top - bottom + i) is divisible by i; split the factor to
        // postpone overflow as far as possible.
        let factor = top - bottom + i;
        let g = gcd(acc, i);
        let (acc_r, i_r) = (acc / g, i / g);
        let factor_r = factor / i_r;
        debug_assert_eq!(factor % i_r, 0);
        acc = acc_r.checked_mul(factor_r)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of ways to place `photons` indistinguishable photons into `modes`
/// modes: `C(m + n - 1, n)`.
pub fn dimension(modes: usize, photons: usize) -> Result<u128> {
    if modes == 0 {
        return Err(Error::InvalidArgument(
            "mode count must be at least 1".into(),
        ));
    }
    let top = (modes as u128 - 1) + photons as u128;
    let bottom = photons as u128;
    binomial(top, bottom).ok_or(Error::Overflow { top, bottom })
}

/// The full basis for a fixed `(m, n)`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    modes: usize,
    photons: usize,
    states: Vec<OccupationState>,
    // fill[k][t] = C(t + k, k): ways to put at most t photons into k modes.
    fill: Vec<Vec<usize>>,
}

impl FockBasis {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[OccupationState] {
        &self.states
    }

    pub fn state(&self, position: usize) -> Option<&OccupationState> {
        self.states.get(position)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OccupationState> {
        self.states.iter()
    }

    /// Position of `state` in this basis, or `None` if it does not belong here.
    pub fn index(&self, state: &OccupationState) -> Option<usize> {
        if state.modes() != self.modes || state.photons() != self.photons {
            return None;
        }
        Some(self.rank(state.occupations()))
    }

    /// Rank of an occupation vector known to have the right shape.
    pub(crate) fn rank(&self, occupations: &[usize]) -> usize {
        let mut remaining = self.photons;
        let mut position = 0;
        for (mode, &count) in occupations.iter().enumerate() {
            // Every state with more photons in this mode (same prefix) comes first.
            if count < remaining {
                let modes_after = self.modes - mode - 1;
                position += self.fill[modes_after][remaining - count - 1];
            }
            remaining -= count;
        }
        position
    }
}

impl<'a> IntoIterator for &'a FockBasis {
    type Item = &'a OccupationState;
    type IntoIter = std::slice::Iter<'a, OccupationState>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}

/// Enumerate every occupation pattern of `photons` photons over `modes` modes.
pub fn enumerate_basis(modes: usize, photons: usize) -> Result<FockBasis> {
    let size = dimension(modes, photons)?;
    let size = usize::try_from(size).map_err(|_| Error::Overflow {
        top: (modes as u128 - 1) + photons as u128,
        bottom: photons as u128,
    })?;

    // Every entry is bounded by `size`, so these cannot overflow.
    let fill: Vec<Vec<usize>> = (0..modes)
        .map(|k| {
            (0..photons.max(1))
                .map(|t| binomial((t + k) as u128, k as u128).unwrap() as usize)
                .collect()
        })
        .collect();

    let mut states = Vec::with_capacity(size);
    let mut current = vec![0; modes];
    current[0] = photons;
    loop {
        states.push(OccupationState(current.clone()));
        // Rightmost movable photon that is not already in the last mode.
        let Some(pivot) = (0..modes.saturating_sub(1)).rev().find(|&i| current[i] > 0) else {
            break;
        };
        let tail: usize = current[pivot + 1..].iter().sum();
        current[pivot] -= 1;
        current[pivot + 1..].iter_mut().for_each(|c| *c = 0);
        current[pivot + 1] = tail + 1;
    }
    debug_assert_eq!(states.len(), size);

    Ok(FockBasis {
        modes,
        photons,
        states,
        fill,
    })
}

/// Permutation from canonical order to the two-photon, two-mode listing
/// `|20>, |02>, |11>`: entry `k` is the canonical position of the `k`-th listed state.
pub const TWO_BY_TWO_LISTING: [usize; 3] = [0, 2, 1];

//! Erasure-code evaluation of circuit-generated stabilizer groups:
//! contiguous code distance, quasicyclic code construction, erasure-failure
//! Monte Carlo, and the random-matrix-theory comparator.

use crate::automaton::SymplecticVector;
use crate::lattice::{CircuitSpec, LatticeError};
use crate::tableau::{Region, StabilizerGroup, TableauError};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodesError {
    #[error("group is pure: no logical operators")]
    PureGroup,
    #[error("erasure fraction {0} outside [0, 1]")]
    InvalidFraction(f64),
    #[error("erasure fraction {e} at or above the threshold {threshold}")]
    ModelOutOfRange { e: f64, threshold: f64 },
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A code at a fixed time, with the data needed to reproduce it.
#[derive(Clone, Debug)]
pub struct CodeSnapshot {
    pub group: StabilizerGroup,
    pub spec: CircuitSpec,
    /// Cell generators of the initial translation-invariant product group.
    pub initial: Vec<SymplecticVector>,
    /// Steps from the initial state to this snapshot.
    pub t: u64,
    /// Contiguous code distance at the snapshot time.
    pub d1: usize,
}

impl CodeSnapshot {
    /// Code rate s = 1 - k/L.
    pub fn rate(&self) -> f64 {
        1.0 - self.group.k() as f64 / self.group.qubits() as f64
    }

    pub fn logical_qubits(&self) -> usize {
        self.group.qubits() - self.group.k()
    }
}

/// An erasure channel: a fixed fraction of sites erased at uniformly random
/// distinct locations.
#[derive(Clone, Copy, Debug)]
pub struct ErasureModel {
    pub fraction: f64,
    pub trials: u64,
    pub seed: u64,
}

impl ErasureModel {
    pub fn erased_count(&self, qubits: usize) -> usize {
        (self.fraction * qubits as f64).round() as usize
    }
}

/// Number of independent logical operators supported entirely on the given
/// sites: 2|W| - rank(G|_W) - (k - rank(G|_complement)).
pub fn logical_dim_on_sites(g: &StabilizerGroup, sites: &[usize]) -> usize {
    let qubits = g.qubits();
    let mut inside = vec![false; qubits];
    for &s in sites {
        inside[s] = true;
    }
    let complement: Vec<usize> = (0..qubits).filter(|q| !inside[*q]).collect();
    let dim = 2 * sites.len() as i64
        - g.restricted_rank(sites) as i64
        - (g.k() as i64 - g.restricted_rank(&complement) as i64);
    debug_assert!(dim >= 0);
    dim as usize
}

/// Logical dimension of a contiguous window.
pub fn logical_dim_on_region(
    g: &StabilizerGroup,
    region: &Region,
) -> Result<usize, CodesError> {
    let sites = region.sites(g.qubits())?;
    Ok(logical_dim_on_sites(g, &sites))
}

/// Length of the shortest contiguous (cyclic) window hosting a nontrivial
/// logical operator; L if none shorter exists.
pub fn contiguous_code_distance(g: &StabilizerGroup) -> Result<usize, CodesError> {
    let qubits = g.qubits();
    if g.k() == qubits {
        return Err(CodesError::PureGroup);
    }
    for len in 1..qubits {
        let found = (0..qubits).into_par_iter().any(|start| {
            logical_dim_on_sites(
                g,
                &(0..len).map(|i| (start + i) % qubits).collect::<Vec<_>>(),
            ) >= 1
        });
        if found {
            return Ok(len);
        }
    }
    Ok(qubits)
}

/// Evolve a translation-invariant product group and keep the snapshot with
/// the largest contiguous code distance over t <= t_max (earliest tie wins).
pub fn build_quasicyclic(
    spec: &CircuitSpec,
    initial: &[SymplecticVector],
    cells: usize,
    t_max: u64,
) -> Result<CodeSnapshot, CodesError> {
    let mut group = StabilizerGroup::from_translates(cells, initial)?;
    if group.k() == group.qubits() {
        return Err(CodesError::PureGroup);
    }
    let mut best = CodeSnapshot {
        d1: contiguous_code_distance(&group)?,
        group: group.clone(),
        spec: spec.clone(),
        initial: initial.to_vec(),
        t: 0,
    };
    for t in 1..=t_max {
        group = group.step(spec)?;
        let d1 = contiguous_code_distance(&group)?;
        if d1 > best.d1 {
            best = CodeSnapshot {
                d1,
                group: group.clone(),
                spec: spec.clone(),
                initial: initial.to_vec(),
                t,
            };
        }
    }
    Ok(best)
}

/// An erasure is unrecoverable exactly when some logical operator lives
/// entirely on the erased sites.
pub fn erasure_failure(g: &StabilizerGroup, erased: &[usize]) -> bool {
    logical_dim_on_sites(g, erased) >= 1
}

/// Monte Carlo failure probability with binomial standard error. Trials are
/// independent; each draws its own RNG stream from (seed, trial index).
pub fn erasure_failure_rate(
    g: &StabilizerGroup,
    model: &ErasureModel,
) -> Result<(f64, f64), CodesError> {
    if !(0.0..=1.0).contains(&model.fraction) {
        return Err(CodesError::InvalidFraction(model.fraction));
    }
    if g.k() == g.qubits() {
        return Err(CodesError::PureGroup);
    }
    let qubits = g.qubits();
    let erased_count = model.erased_count(qubits);
    let failures: u64 = (0..model.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(model.seed);
            rng.set_stream(trial);
            let erased =
                rand::seq::index::sample(&mut rng, qubits, erased_count).into_vec();
            u64::from(erasure_failure(g, &erased))
        })
        .sum();
    let p = failures as f64 / model.trials as f64;
    let stderr = (p * (1.0 - p) / model.trials as f64).sqrt();
    Ok((p, stderr))
}

/// Random-matrix-theory failure prediction below threshold:
/// P_F = 2^(-2L(e_c - e) - 1) with e_c = (1 - s)/2.
pub fn rmt_failure_model(e: f64, rate: f64, qubits: usize) -> Result<f64, CodesError> {
    let threshold = (1.0 - rate) / 2.0;
    if e >= threshold {
        return Err(CodesError::ModelOutOfRange { e, threshold });
    }
    Ok((-2.0 * qubits as f64 * (threshold - e) - 1.0).exp2())
}

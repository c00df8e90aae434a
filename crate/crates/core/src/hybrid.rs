//! Measurement-decorated circuits on the square lattice: one single-site
//! measurement per doubled unit cell, interleaved with the unitary brickwork.
//!
//! A hybrid time step is one full unitary period followed by one measurement
//! round. Signs are dropped, so every trajectory yields the same group.

use crate::lattice::{CircuitSpec, Lattice, LatticeError, MeasurementSchedule};
use crate::pauli::Pauli;
use crate::tableau::{MeasureOutcome, StabilizerGroup, TableauError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HybridError {
    #[error("hybrid circuits need a square-lattice spec")]
    NotSquare,
    #[error("spec has no measurement schedule")]
    NoSchedule,
    #[error("measurement site {site} outside the {cell_size}-site cell")]
    BadSite { site: usize, cell_size: usize },
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Entropy history of one purification run.
#[derive(Clone, Debug)]
pub struct PurificationTrace {
    /// S(t) after the measurement round of step t, starting at t = 0.
    pub entropies: Vec<u64>,
    /// Bits purified by each step t >= 1.
    pub purified_bits: Vec<u64>,
    /// Last step that purified anything (0 if the start is already static).
    pub purification_time: u64,
    /// First group invariant under a full hybrid step, if reached in time.
    pub plateau_group: Option<StabilizerGroup>,
    /// The final group of the run, plateau or not.
    pub final_group: StabilizerGroup,
}

/// Per-time light/dark labels: cell n is dark when X on its second site is
/// a group element.
#[derive(Clone, Debug)]
pub struct LightDarkGrid {
    /// rows[t][n] is true when cell n is light at time t.
    pub rows: Vec<Vec<bool>>,
}

impl LightDarkGrid {
    pub fn light_count(&self, t: usize) -> u64 {
        self.rows[t].iter().filter(|&&b| b).count() as u64
    }

    pub fn all_dark(&self, t: usize) -> bool {
        self.light_count(t) == 0
    }

    /// Running total of light cells through each time.
    pub fn cumulative_light(&self) -> Vec<u64> {
        let mut acc = 0;
        self.rows
            .iter()
            .map(|r| {
                acc += r.iter().filter(|&&b| b).count() as u64;
                acc
            })
            .collect()
    }
}

fn schedule_of(spec: &CircuitSpec) -> Result<MeasurementSchedule, HybridError> {
    if spec.lattice != Lattice::Square {
        return Err(HybridError::NotSquare);
    }
    let schedule = spec.measurement_schedule.ok_or(HybridError::NoSchedule)?;
    if schedule.site >= spec.cell_size() {
        return Err(HybridError::BadSite {
            site: schedule.site,
            cell_size: spec.cell_size(),
        });
    }
    Ok(schedule)
}

/// One measurement round: the scheduled Pauli on its site of every cell,
/// left to right. Returns the updated group and the number of purified bits.
pub fn measurement_round(
    g: &StabilizerGroup,
    spec: &CircuitSpec,
) -> Result<(StabilizerGroup, u64), HybridError> {
    let schedule = schedule_of(spec)?;
    let a = g.cell_size();
    let mut group = g.clone();
    let mut purified = 0;
    for cell in 0..g.cells() {
        let (next, outcome) =
            group.measure(a * cell + schedule.site, schedule.basis.pauli())?;
        if outcome == MeasureOutcome::Purifying {
            purified += 1;
        }
        group = next;
    }
    Ok((group, purified))
}

/// One full hybrid step: unitary period, then measurement round.
pub fn hybrid_step(
    g: &StabilizerGroup,
    spec: &CircuitSpec,
) -> Result<(StabilizerGroup, u64), HybridError> {
    let stepped = g.step(spec)?;
    measurement_round(&stepped, spec)
}

/// Run from an initial group: measurement round at t = 0, then hybrid steps
/// until the group goes static or t_max is reached.
pub fn run_hybrid(
    spec: &CircuitSpec,
    initial: &StabilizerGroup,
    t_max: u64,
) -> Result<PurificationTrace, HybridError> {
    let (mut group, _) = measurement_round(initial, spec)?;
    let mut entropies = vec![group.entropy()];
    let mut purified_bits = Vec::new();
    let mut purification_time = 0;
    let mut plateau_group = None;
    let mut canonical = group.canonical_form();
    for t in 1..=t_max {
        let (next, _) = hybrid_step(&group, spec)?;
        let purified = group.entropy() - next.entropy();
        entropies.push(next.entropy());
        purified_bits.push(purified);
        if purified > 0 {
            purification_time = t;
        }
        let next_canonical = next.canonical_form();
        if next_canonical == canonical {
            plateau_group = Some(next.clone());
            group = next;
            break;
        }
        canonical = next_canonical;
        group = next;
    }
    Ok(PurificationTrace {
        entropies,
        purified_bits,
        purification_time,
        plateau_group,
        final_group: group,
    })
}

/// The absorbing product group with X on every site.
pub fn dark_state(cells: usize) -> StabilizerGroup {
    StabilizerGroup::product_state(cells, 2, &vec![Pauli::X; 2 * cells])
        .expect("single-site X generators commute")
}

/// Replace the dark state's generator on one qubit and track the light/dark
/// pattern under the hybrid dynamics.
pub fn perturb_and_track(
    spec: &CircuitSpec,
    cells: usize,
    perturbed_qubit: usize,
    replacement: Pauli,
    t_max: u64,
) -> Result<LightDarkGrid, HybridError> {
    let mut site_paulis = vec![Pauli::X; 2 * cells];
    site_paulis[perturbed_qubit] = replacement;
    let mut group = StabilizerGroup::product_state(cells, 2, &site_paulis)?;
    let mut rows = Vec::with_capacity(t_max as usize + 1);
    let light_row = |g: &StabilizerGroup| -> Result<Vec<bool>, HybridError> {
        (0..cells)
            .map(|n| {
                let mut probe = vec![Pauli::I; 2 * cells];
                probe[2 * n + 1] = Pauli::X;
                Ok(!g.contains_row(&probe)?)
            })
            .collect()
    };
    rows.push(light_row(&group)?);
    for _ in 1..=t_max {
        group = hybrid_step(&group, spec)?.0;
        rows.push(light_row(&group)?);
    }
    Ok(LightDarkGrid { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::SymplecticVector;

    fn df19_hybrid() -> CircuitSpec {
        CircuitSpec::preset("df19").unwrap().with_measurements(MeasurementSchedule::default())
    }

    #[test]
    fn dark_state_is_pure_and_stationary() {
        for m in [2usize, 4, 6, 8] {
            let g = dark_state(m);
            assert_eq!(g.entropy(), 0);
            assert_eq!(g.k(), 2 * m);
            let (next, purified) = hybrid_step(&g, &df19_hybrid()).unwrap();
            assert_eq!(purified, 0);
            assert_eq!(next.canonical_form(), g.canonical_form(), "m={m}");
        }
    }

    #[test]
    fn power_of_two_chains_purify_gaplessly() {
        for m in [4usize, 8, 16] {
            let spec = df19_hybrid();
            let trace =
                run_hybrid(&spec, &StabilizerGroup::fully_mixed(m, 2), 4 * m as u64)
                    .unwrap();
            assert_eq!(trace.entropies[0], m as u64, "S(0)=m for m={m}");
            assert_eq!(trace.purification_time, m as u64, "t*=m for m={m}");
            for t in 1..=m {
                assert_eq!(trace.entropies[t], (m - t) as u64, "one bit per step");
            }
            let plateau = trace.plateau_group.expect("plateau reached");
            assert_eq!(plateau.canonical_form(), dark_state(m).canonical_form());
        }
    }

    #[test]
    fn odd_factor_chains_stall_at_the_predicted_entropy() {
        // m = p 2^k with p odd: t* = 2^k and S(t*) = (p-1) 2^k.
        for (m, k) in [(6usize, 1u32), (12, 2), (10, 1)] {
            let spec = df19_hybrid();
            let trace =
                run_hybrid(&spec, &StabilizerGroup::fully_mixed(m, 2), 4 * m as u64)
                    .unwrap();
            let tstar = 1u64 << k;
            assert_eq!(trace.purification_time, tstar, "m={m}");
            assert_eq!(
                *trace.entropies.last().unwrap(),
                m as u64 - tstar,
                "m={m}"
            );
        }
    }

    #[test]
    fn group_after_one_step_matches_the_derived_generators() {
        // One step from the measured product group yields the m measured
        // X's plus the translation-invariant X string on the second sites.
        let m = 6;
        let spec = df19_hybrid();
        let (g0, _) =
            measurement_round(&StabilizerGroup::fully_mixed(m, 2), &spec).unwrap();
        let (g1, purified) = hybrid_step(&g0, &spec).unwrap();
        assert_eq!(purified, 1);
        let mut expected = StabilizerGroup::from_translates(
            m,
            &[SymplecticVector::from_cell_paulis(&[Pauli::X, Pauli::I])],
        )
        .unwrap();
        let string: Vec<Pauli> =
            (0..2 * m).map(|q| if q % 2 == 1 { Pauli::X } else { Pauli::I }).collect();
        let mut rows: Vec<Vec<Pauli>> =
            (0..expected.k()).map(|i| expected.generator(i)).collect();
        rows.push(string);
        expected = StabilizerGroup::from_rows(m, 2, &rows).unwrap();
        assert_eq!(g1.canonical_form(), expected.canonical_form());
    }

    #[test]
    fn dense_class_purification_is_gapped() {
        let spec = CircuitSpec::preset("dense")
            .unwrap()
            .with_measurements(MeasurementSchedule::default());
        for m in [8usize, 12, 16] {
            let trace =
                run_hybrid(&spec, &StabilizerGroup::fully_mixed(m, 2), 64).unwrap();
            assert!(trace.purification_time <= 3, "m={m}: O(1) plateau");
            assert!(trace.plateau_group.is_some());
        }
    }

    #[test]
    fn unperturbed_dark_state_stays_dark() {
        let spec = df19_hybrid();
        let grid = perturb_and_track(&spec, 8, 15, Pauli::X, 10).unwrap();
        for t in 0..=10 {
            assert!(grid.all_dark(t));
        }
    }

    #[test]
    fn rightmost_perturbation_annihilates_at_m() {
        let m = 8usize;
        let spec = df19_hybrid();
        let grid =
            perturb_and_track(&spec, m, 2 * m - 1, Pauli::Z, m as u64 + 2).unwrap();
        assert_eq!(grid.light_count(0), 1);
        for t in 1..m {
            assert!(grid.light_count(t) > 0, "light persists until t=m");
        }
        assert!(grid.all_dark(m));
        assert!(grid.all_dark(m + 1));
    }
}

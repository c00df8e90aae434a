//! Python bindings: circuits, stabilizer groups, and the headline analyses
//! (recurrences, fractal fits, codes, hybrid purification, correlations).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cqca::automaton::{Automaton, SymplecticVector};
use cqca::codes::{build_quasicyclic, erasure_failure_rate, ErasureModel};
use cqca::correlations::{ergodicity_class, step_channel, Diagonal};
use cqca::dynamics::{
    detect_gliders, fractal_dimension, recurrence_time, spread_stats, trace_footprint,
    RecurrenceOutcome, DEFAULT_RECURRENCE_BUDGET,
};
use cqca::hybrid::run_hybrid;
use cqca::lattice::{build, CircuitSpec, Lattice, MeasurementSchedule};
use cqca::pauli::Pauli;
use cqca::pointgroup::{classify, detect_symmetries};
use cqca::tableau::StabilizerGroup;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_pauli(label: &str) -> PyResult<Pauli> {
    match label {
        "I" | "i" => Ok(Pauli::I),
        "X" | "x" => Ok(Pauli::X),
        "Y" | "y" => Ok(Pauli::Y),
        "Z" | "z" => Ok(Pauli::Z),
        other => Err(value_err(format!("unknown Pauli {other:?}"))),
    }
}

/// A circuit spec plus its centered full-period automaton.
#[pyclass]
struct Circuit {
    spec: CircuitSpec,
    centered: Automaton,
}

impl Circuit {
    fn from_spec(spec: CircuitSpec) -> PyResult<Self> {
        spec.validate().map_err(value_err)?;
        let m = build(&spec).map_err(value_err)?;
        let full = if spec.lattice == Lattice::Square { m.power(2, None) } else { m };
        let (centered, _) = full.center().map_err(value_err)?;
        Ok(Circuit { spec, centered })
    }
}

#[pymethods]
impl Circuit {
    /// Build from a spec JSON string.
    #[new]
    fn new(spec_json: &str) -> PyResult<Self> {
        let spec: CircuitSpec = serde_json::from_str(spec_json).map_err(value_err)?;
        Circuit::from_spec(spec)
    }

    /// Build a named preset class.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let spec = CircuitSpec::preset(name)
            .ok_or_else(|| value_err(format!("unknown class {name:?}")))?;
        Circuit::from_spec(spec)
    }

    #[staticmethod]
    fn preset_names() -> Vec<String> {
        CircuitSpec::preset_names().iter().map(|s| s.to_string()).collect()
    }

    fn spec_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.spec).map_err(value_err)
    }

    fn cell_size(&self) -> usize {
        self.spec.cell_size()
    }

    /// Circuit class under the square-lattice classification.
    fn class_name(&self) -> PyResult<String> {
        Ok(classify(&self.spec).map_err(value_err)?.to_string())
    }

    fn symmetries(&self) -> PyResult<Vec<String>> {
        Ok(detect_symmetries(&self.spec)
            .map_err(value_err)?
            .iter()
            .map(|op| op.to_string())
            .collect())
    }

    /// Centered full-period matrix as semicolon-separated rows.
    fn matrix(&self) -> String {
        self.centered.to_string()
    }

    fn char_poly(&self) -> String {
        self.centered.char_poly().to_string()
    }

    fn min_poly(&self) -> PyResult<String> {
        Ok(self.centered.min_poly().map_err(value_err)?.to_string())
    }

    /// Recurrence time on a ring of m cells, or None past the budget.
    #[pyo3(signature = (m, budget=None))]
    fn recurrence_time(&self, m: usize, budget: Option<u64>) -> PyResult<Option<u64>> {
        if m == 0 {
            return Err(value_err("ring size must be positive"));
        }
        let r =
            recurrence_time(&self.centered, m, budget.unwrap_or(DEFAULT_RECURRENCE_BUDGET));
        Ok(match r.outcome {
            RecurrenceOutcome::Found { tau, .. } => Some(tau),
            RecurrenceOutcome::LowerBound(_) => None,
        })
    }

    /// Fractal-dimension fit: mode "trace" or "operator" (single-site start).
    #[pyo3(signature = (mode, t_max, fit_lo=16))]
    fn fractal_dimension(&self, mode: &str, t_max: usize, fit_lo: usize) -> PyResult<(f64, f64)> {
        let cumulative = match mode {
            "trace" => trace_footprint(&self.centered, t_max).cumulative_counts(),
            "operator" => {
                let mut p = vec![Pauli::I; self.spec.cell_size()];
                p[0] = Pauli::Z;
                let start = SymplecticVector::from_cell_paulis(&p);
                spread_stats(&self.centered, &start, t_max).cumulative_support()
            }
            other => return Err(value_err(format!("unknown mode {other:?}"))),
        };
        fractal_dimension(&cumulative, fit_lo, t_max).map_err(value_err)
    }

    /// One-cell gliders: (Pauli label, velocity) pairs.
    #[pyo3(signature = (max_weight=2))]
    fn gliders(&self, max_weight: usize) -> Vec<(String, i64)> {
        detect_gliders(&self.centered, max_weight)
            .iter()
            .map(|(v, n)| {
                let label: String = (0..self.spec.cell_size())
                    .map(|site| v.pauli_at(site, 0).to_string())
                    .collect();
                (label, *n)
            })
            .collect()
    }

    /// The one-layer correlation channel for diagonal "+" or "-".
    fn correlation_channel(&self, diagonal: &str) -> PyResult<Vec<Vec<i64>>> {
        let d = match diagonal {
            "+" | "plus" => Diagonal::Plus,
            "-" | "minus" => Diagonal::Minus,
            other => return Err(value_err(format!("unknown diagonal {other:?}"))),
        };
        let m = step_channel(&self.spec, d).map_err(value_err)?;
        Ok(m.0.iter().map(|row| row.to_vec()).collect())
    }

    fn ergodicity(&self) -> PyResult<String> {
        Ok(format!("{:?}", ergodicity_class(&self.spec).map_err(value_err)?))
    }
}

/// A translation-structured stabilizer group on a ring.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Stabilizers {
    group: StabilizerGroup,
}

#[pymethods]
impl Stabilizers {
    #[staticmethod]
    fn fully_mixed(cells: usize, cell_size: usize) -> Self {
        Stabilizers { group: StabilizerGroup::fully_mixed(cells, cell_size) }
    }

    #[staticmethod]
    fn random_product(cells: usize, cell_size: usize, seed: u64) -> Self {
        Stabilizers { group: StabilizerGroup::random_product_state(cells, cell_size, seed) }
    }

    /// Build from Pauli strings, one character per qubit.
    #[staticmethod]
    fn from_strings(cells: usize, cell_size: usize, rows: Vec<String>) -> PyResult<Self> {
        let parsed: PyResult<Vec<Vec<Pauli>>> = rows
            .iter()
            .map(|row| row.chars().map(|c| parse_pauli(&c.to_string())).collect())
            .collect();
        let group =
            StabilizerGroup::from_rows(cells, cell_size, &parsed?).map_err(value_err)?;
        Ok(Stabilizers { group })
    }

    fn qubits(&self) -> usize {
        self.group.qubits()
    }

    fn num_generators(&self) -> usize {
        self.group.k()
    }

    fn entropy(&self) -> u64 {
        self.group.entropy()
    }

    fn generators(&self) -> Vec<String> {
        self.group.generator_strings()
    }

    /// One full unitary period of the circuit.
    fn step(&self, circuit: &Circuit) -> PyResult<Stabilizers> {
        Ok(Stabilizers { group: self.group.step(&circuit.spec).map_err(value_err)? })
    }

    fn subsystem_entropy(&self, start: usize, length: usize) -> PyResult<u64> {
        let region = cqca::tableau::Region::new(start, length);
        self.group.subsystem_entropy(&region).map_err(value_err)
    }

    /// Mean subsystem entropy for every window length 1..=L-1.
    fn page_curve(&self) -> Vec<f64> {
        self.group.page_curve()
    }

    /// I(A : complement of A) for the contiguous window starting at `start`.
    fn mutual_information(&self, start: usize, length: usize) -> PyResult<u64> {
        self.group
            .mutual_information(&cqca::tableau::Region::new(start, length))
            .map_err(value_err)
    }

    /// Measure one qubit; returns the new group and the outcome kind.
    fn measure(&self, qubit: usize, basis: &str) -> PyResult<(Stabilizers, String)> {
        let (group, outcome) =
            self.group.measure(qubit, parse_pauli(basis)?).map_err(value_err)?;
        Ok((Stabilizers { group }, format!("{outcome:?}")))
    }

    fn contiguous_code_distance(&self) -> PyResult<usize> {
        cqca::codes::contiguous_code_distance(&self.group).map_err(value_err)
    }
}

/// Purification trace of the measured circuit from the fully mixed state:
/// (entropies, purification_time, reached_plateau).
#[pyfunction]
#[pyo3(signature = (circuit, cells, t_max, basis="x"))]
fn hybrid_purification(
    circuit: &Circuit,
    cells: usize,
    t_max: u64,
    basis: &str,
) -> PyResult<(Vec<u64>, u64, bool)> {
    let mut spec = circuit.spec.clone();
    if spec.measurement_schedule.is_none() {
        let basis = match parse_pauli(basis)? {
            Pauli::X => cqca::lattice::MeasurementBasis::X,
            Pauli::Y => cqca::lattice::MeasurementBasis::Y,
            Pauli::Z => cqca::lattice::MeasurementBasis::Z,
            Pauli::I => return Err(value_err("measurement basis must be X, Y, or Z")),
        };
        spec = spec.with_measurements(MeasurementSchedule { basis, site: 0 });
    }
    let trace = run_hybrid(&spec, &StabilizerGroup::fully_mixed(cells, spec.cell_size()), t_max)
        .map_err(value_err)?;
    Ok((trace.entropies, trace.purification_time, trace.plateau_group.is_some()))
}

/// Quasicyclic code summary from the one-site Z start: (best_t, d1, rate).
#[pyfunction]
fn quasicyclic_code(circuit: &Circuit, cells: usize, t_max: u64) -> PyResult<(u64, usize, f64)> {
    let mut p = vec![Pauli::I; circuit.spec.cell_size()];
    p[0] = Pauli::Z;
    let initial = vec![SymplecticVector::from_cell_paulis(&p)];
    let snapshot =
        build_quasicyclic(&circuit.spec, &initial, cells, t_max).map_err(value_err)?;
    Ok((snapshot.t, snapshot.d1, snapshot.rate()))
}

/// Monte Carlo erasure failure probability of a stabilizer code:
/// (p_fail, stderr).
#[pyfunction]
fn erasure_failure(
    stabilizers: &Stabilizers,
    fraction: f64,
    trials: u64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    erasure_failure_rate(&stabilizers.group, &ErasureModel { fraction, trials, seed })
        .map_err(value_err)
}

#[pymodule]
fn cqca_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Circuit>()?;
    m.add_class::<Stabilizers>()?;
    m.add_function(wrap_pyfunction!(hybrid_purification, m)?)?;
    m.add_function(wrap_pyfunction!(quasicyclic_code, m)?)?;
    m.add_function(wrap_pyfunction!(erasure_failure, m)?)?;
    Ok(())
}

//! Gate library and circuit constructors for the square and kagome
//! lattices, plus the per-layer gate programs that drive the stabilizer
//! engine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::Automaton;
use crate::polyring::LaurentPoly;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("invalid circuit spec: {0}")]
    InvalidSpec(String),
    #[error("chain of {cells} cells is too small for the gate span")]
    ChainTooSmall { cells: usize },
}

/// The six single-qubit Cliffords modulo Paulis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OneSiteGate {
    #[serde(rename = "i", alias = "id", alias = "identity")]
    I,
    #[serde(rename = "rx90", alias = "rx")]
    Rx90,
    #[serde(rename = "ry90", alias = "ry")]
    Ry90,
    #[serde(rename = "rz90", alias = "rz")]
    Rz90,
    /// Cyclic permutation X -> Y -> Z -> X (order 3).
    #[serde(rename = "cplus", alias = "c+")]
    CyclePlus,
    /// Cyclic permutation X -> Z -> Y -> X (order 3).
    #[serde(rename = "cminus", alias = "c-")]
    CycleMinus,
}

pub const ALL_ONE_SITE_GATES: [OneSiteGate; 6] = [
    OneSiteGate::I,
    OneSiteGate::Rx90,
    OneSiteGate::Ry90,
    OneSiteGate::Rz90,
    OneSiteGate::CyclePlus,
    OneSiteGate::CycleMinus,
];

impl OneSiteGate {
    /// 2x2 matrix over F2; columns are the images of X and Z.
    pub fn matrix(self) -> [[u8; 2]; 2] {
        match self {
            OneSiteGate::I => [[1, 0], [0, 1]],
            OneSiteGate::Rx90 => [[1, 1], [0, 1]],
            OneSiteGate::Ry90 => [[0, 1], [1, 0]],
            OneSiteGate::Rz90 => [[1, 0], [1, 1]],
            OneSiteGate::CyclePlus => [[1, 1], [1, 0]],
            OneSiteGate::CycleMinus => [[0, 1], [1, 1]],
        }
    }

    /// Transpose modulo Paulis: fixes the identity and the rotations,
    /// exchanges the two cyclic permutations.
    pub fn transposed(self) -> OneSiteGate {
        match self {
            OneSiteGate::CyclePlus => OneSiteGate::CycleMinus,
            OneSiteGate::CycleMinus => OneSiteGate::CyclePlus,
            g => g,
        }
    }
}

/// The two-qubit core of each vertex gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoreGate {
    Swap,
    Iswap,
    /// Control on the first qubit of the pair.
    Cnot,
}

impl CoreGate {
    /// 4x4 matrix over F2 in the basis (X1, Z1, X2, Z2); columns are images.
    pub fn matrix(self) -> [[u8; 4]; 4] {
        match self {
            CoreGate::Swap => [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
            CoreGate::Iswap => [[0, 0, 1, 0], [1, 0, 1, 1], [1, 0, 0, 0], [1, 1, 1, 0]],
            CoreGate::Cnot => [[1, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 0, 1]],
        }
    }
}

/// Where the one-site gates sit relative to the core within one layer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Both one-site gates before the core.
    #[default]
    A,
    /// Both one-site gates after the core.
    B,
    /// First-leg gate before the core, second-leg gate after.
    C,
    /// Second-leg gate before the core, first-leg gate after.
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    Square,
    Kagome,
}

/// Single-site measurement basis for hybrid circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementBasis {
    X,
    Y,
    Z,
}

impl MeasurementBasis {
    pub fn pauli(self) -> crate::pauli::Pauli {
        match self {
            MeasurementBasis::X => crate::pauli::Pauli::X,
            MeasurementBasis::Y => crate::pauli::Pauli::Y,
            MeasurementBasis::Z => crate::pauli::Pauli::Z,
        }
    }
}

/// One measurement per doubled unit cell: site `site` of every cell,
/// once per full time step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementSchedule {
    pub basis: MeasurementBasis,
    pub site: usize,
}

impl Default for MeasurementSchedule {
    fn default() -> Self {
        MeasurementSchedule { basis: MeasurementBasis::X, site: 0 }
    }
}

/// Everything needed to build a circuit: lattice, core, edge gates, and
/// the gate-placement convention. Serialized as JSON, e.g.
/// `{"lattice":"square","core":"iswap","edges":["rx90","rx90"],"convention":"a"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub lattice: Lattice,
    pub core: CoreGate,
    /// Two gates (first leg, second leg) for the square lattice. The kagome
    /// lattice accepts two gates with the same meaning, or six per-edge gates
    /// restricted to the orientation-symmetric family (edges 1=3=5, 2=4=6).
    pub edges: Vec<OneSiteGate>,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement_schedule: Option<MeasurementSchedule>,
}

impl CircuitSpec {
    pub fn square(core: CoreGate, first: OneSiteGate, second: OneSiteGate) -> Self {
        CircuitSpec {
            lattice: Lattice::Square,
            core,
            edges: vec![first, second],
            convention: Convention::A,
            measurement_schedule: None,
        }
    }

    pub fn kagome(first: OneSiteGate, second: OneSiteGate) -> Self {
        CircuitSpec {
            lattice: Lattice::Kagome,
            core: CoreGate::Iswap,
            edges: vec![first, second],
            convention: Convention::A,
            measurement_schedule: None,
        }
    }

    pub fn with_measurements(mut self, schedule: MeasurementSchedule) -> Self {
        self.measurement_schedule = Some(schedule);
        self
    }

    /// The (first-leg, second-leg) gate pair after folding a six-edge kagome
    /// list down to its orientation classes.
    pub fn edge_pair(&self) -> Result<(OneSiteGate, OneSiteGate), LatticeError> {
        self.validate()?;
        Ok((self.edges[0], self.edges[1]))
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        match self.lattice {
            Lattice::Square => {
                if self.edges.len() != 2 {
                    return Err(LatticeError::InvalidSpec(format!(
                        "square lattice needs 2 edge gates, got {}",
                        self.edges.len()
                    )));
                }
            }
            Lattice::Kagome => {
                if self.core != CoreGate::Iswap {
                    return Err(LatticeError::InvalidSpec(
                        "kagome circuits use the iswap core".into(),
                    ));
                }
                match self.edges.len() {
                    2 => {}
                    6 => {
                        let e = &self.edges;
                        if !(e[0] == e[2] && e[2] == e[4] && e[1] == e[3] && e[3] == e[5]) {
                            return Err(LatticeError::InvalidSpec(
                                "six-edge kagome specs must satisfy 1=3=5 and 2=4=6".into(),
                            ));
                        }
                    }
                    n => {
                        return Err(LatticeError::InvalidSpec(format!(
                            "kagome lattice needs 2 or 6 edge gates, got {n}"
                        )));
                    }
                }
                if self.convention != Convention::A {
                    return Err(LatticeError::InvalidSpec(
                        "kagome circuits are built in convention a".into(),
                    ));
                }
            }
        }
        if let Some(sched) = &self.measurement_schedule {
            if sched.site >= self.cell_size() {
                return Err(LatticeError::InvalidSpec(format!(
                    "measurement site {} outside the unit cell",
                    sched.site
                )));
            }
        }
        Ok(())
    }

    /// Qubits per unit cell.
    pub fn cell_size(&self) -> usize {
        match self.lattice {
            Lattice::Square => 2,
            Lattice::Kagome => 4,
        }
    }

    /// Circuit layers per automaton application.
    pub fn layers(&self) -> usize {
        match self.lattice {
            Lattice::Square => 1,
            Lattice::Kagome => 4,
        }
    }

    /// Named representative specs for every circuit class.
    pub fn preset(name: &str) -> Option<CircuitSpec> {
        use CoreGate::*;
        use OneSiteGate::*;
        let spec = match name {
            "swap" => CircuitSpec::square(Swap, I, I),
            "bare-iswap" => CircuitSpec::square(Iswap, I, I),
            "traceless-glider" => CircuitSpec::square(Iswap, I, CycleMinus),
            "nonzero-trace-poor" => CircuitSpec::square(Iswap, I, Rx90),
            "dense" | "dense-good" => CircuitSpec::square(Iswap, Rx90, Rx90),
            "df19" | "df19-good" => CircuitSpec::square(Iswap, Rx90, CycleMinus),
            "sdki" => CircuitSpec::square(Iswap, CycleMinus, CycleMinus),
            "cnot" => CircuitSpec::square(Cnot, I, I),
            "t1" | "kagome-t1" => CircuitSpec::kagome(I, I),
            "t2" | "kagome-t2" => CircuitSpec::kagome(KAGOME_T2_EDGES.0, KAGOME_T2_EDGES.1),
            "t3" | "kagome-t3" => CircuitSpec::kagome(Rx90, Rx90),
            _ => return None,
        };
        Some(spec)
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[
            "swap",
            "bare-iswap",
            "traceless-glider",
            "nonzero-trace-poor",
            "dense",
            "df19",
            "sdki",
            "cnot",
            "kagome-t1",
            "kagome-t2",
            "kagome-t3",
        ]
    }
}

/// Edge-gate pair for the kagome class whose printed matrix pins the
/// assignment of the two cyclic permutations to the two edge orientations.
pub const KAGOME_T2_EDGES: (OneSiteGate, OneSiteGate) =
    (OneSiteGate::CycleMinus, OneSiteGate::CyclePlus);

fn poly_entry(v: u8) -> LaurentPoly {
    if v == 0 { LaurentPoly::zero() } else { LaurentPoly::one() }
}

fn mat4_mul(a: &[[u8; 4]; 4], b: &[[u8; 4]; 4]) -> [[u8; 4]; 4] {
    let mut out = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0u8;
            for k in 0..4 {
                acc ^= a[i][k] & b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat4_diag(first: OneSiteGate, second: OneSiteGate) -> [[u8; 4]; 4] {
    let g1 = first.matrix();
    let g2 = second.matrix();
    let mut out = [[0u8; 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = g1[r][c];
            out[2 + r][2 + c] = g2[r][c];
        }
    }
    out
}

/// Shift right by one site on a unit cell of `a` qubits.
pub fn shift_matrix(a: usize) -> Automaton {
    let n = 2 * a;
    let mut m = Automaton::identity(a);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, LaurentPoly::zero());
        }
    }
    for site in 0..a {
        let dst = (site + 1) % a;
        let factor =
            if dst == 0 { LaurentPoly::monomial(1) } else { LaurentPoly::one() };
        for c in 0..2 {
            m.set(2 * dst + c, 2 * site + c, factor.clone());
        }
    }
    m.with_label(format!("shift(a={a})"))
}

/// 4x4 F2 action of one brickwork vertex: core plus one-site gates placed
/// per the convention.
pub fn square_pair_action(
    core: CoreGate,
    first: OneSiteGate,
    second: OneSiteGate,
    convention: Convention,
) -> [[u8; 4]; 4] {
    let c = core.matrix();
    let id = OneSiteGate::I;
    match convention {
        Convention::A => mat4_mul(&c, &mat4_diag(first, second)),
        Convention::B => mat4_mul(&mat4_diag(second, first), &c),
        Convention::C => {
            mat4_mul(&mat4_diag(second, id), &mat4_mul(&c, &mat4_diag(first, id)))
        }
        Convention::D => {
            mat4_mul(&mat4_diag(id, first), &mat4_mul(&c, &mat4_diag(id, second)))
        }
    }
}

/// One half step of the square-lattice brickwork:
/// shift * (core and one-site gates in the requested convention).
pub fn build_square(spec: &CircuitSpec) -> Result<Automaton, LatticeError> {
    spec.validate()?;
    if spec.lattice != Lattice::Square {
        return Err(LatticeError::InvalidSpec("expected a square-lattice spec".into()));
    }
    let (v1, v2) = (spec.edges[0], spec.edges[1]);
    let action = square_pair_action(spec.core, v1, v2, spec.convention);
    let mut inner = Automaton::identity(2);
    for i in 0..4 {
        for j in 0..4 {
            inner.set(i, j, poly_entry(action[i][j]));
        }
    }
    let m = shift_matrix(2).compose(&inner).expect("matched dimensions");
    Ok(m.with_label(format!(
        "square {:?} ({:?},{:?}) conv {:?}",
        spec.core, v1, v2, spec.convention
    ))
    .with_layers(1))
}

/// One two-qubit gate within a layer: `second_offset` is the cell offset of
/// the second qubit relative to the first (0 within the cell, 1 wrapping to
/// the next cell).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSlot {
    pub first_site: usize,
    pub second_site: usize,
    pub second_offset: i64,
}

/// One kagome vertex slot: the qubit pair it couples and, for each incoming
/// leg, which of the two edge-orientation gates decorates it (an index into
/// the spec's edge pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KagomeSlot {
    pub pair: PairSlot,
    pub legs: [usize; 2],
}

/// The kagome brickwork over one (T=2, a=4) cell: four layers where the two
/// full layers pair sites within the cell and the two sparse layers each
/// place a single straddling gate, offset from each other by half a cell.
/// The leg coloring is pinned by the reference matrices; the two sparse-layer
/// vertices carry first-orientation gates on both legs.
pub fn kagome_layers() -> Vec<Vec<KagomeSlot>> {
    let pair = |first, second, offset| PairSlot {
        first_site: first,
        second_site: second,
        second_offset: offset,
    };
    vec![
        vec![
            KagomeSlot { pair: pair(0, 1, 0), legs: [0, 1] },
            KagomeSlot { pair: pair(2, 3, 0), legs: [1, 0] },
        ],
        vec![KagomeSlot { pair: pair(1, 2, 0), legs: [0, 0] }],
        vec![
            KagomeSlot { pair: pair(0, 1, 0), legs: [1, 0] },
            KagomeSlot { pair: pair(2, 3, 0), legs: [0, 1] },
        ],
        vec![KagomeSlot { pair: pair(3, 0, 1), legs: [0, 0] }],
    ]
}

/// 4x4 F2 action of one vertex gate: core preceded by one-site gates on the
/// incoming legs.
pub fn vertex_action(core: CoreGate, first: OneSiteGate, second: OneSiteGate) -> [[u8; 4]; 4] {
    mat4_mul(&core.matrix(), &mat4_diag(first, second))
}

/// Embed disjoint pair gates into a 2a x 2a layer automaton. Cross-cell
/// couplings pick up the translation factors u^(+-offset).
pub fn layer_matrix(a: usize, gates: &[(PairSlot, [[u8; 4]; 4])]) -> Automaton {
    let mut m = Automaton::identity(a);
    for (slot, action) in gates {
        let sites = [slot.first_site, slot.second_site];
        let offsets = [0i64, slot.second_offset];
        for (bi, (&bsite, &boff)) in sites.iter().zip(&offsets).enumerate() {
            for (ci, (&csite, &coff)) in sites.iter().zip(&offsets).enumerate() {
                for r in 0..2 {
                    for c in 0..2 {
                        let v = action[2 * bi + r][2 * ci + c];
                        let entry = if v == 0 {
                            LaurentPoly::zero()
                        } else {
                            LaurentPoly::monomial(boff - coff)
                        };
                        m.set(2 * bsite + r, 2 * csite + c, entry);
                    }
                }
            }
        }
    }
    m
}

/// Full kagome time step (T=2, four layers, no shift).
pub fn build_kagome(spec: &CircuitSpec) -> Result<Automaton, LatticeError> {
    spec.validate()?;
    if spec.lattice != Lattice::Kagome {
        return Err(LatticeError::InvalidSpec("expected a kagome-lattice spec".into()));
    }
    let pair = spec.edge_pair()?;
    let edge = [pair.0, pair.1];
    let mut m = Automaton::identity(4);
    for layer in kagome_layers() {
        let gates: Vec<_> = layer
            .iter()
            .map(|s| {
                (s.pair, vertex_action(CoreGate::Iswap, edge[s.legs[0]], edge[s.legs[1]]))
            })
            .collect();
        let lm = layer_matrix(4, &gates);
        m = lm.compose(&m).expect("matched dimensions");
    }
    let (g1, g2) = pair;
    let mut m = m.with_label(format!("kagome ({g1:?},{g2:?})"));
    m = m.with_layers(4);
    Ok(m)
}

/// Build the automaton for any spec.
pub fn build(spec: &CircuitSpec) -> Result<Automaton, LatticeError> {
    match spec.lattice {
        Lattice::Square => build_square(spec),
        Lattice::Kagome => build_kagome(spec),
    }
}

/// One two-qubit gate applied to absolute qubit indices.
#[derive(Clone, Copy, Debug)]
pub struct GateOp {
    pub action: [[u8; 4]; 4],
    pub qubits: (usize, usize),
}

/// One circuit layer: disjoint two-qubit gates, then a relabeling that
/// shifts every qubit index right by `relabel` sites.
#[derive(Clone, Debug)]
pub struct Layer {
    pub gates: Vec<GateOp>,
    pub relabel: usize,
}

/// The gate program matching one automaton application on a periodic chain
/// of `cells` unit cells.
#[derive(Clone, Debug)]
pub struct LayerProgram {
    pub cell_size: usize,
    pub cells: usize,
    pub layers: Vec<Layer>,
}

impl LayerProgram {
    pub fn qubits(&self) -> usize {
        self.cell_size * self.cells
    }
}

/// Expand a spec into explicit per-layer gates on a chain of `m` cells,
/// covering one full circuit period: two brickwork layers for the square
/// lattice (the automaton squared, in the co-moving frame), four for kagome.
pub fn layer_program(spec: &CircuitSpec, m: usize) -> Result<LayerProgram, LatticeError> {
    spec.validate()?;
    if m < 2 {
        return Err(LatticeError::ChainTooSmall { cells: m });
    }
    let a = spec.cell_size();
    let n = a * m;
    let layers = match spec.lattice {
        Lattice::Square => {
            let (v1, v2) = (spec.edges[0], spec.edges[1]);
            let action = square_pair_action(spec.core, v1, v2, spec.convention);
            let layer = || Layer {
                gates: (0..m)
                    .map(|cell| GateOp { action, qubits: (2 * cell, 2 * cell + 1) })
                    .collect(),
                relabel: 1,
            };
            vec![layer(), layer()]
        }
        Lattice::Kagome => {
            let pair = spec.edge_pair()?;
            let edge = [pair.0, pair.1];
            kagome_layers()
                .into_iter()
                .map(|slots| {
                    let gates = slots
                        .iter()
                        .flat_map(|s| {
                            let action = vertex_action(
                                CoreGate::Iswap,
                                edge[s.legs[0]],
                                edge[s.legs[1]],
                            );
                            (0..m).map(move |cell| GateOp {
                                action,
                                qubits: (
                                    (a * cell + s.pair.first_site) % n,
                                    (a * cell
                                        + s.pair.second_site
                                        + a * s.pair.second_offset as usize)
                                        % n,
                                ),
                            })
                        })
                        .collect();
                    Layer { gates, relabel: 0 }
                })
                .collect()
        }
    };
    Ok(LayerProgram { cell_size: a, cells: m, layers })
}

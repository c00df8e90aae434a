//! Point-group transformations of square-lattice circuits, strong-symmetry
//! detection, and classification of the SWAP/iSWAP brickwork circuits.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::Automaton;
use crate::lattice::{CircuitSpec, Convention, CoreGate, Lattice, OneSiteGate};

#[derive(Debug, Error)]
pub enum PointGroupError {
    #[error("operation {0} has no matrix-level form; transform the spec instead")]
    NoMatrixForm(PointGroupOp),
    #[error("expected a square-lattice spec")]
    NotSquare,
    #[error("classification covers SWAP and iSWAP cores, got {0:?}")]
    UnsupportedCore(CoreGate),
    #[error(transparent)]
    Automaton(#[from] crate::automaton::AutomatonError),
}

/// The eight elements of the dihedral group of the square, acting on a
/// spacetime diagram of the brickwork circuit.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum PointGroupOp {
    Identity,
    /// Reflection about the vertical axis (exchanges the two legs).
    ReflectLr,
    /// Quarter turn; space becomes time (the dual circuit).
    Rotate90,
    Rotate180,
    Rotate270,
    /// Reflection about the horizontal axis (runs the circuit backwards).
    TimeReverse,
    /// Reflection about the upward-sloping diagonal.
    ReflectDiagPlus,
    /// Reflection about the downward-sloping diagonal.
    ReflectDiagMinus,
}

pub const ALL_POINT_GROUP_OPS: [PointGroupOp; 8] = [
    PointGroupOp::Identity,
    PointGroupOp::ReflectLr,
    PointGroupOp::Rotate90,
    PointGroupOp::Rotate180,
    PointGroupOp::Rotate270,
    PointGroupOp::TimeReverse,
    PointGroupOp::ReflectDiagPlus,
    PointGroupOp::ReflectDiagMinus,
];

impl fmt::Display for PointGroupOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointGroupOp::Identity => "identity",
            PointGroupOp::ReflectLr => "reflect-lr",
            PointGroupOp::Rotate90 => "rotate-90",
            PointGroupOp::Rotate180 => "rotate-180",
            PointGroupOp::Rotate270 => "rotate-270",
            PointGroupOp::TimeReverse => "time-reverse",
            PointGroupOp::ReflectDiagPlus => "reflect-diag-plus",
            PointGroupOp::ReflectDiagMinus => "reflect-diag-minus",
        };
        write!(f, "{s}")
    }
}

/// Internal encoding of an op's action on the edge-gate pair: optionally
/// exchange the two legs, then transpose each output slot.
fn action_flags(op: PointGroupOp) -> (bool, bool, bool) {
    match op {
        PointGroupOp::Identity => (false, false, false),
        PointGroupOp::ReflectLr => (true, false, false),
        PointGroupOp::Rotate90 => (true, true, false),
        PointGroupOp::Rotate180 => (false, true, true),
        PointGroupOp::Rotate270 => (true, false, true),
        PointGroupOp::TimeReverse => (true, true, true),
        PointGroupOp::ReflectDiagMinus => (false, true, false),
        PointGroupOp::ReflectDiagPlus => (false, false, true),
    }
}

fn op_from_flags(flags: (bool, bool, bool)) -> PointGroupOp {
    for op in ALL_POINT_GROUP_OPS {
        if action_flags(op) == flags {
            return op;
        }
    }
    unreachable!("all eight flag triples correspond to an op")
}

impl PointGroupOp {
    /// Image of the edge-gate pair (first leg, second leg) under this op.
    pub fn edge_action(
        self,
        first: OneSiteGate,
        second: OneSiteGate,
    ) -> (OneSiteGate, OneSiteGate) {
        let (swap, t1, t2) = action_flags(self);
        let (a, b) = if swap { (second, first) } else { (first, second) };
        (
            if t1 { a.transposed() } else { a },
            if t2 { b.transposed() } else { b },
        )
    }

    /// Group composition: `self` applied after `other`.
    pub fn compose(self, other: PointGroupOp) -> PointGroupOp {
        let (s2, f2, g2) = action_flags(self);
        let (s1, f1, g1) = action_flags(other);
        // Transposes applied by `other` land on the slot that `self` then
        // reads; exchange them if `self` swaps the legs.
        let (f1, g1) = if s2 { (g1, f1) } else { (f1, g1) };
        op_from_flags((s1 ^ s2, f1 ^ f2, g1 ^ g2))
    }

    pub fn inverse(self) -> PointGroupOp {
        for op in ALL_POINT_GROUP_OPS {
            if self.compose(op) == PointGroupOp::Identity {
                return op;
            }
        }
        unreachable!("finite group")
    }
}

/// Matrix-level point-group transforms. Only the ops that preserve the time
/// direction of the brickwork act directly on the automaton; the quarter
/// turns and diagonal reflections exchange space and time and exist only at
/// the spec level.
pub fn transform_matrix(
    m: &Automaton,
    op: PointGroupOp,
) -> Result<Automaton, PointGroupError> {
    match op {
        PointGroupOp::Identity => Ok(m.clone()),
        PointGroupOp::ReflectLr => Ok(reflect_lr_matrix(m)),
        PointGroupOp::TimeReverse => Ok(m.inverse()?),
        PointGroupOp::Rotate180 => Ok(reflect_lr_matrix(m).inverse()?),
        other => Err(PointGroupError::NoMatrixForm(other)),
    }
}

/// Reflection about the center of the unit cell: exchange the two sites and
/// conjugate every entry.
pub fn reflect_lr_matrix(m: &Automaton) -> Automaton {
    let n = m.dim();
    let a = n / 2;
    let order: Vec<usize> = (0..n).map(|i| (i + a) % n).collect();
    m.bar().permuted(&order).expect("valid site exchange")
}

/// The spec-level result of a point-group transform: new edge gates, the
/// convention the transformed circuit is naturally expressed in, and the
/// global shift exponent picked up along the way.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedSpec {
    pub spec: CircuitSpec,
    pub convention: Convention,
    pub shift_exponent: i64,
}

/// Transform a square-lattice spec. The edge gates move per the op's action
/// on the vertex; reflections and time reversal pick up a global shift, and
/// time reversal and the quarter turns land in a different convention.
pub fn transform_spec(
    spec: &CircuitSpec,
    op: PointGroupOp,
) -> Result<TransformedSpec, PointGroupError> {
    if spec.lattice != Lattice::Square {
        return Err(PointGroupError::NotSquare);
    }
    let (first, second) = (spec.edges[0], spec.edges[1]);
    let (nf, ns) = op.edge_action(first, second);
    let mut out = spec.clone();
    out.edges = vec![nf, ns];
    let (convention, shift) = match op {
        PointGroupOp::Identity => (Convention::A, 0),
        PointGroupOp::ReflectLr => (Convention::A, -1),
        PointGroupOp::TimeReverse => (Convention::B, -1),
        PointGroupOp::Rotate90 => (Convention::D, 0),
        PointGroupOp::Rotate270 => (Convention::C, 0),
        PointGroupOp::Rotate180 => (Convention::B, -1),
        PointGroupOp::ReflectDiagPlus | PointGroupOp::ReflectDiagMinus => {
            (Convention::A, 0)
        }
    };
    Ok(TransformedSpec { spec: out, convention, shift_exponent: shift })
}

fn core_fixed_by(core: CoreGate, op: PointGroupOp) -> bool {
    match core {
        // SWAP and iSWAP vertices are invariant under the full point group.
        CoreGate::Swap | CoreGate::Iswap => true,
        // A CNOT vertex distinguishes control from target and time from
        // space.
        CoreGate::Cnot => op == PointGroupOp::Identity,
    }
}

/// Strong symmetries: ops whose edge-gate action fixes the spec exactly
/// (gates compared modulo Paulis).
pub fn detect_symmetries(
    spec: &CircuitSpec,
) -> Result<BTreeSet<PointGroupOp>, PointGroupError> {
    if spec.lattice != Lattice::Square {
        return Err(PointGroupError::NotSquare);
    }
    let (first, second) = (spec.edges[0], spec.edges[1]);
    Ok(ALL_POINT_GROUP_OPS
        .into_iter()
        .filter(|&op| {
            core_fixed_by(spec.core, op) && op.edge_action(first, second) == (first, second)
        })
        .collect())
}

/// The seven circuit classes of the SWAP/iSWAP brickwork.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassId {
    Swap,
    BareIswap,
    TracelessGlider,
    NonzeroTracePoor,
    DenseGood,
    Df19Good,
    Sdki,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassId::Swap => "swap",
            ClassId::BareIswap => "bare-iswap",
            ClassId::TracelessGlider => "traceless-glider",
            ClassId::NonzeroTracePoor => "nonzero-trace-poor",
            ClassId::DenseGood => "dense-good",
            ClassId::Df19Good => "df19-good",
            ClassId::Sdki => "sdki",
        };
        write!(f, "{s}")
    }
}

impl ClassId {
    pub fn preset_name(self) -> &'static str {
        match self {
            ClassId::Swap => "swap",
            ClassId::BareIswap => "bare-iswap",
            ClassId::TracelessGlider => "traceless-glider",
            ClassId::NonzeroTracePoor => "nonzero-trace-poor",
            ClassId::DenseGood => "dense",
            ClassId::Df19Good => "df19",
            ClassId::Sdki => "sdki",
        }
    }
}

/// Gate families preserved by the similarity transforms: identity-like,
/// rotation-like, cyclic.
fn gate_family(g: OneSiteGate) -> u8 {
    match g {
        OneSiteGate::I | OneSiteGate::Rz90 => 1,
        OneSiteGate::Rx90 | OneSiteGate::Ry90 => 2,
        OneSiteGate::CyclePlus | OneSiteGate::CycleMinus => 3,
    }
}

/// The Z-rotation similarity twist on one leg: exchanges the two rotations
/// and the two cyclic permutations, fixes the identity-like gates.
pub fn rz_twist(g: OneSiteGate) -> OneSiteGate {
    match g {
        OneSiteGate::Rx90 => OneSiteGate::Ry90,
        OneSiteGate::Ry90 => OneSiteGate::Rx90,
        OneSiteGate::CyclePlus => OneSiteGate::CycleMinus,
        OneSiteGate::CycleMinus => OneSiteGate::CyclePlus,
        other => other,
    }
}

/// Identify the circuit class of a square-lattice SWAP or iSWAP spec by the
/// unordered pair of edge-gate families, which is a complete invariant under
/// left-right reflection and the per-leg similarity twists.
pub fn classify(spec: &CircuitSpec) -> Result<ClassId, PointGroupError> {
    if spec.lattice != Lattice::Square {
        return Err(PointGroupError::NotSquare);
    }
    match spec.core {
        CoreGate::Swap => return Ok(ClassId::Swap),
        CoreGate::Iswap => {}
        other => return Err(PointGroupError::UnsupportedCore(other)),
    }
    let mut families = [gate_family(spec.edges[0]), gate_family(spec.edges[1])];
    families.sort_unstable();
    Ok(match families {
        [1, 1] => ClassId::BareIswap,
        [1, 2] => ClassId::NonzeroTracePoor,
        [1, 3] => ClassId::TracelessGlider,
        [2, 2] => ClassId::DenseGood,
        [2, 3] => ClassId::Df19Good,
        [3, 3] => ClassId::Sdki,
        _ => unreachable!("families are in {{1,2,3}}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build, ALL_ONE_SITE_GATES};

    #[test]
    fn group_law_holds() {
        for a in ALL_POINT_GROUP_OPS {
            assert_eq!(a.compose(a.inverse()), PointGroupOp::Identity);
            for b in ALL_POINT_GROUP_OPS {
                let c = a.compose(b);
                for g1 in ALL_ONE_SITE_GATES {
                    for g2 in ALL_ONE_SITE_GATES {
                        let (x, y) = b.edge_action(g1, g2);
                        assert_eq!(a.edge_action(x, y), c.edge_action(g1, g2));
                    }
                }
            }
        }
        use PointGroupOp::*;
        assert_eq!(Rotate90.compose(Rotate90), Rotate180);
        assert_eq!(Rotate90.compose(Rotate180), Rotate270);
        assert_eq!(Rotate90.compose(Rotate270), Identity);
        assert_eq!(ReflectLr.compose(TimeReverse), Rotate180);
    }

    #[test]
    fn symmetry_examples() {
        use OneSiteGate::*;
        use PointGroupOp::*;
        let all: BTreeSet<_> = ALL_POINT_GROUP_OPS.into_iter().collect();
        let sym = |f, s| {
            detect_symmetries(&CircuitSpec::square(CoreGate::Iswap, f, s)).unwrap()
        };
        assert_eq!(sym(I, I), all);
        assert_eq!(sym(Rx90, Rx90), all);
        assert_eq!(sym(Rx90, CycleMinus), [Identity, ReflectDiagMinus].into());
        assert_eq!(sym(CycleMinus, CycleMinus), [Identity, ReflectLr].into());
    }

    #[test]
    fn classify_examples() {
        use OneSiteGate::*;
        let class = |core, f, s| classify(&CircuitSpec::square(core, f, s)).unwrap();
        assert_eq!(class(CoreGate::Iswap, I, Rz90), ClassId::BareIswap);
        assert_eq!(class(CoreGate::Iswap, Ry90, Ry90), ClassId::DenseGood);
        assert_eq!(class(CoreGate::Swap, CyclePlus, Rx90), ClassId::Swap);
        assert_eq!(class(CoreGate::Iswap, I, Rx90), ClassId::NonzeroTracePoor);
        assert!(matches!(
            classify(&CircuitSpec::square(CoreGate::Cnot, I, I)),
            Err(PointGroupError::UnsupportedCore(_))
        ));
    }

    #[test]
    fn classify_constant_on_orbits() {
        use std::collections::BTreeMap;
        let mut count: BTreeMap<String, usize> = BTreeMap::new();
        for f in ALL_ONE_SITE_GATES {
            for s in ALL_ONE_SITE_GATES {
                let spec = CircuitSpec::square(CoreGate::Iswap, f, s);
                let id = classify(&spec).unwrap();
                *count.entry(id.to_string()).or_default() += 1;
                // Reflection orbit.
                let refl = CircuitSpec::square(CoreGate::Iswap, s, f);
                assert_eq!(classify(&refl).unwrap(), id);
                // Similarity twists on either leg.
                let s1 = CircuitSpec::square(CoreGate::Iswap, rz_twist(f), s);
                let s2 = CircuitSpec::square(CoreGate::Iswap, f, rz_twist(s));
                assert_eq!(classify(&s1).unwrap(), id);
                assert_eq!(classify(&s2).unwrap(), id);
            }
        }
        assert_eq!(count.len(), 6, "exactly six iSWAP classes");
        let total: usize = count.values().sum();
        assert_eq!(total, 36);
    }

    #[test]
    fn reflect_lr_matrix_identity() {
        // Reflecting the automaton equals building with exchanged edge gates
        // and dividing by the shift unit.
        use crate::polyring::LaurentPoly;
        for f in ALL_ONE_SITE_GATES {
            for s in ALL_ONE_SITE_GATES {
                let m = build(&CircuitSpec::square(CoreGate::Iswap, f, s)).unwrap();
                let reflected = reflect_lr_matrix(&m);
                let swapped = build(&CircuitSpec::square(CoreGate::Iswap, s, f))
                    .unwrap()
                    .scale(&LaurentPoly::monomial(-1));
                assert_eq!(reflected, swapped, "({f:?},{s:?})");
            }
        }
    }
}

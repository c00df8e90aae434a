//! Two-point correlations of one-site observables at infinite temperature:
//! the +/- quantum channels of the brickwork gates, exact correlation values
//! on the light cone, and the ergodicity hierarchy.
//!
//! All gate conjugations are computed exactly: each Clifford is a Gaussian-
//! integer matrix divided by a power of sqrt(2), so conjugating a Pauli and
//! dividing by the scale yields a signed Pauli with no floating point.

use crate::lattice::{CircuitSpec, CoreGate, Lattice, OneSiteGate};
use crate::pauli::Pauli;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorrelationsError {
    #[error("correlations are defined for square-lattice specs")]
    NotSquare,
    #[error("light-cone correlations require the dual-unitary iSWAP core")]
    NotDualUnitary,
}

/// Which diagonal of the brickwork the correlation runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    Plus,
    Minus,
}

/// Position within a unit cell: before or after the one-site gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tau {
    /// tau = -1/2, before the one-site gates.
    Early,
    /// tau = +1/2, after the one-site gates, before the core.
    Late,
}

/// Ergodicity of the circuit, read off the nontrivial channel eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErgodicityClass {
    /// All nontrivial eigenvalues are 1: every correlation is constant.
    NonInteracting,
    /// Some but not all eigenvalues are 1: some correlations persist.
    NonErgodic,
    /// No unit eigenvalues but some on the unit circle: oscillations that
    /// vanish only after time averaging.
    ErgodicNonMixing,
    /// All nontrivial eigenvalues vanish (nondiagonalizable): correlations
    /// die after finitely many steps.
    ErgodicMixing,
    /// Perfectly depolarizing channel; impossible for two-qubit gates.
    Bernoulli,
}

/// 4x4 signed-integer matrix over the basis (1, X, Y, Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PauliChannel(pub [[i64; 4]; 4]);

impl PauliChannel {
    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        PauliChannel(m)
    }

    pub fn mul(&self, other: &PauliChannel) -> PauliChannel {
        let mut out = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        PauliChannel(out)
    }

    /// Unitality and trace preservation: first row and column (1,0,0,0).
    pub fn is_unital(&self) -> bool {
        (0..4).all(|i| {
            self.0[0][i] == i64::from(i == 0) && self.0[i][0] == i64::from(i == 0)
        })
    }

    /// The 3x3 block on the traceless Paulis.
    pub fn traceless_block(&self) -> [[i64; 3]; 3] {
        let mut b = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = self.0[i + 1][j + 1];
            }
        }
        b
    }
}

type C = (i64, i64);

fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn conj(a: C) -> C {
    (a.0, -a.1)
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

fn pauli1(p: Pauli) -> [[C; 2]; 2] {
    let z = (0, 0);
    match p {
        Pauli::I => [[(1, 0), z], [z, (1, 0)]],
        Pauli::X => [[z, (1, 0)], [(1, 0), z]],
        Pauli::Y => [[z, (0, -1)], [(0, 1), z]],
        Pauli::Z => [[(1, 0), z], [z, (-1, 0)]],
    }
}

fn mul2(a: &[[C; 2]; 2], b: &[[C; 2]; 2]) -> [[C; 2]; 2] {
    let mut out = [[(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] = cadd(out[i][j], cmul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

fn adjoint2(a: &[[C; 2]; 2]) -> [[C; 2]; 2] {
    let mut out = [[(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = conj(a[j][i]);
        }
    }
    out
}

fn mul4(a: &[[C; 4]; 4], b: &[[C; 4]; 4]) -> [[C; 4]; 4] {
    let mut out = [[(0, 0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] = cadd(out[i][j], cmul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

fn adjoint4(a: &[[C; 4]; 4]) -> [[C; 4]; 4] {
    let mut out = [[(0, 0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = conj(a[j][i]);
        }
    }
    out
}

fn kron(a: &[[C; 2]; 2], b: &[[C; 2]; 2]) -> [[C; 4]; 4] {
    let mut out = [[(0, 0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = cmul(a[i / 2][j / 2], b[i % 2][j % 2]);
        }
    }
    out
}

/// Gaussian-integer numerator and sqrt(2) exponent: U = A / sqrt(2)^s.
fn one_site_unitary(g: OneSiteGate) -> ([[C; 2]; 2], u32) {
    let add = |p: Pauli, q: Pauli, scale: C| {
        let (mp, mq) = (pauli1(p), pauli1(q));
        let mut out = [[(0, 0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = cadd(mp[i][j], cmul(scale, mq[i][j]));
            }
        }
        out
    };
    match g {
        OneSiteGate::I => (pauli1(Pauli::I), 0),
        // Sign convention pinned by the printed one-site correlation matrix
        // of the dense class: R[pi/2] = (1 + i sigma)/sqrt(2).
        OneSiteGate::Rx90 => (add(Pauli::I, Pauli::X, (0, 1)), 1),
        OneSiteGate::Ry90 => (add(Pauli::I, Pauli::Y, (0, 1)), 1),
        OneSiteGate::Rz90 => (add(Pauli::I, Pauli::Z, (0, 1)), 1),
        // Rotation by 2pi/3 about (1,1,1): X -> Y -> Z -> X.
        OneSiteGate::CyclePlus => {
            let m = add(Pauli::I, Pauli::X, (0, -1));
            let m = {
                let y = pauli1(Pauli::Y);
                let mut out = m;
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] = cadd(out[i][j], cmul((0, -1), y[i][j]));
                    }
                }
                out
            };
            let z = pauli1(Pauli::Z);
            let mut out = m;
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = cadd(out[i][j], cmul((0, -1), z[i][j]));
                }
            }
            (out, 2)
        }
        OneSiteGate::CycleMinus => {
            let (a, s) = one_site_unitary(OneSiteGate::CyclePlus);
            (adjoint2(&a), s)
        }
    }
}

fn core_unitary(core: CoreGate) -> [[C; 4]; 4] {
    let z = (0, 0);
    let o = (1, 0);
    let i = (0, 1);
    match core {
        CoreGate::Swap => [[o, z, z, z], [z, z, o, z], [z, o, z, z], [z, z, z, o]],
        CoreGate::Iswap => [[o, z, z, z], [z, z, i, z], [z, i, z, z], [z, z, z, o]],
        CoreGate::Cnot => [[o, z, z, z], [z, o, z, z], [z, z, z, o], [z, z, o, z]],
    }
}

/// Conjugate a one-site Pauli by a one-site Clifford: v p v^dag = sign * q.
pub fn conjugate_one_site(g: OneSiteGate, p: Pauli) -> (i64, Pauli) {
    let (a, s) = one_site_unitary(g);
    let prod = mul2(&mul2(&a, &pauli1(p)), &adjoint2(&a));
    let denom = 1i64 << s;
    for q in PAULIS {
        for sign in [1i64, -1] {
            let target = pauli1(q);
            if (0..2).all(|i| {
                (0..2).all(|j| {
                    cmul((sign * denom, 0), target[i][j]) == prod[i][j]
                })
            }) {
                return (sign, q);
            }
        }
    }
    unreachable!("Clifford conjugation always yields a signed Pauli");
}

/// Conjugate a two-site Pauli by the numerator/scale form of a two-qubit
/// Clifford: U (p1 x p2) U^dag = sign * (q1 x q2).
fn conjugate_two_site(
    a: &[[C; 4]; 4],
    s: u32,
    p1: Pauli,
    p2: Pauli,
) -> (i64, Pauli, Pauli) {
    let prod = mul4(&mul4(a, &kron(&pauli1(p1), &pauli1(p2))), &adjoint4(a));
    let denom = 1i64 << s;
    for q1 in PAULIS {
        for q2 in PAULIS {
            let target = kron(&pauli1(q1), &pauli1(q2));
            for sign in [1i64, -1] {
                if (0..4).all(|i| {
                    (0..4).all(|j| {
                        cmul((sign * denom, 0), target[i][j]) == prod[i][j]
                    })
                }) {
                    return (sign, q1, q2);
                }
            }
        }
    }
    unreachable!("Clifford conjugation always yields a signed Pauli");
}

fn channel_of(a: &[[C; 4]; 4], s: u32, diagonal: Diagonal) -> PauliChannel {
    let mut m = [[0i64; 4]; 4];
    for (gamma, &p) in PAULIS.iter().enumerate() {
        let (sign, q1, q2) = match diagonal {
            Diagonal::Plus => conjugate_two_site(a, s, p, Pauli::I),
            Diagonal::Minus => {
                let (sign, q1, q2) = conjugate_two_site(a, s, Pauli::I, p);
                (sign, q2, q1)
            }
        };
        // Tracing out the first (+) or second (-) leg keeps only images with
        // identity there.
        if q1 == Pauli::I {
            let alpha = PAULIS.iter().position(|&x| x == q2).unwrap();
            m[alpha][gamma] = sign;
        }
    }
    m[0][0] = 1;
    PauliChannel(m)
}

/// The +/- channel of a bare core gate.
pub fn core_channel(core: CoreGate, diagonal: Diagonal) -> PauliChannel {
    channel_of(&core_unitary(core), 0, diagonal)
}

/// Conjugation matrix of a one-site gate: entry (alpha, beta) is the sign
/// with which v sigma_beta v^dag lands on sigma_alpha.
pub fn gate_channel(g: OneSiteGate) -> PauliChannel {
    let mut m = [[0i64; 4]; 4];
    for (beta, &p) in PAULIS.iter().enumerate() {
        let (sign, q) = conjugate_one_site(g, p);
        let alpha = PAULIS.iter().position(|&x| x == q).unwrap();
        m[alpha][beta] = sign;
    }
    PauliChannel(m)
}

/// The channel of one brickwork layer, U = core (v+ x v-): the one-site
/// conjugation factor followed by the core channel, composed in time order.
pub fn step_channel(
    spec: &CircuitSpec,
    diagonal: Diagonal,
) -> Result<PauliChannel, CorrelationsError> {
    if spec.lattice != Lattice::Square {
        return Err(CorrelationsError::NotSquare);
    }
    let v = gate_channel(diagonal_gate(spec, diagonal));
    Ok(v.mul(&core_channel(spec.core, diagonal)))
}

fn diagonal_gate(spec: &CircuitSpec, diagonal: Diagonal) -> OneSiteGate {
    match diagonal {
        Diagonal::Plus => spec.edges[0],
        Diagonal::Minus => spec.edges[1],
    }
}

/// Correlation along one diagonal: C(dt, tau, tau') for Pauli indices
/// alpha (earlier) and beta (later) in the basis (1, X, Y, Z). Each layer
/// advances the time coordinate by 1/2, so `dt_doubled` is twice the
/// displacement: dt_doubled = 1 spans one layer.
pub fn one_site_correlation(
    spec: &CircuitSpec,
    alpha: usize,
    beta: usize,
    dt_doubled: i64,
    tau: Tau,
    tau_prime: Tau,
    diagonal: Diagonal,
) -> Result<i64, CorrelationsError> {
    if spec.lattice != Lattice::Square {
        return Err(CorrelationsError::NotSquare);
    }
    if spec.core != CoreGate::Iswap {
        return Err(CorrelationsError::NotDualUnitary);
    }
    assert!(alpha < 4 && beta < 4, "Pauli indices run over 0..4");
    // Elementary crossings alternate: the one-site gates flip tau from
    // early to late at fixed time, the core advances time by 1/2 and flips
    // tau back. Index positions by crossings passed since (t=0, early).
    let half = |t: Tau| i64::from(t == Tau::Late);
    let h0 = half(tau);
    let h1 = 2 * dt_doubled + half(tau_prime);
    let (lo, hi, transposed) =
        if h1 >= h0 { (h0, h1, false) } else { (h1, h0, true) };
    let v = gate_channel(diagonal_gate(spec, diagonal));
    let k = core_channel(spec.core, diagonal);
    let mut c = PauliChannel::identity();
    for h in lo..hi {
        let factor = if h.rem_euclid(2) == 0 { &v } else { &k };
        c = c.mul(factor);
    }
    Ok(if transposed { c.0[beta][alpha] } else { c.0[alpha][beta] })
}

/// Full two-point function with explicit spacetime coordinates; zero off
/// the dual-unitary light cone. Each point is (2t, 2y, tau, diagonal) with
/// time and position doubled so half-integers stay exact.
#[allow(clippy::too_many_arguments)]
pub fn two_point_correlation(
    spec: &CircuitSpec,
    alpha: usize,
    beta: usize,
    first: (i64, i64, Tau, Diagonal),
    second: (i64, i64, Tau, Diagonal),
) -> Result<i64, CorrelationsError> {
    let (t, y, tau, mu) = first;
    let (t2, y2, tau2, mu2) = second;
    if mu != mu2 {
        return Ok(0);
    }
    let slope = match mu {
        Diagonal::Plus => 1,
        Diagonal::Minus => -1,
    };
    if t2 - t != slope * (y2 - y) {
        return Ok(0);
    }
    one_site_correlation(spec, alpha, beta, t2 - t, tau, tau2, mu)
}

/// Ergodicity classification from the nontrivial eigenvalues of both step
/// channels, decided exactly from their integer characteristic polynomials.
pub fn ergodicity_class(spec: &CircuitSpec) -> Result<ErgodicityClass, CorrelationsError> {
    if spec.core != CoreGate::Iswap {
        return Err(CorrelationsError::NotDualUnitary);
    }
    let blocks = [
        step_channel(spec, Diagonal::Plus)?.traceless_block(),
        step_channel(spec, Diagonal::Minus)?.traceless_block(),
    ];
    // Characteristic polynomial x^3 - tr x^2 + m2 x - det of each block. The
    // channels are contractions with integer entries, so by Kronecker's
    // theorem every nonzero eigenvalue is a root of unity.
    let mut all_ones = true;
    let mut any_unit = false;
    let mut all_nilpotent = true;
    let mut all_zero_matrix = true;
    for b in blocks {
        let tr = b[0][0] + b[1][1] + b[2][2];
        let m2 = b[0][0] * b[1][1] - b[0][1] * b[1][0] + b[0][0] * b[2][2]
            - b[0][2] * b[2][0]
            + b[1][1] * b[2][2]
            - b[1][2] * b[2][1];
        let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
            - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
            + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
        all_ones &= tr == 3 && m2 == 3 && det == 1;
        any_unit |= 1 - tr + m2 - det == 0;
        all_nilpotent &= tr == 0 && m2 == 0 && det == 0;
        all_zero_matrix &= b.iter().all(|row| row.iter().all(|&x| x == 0));
    }
    Ok(if all_ones {
        ErgodicityClass::NonInteracting
    } else if any_unit {
        ErgodicityClass::NonErgodic
    } else if all_zero_matrix {
        ErgodicityClass::Bernoulli
    } else if all_nilpotent {
        ErgodicityClass::ErgodicMixing
    } else {
        ErgodicityClass::ErgodicNonMixing
    })
}

// Characteristic and minimal polynomials of the centered automata, plus the
// trace identities linking the kagome classes to their square-lattice
// counterparts.

use cqca::automaton::Automaton;
use cqca::lattice::{build, CircuitSpec};
use cqca::polyring::BivarPoly;

fn centered(name: &str) -> Automaton {
    let spec = CircuitSpec::preset(name).expect("known preset");
    let m = build(&spec).unwrap();
    let steps = if spec.cell_size() == 2 { 2 } else { 1 };
    m.power(steps, None).center().unwrap().0
}

/// Build a y-polynomial from Laurent coefficient strings, ascending in y.
fn yp(coeffs: &[&str]) -> BivarPoly {
    BivarPoly::from_coeffs(coeffs.iter().map(|s| s.parse().unwrap()).collect())
}

fn assert_char_min(name: &str, chi: &BivarPoly, mu: &BivarPoly) {
    let m = centered(name);
    assert_eq!(&m.char_poly(), chi, "{name} characteristic polynomial");
    assert_eq!(&m.min_poly().unwrap(), mu, "{name} minimal polynomial");
}

#[test]
fn bare_iswap_polynomials() {
    let q = yp(&["1", "u^-1+u", "1"]);
    assert_char_min("bare-iswap", &q.mul(&q), &q);
}

#[test]
fn traceless_glider_polynomials() {
    let q = yp(&["1", "u^-1+u", "1"]);
    assert_char_min("traceless-glider", &q.mul(&q), &q);
}

#[test]
fn dense_polynomials() {
    // Palindromic and invariant under u -> 1/u, reflecting the reflection
    // and time-reversal symmetry of this class.
    let chi = yp(&["1", "u^-1+u", "u^-2+u^2", "u^-1+u", "1"]);
    assert_char_min("dense", &chi, &chi);
}

#[test]
fn df19_polynomials() {
    let chi = yp(&["1", "u^-1", "u^-2+1+u^2", "u", "1"]);
    assert_char_min("df19", &chi, &chi);
}

#[test]
fn sdki_polynomials() {
    let q = yp(&["1", "u^-1+1+u", "1"]);
    assert_char_min("sdki", &q.mul(&q), &q);
}

#[test]
fn nonzero_trace_poor_polynomials() {
    // chi = (y^2 + u^2)(y^2 + 1/u y + 1/u^2) is asymmetric under u -> 1/u
    // and under coefficient reversal: no reflection or time-reversal
    // symmetry. The square factor (y + u)^2 drops to a single power in the
    // minimal polynomial.
    let chi = yp(&["u^2", "0", "1"]).mul(&yp(&["u^-2", "u^-1", "1"]));
    let mu = yp(&["u", "1"]).mul(&yp(&["u^-2", "u^-1", "1"]));
    assert_eq!(chi, yp(&["u", "1"]).mul(&mu));
    assert_char_min("nonzero-trace-poor", &chi, &mu);
}

#[test]
fn cnot_polynomials() {
    let chi = yp(&["1", "u", "1"]).mul(&yp(&["1", "u^-1", "1"]));
    assert_eq!(chi, yp(&["1", "u^-1+u", "1", "u^-1+u", "1"]));
    assert_char_min("cnot", &chi, &chi);
}

#[test]
fn kagome_t1_polynomials() {
    // The 8x8 matrix satisfies a cubic: chi = ((y + 1) mu)^2 with
    // mu = y^3 + (u + 1 + 1/u) y^2 + (u + 1 + 1/u) y + 1.
    let mu = yp(&["1", "u^-1+1+u", "u^-1+1+u", "1"]);
    let q = yp(&["1", "1"]).mul(&mu);
    let chi = q.mul(&q);
    assert_eq!(chi, yp(&["1", "0", "u^-2+u^2", "0", "0", "0", "u^-2+u^2", "0", "1"]));
    assert_char_min("kagome-t1", &chi, &mu);
}

#[test]
fn kagome_t2_polynomials() {
    // The interacting kagome class shares its minimal polynomial with the
    // square-lattice cnot circuit.
    let mu = yp(&["1", "u^-1+u", "1", "u^-1+u", "1"]);
    assert_char_min("kagome-t2", &mu.mul(&mu), &mu);
}

#[test]
fn kagome_t2_trace_identity() {
    // Since chi is a perfect square, every elementary symmetric function of
    // odd index vanishes, and Newton's identities in characteristic 2 then
    // force the trace of every power to vanish: the trace footprint is
    // empty, in sharp contrast to the fractal cnot footprint.
    let t2 = centered("kagome-t2");
    let mut acc = t2.clone();
    for n in 1..=64u64 {
        assert!(acc.trace().is_zero(), "trace of power {n}");
        if n < 64 {
            acc = acc.compose(&t2).unwrap();
        }
    }
}

#[test]
fn kagome_t3_trace_identity() {
    // Powers divisible by three are traceless; all others match the traces
    // of the square-lattice cnot circuit.
    let t3 = centered("kagome-t3");
    let cnot = centered("cnot");
    let mut acc3 = t3.clone();
    let mut accc = cnot.clone();
    for n in 1..=64u64 {
        if n % 3 == 0 {
            assert!(acc3.trace().is_zero(), "trace of power {n} vanishes");
        } else {
            assert_eq!(acc3.trace(), accc.trace(), "trace of power {n}");
        }
        if n < 64 {
            acc3 = acc3.compose(&t3).unwrap();
            accc = accc.compose(&cnot).unwrap();
        }
    }
}

#[test]
fn char_poly_is_convention_independent() {
    use cqca::lattice::Convention;
    for name in ["bare-iswap", "dense", "df19", "sdki", "nonzero-trace-poor"] {
        let base = CircuitSpec::preset(name).unwrap();
        let chi = build(&base).unwrap().power(2, None).char_poly();
        for conv in [Convention::B, Convention::C, Convention::D] {
            let mut spec = base.clone();
            spec.convention = conv;
            let other = build(&spec).unwrap().power(2, None).char_poly();
            assert_eq!(other, chi, "{name} under convention {conv:?}");
        }
    }
}

#[test]
fn min_poly_divides_char_poly() {
    for name in CircuitSpec::preset_names() {
        let m = centered(name);
        let chi = m.char_poly();
        let mu = m.min_poly().unwrap();
        assert!(chi.is_divisible_by(&mu), "{name}: min divides char");
        assert!(m.eval_poly(&mu).is_zero_matrix(), "{name}: min annihilates");
    }
}

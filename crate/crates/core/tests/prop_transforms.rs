// Point-group transform laws checked on every iSWAP edge-gate pair.

use cqca::automaton::Automaton;
use cqca::lattice::{build, CircuitSpec, CoreGate, ALL_ONE_SITE_GATES};
use cqca::pointgroup::{
    reflect_lr_matrix, transform_spec, PointGroupOp, ALL_POINT_GROUP_OPS,
};
use cqca::polyring::{BivarPoly, LaurentPoly};

fn centered_iswap(first: cqca::lattice::OneSiteGate, second: cqca::lattice::OneSiteGate) -> Automaton {
    build(&CircuitSpec::square(CoreGate::Iswap, first, second))
        .unwrap()
        .power(2, None)
        .center()
        .unwrap()
        .0
}

fn bar_poly(p: &BivarPoly) -> BivarPoly {
    BivarPoly::from_coeffs(p.coeffs().iter().map(LaurentPoly::bar).collect())
}

fn reciprocal(p: &BivarPoly) -> BivarPoly {
    let mut coeffs: Vec<LaurentPoly> = p.coeffs().to_vec();
    coeffs.reverse();
    BivarPoly::from_coeffs(coeffs)
}

/// Two automata equal after dividing out some global power of u.
fn equal_up_to_shift(a: &Automaton, b: &Automaton) -> bool {
    for (x, y) in (0..a.dim()).flat_map(|i| (0..a.dim()).map(move |j| (i, j))) {
        let (p, q) = (a.get(x, y), b.get(x, y));
        if p.is_zero() != q.is_zero() {
            return false;
        }
        if !p.is_zero() {
            let d = p.support()[0] - q.support()[0];
            return a.scale(&LaurentPoly::monomial(-d)) == *b;
        }
    }
    true
}

#[test]
fn char_poly_under_reflection_and_time_reversal() {
    for f in ALL_ONE_SITE_GATES {
        for s in ALL_ONE_SITE_GATES {
            let m = centered_iswap(f, s);
            let chi = m.char_poly();
            let reflected = reflect_lr_matrix(&m);
            assert_eq!(
                reflected.char_poly(),
                bar_poly(&chi),
                "reflection sends u to 1/u for ({f:?},{s:?})"
            );
            let reversed = m.inverse().unwrap();
            assert_eq!(
                reversed.char_poly(),
                reciprocal(&chi),
                "time reversal reverses the coefficients for ({f:?},{s:?})"
            );
        }
    }
}

#[test]
fn transformed_specs_rebuild_the_transformed_automaton() {
    // The spec-level reflection and time reversal reproduce the matrix-level
    // transforms up to a global shift.
    for f in ALL_ONE_SITE_GATES {
        for s in ALL_ONE_SITE_GATES {
            let spec = CircuitSpec::square(CoreGate::Iswap, f, s);
            let m = build(&spec).unwrap();

            let refl = transform_spec(&spec, PointGroupOp::ReflectLr).unwrap();
            let mut rspec = refl.spec.clone();
            rspec.convention = refl.convention;
            let rebuilt = build(&rspec)
                .unwrap()
                .scale(&LaurentPoly::monomial(refl.shift_exponent));
            assert_eq!(reflect_lr_matrix(&m), rebuilt, "reflect-lr ({f:?},{s:?})");

            let rev = transform_spec(&spec, PointGroupOp::TimeReverse).unwrap();
            let mut tspec = rev.spec.clone();
            tspec.convention = rev.convention;
            // Half-cell shifts: conjugating by the shift automaton relabels
            // the two sites of the cell.
            let rebuilt = build(&tspec).unwrap();
            let shift = cqca::lattice::shift_matrix(2);
            let conjugated = shift
                .compose(&rebuilt)
                .unwrap()
                .compose(&shift.inverse().unwrap())
                .unwrap();
            let inv = m.inverse().unwrap();
            assert!(
                equal_up_to_shift(&inv, &rebuilt) || equal_up_to_shift(&inv, &conjugated),
                "time reversal ({f:?},{s:?})"
            );
        }
    }
}

#[test]
fn detected_symmetries_are_subgroups() {
    for f in ALL_ONE_SITE_GATES {
        for s in ALL_ONE_SITE_GATES {
            let spec = CircuitSpec::square(CoreGate::Iswap, f, s);
            let syms = cqca::pointgroup::detect_symmetries(&spec).unwrap();
            assert!(syms.contains(&PointGroupOp::Identity));
            for &a in &syms {
                assert!(syms.contains(&a.inverse()));
                for &b in &syms {
                    assert!(syms.contains(&a.compose(b)), "closure for ({f:?},{s:?})");
                }
            }
        }
    }
}

#[test]
fn edge_action_is_a_group_action() {
    for op in ALL_POINT_GROUP_OPS {
        let inv = op.inverse();
        for f in ALL_ONE_SITE_GATES {
            for s in ALL_ONE_SITE_GATES {
                let (x, y) = op.edge_action(f, s);
                assert_eq!(inv.edge_action(x, y), (f, s));
            }
        }
    }
}

// Structural invariants of the one-site correlation channels.

use cqca::correlations::{
    core_channel, ergodicity_class, gate_channel, one_site_correlation,
    step_channel, two_point_correlation, Diagonal, ErgodicityClass,
    PauliChannel, Tau,
};
use cqca::lattice::{CircuitSpec, CoreGate, OneSiteGate, ALL_ONE_SITE_GATES};
use cqca::pointgroup::{detect_symmetries, PointGroupOp};

fn all_iswap_specs() -> Vec<CircuitSpec> {
    let mut specs = Vec::new();
    for g1 in ALL_ONE_SITE_GATES {
        for g2 in ALL_ONE_SITE_GATES {
            specs.push(CircuitSpec::square(CoreGate::Iswap, g1, g2));
        }
    }
    specs
}

#[test]
fn channels_are_unital_signed_permutations() {
    for spec in all_iswap_specs() {
        for d in [Diagonal::Plus, Diagonal::Minus] {
            let m = step_channel(&spec, d).unwrap();
            assert!(m.is_unital());
            for col in 0..4 {
                let nonzero = (0..4)
                    .filter(|&row| m.0[row][col] != 0)
                    .collect::<Vec<_>>();
                assert!(nonzero.len() <= 1, "column {col} of {spec:?}");
                assert!(m.0.iter().all(|r| r[col].abs() <= 1));
            }
        }
    }
}

#[test]
fn step_channel_composes_from_layer_factors() {
    for spec in all_iswap_specs() {
        for (d, leg) in [(Diagonal::Plus, 0usize), (Diagonal::Minus, 1)] {
            let v = gate_channel(spec.edges[leg]);
            let k = core_channel(spec.core, d);
            assert_eq!(step_channel(&spec, d).unwrap(), v.mul(&k));
        }
    }
}

#[test]
fn correlation_paths_split_multiplicatively() {
    // C(0 -> t2) summed over the intermediate Pauli at t1 equals the direct
    // path value: the per-crossing factors compose.
    for name in ["bare-iswap", "nonzero-trace-poor", "df19", "sdki"] {
        let spec = CircuitSpec::preset(name).unwrap();
        for d in [Diagonal::Plus, Diagonal::Minus] {
            for t1 in 0..=3i64 {
                for t2 in t1..=4 {
                    for alpha in 0..4 {
                        for beta in 0..4 {
                            let direct = one_site_correlation(
                                &spec, alpha, beta, t2, Tau::Early, Tau::Early, d,
                            )
                            .unwrap();
                            let split: i64 = (0..4)
                                .map(|mid| {
                                    one_site_correlation(
                                        &spec, alpha, mid, t1, Tau::Early,
                                        Tau::Early, d,
                                    )
                                    .unwrap()
                                        * one_site_correlation(
                                            &spec,
                                            mid,
                                            beta,
                                            t2 - t1,
                                            Tau::Early,
                                            Tau::Early,
                                            d,
                                        )
                                        .unwrap()
                                })
                                .sum();
                            assert_eq!(
                                direct, split,
                                "{name} {d:?} t1={t1} t2={t2} {alpha}{beta}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn left_right_symmetric_specs_have_equal_diagonals() {
    for spec in all_iswap_specs() {
        if !detect_symmetries(&spec).unwrap().contains(&PointGroupOp::ReflectLr) {
            continue;
        }
        for dt in 0..=4i64 {
            for (tau, tau2) in [
                (Tau::Early, Tau::Early),
                (Tau::Early, Tau::Late),
                (Tau::Late, Tau::Early),
                (Tau::Late, Tau::Late),
            ] {
                for alpha in 0..4 {
                    for beta in 0..4 {
                        let plus = one_site_correlation(
                            &spec, alpha, beta, dt, tau, tau2, Diagonal::Plus,
                        )
                        .unwrap();
                        let minus = one_site_correlation(
                            &spec, alpha, beta, dt, tau, tau2, Diagonal::Minus,
                        )
                        .unwrap();
                        assert_eq!(plus, minus, "{spec:?} dt={dt}");
                    }
                }
            }
        }
    }
}

#[test]
fn identity_edge_pins_the_z_glider_on_its_diagonal() {
    // Gliders with velocity +1 exist exactly when v+ commutes with the
    // Z conjugation, independently of v-.
    for g2 in ALL_ONE_SITE_GATES {
        let spec = CircuitSpec::square(CoreGate::Iswap, OneSiteGate::I, g2);
        for dt in 0..=8i64 {
            let c = one_site_correlation(
                &spec, 3, 3, dt, Tau::Early, Tau::Early, Diagonal::Plus,
            )
            .unwrap();
            assert_eq!(c, 1, "v2={g2:?} dt={dt}");
        }
        assert_eq!(ergodicity_class(&spec).unwrap(), ErgodicityClass::NonErgodic);
    }
}

#[test]
fn good_scrambler_channels_are_nilpotent_with_one_offdiagonal_unit() {
    for name in ["dense", "df19", "sdki"] {
        let spec = CircuitSpec::preset(name).unwrap();
        for d in [Diagonal::Plus, Diagonal::Minus] {
            let b = step_channel(&spec, d).unwrap().traceless_block();
            let square = {
                let mut s = [[0i64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        s[i][j] = (0..3).map(|k| b[i][k] * b[k][j]).sum();
                    }
                }
                s
            };
            assert_eq!(square, [[0; 3]; 3], "{name} {d:?} block squares to zero");
            let units: Vec<(usize, usize)> = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .filter(|&(i, j)| b[i][j] != 0)
                .collect();
            assert_eq!(units.len(), 1, "{name} {d:?}");
            let (i, j) = units[0];
            assert_ne!(i, j);
            assert_eq!(b[i][j].abs(), 1);
        }
    }
}

#[test]
fn every_spec_lands_in_a_valid_ergodicity_class() {
    for spec in all_iswap_specs() {
        let class = ergodicity_class(&spec).unwrap();
        assert_ne!(class, ErgodicityClass::Bernoulli, "{spec:?}");
        let identity_like = spec.edges.iter().all(|&g| g == OneSiteGate::I);
        if identity_like {
            // The bare iSWAP keeps both Z gliders but scrambles X and Y.
            assert_eq!(class, ErgodicityClass::NonErgodic);
        }
    }
}

#[test]
fn off_cone_displacements_vanish_for_all_specs() {
    for spec in all_iswap_specs() {
        for (dt, dy) in [(2i64, 0i64), (3, 1), (1, -1), (0, 2)] {
            for d in [Diagonal::Plus, Diagonal::Minus] {
                let slope = if d == Diagonal::Plus { 1 } else { -1 };
                if dt == slope * dy {
                    continue;
                }
                let c = two_point_correlation(
                    &spec,
                    3,
                    3,
                    (0, 0, Tau::Early, d),
                    (dt, dy, Tau::Early, d),
                )
                .unwrap();
                assert_eq!(c, 0, "{spec:?} dt={dt} dy={dy}");
            }
        }
    }
}

#[test]
fn depolarization_identity_rewritten_as_a_channel_product() {
    // One layer plus one extra core depolarizes every good scrambler; the
    // poor scramblers keep their glider entry instead.
    let depol = {
        let mut m = [[0i64; 4]; 4];
        m[0][0] = 1;
        PauliChannel(m)
    };
    for spec in all_iswap_specs() {
        for d in [Diagonal::Plus, Diagonal::Minus] {
            let product =
                core_channel(spec.core, d).mul(&step_channel(&spec, d).unwrap());
            let leg = if d == Diagonal::Plus { 0 } else { 1 };
            let scrambling = gate_channel(spec.edges[leg]).0[3][3] == 0;
            if scrambling {
                assert_eq!(product, depol, "{spec:?} {d:?}");
            } else {
                assert_ne!(product, depol, "{spec:?} {d:?}");
            }
        }
    }
}

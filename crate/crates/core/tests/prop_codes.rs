// Code-distance and erasure-failure checks against exhaustive enumeration.

use cqca::codes::{
    contiguous_code_distance, erasure_failure, erasure_failure_rate,
    logical_dim_on_region, logical_dim_on_sites, ErasureModel,
};
use cqca::automaton::SymplecticVector;
use cqca::lattice::CircuitSpec;
use cqca::pauli::Pauli;
use cqca::tableau::{Region, StabilizerGroup};

/// Brute-force logical dimension: count the Paulis on W commuting with every
/// generator, divide out the stabilizer elements supported on W.
fn exhaustive_logical_dim(g: &StabilizerGroup, sites: &[usize]) -> usize {
    let gens: Vec<Vec<Pauli>> = (0..g.k()).map(|i| g.generator(i)).collect();
    let mut commutant = 0u64;
    for code in 0..4u64.pow(sites.len() as u32) {
        let mut string = vec![Pauli::I; g.qubits()];
        for (i, &q) in sites.iter().enumerate() {
            string[q] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]
                [(code >> (2 * i) & 3) as usize];
        }
        let commutes = gens.iter().all(|gen| {
            string
                .iter()
                .zip(gen)
                .filter(|(p, q)| !p.commutes_with(**q))
                .count()
                % 2
                == 0
        });
        if commutes {
            commutant += 1;
        }
    }
    let mut members = 0u64;
    for subset in 0u32..1 << g.k() {
        let mut string = vec![Pauli::I; g.qubits()];
        for (i, gen) in gens.iter().enumerate() {
            if subset >> i & 1 == 1 {
                for (s, p) in string.iter_mut().zip(gen) {
                    *s = s.mul(*p);
                }
            }
        }
        let supported = string
            .iter()
            .enumerate()
            .all(|(q, p)| p.is_identity() || sites.contains(&q));
        if supported {
            members += 1;
        }
    }
    assert!(commutant.is_power_of_two() && members.is_power_of_two());
    (commutant.ilog2() - members.ilog2()) as usize
}

fn small_random_group(seed: u64) -> StabilizerGroup {
    let spec = CircuitSpec::preset(["dense", "df19", "bare-iswap"][seed as usize % 3])
        .unwrap();
    let mut g = StabilizerGroup::random_product_state(3, 2, seed);
    g = g.step(&spec).unwrap();
    let rows: Vec<Vec<Pauli>> = (0..g.k())
        .filter(|i| (seed / 3) >> (i % 4) & 1 == 0 || i % 2 == 1)
        .map(|i| g.generator(i))
        .collect();
    StabilizerGroup::from_rows(3, 2, &rows).unwrap()
}

#[test]
fn logical_dim_matches_exhaustive_enumeration() {
    for seed in 0..10u64 {
        let g = small_random_group(seed);
        for (start, len) in [(0usize, 1usize), (1, 2), (3, 2), (4, 3), (5, 3)] {
            let sites = Region::new(start, len).sites(g.qubits()).unwrap();
            assert_eq!(
                logical_dim_on_sites(&g, &sites),
                exhaustive_logical_dim(&g, &sites),
                "seed {seed} start {start} len {len}"
            );
        }
        // A scattered, non-contiguous erasure pattern.
        let scattered = [0usize, 2, 5];
        assert_eq!(
            logical_dim_on_sites(&g, &scattered),
            exhaustive_logical_dim(&g, &scattered),
            "seed {seed} scattered"
        );
    }
}

#[test]
fn logical_dim_is_monotone_under_inclusion() {
    for seed in 0..8u64 {
        let g = small_random_group(seed);
        for start in 0..g.qubits() {
            let mut prev = 0;
            for len in 1..=g.qubits() {
                let dim =
                    logical_dim_on_region(&g, &Region::new(start, len)).unwrap();
                assert!(dim >= prev, "seed {seed} start {start} len {len}");
                prev = dim;
            }
        }
    }
}

#[test]
fn windows_shorter_than_the_distance_never_fail() {
    let spec = CircuitSpec::preset("dense").unwrap();
    let init = [SymplecticVector::from_cell_paulis(&[Pauli::Z, Pauli::I])];
    let mut g = StabilizerGroup::from_translates(8, &init).unwrap();
    for _ in 0..5 {
        g = g.step(&spec).unwrap();
    }
    let d1 = contiguous_code_distance(&g).unwrap();
    assert!(d1 > 1, "evolution should have grown the code");
    for len in 1..d1 {
        for start in 0..g.qubits() {
            let sites = Region::new(start, len).sites(g.qubits()).unwrap();
            assert!(!erasure_failure(&g, &sites), "start {start} len {len}");
        }
    }
    // At the distance itself some window hosts a logical.
    let hit = (0..g.qubits()).any(|start| {
        let sites = Region::new(start, d1).sites(g.qubits()).unwrap();
        erasure_failure(&g, &sites)
    });
    assert!(hit);
}

#[test]
fn failure_rate_grows_with_the_erased_fraction() {
    let spec = CircuitSpec::preset("dense").unwrap();
    let init = [SymplecticVector::from_cell_paulis(&[Pauli::Z, Pauli::I])];
    let mut g = StabilizerGroup::from_translates(10, &init).unwrap();
    for _ in 0..6 {
        g = g.step(&spec).unwrap();
    }
    let trials = 4000;
    let mut prev = (0.0f64, 0.0f64);
    for (i, e) in [0.1, 0.25, 0.4, 0.6].into_iter().enumerate() {
        let model = ErasureModel { fraction: e, trials, seed: 77 };
        let (p, stderr) = erasure_failure_rate(&g, &model).unwrap();
        if i > 0 {
            let slack = 3.0 * (stderr.powi(2) + prev.1.powi(2)).sqrt().max(1e-9);
            assert!(p + slack >= prev.0, "e={e}: {p} << {}", prev.0);
        }
        prev = (p, stderr);
    }
    assert!(prev.0 > 0.9, "far above threshold almost every trial fails");
}

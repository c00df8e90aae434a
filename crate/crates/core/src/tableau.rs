//! Sign-free stabilizer groups on finite periodic chains.
//!
//! A group is a set of independent, pairwise commuting Pauli strings stored
//! as bit-packed symplectic rows. All derived observables (ranks, entropies,
//! mutual information) are phase-independent, so signs are dropped globally.

use crate::automaton::SymplecticVector;
use crate::lattice::{layer_program, CircuitSpec, LatticeError, LayerProgram};
use crate::pauli::Pauli;
use crate::polyring::{LaurentPoly, ResidueContext};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("invalid region: start {start}, length {length} on {qubits} qubits")]
    InvalidRegion { start: usize, length: usize, qubits: usize },
    #[error("generators are not independent")]
    DependentGenerators,
    #[error("generators do not commute")]
    AnticommutingGenerators,
    #[error("row has {got} sites, expected {expected}")]
    RowSizeMismatch { expected: usize, got: usize },
    #[error("spec cell size {spec} does not match group cell size {group}")]
    CellSizeMismatch { spec: usize, group: usize },
    #[error("qubit index {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A contiguous window of sites. With `wrap` set the window may pass the
/// chain boundary; windows are always interpreted on a periodic chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub start: usize,
    pub length: usize,
    pub wrap: bool,
}

impl Region {
    pub fn new(start: usize, length: usize) -> Self {
        Region { start, length, wrap: true }
    }

    /// The site indices covered, reduced modulo the chain length.
    pub fn sites(&self, qubits: usize) -> Result<Vec<usize>, TableauError> {
        let invalid = TableauError::InvalidRegion {
            start: self.start,
            length: self.length,
            qubits,
        };
        if self.length == 0 || self.length > qubits || self.start >= qubits {
            return Err(invalid);
        }
        if !self.wrap && self.start + self.length > qubits {
            return Err(invalid);
        }
        Ok((0..self.length).map(|i| (self.start + i) % qubits).collect())
    }
}

/// Outcome kind of a single-site projective measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureOutcome {
    /// The measured Pauli is in the group: the state is unchanged.
    Deterministic,
    /// Commutes with the group but is not a member: one generator is added.
    Purifying,
    /// Anticommutes with some generator: the outcome is a coin flip and one
    /// generator is replaced.
    Random,
}

const WORD: usize = 64;
const EVEN: u64 = 0x5555_5555_5555_5555;

type Row = Vec<u64>;

fn row_words(qubits: usize) -> usize {
    (2 * qubits).div_ceil(WORD)
}

fn get_bit(row: &Row, idx: usize) -> bool {
    row[idx / WORD] >> (idx % WORD) & 1 == 1
}

fn set_bit(row: &mut Row, idx: usize, v: bool) {
    let mask = 1u64 << (idx % WORD);
    if v {
        row[idx / WORD] |= mask;
    } else {
        row[idx / WORD] &= !mask;
    }
}

fn xor_into(dst: &mut Row, src: &Row) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn leading_bit(row: &Row) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}

/// Parity of the binary symplectic product: 1 iff the two strings
/// anticommute.
fn symplectic_product(a: &Row, b: &Row) -> bool {
    let mut acc = 0u32;
    for (wa, wb) in a.iter().zip(b) {
        let (xa, za) = (wa & EVEN, wa >> 1 & EVEN);
        let (xb, zb) = (wb & EVEN, wb >> 1 & EVEN);
        acc ^= ((xa & zb) ^ (za & xb)).count_ones() & 1;
    }
    acc == 1
}

/// Reduce `row` against an echelon basis; returns true and appends if the
/// remainder is nonzero (i.e. the row was independent).
fn insert_into_basis(basis: &mut Vec<(usize, Row)>, mut row: Row) -> bool {
    loop {
        let Some(lead) = leading_bit(&row) else { return false };
        match basis.binary_search_by_key(&lead, |(l, _)| *l) {
            Ok(i) => {
                let pivot = basis[i].1.clone();
                xor_into(&mut row, &pivot);
            }
            Err(i) => {
                basis.insert(i, (lead, row));
                return true;
            }
        }
    }
}

/// Rank over F2 of a set of rows, consuming them.
fn rank_of(rows: impl IntoIterator<Item = Row>) -> usize {
    let mut basis: Vec<(usize, Row)> = Vec::new();
    for row in rows {
        insert_into_basis(&mut basis, row);
    }
    basis.len()
}

/// Reduced row echelon form: unique generating set for the row space.
fn reduced_echelon(rows: &[Row]) -> Vec<Row> {
    let mut basis: Vec<(usize, Row)> = Vec::new();
    for row in rows {
        insert_into_basis(&mut basis, row.clone());
    }
    // Back-substitute so every pivot column is clear above and below.
    for i in (0..basis.len()).rev() {
        let (lead, row) = (basis[i].0, basis[i].1.clone());
        for j in 0..i {
            if get_bit(&basis[j].1, lead) {
                xor_into(&mut basis[j].1, &row);
            }
        }
    }
    basis.into_iter().map(|(_, r)| r).collect()
}

/// A stabilizer group on `m` unit cells of `a` sites each, signs dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    cells: usize,
    cell_size: usize,
    gens: Vec<Row>,
}

impl StabilizerGroup {
    /// The group ⟨⟩ stabilizing nothing: the fully mixed state.
    pub fn fully_mixed(cells: usize, cell_size: usize) -> Self {
        StabilizerGroup { cells, cell_size, gens: Vec::new() }
    }

    /// A pure product state with one single-site generator per site.
    pub fn product_state(
        cells: usize,
        cell_size: usize,
        site_paulis: &[Pauli],
    ) -> Result<Self, TableauError> {
        let qubits = cells * cell_size;
        if site_paulis.len() != qubits {
            return Err(TableauError::RowSizeMismatch {
                expected: qubits,
                got: site_paulis.len(),
            });
        }
        let mut rows = Vec::with_capacity(qubits);
        for (q, p) in site_paulis.iter().enumerate() {
            let mut paulis = vec![Pauli::I; qubits];
            paulis[q] = *p;
            rows.push(paulis);
        }
        Self::from_rows(cells, cell_size, &rows)
    }

    /// A uniformly random pure product state: each site stabilized by X, Y,
    /// or Z (signs quotiented out). Deterministic in the seed.
    pub fn random_product_state(cells: usize, cell_size: usize, seed: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let paulis: Vec<Pauli> = (0..cells * cell_size)
            .map(|_| match rng.random_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            })
            .collect();
        Self::product_state(cells, cell_size, &paulis)
            .expect("single-site generators always commute")
    }

    /// Build a group from explicit Pauli strings, one site per entry.
    pub fn from_rows(
        cells: usize,
        cell_size: usize,
        rows: &[Vec<Pauli>],
    ) -> Result<Self, TableauError> {
        let qubits = cells * cell_size;
        let mut gens = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != qubits {
                return Err(TableauError::RowSizeMismatch {
                    expected: qubits,
                    got: row.len(),
                });
            }
            let mut bits = vec![0u64; row_words(qubits)];
            for (q, p) in row.iter().enumerate() {
                let (x, z) = p.bits();
                set_bit(&mut bits, 2 * q, x);
                set_bit(&mut bits, 2 * q + 1, z);
            }
            gens.push(bits);
        }
        let group = StabilizerGroup { cells, cell_size, gens };
        group.validate()?;
        Ok(group)
    }

    /// Build a translation-invariant group from cell generators: each vector
    /// is reduced modulo u^m - 1 and repeated on every cell; dependent
    /// translates are dropped.
    pub fn from_translates(
        cells: usize,
        generators: &[SymplecticVector],
    ) -> Result<Self, TableauError> {
        let ctx = ResidueContext::new(cells).map_err(|_| TableauError::InvalidRegion {
            start: 0,
            length: 0,
            qubits: 0,
        })?;
        let cell_size = generators.first().map_or(1, SymplecticVector::a);
        let qubits = cells * cell_size;
        let mut basis: Vec<(usize, Row)> = Vec::new();
        let mut gens = Vec::new();
        for g in generators {
            for shift in 0..cells {
                let v = g.scale(&LaurentPoly::monomial(shift as i64)).reduce(&ctx);
                let mut bits = vec![0u64; row_words(qubits)];
                for cell in 0..cells {
                    for s in 0..cell_size {
                        let (x, z) = v.pauli_at(s, cell as i64).bits();
                        set_bit(&mut bits, 2 * (cell * cell_size + s), x);
                        set_bit(&mut bits, 2 * (cell * cell_size + s) + 1, z);
                    }
                }
                if insert_into_basis(&mut basis, bits.clone()) {
                    gens.push(bits);
                }
            }
        }
        let group = StabilizerGroup { cells, cell_size, gens };
        group.validate()?;
        Ok(group)
    }

    fn validate(&self) -> Result<(), TableauError> {
        if rank_of(self.gens.iter().cloned()) != self.gens.len() {
            return Err(TableauError::DependentGenerators);
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                if symplectic_product(&self.gens[i], &self.gens[j]) {
                    return Err(TableauError::AnticommutingGenerators);
                }
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn cell_size(&self) -> usize {
        self.cell_size
    }

    pub fn qubits(&self) -> usize {
        self.cells * self.cell_size
    }

    /// Number of independent generators.
    pub fn k(&self) -> usize {
        self.gens.len()
    }

    /// Pauli string of one generator.
    pub fn generator(&self, i: usize) -> Vec<Pauli> {
        (0..self.qubits())
            .map(|q| {
                Pauli::from_bits(get_bit(&self.gens[i], 2 * q), get_bit(&self.gens[i], 2 * q + 1))
            })
            .collect()
    }

    /// All generators as {I,X,Y,Z} strings, one row per generator.
    pub fn generator_strings(&self) -> Vec<String> {
        (0..self.k())
            .map(|i| self.generator(i).iter().map(Pauli::to_string).collect())
            .collect()
    }

    /// Conjugate every generator through one full period of the circuit.
    pub fn step(&self, spec: &CircuitSpec) -> Result<Self, TableauError> {
        if spec.cell_size() != self.cell_size {
            return Err(TableauError::CellSizeMismatch {
                spec: spec.cell_size(),
                group: self.cell_size,
            });
        }
        let program = layer_program(spec, self.cells)?;
        Ok(self.apply_program(&program))
    }

    /// Apply an explicit gate program to every generator.
    pub fn apply_program(&self, program: &LayerProgram) -> Self {
        let qubits = self.qubits();
        let mut gens = self.gens.clone();
        for layer in &program.layers {
            for row in &mut gens {
                for gate in &layer.gates {
                    let (q1, q2) = gate.qubits;
                    let old = [
                        get_bit(row, 2 * q1),
                        get_bit(row, 2 * q1 + 1),
                        get_bit(row, 2 * q2),
                        get_bit(row, 2 * q2 + 1),
                    ];
                    let mut new = [false; 4];
                    for (i, n) in new.iter_mut().enumerate() {
                        for (j, o) in old.iter().enumerate() {
                            *n ^= gate.action[i][j] == 1 && *o;
                        }
                    }
                    set_bit(row, 2 * q1, new[0]);
                    set_bit(row, 2 * q1 + 1, new[1]);
                    set_bit(row, 2 * q2, new[2]);
                    set_bit(row, 2 * q2 + 1, new[3]);
                }
            }
            if layer.relabel > 0 {
                for row in &mut gens {
                    let mut shifted = vec![0u64; row.len()];
                    for q in 0..qubits {
                        let dst = (q + layer.relabel) % qubits;
                        set_bit(&mut shifted, 2 * dst, get_bit(row, 2 * q));
                        set_bit(&mut shifted, 2 * dst + 1, get_bit(row, 2 * q + 1));
                    }
                    *row = shifted;
                }
            }
        }
        StabilizerGroup { cells: self.cells, cell_size: self.cell_size, gens }
    }

    /// Shift every generator right by the given number of sites (cyclic).
    pub fn translated(&self, sites: usize) -> Self {
        let qubits = self.qubits();
        let gens = self
            .gens
            .iter()
            .map(|row| {
                let mut shifted = vec![0u64; row.len()];
                for q in 0..qubits {
                    let dst = (q + sites) % qubits;
                    set_bit(&mut shifted, 2 * dst, get_bit(row, 2 * q));
                    set_bit(&mut shifted, 2 * dst + 1, get_bit(row, 2 * q + 1));
                }
                shifted
            })
            .collect();
        StabilizerGroup { cells: self.cells, cell_size: self.cell_size, gens }
    }

    /// Entropy of the full chain in bits: L - k.
    pub fn entropy(&self) -> u64 {
        (self.qubits() - self.k()) as u64
    }

    /// Rank over F2 of the generators with all columns outside `sites`
    /// cleared.
    pub fn restricted_rank(&self, sites: &[usize]) -> usize {
        let qubits = self.qubits();
        let mut mask = vec![0u64; row_words(qubits)];
        for &s in sites {
            set_bit(&mut mask, 2 * s, true);
            set_bit(&mut mask, 2 * s + 1, true);
        }
        rank_of(self.gens.iter().map(|row| {
            row.iter().zip(&mask).map(|(w, m)| w & m).collect::<Row>()
        }))
    }

    /// Entanglement entropy of a region: S_A = |A| - k + rank of the
    /// generators restricted to the complement.
    pub fn subsystem_entropy(&self, region: &Region) -> Result<u64, TableauError> {
        let qubits = self.qubits();
        let inside = region.sites(qubits)?;
        let mut in_region = vec![false; qubits];
        for &s in &inside {
            in_region[s] = true;
        }
        let complement: Vec<usize> = (0..qubits).filter(|q| !in_region[*q]).collect();
        let s = inside.len() as i64 - self.k() as i64
            + self.restricted_rank(&complement) as i64;
        debug_assert!(s >= 0);
        Ok(s as u64)
    }

    /// Mean subsystem entropy over all cyclic windows, indexed by window
    /// length: entry ℓ-1 is the average of S_A over the L windows of
    /// length ℓ, for ℓ = 1..=L.
    ///
    /// Windows share work: for a fixed start the complement shrinks one site
    /// at a time, so all its restricted ranks come from one incremental
    /// elimination over the transposed generator matrix.
    pub fn page_curve(&self) -> Vec<f64> {
        let qubits = self.qubits();
        let k = self.k();
        if qubits == 0 {
            return Vec::new();
        }
        // Transpose: one k-bit vector per symplectic column.
        let kwords = k.div_ceil(WORD).max(1);
        let mut columns = vec![vec![0u64; kwords]; 2 * qubits];
        for (g, row) in self.gens.iter().enumerate() {
            for c in 0..2 * qubits {
                if get_bit(row, c) {
                    set_bit(&mut columns[c], g, true);
                }
            }
        }
        let mut sums = vec![0u64; qubits + 1];
        for start in 0..qubits {
            let mut basis: Vec<(usize, Row)> = Vec::new();
            let mut rank = 0usize;
            // Window [start, start+len); growing the complement from the far
            // end as len decreases keeps the elimination incremental.
            for len in (1..=qubits).rev() {
                let s = len as i64 + rank as i64 - k as i64;
                debug_assert!(s >= 0);
                sums[len] += s as u64;
                let site = (start + len - 1) % qubits;
                for c in [2 * site, 2 * site + 1] {
                    if insert_into_basis(&mut basis, columns[c].clone()) {
                        rank += 1;
                    }
                }
            }
        }
        (1..=qubits).map(|len| sums[len] as f64 / qubits as f64).collect()
    }

    /// Mutual information between a region and its complement:
    /// I(A:Ā) = S_A + S_Ā - S.
    pub fn mutual_information(&self, region: &Region) -> Result<u64, TableauError> {
        let qubits = self.qubits();
        if region.length >= qubits {
            return Err(TableauError::InvalidRegion {
                start: region.start,
                length: region.length,
                qubits,
            });
        }
        let complement = Region::new(
            (region.start + region.length) % qubits,
            qubits - region.length,
        );
        let i = self.subsystem_entropy(region)? as i64
            + self.subsystem_entropy(&complement)? as i64
            - self.entropy() as i64;
        debug_assert!(i >= 0);
        Ok(i as u64)
    }

    fn membership_basis(&self) -> Vec<(usize, Row)> {
        let mut basis = Vec::new();
        for row in &self.gens {
            insert_into_basis(&mut basis, row.clone());
        }
        basis
    }

    /// Whether the (sign-free) Pauli string is an element of the group.
    pub fn contains_row(&self, paulis: &[Pauli]) -> Result<bool, TableauError> {
        let qubits = self.qubits();
        if paulis.len() != qubits {
            return Err(TableauError::RowSizeMismatch {
                expected: qubits,
                got: paulis.len(),
            });
        }
        let mut row = vec![0u64; row_words(qubits)];
        for (q, p) in paulis.iter().enumerate() {
            let (x, z) = p.bits();
            set_bit(&mut row, 2 * q, x);
            set_bit(&mut row, 2 * q + 1, z);
        }
        let mut basis = self.membership_basis();
        Ok(!insert_into_basis(&mut basis, row))
    }

    /// Measure a single-site Pauli: returns the updated group and the
    /// outcome kind. Signs are dropped, so random outcomes do not sample a
    /// ±1 value.
    pub fn measure(
        &self,
        qubit: usize,
        pauli: Pauli,
    ) -> Result<(Self, MeasureOutcome), TableauError> {
        let qubits = self.qubits();
        if qubit >= qubits {
            return Err(TableauError::QubitOutOfRange { qubit, qubits });
        }
        assert!(!pauli.is_identity(), "measurement basis must be X, Y, or Z");
        let mut meas = vec![0u64; row_words(qubits)];
        let (x, z) = pauli.bits();
        set_bit(&mut meas, 2 * qubit, x);
        set_bit(&mut meas, 2 * qubit + 1, z);

        let anti: Vec<usize> = (0..self.gens.len())
            .filter(|&i| symplectic_product(&self.gens[i], &meas))
            .collect();
        if let Some((&first, rest)) = anti.split_first() {
            // Random outcome: multiply the other anticommuting generators by
            // the first and replace it with the measured Pauli.
            let mut gens = self.gens.clone();
            let pivot = gens[first].clone();
            for &i in rest {
                xor_into(&mut gens[i], &pivot);
            }
            gens[first] = meas;
            let next = StabilizerGroup { cells: self.cells, cell_size: self.cell_size, gens };
            return Ok((next, MeasureOutcome::Random));
        }
        let mut basis = self.membership_basis();
        if !insert_into_basis(&mut basis, meas.clone()) {
            return Ok((self.clone(), MeasureOutcome::Deterministic));
        }
        let mut gens = self.gens.clone();
        gens.push(meas);
        let next = StabilizerGroup { cells: self.cells, cell_size: self.cell_size, gens };
        Ok((next, MeasureOutcome::Purifying))
    }

    /// The unique reduced-row-echelon generating set for the group.
    pub fn canonical_form(&self) -> Self {
        StabilizerGroup {
            cells: self.cells,
            cell_size: self.cell_size,
            gens: reduced_echelon(&self.gens),
        }
    }

    /// Whether one circuit period maps the group to itself.
    pub fn is_stationary(&self, spec: &CircuitSpec) -> Result<bool, TableauError> {
        Ok(self.step(spec)?.canonical_form() == self.canonical_form())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoreGate;
    use crate::lattice::OneSiteGate;

    fn paulis(s: &str) -> Vec<Pauli> {
        s.chars().map(|c| Pauli::from_char(c).unwrap()).collect()
    }

    #[test]
    fn entropy_extremes() {
        let mixed = StabilizerGroup::fully_mixed(4, 2);
        assert_eq!(mixed.entropy(), 8);
        let pure = StabilizerGroup::product_state(4, 2, &[Pauli::Z; 8]).unwrap();
        assert_eq!(pure.entropy(), 0);
    }

    #[test]
    fn bell_pair_subsystem_entropy() {
        let g =
            StabilizerGroup::from_rows(2, 1, &[paulis("XX"), paulis("ZZ")]).unwrap();
        assert_eq!(g.subsystem_entropy(&Region::new(0, 1)).unwrap(), 1);
        assert_eq!(g.subsystem_entropy(&Region::new(1, 1)).unwrap(), 1);
        assert_eq!(g.mutual_information(&Region::new(0, 1)).unwrap(), 2);
    }

    #[test]
    fn pure_product_has_flat_page_curve() {
        let g = StabilizerGroup::random_product_state(4, 2, 7);
        assert!(g.page_curve().iter().all(|s| *s == 0.0));
        let mixed = StabilizerGroup::fully_mixed(4, 2);
        let curve = mixed.page_curve();
        for (i, s) in curve.iter().enumerate() {
            assert_eq!(*s, (i + 1) as f64);
        }
    }

    #[test]
    fn measurement_outcome_kinds() {
        let g = StabilizerGroup::from_rows(1, 1, &[paulis("X")]).unwrap();
        let (after, kind) = g.measure(0, Pauli::X).unwrap();
        assert_eq!(kind, MeasureOutcome::Deterministic);
        assert_eq!(after, g);

        let mixed = StabilizerGroup::fully_mixed(1, 1);
        let (after, kind) = mixed.measure(0, Pauli::X).unwrap();
        assert_eq!(kind, MeasureOutcome::Purifying);
        assert_eq!(after.k(), 1);
        assert!(after.contains_row(&paulis("X")).unwrap());

        let (after, kind) = g.measure(0, Pauli::Z).unwrap();
        assert_eq!(kind, MeasureOutcome::Random);
        assert!(after.contains_row(&paulis("Z")).unwrap());
        assert!(!after.contains_row(&paulis("X")).unwrap());
    }

    #[test]
    fn canonical_form_is_presentation_independent() {
        let g1 =
            StabilizerGroup::from_rows(2, 2, &[paulis("XXXX"), paulis("ZZZZ")]).unwrap();
        let g2 =
            StabilizerGroup::from_rows(2, 2, &[paulis("ZZZZ"), paulis("YYYY")]).unwrap();
        assert_eq!(g1.canonical_form(), g2.canonical_form());
        assert_ne!(
            g1.canonical_form(),
            StabilizerGroup::from_rows(2, 2, &[paulis("XXXX")]).unwrap().canonical_form()
        );
    }

    #[test]
    fn swap_circuit_fixes_translation_invariant_groups() {
        // The swap circuit permutes sites, so any group invariant under the
        // one-site translation is fixed by it.
        let spec = CircuitSpec::square(CoreGate::Swap, OneSiteGate::I, OneSiteGate::I);
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let g = StabilizerGroup::product_state(5, 2, &[p; 10]).unwrap();
            assert!(g.is_stationary(&spec).unwrap());
        }
        let mixed = StabilizerGroup::fully_mixed(5, 2);
        assert!(mixed.is_stationary(&spec).unwrap());
    }

    #[test]
    fn sdki_stationary_group() {
        let spec = CircuitSpec::preset("sdki").unwrap();
        let g = StabilizerGroup::from_translates(
            6,
            &[
                SymplecticVector::from_cell_paulis(&[Pauli::X, Pauli::I]),
                SymplecticVector::from_cell_paulis(&[Pauli::I, Pauli::Z]),
            ],
        )
        .unwrap();
        assert!(g.is_stationary(&spec).unwrap());
        let dense = CircuitSpec::preset("dense").unwrap();
        assert!(!g.is_stationary(&dense).unwrap());
    }

    #[test]
    fn page_curve_matches_direct_windows() {
        let spec = CircuitSpec::preset("dense").unwrap();
        let mut g = StabilizerGroup::random_product_state(5, 2, 11);
        for _ in 0..4 {
            g = g.step(&spec).unwrap();
        }
        let curve = g.page_curve();
        let qubits = g.qubits();
        for len in 1..=qubits {
            let direct: u64 = (0..qubits)
                .map(|start| g.subsystem_entropy(&Region::new(start, len)).unwrap())
                .sum();
            assert_eq!(curve[len - 1], direct as f64 / qubits as f64, "len={len}");
        }
    }
}

//! Operator spreading on the infinite chain, trace footprints,
//! fractal-dimension fits, glider detection, and finite-chain recurrence
//! times.

use thiserror::Error;

use crate::automaton::{Automaton, SymplecticVector};
use crate::pauli::Pauli;
use crate::polyring::{LaurentPoly, ResidueContext};

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("empty or degenerate fit range")]
    EmptyFitRange,
    #[error("cumulative counts must be positive over the fit range")]
    NonPositiveCounts,
}

/// Spacetime grid of Pauli labels for one evolving operator. Row `t` covers
/// the fixed cell window `[origin_cell, origin_cell + cells)`; sites are
/// indexed `a * cell_offset + site`.
#[derive(Clone, Debug)]
pub struct Footprint {
    pub a: usize,
    pub origin_cell: i64,
    pub cells: usize,
    pub layers_per_row: usize,
    rows: Vec<Vec<Pauli>>,
}

impl Footprint {
    pub fn rows(&self) -> &[Vec<Pauli>] {
        &self.rows
    }

    pub fn width_sites(&self) -> usize {
        self.a * self.cells
    }

    pub fn pauli(&self, t: usize, site: usize) -> Pauli {
        self.rows[t][site]
    }
}

fn decode_row(v: &SymplecticVector, origin_cell: i64, cells: usize) -> Vec<Pauli> {
    let a = v.a();
    let mut row = Vec::with_capacity(a * cells);
    for c in 0..cells {
        for site in 0..a {
            row.push(v.pauli_at(site, origin_cell + c as i64));
        }
    }
    row
}

/// Iterate `M^t xi0` for `t = 0..=t_max` and decode every row over the
/// common support window.
pub fn evolve_operator(
    m: &Automaton,
    start: &SymplecticVector,
    t_max: usize,
) -> Footprint {
    let mut states = Vec::with_capacity(t_max + 1);
    let mut v = start.clone();
    let (mut lo, mut hi) = v.cell_range().unwrap_or((0, 0));
    states.push(v.clone());
    for _ in 0..t_max {
        v = m.apply(&v);
        if let Some((l, h)) = v.cell_range() {
            lo = lo.min(l);
            hi = hi.max(h);
        }
        states.push(v.clone());
    }
    let cells = (hi - lo + 1) as usize;
    Footprint {
        a: m.a(),
        origin_cell: lo,
        cells,
        layers_per_row: m.layers_per_step().max(1),
        rows: states.iter().map(|s| decode_row(s, lo, cells)).collect(),
    }
}

/// Per-row Pauli counts inside the light cone, plus their running sums.
/// Row 0 holds the initial operator.
#[derive(Clone, Debug)]
pub struct SpreadStats {
    /// counts[t] = (N_I, N_X, N_Y, N_Z) within the light cone at step t.
    pub counts: Vec<[u64; 4]>,
    /// Cumulative sums over t' <= t.
    pub cumulative: Vec<[u64; 4]>,
}

impl SpreadStats {
    /// Cumulative count of non-identity labels per step.
    pub fn cumulative_support(&self) -> Vec<u64> {
        self.cumulative.iter().map(|c| c[1] + c[2] + c[3]).collect()
    }
}

/// Streaming Pauli counts: evolves the operator without retaining the
/// footprint, so long times fit in memory. The light cone grows by one site
/// per layer on each side of the initial support.
pub fn spread_stats(
    m: &Automaton,
    start: &SymplecticVector,
    t_max: usize,
) -> SpreadStats {
    let a = m.a() as i64;
    let layers = m.layers_per_step().max(1) as i64;
    let (lo0, hi0) = start.cell_range().unwrap_or((0, 0));
    let width0 = (hi0 - lo0 + 1) * a;
    let mut counts = Vec::with_capacity(t_max + 1);
    let mut v = start.clone();
    for t in 0..=t_max {
        let width = (width0 + 2 * layers * t as i64) as u64;
        let mut n = [0u64; 4];
        if let Some((lo, hi)) = v.cell_range() {
            for cell in lo..=hi {
                for site in 0..m.a() {
                    match v.pauli_at(site, cell) {
                        Pauli::I => {}
                        Pauli::X => n[1] += 1,
                        Pauli::Y => n[2] += 1,
                        Pauli::Z => n[3] += 1,
                    }
                }
            }
        }
        n[0] = width - n[1] - n[2] - n[3];
        counts.push(n);
        if t < t_max {
            v = m.apply(&v);
        }
    }
    let mut cumulative = Vec::with_capacity(counts.len());
    let mut acc = [0u64; 4];
    for n in &counts {
        for k in 0..4 {
            acc[k] += n[k];
        }
        cumulative.push(acc);
    }
    SpreadStats { counts, cumulative }
}

/// Binary spacetime grid: row `t` marks the nonzero coefficients of a
/// Laurent series, offset so column 0 is exponent `origin`.
#[derive(Clone, Debug)]
pub struct BinaryGrid {
    pub origin: i64,
    pub rows: Vec<Vec<bool>>,
}

impl BinaryGrid {
    pub fn row_count(&self, t: usize) -> u64 {
        self.rows[t].iter().filter(|&&b| b).count() as u64
    }

    /// Cumulative nonzero-cell counts over t' <= t.
    pub fn cumulative_counts(&self) -> Vec<u64> {
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

/// The traces of all matrix powers `M^t` for `t = 1..=t_max`, computed via
/// the linear recurrence induced by the characteristic polynomial.
pub fn trace_series(m: &Automaton, t_max: usize) -> Vec<LaurentPoly> {
    let n = m.dim();
    let chi = m.char_poly();
    let mut traces: Vec<LaurentPoly> = Vec::with_capacity(t_max + 1);
    // Direct powers seed the recurrence.
    let mut acc = m.clone();
    for _ in 0..n.min(t_max) {
        traces.push(acc.trace());
        acc = acc.compose(m).expect("same dimension");
    }
    for t in n..t_max {
        let mut next = LaurentPoly::zero();
        for k in 0..n {
            // M^n = sum_k chi_k M^k, shifted to power t+1.
            let c = chi.coeff(k);
            if !c.is_zero() {
                next = next.add(&c.mul(&traces[t - n + k]));
            }
        }
        traces.push(next);
    }
    traces
}

/// Rasterize the trace coefficients: cell (n, t) is set iff u^n appears in
/// the trace of `M^(t+1)`.
pub fn trace_footprint(m: &Automaton, t_max: usize) -> BinaryGrid {
    let traces = trace_series(m, t_max);
    let lo = traces.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
    let hi = traces.iter().filter_map(LaurentPoly::max_exp).max().unwrap_or(0);
    let width = (hi - lo + 1) as usize;
    let rows = traces
        .iter()
        .map(|p| (0..width).map(|c| p.coeff(lo + c as i64)).collect())
        .collect();
    BinaryGrid { origin: lo, rows }
}

/// Least-squares fit of log2(cumulative) against log2(t) at the dyadic
/// points t = 2^j inside `[t_lo, t_hi]`. `cumulative[t]` is indexed from
/// t = 0; returns the slope and its standard error.
pub fn fractal_dimension(
    cumulative: &[u64],
    t_lo: usize,
    t_hi: usize,
) -> Result<(f64, f64), DynamicsError> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = 1usize;
    while t <= t_hi && t < cumulative.len() {
        if t >= t_lo {
            if cumulative[t] == 0 {
                return Err(DynamicsError::NonPositiveCounts);
            }
            xs.push((t as f64).log2());
            ys.push((cumulative[t] as f64).log2());
        }
        t *= 2;
    }
    if xs.len() < 3 {
        return Err(DynamicsError::EmptyFitRange);
    }
    let n = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let stderr = (ss_res / (n - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}

/// All Pauli vectors supported on a single unit cell, with at most
/// `max_cell_weight` non-identity sites, that the automaton maps to a pure
/// translate of themselves: `M xi = u^n xi`.
pub fn detect_gliders(
    m: &Automaton,
    max_cell_weight: usize,
) -> Vec<(SymplecticVector, i64)> {
    let a = m.a();
    let mut found = Vec::new();
    for mask in 1u32..(1 << (2 * a)) {
        let paulis: Vec<Pauli> = (0..a)
            .map(|j| {
                Pauli::from_bits((mask >> (2 * j)) & 1 == 1, (mask >> (2 * j + 1)) & 1 == 1)
            })
            .collect();
        let weight = paulis.iter().filter(|p| !p.is_identity()).count();
        if weight == 0 || weight > max_cell_weight {
            continue;
        }
        let v = SymplecticVector::from_cell_paulis(&paulis);
        let image = m.apply(&v);
        if let Some(n) = translate_exponent(&v, &image) {
            found.push((v, n));
        }
    }
    found
}

/// The exponent n with image = u^n * v, if one exists.
fn translate_exponent(v: &SymplecticVector, image: &SymplecticVector) -> Option<i64> {
    let mut shift: Option<i64> = None;
    for (p, q) in v.comps().iter().zip(image.comps()) {
        if p.is_zero() != q.is_zero() {
            return None;
        }
        if p.is_zero() {
            continue;
        }
        let d = q.min_exp()? - p.min_exp()?;
        if q != &p.mul(&LaurentPoly::monomial(d)) {
            return None;
        }
        match shift {
            None => shift = Some(d),
            Some(s) if s == d => {}
            _ => return None,
        }
    }
    shift
}

pub const DEFAULT_RECURRENCE_BUDGET: u64 = 1 << 24;

/// Outcome of a bounded recurrence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceOutcome {
    /// Minimal t with M^t congruent to u^d times the identity mod u^m - 1.
    Found { tau: u64, shift_d: i64 },
    /// No recurrence up to the budget; tau exceeds this bound.
    LowerBound(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceResult {
    pub cells: usize,
    pub outcome: RecurrenceOutcome,
}

/// Scalar form check: `M == u^d * I` in the residue ring, for some d.
fn scalar_form(m: &Automaton) -> Option<i64> {
    let n = m.dim();
    let d = m.get(0, 0).as_monomial()?;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                if m.get(i, j).as_monomial() != Some(d) {
                    return None;
                }
            } else if !m.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some(d)
}

/// Minimal t <= budget with M^t a global shift on a ring of `cells` unit
/// cells, by stepwise multiplication in the residue ring.
pub fn recurrence_time(m: &Automaton, cells: usize, budget: u64) -> RecurrenceResult {
    let ctx = ResidueContext::new(cells).expect("cells >= 1");
    let base = m.reduce(&ctx);
    let mut acc = base.clone();
    let mut t = 1u64;
    loop {
        if let Some(d) = scalar_form(&acc) {
            return RecurrenceResult {
                cells,
                outcome: RecurrenceOutcome::Found { tau: t, shift_d: d },
            };
        }
        if t >= budget {
            return RecurrenceResult { cells, outcome: RecurrenceOutcome::LowerBound(t) };
        }
        acc = acc.compose(&base).expect("same dimension").reduce(&ctx);
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build, CircuitSpec};

    fn centered(name: &str) -> Automaton {
        let spec = CircuitSpec::preset(name).unwrap();
        let m = build(&spec).unwrap();
        if spec.cell_size() == 2 {
            m.power(2, None).center().unwrap().0
        } else {
            m
        }
    }

    #[test]
    fn zero_operator_stays_identity() {
        let m = centered("dense");
        let fp = evolve_operator(&m, &SymplecticVector::zero(2), 8);
        assert!(fp
            .rows()
            .iter()
            .all(|r| r.iter().all(|p| p.is_identity())));
    }

    #[test]
    fn trace_series_matches_direct_powers() {
        for name in ["dense", "df19", "kagome-t3"] {
            let m = centered(name);
            let traces = trace_series(&m, 20);
            let mut acc = m.clone();
            for t in 0..20 {
                assert_eq!(traces[t], acc.trace(), "{name} power {}", t + 1);
                acc = acc.compose(&m).unwrap();
            }
        }
    }

    #[test]
    fn bare_iswap_gliders() {
        let m = centered("bare-iswap");
        let gliders = detect_gliders(&m, 1);
        let z1 = SymplecticVector::from_cell_paulis(&[Pauli::Z, Pauli::I]);
        let z2 = SymplecticVector::from_cell_paulis(&[Pauli::I, Pauli::Z]);
        assert!(gliders.contains(&(z1, 1)));
        assert!(gliders.contains(&(z2, -1)));
        // Products of equal-velocity gliders are gliders with the same
        // velocity: check closure within each exponent class.
        let two = detect_gliders(&m, 2);
        for (v1, n1) in &gliders {
            for (v2, n2) in &gliders {
                if n1 == n2 && v1 != v2 {
                    let sum = v1.add(v2);
                    assert!(two.iter().any(|(v, n)| v == &sum && n == n1));
                }
            }
        }
    }

    #[test]
    fn kagome_t1_gliders() {
        let m = centered("kagome-t1");
        let gliders = detect_gliders(&m, 1);
        let z = |site| {
            let mut p = [Pauli::I; 4];
            p[site] = Pauli::Z;
            SymplecticVector::from_cell_paulis(&p)
        };
        assert!(gliders.contains(&(z(0), 1)));
        assert!(gliders.contains(&(z(1), 0)));
        assert!(gliders.contains(&(z(2), 0)));
        assert!(gliders.contains(&(z(3), -1)));
    }

    #[test]
    fn dense_has_no_single_site_gliders() {
        let m = centered("dense");
        assert!(detect_gliders(&m, 1).is_empty());
    }

    #[test]
    fn bare_iswap_recurrence_is_linear() {
        let m = centered("bare-iswap");
        for cells in [2, 3, 5, 8, 12] {
            let r = recurrence_time(&m, cells, 1 << 12);
            assert_eq!(
                r.outcome,
                RecurrenceOutcome::Found { tau: cells as u64, shift_d: 0 },
                "m={cells}"
            );
        }
    }

    #[test]
    fn fractal_fit_recovers_exact_power_law() {
        let cumulative: Vec<u64> = (0..1025).map(|t: u64| t * t).collect();
        let (d, err) = fractal_dimension(&cumulative, 4, 1024).unwrap();
        assert!((d - 2.0).abs() < 1e-9);
        assert!(err < 1e-9);
    }
}

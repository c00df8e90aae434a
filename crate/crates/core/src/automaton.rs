//! Symplectic cellular automata over the Laurent ring.
//!
//! An automaton acts on Pauli operators of an infinite chain of unit cells,
//! written as vectors of Laurent polynomials via the algebraic Fourier
//! transform: component 2j holds the X part on site j of the cell, component
//! 2j+1 the Z part, and the coefficient of u^n addresses cell n.

use std::fmt;

use thiserror::Error;

use crate::pauli::Pauli;
use crate::polyring::{BivarPoly, LaurentPoly, PolyError, RatFunc, ResidueContext, YPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("determinant {0} is not a balanced power of u; cannot center")]
    NotCenterable(String),
    #[error("minimal polynomial verification failed")]
    MinPolyVerification,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("cannot parse matrix from {0:?}")]
    Parse(String),
}

/// A Pauli string on the infinite chain, in algebraic Fourier form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticVector {
    a: usize,
    comps: Vec<LaurentPoly>,
}

impl SymplecticVector {
    pub fn zero(a: usize) -> Self {
        SymplecticVector { a, comps: vec![LaurentPoly::zero(); 2 * a] }
    }

    /// X on site `site` of cell 0.
    pub fn basis_x(a: usize, site: usize) -> Self {
        let mut v = Self::zero(a);
        v.comps[2 * site] = LaurentPoly::one();
        v
    }

    /// Z on site `site` of cell 0.
    pub fn basis_z(a: usize, site: usize) -> Self {
        let mut v = Self::zero(a);
        v.comps[2 * site + 1] = LaurentPoly::one();
        v
    }

    /// The 2a basis vectors in component order X1, Z1, X2, Z2, ...
    pub fn basis(a: usize) -> Vec<Self> {
        (0..2 * a)
            .map(|i| {
                let mut v = Self::zero(a);
                v.comps[i] = LaurentPoly::one();
                v
            })
            .collect()
    }

    /// A Pauli string within cell 0, one label per site.
    pub fn from_cell_paulis(paulis: &[Pauli]) -> Self {
        let mut v = Self::zero(paulis.len());
        for (j, p) in paulis.iter().enumerate() {
            let (x, z) = p.bits();
            if x {
                v.comps[2 * j] = LaurentPoly::one();
            }
            if z {
                v.comps[2 * j + 1] = LaurentPoly::one();
            }
        }
        v
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn comps(&self) -> &[LaurentPoly] {
        &self.comps
    }

    pub fn from_comps(comps: Vec<LaurentPoly>) -> Result<Self, AutomatonError> {
        if comps.len() % 2 != 0 || comps.is_empty() {
            return Err(AutomatonError::DimensionMismatch(format!(
                "component count {} is not a positive even number",
                comps.len()
            )));
        }
        Ok(SymplecticVector { a: comps.len() / 2, comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.a, other.a);
        SymplecticVector {
            a: self.a,
            comps: self.comps.iter().zip(&other.comps).map(|(p, q)| p.add(q)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        SymplecticVector { a: self.a, comps: self.comps.iter().map(|p| p.mul(c)).collect() }
    }

    pub fn reduce(&self, ctx: &ResidueContext) -> Self {
        SymplecticVector { a: self.a, comps: self.comps.iter().map(|p| p.reduce(ctx)).collect() }
    }

    /// Pauli label on site `site` of cell `cell`.
    pub fn pauli_at(&self, site: usize, cell: i64) -> Pauli {
        Pauli::from_bits(self.comps[2 * site].coeff(cell), self.comps[2 * site + 1].coeff(cell))
    }

    /// Range of cells touched by the support, inclusive; None when zero.
    pub fn cell_range(&self) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for p in &self.comps {
            if let (Some(l), Some(h)) = (p.min_exp(), p.max_exp()) {
                lo = lo.min(l);
                hi = hi.max(h);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// The bar-twisted symplectic pairing with another vector.
    pub fn pairing(&self, other: &Self) -> LaurentPoly {
        assert_eq!(self.a, other.a);
        let mut acc = LaurentPoly::zero();
        for j in 0..self.a {
            acc = acc.add(&self.comps[2 * j].bar().mul(&other.comps[2 * j + 1]));
            acc = acc.add(&self.comps[2 * j + 1].bar().mul(&other.comps[2 * j]));
        }
        acc
    }
}

/// A 2a x 2a matrix over the Laurent ring; columns are the images of the
/// basis operators X1, Z1, ..., Xa, Za.
#[derive(Clone)]
pub struct Automaton {
    a: usize,
    /// Row-major, dimension (2a)^2.
    entries: Vec<LaurentPoly>,
    layers_per_step: usize,
    label: String,
}

/// Equality is matrix equality; the label and layer count are metadata.
impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.entries == other.entries
    }
}

impl Eq for Automaton {}

impl Automaton {
    pub fn new(
        a: usize,
        entries: Vec<LaurentPoly>,
        layers_per_step: usize,
        label: impl Into<String>,
    ) -> Result<Self, AutomatonError> {
        if a == 0 || entries.len() != 4 * a * a {
            return Err(AutomatonError::DimensionMismatch(format!(
                "{} entries for a={a}",
                entries.len()
            )));
        }
        Ok(Automaton { a, entries, layers_per_step, label: label.into() })
    }

    pub fn identity(a: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); 4 * a * a];
        for i in 0..2 * a {
            entries[i * 2 * a + i] = LaurentPoly::one();
        }
        Automaton { a, entries, layers_per_step: 0, label: "identity".into() }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn dim(&self) -> usize {
        2 * self.a
    }

    pub fn layers_per_step(&self) -> usize {
        self.layers_per_step
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_layers(mut self, layers_per_step: usize) -> Self {
        self.layers_per_step = layers_per_step;
        self
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: LaurentPoly) {
        let n = self.dim();
        self.entries[row * n + col] = p;
    }

    /// Matrix product; `compose(m1, m2)` applies `m2` first, then `m1`.
    pub fn compose(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        if self.a != other.a {
            return Err(AutomatonError::DimensionMismatch(format!(
                "a={} vs a={}",
                self.a, other.a
            )));
        }
        let n = self.dim();
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let rhs = other.get(k, j);
                    if rhs.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&lhs.mul(rhs));
                }
            }
        }
        Ok(Automaton {
            a: self.a,
            entries,
            layers_per_step: self.layers_per_step + other.layers_per_step,
            label: self.label.clone(),
        })
    }

    /// `M^t`, optionally in the residue ring of `ctx`.
    pub fn power(&self, t: u64, ctx: Option<&ResidueContext>) -> Automaton {
        let mut acc = Automaton::identity(self.a);
        let mut base = match ctx {
            Some(c) => self.reduce(c),
            None => self.clone(),
        };
        let mut rest = t;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.compose(&base).expect("same dimension");
                if let Some(c) = ctx {
                    acc = acc.reduce(c);
                }
            }
            rest >>= 1;
            if rest > 0 {
                base = base.compose(&base).expect("same dimension");
                if let Some(c) = ctx {
                    base = base.reduce(c);
                }
            }
        }
        acc.layers_per_step = self.layers_per_step * t as usize;
        acc.label = self.label.clone();
        acc
    }

    pub fn reduce(&self, ctx: &ResidueContext) -> Automaton {
        Automaton {
            a: self.a,
            entries: self.entries.iter().map(|p| p.reduce(ctx)).collect(),
            layers_per_step: self.layers_per_step,
            label: self.label.clone(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Automaton {
        Automaton {
            a: self.a,
            entries: self.entries.iter().map(|p| p.mul(c)).collect(),
            layers_per_step: self.layers_per_step,
            label: self.label.clone(),
        }
    }

    pub fn apply(&self, v: &SymplecticVector) -> SymplecticVector {
        assert_eq!(v.a, self.a);
        let n = self.dim();
        let mut comps = vec![LaurentPoly::zero(); n];
        for (j, c) in v.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let e = self.get(i, j);
                if !e.is_zero() {
                    comps[i] = comps[i].add(&e.mul(c));
                }
            }
        }
        SymplecticVector { a: self.a, comps }
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for i in 0..self.dim() {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// True iff the bar-twisted symplectic form is preserved on all basis pairs.
    pub fn is_symplectic(&self) -> bool {
        let basis = SymplecticVector::basis(self.a);
        let images: Vec<_> = basis.iter().map(|v| self.apply(v)).collect();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if images[i].pairing(&images[j]) != basis[i].pairing(&basis[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse via the symplectic relation M^-1 = J bar(M)^T J.
    pub fn inverse(&self) -> Result<Automaton, AutomatonError> {
        if !self.is_symplectic() {
            return Err(AutomatonError::NotSymplectic);
        }
        let n = self.dim();
        let mut entries = vec![LaurentPoly::zero(); n * n];
        // J swaps the X and Z components on every site.
        let flip = |i: usize| i ^ 1;
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(flip(j), flip(i)).bar();
            }
        }
        Ok(Automaton {
            a: self.a,
            entries,
            layers_per_step: self.layers_per_step,
            label: format!("{}^-1", self.label),
        })
    }

    /// Characteristic polynomial det(y*1 - M), by the division-free
    /// Berkowitz recursion (signs are immaterial over F2).
    pub fn char_poly(&self) -> BivarPoly {
        let n = self.dim();
        // Coefficient vector in descending degree order, starting from the
        // 1x1 principal minor and growing one row/column at a time.
        let mut coeffs = vec![LaurentPoly::one(), self.get(0, 0).clone()];
        for k in 2..=n {
            let corner = self.get(k - 1, k - 1);
            // v = (1, corner, R C, R M C, R M^2 C, ...) for the principal
            // (k-1) block M, row R below it and column C beside it.
            let mut v = vec![LaurentPoly::one(), corner.clone()];
            let mut w: Vec<LaurentPoly> = (0..k - 1).map(|i| self.get(i, k - 1).clone()).collect();
            for _ in 0..k - 1 {
                let mut dot = LaurentPoly::zero();
                for i in 0..k - 1 {
                    dot = dot.add(&self.get(k - 1, i).mul(&w[i]));
                }
                v.push(dot);
                let mut next = vec![LaurentPoly::zero(); k - 1];
                for (i, ni) in next.iter_mut().enumerate() {
                    for j in 0..k - 1 {
                        if !self.get(i, j).is_zero() && !w[j].is_zero() {
                            *ni = ni.add(&self.get(i, j).mul(&w[j]));
                        }
                    }
                }
                w = next;
            }
            // Multiply by the (k+1) x k Toeplitz matrix with first column v:
            // a truncated convolution of the previous coefficients with v.
            let mut next = vec![LaurentPoly::zero(); k + 1];
            for (col, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (row, e) in v.iter().enumerate() {
                    if col + row <= k {
                        next[col + row] = next[col + row].add(&c.mul(e));
                    }
                }
            }
            coeffs = next;
        }
        coeffs.reverse();
        BivarPoly::from_coeffs(coeffs)
    }

    /// Substitute the automaton into a polynomial in y.
    pub fn eval_poly(&self, p: &BivarPoly) -> Automaton {
        let mut acc = Automaton::identity(self.a).scale(&LaurentPoly::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.compose(self).expect("same dimension");
            acc = add_matrices(&acc, &Automaton::identity(self.a).scale(c));
        }
        acc
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Minimal polynomial via Krylov sequences over the fraction field F2(u),
    /// verified by substitution back over the Laurent ring.
    pub fn min_poly(&self) -> Result<BivarPoly, AutomatonError> {
        let n = self.dim();
        let mut mu = YPoly::from_coeffs(vec![RatFunc::one()]);
        for start in 0..n {
            let local = self.local_annihilator(start)?;
            mu = mu.lcm(&local);
            if mu.degree() == Some(n) {
                break;
            }
        }
        let mu = BivarPoly::from_ypoly_exact(&mu.into_monic())?;
        if !self.eval_poly(&mu).is_zero_matrix() {
            return Err(AutomatonError::MinPolyVerification);
        }
        Ok(mu)
    }

    /// Least-degree monic annihilator of the Krylov sequence from basis
    /// vector `start`.
    fn local_annihilator(&self, start: usize) -> Result<YPoly, AutomatonError> {
        let n = self.dim();
        let mut krylov: Vec<Vec<RatFunc>> = Vec::new();
        let mut v = SymplecticVector::basis(self.a)[start].clone();
        for d in 0..=n {
            let w: Vec<RatFunc> = v.comps.iter().map(RatFunc::from_laurent).collect();
            if let Some(coeffs) = solve_in_span(&krylov, &w)? {
                let mut poly = coeffs;
                poly.push(RatFunc::one());
                return Ok(YPoly::from_coeffs(poly));
            }
            krylov.push(w);
            if d < n {
                v = self.apply(&v);
            }
        }
        unreachable!("a vector in dimension n has an annihilator of degree <= n")
    }

    /// Remove the global shift factor: requires det = u^(2a*d); divides all
    /// entries by u^d and reports d.
    pub fn center(&self) -> Result<(Automaton, i64), AutomatonError> {
        let chi = self.char_poly();
        let det = chi.coeff(0);
        let n = self.dim() as i64;
        match det.as_monomial() {
            Some(e) if e % n == 0 => {
                let d = e / n;
                let mut c = self.scale(&LaurentPoly::monomial(-d));
                c.label = format!("{} centered", self.label);
                Ok((c, d))
            }
            _ => Err(AutomatonError::NotCenterable(det.to_string())),
        }
    }

    /// Reorder rows and columns: position i of the result corresponds to
    /// original component `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Automaton, AutomatonError> {
        let n = self.dim();
        if order.len() != n {
            return Err(AutomatonError::DimensionMismatch(format!(
                "permutation length {} for dimension {n}",
                order.len()
            )));
        }
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(order[i], order[j]).clone();
            }
        }
        Ok(Automaton {
            a: self.a,
            entries,
            layers_per_step: self.layers_per_step,
            label: self.label.clone(),
        })
    }

    /// Apply `bar` to every entry.
    pub fn bar(&self) -> Automaton {
        Automaton {
            a: self.a,
            entries: self.entries.iter().map(LaurentPoly::bar).collect(),
            layers_per_step: self.layers_per_step,
            label: self.label.clone(),
        }
    }

    /// Parse the matrix text form: rows separated by ';', entries by ','.
    pub fn from_text(text: &str, layers_per_step: usize) -> Result<Automaton, AutomatonError> {
        let rows: Vec<&str> = text.split(';').collect();
        let n = rows.len();
        if n == 0 || n % 2 != 0 {
            return Err(AutomatonError::Parse(text.to_string()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != n {
                return Err(AutomatonError::Parse(text.to_string()));
            }
            for c in cols {
                entries.push(c.trim().parse::<LaurentPoly>().map_err(AutomatonError::Poly)?);
            }
        }
        Automaton::new(n / 2, entries, layers_per_step, "parsed")
    }
}

fn add_matrices(m1: &Automaton, m2: &Automaton) -> Automaton {
    assert_eq!(m1.a, m2.a);
    Automaton {
        a: m1.a,
        entries: m1.entries.iter().zip(&m2.entries).map(|(p, q)| p.add(q)).collect(),
        layers_per_step: m1.layers_per_step,
        label: m1.label.clone(),
    }
}

/// If `target` lies in the span of `basis`, return the coefficients.
fn solve_in_span(
    basis: &[Vec<RatFunc>],
    target: &[RatFunc],
) -> Result<Option<Vec<RatFunc>>, AutomatonError> {
    let rows = target.len();
    let cols = basis.len();
    // Augmented system basis^T x = target, eliminated over F2(u).
    let mut aug: Vec<Vec<RatFunc>> = (0..rows)
        .map(|r| {
            let mut row: Vec<RatFunc> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(pr) = (r0..rows).find(|&r| !aug[r][c].is_zero()) else {
            continue;
        };
        aug.swap(r0, pr);
        let inv = RatFunc::one().div(&aug[r0][c]).map_err(AutomatonError::Poly)?;
        for x in aug[r0].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for k in 0..=cols {
                    let delta = aug[r0][k].mul(&f);
                    aug[r][k] = aug[r][k].add(&delta);
                }
            }
        }
        pivot_rows.push((r0, c));
        r0 += 1;
    }
    // Inconsistent if any zero row has a nonzero augmented entry.
    for r in r0..rows {
        if !aug[r][cols].is_zero() {
            return Ok(None);
        }
    }
    let mut coeffs = vec![RatFunc::zero(); cols];
    for &(r, c) in &pivot_rows {
        coeffs[c] = aug[r][cols].clone();
    }
    Ok(Some(coeffs))
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Automaton a={} [{}]", self.a, self.label)?;
        let n = self.dim();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        Ok(())
    }
}

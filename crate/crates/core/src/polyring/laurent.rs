use std::fmt;
use std::str::FromStr;

use super::PolyError;

const WORD_BITS: usize = 64;

/// A Laurent polynomial over F2 in the variable `u`.
///
/// Coefficients are bit-packed into words; bit `i` of the packed vector is
/// the coefficient of `u^(min_exp + i)`. Canonical form: the zero polynomial
/// has empty storage and `min_exp = 0`; otherwise both the lowest and the
/// highest stored coefficient are 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    words: Vec<u64>,
    min_exp: i64,
    /// Number of coefficients stored (degree span); 0 for the zero polynomial.
    len: usize,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { words: Vec::new(), min_exp: 0, len: 0 }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The single term `u^k`.
    pub fn monomial(k: i64) -> Self {
        LaurentPoly { words: vec![1], min_exp: k, len: 1 }
    }

    /// Build from a list of exponents with coefficient 1 (duplicates cancel).
    pub fn from_exponents(exps: &[i64]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p = p.add(&Self::monomial(e));
        }
        p
    }

    /// Raw construction from packed bits; canonicalizes.
    pub(crate) fn from_words(words: Vec<u64>, min_exp: i64) -> Self {
        let mut p = LaurentPoly { len: words.len() * WORD_BITS, words, min_exp };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        let lo = lowest_bit(&self.words);
        let hi = highest_bit(&self.words);
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                shift_down(&mut self.words, lo);
                self.min_exp += lo as i64;
                self.len = hi - lo + 1;
                self.words.truncate(self.len.div_ceil(WORD_BITS));
            }
            _ => {
                self.words.clear();
                self.min_exp = 0;
                self.len = 0;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    pub fn is_one(&self) -> bool {
        self.len == 1 && self.min_exp == 0
    }

    /// True iff the polynomial is a single term `u^k`.
    pub fn as_monomial(&self) -> Option<i64> {
        if self.len == 1 {
            Some(self.min_exp)
        } else {
            None
        }
    }

    /// Lowest exponent with a nonzero coefficient; None for zero.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    /// Highest exponent with a nonzero coefficient; None for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp + self.len as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> bool {
        let i = k - self.min_exp;
        if self.is_zero() || i < 0 || i as usize >= self.len {
            return false;
        }
        let i = i as usize;
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn num_terms(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with coefficient 1, in increasing order.
    pub fn support(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.num_terms());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(self.min_exp + (wi * WORD_BITS + b) as i64);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min_exp.min(other.min_exp);
        let hi = (self.min_exp + self.len as i64).max(other.min_exp + other.len as i64);
        let span = (hi - min) as usize;
        let mut words = vec![0u64; span.div_ceil(WORD_BITS)];
        xor_shifted(&mut words, &self.words, (self.min_exp - min) as usize);
        xor_shifted(&mut words, &other.words, (other.min_exp - min) as usize);
        LaurentPoly::from_words(words, min)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        // Iterate the terms of the sparser factor, shift-XOR the denser one.
        let (sparse, dense) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        let span = self.len + other.len - 1;
        let mut words = vec![0u64; span.div_ceil(WORD_BITS)];
        for (wi, &w) in sparse.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                xor_shifted(&mut words, &dense.words, wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        LaurentPoly::from_words(words, self.min_exp + other.min_exp)
    }

    /// Multiply by `u^k`.
    pub fn shifted(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut p = self.clone();
        p.min_exp += k;
        p
    }

    /// The involution `u -> 1/u`.
    pub fn bar(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut words = vec![0u64; self.words.len()];
        for i in 0..self.len {
            let j = self.len - 1 - i;
            if self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1 {
                words[j / WORD_BITS] |= 1 << (j % WORD_BITS);
            }
        }
        LaurentPoly::from_words(words, -(self.min_exp + self.len as i64 - 1))
    }

    /// Fold exponents modulo `ctx.m` into `[0, m)`.
    pub fn reduce(&self, ctx: &ResidueContext) -> LaurentPoly {
        let m = ctx.m() as i64;
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut words = vec![0u64; (ctx.m()).div_ceil(WORD_BITS)];
        // Align so the first stored coefficient lands on its residue class.
        let offset = self.min_exp.rem_euclid(m) as usize;
        let mut pos = offset;
        for i in 0..self.len {
            if self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1 {
                words[pos / WORD_BITS] ^= 1 << (pos % WORD_BITS);
            }
            pos += 1;
            if pos == ctx.m() {
                pos = 0;
            }
        }
        LaurentPoly::from_words(words, 0)
    }

    pub fn pow(&self, n: u64) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in self.support() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "u")?,
                e => write!(f, "u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let e = if term == "1" {
                0
            } else if term == "u" {
                1
            } else if let Some(rest) = term.strip_prefix("u^") {
                rest.parse::<i64>().map_err(|_| PolyError::Parse(s.to_string()))?
            } else {
                return Err(PolyError::Parse(s.to_string()));
            };
            exps.push(e);
        }
        // The text form never repeats a term; repeated terms are a parse error.
        let p = LaurentPoly::from_exponents(&exps);
        if p.num_terms() != exps.len() {
            return Err(PolyError::Parse(s.to_string()));
        }
        Ok(p)
    }
}

/// The residue ring F2[u,1/u] / (u^m - 1) on `m` unit cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueContext {
    m: usize,
}

impl ResidueContext {
    pub fn new(m: usize) -> Result<Self, PolyError> {
        if m == 0 {
            return Err(PolyError::BadModulus);
        }
        Ok(ResidueContext { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD_BITS + words[i].trailing_zeros() as usize)
}

fn highest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| i * WORD_BITS + 63 - words[i].leading_zeros() as usize)
}

/// dst ^= src << shift (in bits); dst must be long enough.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (wshift, bshift) = (shift / WORD_BITS, shift % WORD_BITS);
    if bshift == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[wshift + i] ^= w;
        }
    } else {
        let mut carry = 0u64;
        for (i, &w) in src.iter().enumerate() {
            dst[wshift + i] ^= (w << bshift) | carry;
            carry = w >> (WORD_BITS - bshift);
        }
        if carry != 0 {
            dst[wshift + src.len()] ^= carry;
        }
    }
}

/// In-place right shift by `shift` bits.
fn shift_down(words: &mut [u64], shift: usize) {
    let (wshift, bshift) = (shift / WORD_BITS, shift % WORD_BITS);
    let n = words.len();
    if wshift > 0 {
        words.rotate_left(wshift);
        for w in &mut words[n - wshift..] {
            *w = 0;
        }
    }
    if bshift > 0 {
        for i in 0..n {
            let next = if i + 1 < n { words[i + 1] } else { 0 };
            words[i] = (words[i] >> bshift) | (next << (WORD_BITS - bshift));
        }
    }
}

use super::{LaurentPoly, PolyError};

/// An ordinary polynomial over F2 (non-negative exponents only), used as
/// numerator/denominator inside the fraction field F2(u).
///
/// Represented as a canonical-form [`LaurentPoly`] whose `min_exp >= 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly2(LaurentPoly);

impl Poly2 {
    pub fn zero() -> Self {
        Poly2(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Poly2(LaurentPoly::one())
    }

    pub fn monomial(k: u32) -> Self {
        Poly2(LaurentPoly::monomial(k as i64))
    }

    /// Shift a Laurent polynomial up until all exponents are non-negative.
    /// Returns the polynomial together with the power of u it was divided by.
    pub fn from_laurent(p: &LaurentPoly) -> (Self, u32) {
        match p.min_exp() {
            Some(m) if m < 0 => (Poly2(p.shifted(-m)), (-m) as u32),
            _ => (Poly2(p.clone()), 0),
        }
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn degree(&self) -> Option<i64> {
        self.0.max_exp()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        Poly2(self.0.add(&other.0))
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        Poly2(self.0.mul(&other.0))
    }

    /// Euclidean division: self = q*div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly2) -> Result<(Poly2, Poly2), PolyError> {
        if div.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let d = div.degree().unwrap();
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let t = LaurentPoly::monomial(rd - d);
            quo = quo.add(&t);
            rem = Poly2(rem.0.add(&div.0.mul(&t)));
        }
        Ok((Poly2(quo), rem))
    }

    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// True iff self is u^k for some k >= 0.
    pub fn as_monomial(&self) -> Option<u32> {
        self.0.as_monomial().map(|k| k as u32)
    }
}

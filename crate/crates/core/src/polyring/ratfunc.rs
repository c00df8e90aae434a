use super::{LaurentPoly, Poly2, PolyError};

/// A rational function over F2(u), stored as a reduced fraction of ordinary
/// polynomials. Over F2 every nonzero polynomial is monic, so the reduced
/// form is unique.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly2::one(), den: Poly2::one() }
    }

    pub fn new(num: Poly2, den: Poly2) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut r = RatFunc { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (num, k) = Poly2::from_laurent(p);
        RatFunc { num, den: Poly2::monomial(k) }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly2::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.divrem(&g).expect("nonzero gcd").0;
            self.den = self.den.divrem(&g).expect("nonzero gcd").0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    /// Convert back to a Laurent polynomial; the denominator must be u^k.
    pub fn to_laurent(&self) -> Result<LaurentPoly, PolyError> {
        match self.den.as_monomial() {
            Some(k) => Ok(self.num.as_laurent().shifted(-(k as i64))),
            None => Err(PolyError::NonMonomialDenominator(format!("{}", self.den.as_laurent()))),
        }
    }
}

/// A polynomial in `y` with coefficients in F2(u), ascending degree order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YPoly {
    coeffs: Vec<RatFunc>,
}

impl YPoly {
    pub fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero);
            out.push(a.add(&b));
        }
        YPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &YPoly) -> YPoly {
        if self.is_zero() || other.is_zero() {
            return YPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        YPoly::from_coeffs(out)
    }

    pub fn divrem(&self, div: &YPoly) -> Result<(YPoly, YPoly), PolyError> {
        let Some(d) = div.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let lead_inv = RatFunc::one().div(div.leading().unwrap())?;
        let mut rem = self.clone();
        let mut quo = vec![RatFunc::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = rem.leading().unwrap().mul(&lead_inv);
            quo[rd - d] = c.clone();
            let mut sub = vec![RatFunc::zero(); rd - d];
            sub.push(c);
            let sub = YPoly::from_coeffs(sub);
            rem = rem.add(&sub.mul(div));
        }
        Ok((YPoly::from_coeffs(quo), rem))
    }

    pub fn gcd(&self, other: &YPoly) -> YPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.into_monic()
    }

    pub fn lcm(&self, other: &YPoly) -> YPoly {
        if self.is_zero() || other.is_zero() {
            return YPoly::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.divrem(&g).expect("gcd divides");
        q.mul(other).into_monic()
    }

    /// Scale so the leading coefficient is 1.
    pub fn into_monic(self) -> YPoly {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = RatFunc::one().div(l).expect("nonzero leading coefficient");
                let coeffs = self.coeffs.iter().map(|c| c.mul(&inv)).collect();
                YPoly::from_coeffs(coeffs)
            }
        }
    }
}

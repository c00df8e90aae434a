use std::fmt;

use super::{LaurentPoly, PolyError, Poly2, RatFunc, YPoly};

/// A polynomial in `y` whose coefficients are Laurent polynomials in `u`,
/// ascending degree order with a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivarPoly {
    coeffs: Vec<LaurentPoly>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BivarPoly { coeffs: vec![LaurentPoly::one()] }
    }

    /// The variable `y` itself.
    pub fn y() -> Self {
        BivarPoly { coeffs: vec![LaurentPoly::zero(), LaurentPoly::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        BivarPoly { coeffs }
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(LaurentPoly::is_one)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        BivarPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BivarPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> BivarPoly {
        BivarPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Substitute a Laurent polynomial for `y`.
    pub fn eval(&self, y: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(y).add(c);
        }
        acc
    }

    /// Formal derivative in `y` (char-2: even-degree terms vanish).
    pub fn derivative(&self) -> BivarPoly {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if i % 2 == 1 {
                out.push(c.clone());
            } else {
                out.push(LaurentPoly::zero());
            }
            // The derivative of y^i is i*y^(i-1); over F2 the coefficient is i mod 2.
        }
        BivarPoly::from_coeffs(out)
    }

    /// Division with remainder over the fraction field F2(u); the results are
    /// cleared back to Laurent form, which requires every denominator to be a
    /// power of u (always the case when the divisor's leading coefficient is
    /// a monomial, e.g. for monic divisors).
    pub fn divrem(&self, div: &BivarPoly) -> Result<(BivarPoly, BivarPoly), PolyError> {
        let (q, r) = self.to_ypoly().divrem(&div.to_ypoly())?;
        Ok((Self::from_ypoly_exact(&q)?, Self::from_ypoly_exact(&r)?))
    }

    /// True iff `div` divides self exactly over the fraction field.
    pub fn is_divisible_by(&self, div: &BivarPoly) -> bool {
        match self.to_ypoly().divrem(&div.to_ypoly()) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// The squarefree part, via gcd with the derivative. When the derivative
    /// vanishes identically (char-2 perfect square), recurse on a square root.
    pub fn squarefree_part(&self) -> Result<BivarPoly, PolyError> {
        if self.is_zero() || self.degree() == Some(0) {
            return Ok(self.clone());
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.sqrt().ok_or_else(|| PolyError::Parse(format!("{self}")))?.squarefree_part();
        }
        let g = self.to_ypoly().gcd(&d.to_ypoly());
        let (q, _) = self.to_ypoly().divrem(&g)?;
        Self::from_ypoly_exact(&q.into_monic())
    }

    /// Exact square root under the Frobenius endomorphism, if one exists:
    /// requires all odd y-degrees absent and every coefficient a square.
    pub fn sqrt(&self) -> Option<BivarPoly> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            out.push(laurent_sqrt(c)?);
        }
        Some(BivarPoly::from_coeffs(out))
    }

    pub fn to_ypoly(&self) -> YPoly {
        YPoly::from_coeffs(self.coeffs.iter().map(RatFunc::from_laurent).collect())
    }

    /// Convert from F2(u) coefficients, requiring pure u-power denominators.
    pub fn from_ypoly_exact(p: &YPoly) -> Result<BivarPoly, PolyError> {
        let coeffs = p.coeffs().iter().map(RatFunc::to_laurent).collect::<Result<_, _>>()?;
        Ok(BivarPoly::from_coeffs(coeffs))
    }

    /// Convert from F2(u) coefficients by clearing all denominators.
    pub fn from_ypoly_cleared(p: &YPoly) -> BivarPoly {
        let mut lcm = Poly2::one();
        for c in p.coeffs() {
            let g = lcm.gcd(c.den());
            lcm = lcm.divrem(&g).expect("nonzero gcd").0.mul(c.den());
        }
        let scale = RatFunc::from_laurent(lcm.as_laurent());
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.mul(&scale).to_laurent().expect("denominators cleared"))
            .collect();
        BivarPoly::from_coeffs(coeffs)
    }
}

/// Square root of a Laurent polynomial under Frobenius (all exponents even).
fn laurent_sqrt(p: &LaurentPoly) -> Option<LaurentPoly> {
    let exps = p.support();
    if exps.iter().any(|e| e % 2 != 0) {
        return None;
    }
    Some(LaurentPoly::from_exponents(&exps.iter().map(|e| e / 2).collect::<Vec<_>>()))
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if c.is_one() {
                        // bare power of y
                    } else if c.num_terms() == 1 {
                        write!(f, "{c}*")?;
                    } else {
                        write!(f, "({c})*")?;
                    }
                    if i == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn glider_chi() -> BivarPoly {
        BivarPoly::from_coeffs(vec![l("1"), l("u^-1+u"), l("1")])
    }

    #[test]
    fn mul_squares() {
        let y1 = BivarPoly::from_coeffs(vec![l("1"), l("1")]);
        assert_eq!(y1.mul(&y1), BivarPoly::from_coeffs(vec![l("1"), l("0"), l("1")]));
    }

    #[test]
    fn glider_chi_has_root_u() {
        // y = u solves y^2 + (u + 1/u) y + 1 = 0.
        assert!(glider_chi().eval(&l("u")).is_zero());
        assert!(glider_chi().eval(&l("u^-1")).is_zero());
        let div = BivarPoly::from_coeffs(vec![l("u"), l("1")]);
        let (_, r) = glider_chi().divrem(&div).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_part_handles_vanishing_derivative() {
        let sq = glider_chi().mul(&glider_chi());
        assert!(sq.derivative().is_zero());
        assert_eq!(sq.squarefree_part().unwrap(), glider_chi());
    }

    #[test]
    fn display_format() {
        assert_eq!(glider_chi().to_string(), "1+(u^-1+u)*y+y^2");
        assert_eq!(BivarPoly::y().to_string(), "y");
        assert_eq!(BivarPoly::zero().to_string(), "0");
    }
}

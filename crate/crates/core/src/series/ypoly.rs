//! Polynomials in the Hirzebruch parameter `y` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// `c[0] + c[1] y + c[2] y^2 + ...` with no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YPoly {
    coeffs: Vec<Rational>,
}

impl YPoly {
    pub fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        YPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        YPoly::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        YPoly::constant(Rational::from(n))
    }

    /// The monomial `y`.
    pub fn y() -> Self {
        YPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return YPoly::zero();
        }
        YPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * y + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(YPoly::one(), |acc, _| &acc * self)
    }

    pub fn add_assign_ref(&mut self, rhs: &YPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl From<Rational> for YPoly {
    fn from(c: Rational) -> Self {
        YPoly::constant(c)
    }
}

impl Add<&YPoly> for &YPoly {
    type Output = YPoly;
    fn add(self, rhs: &YPoly) -> YPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&YPoly> for &YPoly {
    type Output = YPoly;
    fn sub(self, rhs: &YPoly) -> YPoly {
        self + &(-rhs)
    }
}

impl Neg for &YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&YPoly> for &YPoly {
    type Output = YPoly;
    fn mul(self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        YPoly::from_coeffs(out)
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*y")?,
                _ => write!(f, "{c}*y^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_sentinel_degree() {
        assert_eq!(YPoly::zero().degree(), None);
        assert_eq!(YPoly::from_coeffs(vec![Rational::zero(); 3]).degree(), None);
        assert_eq!(YPoly::y().degree(), Some(1));
    }

    #[test]
    fn arithmetic_and_eval() {
        let one_plus_y = &YPoly::one() + &YPoly::y();
        let sq = &one_plus_y * &one_plus_y;
        assert_eq!(sq.coeffs(), &[1.into(), 2.into(), 1.into()]);
        assert_eq!(sq.eval(&Rational::from(-1)), Rational::zero());
        assert_eq!((&sq - &sq), YPoly::zero());
        assert_eq!(sq.to_string(), "1 + 2*y + 1*y^2");
    }
}

//! Truncated multivariate polynomial rings `Q[y][g_1..g_k]/(g_i^{d_i})`.
//!
//! Every ring in this crate (Chow rings, K-rings) is of this shape: all
//! relations are monomial, so normal forms are just truncation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, YPoly};
use crate::error::{structural, Error, Result};

/// Exponent vector `(e_1, ..., e_k)` with `e_i < d_i`.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NilpotentRing {
    symbol: char,
    orders: Vec<u32>,
}

impl NilpotentRing {
    /// `orders[i] = d_i`, so generator `i` satisfies `g_i^{d_i} = 0`.
    pub fn new(symbol: char, orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Domain("truncation order must be >= 1".into()));
        }
        Ok(NilpotentRing { symbol, orders })
    }

    pub fn symbol(&self) -> char {
        self.symbol
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn rank(&self) -> usize {
        self.orders.iter().map(|&d| d as usize).product()
    }

    /// Top exponent of generator `i` (`d_i - 1`).
    pub fn top(&self, i: usize) -> u32 {
        self.orders[i] - 1
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        exps.len() == self.orders.len() && exps.iter().zip(&self.orders).all(|(e, d)| e < d)
    }

    /// All admissible exponent vectors in lexicographic order. This is the
    /// canonical basis used for operator matrices.
    pub fn basis(&self) -> Vec<Exponents> {
        let mut out = vec![Vec::with_capacity(self.orders.len())];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Position of an exponent vector in [`NilpotentRing::basis`].
    pub fn basis_index(&self, exps: &[u32]) -> usize {
        exps.iter().zip(&self.orders).fold(0usize, |acc, (&e, &d)| acc * d as usize + e as usize)
    }

    /// Highest total degree of a nonzero monomial.
    pub fn top_degree(&self) -> u32 {
        self.orders.iter().map(|d| d - 1).sum()
    }
}

/// Element of a [`NilpotentRing`]: sparse map from exponent vectors to
/// `Q[y]` coefficients, never storing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: NilpotentRing,
    terms: BTreeMap<Exponents, YPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl RingElement {
    pub fn zero(ring: &NilpotentRing) -> Self {
        RingElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &NilpotentRing) -> Self {
        RingElement::constant(ring, YPoly::one())
    }

    pub fn constant(ring: &NilpotentRing, c: YPoly) -> Self {
        RingElement::monomial(ring, vec![0; ring.generator_count()], c)
    }

    pub fn from_int(ring: &NilpotentRing, n: i64) -> Self {
        RingElement::constant(ring, YPoly::from_int(n))
    }

    /// `c * g^exps`; zero if any exponent is truncated away.
    pub fn monomial(ring: &NilpotentRing, exps: Exponents, c: YPoly) -> Self {
        assert_eq!(exps.len(), ring.generator_count(), "exponent vector length");
        let mut el = RingElement::zero(ring);
        if ring.admits(&exps) && !c.is_zero() {
            el.terms.insert(exps, c);
        }
        el
    }

    /// The generator `g_i`.
    pub fn generator(ring: &NilpotentRing, i: usize) -> Self {
        let mut exps = vec![0; ring.generator_count()];
        exps[i] = 1;
        RingElement::monomial(ring, exps, YPoly::one())
    }

    /// `sum_i coeffs[i] * g_i`.
    pub fn linear_form(ring: &NilpotentRing, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), ring.generator_count());
        let mut el = RingElement::zero(ring);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                el = &el + &RingElement::generator(ring, i).scale(&YPoly::from_int(c));
            }
        }
        el
    }

    pub fn ring(&self) -> &NilpotentRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &YPoly)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> YPoly {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> YPoly {
        self.coeff(&vec![0; self.ring.generator_count()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// True if every term has total degree exactly `deg`.
    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == deg)
    }

    /// Checked arithmetic: errors when the operands live in different rings.
    pub fn ring_arith(&self, rhs: &RingElement, op: RingOp) -> Result<RingElement> {
        if self.ring != rhs.ring {
            return Err(structural(format!("ring mismatch: {:?} vs {:?}", self.ring, rhs.ring)));
        }
        Ok(match op {
            RingOp::Add => self.add_unchecked(rhs, false),
            RingOp::Sub => self.add_unchecked(rhs, true),
            RingOp::Mul => self.mul_unchecked(rhs),
        })
    }

    pub fn scale(&self, c: &YPoly) -> RingElement {
        let mut out = RingElement::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            let p = a * c;
            if !p.is_zero() {
                out.terms.insert(e.clone(), p);
            }
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> RingElement {
        self.scale(&YPoly::constant(c.clone()))
    }

    pub fn pow(&self, exp: u32) -> RingElement {
        let mut acc = RingElement::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a rational value for `y` in every coefficient.
    pub fn eval_y(&self, y: &Rational) -> RingElement {
        let mut out = RingElement::zero(&self.ring);
        for (e, a) in &self.terms {
            let v = a.eval(y);
            if !v.is_zero() {
                out.terms.insert(e.clone(), YPoly::constant(v));
            }
        }
        out
    }

    /// Rebuild in a ring of the same shape with a different symbol.
    pub fn relabel(&self, ring: &NilpotentRing) -> RingElement {
        assert_eq!(ring.orders(), self.ring.orders(), "relabel changes shape");
        RingElement { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Apply a linear map given on monomials; the image of each monomial is
    /// produced by `image` and accumulated with the coefficient.
    pub fn map_monomials<F>(&self, target: &NilpotentRing, mut image: F) -> RingElement
    where
        F: FnMut(&[u32]) -> RingElement,
    {
        let mut out = RingElement::zero(target);
        for (e, a) in &self.terms {
            let img = image(e);
            debug_assert_eq!(img.ring(), target);
            out.accumulate(&img, a);
        }
        out
    }

    /// `self += c * other` in place (same ring assumed).
    pub fn accumulate(&mut self, other: &RingElement, c: &YPoly) {
        for (e, b) in &other.terms {
            let add = b * c;
            match self.terms.get_mut(e) {
                Some(slot) => {
                    slot.add_assign_ref(&add);
                    if slot.is_zero() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    if !add.is_zero() {
                        self.terms.insert(e.clone(), add);
                    }
                }
            }
        }
    }

    /// Coordinates over [`NilpotentRing::basis`].
    pub fn to_dense(&self) -> Vec<YPoly> {
        let mut v = vec![YPoly::zero(); self.ring.rank()];
        for (e, a) in &self.terms {
            v[self.ring.basis_index(e)] = a.clone();
        }
        v
    }

    pub fn from_dense(ring: &NilpotentRing, coords: &[YPoly]) -> RingElement {
        let mut out = RingElement::zero(ring);
        for (e, c) in ring.basis().into_iter().zip(coords) {
            if !c.is_zero() {
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    fn add_unchecked(&self, rhs: &RingElement, negate: bool) -> RingElement {
        let mut out = self.clone();
        let sign = if negate { YPoly::from_int(-1) } else { YPoly::one() };
        out.accumulate(rhs, &sign);
        out
    }

    fn mul_unchecked(&self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero(&self.ring);
        let k = self.ring.generator_count();
        let mut exps = vec![0u32; k];
        for (ea, a) in &self.terms {
            'inner: for (eb, b) in &rhs.terms {
                for i in 0..k {
                    let s = ea[i] + eb[i];
                    if s >= self.ring.orders[i] {
                        continue 'inner;
                    }
                    exps[i] = s;
                }
                let p = a * b;
                match out.terms.get_mut(&exps) {
                    Some(slot) => {
                        slot.add_assign_ref(&p);
                        if slot.is_zero() {
                            out.terms.remove(&exps);
                        }
                    }
                    None => {
                        if !p.is_zero() {
                            out.terms.insert(exps.clone(), p);
                        }
                    }
                }
            }
        }
        out
    }
}

fn expect_same_ring(a: &RingElement, b: &RingElement) {
    assert!(a.ring == b.ring, "ring mismatch: {:?} vs {:?}", a.ring, b.ring);
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        expect_same_ring(self, rhs);
        self.add_unchecked(rhs, false)
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        expect_same_ring(self, rhs);
        self.add_unchecked(rhs, true)
    }
}

impl Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        expect_same_ring(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&YPoly::from_int(-1))
    }
}

impl fmt::Display for RingElement {
    /// Sorted term list `coeff * h1^e1*h2*y^j`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, a) in &self.terms {
            for (j, c) in a.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let mut factors = Vec::new();
                for (i, &ei) in e.iter().enumerate() {
                    match ei {
                        0 => {}
                        1 => factors.push(format!("{}{}", self.ring.symbol, i + 1)),
                        _ => factors.push(format!("{}{}^{}", self.ring.symbol, i + 1, ei)),
                    }
                }
                match j {
                    0 => {}
                    1 => factors.push("y".into()),
                    _ => factors.push(format!("y^{j}")),
                }
                if factors.is_empty() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c} * {}", factors.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> NilpotentRing {
        NilpotentRing::new('h', vec![n + 1]).unwrap()
    }

    #[test]
    fn square_truncates() {
        let r = p(1);
        let a = &RingElement::one(&r) + &RingElement::generator(&r, 0);
        let sq = &a * &a;
        let expected = &RingElement::one(&r) + &RingElement::generator(&r, 0).scale(&YPoly::from_int(2));
        assert_eq!(sq, expected);
    }

    #[test]
    fn cube_matches_binomial_expansion() {
        // Oracle: (1+h)^3 = sum_k C(3,k) h^k, truncated at h^3.
        let r = p(2);
        let a = &RingElement::one(&r) + &RingElement::generator(&r, 0);
        let cube = a.pow(3);
        for k in 0..3u32 {
            let c = super::super::rational::binomial(3, k);
            assert_eq!(cube.coeff(&[k]), YPoly::constant(c));
        }
        assert_eq!(cube.term_count(), 3);
    }

    #[test]
    fn additive_identity_and_mismatch() {
        let r = p(2);
        let a = RingElement::generator(&r, 0);
        assert_eq!(&a + &RingElement::zero(&r), a);
        let other = NilpotentRing::new('h', vec![2, 2]).unwrap();
        let b = RingElement::one(&other);
        assert!(matches!(a.ring_arith(&b, RingOp::Add), Err(Error::Structural(_))));
    }

    #[test]
    fn basis_order_is_lexicographic() {
        let r = NilpotentRing::new('h', vec![2, 3]).unwrap();
        let basis = r.basis();
        assert_eq!(basis.len(), 6);
        assert_eq!(basis[0], vec![0, 0]);
        assert_eq!(basis[1], vec![0, 1]);
        assert_eq!(basis[3], vec![1, 0]);
        for (i, e) in basis.iter().enumerate() {
            assert_eq!(r.basis_index(e), i);
        }
    }

    #[test]
    fn display_format() {
        let r = NilpotentRing::new('h', vec![3, 2]).unwrap();
        let a = &RingElement::monomial(&r, vec![2, 1], YPoly::constant(Rational::new(3, 2).unwrap()))
            + &RingElement::constant(&r, YPoly::y());
        assert_eq!(a.to_string(), "1 * y + 3/2 * h1^2*h2");
    }
}

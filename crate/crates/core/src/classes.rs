//! Multiplicative characteristic classes evaluated from Chern roots.
//!
//! A class is the truncated product over roots `a_i` of a fixed factor
//! series `Q(a_i)` with constant term 1:
//!
//! | kind         | factor series                          |
//! |--------------|----------------------------------------|
//! | `Chern`      | `1 + a`                                |
//! | `Todd`       | `a / (1 - e^{-a})`                     |
//! | `LClass`     | `a / tanh a`                           |
//! | `Hirzebruch` | `a(1+y) / (1 - e^{-a(1+y)}) - a y`     |
//!
//! The Hirzebruch factor specializes to the other three at `y = -1, 0, 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{structural, Error, Result};
use crate::series::{NilpotentRing, RingElement, UnivariateSeries};
use crate::spaces::VectorBundle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenusKind {
    Chern,
    Todd,
    LClass,
    Hirzebruch,
}

impl GenusKind {
    pub const ALL: [GenusKind; 4] = [GenusKind::Chern, GenusKind::Todd, GenusKind::LClass, GenusKind::Hirzebruch];

    pub fn name(self) -> &'static str {
        match self {
            GenusKind::Chern => "chern",
            GenusKind::Todd => "todd",
            GenusKind::LClass => "lclass",
            GenusKind::Hirzebruch => "hirzebruch",
        }
    }

    /// The per-root factor series (shared, memoized).
    pub fn series(self) -> UnivariateSeries {
        static SERIES: OnceLock<[UnivariateSeries; 4]> = OnceLock::new();
        let all = SERIES.get_or_init(|| {
            [
                UnivariateSeries::one_plus(),
                UnivariateSeries::todd(),
                UnivariateSeries::l_class(),
                UnivariateSeries::hirzebruch(),
            ]
        });
        all[self as usize].clone()
    }
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown genus kind `{s}`")))
    }
}

/// Multiset of formal Chern roots in one Chow ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList {
    ring: NilpotentRing,
    roots: Vec<RingElement>,
}

impl RootList {
    pub fn new(ring: &NilpotentRing, roots: Vec<RingElement>) -> Result<Self> {
        for r in &roots {
            if r.ring() != ring {
                return Err(structural("roots live in different rings"));
            }
            if !r.is_homogeneous(1) {
                return Err(Error::Domain(format!("root {r} is not of degree 1")));
            }
        }
        Ok(RootList { ring: ring.clone(), roots })
    }

    pub fn empty(ring: &NilpotentRing) -> Self {
        RootList { ring: ring.clone(), roots: Vec::new() }
    }

    pub fn ring(&self) -> &NilpotentRing {
        &self.ring
    }

    pub fn roots(&self) -> &[RingElement] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn union(&self, other: &RootList) -> Result<RootList> {
        if self.ring != other.ring {
            return Err(structural("root lists in different rings"));
        }
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        Ok(RootList { ring: self.ring.clone(), roots })
    }
}

/// `prod_i Q_kind(a_i)`, exact and truncated.
pub fn genus_class(kind: GenusKind, roots: &RootList) -> RingElement {
    genus_from_series(&kind.series(), roots)
}

/// Multiplicative class for an arbitrary factor series with constant term 1.
pub fn genus_from_series(series: &UnivariateSeries, roots: &RootList) -> RingElement {
    let mut acc = RingElement::one(&roots.ring);
    for r in &roots.roots {
        let factor = series.substitute(r).expect("degree-1 roots have no constant term");
        acc = &acc * &factor;
    }
    acc
}

/// `cl(E)` for a line-bundle sum.
pub fn bundle_class(kind: GenusKind, bundle: &VectorBundle) -> RingElement {
    let ring = bundle.base().chow_ring();
    let roots = RootList::new(&ring, bundle.chern_roots()).expect("linear forms are roots");
    genus_class(kind, &roots)
}

/// `ch(⊕ O(d)) = sum e^{sum_i d_i h_i}`.
pub fn chern_character(bundle: &VectorBundle) -> RingElement {
    let ring = bundle.base().chow_ring();
    let exp = UnivariateSeries::exp();
    bundle
        .chern_roots()
        .iter()
        .fold(RingElement::zero(&ring), |acc, root| &acc + &exp.substitute(root).expect("degree-1 root"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Rational, YPoly};
    use crate::spaces::Space;

    fn roots_of(n: u32, copies: usize) -> RootList {
        let ring = Space::projective(n).chow_ring();
        let h = RingElement::generator(&ring, 0);
        RootList::new(&ring, vec![h; copies]).unwrap()
    }

    fn c(x: i64, y: i64) -> YPoly {
        YPoly::constant(Rational::new(x, y).unwrap())
    }

    #[test]
    fn todd_of_p1() {
        let td = genus_class(GenusKind::Todd, &roots_of(1, 2));
        assert_eq!(td.coeff(&[0]), c(1, 1));
        assert_eq!(td.coeff(&[1]), c(1, 1));
    }

    #[test]
    fn chern_of_p2() {
        let ch = genus_class(GenusKind::Chern, &roots_of(2, 3));
        assert_eq!(ch.coeff(&[0]), c(1, 1));
        assert_eq!(ch.coeff(&[1]), c(3, 1));
        assert_eq!(ch.coeff(&[2]), c(3, 1));
    }

    #[test]
    fn hirzebruch_of_p1() {
        let t = genus_class(GenusKind::Hirzebruch, &roots_of(1, 2));
        assert_eq!(t.coeff(&[0]), YPoly::one());
        assert_eq!(t.coeff(&[1]), YPoly::from_coeffs(vec![1.into(), (-1).into()]));
    }

    #[test]
    fn l_class_of_p2() {
        let l = genus_class(GenusKind::LClass, &roots_of(2, 3));
        assert_eq!(l.coeff(&[0]), c(1, 1));
        assert_eq!(l.coeff(&[1]), YPoly::zero());
        assert_eq!(l.coeff(&[2]), c(1, 1));
    }

    #[test]
    fn chern_character_examples() {
        let p2 = Space::projective(2);
        let ch = chern_character(&VectorBundle::line(&p2, vec![2]));
        assert_eq!(ch.coeff(&[1]), c(2, 1));
        assert_eq!(ch.coeff(&[2]), c(2, 1));
        assert!(chern_character(&VectorBundle::trivial(&p2)).is_one());

        let p1 = Space::projective(1);
        let e = VectorBundle::new(&p1, vec![vec![1], vec![1]]).unwrap();
        let ch = chern_character(&e);
        assert_eq!(ch.coeff(&[0]), c(2, 1));
        assert_eq!(ch.coeff(&[1]), c(2, 1));
    }

    #[test]
    fn rootlist_validation() {
        let ring = Space::projective(2).chow_ring();
        assert!(RootList::new(&ring, vec![RingElement::one(&ring)]).is_err());
        let other = Space::projective(1).chow_ring();
        assert!(RootList::new(&ring, vec![RingElement::generator(&other, 0)]).is_err());
        assert!("todd".parse::<GenusKind>().is_ok());
        assert!("nope".parse::<GenusKind>().is_err());
    }
}

//! The model category: finite products of projective spaces, the
//! combinatorial morphisms between them, line-bundle sums and canonical
//! linear subvarieties.

mod chow;
mod morphism;

pub(crate) use chow::pull_generators;
pub use chow::virtual_relative_genus;
pub use chow::{chow_pullback, chow_pushforward, integrate, relative_genus, tangent_roots};
pub use morphism::{fiber_product, Classification, FiberSquare, Morphism};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{NilpotentRing, RingElement};

/// `P^{n_1} x ... x P^{n_k}`; the empty product is the point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    dims: Vec<u32>,
}

impl Space {
    pub fn new(dims: Vec<u32>) -> Self {
        Space { dims }
    }

    pub fn point() -> Self {
        Space { dims: Vec::new() }
    }

    pub fn projective(n: u32) -> Self {
        Space { dims: vec![n] }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factor_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn is_point(&self) -> bool {
        self.dims.is_empty()
    }

    /// `Q[h_1..h_k]/(h_i^{n_i+1})`.
    pub fn chow_ring(&self) -> NilpotentRing {
        NilpotentRing::new('h', self.dims.iter().map(|n| n + 1).collect()).expect("orders are >= 1")
    }

    /// `Q[t_1..t_k]/(t_i^{n_i+1})`, `t_i = 1 - [O_i(-1)]`.
    pub fn k_ring(&self) -> NilpotentRing {
        NilpotentRing::new('t', self.dims.iter().map(|n| n + 1).collect()).expect("orders are >= 1")
    }

    /// Product `self x other`, factors of `self` first.
    pub fn product(&self, other: &Space) -> Space {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Space { dims }
    }

    /// Topological Euler characteristic `prod (n_i + 1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&n| n as i64 + 1).product()
    }

    /// The hyperplane class `h_i` of factor `i`.
    pub fn hyperplane(&self, i: usize) -> RingElement {
        RingElement::generator(&self.chow_ring(), i)
    }

    /// Every canonical linear subvariety, in the lexicographic order of
    /// their dimension vectors.
    pub fn subvarieties(&self) -> Vec<Subvariety> {
        let ring = NilpotentRing::new('h', self.dims.iter().map(|n| n + 1).collect()).expect("orders are >= 1");
        ring.basis().into_iter().map(|dims| Subvariety { ambient: self.clone(), dims }).collect()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(u32::to_string).collect();
        write!(f, "P({})", parts.join(","))
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Space {
    type Err = Error;

    /// Parses `P(n1,n2,...)`; `P()` and `pt` are the point.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "pt" {
            return Ok(Space::point());
        }
        let inner = s
            .strip_prefix("P(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected P(...), got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Space::point());
        }
        let dims = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad factor dimension `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Space { dims })
    }
}

/// Canonical product of linear subspaces `P^{m_1} x ... x P^{m_k}` inside
/// the ambient space, always on the first coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subvariety {
    ambient: Space,
    dims: Vec<u32>,
}

impl Subvariety {
    pub fn new(ambient: &Space, dims: Vec<u32>) -> Result<Self> {
        if dims.len() != ambient.factor_count() || dims.iter().zip(ambient.dims()).any(|(m, n)| m > n) {
            return Err(Error::Domain(format!("subvariety dims {dims:?} do not fit in {ambient}")));
        }
        Ok(Subvariety { ambient: ambient.clone(), dims })
    }

    pub fn full(ambient: &Space) -> Self {
        Subvariety { ambient: ambient.clone(), dims: ambient.dims().to_vec() }
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn as_space(&self) -> Space {
        Space::new(self.dims.clone())
    }

    /// Per-factor codimensions.
    pub fn codims(&self) -> Vec<u32> {
        self.ambient.dims().iter().zip(&self.dims).map(|(n, m)| n - m).collect()
    }

    /// The canonical embedding `Z -> X`.
    pub fn embedding(&self) -> Morphism {
        Morphism::new(self.as_space(), self.ambient.clone(), (0..self.dims.len()).map(Some).collect())
            .expect("canonical embedding is valid")
    }

    /// Intersection of two canonical subvarieties of the same space.
    pub fn intersect(&self, other: &Subvariety) -> Subvariety {
        assert_eq!(self.ambient, other.ambient);
        Subvariety {
            ambient: self.ambient.clone(),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| *a.min(b)).collect(),
        }
    }
}

impl fmt::Display for Subvariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(u32::to_string).collect();
        write!(f, "L({}) in {}", parts.join(","), self.ambient)
    }
}

/// A finite direct sum of line bundles `O(d_1, ..., d_k)` on a space. The
/// summands are kept sorted so equal bundles compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VectorBundle {
    base: Space,
    summands: Vec<Vec<i64>>,
}

impl VectorBundle {
    pub fn new(base: &Space, mut summands: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = summands.iter().find(|d| d.len() != base.factor_count()) {
            return Err(Error::Domain(format!("multidegree {bad:?} has wrong length for {base}")));
        }
        summands.sort();
        Ok(VectorBundle { base: base.clone(), summands })
    }

    pub fn zero(base: &Space) -> Self {
        VectorBundle { base: base.clone(), summands: Vec::new() }
    }

    pub fn trivial(base: &Space) -> Self {
        VectorBundle::line(base, vec![0; base.factor_count()])
    }

    pub fn line(base: &Space, degrees: Vec<i64>) -> Self {
        VectorBundle::new(base, vec![degrees]).expect("degree vector matches base")
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn summands(&self) -> &[Vec<i64>] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn direct_sum(&self, other: &VectorBundle) -> Result<VectorBundle> {
        self.same_base(other)?;
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        VectorBundle::new(&self.base, s)
    }

    pub fn tensor(&self, other: &VectorBundle) -> Result<VectorBundle> {
        self.same_base(other)?;
        let mut s = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.summands {
            for b in &other.summands {
                s.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        VectorBundle::new(&self.base, s)
    }

    /// `f^* E` along `f: W -> base`: `O(1)` on a target factor pulls back to
    /// `O(1)` on the source factor it is pulled from, and to the trivial
    /// bundle on a constant factor.
    pub fn pullback(&self, f: &Morphism) -> Result<VectorBundle> {
        if f.target() != &self.base {
            return Err(Error::Structural(format!(
                "bundle on {} pulled back along a map to {}",
                self.base,
                f.target()
            )));
        }
        let summands = self
            .summands
            .iter()
            .map(|d| {
                let mut e = vec![0; f.source().factor_count()];
                for (j, a) in f.assignment().iter().enumerate() {
                    if let Some(i) = a {
                        e[*i] += d[j];
                    }
                }
                e
            })
            .collect();
        VectorBundle::new(f.source(), summands)
    }

    /// Chern roots `sum_i d_i h_i`, one per summand.
    pub fn chern_roots(&self) -> Vec<RingElement> {
        let ring = self.base.chow_ring();
        self.summands.iter().map(|d| RingElement::linear_form(&ring, d)).collect()
    }

    fn same_base(&self, other: &VectorBundle) -> Result<()> {
        if self.base != other.base {
            return Err(Error::Structural(format!("bundles on different spaces {} and {}", self.base, other.base)));
        }
        Ok(())
    }
}

impl fmt::Display for VectorBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|d| {
                let ds: Vec<String> = d.iter().map(i64::to_string).collect();
                format!("O({})", ds.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_parse_and_print() {
        let x: Space = "P(1, 2)".parse().unwrap();
        assert_eq!(x.dims(), &[1, 2]);
        assert_eq!(x.to_string(), "P(1,2)");
        assert!("P()".parse::<Space>().unwrap().is_point());
        assert!("pt".parse::<Space>().unwrap().is_point());
        assert!("Q(1)".parse::<Space>().is_err());
        assert_eq!(x.euler_characteristic(), 6);
        assert_eq!(x.subvarieties().len(), 6);
    }

    #[test]
    fn bundle_operations() {
        let x = Space::new(vec![1, 1]);
        let a = VectorBundle::line(&x, vec![1, 0]);
        let b = VectorBundle::line(&x, vec![0, 2]);
        assert_eq!(a.tensor(&b).unwrap(), VectorBundle::line(&x, vec![1, 2]));
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.to_string(), "O(0,2) + O(1,0)");
        let other = VectorBundle::trivial(&Space::projective(1));
        assert!(a.tensor(&other).is_err());
    }

    #[test]
    fn subvariety_bounds() {
        let x = Space::projective(2);
        assert!(Subvariety::new(&x, vec![3]).is_err());
        let l = Subvariety::new(&x, vec![1]).unwrap();
        assert_eq!(l.codims(), vec![1]);
        assert_eq!(l.embedding().source(), &Space::projective(1));
    }
}

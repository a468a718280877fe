//! Zigzags: finite sequences of correspondences composed by juxtaposition,
//! evaluated link by link. Also the homology pullback `f^• = PD f^* PD^{-1}`
//! on explicit cycle classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::corr::{tabulate, Correspondence, LegClass};
use crate::error::{structural, Error, Result};
use crate::functor::{EvalOptions, FunctorId, Value};
use crate::operator::{Column, LinearOperator};
use crate::series::{RingElement, YPoly};
use crate::spaces::{chow_pullback, Morphism, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZigzagKind {
    /// Proper left legs, smooth right legs.
    ProSmooth,
    /// Proper left legs, any (l.c.i.) right legs.
    ProLci,
    /// Any legs between smooth spaces; evaluated in homology by `f_* g^•`.
    SmoothObjects,
}

impl ZigzagKind {
    pub const ALL: [ZigzagKind; 3] = [ZigzagKind::ProSmooth, ZigzagKind::ProLci, ZigzagKind::SmoothObjects];

    pub fn name(self) -> &'static str {
        match self {
            ZigzagKind::ProSmooth => "pro-smooth",
            ZigzagKind::ProLci => "pro-lci",
            ZigzagKind::SmoothObjects => "smooth-objects",
        }
    }

    pub fn link_tags(self) -> (LegClass, LegClass) {
        match self {
            ZigzagKind::ProSmooth => (LegClass::Proper, LegClass::Smooth),
            _ => (LegClass::Proper, LegClass::Lci),
        }
    }

    pub fn admits(self, functor: FunctorId) -> bool {
        self == ZigzagKind::ProSmooth || functor.admits_lci_pullback()
    }
}

impl fmt::Display for ZigzagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZigzagKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZigzagKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown zigzag kind `{s}`")))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zigzag {
    start: Space,
    links: Vec<Correspondence>,
    kind: ZigzagKind,
}

impl Zigzag {
    /// Links are re-tagged with the kind's leg classes and canonicalized.
    pub fn new(start: &Space, links: &[Correspondence], kind: ZigzagKind) -> Result<Self> {
        let tags = kind.link_tags();
        let mut at = start.clone();
        let mut out = Vec::with_capacity(links.len());
        for (i, l) in links.iter().enumerate() {
            if l.source() != &at {
                return Err(structural(format!("link {} starts at {}, expected {at}", i + 1, l.source())));
            }
            let c = Correspondence::with_tags(l.left().clone(), l.right().clone(), tags)?;
            at = c.target().clone();
            out.push(c.canonicalize());
        }
        Ok(Zigzag { start: start.clone(), links: out, kind })
    }

    /// The length-0 zigzag at `x`, the unit for juxtaposition.
    pub fn empty(x: &Space, kind: ZigzagKind) -> Self {
        Zigzag { start: x.clone(), links: Vec::new(), kind }
    }

    pub fn single(c: &Correspondence, kind: ZigzagKind) -> Result<Self> {
        Zigzag::new(c.source(), std::slice::from_ref(c), kind)
    }

    pub fn source(&self) -> &Space {
        &self.start
    }

    pub fn target(&self) -> &Space {
        self.links.last().map(|l| l.target()).unwrap_or(&self.start)
    }

    pub fn links(&self) -> &[Correspondence] {
        &self.links
    }

    pub fn kind(&self) -> ZigzagKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// `self ∧ other`.
    pub fn juxtapose(&self, other: &Zigzag) -> Result<Zigzag> {
        if self.kind != other.kind {
            return Err(structural(format!("cannot join a {} zigzag to a {} one", self.kind, other.kind)));
        }
        if self.target() != other.source() {
            return Err(structural(format!("cannot join zigzags at {} and {}", self.target(), other.source())));
        }
        let mut links = self.links.clone();
        links.extend(other.links.iter().cloned());
        Ok(Zigzag { start: self.start.clone(), links, kind: self.kind })
    }

    /// `F(l_1) ∘ ... ∘ F(l_k)` applied to `v ∈ F(target)`.
    pub fn apply(&self, functor: FunctorId, v: &Value, opts: EvalOptions) -> Result<Value> {
        if !self.kind.admits(functor) {
            return Err(Error::UnsupportedLeg(format!("{functor} is not defined on {} zigzags", self.kind)));
        }
        let mut acc = v.clone();
        for link in self.links.iter().rev() {
            acc = link.apply(functor, &acc, opts)?;
        }
        Ok(acc)
    }

    /// `(f_1)_* g_1^• ∘ ... ∘ (f_k)_* g_k^•` on homology.
    pub fn apply_homology(&self, v: &HomologyClass) -> Result<HomologyClass> {
        let mut acc = v.clone();
        for link in self.links.iter().rev() {
            acc = link_homology(link.left(), link.right(), &acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Zigzag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.links.is_empty() {
            return write!(f, "empty({}) {}", self.start, self.kind);
        }
        let parts: Vec<String> = self.links.iter().map(|l| format!("({l})")).collect();
        write!(f, "{} {}", parts.join(" ~ "), self.kind)
    }
}

impl fmt::Debug for Zigzag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Z-linear combination of zigzags from `X` to `Y`, graded by length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigzagSum {
    source: Space,
    target: Space,
    terms: BTreeMap<Zigzag, i64>,
}

impl ZigzagSum {
    pub fn zero(x: &Space, y: &Space) -> Self {
        ZigzagSum { source: x.clone(), target: y.clone(), terms: BTreeMap::new() }
    }

    pub fn single(z: &Zigzag) -> Self {
        let mut s = ZigzagSum::zero(z.source(), z.target());
        s.add_term(z, 1).expect("endpoints match");
        s
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<Zigzag, i64> {
        &self.terms
    }

    pub fn add_term(&mut self, z: &Zigzag, n: i64) -> Result<()> {
        if z.source() != &self.source || z.target() != &self.target {
            return Err(structural(format!("zigzag {z} added to a sum from {} to {}", self.source, self.target)));
        }
        let entry = self.terms.entry(z.clone()).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.terms.remove(z);
        }
        Ok(())
    }

    pub fn add(&self, other: &ZigzagSum) -> Result<ZigzagSum> {
        let mut out = self.clone();
        for (z, n) in &other.terms {
            out.add_term(z, *n)?;
        }
        Ok(out)
    }

    /// Components of each length `k`.
    pub fn by_length(&self) -> BTreeMap<usize, ZigzagSum> {
        let mut out: BTreeMap<usize, ZigzagSum> = BTreeMap::new();
        for (z, n) in &self.terms {
            out.entry(z.len())
                .or_insert_with(|| ZigzagSum::zero(&self.source, &self.target))
                .add_term(z, *n)
                .expect("same endpoints");
        }
        out
    }

    pub fn juxtapose(&self, other: &ZigzagSum) -> Result<ZigzagSum> {
        let mut out = ZigzagSum::zero(&self.source, &other.target);
        for (a, n) in &self.terms {
            for (b, m) in &other.terms {
                out.add_term(&a.juxtapose(b)?, n * m)?;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, functor: FunctorId, v: &Value, opts: EvalOptions) -> Result<Value> {
        let mut acc = functor.zero(&self.source);
        for (z, n) in &self.terms {
            acc = acc.add(&z.apply(functor, v, opts)?.scaled(*n))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ZigzagSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(z, n)| format!("{n}*[{z}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ZigzagSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn zigzag_operator(functor: FunctorId, z: &ZigzagSum) -> Result<LinearOperator> {
    zigzag_operator_with(functor, z, EvalOptions::default())
}

pub fn zigzag_operator_with(functor: FunctorId, z: &ZigzagSum, opts: EvalOptions) -> Result<LinearOperator> {
    tabulate(functor, z.target(), functor, z.source(), |v| z.apply(functor, v, opts))
}

/// A homology class `sum c_a [L(a)]` on a model space, in the basis of
/// canonical linear subvarieties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    space: Space,
    terms: BTreeMap<Vec<u32>, YPoly>,
}

impl HomologyClass {
    pub fn zero(x: &Space) -> Self {
        HomologyClass { space: x.clone(), terms: BTreeMap::new() }
    }

    /// `[L(dims)]`.
    pub fn cycle(x: &Space, dims: &[u32]) -> Result<Self> {
        if dims.len() != x.factor_count() || dims.iter().zip(x.dims()).any(|(a, n)| a > n) {
            return Err(Error::Domain(format!("L{dims:?} is not a subvariety of {x}")));
        }
        let mut h = HomologyClass::zero(x);
        h.terms.insert(dims.to_vec(), YPoly::one());
        Ok(h)
    }

    pub fn basis(x: &Space) -> Vec<HomologyClass> {
        x.subvarieties().iter().map(|z| HomologyClass::cycle(x, z.dims()).expect("canonical subvariety")).collect()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, YPoly> {
        &self.terms
    }

    fn add_term(&mut self, dims: Vec<u32>, c: &YPoly) {
        let e = self.terms.entry(dims.clone()).or_insert_with(YPoly::zero);
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&dims);
        }
    }

    pub fn coordinates(&self) -> Column {
        self.terms
            .iter()
            .map(|(a, c)| {
                let d: Vec<String> = a.iter().map(u32::to_string).collect();
                (format!("[L({})]", d.join(",")), c.clone())
            })
            .collect()
    }

    pub fn label(&self) -> String {
        self.coordinates().keys().next().cloned().unwrap_or_else(|| "0".to_string())
    }

    /// `PD_X`: `h^e ∩ [X] = [L(n - e)]`.
    pub fn poincare_dual(c: &RingElement) -> HomologyClass {
        let x = crate::ktheory::space_of(c.ring());
        let mut out = HomologyClass::zero(&x);
        for (e, v) in c.terms() {
            let dims = x.dims().iter().zip(e).map(|(n, k)| n - k).collect();
            out.add_term(dims, v);
        }
        out
    }

    /// `PD_X^{-1}`.
    pub fn to_cohomology(&self) -> RingElement {
        let ring = self.space.chow_ring();
        let mut out = RingElement::zero(&ring);
        for (a, v) in &self.terms {
            let e = self.space.dims().iter().zip(a).map(|(n, k)| n - k).collect();
            out = &out + &RingElement::monomial(&ring, e, v.clone());
        }
        out
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coordinates().iter().map(|(l, c)| format!("({c})*{l}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Proper pushforward of cycles: `[L(a)]` maps onto its image with degree
/// one, or to zero when a projected-away factor has positive dimension.
pub fn homology_pushforward(f: &Morphism, v: &HomologyClass) -> Result<HomologyClass> {
    if v.space() != f.source() {
        return Err(structural(format!("cycle on {}, map from {}", v.space(), f.source())));
    }
    let dropped = f.dropped_factors();
    let mut out = HomologyClass::zero(f.target());
    for (a, c) in &v.terms {
        if dropped.iter().any(|&i| a[i] > 0) {
            continue;
        }
        let image = f.assignment().iter().map(|t| t.map_or(0, |i| a[i])).collect();
        out.add_term(image, c);
    }
    Ok(out)
}

/// `f^• = PD_M ∘ f^* ∘ PD_X^{-1}` for `f: M -> X`.
pub fn pullback_dot(f: &Morphism, v: &HomologyClass) -> Result<HomologyClass> {
    if v.space() != f.target() {
        return Err(structural(format!("cycle on {}, map to {}", v.space(), f.target())));
    }
    let pulled = chow_pullback(f, &v.to_cohomology())?;
    Ok(HomologyClass::poincare_dual(&pulled))
}

/// `f_• = PD_Y^{-1} ∘ f_* ∘ PD_X` for `f: X -> Y`, the cohomological
/// pushforward.
pub fn pushforward_dot(f: &Morphism, c: &RingElement) -> Result<RingElement> {
    Ok(homology_pushforward(f, &HomologyClass::poincare_dual(c))?.to_cohomology())
}

/// `f_* g^•` for a link `X <-f- M -g-> Y`.
pub fn link_homology(f: &Morphism, g: &Morphism, v: &HomologyClass) -> Result<HomologyClass> {
    homology_pushforward(f, &pullback_dot(g, v)?)
}

/// Tabulate a map `H_*(y) -> H_*(x)` on cycle bases.
pub fn homology_operator(
    y: &Space,
    x: &Space,
    apply: impl Fn(&HomologyClass) -> Result<HomologyClass>,
) -> Result<LinearOperator> {
    let rows = HomologyClass::basis(x).iter().map(HomologyClass::label).collect();
    let mut columns = Vec::new();
    for b in HomologyClass::basis(y) {
        columns.push((b.label(), apply(&b)?.coordinates()));
    }
    LinearOperator::from_columns(Some(rows), columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::{corr_operator, CorrSum};
    use crate::spaces::chow_pushforward;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn over_point(m: &Space) -> Correspondence {
        Correspondence::new(Morphism::to_point(m), Morphism::to_point(m)).unwrap()
    }

    #[test]
    fn juxtaposition() {
        let a = Zigzag::single(&over_point(&p(&[1])), ZigzagKind::ProSmooth).unwrap();
        let b = Zigzag::single(&over_point(&p(&[2])), ZigzagKind::ProSmooth).unwrap();
        let ab = a.juxtapose(&b).unwrap();
        assert_eq!(ab.len(), 2);
        let e = Zigzag::empty(&Space::point(), ZigzagKind::ProSmooth);
        assert_eq!(a.juxtapose(&e).unwrap(), a);
        assert_eq!(ab.juxtapose(&a).unwrap(), a.juxtapose(&b.juxtapose(&a).unwrap()).unwrap());
        let lci = Zigzag::single(&over_point(&p(&[1])), ZigzagKind::ProLci).unwrap();
        assert!(a.juxtapose(&lci).is_err());
    }

    #[test]
    fn chern_of_two_links() {
        let a = Zigzag::single(&over_point(&p(&[1])), ZigzagKind::ProSmooth).unwrap();
        let b = Zigzag::single(&over_point(&p(&[2])), ZigzagKind::ProSmooth).unwrap();
        let op = zigzag_operator(FunctorId::HChern, &ZigzagSum::single(&a.juxtapose(&b).unwrap())).unwrap();
        assert_eq!(op.entry(0, 0), &YPoly::from_int(6));
        let single = zigzag_operator(FunctorId::HChern, &ZigzagSum::single(&a)).unwrap();
        assert_eq!(single, corr_operator(FunctorId::HChern, &CorrSum::single(&over_point(&p(&[1])))).unwrap());
    }

    #[test]
    fn lci_link_uses_virtual_todd() {
        let l = p(&[1]);
        let emb = Morphism::new(l.clone(), p(&[2]), vec![Some(0)]).unwrap();
        let link =
            Correspondence::with_tags(Morphism::identity(&l), emb.clone(), ZigzagKind::ProLci.link_tags()).unwrap();
        let z = Zigzag::single(&link, ZigzagKind::ProLci).unwrap();
        let op = zigzag_operator(FunctorId::HTodd, &ZigzagSum::single(&z)).unwrap();
        // td(TP^1)/i^* td(TP^2) = (1 + h)/(1 + 3h/2) = 1 - h/2 on P^1.
        let half = YPoly::constant(crate::series::Rational::new(-1, 2).unwrap());
        assert_eq!(op.cols(), ["1", "h1", "h1^2"]);
        assert_eq!(op.column(0).get("h1"), Some(&half));
        assert_eq!(op.column(1).get("h1"), Some(&YPoly::one()));
        assert!(op.column(2).is_empty());
        assert!(Zigzag::single(&link, ZigzagKind::ProSmooth).is_err());
        assert!(matches!(zigzag_operator(FunctorId::HChern, &ZigzagSum::single(&z)), Err(Error::UnsupportedLeg(_))));
    }

    #[test]
    fn pullback_dot_examples() {
        let x = p(&[1, 1]);
        let proj = Morphism::projection(&x, &[0]).unwrap();
        // PD^{-1}[pt] = h on P^1, pulled back: h1, i.e. [L(0,1)].
        let pt = HomologyClass::cycle(&p(&[1]), &[0]).unwrap();
        assert_eq!(pullback_dot(&proj, &pt).unwrap(), HomologyClass::cycle(&x, &[0, 1]).unwrap());

        let line = HomologyClass::cycle(&p(&[2]), &[1]).unwrap();
        let emb = Morphism::new(p(&[1]), p(&[2]), vec![Some(0)]).unwrap();
        assert_eq!(pullback_dot(&emb, &line).unwrap(), HomologyClass::cycle(&p(&[1]), &[0]).unwrap());

        for v in HomologyClass::basis(&x) {
            assert_eq!(pullback_dot(&Morphism::identity(&x), &v).unwrap(), v);
        }
    }

    #[test]
    fn homology_push_agrees_with_gysin() {
        let maps = [
            Morphism::projection(&p(&[1, 2]), &[1]).unwrap(),
            Morphism::new(p(&[1]), p(&[2, 1]), vec![Some(0), None]).unwrap(),
            Morphism::to_point(&p(&[2])),
            Morphism::base_point(&p(&[1, 1])),
        ];
        for f in &maps {
            for v in HomologyClass::basis(f.source()) {
                let direct = homology_pushforward(f, &v).unwrap();
                let via = HomologyClass::poincare_dual(&chow_pushforward(f, &v.to_cohomology()).unwrap());
                assert_eq!(direct, via, "{f} on {v}");
            }
        }
    }

    #[test]
    fn length_grading() {
        let a = Zigzag::single(&over_point(&p(&[1])), ZigzagKind::ProSmooth).unwrap();
        let e = Zigzag::empty(&Space::point(), ZigzagKind::ProSmooth);
        let s = ZigzagSum::single(&a).add(&ZigzagSum::single(&e)).unwrap();
        let sq = s.juxtapose(&s).unwrap();
        let lens: Vec<usize> = sq.by_length().keys().copied().collect();
        assert_eq!(lens, [0, 1, 2]);
        assert_eq!(sq.by_length()[&1].terms().values().copied().collect::<Vec<_>>(), [2]);
    }
}

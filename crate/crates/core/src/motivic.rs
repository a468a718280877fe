//! Constructible functions and the relative Grothendieck group of
//! varieties over a model space, with MacPherson's Chern class, the motivic
//! Hirzebruch class and the comparison maps `ε` and `Γ`.
//!
//! Both groups are modeled as free abelian groups on canonical generators.
//! Scissor relations are not imposed.

use std::collections::BTreeMap;
use std::fmt;

use crate::classes::{genus_class, GenusKind};
use crate::error::{structural, Result};
use crate::ktheory::{k_pushforward, KClass};
use crate::series::RingElement;
use crate::spaces::{chow_pushforward, fiber_product, tangent_roots, Morphism, Space, Subvariety};

fn add_term<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) {
    if c == 0 {
        return;
    }
    *map.entry(key).or_insert(0) += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, i64>) {
    map.retain(|_, c| *c != 0);
}

fn format_terms<K>(terms: &BTreeMap<K, i64>, f: &mut fmt::Formatter<'_>, show: impl Fn(&K) -> String) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let body = show(k);
        match (i, *c < 0) {
            (0, false) => write!(f, "{c}*{body}")?,
            (0, true) => write!(f, "-{}*{body}", -c)?,
            (_, false) => write!(f, " + {c}*{body}")?,
            (_, true) => write!(f, " - {}*{body}", -c)?,
        }
    }
    Ok(())
}

/// A `Z`-linear combination of indicators `1_Z` of canonical subvarieties,
/// keyed by their per-factor dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructibleFn {
    space: Space,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl ConstructibleFn {
    pub fn zero(space: &Space) -> Self {
        ConstructibleFn { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn indicator(z: &Subvariety) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(z.dims().to_vec(), 1);
        ConstructibleFn { space: z.ambient().clone(), terms }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }

    pub fn coeff(&self, dims: &[u32]) -> i64 {
        self.terms.get(dims).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self + c * 1_Z`.
    pub fn add_indicator(&mut self, z: &Subvariety, c: i64) -> Result<()> {
        if z.ambient() != &self.space {
            return Err(structural(format!("{z} is not a subvariety of {}", self.space)));
        }
        add_term(&mut self.terms, z.dims().to_vec(), c);
        prune(&mut self.terms);
        Ok(())
    }

    pub fn add(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        self.combine(other, -1)
    }

    pub fn scaled(&self, c: i64) -> ConstructibleFn {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        prune(&mut terms);
        ConstructibleFn { space: self.space.clone(), terms }
    }

    fn combine(&self, other: &ConstructibleFn, sign: i64) -> Result<ConstructibleFn> {
        if self.space != other.space {
            return Err(structural(format!("constructible functions on {} and {}", self.space, other.space)));
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            add_term(&mut terms, k.clone(), sign * v);
        }
        prune(&mut terms);
        Ok(ConstructibleFn { space: self.space.clone(), terms })
    }

    /// Pointwise product: `1_{L(s)} · 1_{L(t)} = 1_{L(min(s, t))}`.
    pub fn mul(&self, other: &ConstructibleFn) -> Result<ConstructibleFn> {
        if self.space != other.space {
            return Err(structural(format!("constructible functions on {} and {}", self.space, other.space)));
        }
        let mut terms = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let meet = s.iter().zip(t).map(|(x, y)| *x.min(y)).collect();
                add_term(&mut terms, meet, a * b);
            }
        }
        prune(&mut terms);
        Ok(ConstructibleFn { space: self.space.clone(), terms })
    }

    /// Value at a point of the stratum `L(s) \ L(s - e_i)`; used for
    /// pointwise comparisons in tests.
    pub fn value_on(&self, s: &[u32]) -> i64 {
        self.terms.iter().filter(|(z, _)| z.iter().zip(s).all(|(a, b)| b <= a)).map(|(_, c)| c).sum()
    }
}

impl fmt::Display for ConstructibleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(&self.terms, f, |d| {
            let parts: Vec<String> = d.iter().map(u32::to_string).collect();
            format!("ind(L({}))", parts.join(","))
        })
    }
}

/// Dimensions of the image of the canonical subvariety `L(s)` under `f`,
/// and the topological Euler characteristic of the integrated fiber.
fn image_of(f: &Morphism, s: &[u32]) -> (Vec<u32>, i64) {
    let dims = f
        .assignment()
        .iter()
        .map(|a| match a {
            Some(i) => s[*i],
            None => 0,
        })
        .collect();
    let chi = f.dropped_factors().iter().map(|&i| s[i] as i64 + 1).product();
    (dims, chi)
}

/// Proper pushforward: `f_* 1_Z = χ(fiber) 1_{f(Z)}` on generators.
pub fn cf_pushforward(f: &Morphism, phi: &ConstructibleFn) -> Result<ConstructibleFn> {
    if phi.space() != f.source() {
        return Err(structural(format!("cf_pushforward: function on {}, map from {}", phi.space(), f.source())));
    }
    let mut terms = BTreeMap::new();
    for (s, c) in &phi.terms {
        let (dims, chi) = image_of(f, s);
        add_term(&mut terms, dims, c * chi);
    }
    prune(&mut terms);
    Ok(ConstructibleFn { space: f.target().clone(), terms })
}

/// Smooth pullback `g^* φ = φ ∘ g`.
pub fn cf_pullback(g: &Morphism, phi: &ConstructibleFn) -> Result<ConstructibleFn> {
    g.require_smooth("cf_pullback")?;
    cf_preimage(g, phi)
}

/// `φ ∘ f` for any model morphism: the preimage of a canonical subvariety
/// is canonical. Constant factors impose no condition because the base
/// point lies in every canonical subspace.
pub(crate) fn cf_preimage(f: &Morphism, phi: &ConstructibleFn) -> Result<ConstructibleFn> {
    if phi.space() != f.target() {
        return Err(structural(format!("cf_pullback: function on {}, map to {}", phi.space(), f.target())));
    }
    let src = f.source().dims();
    let mut terms = BTreeMap::new();
    for (s, c) in &phi.terms {
        let mut pre = src.to_vec();
        for (j, a) in f.assignment().iter().enumerate() {
            if let Some(i) = a {
                pre[*i] = s[j].min(src[*i]);
            }
        }
        add_term(&mut terms, pre, *c);
    }
    prune(&mut terms);
    Ok(ConstructibleFn { space: f.source().clone(), terms })
}

/// `c_*(1_Z) = ι_*(c(TZ) ∩ [Z])`, extended linearly.
pub fn mac_chern(phi: &ConstructibleFn) -> RingElement {
    let mut acc = RingElement::zero(&phi.space.chow_ring());
    for (s, c) in &phi.terms {
        let z = Subvariety::new(&phi.space, s.clone()).expect("canonical generator");
        let cz = genus_class(GenusKind::Chern, &tangent_roots(&z.as_space()));
        let pushed = chow_pushforward(&z.embedding(), &cz).expect("class on Z");
        acc = &acc + &pushed.scale_rational(&(*c).into());
    }
    acc
}

/// Canonical representative of the isomorphism class of `[V --h--> X]`
/// over `X`. Source factors are reordered so that factors feeding target
/// factors come first, in target order, followed by the projected-away
/// factors sorted by dimension.
pub fn canonical_generator(h: &Morphism) -> Morphism {
    let src = h.source().dims();
    let inv = h.inverse_assignment();
    let mut order: Vec<usize> = (0..src.len()).collect();
    order.sort_by_key(|&i| match inv[i] {
        Some(j) => (0, j as u32, 0),
        None => (1, src[i], 0),
    });
    let mut new_pos = vec![0; src.len()];
    for (pos, &i) in order.iter().enumerate() {
        new_pos[i] = pos;
    }
    let new_source = Space::new(order.iter().map(|&i| src[i]).collect());
    h.reindex_source(&new_source, &new_pos)
}

/// A `Z`-linear combination of generators `[V -> X]`, each stored as its
/// canonical structure morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotivicClass {
    space: Space,
    terms: BTreeMap<Morphism, i64>,
}

impl MotivicClass {
    pub fn zero(space: &Space) -> Self {
        MotivicClass { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn generator(h: &Morphism) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(canonical_generator(h), 1);
        MotivicClass { space: h.target().clone(), terms }
    }

    /// `[Z ↪ X]` for a canonical subvariety.
    pub fn indicator(z: &Subvariety) -> Self {
        MotivicClass::generator(&z.embedding())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Morphism, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_generator(&mut self, h: &Morphism, c: i64) -> Result<()> {
        if h.target() != &self.space {
            return Err(structural(format!("generator over {} added to class over {}", h.target(), self.space)));
        }
        add_term(&mut self.terms, canonical_generator(h), c);
        prune(&mut self.terms);
        Ok(())
    }

    pub fn add(&self, other: &MotivicClass) -> Result<MotivicClass> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &MotivicClass) -> Result<MotivicClass> {
        self.combine(other, -1)
    }

    pub fn scaled(&self, c: i64) -> MotivicClass {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        prune(&mut terms);
        MotivicClass { space: self.space.clone(), terms }
    }

    fn combine(&self, other: &MotivicClass, sign: i64) -> Result<MotivicClass> {
        if self.space != other.space {
            return Err(structural(format!("motivic classes over {} and {}", self.space, other.space)));
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            add_term(&mut terms, k.clone(), sign * v);
        }
        prune(&mut terms);
        Ok(MotivicClass { space: self.space.clone(), terms })
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(&self.terms, f, |h| format!("[{h}]"))
    }
}

/// `f_*[V -> X] = [V -> X -> Y]`.
pub fn mot_pushforward(f: &Morphism, m: &MotivicClass) -> Result<MotivicClass> {
    if m.space() != f.source() {
        return Err(structural(format!("mot_pushforward: class over {}, map from {}", m.space(), f.source())));
    }
    let mut out = MotivicClass::zero(f.target());
    for (h, c) in &m.terms {
        out.add_generator(&h.then(f)?, *c)?;
    }
    Ok(out)
}

/// Smooth pullback through the fiber square of `g` and the structure map.
pub fn mot_pullback(g: &Morphism, m: &MotivicClass) -> Result<MotivicClass> {
    g.require_smooth("mot_pullback")?;
    if m.space() != g.target() {
        return Err(structural(format!("mot_pullback: class over {}, map to {}", m.space(), g.target())));
    }
    let mut out = MotivicClass::zero(g.source());
    for (h, c) in &m.terms {
        let sq = fiber_product(g, h)?;
        out.add_generator(&sq.h_tilde, *c)?;
    }
    Ok(out)
}

/// `T_y*[V --h--> X] = h_*(T_y(TV) ∩ [V])`.
pub fn hirzebruch_ty(m: &MotivicClass) -> RingElement {
    let mut acc = RingElement::zero(&m.space.chow_ring());
    for (h, c) in &m.terms {
        let ty = genus_class(GenusKind::Hirzebruch, &tangent_roots(h.source()));
        let pushed = chow_pushforward(h, &ty).expect("class on V");
        acc = &acc + &pushed.scale_rational(&(*c).into());
    }
    acc
}

/// `ε[V --h--> X] = h_* 1_V`.
pub fn epsilon_map(m: &MotivicClass) -> ConstructibleFn {
    let mut acc = ConstructibleFn::zero(&m.space);
    for (h, c) in &m.terms {
        let one = ConstructibleFn::indicator(&Subvariety::full(h.source()));
        let pushed = cf_pushforward(h, &one).expect("function on V");
        acc = acc.add(&pushed.scaled(*c)).expect("same space");
    }
    acc
}

/// `Γ[V --h--> X] = h_! [O_V]`.
pub fn gamma_map(m: &MotivicClass) -> KClass {
    let mut acc = RingElement::zero(&m.space.k_ring());
    for (h, c) in &m.terms {
        let one = RingElement::one(&h.source().k_ring());
        let pushed = k_pushforward(h, &one).expect("class on V");
        acc = &acc + &pushed.scale_rational(&(*c).into());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Rational, YPoly};
    use crate::spaces::integrate;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn sub(x: &Space, d: &[u32]) -> Subvariety {
        Subvariety::new(x, d.to_vec()).unwrap()
    }

    fn h_poly(x: &Space, coeffs: &[i64]) -> RingElement {
        let ring = x.chow_ring();
        coeffs.iter().enumerate().fold(RingElement::zero(&ring), |acc, (k, &c)| {
            &acc + &RingElement::monomial(&ring, vec![k as u32], YPoly::from_int(c))
        })
    }

    #[test]
    fn cf_push_pull_examples() {
        let p2 = p(&[2]);
        let to_pt = Morphism::to_point(&p2);
        let pt_one = ConstructibleFn::indicator(&Subvariety::full(&Space::point()));
        let pushed = cf_pushforward(&to_pt, &ConstructibleFn::indicator(&Subvariety::full(&p2))).unwrap();
        assert_eq!(pushed, pt_one.scaled(3));
        let pushed = cf_pushforward(&to_pt, &ConstructibleFn::indicator(&sub(&p2, &[1]))).unwrap();
        assert_eq!(pushed, pt_one.scaled(2));

        let x = p(&[1, 1]);
        let proj = Morphism::projection(&x, &[0]).unwrap();
        let pulled = cf_pullback(&proj, &ConstructibleFn::indicator(&sub(&p(&[1]), &[0]))).unwrap();
        assert_eq!(pulled, ConstructibleFn::indicator(&sub(&x, &[0, 1])));

        let emb = Morphism::new(p(&[1]), p2.clone(), vec![Some(0)]).unwrap();
        assert!(cf_pullback(&emb, &ConstructibleFn::zero(&p2)).is_err());
    }

    #[test]
    fn mac_chern_examples() {
        let p2 = p(&[2]);
        assert_eq!(mac_chern(&ConstructibleFn::indicator(&Subvariety::full(&p2))), h_poly(&p2, &[1, 3, 3]));
        assert_eq!(mac_chern(&ConstructibleFn::indicator(&sub(&p2, &[1]))), h_poly(&p2, &[0, 1, 2]));
        assert!(mac_chern(&ConstructibleFn::zero(&p2)).is_zero());
    }

    #[test]
    fn constructible_values() {
        let p2 = p(&[2]);
        let mut phi = ConstructibleFn::indicator(&Subvariety::full(&p2)).scaled(2);
        phi.add_indicator(&sub(&p2, &[0]), -1).unwrap();
        assert_eq!(phi.value_on(&[0]), 1);
        assert_eq!(phi.value_on(&[2]), 2);
        assert_eq!(phi.to_string(), "-1*ind(L(0)) + 2*ind(L(2))");
    }

    #[test]
    fn motivic_push_pull_examples() {
        let x = p(&[1]);
        let proj = Morphism::projection(&p(&[1, 1]), &[0]).unwrap();
        let pulled = mot_pullback(&proj, &MotivicClass::generator(&Morphism::identity(&x))).unwrap();
        assert_eq!(pulled, MotivicClass::generator(&Morphism::identity(&p(&[1, 1]))));

        let pushed =
            mot_pushforward(&Morphism::to_point(&x), &MotivicClass::generator(&Morphism::identity(&x))).unwrap();
        assert_eq!(pushed, MotivicClass::generator(&Morphism::to_point(&x)));

        let emb = Morphism::new(x.clone(), p(&[2]), vec![Some(0)]).unwrap();
        let pushed = mot_pushforward(&emb, &MotivicClass::generator(&Morphism::base_point(&x))).unwrap();
        assert_eq!(pushed, MotivicClass::generator(&Morphism::base_point(&p(&[2]))));
    }

    #[test]
    fn canonical_generators_identify_isomorphic_sources() {
        // [P1 x P2 -> pt] and [P2 x P1 -> pt] are the same generator.
        let a = Morphism::to_point(&p(&[1, 2]));
        let b = Morphism::to_point(&p(&[2, 1]));
        assert_eq!(MotivicClass::generator(&a), MotivicClass::generator(&b));
        let c = Morphism::projection(&p(&[1, 2]), &[1]).unwrap();
        let d = Morphism::projection(&p(&[2, 1]), &[0]).unwrap();
        assert_eq!(MotivicClass::generator(&c), MotivicClass::generator(&d));
        let e = Morphism::projection(&p(&[2, 2]), &[0]).unwrap();
        assert_ne!(MotivicClass::generator(&c), MotivicClass::generator(&e));
    }

    #[test]
    fn hirzebruch_examples() {
        let p1 = p(&[1]);
        let t = hirzebruch_ty(&MotivicClass::generator(&Morphism::identity(&p1)));
        let one_minus_y = YPoly::from_coeffs(vec![Rational::one(), Rational::from(-1)]);
        let ring = p1.chow_ring();
        assert_eq!(t, &RingElement::one(&ring) + &RingElement::monomial(&ring, vec![1], one_minus_y));

        let p2 = p(&[2]);
        let t = hirzebruch_ty(&MotivicClass::generator(&Morphism::identity(&p2)));
        assert_eq!(integrate(&p2, &t).unwrap(), YPoly::from_coeffs(vec![1.into(), (-1).into(), 1.into()]));

        let t = hirzebruch_ty(&MotivicClass::generator(&Morphism::base_point(&p1)));
        assert_eq!(t, RingElement::generator(&ring, 0));
    }

    #[test]
    fn comparison_map_examples() {
        let p2 = p(&[2]);
        let line = MotivicClass::indicator(&sub(&p2, &[1]));
        assert_eq!(epsilon_map(&line), ConstructibleFn::indicator(&sub(&p2, &[1])));
        let kr = p2.k_ring();
        assert_eq!(gamma_map(&line), RingElement::generator(&kr, 0));
        let pt = MotivicClass::indicator(&sub(&p2, &[0]));
        assert_eq!(gamma_map(&pt), RingElement::generator(&kr, 0).pow(2));
    }
}

//! Correspondences `X <- M -> Y`, their composition through fiber
//! products, the groups `Corr(X, Y)^+` and the functor operators.
//!
//! Conventions: a correspondence `α = (X <-f- M -g-> Y)` acts as
//! `F(α) = f_* (twist · g^*) : F(Y) -> F(X)`, and `α ∘ β` for
//! `β: Y <- N -> Z` satisfies `F(α ∘ β) = F(α) · F(β)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::check::CheckReport;
use crate::error::{structural, Error, Result};
use crate::functor::{EvalOptions, FunctorId, Transformation, Value};
use crate::operator::LinearOperator;
use crate::spaces::{fiber_product, Morphism, Space};

/// Morphism classes usable as leg predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LegClass {
    Proper,
    Smooth,
    Lci,
    Iso,
}

impl LegClass {
    pub fn name(self) -> &'static str {
        match self {
            LegClass::Proper => "proper",
            LegClass::Smooth => "smooth",
            LegClass::Lci => "lci",
            LegClass::Iso => "iso",
        }
    }

    pub fn admits(self, f: &Morphism) -> bool {
        let c = f.classify();
        match self {
            LegClass::Proper => c.is_proper,
            LegClass::Smooth => c.is_smooth,
            LegClass::Lci => c.is_lci,
            LegClass::Iso => c.is_iso,
        }
    }
}

impl fmt::Display for LegClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LegClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [LegClass::Proper, LegClass::Smooth, LegClass::Lci, LegClass::Iso]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown morphism class `{s}`")))
    }
}

/// The iso `M' -> M` where factor `k` of `M'` is factor `order[k]` of `m`.
pub fn reorder(m: &Space, order: &[usize]) -> Morphism {
    let new = Space::new(order.iter().map(|&i| m.dims()[i]).collect());
    let mut assign = vec![None; order.len()];
    for (k, &i) in order.iter().enumerate() {
        assign[i] = Some(k);
    }
    Morphism::new(new, m.clone(), assign).expect("reordering is an isomorphism")
}

fn role(inv: &[Option<usize>], i: usize) -> (u8, usize) {
    match inv[i] {
        Some(j) => (0, j),
        None => (1, 0),
    }
}

/// Apex factor order used by canonical forms: by dimension, then by which
/// target factor each leg sends it to. Factors with equal keys are dropped
/// by both legs and so interchangeable.
pub(crate) fn canonical_order(left: &Morphism, right: &Morphism) -> Vec<usize> {
    let dims = left.source().dims();
    let li = left.inverse_assignment();
    let ri = right.inverse_assignment();
    let mut order: Vec<usize> = (0..dims.len()).collect();
    order.sort_by_key(|&i| (dims[i], role(&li, i), role(&ri, i)));
    order
}

fn short_assignment(f: &Morphism) -> String {
    let parts: Vec<String> = f
        .assignment()
        .iter()
        .map(|a| match a {
            Some(i) => format!("s{}", i + 1),
            None => "pt".to_string(),
        })
        .collect();
    format!("[{}]", parts.join(","))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Correspondence {
    left: Morphism,
    right: Morphism,
    tags: (LegClass, LegClass),
}

impl Correspondence {
    /// A proper-smooth correspondence.
    pub fn new(left: Morphism, right: Morphism) -> Result<Self> {
        Correspondence::with_tags(left, right, (LegClass::Proper, LegClass::Smooth))
    }

    pub fn with_tags(left: Morphism, right: Morphism, tags: (LegClass, LegClass)) -> Result<Self> {
        if left.source() != right.source() {
            return Err(structural(format!("legs start at different apexes {} and {}", left.source(), right.source())));
        }
        if !tags.0.admits(&left) {
            return Err(Error::UnsupportedLeg(format!("left leg {left} is not {}", tags.0)));
        }
        if !tags.1.admits(&right) {
            return Err(Error::UnsupportedLeg(format!("right leg {right} is not {}", tags.1)));
        }
        Ok(Correspondence { left, right, tags })
    }

    pub fn identity(x: &Space) -> Self {
        let id = Morphism::identity(x);
        Correspondence { left: id.clone(), right: id, tags: (LegClass::Proper, LegClass::Smooth) }
    }

    pub fn apex(&self) -> &Space {
        self.left.source()
    }

    pub fn left(&self) -> &Morphism {
        &self.left
    }

    pub fn right(&self) -> &Morphism {
        &self.right
    }

    pub fn source(&self) -> &Space {
        self.left.target()
    }

    pub fn target(&self) -> &Space {
        self.right.target()
    }

    pub fn tags(&self) -> (LegClass, LegClass) {
        self.tags
    }

    /// Precompose both legs with an isomorphism `p: M' -> M`.
    pub fn reindex(&self, p: &Morphism) -> Result<Self> {
        if !p.is_iso() || p.target() != self.apex() {
            return Err(structural(format!("{p} is not an automorphism onto the apex")));
        }
        Ok(Correspondence { left: p.then(&self.left)?, right: p.then(&self.right)?, tags: self.tags })
    }

    /// Representative of the isomorphism class; idempotent.
    pub fn canonicalize(&self) -> Self {
        let order = canonical_order(&self.left, &self.right);
        self.reindex(&reorder(self.apex(), &order)).expect("reordering is an automorphism")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize() == *self
    }

    /// `self ∘ other` via the fiber product of `self.right` and
    /// `other.left`, canonicalized.
    pub fn compose(&self, other: &Correspondence) -> Result<Correspondence> {
        let square = self.compose_square(other)?;
        let left = square.h_tilde.then(&self.left)?;
        let right = square.g_tilde.then(&other.right)?;
        Ok(Correspondence::with_tags(left, right, self.tags)?.canonicalize())
    }

    /// The fiber square used by [`Correspondence::compose`].
    pub fn compose_square(&self, other: &Correspondence) -> Result<crate::spaces::FiberSquare> {
        if self.target() != other.source() {
            return Err(structural(format!(
                "cannot compose: middle objects {} and {} differ",
                self.target(),
                other.source()
            )));
        }
        fiber_product(&self.right, &other.left)
    }

    /// `F(self)` applied to `v ∈ F(target)`.
    pub fn apply(&self, functor: FunctorId, v: &Value, opts: EvalOptions) -> Result<Value> {
        let pulled = functor.pull(&self.right, v, opts)?;
        functor.push(&self.left, &pulled, opts)
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} <-{}- {} -{}-> {}",
            self.source(),
            short_assignment(&self.left),
            self.apex(),
            short_assignment(&self.right),
            self.target()
        )
    }
}

impl fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tabulate a linear map `F_in(y) -> F_out(x)` on the column basis of
/// `f_in` at `y`.
pub fn tabulate(
    f_in: FunctorId,
    y: &Space,
    f_out: FunctorId,
    x: &Space,
    apply: impl Fn(&Value) -> Result<Value>,
) -> Result<LinearOperator> {
    let mut columns = Vec::new();
    for b in f_in.basis(y) {
        let image = apply(&b)?;
        columns.push((b.label(), image.coordinates()));
    }
    LinearOperator::from_columns(f_out.row_labels(x), columns)
}

/// An element of `Corr(X, Y)^+`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrSum {
    source: Space,
    target: Space,
    terms: BTreeMap<Correspondence, i64>,
}

impl CorrSum {
    pub fn zero(x: &Space, y: &Space) -> Self {
        CorrSum { source: x.clone(), target: y.clone(), terms: BTreeMap::new() }
    }

    pub fn single(c: &Correspondence) -> Self {
        let mut s = CorrSum::zero(c.source(), c.target());
        s.add_term(c, 1).expect("endpoints match");
        s
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<Correspondence, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: &Correspondence, n: i64) -> Result<()> {
        if c.source() != &self.source || c.target() != &self.target {
            return Err(structural(format!(
                "correspondence {c} added to a sum from {} to {}",
                self.source, self.target
            )));
        }
        let key = c.canonicalize();
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, other: &CorrSum) -> Result<CorrSum> {
        let mut out = self.clone();
        for (c, n) in &other.terms {
            out.add_term(c, *n)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> CorrSum {
        let mut out = CorrSum::zero(&self.source, &self.target);
        for (c, n) in &self.terms {
            out.add_term(c, n * k).expect("same endpoints");
        }
        out
    }

    pub fn sub(&self, other: &CorrSum) -> Result<CorrSum> {
        self.add(&other.scaled(-1))
    }

    /// Bilinear extension of [`Correspondence::compose`].
    pub fn compose(&self, other: &CorrSum) -> Result<CorrSum> {
        if self.target != other.source {
            return Err(structural(format!("cannot compose sums through {} and {}", self.target, other.source)));
        }
        let mut out = CorrSum::zero(&self.source, &other.target);
        for (a, n) in &self.terms {
            for (b, m) in &other.terms {
                out.add_term(&a.compose(b)?, n * m)?;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, functor: FunctorId, v: &Value, opts: EvalOptions) -> Result<Value> {
        let mut acc = functor.zero(&self.source);
        for (c, n) in &self.terms {
            acc = acc.add(&c.apply(functor, v, opts)?.scaled(*n))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CorrSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, n)| format!("{n}*({c})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for CorrSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn corr_operator(functor: FunctorId, a: &CorrSum) -> Result<LinearOperator> {
    corr_operator_with(functor, a, EvalOptions::default())
}

pub fn corr_operator_with(functor: FunctorId, a: &CorrSum, opts: EvalOptions) -> Result<LinearOperator> {
    tabulate(functor, a.target(), functor, a.source(), |v| a.apply(functor, v, opts))
}

/// `F(α ∘ β)` against `F(α) · F(β)`, column by column.
pub fn functoriality_sides(
    functor: FunctorId,
    alpha: &Correspondence,
    beta: &Correspondence,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let composite = alpha.compose(beta)?;
    let (x, z) = (alpha.source(), beta.target());
    let lhs = tabulate(functor, z, functor, x, |v| composite.apply(functor, v, opts))?;
    let rhs = tabulate(functor, z, functor, x, |v| alpha.apply(functor, &beta.apply(functor, v, opts)?, opts))?;
    Ok((lhs, rhs))
}

/// `τ_X · F(α)` against `F'(α) · τ_Y`.
pub fn naturality_sides(
    tau: Transformation,
    alpha: &Correspondence,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let (src, tgt) = (tau.source(), tau.target());
    let (x, y) = (alpha.source(), alpha.target());
    let lhs = tabulate(src, y, tgt, x, |v| tau.apply(&alpha.apply(src, v, opts)?))?;
    let rhs = tabulate(src, y, tgt, x, |v| alpha.apply(tgt, &tau.apply(v)?, opts))?;
    Ok((lhs, rhs))
}

pub fn check_functoriality(
    functor: FunctorId,
    alpha: &Correspondence,
    beta: &Correspondence,
    opts: EvalOptions,
    report: &mut CheckReport,
) {
    let case = format!("{functor}: ({alpha}) o ({beta})");
    report.compare_result(case, functoriality_sides(functor, alpha, beta, opts));
}

pub fn check_naturality(tau: Transformation, alpha: &Correspondence, opts: EvalOptions, report: &mut CheckReport) {
    let case = format!("{tau}: {alpha}");
    report.compare_result(case, naturality_sides(tau, alpha, opts));
}

/// Isomorphic correspondences (apex reordered by `order`) give equal
/// operators.
pub fn check_iso_invariance(functor: FunctorId, alpha: &Correspondence, order: &[usize], report: &mut CheckReport) {
    let case = format!("{functor}: {alpha} reordered by {order:?}");
    let sides = (|| {
        let twin = alpha.reindex(&reorder(alpha.apex(), order))?;
        let opts = EvalOptions::default();
        let (x, y) = (alpha.source(), alpha.target());
        let lhs = tabulate(functor, y, functor, x, |v| alpha.apply(functor, v, opts))?;
        let rhs = tabulate(functor, y, functor, x, |v| twin.apply(functor, v, opts))?;
        Ok((lhs, rhs))
    })();
    report.compare_result(case, sides);
}

/// Proper-identity correspondences act by pushforward, identity-smooth
/// ones by twisted pullback.
pub fn check_restrictions(functor: FunctorId, alpha: &Correspondence, report: &mut CheckReport) {
    let opts = EvalOptions::default();
    let m = alpha.apex();
    let f = alpha.left().clone();
    let g = alpha.right().clone();
    let pro_id = Correspondence::new(f.clone(), Morphism::identity(m));
    let id_sm = Correspondence::new(Morphism::identity(m), g.clone());
    let push = (|| {
        let c = pro_id?;
        let lhs = tabulate(functor, m, functor, c.source(), |v| c.apply(functor, v, opts))?;
        let rhs = tabulate(functor, m, functor, c.source(), |v| functor.push(&f, v, opts))?;
        Ok((lhs, rhs))
    })();
    report.compare_result(format!("{functor}: pro-id {f}"), push);
    let pull = (|| {
        let c = id_sm?;
        let lhs = tabulate(functor, c.target(), functor, m, |v| c.apply(functor, v, opts))?;
        let rhs = tabulate(functor, c.target(), functor, m, |v| functor.pull(&g, v, opts))?;
        Ok((lhs, rhs))
    })();
    report.compare_result(format!("{functor}: id-sm {g}"), pull);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::YPoly;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn over_point(m: &Space) -> Correspondence {
        Correspondence::new(Morphism::to_point(m), Morphism::to_point(m)).unwrap()
    }

    fn scalar(functor: FunctorId, c: &Correspondence) -> YPoly {
        let op = corr_operator(functor, &CorrSum::single(c)).unwrap();
        op.entry(0, 0).clone()
    }

    #[test]
    fn canonical_forms() {
        let a = over_point(&p(&[1, 2]));
        let b = over_point(&p(&[2, 1]));
        assert_eq!(a.canonicalize(), b.canonicalize());
        let c = a.canonicalize();
        assert_eq!(c.canonicalize(), c);
        assert!(c.is_canonical());
    }

    #[test]
    fn composition_over_a_point() {
        let a = over_point(&p(&[1]));
        let b = over_point(&p(&[2]));
        assert_eq!(a.compose(&b).unwrap(), over_point(&p(&[1, 2])).canonicalize());
    }

    #[test]
    fn identity_is_a_unit() {
        let x = p(&[1]);
        let y = p(&[2]);
        let m = p(&[2, 1]);
        let left = Morphism::new(m.clone(), x.clone(), vec![Some(1)]).unwrap();
        let right = Morphism::projection(&m, &[0]).unwrap();
        let a = Correspondence::new(left, right).unwrap();
        assert_eq!(a.compose(&Correspondence::identity(&y)).unwrap(), a.canonicalize());
        assert_eq!(Correspondence::identity(&x).compose(&a).unwrap(), a.canonicalize());
    }

    #[test]
    fn composition_errors() {
        let a = over_point(&p(&[1]));
        let emb = Morphism::new(p(&[1]), p(&[2]), vec![Some(0)]).unwrap();
        let b = Correspondence::with_tags(Morphism::identity(&p(&[1])), emb.clone(), (LegClass::Proper, LegClass::Lci))
            .unwrap();
        assert!(matches!(a.compose(&b), Err(Error::Structural(_))));
        let c = Correspondence::with_tags(
            Morphism::identity(&p(&[2])),
            Morphism::to_point(&p(&[2])),
            (LegClass::Proper, LegClass::Smooth),
        )
        .unwrap();
        assert!(matches!(b.compose(&c), Err(Error::UnsupportedLeg(_))));
        assert!(Correspondence::new(Morphism::identity(&p(&[1])), emb).is_err());
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(scalar(FunctorId::HTodd, &over_point(&p(&[2]))), YPoly::one());
        assert_eq!(scalar(FunctorId::HChern, &over_point(&p(&[1]))), YPoly::from_int(2));
        assert_eq!(scalar(FunctorId::HChern, &over_point(&p(&[1, 2]))), YPoly::from_int(6));
        assert_eq!(scalar(FunctorId::F, &over_point(&p(&[1, 1]))), YPoly::from_int(4));
        assert_eq!(scalar(FunctorId::G0, &over_point(&p(&[3]))), YPoly::one());
        // chi_y(P^2) = 1 - y + y^2
        let chi_y = YPoly::from_coeffs(vec![1.into(), (-1).into(), 1.into()]);
        assert_eq!(scalar(FunctorId::HHirz, &over_point(&p(&[2]))), chi_y);
    }

    #[test]
    fn identity_operator_is_identity() {
        let x = p(&[1, 2]);
        for f in FunctorId::ALL.into_iter().filter(|f| f.is_finite()) {
            let op = corr_operator(f, &CorrSum::single(&Correspondence::identity(&x))).unwrap();
            assert!(op.is_identity(), "{f}");
        }
    }

    #[test]
    fn functoriality_example() {
        let a = over_point(&p(&[1]));
        let b = over_point(&p(&[2]));
        let (l, r) = functoriality_sides(FunctorId::HChern, &a, &b, EvalOptions::default()).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.entry(0, 0), &YPoly::from_int(6));
    }

    #[test]
    fn td_naturality_is_grr_for_p1() {
        // (pt <- P^1 -id-> P^1): G0 sends O(d) to chi = d + 1.
        let x = p(&[1]);
        let a = Correspondence::new(Morphism::to_point(&x), Morphism::identity(&x)).unwrap();
        let (l, r) = naturality_sides(Transformation::TdBfm, &a, EvalOptions::default()).unwrap();
        assert_eq!(l, r);
        let mut report = CheckReport::new("untwisted");
        let b = over_point(&x);
        let opts = EvalOptions { twist: false, ..Default::default() };
        check_naturality(Transformation::TdBfm, &b, opts, &mut report);
        assert!(!report.ok());
        assert_eq!(report.failures[0].witness, "1");
    }

    #[test]
    fn sums_are_bilinear() {
        let a = over_point(&p(&[1]));
        let b = over_point(&p(&[2]));
        let c = over_point(&p(&[1, 1]));
        let ab = CorrSum::single(&a).add(&CorrSum::single(&b)).unwrap();
        let lhs = ab.compose(&CorrSum::single(&c)).unwrap();
        let rhs = CorrSum::single(&a)
            .compose(&CorrSum::single(&c))
            .unwrap()
            .add(&CorrSum::single(&b).compose(&CorrSum::single(&c)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        let zero = CorrSum::zero(&Space::point(), &Space::point());
        assert!(zero.compose(&CorrSum::single(&c)).unwrap().is_zero());
        assert!(ab.sub(&ab).unwrap().is_zero());
    }

    #[test]
    fn hecke_ring_of_the_point() {
        let spaces = [p(&[1]), p(&[2]), p(&[1, 1]), p(&[3])];
        for m in &spaces {
            for n in &spaces {
                let mn = over_point(m).compose(&over_point(n)).unwrap();
                let nm = over_point(n).compose(&over_point(m)).unwrap();
                assert_eq!(mn, nm);
                assert_eq!(mn, over_point(&m.product(n)).canonicalize());
            }
        }
    }
}

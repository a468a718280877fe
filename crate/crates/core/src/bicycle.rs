//! Cobordism bicycles `[X <-p- V -s-> Y; E]`: proper-smooth
//! correspondences carrying a line-bundle sum on the apex.
//!
//! A bicycle acts `F(Y) -> F(X)` by `v -> p_*(twist · s^* v)`, where the
//! twist depends on the functor, e.g. `cl(E)` or `td(T_s) ch(E)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::classes::{bundle_class, chern_character, GenusKind};
use crate::corr::{canonical_order, reorder, tabulate, Correspondence};
use crate::error::{structural, Error, Result};
use crate::functor::{EvalOptions, FunctorId, Value};
use crate::ktheory::{k_of_bundle, k_pullback, k_pushforward_with};
use crate::operator::LinearOperator;
use crate::series::RingElement;
use crate::spaces::{chow_pullback, chow_pushforward, fiber_product, relative_genus, Morphism, Space, VectorBundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductMode {
    Whitney,
    Tensor,
}

impl ProductMode {
    pub fn name(self) -> &'static str {
        match self {
            ProductMode::Whitney => "whitney",
            ProductMode::Tensor => "tensor",
        }
    }

    fn combine(self, e: &VectorBundle, f: &VectorBundle) -> Result<VectorBundle> {
        match self {
            ProductMode::Whitney => e.direct_sum(f),
            ProductMode::Tensor => e.tensor(f),
        }
    }

    /// Rank of the unit bicycle's bundle.
    pub fn unit_rank(self) -> usize {
        match self {
            ProductMode::Whitney => 0,
            ProductMode::Tensor => 1,
        }
    }
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "whitney" => Ok(ProductMode::Whitney),
            "tensor" => Ok(ProductMode::Tensor),
            _ => Err(Error::Parse(format!("unknown product `{s}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicycle {
    corr: Correspondence,
    bundle: VectorBundle,
}

impl Bicycle {
    pub fn new(left: Morphism, right: Morphism, bundle: VectorBundle) -> Result<Self> {
        let corr = Correspondence::new(left, right)?;
        if bundle.base() != corr.apex() {
            return Err(structural(format!("bundle lives on {}, apex is {}", bundle.base(), corr.apex())));
        }
        Ok(Bicycle { corr, bundle })
    }

    pub fn from_corr(corr: &Correspondence, bundle: VectorBundle) -> Result<Self> {
        Bicycle::new(corr.left().clone(), corr.right().clone(), bundle)
    }

    /// `[X <-id- X -id-> X; O^{⊕rank}]`: rank 0 is the unit for the
    /// Whitney product, rank 1 for the tensor product.
    pub fn identity(x: &Space, rank: usize) -> Self {
        let bundle = VectorBundle::new(x, vec![vec![0; x.factor_count()]; rank]).expect("trivial summands");
        Bicycle { corr: Correspondence::identity(x), bundle }
    }

    pub fn corr(&self) -> &Correspondence {
        &self.corr
    }

    pub fn bundle(&self) -> &VectorBundle {
        &self.bundle
    }

    pub fn left(&self) -> &Morphism {
        self.corr.left()
    }

    pub fn right(&self) -> &Morphism {
        self.corr.right()
    }

    pub fn apex(&self) -> &Space {
        self.corr.apex()
    }

    pub fn source(&self) -> &Space {
        self.corr.source()
    }

    pub fn target(&self) -> &Space {
        self.corr.target()
    }

    /// `(relative dimension of the right leg, rank of E)`.
    pub fn grade(&self) -> (u32, usize) {
        let n = self.right().source().dim() - self.right().target().dim();
        (n, self.bundle.rank())
    }

    fn reindexed(&self, order: &[usize]) -> Bicycle {
        let p = reorder(self.apex(), order);
        Bicycle {
            corr: self.corr.reindex(&p).expect("automorphism of the apex"),
            bundle: self.bundle.pullback(&p).expect("bundle on the apex"),
        }
    }

    /// Canonical representative: apex factors in correspondence order;
    /// factors both legs ignore are interchangeable, and among those
    /// orders the one with the smallest bundle description wins.
    pub fn canonicalize(&self) -> Bicycle {
        let base = canonical_order(self.left(), self.right());
        let dims = self.apex().dims();
        let li = self.left().inverse_assignment();
        let ri = self.right().inverse_assignment();
        let free = |i: usize| li[i].is_none() && ri[i].is_none();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut k = 0;
        while k < base.len() {
            let mut end = k + 1;
            if free(base[k]) {
                while end < base.len() && free(base[end]) && dims[base[end]] == dims[base[k]] {
                    end += 1;
                }
            }
            groups.push(base[k..end].to_vec());
            k = end;
        }
        groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|parts| self.reindexed(&parts.concat()))
            .min_by(|a, b| a.bundle.cmp(&b.bundle))
            .unwrap_or_else(|| self.reindexed(&base))
    }

    /// `self ∘ other` with the bundles pulled back to the fiber product and
    /// combined by `mode`.
    pub fn product(&self, mode: ProductMode, other: &Bicycle) -> Result<Bicycle> {
        let sq = self.corr.compose_square(&other.corr)?;
        let left = sq.h_tilde.then(self.left())?;
        let right = sq.g_tilde.then(other.right())?;
        let e = self.bundle.pullback(&sq.h_tilde)?;
        let f = other.bundle.pullback(&sq.g_tilde)?;
        Ok(Bicycle::new(left, right, mode.combine(&e, &f)?)?.canonicalize())
    }

    /// Pushforward along a proper `f: X -> X'` on the left.
    pub fn push_left(&self, f: &Morphism) -> Result<Bicycle> {
        Bicycle::new(self.left().then(f)?, self.right().clone(), self.bundle.clone())
    }

    /// Pushforward along a smooth `g: Y -> Y'` on the right.
    pub fn push_right(&self, g: &Morphism) -> Result<Bicycle> {
        g.require_smooth("right pushforward")?;
        Bicycle::new(self.left().clone(), self.right().then(g)?, self.bundle.clone())
    }

    /// Pullback along a smooth `f: X' -> X`: apex `X' ×_X V`.
    pub fn pull_left(&self, f: &Morphism) -> Result<Bicycle> {
        let sq = fiber_product(f, self.left())?;
        let right = sq.g_tilde.then(self.right())?;
        let bundle = self.bundle.pullback(&sq.g_tilde)?;
        Bicycle::new(sq.h_tilde, right, bundle)
    }

    /// Pullback along a proper `g: Y' -> Y`: apex `V ×_Y Y'`.
    pub fn pull_right(&self, g: &Morphism) -> Result<Bicycle> {
        let sq = fiber_product(self.right(), g)?;
        let left = sq.h_tilde.then(self.left())?;
        let bundle = self.bundle.pullback(&sq.h_tilde)?;
        Bicycle::new(left, sq.g_tilde, bundle)
    }

    /// `f_{**}` for proper smooth `f: X -> Y` on a bicycle over `(X, X)`.
    pub fn double_push(&self, f: &Morphism) -> Result<Bicycle> {
        f.require_smooth("double pushforward")?;
        self.expect_endo(f.source())?;
        Bicycle::new(self.left().then(f)?, self.right().then(f)?, self.bundle.clone())
    }

    /// `f^{**}` for proper smooth `f: X -> Y` on a bicycle over `(Y, Y)`,
    /// built from the two fiber squares `X ×_Y V` (along `p`) and
    /// `V ×_Y X` (along `s`) and their fiber product over `V`.
    pub fn double_pull(&self, f: &Morphism) -> Result<Bicycle> {
        f.require_smooth("double pullback")?;
        self.expect_endo(f.target())?;
        let v1 = fiber_product(f, self.left())?; // p' = h̃, f̂ = g̃
        let v2 = fiber_product(f, self.right())?; // s' = h̃, f' = g̃
        let w = fiber_product(&v1.g_tilde, &v2.g_tilde)?; // f'' = h̃, f̃ = g̃
        let left = w.h_tilde.then(&v1.h_tilde)?;
        let right = w.g_tilde.then(&v2.h_tilde)?;
        let bundle = self.bundle.pullback(&w.g_tilde.then(&v2.g_tilde)?)?;
        Bicycle::new(left, right, bundle)
    }

    fn expect_endo(&self, x: &Space) -> Result<()> {
        if self.source() != x || self.target() != x {
            return Err(structural(format!(
                "expected a bicycle over ({x}, {x}), got ({}, {})",
                self.source(),
                self.target()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, functor: BicycleFunctor, v: &Value, opts: EvalOptions) -> Result<Value> {
        let s = self.right();
        let p = self.left();
        match (functor, v) {
            (BicycleFunctor::G0Tensor, Value::K(a)) => {
                let twisted = &k_of_bundle(&self.bundle) * &k_pullback(s, a)?;
                Ok(Value::K(k_pushforward_with(p, &twisted, opts.rules)?))
            }
            (BicycleFunctor::G0Tensor, _) => Err(structural("G0tensor acts on K-classes")),
            (_, Value::Chow(c)) => {
                let twist = functor.twist(self, opts);
                let pulled = chow_pullback(s, c)?;
                Ok(Value::Chow(chow_pushforward(p, &(&twist * &pulled))?))
            }
            _ => Err(structural(format!("{functor} acts on Chow classes"))),
        }
    }
}

impl fmt::Display for Bicycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.corr, self.bundle)
    }
}

impl fmt::Debug for Bicycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Z-linear combination of canonical bicycles from `X` to `Y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BicycleSum {
    source: Space,
    target: Space,
    terms: BTreeMap<Bicycle, i64>,
}

impl BicycleSum {
    pub fn zero(x: &Space, y: &Space) -> Self {
        BicycleSum { source: x.clone(), target: y.clone(), terms: BTreeMap::new() }
    }

    pub fn single(b: &Bicycle) -> Self {
        let mut s = BicycleSum::zero(b.source(), b.target());
        s.add_term(b, 1).expect("endpoints match");
        s
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<Bicycle, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: &Bicycle, n: i64) -> Result<()> {
        if b.source() != &self.source || b.target() != &self.target {
            return Err(structural(format!("bicycle {b} added to a sum from {} to {}", self.source, self.target)));
        }
        let key = b.canonicalize();
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, other: &BicycleSum) -> Result<BicycleSum> {
        let mut out = self.clone();
        for (b, n) in &other.terms {
            out.add_term(b, *n)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> BicycleSum {
        let mut out = BicycleSum::zero(&self.source, &self.target);
        for (b, n) in &self.terms {
            out.add_term(b, n * k).expect("same endpoints");
        }
        out
    }

    /// The homogeneous components `M_{n,r}(X, Y)^+`.
    pub fn by_grade(&self) -> BTreeMap<(u32, usize), BicycleSum> {
        let mut out: BTreeMap<(u32, usize), BicycleSum> = BTreeMap::new();
        for (b, n) in &self.terms {
            out.entry(b.grade())
                .or_insert_with(|| BicycleSum::zero(&self.source, &self.target))
                .add_term(b, *n)
                .expect("same endpoints");
        }
        out
    }

    pub fn product(&self, mode: ProductMode, other: &BicycleSum) -> Result<BicycleSum> {
        if self.target != other.source {
            return Err(structural(format!(
                "cannot compose bicycle sums through {} and {}",
                self.target, other.source
            )));
        }
        let mut out = BicycleSum::zero(&self.source, &other.target);
        for (a, n) in &self.terms {
            for (b, m) in &other.terms {
                out.add_term(&a.product(mode, b)?, n * m)?;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, functor: BicycleFunctor, v: &Value, opts: EvalOptions) -> Result<Value> {
        let mut acc = functor.value_functor().zero(&self.source);
        for (b, n) in &self.terms {
            acc = acc.add(&b.apply(functor, v, opts)?.scaled(*n))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for BicycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, n)| format!("{n}*[{b}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BicycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Functors on bicycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BicycleFunctor {
    /// `p_*(cl(E) ∩ s^*)`
    Hcl(GenusKind),
    /// `p_*(ch(E) ∩ s^*)`
    Hch,
    /// `p_*(cl1(T_s) ∩ cl2(E) ∩ s^*)`
    Hcl1cl2(GenusKind, GenusKind),
    /// `p_*(cl(T_s) ∩ ch(E) ∩ s^*)`
    Hclch(GenusKind),
    /// `p_*([E] ⊗ s^*)` on `G_0`
    G0Tensor,
    /// `p_*(td(T_s) ∩ ch(E) ∩ s^*)`
    Htdch,
}

impl BicycleFunctor {
    /// One instance of every family.
    pub fn representatives() -> Vec<BicycleFunctor> {
        let mut out = Vec::new();
        for k in GenusKind::ALL {
            out.push(BicycleFunctor::Hcl(k));
        }
        out.push(BicycleFunctor::Hch);
        for k1 in GenusKind::ALL {
            for k2 in GenusKind::ALL {
                out.push(BicycleFunctor::Hcl1cl2(k1, k2));
            }
        }
        for k in GenusKind::ALL {
            out.push(BicycleFunctor::Hclch(k));
        }
        out.push(BicycleFunctor::G0Tensor);
        out.push(BicycleFunctor::Htdch);
        out
    }

    /// The product under which this functor is covariant.
    pub fn product(self) -> ProductMode {
        match self {
            BicycleFunctor::Hcl(_) | BicycleFunctor::Hcl1cl2(..) => ProductMode::Whitney,
            _ => ProductMode::Tensor,
        }
    }

    /// Functor whose value groups (and bases) this one uses.
    pub fn value_functor(self) -> FunctorId {
        match self {
            BicycleFunctor::G0Tensor => FunctorId::G0,
            _ => FunctorId::HTodd,
        }
    }

    /// Genus applied to relative tangent bundles, if any.
    pub fn tangent_kind(self) -> Option<GenusKind> {
        match self {
            BicycleFunctor::Hcl1cl2(k, _) | BicycleFunctor::Hclch(k) => Some(k),
            BicycleFunctor::Htdch => Some(GenusKind::Todd),
            _ => None,
        }
    }

    /// Cohomology class on the apex multiplying `s^*`.
    fn twist(self, b: &Bicycle, opts: EvalOptions) -> RingElement {
        let e = match self {
            BicycleFunctor::Hcl(k) | BicycleFunctor::Hcl1cl2(_, k) => bundle_class(k, b.bundle()),
            _ => chern_character(b.bundle()),
        };
        match self.tangent_kind() {
            Some(k) if opts.twist => &relative_genus(k, b.right()) * &e,
            _ => e,
        }
    }
}

impl fmt::Display for BicycleFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicycleFunctor::Hcl(k) => write!(f, "Hcl({k})"),
            BicycleFunctor::Hch => f.write_str("Hch"),
            BicycleFunctor::Hcl1cl2(a, b) => write!(f, "Hcl1cl2({a},{b})"),
            BicycleFunctor::Hclch(k) => write!(f, "Hclch({k})"),
            BicycleFunctor::G0Tensor => f.write_str("G0tensor"),
            BicycleFunctor::Htdch => f.write_str("Htdch"),
        }
    }
}

impl FromStr for BicycleFunctor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown bicycle functor `{s}`"));
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(bad()),
            None => (s, None),
        };
        let kinds: Vec<GenusKind> = match args {
            Some(a) => a.split(',').map(|k| k.trim().parse()).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        match (head, kinds.as_slice()) {
            ("Hcl", [k]) => Ok(BicycleFunctor::Hcl(*k)),
            ("Hch", []) => Ok(BicycleFunctor::Hch),
            ("Hcl1cl2", [a, b]) => Ok(BicycleFunctor::Hcl1cl2(*a, *b)),
            ("Hclch", [k]) => Ok(BicycleFunctor::Hclch(*k)),
            ("G0tensor", []) => Ok(BicycleFunctor::G0Tensor),
            ("Htdch", []) => Ok(BicycleFunctor::Htdch),
            _ => Err(bad()),
        }
    }
}

pub fn bicycle_operator(functor: BicycleFunctor, b: &BicycleSum) -> Result<LinearOperator> {
    bicycle_operator_with(functor, b, EvalOptions::default())
}

pub fn bicycle_operator_with(functor: BicycleFunctor, b: &BicycleSum, opts: EvalOptions) -> Result<LinearOperator> {
    let f = functor.value_functor();
    tabulate(f, b.target(), f, b.source(), |v| b.apply(functor, v, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::YPoly;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn over_point(m: &Space, summands: Vec<Vec<i64>>) -> Bicycle {
        Bicycle::new(Morphism::to_point(m), Morphism::to_point(m), VectorBundle::new(m, summands).unwrap()).unwrap()
    }

    fn scalar(functor: BicycleFunctor, b: &Bicycle) -> YPoly {
        let x = b.source();
        let vf = functor.value_functor();
        let op = tabulate(vf, b.target(), vf, x, |v| b.apply(functor, v, EvalOptions::default())).unwrap();
        op.entry(0, 0).clone()
    }

    #[test]
    fn products_over_a_point() {
        let a = over_point(&p(&[1]), vec![vec![1]]);
        let b = over_point(&p(&[1]), vec![vec![2]]);
        let t = a.product(ProductMode::Tensor, &b).unwrap();
        let w = a.product(ProductMode::Whitney, &b).unwrap();
        let apex = p(&[1, 1]);
        assert_eq!(t, over_point(&apex, vec![vec![1, 2]]).canonicalize());
        assert_eq!(w, over_point(&apex, vec![vec![1, 0], vec![0, 2]]).canonicalize());
        assert_eq!(w.grade(), (2, 2));
        assert_eq!(t.grade(), (2, 1));
    }

    #[test]
    fn canonical_bundle_choice() {
        // The two P^1 factors are interchangeable; both orders give one key.
        let a = over_point(&p(&[1, 1]), vec![vec![1, 2]]);
        let b = over_point(&p(&[1, 1]), vec![vec![2, 1]]);
        assert_eq!(a.canonicalize(), b.canonicalize());
        assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
    }

    #[test]
    fn push_and_pull_examples() {
        let l = p(&[1]);
        let b = Bicycle::new(Morphism::identity(&l), Morphism::identity(&l), VectorBundle::line(&l, vec![3])).unwrap();
        let emb = Morphism::new(l.clone(), p(&[2]), vec![Some(0)]).unwrap();
        let pushed = b.push_left(&emb).unwrap();
        assert_eq!(pushed.source(), &p(&[2]));
        assert_eq!(pushed.bundle(), b.bundle());
        let to_pt = Morphism::to_point(&l);
        assert_eq!(b.grade().0, 0);
        assert_eq!(b.push_right(&to_pt).unwrap().grade().0, 1);
        assert!(b.push_right(&emb).is_err());

        let c = Bicycle::new(Morphism::to_point(&l), Morphism::identity(&l), VectorBundle::line(&l, vec![5])).unwrap();
        let pulled = c.pull_right(&Morphism::base_point(&l)).unwrap();
        assert!(pulled.apex().is_point());
        assert_eq!(pulled.bundle(), &VectorBundle::trivial(&Space::point()));
    }

    #[test]
    fn double_operations() {
        let l = p(&[1]);
        let f = Morphism::to_point(&l);
        let unit = Bicycle::identity(&Space::point(), 1);
        let up = unit.double_pull(&f).unwrap();
        let expected = Bicycle::new(
            Morphism::projection(&p(&[1, 1]), &[0]).unwrap(),
            Morphism::projection(&p(&[1, 1]), &[1]).unwrap(),
            VectorBundle::trivial(&p(&[1, 1])),
        )
        .unwrap();
        assert_eq!(up.canonicalize(), expected.canonicalize());
        assert_eq!(up.grade(), (1, 1));

        let b = Bicycle::identity(&l, 1);
        let down = b.double_push(&f).unwrap();
        assert_eq!(down.grade(), (b.grade().0 + 1, 1));

        let id = Morphism::identity(&l);
        assert_eq!(b.double_push(&id).unwrap(), b);
        assert_eq!(b.double_pull(&id).unwrap().canonicalize(), b.canonicalize());
    }

    #[test]
    fn functor_examples() {
        for d in -2..=3 {
            let b = over_point(&p(&[1]), vec![vec![d]]);
            assert_eq!(scalar(BicycleFunctor::Htdch, &b), YPoly::from_int(d + 1));
            assert_eq!(scalar(BicycleFunctor::G0Tensor, &b), YPoly::from_int(d + 1));
        }
        // cl(trivial) = 1 and p_* 1 = 0 in degree 0 over P^1.
        let trivial2 = over_point(&p(&[1]), vec![vec![0], vec![0]]);
        assert_eq!(scalar(BicycleFunctor::Hcl(GenusKind::Chern), &trivial2), YPoly::zero());

        let x = p(&[1, 1]);
        let id = Bicycle::identity(&x, 1);
        let op = tabulate(FunctorId::G0, &x, FunctorId::G0, &x, |v| {
            id.apply(BicycleFunctor::G0Tensor, v, EvalOptions::default())
        })
        .unwrap();
        assert!(op.is_identity());
    }

    #[test]
    fn functor_names_round_trip() {
        for f in BicycleFunctor::representatives() {
            assert_eq!(f.to_string().parse::<BicycleFunctor>().unwrap(), f);
        }
        assert!("Hcl(nope)".parse::<BicycleFunctor>().is_err());
        assert!("Hcl".parse::<BicycleFunctor>().is_err());
    }

    #[test]
    fn sums_bucket_by_grade() {
        let a = over_point(&p(&[1]), vec![vec![1]]);
        let b = over_point(&p(&[2]), vec![]);
        let s = BicycleSum::single(&a).add(&BicycleSum::single(&b).scaled(3)).unwrap();
        let g = s.by_grade();
        assert_eq!(g.len(), 2);
        assert_eq!(g[&(2, 0)].terms().values().copied().collect::<Vec<_>>(), vec![3]);
    }
}

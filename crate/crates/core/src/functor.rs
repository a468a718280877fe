//! The six functors on correspondences and the three natural
//! transformations between them, evaluated on explicit values.

use std::fmt;
use std::str::FromStr;

use crate::classes::GenusKind;
use crate::error::{structural, Error, Result};
use crate::ktheory::{k_pullback, k_pushforward_with, td_bfm, KClass, PushRules};
use crate::motivic::{
    cf_pullback, cf_pushforward, hirzebruch_ty, mac_chern, mot_pullback, mot_pushforward, ConstructibleFn, MotivicClass,
};
use crate::operator::Column;
use crate::series::{RingElement, YPoly};
use crate::spaces::{chow_pullback, chow_pushforward, relative_genus, Morphism, Space, Subvariety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorId {
    G0,
    HTodd,
    F,
    HChern,
    K0V,
    HHirz,
}

/// Evaluation switches. The defaults are the correct functors; the others
/// drive negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Multiply smooth pullbacks by the relative tangent class.
    pub twist: bool,
    pub rules: PushRules,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { twist: true, rules: PushRules::default() }
    }
}

impl FunctorId {
    pub const ALL: [FunctorId; 6] =
        [FunctorId::G0, FunctorId::HTodd, FunctorId::F, FunctorId::HChern, FunctorId::K0V, FunctorId::HHirz];

    pub fn name(self) -> &'static str {
        match self {
            FunctorId::G0 => "G0",
            FunctorId::HTodd => "HTodd",
            FunctorId::F => "F",
            FunctorId::HChern => "HChern",
            FunctorId::K0V => "K0V",
            FunctorId::HHirz => "HHirz",
        }
    }

    /// Genus of the relative tangent bundle inserted after pullback.
    pub fn twist_kind(self) -> Option<GenusKind> {
        match self {
            FunctorId::HTodd => Some(GenusKind::Todd),
            FunctorId::HChern => Some(GenusKind::Chern),
            FunctorId::HHirz => Some(GenusKind::Hirzebruch),
            _ => None,
        }
    }

    /// Whether pullback is defined along non-smooth (l.c.i.) maps.
    pub fn admits_lci_pullback(self) -> bool {
        matches!(self, FunctorId::G0 | FunctorId::HTodd)
    }

    /// Whether the value group is finite rank (so `basis` is a basis rather
    /// than a probe set).
    pub fn is_finite(self) -> bool {
        self != FunctorId::K0V
    }

    pub fn zero(self, x: &Space) -> Value {
        match self {
            FunctorId::G0 => Value::K(RingElement::zero(&x.k_ring())),
            FunctorId::F => Value::Cf(ConstructibleFn::zero(x)),
            FunctorId::K0V => Value::Mot(MotivicClass::zero(x)),
            _ => Value::Chow(RingElement::zero(&x.chow_ring())),
        }
    }

    /// Canonical basis of the value group at `x`. For `K0V`, whose group is
    /// not finitely generated, a fixed probe set: every canonical
    /// subvariety plus the projection `x × P^1 -> x`.
    pub fn basis(self, x: &Space) -> Vec<Value> {
        match self {
            FunctorId::G0 => monomials(&x.k_ring()).into_iter().map(Value::K).collect(),
            FunctorId::F => x.subvarieties().iter().map(|z| Value::Cf(ConstructibleFn::indicator(z))).collect(),
            FunctorId::K0V => {
                let mut out: Vec<Value> =
                    x.subvarieties().iter().map(|z| Value::Mot(MotivicClass::indicator(z))).collect();
                let fibered = x.product(&Space::projective(1));
                let keep: Vec<usize> = (0..x.factor_count()).collect();
                let proj = Morphism::projection(&fibered, &keep).expect("factors exist");
                out.push(Value::Mot(MotivicClass::generator(&proj)));
                out
            }
            _ => monomials(&x.chow_ring()).into_iter().map(Value::Chow).collect(),
        }
    }

    /// Row labels for operators into `F(x)`: the full basis for finite
    /// functors, `None` (collect from columns) for `K0V`.
    pub fn row_labels(self, x: &Space) -> Option<Vec<String>> {
        if !self.is_finite() {
            return None;
        }
        Some(self.basis(x).iter().map(Value::label).collect())
    }

    pub fn push(self, f: &Morphism, v: &Value, opts: EvalOptions) -> Result<Value> {
        match (self, v) {
            (FunctorId::G0, Value::K(a)) => Ok(Value::K(k_pushforward_with(f, a, opts.rules)?)),
            (FunctorId::F, Value::Cf(phi)) => Ok(Value::Cf(cf_pushforward(f, phi)?)),
            (FunctorId::K0V, Value::Mot(m)) => Ok(Value::Mot(mot_pushforward(f, m)?)),
            (FunctorId::HTodd | FunctorId::HChern | FunctorId::HHirz, Value::Chow(c)) => {
                Ok(Value::Chow(chow_pushforward(f, c)?))
            }
            _ => Err(self.mismatch(v)),
        }
    }

    /// Pullback followed by the relative tangent twist, when the functor
    /// has one and `opts.twist` is set.
    pub fn pull(self, g: &Morphism, v: &Value, opts: EvalOptions) -> Result<Value> {
        if !g.is_smooth() && !self.admits_lci_pullback() {
            return Err(Error::UnsupportedLeg(format!("{self} needs a smooth map for pullback, {g} is not smooth")));
        }
        match (self, v) {
            (FunctorId::G0, Value::K(a)) => Ok(Value::K(k_pullback(g, a)?)),
            (FunctorId::F, Value::Cf(phi)) => Ok(Value::Cf(cf_pullback(g, phi)?)),
            (FunctorId::K0V, Value::Mot(m)) => Ok(Value::Mot(mot_pullback(g, m)?)),
            (FunctorId::HTodd | FunctorId::HChern | FunctorId::HHirz, Value::Chow(c)) => {
                let pulled = chow_pullback(g, c)?;
                match self.twist_kind() {
                    Some(kind) if opts.twist => Ok(Value::Chow(&relative_genus(kind, g) * &pulled)),
                    _ => Ok(Value::Chow(pulled)),
                }
            }
            _ => Err(self.mismatch(v)),
        }
    }

    fn mismatch(self, v: &Value) -> Error {
        structural(format!("{self} cannot act on a {} value", v.kind_name()))
    }
}

impl fmt::Display for FunctorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctorId::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown functor `{s}`")))
    }
}

fn monomials(ring: &crate::series::NilpotentRing) -> Vec<RingElement> {
    ring.basis().into_iter().map(|e| RingElement::monomial(ring, e, YPoly::one())).collect()
}

/// `h1^2*h2`, or `1` for the unit monomial.
pub fn monomial_label(symbol: char, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("{symbol}{}", i + 1) } else { format!("{symbol}{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn subvariety_label(dims: &[u32]) -> String {
    let d: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
    format!("L({})", d.join(","))
}

/// An element of one of the functors' value groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Chow(RingElement),
    K(KClass),
    Cf(ConstructibleFn),
    Mot(MotivicClass),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Chow(_) => "Chow",
            Value::K(_) => "K",
            Value::Cf(_) => "constructible",
            Value::Mot(_) => "motivic",
        }
    }

    /// Coordinates in the canonical basis, keyed by basis label.
    pub fn coordinates(&self) -> Column {
        match self {
            Value::Chow(c) | Value::K(c) => {
                let sym = c.ring().symbol();
                c.terms().map(|(e, v)| (monomial_label(sym, e), v.clone())).collect()
            }
            Value::Cf(phi) => phi.terms().iter().map(|(s, c)| (subvariety_label(s), YPoly::from_int(*c))).collect(),
            Value::Mot(m) => m.terms().iter().map(|(h, c)| (format!("[{h}]"), YPoly::from_int(*c))).collect(),
        }
    }

    /// Label of a basis vector (the label of its single coordinate).
    pub fn label(&self) -> String {
        let coords = self.coordinates();
        match coords.iter().next() {
            Some((l, v)) if coords.len() == 1 && v.is_one() => l.clone(),
            _ => self.to_string(),
        }
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Chow(a), Value::Chow(b)) if a.ring() == b.ring() => Ok(Value::Chow(a + b)),
            (Value::K(a), Value::K(b)) if a.ring() == b.ring() => Ok(Value::K(a + b)),
            (Value::Cf(a), Value::Cf(b)) => Ok(Value::Cf(a.add(b)?)),
            (Value::Mot(a), Value::Mot(b)) => Ok(Value::Mot(a.add(b)?)),
            _ => Err(structural(format!("cannot add {} and {} values", self.kind_name(), other.kind_name()))),
        }
    }

    pub fn scaled(&self, c: i64) -> Value {
        match self {
            Value::Chow(a) => Value::Chow(a.scale_rational(&c.into())),
            Value::K(a) => Value::K(a.scale_rational(&c.into())),
            Value::Cf(a) => Value::Cf(a.scaled(c)),
            Value::Mot(a) => Value::Mot(a.scaled(c)),
        }
    }

    pub fn as_ring_element(&self) -> Option<&RingElement> {
        match self {
            Value::Chow(c) | Value::K(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Chow(c) | Value::K(c) => write!(f, "{c}"),
            Value::Cf(phi) => write!(f, "{phi}"),
            Value::Mot(m) => write!(f, "{m}"),
        }
    }
}

/// The natural transformations `td_*`, `c_*` and `T_y*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transformation {
    TdBfm,
    MacChern,
    HirzebruchTy,
}

impl Transformation {
    pub const ALL: [Transformation; 3] =
        [Transformation::TdBfm, Transformation::MacChern, Transformation::HirzebruchTy];

    pub fn name(self) -> &'static str {
        match self {
            Transformation::TdBfm => "td_bfm",
            Transformation::MacChern => "mac_chern",
            Transformation::HirzebruchTy => "hirzebruch_ty",
        }
    }

    pub fn source(self) -> FunctorId {
        match self {
            Transformation::TdBfm => FunctorId::G0,
            Transformation::MacChern => FunctorId::F,
            Transformation::HirzebruchTy => FunctorId::K0V,
        }
    }

    pub fn target(self) -> FunctorId {
        match self {
            Transformation::TdBfm => FunctorId::HTodd,
            Transformation::MacChern => FunctorId::HChern,
            Transformation::HirzebruchTy => FunctorId::HHirz,
        }
    }

    pub fn apply(self, v: &Value) -> Result<Value> {
        match (self, v) {
            (Transformation::TdBfm, Value::K(a)) => Ok(Value::Chow(td_bfm(a))),
            (Transformation::MacChern, Value::Cf(phi)) => Ok(Value::Chow(mac_chern(phi))),
            (Transformation::HirzebruchTy, Value::Mot(m)) => Ok(Value::Chow(hirzebruch_ty(m))),
            _ => Err(structural(format!("{} cannot act on a {} value", self.name(), v.kind_name()))),
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Transformation::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown transformation `{s}`")))
    }
}

/// Canonical subvariety of `x` with the given dimensions, as a value of `F`.
pub fn indicator_value(x: &Space, dims: &[u32]) -> Result<Value> {
    Ok(Value::Cf(ConstructibleFn::indicator(&Subvariety::new(x, dims.to_vec())?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let x = Space::new(vec![1, 2]);
        assert_eq!(FunctorId::G0.basis(&x).len(), 6);
        assert_eq!(FunctorId::HHirz.basis(&x).len(), 6);
        assert_eq!(FunctorId::F.basis(&x).len(), 6);
        assert_eq!(FunctorId::K0V.basis(&x).len(), 7);
        assert_eq!(FunctorId::F.row_labels(&x).unwrap()[0], "L(0,0)");
    }

    #[test]
    fn labels() {
        assert_eq!(monomial_label('h', &[2, 1]), "h1^2*h2");
        assert_eq!(monomial_label('t', &[0, 0]), "1");
        let x = Space::new(vec![2]);
        let labels: Vec<String> = FunctorId::HTodd.basis(&x).iter().map(Value::label).collect();
        assert_eq!(labels, ["1", "h1", "h1^2"]);
    }

    #[test]
    fn pull_requires_smooth_except_lci_functors() {
        let emb = Morphism::new(Space::projective(1), Space::projective(2), vec![Some(0)]).unwrap();
        let y = Space::projective(2);
        for f in FunctorId::ALL {
            let v = &f.basis(&y)[0];
            let r = f.pull(&emb, v, EvalOptions::default());
            assert_eq!(r.is_ok(), f.admits_lci_pullback(), "{f}");
        }
    }

    #[test]
    fn names_round_trip() {
        for f in FunctorId::ALL {
            assert_eq!(f.name().parse::<FunctorId>().unwrap(), f);
        }
        for t in Transformation::ALL {
            assert_eq!(t.name().parse::<Transformation>().unwrap(), t);
            assert_eq!(t.source().is_finite(), t != Transformation::HirzebruchTy);
        }
    }
}

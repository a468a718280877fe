//! Base change and the projection formula in the Chow, K and constructible
//! theories (base change also for the motivic group).

use std::fmt;

use crate::check::CheckReport;
use crate::corr::tabulate;
use crate::error::{structural, Result};
use crate::functor::{FunctorId, Value};
use crate::ktheory::{k_pullback, k_pushforward};
use crate::motivic::{cf_preimage, cf_pushforward, mot_pullback, mot_pushforward};
use crate::spaces::{chow_pullback, chow_pushforward, fiber_product, FiberSquare, Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Chow,
    K,
    Constructible,
    Motivic,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Chow, Theory::K, Theory::Constructible, Theory::Motivic];

    /// The functor whose untwisted push/pull this theory uses for bases.
    fn functor(self) -> FunctorId {
        match self {
            Theory::Chow => FunctorId::HTodd,
            Theory::K => FunctorId::G0,
            Theory::Constructible => FunctorId::F,
            Theory::Motivic => FunctorId::K0V,
        }
    }

    fn has_products(self) -> bool {
        self != Theory::Motivic
    }

    fn push(self, f: &Morphism, v: &Value) -> Result<Value> {
        match (self, v) {
            (Theory::Chow, Value::Chow(c)) => Ok(Value::Chow(chow_pushforward(f, c)?)),
            (Theory::K, Value::K(a)) => Ok(Value::K(k_pushforward(f, a)?)),
            (Theory::Constructible, Value::Cf(phi)) => Ok(Value::Cf(cf_pushforward(f, phi)?)),
            (Theory::Motivic, Value::Mot(m)) => Ok(Value::Mot(mot_pushforward(f, m)?)),
            _ => Err(structural(format!("{self} cannot act on a {} value", v.kind_name()))),
        }
    }

    /// Pullback without twist; the constructible one is the preimage and
    /// works along any morphism.
    fn pull(self, f: &Morphism, v: &Value) -> Result<Value> {
        match (self, v) {
            (Theory::Chow, Value::Chow(c)) => Ok(Value::Chow(chow_pullback(f, c)?)),
            (Theory::K, Value::K(a)) => Ok(Value::K(k_pullback(f, a)?)),
            (Theory::Constructible, Value::Cf(phi)) => Ok(Value::Cf(cf_preimage(f, phi)?)),
            (Theory::Motivic, Value::Mot(m)) => Ok(Value::Mot(mot_pullback(f, m)?)),
            _ => Err(structural(format!("{self} cannot act on a {} value", v.kind_name()))),
        }
    }

    fn mul(self, a: &Value, b: &Value) -> Result<Value> {
        match (a, b) {
            (Value::Chow(x), Value::Chow(y)) => Ok(Value::Chow(x * y)),
            (Value::K(x), Value::K(y)) => Ok(Value::K(x * y)),
            (Value::Cf(x), Value::Cf(y)) => Ok(Value::Cf(x.mul(y)?)),
            _ => Err(structural(format!("{self} has no product on these values"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Chow => "chow",
            Theory::K => "k",
            Theory::Constructible => "constructible",
            Theory::Motivic => "motivic",
        })
    }
}

/// `g^* h_* = h̃_* g̃^*` on the square of smooth `g` and arbitrary `h`.
pub fn check_base_change(theory: Theory, g: &Morphism, h: &Morphism, report: &mut CheckReport) {
    let case = format!("{theory} base change: g = {g}, h = {h}");
    let sides = (|| {
        let sq: FiberSquare = fiber_product(g, h)?;
        let f = theory.functor();
        let (m, n) = (g.source(), h.source());
        let lhs = tabulate(f, n, f, m, |v| theory.pull(g, &theory.push(h, v)?))?;
        let rhs = tabulate(f, n, f, m, |v| theory.push(&sq.h_tilde, &theory.pull(&sq.g_tilde, v)?))?;
        Ok((lhs, rhs))
    })();
    report.compare_result(case, sides);
}

/// `f_*(f^* a · b) = a · f_* b` for all basis pairs.
pub fn check_projection_formula(theory: Theory, f: &Morphism, report: &mut CheckReport) {
    if !theory.has_products() {
        return;
    }
    let case = format!("{theory} projection formula: {f}");
    let fid = theory.functor();
    let outcome = (|| -> Result<Option<String>> {
        for a in fid.basis(f.target()) {
            let pulled = theory.pull(f, &a)?;
            for b in fid.basis(f.source()) {
                let lhs = theory.push(f, &theory.mul(&pulled, &b)?)?;
                let rhs = theory.mul(&a, &theory.push(f, &b)?)?;
                if lhs != rhs {
                    return Ok(Some(format!("a = {}, b = {}", a.label(), b.label())));
                }
            }
        }
        Ok(None)
    })();
    match outcome {
        Ok(None) => report.record(case, true, ""),
        Ok(Some(w)) => report.record(case, false, w),
        Err(e) => report.error(case, &e),
    }
}

/// Every law on the fiber square of `g` (smooth) and `h`: base change in
/// all theories and the projection formula for all four maps.
pub fn check_square(g: &Morphism, h: &Morphism, report: &mut CheckReport) {
    let sq = match fiber_product(g, h) {
        Ok(sq) => sq,
        Err(e) => return report.error(format!("square g = {g}, h = {h}"), &e),
    };
    for theory in Theory::ALL {
        check_base_change(theory, g, h, report);
        for f in [g, h, &sq.h_tilde, &sq.g_tilde] {
            check_projection_formula(theory, f, report);
        }
    }
}

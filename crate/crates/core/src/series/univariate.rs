//! Univariate formal power series given by exact coefficient generators,
//! and their evaluation at nilpotent ring elements.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::rational::{binomial, factorial};
use super::{Rational, RingElement, YPoly};
use crate::error::{Error, Result};

/// Bernoulli numbers `B_0, B_1 = -1/2, B_2 = 1/6, ...`, memoized globally.
pub fn bernoulli(n: usize) -> Rational {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut table = table.lock().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        let s: Rational = (0..m).map(|k| binomial(m as i64 + 1, k as u32) * &table[k]).sum();
        let bm = -(&s / &Rational::from(m as i64 + 1));
        table.push(bm);
    }
    table[n].clone()
}

/// Coefficient of `a^j` in `a / (1 - e^{-a})`.
fn todd_coefficient(j: usize) -> Rational {
    let b = bernoulli(j);
    let b = if j == 1 { -b } else { b };
    &b / &Rational::from_int(factorial(j as u32))
}

#[derive(Clone)]
enum Generator {
    /// `e^{s a}`
    Exp(Rational),
    /// `1 + a`
    OnePlus,
    /// `a / (1 - e^{-a})`
    Todd,
    /// `a / tanh a`
    LClass,
    /// `a(1+y) / (1 - e^{-a(1+y)}) - a y`
    Hirzebruch,
    Product(UnivariateSeries, UnivariateSeries),
    Custom(Arc<dyn Fn(usize) -> YPoly + Send + Sync>),
}

struct Inner {
    name: String,
    generator: Generator,
    cache: Mutex<Vec<YPoly>>,
}

/// A power series `c_0 + c_1 a + c_2 a^2 + ...` whose coefficients are
/// computed on demand by exact recurrences and memoized. Cloning shares
/// the cache.
#[derive(Clone)]
pub struct UnivariateSeries(Arc<Inner>);

impl UnivariateSeries {
    fn build(name: impl Into<String>, generator: Generator) -> Self {
        UnivariateSeries(Arc::new(Inner { name: name.into(), generator, cache: Mutex::new(Vec::new()) }))
    }

    pub fn exp_scaled(s: Rational) -> Self {
        UnivariateSeries::build(format!("exp({s}a)"), Generator::Exp(s))
    }

    pub fn exp() -> Self {
        UnivariateSeries::exp_scaled(Rational::one())
    }

    pub fn one_plus() -> Self {
        UnivariateSeries::build("1+a", Generator::OnePlus)
    }

    pub fn todd() -> Self {
        UnivariateSeries::build("a/(1-e^-a)", Generator::Todd)
    }

    pub fn l_class() -> Self {
        UnivariateSeries::build("a/tanh(a)", Generator::LClass)
    }

    pub fn hirzebruch() -> Self {
        UnivariateSeries::build("Q_y(a)", Generator::Hirzebruch)
    }

    pub fn from_fn(name: impl Into<String>, f: impl Fn(usize) -> YPoly + Send + Sync + 'static) -> Self {
        UnivariateSeries::build(name, Generator::Custom(Arc::new(f)))
    }

    /// Cauchy product.
    pub fn product(&self, other: &UnivariateSeries) -> Self {
        UnivariateSeries::build(
            format!("({})*({})", self.name(), other.name()),
            Generator::Product(self.clone(), other.clone()),
        )
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn coefficient(&self, j: usize) -> YPoly {
        {
            let cache = self.0.cache.lock().expect("series cache poisoned");
            if let Some(c) = cache.get(j) {
                return c.clone();
            }
        }
        // Fill without holding the lock: product series recurse into their
        // factors' caches.
        let start = self.0.cache.lock().expect("series cache poisoned").len();
        let fresh: Vec<YPoly> = (start..=j).map(|i| self.compute(i)).collect();
        let mut cache = self.0.cache.lock().expect("series cache poisoned");
        for (i, c) in (start..=j).zip(fresh) {
            if cache.len() == i {
                cache.push(c);
            }
        }
        cache[j].clone()
    }

    fn compute(&self, j: usize) -> YPoly {
        match &self.0.generator {
            Generator::Exp(s) => YPoly::constant(&s.pow(j as u32) / &Rational::from_int(factorial(j as u32))),
            Generator::OnePlus => match j {
                0 | 1 => YPoly::one(),
                _ => YPoly::zero(),
            },
            Generator::Todd => YPoly::constant(todd_coefficient(j)),
            Generator::LClass => {
                // a/tanh a = T(2a) - a
                if j == 1 {
                    YPoly::zero()
                } else {
                    YPoly::constant(todd_coefficient(j) * Rational::from(2).pow(j as u32))
                }
            }
            Generator::Hirzebruch => {
                // T(a(1+y)) - a y
                let one_plus_y = &YPoly::one() + &YPoly::y();
                let base = one_plus_y.pow(j as u32).scale(&todd_coefficient(j));
                if j == 1 {
                    &base - &YPoly::y()
                } else {
                    base
                }
            }
            Generator::Product(a, b) => {
                let mut acc = YPoly::zero();
                for i in 0..=j {
                    acc.add_assign_ref(&(&a.coefficient(i) * &b.coefficient(j - i)));
                }
                acc
            }
            Generator::Custom(f) => f(j),
        }
    }

    /// `sum_j c_j x^j` for nilpotent `x` (finite by nilpotency).
    pub fn substitute(&self, x: &RingElement) -> Result<RingElement> {
        if !x.constant_term().is_zero() {
            return Err(Error::Domain(format!(
                "series substitution needs a nilpotent argument, got constant term {}",
                x.constant_term()
            )));
        }
        let ring = x.ring();
        // x^j = 0 once j exceeds the top degree.
        let top = ring.top_degree() as usize;
        let mut acc = RingElement::constant(ring, self.coefficient(top));
        for j in (0..top).rev() {
            acc = &acc * x;
            acc = &acc + &RingElement::constant(ring, self.coefficient(j));
        }
        Ok(acc)
    }
}

impl fmt::Debug for UnivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariateSeries({})", self.name())
    }
}

/// Two-sided inverse of a unit: `c (1 + n)` with invertible scalar `c` and
/// nilpotent `n` has inverse `c^{-1} sum_j (-n)^j`.
pub fn invert_unit(u: &RingElement) -> Result<RingElement> {
    let c0 = u.constant_term();
    let c = match c0.as_constant() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::Domain(format!("constant term {c0} is not an invertible scalar"))),
    };
    let ring = u.ring();
    let c_inv = c.recip()?;
    let unit_part = u.scale_rational(&c_inv);
    let n = &unit_part - &RingElement::one(ring);
    let minus_n = -&n;
    let mut acc = RingElement::one(ring);
    let mut power = RingElement::one(ring);
    for _ in 0..ring.top_degree() {
        power = &power * &minus_n;
        if power.is_zero() {
            break;
        }
        acc = &acc + &power;
    }
    Ok(acc.scale_rational(&c_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::NilpotentRing;

    fn r(x: i64, y: i64) -> Rational {
        Rational::new(x, y).unwrap()
    }

    fn ring(n: u32) -> NilpotentRing {
        NilpotentRing::new('h', vec![n + 1]).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(12), r(-691, 2730));
    }

    #[test]
    fn todd_series_matches_long_division() {
        // Oracle: solve (1 - e^{-a})/a * T(a) = 1 coefficientwise.
        // (1 - e^{-a})/a = sum_k (-1)^k a^k / (k+1)!
        let n = 12;
        let d: Vec<Rational> = (0..n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                &Rational::from(sign) / &Rational::from_int(factorial(k as u32 + 1))
            })
            .collect();
        let mut t: Vec<Rational> = Vec::new();
        for j in 0..n {
            let s: Rational = (1..=j).map(|k| &d[k] * &t[j - k]).sum();
            t.push(&(if j == 0 { Rational::one() } else { Rational::zero() } - s) / &d[0]);
        }
        let todd = UnivariateSeries::todd();
        for (j, tj) in t.iter().enumerate() {
            assert_eq!(todd.coefficient(j), YPoly::constant(tj.clone()), "coefficient {j}");
        }
    }

    #[test]
    fn exp_truncation() {
        let x = RingElement::generator(&ring(2), 0);
        let e = UnivariateSeries::exp().substitute(&x).unwrap();
        assert_eq!(e.coeff(&[0]), YPoly::one());
        assert_eq!(e.coeff(&[1]), YPoly::one());
        assert_eq!(e.coeff(&[2]), YPoly::constant(r(1, 2)));
    }

    #[test]
    fn todd_at_line_class() {
        let x = RingElement::generator(&ring(1), 0);
        let t = UnivariateSeries::todd().substitute(&x).unwrap();
        assert_eq!(t.coeff(&[0]), YPoly::one());
        assert_eq!(t.coeff(&[1]), YPoly::constant(r(1, 2)));
    }

    #[test]
    fn substitute_zero_and_domain() {
        let rg = ring(3);
        let z = RingElement::zero(&rg);
        assert!(UnivariateSeries::todd().substitute(&z).unwrap().is_one());
        let bad = RingElement::one(&rg);
        assert!(matches!(UnivariateSeries::exp().substitute(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn invert_examples() {
        let rg = ring(2);
        let h = RingElement::generator(&rg, 0);
        let u = &RingElement::one(&rg) + &h;
        let inv = invert_unit(&u).unwrap();
        let expected = &(&RingElement::one(&rg) - &h) + &h.pow(2);
        assert_eq!(inv, expected);
        assert!((&u * &inv).is_one());
        assert!(invert_unit(&RingElement::one(&rg)).unwrap().is_one());

        let rg1 = ring(1);
        let two = RingElement::from_int(&rg1, 2);
        assert_eq!(invert_unit(&two).unwrap(), RingElement::constant(&rg1, YPoly::constant(r(1, 2))));
        assert!(invert_unit(&RingElement::generator(&rg1, 0)).is_err());
        let y = RingElement::constant(&rg1, YPoly::y());
        assert!(invert_unit(&y).is_err());
    }

    #[test]
    fn hirzebruch_low_coefficients() {
        let q = UnivariateSeries::hirzebruch();
        assert_eq!(q.coefficient(0), YPoly::one());
        // (1 - y)/2
        assert_eq!(q.coefficient(1), YPoly::from_coeffs(vec![r(1, 2), r(-1, 2)]));
        // (1+y)^2/12
        assert_eq!(q.coefficient(2), YPoly::from_coeffs(vec![r(1, 12), r(1, 6), r(1, 12)]));
    }
}

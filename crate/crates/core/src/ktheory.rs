//! Rational Grothendieck groups of coherent sheaves on the model.
//!
//! A K-class on `P^{n_1} x ... x P^{n_k}` is an element of
//! `Q[t_1..t_k]/(t_i^{n_i+1})` with `t_i = 1 - [O_i(-1)]`, so `t_i^e` is the
//! structure sheaf of a codimension-`e` linear subspace in factor `i`.
//! Pushforward is computed from Euler characteristics and Koszul
//! resolutions without passing through the Chow ring.

use std::collections::BTreeMap;

use crate::classes::genus_class;
use crate::classes::GenusKind;
use crate::error::{structural, Result};
use crate::series::rational::binomial;
use crate::series::{NilpotentRing, Rational, RingElement, UnivariateSeries, YPoly};
use crate::spaces::{pull_generators, tangent_roots, Morphism, Space, VectorBundle};

/// K-classes are ring elements over [`Space::k_ring`].
pub type KClass = RingElement;

/// Which of the fixed pushforward rules are applied. Only the default is
/// correct; the switch exists so negative controls can show a check fails
/// without the Koszul factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushRules {
    pub koszul: bool,
}

impl Default for PushRules {
    fn default() -> Self {
        PushRules { koszul: true }
    }
}

fn expect_ring(a: &RingElement, ring: &NilpotentRing, what: &str) -> Result<()> {
    if a.ring() != ring {
        return Err(structural(format!("{what}: class lives in {:?}, expected {:?}", a.ring(), ring)));
    }
    Ok(())
}

/// The space whose K-ring (or Chow ring) is `ring`.
pub fn space_of(ring: &NilpotentRing) -> Space {
    Space::new(ring.orders().iter().map(|o| o - 1).collect())
}

/// `(1 - t)^{-d}` truncated at `t^{n+1}`, as coefficients of `t^k`.
fn line_power(d: i64, n: u32) -> Vec<Rational> {
    (0..=n)
        .map(|k| {
            let c = binomial(-d, k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// `[O(d_1, ..., d_k)] = prod_i (1 - t_i)^{-d_i}`.
pub fn k_of_line(x: &Space, degrees: &[i64]) -> KClass {
    let ring = x.k_ring();
    let mut acc = RingElement::one(&ring);
    for (i, (&d, &n)) in degrees.iter().zip(x.dims()).enumerate() {
        let coeffs = line_power(d, n);
        let mut factor = RingElement::zero(&ring);
        for (k, c) in coeffs.into_iter().enumerate() {
            let mut e = vec![0; x.factor_count()];
            e[i] = k as u32;
            factor = &factor + &RingElement::monomial(&ring, e, YPoly::constant(c));
        }
        acc = &acc * &factor;
    }
    acc
}

/// Class of a line-bundle sum: the sum of its summands' classes.
pub fn k_of_bundle(bundle: &VectorBundle) -> KClass {
    let x = bundle.base();
    bundle.summands().iter().fold(RingElement::zero(&x.k_ring()), |acc, d| &acc + &k_of_line(x, d))
}

pub fn k_tensor(a: &KClass, b: &KClass) -> Result<KClass> {
    a.ring_arith(b, crate::series::RingOp::Mul)
}

/// `f^*`: `t_j -> t_{σ(j)}` on pulled factors, `t_j -> 0` on constant ones.
pub fn k_pullback(f: &Morphism, a: &KClass) -> Result<KClass> {
    expect_ring(a, &f.target().k_ring(), "k_pullback")?;
    Ok(pull_generators(f, a, &f.source().k_ring()))
}

/// `χ(P^p, O(d)) = C(d + p, p)`, valid for every integer `d`.
pub fn chi_line(p: u32, d: i64) -> Rational {
    binomial(d + p as i64, p)
}

/// `χ(P^p, t^e)` from `t^e = sum_a C(e, a) (-1)^a [O(-a)]`.
fn chi_t_power(p: u32, e: u32) -> Rational {
    (0..=e)
        .map(|a| {
            let term = &binomial(e as i64, a) * &chi_line(p, -(a as i64));
            if a % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `f_!` with the standard rules.
pub fn k_pushforward(f: &Morphism, a: &KClass) -> Result<KClass> {
    k_pushforward_with(f, a, PushRules::default())
}

/// `f_!` along the canonical factorization: dropped factors integrate by
/// `χ`, a pulled factor `P^m -> P^n` multiplies by the Koszul class
/// `t^{n-m}`, and a constant factor contributes the point class `t^n`.
pub fn k_pushforward_with(f: &Morphism, a: &KClass, rules: PushRules) -> Result<KClass> {
    expect_ring(a, &f.source().k_ring(), "k_pushforward")?;
    let src = f.source().dims();
    let tgt = f.target().dims();
    let target_ring = f.target().k_ring();
    let dropped = f.dropped_factors();
    Ok(a.map_monomials(&target_ring, |e| {
        let scalar: Rational = dropped.iter().map(|&i| chi_t_power(src[i], e[i])).product();
        if scalar.is_zero() {
            return RingElement::zero(&target_ring);
        }
        let out = f
            .assignment()
            .iter()
            .enumerate()
            .map(|(j, s)| match s {
                Some(i) if rules.koszul => e[*i] + tgt[j] - src[*i],
                Some(i) => e[*i],
                None => tgt[j],
            })
            .collect();
        RingElement::monomial(&target_ring, out, YPoly::constant(scalar))
    }))
}

/// Chern character as a ring map `t_i -> 1 - e^{-h_i}`.
pub fn k_chern_character(a: &KClass) -> RingElement {
    let x = space_of(a.ring());
    let chow = x.chow_ring();
    let exp_neg = UnivariateSeries::exp_scaled(Rational::from(-1));
    let one = RingElement::one(&chow);
    let images: Vec<RingElement> = (0..x.factor_count())
        .map(|i| {
            let e = exp_neg.substitute(&RingElement::generator(&chow, i)).expect("nilpotent");
            &one - &e
        })
        .collect();
    a.map_monomials(&chow, |e| e.iter().enumerate().fold(one.clone(), |acc, (i, &k)| &acc * &images[i].pow(k)))
}

/// `td_*(a) = ch(a) · td(TX)` under Poincaré duality.
pub fn td_bfm(a: &KClass) -> RingElement {
    let x = space_of(a.ring());
    let td = genus_class(GenusKind::Todd, &tangent_roots(&x));
    &k_chern_character(a) * &td
}

/// Coordinates in the line-bundle basis `[O(-a_1, ..., -a_k)]`,
/// `0 <= a_i <= n_i`.
pub fn k_line_basis(a: &KClass) -> BTreeMap<Vec<i64>, Rational> {
    let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (e, c) in a.terms() {
        let c = c.as_constant().expect("K-classes have rational coefficients");
        // t^e = prod_i sum_a C(e_i, a)(-1)^a O_i(-a)
        let mut partial: Vec<(Vec<i64>, Rational)> = vec![(Vec::new(), c)];
        for &ei in e.iter() {
            let mut next = Vec::new();
            for (deg, coeff) in &partial {
                for k in 0..=ei {
                    let b = binomial(ei as i64, k);
                    let b = if k % 2 == 0 { b } else { -b };
                    let mut d = deg.clone();
                    d.push(-(k as i64));
                    next.push((d, coeff * &b));
                }
            }
            partial = next;
        }
        for (d, c) in partial {
            *out.entry(d).or_insert_with(Rational::zero) += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Human-readable line-bundle form, e.g. `2*O(0) - 1*O(-1)`.
pub fn format_line_basis(a: &KClass) -> String {
    let terms = k_line_basis(a);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (d, c)) in terms.iter().enumerate() {
        let ds: Vec<String> = d.iter().map(i64::to_string).collect();
        let (sign, mag) = if c.numer().sign() == num_bigint::Sign::Minus { ("-", c.abs()) } else { ("+", c.clone()) };
        if i == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&format!("{mag}*O({})", ds.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn t_mono(x: &Space, e: &[u32]) -> KClass {
        RingElement::monomial(&x.k_ring(), e.to_vec(), YPoly::one())
    }

    #[test]
    fn line_bundle_classes() {
        let p1 = p(&[1]);
        let o1 = k_of_bundle(&VectorBundle::line(&p1, vec![1]));
        assert_eq!(o1, &RingElement::one(&p1.k_ring()) + &t_mono(&p1, &[1]));
        assert!(k_of_bundle(&VectorBundle::trivial(&p1)).is_one());
        let o2 = k_tensor(&o1, &o1).unwrap();
        assert_eq!(o2, k_of_bundle(&VectorBundle::line(&p1, vec![2])));
        // O(-1) = 1 - t
        let om1 = k_of_bundle(&VectorBundle::line(&p1, vec![-1]));
        assert_eq!(om1, &RingElement::one(&p1.k_ring()) - &t_mono(&p1, &[1]));
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi_line(2, 1), Rational::from(3));
        assert_eq!(chi_line(1, 3), Rational::from(4));
        assert_eq!(chi_line(2, -1), Rational::zero());
        assert_eq!(chi_line(2, -3), Rational::one());
        assert_eq!(chi_line(1, -3), Rational::from(-2));
        for p in 0..5 {
            for e in 0..=p {
                assert_eq!(chi_t_power(p, e), Rational::one());
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        let p2 = p(&[2]);
        let to_pt = Morphism::to_point(&p2);
        let o1 = k_of_bundle(&VectorBundle::line(&p2, vec![1]));
        assert_eq!(k_pushforward(&to_pt, &o1).unwrap(), RingElement::from_int(&Space::point().k_ring(), 3));

        let x = p(&[1, 1]);
        let proj = Morphism::projection(&x, &[0]).unwrap();
        let o03 = k_of_bundle(&VectorBundle::line(&x, vec![0, 3]));
        assert_eq!(k_pushforward(&proj, &o03).unwrap(), RingElement::from_int(&p(&[1]).k_ring(), 4));

        let emb = Morphism::new(p(&[1]), p2.clone(), vec![Some(0)]).unwrap();
        let one = RingElement::one(&p(&[1]).k_ring());
        assert_eq!(k_pushforward(&emb, &one).unwrap(), t_mono(&p2, &[1]));
        let no_koszul = k_pushforward_with(&emb, &one, PushRules { koszul: false }).unwrap();
        assert!(no_koszul.is_one());

        let pt = Morphism::base_point(&p2);
        let one_pt = RingElement::one(&Space::point().k_ring());
        assert_eq!(k_pushforward(&pt, &one_pt).unwrap(), t_mono(&p2, &[2]));
    }

    #[test]
    fn pullback_examples() {
        let x = p(&[1, 1]);
        let proj = Morphism::projection(&x, &[0]).unwrap();
        assert_eq!(k_pullback(&proj, &t_mono(&p(&[1]), &[1])).unwrap(), t_mono(&x, &[1, 0]));
        let emb = Morphism::new(p(&[1]), p(&[2]), vec![Some(0)]).unwrap();
        assert!(k_pullback(&emb, &t_mono(&p(&[2]), &[2])).unwrap().is_zero());
        assert!(k_pullback(&Morphism::base_point(&p(&[2])), &t_mono(&p(&[2]), &[1])).unwrap().is_zero());
    }

    #[test]
    fn structure_sheaf_has_chi_one() {
        for dims in [vec![], vec![3], vec![1, 2], vec![2, 0, 1]] {
            let x = Space::new(dims);
            let one = RingElement::one(&x.k_ring());
            assert!(k_pushforward(&Morphism::to_point(&x), &one).unwrap().is_one());
        }
    }

    #[test]
    fn td_bfm_examples() {
        let p1 = p(&[1]);
        let h = RingElement::generator(&p1.chow_ring(), 0);
        let one = RingElement::one(&p1.chow_ring());
        assert_eq!(td_bfm(&RingElement::one(&p1.k_ring())), &one + &h);
        assert_eq!(td_bfm(&t_mono(&p1, &[1])), h);
        assert!(td_bfm(&RingElement::zero(&p1.k_ring())).is_zero());
    }

    #[test]
    fn line_basis_roundtrip() {
        let p2 = p(&[2]);
        let a = &t_mono(&p2, &[2]) + &RingElement::from_int(&p2.k_ring(), 3);
        let coords = k_line_basis(&a);
        let back = coords
            .iter()
            .fold(RingElement::zero(&p2.k_ring()), |acc, (d, c)| &acc + &k_of_line(&p2, d).scale_rational(c));
        assert_eq!(back, a);
        assert_eq!(format_line_basis(&t_mono(&p(&[1]), &[1])), "-1*O(-1) + 1*O(0)");
    }
}

//! Chow-ring operations on the model: pullback, Gysin pushforward,
//! integration, tangent data.
//!
//! Homology and cohomology are identified by Poincaré duality (every model
//! space is smooth and complete), so pushforward is the Gysin map
//! `PD^{-1} f_* PD` on the Chow ring.

use super::{Morphism, Space};
use crate::classes::{genus_class, GenusKind, RootList};
use crate::error::{structural, Result};
use crate::series::{invert_unit, NilpotentRing, RingElement, YPoly};

fn expect_ring(c: &RingElement, ring: &NilpotentRing, what: &str) -> Result<()> {
    if c.ring() != ring {
        return Err(structural(format!("{what}: class lives in {:?}, expected {:?}", c.ring(), ring)));
    }
    Ok(())
}

/// The ring map `g_j -> g_{σ(j)}` (pulled factors) or `g_j -> 0` (constant
/// factors). Shared by the Chow and K-theory pullbacks, whose generator
/// rules coincide.
pub(crate) fn pull_generators(f: &Morphism, c: &RingElement, source_ring: &NilpotentRing) -> RingElement {
    let k_src = f.source().factor_count();
    c.map_monomials(source_ring, |e| {
        let mut out = vec![0u32; k_src];
        for (j, &ej) in e.iter().enumerate() {
            if ej == 0 {
                continue;
            }
            match f.assignment()[j] {
                Some(i) => out[i] = ej,
                None => return RingElement::zero(source_ring),
            }
        }
        RingElement::monomial(source_ring, out, YPoly::one())
    })
}

/// `f^*` on Chow rings.
pub fn chow_pullback(f: &Morphism, c: &RingElement) -> Result<RingElement> {
    expect_ring(c, &f.target().chow_ring(), "chow_pullback")?;
    Ok(pull_generators(f, c, &f.source().chow_ring()))
}

/// `f_*` on Chow rings, monomial by monomial along the canonical
/// factorization: dropped factors integrate (only their top power
/// survives), `P^m -> P^n` shifts `h^a` to `h^{a+n-m}`, and a constant
/// factor contributes its point class `h^n`.
pub fn chow_pushforward(f: &Morphism, c: &RingElement) -> Result<RingElement> {
    expect_ring(c, &f.source().chow_ring(), "chow_pushforward")?;
    let src = f.source().dims();
    let tgt = f.target().dims();
    let target_ring = f.target().chow_ring();
    let inv = f.inverse_assignment();
    Ok(c.map_monomials(&target_ring, |e| {
        for (i, t) in inv.iter().enumerate() {
            if t.is_none() && e[i] != src[i] {
                return RingElement::zero(&target_ring);
            }
        }
        let out = f
            .assignment()
            .iter()
            .enumerate()
            .map(|(j, a)| match a {
                Some(i) => e[*i] + tgt[j] - src[*i],
                None => tgt[j],
            })
            .collect();
        RingElement::monomial(&target_ring, out, YPoly::one())
    }))
}

/// Degree: the coefficient of the top monomial `prod h_i^{n_i}`.
pub fn integrate(x: &Space, c: &RingElement) -> Result<YPoly> {
    expect_ring(c, &x.chow_ring(), "integrate")?;
    Ok(c.coeff(x.dims()))
}

/// Euler-sequence roots: `h_i` repeated `n_i + 1` times for each factor.
/// They differ from the true tangent roots by one zero root per factor,
/// which no genus (constant term 1) can see.
pub fn tangent_roots(x: &Space) -> RootList {
    let ring = x.chow_ring();
    factor_roots(x, &ring, 0..x.factor_count())
}

fn factor_roots(x: &Space, ring: &NilpotentRing, factors: impl IntoIterator<Item = usize>) -> RootList {
    let mut roots = Vec::new();
    for i in factors {
        let h = RingElement::generator(ring, i);
        for _ in 0..=x.dims()[i] {
            roots.push(h.clone());
        }
    }
    RootList::new(ring, roots).expect("hyperplane classes are roots")
}

/// Genus of the (virtual) relative tangent bundle of `f`, on the source.
///
/// For smooth `f` this is the genus of the fiber factors' tangent roots;
/// otherwise `genus(T_source) / f^* genus(T_target)`.
pub fn relative_genus(kind: GenusKind, f: &Morphism) -> RingElement {
    if f.is_smooth() {
        let ring = f.source().chow_ring();
        return genus_class(kind, &factor_roots(f.source(), &ring, f.dropped_factors()));
    }
    virtual_relative_genus(kind, f)
}

/// `genus(T_source) * f^* genus(T_target)^{-1}` for any model morphism.
pub fn virtual_relative_genus(kind: GenusKind, f: &Morphism) -> RingElement {
    let top = genus_class(kind, &tangent_roots(f.source()));
    let bottom = genus_class(kind, &tangent_roots(f.target()));
    let pulled = chow_pullback(f, &bottom).expect("class on target");
    let inv = invert_unit(&pulled).expect("genus classes have constant term 1");
    &top * &inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::chern_character;
    use crate::series::Rational;
    use crate::spaces::VectorBundle;

    fn p(d: &[u32]) -> Space {
        Space::new(d.to_vec())
    }

    fn mono(x: &Space, e: &[u32]) -> RingElement {
        RingElement::monomial(&x.chow_ring(), e.to_vec(), YPoly::one())
    }

    #[test]
    fn pullback_examples() {
        let proj = Morphism::projection(&p(&[1, 1]), &[0]).unwrap();
        assert_eq!(chow_pullback(&proj, &mono(&p(&[1]), &[1])).unwrap(), mono(&p(&[1, 1]), &[1, 0]));

        let emb = Morphism::new(p(&[1]), p(&[2]), vec![Some(0)]).unwrap();
        assert!(chow_pullback(&emb, &mono(&p(&[2]), &[2])).unwrap().is_zero());

        let pt = Morphism::base_point(&p(&[2]));
        assert!(chow_pullback(&pt, &mono(&p(&[2]), &[1])).unwrap().is_zero());
    }

    #[test]
    fn pushforward_examples() {
        let proj = Morphism::projection(&p(&[1, 1]), &[0]).unwrap();
        assert_eq!(chow_pushforward(&proj, &mono(&p(&[1, 1]), &[1, 1])).unwrap(), mono(&p(&[1]), &[1]));
        assert!(chow_pushforward(&proj, &mono(&p(&[1, 1]), &[1, 0])).unwrap().is_zero());

        // Line in P^2: pairing with h integrates to 1.
        let emb = Morphism::new(p(&[1]), p(&[2]), vec![Some(0)]).unwrap();
        let line = chow_pushforward(&emb, &mono(&p(&[1]), &[0])).unwrap();
        assert_eq!(line, mono(&p(&[2]), &[1]));
        let h = mono(&p(&[2]), &[1]);
        assert_eq!(integrate(&p(&[2]), &(&line * &h)).unwrap(), YPoly::one());

        let pt = Morphism::base_point(&p(&[2]));
        assert_eq!(
            chow_pushforward(&pt, &RingElement::one(&Space::point().chow_ring())).unwrap(),
            mono(&p(&[2]), &[2])
        );
    }

    #[test]
    fn integrate_examples() {
        let p2 = p(&[2]);
        let three_h2 = mono(&p2, &[2]).scale(&YPoly::from_int(3));
        assert_eq!(integrate(&p2, &three_h2).unwrap(), YPoly::from_int(3));
        assert!(integrate(&p(&[1, 1]), &mono(&p(&[1, 1]), &[1, 0])).unwrap().is_zero());

        // HRR for O(1) on P^2: (1 + h + h^2/2)(1 + 3h/2 + h^2) has h^2-coefficient 3.
        let ch = chern_character(&VectorBundle::line(&p2, vec![1]));
        let td = genus_class(GenusKind::Todd, &tangent_roots(&p2));
        assert_eq!(integrate(&p2, &(&ch * &td)).unwrap(), YPoly::from_int(3));
    }

    #[test]
    fn relative_genus_examples() {
        let x = p(&[2, 1]);
        let proj = Morphism::projection(&x, &[0]).unwrap();
        let td = relative_genus(GenusKind::Todd, &proj);
        assert_eq!(td, &RingElement::one(&x.chow_ring()) + &mono(&x, &[0, 1]));
        for kind in GenusKind::ALL {
            assert!(relative_genus(kind, &Morphism::identity(&x)).is_one());
            // smooth shortcut agrees with the quotient formula
            assert_eq!(relative_genus(kind, &proj), virtual_relative_genus(kind, &proj));
        }
    }

    #[test]
    fn euler_characteristic_from_top_chern_class() {
        for dims in [vec![0], vec![3], vec![1, 2], vec![1, 1, 1]] {
            let x = Space::new(dims);
            let c = genus_class(GenusKind::Chern, &tangent_roots(&x));
            assert_eq!(integrate(&x, &c).unwrap(), YPoly::constant(Rational::from(x.euler_characteristic())));
        }
    }
}

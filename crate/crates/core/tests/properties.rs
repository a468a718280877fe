use corrclass_core::check::CheckReport;
use corrclass_core::classes::{bundle_class, chern_character, genus_class, GenusKind, RootList};
use corrclass_core::corr::{corr_operator, CorrSum, Correspondence};
use corrclass_core::functor::FunctorId;
use corrclass_core::ktheory::{k_chern_character, k_of_bundle, k_pullback, k_pushforward, td_bfm};
use corrclass_core::laws::{check_projection_formula, Theory};
use corrclass_core::random::Sampler;
use corrclass_core::series::{Rational, RingElement};
use corrclass_core::spaces::{chow_pullback, chow_pushforward, Morphism, Space, VectorBundle};
use corrclass_core::zigzag::{homology_operator, pullback_dot};
use proptest::prelude::*;

fn space_strategy(max_factors: usize) -> impl Strategy<Value = Space> {
    prop::collection::vec(1u32..=2, 0..=max_factors).prop_map(Space::new)
}

fn roots_strategy() -> impl Strategy<Value = RootList> {
    (space_strategy(3), prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=4)).prop_map(|(x, coeffs)| {
        let ring = x.chow_ring();
        let roots = coeffs.iter().map(|c| RingElement::linear_form(&ring, &c[..ring.generator_count()])).collect();
        RootList::new(&ring, roots).unwrap()
    })
}

fn bundle_strategy(base: Space, max_rank: usize) -> impl Strategy<Value = VectorBundle> {
    let k = base.factor_count();
    prop::collection::vec(prop::collection::vec(-2i64..=2, k), 0..=max_rank)
        .prop_map(move |s| VectorBundle::new(&base, s).unwrap())
}

fn two_bundles() -> impl Strategy<Value = (VectorBundle, VectorBundle)> {
    space_strategy(2).prop_flat_map(|x| (bundle_strategy(x.clone(), 3), bundle_strategy(x, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hirzebruch_specializes(roots in roots_strategy()) {
        let ty = genus_class(GenusKind::Hirzebruch, &roots);
        prop_assert_eq!(ty.eval_y(&Rational::from_int(-1)), genus_class(GenusKind::Chern, &roots));
        prop_assert_eq!(ty.eval_y(&Rational::zero()), genus_class(GenusKind::Todd, &roots));
        prop_assert_eq!(ty.eval_y(&Rational::one()), genus_class(GenusKind::LClass, &roots));
    }

    #[test]
    fn genera_are_multiplicative((e, f) in two_bundles()) {
        let sum = e.direct_sum(&f).unwrap();
        for kind in GenusKind::ALL {
            prop_assert_eq!(bundle_class(kind, &sum), &bundle_class(kind, &e) * &bundle_class(kind, &f));
        }
    }

    #[test]
    fn chern_character_is_a_ring_map((e, f) in two_bundles()) {
        let (ce, cf) = (chern_character(&e), chern_character(&f));
        prop_assert_eq!(chern_character(&e.direct_sum(&f).unwrap()), &ce + &cf);
        prop_assert_eq!(chern_character(&e.tensor(&f).unwrap()), &ce * &cf);
        let (ke, kf) = (k_of_bundle(&e), k_of_bundle(&f));
        prop_assert_eq!(k_chern_character(&(&ke * &kf)), &k_chern_character(&ke) * &k_chern_character(&kf));
        prop_assert_eq!(k_chern_character(&ke), ce);
    }

    #[test]
    fn morphisms_form_a_category(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (w, x, y, z) = (s.space(3), s.space(3), s.space(3), s.space(3));
        let (f, g, h) = (s.morphism(&w, &x), s.morphism(&x, &y), s.morphism(&y, &z));
        prop_assert_eq!(f.then(&g).unwrap().then(&h).unwrap(), f.then(&g.then(&h).unwrap()).unwrap());
        prop_assert_eq!(Morphism::identity(&w).then(&f).unwrap(), f.clone());
        prop_assert_eq!(f.then(&Morphism::identity(&x)).unwrap(), f);
    }

    #[test]
    fn pullbacks_are_contravariant(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.space(3), s.space(3), s.space(3));
        let (f, g) = (s.morphism(&x, &y), s.morphism(&y, &z));
        let gf = f.then(&g).unwrap();
        for h in z.chow_ring().basis() {
            let c = RingElement::monomial(&z.chow_ring(), h, corrclass_core::series::YPoly::one());
            let twice = chow_pullback(&f, &chow_pullback(&g, &c).unwrap()).unwrap();
            prop_assert_eq!(chow_pullback(&gf, &c).unwrap(), twice);
        }
        let direct = homology_operator(&z, &x, |v| pullback_dot(&gf, v)).unwrap();
        let composed = homology_operator(&y, &x, |v| pullback_dot(&f, v))
            .unwrap()
            .compose(&homology_operator(&z, &y, |v| pullback_dot(&g, v)).unwrap())
            .unwrap();
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn pushforwards_are_covariant(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.space(3), s.space(3), s.space(3));
        let (f, g) = (s.morphism(&x, &y), s.morphism(&y, &z));
        let gf = f.then(&g).unwrap();
        for e in x.chow_ring().basis() {
            let c = RingElement::monomial(&x.chow_ring(), e, corrclass_core::series::YPoly::one());
            let twice = chow_pushforward(&g, &chow_pushforward(&f, &c).unwrap()).unwrap();
            prop_assert_eq!(chow_pushforward(&gf, &c).unwrap(), twice);
        }
        for e in x.k_ring().basis() {
            let a = RingElement::monomial(&x.k_ring(), e, corrclass_core::series::YPoly::one());
            let twice = k_pushforward(&g, &k_pushforward(&f, &a).unwrap()).unwrap();
            prop_assert_eq!(k_pushforward(&gf, &a).unwrap(), twice);
        }
    }

    #[test]
    fn projection_formula(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y) = (s.space(3), s.space(3));
        let f = s.morphism(&x, &y);
        let mut report = CheckReport::new("projection formula");
        for theory in [Theory::Chow, Theory::K, Theory::Constructible] {
            check_projection_formula(theory, &f, &mut report);
        }
        prop_assert!(report.ok(), "{}", report);
    }

    #[test]
    fn grothendieck_riemann_roch(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y) = (s.space(3), s.space(3));
        let f = s.morphism(&x, &y);
        let e = s.bundle(&x, 2);
        let a = k_of_bundle(&e);
        prop_assert_eq!(chow_pushforward(&f, &td_bfm(&a)).unwrap(), td_bfm(&k_pushforward(&f, &a).unwrap()));
        let b = k_of_bundle(&s.bundle(&y, 2));
        prop_assert_eq!(k_chern_character(&k_pullback(&f, &b).unwrap()), chow_pullback(&f, &k_chern_character(&b)).unwrap());
    }

    #[test]
    fn correspondences_compose_associatively(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = s.composable_pair(4);
        let w = s.space(2);
        let c = s.correspondence(b.target(), &w, 1);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(left.is_canonical());
        prop_assert_eq!(Correspondence::identity(a.source()).compose(&a).unwrap(), a.canonicalize());
    }

    #[test]
    fn operators_are_linear_in_sums(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y) = (s.space(2), s.space(2));
        let a = s.correspondence(&x, &y, 2);
        let b = s.correspondence(&x, &y, 2);
        let sum = CorrSum::single(&a).add(&CorrSum::single(&b).scaled(3)).unwrap();
        for f in [FunctorId::G0, FunctorId::HTodd, FunctorId::F, FunctorId::HChern, FunctorId::HHirz] {
            let lhs = corr_operator(f, &sum).unwrap();
            let rhs = corr_operator(f, &CorrSum::single(&a))
                .unwrap()
                .add(&corr_operator(f, &CorrSum::single(&b)).unwrap().scale(3))
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

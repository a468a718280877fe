//! Seeded generators for spaces, morphisms, bundles and correspondences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicycle::Bicycle;
use crate::classes::RootList;
use crate::corr::Correspondence;
use crate::series::RingElement;
use crate::spaces::{Morphism, Space, VectorBundle};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Independent stream derived from this one.
    pub fn split(&mut self) -> Sampler {
        Sampler::new(self.rng.gen())
    }

    /// At most two factors of dimension 1 or 2, total at most `max_dim`.
    /// Spaces of dimension 0 are the point.
    pub fn space(&mut self, max_dim: u32) -> Space {
        let mut dims = Vec::new();
        let count = self.rng.gen_range(0..=2);
        for _ in 0..count {
            let used: u32 = dims.iter().sum();
            if used >= max_dim {
                break;
            }
            let d = self.rng.gen_range(1..=2u32.min(max_dim - used));
            dims.push(d);
        }
        Space::new(dims)
    }

    /// Like [`Sampler::space`] but never the point (when `max_dim > 0`).
    pub fn positive_space(&mut self, max_dim: u32) -> Space {
        if max_dim == 0 {
            return Space::point();
        }
        loop {
            let x = self.space(max_dim);
            if !x.is_point() {
                return x;
            }
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut self.rng);
        p
    }

    /// A random model morphism `m -> x`: each target factor takes an
    /// unused source factor of no larger dimension, or the base point.
    pub fn morphism(&mut self, m: &Space, x: &Space) -> Morphism {
        let mut free: Vec<usize> = (0..m.factor_count()).collect();
        free.shuffle(&mut self.rng);
        let assignment = x
            .dims()
            .iter()
            .map(|&tj| {
                let candidates: Vec<usize> = free.iter().copied().filter(|&i| m.dims()[i] <= tj).collect();
                if candidates.is_empty() || self.rng.gen_bool(0.2) {
                    return None;
                }
                let i = candidates[self.rng.gen_range(0..candidates.len())];
                free.retain(|&k| k != i);
                Some(i)
            })
            .collect();
        Morphism::new(m.clone(), x.clone(), assignment).expect("valid by construction")
    }

    /// A smooth map onto `y` whose fiber is `fiber`, with the apex factors
    /// shuffled.
    pub fn smooth_onto(&mut self, y: &Space, fiber: &Space) -> Morphism {
        let slots: Vec<(u32, Option<usize>)> = y
            .dims()
            .iter()
            .enumerate()
            .map(|(j, &d)| (d, Some(j)))
            .chain(fiber.dims().iter().map(|&d| (d, None)))
            .collect();
        let order = self.permutation(slots.len());
        let apex = Space::new(order.iter().map(|&k| slots[k].0).collect());
        let mut assign = vec![None; y.factor_count()];
        for (pos, &k) in order.iter().enumerate() {
            if let Some(j) = slots[k].1 {
                assign[j] = Some(pos);
            }
        }
        Morphism::new(apex, y.clone(), assign).expect("valid by construction")
    }

    /// Random proper-smooth correspondence `x <- y × A -> y` with
    /// `dim A <= fiber_budget`.
    pub fn correspondence(&mut self, x: &Space, y: &Space, fiber_budget: u32) -> Correspondence {
        let fiber = self.space(fiber_budget);
        let right = self.smooth_onto(y, &fiber);
        let left = self.morphism(right.source(), x);
        Correspondence::new(left, right).expect("proper-smooth by construction")
    }

    /// Composable `α: X -> Y`, `β: Y -> Z` with every apex, including the
    /// composite's, of dimension at most `max_total`.
    pub fn composable_pair(&mut self, max_total: u32) -> (Correspondence, Correspondence) {
        let side = max_total.min(3);
        loop {
            let x = self.space(side);
            let y = self.space(side);
            let z = self.space(side);
            let a = self.correspondence(&x, &y, 2);
            let b = self.correspondence(&y, &z, 2);
            let fiber_a = a.apex().dim() - y.dim();
            if b.apex().dim() + fiber_a <= max_total && a.apex().dim() <= max_total {
                return (a, b);
            }
        }
    }

    /// Proper-lci link `x <- M -> y` with both legs arbitrary model
    /// morphisms and `dim M <= max_apex`.
    pub fn lci_link(&mut self, x: &Space, y: &Space, max_apex: u32) -> (Morphism, Morphism) {
        let m = self.positive_space(max_apex);
        (self.morphism(&m, x), self.morphism(&m, y))
    }

    pub fn bicycle(&mut self, x: &Space, y: &Space, fiber_budget: u32, max_rank: usize) -> Bicycle {
        let c = self.correspondence(x, y, fiber_budget);
        let e = self.bundle(c.apex(), max_rank);
        Bicycle::from_corr(&c, e).expect("bundle on the apex")
    }

    /// Composable bicycles whose apexes (and composite) stay within `max_total`.
    pub fn composable_bicycles(&mut self, max_total: u32, max_rank: usize) -> (Bicycle, Bicycle) {
        let (a, b) = self.composable_pair(max_total);
        let e = self.bundle(a.apex(), max_rank);
        let f = self.bundle(b.apex(), max_rank);
        (Bicycle::from_corr(&a, e).expect("bundle on the apex"), Bicycle::from_corr(&b, f).expect("bundle on the apex"))
    }

    /// Up to four linear roots with coefficients in `-2..=2`, in the Chow
    /// ring of a product of at most three projective spaces of total
    /// dimension at most `max_dim`.
    pub fn root_list(&mut self, max_dim: u32) -> RootList {
        let mut dims = Vec::new();
        while dims.len() < 3 {
            let used: u32 = dims.iter().sum();
            if used >= max_dim || (!dims.is_empty() && self.rng.gen_bool(0.4)) {
                break;
            }
            dims.push(self.rng.gen_range(1..=3u32.min(max_dim - used)));
        }
        let ring = Space::new(dims).chow_ring();
        let count = self.rng.gen_range(1..=4);
        let roots = (0..count)
            .map(|_| {
                let coeffs: Vec<i64> = (0..ring.generator_count()).map(|_| self.rng.gen_range(-2..=2)).collect();
                RingElement::linear_form(&ring, &coeffs)
            })
            .collect();
        RootList::new(&ring, roots).expect("roots in the ring")
    }

    /// Line-bundle sum of rank `0..=max_rank` with degrees in `-2..=2`.
    pub fn bundle(&mut self, base: &Space, max_rank: usize) -> VectorBundle {
        let rank = self.rng.gen_range(0..=max_rank);
        let summands =
            (0..rank).map(|_| (0..base.factor_count()).map(|_| self.rng.gen_range(-2..=2)).collect()).collect();
        VectorBundle::new(base, summands).expect("degrees match the base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..50 {
            let (p, q) = a.composable_pair(6);
            assert_eq!((p.clone(), q.clone()), b.composable_pair(6));
            assert_eq!(p.target(), q.source());
            assert!(p.compose(&q).unwrap().apex().dim() <= 6);
        }
        for _ in 0..50 {
            assert!(a.space(4).dim() <= 4);
            assert!(a.space(0).is_point());
        }
    }

    #[test]
    fn smooth_onto_is_smooth() {
        let mut s = Sampler::new(3);
        for _ in 0..30 {
            let y = s.space(3);
            let f = s.space(2);
            let g = s.smooth_onto(&y, &f);
            assert!(g.is_smooth());
            assert_eq!(g.source().dim(), y.dim() + f.dim());
        }
    }
}

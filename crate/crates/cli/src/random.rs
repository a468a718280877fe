//! Random scenarios: sampled correspondences, bicycles and zigzags written
//! out as declarations, followed by the checks that apply to them.

use std::collections::BTreeMap;

use corrclass_core::bicycle::{Bicycle, BicycleFunctor};
use corrclass_core::corr::Correspondence;
use corrclass_core::functor::{FunctorId, Transformation};
use corrclass_core::random::Sampler;
use corrclass_core::spaces::{Morphism, Space, VectorBundle};
use corrclass_core::zigzag::ZigzagKind;

use crate::ast::{Check, Pos, Scenario, Stmt, StmtKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    /// Composable correspondence pairs.
    pub pairs: usize,
    /// Composable bicycle pairs, each with a double push/pull square.
    pub bicycles: usize,
    /// Zigzag pairs, one pro-smooth and one pro-lci each.
    pub zigzags: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts { pairs: 10, bicycles: 5, zigzags: 5 }
    }
}

/// `pt` for the point, `P_1_2` for `P(1,2)`.
pub fn space_name(x: &Space) -> String {
    if x.is_point() {
        return "pt".into();
    }
    let d: Vec<String> = x.dims().iter().map(u32::to_string).collect();
    format!("P_{}", d.join("_"))
}

/// Source dims, target dims and assignment of a declared map.
type MapKey = (Vec<u32>, Vec<u32>, Vec<Option<usize>>);

#[derive(Default)]
struct Builder {
    stmts: Vec<Stmt>,
    spaces: BTreeMap<Vec<u32>, String>,
    maps: BTreeMap<MapKey, String>,
    bundles: BTreeMap<(Vec<u32>, Vec<Vec<i64>>), String>,
}

impl Builder {
    fn push(&mut self, kind: StmtKind) {
        let line = self.stmts.len() + 1;
        self.stmts.push(Stmt { pos: Pos { line, col: 1 }, kind });
    }

    fn check(&mut self, c: Check) {
        self.push(StmtKind::Check(c));
    }

    fn space(&mut self, x: &Space) -> String {
        if let Some(n) = self.spaces.get(x.dims()) {
            return n.clone();
        }
        let name = space_name(x);
        self.spaces.insert(x.dims().to_vec(), name.clone());
        self.push(StmtKind::Space { name: name.clone(), dims: x.dims().to_vec() });
        name
    }

    fn map(&mut self, f: &Morphism) -> String {
        let key = (f.source().dims().to_vec(), f.target().dims().to_vec(), f.assignment().to_vec());
        if let Some(n) = self.maps.get(&key) {
            return n.clone();
        }
        let (source, target) = (self.space(f.source()), self.space(f.target()));
        let name = format!("m{}", self.maps.len() + 1);
        self.maps.insert(key, name.clone());
        self.push(StmtKind::Map { name: name.clone(), source, target, assignment: f.assignment().to_vec() });
        name
    }

    fn bundle(&mut self, e: &VectorBundle) -> String {
        let key = (e.base().dims().to_vec(), e.summands().to_vec());
        if let Some(n) = self.bundles.get(&key) {
            return n.clone();
        }
        let base = self.space(e.base());
        let name = format!("e{}", self.bundles.len() + 1);
        self.bundles.insert(key, name.clone());
        self.push(StmtKind::Bundle { name: name.clone(), base, summands: e.summands().to_vec() });
        name
    }

    fn corr(&mut self, name: &str, c: &Correspondence, lci: bool) -> String {
        let (source, apex, target) = (self.space(c.source()), self.space(c.apex()), self.space(c.target()));
        let (left, right) = (self.map(c.left()), self.map(c.right()));
        self.push(StmtKind::Corr { name: name.into(), source, apex, target, left, right, lci });
        name.into()
    }

    fn bicycle(&mut self, name: &str, b: &Bicycle) -> String {
        let (source, apex, target) = (self.space(b.source()), self.space(b.apex()), self.space(b.target()));
        let (left, right) = (self.map(b.left()), self.map(b.right()));
        let bundle = self.bundle(b.bundle());
        self.push(StmtKind::Bicycle { name: name.into(), source, apex, target, bundle, left, right });
        name.into()
    }

    fn zigzag(&mut self, name: &str, links: &[&str], kind: ZigzagKind) -> String {
        let links = links.iter().map(|s| s.to_string()).collect();
        self.push(StmtKind::Zigzag { name: name.into(), links, kind });
        name.into()
    }
}

/// A reproducible scenario whose spaces, apexes included, have total
/// dimension at most `max_total_dim`.
pub fn random_scenario(seed: u64, max_total_dim: u32, counts: Counts) -> Scenario {
    let mut s = Sampler::new(seed);
    let mut b = Builder::default();
    let max = max_total_dim;
    let transformations = Transformation::ALL.map(|t| t.name().to_string());

    for i in 1..=counts.pairs {
        let (alpha, beta) = s.composable_pair(max);
        let a = b.corr(&format!("a{i}"), &alpha, false);
        let c = b.corr(&format!("c{i}"), &beta, false);
        for f in FunctorId::ALL {
            b.check(Check::Functoriality { functor: f.name().into(), a: a.clone(), b: c.clone() });
        }
        for t in &transformations {
            b.check(Check::Naturality { transformation: t.clone(), a: a.clone() });
        }
        b.check(Check::IsoInvariance { functor: FunctorId::HTodd.name().into(), a: a.clone() });
        b.check(Check::Restrictions { functor: FunctorId::G0.name().into(), a: a.clone() });
        let (g, h) = (b.map(alpha.right()), b.map(beta.left()));
        b.check(Check::Square { g, h });
    }

    let functors = BicycleFunctor::representatives();
    for j in 1..=counts.bicycles {
        let (p, q) = s.composable_bicycles(max, 2);
        let (bp, bq) = (b.bicycle(&format!("b{j}"), &p), b.bicycle(&format!("d{j}"), &q));
        for f in &functors {
            b.check(Check::Functoriality { functor: f.to_string(), a: bp.clone(), b: bq.clone() });
        }
        b.check(Check::Naturality { transformation: Transformation::TdBfm.name().into(), a: bp.clone() });
        b.check(Check::Decomposition { b: bp.clone() });

        // A proper smooth projection f: X -> Y with bicycles on (X, X) and
        // (Y, Y), sized so every apex stays within the bound.
        let y = s.positive_space((max / 3).min(2));
        let fiber = s.positive_space((max / 3).min(1));
        let f = s.smooth_onto(&y, &fiber);
        let x = f.source().clone();
        let budget = (max - x.dim()).min(1);
        let (bx, by) = (s.bicycle(&x, &x, budget, 2), s.bicycle(&y, &y, budget, 2));
        let fname = b.map(&f);
        let (nx, ny) = (b.bicycle(&format!("bx{j}"), &bx), b.bicycle(&format!("by{j}"), &by));
        for func in &functors {
            let functor = func.to_string();
            b.check(Check::DoubleSquare { push: true, functor: functor.clone(), map: fname.clone(), b: nx.clone() });
            b.check(Check::DoubleSquare { push: false, functor, map: fname.clone(), b: ny.clone() });
        }
    }

    for k in 1..=counts.zigzags {
        let (alpha, beta) = s.composable_pair(max);
        let l1 = b.corr(&format!("za{k}"), &alpha, false);
        let l2 = b.corr(&format!("zb{k}"), &beta, false);
        let z = b.zigzag(&format!("z{k}"), &[&l1], ZigzagKind::ProSmooth);
        let w = b.zigzag(&format!("w{k}"), &[&l2], ZigzagKind::ProSmooth);
        let zw = b.zigzag(&format!("zw{k}"), &[&l1, &l2], ZigzagKind::ProSmooth);
        for f in FunctorId::ALL {
            b.check(Check::Functoriality { functor: f.name().into(), a: z.clone(), b: w.clone() });
        }
        for t in &transformations {
            b.check(Check::Naturality { transformation: t.clone(), a: zw.clone() });
        }

        let side = (max / 3).min(2);
        let (x, y, z) = (s.space(side), s.space(side), s.space(side));
        let (f1, g1) = s.lci_link(&x, &y, max.min(3));
        let (f2, g2) = s.lci_link(&y, &z, max.min(3));
        let c1 = Correspondence::with_tags(f1, g1, ZigzagKind::ProLci.link_tags()).expect("lci link");
        let c2 = Correspondence::with_tags(f2, g2, ZigzagKind::ProLci.link_tags()).expect("lci link");
        let (n1, n2) = (b.corr(&format!("la{k}"), &c1, true), b.corr(&format!("lb{k}"), &c2, true));
        let u = b.zigzag(&format!("u{k}"), &[&n1], ZigzagKind::ProLci);
        let v = b.zigzag(&format!("v{k}"), &[&n2], ZigzagKind::ProLci);
        for f in [FunctorId::G0, FunctorId::HTodd] {
            b.check(Check::Functoriality { functor: f.name().into(), a: u.clone(), b: v.clone() });
        }
    }
    Scenario { stmts: b.stmts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_spaces() {
        assert_eq!(space_name(&Space::point()), "pt");
        assert_eq!(space_name(&Space::new(vec![1, 2])), "P_1_2");
    }
}

//! Randomized check batteries. Every suite is a pure function of its
//! configuration and seed.

use std::collections::BTreeSet;
use std::fmt;

use crate::bicycle::{bicycle_operator_with, Bicycle, BicycleFunctor, BicycleSum, ProductMode};
use crate::check::{CheckReport, Failure};
use crate::classes::{chern_character, genus_class, GenusKind};
use crate::corr::{
    check_functoriality, check_iso_invariance, check_naturality, check_restrictions, corr_operator, reorder, tabulate,
    CorrSum, Correspondence,
};
use crate::error::Result;
use crate::functor::{EvalOptions, FunctorId, Transformation, Value};
use crate::ktheory::{k_chern_character, k_of_line, k_pullback, k_pushforward_with, PushRules};
use crate::laws::check_square;
use crate::operator::LinearOperator;
use crate::random::Sampler;
use crate::series::{Rational, RingElement, YPoly};
use crate::spaces::{
    chow_pullback, chow_pushforward, integrate, relative_genus, tangent_roots, Morphism, Space, VectorBundle,
};
use crate::zigzag::{
    homology_operator, homology_pushforward, pullback_dot, pushforward_dot, zigzag_operator_with, HomologyClass,
    Zigzag, ZigzagKind, ZigzagSum,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Composable correspondence pairs in the correspondence suite.
    pub pairs: usize,
    pub max_total_dim: u32,
    pub bicycles: usize,
    pub bicycle_max_dim: u32,
    pub zigzags: usize,
    pub morphisms: usize,
    pub root_lists: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            pairs: 100,
            max_total_dim: 6,
            bicycles: 50,
            bicycle_max_dim: 4,
            zigzags: 50,
            morphisms: 50,
            root_lists: 200,
        }
    }
}

impl SuiteConfig {
    /// Independent seed for the suite called `name`.
    fn seed_for(&self, name: &str) -> u64 {
        name.bytes().fold(self.seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
    }

    fn sampler(&self, name: &str) -> Sampler {
        Sampler::new(self.seed_for(name))
    }
}

/// Reports of one suite, plus the fiber squares it formed and
/// observations that are reported but not asserted.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub reports: Vec<CheckReport>,
    pub notes: Vec<String>,
    pub squares: Vec<(Morphism, Morphism)>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.to_string(), reports: Vec::new(), notes: Vec::new(), squares: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.reports.iter().all(CheckReport::ok)
    }

    pub fn cases(&self) -> usize {
        self.reports.iter().map(|r| r.cases).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.reports.iter().flat_map(|r| &r.failures)
    }

    pub fn report(&self, name: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.name == name)
    }

    fn report_mut(&mut self, name: &str) -> &mut CheckReport {
        if let Some(i) = self.reports.iter().position(|r| r.name == name) {
            return &mut self.reports[i];
        }
        self.reports.push(CheckReport::new(name));
        self.reports.last_mut().expect("just pushed")
    }

    fn square(&mut self, g: &Morphism, h: &Morphism) {
        self.squares.push((g.clone(), h.clone()));
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} suite {} ({} cases)", self.name, self.cases())?;
        for r in &self.reports {
            write!(f, "\n{r}")?;
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

/// A negative control is detected when its check fails and every failure
/// names a witness.
pub fn control_detected(r: &CheckReport) -> bool {
    !r.ok() && r.failures.iter().all(|f| !f.witness.is_empty())
}

/// Names accepted by [`run_suite`], in run order.
pub const SUITE_NAMES: [&str; 8] =
    ["hrr", "specializations", "corr", "bicycle", "zigzag", "homology", "laws", "controls"];

/// Run the named suites. `laws` runs on the fiber squares collected by the
/// suites before it, so it sees nothing unless some of them ran.
pub fn run_suites(cfg: &SuiteConfig, names: &[&str]) -> Result<Vec<SuiteResult>> {
    let mut out = Vec::new();
    let mut squares = Vec::new();
    for &name in SUITE_NAMES.iter().filter(|n| names.contains(n)) {
        let r = match name {
            "hrr" => hrr_suite(PushRules::default()),
            "specializations" => specialization_suite(cfg),
            "corr" => corr_suite(cfg),
            "bicycle" => bicycle_suite(cfg),
            "zigzag" => zigzag_suite(cfg),
            "homology" => homology_suite(cfg),
            "laws" => law_suite(&squares),
            _ => negative_controls(cfg),
        };
        squares.extend(r.squares.iter().cloned());
        out.push(r);
    }
    for n in names {
        if !SUITE_NAMES.contains(n) {
            return Err(crate::Error::Parse(format!("unknown suite `{n}`")));
        }
    }
    Ok(out)
}

/// `(d + 1)(d + 2)...(d + n) / n!`, computed directly.
fn extended_binomial(n: u32, d: i64) -> Rational {
    let mut acc = Rational::one();
    for i in 1..=n as i64 {
        acc = &acc * &Rational::new(d + i, i).expect("nonzero denominator");
    }
    acc
}

/// Riemann-Roch on `P^n` for `O(d)`: the Chow integral and the
/// K-theoretic pushforward to a point against the closed form, and
/// Grothendieck-Riemann-Roch for `P^n ⊂ P^{n+1}` at the level of classes
/// (the embedding is where the Koszul factor enters).
pub fn hrr_suite(rules: PushRules) -> SuiteResult {
    let name = if rules.koszul { "hrr" } else { "hrr without koszul" };
    let mut out = SuiteResult::new(name);
    let report = out.report_mut(name);
    for n in 0..=4u32 {
        let x = Space::projective(n);
        let big = Space::projective(n + 1);
        let iota = Morphism::new(x.clone(), big.clone(), vec![Some(0)]).expect("linear embedding");
        let td_x = genus_class(GenusKind::Todd, &tangent_roots(&x));
        let td_big = genus_class(GenusKind::Todd, &tangent_roots(&big));
        for d in -3..=5i64 {
            let case = format!("P^{n}, O({d})");
            let expected = YPoly::constant(extended_binomial(n, d));
            let outcome = (|| -> Result<(bool, String)> {
                let integrand = &chern_character(&VectorBundle::line(&x, vec![d])) * &td_x;
                let chow = integrate(&x, &integrand)?;
                let line = k_of_line(&x, &[d]);
                let chi = k_pushforward_with(&Morphism::to_point(&x), &line, rules)?.constant_term();
                let grr_k = &k_chern_character(&k_pushforward_with(&iota, &line, rules)?) * &td_big;
                let grr_chow = chow_pushforward(&iota, &integrand)?;
                let ok = chow == expected && chi == expected && grr_k == grr_chow;
                let witness = if chow != expected || chi != expected {
                    format!("[O({d})] on P^{n}: expected {expected}, integral {chow}, chi {chi}")
                } else {
                    format!("[O({d})] on P^{n} pushed into P^{}: ch.td = {grr_k}, i_*(ch.td) = {grr_chow}", n + 1)
                };
                Ok((ok, witness))
            })();
            match outcome {
                Ok((ok, w)) => report.record(case, ok, w),
                Err(e) => report.error(case, &e),
            }
        }
    }
    out
}

/// `T_y` at `y = -1, 0, 1` against the Chern, Todd and L classes.
pub fn specialization_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("specializations");
    let mut s = cfg.sampler("specializations");
    let report = out.report_mut("T_y specializations");
    for i in 0..cfg.root_lists {
        let roots = s.root_list(6);
        let ty = genus_class(GenusKind::Hirzebruch, &roots);
        for (y, kind) in [(-1, GenusKind::Chern), (0, GenusKind::Todd), (1, GenusKind::LClass)] {
            let lhs = ty.eval_y(&Rational::from_int(y));
            let rhs = genus_class(kind, &roots);
            let witness = format!("roots {:?}: T_{y} = {lhs}, {kind} = {rhs}", roots.roots());
            report.record(format!("root list {i} at y = {y}"), lhs == rhs, witness);
        }
    }
    out
}

fn structural_equal(report: &mut CheckReport, case: String, lhs: Result<String>, rhs: Result<String>) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let witness = format!("{l} vs {r}");
            report.record(case, l == r, witness);
        }
        (Err(e), _) | (_, Err(e)) => report.error(case, &e),
    }
}

/// Covariance of all six functors, the three natural transformations,
/// isomorphism invariance, restriction to the two subcategories and the
/// category laws on random composable pairs.
pub fn corr_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("corr");
    let mut s = cfg.sampler("corr");
    let opts = EvalOptions::default();
    for _ in 0..cfg.pairs {
        let (a, b) = s.composable_pair(cfg.max_total_dim);
        out.square(a.right(), b.left());
        for f in FunctorId::ALL {
            check_functoriality(f, &a, &b, opts, out.report_mut("covariance"));
        }
        let ab = a.compose(&b);
        for tau in Transformation::ALL {
            check_naturality(tau, &a, opts, out.report_mut("naturality"));
            check_naturality(tau, &b, opts, out.report_mut("naturality"));
            if let Ok(ab) = &ab {
                check_naturality(tau, ab, opts, out.report_mut("naturality"));
            }
        }
        let order = s.permutation(a.apex().factor_count());
        for f in FunctorId::ALL {
            check_iso_invariance(f, &a, &order, out.report_mut("isomorphism invariance"));
            check_restrictions(f, &a, out.report_mut("restrictions"));
        }

        let w = s.space(2);
        let c = s.correspondence(b.target(), &w, 1);
        let laws = out.report_mut("category laws");
        let assoc_l = a.compose(&b).and_then(|ab| ab.compose(&c)).map(|x| x.to_string());
        let assoc_r = b.compose(&c).and_then(|bc| a.compose(&bc)).map(|x| x.to_string());
        structural_equal(laws, format!("associativity ({a}) ({b}) ({c})"), assoc_l, assoc_r);
        let canon = Ok(a.canonicalize().to_string());
        let left_unit = Correspondence::identity(a.source()).compose(&a).map(|x| x.to_string());
        let right_unit = a.compose(&Correspondence::identity(a.target())).map(|x| x.to_string());
        structural_equal(laws, format!("left unit ({a})"), left_unit, canon.clone());
        structural_equal(laws, format!("right unit ({a})"), right_unit, canon);
    }
    out
}

/// Base change and the projection formula on every distinct square.
pub fn law_suite(squares: &[(Morphism, Morphism)]) -> SuiteResult {
    let mut out = SuiteResult::new("laws");
    let distinct: BTreeSet<&(Morphism, Morphism)> = squares.iter().collect();
    let report = out.report_mut("base change and projection formula");
    for (g, h) in distinct {
        check_square(g, h, report);
    }
    let n = squares.iter().collect::<BTreeSet<_>>().len();
    out.notes.push(format!("{n} distinct fiber squares from {} formed", squares.len()));
    out
}

/// `H(b)` as a matrix.
fn bop(functor: BicycleFunctor, b: &Bicycle, opts: EvalOptions) -> Result<LinearOperator> {
    bicycle_operator_with(functor, &BicycleSum::single(b), opts)
}

/// `v -> cl(T_f) ∩ f^* v` in the value theory of `functor`.
fn twisted_pull(functor: BicycleFunctor, f: &Morphism, v: &Value, opts: EvalOptions) -> Result<Value> {
    match v {
        Value::K(a) => Ok(Value::K(k_pullback(f, a)?)),
        Value::Chow(c) => {
            let pulled = chow_pullback(f, c)?;
            Ok(Value::Chow(match functor.tangent_kind() {
                Some(k) if opts.twist => &relative_genus(k, f) * &pulled,
                _ => pulled,
            }))
        }
        _ => Err(crate::error::structural("bicycle functors act on K or Chow classes")),
    }
}

fn plain_push(f: &Morphism, v: &Value) -> Result<Value> {
    match v {
        Value::K(a) => Ok(Value::K(k_pushforward_with(f, a, PushRules::default())?)),
        Value::Chow(c) => Ok(Value::Chow(chow_pushforward(f, c)?)),
        _ => Err(crate::error::structural("bicycle functors act on K or Chow classes")),
    }
}

/// Left and right sides of the `f_{**}` square for `b` on `(X, X)`.
pub fn double_push_sides(
    functor: BicycleFunctor,
    f: &Morphism,
    b: &Bicycle,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let pushed = b.double_push(f)?;
    let vf = functor.value_functor();
    let y = f.target();
    let lhs = tabulate(vf, y, vf, y, |v| pushed.apply(functor, v, opts))?;
    let rhs = tabulate(vf, y, vf, y, |v| plain_push(f, &b.apply(functor, &twisted_pull(functor, f, v, opts)?, opts)?))?;
    Ok((lhs, rhs))
}

/// Left and right sides of the `f^{**}` square for `b` on `(Y, Y)`.
pub fn double_pull_sides(
    functor: BicycleFunctor,
    f: &Morphism,
    b: &Bicycle,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let pulled = b.double_pull(f)?;
    let vf = functor.value_functor();
    let x = f.source();
    let lhs = tabulate(vf, x, vf, x, |v| pulled.apply(functor, v, opts))?;
    let rhs = tabulate(vf, x, vf, x, |v| twisted_pull(functor, f, &b.apply(functor, &plain_push(f, v)?, opts)?, opts))?;
    Ok((lhs, rhs))
}

pub fn bicycle_covariance_sides(
    functor: BicycleFunctor,
    a: &Bicycle,
    b: &Bicycle,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let ab = a.product(functor.product(), b)?;
    let vf = functor.value_functor();
    let (x, z) = (a.source(), b.target());
    let lhs = tabulate(vf, z, vf, x, |v| ab.apply(functor, v, opts))?;
    let rhs = tabulate(vf, z, vf, x, |v| a.apply(functor, &b.apply(functor, v, opts)?, opts))?;
    Ok((lhs, rhs))
}

/// `td_bfm ∘ G0⊗(b)` against `H^{td,ch}(b) ∘ td_bfm`.
pub fn bicycle_naturality_sides(b: &Bicycle, opts: EvalOptions) -> Result<(LinearOperator, LinearOperator)> {
    let tau = Transformation::TdBfm;
    let (x, y) = (b.source(), b.target());
    let lhs =
        tabulate(FunctorId::G0, y, FunctorId::HTodd, x, |v| tau.apply(&b.apply(BicycleFunctor::G0Tensor, v, opts)?))?;
    let rhs =
        tabulate(FunctorId::G0, y, FunctorId::HTodd, x, |v| b.apply(BicycleFunctor::Htdch, &tau.apply(v)?, opts))?;
    Ok((lhs, rhs))
}

/// `[X <-p V -id-> V; 0] ∘⊕ [V <-id V -id-> V; E] ∘⊕ [V <-id V -s-> Y; 0]`.
pub fn decompose(b: &Bicycle) -> Result<Bicycle> {
    let v = b.apex();
    let id = Morphism::identity(v);
    let p_part = Bicycle::new(b.left().clone(), id.clone(), VectorBundle::zero(v))?;
    let e_part = Bicycle::new(id.clone(), id.clone(), b.bundle().clone())?;
    let s_part = Bicycle::new(id, b.right().clone(), VectorBundle::zero(v))?;
    p_part.product(ProductMode::Whitney, &e_part)?.product(ProductMode::Whitney, &s_part)
}

/// Every bicycle statement on random bicycles: covariance of all functor
/// families under their product, Todd naturality, the `f_{**}`/`f^{**}`
/// squares, decomposition, bilinearity, grades and associativity.
pub fn bicycle_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("bicycle");
    let mut s = cfg.sampler("bicycle");
    let opts = EvalOptions::default();
    let max = cfg.bicycle_max_dim;
    let functors = BicycleFunctor::representatives();
    let mut commuting = (0, 0);
    for _ in 0..cfg.bicycles {
        let (a, b) = s.composable_bicycles(max, 2);
        out.square(a.right(), b.left());
        for &f in &functors {
            let case = format!("{f}: ({a}) o ({b})");
            out.report_mut("covariance").compare_result(case, bicycle_covariance_sides(f, &a, &b, opts));
        }
        out.report_mut("td naturality").compare_result(format!("{a}"), bicycle_naturality_sides(&a, opts));

        let d = decompose(&a).map(|x| x.to_string());
        structural_equal(out.report_mut("decomposition"), format!("{a}"), d, Ok(a.canonicalize().to_string()));

        // Grades and bilinearity.
        let a2 = s.bicycle(a.source(), a.target(), 1, 2);
        for mode in [ProductMode::Whitney, ProductMode::Tensor] {
            let ((m, r), (n, k)) = (a.grade(), b.grade());
            let expected = match mode {
                ProductMode::Whitney => (m + n, r + k),
                ProductMode::Tensor => (m + n, r * k),
            };
            let got = a.product(mode, &b).map(|p| p.grade());
            let ok = got.as_ref().is_ok_and(|g| *g == expected);
            out.report_mut("grades").record(format!("{mode}: ({a}) o ({b})"), ok, format!("{got:?} vs {expected:?}"));

            let sum = BicycleSum::single(&a).add(&BicycleSum::single(&a2));
            let lhs = sum.and_then(|s| s.product(mode, &BicycleSum::single(&b))).map(|x| x.to_string());
            let rhs = BicycleSum::single(&a)
                .product(mode, &BicycleSum::single(&b))
                .and_then(|x| x.add(&BicycleSum::single(&a2).product(mode, &BicycleSum::single(&b))?))
                .map(|x| x.to_string());
            structural_equal(out.report_mut("bilinearity"), format!("{mode}: ({a} + {a2}) o ({b})"), lhs, rhs);
        }
        let linear = (|| {
            let sum = BicycleSum::single(&a).add(&BicycleSum::single(&a2))?;
            let lhs = bicycle_operator_with(BicycleFunctor::Hch, &sum, opts)?;
            let rhs = bop(BicycleFunctor::Hch, &a, opts)?.add(&bop(BicycleFunctor::Hch, &a2, opts)?)?;
            Ok((lhs, rhs))
        })();
        out.report_mut("bilinearity").compare_result(format!("Hch: {a} + {a2}"), linear);

        // Associativity.
        let w = s.space(1);
        let c = s.bicycle(b.target(), &w, 1, 1);
        for mode in [ProductMode::Whitney, ProductMode::Tensor] {
            let l = a.product(mode, &b).and_then(|ab| ab.product(mode, &c)).map(|x| x.to_string());
            let r = b.product(mode, &c).and_then(|bc| a.product(mode, &bc)).map(|x| x.to_string());
            structural_equal(out.report_mut("associativity"), format!("{mode}: ({a}) ({b}) ({c})"), l, r);
            let unit = Bicycle::identity(a.source(), mode.unit_rank());
            let u = unit.product(mode, &a).map(|x| x.to_string());
            structural_equal(
                out.report_mut("associativity"),
                format!("{mode} unit: {a}"),
                u,
                Ok(a.canonicalize().to_string()),
            );
        }

        // Double push and pull along a proper smooth projection f: X -> Y.
        let y = s.positive_space(2);
        let fiber = s.positive_space(1);
        let f = s.smooth_onto(&y, &fiber);
        let x = f.source().clone();
        let bx = s.bicycle(&x, &x, 1, 2);
        let by = s.bicycle(&y, &y, 1, 2);
        out.square(&f, by.left());
        out.square(&f, by.right());
        for &func in &functors {
            out.report_mut("double push square")
                .compare_result(format!("{func}: f = {f}, b = {bx}"), double_push_sides(func, &f, &bx, opts));
            out.report_mut("double pull square")
                .compare_result(format!("{func}: f = {f}, b = {by}"), double_pull_sides(func, &f, &by, opts));
        }
        let via = by.pull_right(&f).and_then(|t| t.pull_left(&f)).map(|t| t.canonicalize().to_string());
        let direct = by.double_pull(&f).map(|t| t.canonicalize().to_string());
        structural_equal(out.report_mut("double pull as two pulls"), format!("f = {f}, b = {by}"), direct, via);
        let via = bx.push_left(&f).and_then(|t| t.push_right(&f)).map(|t| t.canonicalize().to_string());
        let direct = bx.double_push(&f).map(|t| t.canonicalize().to_string());
        structural_equal(out.report_mut("double push as two pushes"), format!("f = {f}, b = {bx}"), direct, via);
        let grade = bx.double_push(&f).map(|t| t.grade());
        let (m, r) = bx.grade();
        let expected = (m + f.source().dim() - f.target().dim(), r);
        out.report_mut("grades").record(
            format!("double push: f = {f}, b = {bx}"),
            grade.as_ref().is_ok_and(|g| *g == expected),
            format!("{grade:?} vs {expected:?}"),
        );

        // Commutativity of the endomorphism ring is observed, not asserted.
        let by2 = s.bicycle(&y, &y, 1, 1);
        for mode in [ProductMode::Whitney, ProductMode::Tensor] {
            if let (Ok(p), Ok(q)) = (by.product(mode, &by2), by2.product(mode, &by)) {
                commuting.1 += 1;
                if p == q {
                    commuting.0 += 1;
                }
            }
        }
    }
    out.notes.push(format!("endomorphism products commuted in {} of {} sampled cases", commuting.0, commuting.1));
    out
}

fn zigzag_op(functor: FunctorId, z: &Zigzag) -> Result<LinearOperator> {
    zigzag_op_with(functor, z, EvalOptions::default())
}

fn zigzag_op_with(functor: FunctorId, z: &Zigzag, opts: EvalOptions) -> Result<LinearOperator> {
    zigzag_operator_with(functor, &ZigzagSum::single(z), opts)
}

/// `F(z ∧ w)` against the matrix product `F(z) · F(w)`; the motivic group
/// has no finite basis, so there both sides are evaluated on probes.
pub fn juxtaposition_sides(
    functor: FunctorId,
    z: &Zigzag,
    w: &Zigzag,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let zw = z.juxtapose(w)?;
    let lhs = zigzag_op_with(functor, &zw, opts)?;
    let rhs = if functor.is_finite() {
        zigzag_op_with(functor, z, opts)?.compose(&zigzag_op_with(functor, w, opts)?)?
    } else {
        tabulate(functor, w.target(), functor, z.source(), |v| z.apply(functor, &w.apply(functor, v, opts)?, opts))?
    };
    Ok((lhs, rhs))
}

pub fn zigzag_naturality_sides(
    tau: Transformation,
    z: &Zigzag,
    opts: EvalOptions,
) -> Result<(LinearOperator, LinearOperator)> {
    let (src, tgt) = (tau.source(), tau.target());
    let lhs = tabulate(src, z.target(), tgt, z.source(), |v| tau.apply(&z.apply(src, v, opts)?))?;
    let rhs = tabulate(src, z.target(), tgt, z.source(), |v| z.apply(tgt, &tau.apply(v)?, opts))?;
    Ok((lhs, rhs))
}

/// Juxtaposition covariance for pro-smooth and pro-lci zigzags, agreement
/// with composed correspondences, naturality through zigzags and the
/// proper-identity collapse.
pub fn zigzag_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("zigzag");
    let mut s = cfg.sampler("zigzag");
    for _ in 0..cfg.zigzags {
        // Pro-smooth.
        let (a, b) = s.composable_pair(cfg.max_total_dim);
        out.square(a.right(), b.left());
        let built = Zigzag::single(&a, ZigzagKind::ProSmooth)
            .and_then(|za| Ok((za, Zigzag::single(&b, ZigzagKind::ProSmooth)?)));
        let (za, zb) = match built {
            Ok(p) => p,
            Err(e) => {
                out.report_mut("pro-smooth covariance").error(format!("({a}) ~ ({b})"), &e);
                continue;
            }
        };
        let zab = za.juxtapose(&zb).expect("endpoints match");
        for f in FunctorId::ALL {
            let case = format!("{f}: ({a}) ~ ({b})");
            out.report_mut("pro-smooth covariance")
                .compare_result(case.clone(), juxtaposition_sides(f, &za, &zb, EvalOptions::default()));
            let agree = (|| {
                let composed = CorrSum::single(&a.compose(&b)?);
                Ok((zigzag_op(f, &zab)?, corr_operator(f, &composed)?))
            })();
            out.report_mut("agreement with composition").compare_result(case, agree);
        }
        let unit = Zigzag::empty(a.source(), ZigzagKind::ProSmooth);
        let unit_sides =
            (|| Ok((zigzag_op(FunctorId::HTodd, &unit.juxtapose(&za)?)?, zigzag_op(FunctorId::HTodd, &za)?)))();
        out.report_mut("pro-smooth covariance").compare_result(format!("empty ~ ({a})"), unit_sides);
        for tau in Transformation::ALL {
            out.report_mut("naturality through zigzags")
                .compare_result(format!("{tau}: {zab}"), zigzag_naturality_sides(tau, &zab, EvalOptions::default()));
        }

        // Pro-lci: arbitrary right legs, including embeddings.
        let (x, y, z) = (s.space(2), s.space(2), s.space(2));
        let (f1, g1) = s.lci_link(&x, &y, 3);
        let (f2, g2) = s.lci_link(&y, &z, 3);
        let tags = ZigzagKind::ProLci.link_tags();
        let links = (|| {
            let l1 = Correspondence::with_tags(f1.clone(), g1.clone(), tags)?;
            let l2 = Correspondence::with_tags(f2.clone(), g2.clone(), tags)?;
            Ok((Zigzag::single(&l1, ZigzagKind::ProLci)?, Zigzag::single(&l2, ZigzagKind::ProLci)?))
        })();
        let (z1, z2) = match links {
            Ok(p) => p,
            Err(e) => {
                out.report_mut("pro-lci covariance").error(format!("{f1} / {g1} ~ {f2} / {g2}"), &e);
                continue;
            }
        };
        for f in [FunctorId::G0, FunctorId::HTodd] {
            out.report_mut("pro-lci covariance")
                .compare_result(format!("{f}: {z1} ~ {z2}"), juxtaposition_sides(f, &z1, &z2, EvalOptions::default()));
        }
        let z12 = z1.juxtapose(&z2).expect("endpoints match");
        out.report_mut("naturality through zigzags").compare_result(
            format!("td_bfm: {z12}"),
            zigzag_naturality_sides(Transformation::TdBfm, &z12, EvalOptions::default()),
        );

        // Proper-identity links collapse to one proper-identity correspondence.
        let x1 = s.space(3);
        let x2 = s.space(3);
        let p1 = s.morphism(&x1, &x);
        let p2 = s.morphism(&x2, &x1);
        let collapse = (|| {
            let l1 = Correspondence::new(p1.clone(), Morphism::identity(&x1))?;
            let l2 = Correspondence::new(p2.clone(), Morphism::identity(&x2))?;
            let zz = Zigzag::new(&x, &[l1, l2], ZigzagKind::ProSmooth)?;
            let single = CorrSum::single(&Correspondence::new(p2.then(&p1)?, Morphism::identity(&x2))?);
            let mut pairs = Vec::new();
            for f in FunctorId::ALL {
                pairs.push((f, zigzag_op(f, &zz)?, corr_operator(f, &single)?));
            }
            Ok(pairs)
        })();
        match collapse {
            Ok(pairs) => {
                for (f, l, r) in pairs {
                    out.report_mut("proper-identity collapse").compare(format!("{f}: {p1}, {p2}"), l, r);
                }
            }
            Err(e) => out.report_mut("proper-identity collapse").error(format!("{p1}, {p2}"), &e),
        }
    }
    out
}

/// Tabulate `H^*(y) -> H^*(x)` on the Chow basis.
fn cohomology_operator(
    y: &Space,
    x: &Space,
    apply: impl Fn(&RingElement) -> Result<RingElement>,
) -> Result<LinearOperator> {
    let f = FunctorId::HTodd;
    tabulate(f, y, f, x, |v| match v {
        Value::Chow(c) => Ok(Value::Chow(apply(c)?)),
        _ => unreachable!("Chow basis"),
    })
}

/// Contravariance of `f^•`, isomorphism invariance of `g_* f^•`, `f_* g^•`
/// and `f_• g^*` with the projection-formula square replayed, and
/// juxtaposition covariance of smooth zigzags in homology.
pub fn homology_suite(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("homology");
    let mut s = cfg.sampler("homology");
    for _ in 0..cfg.morphisms {
        let (x, y, z) = (s.space(3), s.space(3), s.space(3));
        let f = s.morphism(&x, &y);
        let g = s.morphism(&y, &z);
        let sides = (|| {
            let gf = f.then(&g)?;
            let lhs = homology_operator(&z, &x, |v| pullback_dot(&gf, v))?;
            let fd = homology_operator(&y, &x, |v| pullback_dot(&f, v))?;
            let gd = homology_operator(&z, &y, |v| pullback_dot(&g, v))?;
            Ok((lhs, fd.compose(&gd)?))
        })();
        out.report_mut("pullback contravariance").compare_result(format!("f = {f}, g = {g}"), sides);
        let sides = (|| {
            let gf = f.then(&g)?;
            let lhs = homology_operator(&x, &z, |v| homology_pushforward(&gf, v))?;
            let fp = homology_operator(&x, &y, |v| homology_pushforward(&f, v))?;
            let gp = homology_operator(&y, &z, |v| homology_pushforward(&g, v))?;
            Ok((lhs, gp.compose(&fp)?))
        })();
        out.report_mut("pushforward covariance").compare_result(format!("f = {f}, g = {g}"), sides);

        // An isomorphic pair of smooth correspondences X <- M -> Y.
        let m = s.positive_space(3);
        let (f, g) = (s.morphism(&m, &x), s.morphism(&m, &y));
        let order = s.permutation(m.factor_count());
        let h = reorder(&m, &order);
        let case = format!("{f} / {g} reordered by {order:?}");
        let iso = (|| {
            let (f2, g2) = (h.then(&f)?, h.then(&g)?);
            let pairs = vec![
                (
                    "g_* f^•",
                    homology_operator(&x, &y, |v| homology_pushforward(&g, &pullback_dot(&f, v)?))?,
                    homology_operator(&x, &y, |v| homology_pushforward(&g2, &pullback_dot(&f2, v)?))?,
                ),
                (
                    "f_* g^•",
                    homology_operator(&y, &x, |v| homology_pushforward(&f, &pullback_dot(&g, v)?))?,
                    homology_operator(&y, &x, |v| homology_pushforward(&f2, &pullback_dot(&g2, v)?))?,
                ),
                (
                    "f_• g^*",
                    cohomology_operator(&y, &x, |c| pushforward_dot(&f, &chow_pullback(&g, c)?))?,
                    cohomology_operator(&y, &x, |c| pushforward_dot(&f2, &chow_pullback(&g2, c)?))?,
                ),
                (
                    "h_* PD h^* = PD",
                    cohomology_operator(&m, &m, |c| {
                        let pd = HomologyClass::poincare_dual(&chow_pullback(&h, c)?);
                        Ok(homology_pushforward(&h, &pd)?.to_cohomology())
                    })?,
                    LinearOperator::identity(&FunctorId::HTodd.row_labels(&m).expect("finite basis")),
                ),
            ];
            Ok(pairs)
        })();
        match iso {
            Ok(pairs) => {
                for (what, l, r) in pairs {
                    out.report_mut("isomorphism invariance").compare(format!("{what}: {case}"), l, r);
                }
            }
            Err(e) => out.report_mut("isomorphism invariance").error(case, &e),
        }

        // Smooth zigzags in homology.
        let w = s.space(3);
        let (f3, g3) = s.lci_link(&y, &w, 3);
        let sides = (|| {
            let tags = ZigzagKind::SmoothObjects.link_tags();
            let z1 =
                Zigzag::single(&Correspondence::with_tags(f.clone(), g.clone(), tags)?, ZigzagKind::SmoothObjects)?;
            let z2 =
                Zigzag::single(&Correspondence::with_tags(f3.clone(), g3.clone(), tags)?, ZigzagKind::SmoothObjects)?;
            let z12 = z1.juxtapose(&z2)?;
            let lhs = homology_operator(&w, &x, |v| z12.apply_homology(v))?;
            let a = homology_operator(&y, &x, |v| z1.apply_homology(v))?;
            let b = homology_operator(&w, &y, |v| z2.apply_homology(v))?;
            Ok((lhs, a.compose(&b)?))
        })();
        out.report_mut("smooth zigzag covariance").compare_result(format!("{f} / {g} ~ {f3} / {g3}"), sides);
    }
    out
}

/// Checks that must fail: naturality with the tangent twist dropped, for
/// correspondences and bicycles, and Riemann-Roch without the Koszul
/// factor.
pub fn negative_controls(cfg: &SuiteConfig) -> SuiteResult {
    let mut out = SuiteResult::new("controls");
    let untwisted = EvalOptions { twist: false, ..EvalOptions::default() };
    let mut s = cfg.sampler("corr");
    for _ in 0..cfg.pairs {
        let (a, _) = s.composable_pair(cfg.max_total_dim);
        check_naturality(Transformation::TdBfm, &a, untwisted, out.report_mut("td_bfm naturality without twist"));
    }
    let mut s = cfg.sampler("bicycle");
    for _ in 0..cfg.bicycles {
        let (a, _) = s.composable_bicycles(cfg.bicycle_max_dim, 2);
        out.report_mut("bicycle td naturality without twist")
            .compare_result(format!("{a}"), bicycle_naturality_sides(&a, untwisted));
    }
    let hrr = hrr_suite(PushRules { koszul: false });
    out.reports.extend(hrr.reports);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            seed: 5,
            pairs: 6,
            max_total_dim: 4,
            bicycles: 3,
            bicycle_max_dim: 3,
            zigzags: 4,
            morphisms: 6,
            root_lists: 10,
        }
    }

    #[test]
    fn closed_form_binomial() {
        assert_eq!(extended_binomial(2, 1), Rational::from_int(3));
        assert_eq!(extended_binomial(3, -2), Rational::zero());
        assert_eq!(extended_binomial(2, -3), Rational::one());
        assert_eq!(extended_binomial(0, -3), Rational::one());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = small();
        let results = run_suites(&cfg, &SUITE_NAMES[..7]).unwrap();
        for r in &results {
            assert!(r.ok(), "{r}");
            assert!(r.cases() > 0, "{}", r.name);
        }
    }

    #[test]
    fn controls_fail_with_witnesses() {
        let r = negative_controls(&small());
        for rep in &r.reports {
            assert!(control_detected(rep), "{rep}");
        }
    }

    #[test]
    fn deterministic() {
        let a = corr_suite(&small());
        let b = corr_suite(&small());
        assert_eq!(a.reports, b.reports);
        assert_eq!(a.squares, b.squares);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suites(&small(), &["nope"]).is_err());
    }
}

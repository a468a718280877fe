//! Executes the directives of a resolved scenario.

use corrclass_core::bicycle::{bicycle_operator_with, Bicycle, BicycleFunctor, BicycleSum};
use corrclass_core::check::CheckReport;
use corrclass_core::corr::{
    check_iso_invariance, check_restrictions, corr_operator_with, functoriality_sides, naturality_sides, CorrSum,
};
use corrclass_core::functor::{EvalOptions, FunctorId, Transformation, Value};
use corrclass_core::laws::check_square;
use corrclass_core::random::Sampler;
use corrclass_core::suites::{
    bicycle_covariance_sides, bicycle_naturality_sides, decompose, double_pull_sides, double_push_sides,
    juxtaposition_sides, run_suites, zigzag_naturality_sides, SuiteConfig,
};
use corrclass_core::zigzag::{zigzag_operator_with, ZigzagSum};

use crate::ast::{BicycleExpr, Check, Side, Stmt, StmtKind};
use crate::report::{DirectiveReport, Report, ValueReport};
use crate::resolve::{Env, Object, Program};

/// Seed of one directive, from the master seed and the directive's text, so
/// a directive sees the same randomness wherever it sits in a file.
pub fn directive_seed(seed: u64, text: &str) -> u64 {
    text.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn eval_bicycle_expr(env: &Env, expr: &BicycleExpr) -> corrclass_core::Result<Bicycle> {
    match expr {
        BicycleExpr::Prod { mode, a, b } => env.bicycle(a).product(*mode, env.bicycle(b)),
        BicycleExpr::Push { side: Side::Left, map, b } => env.bicycle(b).push_left(env.map(map)),
        BicycleExpr::Push { side: Side::Right, map, b } => env.bicycle(b).push_right(env.map(map)),
        BicycleExpr::Pull { side: Side::Left, map, b } => env.bicycle(b).pull_left(env.map(map)),
        BicycleExpr::Pull { side: Side::Right, map, b } => env.bicycle(b).pull_right(env.map(map)),
        BicycleExpr::DoublePush { map, b } => env.bicycle(b).double_push(env.map(map)),
        BicycleExpr::DoublePull { map, b } => env.bicycle(b).double_pull(env.map(map)),
    }
}

struct Runner<'a> {
    env: &'a Env,
    seed: u64,
    opts: EvalOptions,
}

impl Runner<'_> {
    fn obj(&self, name: &str) -> &Object {
        self.env.get(name).expect("names are resolved")
    }

    fn functor(name: &str) -> FunctorId {
        name.parse().expect("functor checked at resolution")
    }

    fn bicycle_functor(name: &str) -> BicycleFunctor {
        name.parse().expect("functor checked at resolution")
    }

    fn check(&self, check: &Check, text: &str, d: &mut DirectiveReport) {
        let opts = self.opts;
        let mut r = CheckReport::new(d.suite.clone());
        match check {
            Check::Functoriality { functor, a, b } => {
                let sides = match (self.obj(a), self.obj(b)) {
                    (Object::Corr(x), Object::Corr(y)) => functoriality_sides(Self::functor(functor), x, y, opts),
                    (Object::Zigzag(x), Object::Zigzag(y)) => juxtaposition_sides(Self::functor(functor), x, y, opts),
                    (Object::Bicycle(x), Object::Bicycle(y)) => {
                        bicycle_covariance_sides(Self::bicycle_functor(functor), x, y, opts)
                    }
                    _ => unreachable!("argument kinds checked at resolution"),
                };
                r.compare_result(format!("{functor}: {a} o {b}"), sides);
            }
            Check::Naturality { transformation, a } => {
                let tau: Transformation = transformation.parse().expect("checked at resolution");
                let sides = match self.obj(a) {
                    Object::Corr(x) => naturality_sides(tau, x, opts),
                    Object::Zigzag(z) => zigzag_naturality_sides(tau, z, opts),
                    Object::Bicycle(b) => bicycle_naturality_sides(b, opts),
                    _ => unreachable!("argument kinds checked at resolution"),
                };
                r.compare_result(format!("{tau}: {a}"), sides);
            }
            Check::IsoInvariance { functor, a } => {
                let Object::Corr(c) = self.obj(a) else { unreachable!() };
                let mut s = Sampler::new(directive_seed(self.seed, text));
                let order = s.permutation(c.apex().dims().len());
                check_iso_invariance(Self::functor(functor), c, &order, &mut r);
            }
            Check::Restrictions { functor, a } => {
                let Object::Corr(c) = self.obj(a) else { unreachable!() };
                check_restrictions(Self::functor(functor), c, &mut r);
            }
            Check::Square { g, h } => check_square(self.env.map(g), self.env.map(h), &mut r),
            Check::Decomposition { b } => {
                let b = self.env.bicycle(b);
                let case = b.to_string();
                match decompose(b) {
                    Ok(d) => {
                        let (got, want) = (d.to_string(), b.canonicalize().to_string());
                        let ok = got == want;
                        r.record(case, ok, format!("{got} vs {want}"));
                    }
                    Err(e) => r.error(case, &e),
                }
            }
            Check::DoubleSquare { push, functor, map, b } => {
                let (f, bf, bb) = (Self::bicycle_functor(functor), self.env.map(map), self.env.bicycle(b));
                let sides = if *push { double_push_sides(f, bf, bb, opts) } else { double_pull_sides(f, bf, bb, opts) };
                r.compare_result(format!("{functor}: {map}, {b}"), sides);
            }
            Check::Suite { name } => return self.suite(name, text, d),
        }
        d.absorb(&r);
    }

    fn suite(&self, name: &str, text: &str, d: &mut DirectiveReport) {
        let cfg = SuiteConfig { seed: directive_seed(self.seed, text), ..SuiteConfig::default() };
        // The law suite runs on the squares the other randomized suites form.
        let names: Vec<&str> = if name == "laws" { vec!["corr", "bicycle", "zigzag", "laws"] } else { vec![name] };
        match run_suites(&cfg, &names) {
            Ok(results) => {
                for res in results.iter().filter(|r| r.name == name) {
                    for rep in &res.reports {
                        d.absorb(rep);
                    }
                    d.notes.extend(res.notes.iter().cloned());
                }
            }
            Err(e) => d.precondition_failure(e.to_string()),
        }
    }

    fn eval(&self, functor: &str, target: &str, d: &mut DirectiveReport) {
        let opts = self.opts;
        let op = match self.obj(target) {
            Object::Corr(c) => corr_operator_with(Self::functor(functor), &CorrSum::single(c), opts),
            Object::Zigzag(z) => zigzag_operator_with(Self::functor(functor), &ZigzagSum::single(z), opts),
            Object::Bicycle(b) => bicycle_operator_with(Self::bicycle_functor(functor), &BicycleSum::single(b), opts),
            Object::Cf(v) => {
                let tau: Transformation = functor.parse().expect("checked at resolution");
                return self.value(tau.apply(v), d);
            }
            _ => unreachable!("argument kinds checked at resolution"),
        };
        match op {
            Ok(op) => d.value = Some(ValueReport::Operator { functor: functor.to_string(), matrix: (&op).into() }),
            Err(e) => d.precondition_failure(e.to_string()),
        }
    }

    fn eval_on(&self, functor: &str, target: &str, arg: &str, d: &mut DirectiveReport) {
        let (opts, v) = (self.opts, self.env.value(arg));
        let out = match self.obj(target) {
            Object::Corr(c) => c.apply(Self::functor(functor), v, opts),
            Object::Zigzag(z) => z.apply(Self::functor(functor), v, opts),
            Object::Bicycle(b) => b.apply(Self::bicycle_functor(functor), v, opts),
            _ => unreachable!("argument kinds checked at resolution"),
        };
        self.value(out, d);
    }

    fn value(&self, v: corrclass_core::Result<Value>, d: &mut DirectiveReport) {
        match v {
            Ok(v) => d.value = Some(ValueReport::Class { class: v.to_string() }),
            Err(e) => d.precondition_failure(e.to_string()),
        }
    }
}

fn family(kind: &StmtKind) -> String {
    match kind {
        StmtKind::Check(Check::Suite { name }) => format!("{name}-suite"),
        StmtKind::Check(c) => c.to_string().split_whitespace().nth(1).unwrap_or("check").to_string(),
        StmtKind::Eval { .. } => "eval".into(),
        StmtKind::Show(_) => "show".into(),
        StmtKind::Set { .. } => "set".into(),
        _ => "declaration".into(),
    }
}

/// Run every directive of `program`, then the built-in suites named in
/// `extra_suites`, under the master seed.
pub fn run(program: &Program, seed: u64, extra_suites: &[String]) -> Report {
    let mut runner = Runner { env: &program.env, seed, opts: EvalOptions::default() };
    let extra: Vec<Stmt> = extra_suites
        .iter()
        .map(|name| Stmt { pos: Default::default(), kind: StmtKind::Check(Check::Suite { name: name.clone() }) })
        .collect();
    let mut out = Vec::new();
    for stmt in program.directives.iter().chain(&extra) {
        let text = stmt.to_string();
        if let StmtKind::Set { key, on } = &stmt.kind {
            match key.as_str() {
                "twist" => runner.opts.twist = *on,
                _ => runner.opts.rules.koszul = *on,
            }
            continue;
        }
        let mut d = DirectiveReport::new(out.len(), stmt.pos.line, text.clone(), family(&stmt.kind));
        match &stmt.kind {
            StmtKind::Check(c) => runner.check(c, &text, &mut d),
            StmtKind::Eval { functor, target, arg: None } => runner.eval(functor, target, &mut d),
            StmtKind::Eval { functor, target, arg: Some(v) } => runner.eval_on(functor, target, v, &mut d),
            StmtKind::Show(expr) => match eval_bicycle_expr(&program.env, expr) {
                Ok(b) => d.value = Some(ValueReport::Bicycle { bicycle: b.to_string() }),
                Err(e) => d.precondition_failure(e.to_string()),
            },
            _ => unreachable!("only directives reach the runner"),
        }
        out.push(d);
    }
    Report::new(seed, out)
}

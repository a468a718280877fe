//! Name resolution and type checking. Declarations are built into core
//! objects here; directives are only checked for names and argument types.

use std::collections::BTreeMap;
use std::fmt;

use corrclass_core::bicycle::{Bicycle, BicycleFunctor};
use corrclass_core::corr::{Correspondence, LegClass};
use corrclass_core::functor::{indicator_value, FunctorId, Transformation, Value};
use corrclass_core::spaces::{Morphism, Space, Subvariety, VectorBundle};
use corrclass_core::suites::SUITE_NAMES;
use corrclass_core::zigzag::Zigzag;

use crate::ast::{BicycleExpr, Check, Pos, Scenario, Side, Stmt, StmtKind};
use crate::error::DslError;

#[derive(Clone, Debug)]
pub enum Object {
    Space(Space),
    Subvariety(Subvariety),
    /// A constructible function, as a value of `F`.
    Cf(Value),
    Map(Morphism),
    Bundle(VectorBundle),
    Corr(Correspondence),
    Bicycle(Bicycle),
    Zigzag(Zigzag),
}

impl Object {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Space(_) => "space",
            Object::Subvariety(_) => "subvariety",
            Object::Cf(_) => "constructible function",
            Object::Map(_) => "map",
            Object::Bundle(_) => "bundle",
            Object::Corr(_) => "correspondence",
            Object::Bicycle(_) => "bicycle",
            Object::Zigzag(_) => "zigzag",
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Space(x) => write!(f, "{x}"),
            Object::Subvariety(z) => write!(f, "{z}"),
            Object::Cf(v) => write!(f, "{v}"),
            Object::Map(m) => write!(f, "{m}"),
            Object::Bundle(e) => write!(f, "{e} on {}", e.base()),
            Object::Corr(c) => write!(f, "{c}"),
            Object::Bicycle(b) => write!(f, "{b}"),
            Object::Zigzag(z) => write!(f, "{z}"),
        }
    }
}

/// Declared objects by name.
#[derive(Clone, Debug, Default)]
pub struct Env {
    objects: BTreeMap<String, Object>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.objects.keys()
    }

    pub fn map(&self, name: &str) -> &Morphism {
        match self.objects.get(name) {
            Some(Object::Map(m)) => m,
            _ => panic!("`{name}` was checked to be a map"),
        }
    }

    pub fn value(&self, name: &str) -> &Value {
        match self.objects.get(name) {
            Some(Object::Cf(v)) => v,
            _ => panic!("`{name}` was checked to be a value"),
        }
    }

    pub fn bicycle(&self, name: &str) -> &Bicycle {
        match self.objects.get(name) {
            Some(Object::Bicycle(b)) => b,
            _ => panic!("`{name}` was checked to be a bicycle"),
        }
    }
}

/// A resolved scenario: every declaration built, every directive checked.
#[derive(Clone, Debug)]
pub struct Program {
    pub env: Env,
    /// Directive statements in source order.
    pub directives: Vec<Stmt>,
}

fn fail<T>(pos: Pos, msg: impl Into<String>) -> Result<T, DslError> {
    Err(DslError::Resolve { pos, msg: msg.into() })
}

struct Resolver {
    env: Env,
}

impl Resolver {
    fn lookup(&self, pos: Pos, name: &str) -> Result<&Object, DslError> {
        match self.env.objects.get(name) {
            Some(o) => Ok(o),
            None => fail(pos, format!("unknown identifier `{name}`")),
        }
    }

    fn space(&self, pos: Pos, name: &str) -> Result<Space, DslError> {
        if let Some(inner) = name.strip_prefix("P(").and_then(|r| r.strip_suffix(')')) {
            let dims = inner.split(',').filter(|d| !d.is_empty()).map(|d| d.parse().expect("printed by the parser"));
            return Ok(Space::new(dims.collect()));
        }
        match self.lookup(pos, name)? {
            Object::Space(x) => Ok(x.clone()),
            o => fail(pos, format!("`{name}` is a {}, expected a space", o.kind_name())),
        }
    }

    fn map(&self, pos: Pos, name: &str) -> Result<Morphism, DslError> {
        match self.lookup(pos, name)? {
            Object::Map(m) => Ok(m.clone()),
            o => fail(pos, format!("`{name}` is a {}, expected a map", o.kind_name())),
        }
    }

    fn bicycle(&self, pos: Pos, name: &str) -> Result<Bicycle, DslError> {
        match self.lookup(pos, name)? {
            Object::Bicycle(b) => Ok(b.clone()),
            o => fail(pos, format!("`{name}` is a {}, expected a bicycle", o.kind_name())),
        }
    }

    fn corr(&self, pos: Pos, name: &str) -> Result<Correspondence, DslError> {
        match self.lookup(pos, name)? {
            Object::Corr(c) => Ok(c.clone()),
            o => fail(pos, format!("`{name}` is a {}, expected a correspondence", o.kind_name())),
        }
    }

    /// Legs `left: M -> X`, `right: M -> Y` for a declared span.
    fn legs(&self, pos: Pos, span: [&str; 3], left: &str, right: &str) -> Result<(Morphism, Morphism), DslError> {
        let [x, m, y] = span;
        let (xs, ms, ys) = (self.space(pos, x)?, self.space(pos, m)?, self.space(pos, y)?);
        let (l, r) = (self.map(pos, left)?, self.map(pos, right)?);
        if l.source() != &ms || l.target() != &xs {
            return fail(pos, format!("left leg `{left}` is {l}, expected a map {m} -> {x}"));
        }
        if r.source() != &ms || r.target() != &ys {
            return fail(pos, format!("right leg `{right}` is {r}, expected a map {m} -> {y}"));
        }
        Ok((l, r))
    }

    fn functor(&self, pos: Pos, name: &str) -> Result<FunctorId, DslError> {
        name.parse().or_else(|_| fail(pos, format!("unknown functor `{name}`")))
    }

    fn bicycle_functor(&self, pos: Pos, name: &str) -> Result<BicycleFunctor, DslError> {
        name.parse().or_else(|_| fail(pos, format!("unknown bicycle functor `{name}`")))
    }

    fn transformation(&self, pos: Pos, name: &str) -> Result<Transformation, DslError> {
        name.parse().or_else(|_| fail(pos, format!("unknown transformation `{name}`")))
    }

    fn eval_expr(&self, pos: Pos, expr: &BicycleExpr) -> Result<Bicycle, DslError> {
        let built = match expr {
            BicycleExpr::Prod { mode, a, b } => self.bicycle(pos, a)?.product(*mode, &self.bicycle(pos, b)?),
            BicycleExpr::Push { side, map, b } => {
                let (f, b) = (self.map(pos, map)?, self.bicycle(pos, b)?);
                match side {
                    Side::Left => b.push_left(&f),
                    Side::Right => b.push_right(&f),
                }
            }
            BicycleExpr::Pull { side, map, b } => {
                let (f, b) = (self.map(pos, map)?, self.bicycle(pos, b)?);
                match side {
                    Side::Left => b.pull_left(&f),
                    Side::Right => b.pull_right(&f),
                }
            }
            BicycleExpr::DoublePush { map, b } => self.bicycle(pos, b)?.double_push(&self.map(pos, map)?),
            BicycleExpr::DoublePull { map, b } => self.bicycle(pos, b)?.double_pull(&self.map(pos, map)?),
        };
        built.or_else(|e| fail(pos, format!("`{expr}`: {e}")))
    }

    /// Names and argument kinds of a bicycle expression, without evaluating.
    fn check_expr(&self, pos: Pos, expr: &BicycleExpr) -> Result<(), DslError> {
        match expr {
            BicycleExpr::Prod { a, b, .. } => {
                self.bicycle(pos, a)?;
                self.bicycle(pos, b)?;
            }
            BicycleExpr::Push { map, b, .. }
            | BicycleExpr::Pull { map, b, .. }
            | BicycleExpr::DoublePush { map, b }
            | BicycleExpr::DoublePull { map, b } => {
                self.map(pos, map)?;
                self.bicycle(pos, b)?;
            }
        }
        Ok(())
    }

    fn declare(&mut self, stmt: &Stmt) -> Result<(), DslError> {
        let pos = stmt.pos;
        let object = match &stmt.kind {
            StmtKind::Space { dims, .. } => Object::Space(Space::new(dims.clone())),
            StmtKind::Subvariety { space, dims, .. } => {
                let x = self.space(pos, space)?;
                Object::Subvariety(Subvariety::new(&x, dims.clone()).or_else(|e| fail(pos, e.to_string()))?)
            }
            StmtKind::Cf { terms, .. } => {
                let mut acc: Option<Value> = None;
                for (c, z) in terms {
                    let z = match self.lookup(pos, z)? {
                        Object::Subvariety(z) => z.clone(),
                        o => return fail(pos, format!("`{z}` is a {}, expected a subvariety", o.kind_name())),
                    };
                    let term = indicator_value(z.ambient(), z.dims()).or_else(|e| fail(pos, e.to_string()))?.scaled(*c);
                    acc = Some(match acc {
                        None => term,
                        Some(a) => {
                            a.add(&term).or_else(|_| fail(pos, "all subvarieties must lie in the same space"))?
                        }
                    });
                }
                Object::Cf(acc.expect("parser requires a term"))
            }
            StmtKind::Map { source, target, assignment, .. } => {
                let (s, t) = (self.space(pos, source)?, self.space(pos, target)?);
                Object::Map(Morphism::new(s, t, assignment.clone()).or_else(|e| fail(pos, e.to_string()))?)
            }
            StmtKind::Bundle { base, summands, .. } => {
                let x = self.space(pos, base)?;
                Object::Bundle(VectorBundle::new(&x, summands.clone()).or_else(|e| fail(pos, e.to_string()))?)
            }
            StmtKind::Corr { source, apex, target, left, right, lci, .. } => {
                let (l, r) = self.legs(pos, [source, apex, target], left, right)?;
                let built = if *lci {
                    Correspondence::with_tags(l, r, (LegClass::Proper, LegClass::Lci))
                } else {
                    Correspondence::new(l, r)
                };
                Object::Corr(built.or_else(|e| fail(pos, e.to_string()))?)
            }
            StmtKind::Bicycle { source, apex, target, bundle, left, right, .. } => {
                let (l, r) = self.legs(pos, [source, apex, target], left, right)?;
                let e = match self.lookup(pos, bundle)? {
                    Object::Bundle(e) => e.clone(),
                    o => return fail(pos, format!("`{bundle}` is a {}, expected a bundle", o.kind_name())),
                };
                Object::Bicycle(Bicycle::new(l, r, e).or_else(|e| fail(pos, e.to_string()))?)
            }
            StmtKind::Derived { expr, .. } => Object::Bicycle(self.eval_expr(pos, expr)?),
            StmtKind::Zigzag { links, kind, .. } => {
                let corrs = links.iter().map(|l| self.corr(pos, l)).collect::<Result<Vec<_>, _>>()?;
                let start = corrs[0].source().clone();
                Object::Zigzag(Zigzag::new(&start, &corrs, *kind).or_else(|e| fail(pos, e.to_string()))?)
            }
            _ => unreachable!("not a declaration"),
        };
        let name = stmt.kind.declares().expect("declaration");
        if self.env.objects.contains_key(name) {
            return fail(pos, format!("`{name}` is already declared"));
        }
        self.env.objects.insert(name.to_string(), object);
        Ok(())
    }

    fn check_directive(&self, stmt: &Stmt) -> Result<(), DslError> {
        let pos = stmt.pos;
        match &stmt.kind {
            StmtKind::Set { key, .. } => {
                if key != "twist" && key != "koszul" {
                    return fail(pos, format!("unknown option `{key}`; options are `twist` and `koszul`"));
                }
            }
            StmtKind::Show(expr) => self.check_expr(pos, expr)?,
            StmtKind::Eval { arg: Some(v), .. } if !matches!(self.lookup(pos, v)?, Object::Cf(_)) => {
                return fail(pos, format!("`{v}` is not a constructible function"));
            }
            StmtKind::Eval { functor, target, arg } => match (self.lookup(pos, target)?, arg) {
                (Object::Corr(_) | Object::Zigzag(_), _) => {
                    self.functor(pos, functor)?;
                }
                (Object::Bicycle(_), _) => {
                    self.bicycle_functor(pos, functor)?;
                }
                (Object::Cf(_), None) => {
                    if self.transformation(pos, functor)?.source() != FunctorId::F {
                        return fail(pos, format!("{functor} does not act on constructible functions"));
                    }
                }
                (o, _) => return fail(pos, format!("cannot evaluate `{functor}` on a {}", o.kind_name())),
            },
            StmtKind::Check(check) => match check {
                Check::Functoriality { functor, a, b } => match (self.lookup(pos, a)?, self.lookup(pos, b)?) {
                    (Object::Corr(_), Object::Corr(_)) | (Object::Zigzag(_), Object::Zigzag(_)) => {
                        self.functor(pos, functor)?;
                    }
                    (Object::Bicycle(_), Object::Bicycle(_)) => {
                        self.bicycle_functor(pos, functor)?;
                    }
                    (x, y) => {
                        return fail(
                            pos,
                            format!(
                                "functoriality needs two correspondences, bicycles or zigzags, got a {} and a {}",
                                x.kind_name(),
                                y.kind_name()
                            ),
                        )
                    }
                },
                Check::Naturality { transformation, a } => {
                    let tau = self.transformation(pos, transformation)?;
                    match self.lookup(pos, a)? {
                        Object::Corr(_) | Object::Zigzag(_) => {}
                        Object::Bicycle(_) if tau == Transformation::TdBfm => {}
                        Object::Bicycle(_) => return fail(pos, "bicycle naturality is defined for td_bfm only"),
                        o => return fail(pos, format!("cannot check naturality on a {}", o.kind_name())),
                    }
                }
                Check::IsoInvariance { functor, a } | Check::Restrictions { functor, a } => {
                    self.functor(pos, functor)?;
                    self.corr(pos, a)?;
                }
                Check::Square { g, h } => {
                    self.map(pos, g)?;
                    self.map(pos, h)?;
                }
                Check::Decomposition { b } => {
                    self.bicycle(pos, b)?;
                }
                Check::DoubleSquare { functor, map, b, .. } => {
                    self.bicycle_functor(pos, functor)?;
                    self.map(pos, map)?;
                    self.bicycle(pos, b)?;
                }
                Check::Suite { name } => {
                    if !SUITE_NAMES.contains(&name.as_str()) {
                        return fail(pos, format!("unknown suite `{name}`; suites are {}", SUITE_NAMES.join(", ")));
                    }
                }
            },
            _ => unreachable!("not a directive"),
        }
        Ok(())
    }
}

pub fn resolve(scenario: &Scenario) -> Result<Program, DslError> {
    let mut r = Resolver { env: Env::default() };
    let mut directives = Vec::new();
    for stmt in &scenario.stmts {
        if stmt.kind.declares().is_some() {
            r.declare(stmt)?;
        } else {
            r.check_directive(stmt)?;
            directives.push(stmt.clone());
        }
    }
    Ok(Program { env: r.env, directives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_scenario;

    fn resolve_text(text: &str) -> Result<Program, DslError> {
        resolve(&parse_scenario(text).unwrap())
    }

    #[test]
    fn unknown_name_is_reported() {
        let e = resolve_text(
            "space X = P(1);\nspace M = P(1);\nmap f : M -> X = [s1];\ncorr a : X <- M -> Y { left f, right f };",
        )
        .unwrap_err();
        assert!(matches!(e, DslError::Resolve { pos: Pos { line: 4, col: 1 }, .. }));
        assert!(e.to_string().contains("`Y`"), "{e}");
    }

    #[test]
    fn legs_are_type_checked() {
        let base = "space X = P(1);\nspace M = P(1,1);\nmap f : M -> X = [s1];\nmap e : X -> M = [s1, pt];\n";
        assert!(resolve_text(&format!("{base}corr a : X <- M -> X {{ left f, right f }};")).is_ok());
        let e = resolve_text(&format!("{base}corr a : X <- M -> X {{ left f, right e }};")).unwrap_err();
        assert!(e.to_string().contains("right leg"), "{e}");
        let not_smooth = "space X = P(2);\nspace L = P(1);\nmap i : L -> X = [s1];\n";
        assert!(resolve_text(&format!("{not_smooth}corr a : X <- L -> X {{ left i, right i }};")).is_err());
        assert!(resolve_text(&format!("{not_smooth}corr a : X <- L -> X {{ left i, right i }} kind pro-lci;")).is_ok());
    }

    #[test]
    fn directives_are_type_checked() {
        let base = "space X = P(1);\nmap id : X -> X = [s1];\ncorr a : X <- X -> X { left id, right id };\n";
        assert!(resolve_text(&format!("{base}check functoriality HTodd a a;")).is_ok());
        assert!(resolve_text(&format!("{base}check functoriality Hch a a;")).is_err());
        assert!(resolve_text(&format!("{base}check naturality nope a;")).is_err());
        assert!(resolve_text(&format!("{base}check square id a;")).is_err());
        assert!(resolve_text(&format!("{base}check nope-suite;")).is_err());
        assert!(resolve_text(&format!("{base}set speed off;")).is_err());
        assert!(resolve_text(&format!("{base}space X = P(2);")).is_err());
    }
}

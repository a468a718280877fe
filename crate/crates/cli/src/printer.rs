//! Canonical text form of scenarios: one statement per line, fixed spacing,
//! comments dropped.

use std::fmt;

use crate::ast::{BicycleExpr, Check, Scenario, Stmt, StmtKind};

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for BicycleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicycleExpr::Prod { mode, a, b } => write!(f, "prod {mode} {a} {b}"),
            BicycleExpr::Push { side, map, b } => write!(f, "push {} {map} {b}", side.name()),
            BicycleExpr::Pull { side, map, b } => write!(f, "pull {} {map} {b}", side.name()),
            BicycleExpr::DoublePush { map, b } => write!(f, "double-push {map} {b}"),
            BicycleExpr::DoublePull { map, b } => write!(f, "double-pull {map} {b}"),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Functoriality { functor, a, b } => write!(f, "check functoriality {functor} {a} {b}"),
            Check::Naturality { transformation, a } => write!(f, "check naturality {transformation} {a}"),
            Check::IsoInvariance { functor, a } => write!(f, "check iso-invariance {functor} {a}"),
            Check::Restrictions { functor, a } => write!(f, "check restrictions {functor} {a}"),
            Check::Square { g, h } => write!(f, "check square {g} {h}"),
            Check::Decomposition { b } => write!(f, "check decomposition {b}"),
            Check::DoubleSquare { push, functor, map, b } => {
                let what = if *push { "double-push" } else { "double-pull" };
                write!(f, "check {what} {functor} {map} {b}")
            }
            Check::Suite { name } => write!(f, "check {name}-suite"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Space { name, dims } => write!(f, "space {name} = P({});", join(dims, ",")),
            StmtKind::Subvariety { name, space, dims } => {
                write!(f, "subvariety {name} in {space} = L({});", join(dims, ","))
            }
            StmtKind::Cf { name, terms } => {
                write!(f, "cf {name} = ")?;
                for (i, (c, z)) in terms.iter().enumerate() {
                    let sign = match (i == 0, *c < 0) {
                        (true, false) => "",
                        (true, true) => "-",
                        (false, false) => " + ",
                        (false, true) => " - ",
                    };
                    let mag = c.unsigned_abs();
                    let coeff = if mag == 1 { String::new() } else { format!("{mag}*") };
                    write!(f, "{sign}{coeff}ind({z})")?;
                }
                write!(f, ";")
            }
            StmtKind::Map { name, source, target, assignment } => {
                let parts: Vec<String> =
                    assignment.iter().map(|a| a.map_or_else(|| "pt".to_string(), |i| format!("s{}", i + 1))).collect();
                write!(f, "map {name} : {source} -> {target} = [{}];", parts.join(", "))
            }
            StmtKind::Bundle { name, base, summands } => {
                let rhs = if summands.is_empty() {
                    "0".to_string()
                } else {
                    summands.iter().map(|d| format!("O({})", join(d, ","))).collect::<Vec<_>>().join(" + ")
                };
                write!(f, "bundle {name} on {base} = {rhs};")
            }
            StmtKind::Corr { name, source, apex, target, left, right, lci } => {
                write!(f, "corr {name} : {source} <- {apex} -> {target} {{ left {left}, right {right} }}")?;
                if *lci {
                    write!(f, " kind pro-lci")?;
                }
                write!(f, ";")
            }
            StmtKind::Bicycle { name, source, apex, target, bundle, left, right } => write!(
                f,
                "bicycle {name} : {source} <- {apex} -> {target} with {bundle} {{ left {left}, right {right} }};"
            ),
            StmtKind::Derived { name, expr } => write!(f, "bicycle {name} = {expr};"),
            StmtKind::Zigzag { name, links, kind } => write!(f, "zigzag {name} = {} kind {kind};", links.join(" ~ ")),
            StmtKind::Set { key, on } => write!(f, "set {key} {};", if *on { "on" } else { "off" }),
            StmtKind::Check(c) => write!(f, "{c};"),
            StmtKind::Eval { functor, target, arg: None } => write!(f, "eval {functor} {target};"),
            StmtKind::Eval { functor, target, arg: Some(v) } => write!(f, "eval {functor} {target} on {v};"),
            StmtKind::Show(e) => write!(f, "{e};"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.kind, f)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

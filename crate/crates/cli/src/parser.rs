//! Lexer and recursive-descent parser for `.ccs` scenarios.

use corrclass_core::bicycle::ProductMode;
use corrclass_core::zigzag::ZigzagKind;

use crate::ast::{BicycleExpr, Check, Pos, Scenario, Side, Stmt, StmtKind};
use crate::error::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const SYMBOLS: [&str; 16] = ["<-", "->", ";", ":", "=", "(", ")", ",", "[", "]", "{", "}", "~", "+", "*", "-"];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            advance(&mut i, &mut line, &mut col, 1);
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| DslError::Lex { pos, msg: format!("integer `{s}` out of range") })?;
            out.push((Tok::Int(n), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let d = chars[i];
                let dash_word = d == '-' && chars.get(i + 1).is_some_and(|e| e.is_ascii_alphabetic());
                if d.is_ascii_alphanumeric() || d == '_' || dash_word {
                    advance(&mut i, &mut line, &mut col, 1);
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            let sc: Vec<char> = s.chars().collect();
            chars[i..].starts_with(&sc)
        });
        match sym {
            Some(s) => {
                advance(&mut i, &mut line, &mut col, s.len());
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(DslError::Lex { pos, msg: format!("unexpected character `{c}`") }),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, DslError> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn sym(&mut self, s: &'static str) -> Result<(), DslError> {
        if *self.peek() == Tok::Sym(s) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        if *self.peek() == Tok::Sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("an integer"),
        }
    }

    /// `( item, ... )`, possibly empty.
    fn paren_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        self.sym("(")?;
        let mut out = Vec::new();
        if self.eat_sym(")") {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_sym(")") {
                return Ok(out);
            }
            self.sym(",")?;
        }
    }

    /// A functor or transformation name, with optional genus arguments as
    /// in `Hcl1cl2(todd,chern)`.
    fn functor(&mut self) -> Result<String, DslError> {
        let head = self.ident("a functor name")?;
        if *self.peek() != Tok::Sym("(") {
            return Ok(head);
        }
        let args = self.paren_list(|p| p.ident("a genus name"))?;
        Ok(format!("{head}({})", args.join(",")))
    }

    fn side(&mut self) -> Result<Side, DslError> {
        match self.ident("`left` or `right`")?.as_str() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => self.error(format!("expected `left` or `right`, found `{other}`")),
        }
    }

    fn dims(&mut self) -> Result<Vec<u32>, DslError> {
        self.paren_list(|p| {
            let pos = p.pos();
            let n = p.int()?;
            u32::try_from(n).map_err(|_| DslError::Syntax { pos, msg: format!("dimension {n} is negative") })
        })
    }

    /// A space name, or a literal `P(n1,...)` kept in its printed form.
    fn space_ref(&mut self) -> Result<String, DslError> {
        if *self.peek() == Tok::Ident("P".into()) && *self.peek2() == Tok::Sym("(") {
            self.bump();
            let dims = self.dims()?;
            let d: Vec<String> = dims.iter().map(u32::to_string).collect();
            return Ok(format!("P({})", d.join(",")));
        }
        self.ident("a space")
    }

    /// `s<k>` or `t<k>` with `k >= 1`, returned 0-based.
    fn factor(&mut self, prefix: char) -> Result<usize, DslError> {
        let pos = self.pos();
        let e = self.ident(&format!("a factor `{prefix}<k>`"))?;
        match e.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 1 => Ok(k - 1),
            _ => Err(DslError::Syntax { pos, msg: format!("expected `{prefix}<k>` with k >= 1, found `{e}`") }),
        }
    }

    /// `{ t1 <- s2, t2 <- const }`: every target factor exactly once.
    fn assignment_table(&mut self) -> Result<Vec<Option<usize>>, DslError> {
        self.sym("{")?;
        let mut table: Vec<Option<Option<usize>>> = Vec::new();
        if !self.eat_sym("}") {
            loop {
                let pos = self.pos();
                let t = self.factor('t')?;
                self.sym("<-")?;
                let src = if *self.peek() == Tok::Ident("const".into()) {
                    self.bump();
                    None
                } else {
                    Some(self.factor('s')?)
                };
                if table.len() <= t {
                    table.resize(t + 1, None);
                }
                if table[t].replace(src).is_some() {
                    return Err(DslError::Syntax { pos, msg: format!("target factor t{} assigned twice", t + 1) });
                }
                if self.eat_sym("}") {
                    break;
                }
                self.sym(",")?;
            }
        }
        match table.iter().position(Option::is_none) {
            Some(t) => self.error(format!("target factor t{} is not assigned", t + 1)),
            None => Ok(table.into_iter().flatten().collect()),
        }
    }

    /// `[2*]ind(Z) [+|- ...]`
    fn cf_terms(&mut self) -> Result<Vec<(i64, String)>, DslError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat_sym("-") { -1 } else { 1 };
        loop {
            let mut c = sign;
            if let Tok::Int(n) = *self.peek() {
                self.bump();
                self.sym("*")?;
                c *= n;
            }
            self.keyword("ind")?;
            self.sym("(")?;
            terms.push((c, self.ident("a subvariety name")?));
            self.sym(")")?;
            sign = if self.eat_sym("+") {
                1
            } else if self.eat_sym("-") {
                -1
            } else {
                return Ok(terms);
            };
        }
    }

    fn zigzag_kind(&mut self) -> Result<ZigzagKind, DslError> {
        let pos = self.pos();
        let name = self.ident("a zigzag kind")?;
        name.parse().map_err(|_| DslError::Syntax { pos, msg: format!("unknown zigzag kind `{name}`") })
    }

    /// `{ left f, right g }`
    fn legs(&mut self) -> Result<(String, String), DslError> {
        self.sym("{")?;
        self.keyword("left")?;
        let left = self.ident("a map name")?;
        self.sym(",")?;
        self.keyword("right")?;
        let right = self.ident("a map name")?;
        self.sym("}")?;
        Ok((left, right))
    }

    /// `X <- M -> Y`
    fn span(&mut self) -> Result<(String, String, String), DslError> {
        let source = self.space_ref()?;
        self.sym("<-")?;
        let apex = self.space_ref()?;
        self.sym("->")?;
        let target = self.space_ref()?;
        Ok((source, apex, target))
    }

    fn bicycle_expr(&mut self, head: &str) -> Result<BicycleExpr, DslError> {
        Ok(match head {
            "prod" => {
                let pos = self.pos();
                let mode: ProductMode = self
                    .ident("`tensor` or `whitney`")?
                    .parse()
                    .map_err(|_| DslError::Syntax { pos, msg: "expected `tensor` or `whitney`".into() })?;
                BicycleExpr::Prod { mode, a: self.ident("a bicycle name")?, b: self.ident("a bicycle name")? }
            }
            "push" => {
                let side = self.side()?;
                BicycleExpr::Push { side, map: self.ident("a map name")?, b: self.ident("a bicycle name")? }
            }
            "pull" => {
                let side = self.side()?;
                BicycleExpr::Pull { side, map: self.ident("a map name")?, b: self.ident("a bicycle name")? }
            }
            "double-push" => {
                BicycleExpr::DoublePush { map: self.ident("a map name")?, b: self.ident("a bicycle name")? }
            }
            "double-pull" => {
                BicycleExpr::DoublePull { map: self.ident("a map name")?, b: self.ident("a bicycle name")? }
            }
            other => return self.error(format!("unknown bicycle operation `{other}`")),
        })
    }

    fn check(&mut self) -> Result<Check, DslError> {
        let pos = self.pos();
        let what = self.ident("a check name")?;
        Ok(match what.as_str() {
            "functoriality" => {
                Check::Functoriality { functor: self.functor()?, a: self.ident("a name")?, b: self.ident("a name")? }
            }
            "naturality" => Check::Naturality { transformation: self.functor()?, a: self.ident("a name")? },
            "iso-invariance" => Check::IsoInvariance { functor: self.functor()?, a: self.ident("a name")? },
            "restrictions" => Check::Restrictions { functor: self.functor()?, a: self.ident("a name")? },
            "square" => Check::Square { g: self.ident("a map name")?, h: self.ident("a map name")? },
            "decomposition" => Check::Decomposition { b: self.ident("a bicycle name")? },
            "double-push" | "double-pull" => Check::DoubleSquare {
                push: what == "double-push",
                functor: self.functor()?,
                map: self.ident("a map name")?,
                b: self.ident("a bicycle name")?,
            },
            s if s.ends_with("-suite") => Check::Suite { name: s.trim_end_matches("-suite").to_string() },
            other => return Err(DslError::Syntax { pos, msg: format!("unknown check `{other}`") }),
        })
    }

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let pos = self.pos();
        let head = self.ident("a statement")?;
        let kind = match head.as_str() {
            "space" => {
                let name = self.ident("a space name")?;
                self.sym("=")?;
                self.keyword("P")?;
                StmtKind::Space { name, dims: self.dims()? }
            }
            "map" => {
                let name = self.ident("a map name")?;
                self.sym(":")?;
                let source = self.space_ref()?;
                self.sym("->")?;
                let target = self.space_ref()?;
                self.sym("=")?;
                self.sym("[")?;
                let mut assignment = Vec::new();
                if !self.eat_sym("]") {
                    loop {
                        if *self.peek() == Tok::Ident("pt".into()) {
                            self.bump();
                            assignment.push(None);
                        } else {
                            assignment.push(Some(self.factor('s')?));
                        }
                        if self.eat_sym("]") {
                            break;
                        }
                        self.sym(",")?;
                    }
                }
                StmtKind::Map { name, source, target, assignment }
            }
            "morphism" => {
                let name = self.ident("a map name")?;
                self.sym(":")?;
                let source = self.space_ref()?;
                self.sym("->")?;
                let target = self.space_ref()?;
                StmtKind::Map { name, source, target, assignment: self.assignment_table()? }
            }
            "subvariety" => {
                let name = self.ident("a subvariety name")?;
                self.keyword("in")?;
                let space = self.space_ref()?;
                self.sym("=")?;
                self.keyword("L")?;
                StmtKind::Subvariety { name, space, dims: self.dims()? }
            }
            "cf" => {
                let name = self.ident("a name")?;
                self.sym("=")?;
                StmtKind::Cf { name, terms: self.cf_terms()? }
            }
            "bundle" => {
                let name = self.ident("a bundle name")?;
                self.keyword("on")?;
                let base = self.space_ref()?;
                self.sym("=")?;
                let mut summands = Vec::new();
                if *self.peek() == Tok::Int(0) {
                    self.bump();
                } else {
                    loop {
                        self.keyword("O")?;
                        summands.push(self.paren_list(|p| p.int())?);
                        if !self.eat_sym("+") {
                            break;
                        }
                    }
                }
                StmtKind::Bundle { name, base, summands }
            }
            "corr" => {
                let name = self.ident("a correspondence name")?;
                self.sym(":")?;
                let (source, apex, target) = self.span()?;
                let (left, right) = self.legs()?;
                let mut lci = false;
                if *self.peek() == Tok::Ident("kind".into()) {
                    self.bump();
                    lci = match self.zigzag_kind()? {
                        ZigzagKind::ProSmooth => false,
                        ZigzagKind::ProLci => true,
                        ZigzagKind::SmoothObjects => return self.error("correspondences are pro-smooth or pro-lci"),
                    };
                }
                StmtKind::Corr { name, source, apex, target, left, right, lci }
            }
            "bicycle" => {
                let name = self.ident("a bicycle name")?;
                if self.eat_sym("=") {
                    let op = self.ident("a bicycle operation")?;
                    StmtKind::Derived { name, expr: self.bicycle_expr(&op)? }
                } else {
                    self.sym(":")?;
                    let (source, apex, target) = self.span()?;
                    self.keyword("with")?;
                    let bundle = self.ident("a bundle name")?;
                    let (left, right) = self.legs()?;
                    StmtKind::Bicycle { name, source, apex, target, bundle, left, right }
                }
            }
            "zigzag" => {
                let name = self.ident("a zigzag name")?;
                self.sym("=")?;
                let mut links = vec![self.ident("a correspondence name")?];
                while self.eat_sym("~") {
                    links.push(self.ident("a correspondence name")?);
                }
                let kind = if *self.peek() == Tok::Ident("kind".into()) {
                    self.bump();
                    self.zigzag_kind()?
                } else {
                    ZigzagKind::ProSmooth
                };
                StmtKind::Zigzag { name, links, kind }
            }
            "set" => {
                let key = self.ident("an option name")?;
                let on = match self.ident("`on` or `off`")?.as_str() {
                    "on" => true,
                    "off" => false,
                    other => return self.error(format!("expected `on` or `off`, found `{other}`")),
                };
                StmtKind::Set { key, on }
            }
            "check" => StmtKind::Check(self.check()?),
            "eval" => {
                let functor = self.functor()?;
                let target = self.ident("a name")?;
                let arg = if *self.peek() == Tok::Ident("on".into()) {
                    self.bump();
                    Some(self.ident("a value name")?)
                } else {
                    None
                };
                StmtKind::Eval { functor, target, arg }
            }
            "prod" | "push" | "pull" | "double-push" | "double-pull" => StmtKind::Show(self.bicycle_expr(&head)?),
            other => return Err(DslError::Syntax { pos, msg: format!("unknown statement `{other}`") }),
        };
        self.sym(";")?;
        Ok(Stmt { pos, kind })
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, DslError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut stmts = Vec::new();
    while *p.peek() != Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Scenario { stmts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_space() {
        let s = parse_scenario("space X = P(1,2);").unwrap();
        assert_eq!(s.stmts.len(), 1);
        assert_eq!(s.stmts[0].kind, StmtKind::Space { name: "X".into(), dims: vec![1, 2] });
        assert_eq!(s.stmts[0].pos, Pos { line: 1, col: 1 });
    }

    #[test]
    fn documented_forms() {
        let text = "space X = P(1);\nspace M = P(1,1);\nmap f : M -> X = [s1];\nmap g : M -> X = [s2];\n\
                    corr a : X <- M -> X { left f, right g };\ncheck functoriality HTodd a a;\n\
                    bundle E on M = O(1,0) + O(0,-2);\nbicycle b : X <- M -> X with E { left f, right g };\n\
                    prod tensor b b;\npush left f b;\nzigzag z = a ~ a ~ a kind pro-lci;\ncheck bicycle-suite;\n\
                    check naturality td_bfm a;\neval Hcl1cl2(todd,chern) b;\n";
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.stmts.len(), 14);
        assert_eq!(s.stmts[11].kind, StmtKind::Check(Check::Suite { name: "bicycle".into() }));
        assert_eq!(
            s.stmts[13].kind,
            StmtKind::Eval { functor: "Hcl1cl2(todd,chern)".into(), target: "b".into(), arg: None }
        );
        let again = parse_scenario(&s.to_string()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scenario("space X = P(1);\n  space Y = Q(1);").unwrap_err();
        assert!(matches!(e, DslError::Syntax { pos: Pos { line: 2, col: 13 }, .. }), "{e}");
        let e = parse_scenario("space X = P(1) $").unwrap_err();
        assert!(matches!(e, DslError::Lex { pos: Pos { line: 1, col: 16 }, .. }), "{e}");
        let e = parse_scenario("map f : X -> Y = [s0];").unwrap_err();
        assert!(e.to_string().contains("s0"), "{e}");
        let e = parse_scenario("morphism f : X -> Y { t2 <- s1 };").unwrap_err();
        assert!(e.to_string().contains("t1 is not assigned"), "{e}");
    }

    #[test]
    fn literals_tables_and_values() {
        let text = "morphism f: P(1,2) -> P(2) { t1 <- s2 };\nmorphism c: P(1) -> P(1,1) { t2 <- const, t1 <- s1 };\n\
                    bundle E on P(1,2) = O(1,0) + O(0,2);\nsubvariety Z in P(2) = L(1);\n\
                    cf phi = 2*ind(Z) - ind(W) + -3*ind(V);\ncf psi = -ind(Z);\neval F a on phi;\n";
        let s = parse_scenario(text).unwrap();
        assert_eq!(
            s.stmts[0].kind,
            StmtKind::Map {
                name: "f".into(),
                source: "P(1,2)".into(),
                target: "P(2)".into(),
                assignment: vec![Some(1)]
            }
        );
        assert!(matches!(&s.stmts[1].kind, StmtKind::Map { assignment, .. } if *assignment == vec![Some(0), None]));
        assert_eq!(
            s.stmts[4].kind,
            StmtKind::Cf { name: "phi".into(), terms: vec![(2, "Z".into()), (-1, "W".into()), (-3, "V".into())] }
        );
        let printed = s.to_string();
        assert!(printed.contains("map f : P(1,2) -> P(2) = [s2];"), "{printed}");
        assert!(printed.contains("cf phi = 2*ind(Z) - ind(W) - 3*ind(V);"), "{printed}");
        assert!(printed.contains("cf psi = -ind(Z);"), "{printed}");
        assert_eq!(parse_scenario(&printed).unwrap(), s);
    }

    #[test]
    fn comments_and_points() {
        let s = parse_scenario("# nothing\nspace pt = P(); # the point\nmap c : pt -> pt = [];").unwrap();
        assert_eq!(s.to_string(), "space pt = P();\nmap c : pt -> pt = [];\n");
    }
}

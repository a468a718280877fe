//! Scenario syntax tree. Positions are carried for diagnostics and ignored
//! by equality, so a parsed scenario equals its re-parsed printout.

use std::fmt;

use corrclass_core::bicycle::ProductMode;
use corrclass_core::zigzag::ZigzagKind;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub pos: Pos,
    pub kind: StmtKind,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Stmt {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Operations producing a new bicycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BicycleExpr {
    Prod { mode: ProductMode, a: String, b: String },
    Push { side: Side, map: String, b: String },
    Pull { side: Side, map: String, b: String },
    DoublePush { map: String, b: String },
    DoublePull { map: String, b: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Covariance of a functor on two correspondences, bicycles or zigzags.
    Functoriality {
        functor: String,
        a: String,
        b: String,
    },
    Naturality {
        transformation: String,
        a: String,
    },
    IsoInvariance {
        functor: String,
        a: String,
    },
    Restrictions {
        functor: String,
        a: String,
    },
    /// Base change and projection formula on the square of `g` and `h`.
    Square {
        g: String,
        h: String,
    },
    Decomposition {
        b: String,
    },
    /// `f_{**}` (push) or `f^{**}` (pull) square for a bicycle functor.
    DoubleSquare {
        push: bool,
        functor: String,
        map: String,
        b: String,
    },
    /// A built-in randomized suite, `check <name>-suite;`.
    Suite {
        name: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Space {
        name: String,
        dims: Vec<u32>,
    },
    /// Space references elsewhere are names or literals kept as `P(1,2)`.
    Subvariety {
        name: String,
        space: String,
        dims: Vec<u32>,
    },
    /// Assignment entries are 0-based source factors; `None` is the base point.
    Map {
        name: String,
        source: String,
        target: String,
        assignment: Vec<Option<usize>>,
    },
    Bundle {
        name: String,
        base: String,
        summands: Vec<Vec<i64>>,
    },
    Corr {
        name: String,
        source: String,
        apex: String,
        target: String,
        left: String,
        right: String,
        lci: bool,
    },
    Bicycle {
        name: String,
        source: String,
        apex: String,
        target: String,
        bundle: String,
        left: String,
        right: String,
    },
    Derived {
        name: String,
        expr: BicycleExpr,
    },
    /// Integer combination of indicator functions of subvarieties.
    Cf {
        name: String,
        terms: Vec<(i64, String)>,
    },
    Zigzag {
        name: String,
        links: Vec<String>,
        kind: ZigzagKind,
    },
    Set {
        key: String,
        on: bool,
    },
    Check(Check),
    /// `eval F a;` tabulates `F(a)`; `eval F a on phi;` applies it to a
    /// value; `eval mac_chern phi;` applies a transformation.
    Eval {
        functor: String,
        target: String,
        arg: Option<String>,
    },
    Show(BicycleExpr),
}

impl StmtKind {
    /// Name bound by a declaration.
    pub fn declares(&self) -> Option<&str> {
        match self {
            StmtKind::Space { name, .. }
            | StmtKind::Map { name, .. }
            | StmtKind::Bundle { name, .. }
            | StmtKind::Corr { name, .. }
            | StmtKind::Bicycle { name, .. }
            | StmtKind::Derived { name, .. }
            | StmtKind::Subvariety { name, .. }
            | StmtKind::Cf { name, .. }
            | StmtKind::Zigzag { name, .. } => Some(name),
            _ => None,
        }
    }
}

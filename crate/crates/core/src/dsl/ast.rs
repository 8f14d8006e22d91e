use std::fmt;

use crate::degree::Degree;

/// Source position, 1-based.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A name with its position; equality ignores the position.
#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            pos: Pos::default(),
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Point,
    Subset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// A point: a bound point variable, or otherwise a carrier label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointTerm {
    Name(Ident),
    /// A quoted label, never read as a variable.
    Label(Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Literal(Vec<PointTerm>),
    Var(Ident),
    Complement(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Inter(Box<SetExpr>, Box<SetExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Gamma,
    GammaP,
    Lc,
    Lpc,
    T2p,
    T3p,
    T4p,
    Ptop,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::Gamma,
        Builtin::GammaP,
        Builtin::Lc,
        Builtin::Lpc,
        Builtin::T2p,
        Builtin::T3p,
        Builtin::T4p,
        Builtin::Ptop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Gamma => "gamma",
            Builtin::GammaP => "gamma_p",
            Builtin::Lc => "lc",
            Builtin::Lpc => "lpc",
            Builtin::T2p => "t2p",
            Builtin::T3p => "t3p",
            Builtin::T4p => "t4p",
            Builtin::Ptop => "ptop",
        }
    }

    pub fn from_name(s: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == s)
    }
}

/// Atoms taking one set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetPred {
    Open,
    Preopen,
    Closed,
    Pclosed,
}

/// Atoms taking two sets, valued in {0,1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRel {
    Subset,
    Disjoint,
    Eq,
}

/// Atoms taking a point and a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointPred {
    In,
    Nbhd,
    Pnbhd,
    /// Written `cl(S, x)`.
    Cl,
    /// Written `pcl(S, x)`.
    Pcl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Tensor,
    Implies,
    Iff,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "/\\",
            BinOp::Or => "\\/",
            BinOp::Tensor => "(*)",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(Degree),
    SetPred(SetPred, SetExpr),
    SetRel(SetRel, SetExpr, SetExpr),
    PointPred(PointPred, PointTerm, SetExpr),
    Builtin(Builtin),
    Not(Box<Formula>),
    Bin(BinOp, Box<Formula>, Box<Formula>),
    Quant {
        q: Quantifier,
        var: Ident,
        sort: Sort,
        body: Box<Formula>,
    },
}

fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn write_label(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    write!(f, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl fmt::Display for PointTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointTerm::Name(i) if is_plain_ident(&i.name) => f.write_str(&i.name),
            PointTerm::Name(i) | PointTerm::Label(i) => write_label(f, &i.name),
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Literal(items) => {
                f.write_str("{")?;
                for (k, p) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("}")
            }
            SetExpr::Var(i) => f.write_str(&i.name),
            SetExpr::Complement(e) => match **e {
                SetExpr::Union(..) | SetExpr::Inter(..) => write!(f, "({e})^c"),
                _ => write!(f, "{e}^c"),
            },
            SetExpr::Union(a, b) => write!(f, "({a} + {b})"),
            SetExpr::Inter(a, b) => write!(f, "({a} & {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(d) => write!(f, "{d}"),
            Formula::SetPred(p, s) => {
                let name = match p {
                    SetPred::Open => "open",
                    SetPred::Preopen => "preopen",
                    SetPred::Closed => "closed",
                    SetPred::Pclosed => "pclosed",
                };
                write!(f, "{name}({s})")
            }
            Formula::SetRel(r, a, b) => {
                let name = match r {
                    SetRel::Subset => "subset",
                    SetRel::Disjoint => "disjoint",
                    SetRel::Eq => "eq",
                };
                write!(f, "{name}({a}, {b})")
            }
            Formula::PointPred(p, x, s) => match p {
                PointPred::In => write!(f, "in({x}, {s})"),
                PointPred::Nbhd => write!(f, "nbhd({x}, {s})"),
                PointPred::Pnbhd => write!(f, "pnbhd({x}, {s})"),
                PointPred::Cl => write!(f, "cl({s}, {x})"),
                PointPred::Pcl => write!(f, "pcl({s}, {x})"),
            },
            Formula::Builtin(b) => write!(f, "{}()", b.name()),
            Formula::Not(g) => match **g {
                Formula::Bin(..) | Formula::Quant { .. } | Formula::Not(_) => write!(f, "~({g})"),
                _ => write!(f, "~{g}"),
            },
            Formula::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Formula::Quant { q, var, sort, body } => {
                let q = match q {
                    Quantifier::Forall => "forall",
                    Quantifier::Exists => "exists",
                };
                let sort = match sort {
                    Sort::Point => "point",
                    Sort::Subset => "subset",
                };
                write!(f, "({q} {}:{sort}. {body})", var.name)
            }
        }
    }
}

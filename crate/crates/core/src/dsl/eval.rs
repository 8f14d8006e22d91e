use std::collections::HashMap;
use std::sync::OnceLock;

use crate::carrier::SubsetId;
use crate::compact::{gamma, gamma_p, lc_degree, lpc_degree, GenericOptions, Path};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::preopen::PreopenStructure;
use crate::separation::{t2p, t3p, t4p};

use super::ast::*;

/// Subset-quantifier nesting at which large carriers are refused.
pub const GUARD_DEPTH: usize = 3;
/// Largest carrier allowed once the nesting reaches [`GUARD_DEPTH`].
pub const GUARD_POINTS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Point(usize),
    Set(SubsetId),
}

/// Variable bindings, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: Vec<(String, Value)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, v: Value) {
        self.vars.push((name.into(), v));
    }

    pub fn get(&self, name: &str) -> Option<Value> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// Sorts of the bound names, for scope checking at parse time.
    pub fn sorts(&self) -> HashMap<String, Sort> {
        self.vars
            .iter()
            .map(|(n, v)| {
                let s = match v {
                    Value::Point(_) => Sort::Point,
                    Value::Set(_) => Sort::Subset,
                };
                (n.clone(), s)
            })
            .collect()
    }

    fn pop(&mut self) {
        self.vars.pop();
    }
}

/// Evaluates formulas against one space. Built-in degrees are computed once.
pub struct Evaluator<'a> {
    pre: &'a PreopenStructure,
    builtins: [OnceLock<Degree>; 8],
}

impl<'a> Evaluator<'a> {
    pub fn new(pre: &'a PreopenStructure) -> Self {
        Evaluator {
            pre,
            builtins: Default::default(),
        }
    }

    pub fn eval(&self, f: &Formula, env: &Env) -> Result<Degree> {
        let n = self.pre.carrier().len();
        let depth = subset_depth(f);
        if depth >= GUARD_DEPTH && n > GUARD_POINTS {
            return Err(Error::CostGuard(format!(
                "{depth} nested subset quantifiers over {n} points (limit {GUARD_POINTS})"
            )));
        }
        let mut env = env.clone();
        self.go(f, &mut env)
    }

    fn builtin(&self, b: Builtin) -> Result<Degree> {
        let slot = &self.builtins[Builtin::ALL.iter().position(|x| *x == b).unwrap()];
        if let Some(d) = slot.get() {
            return Ok(*d);
        }
        let pre = self.pre;
        let opts = GenericOptions::default();
        let d = match b {
            Builtin::Gamma => gamma(pre, Path::Analytic, &opts)?,
            Builtin::GammaP => gamma_p(pre, Path::Analytic, &opts)?,
            Builtin::Lc => lc_degree(pre, Path::Analytic, &opts)?,
            Builtin::Lpc => lpc_degree(pre, Path::Analytic, &opts)?,
            Builtin::T2p => t2p(pre),
            Builtin::T3p => t3p(pre),
            Builtin::T4p => t4p(pre),
            Builtin::Ptop => pre.p_topological_degree(),
        };
        Ok(*slot.get_or_init(|| d))
    }

    fn point(&self, t: &PointTerm, env: &Env) -> Result<usize> {
        match t {
            PointTerm::Name(i) => match env.get(&i.name) {
                Some(Value::Point(x)) => Ok(x),
                Some(Value::Set(_)) => Err(Error::Type(format!(
                    "`{}` is a set, expected a point",
                    i.name
                ))),
                None => self.pre.carrier().point(&i.name),
            },
            PointTerm::Label(i) => self.pre.carrier().point(&i.name),
        }
    }

    fn set(&self, e: &SetExpr, env: &Env) -> Result<SubsetId> {
        let full = self.pre.carrier().full();
        Ok(match e {
            SetExpr::Literal(items) => {
                let mut s = SubsetId::EMPTY;
                for p in items {
                    s = s.with(self.point(p, env)?);
                }
                s
            }
            SetExpr::Var(i) => match env.get(&i.name) {
                Some(Value::Set(s)) => s,
                Some(Value::Point(_)) => {
                    return Err(Error::Type(format!(
                        "`{}` is a point, expected a set",
                        i.name
                    )))
                }
                None => {
                    return Err(Error::Unbound {
                        line: i.pos.line,
                        col: i.pos.col,
                        name: i.name.clone(),
                    })
                }
            },
            SetExpr::Complement(a) => full.minus(self.set(a, env)?),
            SetExpr::Union(a, b) => self.set(a, env)?.union(self.set(b, env)?),
            SetExpr::Inter(a, b) => self.set(a, env)?.intersect(self.set(b, env)?),
        })
    }

    fn go(&self, f: &Formula, env: &mut Env) -> Result<Degree> {
        let pre = self.pre;
        Ok(match f {
            Formula::Const(d) => *d,
            Formula::Builtin(b) => self.builtin(*b)?,
            Formula::SetPred(p, s) => {
                let s = self.set(s, env)?;
                match p {
                    SetPred::Open => pre.tau().get(s),
                    SetPred::Preopen => pre.tau_p(s),
                    SetPred::Closed => pre.tau().get(pre.carrier().full().minus(s)),
                    SetPred::Pclosed => pre.f_p(s),
                }
            }
            Formula::SetRel(r, a, b) => {
                let (a, b) = (self.set(a, env)?, self.set(b, env)?);
                Degree::from_bool(match r {
                    SetRel::Subset => a.is_subset(b),
                    SetRel::Disjoint => a.is_disjoint(b),
                    SetRel::Eq => a == b,
                })
            }
            Formula::PointPred(p, x, s) => {
                let x = self.point(x, env)?;
                let s = self.set(s, env)?;
                match p {
                    PointPred::In => Degree::from_bool(s.contains(x)),
                    PointPred::Nbhd => pre.nbhd(x, s),
                    PointPred::Pnbhd => pre.nbhd_p(x, s),
                    PointPred::Cl => pre.closure(s).at(x),
                    PointPred::Pcl => pre.cl_p(s).at(x),
                }
            }
            Formula::Not(g) => self.go(g, env)?.neg(),
            Formula::Bin(op, a, b) => {
                let a = self.go(a, env)?;
                let b = self.go(b, env)?;
                match op {
                    BinOp::And => a.meet(b),
                    BinOp::Or => a.join(b),
                    BinOp::Tensor => a.tnorm(b),
                    BinOp::Implies => a.implies(b),
                    BinOp::Iff => a.iff(b),
                }
            }
            Formula::Quant { q, var, sort, body } => {
                let values: Vec<Value> = match sort {
                    Sort::Point => (0..pre.carrier().len()).map(Value::Point).collect(),
                    Sort::Subset => pre.carrier().subsets().map(Value::Set).collect(),
                };
                let forall = *q == Quantifier::Forall;
                let mut acc = if forall { Degree::ONE } else { Degree::ZERO };
                for v in values {
                    env.bind(var.name.clone(), v);
                    let d = self.go(body, env);
                    env.pop();
                    let d = d?;
                    acc = if forall { acc.meet(d) } else { acc.join(d) };
                    if (forall && acc.is_zero()) || (!forall && acc.is_one()) {
                        break;
                    }
                }
                acc
            }
        })
    }
}

/// Deepest nesting of subset quantifiers.
pub fn subset_depth(f: &Formula) -> usize {
    match f {
        Formula::Not(g) => subset_depth(g),
        Formula::Bin(_, a, b) => subset_depth(a).max(subset_depth(b)),
        Formula::Quant { sort, body, .. } => {
            subset_depth(body) + usize::from(*sort == Sort::Subset)
        }
        _ => 0,
    }
}

/// One-shot evaluation of a formula on a space.
pub fn eval(f: &Formula, pre: &PreopenStructure, env: &Env) -> Result<Degree> {
    Evaluator::new(pre).eval(f, env)
}

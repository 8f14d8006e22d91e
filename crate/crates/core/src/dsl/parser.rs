//! Recursive-descent parser.
//!
//! ```text
//! quant  := ("forall" | "exists") ident ":" ("point" | "subset") "." quant | iff
//! iff    := impl ("<->" impl)?
//! impl   := or ("->" impl)?
//! or     := and ("\/" and)*
//! and    := tensor ("/\" tensor)*
//! tensor := unary ("(*)" unary)*
//! unary  := "~" unary | atom | "(" quant ")"
//! set    := term ("+" term)*      term := post ("&" post)*
//! post   := base ("^c")*          base := "{" points "}" | ident | "(" set ")"
//! ```

use std::collections::HashMap;

use crate::degree::Degree;
use crate::error::{Error, Result};

use super::ast::*;
use super::lexer::{tokenize, Tok};

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

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().describe();
            self.fail(format!("expected {}, found {found}", t.describe()))
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let (_, pos) = self.bump();
                Ok(Ident { name, pos })
            }
            other => self.fail(format!("expected identifier, found {}", other.describe())),
        }
    }

    fn quant(&mut self) -> Result<Formula> {
        let q = match self.peek() {
            Tok::Ident(s) if s == "forall" => Some(Quantifier::Forall),
            Tok::Ident(s) if s == "exists" => Some(Quantifier::Exists),
            _ => None,
        };
        let Some(q) = q else { return self.iff() };
        self.bump();
        let var = self.ident()?;
        self.expect(Tok::Colon)?;
        let sort = match self.peek() {
            Tok::Ident(s) if s == "point" => Sort::Point,
            Tok::Ident(s) if s == "subset" => Sort::Subset,
            other => {
                let found = other.describe();
                return self.fail(format!("expected `point` or `subset`, found {found}"));
            }
        };
        self.bump();
        self.expect(Tok::Dot)?;
        let body = self.quant()?;
        Ok(Formula::Quant {
            q,
            var,
            sort,
            body: Box::new(body),
        })
    }

    fn iff(&mut self) -> Result<Formula> {
        let a = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let b = self.imp()?;
            return Ok(Formula::Bin(BinOp::Iff, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn imp(&mut self) -> Result<Formula> {
        let a = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let b = self.imp()?;
            return Ok(Formula::Bin(BinOp::Implies, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn left_assoc(
        &mut self,
        tok: Tok,
        op: BinOp,
        next: fn(&mut Self) -> Result<Formula>,
    ) -> Result<Formula> {
        let mut a = next(self)?;
        while *self.peek() == tok {
            self.bump();
            let b = next(self)?;
            a = Formula::Bin(op, Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::Or, BinOp::Or, Self::and)
    }

    fn and(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::And, BinOp::And, Self::tensor)
    }

    fn tensor(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::Tensor, BinOp::Tensor, Self::unary)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.quant()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Number(s) => {
                let p = self.pos();
                self.bump();
                let d: Degree = s.parse().map_err(|e: Error| Error::Syntax {
                    line: p.line,
                    col: p.col,
                    msg: e.to_string(),
                })?;
                Ok(Formula::Const(d))
            }
            Tok::Ident(name) if *self.peek2() == Tok::LParen => {
                self.bump();
                self.bump();
                let f = self.atom(&name)?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            other => self.fail(format!("expected a formula, found {}", other.describe())),
        }
    }

    fn atom(&mut self, name: &str) -> Result<Formula> {
        if let Some(b) = Builtin::from_name(name) {
            return Ok(Formula::Builtin(b));
        }
        let set_pred = match name {
            "open" => Some(SetPred::Open),
            "preopen" => Some(SetPred::Preopen),
            "closed" => Some(SetPred::Closed),
            "pclosed" => Some(SetPred::Pclosed),
            _ => None,
        };
        if let Some(p) = set_pred {
            return Ok(Formula::SetPred(p, self.set()?));
        }
        let rel = match name {
            "subset" => Some(SetRel::Subset),
            "disjoint" => Some(SetRel::Disjoint),
            "eq" => Some(SetRel::Eq),
            _ => None,
        };
        if let Some(r) = rel {
            let a = self.set()?;
            self.expect(Tok::Comma)?;
            let b = self.set()?;
            return Ok(Formula::SetRel(r, a, b));
        }
        let point_first = match name {
            "in" => Some(PointPred::In),
            "nbhd" => Some(PointPred::Nbhd),
            "pnbhd" => Some(PointPred::Pnbhd),
            _ => None,
        };
        if let Some(p) = point_first {
            let x = self.point()?;
            self.expect(Tok::Comma)?;
            let s = self.set()?;
            return Ok(Formula::PointPred(p, x, s));
        }
        let set_first = match name {
            "cl" => Some(PointPred::Cl),
            "pcl" => Some(PointPred::Pcl),
            _ => None,
        };
        if let Some(p) = set_first {
            let s = self.set()?;
            self.expect(Tok::Comma)?;
            let x = self.point()?;
            return Ok(Formula::PointPred(p, x, s));
        }
        let mut p = self.pos();
        p.col = p.col.saturating_sub(name.len() + 1);
        Err(Error::Syntax {
            line: p.line,
            col: p.col.max(1),
            msg: format!("unknown atom `{name}`"),
        })
    }

    fn point(&mut self) -> Result<PointTerm> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let (_, pos) = self.bump();
                Ok(PointTerm::Name(Ident { name, pos }))
            }
            Tok::Quoted(name) | Tok::Number(name) => {
                let (_, pos) = self.bump();
                Ok(PointTerm::Label(Ident { name, pos }))
            }
            other => self.fail(format!("expected a point, found {}", other.describe())),
        }
    }

    fn set(&mut self) -> Result<SetExpr> {
        let mut a = self.set_term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let b = self.set_term()?;
            a = SetExpr::Union(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn set_term(&mut self) -> Result<SetExpr> {
        let mut a = self.set_post()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let b = self.set_post()?;
            a = SetExpr::Inter(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn set_post(&mut self) -> Result<SetExpr> {
        let mut a = self.set_base()?;
        while *self.peek() == Tok::Compl {
            self.bump();
            a = SetExpr::Complement(Box::new(a));
        }
        Ok(a)
    }

    fn set_base(&mut self) -> Result<SetExpr> {
        match self.peek().clone() {
            Tok::LBrace => {
                self.bump();
                let mut items = Vec::new();
                if *self.peek() != Tok::RBrace {
                    items.push(self.point()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        items.push(self.point()?);
                    }
                }
                self.expect(Tok::RBrace)?;
                Ok(SetExpr::Literal(items))
            }
            Tok::LParen => {
                self.bump();
                let s = self.set()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Tok::Ident(_) => Ok(SetExpr::Var(self.ident()?)),
            other => self.fail(format!("expected a set, found {}", other.describe())),
        }
    }
}

/// Parses a closed formula.
pub fn parse(src: &str) -> Result<Formula> {
    parse_with(src, &HashMap::new())
}

/// Parses with some names already bound (for example by command-line bindings).
pub fn parse_with(src: &str, bound: &HashMap<String, Sort>) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let f = p.quant()?;
    if *p.peek() != Tok::Eof {
        let found = p.peek().describe();
        return p.fail(format!("unexpected {found} after formula"));
    }
    let mut scope: Vec<(String, Sort)> = bound.iter().map(|(k, v)| (k.clone(), *v)).collect();
    check_scope(&f, &mut scope)?;
    Ok(f)
}

fn lookup(scope: &[(String, Sort)], name: &str) -> Option<Sort> {
    scope.iter().rev().find(|(n, _)| n == name).map(|(_, s)| *s)
}

fn check_set(e: &SetExpr, scope: &[(String, Sort)]) -> Result<()> {
    match e {
        SetExpr::Literal(_) => Ok(()),
        SetExpr::Var(i) => match lookup(scope, &i.name) {
            Some(Sort::Subset) => Ok(()),
            Some(Sort::Point) => Err(Error::Syntax {
                line: i.pos.line,
                col: i.pos.col,
                msg: format!(
                    "`{}` is a point, expected a set (write {{{}}})",
                    i.name, i.name
                ),
            }),
            None => Err(Error::Unbound {
                line: i.pos.line,
                col: i.pos.col,
                name: i.name.clone(),
            }),
        },
        SetExpr::Complement(a) => check_set(a, scope),
        SetExpr::Union(a, b) | SetExpr::Inter(a, b) => {
            check_set(a, scope)?;
            check_set(b, scope)
        }
    }
}

fn check_scope(f: &Formula, scope: &mut Vec<(String, Sort)>) -> Result<()> {
    match f {
        Formula::Const(_) | Formula::Builtin(_) => Ok(()),
        Formula::SetPred(_, s) | Formula::PointPred(_, _, s) => check_set(s, scope),
        Formula::SetRel(_, a, b) => {
            check_set(a, scope)?;
            check_set(b, scope)
        }
        Formula::Not(g) => check_scope(g, scope),
        Formula::Bin(_, a, b) => {
            check_scope(a, scope)?;
            check_scope(b, scope)
        }
        Formula::Quant {
            var, sort, body, ..
        } => {
            scope.push((var.name.clone(), *sort));
            let r = check_scope(body, scope);
            scope.pop();
            r
        }
    }
}

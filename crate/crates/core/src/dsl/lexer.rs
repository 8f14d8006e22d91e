use crate::error::{Error, Result};

use super::ast::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Quoted(String),
    /// A numeric literal such as `1`, `0.25` or `3/4`.
    Number(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    Not,
    And,
    Or,
    Tensor,
    Implies,
    Iff,
    Plus,
    Amp,
    Compl,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Quoted(s) => format!("label \"{s}\""),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Not => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Tensor => "(*)",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::Plus => "+",
            Tok::Amp => "&",
            Tok::Compl => "^c",
            _ => "?",
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, msg: String| Error::Syntax { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let starts = |s: &str| {
            s.chars()
                .enumerate()
                .all(|(k, ch)| chars.get(i + k) == Some(&ch))
        };
        let (tok, len) = if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        } else if starts("(*)") {
            (Tok::Tensor, 3)
        } else if starts("<->") {
            (Tok::Iff, 3)
        } else if starts("->") {
            (Tok::Implies, 2)
        } else if starts("/\\") {
            (Tok::And, 2)
        } else if starts("\\/") {
            (Tok::Or, 2)
        } else if starts("^c") {
            (Tok::Compl, 2)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j + 1 < chars.len() && matches!(chars[j], '.' | '/') && chars[j + 1].is_ascii_digit()
            {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            (Tok::Number(chars[i..j].iter().collect()), j - i)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else if c == '"' {
            let mut j = i + 1;
            let mut s = String::new();
            loop {
                match chars.get(j) {
                    None => return Err(err(line, col, "unterminated label".into())),
                    Some('"') => break,
                    Some('\\') if j + 1 < chars.len() => {
                        s.push(chars[j + 1]);
                        j += 2;
                    }
                    Some('\n') => return Err(err(line, col, "newline inside label".into())),
                    Some(ch) => {
                        s.push(*ch);
                        j += 1;
                    }
                }
            }
            (Tok::Quoted(s), j + 1 - i)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '.' => Tok::Dot,
                '~' => Tok::Not,
                '+' => Tok::Plus,
                '&' => Tok::Amp,
                _ => return Err(err(line, col, format!("unexpected character `{c}`"))),
            };
            (t, 1)
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        let t: Vec<Tok> = tokenize("forall x:point. 3/4 /\\ open({a}^c) (*) 0.5")
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        assert_eq!(t[0], Tok::Ident("forall".into()));
        assert!(t.contains(&Tok::Number("3/4".into())));
        assert!(t.contains(&Tok::Number("0.5".into())));
        assert!(t.contains(&Tok::Tensor));
        assert!(t.contains(&Tok::Compl));
    }

    #[test]
    fn positions() {
        let t = tokenize("a\n  $").unwrap_err();
        assert!(matches!(
            t,
            Error::Syntax {
                line: 2,
                col: 3,
                ..
            }
        ));
    }
}

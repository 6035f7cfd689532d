//! Recursive-descent parser for rational expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' '-'? integer)?
//! base   := integer | symbol | '(' expr ')'
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::ParseError;
use crate::algebra::{Context, Rational, RationalFunction, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line,
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                line,
                col,
            });
            i += 1;
        } else {
            return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Fn(&str) -> Option<Var>> {
    toks: Vec<Token>,
    pos: usize,
    resolve: &'a F,
    line: usize,
    end_col: usize,
}

impl<F: Fn(&str) -> Option<Var>> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Op(o), .. }) if *o == c)
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => (self.line, self.end_col),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(ParseError::new(l, c, msg))
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let (l, c) = self.here();
                let d = self.factor()?;
                acc = acc
                    .checked_div(&d)
                    .map_err(|_| ParseError::new(l, c, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, ParseError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let (l, c) = self.here();
        let negative = if self.peek_op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => n.clone(),
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        let e: i32 = i32::try_from(e)
            .ok()
            .filter(|e| *e <= 64)
            .ok_or_else(|| ParseError::new(l, c, "exponent too large"))?;
        let e = if negative { -e } else { e };
        base.pow(e)
            .map_err(|_| ParseError::new(l, c, "zero raised to a negative power"))
    }

    fn base(&mut self) -> Result<RationalFunction, ParseError> {
        let Some(t) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match (self.resolve)(&name) {
                    Some(v) => Ok(RationalFunction::var(v)),
                    None => Err(ParseError::new(t.line, t.col, format!("undeclared symbol `{name}`"))),
                }
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(ParseError::new(t.line, t.col, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` with a custom symbol resolver. `line`/`col` locate the first
/// character for error reporting (both 1-based).
pub fn parse_with<F: Fn(&str) -> Option<Var>>(
    text: &str,
    resolve: &F,
    line: usize,
    col: usize,
) -> Result<RationalFunction, ParseError> {
    let toks = lex(text, line, col)?;
    let mut p = Parser {
        toks,
        pos: 0,
        resolve,
        line,
        end_col: col + text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression whose symbols are already declared in `ctx`.
pub fn parse_expression(text: &str, ctx: &Context) -> Result<RationalFunction, ParseError> {
    parse_with(text, &|n: &str| ctx.lookup(n), 1, 1)
}

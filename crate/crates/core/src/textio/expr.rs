//! Expression syntax: lexer, recursive-descent parser and printer.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { "*" unary } ;
//! unary    = "-" unary | power ;
//! power    = atom [ "^" exponent ] ;
//! exponent = [ "-" ] integer ;
//! atom     = integer | variable | macro | "(" expr ")" ;
//! macro    = ( "S" | "AL" ) "(" integer ")" ;
//! variable = "x" digit { digit } | "x" | "y" ;
//! ```

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// Highest variable index.
pub const MAX_VARIABLE: u32 = 8;

/// Bound on the depth of a parse tree. Operator chains count one level per
/// operator since they nest to the left.
pub const MAX_DEPTH: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// `x1` … `x8`.
    Indexed(u32),
    /// Quotient letters, `x` doubles as the polynomial variable.
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Macro {
    /// `S(n)`, the standard polynomial.
    Standard,
    /// `AL(n)`, `S_{2n}·(x₁⋯x_{2n})⁻¹`.
    AmitsurLevitzki,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Macro(Macro, u32),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        };
        column += i - start;
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn deeper(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.tokens[self.pos].clone();
            return Err(self.error_at(&t, format!("expression nests deeper than {MAX_DEPTH} levels")));
        }
        Ok(())
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected {}, found {}", Self::describe(&want), Self::describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let base = self.depth;
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    self.deeper()?;
                    left = Expr::Add(Box::new(left), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    self.deeper()?;
                    left = Expr::Sub(Box::new(left), Box::new(self.term()?));
                }
                _ => {
                    self.depth = base;
                    return Ok(left);
                }
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let base = self.depth;
        let mut left = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            self.deeper()?;
            left = Expr::Mul(Box::new(left), Box::new(self.unary()?));
        }
        self.depth = base;
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            self.deeper()?;
            let e = self.unary();
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(e?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Int(v) = &t.tok else {
            return Err(self.error_at(&t, format!("expected an integer exponent, found {}", Self::describe(&t.tok))));
        };
        let v = if negative { -v.clone() } else { v.clone() };
        let k = i32::try_from(&v).map_err(|_| self.error_at(&t, format!("exponent {v} overflows a 32-bit integer")))?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => Ok(Expr::Int(v.clone())),
            Tok::LParen => {
                self.deeper()?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                self.depth -= 1;
                Ok(e)
            }
            Tok::Ident(name) => self.identifier(&t, name),
            other => Err(self.error_at(&t, format!("expected a term, found {}", Self::describe(other)))),
        }
    }

    fn identifier(&mut self, t: &Token, name: &str) -> Result<Expr, ParseError> {
        match name {
            "x" => return Ok(Expr::Var(Var::X)),
            "y" => return Ok(Expr::Var(Var::Y)),
            "S" | "AL" => {
                let kind = if name == "S" { Macro::Standard } else { Macro::AmitsurLevitzki };
                self.expect(Tok::LParen)?;
                let nt = self.next();
                let Tok::Int(n) = &nt.tok else {
                    return Err(self.error_at(&nt, format!("{name}( expects an integer")));
                };
                let n = u32::try_from(n).map_err(|_| self.error_at(&nt, format!("{name}({n}) is out of range")))?;
                self.expect(Tok::RParen)?;
                return Ok(Expr::Macro(kind, n));
            }
            _ => {}
        }
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                return match digits.parse::<u32>() {
                    Ok(i) if (1..=MAX_VARIABLE).contains(&i) => Ok(Expr::Var(Var::Indexed(i))),
                    _ => Err(self.error_at(t, format!("unknown variable {name} (use x1..x{MAX_VARIABLE})"))),
                };
            }
        }
        Err(self.error_at(t, format!("unknown variable {name}")))
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, depth: 0 };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, format!("unexpected {}", Parser::describe(&t.tok))));
    }
    Ok(e)
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) | Expr::Macro(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(Var::Indexed(i)) => write!(f, "x{i}"),
            Expr::Var(Var::X) => f.write_str("x"),
            Expr::Var(Var::Y) => f.write_str("y"),
            Expr::Macro(Macro::Standard, n) => write!(f, "S({n})"),
            Expr::Macro(Macro::AmitsurLevitzki, n) => write!(f, "AL({n})"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)
            }
            Expr::Pow(b, k) => {
                b.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

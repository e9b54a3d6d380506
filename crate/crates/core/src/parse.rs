//! Text syntax for polynomials: integer coefficients, variables
//! `[a-z][a-z0-9]*`, the operators `+ - * ^` and parentheses.
//!
//! Parsing is split in two: [`parse_expr`] builds a small syntax tree with
//! source positions, and [`MultiPoly::parse`](crate::poly::MultiPoly::parse)
//! evaluates it in a given ring.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            line: self.line,
            column: self.column,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String, Position),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "'{n}'"),
            Token::Ident(s) => write!(f, "'{s}'"),
            Token::Plus => f.write_str("'+'"),
            Token::Minus => f.write_str("'-'"),
            Token::Star => f.write_str("'*'"),
            Token::Caret => f.write_str("'^'"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column };
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
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            out.push((Token::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit()) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            column += i - start;
            out.push((Token::Ident(name), pos));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => return Err(pos.error(format!("unexpected character '{other}'"))),
        };
        out.push((tok, pos));
        column += 1;
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    cursor: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> Position {
        self.tokens.get(self.cursor).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Token, Position)> {
        let t = self.tokens.get(self.cursor).cloned();
        self.cursor += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(Token::Plus) => {
                self.bump();
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if let Some(Token::Caret) = self.peek() {
                    self.bump();
                    let pos = self.position();
                    match self.bump() {
                        Some((Token::Int(n), _)) => {
                            let e: u32 = n.try_into().map_err(|_| pos.error("exponent out of range"))?;
                            Ok(Expr::Pow(Box::new(base), e))
                        }
                        Some((tok, _)) => Err(pos.error(format!("expected exponent, found {tok}"))),
                        None => Err(pos.error("expected exponent, found end of input")),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.position();
        match self.bump() {
            Some((Token::Int(n), _)) => Ok(Expr::Int(n)),
            Some((Token::Ident(name), p)) => Ok(Expr::Var(name, p)),
            Some((Token::LParen, _)) => {
                let inner = self.expr()?;
                let close = self.position();
                match self.bump() {
                    Some((Token::RParen, _)) => Ok(inner),
                    Some((tok, _)) => Err(close.error(format!("expected ')', found {tok}"))),
                    None => Err(close.error("expected ')', found end of input")),
                }
            }
            Some((tok, _)) => Err(pos.error(format!("expected a term, found {tok}"))),
            None => Err(pos.error("expected a term, found end of input")),
        }
    }
}

/// Parses a polynomial expression into a syntax tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let end = {
        let line = text.lines().count().max(1);
        let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Position { line, column }
    };
    let mut parser = Parser { tokens, cursor: 0, end };
    let expr = parser.expr()?;
    if let Some((tok, pos)) = parser.bump() {
        return Err(pos.error(format!("unexpected {tok}")));
    }
    Ok(expr)
}

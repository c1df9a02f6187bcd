//! Text front end for maps in affine charts.
//!
//! Grammar (whitespace insensitive):
//!   map      := "(" component ("," component)* ")"
//!   expr     := term (("+"|"-") term)*
//!   term     := factor ("*" factor | "/" factor)*
//!   factor   := "-" factor | base ("^" nat)?
//!   base     := var | rational | "(" expr ")"
//!   var      := "z" nat
//!   rational := nat ("/" nat)?
//! Unary minus binds below "^", so "-z0^2" is -(z0^2); negative literals are
//! unary minus applied to a rational. Variable indices must be contiguous
//! from z0 and the number of components must match the inferred dimension.

use num_traits::One;
use thiserror::Error;

use crate::maps::{AffineMapSpec, RatFunc};
use crate::poly::{Int, Poly, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Var(usize),
    Nat(Int),
    Eof,
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

fn err<T>(p: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line: p.line,
        col: p.col,
        msg: msg.into(),
    })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                it.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                it.next();
                col += 1;
            }
            '(' | ')' | ',' | '+' | '-' | '*' | '/' | '^' => {
                it.next();
                col += 1;
                out.push((
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        _ => Tok::Caret,
                    },
                    pos,
                ));
            }
            'z' => {
                it.next();
                col += 1;
                let mut digits = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return err(pos, "expected variable index after 'z'");
                }
                match digits.parse::<usize>() {
                    Ok(i) => out.push((Tok::Var(i), pos)),
                    Err(_) => return err(pos, "variable index out of range"),
                }
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Nat(digits.parse::<Int>().unwrap()), pos));
            }
            other => return err(pos, format!("unexpected character '{other}'")),
        }
    }
    out.push((
        Tok::Eof,
        Pos { line, col },
    ));
    Ok(out)
}

/// Expression tree of one component.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    Lit(Rat),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos2),
    Pow(Box<Expr>, u32),
}

/// Source position kept on divisions so zero-denominator reports point at
/// the offending slash.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pos2 {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct MapExpressionAst {
    pub dimension: usize,
    pub components: Vec<Expr>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if t != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let got = if *self.peek() == Tok::Eof {
                "end of input".to_string()
            } else {
                format!("{:?}", self.peek())
            };
            err(self.pos(), format!("expected {what}, found {got}"))
        }
    }

    fn map(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut comps = vec![self.expr()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    comps.push(self.expr()?);
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                t => {
                    let p = self.pos();
                    let got = if *t == Tok::Eof {
                        "end of input".to_string()
                    } else {
                        format!("{t:?}")
                    };
                    return err(p, format!("expected ',' or ')', found {got}"));
                }
            }
        }
        if *self.peek() != Tok::Eof {
            return err(self.pos(), "trailing input after map");
        }
        Ok(comps)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let p = self.pos();
                    self.bump();
                    e = Expr::Div(
                        Box::new(e),
                        Box::new(self.factor()?),
                        Pos2 {
                            line: p.line,
                            col: p.col,
                        },
                    );
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let b = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let p = self.pos();
            match self.bump() {
                Tok::Nat(n) => {
                    use num_traits::ToPrimitive;
                    match n.to_u32() {
                        Some(e) => Ok(Expr::Pow(Box::new(b), e)),
                        None => err(p, "exponent too large"),
                    }
                }
                Tok::Minus => err(p, "negative exponent"),
                _ => err(p, "expected exponent"),
            }
        } else {
            Ok(b)
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let p = self.pos();
        match self.bump() {
            Tok::Var(i) => Ok(Expr::Var(i)),
            Tok::Nat(n) => Ok(Expr::Lit(Rat::from_integer(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Eof => err(p, "unexpected end of input"),
            t => err(p, format!("unexpected token {t:?}")),
        }
    }
}

fn max_var(e: &Expr, acc: &mut Option<usize>, seen: &mut Vec<bool>) {
    match e {
        Expr::Var(i) => {
            if seen.len() <= *i {
                seen.resize(i + 1, false);
            }
            seen[*i] = true;
            *acc = Some(acc.map_or(*i, |a| a.max(*i)));
        }
        Expr::Lit(_) => {}
        Expr::Neg(a) | Expr::Pow(a, _) => max_var(a, acc, seen),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            max_var(a, acc, seen);
            max_var(b, acc, seen);
        }
    }
}

fn eval(e: &Expr, k: usize) -> Result<RatFunc, ParseError> {
    Ok(match e {
        Expr::Var(i) => RatFunc::from_poly(Poly::var(k, *i)),
        Expr::Lit(c) => RatFunc::from_poly(Poly::constant(k, c.clone())),
        Expr::Neg(a) => eval(a, k)?.mul_rat(&-Rat::one()),
        Expr::Add(a, b) => eval(a, k)?.add(&eval(b, k)?),
        Expr::Sub(a, b) => eval(a, k)?.add(&eval(b, k)?.mul_rat(&-Rat::one())),
        Expr::Mul(a, b) => eval(a, k)?.mul(&eval(b, k)?),
        Expr::Div(a, b, p) => {
            let d = eval(b, k)?;
            if d.num.is_zero() {
                return Err(ParseError {
                    line: p.line,
                    col: p.col,
                    msg: "division by zero".into(),
                });
            }
            let n = eval(a, k)?;
            RatFunc::new(&n.num * &d.den, &n.den * &d.num)
        }
        Expr::Pow(a, e) => {
            let b = eval(a, k)?;
            let mut acc = RatFunc::from_poly(Poly::one(k));
            for _ in 0..*e {
                acc = acc.mul(&b);
            }
            acc
        }
    })
}

pub fn parse_map(text: &str) -> Result<MapExpressionAst, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, i: 0 };
    let comps = p.map()?;
    let mut top = None;
    let mut seen = Vec::new();
    for c in &comps {
        max_var(c, &mut top, &mut seen);
    }
    let dim = match top {
        Some(t) => t + 1,
        None => {
            return Err(ParseError {
                line: 1,
                col: 1,
                msg: "map uses no variables".into(),
            })
        }
    };
    if let Some(missing) = (0..dim).find(|&i| !seen.get(i).copied().unwrap_or(false)) {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: format!("variable indices must be contiguous from z0: z{missing} is unused"),
        });
    }
    if comps.len() != dim {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: format!(
                "arity mismatch: {} components but highest variable is z{}",
                comps.len(),
                dim - 1
            ),
        });
    }
    Ok(MapExpressionAst {
        dimension: dim,
        components: comps,
    })
}

pub fn lower(ast: &MapExpressionAst) -> Result<AffineMapSpec, ParseError> {
    let comps = ast
        .components
        .iter()
        .map(|c| Ok(eval(c, ast.dimension)?.reduce()))
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(AffineMapSpec::rational(comps))
}

/// Parse straight to a map of C^k.
pub fn parse_affine_map(text: &str) -> Result<AffineMapSpec, ParseError> {
    lower(&parse_map(text)?)
}

/// Canonical text form; `parse_affine_map` inverts it.
pub fn render(m: &AffineMapSpec) -> String {
    m.to_string()
}

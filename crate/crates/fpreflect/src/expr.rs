//! A small expression language for potentials V(x).
//!
//! Grammar: numeric literals, the variable `x`, binary `+ - * / ^`, unary `-`,
//! and the functions exp, log, cosh, sinh, tanh, sqrt. `log` is the natural
//! logarithm. `^` requires a constant exponent (it is folded at parse time)
//! and binds tighter than unary minus, so `-x^2` parses as `-(x^2)`.
//!
//! Every node has a symbolic derivative, so profiles built from expressions
//! evaluate f, f', f'', ... without numerical differentiation.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Cosh,
    Sinh,
    Tanh,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "cosh" => Func::Cosh,
            "sinh" => Func::Sinh,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Power with a constant exponent.
    Pow(Box<Expr>, f64),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(c) => *c,
            Expr::X => x,
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, c) => pow_const(a.eval(x), *c),
            Expr::Neg(a) => -a.eval(x),
            Expr::Call(f, a) => {
                let v = a.eval(x);
                match f {
                    Func::Exp => v.exp(),
                    Func::Log => v.ln(),
                    Func::Cosh => v.cosh(),
                    Func::Sinh => v.sinh(),
                    Func::Tanh => v.tanh(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        }
    }

    /// Symbolic derivative d/dx, with light constant folding.
    pub fn diff(&self) -> Expr {
        match self {
            Expr::Num(_) => Expr::Num(0.0),
            Expr::X => Expr::Num(1.0),
            Expr::Add(a, b) => add(a.diff(), b.diff()),
            Expr::Sub(a, b) => sub(a.diff(), b.diff()),
            Expr::Mul(a, b) => add(
                mul(a.diff(), (**b).clone()),
                mul((**a).clone(), b.diff()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.diff(), (**b).clone()),
                    mul((**a).clone(), b.diff()),
                ),
                pow((**b).clone(), 2.0),
            ),
            Expr::Pow(a, c) => {
                if *c == 0.0 {
                    Expr::Num(0.0)
                } else {
                    mul(
                        mul(Expr::Num(*c), pow((**a).clone(), c - 1.0)),
                        a.diff(),
                    )
                }
            }
            Expr::Neg(a) => neg(a.diff()),
            Expr::Call(f, a) => {
                let inner = a.diff();
                let outer = match f {
                    Func::Exp => Expr::Call(Func::Exp, a.clone()),
                    Func::Log => return div(inner, (**a).clone()),
                    Func::Cosh => Expr::Call(Func::Sinh, a.clone()),
                    Func::Sinh => Expr::Call(Func::Cosh, a.clone()),
                    // tanh' = 1 - tanh^2
                    Func::Tanh => sub(
                        Expr::Num(1.0),
                        pow(Expr::Call(Func::Tanh, a.clone()), 2.0),
                    ),
                    // sqrt' = 1 / (2 sqrt)
                    Func::Sqrt => {
                        return div(
                            inner,
                            mul(Expr::Num(2.0), Expr::Call(Func::Sqrt, a.clone())),
                        )
                    }
                };
                mul(outer, inner)
            }
        }
    }

    /// True when the expression does not reference `x`.
    pub fn is_const(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::X => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_const() && b.is_const()
            }
            Expr::Pow(a, _) => a.is_const(),
            Expr::Neg(a) => a.is_const(),
            Expr::Call(_, a) => a.is_const(),
        }
    }
}

fn pow_const(base: f64, c: f64) -> f64 {
    if c == c.round() && c.abs() <= 64.0 {
        base.powi(c as i32)
    } else {
        base.powf(c)
    }
}

// Smart constructors: fold constants and trivial identities so repeated
// differentiation does not blow up the tree.

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x + y),
        (Expr::Num(z), b) if z == 0.0 => b,
        (a, Expr::Num(z)) if z == 0.0 => a,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x - y),
        (a, Expr::Num(z)) if z == 0.0 => a,
        (Expr::Num(z), b) if z == 0.0 => neg(b),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x * y),
        (Expr::Num(z), _) | (_, Expr::Num(z)) if z == 0.0 => Expr::Num(0.0),
        (Expr::Num(o), b) if o == 1.0 => b,
        (a, Expr::Num(o)) if o == 1.0 => a,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(z), _) if z == 0.0 => Expr::Num(0.0),
        (a, Expr::Num(o)) if o == 1.0 => a,
        (Expr::Num(x), Expr::Num(y)) if y != 0.0 => Expr::Num(x / y),
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, c: f64) -> Expr {
    if c == 1.0 {
        return a;
    }
    if c == 0.0 {
        return Expr::Num(1.0);
    }
    if let Expr::Num(x) = a {
        return Expr::Num(pow_const(x, c));
    }
    Expr::Pow(Box::new(a), c)
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) => Expr::Num(-x),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{}", c),
            Expr::X => write!(f, "x"),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Mul(a, b) => write!(f, "({} * {})", a, b),
            Expr::Div(a, b) => write!(f, "({} / {})", a, b),
            Expr::Pow(a, c) => write!(f, "({}^{})", a, c),
            Expr::Neg(a) => write!(f, "(-{})", a),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), a),
        }
    }
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over a token stream with byte positions.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Tok::Star
                }
                b'/' => {
                    lx.pos += 1;
                    Tok::Slash
                }
                b'^' => {
                    lx.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b'0'..=b'9' | b'.' => lx.number(start)?,
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => lx.ident(start),
                other => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character '{}'", other as char),
                    })
                }
            };
            out.push((tok, start));
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self, start: usize) -> Result<Tok> {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // scientific suffix like 1e-3, only when followed by digits
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mut probe = self.pos + 1;
            if probe < self.src.len() && (self.src[probe] == b'+' || self.src[probe] == b'-') {
                probe += 1;
            }
            if probe < self.src.len() && self.src[probe].is_ascii_digit() {
                self.pos = probe;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map(Tok::Num).map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("malformed number '{}'", text),
        })
    }

    fn ident(&mut self, start: usize) -> Tok {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Tok::Ident(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    len: usize,
}

/// Parse expression text under the potential grammar.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser {
        toks,
        idx: 0,
        len: src.len(),
    };
    let e = p.expr()?;
    if let Some((_, pos)) = p.peek_full() {
        return Err(Error::Syntax {
            pos,
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn peek_full(&self) -> Option<(&Tok, usize)> {
        self.toks.get(self.idx).map(|(t, p)| (t, *p))
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let r = self.toks.get(self.idx).cloned();
        self.idx += 1;
        r
    }

    fn here(&self) -> usize {
        self.toks.get(self.idx).map(|(_, p)| *p).unwrap_or(self.len)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = add(lhs, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    lhs = mul(lhs, self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    lhs = div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    // `^` binds tighter than unary minus: -x^2 == -(x^2)
    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let pos = self.here();
            // exponent: unary chain over an atom or parenthesised constant
            let exp_expr = self.unary()?;
            if !exp_expr.is_const() {
                return Err(Error::Unsupported(format!(
                    "variable exponent at position {} ('^' requires a constant exponent)",
                    pos
                )));
            }
            let c = exp_expr.eval(f64::NAN);
            return Ok(pow(base, c));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some((Tok::Num(v), _)) => Ok(Expr::Num(v)),
            Some((Tok::Ident(name), pos)) => {
                if name == "x" {
                    return Ok(Expr::X);
                }
                if let Some(f) = Func::from_name(&name) {
                    match self.next() {
                        Some((Tok::LParen, _)) => {}
                        _ => {
                            return Err(Error::Syntax {
                                pos,
                                msg: format!("function '{}' requires parenthesised argument", name),
                            })
                        }
                    }
                    let arg = self.expr()?;
                    match self.next() {
                        Some((Tok::RParen, _)) => Ok(Expr::Call(f, Box::new(arg))),
                        _ => Err(Error::Syntax {
                            pos: self.here(),
                            msg: "expected ')'".into(),
                        }),
                    }
                } else {
                    Err(Error::Syntax {
                        pos,
                        msg: format!("unknown identifier '{}'", name),
                    })
                }
            }
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(e),
                    other => Err(Error::Syntax {
                        pos: other.map(|(_, p)| p).unwrap_or(self.len),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            other => Err(Error::Syntax {
                pos: other.map(|(_, p)| p).unwrap_or(self.len),
                msg: "expected expression".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(src: &str) -> Expr {
        parse(src).unwrap().diff()
    }

    #[test]
    fn parses_linear_potential() {
        let e = parse("-2*x").unwrap();
        assert_eq!(e.eval(1.0), -2.0);
        assert_eq!(e.eval(-3.0), 6.0);
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let e = parse("-x^2").unwrap();
        assert_eq!(e.eval(2.0), -4.0);
        assert_eq!(e.eval(-2.0), -4.0);
    }

    #[test]
    fn differentiates_square() {
        let e = d("x^2");
        assert_eq!(e.eval(3.0), 6.0);
    }

    #[test]
    fn differentiates_log_cosh() {
        // d/dx 2 log cosh x = 2 tanh x
        let e = d("2*log(cosh(x))");
        let x = -0.5_f64;
        assert!((e.eval(x) - 2.0 * x.tanh()).abs() < 1e-14);
    }

    #[test]
    fn rejects_variable_exponent() {
        let err = parse("x^x").unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "got {err:?}");
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse("2*#x") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(parse("1e-3").unwrap().eval(0.0), 1e-3);
        assert_eq!(parse("2.5e2").unwrap().eval(0.0), 250.0);
    }

    #[test]
    fn repeated_derivatives_match_finite_differences() {
        let cases = ["exp(-x)", "sqrt(-x)", "2*log(cosh(x))", "x^2 - x/3", "tanh(x)*x"];
        for src in cases {
            let e = parse(src).unwrap();
            let de = e.diff();
            for &x in &[-3.0, -1.3, -0.4] {
                let h = 1e-6;
                let fd = (e.eval(x + h) - e.eval(x - h)) / (2.0 * h);
                let sym = de.eval(x);
                assert!(
                    (fd - sym).abs() <= 1e-6 * (1.0 + sym.abs()),
                    "{src} at {x}: fd {fd} sym {sym}"
                );
            }
        }
    }
}

//! Expression syntax for field elements, series, rational functions and
//! differential forms.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*       (via unary)
//! term   := unary (('*' | '/' | juxtaposition) unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] INT]
//! atom   := INT | IDENT | IDENT '(' expr ')' | '(' expr ')'
//! ```
//!
//! `d(..)`, `dlog(..)` and `O(..)` are the call forms; an identifier `dX`
//! names the differential of the variable `X`.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: found {}, expected one of: {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let n = s.parse::<u64>().map_err(|_| ParseError {
                line: l0,
                column: c0,
                found: format!("integer {s}"),
                expected: vec!["an integer below 2^64".into()],
            })?;
            out.push(Lexed { tok: Tok::Int(n), line: l0, column: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Lexed { tok: Tok::Sym(c), line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError {
            line: l0,
            column: c0,
            found: format!("'{c}'"),
            expected: vec!["an operand".into(), "an operator".into()],
        });
    }
    out.push(Lexed { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

const CALLS: [&str; 3] = ["d", "dlog", "O"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else if self.starts_atom() {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match *self.peek() {
            Tok::Int(n) => {
                self.pos += 1;
                let n = i64::try_from(n).map_err(|_| self.error(&["a smaller exponent"]))?;
                Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
            }
            _ => Err(self.error(if neg { &["integer"] } else { &["integer", "'-'"] })),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if CALLS.contains(&name.as_str()) && *self.peek() == Tok::Sym('(') {
                    self.pos += 1;
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'/'"]));
                    }
                    return Ok(Expr::Call(name, Box::new(arg)));
                }
                Ok(Expr::Ident(name))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'/'"]));
                }
                Ok(e)
            }
            _ => Err(self.error(&["integer", "identifier", "'('", "'-'"])),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}

// binding levels used by the printer
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Pow(..) => 4,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical rendering: binary operators spelled out, minimal parentheses.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_at(f, a, UNARY)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, SUM)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, b, PRODUCT)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_at(f, a, PRODUCT)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                write_at(f, b, UNARY)
            }
            Expr::Pow(a, n) => {
                write_at(f, a, ATOM)?;
                write!(f, "^{n}")
            }
            Expr::Call(name, a) => write!(f, "{name}({a})"),
        }
    }
}

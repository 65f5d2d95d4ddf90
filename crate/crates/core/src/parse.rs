//! Text syntax for series.
//!
//! ```text
//! list    := expr (';' expr)*
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' exponent)?
//! primary := number | variable | 'O' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables are `t1 … tn`; when `n = 1`, `X`, `x` and `t` also name `t1`.
//! Exponents are integers, or dyadic fractions `p/2^k` over dyadic coordinates.

use crate::coeff::{Coefficient, Rat, F2};
use crate::error::{Error, Result};
use crate::group::{Coord, Dyadic, GroupElem};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
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
        let mut take = |pred: &dyn Fn(char) -> bool| {
            let from = i;
            while i < chars.len() && pred(chars[i]) {
                i += 1;
                column += 1;
            }
            chars[from..i].iter().collect::<String>()
        };
        let tok = if c.is_ascii_digit() {
            Tok::Num(take(&|c| c.is_ascii_digit()))
        } else if c.is_ascii_alphabetic() {
            Tok::Ident(take(&|c| c.is_ascii_alphanumeric()))
        } else if "+-*/^();".contains(c) {
            i += 1;
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Parse {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        out.push(Token {
            tok,
            line: start.0,
            column: start.1,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<K: Coefficient, C: Coord> {
    toks: Vec<Token>,
    pos: usize,
    n: usize,
    _marker: std::marker::PhantomData<(K, C)>,
}

impl<K: Coefficient, C: Coord> Parser<K, C> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn at_err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[pos];
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn list(&mut self) -> Result<Vec<Series<K, C>>> {
        let mut out = vec![self.expr()?];
        while self.eat(';') {
            if *self.peek() == Tok::End {
                break;
            }
            out.push(self.expr()?);
        }
        if *self.peek() != Tok::End {
            return self.err("unexpected token");
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Series<K, C>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Series<K, C>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if *self.peek() == Tok::Sym('/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.unary()?;
                let inv = match monomial_parts(&d) {
                    Some((c, g)) => c.inv().map(|ci| Series::monomial(ci, -&g)),
                    None => None,
                };
                match inv {
                    Some(inv) => acc = &acc * &inv,
                    None => return self.at_err(at, "can only divide by a nonzero monomial"),
                }
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Series<K, C>> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Series<K, C>> {
        let at = self.pos;
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp_at = self.pos;
        let e = self.exponent()?;
        if let Some(k) = e.to_int() {
            if k >= 0 {
                return Ok(base.pow(k as u32));
            }
            return match monomial_parts(&base) {
                Some((c, g)) => match c.inv() {
                    Some(ci) => Ok(Series::monomial(
                        pow_coeff(&ci, k.unsigned_abs()),
                        GroupElem::new(g.coords().iter().map(|&x| scale_coord(x, k)).collect()),
                    )),
                    None => self.at_err(at, "zero raised to a negative power"),
                },
                None => self.at_err(at, "negative powers need a monomial base"),
            };
        }
        match monomial_parts(&base) {
            Some((c, g)) if c.is_one() && g.coords().iter().filter(|x| !x.is_zero()).count() == 1 => {
                let i = g.coords().iter().position(|x| !x.is_zero()).unwrap();
                if g.coords()[i] != C::from_int(1) {
                    return self.at_err(exp_at, "fractional powers apply to a bare variable");
                }
                let mut v = vec![C::default(); self.n];
                v[i] = e;
                Ok(Series::monomial(K::one(), GroupElem::new(v)))
            }
            _ => self.at_err(exp_at, "fractional powers apply to a bare variable"),
        }
    }

    fn exponent(&mut self) -> Result<C> {
        let parens = self.eat('(');
        let negative = self.eat('-');
        let at = self.pos;
        let mut text = match self.peek().clone() {
            Tok::Num(s) => {
                self.pos += 1;
                s
            }
            _ => return self.err("expected an exponent"),
        };
        let fractional = C::from_int(1).half().is_some();
        if (parens || fractional) && *self.peek() == Tok::Sym('/') {
            self.pos += 1;
            match self.peek().clone() {
                Tok::Num(s) => {
                    self.pos += 1;
                    text = format!("{text}/{s}");
                }
                _ => return self.err("expected a denominator"),
            }
        }
        if parens {
            self.expect(')')?;
        }
        let v = match C::parse_coord(&text) {
            Ok(v) => v,
            Err(_) => return self.at_err(at, format!("invalid exponent {text}")),
        };
        Ok(if negative { -v } else { v })
    }

    fn variable(&self, name: &str) -> Option<usize> {
        if self.n == 1 && matches!(name, "X" | "x" | "t") {
            return Some(0);
        }
        let i: usize = name.strip_prefix('t')?.parse().ok()?;
        (1..=self.n).contains(&i).then(|| i - 1)
    }

    fn primary(&mut self) -> Result<Series<K, C>> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.pos += 1;
                let c = match K::parse_coeff(&s) {
                    Ok(c) => c,
                    Err(_) => return self.at_err(self.pos - 1, format!("bad number {s}")),
                };
                Ok(Series::constant(self.n, c))
            }
            Tok::Ident(name) if name == "O" && self.toks[self.pos + 1].tok == Tok::Sym('(') => {
                self.pos += 2;
                let at = self.pos;
                let inner = self.expr()?;
                self.expect(')')?;
                match monomial_parts(&inner) {
                    Some((_, g)) => Ok(Series::big_o(g)),
                    None => self.at_err(at, "O(...) takes a monomial"),
                }
            }
            Tok::Ident(name) => match self.variable(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Series::monomial(K::one(), GroupElem::basis(self.n, i)))
                }
                None => self.err(format!("unknown variable {name}")),
            },
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("unexpected token"),
        }
    }
}

fn monomial_parts<K: Coefficient, C: Coord>(s: &Series<K, C>) -> Option<(K, GroupElem<C>)> {
    if s.num_terms() != 1 || !s.is_exact() {
        return None;
    }
    s.terms().next().map(|(g, c)| (c.clone(), g.clone()))
}

fn pow_coeff<K: Coefficient>(c: &K, k: u64) -> K {
    (0..k).fold(K::one(), |acc, _| acc * c.clone())
}

fn scale_coord<C: Coord>(x: C, k: i64) -> C {
    let mut acc = C::default();
    for _ in 0..k.unsigned_abs() {
        acc = acc + x;
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

fn parser<K: Coefficient, C: Coord>(text: &str, n: usize) -> Result<Parser<K, C>> {
    Ok(Parser {
        toks: tokenize(text)?,
        pos: 0,
        n,
        _marker: std::marker::PhantomData,
    })
}

/// Parse a single series in `n` variables.
pub fn parse_series_in<K: Coefficient, C: Coord>(text: &str, n: usize) -> Result<Series<K, C>> {
    let mut p = parser::<K, C>(text, n)?;
    let s = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected token");
    }
    Ok(s)
}

/// Parse a `;`-separated list of series.
pub fn parse_list_in<K: Coefficient, C: Coord>(text: &str, n: usize) -> Result<Vec<Series<K, C>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    parser::<K, C>(text, n)?.list()
}

pub fn parse_series(text: &str, n: usize) -> Result<Series<Rat, i64>> {
    parse_series_in(text, n)
}

pub fn parse_list(text: &str, n: usize) -> Result<Vec<Series<Rat, i64>>> {
    parse_list_in(text, n)
}

pub fn parse_char2(text: &str, n: usize) -> Result<Series<F2, Dyadic>> {
    parse_series_in(text, n)
}

pub fn parse_char2_list(text: &str, n: usize) -> Result<Vec<Series<F2, Dyadic>>> {
    parse_list_in(text, n)
}

//! Expression syntax for rational functions: parsing and canonical printing.
//!
//! Grammar (`^` binds tightest and is right-associative, exponents are
//! non-negative integer literals):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := INT ('^' exponent)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ratfn::RatFn;
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{}`", c) });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos, msg: "division by zero".into() });
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() == &Tok::Op('^') {
            self.bump();
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| Error::Syntax { pos: self.pos(), msg: "division by zero".into() });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32> {
        let pos = self.pos();
        let base = match self.bump() {
            Tok::Int(v) => v,
            Tok::Op('-') => {
                return Err(Error::Syntax { pos, msg: "exponent must be a non-negative integer literal".into() })
            }
            _ => return Err(Error::Syntax { pos, msg: "expected integer exponent".into() }),
        };
        let value = if self.peek() == &Tok::Op('^') {
            self.bump();
            let e = self.exponent()?;
            num_traits::pow(base, e as usize)
        } else {
            base
        };
        value
            .to_i32()
            .filter(|&v| v <= 10_000)
            .ok_or(Error::Syntax { pos, msg: "exponent too large".into() })
    }

    fn atom(&mut self) -> Result<RatFn> {
        let n = self.vars.len();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(RatFn::constant(n, Rational::from_integer(v))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RatFn::var(n, i)),
                None => Err(Error::UnknownIdentifier { pos, name }),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.bump() != Tok::Op(')') {
                    return Err(Error::Syntax { pos: self.toks[self.at.saturating_sub(1)].0, msg: "expected `)`".into() });
                }
                Ok(e)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(Error::Syntax { pos, msg: format!("unexpected `{}`", c) }),
        }
    }
}

/// Parses an expression over the declared variable names.
pub fn parse_ratfn(src: &str, vars: &[&str]) -> Result<RatFn> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, vars };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &Monomial, names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[v].to_string()),
            _ => parts.push(format!("{}^{}", names[v], e)),
        }
    }
    parts.join("*")
}

/// Canonical printed form: descending grevlex terms, explicit `*`.
pub fn format_poly(p: &Poly, names: &[&str]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&fmt_monomial(m, names));
        } else {
            out.push_str(&fmt_rational(&a));
            out.push('*');
            out.push_str(&fmt_monomial(m, names));
        }
    }
    out
}

pub fn format_ratfn(f: &RatFn, names: &[&str]) -> String {
    let num = format_poly(f.num(), names);
    if f.den().is_one() {
        return num;
    }
    let num = if f.num().len() > 1 { format!("({})", num) } else { num };
    let den = format_poly(f.den(), names);
    let den_simple = f.den().len() == 1 && {
        let m = &f.den().terms()[0].0;
        m.exponents().iter().filter(|&&e| e > 0).count() <= 1
    };
    if den_simple {
        format!("{}/{}", num, den)
    } else {
        format!("{}/({})", num, den)
    }
}

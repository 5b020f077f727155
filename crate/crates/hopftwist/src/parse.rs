//! Expression parser for polynomials and tensor expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ('-' factor) | atom ('^' int)?
//! atom    := int | name | '(' sum ')'
//! tensor  := tterm (('+' | '-') tterm)*
//! tterm   := term ('(x)' term)*
//! ```

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RingRef, Q};
use crate::tensor::TensorPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn lex(s: &str, tensor_mode: bool) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '(' && tensor_mode {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j] == 'x' {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_whitespace() {
                    k += 1;
                }
                if k < chars.len() && chars[k] == ')' {
                    out.push(Tok::Tensor);
                    i = k + 1;
                    continue;
                }
            }
        }
        match c {
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                out.push(Tok::Int(t.parse().expect("digits")));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
                continue;
            }
            other => return Err(Error::parse(format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or_else(|| Error::parse("division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(Error::parse("division by zero"));
                    }
                    acc = acc.scale(&(Q::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::parse("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::parse("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Poly::constant(self.ring, Q::from_integer(n))),
            Some(Tok::Name(n)) => self
                .ring
                .index(&n)
                .map(|i| Poly::var(self.ring, i))
                .ok_or_else(|| Error::parse(format!("unknown variable '{n}'"))),
            Some(Tok::LParen) => {
                let p = self.sum()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(p),
                    _ => Err(Error::parse("expected ')'")),
                }
            }
            Some(t) => Err(Error::parse(format!("unexpected token {t:?}"))),
            None => Err(Error::parse("unexpected end of expression")),
        }
    }

    fn tensor_term(&mut self) -> Result<Vec<Poly>> {
        let mut slots = vec![self.term()?];
        while let Some(Tok::Tensor) = self.peek() {
            self.bump();
            slots.push(self.term()?);
        }
        Ok(slots)
    }
}

pub fn parse_poly(ring: &RingRef, s: &str) -> Result<Poly> {
    let toks = lex(s, false)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = Parser { toks, pos: 0, ring };
    let r = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing input in '{s}'")));
    }
    Ok(r)
}

/// Parse a sum of tensor products such as `V (x) Y + X (x) Y^2/2`.
pub fn parse_tensor(ring: &RingRef, s: &str) -> Result<TensorPoly> {
    let toks = lex(s, true)?;
    if toks.is_empty() {
        return Err(Error::parse("empty tensor expression"));
    }
    let mut p = Parser { toks, pos: 0, ring };
    let mut acc: Option<TensorPoly> = None;
    let mut sign = Q::one();
    loop {
        let slots = p.tensor_term()?;
        let mut t = TensorPoly::from_slots(ring, &slots);
        t = t.scale(&sign);
        acc = Some(match acc {
            None => t,
            Some(a) => {
                if a.rank() != t.rank() {
                    return Err(Error::parse("tensor terms of different rank"));
                }
                a.add(&t)
            }
        });
        match p.peek() {
            Some(Tok::Plus) => {
                p.bump();
                sign = Q::one();
            }
            Some(Tok::Minus) => {
                p.bump();
                sign = -Q::one();
            }
            None => break,
            Some(t) => return Err(Error::parse(format!("unexpected token {t:?}"))),
        }
    }
    Ok(acc.expect("at least one term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn tensor_expression() {
        let r = Ring::new(&["X", "Y", "V", "W"], &[] as &[&str]);
        let t = parse_tensor(&r, "V (x) Y + X (x) Y^2/2").unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.to_string(), "V (x) Y + 1/2*X (x) Y^2");
    }

    #[test]
    fn parenthesised_slot() {
        let r = Ring::new(&["X", "Y"], &[] as &[&str]);
        let t = parse_tensor(&r, "(X+Y)(x)X").unwrap();
        assert_eq!(t.terms().len(), 2);
    }

    #[test]
    fn errors() {
        let r = Ring::new(&["X"], &[] as &[&str]);
        assert!(parse_poly(&r, "Z").is_err());
        assert!(parse_poly(&r, "X/X").is_err());
        assert!(parse_poly(&r, "(X").is_err());
    }
}

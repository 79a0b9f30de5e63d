//! Textual expressions. Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*          left associative
//! factor := rational | blade | '(' expr ')' | '-' factor
//! ```
//!
//! Blades are `o12`, `u1`, `o1u2` or bracketed `o[1,10]`. `*` is mandatory.

use std::fmt::{Display, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{basis_label, element_mul, parse_label, Error, Mask, RationalElement, Result, Scalar, Signature};
use crate::{Element, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprNode {
    Literal(Rational),
    Blade(Mask),
    Neg(Box<ExprNode>),
    /// Terms are added; subtraction is a `Neg` term.
    Sum(Vec<ExprNode>),
    Product(Box<ExprNode>, Box<ExprNode>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Blade(Mask),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str, sig: &Signature) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((i, Tok::Plus)),
            b'-' => out.push((i, Tok::Minus)),
            b'*' => out.push((i, Tok::Star)),
            b'(' => out.push((i, Tok::LParen)),
            b')' => out.push((i, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().expect("digits");
                let mut denom = BigInt::one();
                if bytes.get(i) == Some(&b'/') {
                    let d0 = i + 1;
                    i = d0;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == d0 {
                        return Err(parse_err(d0, "expected denominator"));
                    }
                    denom = text[d0..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(parse_err(d0, "zero denominator"));
                    }
                }
                out.push((start, Tok::Num(Rational::new(numer, denom))));
                continue;
            }
            b'o' | b'u' => {
                while i < bytes.len() && matches!(bytes[i], b'o' | b'u') {
                    i += 1;
                    if bytes.get(i) == Some(&b'[') {
                        match text[i..].find(']') {
                            Some(off) => i += off + 1,
                            None => return Err(parse_err(i, "unclosed '['")),
                        }
                    } else {
                        let d0 = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if i == d0 {
                            return Err(parse_err(d0, "expected generator index"));
                        }
                    }
                }
                let mask = parse_label(sig, &text[start..i]).map_err(|e| match e {
                    Error::Domain(msg) => Error::Domain(format!("{msg} (at byte {start})")),
                    other => other,
                })?;
                out.push((start, Tok::Blade(mask)));
                continue;
            }
            _ => return Err(parse_err(i, format!("unexpected character {:?}", c as char))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<ExprNode> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    terms.push(ExprNode::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { ExprNode::Sum(terms) })
    }

    fn term(&mut self) -> Result<ExprNode> {
        let mut node = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            node = ExprNode::Product(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<ExprNode> {
        let at = self.here();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(r)) => Ok(ExprNode::Literal(r)),
            Some(Tok::Blade(m)) => Ok(ExprNode::Blade(m)),
            Some(Tok::Minus) => Ok(ExprNode::Neg(Box::new(self.factor()?))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(parse_err(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(parse_err(at, format!("unexpected {t:?}"))),
            None => Err(parse_err(at, "unexpected end of input")),
        }
    }
}

pub fn parse(text: &str, sig: &Signature) -> Result<ExprNode> {
    if text.trim().is_empty() {
        return Err(parse_err(0, "empty expression"));
    }
    let toks = lex(text, sig)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let node = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(parse_err(p.here(), "trailing input (is a '*' missing?)"));
    }
    Ok(node)
}

pub fn evaluate(node: &ExprNode, sig: &Signature) -> Result<RationalElement> {
    Ok(match node {
        ExprNode::Literal(r) => Element::scalar(r.clone()),
        ExprNode::Blade(m) => {
            sig.check_mask(*m)?;
            Element::term(*m, Rational::one())
        }
        ExprNode::Neg(inner) => -evaluate(inner, sig)?,
        ExprNode::Sum(terms) => {
            let mut acc = Element::zero();
            for t in terms {
                acc = acc + evaluate(t, sig)?;
            }
            acc
        }
        ExprNode::Product(a, b) => element_mul(sig, &evaluate(a, sig)?, &evaluate(b, sig)?)?,
    })
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str, sig: &Signature) -> Result<RationalElement> {
    evaluate(&parse(text, sig)?, sig)
}

/// Mask-ascending rendering, e.g. `1 - 2*o12 + 3/4*o3`. Parses back to the same element.
pub fn format<T: Scalar + Signed + Display>(element: &Element<T>, sig: &Signature) -> String {
    let mut out = String::new();
    for (i, (mask, c)) in element.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mask == 0 {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(&basis_label(sig, mask));
        } else {
            let _ = write!(out, "{mag}*{}", basis_label(sig, mask));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

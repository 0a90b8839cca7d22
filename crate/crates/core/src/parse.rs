//! Prefix grammar for trees and linear combinations.
//!
//! ```text
//! element := "0" | ["+"|"-"] term (("+"|"-") term)*
//! term    := [coeff ["*"]] tree
//! coeff   := integer ["/" integer]
//! tree    := integer | name "(" tree ("," tree)* ")"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{OperadError, Result};
use crate::signature::Signature;
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            i += 1;
            while i < bytes.len() {
                let d = bytes[i] as char;
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    i += 1;
                } else if d == '*' {
                    // a star belongs to the name only when a parenthesis or another star follows
                    let mut j = i;
                    while j < bytes.len() && bytes[j] == b'*' {
                        j += 1;
                    }
                    let mut k = j;
                    while k < bytes.len() && (bytes[k] as char).is_whitespace() {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k] == b'(' {
                        i = j;
                    }
                    break;
                } else {
                    break;
                }
            }
            out.push((start, Tok::Name(s[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            _ => return Err(err(start, &format!("unexpected character `{c}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn err(pos: usize, msg: &str) -> OperadError {
    OperadError::Parse { pos, msg: msg.to_string() }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.here(), &format!("expected {what}")))
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let l: u32 = n.try_into().map_err(|_| err(at, "leaf label out of range"))?;
                Ok(Tree::Leaf(l))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let g = self.sig.id_of(&name).map_err(|_| err(at, &format!("unknown generator `{name}`")))?;
                self.expect(Tok::LParen, "`(`")?;
                let mut ch = vec![self.tree()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    ch.push(self.tree()?);
                }
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(Tree::Node(g, ch))
            }
            _ => Err(err(at, "expected a leaf label or generator name")),
        }
    }

    fn coefficient(&mut self) -> Result<Option<BigRational>> {
        let Some(Tok::Int(n)) = self.peek().cloned() else { return Ok(None) };
        match self.peek_at(1) {
            Some(Tok::Slash) => {
                self.pos += 2;
                let at = self.here();
                let Some(Tok::Int(d)) = self.peek().cloned() else { return Err(err(at, "expected denominator")) };
                if d.is_zero() {
                    return Err(err(at, "zero denominator"));
                }
                self.pos += 1;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                }
                Ok(Some(BigRational::new(n, d)))
            }
            Some(Tok::Star) => {
                self.pos += 2;
                Ok(Some(BigRational::from_integer(n)))
            }
            Some(Tok::Name(_)) => {
                self.pos += 1;
                Ok(Some(BigRational::from_integer(n)))
            }
            _ => Ok(None),
        }
    }

    fn terms(&mut self) -> Result<Vec<(BigRational, Tree)>> {
        if self.toks.len() == 1 && self.peek() == Some(&Tok::Int(BigInt::zero())) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigRational::one();
            match self.peek() {
                Some(Tok::Plus) => self.pos += 1,
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -sign;
                }
                None if !first => break,
                _ if first => {}
                _ => return Err(err(self.here(), "expected `+` or `-`")),
            }
            first = false;
            let c = self.coefficient()?.unwrap_or_else(BigRational::one);
            let t = self.tree()?;
            out.push((sign * c, t));
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

pub fn parse_tree(s: &str, sig: &Signature) -> Result<Tree> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len(), sig };
    let t = p.tree()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(t)
}

/// Parses a linear combination into raw `(coefficient, tree)` pairs.
pub fn parse_terms(s: &str, sig: &Signature) -> Result<Vec<(BigRational, Tree)>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, len: s.len(), sig };
    p.terms()
}

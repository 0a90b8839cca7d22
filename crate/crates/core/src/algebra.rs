//! Homogeneous linear combinations of tree monomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{OperadError, Result};
use crate::ordering::OrderSpec;
use crate::parse;
use crate::signature::Signature;
use crate::tree::TreeMonomial;

pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Coeff {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<TreeMonomial, Coeff>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn monomial(m: TreeMonomial) -> Self {
        Self::term(m, Coeff::one())
    }

    pub fn term(m: TreeMonomial, c: Coeff) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    /// Sums the given terms; fails if arities differ.
    pub fn from_terms(terms: impl IntoIterator<Item = (TreeMonomial, Coeff)>) -> Result<Self> {
        let mut e = Element::zero();
        let mut arity = None;
        for (m, c) in terms {
            match arity {
                None => arity = Some(m.arity()),
                Some(a) if a != m.arity() => return Err(OperadError::ArityMismatch(a, m.arity())),
                _ => {}
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn parse(s: &str, sig: &Signature) -> Result<Self> {
        let raw = parse::parse_terms(s, sig)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (c, t) in raw {
            terms.push((TreeMonomial::canonicalize(t, sig)?, c));
        }
        Self::from_terms(terms)
    }

    /// Adds `c * m` in place. The caller keeps the element homogeneous.
    pub fn add_term(&mut self, m: TreeMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.arity().is_none_or(|a| a == m.arity()));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.arity())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeMonomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &TreeMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &TreeMonomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// `ca * a + cb * b`.
    pub fn combine(a: &Element, b: &Element, ca: &Coeff, cb: &Coeff) -> Result<Element> {
        if let (Some(x), Some(y)) = (a.arity(), b.arity()) {
            if x != y {
                return Err(OperadError::ArityMismatch(x, y));
            }
        }
        let mut out = a.scale(ca);
        if !cb.is_zero() {
            for (m, c) in &b.terms {
                out.add_term(m.clone(), c * cb);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        Self::combine(self, other, &Coeff::one(), &Coeff::one())
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        Self::combine(self, other, &Coeff::one(), &-Coeff::one())
    }

    pub fn leading_term(&self, spec: &OrderSpec) -> Result<(TreeMonomial, Coeff)> {
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| spec.compare(a.0, b.0))
            .ok_or(OperadError::ZeroElement)?;
        Ok((m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, spec: &OrderSpec) -> Result<TreeMonomial> {
        self.leading_term(spec).map(|t| t.0)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, spec: &OrderSpec) -> Result<Element> {
        let (_, c) = self.leading_term(spec)?;
        Ok(self.scale(&c.recip()))
    }

    /// Terms sorted from largest to smallest under `spec`.
    pub fn sorted_terms(&self, spec: &OrderSpec) -> Vec<(&TreeMonomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (spec.sort_key(m), m, c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(a.1)));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// Renders as `c1*m1 + c2*m2`, largest term first when a spec is given.
    pub fn render(&self, sig: &Signature, spec: Option<&OrderSpec>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<(&TreeMonomial, &Coeff)> = match spec {
            Some(s) => self.sorted_terms(s),
            None => self.terms.iter().collect(),
        };
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&m.render(sig));
        }
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> DisplayElement<'a> {
        DisplayElement { e: self, sig }
    }

    /// True when every monomial has exactly two internal vertices.
    pub fn is_quadratic(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.vertex_count() == 2)
    }
}

pub struct DisplayElement<'a> {
    e: &'a Element,
    sig: &'a Signature,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.e.render(self.sig, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Generator, Mode};

    fn sig() -> Signature {
        Signature::new(vec![Generator::new("b", 2), Generator::new("c", 2)], Mode::Shuffle).unwrap()
    }

    #[test]
    fn combine_cases() {
        let s = sig();
        let e = Element::parse("b(1,2) + c(1,2)", &s).unwrap();
        assert!(Element::combine(&e, &e, &rat(1), &rat(-1)).unwrap().is_zero());
        assert_eq!(Element::combine(&e, &Element::zero(), &rat(5), &rat(1)).unwrap(), e.scale(&rat(5)));
        let c = Element::parse("c(1,2)", &s).unwrap();
        assert_eq!(Element::combine(&e, &c, &rat(1), &rat(-1)).unwrap(), Element::parse("b(1,2)", &s).unwrap());
        let three = Element::parse("b(1,b(2,3))", &s).unwrap();
        assert!(matches!(Element::combine(&e, &three, &rat(1), &rat(1)), Err(OperadError::ArityMismatch(2, 3))));
        assert!(Element::parse("b(1,2) + b(1,b(2,3))", &s).is_err());
    }

    #[test]
    fn leading_terms() {
        let s = Signature::new(vec![Generator::new("b", 2)], Mode::Shuffle).unwrap();
        let spec = OrderSpec::nonsymfree(&s, None).unwrap();
        let jacobi = Element::parse("b(b(1,2),3) - b(b(1,3),2) - b(1,b(2,3))", &s).unwrap();
        let (m, c) = jacobi.leading_term(&spec).unwrap();
        assert_eq!(m.render(&s), "b(b(1,3),2)");
        assert_eq!(c, rat(-1));
        assert_eq!(jacobi.scale(&frac(-3, 7)).leading_monomial(&spec).unwrap(), m);
        assert!(Element::zero().leading_term(&spec).is_err());
        let monic = jacobi.monic(&spec).unwrap();
        assert_eq!(monic.render(&s, Some(&spec)), "1*b(b(1,3),2) - 1*b(b(1,2),3) + 1*b(1,b(2,3))");
    }
}

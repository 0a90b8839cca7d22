//! Presentations by generators, relations and a monomial order.

use crate::algebra::Element;
use crate::error::{OperadError, Result};
use crate::ordering::OrderSpec;
use crate::signature::{Mode, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub signature: Signature,
    pub relations: Vec<Element>,
    pub order: OrderSpec,
}

impl Presentation {
    pub fn new(name: impl Into<String>, signature: Signature, relations: Vec<Element>, order: OrderSpec) -> Result<Self> {
        order.validate(&signature)?;
        for r in &relations {
            if r.is_zero() {
                return Err(OperadError::Invalid("relations must be nonzero".into()));
            }
            for m in r.monomials() {
                if m.is_unit() {
                    return Err(OperadError::Invalid("relations may not contain the unit".into()));
                }
                for g in m.tree().generators() {
                    signature.generator(g)?;
                }
            }
        }
        Ok(Presentation { name: name.into(), signature, relations, order })
    }

    /// Parses relation strings against `signature`.
    pub fn from_strings(
        name: impl Into<String>,
        signature: Signature,
        relations: &[&str],
        order: OrderSpec,
    ) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|s| Element::parse(s, &signature))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, signature, rels, order)
    }

    pub fn mode(&self) -> Mode {
        self.signature.mode()
    }

    pub fn with_order(mut self, order: OrderSpec) -> Result<Self> {
        order.validate(&self.signature)?;
        self.order = order;
        Ok(self)
    }

    pub fn max_relation_arity(&self) -> u32 {
        self.relations.iter().filter_map(Element::arity).max().unwrap_or(1)
    }

    pub fn is_binary_quadratic(&self) -> bool {
        self.signature.is_binary() && self.relations.iter().all(Element::is_quadratic)
    }

    /// The same presentation without relation `i`.
    pub fn without_relation(&self, i: usize) -> Self {
        let mut p = self.clone();
        if i < p.relations.len() {
            p.relations.remove(i);
        }
        p
    }
}

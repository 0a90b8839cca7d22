//! JSON documents for presentations and compatibility data.
//!
//! ```json
//! {
//!   "name": "lie",
//!   "mode": "shuffle",
//!   "generators": [{"name": "b", "arity": 2, "symmetry": "antisymmetric", "weight_class": 0}],
//!   "order": {"builtin": "nonsymfree", "generator_order": ["b"]},
//!   "relations": ["1*b(b(1,2),3) - 1*b(b(1,3),2) - 1*b(1,b(2,3))"]
//! }
//! ```
//!
//! An order is either a builtin name or an explicit key chain; `generator_order`
//! lists generator names from smallest to largest.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Element};
use crate::compat::CompatInput;
use crate::error::{OperadError, Result};
use crate::ordering::{OrderKey, OrderSpec};
use crate::presentation::Presentation;
use crate::signature::{GenId, Generator, Mode, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keys: Option<Vec<OrderKey>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub opposite: bool,
}

impl OrderFile {
    pub fn builtin(name: &str) -> Self {
        OrderFile { builtin: Some(name.to_string()), keys: None, generator_order: None, opposite: false }
    }

    pub fn from_spec(spec: &OrderSpec, sig: &Signature) -> Self {
        OrderFile {
            builtin: None,
            keys: Some(spec.keys.clone()),
            generator_order: Some(spec.generator_order().iter().map(|g| sig.name_of(*g).to_string()).collect()),
            opposite: spec.opposite,
        }
    }

    pub fn to_spec(&self, sig: &Signature) -> Result<OrderSpec> {
        let order: Option<Vec<GenId>> = match &self.generator_order {
            None => None,
            Some(names) => Some(names.iter().map(|n| sig.id_of(n)).collect::<Result<_>>()?),
        };
        let spec = match (&self.builtin, &self.keys) {
            (Some(name), None) => OrderSpec::builtin(name, sig, order.as_deref())?,
            (None, Some(keys)) => OrderSpec::new(keys.clone(), sig, order.as_deref())?,
            (None, None) => OrderSpec::pathlex(sig, order.as_deref())?,
            (Some(_), Some(_)) => {
                return Err(OperadError::BadOrder("give either a builtin name or a key chain, not both".into()))
            }
        };
        Ok(if self.opposite { spec.opposite() } else { spec })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub name: String,
    pub mode: Mode,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub order: Option<OrderFile>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            name: p.name.clone(),
            mode: p.mode(),
            generators: p.signature.generators().to_vec(),
            order: Some(OrderFile::from_spec(&p.order, &p.signature)),
            relations: p.relations.iter().map(|r| r.render(&p.signature, Some(&p.order))).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let sig = Signature::new(self.generators.clone(), self.mode)?;
        let spec = match &self.order {
            Some(o) => o.to_spec(&sig)?,
            None => OrderSpec::pathlex(&sig, None)?,
        };
        let rels = self.relations.iter().map(|r| Element::parse(r, &sig)).collect::<Result<Vec<_>>>()?;
        Presentation::new(self.name.clone(), sig, rels, spec)
    }
}

fn json_err(e: serde_json::Error) -> OperadError {
    OperadError::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) }
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_presentation(p)).expect("serializable")
}

pub fn presentation_from_json(s: &str) -> Result<Presentation> {
    let f: PresentationFile = serde_json::from_str(s).map_err(json_err)?;
    f.to_presentation()
}

/// A rational written as a JSON integer or a string such as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_coeff(&self) -> Result<Coeff> {
        match self {
            Number::Int(n) => Ok(Coeff::from_integer((*n).into())),
            Number::Text(s) => Coeff::from_str(s.trim())
                .map_err(|_| OperadError::BadCompatData(format!("`{s}` is not a rational number"))),
        }
    }

    pub fn from_coeff(c: &Coeff) -> Self {
        if c.is_integer() {
            if let Ok(n) = i64::try_from(c.numer().clone()) {
                return Number::Int(n);
            }
        }
        Number::Text(c.to_string())
    }
}

/// `gamma[k][l][i][j]` over the base generators, shapes `j(i(1,2),3)`,
/// `j(1,i(2,3))`, `j(i(1,3),2)` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatFile {
    pub name: String,
    pub mode: Mode,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub order: Option<OrderFile>,
    pub gamma: Vec<Vec<Vec<Vec<Number>>>>,
}

impl CompatFile {
    pub fn from_input(c: &CompatInput) -> Self {
        CompatFile {
            name: c.name.clone(),
            mode: c.signature.mode(),
            generators: c.signature.generators().to_vec(),
            order: Some(OrderFile::from_spec(&c.order, &c.signature)),
            gamma: c
                .gamma
                .iter()
                .map(|r| r.iter().map(|m| m.iter().map(|row| row.iter().map(Number::from_coeff).collect()).collect()).collect())
                .collect(),
        }
    }

    pub fn to_input(&self) -> Result<CompatInput> {
        let sig = Signature::new(self.generators.clone(), self.mode)?;
        let spec = match &self.order {
            Some(o) => o.to_spec(&sig)?,
            None => OrderSpec::pathlex(&sig, None)?,
        };
        let gamma = self
            .gamma
            .iter()
            .map(|r| {
                r.iter()
                    .map(|m| m.iter().map(|row| row.iter().map(Number::to_coeff).collect()).collect())
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<Vec<Coeff>>>>>>()?;
        CompatInput::new(self.name.clone(), sig, spec, gamma)
    }
}

pub fn compat_to_json(c: &CompatInput) -> String {
    serde_json::to_string_pretty(&CompatFile::from_input(c)).expect("serializable")
}

pub fn compat_from_json(s: &str) -> Result<CompatInput> {
    let f: CompatFile = serde_json::from_str(s).map_err(json_err)?;
    f.to_input()
}

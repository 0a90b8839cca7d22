//! Generators and signatures.
//!
//! In shuffle mode every generator is one shuffle corolla: a binary operation
//! with no symmetry is therefore represented by two generators (see
//! [`crate::presets::shuffleize`]). In nonsymmetric mode generators are planar
//! corollas and every tree reads its leaves left to right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OperadError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId(pub u16);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    #[default]
    None,
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    /// Symmetry of the Koszul dual generator (the sign twist swaps the two).
    pub fn dual(self) -> Symmetry {
        match self {
            Symmetry::None => Symmetry::None,
            Symmetry::Symmetric => Symmetry::Antisymmetric,
            Symmetry::Antisymmetric => Symmetry::Symmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Shuffle,
    Nonsymmetric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Shuffle => write!(f, "shuffle"),
            Mode::Nonsymmetric => write!(f, "nonsymmetric"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub arity: u32,
    #[serde(default)]
    pub symmetry: Symmetry,
    #[serde(default)]
    pub weight_class: u8,
}

impl Generator {
    pub fn new(name: impl Into<String>, arity: u32) -> Self {
        Generator { name: name.into(), arity, symmetry: Symmetry::None, weight_class: 0 }
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_weight_class(mut self, class: u8) -> Self {
        self.weight_class = class;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    generators: Vec<Generator>,
    mode: Mode,
}

impl Signature {
    pub fn new(generators: Vec<Generator>, mode: Mode) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.arity == 0 {
                return Err(OperadError::BadGeneratorArity { name: g.name.clone(), arity: g.arity });
            }
            if !valid_name(&g.name) {
                return Err(OperadError::Invalid(format!("bad generator name `{}`", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(OperadError::DuplicateGenerator(g.name.clone()));
            }
        }
        if generators.len() > u16::MAX as usize {
            return Err(OperadError::Invalid("too many generators".into()));
        }
        Ok(Signature { generators, mode })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators.len()).map(|i| GenId(i as u16))
    }

    pub fn generator(&self, id: GenId) -> Result<&Generator> {
        self.generators.get(id.index()).ok_or(OperadError::UnknownGeneratorId(id.index()))
    }

    /// Panics on an id outside the signature; use [`Signature::generator`] for checked access.
    pub fn gen(&self, id: GenId) -> &Generator {
        &self.generators[id.index()]
    }

    pub fn arity_of(&self, id: GenId) -> u32 {
        self.generators[id.index()].arity
    }

    pub fn name_of(&self, id: GenId) -> &str {
        &self.generators[id.index()].name
    }

    pub fn id_of(&self, name: &str) -> Result<GenId> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| GenId(i as u16))
            .ok_or_else(|| OperadError::UnknownGenerator(name.to_string()))
    }

    pub fn is_binary(&self) -> bool {
        self.generators.iter().all(|g| g.arity == 2)
    }

    pub fn has_unary(&self) -> bool {
        self.generators.iter().any(|g| g.arity == 1)
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '*' || c == '\'')
}

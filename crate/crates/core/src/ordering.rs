//! Admissible monomial orders built from key chains.
//!
//! Every spec compiles a monomial to an integer sort key; monomials are compared
//! by arity first and then by that key. Each key block is prefix-free at fixed
//! arity, so concatenation gives the lexicographic combination of the keys.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{OperadError, Result};
use crate::signature::{GenId, Signature};
use crate::tree::{Tree, TreeMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Asc,
    Desc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordOrder {
    /// Lexicographic with a proper prefix smaller.
    Lex,
    /// Lexicographic on reversed words.
    Revlex,
    /// Length first, then lexicographic.
    Deglex,
    /// Length first, then lexicographic on reversed words.
    Revdeglex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKey {
    Arity,
    /// More corollas of the given weight class make a monomial smaller.
    CorollaCount(u8),
    /// Compare images under a relabeling of generators into classes.
    Projected { class_of: Vec<GenId>, inner: Box<OrderSpec> },
    PermLex(Direction),
    PathWords(WordOrder, Direction),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderSpec {
    pub keys: Vec<OrderKey>,
    /// `generator_rank[g]` is the rank of generator `g`, 0 being the smallest.
    pub generator_rank: Vec<u32>,
    /// Weight class per generator, read by `CorollaCount`.
    pub weight_class: Vec<u8>,
    pub opposite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortKey {
    pub arity: u32,
    pub key: Vec<i64>,
}

pub const BUILTIN_NAMES: &[&str] = &["pathlex", "nonsymfree", "magprelie", "prelie_module"];

impl OrderSpec {
    /// Builds a spec for `sig`; `generator_order` lists generators from smallest
    /// to largest and defaults to declaration order.
    pub fn new(keys: Vec<OrderKey>, sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        let generator_rank = ranks(sig, generator_order)?;
        let spec = OrderSpec {
            keys,
            generator_rank,
            weight_class: sig.generators().iter().map(|g| g.weight_class).collect(),
            opposite: false,
        };
        spec.validate(sig)?;
        Ok(spec)
    }

    pub fn pathlex(sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        Self::new(
            vec![OrderKey::Arity, OrderKey::PathWords(WordOrder::Deglex, Direction::Asc), OrderKey::PermLex(Direction::Asc)],
            sig,
            generator_order,
        )
    }

    pub fn nonsymfree(sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        Self::new(
            vec![OrderKey::Arity, OrderKey::PermLex(Direction::Asc), OrderKey::PathWords(WordOrder::Deglex, Direction::Asc)],
            sig,
            generator_order,
        )
    }

    /// Counts corollas of weight class 1 before falling back to path-lex.
    pub fn magprelie(sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        Self::new(
            vec![
                OrderKey::Arity,
                OrderKey::CorollaCount(1),
                OrderKey::PathWords(WordOrder::Deglex, Direction::Asc),
                OrderKey::PermLex(Direction::Asc),
            ],
            sig,
            generator_order,
        )
    }

    /// Permutations first, then words degree-lexicographically.
    pub fn prelie_module(sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        Self::nonsymfree(sig, generator_order)
    }

    pub fn builtin(name: &str, sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Self> {
        match name {
            "pathlex" | "pathlex_DK" => Self::pathlex(sig, generator_order),
            "nonsymfree" => Self::nonsymfree(sig, generator_order),
            "magprelie" => Self::magprelie(sig, generator_order),
            "prelie_module" => Self::prelie_module(sig, generator_order),
            _ => {
                if let Some(inner) = name.strip_prefix("opposite(").and_then(|r| r.strip_suffix(')')) {
                    return Ok(Self::builtin(inner, sig, generator_order)?.opposite());
                }
                Err(OperadError::UnknownName(name.to_string()))
            }
        }
    }

    /// Reverses every comparison at fixed arity.
    pub fn opposite(&self) -> Self {
        let mut s = self.clone();
        s.opposite = !s.opposite;
        s
    }

    /// Checks the spec against a signature: ranks form a permutation, classes and
    /// the tie-breaker are in place.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        let n = sig.len();
        if self.generator_rank.len() != n || self.weight_class.len() != n {
            return Err(OperadError::BadOrder(format!(
                "spec covers {} generators, signature has {n}",
                self.generator_rank.len()
            )));
        }
        let mut seen = vec![false; n];
        for &r in &self.generator_rank {
            if r as usize >= n || seen[r as usize] {
                return Err(OperadError::BadOrder("generator order is not a permutation".into()));
            }
            seen[r as usize] = true;
        }
        self.check_keys(n)?;
        let k = self.keys.len();
        let tail_ok = k >= 2
            && matches!(
                (&self.keys[k - 2], &self.keys[k - 1]),
                (OrderKey::PermLex(_), OrderKey::PathWords(..)) | (OrderKey::PathWords(..), OrderKey::PermLex(_))
            );
        if !tail_ok {
            return Err(OperadError::BadOrder(
                "key chain must end with PermLex and PathWords (in either order)".into(),
            ));
        }
        Ok(())
    }

    fn check_keys(&self, n: usize) -> Result<()> {
        for key in &self.keys {
            if let OrderKey::Projected { class_of, inner } = key {
                if class_of.len() != n {
                    return Err(OperadError::BadOrder("projection must map every generator".into()));
                }
                let m = inner.generator_rank.len();
                if class_of.iter().any(|c| c.index() >= m) || inner.weight_class.len() != m {
                    return Err(OperadError::BadOrder("projection targets an unknown class".into()));
                }
                inner.check_keys(m)?;
            }
        }
        Ok(())
    }

    pub fn sort_key(&self, m: &TreeMonomial) -> SortKey {
        let mut key = Vec::new();
        self.push_key(m.tree(), m.arity(), &mut key);
        SortKey { arity: m.arity(), key }
    }

    fn push_key(&self, t: &Tree, arity: u32, out: &mut Vec<i64>) {
        let start = out.len();
        let needs_paths = self.keys.iter().any(|k| matches!(k, OrderKey::PermLex(_) | OrderKey::PathWords(..)));
        let paths = if needs_paths { Some(path_data(t, arity)) } else { None };
        for key in &self.keys {
            match key {
                OrderKey::Arity => out.push(arity as i64),
                OrderKey::CorollaCount(class) => {
                    let c = t.generators().iter().filter(|g| self.weight_class[g.index()] == *class).count();
                    out.push(-(c as i64));
                }
                OrderKey::Projected { class_of, inner } => {
                    let image = t.map_generators(&|g| class_of[g.index()]);
                    inner.push_key(&image, arity, out);
                }
                OrderKey::PermLex(dir) => {
                    let s = sign(*dir);
                    out.extend(paths.as_ref().unwrap().1.iter().map(|&l| s * l as i64));
                }
                OrderKey::PathWords(wo, dir) => {
                    let s = sign(*dir);
                    for w in &paths.as_ref().unwrap().0 {
                        let block_start = out.len();
                        let ranks = w.iter().map(|g| self.generator_rank[g.index()] as i64 + 1);
                        match wo {
                            WordOrder::Lex => {
                                out.extend(ranks);
                                out.push(0);
                            }
                            WordOrder::Revlex => {
                                out.extend(ranks.rev());
                                out.push(0);
                            }
                            WordOrder::Deglex => {
                                out.push(w.len() as i64);
                                out.extend(ranks);
                            }
                            WordOrder::Revdeglex => {
                                out.push(w.len() as i64);
                                out.extend(ranks.rev());
                            }
                        }
                        if s < 0 {
                            out[block_start..].iter_mut().for_each(|x| *x = -*x);
                        }
                    }
                }
            }
        }
        if self.opposite {
            out[start..].iter_mut().for_each(|x| *x = -*x);
        }
    }

    pub fn compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        self.sort_key(a).cmp(&self.sort_key(b)).then_with(|| a.cmp(b))
    }

    /// [`OrderSpec::compare`] after checking that both monomials only use generators
    /// known to the spec.
    pub fn checked_compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Result<Ordering> {
        for m in [a, b] {
            if let Some(g) = m.tree().generators().into_iter().find(|g| g.index() >= self.generator_rank.len()) {
                return Err(OperadError::UnknownGeneratorId(g.index()));
            }
        }
        Ok(self.compare(a, b))
    }

    /// Generators from smallest to largest.
    pub fn generator_order(&self) -> Vec<GenId> {
        let mut ids: Vec<GenId> = (0..self.generator_rank.len()).map(|i| GenId(i as u16)).collect();
        ids.sort_by_key(|g| self.generator_rank[g.index()]);
        ids
    }
}

fn sign(d: Direction) -> i64 {
    match d {
        Direction::Asc => 1,
        Direction::Desc => -1,
    }
}

fn path_data(t: &Tree, arity: u32) -> (Vec<Vec<GenId>>, Vec<u32>) {
    let mut words = vec![Vec::new(); arity as usize];
    let mut perm = Vec::with_capacity(arity as usize);
    let mut stack = Vec::new();
    fn walk(t: &Tree, stack: &mut Vec<GenId>, words: &mut [Vec<GenId>], perm: &mut Vec<u32>) {
        match t {
            Tree::Leaf(l) => {
                words[*l as usize - 1] = stack.clone();
                perm.push(*l);
            }
            Tree::Node(g, ch) => {
                stack.push(*g);
                ch.iter().for_each(|c| walk(c, stack, words, perm));
                stack.pop();
            }
        }
    }
    walk(t, &mut stack, &mut words, &mut perm);
    (words, perm)
}

pub(crate) fn ranks(sig: &Signature, generator_order: Option<&[GenId]>) -> Result<Vec<u32>> {
    let n = sig.len();
    match generator_order {
        None => Ok((0..n as u32).collect()),
        Some(order) => {
            if order.len() != n {
                return Err(OperadError::BadOrder(format!(
                    "generator order lists {} generators, signature has {n}",
                    order.len()
                )));
            }
            let mut rank = vec![u32::MAX; n];
            for (r, g) in order.iter().enumerate() {
                if g.index() >= n {
                    return Err(OperadError::UnknownGeneratorId(g.index()));
                }
                if rank[g.index()] != u32::MAX {
                    return Err(OperadError::BadOrder("generator listed twice".into()));
                }
                rank[g.index()] = r as u32;
            }
            Ok(rank)
        }
    }
}

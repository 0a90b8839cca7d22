//! Quadratic data and Koszul duals of binary quadratic presentations.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::{Coeff, Element};
use crate::error::{OperadError, Result};
use crate::linalg;
use crate::presentation::Presentation;
use crate::rewriting::interreduce;
use crate::signature::{Generator, Signature};
use crate::tree::{enumerate_hereditary, enumerate_monomials, Flat, SubtreeEmbedding, Tree, TreeMonomial};

/// Weight-2 pairing sign of a two-vertex monomial: the sign of its leaf
/// permutation, negated when the inner vertex sits on a later input of the root.
pub fn pairing_sign(m: &TreeMonomial) -> i64 {
    let Tree::Node(_, ch) = m.tree() else { return 1 };
    let pos = ch.iter().position(|c| matches!(c, Tree::Node(..))).unwrap_or(0);
    let perm = m.tree().leaves();
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    let s = if inversions % 2 == 0 { 1 } else { -1 };
    if pos == 0 {
        s
    } else {
        -s
    }
}

/// All two-vertex monomials of a binary signature, sorted structurally.
pub fn two_vertex_monomials(sig: &Signature) -> Result<Vec<TreeMonomial>> {
    if !sig.is_binary() {
        return Err(OperadError::NotBinaryQuadratic("all generators must be binary".into()));
    }
    let mut v = enumerate_monomials(sig, 3)?;
    v.sort();
    Ok(v)
}

fn check_binary_quadratic(p: &Presentation) -> Result<()> {
    if !p.signature.is_binary() {
        return Err(OperadError::NotBinaryQuadratic(format!(
            "presentation `{}` has a generator that is not binary",
            p.name
        )));
    }
    if let Some(r) = p.relations.iter().find(|r| !r.is_quadratic()) {
        return Err(OperadError::NotBinaryQuadratic(format!(
            "relation `{}` is not quadratic",
            r.render(&p.signature, None)
        )));
    }
    Ok(())
}

pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('!') {
        Some(base) => base.to_string(),
        None => format!("{name}!"),
    }
}

pub fn dual_generator_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

pub fn dual_signature(sig: &Signature) -> Result<Signature> {
    let gens = sig
        .generators()
        .iter()
        .map(|g| Generator {
            name: dual_generator_name(&g.name),
            arity: g.arity,
            symmetry: g.symmetry.dual(),
            weight_class: g.weight_class,
        })
        .collect();
    Signature::new(gens, sig.mode())
}

/// Coefficient vector of a weight-2 element in the basis `basis`.
fn coords(e: &Element, basis: &[TreeMonomial]) -> Vec<Coeff> {
    basis.iter().map(|m| e.coeff(m)).collect()
}

/// The Koszul dual: annihilator of the relation space under the weight-2 pairing,
/// with the opposite order.
pub fn dual_presentation(p: &Presentation) -> Result<Presentation> {
    check_binary_quadratic(p)?;
    let basis = two_vertex_monomials(&p.signature)?;
    let signs: Vec<Coeff> = basis.iter().map(|m| Coeff::from_integer(pairing_sign(m).into())).collect();
    let rows: Vec<Vec<Coeff>> = p
        .relations
        .iter()
        .map(|r| coords(r, &basis).into_iter().zip(&signs).map(|(x, s)| x * s).collect())
        .collect();
    let kernel = linalg::nullspace(&rows, basis.len());
    let dual_sig = dual_signature(&p.signature)?;
    let order = p.order.opposite();
    let rels: Vec<Element> = kernel
        .into_iter()
        .map(|v| {
            let mut e = Element::zero();
            for (m, x) in basis.iter().zip(v) {
                e.add_term(m.clone(), x);
            }
            e
        })
        .collect();
    let rels = interreduce(&rels, &order);
    Presentation::new(dual_name(&p.name), dual_sig, rels, order)
}

/// Weight-2 relation space with its leading terms under the presentation's order.
#[derive(Clone, Debug)]
pub struct QuadraticData {
    pub signature: Signature,
    pub relation_space: Vec<Element>,
    pub lt2: BTreeSet<TreeMonomial>,
}

impl QuadraticData {
    pub fn new(p: &Presentation) -> Result<Self> {
        check_binary_quadratic(p)?;
        let rels = interreduce(&p.relations, &p.order);
        let lt2 = rels.iter().map(|r| r.leading_monomial(&p.order)).collect::<Result<_>>()?;
        Ok(QuadraticData { signature: p.signature.clone(), relation_space: rels, lt2 })
    }

    pub fn lt2_complement(&self) -> BTreeSet<TreeMonomial> {
        two_vertex_monomials(&self.signature)
            .unwrap_or_default()
            .into_iter()
            .filter(|m| !self.lt2.contains(m))
            .collect()
    }

    /// For `n = 1..=max`, the number of monomials all of whose two-vertex divisors lie in `lt2`.
    pub fn dual_dim_upper_bound(&self, max: u32) -> Result<Vec<usize>> {
        let lt2 = &self.lt2;
        let accept = |m: &TreeMonomial| {
            let flat = Flat::new(m.tree());
            let root = &flat.verts[0];
            root.slots.iter().all(|s| match s {
                crate::tree::Slot::Leaf(_) => true,
                crate::tree::Slot::Vertex(c) => {
                    let d = flat.divisor(&SubtreeEmbedding::new(vec![0, *c])).expect("connected");
                    lt2.contains(&d)
                }
            })
        };
        let table = enumerate_hereditary(&self.signature, max, &accept)?;
        Ok(table[1..].iter().map(Vec::len).collect())
    }

    /// True iff the bound equals `true_dual_dims` (arities 1, 2, ...) termwise.
    pub fn confirm_quadratic_by_sharp_bound(&self, true_dual_dims: &[usize]) -> Result<bool> {
        if true_dual_dims.is_empty() {
            return Ok(true);
        }
        Ok(self.dual_dim_upper_bound(true_dual_dims.len() as u32)? == true_dual_dims)
    }
}

/// Dimension of the span of `rels` at weight 2 and whether it contains every element of `other`.
pub fn weight_two_span(rels: &[Element], other: &[Element], sig: &Signature) -> Result<(usize, bool)> {
    let basis = two_vertex_monomials(sig)?;
    let to_sparse = |e: &Element| -> linalg::SparseVec {
        coords(e, &basis).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    };
    let mut ech = linalg::Echelon::new();
    for r in rels {
        ech.insert(to_sparse(r));
    }
    let contained = other.iter().all(|o| ech.contains(&to_sparse(o)));
    Ok((ech.rank(), contained))
}

/// The pairing matrix is diagonal in the monomial basis; it is invertible iff
/// every diagonal entry is a unit.
pub fn pairing_is_nondegenerate(sig: &Signature) -> Result<bool> {
    let basis = two_vertex_monomials(sig)?;
    Ok(basis.iter().all(|m| pairing_sign(m).abs() == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::OrderSpec;
    use crate::signature::Mode;

    fn lie() -> Presentation {
        let s = Signature::new(vec![Generator::new("b", 2)], Mode::Shuffle).unwrap();
        let spec = OrderSpec::nonsymfree(&s, None).unwrap();
        Presentation::from_strings("lie", s, &["b(b(1,2),3) - b(b(1,3),2) - b(1,b(2,3))"], spec).unwrap()
    }

    #[test]
    fn signs() {
        let s = Signature::new(vec![Generator::new("b", 2)], Mode::Shuffle).unwrap();
        let sign = |x: &str| pairing_sign(&TreeMonomial::parse(x, &s).unwrap());
        assert_eq!(sign("b(b(1,2),3)"), 1);
        assert_eq!(sign("b(b(1,3),2)"), -1);
        assert_eq!(sign("b(1,b(2,3))"), -1);
    }

    #[test]
    fn lie_dual_is_commutative() {
        let p = lie();
        let d = dual_presentation(&p).unwrap();
        assert_eq!(d.name, "lie!");
        assert_eq!(d.signature.name_of(crate::signature::GenId(0)), "b*");
        assert_eq!(d.relations.len(), 2);
        let dd = dual_presentation(&d).unwrap();
        assert_eq!(dd.name, "lie");
        let (rank, contained) = weight_two_span(&dd.relations, &p.relations, &p.signature).unwrap();
        assert_eq!(rank, 1);
        assert!(contained);
    }

    #[test]
    fn lie_bounds() {
        let q = QuadraticData::new(&lie()).unwrap();
        assert_eq!(q.lt2.len(), 1);
        assert_eq!(q.lt2_complement().len(), 2);
        assert_eq!(q.dual_dim_upper_bound(6).unwrap(), vec![1, 1, 1, 1, 1, 1]);
        assert!(q.confirm_quadratic_by_sharp_bound(&[1, 1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn rejects_non_quadratic() {
        let s = Signature::new(vec![Generator::new("t", 3)], Mode::Shuffle).unwrap();
        let spec = OrderSpec::pathlex(&s, None).unwrap();
        let p = Presentation::new("t", s, vec![], spec).unwrap();
        assert!(matches!(dual_presentation(&p), Err(OperadError::NotBinaryQuadratic(_))));
    }
}

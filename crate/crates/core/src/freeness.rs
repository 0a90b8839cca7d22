//! Sufficient criteria for freeness read off a Gröbner basis.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{OperadError, Result};
use crate::groebner::{complete, GroebnerResult};
use crate::linalg::{Echelon, SparseVec};
use crate::presentation::Presentation;
use crate::series::{verify_module_decomposition, SeriesKind, Side};
use crate::signature::{GenId, Generator, Mode, Signature};
use crate::tree::{enumerate_monomials, is_prime, Flat, Slot, Tree, TreeMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeNsReport {
    pub holds: bool,
    /// Leading terms that are not prime.
    pub witnesses: Vec<String>,
}

/// Holds iff every leading term of the basis is prime.
pub fn check_free_nonsymmetric(r: &GroebnerResult) -> FreeNsReport {
    let witnesses: Vec<String> =
        r.leading_terms().iter().filter(|m| !is_prime(m)).map(|m| m.render(&r.signature)).collect();
    FreeNsReport { holds: witnesses.is_empty(), witnesses }
}

/// Prime normal monomials per arity; entry `k` holds arity `k` for `k <= n`.
pub fn nonsymmetric_generators(r: &GroebnerResult, n: u32) -> Result<Vec<Vec<TreeMonomial>>> {
    let report = check_free_nonsymmetric(r);
    if !report.holds {
        return Err(OperadError::Invalid(format!(
            "leading terms are not all prime: {}",
            report.witnesses.join(", ")
        )));
    }
    let table = r.normal_monomial_table(n)?;
    Ok(table
        .into_iter()
        .map(|ms| ms.into_iter().filter(|m| !m.is_unit() && is_prime(m)).collect())
        .collect())
}

/// Ids in `sig` of the generators named `names`.
pub fn ids_by_name(sig: &Signature, names: &[&str]) -> Result<Vec<GenId>> {
    names.iter().map(|n| sig.id_of(n)).collect()
}

fn uses_only(e: &Element, sub: &BTreeSet<GenId>) -> bool {
    e.monomials().all(|m| m.tree().generators().iter().all(|g| sub.contains(g)))
}

/// The relations of `p` rewritten over `q`'s signature, matching generators by name.
pub fn embed_relations(p: &Presentation, q: &Signature) -> Result<(Vec<Element>, Vec<GenId>)> {
    if p.mode() != q.mode() {
        return Err(OperadError::Incompatible("modes differ".into()));
    }
    let mut map = Vec::new();
    for g in p.signature.generators() {
        let id = q
            .id_of(&g.name)
            .map_err(|_| OperadError::Incompatible(format!("generator `{}` is missing from the larger signature", g.name)))?;
        if q.arity_of(id) != g.arity {
            return Err(OperadError::Incompatible(format!("generator `{}` changes arity", g.name)));
        }
        map.push(id);
    }
    let rels = p
        .relations
        .iter()
        .map(|r| {
            Element::from_terms(r.terms().map(|(m, c)| {
                let t = m.tree().map_generators(&|g| map[g.index()]);
                (TreeMonomial::canonicalize(t, q).expect("relabeled monomial"), c.clone())
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rels, map))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub holds: bool,
    /// Basis elements of the smaller operad absent from the larger basis.
    pub missing: Vec<String>,
    /// Extra leading terms built from the smaller generators only.
    pub witnesses: Vec<String>,
}

/// Completes `p` inside `rq`'s signature and order, then checks that `rq`'s basis
/// is that basis plus elements whose leading terms use a new generator.
pub fn check_embedding(p: &Presentation, rq: &GroebnerResult) -> Result<EmbeddingReport> {
    let (rels, map) = embed_relations(p, &rq.signature)?;
    let sub: BTreeSet<GenId> = map.into_iter().collect();
    let pq = Presentation::new(p.name.clone(), rq.signature.clone(), rels, rq.spec.clone())?;
    let bound = rq.complete_up_to.max(pq.max_relation_arity());
    let rp = complete(&pq, bound)?;
    let q_basis: BTreeSet<&Element> = rq.basis.iter().collect();
    let p_basis: BTreeSet<&Element> = rp.basis.iter().collect();
    let missing = rp.basis.iter().filter(|e| !q_basis.contains(e)).map(|e| e.render(&rq.signature, Some(&rq.spec))).collect::<Vec<_>>();
    let witnesses = rq
        .basis
        .iter()
        .filter(|e| !p_basis.contains(e))
        .map(|e| e.leading_monomial(&rq.spec).expect("nonzero"))
        .filter(|m| m.tree().generators().iter().all(|g| sub.contains(g)))
        .map(|m| m.render(&rq.signature))
        .collect::<Vec<_>>();
    Ok(EmbeddingReport { holds: missing.is_empty() && witnesses.is_empty(), missing, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub side: Side,
    pub holds: bool,
    /// Leading terms violating the root (left) or leaf-parent (right) condition.
    pub witnesses: Vec<String>,
    pub p_dims: Vec<usize>,
    /// Dimensions of the generating collection, unit included.
    pub k_dims: Vec<usize>,
    pub q_dims: Vec<usize>,
    /// Whether the generating functions compose to the dimensions of the whole operad.
    pub decomposition: bool,
}

fn leaf_parents(m: &TreeMonomial) -> Vec<GenId> {
    let flat = Flat::new(m.tree());
    flat.verts
        .iter()
        .filter(|v| v.slots.iter().any(|s| matches!(s, Slot::Leaf(_))))
        .map(|v| v.gen)
        .collect()
}

fn in_w(sub: &BTreeSet<GenId>) -> impl Fn(&GenId) -> bool + '_ {
    move |g| !sub.contains(g)
}

/// The module criteria. `sub` names the generators of the smaller operad inside `rq`.
pub fn check_module_free(rq: &GroebnerResult, sub: &[GenId], side: Side) -> Result<ModuleReport> {
    let sub: BTreeSet<GenId> = sub.iter().copied().collect();
    for g in &sub {
        rq.signature.generator(*g)?;
    }
    let w = in_w(&sub);
    let condition = |m: &TreeMonomial| -> bool {
        match side {
            Side::Left => m.root_generator().is_some_and(|g| w(&g)),
            Side::Right => leaf_parents(m).iter().all(&w),
        }
    };
    let witnesses: Vec<String> = rq
        .basis
        .iter()
        .filter(|e| !uses_only(e, &sub))
        .map(|e| e.leading_monomial(&rq.spec).expect("nonzero"))
        .filter(|m| !condition(m))
        .map(|m| m.render(&rq.signature))
        .collect();
    let n = rq.complete_up_to;
    let table = rq.normal_monomial_table(n)?;
    let mut p_dims = Vec::new();
    let mut k_dims = Vec::new();
    let mut q_dims = Vec::new();
    for ms in &table[1..] {
        q_dims.push(ms.len());
        p_dims.push(ms.iter().filter(|m| m.tree().generators().iter().all(|g| sub.contains(g))).count());
        k_dims.push(ms.iter().filter(|m| m.is_unit() || condition(m)).count());
    }
    let kind = match rq.signature.mode() {
        Mode::Shuffle => SeriesKind::Egf,
        Mode::Nonsymmetric => SeriesKind::Ogf,
    };
    let decomposition = verify_module_decomposition(&p_dims, &k_dims, &q_dims, kind, side)?;
    Ok(ModuleReport { side, holds: witnesses.is_empty(), witnesses, p_dims, k_dims, q_dims, decomposition })
}

pub fn check_left_module_free(rq: &GroebnerResult, sub: &[GenId]) -> Result<ModuleReport> {
    check_module_free(rq, sub, Side::Left)
}

pub fn check_right_module_free(rq: &GroebnerResult, sub: &[GenId]) -> Result<ModuleReport> {
    check_module_free(rq, sub, Side::Right)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallWitness {
    pub arity: u32,
    /// The undecorated shape, written with the generator `x`.
    pub shape: String,
    pub rank: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallReport {
    pub small: bool,
    pub witness: Option<SmallWitness>,
}

fn decorations(t: &Tree, gens: &[GenId]) -> Vec<Tree> {
    match t {
        Tree::Leaf(l) => vec![Tree::Leaf(*l)],
        Tree::Node(_, ch) => {
            let mut acc: Vec<Vec<Tree>> = vec![Vec::new()];
            for c in ch {
                let opts = decorations(c, gens);
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        opts.iter().map(move |o| {
                            let mut v = prefix.clone();
                            v.push(o.clone());
                            v
                        })
                    })
                    .collect();
            }
            gens.iter().flat_map(|g| acc.iter().map(move |ch| Tree::Node(*g, ch.clone()))).collect()
        }
    }
}

/// For every arity `3..=n` and every shape of the free operad on one binary
/// generator, decorates the vertices in all ways and checks that the normal
/// forms span the component.
pub fn check_small(r: &GroebnerResult, n: u32) -> Result<SmallReport> {
    if !r.signature.is_binary() {
        return Err(OperadError::NotBinaryQuadratic("smallness is checked for binary generators".into()));
    }
    let one = Signature::new(vec![Generator::new("x", 2)], r.signature.mode())?;
    let gens: Vec<GenId> = r.signature.ids().collect();
    let sys = r.rewrite_system();
    let table = r.normal_monomial_table(n)?;
    for arity in 3..=n {
        let basis: BTreeMap<&TreeMonomial, usize> =
            table[arity as usize].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        for shape in enumerate_monomials(&one, arity)? {
            let mut ech = Echelon::new();
            for t in decorations(shape.tree(), &gens) {
                let m = TreeMonomial::canonicalize(t, &r.signature)?;
                let nf = sys.normal_form(&Element::monomial(m));
                let v: SparseVec = nf.terms().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (basis[m], c.clone())).collect();
                ech.insert(v);
                if ech.rank() == dim {
                    break;
                }
            }
            if ech.rank() < dim {
                return Ok(SmallReport {
                    small: false,
                    witness: Some(SmallWitness { arity, shape: shape.render(&one), rank: ech.rank(), dim }),
                });
            }
        }
    }
    Ok(SmallReport { small: true, witness: None })
}

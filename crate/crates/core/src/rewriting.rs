//! Reduction modulo a set of relations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Coeff, Element};
use crate::error::{OperadError, Result};
use crate::ordering::{OrderSpec, SortKey};
use crate::tree::{Flat, SubtreeEmbedding, TreeMonomial};

/// Replaces the subtree of `host` at `e` by each term of `replacement`.
///
/// Leaf `i` of a replacement term receives the subtree hanging from the cut slot
/// with the `i`-th smallest descendant.
pub fn substitute(host: &TreeMonomial, e: &SubtreeEmbedding, replacement: &Element) -> Result<Element> {
    let flat = Flat::new(host.tree());
    flat.check(e)?;
    let cuts = flat.cuts(e);
    if let Some(a) = replacement.arity() {
        if a as usize != cuts.len() {
            return Err(OperadError::ArityMismatch(cuts.len() as u32, a));
        }
    }
    let hanging: Vec<_> = cuts.iter().map(|&(v, k, _)| flat.slot_tree(v, k)).collect();
    let root = e.vertices()[0];
    let mut out = Element::zero();
    for (m, c) in replacement.terms() {
        let sub = m.tree().graft_leaves(&hanging);
        let t = host.tree().replace_vertex(root, &sub);
        out.add_term(TreeMonomial::from_labelled(t), c.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    relations: Vec<Element>,
    leading: Vec<TreeMonomial>,
    spec: OrderSpec,
}

impl RewriteSystem {
    /// Makes every relation monic; zero relations are dropped.
    pub fn new(relations: Vec<Element>, spec: OrderSpec) -> Self {
        let mut rels = Vec::new();
        let mut leading = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let r = r.monic(&spec).expect("nonzero");
            leading.push(r.leading_monomial(&spec).expect("nonzero"));
            rels.push(r);
        }
        RewriteSystem { relations: rels, leading, spec }
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn leading_terms(&self) -> &[TreeMonomial] {
        &self.leading
    }

    pub fn spec(&self) -> &OrderSpec {
        &self.spec
    }

    /// First relation (in list order) whose leading term divides `m`, with the
    /// embedding rooted highest in preorder.
    pub fn find_reducer(&self, m: &TreeMonomial) -> Option<(usize, SubtreeEmbedding)> {
        if m.is_unit() {
            return None;
        }
        let flat = Flat::new(m.tree());
        for (i, lt) in self.leading.iter().enumerate() {
            if lt.arity() > m.arity() || lt.vertex_count() > flat.len() {
                continue;
            }
            let g = lt.root_generator();
            for v in 0..flat.len() {
                if Some(flat.verts[v].gen) != g {
                    continue;
                }
                if let Some(e) = flat.match_at(v, lt.tree()) {
                    return Some((i, e));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, m: &TreeMonomial) -> bool {
        self.find_reducer(m).is_none()
    }

    /// The residue of `f`: reduces the largest reducible monomial until none is left.
    pub fn normal_form(&self, f: &Element) -> Element {
        let mut work: BTreeMap<(SortKey, TreeMonomial), Coeff> = BTreeMap::new();
        for (m, c) in f.terms() {
            work.insert((self.spec.sort_key(m), m.clone()), c.clone());
        }
        let mut out = Element::zero();
        while let Some(((_, m), c)) = work.pop_last() {
            match self.find_reducer(&m) {
                None => out.add_term(m, c),
                Some((i, e)) => {
                    let lift = substitute(&m, &e, &self.relations[i]).expect("valid embedding");
                    for (t, x) in lift.terms() {
                        if *t == m {
                            continue;
                        }
                        let key = (self.spec.sort_key(t), t.clone());
                        let entry = work.entry(key).or_insert_with(Coeff::zero);
                        *entry -= &c * x;
                        if entry.is_zero() {
                            let key = (self.spec.sort_key(t), t.clone());
                            work.remove(&key);
                        }
                    }
                }
            }
        }
        out
    }

    /// All reduction steps available on the terms of `f`.
    pub fn reductions(&self, f: &Element) -> Vec<(TreeMonomial, usize, SubtreeEmbedding)> {
        let mut out = Vec::new();
        for m in f.monomials() {
            for (i, lt) in self.leading.iter().enumerate() {
                for e in crate::tree::find_embeddings(m, lt) {
                    out.push((m.clone(), i, e));
                }
            }
        }
        out
    }

    /// Reduces with an arbitrary strategy: `choose(k)` picks one of `k` available steps.
    pub fn normal_form_by(&self, f: &Element, choose: &mut dyn FnMut(usize) -> usize) -> Element {
        let mut cur = f.clone();
        loop {
            let options = self.reductions(&cur);
            if options.is_empty() {
                return cur;
            }
            let (m, i, e) = &options[choose(options.len()) % options.len()];
            let c = cur.coeff(m);
            let lift = substitute(m, e, &self.relations[*i]).expect("valid embedding");
            cur = Element::combine(&cur, &lift, &Coeff::from_integer(1.into()), &-c).expect("same arity");
        }
    }
}

/// Monic, mutually reduced relations sorted by leading term.
pub fn interreduce(relations: &[Element], spec: &OrderSpec) -> Vec<Element> {
    let mut g: Vec<Element> = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let r = r.monic(spec).expect("nonzero");
        if !g.contains(&r) {
            g.push(r);
        }
    }
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < g.len() {
            let others: Vec<Element> = g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
            let sys = RewriteSystem::new(others, spec.clone());
            let r = sys.normal_form(&g[i]);
            if r.is_zero() {
                g.remove(i);
                changed = true;
                continue;
            }
            let r = r.monic(spec).expect("nonzero");
            if r != g[i] {
                g[i] = r;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    g.sort_by_cached_key(|e| spec.sort_key(&e.leading_monomial(spec).expect("nonzero")));
    g
}

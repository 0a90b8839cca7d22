//! Overlaps, S-polynomials and completion truncated at an arity bound.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{OperadError, Result};
use crate::ordering::OrderSpec;
use crate::presentation::Presentation;
use crate::rewriting::{interreduce, substitute, RewriteSystem};
use crate::signature::{GenId, Mode, Signature};
use crate::tree::{divisor_at, enumerate_hereditary, Flat, SubtreeEmbedding, Tree, TreeMonomial};

/// A small common multiple: a monomial covered by two intersecting embeddings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overlap {
    pub gamma: TreeMonomial,
    pub first: SubtreeEmbedding,
    pub second: SubtreeEmbedding,
}

#[derive(Clone, Copy, Debug)]
enum SkSlot {
    Vertex(usize),
    Open,
}

#[derive(Clone, Debug)]
struct SkVertex {
    gen: GenId,
    slots: Vec<SkSlot>,
    in1: bool,
    in2: bool,
}

/// Planar skeleton of a candidate overlap before leaf labels are chosen.
#[derive(Clone, Debug)]
struct Skeleton {
    verts: Vec<SkVertex>,
    /// Cut slots of the two patterns with the pattern's leaf label.
    cut1: Vec<(usize, usize, u32)>,
    cut2: Vec<(usize, usize, u32)>,
}

impl Skeleton {
    fn from_pattern(t: &Tree) -> Self {
        let mut sk = Skeleton { verts: Vec::new(), cut1: Vec::new(), cut2: Vec::new() };
        sk.add(t, true);
        sk
    }

    /// Appends the vertices of `t`; returns the index of its root.
    fn add(&mut self, t: &Tree, first: bool) -> usize {
        let Tree::Node(g, ch) = t else { unreachable!("patterns have a root vertex") };
        let me = self.verts.len();
        self.verts.push(SkVertex { gen: *g, slots: Vec::new(), in1: first, in2: !first });
        let mut slots = Vec::with_capacity(ch.len());
        for (k, c) in ch.iter().enumerate() {
            match c {
                Tree::Leaf(l) => {
                    if first {
                        self.cut1.push((me, k, *l));
                    } else {
                        self.cut2.push((me, k, *l));
                    }
                    slots.push(SkSlot::Open);
                }
                Tree::Node(..) => slots.push(SkSlot::Vertex(self.add(c, first))),
            }
        }
        self.verts[me].slots = slots;
        me
    }

    /// Lays the second pattern over the skeleton with its root at vertex `u`.
    fn overlay(&mut self, u: usize, t: &Tree) -> bool {
        let Tree::Node(g, ch) = t else { return false };
        if self.verts[u].gen != *g || self.verts[u].slots.len() != ch.len() {
            return false;
        }
        self.verts[u].in2 = true;
        for (k, c) in ch.iter().enumerate() {
            match (self.verts[u].slots[k], c) {
                (_, Tree::Leaf(l)) => self.cut2.push((u, k, *l)),
                (SkSlot::Vertex(w), Tree::Node(..)) => {
                    if !self.overlay(w, c) {
                        return false;
                    }
                }
                (SkSlot::Open, Tree::Node(..)) => {
                    let w = self.add(c, false);
                    self.verts[u].slots[k] = SkSlot::Vertex(w);
                }
            }
        }
        true
    }

    /// Leaf masks per slot, open leaf positions in planar order, preorder numbering.
    fn layout(&self) -> (Vec<Vec<u64>>, usize, Vec<usize>) {
        let mut masks = vec![Vec::new(); self.verts.len()];
        let mut next = 0usize;
        let mut preorder = vec![0usize; self.verts.len()];
        let mut counter = 0usize;
        fn go(sk: &Skeleton, u: usize, masks: &mut [Vec<u64>], next: &mut usize, pre: &mut [usize], counter: &mut usize) -> u64 {
            pre[u] = *counter;
            *counter += 1;
            let mut total = 0;
            let mut ms = Vec::with_capacity(sk.verts[u].slots.len());
            for s in &sk.verts[u].slots {
                let m = match s {
                    SkSlot::Open => {
                        let m = 1u64 << *next;
                        *next += 1;
                        m
                    }
                    SkSlot::Vertex(w) => go(sk, *w, masks, next, pre, counter),
                };
                total |= m;
                ms.push(m);
            }
            masks[u] = ms;
            total
        }
        go(self, 0, &mut masks, &mut next, &mut preorder, &mut counter);
        (masks, next, preorder)
    }

    fn build(&self, u: usize, labels: &[u32], next: &mut usize) -> Tree {
        let v = &self.verts[u];
        let ch = v
            .slots
            .iter()
            .map(|s| match s {
                SkSlot::Open => {
                    let l = labels[*next];
                    *next += 1;
                    Tree::Leaf(l)
                }
                SkSlot::Vertex(w) => self.build(*w, labels, next),
            })
            .collect();
        Tree::Node(v.gen, ch)
    }
}

/// Precedence constraints `min(a) < min(b)` between disjoint leaf sets.
fn constraints(sk: &Skeleton, masks: &[Vec<u64>]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for ms in masks {
        for w in ms.windows(2) {
            out.push((w[0], w[1]));
        }
    }
    for cuts in [&sk.cut1, &sk.cut2] {
        let mut by_label: Vec<(u32, u64)> = cuts.iter().map(|&(u, k, l)| (l, masks[u][k])).collect();
        by_label.sort();
        for w in by_label.windows(2) {
            out.push((w[0].1, w[1].1));
        }
    }
    out
}

/// All bijections from open positions to labels satisfying the constraints.
fn labelings(n: usize, cons: &[(u64, u64)], mode: Mode) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if mode == Mode::Nonsymmetric {
        let labels: Vec<u32> = (1..=n as u32).collect();
        if satisfies(&labels, cons) {
            out.push(labels);
        }
        return out;
    }
    let mut labels = vec![0u32; n];
    fn go(label: u32, n: usize, used: u64, labels: &mut Vec<u32>, cons: &[(u64, u64)], out: &mut Vec<Vec<u32>>) {
        if label as usize > n {
            out.push(labels.clone());
            return;
        }
        for pos in 0..n {
            let bit = 1u64 << pos;
            if used & bit != 0 {
                continue;
            }
            // the first labeled position of a ∪ b must lie in a
            let ok = cons.iter().all(|&(a, b)| b & bit == 0 || (a | b) & used != 0);
            if !ok {
                continue;
            }
            labels[pos] = label;
            go(label + 1, n, used | bit, labels, cons, out);
        }
    }
    go(1, n, 0, &mut labels, cons, &mut out);
    out
}

fn satisfies(labels: &[u32], cons: &[(u64, u64)]) -> bool {
    let min = |m: u64| (0..labels.len()).filter(|i| m & (1 << i) != 0).map(|i| labels[i]).min().unwrap();
    cons.iter().all(|&(a, b)| min(a) < min(b))
}

/// All small common multiples of `t1` and `t2` with arity at most `max_arity`.
pub fn small_common_multiples(t1: &TreeMonomial, t2: &TreeMonomial, mode: Mode, max_arity: Option<u32>) -> Vec<Overlap> {
    let mut out = BTreeSet::new();
    if t1.is_unit() || t2.is_unit() {
        return Vec::new();
    }
    for swapped in [false, true] {
        let (a, b) = if swapped { (t2, t1) } else { (t1, t2) };
        let base = Skeleton::from_pattern(a.tree());
        for v in 0..base.verts.len() {
            let mut sk = base.clone();
            if !sk.overlay(v, b.tree()) {
                continue;
            }
            let (masks, n, preorder) = sk.layout();
            if n > 63 || max_arity.is_some_and(|m| n as u32 > m) {
                continue;
            }
            let cons = constraints(&sk, &masks);
            let e1: Vec<usize> = (0..sk.verts.len()).filter(|&u| sk.verts[u].in1).map(|u| preorder[u]).collect();
            let e2: Vec<usize> = (0..sk.verts.len()).filter(|&u| sk.verts[u].in2).map(|u| preorder[u]).collect();
            let (e1, e2) = (SubtreeEmbedding::new(e1), SubtreeEmbedding::new(e2));
            for labels in labelings(n, &cons, mode) {
                let tree = sk.build(0, &labels, &mut 0);
                let gamma = TreeMonomial::from_canonical(tree);
                debug_assert_eq!(divisor_at(&gamma, &e1).as_ref(), Ok(a));
                debug_assert_eq!(divisor_at(&gamma, &e2).as_ref(), Ok(b));
                let (first, second) = if swapped { (e2.clone(), e1.clone()) } else { (e1.clone(), e2.clone()) };
                out.insert(Overlap { gamma, first, second });
            }
        }
    }
    out.into_iter().collect()
}

/// Difference of the two liftings of the overlap monomial.
pub fn s_polynomial(g1: &Element, g2: &Element, overlap: &Overlap, spec: &OrderSpec) -> Result<Element> {
    let g1 = g1.monic(spec)?;
    let g2 = g2.monic(spec)?;
    for (g, e) in [(&g1, &overlap.first), (&g2, &overlap.second)] {
        let d = divisor_at(&overlap.gamma, e)?;
        if d != g.leading_monomial(spec)? {
            return Err(OperadError::BadEmbedding("overlap does not match the leading term".into()));
        }
    }
    let a = substitute(&overlap.gamma, &overlap.first, &g1)?;
    let b = substitute(&overlap.gamma, &overlap.second, &g2)?;
    a.sub(&b)
}

#[derive(Clone, Debug, Default)]
pub struct CompletionOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    pub signature: Signature,
    pub basis: Vec<Element>,
    pub spec: OrderSpec,
    pub complete_up_to: u32,
    pub is_quadratic: bool,
}

pub fn complete(p: &Presentation, max_arity: u32) -> Result<GroebnerResult> {
    complete_with(p, max_arity, &CompletionOptions::default())
}

pub fn complete_with(p: &Presentation, max_arity: u32, opts: &CompletionOptions) -> Result<GroebnerResult> {
    match opts.threads {
        None => run_completion(p, max_arity),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| OperadError::Invalid(e.to_string()))?;
            pool.install(|| run_completion(p, max_arity))
        }
    }
}

fn run_completion(p: &Presentation, max_arity: u32) -> Result<GroebnerResult> {
    if max_arity < p.max_relation_arity() {
        return Err(OperadError::Invalid(format!(
            "arity bound {max_arity} is below the largest relation arity {}",
            p.max_relation_arity()
        )));
    }
    let spec = &p.order;
    let mode = p.mode();
    let mut basis = interreduce(&p.relations, spec);
    let mut ids: HashMap<Element, usize> = HashMap::new();
    let mut checked: HashSet<(usize, usize)> = HashSet::new();
    loop {
        let id_of: Vec<usize> = basis
            .iter()
            .map(|e| {
                let n = ids.len();
                *ids.entry(e.clone()).or_insert(n)
            })
            .collect();
        let mut pairs = Vec::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let key = (id_of[i].min(id_of[j]), id_of[i].max(id_of[j]));
                if checked.insert(key) {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            break;
        }
        let sys = RewriteSystem::new(basis.clone(), spec.clone());
        let lts = sys.leading_terms().to_vec();
        let residues: Vec<Element> = pairs
            .par_iter()
            .flat_map_iter(|&(i, j)| {
                let mut found = Vec::new();
                for o in small_common_multiples(&lts[i], &lts[j], mode, Some(max_arity)) {
                    if i == j && o.first == o.second {
                        continue;
                    }
                    let s = s_polynomial(&basis[i], &basis[j], &o, spec).expect("overlap of leading terms");
                    let r = sys.normal_form(&s);
                    if !r.is_zero() {
                        found.push(r.monic(spec).expect("nonzero"));
                    }
                }
                found
            })
            .collect();
        if residues.is_empty() {
            continue;
        }
        let mut residues = residues;
        residues.sort_by_cached_key(|e| (spec.sort_key(&e.leading_monomial(spec).unwrap()), e.clone()));
        residues.dedup();
        basis.extend(residues);
        basis = interreduce(&basis, spec);
    }
    let quadratic_input = !p.relations.is_empty() && p.relations.iter().all(Element::is_quadratic);
    let quadratic_basis = basis.iter().all(Element::is_quadratic);
    let mut closure = 0;
    if quadratic_input && quadratic_basis {
        let lts: Vec<TreeMonomial> = basis.iter().map(|e| e.leading_monomial(spec).unwrap()).collect();
        for a in &lts {
            for b in &lts {
                for o in small_common_multiples(a, b, mode, None) {
                    closure = closure.max(o.gamma.arity());
                }
            }
        }
    }
    Ok(GroebnerResult {
        signature: p.signature.clone(),
        basis,
        spec: spec.clone(),
        complete_up_to: max_arity,
        is_quadratic: quadratic_input && quadratic_basis && closure <= max_arity,
    })
}

impl GroebnerResult {
    pub fn leading_terms(&self) -> Vec<TreeMonomial> {
        self.basis.iter().map(|e| e.leading_monomial(&self.spec).unwrap()).collect()
    }

    pub fn rewrite_system(&self) -> RewriteSystem {
        RewriteSystem::new(self.basis.clone(), self.spec.clone())
    }

    fn check_bound(&self, n: u32) -> Result<()> {
        if n > self.complete_up_to {
            return Err(OperadError::BeyondBound { requested: n, bound: self.complete_up_to });
        }
        Ok(())
    }

    /// Normal monomials of arities `1..=n`; entry `k` holds arity `k`.
    pub fn normal_monomial_table(&self, n: u32) -> Result<Vec<Vec<TreeMonomial>>> {
        self.check_bound(n)?;
        normal_table(&self.signature, &self.leading_terms(), n)
    }

    pub fn normal_monomials(&self, n: u32) -> Result<Vec<TreeMonomial>> {
        let mut t = self.normal_monomial_table(n)?;
        let mut v = t.pop().unwrap_or_default();
        v.sort_by_cached_key(|m| self.spec.sort_key(m));
        Ok(v)
    }

    /// Dimensions of the components of arities `1..=n`.
    pub fn hilbert_dims(&self, n: u32) -> Result<Vec<usize>> {
        let t = self.normal_monomial_table(n)?;
        Ok(t[1..].iter().map(Vec::len).collect())
    }

    /// True iff the normal-monomial counts equal `known` (arities 1, 2, ...).
    pub fn certify_by_dimensions(&self, known: &[usize]) -> Result<bool> {
        if known.is_empty() {
            return Ok(true);
        }
        Ok(self.hilbert_dims(known.len() as u32)? == known)
    }

    pub fn report(&self) -> GroebnerReport {
        let sig = &self.signature;
        GroebnerReport {
            complete_up_to: self.complete_up_to,
            is_quadratic: self.is_quadratic,
            basis: self.basis.iter().map(|e| e.render(sig, Some(&self.spec))).collect(),
            leading_terms: self.leading_terms().iter().map(|m| m.render(sig)).collect(),
            generator_order: self.spec.generator_order().iter().map(|g| sig.name_of(*g).to_string()).collect(),
            dims: self.hilbert_dims(self.complete_up_to).unwrap_or_default(),
        }
    }
}

/// Monomials of arity ≤ n not divisible by any of `lts`.
pub fn normal_table(sig: &Signature, lts: &[TreeMonomial], n: u32) -> Result<Vec<Vec<TreeMonomial>>> {
    let accept = |m: &TreeMonomial| {
        let flat = Flat::new(m.tree());
        !lts.iter().any(|lt| lt.arity() <= m.arity() && flat.match_at(0, lt.tree()).is_some())
    };
    enumerate_hereditary(sig, n, &accept)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroebnerReport {
    pub complete_up_to: u32,
    pub is_quadratic: bool,
    pub generator_order: Vec<String>,
    pub basis: Vec<String>,
    pub leading_terms: Vec<String>,
    pub dims: Vec<usize>,
}

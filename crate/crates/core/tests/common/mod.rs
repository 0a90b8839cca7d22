#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use operad_core::algebra::{rat, Coeff, Element};
use operad_core::linalg::{Echelon, SparseVec};
use operad_core::ordering::OrderSpec;
use operad_core::presentation::Presentation;
use operad_core::signature::{GenId, Mode, Signature};
use operad_core::tree::{block_partitions, compose, enumerate_monomials, Tree, TreeMonomial};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Monomials of arities `0..=n` (entry 0 empty, entry 1 the unit).
pub fn monomial_table(sig: &Signature, n: u32) -> Vec<Vec<TreeMonomial>> {
    let mut t = vec![Vec::new(), vec![TreeMonomial::unit()]];
    for k in 2..=n {
        t.push(enumerate_monomials(sig, k).unwrap());
    }
    t
}

fn compose_elem(outer: &Element, inners: &[Element], blocks: &[Vec<u32>], mode: Mode) -> Element {
    let mut acc: Vec<(Coeff, Vec<TreeMonomial>)> = vec![(rat(1), Vec::new())];
    for e in inners {
        let mut next = Vec::new();
        for (c, ms) in &acc {
            for (m, x) in e.terms() {
                let mut v = ms.clone();
                v.push(m.clone());
                next.push((c * x, v));
            }
        }
        acc = next;
    }
    let mut out = Element::zero();
    for (o, x) in outer.terms() {
        for (c, ms) in &acc {
            out.add_term(compose(o, ms, blocks, mode).unwrap(), x * c);
        }
    }
    out
}

/// Dimensions of `F(n) / I(n)` for `n = 1..=max`, where `I` is spanned by all
/// shuffle compositions involving a relation. Uses no reduction or basis code.
pub fn quotient_dims(p: &Presentation, max: u32) -> Vec<usize> {
    let sig = &p.signature;
    let mode = sig.mode();
    let table = monomial_table(sig, max);
    let index: Vec<BTreeMap<TreeMonomial, usize>> =
        table.iter().map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let to_vec = |e: &Element, n: usize| -> SparseVec { e.terms().map(|(m, c)| (index[n][m], c.clone())).collect() };
    let mut ideal: Vec<Vec<Element>> = vec![Vec::new(); max as usize + 1];
    let mut ech: Vec<Echelon> = vec![Echelon::new(); max as usize + 1];
    let add = |e: Element, ideal: &mut Vec<Vec<Element>>, ech: &mut Vec<Echelon>| {
        if e.is_zero() {
            return;
        }
        let n = e.arity().unwrap() as usize;
        if n > max as usize {
            return;
        }
        if ech[n].insert(to_vec(&e, n)) {
            ideal[n].push(e);
        }
    };
    for r in &p.relations {
        add(r.clone(), &mut ideal, &mut ech);
    }
    for n in 2..=max as usize {
        for k in 1..n {
            let xs = ideal[k].clone();
            for x in &xs {
                // graft monomials onto the leaves of x
                for blocks in block_partitions(n as u32, k as u32, mode) {
                    let choices: Vec<&Vec<TreeMonomial>> = blocks.iter().map(|b| &table[b.len()]).collect();
                    for pick in cartesian(&choices) {
                        let inners: Vec<Element> = pick.into_iter().map(|m| Element::monomial(m.clone())).collect();
                        add(compose_elem(x, &inners, &blocks, mode), &mut ideal, &mut ech);
                    }
                }
                // put x under a new root
                for g in sig.ids() {
                    let a = sig.arity_of(g) as usize;
                    if k + a - 1 != n {
                        continue;
                    }
                    let corolla = Element::monomial(TreeMonomial::corolla(sig, g).unwrap());
                    for pos in 0..a {
                        for blocks in block_partitions(n as u32, a as u32, mode) {
                            let ok = blocks.iter().enumerate().all(|(i, b)| b.len() == if i == pos { k } else { 1 });
                            if !ok {
                                continue;
                            }
                            let inners: Vec<Element> = (0..a)
                                .map(|i| if i == pos { x.clone() } else { Element::monomial(TreeMonomial::unit()) })
                                .collect();
                            add(compose_elem(&corolla, &inners, &blocks, mode), &mut ideal, &mut ech);
                        }
                    }
                }
            }
        }
    }
    (1..=max as usize).map(|n| table[n].len() - ech[n].rank()).collect()
}

fn cartesian<'a, T>(choices: &[&'a Vec<T>]) -> Vec<Vec<&'a T>> {
    let mut acc: Vec<Vec<&T>> = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &acc {
            for x in c.iter() {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Preorder parents of the internal vertices (`None` for the root).
fn parents(t: &Tree) -> Vec<Option<usize>> {
    fn walk(t: &Tree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        if let Tree::Node(_, ch) = t {
            let me = out.len();
            out.push(parent);
            for c in ch {
                walk(c, Some(me), out);
            }
        }
    }
    let mut out = Vec::new();
    walk(t, None, &mut out);
    out
}

/// The pattern occupying the connected vertex set `s` of `host`.
fn extract(host: &TreeMonomial, s: &BTreeSet<usize>, sig: &Signature) -> TreeMonomial {
    enum Raw {
        Hole(u32),
        Node(GenId, Vec<Raw>),
    }
    fn walk(t: &Tree, counter: &mut usize, s: &BTreeSet<usize>) -> Option<Raw> {
        match t {
            Tree::Leaf(_) => None,
            Tree::Node(g, ch) => {
                let me = *counter;
                *counter += 1;
                let inside = s.contains(&me);
                let mut kids = Vec::new();
                let mut found = None;
                for c in ch {
                    let before = *counter;
                    let r = walk(c, counter, s);
                    if inside {
                        kids.push(match r {
                            Some(raw @ Raw::Node(..)) if s.contains(&before) => raw,
                            _ => Raw::Hole(c.min_leaf()),
                        });
                    } else if r.is_some() {
                        found = r;
                    }
                }
                if inside {
                    Some(Raw::Node(*g, kids))
                } else {
                    found
                }
            }
        }
    }
    fn holes(r: &Raw, out: &mut Vec<u32>) {
        match r {
            Raw::Hole(x) => out.push(*x),
            Raw::Node(_, ch) => ch.iter().for_each(|c| holes(c, out)),
        }
    }
    fn build(r: &Raw, rank: &BTreeMap<u32, u32>) -> Tree {
        match r {
            Raw::Hole(x) => Tree::Leaf(rank[x]),
            Raw::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| build(c, rank)).collect()),
        }
    }
    let raw = walk(host.tree(), &mut 0, s).expect("nonempty");
    let mut hs = Vec::new();
    holes(&raw, &mut hs);
    hs.sort();
    let rank: BTreeMap<u32, u32> = hs.iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect();
    TreeMonomial::canonicalize(build(&raw, &rank), sig).expect("extracted divisor is canonical")
}

/// Every connected vertex set of `host` whose pattern equals `pattern`.
pub fn brute_force_embeddings(host: &TreeMonomial, pattern: &TreeMonomial, sig: &Signature) -> Vec<Vec<usize>> {
    let par = parents(host.tree());
    let v = par.len();
    let mut out = Vec::new();
    if pattern.is_unit() {
        return out;
    }
    for mask in 1u32..(1 << v) {
        let s: BTreeSet<usize> = (0..v).filter(|i| mask & (1 << i) != 0).collect();
        let tops = s.iter().filter(|&&i| par[i].is_none_or(|p| !s.contains(&p))).count();
        if tops != 1 {
            continue;
        }
        if extract(host, &s, sig) == *pattern {
            out.push(s.into_iter().collect());
        }
    }
    out.sort();
    out
}

/// Every connected vertex set of `host`, grouped by the pattern it carries.
pub fn all_divisors(host: &TreeMonomial, sig: &Signature) -> BTreeMap<TreeMonomial, Vec<Vec<usize>>> {
    let par = parents(host.tree());
    let v = par.len();
    let mut out: BTreeMap<TreeMonomial, Vec<Vec<usize>>> = BTreeMap::new();
    for mask in 1u32..(1 << v) {
        let s: BTreeSet<usize> = (0..v).filter(|i| mask & (1 << i) != 0).collect();
        let tops = s.iter().filter(|&&i| par[i].is_none_or(|p| !s.contains(&p))).count();
        if tops == 1 {
            out.entry(extract(host, &s, sig)).or_default().push(s.into_iter().collect());
        }
    }
    out.values_mut().for_each(|x| x.sort());
    out
}

/// A random context `C` and a check that `a < b` implies `C[a] < C[b]`.
pub struct Contexts {
    pub sig: Signature,
    pub table: Vec<Vec<TreeMonomial>>,
}

impl Contexts {
    pub fn new(sig: Signature, max: u32) -> Self {
        let table = monomial_table(&sig, max);
        Contexts { sig, table }
    }

    pub fn random(&self, rng: &mut StdRng, lo: usize, hi: usize) -> TreeMonomial {
        let k = rng.gen_range(lo..=hi);
        self.table[k].choose(rng).unwrap().clone()
    }

    fn random_blocks(&self, rng: &mut StdRng, sizes: &[usize]) -> Vec<Vec<u32>> {
        let n: usize = sizes.iter().sum();
        let fits: Vec<Vec<Vec<u32>>> = block_partitions(n as u32, sizes.len() as u32, self.sig.mode())
            .into_iter()
            .filter(|b| b.iter().zip(sizes).all(|(x, &s)| x.len() == s))
            .collect();
        fits.choose(rng).expect("some partition fits").clone()
    }

    /// Applies the same random context to `a` and `b`.
    pub fn apply(&self, rng: &mut StdRng, a: &TreeMonomial, b: &TreeMonomial) -> (TreeMonomial, TreeMonomial) {
        let mode = self.sig.mode();
        if rng.gen_bool(0.5) {
            let outer = self.random(rng, 2, 3);
            let pos = rng.gen_range(0..outer.arity() as usize);
            let others: Vec<TreeMonomial> = (0..outer.arity()).map(|_| self.random(rng, 1, 2)).collect();
            let sizes: Vec<usize> = (0..outer.arity() as usize)
                .map(|i| if i == pos { a.arity() as usize } else { others[i].arity() as usize })
                .collect();
            let blocks = self.random_blocks(rng, &sizes);
            let with = |x: &TreeMonomial| {
                let inners: Vec<TreeMonomial> =
                    (0..outer.arity() as usize).map(|i| if i == pos { x.clone() } else { others[i].clone() }).collect();
                compose(&outer, &inners, &blocks, mode).unwrap()
            };
            (with(a), with(b))
        } else {
            let inners: Vec<TreeMonomial> = (0..a.arity()).map(|_| self.random(rng, 1, 2)).collect();
            let sizes: Vec<usize> = inners.iter().map(|m| m.arity() as usize).collect();
            let blocks = self.random_blocks(rng, &sizes);
            (compose(a, &inners, &blocks, mode).unwrap(), compose(b, &inners, &blocks, mode).unwrap())
        }
    }

    /// Number of contexts among `count` that break admissibility.
    pub fn violations(&self, spec: &OrderSpec, rng: &mut StdRng, count: usize) -> usize {
        let mut bad = 0;
        for _ in 0..count {
            let k = rng.gen_range(2..=3);
            let a = self.table[k].choose(rng).unwrap().clone();
            let b = self.table[k].choose(rng).unwrap().clone();
            let before = spec.compare(&a, &b);
            let (ca, cb) = self.apply(rng, &a, &b);
            let after = spec.compare(&ca, &cb);
            if before != after || (before == Ordering::Equal) != (a == b) {
                bad += 1;
            }
        }
        bad
    }
}

/// A random element of arity `n` with up to `terms` terms and small coefficients.
pub fn random_element(rng: &mut StdRng, table: &[Vec<TreeMonomial>], n: usize, terms: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = table[n].choose(rng).unwrap().clone();
        let c = rng.gen_range(-3i64..=3);
        e.add_term(m, rat(c));
    }
    e
}

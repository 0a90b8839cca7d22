//! Tree monomials of the free shuffle (or nonsymmetric) operad.
//!
//! A [`TreeMonomial`] is stored as its canonical planar representative: the
//! children of every vertex are sorted by their minimal leaf label. Vertices
//! are addressed by their preorder index, which is what [`SubtreeEmbedding`]
//! records.

use std::fmt;

use crate::error::{OperadError, Result};
use crate::parse;
use crate::signature::{GenId, Mode, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(u32),
    Node(GenId, Vec<Tree>),
}

impl Tree {
    pub fn node(g: GenId, children: Vec<Tree>) -> Tree {
        Tree::Node(g, children)
    }

    pub fn min_leaf(&self) -> u32 {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(_, ch) => ch.iter().map(Tree::min_leaf).min().unwrap_or(u32::MAX),
        }
    }

    /// Leaf labels in left-to-right planar order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, ch) => 1 + ch.iter().map(Tree::vertex_count).sum::<usize>(),
        }
    }

    pub fn root_generator(&self) -> Option<GenId> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(g, _) => Some(*g),
        }
    }

    pub fn relabel(&self, f: &dyn Fn(u32) -> u32) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    pub fn map_generators(&self, f: &dyn Fn(GenId) -> GenId) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(g, ch) => Tree::Node(f(*g), ch.iter().map(|c| c.map_generators(f)).collect()),
        }
    }

    /// Generators in preorder.
    pub fn generators(&self) -> Vec<GenId> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<GenId>) {
        if let Tree::Node(g, ch) = self {
            out.push(*g);
            ch.iter().for_each(|c| c.collect_generators(out));
        }
    }

    /// Replaces every leaf `i` by `subs[i - 1]`.
    pub(crate) fn graft_leaves(&self, subs: &[Tree]) -> Tree {
        match self {
            Tree::Leaf(l) => subs[*l as usize - 1].clone(),
            Tree::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| c.graft_leaves(subs)).collect()),
        }
    }

    /// Replaces the subtree rooted at preorder vertex `target`.
    pub(crate) fn replace_vertex(&self, target: usize, new: &Tree) -> Tree {
        let mut counter = 0;
        self.replace_rec(target, new, &mut counter)
    }

    fn replace_rec(&self, target: usize, new: &Tree, counter: &mut usize) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(g, ch) => {
                let me = *counter;
                *counter += 1;
                if me == target {
                    *counter += self.vertex_count() - 1;
                    return new.clone();
                }
                Tree::Node(*g, ch.iter().map(|c| c.replace_rec(target, new, counter)).collect())
            }
        }
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut s = String::new();
        self.render_into(sig, &mut s);
        s
    }

    fn render_into(&self, sig: &Signature, out: &mut String) {
        match self {
            Tree::Leaf(l) => out.push_str(&l.to_string()),
            Tree::Node(g, ch) => {
                match sig.generators().get(g.index()) {
                    Some(gen) => out.push_str(&gen.name),
                    None => out.push_str(&format!("#{}", g.0)),
                }
                out.push('(');
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.render_into(sig, out);
                }
                out.push(')');
            }
        }
    }
}

/// Sorts children by minimal leaf, recursively. Returns the tree and its minimal leaf.
fn canon(t: Tree) -> (Tree, u32) {
    match t {
        Tree::Leaf(l) => (Tree::Leaf(l), l),
        Tree::Node(g, ch) => {
            let mut ch: Vec<(Tree, u32)> = ch.into_iter().map(canon).collect();
            ch.sort_by_key(|c| c.1);
            let min = ch.first().map(|c| c.1).unwrap_or(u32::MAX);
            (Tree::Node(g, ch.into_iter().map(|c| c.0).collect()), min)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeMonomial {
    tree: Tree,
    arity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSequence {
    /// `words[i]` is the root-to-leaf word of leaf `i + 1`.
    pub words: Vec<Vec<GenId>>,
    /// Leaf labels read left to right.
    pub permutation: Vec<u32>,
}

impl TreeMonomial {
    /// The degenerate arity-1 tree.
    pub fn unit() -> Self {
        TreeMonomial { tree: Tree::Leaf(1), arity: 1 }
    }

    pub fn corolla(sig: &Signature, g: GenId) -> Result<Self> {
        let k = sig.generator(g)?.arity;
        Ok(TreeMonomial { tree: Tree::Node(g, (1..=k).map(Tree::Leaf).collect()), arity: k })
    }

    /// Validates a raw tree against `sig` and returns its canonical representative.
    pub fn canonicalize(raw: Tree, sig: &Signature) -> Result<Self> {
        check_shape(&raw, sig)?;
        let leaves = raw.leaves();
        let n = leaves.len() as u32;
        let mut seen = vec![false; leaves.len()];
        for &l in &leaves {
            if l == 0 || l > n || seen[l as usize - 1] {
                return Err(OperadError::BadLeafLabels { arity: n, found: leaves.clone() });
            }
            seen[l as usize - 1] = true;
        }
        if sig.mode() == Mode::Nonsymmetric && leaves.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
            return Err(OperadError::NotPlanar(leaves));
        }
        Ok(TreeMonomial { tree: canon(raw).0, arity: n })
    }

    pub fn parse(s: &str, sig: &Signature) -> Result<Self> {
        let raw = parse::parse_tree(s, sig)?;
        Self::canonicalize(raw, sig)
    }

    /// Wraps a tree already known to be canonical with labels 1..n.
    pub(crate) fn from_canonical(tree: Tree) -> Self {
        let arity = tree.leaves().len() as u32;
        debug_assert_eq!(canon(tree.clone()).0, tree);
        TreeMonomial { tree, arity }
    }

    /// Canonicalizes a tree whose labels are known to be a permutation of 1..n.
    pub(crate) fn from_labelled(tree: Tree) -> Self {
        let arity = tree.leaves().len() as u32;
        TreeMonomial { tree: canon(tree).0, arity }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.tree, Tree::Leaf(_))
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    pub fn root_generator(&self) -> Option<GenId> {
        self.tree.root_generator()
    }

    pub fn path_sequence(&self) -> PathSequence {
        let mut words = vec![Vec::new(); self.arity as usize];
        let mut permutation = Vec::with_capacity(self.arity as usize);
        let mut stack = Vec::new();
        fn walk(t: &Tree, stack: &mut Vec<GenId>, words: &mut [Vec<GenId>], perm: &mut Vec<u32>) {
            match t {
                Tree::Leaf(l) => {
                    words[*l as usize - 1] = stack.clone();
                    perm.push(*l);
                }
                Tree::Node(g, ch) => {
                    stack.push(*g);
                    for c in ch {
                        walk(c, stack, words, perm);
                    }
                    stack.pop();
                }
            }
        }
        walk(&self.tree, &mut stack, &mut words, &mut permutation);
        PathSequence { words, permutation }
    }

    pub fn render(&self, sig: &Signature) -> String {
        self.tree.render(sig)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> DisplayMonomial<'a> {
        DisplayMonomial { m: self, sig }
    }
}

pub struct DisplayMonomial<'a> {
    m: &'a TreeMonomial,
    sig: &'a Signature,
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.m.render(self.sig))
    }
}

fn check_shape(t: &Tree, sig: &Signature) -> Result<()> {
    match t {
        Tree::Leaf(_) => Ok(()),
        Tree::Node(g, ch) => {
            let gen = sig.generator(*g)?;
            if gen.arity as usize != ch.len() {
                return Err(OperadError::ChildCountMismatch {
                    name: gen.name.clone(),
                    expected: gen.arity as usize,
                    found: ch.len(),
                });
            }
            ch.iter().try_for_each(|c| check_shape(c, sig))
        }
    }
}

/// Shuffle composition: leaf `i` of `outer` receives `inners[i-1]`, whose leaf `j`
/// becomes `blocks[i-1][j-1]`.
///
/// Blocks must partition `1..=n`, be sorted, and have increasing minima; in
/// nonsymmetric mode they must be consecutive intervals.
pub fn compose(outer: &TreeMonomial, inners: &[TreeMonomial], blocks: &[Vec<u32>], mode: Mode) -> Result<TreeMonomial> {
    let k = outer.arity as usize;
    if inners.len() != k || blocks.len() != k {
        return Err(OperadError::BadComposition(format!(
            "outer arity {k} but {} inner trees and {} blocks",
            inners.len(),
            blocks.len()
        )));
    }
    let n: u32 = inners.iter().map(|m| m.arity).sum();
    let mut seen = vec![false; n as usize];
    let mut prev_min = 0;
    let mut next_start = 1;
    for (i, (block, inner)) in blocks.iter().zip(inners).enumerate() {
        if block.len() != inner.arity as usize {
            return Err(OperadError::BadComposition(format!(
                "block {} has size {} but inner tree has arity {}",
                i + 1,
                block.len(),
                inner.arity
            )));
        }
        if block.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OperadError::BadComposition(format!("block {} is not increasing", i + 1)));
        }
        for &x in block {
            if x == 0 || x > n || seen[x as usize - 1] {
                return Err(OperadError::BadComposition(format!("blocks do not partition 1..={n}")));
            }
            seen[x as usize - 1] = true;
        }
        if block[0] <= prev_min {
            return Err(OperadError::BadComposition("block minima must increase (shuffle condition)".into()));
        }
        prev_min = block[0];
        if mode == Mode::Nonsymmetric {
            if block[0] != next_start || block[block.len() - 1] != next_start + block.len() as u32 - 1 {
                return Err(OperadError::BadComposition(
                    "nonsymmetric composition needs consecutive intervals".into(),
                ));
            }
            next_start += block.len() as u32;
        }
    }
    let subs: Vec<Tree> = inners
        .iter()
        .zip(blocks)
        .map(|(m, b)| m.tree.relabel(&|j| b[j as usize - 1]))
        .collect();
    Ok(TreeMonomial::from_labelled(outer.tree.graft_leaves(&subs)))
}

/// All canonical monomials of arity `n`.
pub fn enumerate_monomials(sig: &Signature, n: u32) -> Result<Vec<TreeMonomial>> {
    let mut table = enumerate_hereditary(sig, n, &|_| true)?;
    Ok(table.pop().unwrap_or_default())
}

/// Enumerates monomials of arities `1..=max_arity` built from accepted pieces.
///
/// A tree is kept when all its child subtrees were kept (after relabeling) and
/// `accept` holds for it. Entry `n` of the result holds arity `n`; entry 0 is empty.
pub fn enumerate_hereditary(
    sig: &Signature,
    max_arity: u32,
    accept: &(dyn Fn(&TreeMonomial) -> bool + Sync),
) -> Result<Vec<Vec<TreeMonomial>>> {
    if max_arity == 0 {
        return Err(OperadError::Invalid("arity must be at least 1".into()));
    }
    if sig.has_unary() && max_arity >= 1 {
        return Err(OperadError::InfiniteComponent(max_arity));
    }
    let mut table: Vec<Vec<TreeMonomial>> = vec![Vec::new(), vec![TreeMonomial::unit()]];
    for n in 2..=max_arity {
        let mut level = Vec::new();
        for g in sig.ids() {
            let k = sig.arity_of(g);
            if k > n {
                continue;
            }
            for blocks in block_partitions(n, k, sig.mode()) {
                let options: Vec<Vec<Tree>> = blocks
                    .iter()
                    .map(|b| {
                        table[b.len()]
                            .iter()
                            .map(|m| m.tree.relabel(&|j| b[j as usize - 1]))
                            .collect()
                    })
                    .collect();
                let mut choice = Vec::with_capacity(k as usize);
                product(&options, &mut choice, &mut |children| {
                    let m = TreeMonomial { tree: Tree::Node(g, children.to_vec()), arity: n };
                    if accept(&m) {
                        level.push(m);
                    }
                });
            }
        }
        table.push(level);
    }
    Ok(table)
}

fn product(options: &[Vec<Tree>], choice: &mut Vec<Tree>, emit: &mut dyn FnMut(&[Tree])) {
    if choice.len() == options.len() {
        emit(choice);
        return;
    }
    for t in &options[choice.len()] {
        choice.push(t.clone());
        product(options, choice, emit);
        choice.pop();
    }
}

/// Partitions of `1..=n` into `k` nonempty blocks ordered by minimum (shuffle)
/// or into `k` consecutive intervals (nonsymmetric).
pub fn block_partitions(n: u32, k: u32, mode: Mode) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    match mode {
        Mode::Nonsymmetric => {
            let mut sizes = Vec::new();
            compositions(n, k, &mut sizes, &mut |sizes| {
                let mut start = 1;
                let blocks = sizes
                    .iter()
                    .map(|&s| {
                        let b: Vec<u32> = (start..start + s).collect();
                        start += s;
                        b
                    })
                    .collect();
                out.push(blocks);
            });
        }
        Mode::Shuffle => {
            let mut rgs = Vec::with_capacity(n as usize);
            growth_strings(n, k, &mut rgs, 0, &mut |rgs| {
                let mut blocks = vec![Vec::new(); k as usize];
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b as usize].push(i as u32 + 1);
                }
                out.push(blocks);
            });
        }
    }
    out
}

fn compositions(n: u32, k: u32, sizes: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if sizes.len() as u32 == k - 1 {
        let used: u32 = sizes.iter().sum();
        if n > used {
            sizes.push(n - used);
            emit(sizes);
            sizes.pop();
        }
        return;
    }
    let used: u32 = sizes.iter().sum();
    let left = k - sizes.len() as u32;
    for s in 1..=(n - used).saturating_sub(left - 1) {
        sizes.push(s);
        compositions(n, k, sizes, emit);
        sizes.pop();
    }
}

fn growth_strings(n: u32, k: u32, rgs: &mut Vec<u32>, used: u32, emit: &mut dyn FnMut(&[u32])) {
    let pos = rgs.len() as u32;
    if pos == n {
        if used == k {
            emit(rgs);
        }
        return;
    }
    if k - used > n - pos {
        return;
    }
    let top = if used < k { used } else { k - 1 };
    for b in 0..=top {
        rgs.push(b);
        growth_strings(n, k, rgs, if b == used { used + 1 } else { used }, emit);
        rgs.pop();
    }
}

/// A connected rooted set of internal vertices, given by sorted preorder indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtreeEmbedding {
    vertices: Vec<usize>,
}

impl SubtreeEmbedding {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        SubtreeEmbedding { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn root(&self) -> Option<usize> {
        self.vertices.first().copied()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Vertex(usize),
    Leaf(u32),
}

pub(crate) struct FlatVertex<'a> {
    pub gen: GenId,
    pub parent: Option<usize>,
    pub slots: Vec<Slot>,
    pub slot_min: Vec<u32>,
    pub node: &'a Tree,
}

/// Preorder vertex table of a tree.
pub(crate) struct Flat<'a> {
    pub verts: Vec<FlatVertex<'a>>,
}

impl<'a> Flat<'a> {
    pub fn new(t: &'a Tree) -> Self {
        let mut flat = Flat { verts: Vec::new() };
        if matches!(t, Tree::Node(..)) {
            flat.push(t, None);
        }
        flat
    }

    fn push(&mut self, t: &'a Tree, parent: Option<usize>) -> (Slot, u32) {
        match t {
            Tree::Leaf(l) => (Slot::Leaf(*l), *l),
            Tree::Node(g, ch) => {
                let me = self.verts.len();
                self.verts.push(FlatVertex { gen: *g, parent, slots: Vec::new(), slot_min: Vec::new(), node: t });
                let mut slots = Vec::with_capacity(ch.len());
                let mut mins = Vec::with_capacity(ch.len());
                for c in ch {
                    let (s, m) = self.push(c, Some(me));
                    slots.push(s);
                    mins.push(m);
                }
                let min = mins.iter().copied().min().unwrap_or(u32::MAX);
                self.verts[me].slots = slots;
                self.verts[me].slot_min = mins;
                (Slot::Vertex(me), min)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn check(&self, e: &SubtreeEmbedding) -> Result<()> {
        let vs = e.vertices();
        if vs.is_empty() {
            return Err(OperadError::BadEmbedding("empty vertex set".into()));
        }
        if vs.iter().any(|&v| v >= self.verts.len()) {
            return Err(OperadError::BadEmbedding("vertex index out of range".into()));
        }
        for &v in &vs[1..] {
            match self.verts[v].parent {
                Some(p) if e.contains(p) => {}
                _ => return Err(OperadError::BadEmbedding("vertex set is not connected".into())),
            }
        }
        Ok(())
    }

    /// Cut slots of an embedding as `(vertex, slot index, smallest descendant)`,
    /// sorted by smallest descendant.
    pub fn cuts(&self, e: &SubtreeEmbedding) -> Vec<(usize, usize, u32)> {
        let mut cuts = Vec::new();
        for &v in e.vertices() {
            let fv = &self.verts[v];
            for (k, s) in fv.slots.iter().enumerate() {
                let inside = matches!(s, Slot::Vertex(c) if e.contains(*c));
                if !inside {
                    cuts.push((v, k, fv.slot_min[k]));
                }
            }
        }
        cuts.sort_by_key(|c| c.2);
        cuts
    }

    /// The subtree hanging from a slot.
    pub fn slot_tree(&self, v: usize, k: usize) -> Tree {
        match self.verts[v].slots[k] {
            Slot::Leaf(l) => Tree::Leaf(l),
            Slot::Vertex(c) => self.verts[c].node.clone(),
        }
    }

    pub fn divisor(&self, e: &SubtreeEmbedding) -> Result<TreeMonomial> {
        self.check(e)?;
        let cuts = self.cuts(e);
        let rank = |v: usize, k: usize| cuts.iter().position(|c| c.0 == v && c.1 == k).unwrap() as u32 + 1;
        fn build(flat: &Flat, v: usize, e: &SubtreeEmbedding, rank: &dyn Fn(usize, usize) -> u32) -> Tree {
            let fv = &flat.verts[v];
            let ch = fv
                .slots
                .iter()
                .enumerate()
                .map(|(k, s)| match s {
                    Slot::Vertex(c) if e.contains(*c) => build(flat, *c, e, rank),
                    _ => Tree::Leaf(rank(v, k)),
                })
                .collect();
            Tree::Node(fv.gen, ch)
        }
        let tree = build(self, e.vertices()[0], e, &rank);
        Ok(TreeMonomial { tree, arity: cuts.len() as u32 })
    }

    /// Embedding of `pattern` rooted at host vertex `v`, if any.
    pub fn match_at(&self, v: usize, pattern: &Tree) -> Option<SubtreeEmbedding> {
        let mut verts = Vec::new();
        let mut cuts: Vec<(u32, u32)> = Vec::new();
        if !self.match_rec(v, pattern, &mut verts, &mut cuts) {
            return None;
        }
        cuts.sort_by_key(|c| c.1);
        if cuts.iter().enumerate().all(|(i, c)| c.0 == i as u32 + 1) {
            Some(SubtreeEmbedding::new(verts))
        } else {
            None
        }
    }

    fn match_rec(&self, v: usize, pattern: &Tree, verts: &mut Vec<usize>, cuts: &mut Vec<(u32, u32)>) -> bool {
        let Tree::Node(g, pch) = pattern else { return false };
        let fv = &self.verts[v];
        if fv.gen != *g || fv.slots.len() != pch.len() {
            return false;
        }
        verts.push(v);
        for (k, pc) in pch.iter().enumerate() {
            match pc {
                Tree::Leaf(l) => cuts.push((*l, fv.slot_min[k])),
                Tree::Node(..) => match fv.slots[k] {
                    Slot::Vertex(c) => {
                        if !self.match_rec(c, pc, verts, cuts) {
                            return false;
                        }
                    }
                    Slot::Leaf(_) => return false,
                },
            }
        }
        true
    }
}

pub fn divisor_at(host: &TreeMonomial, e: &SubtreeEmbedding) -> Result<TreeMonomial> {
    Flat::new(&host.tree).divisor(e)
}

/// All embeddings of `pattern` into `host`. At most one per host vertex; the unit
/// pattern has no embeddings.
pub fn find_embeddings(host: &TreeMonomial, pattern: &TreeMonomial) -> Vec<SubtreeEmbedding> {
    if pattern.is_unit() || pattern.arity > host.arity {
        return Vec::new();
    }
    let flat = Flat::new(&host.tree);
    (0..flat.len()).filter_map(|v| flat.match_at(v, &pattern.tree)).collect()
}

pub fn is_divisible(host: &TreeMonomial, pattern: &TreeMonomial) -> bool {
    if pattern.is_unit() || pattern.arity > host.arity {
        return false;
    }
    let flat = Flat::new(&host.tree);
    (0..flat.len()).any(|v| flat.match_at(v, &pattern.tree).is_some())
}

/// True iff no non-root vertex carries a subtree whose leaves form an interval.
pub fn is_prime(m: &TreeMonomial) -> bool {
    fn interval(t: &Tree) -> bool {
        let ls = t.leaves();
        let min = *ls.iter().min().unwrap();
        let max = *ls.iter().max().unwrap();
        (max - min + 1) as usize == ls.len()
    }
    fn any_interval(t: &Tree) -> bool {
        match t {
            Tree::Leaf(_) => false,
            Tree::Node(_, ch) => interval(t) || ch.iter().any(any_interval),
        }
    }
    match &m.tree {
        Tree::Leaf(_) => true,
        Tree::Node(_, ch) => !ch.iter().any(any_interval),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Generator;

    fn lie() -> Signature {
        Signature::new(vec![Generator::new("b", 2)], Mode::Shuffle).unwrap()
    }

    fn m(s: &str) -> TreeMonomial {
        TreeMonomial::parse(s, &lie()).unwrap()
    }

    #[test]
    fn canonicalize_reorders() {
        let sig = lie();
        let b = GenId(0);
        let raw = Tree::Node(b, vec![Tree::Node(b, vec![Tree::Leaf(3), Tree::Leaf(2)]), Tree::Leaf(1)]);
        let c = TreeMonomial::canonicalize(raw, &sig).unwrap();
        assert_eq!(c.render(&sig), "b(1,b(2,3))");
        let again = TreeMonomial::canonicalize(c.tree().clone(), &sig).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn canonicalize_errors() {
        let sig = lie();
        let b = GenId(0);
        let dup = Tree::Node(b, vec![Tree::Leaf(1), Tree::Leaf(1)]);
        assert!(matches!(TreeMonomial::canonicalize(dup, &sig), Err(OperadError::BadLeafLabels { .. })));
        let short = Tree::Node(b, vec![Tree::Leaf(1)]);
        assert!(matches!(TreeMonomial::canonicalize(short, &sig), Err(OperadError::ChildCountMismatch { .. })));
        let ns = Signature::new(vec![Generator::new("m", 2)], Mode::Nonsymmetric).unwrap();
        let swapped = Tree::Node(GenId(0), vec![Tree::Leaf(2), Tree::Leaf(1)]);
        assert!(matches!(TreeMonomial::canonicalize(swapped, &ns), Err(OperadError::NotPlanar(_))));
    }

    #[test]
    fn path_sequences() {
        let p = m("b(b(1,3),2)").path_sequence();
        assert_eq!(p.words, vec![vec![GenId(0); 2], vec![GenId(0)], vec![GenId(0); 2]]);
        assert_eq!(p.permutation, vec![1, 3, 2]);
        let q = m("b(1,b(2,3))").path_sequence();
        assert_eq!(q.permutation, vec![1, 2, 3]);
        assert_eq!(q.words[0].len(), 1);
    }

    #[test]
    fn compositions_of_corollas() {
        let sig = lie();
        let b = m("b(1,2)");
        let u = TreeMonomial::unit();
        let c = compose(&b, &[u.clone(), b.clone()], &[vec![1], vec![2, 3]], Mode::Shuffle).unwrap();
        assert_eq!(c.render(&sig), "b(1,b(2,3))");
        let c = compose(&b, &[b.clone(), u.clone()], &[vec![1, 3], vec![2]], Mode::Shuffle).unwrap();
        assert_eq!(c.render(&sig), "b(b(1,3),2)");
        let bad = compose(&b, &[u.clone(), b.clone()], &[vec![2, 3], vec![1]], Mode::Shuffle);
        assert!(bad.is_err());
        let bad = compose(&b, &[u.clone(), b.clone()], &[vec![1, 2], vec![3]], Mode::Shuffle);
        assert!(bad.is_err());
        let bad = compose(&b, &[b.clone(), u], &[vec![1, 3], vec![2]], Mode::Nonsymmetric);
        assert!(bad.is_err());
    }

    #[test]
    fn enumeration_counts() {
        let sig = lie();
        assert_eq!(enumerate_monomials(&sig, 1).unwrap(), vec![TreeMonomial::unit()]);
        assert_eq!(enumerate_monomials(&sig, 2).unwrap().len(), 1);
        let three: Vec<String> = enumerate_monomials(&sig, 3).unwrap().iter().map(|x| x.render(&sig)).collect();
        assert_eq!(three.len(), 3);
        for s in ["b(b(1,2),3)", "b(b(1,3),2)", "b(1,b(2,3))"] {
            assert!(three.contains(&s.to_string()));
        }
    }

    #[test]
    fn partitions() {
        assert_eq!(block_partitions(4, 2, Mode::Shuffle).len(), 7);
        assert_eq!(block_partitions(4, 2, Mode::Nonsymmetric).len(), 3);
        assert_eq!(block_partitions(5, 3, Mode::Shuffle).len(), 25);
    }

    #[test]
    fn divisors_and_embeddings() {
        let sig = lie();
        let host = m("b(b(1,3),2)");
        let whole = SubtreeEmbedding::new(vec![0, 1]);
        assert_eq!(divisor_at(&host, &whole).unwrap(), host);
        let inner = SubtreeEmbedding::new(vec![1]);
        assert_eq!(divisor_at(&host, &inner).unwrap().render(&sig), "b(1,2)");
        let host2 = m("b(1,b(2,3))");
        assert_eq!(divisor_at(&host2, &inner).unwrap().render(&sig), "b(1,2)");
        assert!(divisor_at(&host, &SubtreeEmbedding::new(vec![])).is_err());
        assert!(divisor_at(&host, &SubtreeEmbedding::new(vec![5])).is_err());

        assert_eq!(find_embeddings(&host, &host).len(), 1);
        assert!(find_embeddings(&host, &m("b(b(1,2),3)")).is_empty());
        let big = m("b(b(b(1,4),3),2)");
        assert_eq!(find_embeddings(&big, &m("b(b(1,3),2)")).len(), 2);
        let disconnected = Tree::Node(GenId(0), vec![Tree::Node(GenId(0), vec![Tree::Leaf(1), Tree::Leaf(2)]), Tree::Node(GenId(0), vec![Tree::Leaf(3), Tree::Leaf(4)])]);
        let host4 = TreeMonomial::canonicalize(disconnected, &sig).unwrap();
        assert!(divisor_at(&host4, &SubtreeEmbedding::new(vec![1, 2])).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(&m("b(b(1,3),2)")));
        assert!(!is_prime(&m("b(b(1,2),3)")));
        assert!(!is_prime(&m("b(1,b(2,3))")));
        assert!(is_prime(&m("b(1,2)")));
    }
}

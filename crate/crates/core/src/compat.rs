//! Linearly and totally compatible pairs of structures over a binary quadratic operad.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Element};
use crate::error::{OperadError, Result};
use crate::groebner::GroebnerResult;
use crate::linalg;
use crate::ordering::{Direction, OrderKey, OrderSpec, WordOrder};
use crate::presentation::Presentation;
use crate::rewriting::interreduce;
use crate::signature::{GenId, Generator, Mode, Signature};
use crate::tree::{Tree, TreeMonomial};

/// The three weight-2 shapes `j(i(1,2),3)`, `j(1,i(2,3))` and `j(i(1,3),2)`.
pub const SHAPES: usize = 3;

/// Coefficients `gamma[k][l][i][j]` of relation `k` on shape `l` with inner
/// generator `i` and root generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatInput {
    pub name: String,
    pub signature: Signature,
    pub order: OrderSpec,
    pub gamma: Vec<Vec<Vec<Vec<Coeff>>>>,
}

fn shape_tree(l: usize, i: GenId, j: GenId) -> Tree {
    let leaf = Tree::Leaf;
    match l {
        0 => Tree::node(j, vec![Tree::node(i, vec![leaf(1), leaf(2)]), leaf(3)]),
        1 => Tree::node(j, vec![leaf(1), Tree::node(i, vec![leaf(2), leaf(3)])]),
        _ => Tree::node(j, vec![Tree::node(i, vec![leaf(1), leaf(3)]), leaf(2)]),
    }
}

/// The shape index and `(i, j)` of a two-vertex binary monomial.
pub fn shape_of(m: &TreeMonomial) -> Option<(usize, GenId, GenId)> {
    let Tree::Node(j, ch) = m.tree() else { return None };
    if ch.len() != 2 {
        return None;
    }
    match (&ch[0], &ch[1]) {
        (Tree::Node(i, inner), Tree::Leaf(3)) if inner.len() == 2 && inner.iter().all(|c| matches!(c, Tree::Leaf(_))) => {
            Some((0, *i, *j))
        }
        (Tree::Node(i, inner), Tree::Leaf(2)) if inner.len() == 2 && inner.iter().all(|c| matches!(c, Tree::Leaf(_))) => {
            Some((2, *i, *j))
        }
        (Tree::Leaf(1), Tree::Node(i, inner)) if inner.len() == 2 && inner.iter().all(|c| matches!(c, Tree::Leaf(_))) => {
            Some((1, *i, *j))
        }
        _ => None,
    }
}

impl CompatInput {
    pub fn new(name: impl Into<String>, signature: Signature, order: OrderSpec, gamma: Vec<Vec<Vec<Vec<Coeff>>>>) -> Result<Self> {
        let c = CompatInput { name: name.into(), signature, order, gamma };
        c.validate()?;
        Ok(c)
    }

    pub fn s(&self) -> usize {
        self.signature.len()
    }

    pub fn t(&self) -> usize {
        self.gamma.len()
    }

    fn validate(&self) -> Result<()> {
        if !self.signature.is_binary() {
            return Err(OperadError::BadCompatData("all generators must be binary".into()));
        }
        self.order.validate(&self.signature)?;
        let s = self.s();
        for (k, rel) in self.gamma.iter().enumerate() {
            if rel.len() != SHAPES || rel.iter().any(|m| m.len() != s || m.iter().any(|row| row.len() != s)) {
                return Err(OperadError::BadCompatData(format!("relation {} must be a 3 x {s} x {s} array", k + 1)));
            }
            if self.signature.mode() == Mode::Nonsymmetric && rel[2].iter().flatten().any(|x| !x.is_zero()) {
                return Err(OperadError::BadCompatData(format!(
                    "relation {} uses the shape j(i(1,3),2), which is not planar",
                    k + 1
                )));
            }
        }
        let rows: Vec<Vec<Coeff>> = self.gamma.iter().map(|r| r.iter().flatten().flatten().cloned().collect()).collect();
        if linalg::rank(&rows, SHAPES * s * s) != self.t() {
            return Err(OperadError::BadCompatData("relations are linearly dependent".into()));
        }
        Ok(())
    }

    /// Reads the coefficient array off a binary quadratic presentation.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        if !p.is_binary_quadratic() {
            return Err(OperadError::NotBinaryQuadratic(format!("`{}` is not binary quadratic", p.name)));
        }
        let s = p.signature.len();
        let mut gamma = Vec::new();
        for r in &p.relations {
            let mut g = vec![vec![vec![Coeff::zero(); s]; s]; SHAPES];
            for (m, c) in r.terms() {
                let (l, i, j) = shape_of(m).ok_or_else(|| OperadError::NotBinaryQuadratic("unexpected monomial".into()))?;
                g[l][i.index()][j.index()] = c.clone();
            }
            gamma.push(g);
        }
        CompatInput::new(p.name.clone(), p.signature.clone(), p.order.clone(), gamma)
    }

    /// Relation `k` with root generators taken from `outer` and inner ones from `inner`.
    fn decorated(&self, k: usize, sig: &Signature, outer: &[GenId], inner: &[GenId]) -> Result<Element> {
        let mut e = Element::zero();
        for (l, m) in self.gamma[k].iter().enumerate() {
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        let t = TreeMonomial::canonicalize(shape_tree(l, inner[i], outer[j]), sig)?;
                        e.add_term(t, x.clone());
                    }
                }
            }
        }
        Ok(e)
    }

    /// The presentation these coefficients describe.
    pub fn presentation(&self) -> Result<Presentation> {
        let ids: Vec<GenId> = self.signature.ids().collect();
        let rels = (0..self.t())
            .map(|k| self.decorated(k, &self.signature, &ids, &ids))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(self.name.clone(), self.signature.clone(), rels, self.order.clone())
    }
}

fn decorate(name: &str, copy: u8) -> String {
    match name.strip_suffix('*') {
        Some(base) => format!("{base}{copy}*"),
        None => format!("{name}{copy}"),
    }
}

/// Two copies of the base generators: copy 1 (weight class 1) first, then copy 2.
pub fn doubled_signature(base: &Signature) -> Result<Signature> {
    let mut gens = Vec::new();
    for (copy, class) in [(1u8, 1u8), (2, 0)] {
        for g in base.generators() {
            gens.push(Generator {
                name: decorate(&g.name, copy),
                arity: g.arity,
                symmetry: g.symmetry,
                weight_class: class,
            });
        }
    }
    Signature::new(gens, base.mode())
}

fn copies(s: usize) -> (Vec<GenId>, Vec<GenId>) {
    let one = (0..s).map(|i| GenId(i as u16)).collect();
    let two = (s..2 * s).map(|i| GenId(i as u16)).collect();
    (one, two)
}

/// The opposite of: arity, then the number of copy-1 corollas, then the opposite
/// base order on the image forgetting the copy, then path-lex with every copy-1
/// generator above every copy-2 one. The unflipped chain suits the dual side.
pub fn o2_order(base: &OrderSpec, doubled: &Signature) -> Result<OrderSpec> {
    let s = base.generator_rank.len();
    if doubled.len() != 2 * s {
        return Err(OperadError::Incompatible("doubled signature must have twice the base generators".into()));
    }
    let base_order = base.generator_order();
    let mut order: Vec<GenId> = base_order.iter().map(|g| GenId((g.index() + s) as u16)).collect();
    order.extend(base_order.iter().copied());
    let class_of = (0..2 * s).map(|i| GenId((i % s) as u16)).collect();
    let dual_side = OrderSpec::new(
        vec![
            OrderKey::Arity,
            OrderKey::CorollaCount(1),
            OrderKey::Projected { class_of, inner: Box::new(base.opposite()) },
            OrderKey::PathWords(WordOrder::Deglex, Direction::Asc),
            OrderKey::PermLex(Direction::Asc),
        ],
        doubled,
        Some(&order),
    )?;
    Ok(dual_side.opposite())
}

/// `R_1`, `R_2` and, for each relation, the sum of its two mixed decorations.
pub fn linear_compatibility(c: &CompatInput) -> Result<Presentation> {
    let sig = doubled_signature(&c.signature)?;
    let (one, two) = copies(c.s());
    let mut rels = Vec::new();
    for k in 0..c.t() {
        rels.push(c.decorated(k, &sig, &one, &one)?);
        rels.push(c.decorated(k, &sig, &two, &two)?);
    }
    for k in 0..c.t() {
        let a = c.decorated(k, &sig, &one, &two)?;
        let b = c.decorated(k, &sig, &two, &one)?;
        rels.push(a.add(&b)?);
    }
    let order = o2_order(&c.order, &sig)?;
    let rels: Vec<Element> = rels.into_iter().filter(|r| !r.is_zero()).collect();
    let rels = interreduce(&rels, &order);
    Presentation::new(format!("{}^2", c.name), sig, rels, order)
}

/// `R_1`, `R_2`, the identifications of mixed composites shape by shape, and both
/// mixed decorations of every relation; the redundant family drops out on interreduction.
pub fn total_compatibility(c: &CompatInput) -> Result<Presentation> {
    let sig = doubled_signature(&c.signature)?;
    let (one, two) = copies(c.s());
    let s = c.s();
    let mut rels = Vec::new();
    for k in 0..c.t() {
        rels.push(c.decorated(k, &sig, &one, &one)?);
        rels.push(c.decorated(k, &sig, &two, &two)?);
    }
    let shapes: &[usize] = if sig.mode() == Mode::Nonsymmetric { &[0, 1] } else { &[0, 2, 1] };
    for &l in shapes {
        for i in 0..s {
            for j in 0..s {
                let a = TreeMonomial::canonicalize(shape_tree(l, two[i], one[j]), &sig)?;
                let b = TreeMonomial::canonicalize(shape_tree(l, one[i], two[j]), &sig)?;
                rels.push(Element::monomial(a).sub(&Element::monomial(b))?);
            }
        }
    }
    for k in 0..c.t() {
        rels.push(c.decorated(k, &sig, &one, &two)?);
        rels.push(c.decorated(k, &sig, &two, &one)?);
    }
    let order = o2_order(&c.order, &sig)?;
    let rels: Vec<Element> = rels.into_iter().filter(|r| !r.is_zero()).collect();
    let rels = interreduce(&rels, &order);
    Presentation::new(format!("2{}", c.name), sig, rels, order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct O2Hypothesis {
    pub holds: bool,
    pub quadratic: bool,
    /// Right combs `j(1,i(2,3))` that are not normal.
    pub witnesses: Vec<String>,
}

/// Quadratic basis, and every right comb `j(1,i(2,3))` normal.
pub fn check_o2_hypothesis(r: &GroebnerResult) -> Result<O2Hypothesis> {
    if !r.signature.is_binary() {
        return Err(OperadError::NotBinaryQuadratic("all generators must be binary".into()));
    }
    let sys = r.rewrite_system();
    let mut witnesses = Vec::new();
    for i in r.signature.ids() {
        for j in r.signature.ids() {
            let m = TreeMonomial::canonicalize(shape_tree(1, i, j), &r.signature)?;
            if !sys.is_normal(&m) {
                witnesses.push(m.render(&r.signature));
            }
        }
    }
    Ok(O2Hypothesis { holds: r.is_quadratic && witnesses.is_empty(), quadratic: r.is_quadratic, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn lie_input() -> CompatInput {
        let s = Signature::new(vec![Generator::new("b", 2)], Mode::Shuffle).unwrap();
        let spec = OrderSpec::nonsymfree(&s, None).unwrap();
        let p = Presentation::from_strings("lie", s, &["b(b(1,2),3) - b(b(1,3),2) - b(1,b(2,3))"], spec).unwrap();
        CompatInput::from_presentation(&p).unwrap()
    }

    #[test]
    fn gamma_extraction() {
        let c = lie_input();
        assert_eq!(c.t(), 1);
        assert_eq!(c.gamma[0][0][0][0], rat(1));
        assert_eq!(c.gamma[0][1][0][0], rat(-1));
        assert_eq!(c.gamma[0][2][0][0], rat(-1));
        let p = c.presentation().unwrap();
        assert_eq!(CompatInput::from_presentation(&p).unwrap(), c);
    }

    #[test]
    fn lie_linear_is_three_relations() {
        let p = linear_compatibility(&lie_input()).unwrap();
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.signature.name_of(GenId(0)), "b1");
        assert_eq!(p.signature.name_of(GenId(1)), "b2");
        let mixed = Element::parse(
            "b1(b2(1,2),3) - b1(b2(1,3),2) - b1(1,b2(2,3)) + b2(b1(1,2),3) - b2(b1(1,3),2) - b2(1,b1(2,3))",
            &p.signature,
        )
        .unwrap();
        let (rank, contained) = crate::koszul::weight_two_span(&p.relations, &[mixed], &p.signature).unwrap();
        assert_eq!(rank, 3);
        assert!(contained);
    }

    #[test]
    fn total_drops_redundant_family() {
        let p = total_compatibility(&lie_input()).unwrap();
        let (rank, _) = crate::koszul::weight_two_span(&p.relations, &[], &p.signature).unwrap();
        assert_eq!(rank, p.relations.len());
        // 2 copies + 3 identifications + 1 mixed relation
        assert_eq!(rank, 6);
    }

    #[test]
    fn malformed_gamma() {
        let c = lie_input();
        let bad = vec![vec![vec![vec![rat(1)]]]];
        assert!(CompatInput::new("x", c.signature.clone(), c.order.clone(), bad).is_err());
        let dup = vec![c.gamma[0].clone(), c.gamma[0].clone()];
        assert!(CompatInput::new("x", c.signature.clone(), c.order.clone(), dup).is_err());
    }
}

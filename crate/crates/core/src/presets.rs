//! Built-in presentations and the conversion of symmetric binary presentations
//! into shuffle ones.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Coeff, Element};
use crate::compat::{linear_compatibility, total_compatibility, CompatInput};
use crate::error::{OperadError, Result};
use crate::koszul::dual_presentation;
use crate::linalg;
use crate::ordering::OrderSpec;
use crate::parse::parse_terms;
use crate::presentation::Presentation;
use crate::rewriting::interreduce;
use crate::signature::{GenId, Generator, Mode, Signature, Symmetry};
use crate::tree::{Tree, TreeMonomial};

/// A binary generator of a symmetric presentation. Generators without symmetry
/// split into two shuffle generators, `g(a1,a2)` and `g(a2,a1)`.
#[derive(Clone, Debug)]
pub struct SymmetricGenerator {
    pub generator: Generator,
    /// Shuffle names for the two orders of the arguments; default `g` and `g'`.
    pub split_names: Option<(String, String)>,
}

impl SymmetricGenerator {
    pub fn new(generator: Generator) -> Self {
        SymmetricGenerator { generator, split_names: None }
    }

    pub fn split(generator: Generator, first: &str, second: &str) -> Self {
        SymmetricGenerator { generator, split_names: Some((first.into(), second.into())) }
    }
}

/// Relations are written with arbitrary leaf orders, e.g. `p(p(1,2),3) - p(1,p(3,2))`.
#[derive(Clone, Debug)]
pub struct SymmetricPresentation {
    pub name: String,
    pub generators: Vec<SymmetricGenerator>,
    pub relations: Vec<String>,
}

/// Each symmetric generator's image: the shuffle generator for increasing
/// arguments, and the one with its sign for swapped arguments.
struct Images {
    straight: Vec<GenId>,
    swapped: Vec<(GenId, i64)>,
}

fn shuffle_signature(sp: &SymmetricPresentation) -> Result<(Signature, Signature, Images)> {
    let mut input = Vec::new();
    let mut out = Vec::new();
    let mut images = Images { straight: Vec::new(), swapped: Vec::new() };
    for sg in &sp.generators {
        let g = &sg.generator;
        if g.arity != 2 {
            return Err(OperadError::BadGeneratorArity { name: g.name.clone(), arity: g.arity });
        }
        input.push(g.clone());
        let next = GenId(out.len() as u16);
        match g.symmetry {
            Symmetry::None => {
                let (a, b) = sg.split_names.clone().unwrap_or_else(|| (g.name.clone(), format!("{}'", g.name)));
                out.push(Generator { name: a, ..g.clone() });
                out.push(Generator { name: b, ..g.clone() });
                images.straight.push(next);
                images.swapped.push((GenId(next.0 + 1), 1));
            }
            Symmetry::Symmetric | Symmetry::Antisymmetric => {
                if sg.split_names.is_some() {
                    return Err(OperadError::Invalid(format!("generator `{}` has a symmetry and cannot be split", g.name)));
                }
                out.push(g.clone());
                images.straight.push(next);
                let s = if g.symmetry == Symmetry::Symmetric { 1 } else { -1 };
                images.swapped.push((next, s));
            }
        }
    }
    Ok((Signature::new(input, Mode::Shuffle)?, Signature::new(out, Mode::Shuffle)?, images))
}

fn convert(t: &Tree, images: &Images) -> Result<(i64, Tree)> {
    match t {
        Tree::Leaf(l) => Ok((1, Tree::Leaf(*l))),
        Tree::Node(g, ch) => {
            if ch.len() != 2 {
                return Err(OperadError::ChildCountMismatch { name: format!("#{}", g.0), expected: 2, found: ch.len() });
            }
            let (sl, l) = convert(&ch[0], images)?;
            let (sr, r) = convert(&ch[1], images)?;
            let (s, node) = if l.min_leaf() < r.min_leaf() {
                (1, Tree::node(images.straight[g.index()], vec![l, r]))
            } else {
                let (h, s) = images.swapped[g.index()];
                (s, Tree::node(h, vec![r, l]))
            };
            Ok((s * sl * sr, node))
        }
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Shuffle relations spanning the symmetric-group orbit of the given relations.
pub fn shuffleize(sp: &SymmetricPresentation, order: impl Fn(&Signature) -> Result<OrderSpec>) -> Result<Presentation> {
    let (input, sig, images) = shuffle_signature(sp)?;
    let mut rows: Vec<BTreeMap<TreeMonomial, Coeff>> = Vec::new();
    for rel in &sp.relations {
        let terms = parse_terms(rel, &input)?;
        let arity = terms.first().map(|(_, t)| t.leaves().len() as u32).unwrap_or(0);
        for sigma in permutations(arity) {
            let mut row: BTreeMap<TreeMonomial, Coeff> = BTreeMap::new();
            for (c, t) in &terms {
                if t.leaves().len() as u32 != arity {
                    return Err(OperadError::ArityMismatch(arity, t.leaves().len() as u32));
                }
                let moved = t.relabel(&|l| sigma[l as usize - 1]);
                let (s, shuffled) = convert(&moved, &images)?;
                let m = TreeMonomial::canonicalize(shuffled, &sig)?;
                let e = row.entry(m).or_insert_with(Coeff::zero);
                *e += c * Coeff::from_integer(s.into());
            }
            row.retain(|_, c| !c.is_zero());
            rows.push(row);
        }
    }
    let columns: Vec<TreeMonomial> = {
        let mut v: Vec<TreeMonomial> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    };
    let index: BTreeMap<&TreeMonomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut dense: Vec<Vec<Coeff>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Coeff::zero(); columns.len()];
            for (m, c) in r {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    let pivots = linalg::rref(&mut dense, columns.len());
    let spec = order(&sig)?;
    let rels: Vec<Element> = dense
        .into_iter()
        .take(pivots.len())
        .map(|v| {
            let mut e = Element::zero();
            for (m, c) in columns.iter().zip(v) {
                e.add_term(m.clone(), c);
            }
            e
        })
        .collect();
    let rels = interreduce(&rels, &spec);
    Presentation::new(sp.name.clone(), sig, rels, spec)
}

/// Replaces every vertex labelled `g` by the linear combination `images[g]` of
/// generators of `target` with the same arity.
pub fn change_generators(e: &Element, images: &[Vec<(GenId, Coeff)>], target: &Signature) -> Result<Element> {
    fn expand(t: &Tree, images: &[Vec<(GenId, Coeff)>]) -> Vec<(Coeff, Tree)> {
        match t {
            Tree::Leaf(l) => vec![(Coeff::from_integer(1.into()), Tree::Leaf(*l))],
            Tree::Node(g, ch) => {
                let mut acc: Vec<(Coeff, Vec<Tree>)> = vec![(Coeff::from_integer(1.into()), Vec::new())];
                for c in ch {
                    let opts = expand(c, images);
                    let mut next = Vec::new();
                    for (x, prefix) in &acc {
                        for (y, o) in &opts {
                            let mut v = prefix.clone();
                            v.push(o.clone());
                            next.push((x * y, v));
                        }
                    }
                    acc = next;
                }
                let mut out = Vec::new();
                for (h, z) in &images[g.index()] {
                    for (x, v) in &acc {
                        out.push((x * z, Tree::node(*h, v.clone())));
                    }
                }
                out
            }
        }
    }
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        for (x, t) in expand(m.tree(), images) {
            out.add_term(TreeMonomial::canonicalize(t, target)?, c * x);
        }
    }
    Ok(out)
}

fn sig(gens: Vec<Generator>, mode: Mode) -> Signature {
    Signature::new(gens, mode).expect("preset signature")
}

fn ids(s: &Signature, names: &[&str]) -> Vec<GenId> {
    names.iter().map(|n| s.id_of(n).expect("preset generator")).collect()
}

fn anti(name: &str) -> Generator {
    Generator::new(name, 2).with_symmetry(Symmetry::Antisymmetric)
}

fn symm(name: &str) -> Generator {
    Generator::new(name, 2).with_symmetry(Symmetry::Symmetric)
}

fn rename(mut p: Presentation, name: &str, names: &[&str]) -> Presentation {
    let gens = p
        .signature
        .generators()
        .iter()
        .zip(names)
        .map(|(g, n)| Generator { name: n.to_string(), ..g.clone() })
        .collect();
    p.signature = Signature::new(gens, p.signature.mode()).expect("renamed signature");
    p.name = name.to_string();
    p
}

const JACOBI: &str = "b(b(1,2),3) - b(b(1,3),2) - b(1,b(2,3))";

fn lie() -> Presentation {
    let s = sig(vec![anti("b")], Mode::Shuffle);
    let spec = OrderSpec::nonsymfree(&s, None).unwrap();
    Presentation::from_strings("lie", s, &[JACOBI], spec).unwrap()
}

fn prelie() -> Presentation {
    let s = sig(vec![Generator::new("alpha", 2), Generator::new("beta", 2)], Mode::Shuffle);
    let spec = OrderSpec::nonsymfree(&s, Some(&ids(&s, &["alpha", "beta"]))).unwrap();
    Presentation::from_strings(
        "prelie",
        s,
        &[
            "alpha(alpha(1,2),3) - alpha(1,alpha(2,3)) - alpha(alpha(1,3),2) + alpha(1,beta(2,3))",
            "alpha(beta(1,2),3) - beta(alpha(1,3),2) - beta(1,alpha(2,3)) + beta(beta(1,3),2)",
            "alpha(beta(1,3),2) - beta(alpha(1,2),3) - beta(1,beta(2,3)) + beta(beta(1,2),3)",
        ],
        spec,
    )
    .unwrap()
}

const PRELIE_DOT: [&str; 3] = [
    "br(br(1,2),3) - br(br(1,3),2) - br(1,br(2,3))",
    "dot(dot(1,2),3) - dot(1,dot(2,3)) - dot(1,br(2,3)) - dot(br(1,2),3) - 2*dot(br(1,3),2) \
     + br(1,dot(2,3)) + br(dot(1,2),3) + br(br(1,3),2)",
    "dot(dot(1,3),2) - dot(1,dot(2,3)) + dot(1,br(2,3)) - dot(br(1,3),2) - 2*dot(br(1,2),3) \
     + br(1,dot(2,3)) + br(dot(1,3),2) + br(br(1,2),3)",
];

fn prelie_dot_signature() -> Signature {
    sig(vec![symm("dot").with_weight_class(1), anti("br")], Mode::Shuffle)
}

fn prelie_dot() -> Presentation {
    let s = prelie_dot_signature();
    let spec = OrderSpec::magprelie(&s, Some(&ids(&s, &["dot", "br"]))).unwrap();
    Presentation::from_strings("prelie-dot", s, &PRELIE_DOT, spec).unwrap()
}

fn prelie_module() -> Presentation {
    let s = prelie_dot_signature();
    let spec = OrderSpec::prelie_module(&s, Some(&ids(&s, &["br", "dot"]))).unwrap();
    Presentation::from_strings("prelie-module", s, &PRELIE_DOT, spec).unwrap()
}

fn lie2() -> Presentation {
    let s = sig(vec![anti("b"), anti("c")], Mode::Shuffle);
    let spec = OrderSpec::nonsymfree(&s, Some(&ids(&s, &["c", "b"]))).unwrap();
    Presentation::from_strings(
        "lie2",
        s,
        &[
            JACOBI,
            "c(c(1,2),3) - c(c(1,3),2) - c(1,c(2,3))",
            "b(c(1,2),3) - b(c(1,3),2) - b(1,c(2,3)) + c(b(1,2),3) - c(b(1,3),2) - c(1,b(2,3))",
        ],
        spec,
    )
    .unwrap()
}

fn com() -> Presentation {
    let d = rename(dual_presentation(&lie()).unwrap(), "com", &["m"]);
    let spec = OrderSpec::pathlex(&d.signature, None).unwrap();
    d.with_order(spec).unwrap()
}

fn perm() -> Presentation {
    rename(dual_presentation(&prelie()).unwrap(), "perm", &["alpha*", "beta*"])
}

fn mag() -> Presentation {
    let s = sig(vec![symm("dot").with_weight_class(1)], Mode::Shuffle);
    let spec = OrderSpec::pathlex(&s, None).unwrap();
    Presentation::new("mag", s, Vec::new(), spec).unwrap()
}

fn nilpotent() -> Presentation {
    let s = sig(vec![symm("m")], Mode::Shuffle);
    let spec = OrderSpec::pathlex(&s, None).unwrap();
    Presentation::from_strings("n", s, &["m(m(1,2),3)", "m(m(1,3),2)", "m(1,m(2,3))"], spec).unwrap()
}

fn assoc() -> Presentation {
    let s = sig(vec![Generator::new("m", 2)], Mode::Nonsymmetric);
    let spec = OrderSpec::pathlex(&s, None).unwrap();
    Presentation::from_strings("as", s, &["m(m(1,2),3) - m(1,m(2,3))"], spec).unwrap()
}

fn dend() -> Presentation {
    let s = sig(vec![Generator::new("prec", 2), Generator::new("succ", 2)], Mode::Nonsymmetric);
    let spec = OrderSpec::pathlex(&s, None).unwrap();
    Presentation::from_strings(
        "dend",
        s,
        &[
            "prec(prec(1,2),3) - prec(1,prec(2,3)) - prec(1,succ(2,3))",
            "prec(succ(1,2),3) - succ(1,prec(2,3))",
            "succ(prec(1,2),3) + succ(succ(1,2),3) - succ(1,succ(2,3))",
        ],
        spec,
    )
    .unwrap()
}

fn dend_star() -> Presentation {
    let s = sig(vec![Generator::new("star", 2), Generator::new("succ", 2)], Mode::Nonsymmetric);
    let spec = OrderSpec::pathlex(&s, Some(&ids(&s, &["star", "succ"]))).unwrap();
    Presentation::from_strings(
        "dend-star",
        s,
        &[
            "star(star(1,2),3) - star(1,star(2,3))",
            "succ(succ(1,2),3) - star(succ(1,2),3) - succ(1,succ(2,3)) + succ(1,star(2,3))",
            "succ(star(1,2),3) - succ(1,succ(2,3))",
        ],
        spec,
    )
    .unwrap()
}

fn dias() -> Presentation {
    let s = sig(vec![Generator::new("dashv", 2), Generator::new("vdash", 2)], Mode::Nonsymmetric);
    let spec = OrderSpec::pathlex(&s, None).unwrap();
    Presentation::from_strings(
        "dias",
        s,
        &[
            "dashv(dashv(1,2),3) - dashv(1,dashv(2,3))",
            "vdash(vdash(1,2),3) - vdash(1,vdash(2,3))",
            "dashv(dashv(1,2),3) - dashv(1,vdash(2,3))",
            "vdash(dashv(1,2),3) - vdash(1,vdash(2,3))",
            "dashv(vdash(1,2),3) - vdash(1,dashv(2,3))",
        ],
        spec,
    )
    .unwrap()
}

fn linear_of(p: Presentation, name: &str) -> Presentation {
    let mut q = linear_compatibility(&CompatInput::from_presentation(&p).unwrap()).unwrap();
    q.name = name.to_string();
    q
}

fn total_of(p: Presentation, name: &str) -> Presentation {
    let mut q = total_compatibility(&CompatInput::from_presentation(&p).unwrap()).unwrap();
    q.name = name.to_string();
    q
}

/// `(name, description)` of every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("lie", "Lie brackets: one antisymmetric generator b, Jacobi identity"),
    ("prelie", "pre-Lie, shuffle generators alpha(a1,a2)=a1a2 and beta(a1,a2)=a2a1, beta > alpha"),
    ("prelie-dot", "pre-Lie via symmetrized product dot and bracket br, corolla-count order"),
    ("prelie-module", "pre-Lie via dot and br, permutations first, dot > br"),
    ("lie2", "two compatible Lie brackets b > c"),
    ("com", "commutative associative, the Koszul dual of lie"),
    ("perm", "the Koszul dual of prelie"),
    ("mag", "free operad on one symmetric generator dot"),
    ("n", "nilpotent operad on one symmetric generator m"),
    ("n2", "linearly compatible pair of nilpotent structures"),
    ("com2", "linearly compatible pair of commutative associative products"),
    ("2com", "totally compatible pair of commutative associative products"),
    ("as", "associative product (nonsymmetric)"),
    ("as2", "two compatible associative products (nonsymmetric)"),
    ("dend", "dendriform, prec and succ (nonsymmetric)"),
    ("dend-star", "dendriform via star = prec + succ and succ, succ > star (nonsymmetric)"),
    ("dias", "diassociative, dashv and vdash (nonsymmetric)"),
];

pub fn preset(name: &str) -> Result<Presentation> {
    Ok(match name {
        "lie" => lie(),
        "prelie" => prelie(),
        "prelie-dot" => prelie_dot(),
        "prelie-module" => prelie_module(),
        "lie2" => lie2(),
        "com" => com(),
        "perm" => perm(),
        "mag" => mag(),
        "n" => nilpotent(),
        "n2" => linear_of(nilpotent(), "n2"),
        "com2" => linear_of(com(), "com2"),
        "2com" => total_of(com(), "2com"),
        "as" => assoc(),
        "as2" => linear_of(assoc(), "as2"),
        "dend" => dend(),
        "dend-star" => dend_star(),
        "dias" => dias(),
        _ => return Err(OperadError::UnknownName(name.to_string())),
    })
}

pub fn list() -> &'static [(&'static str, &'static str)] {
    PRESETS
}

//! Closure constructions on coding trees.
//!
//! Each transform builds a fresh tree (labels `n0, n1, …` in preorder) whose
//! decode is the matching set-level operation applied to the decode of the
//! input. Whenever two children of a new node would be isomorphic only one is
//! kept, so outputs are always valid coding pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::codec::{encode, CodecError, CodingTree, TreeBuilder};
use crate::hfset::{Budget, HfSet};

/// `{decode(p), decode(q)}`.
pub fn pair_tree(p: &CodingTree, q: &CodingTree, budget: Budget) -> Result<CodingTree, CodecError> {
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    b.graft(root, p, 0)?;
    if p.canonical_form() != q.canonical_form() {
        b.graft(root, q, 0)?;
    }
    Ok(b.finish())
}

/// `⋃ decode(p)`: one representative per isomorphism class of the
/// grandchildren of the root.
pub fn union_tree(p: &CodingTree, budget: Budget) -> Result<CodingTree, CodecError> {
    let forms = p.node_forms();
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    let mut seen = BTreeSet::new();
    for &child in p.children(0) {
        for &grandchild in p.children(child) {
            if seen.insert(forms[grandchild].as_str()) {
                b.graft(root, p, grandchild)?;
            }
        }
    }
    Ok(b.finish())
}

/// `{y ∈ decode(p) : pred(code of y)}`, keeping the direct subtrees that satisfy `pred`.
pub fn comprehension_tree(
    p: &CodingTree,
    mut pred: impl FnMut(&CodingTree) -> bool,
    budget: Budget,
) -> Result<CodingTree, CodecError> {
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    for &child in p.children(0) {
        if pred(&p.subtree_at(child)) {
            b.graft(root, p, child)?;
        }
    }
    Ok(b.finish())
}

/// Embeds a label of the form `n<k>` as the ordinal `k`.
pub fn label_ordinal(label: &str) -> Option<usize> {
    let digits = label.strip_prefix('n')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

/// A subtree of some source tree, with its canonical form.
#[derive(Clone, Copy)]
struct Part<'a> {
    tree: &'a CodingTree,
    node: usize,
    form: &'a str,
}

/// Grafts a code for `{a, b}` below `parent`.
fn graft_pair(b: &mut TreeBuilder, parent: usize, x: Part, y: Part) -> Result<(), CodecError> {
    let node = b.add_child(parent)?;
    b.graft(node, x.tree, x.node)?;
    if x.form != y.form {
        b.graft(node, y.tree, y.node)?;
    }
    Ok(())
}

/// Grafts a code for the Kuratowski pair `{{a}, {a, b}}` below `parent`.
fn graft_kpair(b: &mut TreeBuilder, parent: usize, x: Part, y: Part) -> Result<(), CodecError> {
    let node = b.add_child(parent)?;
    graft_pair(b, node, x, x)?;
    if x.form != y.form {
        graft_pair(b, node, x, y)?;
    }
    Ok(())
}

/// The function `y ↦ a_y` from the coded set to the labels of the root's
/// children, as a set of Kuratowski pairs `⟨y, k⟩` where `a_y` is `n<k>`.
pub fn function_tree(p: &CodingTree, budget: Budget) -> Result<CodingTree, CodecError> {
    let forms = p.node_forms();
    let mut label_trees = Vec::new();
    for &child in p.children(0) {
        let label = p.label(child);
        let k = label_ordinal(label).ok_or_else(|| CodecError::NotEmbeddable(label.to_string()))?;
        let ordinal = HfSet::ordinal(k, budget)?;
        let t = encode(&ordinal, budget)?;
        let form = t.canonical_form();
        label_trees.push((child, t, form));
    }
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    for (child, t, form) in &label_trees {
        let y = Part {
            tree: p,
            node: *child,
            form: &forms[*child],
        };
        let a = Part { tree: t, node: 0, form };
        graft_kpair(&mut b, root, y, a)?;
    }
    Ok(b.finish())
}

/// The strict order on `decode(p)` induced by the serial order of members,
/// as the set of Kuratowski pairs `⟨y, z⟩` with `y` before `z`.
pub fn wellorder_tree(p: &CodingTree, budget: Budget) -> Result<CodingTree, CodecError> {
    let forms = p.node_forms();
    let mut members: Vec<(HfSet, usize)> = p.children(0).iter().map(|&c| (p.subtree_at(c).decode(), c)).collect();
    members.sort();
    let part = |c: usize| Part {
        tree: p,
        node: c,
        form: &forms[c],
    };
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    for (i, (_, y)) in members.iter().enumerate() {
        for (_, z) in &members[i + 1..] {
            graft_kpair(&mut b, root, part(*y), part(*z))?;
        }
    }
    Ok(b.finish())
}

/// Predicates available to `comprehend` by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Nonempty,
    IsOrdinal,
    RankLe(usize),
}

impl Predicate {
    pub const NAMES: [&'static str; 3] = ["nonempty", "is-ordinal", "rank-le:<n>"];

    pub fn holds(self, code: &CodingTree) -> bool {
        match self {
            Predicate::Nonempty => !code.children(0).is_empty(),
            Predicate::IsOrdinal => code.decode().is_ordinal(),
            Predicate::RankLe(n) => code.height() <= n,
        }
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonempty" => Ok(Predicate::Nonempty),
            "is-ordinal" => Ok(Predicate::IsOrdinal),
            _ => match s.strip_prefix("rank-le:") {
                Some(n) => n
                    .parse()
                    .map(Predicate::RankLe)
                    .map_err(|_| format!("bad rank bound in {s:?}")),
                None => Err(format!(
                    "unknown predicate {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )),
            },
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Nonempty => f.write_str("nonempty"),
            Predicate::IsOrdinal => f.write_str("is-ordinal"),
            Predicate::RankLe(n) => write!(f, "rank-le:{n}"),
        }
    }
}

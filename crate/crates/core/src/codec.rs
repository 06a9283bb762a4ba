//! Coding pairs: labeled node sets with a child→parent relation and a root.
//!
//! A [`CodingPair`] is raw, possibly malformed input. [`CodingPair::validate`]
//! checks the four structural clauses (unique level, non-isomorphic siblings,
//! disjoint children on a level, well-foundedness) and
//! [`CodingPair::into_tree`] turns a valid pair into an indexed
//! [`CodingTree`], on which everything else operates.
//!
//! Text format, one item per line:
//!
//! ```text
//! root <label>
//! edge <child-label> <parent-label>
//! ```
//!
//! Edges run child to parent. Canonical output sorts the edge lines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hfset::{Budget, HfError, HfSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("not a valid coding pair:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Hf(#[from] HfError),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("label {0:?} does not name an ordinal (expected n<k>)")]
    NotEmbeddable(String),
    #[error("relabeling is not injective: {0:?} is used twice")]
    RelabelCollision(String),
    #[error("relation is not well-founded: cycle through {0:?}")]
    Cyclic(String),
    #[error("relation is not extensional: {0:?} and {1:?} have the same extension")]
    NotExtensional(String, String),
    #[error("{0:?} is not below the top node")]
    Unreachable(String),
}

/// The clause of the coding-pair definition a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Unique finite distance to the root.
    A,
    /// Siblings have non-isomorphic subtrees.
    B,
    /// Distinct nodes on one level share no child.
    C,
    /// Well-foundedness.
    D,
    /// Root or edge endpoints missing from the node set.
    Connectivity,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::A => "a",
            Property::B => "b",
            Property::C => "c",
            Property::D => "d",
            Property::Connectivity => "connectivity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub witnesses: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, property: Property) -> bool {
        self.violations.iter().any(|v| v.property == property)
    }

    fn push(&mut self, property: Property, witnesses: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            property,
            witnesses,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "violation {}: {} [{}]", v.property, v.detail, v.witnesses.join(" "))?;
        }
        Ok(())
    }
}

/// Raw coding pair: node labels, root, and `(child, parent)` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingPair {
    pub root: String,
    pub nodes: BTreeSet<String>,
    pub rel: BTreeSet<(String, String)>,
}

impl CodingPair {
    /// Node set is the root plus every edge endpoint.
    pub fn new<S: Into<String>>(root: S, edges: impl IntoIterator<Item = (S, S)>) -> Self {
        let root = root.into();
        let rel: BTreeSet<(String, String)> = edges.into_iter().map(|(c, p)| (c.into(), p.into())).collect();
        let mut nodes: BTreeSet<String> = rel.iter().flat_map(|(c, p)| [c.clone(), p.clone()]).collect();
        nodes.insert(root.clone());
        CodingPair { root, nodes, rel }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn into_tree(self) -> Result<CodingTree, CodecError> {
        CodingTree::from_pair(&self)
    }
}

impl fmt::Display for CodingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root {}", self.root)?;
        let mut lines: Vec<String> = self.rel.iter().map(|(c, p)| format!("edge {c} {p}")).collect();
        lines.sort();
        for l in lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for CodingPair {
    type Err = CodecError;

    fn from_str(text: &str) -> Result<Self, CodecError> {
        let (root, edges) = parse_root_edges(text)?;
        Ok(CodingPair::new(root, edges))
    }
}

fn parse_root_edges(text: &str) -> Result<(String, Vec<(String, String)>), CodecError> {
    let mut root = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: &str| CodecError::Format {
            line,
            message: message.to_string(),
        };
        let toks: Vec<&str> = content.split_whitespace().collect();
        if let Some(bad) = toks.iter().find(|t| !t.bytes().all(|b| b.is_ascii_graphic())) {
            return Err(err(&format!("label {bad:?} is not an ASCII token")));
        }
        match toks.as_slice() {
            ["root", label] => {
                if root.is_some() {
                    return Err(err("duplicate root line"));
                }
                if !edges.is_empty() {
                    return Err(err("root line must come first"));
                }
                root = Some(label.to_string());
            }
            ["edge", child, parent] => {
                if root.is_none() {
                    return Err(err("root line must come first"));
                }
                edges.push((child.to_string(), parent.to_string()));
            }
            _ => return Err(err("expected `root <label>` or `edge <child> <parent>`")),
        }
    }
    let root = root.ok_or(CodecError::Format {
        line: 1,
        message: "missing root line".into(),
    })?;
    Ok((root, edges))
}

/// Checks every clause of the coding-pair definition on arbitrary input.
///
/// Clause (b) compares unfoldings of the restricted substructures; on inputs
/// that are trees this is exactly isomorphism, and any non-tree input already
/// fails (a) or (c). Clause (b) is skipped on cyclic input.
pub fn validate(p: &CodingPair) -> ValidationReport {
    let mut report = ValidationReport::default();
    let labels: Vec<&String> = p.nodes.iter().collect();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let Some(&root) = index.get(p.root.as_str()) else {
        report.push(Property::Connectivity, vec![p.root.clone()], "root is not a node");
        return report;
    };
    let n = labels.len();
    let mut parents = vec![Vec::new(); n];
    let mut children = vec![Vec::new(); n];
    for (c, q) in &p.rel {
        match (index.get(c.as_str()), index.get(q.as_str())) {
            (Some(&ci), Some(&qi)) => {
                parents[ci].push(qi);
                children[qi].push(ci);
            }
            _ => report.push(
                Property::Connectivity,
                vec![c.clone(), q.clone()],
                "edge endpoint is not a node",
            ),
        }
    }

    let cycle = find_cycle(&children);
    if let Some(cyc) = &cycle {
        report.push(
            Property::D,
            cyc.iter().map(|&i| labels[i].clone()).collect(),
            "R has a cycle",
        );
    }

    let dist = distances(root, &children, cycle.is_some());
    for (i, d) in dist.iter().enumerate() {
        match d.len() {
            1 if i != root || d.contains(&0) => {}
            0 => report.push(Property::A, vec![labels[i].clone()], "no R-chain to the root"),
            _ => report.push(
                Property::A,
                vec![labels[i].clone()],
                format!(
                    "R-distance is not unique: {}",
                    d.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
                ),
            ),
        }
    }

    for v in 0..n {
        let ps = &parents[v];
        for (j, &y) in ps.iter().enumerate() {
            for &z in &ps[j + 1..] {
                if !dist[y].is_disjoint(&dist[z]) {
                    report.push(
                        Property::C,
                        vec![labels[v].clone(), labels[y].clone(), labels[z].clone()],
                        "two nodes on the same level share a child",
                    );
                }
            }
        }
    }

    if cycle.is_none() {
        let shapes = dag_shapes(&children);
        for (x, kids) in children.iter().enumerate() {
            for (j, &y) in kids.iter().enumerate() {
                for &z in &kids[j + 1..] {
                    if shapes[y] == shapes[z] {
                        report.push(
                            Property::B,
                            vec![labels[x].clone(), labels[y].clone(), labels[z].clone()],
                            "siblings have isomorphic subtrees",
                        );
                    }
                }
            }
        }
    }
    report
}

/// Some cycle of the relation (following child edges), if one exists.
fn find_cycle(children: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = children.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut on_path: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = 1;
        on_path.push(start);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < children[v].len() {
                let w = children[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        on_path.push(w);
                        stack.push((w, 0));
                    }
                    1 => {
                        let pos = on_path.iter().position(|&u| u == w).expect("on path");
                        return Some(on_path[pos..].to_vec());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                on_path.pop();
                stack.pop();
            }
        }
    }
    None
}

/// Every chain length from each node up to the root.
fn distances(root: usize, children: &[Vec<usize>], cyclic: bool) -> Vec<BTreeSet<usize>> {
    let n = children.len();
    let mut dist = vec![BTreeSet::new(); n];
    if cyclic {
        // Walk lengths up to 2n expose any ambiguity a cycle introduces.
        let mut layer: BTreeSet<usize> = BTreeSet::from([root]);
        for k in 0..=2 * n {
            if layer.is_empty() {
                break;
            }
            let mut next = BTreeSet::new();
            for &v in &layer {
                dist[v].insert(k);
                next.extend(children[v].iter().copied());
            }
            layer = next;
        }
        return dist;
    }
    // Acyclic: propagate along a topological order, parents first.
    let mut indeg = vec![0usize; n];
    for kids in children {
        for &c in kids {
            indeg[c] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    dist[root].insert(0);
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let here: Vec<usize> = dist[v].iter().map(|k| k + 1).collect();
        for &c in &children[v] {
            dist[c].extend(here.iter().copied());
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push(c);
            }
        }
    }
    dist
}

/// Isomorphism-type ids of the unfoldings below each node of an acyclic relation.
fn dag_shapes(children: &[Vec<usize>]) -> Vec<usize> {
    let n = children.len();
    let mut shapes = vec![usize::MAX; n];
    let mut interner = ShapeInterner::default();
    for start in 0..n {
        if shapes[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![(start, false)];
        while let Some((v, expanded)) = stack.pop() {
            if shapes[v] != usize::MAX {
                continue;
            }
            if expanded {
                shapes[v] = interner.intern(children[v].iter().map(|&c| shapes[c]).collect());
            } else {
                stack.push((v, true));
                for &c in &children[v] {
                    if shapes[c] == usize::MAX {
                        stack.push((c, false));
                    }
                }
            }
        }
    }
    shapes
}

/// Assigns dense ids to multisets of child ids (AHU-style labels).
#[derive(Debug, Default)]
pub struct ShapeInterner {
    ids: HashMap<Vec<usize>, usize>,
}

impl ShapeInterner {
    pub fn intern(&mut self, mut child_shapes: Vec<usize>) -> usize {
        child_shapes.sort_unstable();
        let next = self.ids.len();
        *self.ids.entry(child_shapes).or_insert(next)
    }
}

/// A validated coding pair, stored as a rooted tree in preorder.
///
/// Node 0 is the root; the subtree of node `i` occupies `i..end(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingTree {
    labels: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    end: Vec<usize>,
    index: BTreeMap<String, usize>,
}

impl CodingTree {
    /// Validates `p` and indexes it. Children are visited in label order.
    pub fn from_pair(p: &CodingPair) -> Result<CodingTree, CodecError> {
        let report = p.validate();
        if !report.is_ok() {
            return Err(CodecError::Invalid(report));
        }
        let mut kids: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (c, q) in &p.rel {
            kids.entry(q.as_str()).or_default().push(c.as_str());
        }
        let mut labels = Vec::with_capacity(p.nodes.len());
        let mut parent = Vec::with_capacity(p.nodes.len());
        let mut stack: Vec<(&str, Option<usize>)> = vec![(p.root.as_str(), None)];
        while let Some((label, par)) = stack.pop() {
            labels.push(label.to_string());
            parent.push(par);
            let me = labels.len() - 1;
            if let Some(cs) = kids.get(label) {
                // Reverse so the smallest label is visited first.
                for c in cs.iter().rev() {
                    stack.push((c, Some(me)));
                }
            }
        }
        Ok(Self::from_preorder(labels, parent))
    }

    // `parent` must describe a preorder numbering rooted at 0.
    fn from_preorder(labels: Vec<String>, parent: Vec<Option<usize>>) -> CodingTree {
        let n = labels.len();
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        for i in 1..n {
            let p = parent[i].expect("non-root node has a parent");
            debug_assert!(p < i);
            children[p].push(i);
            depth[i] = depth[p] + 1;
        }
        let mut end: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let p = parent[i].expect("parent");
            end[p] = end[p].max(end[i]);
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        CodingTree {
            labels,
            parent,
            children,
            depth,
            end,
            index,
        }
    }

    /// The one-node tree.
    pub fn singleton(label: impl Into<String>) -> CodingTree {
        Self::from_preorder(vec![label.into()], vec![None])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root_label(&self) -> &str {
        &self.labels[0]
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depth[node]
    }

    /// Length of the longest root-to-leaf chain; equals the rank of the coded set.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CodecError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| CodecError::UnknownLabel(label.to_string()))
    }

    /// R-distance from `label` to the root.
    pub fn level_of(&self, label: &str) -> Result<usize, CodecError> {
        Ok(self.depth[self.index_of(label)?])
    }

    /// The coding pair rooted at `label`, keeping labels.
    pub fn subtree(&self, label: &str) -> Result<CodingTree, CodecError> {
        Ok(self.subtree_at(self.index_of(label)?))
    }

    pub fn subtree_at(&self, node: usize) -> CodingTree {
        let range = node..self.end[node];
        let labels = self.labels[range.clone()].to_vec();
        let parent = range
            .map(|i| {
                if i == node {
                    None
                } else {
                    self.parent[i].map(|p| p - node)
                }
            })
            .collect();
        Self::from_preorder(labels, parent)
    }

    /// Node count of the subtree at `node`.
    pub fn subtree_len(&self, node: usize) -> usize {
        self.end[node] - node
    }

    pub fn to_pair(&self) -> CodingPair {
        CodingPair::new(
            self.labels[0].clone(),
            (1..self.len()).map(|i| {
                (
                    self.labels[i].clone(),
                    self.labels[self.parent[i].expect("parent")].clone(),
                )
            }),
        )
    }

    /// Applies an injective relabeling.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<CodingTree, CodecError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(CodecError::RelabelCollision(l.clone()));
            }
        }
        Ok(Self::from_preorder(labels, self.parent.clone()))
    }

    /// AHU canonical string of every subtree: a leaf is `()`, an inner node
    /// wraps the lexicographically sorted forms of its children.
    pub fn node_forms(&self) -> Vec<String> {
        let mut forms = vec![String::new(); self.len()];
        for i in (0..self.len()).rev() {
            let mut kids: Vec<&str> = self.children[i].iter().map(|&c| forms[c].as_str()).collect();
            kids.sort_unstable();
            let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
            s.push('(');
            for k in kids {
                s.push_str(k);
            }
            s.push(')');
            forms[i] = s;
        }
        forms
    }

    /// Relabeling-invariant canonical string; equal iff isomorphic.
    pub fn canonical_form(&self) -> String {
        self.node_forms().swap_remove(0)
    }

    /// Isomorphism-class ids for every node, shared through `interner`.
    pub fn shape_ids(&self, interner: &mut ShapeInterner) -> Vec<usize> {
        let mut ids = vec![0; self.len()];
        for i in (0..self.len()).rev() {
            ids[i] = interner.intern(self.children[i].iter().map(|&c| ids[c]).collect());
        }
        ids
    }

    pub fn is_isomorphic(&self, other: &CodingTree) -> bool {
        is_isomorphic(self, other)
    }

    /// Identifies isomorphic subtrees. Each class is represented by its member
    /// with the least label.
    pub fn quotient(&self) -> QuotientStructure {
        let ids = self.shape_ids(&mut ShapeInterner::default());
        let mut rep: HashMap<usize, &str> = HashMap::new();
        for (i, &id) in ids.iter().enumerate() {
            let l = self.labels[i].as_str();
            rep.entry(id)
                .and_modify(|cur| {
                    if l < *cur {
                        *cur = l;
                    }
                })
                .or_insert(l);
        }
        let reps = rep.values().map(|s| s.to_string()).collect();
        let rel = (1..self.len())
            .map(|i| {
                let p = self.parent[i].expect("parent");
                (rep[&ids[i]].to_string(), rep[&ids[p]].to_string())
            })
            .collect();
        QuotientStructure {
            root: rep[&ids[0]].to_string(),
            reps,
            rel,
        }
    }

    /// The set this tree codes.
    pub fn decode(&self) -> HfSet {
        self.quotient()
            .collapse()
            .expect("quotient of a valid coding tree is extensional and well-founded")
    }
}

impl fmt::Display for CodingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_pair().fmt(f)
    }
}

impl FromStr for CodingTree {
    type Err = CodecError;

    fn from_str(text: &str) -> Result<Self, CodecError> {
        text.parse::<CodingPair>()?.into_tree()
    }
}

/// `(M̃, R̃)`: one representative per isomorphism class of subtrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientStructure {
    pub root: String,
    pub reps: BTreeSet<String>,
    pub rel: BTreeSet<(String, String)>,
}

impl QuotientStructure {
    fn extensions(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut ext: BTreeMap<&str, BTreeSet<&str>> = self.reps.iter().map(|r| (r.as_str(), BTreeSet::new())).collect();
        for (c, p) in &self.rel {
            ext.entry(p.as_str()).or_default().insert(c.as_str());
            ext.entry(c.as_str()).or_default();
        }
        ext
    }

    /// No two distinct representatives have the same R̃-extension.
    pub fn is_extensional(&self) -> bool {
        let ext = self.extensions();
        let mut seen = BTreeSet::new();
        ext.values().all(|e| seen.insert(e.clone()))
    }

    pub fn is_well_founded(&self) -> bool {
        let ext = self.extensions();
        let names: Vec<&str> = ext.keys().copied().collect();
        let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let children: Vec<Vec<usize>> = names.iter().map(|n| ext[n].iter().map(|c| idx[c]).collect()).collect();
        find_cycle(&children).is_none()
    }

    /// Mostowski collapse: the unique `x` with `(reps, R̃) ≅ (TC({x}), ∈)`.
    pub fn collapse(&self) -> Result<HfSet, CodecError> {
        let ext = self.extensions();
        if !ext.contains_key(self.root.as_str()) {
            return Err(CodecError::UnknownLabel(self.root.clone()));
        }
        let mut value: BTreeMap<&str, HfSet> = BTreeMap::new();
        let mut on_stack: BTreeSet<&str> = BTreeSet::new();
        let mut stack: Vec<(&str, bool)> = vec![(self.root.as_str(), false)];
        while let Some((v, expanded)) = stack.pop() {
            if value.contains_key(v) {
                continue;
            }
            if expanded {
                let x = HfSet::from_elements(ext[v].iter().map(|c| value[c].clone()));
                value.insert(v, x);
                on_stack.remove(v);
                continue;
            }
            on_stack.insert(v);
            stack.push((v, true));
            for &c in &ext[v] {
                if on_stack.contains(c) {
                    return Err(CodecError::Cyclic(c.to_string()));
                }
                if !value.contains_key(c) {
                    stack.push((c, false));
                }
            }
        }
        if let Some(r) = ext.keys().find(|r| !value.contains_key(*r)) {
            return Err(CodecError::Unreachable(r.to_string()));
        }
        let mut by_value: HashMap<&HfSet, &str> = HashMap::new();
        for (r, x) in &value {
            if let Some(other) = by_value.insert(x, r) {
                return Err(CodecError::NotExtensional(other.to_string(), r.to_string()));
            }
        }
        Ok(value[self.root.as_str()].clone())
    }

    pub fn to_pair(&self) -> CodingPair {
        CodingPair {
            root: self.root.clone(),
            nodes: self.reps.clone(),
            rel: self.rel.clone(),
        }
    }
}

impl fmt::Display for QuotientStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_pair().fmt(f)
    }
}

impl FromStr for QuotientStructure {
    type Err = CodecError;

    fn from_str(text: &str) -> Result<Self, CodecError> {
        let p: CodingPair = text.parse()?;
        Ok(QuotientStructure {
            root: p.root,
            reps: p.nodes,
            rel: p.rel,
        })
    }
}

pub fn is_isomorphic(p: &CodingTree, q: &CodingTree) -> bool {
    p.len() == q.len() && p.canonical_form() == q.canonical_form()
}

/// The full ∈-chain unfolding of `x`, labeled `n0, n1, …` in preorder with
/// members visited in ascending serial order.
pub fn encode(x: &HfSet, budget: Budget) -> Result<CodingTree, CodecError> {
    budget.check("encode", x.unfolding_size())?;
    let mut labels = Vec::new();
    let mut parent = Vec::new();
    let mut stack: Vec<(&HfSet, Option<usize>)> = vec![(x, None)];
    while let Some((y, par)) = stack.pop() {
        let me = labels.len();
        labels.push(format!("n{me}"));
        parent.push(par);
        for z in y.elements().iter().rev() {
            stack.push((z, Some(me)));
        }
    }
    Ok(CodingTree::from_preorder(labels, parent))
}

/// Codes a finite class of sets: a fresh root over one tree per member.
pub fn class_encode(members: &[HfSet], budget: Budget) -> Result<CodingTree, CodecError> {
    let trees = members
        .iter()
        .map(|m| encode(m, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let mut b = TreeBuilder::new(budget);
    let root = b.root();
    let mut forms = BTreeSet::new();
    for t in &trees {
        if forms.insert(t.canonical_form()) {
            b.graft(root, t, 0)?;
        }
    }
    Ok(b.finish())
}

/// `p` codes a member of the set `q` codes.
pub fn codes_membership(p: &CodingTree, q: &CodingTree) -> bool {
    let target = p.canonical_form();
    let forms = q.node_forms();
    q.children(0).iter().any(|&c| forms[c] == target)
}

pub fn codes_equality(p: &CodingTree, q: &CodingTree) -> bool {
    is_isomorphic(p, q)
}

/// Assembles trees from grafted copies; output labels are fresh `n<k>` in preorder.
pub(crate) struct TreeBuilder {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    budget: Budget,
}

impl TreeBuilder {
    pub(crate) fn new(budget: Budget) -> Self {
        TreeBuilder {
            parent: vec![None],
            children: vec![Vec::new()],
            budget,
        }
    }

    pub(crate) fn root(&self) -> usize {
        0
    }

    pub(crate) fn add_child(&mut self, parent: usize) -> Result<usize, CodecError> {
        self.budget.check("tree construction", self.parent.len() + 1)?;
        let id = self.parent.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.children[parent].push(id);
        Ok(id)
    }

    /// Copies the subtree of `src` at `node` below `parent`.
    pub(crate) fn graft(&mut self, parent: usize, src: &CodingTree, node: usize) -> Result<usize, CodecError> {
        let size = src.subtree_len(node);
        self.budget.check("tree construction", self.parent.len() + size)?;
        let base = self.parent.len();
        for i in node..node + size {
            let id = self.parent.len();
            let p = if i == node {
                parent
            } else {
                base + (src.parent(i).expect("parent") - node)
            };
            self.parent.push(Some(p));
            self.children.push(Vec::new());
            self.children[p].push(id);
        }
        Ok(base)
    }

    pub(crate) fn finish(self) -> CodingTree {
        let mut order = Vec::with_capacity(self.parent.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in self.children[v].iter().rev() {
                stack.push(c);
            }
        }
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let labels = (0..order.len()).map(|k| format!("n{k}")).collect();
        let parent = order.iter().map(|&v| self.parent[v].map(|p| pos[p])).collect();
        CodingTree::from_preorder(labels, parent)
    }
}

//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls into the library's own decoding, isomorphism or
//! evaluation code; the oracles work directly on edge lists, set values and
//! order matrices.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use stf::forcing::{CondId, FinitePoset, Name};
use stf::{Budget, HfSet};

/// The set coded by a tree given as `root` plus `(child, parent)` edges, by
/// plain recursion over the child map.
pub fn decode_edges(root: &str, edges: &[(String, String)]) -> HfSet {
    let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (c, p) in edges {
        children.entry(p.as_str()).or_default().push(c.as_str());
    }
    fn go(v: &str, children: &BTreeMap<&str, Vec<&str>>) -> HfSet {
        let kids = children.get(v).map(|k| k.as_slice()).unwrap_or(&[]);
        HfSet::from_elements(kids.iter().map(|k| go(k, children)))
    }
    go(root, &children)
}

/// Reads `root`/`edge` lines without the library parser.
pub fn edges_of(text: &str) -> (String, Vec<(String, String)>) {
    let mut root = String::new();
    let mut edges = Vec::new();
    for line in text.lines() {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.as_slice() {
            ["root", r] => root = r.to_string(),
            ["edge", c, p] => edges.push((c.to_string(), p.to_string())),
            _ => {}
        }
    }
    (root, edges)
}

pub fn decode_text(text: &str) -> HfSet {
    let (root, edges) = edges_of(text);
    decode_edges(&root, &edges)
}

/// A tree as a parent array (node 0 is the root) rendered as pair text with
/// labels `labels[i]`.
pub fn pair_text(parent: &[usize], labels: &[String]) -> String {
    let mut s = format!("root {}\n", labels[0]);
    for i in 1..parent.len() {
        s.push_str(&format!("edge {} {}\n", labels[i], labels[parent[i]]));
    }
    s
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// Every parent array on `n` nodes with `parent[i] < i`: each unordered
/// rooted tree shape appears at least once.
pub fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for i in 1..n {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..i).map(move |p| {
                    let mut b = a.clone();
                    b.push(p);
                    b
                })
            })
            .collect();
    }
    out
}

/// No node has two children coding the same set.
pub fn siblings_distinct(parent: &[usize]) -> bool {
    let values = subtree_values(parent);
    let mut seen: BTreeSet<(usize, &HfSet)> = BTreeSet::new();
    (1..parent.len()).all(|i| seen.insert((parent[i], &values[i])))
}

/// The set coded at every node of a parent array.
pub fn subtree_values(parent: &[usize]) -> Vec<HfSet> {
    let n = parent.len();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        kids[parent[i]].push(i);
    }
    let mut values: Vec<Option<HfSet>> = vec![None; n];
    // parent[i] < i, so children come after parents.
    for v in (0..n).rev() {
        let x = HfSet::from_elements(kids[v].iter().map(|&k| values[k].clone().unwrap()));
        values[v] = Some(x);
    }
    values.into_iter().map(Option::unwrap).collect()
}

/// A random tree with at most `max_nodes` nodes whose siblings code distinct
/// sets, with shuffled random labels.
pub fn random_valid_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> (Vec<usize>, Vec<String>) {
    let n = rng.gen_range(1..=max_nodes);
    let mut parent = vec![0];
    for i in 1..n {
        parent.push(rng.gen_range(0..i));
    }
    // Drop later children that duplicate an earlier sibling, with their subtrees.
    loop {
        let values = subtree_values(&parent);
        let mut seen = BTreeSet::new();
        let dup = (1..parent.len()).find(|&i| !seen.insert((parent[i], values[i].clone())));
        let Some(d) = dup else { break };
        let mut keep = vec![true; parent.len()];
        for i in d..parent.len() {
            if i == d || !keep[parent[i]] {
                keep[i] = false;
            }
        }
        let mut new_index = vec![usize::MAX; parent.len()];
        let mut next = Vec::new();
        for i in 0..parent.len() {
            if keep[i] {
                new_index[i] = next.len();
                next.push(if i == 0 { 0 } else { new_index[parent[i]] });
            }
        }
        parent = next;
    }
    let mut labels: Vec<String> = (0..parent.len())
        .map(|i| {
            format!(
                "{}{}",
                ["a", "q", "node", "x_"][i % 4],
                rng.gen_range(0..1000) * 100 + i
            )
        })
        .collect();
    labels.shuffle(rng);
    (parent, labels)
}

/// A random set of rank at most `rank`, members drawn recursively.
pub fn random_set<R: Rng>(rng: &mut R, rank: u32, max_width: usize) -> HfSet {
    if rank == 0 {
        return HfSet::empty();
    }
    let w = rng.gen_range(0..=max_width);
    HfSet::from_elements((0..w).map(|_| {
        let r = rng.gen_range(0..rank);
        random_set(rng, r, max_width)
    }))
}

/// A random set of rank exactly 5: one to four subsets of V₄, at least one
/// of them containing a rank-3 set.
pub fn random_rank5<R: Rng>(rng: &mut R, v4: &[HfSet]) -> HfSet {
    let rank3: Vec<&HfSet> = v4.iter().filter(|x| x.rank() == 3).collect();
    let width = rng.gen_range(1..=4);
    let mut members = Vec::new();
    for i in 0..width {
        let mut m: Vec<HfSet> = v4.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if i == 0 {
            m.push((*rank3.choose(rng).unwrap()).clone());
        }
        members.push(HfSet::from_elements(m));
    }
    let x = HfSet::from_elements(members);
    assert_eq!(x.rank(), 5);
    x
}

pub fn v(n: usize) -> Vec<HfSet> {
    HfSet::cumulative(n, Budget::default()).unwrap()
}

pub fn ordinal(n: usize) -> HfSet {
    (0..n).fold(HfSet::empty(), |acc, _| {
        let mut m = acc.elements().to_vec();
        m.push(acc.clone());
        HfSet::from_elements(m)
    })
}

/// Plain recursive interpretation of a name by a set of conditions.
pub fn interpret_oracle(sigma: &Name, g: &BTreeSet<CondId>) -> HfSet {
    HfSet::from_elements(
        sigma
            .entries()
            .iter()
            .filter(|(_, c)| g.contains(c))
            .map(|(t, _)| interpret_oracle(t, g)),
    )
}

/// Order matrices of all posets on `n` elements with greatest element 0, one
/// per isomorphism class. `m[i][j]` means `i ≤ j`.
pub fn posets_with_top(n: usize) -> Vec<Vec<Vec<bool>>> {
    if n == 0 {
        return Vec::new();
    }
    let mut partial: Vec<Vec<Vec<bool>>> = vec![vec![vec![true]]];
    for j in 1..n {
        let mut next = Vec::new();
        for m in &partial {
            for mask in 0u32..1 << j {
                if mask & 1 == 0 {
                    continue;
                }
                let up: Vec<bool> = (0..j).map(|k| mask >> k & 1 == 1).collect();
                let closed = (0..j).all(|k| !up[k] || (0..j).all(|l| !m[k][l] || up[l]));
                if !closed {
                    continue;
                }
                let mut grown: Vec<Vec<bool>> = m
                    .iter()
                    .map(|row| {
                        let mut r = row.clone();
                        r.push(false);
                        r
                    })
                    .collect();
                let mut row = up.clone();
                row.push(true);
                grown.push(row);
                next.push(grown);
            }
        }
        partial = next;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    partial
        .into_iter()
        .filter(|m| {
            let canon = perms
                .iter()
                .map(|p| {
                    (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| m[p[i]][p[j]])
                        .collect::<Vec<bool>>()
                })
                .min()
                .unwrap();
            seen.insert(canon)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn poset_from_matrix(m: &[Vec<bool>]) -> FinitePoset {
    FinitePoset::from_matrix(m.to_vec(), 0).unwrap()
}

/// A random poset on `n` elements with top 0, as the closure of random
/// downward edges.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinitePoset {
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let mut pairs = Vec::new();
    for j in 1..n {
        pairs.push((j, 0));
        for k in 1..j {
            if rng.gen_bool(0.35) {
                pairs.push((j, k));
            }
        }
    }
    FinitePoset::new(labels, pairs, 0).unwrap()
}

/// Brute force: some condition lies below both.
pub fn compatible_oracle(m: &[Vec<bool>], p: usize, q: usize) -> bool {
    (0..m.len()).any(|r| m[r][p] && m[r][q])
}

/// Subsets of `0..n` as sorted sets.
pub fn subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Every `r ≤ p` has a member of `d` below it, by matrix lookup.
pub fn dense_below_oracle(m: &[Vec<bool>], d: &BTreeSet<usize>, p: usize) -> bool {
    (0..m.len()).filter(|&r| m[r][p]).all(|r| d.iter().any(|&q| m[q][r]))
}

pub fn predense_below_oracle(m: &[Vec<bool>], d: &BTreeSet<usize>, q: usize) -> bool {
    (0..m.len())
        .filter(|&r| m[r][q])
        .all(|r| d.iter().any(|&s| compatible_oracle(m, r, s)))
}

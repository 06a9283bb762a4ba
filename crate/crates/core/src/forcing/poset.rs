//! Orders and finite posets.
//!
//! Poset file format:
//!
//! ```text
//! cond <id>
//! leq <id> <id>     # first is below (stronger than) second
//! top <id>
//! ```
//!
//! `leq` lines are closed under reflexivity and transitivity on load.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::ForcingError;

pub type CondId = usize;

/// A preorder on conditions; `leq(p, q)` means `p` extends (is stronger than) `q`.
pub trait Order {
    type Cond: Clone + PartialEq + fmt::Debug;

    fn leq(&self, p: &Self::Cond, q: &Self::Cond) -> bool;
}

/// A finite partial order on `0..len()` with a greatest element.
pub trait Poset: Order<Cond = CondId> {
    fn len(&self) -> usize;

    fn top(&self) -> CondId;

    fn label(&self, p: CondId) -> String;

    fn lookup(&self, label: &str) -> Option<CondId>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn le(&self, p: CondId, q: CondId) -> bool {
        self.leq(&p, &q)
    }

    /// Conditions below `p`, ascending.
    fn below(&self, p: CondId) -> Vec<CondId> {
        (0..self.len()).filter(|&q| self.le(q, p)).collect()
    }

    fn compatible(&self, p: CondId, q: CondId) -> bool {
        (0..self.len()).any(|r| self.le(r, p) && self.le(r, q))
    }

    fn parse_cond(&self, label: &str) -> Result<CondId, ForcingError> {
        if label == "top" {
            return Ok(self.top());
        }
        self.lookup(label)
            .ok_or_else(|| ForcingError::UnknownCondition(label.to_string()))
    }
}

/// A poset given by an explicit order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: BTreeMap<String, CondId>,
    leq: Vec<Vec<bool>>,
    top: CondId,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` (each `(p, q)` reads
    /// `p ≤ q`) and checks antisymmetry and that `top` is the maximum.
    pub fn new(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (CondId, CondId)>,
        top: CondId,
    ) -> Result<Self, ForcingError> {
        let n = labels.len();
        if top >= n {
            return Err(ForcingError::BadPoset("top is not a condition".into()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(ForcingError::BadPoset(format!("duplicate condition {l:?}")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (p, q) in pairs {
            if p >= n || q >= n {
                return Err(ForcingError::BadPoset("order pair outside the conditions".into()));
            }
            leq[p][q] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let above = leq[k].clone();
                    for (cell, up) in leq[i].iter_mut().zip(above) {
                        *cell |= up;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(ForcingError::BadPoset(format!(
                        "{:?} and {:?} are below each other",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        if let Some(p) = (0..n).find(|&p| !leq[p][top]) {
            return Err(ForcingError::BadPoset(format!(
                "{:?} is not below top {:?}",
                labels[p], labels[top]
            )));
        }
        Ok(FinitePoset {
            labels,
            index,
            leq,
            top,
        })
    }

    /// Copies any poset into matrix form.
    pub fn from_poset<P: Poset + ?Sized>(p: &P) -> Self {
        let n = p.len();
        let labels: Vec<String> = (0..n).map(|i| p.label(i)).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| p.le(i, j)).collect()).collect();
        FinitePoset {
            labels,
            index,
            leq,
            top: p.top(),
        }
    }

    /// Builds from a raw order matrix that is already a partial order with
    /// maximum `top`.
    pub fn from_matrix(leq: Vec<Vec<bool>>, top: CondId) -> Result<Self, ForcingError> {
        let n = leq.len();
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| leq[i][j])
            .collect();
        let built = Self::new(labels, pairs, top)?;
        if built.leq != leq {
            return Err(ForcingError::BadPoset("matrix is not transitively closed".into()));
        }
        Ok(built)
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }
}

impl Order for FinitePoset {
    type Cond = CondId;

    fn leq(&self, p: &CondId, q: &CondId) -> bool {
        self.leq[*p][*q]
    }
}

impl Poset for FinitePoset {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn top(&self) -> CondId {
        self.top
    }

    fn label(&self, p: CondId) -> String {
        self.labels[p].clone()
    }

    fn lookup(&self, label: &str) -> Option<CondId> {
        self.index.get(label).copied()
    }
}

impl FromStr for FinitePoset {
    type Err = ForcingError;

    fn from_str(text: &str) -> Result<Self, ForcingError> {
        let mut labels: Vec<String> = Vec::new();
        let mut pairs_raw: Vec<(usize, String, String)> = Vec::new();
        let mut top: Option<(usize, String)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                ["cond", id] => labels.push(id.to_string()),
                ["leq", a, b] => pairs_raw.push((line, a.to_string(), b.to_string())),
                ["top", id] => {
                    if top.is_some() {
                        return Err(ForcingError::Format {
                            line,
                            message: "duplicate top line".into(),
                        });
                    }
                    top = Some((line, id.to_string()));
                }
                _ => {
                    return Err(ForcingError::Format {
                        line,
                        message: "expected `cond <id>`, `leq <id> <id>` or `top <id>`".into(),
                    })
                }
            }
        }
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let resolve = |line: usize, id: &str| {
            index.get(id).copied().ok_or_else(|| ForcingError::Format {
                line,
                message: format!("undeclared condition {id:?}"),
            })
        };
        let mut pairs = Vec::new();
        for (line, a, b) in &pairs_raw {
            pairs.push((resolve(*line, a)?, resolve(*line, b)?));
        }
        let (tline, tid) = top.ok_or(ForcingError::Format {
            line: 1,
            message: "missing top line".into(),
        })?;
        let top = resolve(tline, &tid)?;
        FinitePoset::new(labels, pairs, top)
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            writeln!(f, "cond {l}")?;
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq[i][j] {
                    writeln!(f, "leq {} {}", self.labels[i], self.labels[j])?;
                }
            }
        }
        writeln!(f, "top {}", self.labels[self.top])
    }
}

/// Binary strings of length at most `max_len`, ordered by reverse extension:
/// `s ≤ t` iff `s` extends `t`. The empty string is the top and is labeled `top`.
///
/// Ids enumerate strings by length, then by binary value: `id = 2^len - 1 + value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringPoset {
    max_len: usize,
}

impl StringPoset {
    pub const MAX_LEN: usize = 24;

    pub fn new(max_len: usize) -> Result<Self, ForcingError> {
        if max_len > Self::MAX_LEN {
            return Err(ForcingError::BoundTooLarge(max_len));
        }
        Ok(StringPoset { max_len })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn length(&self, p: CondId) -> usize {
        (usize::BITS - 1 - (p + 1).leading_zeros()) as usize
    }

    fn value(&self, p: CondId) -> usize {
        p + 1 - (1 << self.length(p))
    }

    pub fn id(&self, bits: &[bool]) -> Option<CondId> {
        if bits.len() > self.max_len {
            return None;
        }
        let v = bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        Some((1 << bits.len()) - 1 + v)
    }

    pub fn bits(&self, p: CondId) -> Vec<bool> {
        let (len, v) = (self.length(p), self.value(p));
        (0..len).rev().map(|i| v >> i & 1 == 1).collect()
    }

    /// Conditions of maximal length extending `p`: the maximal filters through `p`.
    pub fn branches(&self, p: CondId) -> Vec<CondId> {
        let (len, v) = (self.length(p), self.value(p));
        let extra = self.max_len - len;
        let base = (1 << self.max_len) - 1 + (v << extra);
        (0..1usize << extra).map(|k| base + k).collect()
    }
}

impl Order for StringPoset {
    type Cond = CondId;

    fn leq(&self, p: &CondId, q: &CondId) -> bool {
        let (lp, lq) = (self.length(*p), self.length(*q));
        lp >= lq && self.value(*p) >> (lp - lq) == self.value(*q)
    }
}

impl Poset for StringPoset {
    fn len(&self) -> usize {
        (1 << (self.max_len + 1)) - 1
    }

    fn top(&self) -> CondId {
        0
    }

    fn label(&self, p: CondId) -> String {
        if p == 0 {
            return "top".to_string();
        }
        self.bits(p).iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    fn lookup(&self, label: &str) -> Option<CondId> {
        if label == "top" {
            return Some(0);
        }
        let bits: Option<Vec<bool>> = label
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        self.id(&bits?)
    }

    fn below(&self, p: CondId) -> Vec<CondId> {
        let (len, v) = (self.length(p), self.value(p));
        (len..=self.max_len)
            .flat_map(|l| {
                let extra = l - len;
                let base = (1 << l) - 1 + (v << extra);
                (0..1usize << extra).map(move |k| base + k)
            })
            .collect()
    }

    fn compatible(&self, p: CondId, q: CondId) -> bool {
        self.le(p, q) || self.le(q, p)
    }
}

//! Hereditarily finite sets with structural identity.
//!
//! An [`HfSet`] stores its members sorted by the Ackermann order
//! `key(x) = Σ_{y ∈ x} 2^key(y)`. The order is compared structurally, so the
//! (possibly astronomically large) key never has to be materialized; see
//! [`HfSet::serial_key`] for the explicit value when it is small enough.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

/// Largest bit index [`HfSet::serial_key`] will set.
pub const MAX_KEY_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("node budget exceeded: {what} needs {needed} nodes, budget is {limit}")]
    Budget {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    #[error("serial key too large to materialize (a member key exceeds {MAX_KEY_BITS} bits)")]
    KeyTooLarge,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// Upper bound on the number of nodes an exhaustive or unfolding construction
/// may produce. Exceeding it is always an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(usize);

impl Budget {
    pub const DEFAULT: usize = 100_000;
    pub const ENV_VAR: &'static str = "STF_BUDGET";

    pub fn new(limit: usize) -> Self {
        Budget(limit)
    }

    /// Reads `STF_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(Budget(n)),
                _ => Err(format!("{} must be a positive integer, got {v:?}", Self::ENV_VAR)),
            },
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn limit(self) -> usize {
        self.0
    }

    pub fn check(self, what: &'static str, needed: usize) -> Result<(), HfError> {
        if needed > self.0 {
            Err(HfError::Budget {
                what,
                needed,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT)
    }
}

struct Node {
    elems: Box<[HfSet]>,
    rank: u32,
    hash: u64,
}

/// A hereditarily finite set. Cloning is cheap; values are immutable and
/// `Send + Sync`.
#[derive(Clone)]
pub struct HfSet(Arc<Node>);

impl HfSet {
    /// The empty set.
    pub fn empty() -> HfSet {
        Self::from_sorted(Vec::new())
    }

    /// The set whose members are the distinct values of `xs`.
    pub fn from_elements<I: IntoIterator<Item = HfSet>>(xs: I) -> HfSet {
        let mut v: Vec<HfSet> = xs.into_iter().collect();
        v.sort();
        v.dedup();
        Self::from_sorted(v)
    }

    // `elems` must be strictly ascending.
    fn from_sorted(elems: Vec<HfSet>) -> HfSet {
        let rank = elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0);
        let mut h = DefaultHasher::new();
        elems.len().hash(&mut h);
        for e in &elems {
            e.0.hash.hash(&mut h);
        }
        HfSet(Arc::new(Node {
            elems: elems.into_boxed_slice(),
            rank,
            hash: h.finish(),
        }))
    }

    pub fn singleton(x: HfSet) -> HfSet {
        Self::from_sorted(vec![x])
    }

    /// `{x, y}`.
    pub fn pair(x: HfSet, y: HfSet) -> HfSet {
        Self::from_elements([x, y])
    }

    /// Kuratowski pair `{{x}, {x, y}}`.
    pub fn kpair(x: &HfSet, y: &HfSet) -> HfSet {
        Self::pair(Self::singleton(x.clone()), Self::pair(x.clone(), y.clone()))
    }

    /// Inverse of [`HfSet::kpair`], if `self` is a Kuratowski pair.
    pub fn as_kpair(&self) -> Option<(HfSet, HfSet)> {
        match self.elements() {
            [single] if single.len() == 1 => {
                let x = single.elements()[0].clone();
                Some((x.clone(), x))
            }
            [a, b] => {
                let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                if small.len() != 1 || big.len() != 2 {
                    return None;
                }
                let x = &small.elements()[0];
                if !big.contains(x) {
                    return None;
                }
                let y = big.elements().iter().find(|e| *e != x)?;
                Some((x.clone(), y.clone()))
            }
            _ => None,
        }
    }

    /// The von Neumann ordinal `n`.
    pub fn ordinal(n: usize, budget: Budget) -> Result<HfSet, HfError> {
        budget.check("ordinal", n + 1)?;
        let mut members = Vec::with_capacity(n);
        let mut cur = HfSet::empty();
        for _ in 0..n {
            members.push(cur.clone());
            cur = Self::from_sorted(members.clone());
        }
        Ok(cur)
    }

    /// Members in ascending serial order.
    pub fn elements(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, y: &HfSet) -> bool {
        self.0.elems.binary_search(y).is_ok()
    }

    /// Von Neumann rank: 0 for ∅, else one more than the largest member rank.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn union(&self) -> HfSet {
        Self::from_elements(self.elements().iter().flat_map(|y| y.elements().iter().cloned()))
    }

    pub fn is_transitive(&self) -> bool {
        self.elements()
            .iter()
            .all(|y| y.elements().iter().all(|z| self.contains(z)))
    }

    /// True iff `self` is a von Neumann ordinal.
    pub fn is_ordinal(&self) -> bool {
        // Transitive set of transitive sets; the length check is a cheap reject.
        self.len() == self.rank() as usize && self.is_transitive() && self.elements().iter().all(|y| y.is_ordinal())
    }

    /// Members of `TC({x})`, i.e. `x` together with everything hereditarily in it.
    pub fn tc_single(&self) -> BTreeSet<HfSet> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(x) = stack.pop() {
            if seen.insert(x.clone()) {
                stack.extend(x.elements().iter().cloned());
            }
        }
        seen
    }

    /// Ackermann code `Σ_{y ∈ x} 2^key(y)`.
    pub fn serial_key(&self) -> Result<BigUint, HfError> {
        fn go(x: &HfSet, memo: &mut HashMap<HfSet, BigUint>) -> Result<BigUint, HfError> {
            if let Some(k) = memo.get(x) {
                return Ok(k.clone());
            }
            let mut key = BigUint::default();
            for y in x.elements() {
                let ky = go(y, memo)?;
                let bit = u64::try_from(&ky).map_err(|_| HfError::KeyTooLarge)?;
                if bit >= MAX_KEY_BITS {
                    return Err(HfError::KeyTooLarge);
                }
                key.set_bit(bit, true);
            }
            memo.insert(x.clone(), key.clone());
            Ok(key)
        }
        go(self, &mut HashMap::new())
    }

    /// Number of nodes in the full ∈-chain unfolding of `self`, saturating.
    pub fn unfolding_size(&self) -> usize {
        fn go(x: &HfSet, memo: &mut HashMap<HfSet, usize>) -> usize {
            if let Some(&n) = memo.get(x) {
                return n;
            }
            let n = x
                .elements()
                .iter()
                .fold(1usize, |acc, y| acc.saturating_add(go(y, memo)));
            memo.insert(x.clone(), n);
            n
        }
        go(self, &mut HashMap::new())
    }

    /// All sets of rank `< n`, i.e. the level `V_n`, in ascending serial order.
    pub fn cumulative(n: usize, budget: Budget) -> Result<Vec<HfSet>, HfError> {
        let mut level = Vec::new();
        for _ in 0..n {
            let size = 1usize
                .checked_shl(level.len() as u32)
                .filter(|_| level.len() < usize::BITS as usize)
                .unwrap_or(usize::MAX);
            budget.check("cumulative level", size)?;
            // Bit i of the mask selects the i-th set of the previous level, so
            // masks enumerate the next level in Ackermann order.
            let next: Vec<HfSet> = (0..size)
                .map(|mask| {
                    Self::from_sorted(
                        level
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, x): (usize, &HfSet)| x.clone())
                            .collect(),
                    )
                })
                .collect();
            level = next;
        }
        Ok(level)
    }

    /// Parses the literal grammar `set ::= "{" (set ("," set)*)? "}"`.
    pub fn parse(text: &str) -> Result<HfSet, HfError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let x = p.set()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input after set"));
        }
        Ok(x)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> HfError {
        HfError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn set(&mut self) -> Result<HfSet, HfError> {
        // Explicit stack: deeply nested literals must not overflow.
        let mut stack: Vec<Vec<HfSet>> = Vec::new();
        self.ws();
        if self.peek() != Some(b'{') {
            return Err(self.err("expected '{'"));
        }
        self.pos += 1;
        stack.push(Vec::new());
        loop {
            self.ws();
            match self.peek() {
                Some(b'}') => {
                    self.pos += 1;
                    let done = HfSet::from_elements(stack.pop().expect("open set"));
                    match stack.last_mut() {
                        None => return Ok(done),
                        Some(parent) => {
                            parent.push(done);
                            self.ws();
                            match self.peek() {
                                Some(b',') => {
                                    self.pos += 1;
                                    self.ws();
                                    if self.peek() != Some(b'{') {
                                        return Err(self.err("expected '{' after ','"));
                                    }
                                }
                                Some(b'}') => {}
                                None => return Err(self.err("unexpected end of input")),
                                _ => return Err(self.err("expected ',' or '}'")),
                            }
                        }
                    }
                }
                Some(b'{') => {
                    self.pos += 1;
                    stack.push(Vec::new());
                }
                None => return Err(self.err("unexpected end of input")),
                _ => return Err(self.err("expected '{' or '}'")),
            }
        }
    }
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.rank == other.0.rank && self.0.elems == other.0.elems)
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for HfSet {
    /// Ackermann order. Rank is monotone in the key, so it is compared first;
    /// otherwise the largest differing member decides, as in a binary numeral.
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match self.rank().cmp(&other.rank()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (self.elements(), other.elements());
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical form: no whitespace, members in ascending serial order.
impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HfSet {
    type Err = HfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HfSet::parse(s)
    }
}

impl Default for HfSet {
    fn default() -> Self {
        HfSet::empty()
    }
}

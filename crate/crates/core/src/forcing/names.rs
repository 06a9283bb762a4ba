//! Names: hereditarily finite sets of (name, condition) pairs.
//!
//! Literal syntax, with conditions written as their poset labels:
//!
//! ```text
//! []                                   the empty name
//! [(check({}), 1), ([], top)]          two entries
//! check({{}})                          the check name of a set
//! ```

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::Rng;

use super::dense::GenericFilter;
use super::poset::{CondId, Poset, StringPoset};
use super::ForcingError;
use crate::hfset::{Budget, HfSet};

const MAX_NESTING: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct NameNode {
    rank: usize,
    entries: BTreeSet<(Name, CondId)>,
}

/// A name. Ordered by rank first, then by entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<NameNode>);

impl Name {
    pub fn empty() -> Name {
        Name::new([])
    }

    pub fn new(entries: impl IntoIterator<Item = (Name, CondId)>) -> Name {
        let entries: BTreeSet<(Name, CondId)> = entries.into_iter().collect();
        let rank = entries.iter().map(|(t, _)| t.rank() + 1).max().unwrap_or(0);
        Name(Arc::new(NameNode { rank, entries }))
    }

    pub fn entries(&self) -> &BTreeSet<(Name, CondId)> {
        &self.0.entries
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn is_empty(&self) -> bool {
        self.0.entries.is_empty()
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// The set `x` with `self = x̌`, if this is a check name for the given top.
    pub fn as_check(&self, top: CondId) -> Option<HfSet> {
        let mut members = Vec::with_capacity(self.entries().len());
        for (t, c) in self.entries() {
            if *c != top {
                return None;
            }
            members.push(t.as_check(top)?);
        }
        Some(HfSet::from_elements(members))
    }

    /// Every entry condition is a string shorter than the name's rank, all the
    /// way down. These are the names whose evaluation at a string is stable
    /// under extension once the string is longer than the rank.
    pub fn is_rank_bounded(&self, sp: &StringPoset) -> bool {
        self.entries()
            .iter()
            .all(|(t, c)| sp.length(*c) < self.rank() && t.is_rank_bounded(sp))
    }

    /// Renders the name with conditions written as poset labels, using the
    /// `check(...)` shorthand wherever it applies.
    pub fn render<P: Poset + ?Sized>(&self, poset: &P) -> String {
        let mut out = String::new();
        self.render_into(poset, true, &mut out);
        out
    }

    /// Like [`Name::render`] but always spelled out as entry lists.
    pub fn render_expanded<P: Poset + ?Sized>(&self, poset: &P) -> String {
        let mut out = String::new();
        self.render_into(poset, false, &mut out);
        out
    }

    fn render_into<P: Poset + ?Sized>(&self, poset: &P, sugar: bool, out: &mut String) {
        if self.is_empty() {
            out.push_str("[]");
            return;
        }
        if sugar {
            if let Some(x) = self.as_check(poset.top()) {
                out.push_str(&format!("check({x})"));
                return;
            }
        }
        out.push('[');
        for (i, (t, c)) in self.entries().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('(');
            t.render_into(poset, sugar, out);
            out.push_str(", ");
            out.push_str(&poset.label(*c));
            out.push(')');
        }
        out.push(']');
    }

    pub fn parse<P: Poset + ?Sized>(text: &str, poset: &P) -> Result<Name, ForcingError> {
        let mut parser = Parser { text, pos: 0, poset };
        let name = parser.name(0)?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(name)
    }
}

struct Parser<'a, P: ?Sized> {
    text: &'a str,
    pos: usize,
    poset: &'a P,
}

impl<P: Poset + ?Sized> Parser<'_, P> {
    fn error(&self, message: &str) -> ForcingError {
        ForcingError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ForcingError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn name(&mut self, depth: usize) -> Result<Name, ForcingError> {
        if depth > MAX_NESTING {
            return Err(self.error("names nested too deeply"));
        }
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut entries = Vec::new();
                if self.peek() == Some(']') {
                    self.pos += 1;
                    return Ok(Name::empty());
                }
                loop {
                    self.expect('(')?;
                    let t = self.name(depth + 1)?;
                    self.expect(',')?;
                    let c = self.cond()?;
                    self.expect(')')?;
                    entries.push((t, c));
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Name::new(entries));
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
            }
            Some('c') if self.text[self.pos..].starts_with("check") => {
                self.pos += "check".len();
                self.expect('(')?;
                let start = self.pos;
                let len = self.text[start..]
                    .find(')')
                    .ok_or_else(|| self.error("unterminated check(...)"))?;
                let x = HfSet::parse(&self.text[start..start + len]).map_err(|e| match e {
                    crate::hfset::HfError::Syntax { offset, message } => ForcingError::Syntax {
                        offset: start + offset,
                        message,
                    },
                    other => other.into(),
                })?;
                self.pos = start + len + 1;
                Ok(check_name(&x, self.poset))
            }
            Some(_) => Err(self.error("expected '[' or 'check('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn cond(&mut self) -> Result<CondId, ForcingError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "()[],".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a condition"));
        }
        let c = self.poset.parse_cond(&rest[..len])?;
        self.pos += len;
        Ok(c)
    }
}

/// `x̌ = {(y̌, top) : y ∈ x}`.
pub fn check_name<P: Poset + ?Sized>(x: &HfSet, poset: &P) -> Name {
    fn go(x: &HfSet, top: CondId, memo: &mut HashMap<HfSet, Name>) -> Name {
        if let Some(n) = memo.get(x) {
            return n.clone();
        }
        let n = Name::new(x.elements().iter().map(|y| (go(y, top, memo), top)));
        memo.insert(x.clone(), n.clone());
        n
    }
    go(x, poset.top(), &mut HashMap::new())
}

/// `σ^G = {τ^G : (τ, p) ∈ σ, p ∈ G}`.
pub fn interpret(sigma: &Name, g: &GenericFilter) -> HfSet {
    evaluate(sigma, &mut |c| g.contains(c), &mut HashMap::new())
}

/// Interpretation against an arbitrary membership test for the filter.
pub(crate) fn evaluate(
    sigma: &Name,
    member: &mut dyn FnMut(CondId) -> bool,
    memo: &mut HashMap<usize, HfSet>,
) -> HfSet {
    if let Some(x) = memo.get(&sigma.key()) {
        return x.clone();
    }
    let mut elems = Vec::new();
    for (t, c) in sigma.entries() {
        if member(*c) {
            elems.push(evaluate(t, member, memo));
        }
    }
    let x = HfSet::from_elements(elems);
    memo.insert(sigma.key(), x.clone());
    x
}

/// All rank-bounded names (see [`Name::is_rank_bounded`]) of rank at most
/// `max_rank`, ordered by rank and then by the order on names. Fails when the
/// class would exceed `budget` names.
pub fn rank_bounded_names(sp: &StringPoset, max_rank: usize, budget: Budget) -> Result<Vec<Name>, ForcingError> {
    let mut all = vec![Name::empty()];
    for r in 0..max_rank {
        let conds: Vec<CondId> = (0..sp.len()).filter(|&c| sp.length(c) <= r).collect();
        let pairs: Vec<(Name, CondId)> = all
            .iter()
            .flat_map(|t| conds.iter().map(move |&c| (t.clone(), c)))
            .collect();
        if pairs.len() >= 40 || all.len() + (1usize << pairs.len()) > budget.limit() {
            return Err(ForcingError::TooMany(format!(
                "rank-bounded names of rank {} range over {} entries",
                r + 1,
                pairs.len()
            )));
        }
        let mut next = Vec::new();
        for mask in 1usize..1 << pairs.len() {
            let entries = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone());
            let n = Name::new(entries);
            if n.rank() == r + 1 {
                next.push(n);
            }
        }
        next.sort();
        all.extend(next);
    }
    Ok(all)
}

/// A random name of rank at most `max_rank` with at most `max_width` entries
/// per level and conditions drawn uniformly from the poset.
pub fn random_name<P: Poset + ?Sized, R: Rng>(rng: &mut R, poset: &P, max_rank: usize, max_width: usize) -> Name {
    if max_rank == 0 {
        return Name::empty();
    }
    let width = rng.gen_range(0..=max_width);
    Name::new((0..width).map(|_| {
        let sub = rng.gen_range(0..max_rank);
        let t = random_name(rng, poset, sub, max_width);
        (t, rng.gen_range(0..poset.len()))
    }))
}

//! Almost-disjoint coding of a finite predicate into a set of naturals below
//! a horizon.
//!
//! Each index `β` gets a set `A_β` (the bits of `β`) and its transform
//! `A'_β`, the codes of the initial segments of `A_β` that fall below the
//! horizon. Conditions `(g, S)` pair a binary string with a set of committed
//! indices; committing `β` forbids new 1s of `g` on `A'_β`. A generic run
//! commits the target indices and hits every other `A'_β` high up, so the
//! target can be read back from `X = {γ : g(γ) = 1}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forcing::{descend, DenseSet, Order};
use crate::hfset::{Budget, HfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdError {
    #[error("horizon too small: {0}")]
    HorizonTooSmall(String),
    #[error("target index {index} is not below the number of indices {indices}")]
    BadTarget { index: usize, indices: usize },
    #[error("cannot parse {0}")]
    Parse(String),
    #[error(transparent)]
    Budget(#[from] HfError),
}

/// The natural whose binary expansion is `1` followed by `bits`.
pub fn code_segment(bits: &[bool]) -> BigUint {
    let mut n = BigUint::from(1u32);
    for &b in bits {
        n <<= 1;
        if b {
            n += 1u32;
        }
    }
    n
}

/// The characteristic string of `b` on `[0, n)`.
pub fn characteristic(b: &BTreeSet<usize>, n: usize) -> Vec<bool> {
    (0..n).map(|i| b.contains(&i)).collect()
}

/// Codes of the characteristic strings of `b` on `[0, n)` for every `n ≤ horizon`.
pub fn ad_transform(b: &BTreeSet<usize>, horizon: usize) -> BTreeSet<BigUint> {
    let full = characteristic(b, horizon);
    (0..=horizon).map(|n| code_segment(&full[..n])).collect()
}

/// The first place below `horizon` where two sets differ.
pub fn first_disagreement(a: &BTreeSet<usize>, b: &BTreeSet<usize>, horizon: usize) -> Option<usize> {
    (0..horizon).find(|i| a.contains(i) != b.contains(i))
}

/// The almost-disjoint family for a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdFamily {
    horizon: usize,
    bases: Vec<BTreeSet<usize>>,
    sets: Vec<BTreeSet<usize>>,
}

impl AdFamily {
    pub fn indices(&self) -> usize {
        self.sets.len()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// `A_β`.
    pub fn base(&self, beta: usize) -> &BTreeSet<usize> {
        &self.bases[beta]
    }

    /// `A'_β`, the part of the transform of `A_β` below the horizon.
    pub fn coded(&self, beta: usize) -> &BTreeSet<usize> {
        &self.sets[beta]
    }

    fn in_any(&self, gamma: usize, committed: &BTreeSet<usize>) -> bool {
        committed.iter().any(|&d| self.sets[d].contains(&gamma))
    }
}

impl fmt::Display for AdFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "indices {}", self.indices())?;
        write!(f, "horizon {}", self.horizon)?;
        for beta in 0..self.indices() {
            write!(
                f,
                "\nbeta {beta} A {} A' {}",
                fmt_set(&self.bases[beta]),
                fmt_set(&self.sets[beta])
            )?;
        }
        Ok(())
    }
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// `A_β` is the set of bit positions of `β`; `A'_β` keeps the codes of its
/// initial segments that lie below `horizon`.
pub fn family(num_indices: usize, horizon: usize, budget: Budget) -> Result<AdFamily, AdError> {
    budget.check("family entries", num_indices.saturating_mul(horizon + 1))?;
    if horizon < usize::BITS as usize && num_indices > 1 << horizon {
        return Err(AdError::HorizonTooSmall(format!(
            "{num_indices} indices need more than {horizon} bits"
        )));
    }
    let cap = BigUint::from(horizon);
    let bases: Vec<BTreeSet<usize>> = (0..num_indices)
        .map(|beta| (0..usize::BITS as usize).filter(|i| beta >> i & 1 == 1).collect())
        .collect();
    let sets = bases
        .iter()
        .map(|b| {
            ad_transform(b, horizon)
                .into_iter()
                .filter(|c| *c < cap)
                .map(|c| usize::try_from(c).expect("below the horizon"))
                .collect()
        })
        .collect();
    Ok(AdFamily { horizon, bases, sets })
}

/// A condition `(g, S)`. Written `bits:indices`, e.g. `0110:0,2` or `:`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QCondition {
    pub g: Vec<bool>,
    pub s: BTreeSet<usize>,
}

impl QCondition {
    pub fn new(g: Vec<bool>, s: impl IntoIterator<Item = usize>) -> Self {
        QCondition {
            g,
            s: s.into_iter().collect(),
        }
    }

    /// `{γ : g(γ) = 1}`.
    pub fn ones(&self) -> BTreeSet<usize> {
        (0..self.g.len()).filter(|&i| self.g[i]).collect()
    }
}

impl fmt::Display for QCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.g {
            f.write_str(if b { "1" } else { "0" })?;
        }
        let s: Vec<String> = self.s.iter().map(|x| x.to_string()).collect();
        write!(f, ":{}", s.join(","))
    }
}

impl FromStr for QCondition {
    type Err = AdError;

    fn from_str(text: &str) -> Result<Self, AdError> {
        let bad = || AdError::Parse(format!("condition {text:?}; expected bits:indices"));
        let (bits, indices) = text.trim().split_once(':').ok_or_else(bad)?;
        let g = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<_, _>>()?;
        Ok(QCondition {
            g,
            s: parse_indices(indices).map_err(|_| bad())?,
        })
    }
}

/// Parses a comma-separated list of naturals; the empty string is the empty set.
pub fn parse_indices(text: &str) -> Result<BTreeSet<usize>, AdError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(BTreeSet::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| AdError::Parse(format!("index list {text:?}")))
        })
        .collect()
}

/// No position in `[from, to)` of `h` is a 1 lying in `A'_β` for `β ∈ s`.
fn no_new_ones(h: &[bool], from: usize, to: usize, s: &BTreeSet<usize>, fam: &AdFamily) -> bool {
    s.iter().all(|&b| fam.coded(b).range(from..to).all(|&gamma| !h[gamma]))
}

/// `(h, T) ≤ (g, S)`: `h` extends `g`, `S ⊆ T`, and `h` adds no 1 on `A'_β` for `β ∈ S`.
pub fn q_leq(stronger: &QCondition, weaker: &QCondition, fam: &AdFamily) -> bool {
    let (h, g) = (&stronger.g, &weaker.g);
    h.len() >= g.len()
        && h[..g.len()] == g[..]
        && weaker.s.is_subset(&stronger.s)
        && no_new_ones(h, g.len(), h.len(), &weaker.s, fam)
}

/// The weakest common extension, `(longer string, S ∪ T)`, if there is one.
pub fn common_extension(c1: &QCondition, c2: &QCondition, fam: &AdFamily) -> Option<QCondition> {
    let long = if c1.g.len() >= c2.g.len() { c1 } else { c2 };
    let w = QCondition {
        g: long.g.clone(),
        s: c1.s.union(&c2.s).copied().collect(),
    };
    (q_leq(&w, c1, fam) && q_leq(&w, c2, fam)).then_some(w)
}

pub fn q_compatible(c1: &QCondition, c2: &QCondition, fam: &AdFamily) -> bool {
    common_extension(c1, c2, fam).is_some()
}

/// The coding poset over a family, with strings up to the family's horizon.
#[derive(Debug, Clone, Copy)]
pub struct QPoset<'a> {
    pub fam: &'a AdFamily,
}

impl Order for QPoset<'_> {
    type Cond = QCondition;

    fn leq(&self, p: &QCondition, q: &QCondition) -> bool {
        q_leq(p, q, self.fam)
    }
}

/// Every condition of the truncated poset, for small horizons only.
pub fn all_conditions(fam: &AdFamily, budget: Budget) -> Result<Vec<QCondition>, AdError> {
    let h = fam.horizon();
    let k = fam.indices();
    if h >= 20 || k >= 20 {
        return Err(AdError::Budget(HfError::Budget {
            what: "conditions",
            needed: usize::MAX,
            limit: budget.limit(),
        }));
    }
    budget.check("conditions", ((1usize << (h + 1)) - 1) << k)?;
    let mut out = Vec::new();
    for len in 0..=h {
        for v in 0..1usize << len {
            let g: Vec<bool> = (0..len).rev().map(|i| v >> i & 1 == 1).collect();
            for mask in 0..1usize << k {
                out.push(QCondition::new(g.clone(), (0..k).filter(|b| mask >> b & 1 == 1)));
            }
        }
    }
    Ok(out)
}

/// The dense sets driving a coding run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDense<'a> {
    /// `|g| ≥ n`.
    Length { fam: &'a AdFamily, n: usize },
    /// `β ∈ S`.
    Commit { beta: usize },
    /// Some `γ ∈ A'_β` with `γ ≥ n` has `g(γ) = 1`, or no such `γ` can still
    /// be added below the horizon without breaking a commitment.
    Hit { fam: &'a AdFamily, beta: usize, n: usize },
}

impl QDense<'_> {
    fn filler(fam: &AdFamily, c: &QCondition, to: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        let mut g = c.g.clone();
        for i in g.len()..to {
            g.push(!fam.in_any(i, &c.s) && rng.gen_bool(0.5));
        }
        g
    }

    fn reachable(fam: &AdFamily, c: &QCondition, beta: usize, n: usize) -> Option<usize> {
        let from = n.max(c.g.len());
        if from >= fam.horizon() {
            return None;
        }
        fam.coded(beta)
            .range(from..fam.horizon())
            .copied()
            .find(|&gamma| !fam.in_any(gamma, &c.s))
    }

    fn hit(fam: &AdFamily, c: &QCondition, beta: usize, n: usize) -> bool {
        n < c.g.len() && fam.coded(beta).range(n..c.g.len()).any(|&gamma| c.g[gamma])
    }
}

impl<'a, 'f> DenseSet<QPoset<'f>> for QDense<'a> {
    fn contains(&self, _: &QPoset<'f>, c: &QCondition) -> bool {
        match *self {
            QDense::Length { n, .. } => c.g.len() >= n,
            QDense::Commit { beta } => c.s.contains(&beta),
            QDense::Hit { fam, beta, n } => Self::hit(fam, c, beta, n) || Self::reachable(fam, c, beta, n).is_none(),
        }
    }

    fn extend(&self, _: &QPoset<'f>, c: &QCondition, rng: &mut ChaCha8Rng) -> Option<QCondition> {
        match *self {
            QDense::Length { fam, n } => (n <= fam.horizon()).then(|| QCondition {
                g: Self::filler(fam, c, n.max(c.g.len()), rng),
                s: c.s.clone(),
            }),
            QDense::Commit { beta } => {
                let mut s = c.s.clone();
                s.insert(beta);
                Some(QCondition { g: c.g.clone(), s })
            }
            QDense::Hit { fam, beta, n } => {
                let gamma = Self::reachable(fam, c, beta, n)?;
                let mut g = Self::filler(fam, c, gamma, rng);
                g.push(true);
                Some(QCondition { g, s: c.s.clone() })
            }
        }
    }
}

impl fmt::Display for QDense<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QDense::Length { n, .. } => write!(f, "length>={n}"),
            QDense::Commit { beta } => write!(f, "commit {beta}"),
            QDense::Hit { beta, n, .. } => write!(f, "hit {beta} above {n}"),
        }
    }
}

/// The length after which target indices are committed.
pub fn commit_bound(horizon: usize) -> usize {
    horizon / 4
}

fn check_target(target: &BTreeSet<usize>, indices: usize) -> Result<(), AdError> {
    match target.iter().find(|&&b| b >= indices) {
        Some(&index) => Err(AdError::BadTarget { index, indices }),
        None => Ok(()),
    }
}

/// The dense sets of a run in the order they are met: lengths up to the
/// commit bound, commitments for the target, hits for every other index at
/// every height, then the remaining lengths.
///
/// Fails when some non-target index has no room in `A'_β` between the commit
/// bound and the horizon outside the committed sets.
pub fn standard_denses<'a>(target: &BTreeSet<usize>, fam: &'a AdFamily) -> Result<Vec<QDense<'a>>, AdError> {
    check_target(target, fam.indices())?;
    let h = fam.horizon();
    let bound = commit_bound(h);
    for beta in (0..fam.indices()).filter(|b| !target.contains(b)) {
        let room = fam.coded(beta).range(bound..h).any(|&gamma| !fam.in_any(gamma, target));
        if !room {
            return Err(AdError::HorizonTooSmall(format!(
                "index {beta} has no free code in [{bound}, {h})"
            )));
        }
    }
    let mut out: Vec<QDense<'a>> = (0..=bound).map(|n| QDense::Length { fam, n }).collect();
    out.extend(target.iter().map(|&beta| QDense::Commit { beta }));
    for n in 0..h {
        for beta in (0..fam.indices()).filter(|b| !target.contains(b)) {
            out.push(QDense::Hit { fam, beta, n });
        }
    }
    out.extend((bound + 1..=h).map(|n| QDense::Length { fam, n }));
    Ok(out)
}

/// Output of a coding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub target: BTreeSet<usize>,
    pub indices: usize,
    pub horizon: usize,
    pub bound: usize,
    pub x: BTreeSet<usize>,
    pub decoded: BTreeSet<usize>,
}

impl fmt::Display for Simulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "indices {}", self.indices)?;
        writeln!(f, "horizon {}", self.horizon)?;
        writeln!(f, "target {}", fmt_set(&self.target))?;
        writeln!(f, "bound {}", self.bound)?;
        writeln!(f, "x {}", fmt_set(&self.x))?;
        write!(f, "decoded {}", fmt_set(&self.decoded))
    }
}

/// Runs a descending chain from `(∅, ∅)` through [`standard_denses`] and
/// reads `X` off the final string.
pub fn simulate(
    target: &BTreeSet<usize>,
    num_indices: usize,
    horizon: usize,
    seed: u64,
    budget: Budget,
) -> Result<Simulation, AdError> {
    let fam = family(num_indices, horizon, budget)?;
    let denses = standard_denses(target, &fam)?;
    let chain = descend(&QPoset { fam: &fam }, QCondition::default(), &denses, seed)
        .map_err(|s| AdError::HorizonTooSmall(format!("could not meet {} below {}", denses[s.index], s.at)))?;
    let last = chain.last().expect("chain starts nonempty");
    let x = last.ones();
    let bound = commit_bound(horizon);
    for beta in (0..num_indices).filter(|b| !target.contains(b)) {
        if fam.coded(beta).range(bound..).all(|g| !x.contains(g)) {
            return Err(AdError::HorizonTooSmall(format!(
                "index {beta} was never hit at or above {bound}"
            )));
        }
    }
    let decoded = decode_predicate(&x, &fam, bound);
    Ok(Simulation {
        target: target.clone(),
        indices: num_indices,
        horizon,
        bound,
        x,
        decoded,
    })
}

/// `{β : X ∩ A'_β ⊆ [0, bound)}`.
pub fn decode_predicate(x: &BTreeSet<usize>, fam: &AdFamily, bound: usize) -> BTreeSet<usize> {
    (0..fam.indices())
        .filter(|&b| fam.coded(b).range(bound..).all(|g| !x.contains(g)))
        .collect()
}

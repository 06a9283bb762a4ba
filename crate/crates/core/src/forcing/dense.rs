//! Dense sets, descending chains through them, generic filters, and the
//! pretameness witness search.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poset::{CondId, Order, Poset};
use super::ForcingError;
use crate::hfset::Budget;

/// Every condition has an extension in `d`.
pub fn is_dense<P: Poset + ?Sized>(poset: &P, d: &BTreeSet<CondId>) -> bool {
    (0..poset.len()).all(|p| d.iter().any(|&q| poset.le(q, p)))
}

/// The first `r ≤ p` (by id) with no extension in `d`, if any.
pub fn density_failure_below<P: Poset + ?Sized>(poset: &P, d: &BTreeSet<CondId>, p: CondId) -> Option<CondId> {
    poset.below(p).into_iter().find(|&r| !d.iter().any(|&q| poset.le(q, r)))
}

pub fn is_dense_below<P: Poset + ?Sized>(poset: &P, d: &BTreeSet<CondId>, p: CondId) -> bool {
    density_failure_below(poset, d, p).is_none()
}

/// The first `r ≤ q` incompatible with every member of `d`, if any.
pub fn predensity_failure_below<P: Poset + ?Sized>(poset: &P, d: &BTreeSet<CondId>, q: CondId) -> Option<CondId> {
    poset
        .below(q)
        .into_iter()
        .find(|&r| !d.iter().any(|&s| poset.compatible(r, s)))
}

/// Every extension of `q` is compatible with some member of `d`.
pub fn is_predense_below<P: Poset + ?Sized>(poset: &P, d: &BTreeSet<CondId>, q: CondId) -> bool {
    predensity_failure_below(poset, d, q).is_none()
}

/// A set of conditions that a descending chain can be pushed into.
pub trait DenseSet<O: Order + ?Sized> {
    fn contains(&self, order: &O, c: &O::Cond) -> bool;

    /// Some member of the set extending `p`, or `None` if there is none.
    fn extend(&self, order: &O, p: &O::Cond, rng: &mut ChaCha8Rng) -> Option<O::Cond>;
}

impl<P: Poset + ?Sized> DenseSet<P> for BTreeSet<CondId> {
    fn contains(&self, _: &P, c: &CondId) -> bool {
        BTreeSet::contains(self, c)
    }

    fn extend(&self, order: &P, p: &CondId, rng: &mut ChaCha8Rng) -> Option<CondId> {
        let candidates: Vec<CondId> = self.iter().copied().filter(|&q| order.le(q, *p)).collect();
        if candidates.is_empty() {
            return None;
        }
        Some(candidates[rng.gen_range(0..candidates.len() as u64) as usize])
    }
}

/// A descent that could not continue: no member of `denses[index]` lies below `at`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stuck<C> {
    pub index: usize,
    pub at: C,
}

/// Builds `start ≥ c_0 ≥ c_1 ≥ …` with `c_i ∈ denses[i]`, keeping the current
/// condition whenever it already lies in the next set. Returns the whole chain,
/// starting with `start`.
pub fn descend<O, D>(order: &O, start: O::Cond, denses: &[D], seed: u64) -> Result<Vec<O::Cond>, Stuck<O::Cond>>
where
    O: Order + ?Sized,
    D: DenseSet<O>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = vec![start];
    for (index, d) in denses.iter().enumerate() {
        let current = chain.last().expect("chain starts nonempty").clone();
        let next = if d.contains(order, &current) {
            current.clone()
        } else {
            match d.extend(order, &current, &mut rng) {
                Some(n) if order.leq(&n, &current) && d.contains(order, &n) => n,
                _ => return Err(Stuck { index, at: current }),
            }
        };
        chain.push(next);
    }
    Ok(chain)
}

/// A filter, stored as its full member set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenericFilter {
    members: BTreeSet<CondId>,
}

impl GenericFilter {
    pub fn from_members(members: impl IntoIterator<Item = CondId>) -> Self {
        GenericFilter {
            members: members.into_iter().collect(),
        }
    }

    /// All conditions above `q`.
    pub fn principal<P: Poset + ?Sized>(poset: &P, q: CondId) -> Self {
        Self::from_members((0..poset.len()).filter(|&r| poset.le(q, r)))
    }

    pub fn members(&self) -> &BTreeSet<CondId> {
        &self.members
    }

    pub fn contains(&self, p: CondId) -> bool {
        self.members.contains(&p)
    }

    pub fn meets(&self, d: &BTreeSet<CondId>) -> bool {
        !self.members.is_disjoint(d)
    }

    /// Contains top, is upward closed, and its members are pairwise compatible.
    pub fn is_filter<P: Poset + ?Sized>(&self, poset: &P) -> bool {
        if !self.contains(poset.top()) {
            return false;
        }
        let upward = self
            .members
            .iter()
            .all(|&p| (0..poset.len()).all(|r| !poset.le(p, r) || self.contains(r)));
        upward
            && self
                .members
                .iter()
                .all(|&p| self.members.iter().all(|&q| poset.compatible(p, q)))
    }

    pub fn labels<P: Poset + ?Sized>(&self, poset: &P) -> Vec<String> {
        self.members.iter().map(|&p| poset.label(p)).collect()
    }
}

fn check_dense_below<P: Poset + ?Sized>(poset: &P, denses: &[BTreeSet<CondId>], p: CondId) -> Result<(), ForcingError> {
    for (index, d) in denses.iter().enumerate() {
        if let Some(r) = density_failure_below(poset, d, p) {
            return Err(ForcingError::NotDense {
                index,
                witness: poset.label(r),
            });
        }
    }
    Ok(())
}

/// A filter containing `p` that meets every set in `denses`: the upward
/// closure of the end of a seeded descending chain from `p`.
pub fn generic_filter<P: Poset + ?Sized>(
    poset: &P,
    denses: &[BTreeSet<CondId>],
    p: CondId,
    seed: u64,
) -> Result<GenericFilter, ForcingError> {
    check_dense_below(poset, denses, p)?;
    let q = chain_end(poset, denses, p, seed)?;
    Ok(GenericFilter::principal(poset, q))
}

fn chain_end<P: Poset + ?Sized>(
    poset: &P,
    denses: &[BTreeSet<CondId>],
    p: CondId,
    seed: u64,
) -> Result<CondId, ForcingError> {
    let chain = descend(poset, p, denses, seed).map_err(|s| ForcingError::Stuck {
        index: s.index,
        at: poset.label(s.at),
    })?;
    Ok(*chain.last().expect("chain starts nonempty"))
}

/// Some `q ≤ p` lying below a member of each set in `denses`.
pub fn meet_dense<P: Poset + ?Sized>(
    poset: &P,
    p: CondId,
    denses: &[BTreeSet<CondId>],
) -> Result<CondId, ForcingError> {
    chain_end(poset, denses, p, 0)
}

/// Outcome of [`pretame_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pretame {
    /// `q ≤ p` and `d[i] ⊆ D_i` predense below `q` for every `i`.
    Witness { q: CondId, d: Vec<BTreeSet<CondId>> },
    /// No `q ≤ p` works; already below `p` the condition `r` is incompatible
    /// with all of `D_index`.
    Counterexample { index: usize, r: CondId },
}

/// Searches for `q ≤ p` and subfamilies `d_i ⊆ D_i` predense below `q`.
///
/// Candidates `q` are tried strongest first (fewest conditions below, then
/// id); each `d_i` is the least predense subset by size, then lexicographic
/// order. When a set has more than `budget` subsets to try, the whole of its
/// `q`-compatible part is used instead.
pub fn pretame_check<P: Poset + ?Sized>(
    poset: &P,
    dense_seq: &[BTreeSet<CondId>],
    p: CondId,
    budget: Budget,
) -> Pretame {
    let mut qs: Vec<(usize, CondId)> = poset.below(p).into_iter().map(|q| (poset.below(q).len(), q)).collect();
    qs.sort_unstable();
    'q: for &(_, q) in &qs {
        let mut d = Vec::with_capacity(dense_seq.len());
        for big in dense_seq {
            match least_predense(poset, big, q, budget) {
                Some(small) => d.push(small),
                None => continue 'q,
            }
        }
        return Pretame::Witness { q, d };
    }
    for (index, big) in dense_seq.iter().enumerate() {
        if let Some(r) = predensity_failure_below(poset, big, p) {
            return Pretame::Counterexample { index, r };
        }
    }
    unreachable!("q = p has a witness when every set is predense below p")
}

fn least_predense<P: Poset + ?Sized>(
    poset: &P,
    big: &BTreeSet<CondId>,
    q: CondId,
    budget: Budget,
) -> Option<BTreeSet<CondId>> {
    let pool: Vec<CondId> = big.iter().copied().filter(|&s| poset.compatible(s, q)).collect();
    let whole: BTreeSet<CondId> = pool.iter().copied().collect();
    if !is_predense_below(poset, &whole, q) {
        return None;
    }
    let exhaustive = pool.len() < usize::BITS as usize && (1usize << pool.len()) <= budget.limit();
    if !exhaustive {
        return Some(whole);
    }
    for size in 1..=pool.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let cand: BTreeSet<CondId> = idx.iter().map(|&i| pool[i]).collect();
            if is_predense_below(poset, &cand, q) {
                return Some(cand);
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Some(whole)
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

//! The atomic forcing relation of the string poset, where a condition is
//! strengthened by lengthening it, and a semantic check of it against all
//! maximal filters of the truncated poset.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::names::{evaluate, Name};
use super::poset::{CondId, Poset, StringPoset};
use super::ForcingError;
use crate::hfset::HfSet;

/// `σ^p = {τ^p : (τ, q) ∈ σ, p ≤ q}`; requires `|p| > rank σ`.
pub fn eval_at(sigma: &Name, p: CondId, sp: &StringPoset) -> Result<HfSet, ForcingError> {
    let length = sp.length(p);
    if length <= sigma.rank() {
        return Err(ForcingError::TooShort {
            length,
            rank: sigma.rank(),
        });
    }
    Ok(evaluate(sigma, &mut |q| sp.le(p, q), &mut HashMap::new()))
}

fn check_bound(sp: &StringPoset, sigma: &Name, tau: &Name) -> Result<usize, ForcingError> {
    let rank = sigma.rank().max(tau.rank());
    if sp.max_len() <= rank {
        return Err(ForcingError::TooShort {
            length: sp.max_len(),
            rank,
        });
    }
    Ok(rank)
}

/// `p ⊩ σ ∈ τ`: every `q ≤ p` longer than both ranks has `σ^q ∈ τ^q`.
/// The bound on `q` is the poset's maximal length, which must exceed both ranks.
pub fn forces_membership(sp: &StringPoset, p: CondId, sigma: &Name, tau: &Name) -> Result<bool, ForcingError> {
    let rank = check_bound(sp, sigma, tau)?;
    for q in sp.below(p) {
        if sp.length(q) > rank && !eval_at(tau, q, sp)?.contains(&eval_at(sigma, q, sp)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which atomic statement to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Membership,
    Equality,
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "member" | "membership" => Ok(Kind::Membership),
            "equal" | "equality" => Ok(Kind::Equality),
            _ => Err(format!("unknown statement kind {s:?}; expected member or equal")),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Membership => "member",
            Kind::Equality => "equal",
        })
    }
}

/// True iff the statement holds of the interpretations in every maximal
/// filter of the truncated poset through `p`, i.e. along every full-length
/// branch extending `p`.
pub fn semantic_forces(
    sp: &StringPoset,
    p: CondId,
    kind: Kind,
    sigma: &Name,
    tau: &Name,
) -> Result<bool, ForcingError> {
    check_bound(sp, sigma, tau)?;
    Ok(sp.branches(p).into_iter().all(|b| {
        let mut in_filter = |c: CondId| sp.le(b, c);
        let s = evaluate(sigma, &mut in_filter, &mut HashMap::new());
        let t = evaluate(tau, &mut in_filter, &mut HashMap::new());
        match kind {
            Kind::Membership => t.contains(&s),
            Kind::Equality => s == t,
        }
    }))
}

/// Result of comparing the two membership relations over a grid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GridReport {
    pub checked: usize,
    pub forced: usize,
    /// `(condition, σ index, τ index)` where the relations disagree.
    pub disagreements: Vec<(CondId, usize, usize)>,
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checked {}", self.checked)?;
        writeln!(f, "forced {}", self.forced)?;
        write!(f, "disagreements {}", self.disagreements.len())?;
        for (p, s, t) in &self.disagreements {
            write!(f, "\n  p={p} sigma={s} tau={t}")?;
        }
        Ok(())
    }
}

/// Compares [`forces_membership`] with [`semantic_forces`] on every condition
/// and every ordered pair of `names`, on `jobs` threads. The report does not
/// depend on `jobs`.
pub fn definability_grid(sp: &StringPoset, names: &[Name], jobs: usize) -> Result<GridReport, ForcingError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| ForcingError::TooMany(format!("thread pool: {e}")))?;
    let rows: Vec<Result<GridReport, ForcingError>> = pool.install(|| {
        (0..names.len())
            .into_par_iter()
            .map(|i| {
                let mut row = GridReport::default();
                for (j, tau) in names.iter().enumerate() {
                    for p in 0..sp.len() {
                        let syn = forces_membership(sp, p, &names[i], tau)?;
                        let sem = semantic_forces(sp, p, Kind::Membership, &names[i], tau)?;
                        row.checked += 1;
                        row.forced += syn as usize;
                        if syn != sem {
                            row.disagreements.push((p, i, j));
                        }
                    }
                }
                Ok(row)
            })
            .collect()
    });
    let mut total = GridReport::default();
    for row in rows {
        let row = row?;
        total.checked += row.checked;
        total.forced += row.forced;
        total.disagreements.extend(row.disagreements);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::names::check_name;

    fn sp(n: usize) -> StringPoset {
        StringPoset::new(n).unwrap()
    }

    fn name(s: &str, sp: &StringPoset) -> Name {
        Name::parse(s, sp).unwrap()
    }

    #[test]
    fn evaluation() {
        let s = sp(3);
        let sigma = name("[(check({}), 1)]", &s);
        assert_eq!(
            eval_at(&sigma, s.lookup("10").unwrap(), &s).unwrap(),
            "{{}}".parse().unwrap()
        );
        assert_eq!(eval_at(&sigma, s.lookup("01").unwrap(), &s).unwrap(), HfSet::empty());
        assert_eq!(
            eval_at(&Name::empty(), s.lookup("1").unwrap(), &s).unwrap(),
            HfSet::empty()
        );
        assert!(eval_at(&sigma, s.lookup("1").unwrap(), &s).is_err());
    }

    #[test]
    fn check_names_decide_membership() {
        let s = sp(3);
        let zero = check_name(&HfSet::empty(), &s);
        let one = check_name(&"{{}}".parse().unwrap(), &s);
        for p in 0..s.len() {
            assert!(forces_membership(&s, p, &zero, &one).unwrap());
            assert!(!forces_membership(&s, p, &one, &zero).unwrap());
            assert!(semantic_forces(&s, p, Kind::Equality, &one, &one).unwrap());
        }
    }

    #[test]
    fn golden_membership() {
        let s = sp(4);
        let sigma = name("[(check({}), 1)]", &s);
        let tau = name("[([(check({}), 1)], top)]", &s);
        let p = s.lookup("0").unwrap();
        assert!(forces_membership(&s, p, &sigma, &tau).unwrap());
        assert!(semantic_forces(&s, p, Kind::Membership, &sigma, &tau).unwrap());
        assert!(forces_membership(&s, 0, &sigma, &tau).unwrap());
        let not_sigma = name("[(check({}), 0)]", &s);
        assert!(!forces_membership(&s, 0, &not_sigma, &name("[(check({}), top)]", &s)).unwrap());
    }

    #[test]
    fn bound_must_exceed_rank() {
        let s = sp(1);
        let two = check_name(&"{{},{{}}}".parse().unwrap(), &s);
        assert!(forces_membership(&s, 0, &two, &two).is_err());
        assert!(semantic_forces(&s, 0, Kind::Equality, &two, &two).is_err());
    }

    #[test]
    fn kinds() {
        assert_eq!("member".parse::<Kind>().unwrap(), Kind::Membership);
        assert_eq!(Kind::Equality.to_string(), "equal");
        assert!("subset".parse::<Kind>().is_err());
    }
}

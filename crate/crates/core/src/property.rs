//! Decision procedure for the subset-sum property `P(r, s)`.
//!
//! A tuple has `P(r, s)` when, inside every choice of `r` of its positions,
//! every `s`-subset `I` of those positions has a partner `s`-subset `J != I`
//! (compared as position sets) with the same element sum.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::tuple::GroupTuple;

/// Default elementary-comparison budget.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// How the inner `J` search is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Search {
    /// Pairwise comparison of exact sums.
    Reference,
    /// Per-subset table of sums keyed by value.
    #[default]
    Indexed,
}

#[derive(Clone, Copy, Debug)]
pub struct PropertyOptions {
    pub budget: u128,
    pub search: Search,
    pub parallel: bool,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        PropertyOptions { budget: DEFAULT_BUDGET, search: Search::Indexed, parallel: false }
    }
}

/// An `r`-subset and an `s`-subset inside it with no equal-sum partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureWitness {
    /// Tuple positions `l(1) < ... < l(r)`.
    pub subset: Vec<usize>,
    /// Indices `i_1 < ... < i_s` into `subset`, 1-based.
    pub indices: Vec<usize>,
}

impl FailureWitness {
    /// Tuple positions selected by `indices`.
    pub fn positions(&self) -> Vec<usize> {
        self.indices.iter().map(|&i| self.subset[i - 1]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub holds: bool,
    pub r: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure_witness: Option<FailureWitness>,
}

/// Number of elementary comparisons an exhaustive check performs.
pub fn work_estimate(q: usize, r: usize, s: usize) -> u128 {
    let inner = binomial(r, s);
    binomial(q, r).saturating_mul(inner).saturating_mul(inner)
}

fn check_arity(q: usize, r: usize, s: usize) -> Result<()> {
    if s < 1 {
        return Err(Error::Arity(format!("s = {s} must be at least 1")));
    }
    if r <= s {
        return Err(Error::Arity(format!("r = {r} must exceed s = {s}")));
    }
    if r > q {
        return Err(Error::Arity(format!("r = {r} exceeds tuple length {q}")));
    }
    Ok(())
}

pub fn has_property(t: &GroupTuple, r: usize, s: usize) -> Result<PropertyReport> {
    has_property_with(t, r, s, &PropertyOptions::default())
}

pub fn has_property_with(t: &GroupTuple, r: usize, s: usize, opts: &PropertyOptions) -> Result<PropertyReport> {
    let q = t.len();
    check_arity(q, r, s)?;
    let estimate = work_estimate(q, r, s);
    if estimate > opts.budget {
        return Err(Error::BudgetExceeded { estimate, budget: opts.budget });
    }
    let inner: Vec<Vec<usize>> = Combinations::new(r, s).collect();
    let check = |subset: Vec<usize>| -> Option<FailureWitness> {
        let sums: Vec<GroupElement> = inner.iter().map(|idx| sum_of(t, &subset, idx)).collect();
        let bad = match opts.search {
            Search::Reference => unmatched_reference(&sums),
            Search::Indexed => unmatched_indexed(&sums),
        }?;
        Some(FailureWitness {
            subset: subset.iter().map(|&p| p + 1).collect(),
            indices: inner[bad].iter().map(|&i| i + 1).collect(),
        })
    };
    let witness = if opts.parallel {
        let subsets: Vec<Vec<usize>> = Combinations::new(q, r).collect();
        subsets.into_par_iter().find_map_first(check)
    } else {
        Combinations::new(q, r).find_map(check)
    };
    Ok(PropertyReport { holds: witness.is_none(), r, s, failure_witness: witness })
}

/// Re-checks a single failure witness: its `I` must have no partner `J`.
pub fn witness_is_valid(t: &GroupTuple, report: &PropertyReport) -> bool {
    let Some(w) = &report.failure_witness else { return false };
    let (r, s) = (report.r, report.s);
    if w.subset.len() != r || w.indices.len() != s {
        return false;
    }
    if w.subset.windows(2).any(|p| p[0] >= p[1]) || w.subset.first().is_none_or(|&p| p == 0) {
        return false;
    }
    if w.subset.last().is_some_and(|&p| p > t.len()) {
        return false;
    }
    if w.indices.windows(2).any(|p| p[0] >= p[1]) || w.indices.iter().any(|&i| i == 0 || i > r) {
        return false;
    }
    let subset: Vec<usize> = w.subset.iter().map(|p| p - 1).collect();
    let chosen: Vec<usize> = w.indices.iter().map(|i| i - 1).collect();
    let target = sum_of(t, &subset, &chosen);
    Combinations::new(r, s).filter(|j| *j != chosen).all(|j| sum_of(t, &subset, &j) != target)
}

fn sum_of(t: &GroupTuple, subset: &[usize], idx: &[usize]) -> GroupElement {
    let mut acc = GroupElement::zero(t.dim());
    for &i in idx {
        acc = &acc + &t.elements()[subset[i]];
    }
    acc
}

fn unmatched_reference(sums: &[GroupElement]) -> Option<usize> {
    (0..sums.len()).find(|&i| !(0..sums.len()).any(|j| j != i && sums[j] == sums[i]))
}

fn unmatched_indexed(sums: &[GroupElement]) -> Option<usize> {
    let mut counts: HashMap<&GroupElement, usize> = HashMap::with_capacity(sums.len());
    for s in sums {
        *counts.entry(s).or_default() += 1;
    }
    sums.iter().position(|s| counts[s] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(rows: &[&[i64]]) -> GroupTuple {
        GroupTuple::from_i64s(rows).unwrap()
    }

    #[test]
    fn examples() {
        let r = has_property(&tup(&[&[0], &[0], &[0]]), 3, 2).unwrap();
        assert!(r.holds);
        assert!(r.failure_witness.is_none());

        assert!(has_property(&tup(&[&[0], &[0], &[2], &[-2]]), 4, 2).unwrap().holds);

        let t = tup(&[&[0], &[1], &[2]]);
        let r = has_property(&t, 3, 2).unwrap();
        assert!(!r.holds);
        let w = r.failure_witness.clone().unwrap();
        assert_eq!(w.subset, vec![1, 2, 3]);
        assert_eq!(w.indices, vec![1, 2]);
        assert!(witness_is_valid(&t, &r));
    }

    #[test]
    fn witness_within_subsets() {
        // P(2,1) needs every pair of positions to carry equal values.
        let t = tup(&[&[0], &[0], &[1], &[1]]);
        let r = has_property(&t, 2, 1).unwrap();
        let w = r.failure_witness.clone().unwrap();
        assert_eq!(w.subset, vec![1, 3]);
        assert_eq!(w.indices, vec![1]);
        assert_eq!(w.positions(), vec![1]);
        assert!(witness_is_valid(&t, &r));
    }

    #[test]
    fn arity_errors() {
        let t = tup(&[&[0], &[0], &[0]]);
        assert!(matches!(has_property(&t, 2, 2), Err(Error::Arity(_))));
        assert!(matches!(has_property(&t, 4, 2), Err(Error::Arity(_))));
        assert!(matches!(has_property(&t, 2, 0), Err(Error::Arity(_))));
    }

    #[test]
    fn budget_guard() {
        let t = GroupTuple::new(vec![GroupElement::zero(1); 20]).unwrap();
        let opts = PropertyOptions { budget: 1000, ..Default::default() };
        let err = has_property_with(&t, 20, 10, &opts).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { estimate: 184_756u128 * 184_756, budget: 1000 });
    }

    #[test]
    fn search_strategies_agree_on_small_cases() {
        let cases: &[&[&[i64]]] = &[
            &[&[0], &[1], &[2], &[3]],
            &[&[0], &[0], &[1], &[1]],
            &[&[0, 0], &[0, 0], &[1, 0], &[1, 0], &[0, 1], &[0, 1]],
            &[&[0, 0], &[0, 0], &[0, 0], &[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 0], &[1, 1], &[2, 0], &[1, -1], &[0, 0]],
        ];
        for rows in cases {
            let t = tup(rows);
            let q = t.len();
            for r in 2..=q {
                for s in 1..r {
                    let mk = |search, parallel| PropertyOptions { search, parallel, ..Default::default() };
                    let a = has_property_with(&t, r, s, &mk(Search::Reference, false)).unwrap();
                    let b = has_property_with(&t, r, s, &mk(Search::Indexed, false)).unwrap();
                    let c = has_property_with(&t, r, s, &mk(Search::Indexed, true)).unwrap();
                    assert_eq!(a, b);
                    assert_eq!(a, c);
                }
            }
        }
    }

    #[test]
    fn report_json() {
        let r = has_property(&tup(&[&[0], &[1], &[2]]), 3, 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"holds":false,"r":3,"s":2,"failure_witness":{"subset":[1,2,3],"indices":[1,2]}}"#);
        let ok = has_property(&tup(&[&[0], &[0], &[0]]), 3, 2).unwrap();
        assert_eq!(serde_json::to_string(&ok).unwrap(), r#"{"holds":true,"r":3,"s":2}"#);
    }
}

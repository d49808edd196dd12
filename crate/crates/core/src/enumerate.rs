//! Exhaustive enumeration of small tuples.
//!
//! The universe is every multiset of `q` values from `[-B, B]^dim`; with
//! `require_zero` one zero is pinned and the other `q - 1` values range over
//! multisets. The property and all derived data are invariant under
//! reordering, so one representative per multiset suffices. Work is split by
//! the first free value and merged in that order, which makes the report
//! independent of the worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::audit_claims_with;
use crate::classify::{classify, verify_classification};
use crate::combin::{binomial, Multisets};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::property::{has_property_with, work_estimate, PropertyOptions, DEFAULT_BUDGET};
use crate::tuple::GroupTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationJob {
    pub s: usize,
    pub q: usize,
    pub dim: usize,
    pub bound: u64,
    pub require_zero: bool,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub budget: u128,
}

impl EnumerationJob {
    pub fn new(s: usize, q: usize, dim: usize, bound: u64) -> Self {
        EnumerationJob { s, q, dim, bound, require_zero: true, jobs: 0, budget: DEFAULT_BUDGET }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.bound == 0 {
            return Err(Error::InvalidSpec("bound must be at least 1".into()));
        }
        if self.s < 1 || self.q < self.s + 1 {
            return Err(Error::InvalidSpec(format!("need q >= s + 1, got s = {}, q = {}", self.s, self.q)));
        }
        Ok(())
    }

    fn free_slots(&self) -> usize {
        if self.require_zero {
            self.q - 1
        } else {
            self.q
        }
    }

    /// Number of canonical tuples, saturating.
    pub fn universe_size(&self) -> u128 {
        let n = universe_values(self.dim, self.bound).len();
        let k = self.free_slots();
        if n == 0 {
            return 0;
        }
        binomial(n + k - 1, k)
    }

    pub fn work_estimate(&self) -> u128 {
        self.universe_size().saturating_mul(work_estimate(self.q, self.q, self.s))
    }
}

/// All vectors of `[-bound, bound]^dim` in lexicographic order.
pub fn universe_values(dim: usize, bound: u64) -> Vec<GroupElement> {
    let b = bound as i64;
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out.iter().map(|c| GroupElement::from_i64s(c).expect("dim >= 1")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub tuple: GroupTuple,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub s: usize,
    pub q: usize,
    pub dim: usize,
    pub bound: u64,
    pub require_zero: bool,
    pub visited: u64,
    /// Tuples with `P(q, s)`.
    pub holders: u64,
    pub by_rank: BTreeMap<usize, u64>,
    pub by_variant: BTreeMap<String, u64>,
    pub unclassified: Vec<Anomaly>,
    pub audit_failures: Vec<Anomaly>,
    pub equal_pair_missing: Vec<GroupTuple>,
    pub verification_failures: Vec<GroupTuple>,
    pub ok: bool,
}

impl EnumerationReport {
    fn merge(&mut self, other: EnumerationReport) {
        self.visited += other.visited;
        self.holders += other.holders;
        for (k, v) in other.by_rank {
            *self.by_rank.entry(k).or_default() += v;
        }
        for (k, v) in other.by_variant {
            *self.by_variant.entry(k).or_default() += v;
        }
        self.unclassified.extend(other.unclassified);
        self.audit_failures.extend(other.audit_failures);
        self.equal_pair_missing.extend(other.equal_pair_missing);
        self.verification_failures.extend(other.verification_failures);
    }

    fn finish(mut self) -> Self {
        self.ok = self.unclassified.is_empty()
            && self.audit_failures.is_empty()
            && self.equal_pair_missing.is_empty()
            && self.verification_failures.is_empty();
        self
    }
}

pub fn enumerate(job: &EnumerationJob) -> Result<EnumerationReport> {
    job.validate()?;
    let estimate = job.work_estimate();
    if estimate > job.budget {
        return Err(Error::BudgetExceeded { estimate, budget: job.budget });
    }
    let values = universe_values(job.dim, job.bound);
    let run = || -> Result<Vec<EnumerationReport>> {
        (0..values.len()).into_par_iter().map(|first| scan_prefix(job, &values, first)).collect()
    };
    let parts = if job.jobs == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(job.jobs)
            .build()
            .map_err(|e| Error::InvalidSpec(e.to_string()))?
            .install(run)?
    };
    let mut report = EnumerationReport {
        s: job.s,
        q: job.q,
        dim: job.dim,
        bound: job.bound,
        require_zero: job.require_zero,
        ..Default::default()
    };
    for part in parts {
        report.merge(part);
    }
    Ok(report.finish())
}

fn scan_prefix(job: &EnumerationJob, values: &[GroupElement], first: usize) -> Result<EnumerationReport> {
    let mut part = EnumerationReport::default();
    let k = job.free_slots();
    if k == 0 {
        if first == 0 {
            visit(job, GroupTuple::with_dim(job.dim, vec![GroupElement::zero(job.dim)])?, &mut part)?;
        }
        return Ok(part);
    }
    for idx in Multisets::with_first(values.len(), k, first) {
        let mut elements = Vec::with_capacity(job.q);
        if job.require_zero {
            elements.push(GroupElement::zero(job.dim));
        }
        elements.extend(idx.iter().map(|&i| values[i].clone()));
        visit(job, GroupTuple::with_dim(job.dim, elements)?, &mut part)?;
    }
    Ok(part)
}

fn visit(job: &EnumerationJob, t: GroupTuple, part: &mut EnumerationReport) -> Result<()> {
    part.visited += 1;
    let opts = PropertyOptions { budget: job.budget, ..Default::default() };
    if !has_property_with(&t, job.q, job.s, &opts)?.holds {
        return Ok(());
    }
    part.holders += 1;
    *part.by_rank.entry(t.rank()).or_default() += 1;
    if t.equal_pair().is_none() {
        part.equal_pair_missing.push(t.clone());
    }
    let in_range = job.s >= 2 && job.q <= 2 * job.s;
    if !in_range || !t.contains_zero() {
        return Ok(());
    }
    let c = classify(&t, job.s)?;
    *part.by_variant.entry(c.variant_name().to_string()).or_default() += 1;
    if c.is_unclassified() {
        part.unclassified.push(Anomaly { tuple: t.clone(), reason: "no type A or type B certificate".into() });
    } else if !verify_classification(&t, &c) {
        part.verification_failures.push(t.clone());
    }
    match audit_claims_with(&t, job.s, &opts) {
        Ok(a) if a.all_pass() => {}
        Ok(a) => part.audit_failures.push(Anomaly { tuple: t, reason: a.failed().join(", ") }),
        Err(e) => part.audit_failures.push(Anomaly { tuple: t, reason: e.to_string() }),
    }
    Ok(())
}

//! Classification of extremal tuples into the two canonical shapes.
//!
//! For a tuple containing zero with `2 <= s < q <= 2s` and rank `s - 1`, the
//! classifier searches for a translation `c` (the scaling), a reordering of
//! positions, and an integer basis `beta_1..beta_{s-1}` of the span such that
//! the translated, reordered tuple reads exactly
//!
//! * type A (`s` odd): `0, 0, beta_1, beta_1, ..., beta_{s-1}, beta_{s-1}`;
//! * type B: `s + 1 - k` zeros, `beta_1, ..., beta_{s-1}`, then the negated
//!   block sums `-(beta_1 + .. + beta_{a_1})`, ...,
//!   `-(beta_{a_{k-1}+1} + .. + beta_{a_k})`.
//!
//! Both shapes contain a zero entry, so the scaling is always one of the tuple
//! values; the candidate scalings are exactly the distinct values of the tuple.
//!
//! Permutations map canonical slots to tuple positions: slot `j` (1-based) of
//! the pattern holds the translated element at position `permutation[j - 1]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::Combinations;
use crate::error::{Error, Result};
use crate::lattice::{rational_coordinates, GroupElement, Lattice};
use crate::property::has_property;
use crate::tuple::GroupTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum Classification {
    RankBelow {
        s: usize,
        rank: usize,
    },
    TypeA {
        s: usize,
        scaling: GroupElement,
        permutation: Vec<usize>,
        basis: Vec<GroupElement>,
    },
    TypeB {
        s: usize,
        scaling: GroupElement,
        permutation: Vec<usize>,
        basis: Vec<GroupElement>,
        k: usize,
        breakpoints: Vec<usize>,
    },
    /// Rank `s - 1` or more without a matching certificate. With the property
    /// present this is a counterexample to the classification.
    Unclassified {
        s: usize,
        rank: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        property_holds: Option<bool>,
    },
}

impl Classification {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Classification::RankBelow { .. } => "RankBelow",
            Classification::TypeA { .. } => "TypeA",
            Classification::TypeB { .. } => "TypeB",
            Classification::Unclassified { .. } => "Unclassified",
        }
    }

    pub fn s(&self) -> usize {
        match self {
            Classification::RankBelow { s, .. }
            | Classification::TypeA { s, .. }
            | Classification::TypeB { s, .. }
            | Classification::Unclassified { s, .. } => *s,
        }
    }

    pub fn is_unclassified(&self) -> bool {
        matches!(self, Classification::Unclassified { .. })
    }
}

pub(crate) fn check_arity(q: usize, s: usize) -> Result<()> {
    if s < 2 || q <= s || q > 2 * s {
        return Err(Error::Arity(format!("need 2 <= s < q <= 2s, got s = {s}, q = {q}")));
    }
    Ok(())
}

pub fn classify(t: &GroupTuple, s: usize) -> Result<Classification> {
    check_arity(t.len(), s)?;
    if !t.contains_zero() {
        return Err(Error::MissingZero);
    }
    let span = t.span();
    let rank = span.rank();
    if rank < s - 1 {
        return Ok(Classification::RankBelow { s, rank });
    }
    if rank == s - 1 {
        let mut tried: Vec<&GroupElement> = Vec::new();
        for c in t.elements() {
            if tried.contains(&c) {
                continue;
            }
            tried.push(c);
            let u = t.translate(c)?;
            if let Some(found) = match_type_a(&u, s, &span).or_else(|| match_type_b(&u, s, &span)) {
                return Ok(found.with_scaling(c.clone()));
            }
        }
    }
    let property_holds = has_property(t, t.len(), s).ok().map(|r| r.holds);
    Ok(Classification::Unclassified { s, rank, property_holds })
}

/// A match before the scaling is attached.
enum Match {
    A { s: usize, permutation: Vec<usize>, basis: Vec<GroupElement> },
    B { s: usize, permutation: Vec<usize>, basis: Vec<GroupElement>, breakpoints: Vec<usize> },
}

impl Match {
    fn with_scaling(self, scaling: GroupElement) -> Classification {
        match self {
            Match::A { s, permutation, basis } => Classification::TypeA { s, scaling, permutation, basis },
            Match::B { s, permutation, basis, breakpoints } => {
                Classification::TypeB { s, scaling, permutation, basis, k: breakpoints.len(), breakpoints }
            }
        }
    }
}

fn is_integer_basis(values: &[GroupElement], span: &Lattice) -> bool {
    match Lattice::from_elements(span.dim(), values) {
        Ok(m) => m.rank() == values.len() && m == *span,
        Err(_) => false,
    }
}

/// Groups 0-based positions by value, in order of first occurrence.
fn value_classes(u: &GroupTuple) -> Vec<(&GroupElement, Vec<usize>)> {
    let mut order: Vec<(&GroupElement, Vec<usize>)> = Vec::new();
    let mut slot: HashMap<&GroupElement, usize> = HashMap::new();
    for (i, e) in u.elements().iter().enumerate() {
        match slot.get(e) {
            Some(&k) => order[k].1.push(i),
            None => {
                slot.insert(e, order.len());
                order.push((e, vec![i]));
            }
        }
    }
    order
}

fn match_type_a(u: &GroupTuple, s: usize, span: &Lattice) -> Option<Match> {
    if u.len() != 2 * s || s.is_multiple_of(2) {
        return None;
    }
    let classes = value_classes(u);
    if classes.len() != s || classes.iter().any(|(_, p)| p.len() != 2) {
        return None;
    }
    let zero = classes.iter().find(|(v, _)| v.is_zero())?;
    let nonzero: Vec<&(&GroupElement, Vec<usize>)> = classes.iter().filter(|(v, _)| !v.is_zero()).collect();
    let basis: Vec<GroupElement> = nonzero.iter().map(|(v, _)| (*v).clone()).collect();
    if !is_integer_basis(&basis, span) {
        return None;
    }
    let permutation = zero.1.iter().chain(nonzero.iter().flat_map(|(_, p)| p.iter())).map(|&i| i + 1).collect();
    Some(Match::A { s, permutation, basis })
}

fn match_type_b(u: &GroupTuple, s: usize, span: &Lattice) -> Option<Match> {
    if u.len() != 2 * s {
        return None;
    }
    let zeros: Vec<usize> = (0..u.len()).filter(|&i| u.elements()[i].is_zero()).collect();
    if zeros.len() < 2 || zeros.len() > s + 1 {
        return None;
    }
    let nonzero: Vec<usize> = (0..u.len()).filter(|&i| !u.elements()[i].is_zero()).collect();
    // Basis values and block sums are pairwise distinct in this shape.
    if value_classes(u).len() != nonzero.len() + 1 {
        return None;
    }
    Combinations::new(nonzero.len(), s - 1).find_map(|pick| {
        let basis_pos: Vec<usize> = pick.iter().map(|&j| nonzero[j]).collect();
        type_b_from_basis(u, s, span, &zeros, &basis_pos)
    })
}

/// Type-B match using the given 0-based positions as the basis, if the
/// remaining nonzero values are negated sums over disjoint blocks of it.
fn type_b_from_basis(u: &GroupTuple, s: usize, span: &Lattice, zeros: &[usize], basis_pos: &[usize]) -> Option<Match> {
    let basis: Vec<GroupElement> = basis_pos.iter().map(|&i| u.elements()[i].clone()).collect();
    if !is_integer_basis(&basis, span) {
        return None;
    }
    let others: Vec<usize> = (0..u.len()).filter(|i| !zeros.contains(i) && !basis_pos.contains(i)).collect();
    if zeros.len() + others.len() != s + 1 {
        return None;
    }
    let minus_one = -BigInt::one();
    let mut covered = vec![false; basis.len()];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(others.len());
    for &j in &others {
        let coords = rational_coordinates(&basis, &u.elements()[j])?;
        let mut block = Vec::new();
        for (b, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() || *c.numer() != minus_one || covered[b] {
                return None;
            }
            covered[b] = true;
            block.push(b);
        }
        if block.is_empty() {
            return None;
        }
        blocks.push(block);
    }
    let order: Vec<usize> = blocks.iter().flatten().copied().chain((0..basis.len()).filter(|&b| !covered[b])).collect();
    let mut breakpoints = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for block in &blocks {
        acc += block.len();
        breakpoints.push(acc);
    }
    let permutation = zeros
        .iter()
        .copied()
        .chain(order.iter().map(|&b| basis_pos[b]))
        .chain(others.iter().copied())
        .map(|i| i + 1)
        .collect();
    let basis = order.iter().map(|&b| basis[b].clone()).collect();
    Some(Match::B { s, permutation, basis, breakpoints })
}

/// The canonical type-A sequence `0, 0, b_1, b_1, ...`.
pub fn type_a_pattern(dim: usize, basis: &[GroupElement]) -> Vec<GroupElement> {
    let zero = GroupElement::zero(dim);
    [zero.clone(), zero].into_iter().chain(basis.iter().flat_map(|b| [b.clone(), b.clone()])).collect()
}

/// The canonical type-B sequence for `s`, the basis and the block breakpoints.
pub fn type_b_pattern(dim: usize, s: usize, basis: &[GroupElement], breakpoints: &[usize]) -> Vec<GroupElement> {
    let zero = GroupElement::zero(dim);
    let k = breakpoints.len();
    let mut out = vec![zero.clone(); s + 1 - k];
    out.extend(basis.iter().cloned());
    let mut start = 0;
    for &end in breakpoints {
        let sum = basis[start..end].iter().fold(zero.clone(), |acc, b| &acc + b);
        out.push(-&sum);
        start = end;
    }
    out
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&i| i >= 1 && i <= n && !std::mem::replace(&mut seen[i - 1], true))
}

/// Re-derives the canonical pattern from the certificate and compares it to
/// the tuple. Performs no search.
pub fn verify_classification(t: &GroupTuple, c: &Classification) -> bool {
    let q = t.len();
    match c {
        Classification::RankBelow { s, rank } => {
            check_arity(q, *s).is_ok() && t.contains_zero() && t.rank() == *rank && *rank + 1 < *s
        }
        Classification::Unclassified { .. } => false,
        Classification::TypeA { s, scaling, permutation, basis } => {
            let s = *s;
            if s < 2 || s % 2 == 0 || q != 2 * s || basis.len() != s - 1 {
                return false;
            }
            check_pattern(t, scaling, permutation, basis, |b| type_a_pattern(t.dim(), b))
        }
        Classification::TypeB { s, scaling, permutation, basis, k, breakpoints } => {
            let s = *s;
            if s < 2 || q != 2 * s || basis.len() != s - 1 || *k != breakpoints.len() || *k > s - 1 {
                return false;
            }
            if breakpoints.first().is_some_and(|&a| a < 1)
                || breakpoints.last().is_some_and(|&a| a > s - 1)
                || breakpoints.windows(2).any(|w| w[0] >= w[1])
            {
                return false;
            }
            check_pattern(t, scaling, permutation, basis, |b| type_b_pattern(t.dim(), s, b, breakpoints))
        }
    }
}

fn check_pattern<F>(
    t: &GroupTuple,
    scaling: &GroupElement,
    permutation: &[usize],
    basis: &[GroupElement],
    pattern: F,
) -> bool
where
    F: Fn(&[GroupElement]) -> Vec<GroupElement>,
{
    if scaling.dim() != t.dim() || basis.iter().any(|b| b.dim() != t.dim()) || !is_permutation(permutation, t.len()) {
        return false;
    }
    let Ok(u) = t.translate(scaling) else { return false };
    let expected = pattern(basis);
    if expected.len() != t.len() {
        return false;
    }
    let matches = permutation.iter().zip(&expected).all(|(&p, e)| u.elements()[p - 1] == *e);
    matches && is_integer_basis(basis, &t.span())
}

/// Re-expresses a type-B certificate over a different choice of basis
/// positions. `chosen` lists `s - 1` tuple positions (1-based); their
/// translated values become the new basis, and the other nonzero values
/// are recovered as negated disjoint block sums over it.
pub fn rebase_type_b(t: &GroupTuple, cert: &Classification, chosen: &[usize]) -> Result<Classification> {
    let Classification::TypeB { s, scaling, .. } = cert else {
        return Err(Error::CertificateMismatch("not a type-B certificate".into()));
    };
    if !verify_classification(t, cert) {
        return Err(Error::CertificateMismatch("certificate does not verify".into()));
    }
    let s = *s;
    if chosen.len() != s - 1 {
        return Err(Error::Arity(format!("expected {} chosen positions, got {}", s - 1, chosen.len())));
    }
    let u = t.translate(scaling)?;
    let mut seen = vec![false; u.len()];
    for &i in chosen {
        if u.get(i)?.is_zero() {
            return Err(Error::Dependent);
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(Error::RepeatedIndex(i));
        }
    }
    let values: Vec<GroupElement> = chosen.iter().map(|&i| u.elements()[i - 1].clone()).collect();
    let span = t.span();
    let m = Lattice::from_elements(t.dim(), &values)?;
    if m.rank() != values.len() {
        return Err(Error::Dependent);
    }
    if m != span {
        return Err(Error::NotABasis);
    }
    let zeros: Vec<usize> = (0..u.len()).filter(|&i| u.elements()[i].is_zero()).collect();
    let basis_pos: Vec<usize> = chosen.iter().map(|i| i - 1).collect();
    type_b_from_basis(&u, s, &span, &zeros, &basis_pos)
        .map(|m| m.with_scaling(scaling.clone()))
        .ok_or_else(|| Error::CertificateMismatch("remaining values are not negated block sums".into()))
}

//! Existence of an adequate integer basis.
//!
//! An adequate basis of `span(t)` is an integer basis `eta_1..eta_t` such that
//! `t` distinct tuple elements are nonzero integer multiples of distinct
//! `eta`s. A basis element of a free group is primitive, and the primitive
//! element of a lattice on a given line is unique up to sign. So an adequate
//! basis exists iff some `t` rationally independent tuple elements have
//! primitive representatives (inside the span) that generate the whole span.
//! That turns the existential over all bases into a scan over `t`-subsets.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combin::Combinations;
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{primitive_representative, sublattice_index, GroupElement, Index, Lattice};
use crate::tuple::GroupTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequateWitness {
    pub indices: Vec<usize>,
    #[serde(with = "json::big_vec")]
    pub multipliers: Vec<BigInt>,
    pub basis: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationEntry {
    pub indices: Vec<usize>,
    #[serde(with = "json::big")]
    pub index: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequateBasisDecision {
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<AdequateWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refutation: Option<Vec<RefutationEntry>>,
}

impl AdequateBasisDecision {
    /// Re-checks a positive decision from scratch.
    pub fn witness_is_valid(&self, t: &GroupTuple) -> bool {
        let Some(w) = &self.witness else { return false };
        let span = t.span();
        let rank = span.rank();
        if w.indices.len() != rank || w.multipliers.len() != rank || w.basis.len() != rank {
            return false;
        }
        let mut seen = vec![false; t.len()];
        for ((&i, d), eta) in w.indices.iter().zip(&w.multipliers).zip(&w.basis) {
            let Ok(alpha) = t.get(i) else { return false };
            if std::mem::replace(&mut seen[i - 1], true) || eta.dim() != t.dim() {
                return false;
            }
            if !matches!(span.contains(eta), Ok(true)) || eta.scale(d) != *alpha || alpha.is_zero() {
                return false;
            }
        }
        let Ok(m) = Lattice::from_elements(t.dim(), &w.basis) else { return false };
        m.rank() == rank && matches!(sublattice_index(&m, &span), Ok(ix) if ix.is_one())
    }
}

pub fn adequate_basis_decide(t: &GroupTuple) -> Result<AdequateBasisDecision> {
    let span = t.span();
    let rank = span.rank();
    if rank == 0 {
        return Err(Error::RankZero);
    }
    let mut refutation = Vec::new();
    for subset in Combinations::new(t.len(), rank) {
        let chosen: Vec<&GroupElement> = subset.iter().map(|&i| &t.elements()[i]).collect();
        if Lattice::from_elements(t.dim(), chosen.iter().copied())?.rank() != rank {
            continue;
        }
        let (basis, multipliers): (Vec<GroupElement>, Vec<BigInt>) =
            chosen.iter().map(|a| primitive_representative(&span, a)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        let m = Lattice::from_elements(t.dim(), &basis)?;
        let indices: Vec<usize> = subset.iter().map(|i| i + 1).collect();
        match sublattice_index(&m, &span)? {
            Index::Finite(ix) if ix == BigInt::from(1) => {
                return Ok(AdequateBasisDecision {
                    exists: true,
                    witness: Some(AdequateWitness { indices, multipliers, basis }),
                    refutation: None,
                });
            }
            Index::Finite(ix) => refutation.push(RefutationEntry { indices, index: ix }),
            Index::Infinite => unreachable!("independent primitives have full rank"),
        }
    }
    Ok(AdequateBasisDecision { exists: false, witness: None, refutation: Some(refutation) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(rows: &[&[i64]]) -> GroupTuple {
        GroupTuple::from_i64s(rows).unwrap()
    }

    #[test]
    fn no_adequate_basis_for_four_vectors_in_z3() {
        let t = tup(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 2], &[1, 2, 5]]);
        let d = adequate_basis_decide(&t).unwrap();
        assert!(!d.exists);
        let got: Vec<(Vec<usize>, i64)> =
            d.refutation.unwrap().into_iter().map(|e| (e.indices, i64::try_from(&e.index).unwrap())).collect();
        assert_eq!(got, vec![(vec![1, 2, 3], 2), (vec![1, 2, 4], 5), (vec![1, 3, 4], 6), (vec![2, 3, 4], 3)]);
    }

    #[test]
    fn standard_basis_present() {
        let t = tup(&[&[1, 0], &[0, 1], &[2, 3]]);
        let d = adequate_basis_decide(&t).unwrap();
        assert!(d.exists);
        let w = d.witness.as_ref().unwrap();
        assert_eq!(w.indices, vec![1, 2]);
        assert_eq!(w.multipliers, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(d.witness_is_valid(&t));
    }

    #[test]
    fn span_generated_by_the_elements_themselves() {
        let t = tup(&[&[2, 0], &[0, 3]]);
        let d = adequate_basis_decide(&t).unwrap();
        let w = d.witness.as_ref().unwrap();
        assert_eq!(w.indices, vec![1, 2]);
        assert_eq!(w.basis, vec![GroupElement::from_i64s(&[2, 0]).unwrap(), GroupElement::from_i64s(&[0, 3]).unwrap()]);
        assert!(d.witness_is_valid(&t));
    }

    #[test]
    fn multiples_and_dependent_subsets() {
        // (4,0) = 2 * (2,0) and (2,0) is primitive in span {(2,0),(0,1)}.
        let t = tup(&[&[4, 0], &[2, 0], &[0, 1]]);
        let d = adequate_basis_decide(&t).unwrap();
        let w = d.witness.as_ref().unwrap();
        assert_eq!(w.indices, vec![1, 3]);
        assert_eq!(w.multipliers, vec![BigInt::from(2), BigInt::from(1)]);
        assert!(d.witness_is_valid(&t));

        // Negative multiples keep the primitive normalized.
        let t = tup(&[&[-3], &[0]]);
        let d = adequate_basis_decide(&t).unwrap();
        let w = d.witness.as_ref().unwrap();
        assert_eq!(w.multipliers, vec![BigInt::from(-1)]);
        assert_eq!(w.basis, vec![GroupElement::from_i64s(&[3]).unwrap()]);
    }

    #[test]
    fn rank_zero_rejected() {
        assert_eq!(adequate_basis_decide(&tup(&[&[0, 0]])).unwrap_err(), Error::RankZero);
    }

    #[test]
    fn json_shape() {
        let d = adequate_basis_decide(&tup(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 2], &[1, 2, 5]])).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.starts_with(r#"{"exists":false,"refutation":[{"indices":[1,2,3],"index":2}"#), "{s}");
    }
}

//! Tuples of group elements.
//!
//! Positions are 1-based throughout the public API: index sets, witnesses and
//! certificate permutations all refer to positions `1..=q`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GroupElement, Lattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupTuple {
    dim: usize,
    elements: Vec<GroupElement>,
}

impl<'de> Deserialize<'de> for GroupTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            dim: usize,
            elements: Vec<GroupElement>,
        }
        let r = Repr::deserialize(d)?;
        GroupTuple::with_dim(r.dim, r.elements).map_err(serde::de::Error::custom)
    }
}

impl GroupTuple {
    /// Builds a tuple; the dimension is taken from the first element.
    pub fn new(elements: Vec<GroupElement>) -> Result<Self> {
        let dim = elements.first().ok_or(Error::EmptyTuple)?.dim();
        Self::with_dim(dim, elements)
    }

    pub fn with_dim(dim: usize, elements: Vec<GroupElement>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if elements.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for e in &elements {
            e.check_dim(dim)?;
        }
        Ok(GroupTuple { dim, elements })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| GroupElement::from_i64s(r)).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Element at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<&GroupElement> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(&self.elements[i - 1])
    }

    pub fn contains_zero(&self) -> bool {
        self.elements.iter().any(GroupElement::is_zero)
    }

    /// Element-wise `alpha_i - c`.
    pub fn translate(&self, c: &GroupElement) -> Result<GroupTuple> {
        c.check_dim(self.dim)?;
        Ok(GroupTuple { dim: self.dim, elements: self.elements.iter().map(|e| e - c).collect() })
    }

    /// Tuple whose `k`-th element is the element at position `order[k]`.
    pub fn select(&self, order: &[usize]) -> Result<GroupTuple> {
        let elements = order.iter().map(|&i| self.get(i).cloned()).collect::<Result<Vec<_>>>()?;
        GroupTuple::with_dim(self.dim, elements)
    }

    /// Applies `x -> x * u` to every element, `u` a `dim x dim` integer matrix.
    pub fn transform(&self, u: &[Vec<BigInt>]) -> Result<GroupTuple> {
        if u.len() != self.dim || u.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        let elements = self
            .elements
            .iter()
            .map(|e| {
                let coords =
                    (0..self.dim).map(|j| e.coords().iter().zip(u).map(|(x, row)| x * &row[j]).sum()).collect();
                GroupElement::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTuple { dim: self.dim, elements })
    }

    pub fn span(&self) -> Lattice {
        Lattice::from_elements(self.dim, &self.elements).expect("elements share the tuple dimension")
    }

    pub fn rank(&self) -> usize {
        self.span().rank()
    }

    /// Sum of the elements at the given 1-based positions.
    pub fn subset_sum(&self, positions: &[usize]) -> Result<GroupElement> {
        let mut seen = vec![false; self.len()];
        let mut acc = vec![BigInt::zero(); self.dim];
        for &i in positions {
            let e = self.get(i)?;
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::RepeatedIndex(i));
            }
            for (a, c) in acc.iter_mut().zip(e.coords()) {
                *a += c;
            }
        }
        GroupElement::new(acc)
    }

    /// First pair of positions `i < j` carrying equal values.
    pub fn equal_pair(&self) -> Option<(usize, usize)> {
        let q = self.len();
        (0..q)
            .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
            .find(|&(i, j)| self.elements[i] == self.elements[j])
            .map(|(i, j)| (i + 1, j + 1))
    }
}

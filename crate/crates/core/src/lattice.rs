//! Exact integer lattices in row-style Hermite normal form.
//!
//! A [`Lattice`] is the integer row span of its basis. The basis is kept in
//! canonical form: pivot entries positive, pivot columns strictly increasing
//! from row to row, and every entry above a pivot reduced into `[0, pivot)`.
//! Two generating sets span the same lattice iff their canonical bases are
//! equal, so lattice equality is plain structural equality.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// An element of a free abelian group, realized as an integer coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<BigInt>);

impl GroupElement {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(GroupElement(coords))
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        GroupElement(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupElement(self.0.iter().map(|c| c * k).collect())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim() });
        }
        Ok(())
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.dim(), rhs.dim());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.dim(), rhs.dim());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json::big_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = json::big_vec::deserialize(d)?;
        GroupElement::new(coords).map_err(serde::de::Error::custom)
    }
}

/// Group index of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_one(&self) -> bool {
        matches!(self, Index::Finite(v) if v.is_one())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(v) => write!(f, "{v}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// Canonical HNF basis of an integer row span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    dim: usize,
    rank: usize,
    #[serde(with = "json::big_mat")]
    basis: Vec<Vec<BigInt>>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeRepr { dim: self.dim, rank: self.rank(), basis: self.basis.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LatticeRepr::deserialize(d)?;
        let lattice = hnf_rows(&repr.basis, repr.dim).map_err(serde::de::Error::custom)?;
        if lattice.basis != repr.basis || lattice.rank() != repr.rank {
            return Err(serde::de::Error::custom("basis is not in canonical Hermite normal form"));
        }
        Ok(lattice)
    }
}

impl Lattice {
    /// The full lattice `Z^dim`.
    pub fn full(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let basis =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Lattice { dim, basis, pivots: (0..dim).collect() }
    }

    pub fn from_elements<'a, I>(dim: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let rows: Vec<Vec<BigInt>> = elements.into_iter().map(|e| e.coords().to_vec()).collect();
        hnf_rows(&rows, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<GroupElement> {
        self.basis.iter().cloned().map(GroupElement).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &GroupElement) -> Result<bool> {
        Ok(self.solve_coordinates(v)?.is_some())
    }

    /// Integer coordinates of `v` with respect to the canonical basis.
    pub fn solve_coordinates(&self, v: &GroupElement) -> Result<Option<Vec<BigInt>>> {
        v.check_dim(self.dim)?;
        let mut rest = v.coords().to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            // Columns left of this pivot are already cleared.
            let (c, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !c.is_zero() {
                for (x, b) in rest.iter_mut().zip(row).skip(p) {
                    *x -= &c * b;
                }
            }
            coords.push(c);
        }
        if rest.iter().all(Zero::is_zero) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    /// Recombine coordinates into a vector of the ambient space.
    pub fn combine(&self, coords: &[BigInt]) -> GroupElement {
        assert_eq!(coords.len(), self.rank());
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        GroupElement(out)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: other.dim, found: self.dim });
        }
        for row in &self.basis {
            if !other.contains(&GroupElement(row.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Canonical HNF of the integer row span of `rows`.
///
/// Zero rows and duplicates are accepted; the result does not depend on row
/// order or on any unimodular recombination of the rows.
pub fn hnf_rows(rows: &[Vec<BigInt>], dim: usize) -> Result<Lattice> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    for r in rows {
        if r.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        if top == m.len() {
            break;
        }
        loop {
            let best =
                (top..m.len()).filter(|&i| !m[i][col].is_zero()).min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(top, best);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[top][col]);
                let (head, tail) = m.split_at_mut(i);
                sub_multiple(&mut tail[0], &q, &head[top], col);
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < m.len() && !m[top][col].is_zero() {
            if m[top][col].is_negative() {
                for x in m[top].iter_mut().skip(col) {
                    *x = -&*x;
                }
            }
            let (head, tail) = m.split_at_mut(top);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    sub_multiple(row, &q, pivot_row, col);
                }
            }
            pivots.push(col);
            top += 1;
        }
    }
    m.truncate(top);
    Ok(Lattice { dim, basis: m, pivots })
}

fn sub_multiple(row: &mut [BigInt], q: &BigInt, by: &[BigInt], from: usize) {
    for (x, b) in row.iter_mut().zip(by).skip(from) {
        *x -= q * b;
    }
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Index `[L : M]` of `m` inside `l`.
pub fn sublattice_index(m: &Lattice, l: &Lattice) -> Result<Index> {
    if !m.is_sublattice_of(l)? {
        return Err(Error::NotSublattice);
    }
    if m.rank() < l.rank() {
        return Ok(Index::Infinite);
    }
    let coords: Vec<Vec<BigInt>> = m
        .basis
        .iter()
        .map(|row| {
            l.solve_coordinates(&GroupElement(row.clone())).expect("dimension checked").expect("containment checked")
        })
        .collect();
    Ok(Index::Finite(determinant(&coords).abs()))
}

/// The primitive element `p` of `l` on the line through `v`, with `v = d * p`.
///
/// `p` is normalized so that its first nonzero coordinate is positive; the
/// sign of `v` is carried by `d`.
pub fn primitive_representative(l: &Lattice, v: &GroupElement) -> Result<(GroupElement, BigInt)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let coords = l.solve_coordinates(v)?.ok_or(Error::NotInLattice)?;
    let mut d = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let first = v.coords().iter().find(|c| !c.is_zero()).expect("nonzero vector");
    if first.is_negative() {
        d = -d;
    }
    let p = GroupElement(v.coords().iter().map(|c| c / &d).collect());
    Ok((p, d))
}

/// Rational coordinates of `v` with respect to linearly independent `rows`,
/// or `None` when `v` is outside their rational span.
pub fn rational_coordinates(rows: &[GroupElement], v: &GroupElement) -> Option<Vec<BigRational>> {
    let t = rows.len();
    let dim = v.dim();
    // Augmented system: columns are the rows, right-hand side is v.
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            rows.iter()
                .map(|r| BigRational::from_integer(r.coords()[i].clone()))
                .chain(std::iter::once(BigRational::from_integer(v.coords()[i].clone())))
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(t);
    let mut r = 0;
    for c in 0..t {
        let p = (r..dim).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..dim {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (pr, row) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row.iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[t].is_zero()) {
        return None;
    }
    Some(pivot_rows.iter().map(|&i| a[i][t].clone()).collect())
}

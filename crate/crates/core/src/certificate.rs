//! Rational basis certificates and the partitions read off from them.
//!
//! A [`QBasisCertificate`] picks `t = rank` independent tuple positions
//! `i_1..i_t` and rational vectors `eta_1..eta_t` with `alpha_{i_k} = l_k * eta_k`
//! for positive integers `l_k`, such that every tuple element has integer
//! coordinates `l(i, k)` against the `eta`s. It always exists even when no
//! integer basis of the span has this shape.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{hnf_rows, rational_coordinates, GroupElement};
use crate::tuple::GroupTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QBasisCertificate {
    /// Tuple positions `i_1..i_t`, 1-based.
    pub indices: Vec<usize>,
    #[serde(with = "json::big_vec")]
    pub multipliers: Vec<BigInt>,
    /// Numerators of `eta_1..eta_t`, one row each.
    #[serde(with = "json::big_mat")]
    pub eta_num: Vec<Vec<BigInt>>,
    /// Positive denominators of `eta_1..eta_t`; each row is in lowest terms.
    #[serde(with = "json::big_vec")]
    pub eta_den: Vec<BigInt>,
    /// `q x t` matrix of exponents `l(i, k)`.
    #[serde(with = "json::big_mat")]
    pub exponents: Vec<Vec<BigInt>>,
}

impl QBasisCertificate {
    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn eta(&self, k: usize) -> Vec<BigRational> {
        self.eta_num[k].iter().map(|n| BigRational::new(n.clone(), self.eta_den[k].clone())).collect()
    }

    /// Checks every certificate invariant exactly against `t`.
    pub fn verify(&self, t: &GroupTuple) -> Result<()> {
        let mismatch = |m: &str| Err(Error::CertificateMismatch(m.to_string()));
        let (q, rank) = (t.len(), self.rank());
        if rank == 0 {
            return mismatch("empty certificate");
        }
        if self.multipliers.len() != rank || self.eta_num.len() != rank || self.eta_den.len() != rank {
            return mismatch("inconsistent certificate rank");
        }
        if self.exponents.len() != q || self.exponents.iter().any(|r| r.len() != rank) {
            return mismatch("exponent matrix has the wrong shape");
        }
        let mut seen = vec![false; q];
        for &i in &self.indices {
            if i == 0 || i > q || std::mem::replace(&mut seen[i - 1], true) {
                return mismatch("indices must be distinct positions of the tuple");
            }
        }
        for k in 0..rank {
            let (num, den) = (&self.eta_num[k], &self.eta_den[k]);
            if num.len() != t.dim() {
                return mismatch("eta has the wrong dimension");
            }
            if !den.is_positive() || !self.multipliers[k].is_positive() {
                return mismatch("denominators and multipliers must be positive");
            }
            if num.iter().fold(den.clone(), |g, x| g.gcd(x)) != BigInt::one() {
                return mismatch("eta is not in lowest terms");
            }
            let alpha = t.get(self.indices[k])?;
            // alpha = l * num / den
            if alpha.coords().iter().zip(num).any(|(a, n)| a * den != &self.multipliers[k] * n) {
                return mismatch("alpha_{i_k} != l_k * eta_k");
            }
            for (j, e) in self.exponents[self.indices[k] - 1].iter().enumerate() {
                let want = if j == k { self.multipliers[k].clone() } else { BigInt::zero() };
                if *e != want {
                    return mismatch("exponent row of a basis position is not l_k * e_k");
                }
            }
        }
        let common = self.eta_den.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        let scaled: Vec<Vec<BigInt>> = (0..rank)
            .map(|k| {
                let f = &common / &self.eta_den[k];
                self.eta_num[k].iter().map(|x| x * &f).collect()
            })
            .collect();
        if hnf_rows(&scaled, t.dim())?.rank() != rank {
            return mismatch("eta vectors are linearly dependent");
        }
        for (alpha, row) in t.elements().iter().zip(&self.exponents) {
            for (c, a) in alpha.coords().iter().enumerate() {
                let sum: BigInt = row.iter().zip(&scaled).map(|(l, v)| l * &v[c]).sum();
                if sum != a * &common {
                    return mismatch("exponents do not recombine to the tuple");
                }
            }
        }
        Ok(())
    }
}

/// Builds the certificate deterministically.
///
/// Positions are chosen greedily in tuple order, each one raising the rational
/// rank. `l_k` is the least common multiple of the denominators of the
/// `k`-th rational coordinate over all elements.
pub fn q_basis_certificate(t: &GroupTuple) -> Result<QBasisCertificate> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<GroupElement> = Vec::new();
    for (i, e) in t.elements().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if rows.is_empty() || rational_coordinates(&rows, e).is_none() {
            chosen.push(i);
            rows.push(e.clone());
        }
    }
    if chosen.is_empty() {
        return Err(Error::RankZero);
    }
    let rank = chosen.len();
    let coords: Vec<Vec<BigRational>> =
        t.elements().iter().map(|e| rational_coordinates(&rows, e).expect("chosen rows span every element")).collect();
    let multipliers: Vec<BigInt> =
        (0..rank).map(|k| coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c[k].denom()))).collect();
    let exponents =
        coords.iter().map(|c| c.iter().zip(&multipliers).map(|(x, l)| (x * l).to_integer()).collect()).collect();
    let (eta_num, eta_den) = rows
        .iter()
        .zip(&multipliers)
        .map(|(alpha, l)| {
            let g = alpha.coords().iter().fold(l.clone(), |g, x| g.gcd(x));
            (alpha.coords().iter().map(|x| x / &g).collect::<Vec<_>>(), l / &g)
        })
        .unzip();
    Ok(QBasisCertificate { indices: chosen.iter().map(|i| i + 1).collect(), multipliers, eta_num, eta_den, exponents })
}

/// `M_0` (zero elements) and `M_k` (last nonzero exponent on axis `k`, positive).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPartition {
    /// `classes[k]` is `M_k`, 1-based positions.
    pub classes: Vec<Vec<usize>>,
    pub multiplicities: Vec<usize>,
    /// Positions whose last nonzero exponent is negative. Empty whenever no
    /// exponent is negative, in which case `classes` cover `1..=q`.
    pub unassigned: Vec<usize>,
}

pub fn m_partition(t: &GroupTuple, cert: &QBasisCertificate) -> Result<MPartition> {
    cert.verify(t)?;
    let mut classes = vec![Vec::new(); cert.rank() + 1];
    let mut unassigned = Vec::new();
    for (i, row) in cert.exponents.iter().enumerate() {
        match row.iter().rposition(|x| !x.is_zero()) {
            None => classes[0].push(i + 1),
            Some(k) if row[k].is_positive() => classes[k + 1].push(i + 1),
            Some(_) => unassigned.push(i + 1),
        }
    }
    let multiplicities = classes.iter().map(Vec::len).collect();
    Ok(MPartition { classes, multiplicities, unassigned })
}

/// Sign classes of the exponents on one axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPartition {
    /// 1-based axis.
    pub axis: usize,
    pub plus: Vec<usize>,
    pub zero: Vec<usize>,
    pub minus: Vec<usize>,
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    /// `min(n_plus, n_minus)`.
    pub n_tilde: usize,
}

pub fn sign_partition(t: &GroupTuple, cert: &QBasisCertificate, axis: usize) -> Result<SignPartition> {
    if axis == 0 || axis > cert.rank() {
        return Err(Error::IndexOutOfRange { index: axis, len: cert.rank() });
    }
    if cert.exponents.len() != t.len() {
        return Err(Error::CertificateMismatch("exponent matrix has the wrong shape".into()));
    }
    let (mut plus, mut zero, mut minus) = (Vec::new(), Vec::new(), Vec::new());
    for (i, row) in cert.exponents.iter().enumerate() {
        let class = match row[axis - 1].sign() {
            Sign::Plus => &mut plus,
            Sign::NoSign => &mut zero,
            Sign::Minus => &mut minus,
        };
        class.push(i + 1);
    }
    Ok(SignPartition {
        axis,
        n_plus: plus.len(),
        n_zero: zero.len(),
        n_minus: minus.len(),
        n_tilde: plus.len().min(minus.len()),
        plus,
        zero,
        minus,
    })
}

/// Axes (1-based) carrying at least one negative exponent.
pub fn negative_axes(cert: &QBasisCertificate) -> Vec<usize> {
    (0..cert.rank()).filter(|&k| cert.exponents.iter().any(|row| row[k].is_negative())).map(|k| k + 1).collect()
}

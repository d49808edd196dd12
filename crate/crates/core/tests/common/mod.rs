#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use abtuple::property::{has_property_with, PropertyOptions, Search};
use abtuple::GroupTuple;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn tup(rows: &[&[i64]]) -> GroupTuple {
    GroupTuple::from_i64s(rows).unwrap()
}

pub fn from_vecs(rows: &[Vec<i64>]) -> GroupTuple {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    GroupTuple::from_i64s(&refs).unwrap()
}

/// Random tuple with `q` in `1..=max_q`, `dim` in `1..=max_dim` and entries in
/// `[-b, b]`, redrawn until its rank is at least 1.
pub fn random_tuple<R: Rng>(rng: &mut R, max_q: usize, max_dim: usize, b: i64) -> GroupTuple {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let q = rng.gen_range(1..=max_q);
        let rows: Vec<Vec<i64>> = (0..q).map(|_| (0..dim).map(|_| rng.gen_range(-b..=b)).collect()).collect();
        let t = from_vecs(&rows);
        if t.rank() >= 1 {
            return t;
        }
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Integer multiple `d` with `a = d * c`, if any.
fn multiple_of(a: &[i64], c: &[i64]) -> Option<i64> {
    let j = c.iter().position(|&x| x != 0)?;
    if a[j] % c[j] != 0 {
        return None;
    }
    let d = a[j] / c[j];
    (d != 0 && a.iter().zip(c).all(|(&x, &y)| x == d * y)).then_some(d)
}

fn boxed(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

fn pick(cands: &[(Vec<i64>, usize)], t: usize, from: usize, rows: &mut Vec<Vec<i64>>, used: &mut Vec<usize>) -> bool {
    if rows.len() == t {
        return det(rows).abs() == 1;
    }
    for k in from..cands.len() {
        let (c, i) = &cands[k];
        if used.contains(i) {
            continue;
        }
        rows.push(c.clone());
        used.push(*i);
        if pick(cands, t, k + 1, rows, used) {
            return true;
        }
        rows.pop();
        used.pop();
    }
    false
}

/// Searches every basis `U * H` of the span (`H` its canonical basis, `U`
/// unimodular) whose rows are bounded by the tuple's own coordinates, and
/// reports whether one has `rank` rows dividing distinct tuple elements.
pub fn adequate_oracle(t: &GroupTuple) -> bool {
    let span = t.span();
    let rank = span.rank();
    let coords: Vec<Vec<i64>> = t
        .elements()
        .iter()
        .map(|e| span.solve_coordinates(e).unwrap().unwrap().iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    let mut cands = Vec::new();
    for (i, a) in coords.iter().enumerate() {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let bounds: Vec<i64> = a.iter().map(|x| x.abs()).collect();
        for c in boxed(&bounds) {
            if multiple_of(a, &c).is_some() {
                cands.push((c, i));
            }
        }
    }
    pick(&cands, rank, 0, &mut Vec::new(), &mut Vec::new())
}

/// Holder counts by rank over all ordered tuples that contain zero, counted
/// once per multiset after the fact.
pub fn reference_holders(s: usize, q: usize, dim: usize, b: i64) -> BTreeMap<usize, u64> {
    let values = boxed(&vec![b; dim]);
    let opts = PropertyOptions { search: Search::Reference, ..Default::default() };
    let mut seen = BTreeSet::new();
    let mut by_rank = BTreeMap::new();
    let total = values.len().pow(q as u32);
    for code in 0..total {
        let mut rows = Vec::with_capacity(q);
        let mut c = code;
        for _ in 0..q {
            rows.push(values[c % values.len()].clone());
            c /= values.len();
        }
        if !rows.iter().any(|r| r.iter().all(|&x| x == 0)) {
            continue;
        }
        let t = from_vecs(&rows);
        if !has_property_with(&t, q, s, &opts).unwrap().holds {
            continue;
        }
        let mut key = rows.clone();
        key.sort();
        if seen.insert(key) {
            *by_rank.entry(t.rank()).or_insert(0) += 1;
        }
    }
    by_rank
}

pub fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).fold(BigInt::from(0), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

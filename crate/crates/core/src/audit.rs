//! Instance-level audit of the structural claims behind the classification.
//!
//! Given a tuple containing zero with `P(q, s)` and `2 <= s < q <= 2s`, the
//! auditor normalizes it so that zero occurs at least twice, builds the
//! rational basis certificate, and checks each intermediate statement on the
//! concrete data:
//!
//! * `equal-pair`: two positions carry equal values.
//! * `rank-bound`: rank is at most `s - 1`.
//! * `certificate-exact`: the certificate recombines to the tuple exactly.
//! * `base-case-form` (`s = 2`): `q = 3` forces all zeros; `q = 4` leaves
//!   `0, 0, x, y` with `x = 0`, `y = 0` or `x + y = 0`.
//! * `partition-sums` (no negative exponents): no nonempty set of class sizes
//!   `m_0..m_t` adds up to `s`.
//! * `multiplicity-pattern` (no negative exponents, rank `>= s - 1`): rank is
//!   `s - 1`, `q = 2s`, and the sizes read `m_0 = s + 1, m_k = 1` or, for odd
//!   `s`, all equal to 2.
//! * `twin-equality` (all sizes 2): both members of each class carry the
//!   same value.
//! * per axis with a negative exponent (`s >= 3`, rank `>= s - 1`):
//!   `induced-property`, `rank-drop`, `axis-balance`, `type-a-exclusion`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certificate::{
    m_partition, negative_axes, q_basis_certificate, sign_partition, MPartition, QBasisCertificate,
};
use crate::classify::{check_arity, classify, Classification};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::property::{has_property_with, PropertyOptions};
use crate::tuple::GroupTuple;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

impl Claim {
    fn new(name: &str, pass: bool, witness: Value) -> Self {
        Claim { name: name.to_string(), pass, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub s: usize,
    pub q: usize,
    pub rank: usize,
    /// Value subtracted from every element so that zero occurs twice.
    pub translation: Option<GroupElement>,
    /// `"alpha"` when no exponent is negative, `"beta"` otherwise, `"none"`
    /// at rank 0.
    pub case: String,
    pub claims: Vec<Claim>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

pub fn audit_claims(t: &GroupTuple, s: usize) -> Result<AuditReport> {
    audit_claims_with(t, s, &PropertyOptions::default())
}

pub fn audit_claims_with(t: &GroupTuple, s: usize, opts: &PropertyOptions) -> Result<AuditReport> {
    let q = t.len();
    check_arity(q, s).map_err(|e| Error::Precondition(e.to_string()))?;
    if !t.contains_zero() {
        return Err(Error::Precondition("tuple does not contain the zero element".into()));
    }
    if !has_property_with(t, q, s, opts)?.holds {
        return Err(Error::Precondition(format!("tuple does not have P({q}, {s})")));
    }

    let mut claims = Vec::new();
    let pair = t.equal_pair();
    claims.push(Claim::new("equal-pair", pair.is_some(), json!({ "pair": pair })));

    let zeros = t.elements().iter().filter(|e| e.is_zero()).count();
    let (u, translation) = match pair {
        Some((i, _)) if zeros < 2 => {
            let c = t.elements()[i - 1].clone();
            (t.translate(&c)?, Some(c))
        }
        _ => (t.clone(), None),
    };

    let rank = u.rank();
    claims.push(Claim::new("rank-bound", rank < s, json!({ "rank": rank, "bound": s - 1 })));

    if s == 2 {
        claims.push(base_case_form(&u));
    }

    if rank == 0 {
        return Ok(AuditReport { s, q, rank, translation, case: "none".into(), claims });
    }

    let cert = q_basis_certificate(&u)?;
    let exact = cert.verify(&u);
    claims.push(Claim::new("certificate-exact", exact.is_ok(), json!({ "error": exact.err().map(|e| e.to_string()) })));

    let axes = negative_axes(&cert);
    let case = if axes.is_empty() { "alpha" } else { "beta" };
    if axes.is_empty() {
        let m = m_partition(&u, &cert)?;
        claims.push(partition_sums(&m, s));
        if rank + 1 >= s {
            claims.push(multiplicity_pattern(&m, s, q, rank));
            if m.multiplicities.iter().all(|&x| x == 2) {
                claims.push(twin_equality(&u, &m));
            }
        }
    } else if s >= 3 && rank + 1 >= s {
        for axis in axes {
            claims.extend(case_beta_claims(&u, &cert, axis, s, rank, opts)?);
        }
    }

    Ok(AuditReport { s, q, rank, translation, case: case.into(), claims })
}

fn base_case_form(u: &GroupTuple) -> Claim {
    let q = u.len();
    let zero_positions: Vec<usize> = (0..q).filter(|&i| u.elements()[i].is_zero()).collect();
    let pass = match q {
        3 => zero_positions.len() == 3,
        4 if zero_positions.len() >= 2 => {
            let rest: Vec<&GroupElement> =
                (0..q).filter(|i| !zero_positions[..2].contains(i)).map(|i| &u.elements()[i]).collect();
            rest[0].is_zero() || rest[1].is_zero() || (rest[0] + rest[1]).is_zero()
        }
        _ => false,
    };
    Claim::new("base-case-form", pass, json!({ "q": q, "zeros": zero_positions.len() }))
}

/// A nonempty set of class indices whose sizes add up to `target`.
fn subset_with_sum(sizes: &[usize], target: usize) -> Option<Vec<usize>> {
    let mut reach: Vec<Option<Vec<usize>>> = vec![None; target + 1];
    reach[0] = Some(Vec::new());
    for (k, &m) in sizes.iter().enumerate() {
        for sum in (m..=target).rev() {
            if reach[sum].is_none() {
                if let Some(prev) = &reach[sum - m] {
                    let mut v = prev.clone();
                    v.push(k);
                    reach[sum] = Some(v);
                }
            }
        }
    }
    reach[target].take().filter(|v| !v.is_empty())
}

fn partition_sums(m: &MPartition, s: usize) -> Claim {
    let hit = subset_with_sum(&m.multiplicities, s);
    Claim::new(
        "partition-sums",
        hit.is_none(),
        json!({ "multiplicities": m.multiplicities, "classes_summing_to_s": hit }),
    )
}

fn multiplicity_pattern(m: &MPartition, s: usize, q: usize, rank: usize) -> Claim {
    let ms = &m.multiplicities;
    let shape_ok = rank + 1 == s && q == 2 * s && ms.len() == s;
    let pattern_a = shape_ok && ms[0] == s + 1 && ms[1..].iter().all(|&x| x == 1);
    let pattern_b = shape_ok && s % 2 == 1 && ms.iter().all(|&x| x == 2);
    let pattern = if pattern_a {
        "a"
    } else if pattern_b {
        "b"
    } else {
        "none"
    };
    Claim::new(
        "multiplicity-pattern",
        pattern_a || pattern_b,
        json!({ "multiplicities": ms, "pattern": pattern, "rank": rank, "q": q }),
    )
}

fn twin_equality(u: &GroupTuple, m: &MPartition) -> Claim {
    let broken: Vec<&Vec<usize>> =
        m.classes[1..].iter().filter(|c| c.len() != 2 || u.elements()[c[0] - 1] != u.elements()[c[1] - 1]).collect();
    Claim::new("twin-equality", broken.is_empty(), json!({ "unequal_classes": broken }))
}

fn case_beta_claims(
    u: &GroupTuple,
    cert: &QBasisCertificate,
    axis: usize,
    s: usize,
    rank: usize,
    opts: &PropertyOptions,
) -> Result<Vec<Claim>> {
    let q = u.len();
    let p = sign_partition(u, cert, axis)?;
    let (n0, nt) = (p.n_zero, p.n_tilde);
    let sub = u.select(&p.zero)?;
    let mut claims = Vec::new();

    let s_sub = s.saturating_sub(nt);
    let bounds = s_sub >= 2 && s_sub < n0 && n0 <= 2 * s_sub;
    let induced = if bounds { Some(has_property_with(&sub, n0, s_sub, opts)?.holds) } else { None };
    claims.push(Claim::new(
        "induced-property",
        induced == Some(true),
        json!({
            "axis": axis, "n_plus": p.n_plus, "n_zero": n0, "n_minus": p.n_minus,
            "r": n0, "s": s_sub, "bounds": bounds, "holds": induced,
        }),
    ));

    let sub_rank = sub.rank();
    claims.push(Claim::new(
        "rank-drop",
        sub_rank + 1 == rank,
        json!({ "axis": axis, "rank": sub_rank, "expected": rank - 1 }),
    ));

    let balanced = p.n_plus == 1
        && p.n_minus == 1
        && q == 2 * s
        && n0 == 2 * s - 2
        && cert.exponents[p.minus[0] - 1][axis - 1] == -&cert.exponents[p.plus[0] - 1][axis - 1];
    claims.push(Claim::new(
        "axis-balance",
        balanced,
        json!({ "axis": axis, "plus": p.plus, "minus": p.minus, "q": q }),
    ));

    let sub_class = classify(&sub, s - 1).ok();
    let pass = matches!(sub_class, Some(Classification::TypeB { .. }));
    claims.push(Claim::new(
        "type-a-exclusion",
        pass,
        json!({ "axis": axis, "variant": sub_class.as_ref().map(Classification::variant_name) }),
    ));
    Ok(claims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(rows: &[&[i64]]) -> GroupTuple {
        GroupTuple::from_i64s(rows).unwrap()
    }

    fn claim<'a>(r: &'a AuditReport, name: &str) -> &'a Claim {
        r.claims.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("missing claim {name}"))
    }

    #[test]
    fn twins_follow_pattern_b() {
        let r = audit_claims(&tup(&[&[0, 0], &[0, 0], &[1, 0], &[1, 0], &[0, 1], &[0, 1]]), 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.case, "alpha");
        assert_eq!(claim(&r, "partition-sums").witness["multiplicities"], json!([2, 2, 2]));
        assert_eq!(claim(&r, "multiplicity-pattern").witness["pattern"], json!("b"));
        assert!(claim(&r, "twin-equality").pass);
    }

    #[test]
    fn lone_generator_follows_pattern_a() {
        let r = audit_claims(&tup(&[&[0], &[0], &[0], &[3]]), 2).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(claim(&r, "multiplicity-pattern").witness["pattern"], json!("a"));
        assert_eq!(claim(&r, "multiplicity-pattern").witness["multiplicities"], json!([3, 1]));
    }

    #[test]
    fn block_inverse_goes_through_case_beta() {
        let r = audit_claims(&tup(&[&[0, 0], &[0, 0], &[0, 0], &[1, 0], &[0, 1], &[-1, -1]]), 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.case, "beta");
        let last = r.claims.iter().find(|c| c.name == "induced-property" && c.witness["axis"] == json!(2)).unwrap();
        assert_eq!(last.witness["n_plus"], json!(1));
        assert_eq!(last.witness["n_minus"], json!(1));
        assert_eq!(last.witness["n_zero"], json!(4));
        assert_eq!(last.witness["s"], json!(2));
        let drop = r.claims.iter().find(|c| c.name == "rank-drop" && c.witness["axis"] == json!(2)).unwrap();
        assert_eq!(drop.witness["rank"], json!(1));
    }

    #[test]
    fn single_zero_is_normalized() {
        // (1,1,beta,beta^-1) moved so that only one zero remains.
        let t = tup(&[&[0], &[-2], &[-2], &[-4]]);
        let r = audit_claims(&t, 2).unwrap();
        assert_eq!(r.translation, Some(GroupElement::from_i64s(&[-2]).unwrap()));
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn preconditions_are_reported() {
        assert!(matches!(audit_claims(&tup(&[&[0], &[1], &[2]]), 2), Err(Error::Precondition(_))));
        assert!(matches!(audit_claims(&tup(&[&[1], &[1], &[1]]), 2), Err(Error::Precondition(_))));
        assert!(matches!(audit_claims(&tup(&[&[0], &[0], &[0]]), 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn subset_sum_helper() {
        assert_eq!(subset_with_sum(&[2, 2, 2], 3), None);
        assert_eq!(subset_with_sum(&[2, 2, 2, 2], 4), Some(vec![0, 1]));
        assert_eq!(subset_with_sum(&[3, 1], 2), None);
        assert_eq!(subset_with_sum(&[1, 1], 0), None);
    }

    #[test]
    fn partition_claim_flags_bad_sizes() {
        let m = MPartition {
            classes: vec![vec![1, 2], vec![3], vec![4]],
            multiplicities: vec![2, 1, 1],
            unassigned: vec![],
        };
        let c = partition_sums(&m, 3);
        assert!(!c.pass);
        assert_eq!(c.witness["classes_summing_to_s"], json!([0, 1]));
    }
}

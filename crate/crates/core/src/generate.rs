//! Seeded generators for type-A and type-B tuples.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{type_a_pattern, type_b_pattern};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::tuple::GroupTuple;
use crate::unimodular::random_unimodular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub s: usize,
    pub kind: Kind,
    /// Number of block sums; type B only.
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub breakpoints: Vec<usize>,
    pub dim: usize,
    #[serde(default)]
    pub seed: u64,
    /// Largest absolute entry of the basis-changing unimodular matrix; 0 keeps
    /// the standard basis.
    #[serde(default)]
    pub unimodular_bound: u64,
    /// Added to every element after permuting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<GroupElement>,
    /// Seed of the position shuffle; `None` keeps the canonical order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation_seed: Option<u64>,
}

impl GeneratorSpec {
    pub fn type_a(s: usize, dim: usize) -> Self {
        GeneratorSpec {
            s,
            kind: Kind::A,
            k: 0,
            breakpoints: Vec::new(),
            dim,
            seed: 0,
            unimodular_bound: 0,
            translation: None,
            permutation_seed: None,
        }
    }

    pub fn type_b(s: usize, breakpoints: Vec<usize>, dim: usize) -> Self {
        GeneratorSpec { kind: Kind::B, k: breakpoints.len(), breakpoints, ..Self::type_a(s, dim) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.s < 2 {
            return bad(format!("s = {} must be at least 2", self.s));
        }
        if self.dim < self.s - 1 || self.dim == 0 {
            return bad(format!("dim = {} is below s - 1 = {}", self.dim, self.s - 1));
        }
        match self.kind {
            Kind::A => {
                if self.s.is_multiple_of(2) {
                    return bad(format!("type A needs odd s, got {}", self.s));
                }
                if self.k != 0 || !self.breakpoints.is_empty() {
                    return bad("type A takes no breakpoints".into());
                }
            }
            Kind::B => {
                if self.k > self.s - 1 || self.breakpoints.len() != self.k {
                    return bad(format!("need {} breakpoints with k <= s - 1", self.k));
                }
                let increasing = self.breakpoints.windows(2).all(|w| w[0] < w[1]);
                let in_range = self.breakpoints.iter().all(|&a| a >= 1 && a < self.s);
                if !increasing || !in_range {
                    return bad(format!("breakpoints {:?} must increase within 1..={}", self.breakpoints, self.s - 1));
                }
            }
        }
        if let Some(c) = &self.translation {
            c.check_dim(self.dim)?;
        }
        Ok(())
    }
}

/// Builds the canonical pattern over a random integer basis, then shuffles
/// positions and translates. Deterministic in the spec.
pub fn generate(spec: &GeneratorSpec) -> Result<GroupTuple> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let u = random_unimodular(spec.dim, spec.unimodular_bound, &mut rng);
    let basis: Vec<GroupElement> = u.into_iter().take(spec.s - 1).map(GroupElement::new).collect::<Result<_>>()?;
    let mut elements = match spec.kind {
        Kind::A => type_a_pattern(spec.dim, &basis),
        Kind::B => type_b_pattern(spec.dim, spec.s, &basis, &spec.breakpoints),
    };
    if let Some(seed) = spec.permutation_seed {
        elements.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    if let Some(c) = &spec.translation {
        elements = elements.iter().map(|e| e + c).collect();
    }
    GroupTuple::with_dim(spec.dim, elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, verify_classification, Classification};

    fn tup(rows: &[&[i64]]) -> GroupTuple {
        GroupTuple::from_i64s(rows).unwrap()
    }

    #[test]
    fn identity_patterns() {
        let a = generate(&GeneratorSpec::type_a(3, 2)).unwrap();
        assert_eq!(a, tup(&[&[0, 0], &[0, 0], &[1, 0], &[1, 0], &[0, 1], &[0, 1]]));

        let b = generate(&GeneratorSpec::type_b(3, vec![2], 2)).unwrap();
        assert_eq!(b, tup(&[&[0, 0], &[0, 0], &[0, 0], &[1, 0], &[0, 1], &[-1, -1]]));

        let b = generate(&GeneratorSpec::type_b(2, vec![1], 1)).unwrap();
        assert_eq!(b, tup(&[&[0], &[0], &[1], &[-1]]));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(generate(&GeneratorSpec::type_a(4, 3)), Err(Error::InvalidSpec(_))));
        assert!(matches!(generate(&GeneratorSpec::type_b(3, vec![2, 1], 2)), Err(Error::InvalidSpec(_))));
        assert!(matches!(generate(&GeneratorSpec::type_b(3, vec![3], 2)), Err(Error::InvalidSpec(_))));
        assert!(matches!(generate(&GeneratorSpec::type_b(3, vec![0], 2)), Err(Error::InvalidSpec(_))));
        assert!(matches!(generate(&GeneratorSpec::type_a(5, 3)), Err(Error::InvalidSpec(_))));
        let mut spec = GeneratorSpec::type_b(3, vec![1], 2);
        spec.k = 2;
        assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn seeded_generation_round_trips() {
        for seed in 0..20 {
            let spec = GeneratorSpec {
                seed,
                unimodular_bound: 5,
                permutation_seed: Some(seed + 100),
                ..GeneratorSpec::type_b(4, vec![1, 3], 4)
            };
            let t = generate(&spec).unwrap();
            assert_eq!(t, generate(&spec).unwrap());
            let c = classify(&t, 4).unwrap();
            assert!(matches!(c, Classification::TypeB { k: 2, .. }), "{c:?}");
            assert!(verify_classification(&t, &c));
        }
    }

    #[test]
    fn spec_json() {
        let spec: GeneratorSpec =
            serde_json::from_str(r#"{"s":3,"kind":"b","k":1,"breakpoints":[2],"dim":2}"#).unwrap();
        assert_eq!(spec, GeneratorSpec::type_b(3, vec![2], 2));
    }
}

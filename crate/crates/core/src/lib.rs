//! Exact decision and certification of subset-sum properties of tuples in
//! free abelian groups.
//!
//! Group elements are integer vectors; a tuple `(alpha_1, ..., alpha_q)` has
//! property `P(r, s)` when every `s`-subset of every `r`-subset of positions
//! shares its sum with a different `s`-subset. For tuples containing zero with
//! `P(q, s)` and `2 <= s < q <= 2s`, the rank of the generated group is at
//! most `s - 1`, and at rank `s - 1` the tuple takes one of two canonical
//! shapes. This crate decides the property, computes ranks and bases exactly,
//! classifies extremal tuples with checkable certificates, and audits the
//! intermediate structural claims on concrete instances.

pub mod adequate;
pub mod audit;
pub mod certificate;
pub mod classify;
pub mod combin;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod io;
pub mod json;
pub mod lattice;
pub mod property;
pub mod tuple;
pub mod unimodular;

pub use adequate::{adequate_basis_decide, AdequateBasisDecision};
pub use audit::{audit_claims, AuditReport};
pub use certificate::{m_partition, q_basis_certificate, sign_partition, MPartition, QBasisCertificate, SignPartition};
pub use classify::{classify, rebase_type_b, verify_classification, Classification};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec, Kind};
pub use lattice::{hnf_rows, primitive_representative, sublattice_index, GroupElement, Index, Lattice};
pub use property::{has_property, has_property_with, PropertyOptions, PropertyReport};
pub use tuple::GroupTuple;

//! Computational engine for finite p-groups: presentations, coset
//! enumeration, Cayley-table groups, subgroup lattices, breadth
//! invariants, named constructions, and verification suites.

pub mod bitset;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod invariants;
pub mod isomorphism;
pub mod lattice;
pub mod constructions;
pub mod presentation;
pub mod suites;

#[doc(hidden)]
pub mod oracle;

pub use error::{Error, Result};
pub use group::{Group, Subgroup};
pub use presentation::{parse_presentation, Presentation, Word};

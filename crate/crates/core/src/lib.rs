//! Finite groups, groupoids and group-groupoids over dense integer ids.
//!
//! Every validator is exhaustive: it enumerates all elements, pairs, or
//! composable pairs and reports each violated law with a bounded list of
//! witnesses. With the default `parallel` feature the enumeration runs on
//! rayon; disabling it gives a sequential build with identical reports.

pub mod constructions;
pub mod corpus;
pub mod error;
pub mod group;
pub mod group_groupoid;
pub mod groupoid;
pub mod json;
pub mod morphism;
pub mod mutate;
pub mod par;
pub mod report;
pub mod sweep;
pub mod trivialization;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom};
pub use group_groupoid::GroupGroupoid;
pub use groupoid::{FiniteGroupoid, Groupoid};
pub use morphism::{GroupoidMorphism, MorphismMaps};
pub use report::{CheckResult, ValidationReport, DEFAULT_WITNESS_CAP};

/// Validator settings. `witness_cap` bounds the witnesses kept per law.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    pub witness_cap: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

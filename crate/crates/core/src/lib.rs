//! Braid-group computation with two Garside structures (Artin and
//! Birman–Ko–Lee): left normal forms, cycling and decycling, Super and Ultra
//! Summit Sets, rigidity, and the constructions around the braids
//! `α_n = σ1 σ2⁻¹ σ3 σ4⁻¹ ⋯` whose Ultra Summit Sets grow exponentially.

pub mod artin;
pub mod bkl;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod garside;
pub mod perm;
pub mod report;
pub mod summit;
pub mod word;

pub use artin::{ArtinGroup, SimpleFactor};
pub use bkl::{BandGenerator, BklGroup, BklWord, CanonicalFactor, DescendingCycle};
pub use error::{Error, Result};
pub use garside::{GarsideStructure, NormalForm, Presentation};
pub use report::{Check, MemberRow, UssSummary, VerificationReport};
pub use summit::{UssOptions, UssReport};
pub use word::{BraidWord, Letter};

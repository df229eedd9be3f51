//! Exact tools for two sign-reversing involutions on permutations with a
//! marked cycle, and exhaustive checks of the cycle-count identities they
//! prove.
//!
//! - [`phi`] acts on marked permutations `(π, C)`.
//! - [`psi`] acts on labeled configurations `(π, C, f)`.
//! - [`stirling`] has the Stirling numbers of the first kind and closed forms.
//! - [`verify`] runs the exhaustive checks and produces reports.

pub mod enumerate;
pub mod error;
pub mod perm;
pub mod phi;
pub mod psi;
pub mod stirling;
pub mod verify;

pub use enumerate::{enumerate_permutations, enumerate_permutations_capped, Caps};
pub use error::{Error, Result};
pub use perm::{
    left_multiply_transposition, parse_cycle_notation, parse_cycle_notation_auto, Cycle,
    CycleDecomposition, Permutation,
};
pub use phi::{is_phi_fixed, phi, phi_with, MarkedPermutation, PhiRule, PhiStep};
pub use psi::{is_fix, psi, psi_with, LabeledConfiguration, PsiRule, PsiStep};

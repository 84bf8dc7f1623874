//! Numerical toolkit for tripartite states that commute with every `U⊗U⊗U`.
//!
//! The five real coordinates `(r₊, r₋, r₁, r₂, r₃)` parametrize the whole
//! family for any local dimension `d ≥ 2`. On top of the coordinates the
//! crate provides exact and Monte-Carlo twirls, closed-form membership tests
//! for the triseparable, biseparable and PPT subsets, and brute-force oracles
//! that check those tests against explicit matrices and convex hulls.

pub mod cli;
pub mod config;
pub mod error;
pub mod oracles;
pub mod perm;
pub mod region;
pub mod separability;
pub mod tensor;
pub mod verify;
pub mod werner;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use perm::{Perm, PermutationExpansion, RLabel};
pub use separability::{Partition, PptSlacks, RegionLabel};
pub use tensor::{CMatrix, PureVector};
pub use werner::{SiteRelabeling, WernerPoint};

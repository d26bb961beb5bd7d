//! Two-level supersaturated designs under the E(s^2) criterion.
//!
//! - [`field`]: arithmetic in GF(s) for odd prime powers s.
//! - [`design`], [`blocks`]: design matrices, block designs, and the map between
//!   E(s^2)-optimal designs and BIBDs.
//! - [`bounds`]: the classical lower bound, the improved piecewise bound, and a
//!   brute-force oracle for it.
//! - [`construction`]: BIBDs with distinct blocks from cyclotomic difference families.
//! - [`search`]: restarted local search for designs that meet the bound.
//! - [`formats`], [`catalog`], [`cli`]: files, a design catalog, and the `ssd` command.

// Parity tests read as `x % 2 == 0` and bounds as `m <= n - 1`, as in the formulas.
#![allow(clippy::manual_is_multiple_of, clippy::int_plus_one)]

pub mod blocks;
pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod construction;
pub mod design;
pub mod error;
pub mod field;
pub mod formats;
pub mod rational;
pub mod search;

pub use blocks::{bibd_to_design, design_to_bibd, is_bibd, trivial_complement, BibdParams, BlockDesign};
pub use bounds::{bound_oracle, bound_table, improved_bound, ntw_bound, unique_q, BoundReport, Branch};
pub use construction::{
    construct, equivalence_classes, plan, ConstructionSpec, EquivClass, HalfSelector, Part, ShiftSet,
};
pub use design::{e_s2, gram_summary, ss_gram, validate_design, DesignMatrix, ValidationReport};
pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FiniteField};
pub use rational::Rational;
pub use search::{local_search, random_balanced_design, search, swap_delta, SearchConfig, SearchResult};

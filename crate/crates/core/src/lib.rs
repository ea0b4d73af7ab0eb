//! Linearized Reed-Solomon codes over finite-field towers.
//!
//! The crate constructs LRS codes, computes sum-rank metric quantities
//! exactly, and verifies list-size lower bounds constructively against
//! brute-force oracles at desk scale:
//!
//! - [`gf`]: finite-field tower arithmetic (`F_p`, `F_{q^m}`, Frobenius
//!   powers, subfields, norms, conjugacy classes).
//! - [`skew`]: the skew polynomial ring and generalized operator evaluation.
//! - [`sumrank`]: sum-rank weights/distances and exact counting (matrix rank
//!   counts, sphere sizes, `gamma_q`).
//! - [`lrs`]: code construction, encoding, exhaustive minimum distance, and
//!   the brute-force list-size oracle.
//! - [`bounds`]: witness lists, list-size bound evaluators, sparse
//!   polynomial families, explicit code families, and the rate table.
//! - [`report`]: JSON/CSV data-transfer types shared with the CLI.
//! - [`verify`]: named property suites re-checking every documented
//!   invariant, with independent brute-force oracles.

pub mod bounds;
pub mod gf;
pub mod linalg;
pub mod lrs;
pub mod report;
pub mod skew;
pub mod sumrank;
pub mod verify;

pub use gf::{build_tower, Automorphism, FElem, FieldTower};
pub use lrs::{LrsCode, DEFAULT_ENUM_CAP};
pub use skew::{EvalPair, SkewPoly};
pub use sumrank::BlockVector;

//! Exact constructions of generalized and twisted Reed-Solomon codes over
//! GF(q²) with controlled Hermitian hulls, and the MDS entanglement-assisted
//! quantum codes they yield through the CSS construction.
//!
//! Every hull bound a construction claims is checked against the hull
//! computed by exact linear algebra; see [`verify`] for the sweeps.

pub mod cli;
pub mod code;
pub mod eaqec;
pub mod error;
pub mod field;
pub mod hullctl;
pub mod linalg;
pub mod par;
pub mod rs;
pub mod twisted;
pub mod verify;

pub use code::{HullReport, LinearCode, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use field::{build_tower, Elt, Field, FieldTower};
pub use linalg::GfMatrix;

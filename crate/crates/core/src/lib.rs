//! Exact computer algebra for finite A∞-categories.
//!
//! Scalars are rationals, truncated power series `Q[t]/t^N`, or truncated
//! Laurent series. Structure maps are stored as sparse structure constants
//! and every check (A∞ relations, Maurer–Cartan equations, cocycle
//! conditions) is an exact identity.

pub mod category;
pub mod corpus;
pub mod deform;
pub mod error;
pub mod exactlin;
pub mod geomfacts;
pub mod hochschild;
pub mod instance;
pub mod multilinear;
pub mod tw;

pub use error::{Error, Result};

/// Default truncation order `N` of series scalars.
pub const DEFAULT_TRUNC: u32 = 8;

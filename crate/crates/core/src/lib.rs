//! Anisotropic least gradient problems on the unit disk with Cantor-type
//! boundary data.
//!
//! The crate provides planar norms built from `l_p` atoms, chord and
//! trapezoid geometry on the unit circle, recursive Cantor constructions of
//! boundary arc families, an exact solver for the discrete chord-matching
//! problem, and the numerical experiments built on top of them.

pub mod acceptance;
pub mod cli;
pub mod construction;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod io;
pub mod norm;
pub mod sig17;
pub mod solver;

pub use construction::{Construction, ConstructionConfig, Mode};
pub use error::{Error, Result};
pub use geometry::{Arc, ArcSet, Chord, TrapezoidReport};
pub use norm::NormSpec;
pub use solver::{ChordMatching, SolveReport, TraceDatum};

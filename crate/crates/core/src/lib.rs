//! Signed graph homomorphisms: walk-girths, Extended Double Covers,
//! SP-completeness certificates and the twisted tube.

pub mod cycles;
pub mod distance;
pub mod edc;
pub mod error;
pub mod girth;
pub mod hom;
pub mod io;
pub mod signed;
pub mod tube;
pub mod weighted;

pub use error::{Error, Result};
pub use girth::{Girth, GirthVector, WalkType};
pub use signed::{Sign, SignedGraph, Switching};
pub use weighted::{Triple, WeightedSignedGraph};

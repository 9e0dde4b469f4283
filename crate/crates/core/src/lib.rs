//! Mod-2 cohomology of orbit spaces of free involutions on lens spaces,
//! spheres and real projective spaces, computed by exhaustive search over
//! the Borel spectral sequence.

pub mod cli;
pub mod f2;
pub mod gysin;
pub mod lens;
pub mod reconstruct;
pub mod ring;
pub mod search;
pub mod spectral;

pub use f2::{BitMatrix, BitVec, Subspace};
pub use ring::{Presentation, SpaceKind};
pub use search::{classify, FiberSpec, SearchConfig, SearchReport};

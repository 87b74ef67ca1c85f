//! Crystal graphs of sl(n+1) computed three ways: the semistandard-tableau
//! model, the geometric model on irreducible components of quiver varieties
//! (labeled by multisegments, with all linear algebra done exactly over Q),
//! and the explicit bijection between the two, together with a verifier that
//! the models agree as decorated colored graphs.

pub mod binf;
pub mod blambda;
pub mod bridge;
pub mod cartan;
pub mod cli;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod multiseg;
pub mod quiver;
pub mod rep;
pub mod rng;
pub mod tableau;

pub use error::{Error, Result};

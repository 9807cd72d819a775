//! Algebraic connectivity and effective resistance on small weighted graphs.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: weighted graphs, the text file format and Laplacian assembly.
//! * [`spectral`]: cyclic Jacobi eigensolver, Fiedler pair, Rayleigh quotients
//!   and the Moore–Penrose pseudo-inverse.
//! * [`resistance`]: effective resistance via harmonic extension and via the
//!   pseudo-inverse, total resistance and the Kirchhoff identity.
//! * [`closedform`]: exact curves and optima for the paths on three and four
//!   vertices.
//! * [`optimize`]: maximization of `λ₂·R` over edge weights.
//! * [`symmetry`]: automorphism enumeration and the orbit-invariance check on
//!   optimizer output.
//! * [`cli`]: the command-line surface used by the `fiedler` binary.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod optimize;
pub mod resistance;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};
pub use graph::{Edge, Laplacian, WeightedGraph};
pub use matrix::Matrix;
pub use optimize::{OptimizationResult, OptimizerConfig};
pub use resistance::ResistanceProfile;
pub use spectral::{Fiedler, PseudoInverse, SpectralDecomposition};
pub use symmetry::{AutomorphismGroup, ConjectureVerdict};

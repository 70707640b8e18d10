//! p-powers of graphs: a p-power of `G` has the k-tuples of vertices as
//! vertices, two tuples being adjacent when the number of coordinates in
//! which they are adjacent in `G` is not divisible by `p`.
//!
//! The crate computes exact independence and clique numbers of small powers
//! and evaluates upper bounds on them (Delsarte LP, Hoffman ratio,
//! Gram-rank) against explicit constructions.

pub mod bitset;
pub mod code;
pub mod constructions;
pub mod delsarte;
pub mod error;
pub mod exact;
pub mod graph;
pub mod krawtchouk;
pub mod linalg;
pub mod ramsey;
pub mod reproduce;
pub mod search;
pub mod spectral;

pub use code::Code;
pub use constructions::ConstructionWitness;
pub use delsarte::{CertificatePolynomial, DistanceDistribution, MacWilliamsVector};
pub use error::{CertificateViolation, Error, Result};
pub use graph::{Graph, PowerOracle, PowerParams, DEFAULT_MAX_VERTICES};
pub use krawtchouk::KrawtchoukTable;
pub use ramsey::{AsymptoticBound, EntrywisePolynomial, Field, GramMatrix, VectorRepresentation};
pub use search::{SearchConfig, SearchResult, DEFAULT_NODE_BUDGET};
pub use spectral::{BaseSpectralData, PowerSpectrum, XalBoundReport};

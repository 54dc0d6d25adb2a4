//! Truncated unitary convolution rings `𝒜_[n]` and the simplicial complexes
//! `Δ([n])` attached to them.

pub mod arith;
pub mod asymptotics;
pub mod complex;
pub mod error;
pub mod homology;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod shelling;

pub use arith::{
    LambdaPartition, PrimePower, Sieve, SpecialFunctions, UnitaryFactorization, UnitaryProduct,
    DEFAULT_SIEVE_LIMIT,
};
pub use complex::{FHVectors, HilbertSeries, SimplicialComplex, SymmetricMatch};
pub use error::{Error, Result};
pub use homology::{
    BettiTable, HomologyProfile, IntegerMatrix, PoincareSeries, SmithForm, SubsetScan,
};
pub use poly::Poly;
pub use presentation::{IdealPresentation, MuCounts, Variable};
pub use ring::{SocleConstant, SyzygySet, TruncatedFunction};
pub use shelling::{FacetOrder, ShellingVerdict};

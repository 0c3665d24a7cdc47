//! Exact computation of the embedded contact homology data of ellipsoid
//! boundaries, and of the ECH capacity sequences that obstruct symplectic
//! embeddings of four-dimensional ellipsoids.
//!
//! Everything is exact: rationals are arbitrary precision, and irrational
//! axis ratios are simulated by an infinitesimal tilt instead of floating
//! point. See the guide in `book/` for a narrative walk-through.
//!
//! ```
//! use ech_core::capacity::{check_embedding, ObstructionVerdict};
//! use ech_core::exact::Rational;
//!
//! // E(2,2) has more volume than E(1,1): the capacities object at k = 2.
//! let verdict = check_embedding(
//!     &Rational::from(2i64), &Rational::from(2i64),
//!     &Rational::one(), &Rational::one(),
//!     16,
//! );
//! assert!(matches!(verdict, ObstructionVerdict::Obstructed { k: 2, .. }));
//! ```

pub mod capacity;
pub mod ellipsoid;
pub mod exact;
pub mod oracle;
pub mod orbit;

pub use capacity::{
    capacity_sequence, check_embedding, counts_dominate, f_lower_bound, staircase_data,
    volume_consistent, CapacitySequence, CapacityStream, FLowerBound, ObstructionVerdict,
    StaircasePoint,
};
pub use ellipsoid::{
    filtered_count, Ellipsoid, EllipsoidError, EllipsoidGenerator, GeneratorRecord,
    GradingBreakdown, LatticeTriangle,
};
pub use exact::{ExactError, PerturbedRational, Rational, Tilt};
pub use orbit::{
    elliptic_partition_small, hyperbolic_partition, EigenvalueSign, OrbitError, OrbitKind,
    OrbitSet, Partition, PartitionDirection, ReebOrbit,
};

// The guide chapters double as doc-tests so their code samples cannot rot.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    pub mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/orbits-and-indices.md")]
    pub mod orbits_and_indices {}
    #[doc = include_str!("../../../book/src/ellipsoid-generators.md")]
    pub mod ellipsoid_generators {}
    #[doc = include_str!("../../../book/src/capacities-and-obstructions.md")]
    pub mod capacities_and_obstructions {}
}

//! Quantum-classical hybrid stabilizer codes: Pauli algebra, stabilizer
//! groups, hybrid code verification, weight enumerators, linear-programming
//! bounds and explicit code families.

pub mod bits;
pub mod bounds;
pub mod dense;
pub mod enumerators;
pub mod error;
pub mod families;
pub mod hybrid;
pub mod pauli;
pub mod simplex;
pub mod stabilizer;

pub use bits::Bits;
pub use bounds::{build_constraints, check_point, feasible, sweep, LpInstance, LpResult, LpStatus};
pub use dense::{
    detectable_space_dim_dense, kl_check, kl_check_bases, pauli_matrix, projector,
    weight_distributions_dense, CodeBasis, GaussianMatrix, GaussianRational, KlFailure, KlOutcome,
};
pub use enumerators::{
    distance_from_enumerators, krawtchouk, macwilliams,
    shadow_values, EnumeratorEngine, KrawtchoukTable, WeightDistributionSet,
};
pub use error::{Error, Result};
pub use families::{
    dist2_family, gottesman, paste, seed_code, yu_excludes_stabilizer, BitOrder, GottesmanCode,
    PastingLayout,
};
pub use hybrid::{
    detectable_dimension, orthogonal_pair, Degeneracy, Distance, HybridCode, StabilizerUnionCode,
};
pub use pauli::{enumerate_paulis, pauli_count, pauli_from_string, PauliKind, PauliOperator};
pub use simplex::{Feasibility, LinearSystem, Sense};
pub use stabilizer::{
    intersect, min_weight_outside, Intersection, Membership, MinWeight, StabilizerGroup,
};

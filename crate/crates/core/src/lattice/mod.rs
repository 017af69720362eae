//! Elements of the Hilbert lattice: generator presentations, certificate
//! codes, meet, and non-membership as a semidecision.

pub mod certificate;
pub mod code;
pub mod enumerate;
pub mod ops;
pub mod subspace;

pub use certificate::{certificate_valid, halfspace_tests, Certificate, HalfspaceReport};
pub use code::{
    distance_code, encode, finite_distance_oracle, semidecide_not_member, SubspaceCode,
};
pub use enumerate::{candidates, directions, Candidate};
pub use ops::{meet, ortho_complement_finite};
pub use subspace::{CountableSubspace, FiniteSubspace, Subspace};

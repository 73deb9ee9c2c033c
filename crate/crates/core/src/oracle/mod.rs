//! Independent cohomological computations: cochains, cohomology groups by
//! linear algebra over `Z/p^k`, and the passage between cocycles and
//! extensions.

pub mod abelian;
pub mod bridge;
pub mod brute;
pub mod cochain;
pub mod cohomology;
pub mod local;
pub mod smith;

use thiserror::Error;

pub use bridge::{
    class_of_crossed_extension, cocycle_of_extension, crossed_extension_class, extension_class, extension_from_2cocycle, SectionChoice,
};
pub use brute::{brute_force, candidate_count, cross_check, BruteCounts, CrossCheck};
pub use cochain::Cochain;
pub use cohomology::{crossed_homomorphisms, z1, CocycleClass, Cohomology, CohomologyKind, DEFAULT_ENTRY_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("linear system too large: {entries} matrix entries exceed the cap of {cap}")]
    SizeCap { entries: usize, cap: usize },
    #[error("group of order {order} is too large to tabulate")]
    GroupTooLarge { order: u128 },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain belongs to a different module")]
    ModuleMismatch,
    #[error("class {0} is out of range")]
    ClassOutOfRange(usize),
    #[error("malformed cochain: {0}")]
    BadCochain(String),
    #[error(transparent)]
    Smith(#[from] smith::SmithError),
    #[error(transparent)]
    Extension(#[from] crate::h2::ExtError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

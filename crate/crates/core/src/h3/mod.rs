//! Crossed extensions of `C` by a module, butterflies between them, and the
//! structure of the third cohomology 2-group.

mod butterfly;
mod phi;
mod xext;

use thiserror::Error;

use crate::group::{Elem, GroupError};
use crate::xmod::XModError;

pub use butterfly::{
    butterflies_isomorphic, butterfly_beta, compose_butterflies, compose_parts, find_butterfly_iso, identity_butterfly,
    is_butterfly_iso, morphism_to_butterfly, Butterfly, ButterflyIso, Composite, Wings,
};
pub use phi::{
    check_pf_and_cok, extension_of_pi1, inverse_witness, is_pi1_shaped, pf_and_cok_square, phi, unit_identity,
    PfAndCokSquare,
};
pub use xext::{
    check_xcocartesian, crossed_extension_of, inverse_xext, product_of_xmaps, product_xext, pushforward_xext,
    tensor_xext, xext_morphisms_over, CrossedExtension, XExtMorphism, XProduct, XPushforward,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XExtError {
    #[error("ill-typed data: {0}")]
    Typing(&'static str),
    #[error("not exact at E2: {0}")]
    NotExactAtE2(&'static str),
    #[error("not exact at E1: {0}")]
    NotExactAtE1(&'static str),
    #[error("not a crossed module: {0}")]
    NotCrossedModule(XModError),
    #[error("objects live over different modules")]
    ModuleMismatch,
    #[error("objects live over different groups C")]
    BaseMismatch,
    #[error("not a morphism of crossed extensions: {0}")]
    NotAMorphism(&'static str),
    #[error("butterflies are not composable")]
    TypeMismatch,
    #[error("butterfly condition i fails: {0}")]
    ConditionI(String),
    #[error("butterfly condition ii fails: {0}")]
    ConditionII(String),
    #[error("butterfly condition iii fails: κ(δ{y} * {x}) != {y} + κ{x} - {y}")]
    ConditionIII { y: Elem, x: Elem },
    #[error("butterfly condition iv fails: ι(γ{y} * {x}) != {y} + ι{x} - {y}")]
    ConditionIV { y: Elem, x: Elem },
    #[error("cooperator extraction failed: {0}")]
    CooperatorFails(&'static str),
    #[error("butterfly is not flippable: (κ, γ) is not short exact")]
    NotFlippable,
    #[error("butterfly is not of the form I -> I with κ = -ι and δ = γ")]
    NotPi1Shape,
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T, E = XExtError> = std::result::Result<T, E>;

#[cfg(test)]
mod tests;

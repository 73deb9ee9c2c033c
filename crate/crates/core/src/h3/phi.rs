//! Butterflies from `I_ξ` to itself, the comparison functor from abelian
//! extensions, and the explicit inverse witness for the tensor product.

use crate::cmodule::{CModule, CModuleMorphism};
use crate::group::{cooperator, direct_product, quotient_unchecked, GroupHom};
use crate::h2::{product_extension, AbelianExtension, CocartesianReport, ExtensionMap, check_cocartesian};
use crate::xmod::associated_groupoid;

use super::butterfly::{compose_parts, Butterfly, Wings};
use super::xext::{inverse_xext, product_xext, tensor_xext, CrossedExtension};
use super::{Result, XExtError};

/// `Φ(E)`: `F = E`, `κ = -κ_E`, `ι = κ_E`, `δ = γ = γ_E`, from `I_ξ` to `I_ξ`.
pub fn phi(e: &AbelianExtension) -> Butterfly {
    let unit = CrossedExtension::unit(e.module());
    let b = e.module().coeff();
    let minus = GroupHom::from_fn(b, e.middle(), |u| e.kappa().apply(b.neg(u)));
    let wings = Wings { kappa: minus, iota: e.kappa().clone(), delta: e.gamma().clone(), gamma: e.gamma().clone() };
    Butterfly::new(&unit, &unit, wings).expect("Φ of an extension is a butterfly")
}

/// Whether `b` runs from `I_ξ` to itself with `κ = -ι` and `δ = γ`.
pub fn is_pi1_shaped(b: &Butterfly) -> bool {
    let (dom, cod) = (b.dom(), b.cod());
    if dom != cod || !dom.is_unit_shaped() {
        return false;
    }
    let coeff = dom.module().coeff();
    b.delta() == b.gamma() && coeff.elements().all(|u| b.kappa().apply(u) == b.iota().apply(coeff.neg(u)))
}

/// The extension `(ι, γ)` carried by a butterfly of π₁ shape.
pub fn extension_of_pi1(b: &Butterfly) -> Result<AbelianExtension> {
    if !is_pi1_shaped(b) {
        return Err(XExtError::NotPi1Shape);
    }
    AbelianExtension::over(b.iota().clone(), b.gamma().clone(), b.dom().module()).map_err(|_| XExtError::NotPi1Shape)
}

/// The flippable butterfly `E ⊗ E* -> I_ξ` with `F = E2 ⋊ E1`.
///
/// On the tensor, `E2ᵀ = (B x E2 x E2) / N` and `E1ᵀ = E1 x_C E1`. The wings are
/// `κ[(b, x1, x2)] = (-jb, 0) + φ(x1, x2)` where `φ` is the cooperator of
/// `ker d` and `ker c`, `ι = ker c . j`, `δ(x, g) = (g, ∂x + g)` and `γ = p c`.
pub fn inverse_witness(e: &CrossedExtension) -> Result<Butterfly> {
    let star = inverse_xext(e);
    let tensor = tensor_xext(e, &star)?;
    let unit = CrossedExtension::unit(e.module());
    let gpd = associated_groupoid(e.xm());
    let f = &gpd.total.group;
    let (b, e2) = (e.module().coeff(), e.e2());

    // Rebuild the representative of the tensor middle group to read its labels.
    let prod = product_xext(e, &star)?;
    let sum = direct_product(b, &prod.e2.group);
    let phi = cooperator(&gpd.ker_d, &gpd.ker_c)?;
    let minus_j = GroupHom::from_fn(b, f, |u| gpd.ker_c.apply(e2.neg(e.j().apply(u))));
    let tilde = cooperator(&minus_j, &phi)?;
    debug_assert_eq!(tilde.dom(), &sum.group);
    let mut rel = vec![false; sum.group.order()];
    for w in prod.ext.module().coeff().elements() {
        let (u, v) = (w / b.order(), w % b.order());
        rel[sum.pair(b.op(u, v), prod.e2.group.neg(prod.ext.j().apply(w)))] = true;
    }
    let q = quotient_unchecked(&sum.group, rel);
    if q.group() != tensor.e2() {
        return Err(XExtError::Typing("tensor representative changed shape"));
    }
    let kappa = q.factor(&tilde)?;

    let iota = gpd.ker_c.after(e.j());
    let delta = GroupHom::from_fn(f, tensor.e1(), |z| {
        let (x, g) = gpd.total.split(z);
        prod.e1.index_of(g, e.e1().op(e.boundary().apply(x), g)).expect("both lie over p(g)")
    });
    let gamma = e.p().after(&gpd.c);
    Butterfly::new(&tensor, &unit, Wings { kappa, iota, delta, gamma })
}

/// The square inside `Φ(E') . Φ(E)` that presents the kernel arrow `q ⟨0, κ'⟩`
/// of the composite as the pushforward of `κ x_C κ'` along `[1, 1]`.
#[derive(Clone, Debug)]
pub struct PfAndCokSquare {
    pub map: ExtensionMap,
    pub composite: Butterfly,
}

pub fn pf_and_cok_square(e: &AbelianExtension, e2: &AbelianExtension) -> Result<PfAndCokSquare> {
    if e.module() != e2.module() {
        return Err(XExtError::ModuleMismatch);
    }
    let parts = compose_parts(&phi(e2), &phi(e))?;
    let product = product_extension(e, e2).map_err(|_| XExtError::ModuleMismatch)?;
    if product.middle.group != parts.pullback.group {
        return Err(XExtError::Typing("product and composite use different pullbacks"));
    }
    let composite = parts.butterfly;
    let target = AbelianExtension::over(composite.iota().clone(), composite.gamma().clone(), e.module())
        .map_err(|_| XExtError::NotPi1Shape)?;
    let sum = crate::cmodule::codiagonal(e.module());
    let sum = CModuleMorphism::new(product.ext.module(), e.module(), sum.hom().clone()).map_err(|_| XExtError::ModuleMismatch)?;
    let map = ExtensionMap::new(&product.ext, &target, &sum, parts.quotient.projection().clone())
        .map_err(|_| XExtError::NotAMorphism("square does not commute"))?;
    Ok(PfAndCokSquare { map, composite })
}

/// The pushforward check for the square, against each `(T, β')` over `M`.
pub fn check_pf_and_cok(square: &PfAndCokSquare, targets: &[(AbelianExtension, CModuleMorphism)]) -> Result<CocartesianReport> {
    check_cocartesian(&square.map, targets).map_err(|_| XExtError::ModuleMismatch)
}

/// `I_ξ` presented as the identity butterfly of the unit extension shape.
pub fn unit_identity(m: &CModule) -> Butterfly {
    super::butterfly::identity_butterfly(&CrossedExtension::unit(m))
}

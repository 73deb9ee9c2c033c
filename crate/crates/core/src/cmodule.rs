//! `C`-modules: abelian groups with an action of a fixed group `C`, and the
//! equivariant homomorphisms between them.

use std::fmt;

use thiserror::Error;

use crate::action::{ActionError, GroupAction};
use crate::group::{direct_product, DirectProduct, Elem, FiniteGroup, GroupError, GroupHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("coefficient group is not abelian: {0} and {1} do not commute")]
    NotAbelian(Elem, Elem),
    #[error(transparent)]
    NotAnAction(#[from] ActionError),
    #[error("action is by a different group or on a different group than declared")]
    ActionMismatch,
    #[error("modules are over different groups")]
    BaseMismatch,
    #[error("map does not go between the coefficient groups of the modules")]
    CoefficientMismatch,
    #[error("not equivariant: f({c}*{b}) != {c}*f({b})")]
    NotEquivariant { c: Elem, b: Elem },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An abelian group `B` with an action `xi` of `C` by automorphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct CModule {
    action: GroupAction,
}

impl CModule {
    pub fn new(action: GroupAction) -> Result<Self, ModuleError> {
        let b = action.object();
        for x in b.elements() {
            for y in b.elements() {
                if !b.commutes(x, y) {
                    return Err(ModuleError::NotAbelian(x, y));
                }
            }
        }
        Ok(CModule { action })
    }

    /// Validates `act[c][b] = xi(c, b)` against `base` and `coeff`.
    pub fn build(base: &FiniteGroup, coeff: &FiniteGroup, act: &[Vec<Elem>]) -> Result<Self, ModuleError> {
        if let Some((x, y)) = first_noncommuting(coeff) {
            return Err(ModuleError::NotAbelian(x, y));
        }
        Self::new(GroupAction::from_rows(base, coeff, act)?)
    }

    pub fn trivial(base: &FiniteGroup, coeff: &FiniteGroup) -> Result<Self, ModuleError> {
        Self::new(GroupAction::trivial(base, coeff))
    }

    pub(crate) fn new_unchecked(action: GroupAction) -> Self {
        debug_assert!(action.object().is_abelian());
        CModule { action }
    }

    pub fn base(&self) -> &FiniteGroup {
        self.action.actor()
    }

    pub fn coeff(&self) -> &FiniteGroup {
        self.action.object()
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `xi(c, b)`.
    #[inline]
    pub fn act(&self, c: Elem, b: Elem) -> Elem {
        self.action.act(c, b)
    }
}

fn first_noncommuting(g: &FiniteGroup) -> Option<(Elem, Elem)> {
    g.elements().flat_map(|x| g.elements().map(move |y| (x, y))).find(|&(x, y)| !g.commutes(x, y))
}

impl fmt::Debug for CModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CModule(C of order {}, B of order {}, {:?})", self.base().order(), self.coeff().order(), self.action.rows())
    }
}

/// An equivariant homomorphism between two modules over the same group.
#[derive(Clone, PartialEq, Eq)]
pub struct CModuleMorphism {
    dom: CModule,
    cod: CModule,
    hom: GroupHom,
}

impl CModuleMorphism {
    pub fn new(dom: &CModule, cod: &CModule, hom: GroupHom) -> Result<Self, ModuleError> {
        if dom.base() != cod.base() {
            return Err(ModuleError::BaseMismatch);
        }
        if hom.dom() != dom.coeff() || hom.cod() != cod.coeff() {
            return Err(ModuleError::CoefficientMismatch);
        }
        for c in dom.base().elements() {
            for b in dom.coeff().elements() {
                if hom.apply(dom.act(c, b)) != cod.act(c, hom.apply(b)) {
                    return Err(ModuleError::NotEquivariant { c, b });
                }
            }
        }
        Ok(CModuleMorphism { dom: dom.clone(), cod: cod.clone(), hom })
    }

    pub fn from_map(dom: &CModule, cod: &CModule, map: Vec<Elem>) -> Result<Self, ModuleError> {
        let hom = GroupHom::new(dom.coeff(), cod.coeff(), map)?;
        Self::new(dom, cod, hom)
    }

    pub(crate) fn new_unchecked(dom: &CModule, cod: &CModule, hom: GroupHom) -> Self {
        CModuleMorphism { dom: dom.clone(), cod: cod.clone(), hom }
    }

    pub fn identity(m: &CModule) -> Self {
        Self::new_unchecked(m, m, GroupHom::identity(m.coeff()))
    }

    pub fn zero(dom: &CModule, cod: &CModule) -> Result<Self, ModuleError> {
        Self::new(dom, cod, GroupHom::zero(dom.coeff(), cod.coeff()))
    }

    pub fn dom(&self) -> &CModule {
        &self.dom
    }

    pub fn cod(&self) -> &CModule {
        &self.cod
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn apply(&self, b: Elem) -> Elem {
        self.hom.apply(b)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.hom == GroupHom::identity(self.dom.coeff())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.hom.is_isomorphism()
    }

    /// `b -> -beta(b)`; equivariant because the codomain is abelian.
    pub fn negate(&self) -> Self {
        let b = self.cod.coeff();
        let hom = GroupHom::from_fn(self.dom.coeff(), b, |x| b.neg(self.hom.apply(x)));
        Self::new_unchecked(&self.dom, &self.cod, hom)
    }

    /// Pointwise sum of parallel morphisms.
    pub fn add(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(ModuleError::CoefficientMismatch);
        }
        let hom = self.hom.pointwise_add(&other.hom)?;
        Ok(Self::new_unchecked(&self.dom, &self.cod, hom))
    }

    /// `self . first`.
    pub fn after(&self, first: &Self) -> Result<Self, ModuleError> {
        if first.cod != self.dom {
            return Err(ModuleError::CoefficientMismatch);
        }
        Ok(Self::new_unchecked(&first.dom, &self.cod, self.hom.after(&first.hom)))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.hom.inverse().map(|h| Self::new_unchecked(&self.cod, &self.dom, h))
    }
}

impl fmt::Debug for CModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CModuleMorphism({:?})", self.hom.map())
    }
}

/// Every morphism `dom -> cod`, in lexicographic order of value tables.
pub fn module_morphisms(dom: &CModule, cod: &CModule) -> Vec<CModuleMorphism> {
    if dom.base() != cod.base() {
        return Vec::new();
    }
    crate::group::HomSearch::new(dom.coeff(), cod.coeff())
        .run(None)
        .into_iter()
        .filter_map(|h| CModuleMorphism::new(dom, cod, h).ok())
        .collect()
}

/// A binary product of modules with its projections.
#[derive(Clone, Debug)]
pub struct ModuleProduct {
    pub module: CModule,
    pub product: DirectProduct,
    pub pr1: CModuleMorphism,
    pub pr2: CModuleMorphism,
}

impl ModuleProduct {
    /// The mediating morphism `<f, g>` into the product.
    pub fn pairing(&self, f: &CModuleMorphism, g: &CModuleMorphism) -> Result<CModuleMorphism, ModuleError> {
        if f.dom() != g.dom() || f.cod() != self.pr1.cod() || g.cod() != self.pr2.cod() {
            return Err(ModuleError::CoefficientMismatch);
        }
        let hom = self.product.pairing(f.hom(), g.hom())?;
        Ok(CModuleMorphism::new_unchecked(f.dom(), &self.module, hom))
    }

    /// `f x g` between two products.
    pub fn product_map(&self, target: &ModuleProduct, f: &CModuleMorphism, g: &CModuleMorphism) -> Result<CModuleMorphism, ModuleError> {
        let hom = self.product.product_map(&target.product, f.hom(), g.hom())?;
        CModuleMorphism::new(&self.module, &target.module, hom)
    }
}

/// `M x M'` with the componentwise action.
pub fn cmodule_product(m: &CModule, m2: &CModule) -> Result<ModuleProduct, ModuleError> {
    if m.base() != m2.base() {
        return Err(ModuleError::BaseMismatch);
    }
    let product = direct_product(m.coeff(), m2.coeff());
    let action = GroupAction::new_unchecked(m.base(), &product.group, |c, x| {
        let (a, b) = product.split(x);
        product.pair(m.act(c, a), m2.act(c, b))
    });
    let module = CModule::new_unchecked(action);
    let pr1 = CModuleMorphism::new_unchecked(&module, m, product.pr1.clone());
    let pr2 = CModuleMorphism::new_unchecked(&module, m2, product.pr2.clone());
    Ok(ModuleProduct { module, product, pr1, pr2 })
}

/// The codiagonal `[1, 1]: M x M -> M`, `(a, b) -> a + b`.
pub fn codiagonal(m: &CModule) -> CModuleMorphism {
    let prod = cmodule_product(m, m).expect("same base");
    let b = m.coeff();
    let hom = GroupHom::from_fn(&prod.module.coeff().clone(), b, |x| {
        let (u, v) = prod.product.split(x);
        b.op(u, v)
    });
    CModuleMorphism::new_unchecked(&prod.module, m, hom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inversion_module() -> CModule {
        let z3 = FiniteGroup::cyclic(3);
        CModule::new(GroupAction::new(&FiniteGroup::cyclic(2), &z3, |g, x| if g == 0 { x } else { z3.neg(x) }).unwrap())
            .unwrap()
    }

    #[test]
    fn building_modules() {
        let z2 = FiniteGroup::cyclic(2);
        assert!(CModule::trivial(&z2, &z2).is_ok());
        let m = inversion_module();
        assert_eq!(m.act(1, 1), 2);
        let s3 = FiniteGroup::symmetric(3);
        let err = CModule::build(&z2, &s3, &GroupAction::trivial(&z2, &s3).rows()).unwrap_err();
        assert!(matches!(err, ModuleError::NotAbelian(_, _)));
    }

    #[test]
    fn identity_negation_and_zero() {
        let m = inversion_module();
        let id = CModuleMorphism::identity(&m);
        assert_eq!(id.negate().hom().map(), &[0, 2, 1]);
        assert_eq!(id.negate().negate(), id);
        assert!(CModuleMorphism::zero(&m, &m).is_ok());
    }

    #[test]
    fn doubling_on_the_inversion_module_is_equivariant() {
        let m = inversion_module();
        let double = CModuleMorphism::from_map(&m, &m, vec![0, 2, 1]).unwrap();
        // check all six pairs (c, b) directly
        for c in 0..2 {
            for b in 0..3 {
                assert_eq!(double.apply(m.act(c, b)), m.act(c, double.apply(b)));
            }
        }
        assert_eq!(double.after(&double).unwrap(), CModuleMorphism::identity(&m));
    }

    #[test]
    fn non_equivariant_map() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let triv = CModule::trivial(&z2, &z3).unwrap();
        let inv = inversion_module();
        assert_eq!(
            CModuleMorphism::from_map(&triv, &inv, vec![0, 1, 2]).unwrap_err(),
            ModuleError::NotEquivariant { c: 1, b: 1 }
        );
        let z4 = FiniteGroup::cyclic(4);
        let other_base = CModule::trivial(&z4, &z3).unwrap();
        assert_eq!(CModuleMorphism::from_map(&triv, &other_base, vec![0, 1, 2]).unwrap_err(), ModuleError::BaseMismatch);
    }

    #[test]
    fn products_of_modules() {
        let z2 = FiniteGroup::cyclic(2);
        let t = CModule::trivial(&z2, &z2).unwrap();
        let p = cmodule_product(&t, &t).unwrap();
        assert_eq!(p.module.coeff(), &FiniteGroup::klein_four());
        assert!(p.module.action().is_trivial());

        let m = inversion_module();
        let p = cmodule_product(&m, &m).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let x = p.product.pair(a, b);
                assert_eq!(p.module.act(1, x), p.product.pair((3 - a) % 3, (3 - b) % 3));
            }
        }
        let id = CModuleMorphism::identity(&m);
        let diag = p.pairing(&id, &id).unwrap();
        assert_eq!(p.pr1.after(&diag).unwrap(), id);
        let sum = codiagonal(&m).after(&diag).unwrap();
        assert_eq!(sum.hom().map(), &[0, 2, 1]);
    }

    #[test]
    fn product_with_the_zero_module() {
        let m = inversion_module();
        let zero = CModule::trivial(m.base(), &FiniteGroup::trivial()).unwrap();
        let p = cmodule_product(&m, &zero).unwrap();
        assert!(p.pr1.is_isomorphism());
        assert_eq!(p.module.coeff(), m.coeff());
    }
}

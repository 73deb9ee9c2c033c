//! Crossed extensions `0 -> B -j-> E2 -∂-> E1 -p-> C -> 0` and their morphisms.

use crate::action::GroupAction;
use crate::cmodule::{cmodule_product, codiagonal, CModule, CModuleMorphism};
use crate::group::{
    direct_product, pullback, quotient_unchecked, DirectProduct, FiniteGroup, GroupHom, HomSearch, Pullback,
};
use crate::xmod::{induced_module_along, CrossedModule, XModError};

use super::{Result, XExtError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedExtension {
    j: GroupHom,
    xm: CrossedModule,
    p: GroupHom,
    module: CModule,
}

impl CrossedExtension {
    pub fn new(j: GroupHom, xm: CrossedModule, p: GroupHom) -> Result<Self> {
        if j.cod() != xm.e2() || p.dom() != xm.e1() {
            return Err(XExtError::Typing("kernel or quotient arrow does not meet the crossed module"));
        }
        if !j.is_injective() {
            return Err(XExtError::NotExactAtE2("kernel arrow is not injective"));
        }
        if j.image_members() != xm.boundary().kernel_members() {
            return Err(XExtError::NotExactAtE2("image of the kernel arrow differs from the kernel of the boundary"));
        }
        let module = induced_module_along(&xm, &j, &p).map_err(|e| match e {
            XModError::NotExactAtE1(why) => XExtError::NotExactAtE1(why),
            other => XExtError::NotCrossedModule(other),
        })?;
        Ok(CrossedExtension { j, xm, p, module })
    }

    /// Validates the crossed module first, then the extension.
    pub fn build(j: GroupHom, boundary: GroupHom, action: GroupAction, p: GroupHom) -> Result<Self> {
        let xm = CrossedModule::new(boundary, action).map_err(XExtError::NotCrossedModule)?;
        Self::new(j, xm, p)
    }

    pub(crate) fn new_unchecked(j: GroupHom, xm: CrossedModule, p: GroupHom, module: CModule) -> Self {
        debug_assert_eq!(Self::new(j.clone(), xm.clone(), p.clone()).map(|e| e.module), Ok(module.clone()));
        CrossedExtension { j, xm, p, module }
    }

    /// The unit `I_ξ`: `B =id=> B -0-> C =id=> C`.
    pub fn unit(m: &CModule) -> Self {
        CrossedExtension {
            j: GroupHom::identity(m.coeff()),
            xm: CrossedModule::zero_boundary(m),
            p: GroupHom::identity(m.base()),
            module: m.clone(),
        }
    }

    pub fn j(&self) -> &GroupHom {
        &self.j
    }

    pub fn xm(&self) -> &CrossedModule {
        &self.xm
    }

    pub fn boundary(&self) -> &GroupHom {
        self.xm.boundary()
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn module(&self) -> &CModule {
        &self.module
    }

    pub fn e2(&self) -> &FiniteGroup {
        self.xm.e2()
    }

    pub fn e1(&self) -> &FiniteGroup {
        self.xm.e1()
    }

    pub fn base(&self) -> &FiniteGroup {
        self.p.cod()
    }

    /// Whether this is literally `I_ξ` for its module.
    pub fn is_unit_shaped(&self) -> bool {
        self.j == GroupHom::identity(self.module.coeff())
            && self.boundary().is_zero()
            && self.p == GroupHom::identity(self.module.base())
    }
}

/// A morphism of crossed extensions over `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XExtMorphism {
    pub dom: CrossedExtension,
    pub cod: CrossedExtension,
    pub beta: CModuleMorphism,
    pub f2: GroupHom,
    pub f1: GroupHom,
}

impl XExtMorphism {
    pub fn new(dom: &CrossedExtension, cod: &CrossedExtension, beta: &CModuleMorphism, f2: GroupHom, f1: GroupHom) -> Result<Self> {
        if beta.dom() != dom.module() || beta.cod() != cod.module() {
            return Err(XExtError::ModuleMismatch);
        }
        if f2.dom() != dom.e2() || f2.cod() != cod.e2() || f1.dom() != dom.e1() || f1.cod() != cod.e1() {
            return Err(XExtError::Typing("component maps between the wrong groups"));
        }
        if f2.after(dom.j()) != cod.j().after(beta.hom()) {
            return Err(XExtError::NotAMorphism("kernel square does not commute"));
        }
        if cod.boundary().after(&f2) != f1.after(dom.boundary()) {
            return Err(XExtError::NotAMorphism("boundary square does not commute"));
        }
        if cod.p().after(&f1) != *dom.p() {
            return Err(XExtError::NotAMorphism("quotient square does not commute"));
        }
        if !equivariant_pair(dom.xm(), cod.xm(), &f2, &f1) {
            return Err(XExtError::NotAMorphism("middle square is not a crossed-module morphism"));
        }
        Ok(XExtMorphism { dom: dom.clone(), cod: cod.clone(), beta: beta.clone(), f2, f1 })
    }

    pub fn identity(e: &CrossedExtension) -> Self {
        XExtMorphism {
            dom: e.clone(),
            cod: e.clone(),
            beta: CModuleMorphism::identity(e.module()),
            f2: GroupHom::identity(e.e2()),
            f1: GroupHom::identity(e.e1()),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.beta.is_identity()
    }

    /// `self . first`.
    pub fn after(&self, first: &XExtMorphism) -> Result<Self> {
        if first.cod != self.dom {
            return Err(XExtError::TypeMismatch);
        }
        Ok(XExtMorphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            beta: self.beta.after(&first.beta).map_err(|_| XExtError::ModuleMismatch)?,
            f2: self.f2.after(&first.f2),
            f1: self.f1.after(&first.f1),
        })
    }
}

fn equivariant_pair(xm: &CrossedModule, xm2: &CrossedModule, f2: &GroupHom, f1: &GroupHom) -> bool {
    xm.e1().elements().all(|g| xm.e2().elements().all(|x| f2.apply(xm.act(g, x)) == xm2.act(f1.apply(g), f2.apply(x))))
}

/// A pushforward `β_*E` with its cocartesian lift `E -> β_*E`.
#[derive(Clone, Debug)]
pub struct XPushforward {
    pub ext: CrossedExtension,
    pub lift: XExtMorphism,
}

/// `E2' = (B' x E2) / {(βb, -jb)}` with `g * [(b', x)] = [(ξ'(p g, b'), g * x)]`;
/// `E1` and `p` are unchanged.
pub fn pushforward_xext(e: &CrossedExtension, beta: &CModuleMorphism) -> Result<XPushforward> {
    if beta.dom() != e.module() {
        return Err(XExtError::ModuleMismatch);
    }
    let target = beta.cod();
    let (b, b2, e2, e1) = (e.module().coeff(), target.coeff(), e.e2(), e.e1());
    let prod = direct_product(b2, e2);
    let mut rel = vec![false; prod.group.order()];
    for u in b.elements() {
        rel[prod.pair(beta.apply(u), e2.neg(e.j().apply(u)))] = true;
    }
    let q = quotient_unchecked(&prod.group, rel);
    let new_e2 = q.group().clone();
    let action = GroupAction::new_unchecked(e1, &new_e2, |g, l| {
        let (u, x) = prod.split(q.representatives()[l]);
        q.projection().apply(prod.pair(target.act(e.p().apply(g), u), e.xm().act(g, x)))
    });
    let boundary = q.factor(&e.boundary().after(&prod.pr2))?;
    let xm = CrossedModule::new_unchecked(boundary, action);
    let j = q.projection().after(&prod.inj1);
    let ext = CrossedExtension::new_unchecked(j, xm, e.p().clone(), target.clone());
    let lift = XExtMorphism {
        dom: e.clone(),
        cod: ext.clone(),
        beta: beta.clone(),
        f2: q.projection().after(&prod.inj2),
        f1: GroupHom::identity(e1),
    };
    Ok(XPushforward { ext, lift })
}

/// `E x E'` over `C`: kernel `B x B'`, middle `E2 x E2' -> E1 x_C E1'`.
#[derive(Clone, Debug)]
pub struct XProduct {
    pub ext: CrossedExtension,
    pub e2: DirectProduct,
    pub e1: Pullback,
}

pub fn product_xext(e: &CrossedExtension, e2: &CrossedExtension) -> Result<XProduct> {
    if e.base() != e2.base() {
        return Err(XExtError::BaseMismatch);
    }
    let mp = cmodule_product(e.module(), e2.module()).map_err(|_| XExtError::BaseMismatch)?;
    let top = direct_product(e.e2(), e2.e2());
    let bottom = pullback(e.p(), e2.p())?;
    let boundary = GroupHom::from_fn(&top.group, &bottom.group, |z| {
        let (x, y) = top.split(z);
        bottom.index_of(e.boundary().apply(x), e2.boundary().apply(y)).expect("boundaries lie over 0")
    });
    let action = GroupAction::new_unchecked(&bottom.group, &top.group, |w, z| {
        let ((g, h), (x, y)) = (bottom.pair(w), top.split(z));
        top.pair(e.xm().act(g, x), e2.xm().act(h, y))
    });
    let xm = CrossedModule::new_unchecked(boundary, action);
    let j = mp.product.product_map(&top, e.j(), e2.j())?;
    let p = e2.p().after(&bottom.p2);
    let ext = CrossedExtension::new_unchecked(j, xm, p, mp.module);
    Ok(XProduct { ext, e2: top, e1: bottom })
}

/// The product of two morphisms between products.
pub fn product_of_xmaps(src: &XProduct, dst: &XProduct, f: &XExtMorphism, g: &XExtMorphism) -> Result<XExtMorphism> {
    let src_mod = cmodule_product(f.dom.module(), g.dom.module()).map_err(|_| XExtError::BaseMismatch)?;
    let dst_mod = cmodule_product(f.cod.module(), g.cod.module()).map_err(|_| XExtError::BaseMismatch)?;
    let beta = src_mod.product_map(&dst_mod, &f.beta, &g.beta).map_err(|_| XExtError::ModuleMismatch)?;
    let f2 = src.e2.product_map(&dst.e2, &f.f2, &g.f2)?;
    let f1 = GroupHom::from_fn(&src.e1.group, &dst.e1.group, |w| {
        let (a, b) = src.e1.pair(w);
        dst.e1.index_of(f.f1.apply(a), g.f1.apply(b)).expect("over the same element of C")
    });
    XExtMorphism::new(&src.ext, &dst.ext, &beta, f2, f1)
}

/// The fibrewise tensor: the product pushed forward along `[1, 1]: B x B -> B`.
pub fn tensor_xext(e: &CrossedExtension, e2: &CrossedExtension) -> Result<CrossedExtension> {
    if e.module() != e2.module() {
        return Err(XExtError::ModuleMismatch);
    }
    let prod = product_xext(e, e2)?;
    let sum = codiagonal(e.module());
    let sum = CModuleMorphism::new(prod.ext.module(), e.module(), sum.hom().clone()).map_err(|_| XExtError::ModuleMismatch)?;
    Ok(pushforward_xext(&prod.ext, &sum)?.ext)
}

/// The same crossed module with kernel arrow `b -> j(-b)`.
pub fn inverse_xext(e: &CrossedExtension) -> CrossedExtension {
    let b = e.module().coeff();
    let j = GroupHom::from_fn(b, e.e2(), |u| e.j().apply(b.neg(u)));
    CrossedExtension::new_unchecked(j, e.xm().clone(), e.p().clone(), e.module().clone())
}

/// Every morphism `E -> E'` over `β`, ordered by `(f1, f2)`.
pub fn xext_morphisms_over(e: &CrossedExtension, e2: &CrossedExtension, beta: &CModuleMorphism) -> Vec<XExtMorphism> {
    if beta.dom() != e.module() || beta.cod() != e2.module() || e.base() != e2.base() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let kernel_target = e2.j().after(beta.hom());
    for f1 in HomSearch::new(e.e1(), e2.e1()).over(e.p(), e2.p()).run(None) {
        let along = f1.after(e.boundary());
        let candidates =
            HomSearch::new(e.e2(), e2.e2()).fix_along(e.j(), &kernel_target).over(&along, e2.boundary()).run(None);
        for f2 in candidates {
            if equivariant_pair(e.xm(), e2.xm(), &f2, &f1) {
                out.push(XExtMorphism { dom: e.clone(), cod: e2.clone(), beta: beta.clone(), f2, f1: f1.clone() });
            }
        }
    }
    out
}

/// Tally of a cocartesian check, as for abelian extensions.
pub use crate::h2::CocartesianReport;

/// Checks that `lift: E -> E_β` is cocartesian against each `(T, β')`.
pub fn check_xcocartesian(lift: &XExtMorphism, targets: &[(CrossedExtension, CModuleMorphism)]) -> Result<CocartesianReport> {
    let mut report = CocartesianReport { tested: 0, unique: 0 };
    for (t, beta2) in targets {
        let composite = beta2.after(&lift.beta).map_err(|_| XExtError::ModuleMismatch)?;
        let through = xext_morphisms_over(&lift.cod, t, beta2);
        for m in xext_morphisms_over(&lift.dom, t, &composite) {
            report.tested += 1;
            let n = through.iter().filter(|u| u.f2.after(&lift.f2) == m.f2 && u.f1.after(&lift.f1) == m.f1).count();
            if n == 1 {
                report.unique += 1;
            }
        }
    }
    Ok(report)
}

/// The crossed extension `B -j-> E2 -∂-> E1 -> E1 / im ∂` of a crossed
/// module, with `B = ker ∂`.
pub fn crossed_extension_of(xm: &CrossedModule) -> CrossedExtension {
    let ker = crate::group::kernel(xm.boundary());
    let q = crate::group::cokernel(xm.boundary());
    let j = ker.embedding().clone();
    CrossedExtension::new(j, xm.clone(), q.projection().clone()).expect("a crossed module is a crossed extension of its cokernel")
}

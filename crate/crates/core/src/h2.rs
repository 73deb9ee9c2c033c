//! Abelian extensions `B -κ-> E -γ-> C` of a group by a module, their Baer
//! sums and pushforwards, and the morphisms between them.
//!
//! Fibre isomorphism is always decided by exhaustive search for a vertical
//! morphism, never through cocycles, so the cocycle oracle stays independent.

use thiserror::Error;

use crate::action::GroupAction;
use crate::cmodule::{cmodule_product, CModule, CModuleMorphism, ModuleError};
use crate::group::{
    is_short_exact, pullback, semidirect_product, DirectProduct, Elem, FiniteGroup, GroupError, GroupHom, HomSearch,
    Pullback, Quotient,
};
use crate::group::direct_product;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("not a short exact sequence")]
    NotExact,
    #[error("kernel is not abelian: {0} and {1} do not commute")]
    KernelNotAbelian(Elem, Elem),
    #[error("extensions or morphisms live over different modules")]
    ModuleMismatch,
    #[error("conjugation by {e} sends kernel element {b} outside the module action")]
    ActionMismatch { e: Elem, b: Elem },
    #[error("map is not a morphism of extensions: {0}")]
    NotAMorphism(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

type Result<T, E = ExtError> = std::result::Result<T, E>;

/// An extension `0 -> B -κ-> E -γ-> C -> 0` with abelian kernel; the module
/// structure on `B` comes from conjugation in `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension {
    kappa: GroupHom,
    gamma: GroupHom,
    module: CModule,
}

impl AbelianExtension {
    pub fn new(kappa: GroupHom, gamma: GroupHom) -> Result<Self> {
        if !is_short_exact(&kappa, &gamma)? {
            return Err(ExtError::NotExact);
        }
        let b = kappa.dom();
        for x in b.elements() {
            for y in b.elements() {
                if !b.commutes(x, y) {
                    return Err(ExtError::KernelNotAbelian(x, y));
                }
            }
        }
        let module = conjugation_module(&kappa, &gamma)?;
        Ok(AbelianExtension { kappa, gamma, module })
    }

    /// Like [`AbelianExtension::new`], additionally requiring the induced
    /// module to be `module`.
    pub fn over(kappa: GroupHom, gamma: GroupHom, module: &CModule) -> Result<Self> {
        let ext = Self::new(kappa, gamma)?;
        if &ext.module != module {
            return Err(ExtError::ModuleMismatch);
        }
        Ok(ext)
    }

    pub(crate) fn new_unchecked(kappa: GroupHom, gamma: GroupHom, module: CModule) -> Self {
        debug_assert_eq!(Self::new(kappa.clone(), gamma.clone()).map(|e| e.module), Ok(module.clone()));
        AbelianExtension { kappa, gamma, module }
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    pub fn gamma(&self) -> &GroupHom {
        &self.gamma
    }

    pub fn module(&self) -> &CModule {
        &self.module
    }

    pub fn middle(&self) -> &FiniteGroup {
        self.kappa.cod()
    }
}

/// Conjugation action on the kernel, checked over every element of every
/// fibre of `γ`; this covers every choice of set-theoretic section.
fn conjugation_module(kappa: &GroupHom, gamma: &GroupHom) -> Result<CModule> {
    let (b, e, c) = (kappa.dom(), kappa.cod(), gamma.cod());
    let k_inv = kappa.preimage_table();
    let mut table = vec![usize::MAX; c.order() * b.order()];
    for g in e.elements() {
        let k = gamma.apply(g);
        for u in b.elements() {
            let v = k_inv[e.conj(g, kappa.apply(u))].ok_or(ExtError::NotExact)?;
            let slot = &mut table[k * b.order() + u];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(ExtError::ActionMismatch { e: g, b: u });
            }
        }
    }
    let action = GroupAction::new_unchecked(c, b, |k, u| table[k * b.order() + u]);
    Ok(CModule::new_unchecked(action))
}

/// A morphism of extensions over `β`: `mid . κ = κ' . β` and `γ' . mid = γ`.
/// When `β` is the identity the morphism is vertical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMap {
    pub dom: AbelianExtension,
    pub cod: AbelianExtension,
    pub beta: CModuleMorphism,
    pub mid: GroupHom,
}

impl ExtensionMap {
    pub fn new(dom: &AbelianExtension, cod: &AbelianExtension, beta: &CModuleMorphism, mid: GroupHom) -> Result<Self> {
        if beta.dom() != dom.module() || beta.cod() != cod.module() {
            return Err(ExtError::ModuleMismatch);
        }
        if mid.dom() != dom.middle() || mid.cod() != cod.middle() {
            return Err(ExtError::NotAMorphism("middle map between the wrong groups"));
        }
        if mid.after(dom.kappa()) != cod.kappa().after(beta.hom()) {
            return Err(ExtError::NotAMorphism("kernel square does not commute"));
        }
        if cod.gamma().after(&mid) != *dom.gamma() {
            return Err(ExtError::NotAMorphism("quotient square does not commute"));
        }
        Ok(ExtensionMap { dom: dom.clone(), cod: cod.clone(), beta: beta.clone(), mid })
    }

    pub fn vertical(dom: &AbelianExtension, cod: &AbelianExtension, mid: GroupHom) -> Result<Self> {
        if dom.module() != cod.module() {
            return Err(ExtError::ModuleMismatch);
        }
        Self::new(dom, cod, &CModuleMorphism::identity(dom.module()), mid)
    }

    pub fn identity(e: &AbelianExtension) -> Self {
        ExtensionMap {
            dom: e.clone(),
            cod: e.clone(),
            beta: CModuleMorphism::identity(e.module()),
            mid: GroupHom::identity(e.middle()),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.beta.is_identity()
    }

    /// `self . first`.
    pub fn after(&self, first: &ExtensionMap) -> Result<Self> {
        if first.cod != self.dom {
            return Err(ExtError::NotAMorphism("composing maps that do not meet"));
        }
        Ok(ExtensionMap {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            beta: self.beta.after(&first.beta)?,
            mid: self.mid.after(&first.mid),
        })
    }

    /// The inverse of a vertical morphism (which always exists).
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.mid.inverse()?;
        let beta = self.beta.inverse()?;
        Some(ExtensionMap { dom: self.cod.clone(), cod: self.dom.clone(), beta, mid: inv })
    }
}

/// A vertical morphism; the identity on `B` and `C`.
pub type ExtensionMorphism = ExtensionMap;

/// `B ↪ B ⋊ C ↠ C`.
pub fn unit_extension(m: &CModule) -> AbelianExtension {
    let sd = semidirect_product(m.action());
    AbelianExtension::new_unchecked(sd.inj_normal, sd.proj, m.clone())
}

/// The Baer sum: pull back along the diagonal of `C`, then quotient by the
/// antidiagonal `{(κb, -κ'b)}`.
pub fn baer_sum(e: &AbelianExtension, e2: &AbelianExtension) -> Result<AbelianExtension> {
    Ok(baer_sum_parts(e, e2)?.sum)
}

/// The Baer sum together with the pullback and quotient it was built from.
#[derive(Clone, Debug)]
pub struct BaerSum {
    pub sum: AbelianExtension,
    pub pullback: Pullback,
    pub quotient: Quotient,
}

pub fn baer_sum_parts(e: &AbelianExtension, e2: &AbelianExtension) -> Result<BaerSum> {
    if e.module() != e2.module() {
        return Err(ExtError::ModuleMismatch);
    }
    let pb = pullback(e.gamma(), e2.gamma())?;
    let b = e.module().coeff();
    let mut anti = vec![false; pb.group.order()];
    for u in b.elements() {
        let x = pb.index_of(e.kappa().apply(u), e2.kappa().apply(b.neg(u))).expect("kernel pairs lie over 0");
        anti[x] = true;
    }
    let q = crate::group::quotient_unchecked(&pb.group, anti);
    let zero_right = GroupHom::from_fn(b, &pb.group, |u| pb.index_of(e.kappa().apply(u), 0).expect("over 0"));
    let kappa = q.projection().after(&zero_right);
    let gamma = q.factor(&e.gamma().after(&pb.p1))?;
    let sum = AbelianExtension::new_unchecked(kappa, gamma, e.module().clone());
    Ok(BaerSum { sum, pullback: pb, quotient: q })
}

/// A pushforward `β_*E` with the canonical map `E -> β_*E` over `β`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub ext: AbelianExtension,
    pub lift: ExtensionMap,
}

/// `(B' ⋊ E) / {(βb, -κb)}`, with `E` acting on `B'` through `γ` and the
/// module action of the codomain of `β`.
pub fn pushforward_extension(e: &AbelianExtension, beta: &CModuleMorphism) -> Result<Pushforward> {
    if beta.dom() != e.module() {
        return Err(ExtError::ModuleMismatch);
    }
    let target = beta.cod();
    let (b, b2) = (e.module().coeff(), target.coeff());
    let action = GroupAction::new_unchecked(e.middle(), b2, |g, x| target.act(e.gamma().apply(g), x));
    let sd = semidirect_product(&action);
    let mut rel = vec![false; sd.group.order()];
    for u in b.elements() {
        rel[sd.pair(beta.apply(u), e.middle().neg(e.kappa().apply(u)))] = true;
    }
    let q = crate::group::quotient_unchecked(&sd.group, rel);
    let kappa = q.projection().after(&sd.inj_normal);
    let gamma = q.factor(&e.gamma().after(&sd.proj))?;
    let ext = AbelianExtension::new_unchecked(kappa, gamma, target.clone());
    let mid = q.projection().after(&sd.inj_acting);
    let lift = ExtensionMap { dom: e.clone(), cod: ext.clone(), beta: beta.clone(), mid };
    Ok(Pushforward { ext, lift })
}

/// Every morphism `E -> E'` over `β`, in lexicographic order of the middle map.
pub fn extension_maps_over(e: &AbelianExtension, e2: &AbelianExtension, beta: &CModuleMorphism) -> Vec<ExtensionMap> {
    if beta.dom() != e.module() || beta.cod() != e2.module() {
        return Vec::new();
    }
    let target = e2.kappa().after(beta.hom());
    HomSearch::new(e.middle(), e2.middle())
        .fix_along(e.kappa(), &target)
        .over(e.gamma(), e2.gamma())
        .run(None)
        .into_iter()
        .map(|mid| ExtensionMap { dom: e.clone(), cod: e2.clone(), beta: beta.clone(), mid })
        .collect()
}

/// Every vertical morphism `E -> E'`.
pub fn fibre_morphisms(e: &AbelianExtension, e2: &AbelianExtension) -> Vec<ExtensionMorphism> {
    if e.module() != e2.module() {
        return Vec::new();
    }
    extension_maps_over(e, e2, &CModuleMorphism::identity(e.module()))
}

pub fn fibre_isomorphic(e: &AbelianExtension, e2: &AbelianExtension) -> bool {
    e.module() == e2.module() && {
        let id = CModuleMorphism::identity(e.module());
        let target = e2.kappa().after(id.hom());
        HomSearch::new(e.middle(), e2.middle())
            .fix_along(e.kappa(), &target)
            .over(e.gamma(), e2.gamma())
            .first()
            .is_some()
    }
}

/// Automorphisms of the unit extension as a group under composition, with
/// element `i` the `i`-th automorphism in search order (the identity first).
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub group: FiniteGroup,
    pub automorphisms: Vec<ExtensionMorphism>,
}

pub fn pi1_h2(m: &CModule) -> Pi1 {
    let unit = unit_extension(m);
    let automorphisms = fibre_morphisms(&unit, &unit);
    let index = |h: &GroupHom| automorphisms.iter().position(|a| a.mid.map() == h.map()).expect("closed under composition");
    let group = FiniteGroup::from_fn(automorphisms.len(), |i, j| index(&automorphisms[i].mid.after(&automorphisms[j].mid)));
    Pi1 { group, automorphisms }
}

/// The product of two extensions of `C`: `B x B' -> E x_C E' -> C`.
#[derive(Clone, Debug)]
pub struct ExtensionProduct {
    pub ext: AbelianExtension,
    pub kernel: DirectProduct,
    pub middle: Pullback,
}

pub fn product_extension(e: &AbelianExtension, e2: &AbelianExtension) -> Result<ExtensionProduct> {
    let mp = cmodule_product(e.module(), e2.module())?;
    let middle = pullback(e.gamma(), e2.gamma())?;
    let kernel = mp.product.clone();
    let kappa = GroupHom::from_fn(&kernel.group, &middle.group, |x| {
        let (u, v) = kernel.split(x);
        middle.index_of(e.kappa().apply(u), e2.kappa().apply(v)).expect("over 0")
    });
    let gamma = e.gamma().after(&middle.p1);
    let ext = AbelianExtension::new_unchecked(kappa, gamma, mp.module);
    Ok(ExtensionProduct { ext, kernel, middle })
}

/// `f x g: E1 x_C E2 -> E1' x_C E2'` between products.
pub fn product_of_maps(src: &ExtensionProduct, dst: &ExtensionProduct, f: &ExtensionMap, g: &ExtensionMap) -> Result<ExtensionMap> {
    let src_mod = cmodule_product(f.dom.module(), g.dom.module())?;
    let dst_mod = cmodule_product(f.cod.module(), g.cod.module())?;
    let beta = src_mod.product_map(&dst_mod, &f.beta, &g.beta)?;
    let mid = GroupHom::from_fn(&src.middle.group, &dst.middle.group, |x| {
        let (a, b) = src.middle.pair(x);
        dst.middle.index_of(f.mid.apply(a), g.mid.apply(b)).expect("over the same element of C")
    });
    ExtensionMap::new(&src.ext, &dst.ext, &beta, mid)
}

/// Outcome of a cocartesian universal-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocartesianReport {
    /// Maps out of the source that were tested.
    pub tested: usize,
    /// Those that factored through the lift in exactly one way.
    pub unique: usize,
}

impl CocartesianReport {
    pub fn holds(&self) -> bool {
        self.tested == self.unique
    }

    pub fn merge(&mut self, other: &CocartesianReport) {
        self.tested += other.tested;
        self.unique += other.unique;
    }
}

/// Checks that `lift: E -> E_β` is cocartesian against each `(T, β')`: every
/// map `E -> T` over `β' . β` factors through `lift` by exactly one map
/// `E_β -> T` over `β'`.
pub fn check_cocartesian(lift: &ExtensionMap, targets: &[(AbelianExtension, CModuleMorphism)]) -> Result<CocartesianReport> {
    let mut report = CocartesianReport { tested: 0, unique: 0 };
    for (t, beta2) in targets {
        let composite = beta2.after(&lift.beta)?;
        let through = extension_maps_over(&lift.cod, t, beta2);
        for m in extension_maps_over(&lift.dom, t, &composite) {
            report.tested += 1;
            let factorizations = through.iter().filter(|u| u.mid.after(&lift.mid) == m.mid).count();
            if factorizations == 1 {
                report.unique += 1;
            }
        }
    }
    Ok(report)
}

/// `⟨0,1⟩` and `⟨1,-1⟩: B -> B x B` jointly generate `B x B`.
pub fn jointly_generate_square(b: &FiniteGroup) -> bool {
    let prod = direct_product(b, b);
    let mut gens = Vec::new();
    for u in b.elements() {
        gens.push(prod.pair(0, u));
        gens.push(prod.pair(u, b.neg(u)));
    }
    prod.group.generated_by(&gens).iter().all(|&m| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmodule::module_morphisms;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn z2_triv() -> CModule {
        CModule::trivial(&z2(), &z2()).unwrap()
    }

    fn z4_ext() -> AbelianExtension {
        let z4 = FiniteGroup::cyclic(4);
        AbelianExtension::new(GroupHom::new(&z2(), &z4, vec![0, 2]).unwrap(), GroupHom::new(&z4, &z2(), vec![0, 1, 0, 1]).unwrap())
            .unwrap()
    }

    fn inversion() -> CModule {
        let z3 = FiniteGroup::cyclic(3);
        CModule::new(GroupAction::new(&z2(), &z3, |g, x| if g == 0 { x } else { z3.neg(x) }).unwrap()).unwrap()
    }

    #[test]
    fn induced_modules() {
        assert_eq!(z4_ext().module(), &z2_triv());
        let unit = unit_extension(&inversion());
        assert_eq!(unit.middle().order(), 6);
        assert!(!unit.middle().is_abelian());
        let again = AbelianExtension::new(unit.kappa().clone(), unit.gamma().clone()).unwrap();
        assert_eq!(again.module(), &inversion());
        let k4 = unit_extension(&z2_triv());
        assert_eq!(k4.middle(), &FiniteGroup::klein_four());
    }

    #[test]
    fn s3_as_an_extension() {
        let s3 = FiniteGroup::symmetric(3);
        let r = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
        let a3 = crate::group::Subgroup::from_members(&s3, &s3.generated_by(&[r])).unwrap();
        let q = crate::group::cokernel(a3.embedding());
        let ext = AbelianExtension::new(a3.embedding().clone(), q.projection().clone()).unwrap();
        // a transposition conjugates each 3-cycle to its inverse
        let m = ext.module();
        for b in 0..3 {
            assert_eq!(m.act(1, b), m.coeff().neg(b));
        }
    }

    #[test]
    fn not_exact() {
        let z4 = FiniteGroup::cyclic(4);
        let err = AbelianExtension::new(GroupHom::identity(&z4), GroupHom::identity(&z4)).unwrap_err();
        assert_eq!(err, ExtError::NotExact);
    }

    #[test]
    fn fibre_morphism_counts() {
        let z4 = z4_ext();
        let k4 = unit_extension(&z2_triv());
        // the cyclic extension has both id and x -> 3x as vertical automorphisms
        let autos = fibre_morphisms(&z4, &z4);
        assert_eq!(autos.iter().map(|m| m.mid.map().to_vec()).collect::<Vec<_>>(), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
        assert!(fibre_morphisms(&z4, &k4).is_empty());
        assert_eq!(fibre_morphisms(&k4, &k4).len(), 2);
        for m in autos {
            let inv = m.inverse().unwrap();
            assert_eq!(inv.after(&m).unwrap(), ExtensionMap::identity(&z4));
        }
    }

    #[test]
    fn baer_sums_over_z2() {
        let z4 = z4_ext();
        let k4 = unit_extension(&z2_triv());
        assert!(fibre_isomorphic(&baer_sum(&z4, &z4).unwrap(), &k4));
        assert!(fibre_isomorphic(&baer_sum(&z4, &k4).unwrap(), &z4));
        assert!(fibre_isomorphic(&baer_sum(&k4, &k4).unwrap(), &k4));
        assert!(!fibre_isomorphic(&z4, &k4));
        let wrong = unit_extension(&inversion());
        assert_eq!(baer_sum(&z4, &wrong).unwrap_err(), ExtError::ModuleMismatch);
    }

    #[test]
    fn pushforwards() {
        let z4 = z4_ext();
        let m = z2_triv();
        let id = pushforward_extension(&z4, &CModuleMorphism::identity(&m)).unwrap();
        assert!(fibre_isomorphic(&id.ext, &z4));
        let zero = pushforward_extension(&z4, &CModuleMorphism::zero(&m, &m).unwrap()).unwrap();
        assert!(fibre_isomorphic(&zero.ext, &unit_extension(&m)));
        assert!(ExtensionMap::new(&z4, &zero.ext, &zero.lift.beta, zero.lift.mid.clone()).is_ok());
    }

    #[test]
    fn pushforward_is_cocartesian() {
        let z4 = z4_ext();
        let m = z2_triv();
        let targets: Vec<_> = [z4.clone(), unit_extension(&m)]
            .into_iter()
            .flat_map(|t| module_morphisms(&m, &m).into_iter().map(move |b| (t.clone(), b)))
            .collect();
        for beta in module_morphisms(&m, &m) {
            let pf = pushforward_extension(&z4, &beta).unwrap();
            let report = check_cocartesian(&pf.lift, &targets).unwrap();
            assert!(report.holds(), "{report:?}");
            assert!(report.tested > 0);
        }
    }

    #[test]
    fn pi1_orders() {
        assert_eq!(pi1_h2(&z2_triv()).group.order(), 2);
        assert_eq!(pi1_h2(&inversion()).group.order(), 3);
        let trivial_base = CModule::trivial(&FiniteGroup::trivial(), &FiniteGroup::cyclic(3)).unwrap();
        assert_eq!(pi1_h2(&trivial_base).group.order(), 1);
    }

    #[test]
    fn products_of_lifts() {
        let m = z2_triv();
        let z4 = z4_ext();
        let k4 = unit_extension(&m);
        let p = product_extension(&z4, &k4).unwrap();
        assert_eq!(p.ext.middle().order(), 8);
        let zero = CModuleMorphism::zero(&m, &m).unwrap();
        let l1 = pushforward_extension(&z4, &zero).unwrap();
        let l2 = pushforward_extension(&k4, &CModuleMorphism::identity(&m)).unwrap();
        let q = product_extension(&l1.ext, &l2.ext).unwrap();
        let lift = product_of_maps(&p, &q, &l1.lift, &l2.lift).unwrap();
        let pm = q.ext.module().clone();
        let targets = vec![(q.ext.clone(), CModuleMorphism::identity(&pm)), (unit_extension(&pm), CModuleMorphism::identity(&pm))];
        assert!(check_cocartesian(&lift, &targets).unwrap().holds());
    }

    #[test]
    fn square_generation() {
        for n in 1..6 {
            assert!(jointly_generate_square(&FiniteGroup::cyclic(n)));
        }
    }
}

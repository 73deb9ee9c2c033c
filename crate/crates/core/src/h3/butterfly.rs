//! Butterflies between crossed extensions:
//!
//! ```text
//!   E2          E2'
//!     κ\      /ι
//!        F
//!     δ/      \γ
//!   E1          E1'
//! ```
//!
//! with `(κ, γ)` a complex and `(ι, δ)` short exact.

use crate::action::GroupAction;
use crate::cmodule::CModuleMorphism;
use crate::group::{
    cooperator, direct_product, is_short_exact, kernel, pullback, quotient_unchecked, semidirect_product, Elem,
    FiniteGroup, GroupHom, HomSearch, Pullback, Quotient,
};
use crate::xmod::associated_groupoid;

use super::xext::{CrossedExtension, XExtMorphism};
use super::{Result, XExtError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Butterfly {
    dom: CrossedExtension,
    cod: CrossedExtension,
    kappa: GroupHom,
    iota: GroupHom,
    delta: GroupHom,
    gamma: GroupHom,
    beta: CModuleMorphism,
}

/// The raw wings of a butterfly before validation.
#[derive(Clone, Debug)]
pub struct Wings {
    pub kappa: GroupHom,
    pub iota: GroupHom,
    pub delta: GroupHom,
    pub gamma: GroupHom,
}

impl Butterfly {
    /// Checks conditions i to iv in order and extracts `β`.
    pub fn new(dom: &CrossedExtension, cod: &CrossedExtension, wings: Wings) -> Result<Self> {
        let Wings { kappa, iota, delta, gamma } = wings;
        let f = kappa.cod();
        if iota.cod() != f || delta.dom() != f || gamma.dom() != f {
            return Err(XExtError::Typing("the four wings do not share a middle group"));
        }
        if kappa.dom() != dom.e2() || delta.cod() != dom.e1() || iota.dom() != cod.e2() || gamma.cod() != cod.e1() {
            return Err(XExtError::Typing("wings do not match the two crossed extensions"));
        }
        if dom.base() != cod.base() {
            return Err(XExtError::BaseMismatch);
        }
        condition_i(dom, cod, &kappa, &iota, &delta, &gamma)?;
        if let Some(x) = first_diff(&gamma.after(&kappa), &GroupHom::zero(dom.e2(), cod.e1())) {
            return Err(XExtError::ConditionII(format!("γκ is not zero at {x}")));
        }
        if !is_short_exact(&iota, &delta)? {
            return Err(XExtError::ConditionII("(ι, δ) is not short exact".into()));
        }
        if let Some((y, x)) = pre_crossed_witness(&kappa, &delta, dom) {
            return Err(XExtError::ConditionIII { y, x });
        }
        if let Some((y, x)) = pre_crossed_witness(&iota, &gamma, cod) {
            return Err(XExtError::ConditionIV { y, x });
        }
        let beta = extract_beta(dom, cod, &kappa, &iota)?;
        Ok(Butterfly { dom: dom.clone(), cod: cod.clone(), kappa, iota, delta, gamma, beta })
    }

    pub fn dom(&self) -> &CrossedExtension {
        &self.dom
    }

    pub fn cod(&self) -> &CrossedExtension {
        &self.cod
    }

    pub fn middle(&self) -> &FiniteGroup {
        self.kappa.cod()
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn delta(&self) -> &GroupHom {
        &self.delta
    }

    pub fn gamma(&self) -> &GroupHom {
        &self.gamma
    }

    /// The module morphism `β: B -> B'` carried by the butterfly.
    pub fn beta(&self) -> &CModuleMorphism {
        &self.beta
    }

    pub fn wings(&self) -> Wings {
        Wings { kappa: self.kappa.clone(), iota: self.iota.clone(), delta: self.delta.clone(), gamma: self.gamma.clone() }
    }

    /// `(κ, γ)` is short exact as well.
    pub fn is_flippable(&self) -> bool {
        is_short_exact(&self.kappa, &self.gamma).unwrap_or(false)
    }

    /// The mirror image `E' -> E`, when flippable.
    pub fn flip(&self) -> Result<Butterfly> {
        if !self.is_flippable() {
            return Err(XExtError::NotFlippable);
        }
        let wings = Wings { kappa: self.iota.clone(), iota: self.kappa.clone(), delta: self.gamma.clone(), gamma: self.delta.clone() };
        Butterfly::new(&self.cod, &self.dom, wings)
    }
}

fn first_diff(f: &GroupHom, g: &GroupHom) -> Option<Elem> {
    f.map().iter().zip(g.map()).position(|(a, b)| a != b)
}

fn condition_i(
    dom: &CrossedExtension,
    cod: &CrossedExtension,
    kappa: &GroupHom,
    iota: &GroupHom,
    delta: &GroupHom,
    gamma: &GroupHom,
) -> Result<()> {
    if let Some(x) = first_diff(&delta.after(kappa), dom.boundary()) {
        return Err(XExtError::ConditionI(format!("δκ differs from ∂ at {x}")));
    }
    if let Some(x) = first_diff(&gamma.after(iota), cod.boundary()) {
        return Err(XExtError::ConditionI(format!("γι differs from ∂' at {x}")));
    }
    if let Some(y) = first_diff(&dom.p().after(delta), &cod.p().after(gamma)) {
        return Err(XExtError::ConditionI(format!("pδ differs from p'γ at {y}")));
    }
    Ok(())
}

/// First `(y, x)` with `w(t(y) * x) != y + w(x) - y`, where `F` acts on
/// `E2` through `t: F -> E1`.
fn pre_crossed_witness(w: &GroupHom, t: &GroupHom, e: &CrossedExtension) -> Option<(Elem, Elem)> {
    let f = w.cod();
    for y in f.elements() {
        let g = t.apply(y);
        for x in e.e2().elements() {
            if w.apply(e.xm().act(g, x)) != f.conj(y, w.apply(x)) {
                return Some((y, x));
            }
        }
    }
    None
}

/// `β` from the kernel of the cooperator `κ♯ι: E2 x E2' -> F`: the kernel is
/// identified with `B` through the first projection, and `β` is read off
/// the second. Asserts `κ j = ι j' (-β)`.
fn extract_beta(dom: &CrossedExtension, cod: &CrossedExtension, kappa: &GroupHom, iota: &GroupHom) -> Result<CModuleMorphism> {
    let coop = cooperator(kappa, iota).map_err(|_| XExtError::CooperatorFails("wing images do not commute"))?;
    let prod = direct_product(dom.e2(), cod.e2());
    let ker = kernel(&coop);
    let (b, b2) = (dom.module().coeff(), cod.module().coeff());
    let mut over = vec![None; dom.e2().order()];
    for &z in ker.elements() {
        let (x, x2) = prod.split(z);
        if over[x].replace(x2).is_some() {
            return Err(XExtError::CooperatorFails("kernel is not a graph over E2"));
        }
    }
    let j2_inv = cod.j().preimage_table();
    let mut map = Vec::with_capacity(b.order());
    for u in b.elements() {
        let x2 = over[dom.j().apply(u)].ok_or(XExtError::CooperatorFails("kernel misses part of B"))?;
        map.push(j2_inv[x2].ok_or(XExtError::CooperatorFails("second component leaves B'"))?);
    }
    let beta = CModuleMorphism::from_map(dom.module(), cod.module(), map)
        .map_err(|_| XExtError::CooperatorFails("extracted map is not a module morphism"))?;
    for u in b.elements() {
        let lhs = kappa.apply(dom.j().apply(u));
        let rhs = iota.apply(cod.j().apply(b2.neg(beta.apply(u))));
        if lhs != rhs {
            return Err(XExtError::CooperatorFails("κ j differs from ι j' (-β)"));
        }
    }
    Ok(beta)
}

pub fn butterfly_beta(b: &Butterfly) -> &CModuleMorphism {
    b.beta()
}

/// A composite `g . f` together with the pullback and quotient it came from.
#[derive(Clone, Debug)]
pub struct Composite {
    pub butterfly: Butterfly,
    pub pullback: Pullback,
    pub quotient: Quotient,
}

/// `g . f`: the pullback of `γ_f` and `δ_g`, divided by the image of `⟨ι_f, κ_g⟩`.
pub fn compose_butterflies(g: &Butterfly, f: &Butterfly) -> Result<Butterfly> {
    Ok(compose_parts(g, f)?.butterfly)
}

pub fn compose_parts(g: &Butterfly, f: &Butterfly) -> Result<Composite> {
    if f.cod() != g.dom() {
        return Err(XExtError::TypeMismatch);
    }
    let mid = f.cod();
    let pb = pullback(f.gamma(), g.delta())?;
    let pair = |x: Elem, y: Elem| pb.index_of(x, y).expect("cone over E1'");
    let mut n = vec![false; pb.group.order()];
    for x in mid.e2().elements() {
        n[pair(f.iota().apply(x), g.kappa().apply(x))] = true;
    }
    if pb.group.normality_witness(&n).is_some() {
        return Err(XExtError::CooperatorFails("image of ⟨ι, κ'⟩ is not normal"));
    }
    let q = quotient_unchecked(&pb.group, n);
    let kappa = GroupHom::from_fn(f.dom().e2(), q.group(), |x| q.projection().apply(pair(f.kappa().apply(x), 0)));
    let iota = GroupHom::from_fn(g.cod().e2(), q.group(), |x| q.projection().apply(pair(0, g.iota().apply(x))));
    let delta = q.factor(&f.delta().after(&pb.p1))?;
    let gamma = q.factor(&g.gamma().after(&pb.p2))?;
    let butterfly = Butterfly::new(f.dom(), g.cod(), Wings { kappa, iota, delta, gamma })?;
    Ok(Composite { butterfly, pullback: pb, quotient: q })
}

/// `F = E2 ⋊ E1`, `κ = ker d`, `ι = ker c`, `δ = c`, `γ = d`.
pub fn identity_butterfly(e: &CrossedExtension) -> Butterfly {
    let gpd = associated_groupoid(e.xm());
    let wings = Wings { kappa: gpd.ker_d, iota: gpd.ker_c, delta: gpd.c, gamma: gpd.d };
    Butterfly::new(e, e, wings).expect("identity butterflies are valid")
}

/// The representable butterfly of a morphism: `F = E2' ⋊ E1` with `E1`
/// acting through `f1`, `κ(x) = (-f2 x, ∂x)`, `ι(x') = (x', 0)`,
/// `δ(x', g) = g` and `γ(x', g) = ∂'x' + f1 g`.
pub fn morphism_to_butterfly(m: &XExtMorphism) -> Butterfly {
    let (e, e2) = (&m.dom, &m.cod);
    let action = GroupAction::new_unchecked(e.e1(), e2.e2(), |g, x| e2.xm().act(m.f1.apply(g), x));
    let sd = semidirect_product(&action);
    let f = &sd.group;
    let kappa = GroupHom::from_fn(e.e2(), f, |x| sd.pair(e2.e2().neg(m.f2.apply(x)), e.boundary().apply(x)));
    let gamma = GroupHom::from_fn(f, e2.e1(), |z| {
        let (x, g) = sd.split(z);
        e2.e1().op(e2.boundary().apply(x), m.f1.apply(g))
    });
    let wings = Wings { kappa, iota: sd.inj_normal.clone(), delta: sd.proj.clone(), gamma };
    let b = Butterfly::new(e, e2, wings).expect("representable butterflies are valid");
    debug_assert_eq!(b.beta(), &m.beta);
    b
}

/// `σ: F -> F'` with `σι = ι'`, `σκ = κ'`, `γ'σ = γ`, `δ'σ = δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyIso {
    pub sigma: GroupHom,
}

pub fn find_butterfly_iso(b: &Butterfly, b2: &Butterfly) -> Option<ButterflyIso> {
    if b.dom() != b2.dom() || b.cod() != b2.cod() || b.middle().order() != b2.middle().order() {
        return None;
    }
    let sigma = HomSearch::new(b.middle(), b2.middle())
        .bijective()
        .fix_along(b.iota(), b2.iota())
        .fix_along(b.kappa(), b2.kappa())
        .over(b.gamma(), b2.gamma())
        .over(b.delta(), b2.delta())
        .first()?;
    debug_assert!(is_butterfly_iso(b, b2, &sigma));
    Some(ButterflyIso { sigma })
}

pub fn is_butterfly_iso(b: &Butterfly, b2: &Butterfly, sigma: &GroupHom) -> bool {
    sigma.dom() == b.middle()
        && sigma.cod() == b2.middle()
        && sigma.is_isomorphism()
        && sigma.after(b.iota()) == *b2.iota()
        && sigma.after(b.kappa()) == *b2.kappa()
        && b2.gamma().after(sigma) == *b.gamma()
        && b2.delta().after(sigma) == *b.delta()
}

pub fn butterflies_isomorphic(b: &Butterfly, b2: &Butterfly) -> bool {
    find_butterfly_iso(b, b2).is_some()
}

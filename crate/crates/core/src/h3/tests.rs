use super::*;
use crate::action::GroupAction;
use crate::cmodule::{module_morphisms, CModule, CModuleMorphism};
use crate::group::{cokernel, is_short_exact, FiniteGroup, GroupHom, Subgroup};
use crate::h2::{baer_sum, fibre_isomorphic, unit_extension, AbelianExtension};
use crate::xmod::{associated_groupoid, CrossedModule};

fn z2_triv() -> CModule {
    let z2 = FiniteGroup::cyclic(2);
    CModule::trivial(&z2, &z2).unwrap()
}

fn z4_ext() -> AbelianExtension {
    let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    AbelianExtension::new(GroupHom::new(&z2, &z4, vec![0, 2]).unwrap(), GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap())
        .unwrap()
}

/// `Z2 -> Z4 -(x2)-> Z4 -> Z2` with `Z4` acting on `Z4` by `g * x = (-1)^g x`.
fn z4_sign() -> CrossedExtension {
    let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let boundary = GroupHom::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
    let action = GroupAction::new(&z4, &z4, |g, x| if g % 2 == 0 { x } else { z4.neg(x) }).unwrap();
    let j = GroupHom::new(&z2, &z4, vec![0, 2]).unwrap();
    let p = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    CrossedExtension::build(j, boundary, action, p).unwrap()
}

fn a3_in_s3() -> CrossedExtension {
    let s3 = FiniteGroup::symmetric(3);
    let r = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
    let a3 = Subgroup::from_members(&s3, &s3.generated_by(&[r])).unwrap();
    crossed_extension_of(&CrossedModule::inclusion(&a3).unwrap())
}

fn family() -> Vec<CrossedExtension> {
    vec![CrossedExtension::unit(&z2_triv()), z4_sign(), a3_in_s3(), inverse_xext(&z4_sign())]
}

#[test]
fn unit_and_exactness_errors() {
    let m = z2_triv();
    let unit = CrossedExtension::unit(&m);
    assert!(unit.is_unit_shaped());
    let rebuilt = CrossedExtension::new(unit.j().clone(), unit.xm().clone(), unit.p().clone()).unwrap();
    assert_eq!(rebuilt.module(), &m);
    let z2 = FiniteGroup::cyclic(2);
    let bad_p = GroupHom::zero(&z2, &z2);
    let err = CrossedExtension::new(unit.j().clone(), unit.xm().clone(), bad_p).unwrap_err();
    assert!(matches!(err, XExtError::NotExactAtE1(_)));
    let s3 = FiniteGroup::symmetric(3);
    let id = CrossedExtension::new(GroupHom::zero(&FiniteGroup::trivial(), &s3), CrossedModule::identity(&s3), GroupHom::zero(&s3, &FiniteGroup::trivial()))
        .unwrap();
    assert!(id.module().coeff().is_trivial());
}

#[test]
fn identity_butterflies() {
    for e in family() {
        let id = identity_butterfly(&e);
        assert!(id.beta().is_identity());
        assert!(id.is_flippable());
        assert_eq!(id.middle().order(), e.e2().order() * e.e1().order());
        let twice = compose_butterflies(&id, &id).unwrap();
        assert!(butterflies_isomorphic(&twice, &id));
    }
    // on I_ξ the kernel section of d and the projection c form a short exact pair
    let id = identity_butterfly(&CrossedExtension::unit(&z2_triv()));
    assert!(is_short_exact(id.kappa(), id.delta()).unwrap());
}

#[test]
fn condition_ii_is_checked() {
    let e = CrossedExtension::unit(&z2_triv());
    let id = identity_butterfly(&e);
    let mut wings = id.wings();
    wings.iota = GroupHom::zero(e.e2(), id.middle());
    assert!(matches!(Butterfly::new(&e, &e, wings), Err(XExtError::ConditionII(_))));
}

#[test]
fn phi_of_the_unit_is_the_identity() {
    let m = z2_triv();
    assert_eq!(phi(&unit_extension(&m)), identity_butterfly(&CrossedExtension::unit(&m)));
    assert!(is_pi1_shaped(&identity_butterfly(&CrossedExtension::unit(&m))));
    assert_eq!(extension_of_pi1(&phi(&z4_ext())).unwrap(), z4_ext());
}

#[test]
fn phi_separates_z4_from_k4() {
    let m = z2_triv();
    let (z4, k4) = (phi(&z4_ext()), phi(&unit_extension(&m)));
    assert!(z4.is_flippable() && k4.is_flippable());
    assert!(find_butterfly_iso(&z4, &k4).is_none());
    assert!(find_butterfly_iso(&z4, &z4).is_some());
}

#[test]
fn phi_is_strictly_monoidal() {
    let m = z2_triv();
    let exts = [z4_ext(), unit_extension(&m)];
    for e in &exts {
        for e2 in &exts {
            let sum = baer_sum(e, e2).unwrap();
            let comp = compose_butterflies(&phi(e2), &phi(e)).unwrap();
            assert_eq!(phi(&sum), comp);
            assert!(fibre_isomorphic(&extension_of_pi1(&comp).unwrap(), &sum));
        }
    }
}

#[test]
fn flipping_gives_inverses() {
    for b in [phi(&z4_ext()), identity_butterfly(&z4_sign())] {
        let back = b.flip().unwrap();
        assert!(butterflies_isomorphic(&compose_butterflies(&back, &b).unwrap(), &identity_butterfly(b.dom())));
        assert!(butterflies_isomorphic(&compose_butterflies(&b, &back).unwrap(), &identity_butterfly(b.cod())));
    }
}

#[test]
fn representable_butterflies() {
    for e in family() {
        let id = XExtMorphism::identity(&e);
        assert!(butterflies_isomorphic(&morphism_to_butterfly(&id), &identity_butterfly(&e)));
    }
    let e = z4_sign();
    let m = e.module().clone();
    for beta in module_morphisms(&m, &m) {
        let pf = pushforward_xext(&e, &beta).unwrap();
        let b = morphism_to_butterfly(&pf.lift);
        assert_eq!(b.beta(), &beta);
    }
}

#[test]
fn composition_is_functorial_on_representables() {
    let e = z4_sign();
    let m = e.module().clone();
    let zero = CModuleMorphism::zero(&m, &m).unwrap();
    let first = pushforward_xext(&e, &CModuleMorphism::identity(&m)).unwrap();
    let second = pushforward_xext(&first.ext, &zero).unwrap();
    let composite = second.lift.after(&first.lift).unwrap();
    let bf = compose_butterflies(&morphism_to_butterfly(&second.lift), &morphism_to_butterfly(&first.lift)).unwrap();
    assert!(butterflies_isomorphic(&morphism_to_butterfly(&composite), &bf));
    assert_eq!(bf.beta(), &zero);
}

#[test]
fn inverse_witnesses() {
    for e in family() {
        let w = inverse_witness(&e).unwrap();
        assert!(w.is_flippable());
        assert!(w.beta().is_identity());
        let back = w.flip().unwrap();
        assert!(butterflies_isomorphic(&compose_butterflies(&back, &w).unwrap(), &identity_butterfly(w.dom())));
    }
}

#[test]
fn tensor_and_products() {
    let m = z2_triv();
    let unit = CrossedExtension::unit(&m);
    let prod = product_xext(&unit, &unit).unwrap();
    assert!(prod.ext.is_unit_shaped());
    let e = z4_sign();
    let prod = product_xext(&e, &e).unwrap();
    assert_eq!(prod.ext.e2().order(), 16);
    assert_eq!(prod.ext.e1().order(), 8);
    let t = tensor_xext(&e, &unit).unwrap();
    assert_eq!(t.module(), &m);
    assert_eq!(t.e2().order(), 4);
}

#[test]
fn crossed_pushforward_is_cocartesian() {
    let e = z4_sign();
    let m = e.module().clone();
    let targets: Vec<_> = [e.clone(), CrossedExtension::unit(&m)]
        .into_iter()
        .flat_map(|t| module_morphisms(&m, &m).into_iter().map(move |b| (t.clone(), b)))
        .collect();
    for beta in module_morphisms(&m, &m) {
        let pf = pushforward_xext(&e, &beta).unwrap();
        let report = check_xcocartesian(&pf.lift, &targets).unwrap();
        assert!(report.holds() && report.tested > 0, "{report:?}");
    }
}

#[test]
fn crossed_extension_of_a_normal_inclusion() {
    let e = a3_in_s3();
    assert_eq!(e.base().order(), 2);
    let q = cokernel(e.boundary());
    assert_eq!(q.projection(), e.p());
    let gpd = associated_groupoid(e.xm());
    assert!(gpd.d.after(&gpd.ker_d).is_zero());
}

//! The standard small-group test catalog.

use crate::action::{all_actions, GroupAction};
use crate::cmodule::{CModule, CModuleMorphism};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::h2::{unit_extension, AbelianExtension};
use crate::h3::{crossed_extension_of, inverse_xext, pushforward_xext, tensor_xext, CrossedExtension};
use crate::oracle::{extension_from_2cocycle, Cohomology, OracleError};
use crate::xmod::CrossedModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named { name: name.into(), value }
}

pub fn base_groups() -> Vec<Named<FiniteGroup>> {
    vec![
        named("z2", FiniteGroup::cyclic(2)),
        named("z3", FiniteGroup::cyclic(3)),
        named("z4", FiniteGroup::cyclic(4)),
        named("k4", FiniteGroup::klein_four()),
    ]
}

pub fn coefficient_groups() -> Vec<Named<FiniteGroup>> {
    vec![named("z2", FiniteGroup::cyclic(2)), named("z3", FiniteGroup::cyclic(3)), named("z4", FiniteGroup::cyclic(4))]
}

/// Every `(C, B, ξ)` with `C` and `B` from the lists above. The trivial
/// action is tagged `triv`, the others `a1`, `a2`, ... in search order.
pub fn standard_modules() -> Vec<Named<CModule>> {
    let mut out = Vec::new();
    for c in base_groups() {
        for b in coefficient_groups() {
            let mut k = 0;
            for action in all_actions(&c.value, &b.value) {
                let tag = if action.is_trivial() {
                    "triv".to_string()
                } else {
                    k += 1;
                    format!("a{k}")
                };
                let module = CModule::new(action).expect("abelian coefficients");
                out.push(named(format!("{}-{}-{tag}", c.name, b.name), module));
            }
        }
    }
    out
}

/// One extension per class of `H²`, built from a representative cocycle.
/// Class `0` yields the split extension.
pub fn bridge_extensions(m: &Named<CModule>) -> Result<Vec<Named<AbelianExtension>>, OracleError> {
    let h2 = Cohomology::classes(&m.value, 2)?;
    (0..h2.order() as usize)
        .map(|x| Ok(named(format!("{}.h2-{x}", m.name), extension_from_2cocycle(&h2.representative(x)?)?)))
        .collect()
}

/// `Z2 -> Z4 -(x2)-> Z4 -> Z2`, with `g * x = (-1)^g x` or the trivial action.
pub fn z4_crossed(sign: bool) -> CrossedExtension {
    let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let boundary = GroupHom::new(&z4, &z4, vec![0, 2, 0, 2]).expect("hom");
    let action = GroupAction::new(&z4, &z4, |g, x| if sign && g % 2 == 1 { z4.neg(x) } else { x }).expect("action");
    let j = GroupHom::new(&z2, &z4, vec![0, 2]).expect("hom");
    let p = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).expect("hom");
    CrossedExtension::build(j, boundary, action, p).expect("crossed extension")
}

/// `Z3 -> Z9 -(x3)-> Z9 -> Z3` with `g * x = a^g x`, for `a` in `{1, 4, 7}`.
pub fn z9_crossed(a: usize) -> CrossedExtension {
    let (z3, z9) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(9));
    let boundary = GroupHom::from_fn(&z9, &z9, |x| 3 * x % 9);
    let action = GroupAction::new(&z9, &z9, |g, x| (0..g).fold(x, |y, _| a * y % 9)).expect("action");
    let j = GroupHom::from_fn(&z3, &z9, |b| 3 * b);
    let p = GroupHom::from_fn(&z9, &z3, |x| x % 3);
    CrossedExtension::build(j, boundary, action, p).expect("crossed extension")
}

fn normal_inclusion(g: &FiniteGroup, gens: &[usize]) -> CrossedExtension {
    let n = Subgroup::from_members(g, &g.generated_by(gens)).expect("subgroup");
    crossed_extension_of(&CrossedModule::inclusion(&n).expect("normal subgroup"))
}

/// Crossed extensions of the catalog: the units `I_ξ` of every standard
/// module, the cyclic families above, inclusions of normal subgroups, and
/// tensors, inverses and pushforwards of these.
pub fn crossed_catalog(modules: &[Named<CModule>]) -> Vec<Named<CrossedExtension>> {
    let mut out: Vec<Named<CrossedExtension>> =
        modules.iter().map(|m| named(format!("{}.unit", m.name), CrossedExtension::unit(&m.value))).collect();
    let (sign, plain) = (z4_crossed(true), z4_crossed(false));
    let (z9, z9_twisted) = (z9_crossed(1), z9_crossed(4));
    out.push(named("z4-sign", sign.clone()));
    out.push(named("z4-plain", plain.clone()));
    out.push(named("z9-a1", z9.clone()));
    out.push(named("z9-a4", z9_twisted.clone()));
    out.push(named("z9-a7", z9_crossed(7)));
    let s3 = FiniteGroup::symmetric(3);
    let rotation = s3.elements().find(|&x| s3.element_order(x) == 3).expect("3-cycle");
    out.push(named("a3-in-s3", normal_inclusion(&s3, &[rotation])));
    out.push(named("z2-in-z4", normal_inclusion(&FiniteGroup::cyclic(4), &[2])));
    out.push(named("sign-tensor-sign", tensor_xext(&sign, &sign).expect("same module")));
    out.push(named("sign-tensor-plain", tensor_xext(&sign, &plain).expect("same module")));
    out.push(named("sign-inverse", inverse_xext(&sign)));
    out.push(named("z9a4-inverse", inverse_xext(&z9_twisted)));
    let m3 = z9_twisted.module().clone();
    let double = CModuleMorphism::from_map(&m3, &m3, vec![0, 2, 1]).expect("module map");
    out.push(named("z9a4-pushed-by-2", pushforward_xext(&z9_twisted, &double).expect("pushforward").ext));
    let m2 = sign.module().clone();
    let z4 = FiniteGroup::cyclic(4);
    let m24 = CModule::trivial(m2.base(), &z4).expect("module");
    let into = CModuleMorphism::from_map(&m2, &m24, vec![0, 2]).expect("module map");
    out.push(named("sign-pushed-into-z4", pushforward_xext(&sign, &into).expect("pushforward").ext));
    let zero = CModuleMorphism::zero(&m2, &m2).expect("module map");
    out.push(named("sign-pushed-by-0", pushforward_xext(&sign, &zero).expect("pushforward").ext));
    out
}

pub struct Catalog {
    pub modules: Vec<Named<CModule>>,
    pub extensions: Vec<Named<AbelianExtension>>,
    pub crossed: Vec<Named<CrossedExtension>>,
}

impl Catalog {
    pub fn module(&self, name: &str) -> Option<&CModule> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.value)
    }

    /// Abelian extensions over a given module, in catalog order.
    pub fn extensions_over<'a>(&'a self, m: &'a CModule) -> impl Iterator<Item = &'a Named<AbelianExtension>> + 'a {
        self.extensions.iter().filter(move |e| e.value.module() == m)
    }
}

pub fn standard_catalog() -> Result<Catalog, OracleError> {
    let modules = standard_modules();
    let mut extensions = Vec::new();
    for m in &modules {
        extensions.push(named(format!("{}.split", m.name), unit_extension(&m.value)));
        extensions.extend(bridge_extensions(m)?);
    }
    let crossed = crossed_catalog(&modules);
    Ok(Catalog { modules, extensions, crossed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_count() {
        let modules = standard_modules();
        assert_eq!(modules.len(), 22);
        assert_eq!(modules[0].name, "z2-z2-triv");
        assert!(modules.iter().any(|m| m.name == "k4-z3-a3"));
    }

    #[test]
    fn cyclic_crossed_extensions() {
        let z9 = z9_crossed(4);
        assert!(z9.module().action().is_trivial());
        assert_eq!(z9.module().coeff().order(), 3);
        assert!(z4_crossed(true).module().action().is_trivial());
    }
}

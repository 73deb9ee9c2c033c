//! Group actions by automorphisms.

use std::fmt;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("not an action: table has {found} entries, expected {expected}")]
    TableSize { found: usize, expected: usize },
    #[error("not an action: {g}*{x} = {value} is outside the object")]
    OutOfRange { g: Elem, x: Elem, value: Elem },
    #[error("not an action: 0*{x} != {x}")]
    IdentityFails { x: Elem },
    #[error("not an action: ({g}+{h})*{x} != {g}*({h}*{x})")]
    CompatibilityFails { g: Elem, h: Elem, x: Elem },
    #[error("not an action: {g}*(-) is not additive at ({x}, {y})")]
    NotAdditive { g: Elem, x: Elem, y: Elem },
    #[error("not an action: {g}*(-) is not bijective")]
    NotBijective { g: Elem },
}

/// An action of `actor` on `object` by automorphisms, stored as a full table
/// with `g*x` at `g * |object| + x`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,
    object: FiniteGroup,
    table: Vec<u32>,
}

impl GroupAction {
    pub fn new(actor: &FiniteGroup, object: &FiniteGroup, act: impl Fn(Elem, Elem) -> Elem) -> Result<Self, ActionError> {
        let mut table = Vec::with_capacity(actor.order() * object.order());
        for g in actor.elements() {
            for x in object.elements() {
                table.push(act(g, x) as u32);
            }
        }
        Self::from_flat(actor, object, table)
    }

    /// From rows `act[g][x] = g*x`.
    pub fn from_rows(actor: &FiniteGroup, object: &FiniteGroup, act: &[Vec<Elem>]) -> Result<Self, ActionError> {
        let found: usize = act.iter().map(Vec::len).sum();
        let expected = actor.order() * object.order();
        if act.len() != actor.order() || act.iter().any(|r| r.len() != object.order()) {
            return Err(ActionError::TableSize { found, expected });
        }
        Self::new(actor, object, |g, x| act[g][x])
    }

    fn from_flat(actor: &FiniteGroup, object: &FiniteGroup, table: Vec<u32>) -> Result<Self, ActionError> {
        let expected = actor.order() * object.order();
        if table.len() != expected {
            return Err(ActionError::TableSize { found: table.len(), expected });
        }
        let n = object.order();
        let at = |g: Elem, x: Elem| table[g * n + x] as usize;
        for g in actor.elements() {
            for x in object.elements() {
                if at(g, x) >= n {
                    return Err(ActionError::OutOfRange { g, x, value: at(g, x) });
                }
            }
        }
        if let Some(x) = object.elements().find(|&x| at(0, x) != x) {
            return Err(ActionError::IdentityFails { x });
        }
        for g in actor.elements() {
            for h in actor.elements() {
                for x in object.elements() {
                    if at(actor.op(g, h), x) != at(g, at(h, x)) {
                        return Err(ActionError::CompatibilityFails { g, h, x });
                    }
                }
            }
        }
        for g in actor.elements() {
            for x in object.elements() {
                for y in object.elements() {
                    if at(g, object.op(x, y)) != object.op(at(g, x), at(g, y)) {
                        return Err(ActionError::NotAdditive { g, x, y });
                    }
                }
            }
            let mut seen = vec![false; n];
            for x in object.elements() {
                seen[at(g, x)] = true;
            }
            if seen.contains(&false) {
                return Err(ActionError::NotBijective { g });
            }
        }
        Ok(GroupAction { actor: actor.clone(), object: object.clone(), table })
    }

    pub(crate) fn new_unchecked(actor: &FiniteGroup, object: &FiniteGroup, act: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut table = Vec::with_capacity(actor.order() * object.order());
        for g in actor.elements() {
            for x in object.elements() {
                table.push(act(g, x) as u32);
            }
        }
        let action = GroupAction { actor: actor.clone(), object: object.clone(), table };
        debug_assert!(Self::from_flat(actor, object, action.table.clone()).is_ok());
        action
    }

    pub fn trivial(actor: &FiniteGroup, object: &FiniteGroup) -> Self {
        Self::new_unchecked(actor, object, |_, x| x)
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        Self::new_unchecked(g, g, |a, x| g.conj(a, x))
    }

    /// `G` acting by conjugation on a normal subgroup.
    pub fn conjugation_on(normal: &Subgroup) -> Option<Self> {
        if !normal.is_normal() {
            return None;
        }
        let g = normal.parent();
        Some(Self::new_unchecked(g, normal.group(), |a, x| {
            normal.index_of(g.conj(a, normal.elements()[x])).expect("normal subgroup")
        }))
    }

    /// The action of `H` obtained by restricting along `f: H -> actor`.
    pub fn along(&self, f: &GroupHom) -> Option<Self> {
        if f.cod() != &self.actor {
            return None;
        }
        Some(Self::new_unchecked(f.dom(), &self.object, |h, x| self.act(f.apply(h), x)))
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn object(&self) -> &FiniteGroup {
        &self.object
    }

    #[inline]
    pub fn act(&self, g: Elem, x: Elem) -> Elem {
        self.table[g * self.object.order() + x] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().all(|g| self.object.elements().all(|x| self.act(g, x) == x))
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.actor.elements().map(|g| self.object.elements().map(|x| self.act(g, x)).collect()).collect()
    }

    /// `g*(-)` as an automorphism of the object.
    pub fn automorphism(&self, g: Elem) -> GroupHom {
        GroupHom::new_unchecked(&self.object, &self.object, self.object.elements().map(|x| self.act(g, x)).collect())
    }
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({} on {}: {:?})", self.actor.order(), self.object.order(), self.rows())
    }
}

/// Every action of `actor` on `object`, ordered by table.
pub fn all_actions(actor: &FiniteGroup, object: &FiniteGroup) -> Vec<GroupAction> {
    let auts = crate::group::find_automorphisms(object);
    // An action is a homomorphism actor -> Aut(object); realise Aut(object)
    // as a table group and search homomorphisms into it.
    let index = |f: &GroupHom| auts.iter().position(|a| a.map() == f.map()).expect("automorphism");
    let aut_group = FiniteGroup::from_fn(auts.len(), |i, j| index(&auts[i].after(&auts[j])));
    let mut out: Vec<GroupAction> = crate::group::HomSearch::new(actor, &aut_group)
        .run(None)
        .iter()
        .map(|rho| GroupAction::new_unchecked_from_hom(actor, object, &auts, rho))
        .collect();
    out.sort_by(|a, b| a.table.cmp(&b.table));
    out
}

impl GroupAction {
    fn new_unchecked_from_hom(actor: &FiniteGroup, object: &FiniteGroup, auts: &[GroupHom], rho: &GroupHom) -> Self {
        Self::new_unchecked(actor, object, |g, x| auts[rho.apply(g)].apply(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn inversion_on_z3() {
        let z3 = FiniteGroup::cyclic(3);
        let a = GroupAction::new(&z2(), &z3, |g, x| if g == 0 { x } else { z3.neg(x) }).unwrap();
        assert_eq!(a.act(1, 1), 2);
        assert!(!a.is_trivial());
    }

    #[test]
    fn translation_is_not_an_action_by_automorphisms() {
        let z4 = FiniteGroup::cyclic(4);
        let err = GroupAction::new(&z2(), &z4, |g, x| if g == 0 { x } else { (x + 1) % 4 }).unwrap_err();
        assert!(matches!(err, ActionError::CompatibilityFails { .. } | ActionError::NotAdditive { .. }));
    }

    #[test]
    fn trivial_actions_validate() {
        let s3 = FiniteGroup::symmetric(3);
        let z4 = FiniteGroup::cyclic(4);
        let t = GroupAction::trivial(&s3, &z4);
        assert_eq!(GroupAction::from_rows(&s3, &z4, &t.rows()).unwrap(), t);
    }

    #[test]
    fn conjugation_is_an_action() {
        let s3 = FiniteGroup::symmetric(3);
        let c = GroupAction::conjugation(&s3);
        assert!(GroupAction::from_rows(&s3, &s3, &c.rows()).is_ok());
    }

    #[test]
    fn bad_tables() {
        let z3 = FiniteGroup::cyclic(3);
        assert!(matches!(GroupAction::from_rows(&z2(), &z3, &[vec![0, 1, 2]]), Err(ActionError::TableSize { .. })));
        assert_eq!(
            GroupAction::from_rows(&z2(), &z3, &[vec![0, 2, 1], vec![0, 2, 1]]).unwrap_err(),
            ActionError::IdentityFails { x: 1 }
        );
    }

    #[test]
    fn counting_actions() {
        let z3 = FiniteGroup::cyclic(3);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(all_actions(&z2(), &z2()).len(), 1);
        assert_eq!(all_actions(&z2(), &z3).len(), 2);
        assert_eq!(all_actions(&z3, &z3).len(), 1);
        assert_eq!(all_actions(&FiniteGroup::klein_four(), &z4).len(), 4);
        assert_eq!(all_actions(&z4, &FiniteGroup::klein_four()).len(), 4); // Z4 -> S3: kernel Z4 or Z2
    }
}

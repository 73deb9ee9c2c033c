use std::fmt;

use super::{Elem, FiniteGroup, GroupError, Result};

/// A group homomorphism stored as its full table of values.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: FiniteGroup,
    cod: FiniteGroup,
    map: Vec<Elem>,
}

impl GroupHom {
    /// Validates `map` as a homomorphism `dom -> cod`. On failure the error
    /// names the first pair `(a, b)` in index order with
    /// `map[a + b] != map[a] + map[b]`.
    pub fn new(dom: &FiniteGroup, cod: &FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        if map.len() != dom.order() {
            return Err(GroupError::MapLength { found: map.len(), expected: dom.order() });
        }
        if let Some((elem, &value)) = map.iter().enumerate().find(|(_, &v)| v >= cod.order()) {
            return Err(GroupError::MapRange { elem, value, order: cod.order() });
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if map[dom.op(a, b)] != cod.op(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self::new_unchecked(dom, cod, map))
    }

    pub(crate) fn new_unchecked(dom: &FiniteGroup, cod: &FiniteGroup, map: Vec<Elem>) -> Self {
        debug_assert_eq!(map.len(), dom.order());
        debug_assert!(map.first() == Some(&0));
        GroupHom { dom: dom.clone(), cod: cod.clone(), map }
    }

    pub(crate) fn from_fn(dom: &FiniteGroup, cod: &FiniteGroup, f: impl Fn(Elem) -> Elem) -> Self {
        Self::new_unchecked(dom, cod, dom.elements().map(f).collect())
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::from_fn(g, g, |a| a)
    }

    pub fn zero(dom: &FiniteGroup, cod: &FiniteGroup) -> Self {
        Self::from_fn(dom, cod, |_| 0)
    }

    /// `b -> -b` on an abelian group.
    pub fn negation(b: &FiniteGroup) -> Result<Self> {
        Self::new(b, b, b.elements().map(|x| b.neg(x)).collect())
    }

    pub fn dom(&self) -> &FiniteGroup {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteGroup {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// The composite `self . first` (apply `first`, then `self`).
    ///
    /// # Panics
    /// If the codomain of `first` is not the domain of `self`.
    pub fn after(&self, first: &GroupHom) -> GroupHom {
        self.try_after(first).expect("composing homomorphisms with mismatched ends")
    }

    pub fn try_after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.cod != self.dom {
            return Err(GroupError::DomainMismatch("codomain of the first map is not the domain of the second"));
        }
        Ok(Self::from_fn(&first.dom, &self.cod, |a| self.map[first.map[a]]))
    }

    /// Pointwise sum `a -> f(a) + g(a)`, defined when the images commute.
    pub fn pointwise_add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(GroupError::DomainMismatch("pointwise sum of non-parallel maps"));
        }
        let map = self.dom.elements().map(|a| self.cod.op(self.map[a], other.map[a])).collect();
        Self::new(&self.dom, &self.cod, map)
    }

    pub fn is_injective(&self) -> bool {
        self.dom.elements().skip(1).all(|a| self.map[a] != 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_members().iter().all(|&m| m)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    /// Membership vector of the image in the codomain.
    pub fn image_members(&self) -> Vec<bool> {
        let mut member = vec![false; self.cod.order()];
        for &v in &self.map {
            member[v] = true;
        }
        member
    }

    pub fn kernel_members(&self) -> Vec<bool> {
        self.map.iter().map(|&v| v == 0).collect()
    }

    /// The preimage of `b`, if any, with the least index.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.map.iter().position(|&v| v == b)
    }

    /// Least preimage of every codomain element, `None` off the image.
    pub fn preimage_table(&self) -> Vec<Option<Elem>> {
        let mut table = vec![None; self.cod.order()];
        for (a, &v) in self.map.iter().enumerate() {
            table[v].get_or_insert(a);
        }
        table
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.cod.order()];
        for (a, &v) in self.map.iter().enumerate() {
            inv[v] = a;
        }
        Some(Self::new_unchecked(&self.cod, &self.dom, inv))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}: {:?})", self.dom.order(), self.cod.order(), self.map)
    }
}

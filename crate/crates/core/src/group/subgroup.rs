use super::{Elem, FiniteGroup, GroupError, GroupHom, Result};

/// A subgroup of `parent`, relabelled as a group in its own right.
///
/// Element `i` of [`Subgroup::group`] is the `i`-th smallest member of the
/// parent, so the canonical embedding is increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<Elem>,
    group: FiniteGroup,
    embedding: GroupHom,
}

impl Subgroup {
    /// Checks that `member` is closed under the group operation (finite
    /// groups need nothing more) and builds the subgroup.
    pub fn from_members(parent: &FiniteGroup, member: &[bool]) -> Result<Self> {
        if member.len() != parent.order() || !member[0] {
            return Err(GroupError::NotSubgroup);
        }
        let elements: Vec<Elem> = parent.elements().filter(|&x| member[x]).collect();
        for &a in &elements {
            for &b in &elements {
                if !member[parent.op(a, b)] {
                    return Err(GroupError::NotSubgroup);
                }
            }
        }
        Ok(Self::from_sorted_unchecked(parent, elements))
    }

    pub(crate) fn from_sorted_unchecked(parent: &FiniteGroup, elements: Vec<Elem>) -> Self {
        let mut position = vec![usize::MAX; parent.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = i;
        }
        let group = FiniteGroup::from_fn(elements.len(), |i, j| position[parent.op(elements[i], elements[j])]);
        let embedding = GroupHom::new_unchecked(&group, parent, elements.clone());
        Subgroup { parent: parent.clone(), elements, group, embedding }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn embedding(&self) -> &GroupHom {
        &self.embedding
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of a parent element inside the subgroup.
    pub fn index_of(&self, x: Elem) -> Option<Elem> {
        self.elements.binary_search(&x).ok()
    }

    pub fn members(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }

    pub fn is_normal(&self) -> bool {
        self.parent.normality_witness(&self.members()).is_none()
    }

    /// Corestriction of `f` to this subgroup, when its image lies inside.
    pub fn corestrict(&self, f: &GroupHom) -> Option<GroupHom> {
        if f.cod() != &self.parent {
            return None;
        }
        let map: Option<Vec<Elem>> = f.map().iter().map(|&v| self.index_of(v)).collect();
        map.map(|m| GroupHom::new_unchecked(f.dom(), &self.group, m))
    }
}

/// `{a : f(a) = 0}`.
pub fn kernel(f: &GroupHom) -> Subgroup {
    let elements = f.dom().elements().filter(|&a| f.apply(a) == 0).collect();
    Subgroup::from_sorted_unchecked(f.dom(), elements)
}

pub fn image(f: &GroupHom) -> Subgroup {
    let member = f.image_members();
    let elements = f.cod().elements().filter(|&x| member[x]).collect();
    Subgroup::from_sorted_unchecked(f.cod(), elements)
}

/// A quotient `G/N` with its canonical projection.
///
/// Cosets are labelled by their least member: the identity coset is `0`,
/// and the others follow in increasing order of least member.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FiniteGroup,
    projection: GroupHom,
    representatives: Vec<Elem>,
    normal: Vec<bool>,
}

impl Quotient {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// Least member of each coset, indexed by coset label.
    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn normal_members(&self) -> &[bool] {
        &self.normal
    }

    /// The unique `h'` with `h' . q = h`, when `h` kills the normal subgroup.
    pub fn factor(&self, h: &GroupHom) -> Result<GroupHom> {
        if h.dom() != self.projection.dom() {
            return Err(GroupError::DomainMismatch("factoring a map that does not start at the quotiented group"));
        }
        if let Some(x) = self.normal.iter().enumerate().find(|&(x, &m)| m && h.apply(x) != 0).map(|(x, _)| x) {
            return Err(GroupError::DoesNotFactor(x));
        }
        Ok(GroupHom::from_fn(&self.group, h.cod(), |i| h.apply(self.representatives[i])))
    }
}

/// The quotient of `g` by the normal subgroup with membership vector `normal`.
pub fn quotient(g: &FiniteGroup, normal: &[bool]) -> Result<Quotient> {
    Subgroup::from_members(g, normal)?;
    if let Some((g_, x)) = g.normality_witness(normal) {
        return Err(GroupError::NotNormal { g: g_, x });
    }
    Ok(quotient_unchecked(g, normal.to_vec()))
}

pub(crate) fn quotient_unchecked(g: &FiniteGroup, normal: Vec<bool>) -> Quotient {
    let n_elems: Vec<Elem> = g.elements().filter(|&x| normal[x]).collect();
    let mut label = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for a in g.elements() {
        if label[a] == usize::MAX {
            let l = representatives.len();
            representatives.push(a);
            for &n in &n_elems {
                label[g.op(a, n)] = l;
            }
        }
    }
    let group = FiniteGroup::from_fn(representatives.len(), |i, j| label[g.op(representatives[i], representatives[j])]);
    let projection = GroupHom::new_unchecked(g, &group, label);
    Quotient { group, projection, representatives, normal }
}

/// The cokernel of `f`: the codomain modulo the normal closure of the image.
pub fn cokernel(f: &GroupHom) -> Quotient {
    let gens: Vec<Elem> = {
        let member = f.image_members();
        f.cod().elements().filter(|&x| member[x]).collect()
    };
    quotient_unchecked(f.cod(), f.cod().normal_closure(&gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let mod2 = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(kernel(&mod2).elements(), &[0, 2]);
        assert_eq!(kernel(&GroupHom::identity(&z4)).elements(), &[0]);
        assert_eq!(kernel(&GroupHom::zero(&z4, &z2)).elements(), &[0, 1, 2, 3]);
    }

    #[test]
    fn cokernel_of_subgroup_of_z4() {
        let z4 = FiniteGroup::cyclic(4);
        let sub = kernel(&GroupHom::new(&z4, &FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).unwrap());
        let q = cokernel(sub.embedding());
        assert_eq!(q.group(), &FiniteGroup::cyclic(2));
        assert_eq!(q.projection().map(), &[0, 1, 0, 1]);
        assert_eq!(q.representatives(), &[0, 1]);
    }

    #[test]
    fn cokernel_of_identity_is_trivial() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(cokernel(&GroupHom::identity(&s3)).group().is_trivial());
    }

    #[test]
    fn cokernel_of_a3_in_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let three_cycle = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
        let a3 = Subgroup::from_members(&s3, &s3.generated_by(&[three_cycle])).unwrap();
        let q = cokernel(a3.embedding());
        assert_eq!(q.group(), &FiniteGroup::cyclic(2));
        // coset enumeration: even permutations map to 0
        for a in s3.elements() {
            assert_eq!(q.projection().apply(a) == 0, a3.contains(a));
        }
        assert!(a3.is_normal());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        assert!(matches!(quotient(&s3, &s3.generated_by(&[t])), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn factor_through_quotient() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let q = quotient(&z4, &[true, false, true, false]).unwrap();
        let mod2 = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let bar = q.factor(&mod2).unwrap();
        assert_eq!(bar.after(q.projection()), mod2);
        assert_eq!(q.factor(&GroupHom::identity(&z4)).unwrap_err(), GroupError::DoesNotFactor(2));
    }

    #[test]
    fn image_and_corestriction() {
        let z4 = FiniteGroup::cyclic(4);
        let double = GroupHom::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        let im = image(&double);
        assert_eq!(im.elements(), &[0, 2]);
        let co = im.corestrict(&double).unwrap();
        assert_eq!(co.map(), &[0, 1, 0, 1]);
    }
}

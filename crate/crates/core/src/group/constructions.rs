use super::{Elem, FiniteGroup, GroupError, GroupHom, Result};
use crate::action::GroupAction;

/// `G x H` with element `(g, h)` stored at index `g * |H| + h`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left: FiniteGroup,
    pub right: FiniteGroup,
    pub inj1: GroupHom,
    pub inj2: GroupHom,
    pub pr1: GroupHom,
    pub pr2: GroupHom,
}

impl DirectProduct {
    #[inline]
    pub fn pair(&self, g: Elem, h: Elem) -> Elem {
        g * self.right.order() + h
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        (x / self.right.order(), x % self.right.order())
    }

    /// `<u, v>: T -> G x H`.
    pub fn pairing(&self, u: &GroupHom, v: &GroupHom) -> Result<GroupHom> {
        if u.dom() != v.dom() || u.cod() != &self.left || v.cod() != &self.right {
            return Err(GroupError::DomainMismatch("pairing into a product"));
        }
        Ok(GroupHom::from_fn(u.dom(), &self.group, |t| self.pair(u.apply(t), v.apply(t))))
    }
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let m = h.order();
    let group = FiniteGroup::from_fn(g.order() * m, |x, y| g.op(x / m, y / m) * m + h.op(x % m, y % m));
    DirectProduct {
        inj1: GroupHom::from_fn(g, &group, |a| a * m),
        inj2: GroupHom::from_fn(h, &group, |b| b),
        pr1: GroupHom::from_fn(&group, g, |x| x / m),
        pr2: GroupHom::from_fn(&group, h, |x| x % m),
        group,
        left: g.clone(),
        right: h.clone(),
    }
}

impl DirectProduct {
    /// `f x g` between two products.
    pub fn product_map(&self, target: &DirectProduct, f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
        if f.dom() != &self.left || g.dom() != &self.right || f.cod() != &target.left || g.cod() != &target.right {
            return Err(GroupError::DomainMismatch("product of maps between products"));
        }
        Ok(GroupHom::from_fn(&self.group, &target.group, |x| {
            let (a, b) = self.split(x);
            target.pair(f.apply(a), g.apply(b))
        }))
    }
}

/// The pullback `A x_C B` of `f: A -> C` and `g: B -> C`, realised as the
/// subgroup `{(a, b) : f(a) = g(b)}` of `A x B`. Elements are numbered in
/// increasing order of their product index `a * |B| + b`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: FiniteGroup,
    pub p1: GroupHom,
    pub p2: GroupHom,
    pairs: Vec<(Elem, Elem)>,
    index: Vec<u32>,
    right_order: usize,
}

impl Pullback {
    pub fn pair(&self, x: Elem) -> (Elem, Elem) {
        self.pairs[x]
    }

    pub fn index_of(&self, a: Elem, b: Elem) -> Option<Elem> {
        match self.index[a * self.right_order + b] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// The unique `w: T -> A x_C B` with `p1 . w = u` and `p2 . w = v`.
    pub fn lift(&self, u: &GroupHom, v: &GroupHom) -> Result<GroupHom> {
        if u.dom() != v.dom() || u.cod() != self.p1.cod() || v.cod() != self.p2.cod() {
            return Err(GroupError::DomainMismatch("cone over a pullback"));
        }
        let map: Option<Vec<Elem>> = u.dom().elements().map(|t| self.index_of(u.apply(t), v.apply(t))).collect();
        map.map(|m| GroupHom::new_unchecked(u.dom(), &self.group, m))
            .ok_or(GroupError::DomainMismatch("cone does not commute over the base"))
    }
}

/// Largest pullback that will be tabulated.
pub const PULLBACK_CAP: usize = 4096;

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(GroupError::DomainMismatch("pullback of maps with different codomains"));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut pairs = Vec::new();
    let mut index = vec![u32::MAX; a.order() * b.order()];
    for x in a.elements() {
        for y in b.elements() {
            if f.apply(x) == g.apply(y) {
                index[x * b.order() + y] = pairs.len() as u32;
                pairs.push((x, y));
            }
        }
    }
    if pairs.len() > PULLBACK_CAP {
        return Err(GroupError::OrderCap { order: pairs.len(), cap: PULLBACK_CAP });
    }
    let group = FiniteGroup::from_fn(pairs.len(), |i, j| {
        let ((x1, y1), (x2, y2)) = (pairs[i], pairs[j]);
        index[a.op(x1, x2) * b.order() + b.op(y1, y2)] as usize
    });
    let p1 = GroupHom::from_fn(&group, a, |i| pairs[i].0);
    let p2 = GroupHom::from_fn(&group, b, |i| pairs[i].1);
    Ok(Pullback { group, p1, p2, pairs, index, right_order: b.order() })
}

/// `N ⋊ G` for an action of `G` on `N`, with
/// `(n, g) + (n', g') = (n + g*n', g + g')` and `(n, g)` at index `n * |G| + g`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub action: GroupAction,
    /// `n -> (n, 0)`
    pub inj_normal: GroupHom,
    /// `g -> (0, g)`
    pub inj_acting: GroupHom,
    /// `(n, g) -> g`
    pub proj: GroupHom,
}

impl SemidirectProduct {
    #[inline]
    pub fn pair(&self, n: Elem, g: Elem) -> Elem {
        n * self.action.actor().order() + g
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let m = self.action.actor().order();
        (x / m, x % m)
    }
}

pub fn semidirect_product(action: &GroupAction) -> SemidirectProduct {
    let (g, n) = (action.actor(), action.object());
    let m = g.order();
    let group = FiniteGroup::from_fn(n.order() * m, |x, y| {
        let ((n1, g1), (n2, g2)) = ((x / m, x % m), (y / m, y % m));
        n.op(n1, action.act(g1, n2)) * m + g.op(g1, g2)
    });
    SemidirectProduct {
        inj_normal: GroupHom::from_fn(n, &group, |a| a * m),
        inj_acting: GroupHom::from_fn(g, &group, |b| b),
        proj: GroupHom::from_fn(&group, g, |x| x % m),
        group,
        action: action.clone(),
    }
}

/// The cooperator `(x, y) -> kappa(x) + iota(y)` on `X x Y`, defined when
/// every element of the image of `kappa` commutes with every element of the
/// image of `iota`.
pub fn cooperator(kappa: &GroupHom, iota: &GroupHom) -> Result<GroupHom> {
    if kappa.cod() != iota.cod() {
        return Err(GroupError::DomainMismatch("cooperator of maps with different codomains"));
    }
    let f = kappa.cod();
    for x in kappa.dom().elements() {
        for y in iota.dom().elements() {
            if !f.commutes(kappa.apply(x), iota.apply(y)) {
                return Err(GroupError::ImagesDoNotCommute { x, y });
            }
        }
    }
    let prod = direct_product(kappa.dom(), iota.dom());
    Ok(GroupHom::from_fn(&prod.group, f, |p| {
        let (x, y) = prod.split(p);
        f.op(kappa.apply(x), iota.apply(y))
    }))
}

/// Whether `kappa` is a kernel of `gamma` and `gamma` a cokernel of `kappa`:
/// `kappa` injective, `gamma` surjective, image of `kappa` = kernel of `gamma`.
pub fn is_short_exact(kappa: &GroupHom, gamma: &GroupHom) -> Result<bool> {
    if kappa.cod() != gamma.dom() {
        return Err(GroupError::DomainMismatch("short exact sequence with mismatched middle group"));
    }
    Ok(kappa.is_injective() && gamma.is_surjective() && kappa.image_members() == gamma.kernel_members())
}

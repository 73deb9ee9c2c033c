//! Finite groups given by Cayley tables, homomorphisms, and the small
//! categorical constructions every diagram in this crate is assembled from.
//!
//! Group operations are written additively whether or not the group is
//! abelian: `op(a, b)` is `a + b` and `neg(a)` is `-a`. Elements are the
//! indices `0..order`, and the identity is always `0`.

mod constructions;
mod hom;
mod search;
mod subgroup;

pub use constructions::{
    cooperator, direct_product, is_short_exact, pullback, semidirect_product, DirectProduct, PULLBACK_CAP,
    Pullback, SemidirectProduct,
};
pub use hom::GroupHom;
pub use search::{find_automorphisms, find_isomorphisms, HomSearch};
pub use subgroup::{cokernel, image, kernel, quotient, Quotient, Subgroup};
pub(crate) use subgroup::quotient_unchecked;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Element of a [`FiniteGroup`], identified by its index in the table.
pub type Elem = usize;

/// Largest group order accepted by [`build_group`].
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("not associative: ({a}+{b})+{c} != {a}+({b}+{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("map has length {found}, expected {expected}")]
    MapLength { found: usize, expected: usize },
    #[error("map sends {elem} to {value}, outside a codomain of order {order}")]
    MapRange { elem: Elem, value: Elem, order: usize },
    #[error("not a homomorphism: f({a}+{b}) != f({a})+f({b})")]
    NotHomomorphism { a: Elem, b: Elem },
    #[error("images do not commute: {x} and {y} (in the respective domains)")]
    ImagesDoNotCommute { x: Elem, y: Elem },
    #[error("domain mismatch: {0}")]
    DomainMismatch(&'static str),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugating {x} by {g} leaves it")]
    NotNormal { g: Elem, x: Elem },
    #[error("map does not factor through the quotient: {0} is in the kernel of the projection but not of the map")]
    DoesNotFactor(Elem),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

struct GroupData {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

/// A finite group stored as a full Cayley table.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    /// Builds a group from a table already known to be a group table with
    /// identity `0`. Only the identity is checked, and only in debug builds.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!((0..order).all(|a| table[a] as usize == a && table[a * order] as usize == a));
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverses[a] = row.iter().position(|&v| v == 0).expect("group element without inverse") as u32;
        }
        let mut orders = vec![1u32; order];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        FiniteGroup(Arc::new(GroupData { order, table, inverses, orders }))
    }

    pub(crate) fn from_fn(order: usize, op: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b) as u32);
            }
        }
        Self::from_table_unchecked(order, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group `Z/n`, with element `k` standing for the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// The Klein four-group `Z2 x Z2` with the product index convention.
    pub fn klein_four() -> Self {
        direct_product(&Self::cyclic(2), &Self::cyclic(2)).group
    }

    /// The symmetric group on `n` points. Permutations are listed in
    /// lexicographic order of their images (so the identity is `0`), and
    /// `a + b` is the composite "first `b`, then `a`".
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
        Self::from_fn(perms.len(), |a, b| {
            let composite: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index(&composite)
        })
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.inverses[a] as usize
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.op(a, self.neg(b))
    }

    /// `g + x - g`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.op(self.op(g, x), self.neg(g))
    }

    /// `k * a` for any integer `k`.
    pub fn multiple(&self, a: Elem, k: i64) -> Elem {
        let n = self.element_order(a) as i64;
        let k = k.rem_euclid(n);
        (0..k).fold(0, |acc, _| self.op(acc, a))
    }

    pub fn sum(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(0, |acc, x| self.op(acc, x))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        self.0.orders[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.op(a, b) == self.op(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.commutes(a, b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        (0..n).map(|a| self.0.table[a * n..(a + 1) * n].iter().map(|&v| v as usize).collect()).collect()
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn generated_by(&self, gens: &[Elem]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    /// Membership vector of the smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[Elem]) -> Vec<bool> {
        let ambient_gens = self.greedy_generators();
        let mut gens: Vec<Elem> = Vec::new();
        let mut member = self.generated_by(&gens);
        let mut pending: Vec<Elem> = elems.to_vec();
        while let Some(x) = pending.pop() {
            if member[x] {
                continue;
            }
            gens.push(x);
            member = self.generated_by(&gens);
            for &t in &ambient_gens {
                for &s in &gens {
                    let y = self.conj(t, s);
                    if !member[y] {
                        pending.push(y);
                    }
                }
            }
        }
        member
    }

    /// Whether `member` (a membership vector) is closed under conjugation.
    /// Returns the first witness `(g, x)` in index order otherwise.
    pub fn normality_witness(&self, member: &[bool]) -> Option<(Elem, Elem)> {
        for x in self.elements().filter(|&x| member[x]) {
            for g in self.elements() {
                if !member[self.conj(g, x)] {
                    return Some((g, x));
                }
            }
        }
        None
    }

    /// A generating set chosen greedily in increasing index order.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order()];
        member[0] = true;
        for a in self.elements() {
            if !member[a] {
                gens.push(a);
                member = self.generated_by(&gens);
            }
        }
        gens
    }

    fn shares_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.shares_table(other) || (self.0.order == other.0.order && self.0.table == other.0.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

/// Validates a Cayley table and returns the group it describes, relabelling
/// so that the identity sits at index `0`.
pub fn build_group(table: &[Vec<Elem>]) -> Result<FiniteGroup> {
    build_group_capped(table, DEFAULT_ORDER_CAP)
}

pub fn build_group_capped(table: &[Vec<Elem>], cap: usize) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::MalformedTable("empty table".into()));
    }
    if n > cap {
        return Err(GroupError::OrderCap { order: n, cap });
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::MalformedTable(format!("row {a} has length {}, expected {n}", row.len())));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(GroupError::MalformedTable(format!("row {a} contains {v}, outside 0..{n}")));
        }
    }
    let op = |a: usize, b: usize| table[a][b];
    let e = (0..n)
        .find(|&e| (0..n).all(|a| op(e, a) == a && op(a, e) == a))
        .ok_or(GroupError::NoIdentity)?;
    for a in 0..n {
        if !(0..n).any(|b| op(a, b) == e && op(b, a) == e) {
            return Err(GroupError::NoInverse(relabel(a, e)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(a, op(b, c)) {
                    return Err(GroupError::NotAssociative { a: relabel(a, e), b: relabel(b, e), c: relabel(c, e) });
                }
            }
        }
    }
    Ok(FiniteGroup::from_fn(n, |a, b| relabel(op(relabel(a, e), relabel(b, e)), e)))
}

/// The transposition swapping `0` and `e`.
fn relabel(x: usize, e: usize) -> usize {
    if x == e {
        0
    } else if x == 0 {
        e
    } else {
        x
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_table() -> Vec<Vec<Elem>> {
        (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect()
    }

    #[test]
    fn z4_table_builds() {
        let g = build_group(&z4_table()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g, FiniteGroup::cyclic(4));
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.element_order(2), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn idempotent_breaks_inverses() {
        assert_eq!(build_group(&[vec![0, 1], vec![1, 1]]).unwrap_err(), GroupError::NoInverse(1));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // Z3 where residue k carries label (k + 2) % 3, so the identity is 2.
        let table: Vec<Vec<usize>> =
            (0..3).map(|a| (0..3).map(|b| ((a + 1 + b + 1) % 3 + 2) % 3).collect()).collect();
        assert_eq!(table[2], vec![0, 1, 2]);
        let g = build_group(&table).unwrap();
        assert_eq!(g.op(0, 1), 1);
        assert_eq!(g.op(1, 0), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(build_group(&[]), Err(GroupError::MalformedTable(_))));
        assert!(matches!(build_group(&[vec![0, 1], vec![1]]), Err(GroupError::MalformedTable(_))));
        assert!(matches!(build_group(&[vec![0, 2], vec![1, 0]]), Err(GroupError::MalformedTable(_))));
        assert_eq!(build_group(&[vec![1, 1], vec![1, 1]]).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_latin_square() {
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(build_group(&t), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn order_cap_is_enforced() {
        let t = z4_table();
        assert_eq!(build_group_capped(&t, 3).unwrap_err(), GroupError::OrderCap { order: 4, cap: 3 });
    }

    #[test]
    fn s3_matches_permutation_composition() {
        let s3 = FiniteGroup::symmetric(3);
        let perms = permutations(3);
        assert_eq!(s3.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                let c = s3.op(a, b);
                for i in 0..3 {
                    assert_eq!(perms[c][i], perms[a][perms[b][i]]);
                }
            }
        }
        assert!(!s3.is_abelian());
        assert_eq!(build_group(&s3.table_rows()).unwrap(), s3);
    }

    #[test]
    fn closures() {
        let s3 = FiniteGroup::symmetric(3);
        // 3-cycles together with the identity form A3.
        let three_cycles: Vec<Elem> = s3.elements().filter(|&a| s3.element_order(a) == 3).collect();
        let a3 = s3.generated_by(&three_cycles[..1]);
        assert_eq!(a3.iter().filter(|&&m| m).count(), 3);
        assert!(s3.normality_witness(&a3).is_none());
        let transposition = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        let t = s3.generated_by(&[transposition]);
        assert!(s3.normality_witness(&t).is_some());
        assert!(s3.normal_closure(&[transposition]).iter().all(|&m| m));
        assert_eq!(s3.greedy_generators().len(), 2);
    }
}

#![allow(dead_code)]

use std::sync::OnceLock;

use bfly_core::action::GroupAction;
use bfly_core::catalog::{standard_catalog, Catalog};
use bfly_core::group::{direct_product, semidirect_product, FiniteGroup, GroupHom, HomSearch};

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| standard_catalog().expect("catalog builds"))
}

/// Small groups of order at most 8, abelian and not.
pub fn group_pool() -> &'static [FiniteGroup] {
    static POOL: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool: Vec<FiniteGroup> = (1..=8).map(FiniteGroup::cyclic).collect();
        pool.push(FiniteGroup::klein_four());
        pool.push(FiniteGroup::symmetric(3));
        pool.push(direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::klein_four()).group);
        let z4 = FiniteGroup::cyclic(4);
        let flip = GroupAction::new(&FiniteGroup::cyclic(2), &z4, |g, x| if g == 0 { x } else { z4.neg(x) }).expect("action");
        pool.push(semidirect_product(&flip).group);
        pool
    })
}

pub fn homs(a: &FiniteGroup, b: &FiniteGroup) -> Vec<GroupHom> {
    HomSearch::new(a, b).run(None)
}

pub fn pick<T>(items: &[T], i: usize) -> &T {
    &items[i % items.len()]
}

//! Exhaustive homomorphism search by backtracking over generator images.
//!
//! A homomorphism out of a finite group is determined by where it sends a
//! generating set, so the search picks generators one at a time (always the
//! least element not yet covered) and tries every admissible image in
//! increasing order. After each choice the partial map is closed under the
//! generators, which both propagates the choice and detects conflicts.
//! Because the next generator is always the least undetermined element,
//! results come out in lexicographic order of their value tables.

use super::{Elem, FiniteGroup, GroupHom};

type Filter<'a> = Box<dyn Fn(Elem, Elem) -> bool + 'a>;

/// Builder for an exhaustive search of homomorphisms `dom -> cod`.
///
/// `filter(a, t)` is consulted only when `a` becomes a generator with
/// candidate image `t` (including the fixed assignments), so it must express
/// a condition that propagates along homomorphisms, such as `psi'(t) == psi(a)`
/// for homomorphisms `psi`, `psi'`.
pub struct HomSearch<'a> {
    dom: &'a FiniteGroup,
    cod: &'a FiniteGroup,
    fixed: Vec<(Elem, Elem)>,
    filter: Option<Filter<'a>>,
    bijective: bool,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a FiniteGroup, cod: &'a FiniteGroup) -> Self {
        HomSearch { dom, cod, fixed: Vec::new(), filter: None, bijective: false }
    }

    /// Require `f(a) = t`.
    pub fn fix(mut self, a: Elem, t: Elem) -> Self {
        self.fixed.push((a, t));
        self
    }

    /// Require `f . h = k` for homomorphisms `h: X -> dom` and `k: X -> cod`.
    pub fn fix_along(mut self, h: &GroupHom, k: &GroupHom) -> Self {
        for x in h.dom().greedy_generators() {
            self.fixed.push((h.apply(x), k.apply(x)));
        }
        self
    }

    pub fn filter(mut self, f: impl Fn(Elem, Elem) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    /// Require `psi'(f(a)) = psi(a)` for `psi: dom -> Z` and `psi': cod -> Z`.
    pub fn over(self, psi: &'a GroupHom, psi_prime: &'a GroupHom) -> Self {
        match self.filter {
            None => self.filter(move |a, t| psi_prime.apply(t) == psi.apply(a)),
            Some(prev) => {
                HomSearch { filter: None, ..self }.filter(move |a, t| prev(a, t) && psi_prime.apply(t) == psi.apply(a))
            }
        }
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    /// All solutions in lexicographic order, truncated at `limit`.
    pub fn run(&self, limit: Option<usize>) -> Vec<GroupHom> {
        let mut out = Vec::new();
        if limit == Some(0) || (self.bijective && self.dom.order() != self.cod.order()) {
            return out;
        }
        let mut state = State { gens: Vec::new(), map: vec![None; self.dom.order()] };
        state.map[0] = Some(0);
        for &(a, t) in &self.fixed {
            if !self.admissible(a, t) {
                return out;
            }
            match state.map[a] {
                Some(v) if v == t => continue,
                Some(_) => return out,
                None => {
                    state.gens.push((a, t));
                    if !self.close(&mut state) {
                        return out;
                    }
                }
            }
        }
        self.extend(state, limit, &mut out);
        out
    }

    pub fn first(&self) -> Option<GroupHom> {
        self.run(Some(1)).pop()
    }

    pub fn count(&self) -> usize {
        self.run(None).len()
    }

    fn admissible(&self, a: Elem, t: Elem) -> bool {
        let order_ok = if self.bijective {
            self.dom.element_order(a) == self.cod.element_order(t)
        } else {
            self.dom.element_order(a) % self.cod.element_order(t) == 0
        };
        order_ok && self.filter.as_ref().is_none_or(|f| f(a, t))
    }

    fn extend(&self, state: State, limit: Option<usize>, out: &mut Vec<GroupHom>) {
        let Some(next) = state.map.iter().position(Option::is_none) else {
            let map: Vec<Elem> = state.map.iter().map(|v| v.expect("complete map")).collect();
            out.push(GroupHom::new_unchecked(self.dom, self.cod, map));
            return;
        };
        for t in self.cod.elements() {
            if limit.is_some_and(|l| out.len() >= l) {
                return;
            }
            if !self.admissible(next, t) {
                continue;
            }
            let mut child = state.clone();
            child.gens.push((next, t));
            if self.close(&mut child) {
                self.extend(child, limit, out);
            }
        }
    }

    /// Recomputes the partial map on the subgroup generated by the current
    /// generators. Returns false on a conflict (or a collision, when
    /// searching for bijections).
    fn close(&self, state: &mut State) -> bool {
        let (dom, cod) = (self.dom, self.cod);
        let mut map = vec![None; dom.order()];
        let mut used = vec![false; if self.bijective { cod.order() } else { 0 }];
        map[0] = Some(0);
        if self.bijective {
            used[0] = true;
        }
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let fx = map[x].expect("visited");
            for &(g, tg) in &state.gens {
                let y = dom.op(x, g);
                let fy = cod.op(fx, tg);
                match map[y] {
                    Some(v) if v != fy => return false,
                    Some(_) => {}
                    None => {
                        if self.bijective {
                            if used[fy] {
                                return false;
                            }
                            used[fy] = true;
                        }
                        map[y] = Some(fy);
                        stack.push(y);
                    }
                }
            }
        }
        state.map = map;
        true
    }
}

#[derive(Clone)]
struct State {
    gens: Vec<(Elem, Elem)>,
    map: Vec<Option<Elem>>,
}

/// Isomorphisms `g -> h` in lexicographic order of their tables.
pub fn find_isomorphisms(g: &FiniteGroup, h: &FiniteGroup, limit: Option<usize>) -> Vec<GroupHom> {
    HomSearch::new(g, h).bijective().run(limit)
}

pub fn find_automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    find_isomorphisms(g, g, None)
}

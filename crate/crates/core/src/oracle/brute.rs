//! Cohomology by exhaustive enumeration of cochains, for small systems.

use std::collections::{HashMap, HashSet};

use crate::cmodule::CModule;
use crate::group::Elem;

use super::cochain::{tuple_at, tuple_count, tuple_index, Cochain};
use super::cohomology::Cohomology;
use super::OracleError;

/// One term of a coboundary value: `±(c*)f(tuple)`.
#[derive(Clone, Copy)]
struct Term {
    act: Option<Elem>,
    negate: bool,
    src: usize,
}

/// Precomputed shape of `δ` from degree `k` to `k + 1`.
struct Stencil {
    rows: Vec<Vec<Term>>,
}

impl Stencil {
    fn new(m: &CModule, k: usize) -> Self {
        let c = m.base();
        let n = c.order();
        let rows = (0..tuple_count(n, k + 1))
            .map(|row| {
                let t = tuple_at(n, k + 1, row);
                let mut terms = vec![Term { act: Some(t[0]), negate: false, src: tuple_index(n, &t[1..]).expect("nonzero") }];
                for pos in 0..k {
                    let mut merged = t[..pos].to_vec();
                    merged.push(c.op(t[pos], t[pos + 1]));
                    merged.extend_from_slice(&t[pos + 2..]);
                    if let Some(src) = tuple_index(n, &merged) {
                        terms.push(Term { act: None, negate: pos % 2 == 0, src });
                    }
                }
                terms.push(Term { act: None, negate: k % 2 == 0, src: tuple_index(n, &t[..k]).expect("nonzero") });
                terms
            })
            .collect();
        Stencil { rows }
    }

    fn apply(&self, m: &CModule, values: &[Elem], out: &mut Vec<Elem>) {
        let b = m.coeff();
        out.clear();
        out.extend(self.rows.iter().map(|terms| {
            terms.iter().fold(0, |acc, t| {
                let mut v = values[t.src];
                if let Some(c) = t.act {
                    v = m.act(c, v);
                }
                if t.negate {
                    b.sub(acc, v)
                } else {
                    b.op(acc, v)
                }
            })
        }));
    }

    fn is_zero_on(&self, m: &CModule, values: &[Elem], scratch: &mut Vec<Elem>) -> bool {
        self.apply(m, values, scratch);
        scratch.iter().all(|&v| v == 0)
    }
}

/// Calls `visit` on every value vector of the given length over `0..base`.
fn for_each_vector(len: usize, base: usize, mut visit: impl FnMut(&[Elem])) {
    let mut v = vec![0; len];
    loop {
        visit(&v);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < base {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Number of cochains of a degree, if it fits in `u64`.
pub fn candidate_count(m: &CModule, degree: usize) -> Option<u64> {
    let count = u32::try_from(tuple_count(m.base().order(), degree)).ok()?;
    (m.coeff().order() as u64).checked_pow(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteCounts {
    pub candidates: u64,
    pub cocycles: u64,
    pub coboundaries: u64,
}

impl BruteCounts {
    pub fn classes(&self) -> u64 {
        self.cocycles / self.coboundaries
    }
}

struct Enumeration {
    counts: BruteCounts,
    cocycles: Vec<Vec<Elem>>,
    coboundaries: HashSet<Vec<Elem>>,
}

fn enumerate(m: &CModule, degree: usize, limit: u64) -> Option<Enumeration> {
    let candidates = candidate_count(m, degree).filter(|&c| c <= limit)?;
    let n = m.base().order();
    let b = m.coeff().order();
    let mut scratch = Vec::new();
    let mut coboundaries = HashSet::new();
    if degree == 0 {
        coboundaries.insert(vec![0; tuple_count(n, 0)]);
    } else {
        let down = Stencil::new(m, degree - 1);
        for_each_vector(tuple_count(n, degree - 1), b, |v| {
            down.apply(m, v, &mut scratch);
            coboundaries.insert(scratch.clone());
        });
    }
    let up = Stencil::new(m, degree);
    let mut cocycles = Vec::new();
    for_each_vector(tuple_count(n, degree), b, |v| {
        if up.is_zero_on(m, v, &mut scratch) {
            cocycles.push(v.to_vec());
        }
    });
    let counts = BruteCounts { candidates, cocycles: cocycles.len() as u64, coboundaries: coboundaries.len() as u64 };
    Some(Enumeration { counts, cocycles, coboundaries })
}

/// Counts cocycles and coboundaries by enumeration, or `None` when there
/// are more than `limit` cochains.
pub fn brute_force(m: &CModule, degree: usize, limit: u64) -> Option<BruteCounts> {
    enumerate(m, degree, limit).map(|e| e.counts)
}

/// Agreement between the linear-algebra computation and enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub degree: usize,
    pub brute: BruteCounts,
    pub solver_cocycles: u128,
    pub solver_classes: u128,
    /// `class_of` sends exactly the enumerated coboundaries to zero.
    pub kernel_is_coboundaries: bool,
    /// Every class is hit by the same number of enumerated cocycles.
    pub uniform_fibres: bool,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.solver_cocycles == u128::from(self.brute.cocycles)
            && self.solver_classes == u128::from(self.brute.classes())
            && self.brute.cocycles % self.brute.coboundaries == 0
            && self.kernel_is_coboundaries
            && self.uniform_fibres
    }
}

/// Compares [`Cohomology`] against enumeration on one system.
pub fn cross_check(m: &CModule, degree: usize, limit: u64) -> Result<Option<CrossCheck>, OracleError> {
    let Some(en) = enumerate(m, degree, limit) else { return Ok(None) };
    let h = Cohomology::classes(m, degree)?;
    let mut fibres: HashMap<Elem, u64> = HashMap::new();
    let mut kernel_is_coboundaries = true;
    for v in &en.cocycles {
        let f = Cochain::from_values(m, degree, v.clone())?;
        let class = h.class_of(&f)?;
        *fibres.entry(class).or_default() += 1;
        kernel_is_coboundaries &= (class == 0) == en.coboundaries.contains(v);
    }
    let uniform_fibres = fibres.len() as u128 == h.order() && fibres.values().all(|&c| c == en.counts.coboundaries);
    Ok(Some(CrossCheck {
        degree,
        brute: en.counts,
        solver_cocycles: h.cocycle_order().unwrap_or(u128::MAX),
        solver_classes: h.order(),
        kernel_is_coboundaries,
        uniform_fibres,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{all_actions, GroupAction};
    use crate::group::FiniteGroup;

    #[test]
    fn small_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let m = CModule::trivial(&z2, &z2).unwrap();
        let c = brute_force(&m, 2, 1 << 20).unwrap();
        assert_eq!(c, BruteCounts { candidates: 2, cocycles: 2, coboundaries: 1 });
        let m = CModule::trivial(&FiniteGroup::cyclic(4), &z2).unwrap();
        assert_eq!(brute_force(&m, 2, 1 << 20).unwrap().cocycles, 8);
        assert!(brute_force(&m, 3, 1 << 20).is_none());
    }

    #[test]
    fn enumeration_matches_linear_algebra() {
        for (c, b) in [(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)), (FiniteGroup::klein_four(), FiniteGroup::cyclic(2))] {
            for action in all_actions(&c, &b) {
                let m = CModule::new(action).unwrap();
                for k in 0..4 {
                    if let Some(check) = cross_check(&m, k, 1 << 16).unwrap() {
                        assert!(check.agrees(), "{check:?}");
                    }
                }
            }
        }
        let z4 = FiniteGroup::cyclic(4);
        let m = CModule::new(GroupAction::new(&FiniteGroup::cyclic(2), &z4, |g, x| if g == 0 { x } else { z4.neg(x) }).unwrap()).unwrap();
        for k in 0..5 {
            assert!(cross_check(&m, k, 1 << 20).unwrap().unwrap().agrees());
        }
    }
}

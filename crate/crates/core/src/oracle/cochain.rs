//! Normalized inhomogeneous cochains `C^k -> B`.

use crate::cmodule::{CModule, CModuleMorphism};
use crate::group::Elem;

use super::OracleError;

/// A normalized cochain: only tuples of nonzero elements are stored, in
/// lexicographic order; any tuple containing `0` evaluates to `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    module: CModule,
    values: Vec<Elem>,
}

/// Number of stored tuples for a group of order `n`.
pub fn tuple_count(n: usize, degree: usize) -> usize {
    n.saturating_sub(1).pow(degree as u32)
}

/// The `idx`-th tuple of nonzero elements.
pub fn tuple_at(n: usize, degree: usize, mut idx: usize) -> Vec<Elem> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = idx % (n - 1) + 1;
        idx /= n - 1;
    }
    t
}

/// Index of a tuple, or `None` if it contains `0`.
pub fn tuple_index(n: usize, tuple: &[Elem]) -> Option<usize> {
    tuple.iter().try_fold(0usize, |acc, &c| (c != 0).then(|| acc * (n - 1) + c - 1))
}

impl Cochain {
    pub fn zero(module: &CModule, degree: usize) -> Self {
        Cochain { degree, module: module.clone(), values: vec![0; tuple_count(module.base().order(), degree)] }
    }

    /// Evaluates `f` on every tuple of nonzero elements.
    pub fn from_fn(module: &CModule, degree: usize, f: impl Fn(&[Elem]) -> Elem) -> Self {
        let n = module.base().order();
        let values = (0..tuple_count(n, degree)).map(|i| f(&tuple_at(n, degree, i))).collect();
        Cochain { degree, module: module.clone(), values }
    }

    pub fn from_values(module: &CModule, degree: usize, values: Vec<Elem>) -> Result<Self, OracleError> {
        let expected = tuple_count(module.base().order(), degree);
        if values.len() != expected {
            return Err(OracleError::BadCochain(format!("expected {expected} values, found {}", values.len())));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= module.coeff().order()) {
            return Err(OracleError::BadCochain(format!("value {v} is not an element of B")));
        }
        Ok(Cochain { degree, module: module.clone(), values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &CModule {
        &self.module
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn get(&self, tuple: &[Elem]) -> Elem {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple_index(self.module.base().order(), tuple).map_or(0, |i| self.values[i])
    }

    /// `(δf)(c1..c_{k+1}) = c1*f(c2..) + Σ (-1)^i f(.., c_i + c_{i+1}, ..) + (-1)^{k+1} f(c1..c_k)`.
    pub fn coboundary(&self) -> Cochain {
        let (c, b) = (self.module.base(), self.module.coeff());
        let k = self.degree;
        Cochain::from_fn(&self.module, k + 1, |t| {
            let mut acc = self.module.act(t[0], self.get(&t[1..]));
            let mut merged = Vec::with_capacity(k);
            for i in 0..k {
                merged.clear();
                merged.extend_from_slice(&t[..i]);
                merged.push(c.op(t[i], t[i + 1]));
                merged.extend_from_slice(&t[i + 2..]);
                let v = self.get(&merged);
                acc = if i % 2 == 0 { b.sub(acc, v) } else { b.op(acc, v) };
            }
            let last = self.get(&t[..k]);
            if k % 2 == 0 {
                b.sub(acc, last)
            } else {
                b.op(acc, last)
            }
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        debug_assert!(self.degree == other.degree && self.module == other.module);
        let b = self.module.coeff();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| b.op(x, y)).collect();
        Cochain { degree: self.degree, module: self.module.clone(), values }
    }

    pub fn neg(&self) -> Cochain {
        let b = self.module.coeff();
        Cochain { degree: self.degree, module: self.module.clone(), values: self.values.iter().map(|&x| b.neg(x)).collect() }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    /// `β ∘ f`, a cochain with values in the codomain of `β`.
    pub fn push(&self, beta: &CModuleMorphism) -> Cochain {
        debug_assert_eq!(beta.dom(), &self.module);
        Cochain { degree: self.degree, module: beta.cod().clone(), values: self.values.iter().map(|&x| beta.apply(x)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::group::FiniteGroup;

    fn inversion() -> CModule {
        let z3 = FiniteGroup::cyclic(3);
        CModule::new(GroupAction::new(&FiniteGroup::cyclic(2), &z3, |g, x| if g == 0 { x } else { z3.neg(x) }).unwrap()).unwrap()
    }

    #[test]
    fn tuple_indexing() {
        assert_eq!(tuple_count(4, 3), 27);
        assert_eq!(tuple_count(1, 2), 0);
        assert_eq!(tuple_count(3, 0), 1);
        for i in 0..27 {
            assert_eq!(tuple_index(4, &tuple_at(4, 3, i)), Some(i));
        }
        assert_eq!(tuple_index(4, &[1, 0, 2]), None);
        assert_eq!(tuple_at(3, 2, 0), vec![1, 1]);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let m = inversion();
        for b in 0..3 {
            let f0 = Cochain::from_values(&m, 0, vec![b]).unwrap();
            let d = f0.coboundary();
            // principal derivation c -> c*b - b
            assert_eq!(d.get(&[1]), m.coeff().sub(m.act(1, b), b));
            assert!(d.is_cocycle());
        }
        let f2 = Cochain::from_fn(&m, 2, |t| t[0] + t[1]);
        assert!(f2.coboundary().is_cocycle());
    }

    #[test]
    fn normalization() {
        let c = FiniteGroup::cyclic(3);
        let m = CModule::trivial(&c, &FiniteGroup::cyclic(5)).unwrap();
        let f = Cochain::from_fn(&m, 2, |t| (t[0] * t[1]) % 5);
        assert_eq!(f.get(&[0, 2]), 0);
        assert_eq!(f.get(&[2, 2]), 4);
        assert!(f.coboundary().get(&[0, 1, 2]) == 0);
        assert!(Cochain::from_values(&m, 1, vec![0]).is_err());
    }
}

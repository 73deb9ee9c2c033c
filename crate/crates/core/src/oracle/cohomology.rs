//! `H^k(C, B)` and `Z^k(C, B)` as explicit finite abelian groups.
//!
//! A normalized `k`-cochain is a vector of coordinates, one block per tuple
//! of nonzero elements and one coordinate per cyclic factor of `B`. The
//! computation runs one prime at a time. For the `p`-part of `B`, with
//! factors `Z/p^{a_j}` and `q = max a_j`, everything lives in `R = Z/p^q`:
//!
//! * Scaling the row of `δ_k` for a coordinate of order `p^a` by `p^{q-a}`
//!   turns "`δx` vanishes in `B`" into "`M x = 0` over `R`".
//! * A local Smith form `U M V = diag(p^{e_t})` gives the solution set
//!   `K = V · ⊕ p^{q-e_t} R`, free over the cyclic groups `Z/p^{e_t}` with
//!   coordinates `z_t = (V⁻¹x)_t / p^{q-e_t}`.
//! * Cocycles are `K` modulo the lattice `P` of vectors with every coordinate
//!   divisible by its order; cohomology is `K` modulo `P` plus the columns of
//!   `δ_{k-1}`. In `z` coordinates this is a cokernel, read off from a second
//!   local Smith form.

use crate::cmodule::CModule;
use crate::group::{Elem, FiniteGroup, DEFAULT_ORDER_CAP};

use super::abelian::{decompose, AbelianDecomposition};
use super::cochain::{tuple_at, tuple_count, tuple_index, Cochain};
use super::local::{local_smith, mat_vec, LocalMatrix, LocalRing, LocalSmith};
use super::OracleError;

/// Default bound on the number of entries of a coboundary matrix.
pub const DEFAULT_ENTRY_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyKind {
    Cocycles,
    Classes,
}

#[derive(Clone, Debug)]
struct PrimePart {
    ring: LocalRing,
    /// Factor indices of the decomposition of `B` belonging to this prime.
    idx: Vec<usize>,
    a: Vec<u32>,
    kernel: LocalSmith,
    /// `e_t` per column of the coboundary matrix.
    kernel_exps: Vec<u32>,
    kept: Vec<usize>,
    quotient: LocalSmith,
}

impl PrimePart {
    fn r(&self) -> usize {
        self.idx.len()
    }

    /// `z` coordinates of a kernel vector.
    fn z_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        let ring = &self.ring;
        let y = mat_vec(ring, &self.kernel.v_inv, x);
        self.kept
            .iter()
            .map(|&t| {
                let step = ring.p.pow(ring.k - self.kernel_exps[t]);
                (y[t] % step == 0).then(|| y[t] / step)
            })
            .collect()
    }

    fn class_digits(&self, z: &[u64]) -> Vec<u64> {
        let w = mat_vec(&self.ring, &self.quotient.u, z);
        w.iter().zip(&self.quotient.exponents).filter(|(_, &f)| f > 0).map(|(&wi, &f)| wi % self.ring.p.pow(f)).collect()
    }

    fn kernel_vector(&self, digits: &[u64]) -> Vec<u64> {
        let ring = &self.ring;
        let mut w = vec![0; self.kept.len()];
        let mut d = digits.iter();
        for (i, &f) in self.quotient.exponents.iter().enumerate() {
            if f > 0 {
                w[i] = *d.next().expect("digit count");
            }
        }
        let z = mat_vec(ring, &self.quotient.u_inv, &w);
        let mut y = vec![0; self.kernel_exps.len()];
        for (&t, &zt) in self.kept.iter().zip(&z) {
            y[t] = ring.mul(zt, ring.pow_p(ring.k - self.kernel_exps[t]));
        }
        mat_vec(ring, &self.kernel.v, &y)
    }
}

/// Cohomology (or cocycles) of a module in one degree, as a product of
/// cyclic groups `Z/p^f` with mixed-radix element indices.
#[derive(Clone, Debug)]
pub struct Cohomology {
    module: CModule,
    degree: usize,
    kind: CohomologyKind,
    dec: AbelianDecomposition,
    parts: Vec<PrimePart>,
    factors: Vec<(u64, u32)>,
    /// `log_p` of the order of the cocycle group, per prime.
    cocycle_logs: Vec<(u64, u32)>,
}

/// The coboundary matrix `δ_k` on the `p`-coordinates, over `R`.
fn coboundary_matrix(module: &CModule, dec: &AbelianDecomposition, idx: &[usize], ring: &LocalRing, k: usize) -> LocalMatrix {
    let c = module.base();
    let n = c.order();
    let r = idx.len();
    let (rows, cols) = (tuple_count(n, k + 1) * r, tuple_count(n, k) * r);
    let mut m = vec![vec![0u64; cols]; rows];
    let act: Vec<Vec<Vec<u64>>> = c
        .elements()
        .map(|g| {
            idx.iter()
                .map(|&i| idx.iter().map(|&j| dec.coords(module.act(g, dec.generators()[j]))[i]).collect())
                .collect()
        })
        .collect();
    let minus = |x: u64| ring.sub(0, x);
    for row_t in 0..tuple_count(n, k + 1) {
        let t = tuple_at(n, k + 1, row_t);
        let tail = tuple_index(n, &t[1..]).expect("nonzero tail");
        for i in 0..r {
            for j in 0..r {
                let e = &mut m[row_t * r + i][tail * r + j];
                *e = ring.add(*e, act[t[0]][i][j] % ring.modulus);
            }
        }
        let mut merged = Vec::with_capacity(k);
        for pos in 0..k {
            merged.clear();
            merged.extend_from_slice(&t[..pos]);
            merged.push(c.op(t[pos], t[pos + 1]));
            merged.extend_from_slice(&t[pos + 2..]);
            if let Some(col_t) = tuple_index(n, &merged) {
                for i in 0..r {
                    let e = &mut m[row_t * r + i][col_t * r + i];
                    *e = if pos % 2 == 0 { ring.sub(*e, 1) } else { ring.add(*e, 1) };
                }
            }
        }
        let head = tuple_index(n, &t[..k]).expect("nonzero head");
        for i in 0..r {
            let e = &mut m[row_t * r + i][head * r + i];
            *e = if k % 2 == 0 { ring.add(*e, minus(1)) } else { ring.add(*e, 1) };
        }
    }
    m
}

impl Cohomology {
    pub fn classes(module: &CModule, degree: usize) -> Result<Self, OracleError> {
        Self::compute(module, degree, CohomologyKind::Classes, DEFAULT_ENTRY_CAP)
    }

    pub fn cocycles(module: &CModule, degree: usize) -> Result<Self, OracleError> {
        Self::compute(module, degree, CohomologyKind::Cocycles, DEFAULT_ENTRY_CAP)
    }

    pub fn compute(module: &CModule, degree: usize, kind: CohomologyKind, cap: usize) -> Result<Self, OracleError> {
        let dec = decompose(module.coeff())?;
        let n = module.base().order();
        let r_total = dec.factors().len();
        let entries = tuple_count(n, degree + 1).saturating_mul(tuple_count(n, degree)).saturating_mul(r_total * r_total);
        if entries > cap {
            return Err(OracleError::SizeCap { entries, cap });
        }
        let mut parts = Vec::new();
        let mut factors = Vec::new();
        let mut cocycle_logs = Vec::new();
        for p in dec.primes() {
            let idx = dec.factors_of(p);
            let a: Vec<u32> = idx.iter().map(|&i| dec.factors()[i].1).collect();
            let q = *a.iter().max().expect("prime has factors");
            let ring = LocalRing::new(p, q);
            let r = idx.len();
            let cols = tuple_count(n, degree) * r;
            let mut m = coboundary_matrix(module, &dec, &idx, &ring, degree);
            for (row_i, row) in m.iter_mut().enumerate() {
                let scale = ring.pow_p(q - a[row_i % r]);
                for x in row.iter_mut() {
                    *x = ring.mul(*x, scale);
                }
            }
            let kernel = local_smith(ring, &m, cols);
            let kernel_exps: Vec<u32> = (0..cols).map(|t| if t < m.len() { kernel.exponents[t] } else { q }).collect();
            let kept: Vec<usize> = (0..cols).filter(|&t| kernel_exps[t] > 0).collect();

            // generators of the relations inside the kernel
            let mut relations: Vec<Vec<u64>> = Vec::new();
            for col in 0..cols {
                let aj = a[col % r];
                if aj < q {
                    let mut v = vec![0; cols];
                    v[col] = ring.pow_p(aj);
                    relations.push(v);
                }
            }
            if kind == CohomologyKind::Classes && degree > 0 {
                let prev = coboundary_matrix(module, &dec, &idx, &ring, degree - 1);
                for j in 0..prev.first().map_or(0, Vec::len) {
                    relations.push(prev.iter().map(|row| row[j]).collect());
                }
            }
            let part_stub =
                PrimePart { ring, idx: idx.clone(), a: a.clone(), kernel, kernel_exps, kept, quotient: LocalSmith::empty(ring) };
            let dim = part_stub.kept.len();
            let mut rel: LocalMatrix = (0..dim)
                .map(|i| {
                    let mut row = vec![0; dim];
                    row[i] = ring.pow_p(part_stub.kernel_exps[part_stub.kept[i]]);
                    row
                })
                .collect();
            for v in &relations {
                let z = part_stub.z_of(v).expect("relation lies in the kernel");
                for (row, zi) in rel.iter_mut().zip(z) {
                    row.push(zi);
                }
            }
            let total_cols = dim + relations.len();
            let quotient = local_smith(ring, &rel, total_cols);
            let part = PrimePart { quotient, ..part_stub };

            let kernel_log: u32 = part.kept.iter().map(|&t| part.kernel_exps[t]).sum();
            let p_log: u32 = (0..cols).map(|col| q - a[col % r]).sum();
            cocycle_logs.push((p, kernel_log - p_log));
            factors.extend(part.quotient.exponents.iter().filter(|&&f| f > 0).map(|&f| (p, f)));
            parts.push(part);
        }
        Ok(Cohomology { module: module.clone(), degree, kind, dec, parts, factors, cocycle_logs })
    }

    pub fn module(&self) -> &CModule {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> CohomologyKind {
        self.kind
    }

    /// Prime-power cyclic factors `(p, f)` for `Z/p^f`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Orders of the cyclic factors.
    pub fn invariants(&self) -> Vec<u128> {
        self.factors.iter().map(|&(p, f)| u128::from(p).pow(f)).collect()
    }

    pub fn order(&self) -> u128 {
        self.invariants().iter().product()
    }

    /// Order of the group of cocycles in this degree.
    pub fn cocycle_order(&self) -> Option<u128> {
        self.cocycle_logs.iter().try_fold(1u128, |acc, &(p, l)| acc.checked_mul(u128::from(p).checked_pow(l)?))
    }

    /// Order of the group of coboundaries.
    pub fn coboundary_order(&self) -> Option<u128> {
        match self.kind {
            CohomologyKind::Cocycles => None,
            CohomologyKind::Classes => Some(self.cocycle_order()? / self.order()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    fn radix(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, f)| p.pow(f)).collect()
    }

    pub fn digits_of(&self, h: Elem) -> Vec<u64> {
        let radix = self.radix();
        let mut rest = h as u64;
        let mut d = vec![0; radix.len()];
        for i in (0..radix.len()).rev() {
            d[i] = rest % radix[i];
            rest /= radix[i];
        }
        d
    }

    pub fn element_of(&self, digits: &[u64]) -> Elem {
        self.radix().iter().zip(digits).fold(0u64, |acc, (&m, &d)| acc * m + d % m) as Elem
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let sum: Vec<u64> = self.digits_of(x).iter().zip(self.digits_of(y)).map(|(a, b)| a + b).collect();
        self.element_of(&sum)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let radix = self.radix();
        let d: Vec<u64> = self.digits_of(x).iter().zip(&radix).map(|(&a, &m)| (m - a) % m).collect();
        self.element_of(&d)
    }

    /// The class (or, for cocycles, the coordinates) of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<Elem, OracleError> {
        if f.degree() != self.degree {
            return Err(OracleError::DegreeMismatch { expected: self.degree, found: f.degree() });
        }
        if f.module() != &self.module {
            return Err(OracleError::ModuleMismatch);
        }
        if !f.is_cocycle() {
            return Err(OracleError::NotACocycle);
        }
        let mut digits = Vec::new();
        for part in &self.parts {
            let r = part.r();
            let mut x = Vec::with_capacity(f.values().len() * r);
            for &v in f.values() {
                x.extend(part.idx.iter().map(|&i| self.dec.coords(v)[i]));
            }
            let z = part.z_of(&x).ok_or(OracleError::NotACocycle)?;
            digits.extend(part.class_digits(&z));
        }
        Ok(self.element_of(&digits))
    }

    /// A cocycle representing `h`; zero represents zero.
    pub fn representative(&self, h: Elem) -> Result<Cochain, OracleError> {
        if (h as u128) >= self.order() {
            return Err(OracleError::ClassOutOfRange(h));
        }
        let digits = self.digits_of(h);
        let n = self.module.base().order();
        let count = tuple_count(n, self.degree);
        let mut coords = vec![vec![0u64; self.dec.factors().len()]; count];
        let mut offset = 0;
        for part in &self.parts {
            let width = part.quotient.exponents.iter().filter(|&&f| f > 0).count();
            let x = part.kernel_vector(&digits[offset..offset + width]);
            offset += width;
            let r = part.r();
            for (t, c) in coords.iter_mut().enumerate() {
                for (j, &i) in part.idx.iter().enumerate() {
                    c[i] = x[t * r + j] % part.ring.p.pow(part.a[j]);
                }
            }
        }
        let values = coords.iter().map(|c| self.dec.element(c)).collect();
        Cochain::from_values(&self.module, self.degree, values)
    }

    /// Every element paired with a representative, in index order.
    pub fn representatives(&self) -> Result<Vec<Cochain>, OracleError> {
        let order = usize::try_from(self.order()).map_err(|_| OracleError::GroupTooLarge { order: self.order() })?;
        (0..order).map(|h| self.representative(h)).collect()
    }

    /// The group as a Cayley table.
    pub fn group(&self) -> Result<FiniteGroup, OracleError> {
        let order = self.order();
        if order > DEFAULT_ORDER_CAP as u128 {
            return Err(OracleError::GroupTooLarge { order });
        }
        Ok(FiniteGroup::from_fn(order as usize, |x, y| self.add(x, y)))
    }
}

/// A cocycle together with its class in a computed cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleClass {
    pub representative: Cochain,
    pub class: Elem,
}

impl Cohomology {
    pub fn classify(&self, f: &Cochain) -> Result<CocycleClass, OracleError> {
        Ok(CocycleClass { class: self.class_of(f)?, representative: f.clone() })
    }
}

/// `Z¹(C, B)`, the crossed homomorphisms under pointwise addition.
pub fn z1(module: &CModule) -> Result<FiniteGroup, OracleError> {
    Cohomology::cocycles(module, 1)?.group()
}

/// Every crossed homomorphism `C -> B`, indexed as the elements of [`z1`].
pub fn crossed_homomorphisms(module: &CModule) -> Result<Vec<Cochain>, OracleError> {
    Cohomology::cocycles(module, 1)?.representatives()
}

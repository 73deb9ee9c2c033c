//! Primary decomposition of a finite abelian group given by its table.

use crate::group::{Elem, FiniteGroup};

use super::smith::{smith, Matrix, SmithError};

/// `B ≅ ⊕ Z/p^a`, one cyclic factor per entry of `factors`, with explicit
/// generators and coordinates for every element.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    group: FiniteGroup,
    /// `(p, a)` for a factor `Z/p^a`, grouped by increasing prime.
    factors: Vec<(u64, u32)>,
    generators: Vec<Elem>,
    coords: Vec<Vec<u64>>,
    by_coords: Vec<Elem>,
}

impl AbelianDecomposition {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn coords(&self, b: Elem) -> &[u64] {
        &self.coords[b]
    }

    /// The element with the given coordinates (each reduced mod its factor).
    pub fn element(&self, coords: &[u64]) -> Elem {
        let mut idx = 0usize;
        for (&(p, a), &c) in self.factors.iter().zip(coords) {
            let m = p.pow(a);
            idx = idx * m as usize + (c % m) as usize;
        }
        self.by_coords[idx]
    }

    /// Indices of the factors belonging to the prime `p`.
    pub fn factors_of(&self, p: u64) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.factors[i].0 == p).collect()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.0).collect();
        ps.dedup();
        ps
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n % p == 0 {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Decomposes an abelian group. Relations among greedy generators form a
/// triangular integer matrix whose Smith form gives the invariant factors;
/// each cyclic factor is then split into prime powers.
pub fn decompose(b: &FiniteGroup) -> Result<AbelianDecomposition, SmithError> {
    debug_assert!(b.is_abelian());
    let gens = b.greedy_generators();
    let r = gens.len();
    // coefficient vectors of the elements reached so far
    let mut span: Vec<Option<Vec<i64>>> = vec![None; b.order()];
    span[0] = Some(vec![0; r]);
    let mut relations: Matrix = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        let mut m = 1i64;
        let mut x = g;
        while span[x].is_none() {
            x = b.op(x, g);
            m += 1;
        }
        let mut row = span[x].clone().expect("reached");
        for c in row.iter_mut() {
            *c = -*c;
        }
        row[i] += m;
        relations.push(row);
        // extend the span by multiples of g
        let reached: Vec<Elem> = b.elements().filter(|&y| span[y].is_some()).collect();
        for y in reached {
            let mut z = y;
            let mut coeff = span[y].clone().expect("reached");
            for _ in 1..m {
                z = b.op(z, g);
                coeff[i] += 1;
                if span[z].is_none() {
                    span[z] = Some(coeff.clone());
                }
            }
        }
    }
    let sd = smith(&relations)?;
    // new cyclic generators h_i = Σ_k (V⁻¹)_{ik} g_k of order d_i
    let mut cyclic: Vec<(u64, Elem)> = Vec::new();
    for (i, &d) in sd.invariant_factors().iter().enumerate() {
        if d == 1 {
            continue;
        }
        let h = b.sum((0..r).map(|k| b.multiple(gens[k], sd.v_inv[i][k])));
        cyclic.push((d as u64, h));
    }
    let mut factors: Vec<(u64, u32, Elem)> = Vec::new();
    for &(d, h) in &cyclic {
        for (p, a) in factorize(d) {
            let pa = p.pow(a);
            factors.push((p, a, b.multiple(h, (d / pa) as i64)));
        }
    }
    factors.sort_by_key(|&(p, a, _)| (p, a));
    let radix: Vec<u64> = factors.iter().map(|&(p, a, _)| p.pow(a)).collect();
    let total: u64 = radix.iter().product();
    debug_assert_eq!(total as usize, b.order());
    let mut coords = vec![Vec::new(); b.order()];
    let mut by_coords = vec![0; b.order()];
    for idx in 0..total {
        let mut rest = idx;
        let mut c = vec![0u64; radix.len()];
        for i in (0..radix.len()).rev() {
            c[i] = rest % radix[i];
            rest /= radix[i];
        }
        let x = b.sum(factors.iter().zip(&c).map(|(&(_, _, g), &ci)| b.multiple(g, ci as i64)));
        coords[x] = c;
        by_coords[idx as usize] = x;
    }
    Ok(AbelianDecomposition {
        group: b.clone(),
        factors: factors.iter().map(|&(p, a, _)| (p, a)).collect(),
        generators: factors.iter().map(|&(_, _, g)| g).collect(),
        coords,
        by_coords,
    })
}

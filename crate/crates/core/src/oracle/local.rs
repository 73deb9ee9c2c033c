//! Smith normal form over the local ring `Z/p^k`.
//!
//! Every nonzero element is `p^v · unit`, so the entry of least valuation
//! divides everything else in the remaining block and elimination never
//! needs a Euclidean loop.

/// Arithmetic modulo `p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
}

impl LocalRing {
    pub fn new(p: u64, k: u32) -> Self {
        LocalRing { p, k, modulus: p.pow(k) }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.modulus
    }

    /// `v` with `x = p^v · unit`; `k` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit.
    pub fn inverse(&self, u: u64) -> u64 {
        let (mut r0, mut r1) = (self.modulus as i64, (u % self.modulus) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "not a unit");
        self.reduce(t0)
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            self.p.pow(e)
        }
    }
}

pub type LocalMatrix = Vec<Vec<u64>>;

/// `U · A · V = D` over `Z/p^k`, with `D` diagonal with entries `p^{e_i}`
/// (zero counting as `p^k`) and `e_i` nondecreasing.
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub ring: LocalRing,
    pub u: LocalMatrix,
    pub u_inv: LocalMatrix,
    pub v: LocalMatrix,
    pub v_inv: LocalMatrix,
    /// Exponents of the diagonal, one per row (rows past the number of
    /// columns get `k`).
    pub exponents: Vec<u32>,
}

impl LocalSmith {
    /// The decomposition of a matrix with no rows and no columns.
    pub fn empty(ring: LocalRing) -> Self {
        LocalSmith { ring, u: Vec::new(), u_inv: Vec::new(), v: Vec::new(), v_inv: Vec::new(), exponents: Vec::new() }
    }
}

fn identity(n: usize) -> LocalMatrix {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn local_smith(ring: LocalRing, a: &LocalMatrix, cols: usize) -> LocalSmith {
    let rows = a.len();
    let mut m: LocalMatrix = a.iter().map(|r| r.iter().map(|&x| x % ring.modulus).collect()).collect();
    let (mut u, mut u_inv, mut v, mut v_inv) = (identity(rows), identity(rows), identity(cols), identity(cols));
    let mut exponents = vec![ring.k; rows];
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                let val = ring.valuation(m[i][j]);
                if val < ring.k && best.is_none_or(|b| val < b.0) {
                    best = Some((val, i, j));
                    if val == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        exponents[t] = val;
        // move the pivot to (t, t)
        m.swap(t, pi);
        u.swap(t, pi);
        for row in u_inv.iter_mut() {
            row.swap(t, pi);
        }
        for row in m.iter_mut().chain(v.iter_mut()) {
            row.swap(t, pj);
        }
        v_inv.swap(t, pj);
        // scale the pivot row so the pivot is exactly p^val
        let unit = m[t][t] / ring.p.pow(val);
        let unit_inv = ring.inverse(unit);
        for x in m[t].iter_mut().chain(u[t].iter_mut()) {
            *x = ring.mul(*x, unit_inv);
        }
        for row in u_inv.iter_mut() {
            row[t] = ring.mul(row[t], unit);
        }
        let pivot = ring.p.pow(val);
        for i in 0..rows {
            if i == t || m[i][t] == 0 {
                continue;
            }
            // row_i -= c · row_t, with c = m[i][t] / p^val
            let c = m[i][t] / pivot;
            let (mt, ut) = (m[t].clone(), u[t].clone());
            for (x, &y) in m[i].iter_mut().zip(&mt) {
                *x = ring.sub(*x, ring.mul(c, y));
            }
            for (x, &y) in u[i].iter_mut().zip(&ut) {
                *x = ring.sub(*x, ring.mul(c, y));
            }
            for row in u_inv.iter_mut() {
                row[t] = ring.add(row[t], ring.mul(c, row[i]));
            }
        }
        for j in t + 1..cols {
            if m[t][j] == 0 {
                continue;
            }
            // col_j -= c · col_t
            let c = m[t][j] / pivot;
            for row in m.iter_mut().chain(v.iter_mut()) {
                row[j] = ring.sub(row[j], ring.mul(c, row[t]));
            }
            let vj = v_inv[j].clone();
            for (x, &y) in v_inv[t].iter_mut().zip(&vj) {
                *x = ring.add(*x, ring.mul(c, y));
            }
        }
    }
    LocalSmith { ring, u, u_inv, v, v_inv, exponents }
}

pub fn mat_vec(ring: &LocalRing, m: &LocalMatrix, x: &[u64]) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(x).fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(ring: &LocalRing, a: &LocalMatrix, b: &LocalMatrix) -> LocalMatrix {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| (0..cols).map(|j| row.iter().enumerate().fold(0, |acc, (k, &x)| ring.add(acc, ring.mul(x, b[k][j])))).collect())
            .collect()
    }

    fn check(ring: LocalRing, a: LocalMatrix) {
        let cols = a.first().map_or(0, Vec::len);
        let s = local_smith(ring, &a, cols);
        let d = mat_mul(&ring, &mat_mul(&ring, &s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expected = if i == j { ring.pow_p(s.exponents[i]) } else { 0 };
                assert_eq!(x, expected, "entry ({i},{j})");
            }
        }
        assert_eq!(mat_mul(&ring, &s.u, &s.u_inv), identity(a.len()));
        assert_eq!(mat_mul(&ring, &s.v, &s.v_inv), identity(cols));
        assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn inverses_mod_prime_powers() {
        let r = LocalRing::new(3, 2);
        for u in [1, 2, 4, 5, 7, 8] {
            assert_eq!(r.mul(u, r.inverse(u)), 1);
        }
        assert_eq!(r.valuation(0), 2);
        assert_eq!(r.valuation(6), 1);
    }

    #[test]
    fn local_forms() {
        check(LocalRing::new(2, 3), vec![vec![2, 4, 6], vec![4, 0, 3], vec![0, 0, 0]]);
        check(LocalRing::new(3, 2), vec![vec![3, 6], vec![0, 3], vec![1, 1]]);
        check(LocalRing::new(2, 1), vec![vec![1, 1, 0, 1], vec![0, 1, 1, 1]]);
        check(LocalRing::new(5, 1), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn random_local_forms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let ring = LocalRing::new(p, k);
            for _ in 0..50 {
                let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
                let a = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..ring.modulus)).collect()).collect();
                check(ring, a);
            }
        }
    }
}

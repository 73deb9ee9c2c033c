//! Smith normal form over the integers.

use thiserror::Error;

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmithError {
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("matrix rows have different lengths")]
    Ragged,
}

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal, its nonzero
/// diagonal entries positive and each dividing the next. `V⁻¹` is kept as
/// well, since it converts coordinates back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl SmithDecomposition {
    /// The diagonal of `S`, padded with zeros to `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.s.len().min(self.s.first().map_or(0, Vec::len));
        (0..n).map(|i| self.s[i][i]).collect()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Result<Matrix, SmithError> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i64, |acc, k| {
                        row[k].checked_mul(b[k][j]).and_then(|t| acc.checked_add(t)).ok_or(SmithError::Overflow)
                    })
                })
                .collect()
        })
        .collect()
}

struct Elim {
    a: Matrix,
    u: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

fn axpy(dst: &mut [i64], src: &[i64], c: i64) -> Result<(), SmithError> {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = s.checked_mul(c).and_then(|t| d.checked_sub(t)).ok_or(SmithError::Overflow)?;
    }
    Ok(())
}

impl Elim {
    /// `row[dst] -= c · row[src]`
    fn row_op(&mut self, dst: usize, src: usize, c: i64) -> Result<(), SmithError> {
        let (s, s_u) = (self.a[src].clone(), self.u[src].clone());
        axpy(&mut self.a[dst], &s, c)?;
        axpy(&mut self.u[dst], &s_u, c)
    }

    /// `col[dst] -= c · col[src]`
    fn col_op(&mut self, dst: usize, src: usize, c: i64) -> Result<(), SmithError> {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row[dst] = row[src].checked_mul(c).and_then(|t| row[dst].checked_sub(t)).ok_or(SmithError::Overflow)?;
            }
        }
        // V⁻¹ picks up the inverse operation on rows: row[src] += c · row[dst].
        let d = self.v_inv[dst].clone();
        axpy(&mut self.v_inv[src], &d, -c)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -*x;
        }
    }
}

pub fn smith(a: &Matrix) -> Result<SmithDecomposition, SmithError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(SmithError::Ragged);
    }
    let mut e = Elim { a: a.clone(), u: identity(rows), v: identity(cols), v_inv: identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| e.a[i][j] != 0)
                .min_by_key(|&(i, j)| (e.a[i][j].unsigned_abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            e.swap_rows(t, pi);
            e.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = e.a[i][t].div_euclid(e.a[t][t]);
                e.row_op(i, t, q)?;
                clean &= e.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = e.a[t][j].div_euclid(e.a[t][t]);
                e.col_op(j, t, q)?;
                clean &= e.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility: fold in any row whose entries the pivot misses
            let d = e.a[t][t];
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| e.a[i][j] % d != 0)) {
                e.row_op(t, i, -1)?;
                continue;
            }
            break;
        }
        if e.a[t][t] < 0 {
            e.negate_row(t);
        }
    }
    Ok(SmithDecomposition { u: e.u, s: e.a, v: e.v, v_inv: e.v_inv })
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &Matrix) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m.last().and_then(|r| r.last()).copied().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_diagonal_chain(s: &Matrix) -> bool {
        let diag: Vec<i64> = (0..s.len().min(s.first().map_or(0, Vec::len))).map(|i| s[i][i]).collect();
        let off_zero = s.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0));
        let chain = diag.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 });
        off_zero && chain && diag.iter().all(|&d| d >= 0)
    }

    #[test]
    fn small_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = smith(&a).unwrap();
        assert_eq!(d.invariant_factors(), vec![2, 6, 12]);
        assert_eq!(mul(&mul(&d.u, &a).unwrap(), &d.v).unwrap(), d.s);
    }

    #[test]
    fn presentation_of_z2_times_z4() {
        // Z^2 / <(2, 0), (2, 4)>: invariant factors 2, 4
        let a = vec![vec![2, 0], vec![2, 4]];
        assert_eq!(smith(&a).unwrap().invariant_factors(), vec![2, 4]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&identity(4)), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![2, 3], vec![4, 6]]), 0);
    }

    proptest! {
        #[test]
        fn decomposition_properties(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-20i64..20, 16)) {
            let a: Matrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let d = smith(&a).unwrap();
            prop_assert_eq!(mul(&mul(&d.u, &a).unwrap(), &d.v).unwrap(), d.s.clone());
            prop_assert!(is_diagonal_chain(&d.s));
            prop_assert_eq!(determinant(&d.u).abs(), 1);
            prop_assert_eq!(determinant(&d.v).abs(), 1);
            prop_assert_eq!(mul(&d.v, &d.v_inv).unwrap(), identity(cols));
        }
    }
}

//! Prime-field arithmetic and small dense matrices over `F_q`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest matrix size handled by the brute-force counters.
pub const MAX_DIM: usize = 6;

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

pub fn check_prime(q: u64) -> Result<u32> {
    if is_prime(q) && q < 1 << 15 {
        Ok(q as u32)
    } else {
        Err(Error::NotPrime(q))
    }
}

pub fn inv(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    // Fermat: a^(q-2).
    let mut result = 1u64;
    let mut base = a as u64 % q as u64;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    result as u32
}

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in place,
/// drops zero rows, and returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<u32>>, ncols: usize, q: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = inv(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = (*x * s) % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = f * rows[r][j] % q;
                    rows[i][j] = (rows[i][j] + q - sub) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank_of(rows: &[Vec<u32>], ncols: usize, q: u32) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols, q).len()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows.
pub fn nullspace(rows: &[Vec<u32>], ncols: usize, q: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols, q);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = (q - row[f]) % q;
            }
            v
        })
        .collect()
}

/// Square matrix over `F_q` acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    n: usize,
    q: u32,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zero(n: usize, q: u32) -> Self {
        FieldMatrix { n, q, data: vec![0; n * n] }
    }

    pub fn identity(n: usize, q: u32) -> Self {
        let mut m = Self::zero(n, q);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries listed row by row, reduced mod `q`.
    pub fn from_entries(n: usize, q: u32, entries: &[u32]) -> Self {
        assert_eq!(entries.len(), n * n);
        FieldMatrix { n, q, data: entries.iter().map(|x| x % q).collect() }
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let flat: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_entries(n, q, &flat)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.n + j] = x % self.q;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        let n = self.n;
        let q = self.q;
        let mut out = FieldMatrix::zero(n, q);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = (out.data[i * n + j] + a * other.data[k * n + j]) % q;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| (acc + self.get(i, j) * v[j]) % self.q)
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> FieldMatrix {
        let mut out = FieldMatrix::identity(self.n, self.q);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows(), self.n, self.q)
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        let n = self.n;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, 2 * n, self.q);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let rows: Vec<Vec<u32>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(FieldMatrix::from_rows(self.q, &rows))
    }

    /// Sub-block with rows and columns in `range`.
    pub fn block(&self, range: std::ops::Range<usize>) -> FieldMatrix {
        let rows: Vec<Vec<u32>> = range
            .clone()
            .map(|i| range.clone().map(|j| self.get(i, j)).collect())
            .collect();
        let m = range.len();
        let flat: Vec<u32> = rows.into_iter().flatten().collect();
        FieldMatrix { n: m, q: self.q, data: flat }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}{:?}", self.q, self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(check_prime(4).is_err());
    }

    #[test]
    fn inverses() {
        for q in [2, 3, 5, 7, 11] {
            for a in 1..q {
                assert_eq!(a * inv(a, q) % q, 1);
            }
        }
    }

    #[test]
    fn matrix_inverse_and_rank() {
        let m = FieldMatrix::from_entries(3, 5, &[1, 2, 0, 0, 1, 4, 3, 0, 2]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(3, 5));
        let sing = FieldMatrix::from_entries(2, 3, &[1, 2, 2, 1]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]];
        let ker = nullspace(&rows, 4, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &rows {
                let dot: u32 = r.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % 3;
                assert_eq!(dot, 0);
            }
        }
    }
}

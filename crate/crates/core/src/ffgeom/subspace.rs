//! Subspaces of `F_q^n` in reduced row echelon form.

use crate::error::{Error, Result};
use crate::ffgeom::field::{row_reduce, FieldMatrix};
use crate::ffgeom::Budget;

/// A subspace represented by its unique reduced echelon basis, so equal
/// subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    q: u32,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

/// The operator in a basis adapted to an invariant subspace `X`:
/// `restriction` acts on `X`, `quotient` on `V / X`.
#[derive(Debug, Clone)]
pub struct AdaptedBlocks {
    pub restriction: FieldMatrix,
    pub quotient: FieldMatrix,
}

impl Subspace {
    pub fn span(n: usize, q: u32, vectors: &[Vec<u32>]) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|x| x % q).collect()).collect();
        let pivots = row_reduce(&mut rows, n, q);
        Subspace { n, q, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let q = self.q;
        let mut r: Vec<u32> = v.iter().map(|x| x % q).collect();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p];
            if c != 0 {
                for j in 0..self.n {
                    r[j] = (r[j] + q - c * b[j] % q) % q;
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }

    pub fn is_invariant(&self, t: &FieldMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&t.apply(b)))
    }

    /// Blocks of `t` in the basis `(echelon basis of X, unit vectors at non-pivot columns)`.
    ///
    /// Returns `None` when `X` is not `t`-invariant.
    pub fn adapted_blocks(&self, t: &FieldMatrix) -> Option<AdaptedBlocks> {
        let (n, m, q) = (self.n, self.dim(), self.q);
        let mut cols: Vec<Vec<u32>> = self.basis.clone();
        cols.extend((0..n).filter(|c| !self.pivots.contains(c)).map(|c| {
            let mut e = vec![0; n];
            e[c] = 1;
            e
        }));
        let mut p = FieldMatrix::zero(n, q);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                p.set(i, j, col[i]);
            }
        }
        let conj = p.inverse().expect("adapted basis is a basis").mul(t).mul(&p);
        let lower_left_zero = (m..n).all(|i| (0..m).all(|j| conj.get(i, j) == 0));
        if !lower_left_zero {
            return None;
        }
        Some(AdaptedBlocks { restriction: conj.block(0..m), quotient: conj.block(m..n) })
    }
}

/// Gaussian binomial `[n choose m]_q`.
pub fn gaussian_binomial(n: usize, m: usize, q: u64) -> u128 {
    if m > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..m {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Echelon patterns of `m`-dimensional subspaces of `F_q^n`: pivot columns and
/// the free positions `(row, col)` of each pattern.
pub(crate) fn echelon_patterns(n: usize, m: usize) -> Vec<(Vec<usize>, Vec<(usize, usize)>)> {
    fn combos(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            combos(n, m, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut pivot_sets = Vec::new();
    combos(n, m, 0, &mut Vec::new(), &mut pivot_sets);
    pivot_sets
        .into_iter()
        .map(|pivots| {
            let free = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| {
                    let piv = pivots.clone();
                    ((p + 1)..n).filter(move |c| !piv.contains(c)).map(move |c| (row, c))
                })
                .collect();
            (pivots, free)
        })
        .collect()
}

/// Calls `visit` on every subspace with the given echelon pattern.
pub(crate) fn for_each_in_pattern(
    n: usize,
    q: u32,
    pivots: &[usize],
    free: &[(usize, usize)],
    mut visit: impl FnMut(Subspace),
) {
    let m = pivots.len();
    let mut digits = vec![0u32; free.len()];
    loop {
        let mut basis = vec![vec![0u32; n]; m];
        for (row, &p) in pivots.iter().enumerate() {
            basis[row][p] = 1;
        }
        for (&(row, col), &d) in free.iter().zip(&digits) {
            basis[row][col] = d;
        }
        visit(Subspace { n, q, basis, pivots: pivots.to_vec() });
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Every `m`-dimensional subspace of `F_q^n`, once each.
pub fn enumerate_subspaces(n: usize, m: usize, q: u32, budget: Budget) -> Result<Vec<Subspace>> {
    if m > n || n > crate::ffgeom::field::MAX_DIM {
        return Err(Error::SizeCap(format!("subspaces of dimension {m} in F_q^{n}")));
    }
    budget.check(gaussian_binomial(n, m, q as u64) * (n * n).max(1) as u128)?;
    let mut out = Vec::new();
    for (pivots, free) in echelon_patterns(n, m) {
        for_each_in_pattern(n, q, &pivots, &free, |s| out.push(s));
    }
    Ok(out)
}

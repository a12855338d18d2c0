//! An explicit invariant subspace realizing the Cartan component.
//!
//! For `lambda = mu1 + mu2` and `t` of Jordan type `lambda`, write `e_i^j` for the
//! `i`-th chain vector of the `j`-th Jordan block (`t e_i^j = e_{i-1}^j`). The span
//! `X` of the `e_i^j` with `j` in one of the intervals
//! `(lambda_{k+1}, mu1_k + mu2_{k+1}]`, `k >= i`, is `t`-invariant, and `t` has type
//! `mu1` on `X` and type `mu2` on `V / X`.

use crate::error::{Error, Result};
use crate::ffgeom::field::MAX_DIM;
use crate::ffgeom::nilpotent::{jordan_matrix, jordan_type};
use crate::ffgeom::subspace::Subspace;
use crate::weights::Partition;

/// Indices `(i, j)` (1-based chain position and block number) spanning the witness.
pub fn witness_indices(mu1: &Partition, mu2: &Partition) -> Result<Vec<(usize, usize)>> {
    let n = mu1.len().max(mu2.len());
    let (mu1, mu2) = (mu1.with_len(n)?, mu2.with_len(n)?);
    let lambda = mu1.checked_add(&mu2)?;
    // 1-based part access with zeros beyond the end.
    let part = |p: &Partition, k: usize| p.get(k - 1) as usize;
    let mut out = Vec::new();
    let blocks = lambda.get(0) as usize;
    for j in 1..=blocks {
        let height = (1..=n).filter(|&i| part(&lambda, i) >= j).count();
        for i in 1..=height {
            let inside = (i..=n).any(|k| {
                let lo = part(&lambda, k + 1);
                let hi = part(&mu1, k) + part(&mu2, k + 1);
                lo < j && j <= hi
            });
            if inside {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Builds the witness subspace inside `F_q^{|lambda|}` for `t = jordan_matrix(mu1 + mu2)`
/// and checks invariance and both Jordan types.
pub fn lemma_sum_witness(mu1: &Partition, mu2: &Partition, q: u32) -> Result<Subspace> {
    let n = mu1.len().max(mu2.len());
    let lambda = mu1.with_len(n)?.checked_add(&mu2.with_len(n)?)?;
    let dim = lambda.size() as usize;
    if dim > MAX_DIM {
        return Err(Error::SizeCap(format!("|mu1| + |mu2| = {dim} > {MAX_DIM}")));
    }
    let t = jordan_matrix(&lambda, q)?;
    let block_sizes = lambda.conjugate();
    let starts: Vec<usize> = block_sizes
        .parts()
        .iter()
        .scan(0usize, |acc, &s| {
            let start = *acc;
            *acc += s as usize;
            Some(start)
        })
        .collect();
    let vectors: Vec<Vec<u32>> = witness_indices(mu1, mu2)?
        .into_iter()
        .map(|(i, j)| {
            let mut e = vec![0u32; dim];
            e[starts[j - 1] + i - 1] = 1;
            e
        })
        .collect();
    let x = Subspace::span(dim, q, &vectors);
    if x.dim() as u64 != mu1.size() {
        return Err(Error::Witness(format!(
            "witness has dimension {}, expected |mu1| = {}",
            x.dim(),
            mu1.size()
        )));
    }
    let blocks = x
        .adapted_blocks(&t)
        .ok_or_else(|| Error::Witness(format!("witness for {mu1} + {mu2} is not invariant")))?;
    let restricted = jordan_type(&blocks.restriction)?;
    if !restricted.same_shape(mu1) {
        return Err(Error::Witness(format!("restriction has type {restricted}, expected {mu1}")));
    }
    let quotient = jordan_type(&blocks.quotient)?;
    if !quotient.same_shape(mu2) {
        return Err(Error::Witness(format!("quotient has type {quotient}, expected {mu2}")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::enumerate_partitions;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn two_lines_in_zero_operator() {
        let x = lemma_sum_witness(&p("1,0"), &p("1,0"), 2).unwrap();
        assert_eq!(x.dim(), 1);
        assert_eq!(x.basis(), &[vec![1, 0]]);
    }

    #[test]
    fn hook_examples() {
        assert_eq!(lemma_sum_witness(&p("1,1"), &p("1,0"), 3).unwrap().dim(), 2);
        assert_eq!(lemma_sum_witness(&p("2,0"), &p("1,1"), 3).unwrap().dim(), 2);
        assert_eq!(lemma_sum_witness(&p("1,1"), &p("2,0"), 2).unwrap().dim(), 2);
    }

    #[test]
    fn all_small_pairs() {
        for q in [2u32, 3] {
            for n in 1..=3usize {
                for a in 0..=6u32 {
                    for mu1 in enumerate_partitions(n, a) {
                        for mu2 in enumerate_partitions(n, 6 - a) {
                            lemma_sum_witness(&mu1, &mu2, q)
                                .unwrap_or_else(|e| panic!("{mu1} + {mu2}: {e}"));
                        }
                    }
                }
            }
        }
    }
}

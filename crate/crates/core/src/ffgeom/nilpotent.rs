//! Nilpotent matrices, Jordan types and orbit point counts.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffgeom::field::{nullspace, rank_of, FieldMatrix, MAX_DIM};
use crate::ffgeom::Budget;
use crate::weights::Partition;

/// Block-diagonal nilpotent with Jordan type `lambda`.
///
/// Blocks have sizes `conjugate(lambda)` in decreasing order; inside a block the
/// basis is a chain `t e_1 = 0`, `t e_i = e_{i-1}`.
pub fn jordan_matrix(lambda: &Partition, q: u32) -> Result<FieldMatrix> {
    let n = lambda.size() as usize;
    if n > MAX_DIM {
        return Err(Error::SizeCap(format!("|lambda| = {n} > {MAX_DIM}")));
    }
    let mut t = FieldMatrix::zero(n, q);
    let mut start = 0;
    for &size in lambda.conjugate().trimmed() {
        for i in 1..size as usize {
            t.set(start + i - 1, start + i, 1);
        }
        start += size as usize;
    }
    Ok(t)
}

/// `J(t)_i = rank t^{i-1} - rank t^i`, at length `max(n, 1)`.
pub fn jordan_type(t: &FieldMatrix) -> Result<Partition> {
    let n = t.size();
    if n == 0 {
        return Ok(Partition::zero(1));
    }
    let mut ranks = vec![n];
    let mut power = t.clone();
    for _ in 0..n {
        ranks.push(power.rank());
        power = power.mul(t);
    }
    if ranks[n] != 0 {
        return Err(Error::NotNilpotent);
    }
    Partition::new(ranks.windows(2).map(|w| (w[0] - w[1]) as u32).collect())
}

pub fn is_nilpotent(t: &FieldMatrix) -> bool {
    t.pow(t.size()).is_zero()
}

/// Sums `f` over all `n x n` matrices over `F_q`, in parallel over the first row.
pub(crate) fn sum_over_matrices(
    n: usize,
    q: u32,
    f: impl Fn(&FieldMatrix) -> u128 + Sync,
) -> u128 {
    if n == 0 {
        return f(&FieldMatrix::zero(0, q));
    }
    let prefixes = (q as u64).pow(n as u32);
    let rest = (q as u64).pow((n * n - n) as u32);
    (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let mut entries = vec![0u32; n * n];
            let mut x = prefix;
            for e in entries.iter_mut().take(n) {
                *e = (x % q as u64) as u32;
                x /= q as u64;
            }
            let mut acc = 0u128;
            for idx in 0..rest {
                let mut y = idx;
                for e in entries.iter_mut().skip(n) {
                    *e = (y % q as u64) as u32;
                    y /= q as u64;
                }
                acc += f(&FieldMatrix::from_entries(n, q, &entries));
            }
            acc
        })
        .sum()
}

/// Estimated cost of visiting every `n x n` matrix.
pub(crate) fn exhaustive_cost(n: usize, q: u32) -> u128 {
    (q as u128).pow((n * n) as u32) * (n.max(1) as u128).pow(3)
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

/// Basis of the centralizer algebra `{x : xt = tx}`, as flattened `n x n` matrices.
pub fn centralizer_basis(t: &FieldMatrix) -> Vec<Vec<u32>> {
    let (n, q) = (t.size(), t.modulus());
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u32; n * n];
            for k in 0..n {
                // (x t)_{ij} contributes x_{ik} t_{kj}; (t x)_{ij} contributes t_{ik} x_{kj}.
                row[i * n + k] = (row[i * n + k] + t.get(k, j)) % q;
                row[k * n + j] = (row[k * n + j] + q - t.get(i, k)) % q;
            }
            rows.push(row);
        }
    }
    nullspace(&rows, n * n, q)
}

/// How [`count_nilpotent_orbit`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitMethod {
    /// Visit every matrix and compute its Jordan type.
    Exhaustive,
    /// `|GL_n| / |centralizer units|`, units found by enumerating the centralizer algebra.
    Centralizer,
    /// `|GL_n| / |Z(t)^x|` with the centralizer order
    /// `q^{sum lambda_i^2 - sum m_i^2} prod_i |GL_{m_i}|`, where `m_i = lambda_i - lambda_{i+1}`
    /// is the number of Jordan blocks of size exactly `i`.
    Formula,
    /// The first of exhaustive, centralizer, formula that fits the budget.
    Auto,
}

/// `|Z_{GL_n}(t)|` for `t` of Jordan type `lambda`, by the closed formula.
pub fn centralizer_order(lambda: &Partition, q: u32) -> u128 {
    let parts = lambda.parts();
    let sq: u32 = parts.iter().map(|&p| p * p).sum();
    let mults: Vec<u32> = (0..parts.len()).map(|i| parts[i] - lambda.get(i + 1)).collect();
    let msq: u32 = mults.iter().map(|&m| m * m).sum();
    (q as u128).pow(sq - msq) * mults.iter().map(|&m| gl_order(m as usize, q)).product::<u128>()
}

fn centralizer_enumeration_cost(lambda: &Partition, q: u32) -> u128 {
    let n = lambda.size() as usize;
    let d: u32 = lambda.parts().iter().map(|&p| p * p).sum();
    (q as u128).pow(d) * (n.max(1) as u128).pow(3)
}

type OrbitKey = (Vec<u32>, u32, bool);

/// Enumerated orbit sizes, keyed by `(lambda, q, exhaustive?)`; they are pure
/// functions of the key and some are expensive.
fn orbit_cache() -> &'static Mutex<HashMap<OrbitKey, u128>> {
    static CACHE: OnceLock<Mutex<HashMap<OrbitKey, u128>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `#{t in M_n(F_q) : J(t) = lambda}`.
pub fn count_nilpotent_orbit(
    lambda: &Partition,
    q: u32,
    method: OrbitMethod,
    budget: Budget,
) -> Result<u128> {
    let n = lambda.size() as usize;
    if n > MAX_DIM {
        return Err(Error::SizeCap(format!("|lambda| = {n} > {MAX_DIM}")));
    }
    let method = match method {
        OrbitMethod::Auto if budget.allows(exhaustive_cost(n, q)) => OrbitMethod::Exhaustive,
        OrbitMethod::Auto if budget.allows(centralizer_enumeration_cost(lambda, q)) => {
            OrbitMethod::Centralizer
        }
        OrbitMethod::Auto => OrbitMethod::Formula,
        m => m,
    };
    if method == OrbitMethod::Formula {
        return Ok(gl_order(n, q) / centralizer_order(lambda, q));
    }
    let key = (lambda.trimmed().to_vec(), q, method == OrbitMethod::Exhaustive);
    if let Some(&c) = orbit_cache().lock().expect("orbit cache").get(&key) {
        return Ok(c);
    }
    let count = enumerate_orbit(lambda, q, method, budget)?;
    orbit_cache().lock().expect("orbit cache").insert(key, count);
    Ok(count)
}

fn enumerate_orbit(lambda: &Partition, q: u32, method: OrbitMethod, budget: Budget) -> Result<u128> {
    let n = lambda.size() as usize;
    match method {
        OrbitMethod::Exhaustive => {
            budget.check(exhaustive_cost(n, q))?;
            Ok(sum_over_matrices(n, q, |t| {
                if !is_nilpotent(t) {
                    return 0;
                }
                let j = jordan_type(t).expect("nilpotent");
                u128::from(j.same_shape(lambda))
            }))
        }
        _ => {
            let t = jordan_matrix(lambda, q)?;
            let basis = centralizer_basis(&t);
            let d = basis.len();
            budget.check((q as u128).pow(d as u32) * (n.max(1) as u128).pow(3))?;
            let total = (q as u64).pow(d as u32);
            let units: u128 = (0..total)
                .into_par_iter()
                .map(|idx| {
                    let mut x = vec![0u32; n * n];
                    let mut c = idx;
                    for b in &basis {
                        let coeff = (c % q as u64) as u32;
                        c /= q as u64;
                        if coeff != 0 {
                            for (xi, bi) in x.iter_mut().zip(b) {
                                *xi = (*xi + coeff * bi) % q;
                            }
                        }
                    }
                    let rows: Vec<Vec<u32>> = x.chunks(n.max(1)).map(|r| r.to_vec()).collect();
                    u128::from(rank_of(&rows, n, q) == n)
                })
                .sum();
            let gl = gl_order(n, q);
            if units == 0 || gl % units != 0 {
                return Err(Error::Axiom(format!(
                    "centralizer unit count {units} does not divide |GL_{n}(F_{q})| = {gl}"
                )));
            }
            Ok(gl / units)
        }
    }
}
